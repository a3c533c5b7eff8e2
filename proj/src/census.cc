#include <rtl/census.hh>
#include <rtl/errors.hh>
#include <rtl/thresholds.hh>
#include <rtl/version.hh>

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

namespace rtl {

std::string to_string(CountMethod method)
{
    switch (method) {
        case CountMethod::brute: return "brute";
        case CountMethod::census: return "census";
        case CountMethod::trivial_kfree: return "trivial_kfree";
        case CountMethod::trivial_few_colors: return "trivial_few_colors";
    }
    return "?";
}

BigInt falling(long r, long t)
{
    BigInt result = 1;
    for (long i = 0; i < t; ++i)
        result *= r - i;
    return result;
}

BigInt binomial(long n, long t)
{
    if (t < 0 || n < 0 || t > n)
        return 0;
    BigInt result;
    mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(t));
    return result;
}

BigInt stirling2(long n, long t)
{
    if (n < 0 || t < 0)
        return 0;
    std::vector<BigInt> row(static_cast<std::size_t>(t + 1), 0);
    row[0] = 1;
    for (long i = 1; i <= n; ++i)
        for (long j = std::min(i, t); j >= 0; --j)
            row[j] = (j == 0 ? BigInt(0) : BigInt(j * row[j] + row[j - 1]));
    return row[t];
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

CountResult count_brute(const Graph & g, int k, int s, int r, std::uint64_t coloring_budget)
{
    auto start = Clock::now();
    if (r < 1 || r > 64)
        throw ContractViolation("count_brute needs 1 <= r <= 64");
    BigInt total = pow(BigInt(r), static_cast<unsigned long>(g.m()));
    if (total > BigInt(std::to_string(coloring_budget)))
        throw ResourceError("count_brute: " + std::to_string(r) + "^" + std::to_string(g.m()) + " = " + total.get_str()
                + " colorings exceed the budget of " + std::to_string(coloring_budget));

    auto cliques = k_cliques(g, k);
    std::vector<int> color(static_cast<std::size_t>(g.m()), 0);
    std::uint64_t accepted = 0, visited = 0;
    while (true) {
        ++visited;
        bool ok = true;
        for (auto & c : cliques) {
            std::uint64_t used = 0;
            for (int e : c.edge_indices)
                used |= std::uint64_t{1} << color[e];
            if (std::popcount(used) >= s) {
                ok = false;
                break;
            }
        }
        if (ok)
            ++accepted;
        int pos = 0;
        while (pos < g.m() && ++color[pos] == r)
            color[pos++] = 0;
        if (pos == g.m())
            break;
    }
    CountResult result;
    result.value = BigInt(std::to_string(accepted));
    result.r = r;
    result.k = k;
    result.s = s;
    result.graph6 = write_graph6(g);
    result.method = CountMethod::brute;
    result.elapsed_seconds = seconds_since(start);
    result.nodes_visited = visited;
    return result;
}

int default_t_max(const Graph & g)
{
    return std::max(1, std::min(g.m(), 16));
}

namespace {

// Block-label search over the edges that lie in at least one k-clique.
struct CensusSearch
{
    int s;
    int t_max;
    int depth_total;
    std::vector<std::vector<int>> cliques_at; // per constrained position
    std::vector<std::uint64_t> touched;        // per clique, blocks touched so far
    std::vector<std::uint64_t> leaves;         // per block count
    std::uint64_t nodes = 0;
    std::uint64_t flushed = 0;
    std::atomic<std::uint64_t> * shared_nodes = nullptr;
    std::uint64_t budget = 0;

    bool place(int pos, int block, std::vector<std::uint64_t> & undo)
    {
        undo.clear();
        std::uint64_t bit = std::uint64_t{1} << block;
        bool ok = true;
        for (int c : cliques_at[pos]) {
            undo.push_back(touched[c]);
            touched[c] |= bit;
            if (std::popcount(touched[c]) >= s)
                ok = false;
        }
        return ok;
    }

    void unplace(int pos, const std::vector<std::uint64_t> & undo)
    {
        for (std::size_t i = 0; i < undo.size(); ++i)
            touched[cliques_at[pos][i]] = undo[i];
    }

    void account()
    {
        if (++nodes - flushed >= (1u << 16)) {
            std::uint64_t total = shared_nodes->fetch_add(nodes - flushed) + (nodes - flushed);
            flushed = nodes;
            if (total > budget)
                throw ResourceError("build_census: node budget of " + std::to_string(budget) + " exceeded");
        }
    }

    void finish()
    {
        std::uint64_t total = shared_nodes->fetch_add(nodes - flushed) + (nodes - flushed);
        flushed = nodes;
        if (total > budget)
            throw ResourceError("build_census: node budget of " + std::to_string(budget) + " exceeded");
    }

    void run(int pos, int blocks)
    {
        account();
        if (pos == depth_total) {
            ++leaves[blocks];
            return;
        }
        std::vector<std::uint64_t> undo;
        int top = std::min(blocks, t_max - 1);
        for (int b = 0; b <= top; ++b) {
            if (place(pos, b, undo))
                run(pos + 1, std::max(blocks, b + 1));
            unplace(pos, undo);
        }
    }

    // Prefixes of length `depth` that survive pruning, as label sequences.
    void prefixes(int pos, int blocks, int depth, std::vector<int> & labels, std::vector<std::vector<int>> & out)
    {
        account();
        if (pos == depth) {
            out.push_back(labels);
            return;
        }
        std::vector<std::uint64_t> undo;
        int top = std::min(blocks, t_max - 1);
        for (int b = 0; b <= top; ++b) {
            if (place(pos, b, undo)) {
                labels.push_back(b);
                prefixes(pos + 1, std::max(blocks, b + 1), depth, labels, out);
                labels.pop_back();
            }
            unplace(pos, undo);
        }
    }
};

} // namespace

CensusPolynomial build_census(const Graph & g, int k, int s, int t_max, const CensusOptions & options)
{
    if (t_max < 1 || t_max > 64)
        throw ContractViolation("build_census needs 1 <= t_max <= 64");
    if (s < 1)
        throw ContractViolation("build_census needs s >= 1");
    auto cliques = k_cliques(g, k);
    // a clique with fewer than s edges can never meet s blocks
    if (binom2(k) < s)
        cliques.clear();

    std::vector<int> clique_count(static_cast<std::size_t>(g.m()), 0);
    for (auto & c : cliques)
        for (int e : c.edge_indices)
            ++clique_count[e];
    std::vector<int> position(static_cast<std::size_t>(g.m()), -1);
    int constrained = 0;
    for (int e = 0; e < g.m(); ++e)
        if (clique_count[e] > 0)
            position[e] = constrained++;
    int free_edges = g.m() - constrained;

    std::vector<std::vector<int>> cliques_at(static_cast<std::size_t>(constrained));
    for (std::size_t c = 0; c < cliques.size(); ++c)
        for (int e : cliques[c].edge_indices)
            cliques_at[position[e]].push_back(static_cast<int>(c));

    std::atomic<std::uint64_t> nodes{0};
    auto make_search = [&] {
        CensusSearch search;
        search.s = s;
        search.t_max = t_max;
        search.depth_total = constrained;
        search.cliques_at = cliques_at;
        search.touched.assign(cliques.size(), 0);
        search.leaves.assign(static_cast<std::size_t>(t_max + 1), 0);
        search.shared_nodes = &nodes;
        search.budget = options.node_budget;
        return search;
    };

    std::vector<BigInt> leaves(static_cast<std::size_t>(t_max + 1), 0);
    int depth = std::clamp(options.split_depth, 0, constrained);
    int threads = std::max(1, options.threads);

    auto merge = [&](const std::vector<std::uint64_t> & part) {
        for (std::size_t b = 0; b < part.size(); ++b)
            leaves[b] += BigInt(std::to_string(part[b]));
    };

    if (threads == 1 || depth == 0) {
        auto search = make_search();
        search.run(0, 0);
        search.finish();
        merge(search.leaves);
    }
    else {
        std::vector<std::vector<int>> roots;
        {
            auto search = make_search();
            std::vector<int> labels;
            search.prefixes(0, 0, depth, labels, roots);
            search.finish();
        }
        std::atomic<std::size_t> next{0};
        std::mutex merge_mutex;
        std::exception_ptr failure;
        auto worker = [&] {
            try {
                auto search = make_search();
                std::vector<std::uint64_t> undo;
                for (std::size_t task; (task = next.fetch_add(1)) < roots.size();) {
                    std::fill(search.touched.begin(), search.touched.end(), 0);
                    int blocks = 0;
                    for (int pos = 0; pos < depth; ++pos) {
                        int b = roots[task][pos];
                        search.place(pos, b, undo);
                        blocks = std::max(blocks, b + 1);
                    }
                    search.run(depth, blocks);
                }
                search.finish();
                std::lock_guard lock(merge_mutex);
                merge(search.leaves);
            }
            catch (...) {
                std::lock_guard lock(merge_mutex);
                if (! failure)
                    failure = std::current_exception();
                next.store(roots.size());
            }
        };
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        pool.clear();
        if (failure)
            std::rethrow_exception(failure);
    }

    // Fold in the edges outside every clique: extending a partition with b
    // blocks by q unconstrained elements reaches t blocks in T(q, b, t) ways,
    // T(q, b, t) = b T(q-1, b, t) + T(q-1, b+1, t).
    std::vector<BigInt> current = leaves;
    for (int q = 0; q < free_edges; ++q) {
        std::vector<BigInt> next(current.size(), 0);
        for (int b = 0; b <= t_max; ++b) {
            if (current[b] == 0)
                continue;
            next[b] += b * current[b];
            if (b + 1 <= t_max)
                next[b + 1] += current[b];
        }
        current = std::move(next);
    }

    CensusPolynomial poly;
    poly.k = k;
    poly.s = s;
    poly.m = g.m();
    poly.graph6 = write_graph6(g);
    poly.t_max = t_max;
    poly.coefficients = std::move(current);
    poly.nodes_visited = nodes.load();
    return poly;
}

CountResult evaluate(const CensusPolynomial & poly, int r)
{
    if (r < 1)
        throw ContractViolation("evaluate needs r >= 1");
    if (poly.t_max < std::min(poly.m, r))
        throw ContractViolation("census truncated at t_max = " + std::to_string(poly.t_max)
                + " cannot be evaluated at r = " + std::to_string(r) + " (needs t_max >= min(m, r) = "
                + std::to_string(std::min(poly.m, r)) + ")");
    CountResult result;
    result.value = 0;
    for (int t = 0; t <= std::min(poly.t_max, r); ++t)
        result.value += poly.coefficients[t] * falling(r, t);
    result.r = r;
    result.k = poly.k;
    result.s = poly.s;
    result.graph6 = poly.graph6;
    result.method = CountMethod::census;
    result.nodes_visited = poly.nodes_visited;
    return result;
}

CountResult count_colorings(const Graph & g, int k, int s, int r, const CountConfig & config)
{
    auto start = Clock::now();
    if (config.method == CountRequest::brute)
        return count_brute(g, k, s, r, config.coloring_budget);

    if (config.method == CountRequest::automatic) {
        bool kfree = ! has_clique(g, k);
        if (kfree || r < s) {
            CountResult result;
            result.value = pow(BigInt(r), static_cast<unsigned long>(g.m()));
            result.r = r;
            result.k = k;
            result.s = s;
            result.graph6 = write_graph6(g);
            result.method = kfree ? CountMethod::trivial_kfree : CountMethod::trivial_few_colors;
            result.elapsed_seconds = seconds_since(start);
            return result;
        }
    }

    int t_max = config.t_max > 0 ? config.t_max : std::max(1, std::min(g.m(), r));
    std::string key = write_graph6(g);
    std::optional<CensusPolynomial> poly;
    if (config.cache)
        poly = config.cache->get(key, k, s, t_max);
    if (! poly) {
        poly = build_census(g, k, s, t_max, config.census);
        if (config.cache)
            config.cache->put(*poly);
    }
    CountResult result = evaluate(*poly, r);
    result.elapsed_seconds = seconds_since(start);
    return result;
}

TuranComparison compare_vs_turan(const Graph & g, int k, int s, int r, const CountConfig & config)
{
    TuranComparison cmp;
    cmp.graph_count = count_colorings(g, k, s, r, config).value;
    cmp.turan_count = pow(BigInt(r), static_cast<unsigned long>(turan_ex(g.n(), k)));
    int c = ::cmp(cmp.graph_count, cmp.turan_count);
    cmp.ordering = c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    return cmp;
}

std::vector<std::vector<int>> integer_partitions(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> parts;
    auto rec = [&](auto & self, int left, int largest) -> void {
        if (left == 0) {
            out.push_back(parts);
            return;
        }
        for (int p = std::min(left, largest); p >= 1; --p) {
            parts.push_back(p);
            self(self, left - p, p);
            parts.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

ScanResult extremal_scan(int n, int k, int s, int r, ScanFamily family, const std::vector<Graph> & graphs,
        const CountConfig & config)
{
    ScanResult scan;
    scan.n = n;
    scan.k = k;
    scan.s = s;
    scan.r = r;
    scan.turan_count = pow(BigInt(r), static_cast<unsigned long>(turan_ex(n, k)));

    std::vector<int> turan_sizes = turan_part_sizes(n, k);
    std::erase(turan_sizes, 0);
    std::string turan_key = write_graph6(complete_multipartite(turan_sizes));

    std::vector<ScanRow> rows;
    std::vector<Graph> candidates;
    if (family == ScanFamily::complete_multipartite) {
        for (auto & parts : integer_partitions(n)) {
            candidates.push_back(complete_multipartite(parts));
            rows.push_back(ScanRow{});
            rows.back().part_sizes = parts;
        }
    }
    else {
        bool seen_turan = false;
        for (auto & g : graphs) {
            if (g.n() != n)
                throw ContractViolation("scan graph has " + std::to_string(g.n()) + " vertices, expected "
                        + std::to_string(n));
            seen_turan = seen_turan || write_graph6(g) == turan_key;
            candidates.push_back(g);
            rows.push_back(ScanRow{});
        }
        if (! seen_turan) {
            candidates.push_back(complete_multipartite(turan_sizes));
            rows.push_back(ScanRow{});
            rows.back().part_sizes = turan_sizes;
        }
    }

    for (std::size_t i = 0; i < candidates.size(); ++i) {
        auto & row = rows[i];
        row.graph6 = write_graph6(candidates[i]);
        row.is_turan = row.graph6 == turan_key;
        try {
            row.count = count_colorings(candidates[i], k, s, r, config).value;
            int c = cmp(*row.count, scan.turan_count);
            row.vs_turan = c < 0 ? std::strong_ordering::less
                : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
        }
        catch (const ResourceError & e) {
            row.error = e.what();
        }
    }

    std::stable_sort(rows.begin(), rows.end(), [](const ScanRow & a, const ScanRow & b) {
        if (a.count && b.count)
            return *a.count > *b.count;
        return a.count.has_value() && ! b.count.has_value();
    });
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (! rows[i].count)
            continue;
        bool same_prev = i > 0 && rows[i - 1].count && *rows[i - 1].count == *rows[i].count;
        bool same_next = i + 1 < rows.size() && rows[i + 1].count && *rows[i + 1].count == *rows[i].count;
        rows[i].tied = same_prev || same_next;
    }
    if (! rows.empty() && rows.front().count) {
        scan.top_tied = rows.front().tied;
        scan.turan_on_top = *rows.front().count == scan.turan_count;
    }
    scan.rows = std::move(rows);
    return scan;
}

std::vector<CompleteGraphRatio> complete_graph_ratios(int n_max, int k, int s, int r, const CountConfig & config)
{
    std::vector<CompleteGraphRatio> out;
    for (int n = std::max(2, k); n <= n_max; ++n) {
        CompleteGraphRatio row;
        row.n = n;
        row.count = count_colorings(complete(n), k, s, r, config).value;
        BigInt denominator = pow(BigInt(s - 1), static_cast<unsigned long>(binom2(n))) * binomial(r, s - 1);
        row.ratio = denominator == 0 ? Rational(0) : make_rational(row.count, denominator);
        out.push_back(row);
    }
    return out;
}

nlohmann::ordered_json to_json(const CensusPolynomial & poly)
{
    nlohmann::ordered_json j;
    j["graph6"] = poly.graph6;
    j["k"] = poly.k;
    j["s"] = poly.s;
    j["t_max"] = poly.t_max;
    j["m"] = poly.m;
    auto coefficients = nlohmann::ordered_json::array();
    for (int t = 0; t <= poly.t_max; ++t)
        if (poly.coefficients[t] != 0)
            coefficients.push_back({t, poly.coefficients[t].get_str()});
    j["coefficients"] = coefficients;
    j["tool_version"] = tool_version;
    return j;
}

CensusPolynomial census_from_json(const nlohmann::json & j)
{
    CensusPolynomial poly;
    poly.graph6 = j.at("graph6").get<std::string>();
    poly.k = j.at("k").get<int>();
    poly.s = j.at("s").get<int>();
    poly.t_max = j.at("t_max").get<int>();
    poly.m = j.contains("m") ? j.at("m").get<int>() : parse_graph6(poly.graph6).m();
    if (poly.t_max < 0 || poly.t_max > 64)
        throw std::runtime_error("t_max out of range");
    poly.coefficients.assign(static_cast<std::size_t>(poly.t_max + 1), 0);
    for (auto & entry : j.at("coefficients")) {
        int t = entry.at(0).get<int>();
        if (t < 0 || t > poly.t_max)
            throw std::runtime_error("coefficient index out of range");
        BigInt value;
        if (value.set_str(entry.at(1).get<std::string>(), 10) != 0 || value < 0)
            throw std::runtime_error("bad coefficient");
        poly.coefficients[t] = value;
    }
    return poly;
}

nlohmann::ordered_json to_json(const CountResult & result, bool with_timing)
{
    nlohmann::ordered_json j;
    j["graph6"] = result.graph6;
    j["k"] = result.k;
    j["s"] = result.s;
    j["r"] = result.r;
    j["method"] = to_string(result.method);
    j["value"] = result.value.get_str();
    j["nodes_visited"] = std::to_string(result.nodes_visited);
    if (with_timing)
        j["elapsed_seconds"] = result.elapsed_seconds;
    return j;
}

namespace {

std::string ordering_name(std::strong_ordering o)
{
    return o < 0 ? "less" : o > 0 ? "greater" : "equal";
}

} // namespace

nlohmann::ordered_json to_json(const ScanResult & scan)
{
    nlohmann::ordered_json j;
    j["n"] = scan.n;
    j["k"] = scan.k;
    j["s"] = scan.s;
    j["r"] = scan.r;
    j["turan_count"] = scan.turan_count.get_str();
    j["turan_on_top"] = scan.turan_on_top;
    j["top_tied"] = scan.top_tied;
    auto rows = nlohmann::ordered_json::array();
    for (auto & row : scan.rows) {
        nlohmann::ordered_json r;
        r["graph6"] = row.graph6;
        r["part_sizes"] = row.part_sizes;
        r["is_turan"] = row.is_turan;
        r["count"] = row.count ? nlohmann::ordered_json(row.count->get_str()) : nullptr;
        r["vs_turan"] = row.vs_turan ? nlohmann::ordered_json(ordering_name(*row.vs_turan)) : nullptr;
        r["tied"] = row.tied;
        if (! row.error.empty())
            r["error"] = row.error;
        rows.push_back(r);
    }
    j["rows"] = rows;
    return j;
}

CensusCache::CensusCache(std::string path) :
    path_(std::move(path))
{
    load();
}

void CensusCache::load()
{
    std::ifstream in(path_);
    if (! in)
        return; // a missing file is an empty cache
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty())
            continue;
        try {
            auto poly = census_from_json(nlohmann::json::parse(line));
            auto same_key = [&](const CensusPolynomial & p) {
                return p.graph6 == poly.graph6 && p.k == poly.k && p.s == poly.s && p.t_max == poly.t_max;
            };
            std::erase_if(entries_, same_key);
            entries_.push_back(std::move(poly));
        }
        catch (const std::exception & e) {
            warnings_.push_back(path_ + ":" + std::to_string(number) + ": skipped corrupted cache line (" + e.what() + ")");
            std::cerr << "warning: " << warnings_.back() << '\n';
        }
    }
    if (in.bad())
        throw std::runtime_error("error reading cache " + path_);
}

std::optional<CensusPolynomial> CensusCache::get(const std::string & graph6, int k, int s, int t_max) const
{
    for (auto & p : entries_)
        if (p.graph6 == graph6 && p.k == k && p.s == s && p.t_max == t_max)
            return p;
    return std::nullopt;
}

void CensusCache::put(const CensusPolynomial & poly)
{
    for (auto & p : entries_)
        if (p.graph6 == poly.graph6 && p.k == poly.k && p.s == poly.s && p.t_max == poly.t_max) {
            if (p.coefficients == poly.coefficients)
                return;
            warnings_.push_back("replacing conflicting cache entry for " + poly.graph6);
            p = poly;
            rewrite();
            return;
        }
    entries_.push_back(poly);
    std::ofstream out(path_, std::ios::app);
    out << to_json(poly).dump() << '\n';
    out.flush();
    if (! out)
        throw std::runtime_error("cannot write cache " + path_);
}

void CensusCache::rewrite() const
{
    std::ofstream out(path_, std::ios::trunc);
    for (auto & p : entries_)
        out << to_json(p).dump() << '\n';
    out.flush();
    if (! out)
        throw std::runtime_error("cannot write cache " + path_);
}

} // namespace rtl
