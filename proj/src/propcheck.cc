#include <rtl/propcheck.hh>
#include <rtl/errors.hh>
#include <rtl/exactnum.hh>
#include <rtl/thresholds.hh>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace rtl {

void CheckReport::fail(std::string instance, std::string detail)
{
    failures.push_back({std::move(instance), std::move(detail)});
}

namespace {

// Platform-independent draws: mt19937_64 output is fully specified, the
// standard distributions are not.
struct Rng
{
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    std::uint64_t below(std::uint64_t bound) { return engine() % bound; }
    bool coin() { return engine() >> 63; }
};

Graph graph_from_mask(int n, std::uint64_t mask)
{
    std::vector<std::pair<int, int>> edges;
    int bit = 0;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u, ++bit)
            if ((mask >> bit) & 1u)
                edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

void lemma2_instance(CheckReport & report, const Graph & g, int l)
{
    ++report.instances_tested;
    if (g.m() == 0)
        return;
    auto best = max_lpartite(g, l);
    if (static_cast<std::int64_t>(best.cross_edges) * l <= static_cast<std::int64_t>(l - 1) * g.m())
        report.fail(write_graph6(g) + " l=" + std::to_string(l),
                std::to_string(best.cross_edges) + " cross edges, not above (l-1)m/l with m = " + std::to_string(g.m()));
}

} // namespace

CheckReport check_lpartite_lemma(int l_min, int l_max, int n_exhaustive, int samples, int n_sampled_max,
        std::uint64_t seed)
{
    if (n_exhaustive > max_exhaustive_lpartite_order)
        throw ResourceError("exhaustive l-partite check is limited to n <= "
                + std::to_string(max_exhaustive_lpartite_order) + "; use seeded samples above that");
    CheckReport report;
    report.check_name = "lpartite_lemma";
    report.seed = seed;
    report.notes.push_back("graphs with m = 0 are counted as vacuous (the strict inequality reads 0 > 0)");
    for (int n = 1; n <= n_exhaustive; ++n) {
        std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
            Graph g = graph_from_mask(n, mask);
            for (int l = l_min; l <= l_max; ++l)
                lemma2_instance(report, g, l);
        }
    }
    if (samples > 0 && n_sampled_max > n_exhaustive) {
        Rng rng(seed);
        for (int i = 0; i < samples; ++i) {
            int n = n_exhaustive + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_sampled_max - n_exhaustive)));
            std::vector<std::pair<int, int>> edges;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (rng.coin())
                        edges.emplace_back(u, v);
            Graph g(n, std::move(edges));
            for (int l = l_min; l <= l_max; ++l)
                lemma2_instance(report, g, l);
        }
    }
    return report;
}

CheckReport check_furedi(const Graph & g, int k)
{
    CheckReport report;
    report.check_name = "furedi_stability";
    if (has_clique(g, k))
        throw ContractViolation("check_furedi: " + write_graph6(g) + " contains K_" + std::to_string(k));
    ++report.instances_tested;
    std::int64_t t = turan_ex(g.n(), k) - g.m();
    int internal = g.m() - max_lpartite(g, k - 1).cross_edges;
    if (internal > t)
        report.fail(write_graph6(g) + " k=" + std::to_string(k),
                "minimum internal edges " + std::to_string(internal) + " exceeds t = " + std::to_string(t));
    return report;
}

CheckReport check_furedi_samples(int count, std::uint64_t seed)
{
    CheckReport report;
    report.check_name = "furedi_stability";
    report.seed = seed;
    Rng rng(seed);
    for (int i = 0; i < count; ++i) {
        int k = 3 + static_cast<int>(rng.below(3));
        int n = k + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(12 - k)));
        Graph g = turan_graph(n, k);
        // delete a few edges, then add non-edges that keep the graph K_k-free
        std::vector<int> doomed;
        int deletions = static_cast<int>(rng.below(4));
        for (int d = 0; d < deletions && g.m() > 0; ++d)
            doomed.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(g.m()))));
        std::sort(doomed.begin(), doomed.end());
        doomed.erase(std::unique(doomed.begin(), doomed.end()), doomed.end());
        g = remove_edges(g, doomed);
        int additions = static_cast<int>(rng.below(4));
        for (int a = 0; a < additions; ++a) {
            int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            if (u == v || g.adjacent(u, v))
                continue;
            std::vector<std::pair<int, int>> edges;
            for (auto & e : g.edges())
                edges.emplace_back(e.u, e.v);
            edges.emplace_back(u, v);
            Graph candidate(n, std::move(edges));
            if (! has_clique(candidate, k))
                g = std::move(candidate);
        }
        auto single = check_furedi(g, k);
        report.instances_tested += single.instances_tested;
        for (auto & f : single.failures)
            report.failures.push_back(f);
    }
    return report;
}

CheckReport check_part_sizes(int samples, int k, int m, std::int64_t t, std::uint64_t seed)
{
    CheckReport report;
    report.check_name = "part_sizes";
    report.seed = seed;
    if (t < static_cast<std::int64_t>(k - 1) * (k - 1))
        throw ContractViolation("check_part_sizes needs t >= (k-1)^2");
    int parts = k - 1;
    std::int64_t threshold = turan_ex(m, k) - t;
    Rng rng(seed);
    std::uint64_t excluded = 0;
    for (int i = 0; i < samples; ++i) {
        auto sizes = turan_part_sizes(m, k);
        int moves = static_cast<int>(rng.below(4));
        for (int mv = 0; mv < moves; ++mv) {
            auto from = rng.below(static_cast<std::uint64_t>(parts));
            auto to = rng.below(static_cast<std::uint64_t>(parts));
            if (sizes[from] > 0) {
                --sizes[from];
                ++sizes[to];
            }
        }
        std::int64_t edges = 0;
        for (int a = 0; a < parts; ++a)
            for (int b = a + 1; b < parts; ++b)
                edges += static_cast<std::int64_t>(sizes[a]) * sizes[b];
        edges -= static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(t + 1)));
        if (edges < threshold) {
            ++excluded;
            continue;
        }
        ++report.instances_tested;
        for (int c = 0; c < parts; ++c) {
            // |size - m/(k-1)| < sqrt(2t)  <=>  (size(k-1) - m)^2 < 2t(k-1)^2
            std::int64_t dev = static_cast<std::int64_t>(sizes[c]) * parts - m;
            if (dev * dev >= 2 * t * parts * parts) {
                std::ostringstream sizes_text;
                for (int sz : sizes)
                    sizes_text << sz << ' ';
                report.fail("sizes " + sizes_text.str(), "class " + std::to_string(c) + " deviates too far");
            }
        }
    }
    report.notes.push_back(std::to_string(excluded) + " samples fell below ex(m,K_k) - t edges and were excluded");
    return report;
}

CheckReport check_entropy(int alpha_steps, int x_steps, int n_max)
{
    CheckReport report;
    report.check_name = "entropy";
    long floor_form_above_half = 0;
    for (int i = 0; i <= alpha_steps; ++i) {
        Rational alpha = make_rational(i, alpha_steps);
        BigInt p = alpha.get_num(), q = alpha.get_den();
        for (int n = 1; n <= n_max; ++n) {
            ++report.instances_tested;
            BigInt chosen = (p * n) / q;
            unsigned long j = chosen.get_ui();
            BigInt binom;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), j);
            // at the integral point j/n: C(n,j) j^j (n-j)^(n-j) <= n^n
            if (binom * pow(BigInt(j), j) * pow(BigInt(n - j), n - j) > pow(BigInt(n), n))
                report.fail("n=" + std::to_string(n) + " j=" + std::to_string(j), "binomial exceeds 2^(H(j/n) n)");
            // 2^(H(alpha) n) = q^n p^(-pn/q) (q-p)^(-(q-p)n/q)
            PowerProduct rhs = PowerProduct::power(q, Rational(n));
            if (p > 0)
                rhs *= PowerProduct::power(p, -make_rational(p * n, q));
            if (q - p > 0)
                rhs *= PowerProduct::power(q - p, -make_rational((q - p) * n, q));
            if (pp_compare(PowerProduct(binom), rhs) == std::strong_ordering::greater) {
                if (2 * p <= q)
                    report.fail("n=" + std::to_string(n) + " alpha=" + alpha.get_str(), "binomial exceeds 2^(H(alpha) n)");
                else
                    ++floor_form_above_half;
            }
        }
    }
    for (int i = 1; i <= x_steps; ++i) {
        ++report.instances_tested;
        Rational x = make_rational(i, 8 * x_steps);
        BigInt p = x.get_num(), q = x.get_den();
        // H(x) <= -2x log2 x  <=>  x^x <= (1-x)^(1-x)
        PowerProduct lhs = PowerProduct::power(p, x) * PowerProduct::power(q, -x);
        Rational rest = 1 - x;
        PowerProduct rhs = PowerProduct::power(q - p, rest) * PowerProduct::power(q, -rest);
        if (pp_compare(lhs, rhs) == std::strong_ordering::greater)
            report.fail("x=" + x.get_str(), "H(x) > -2x log2 x");
    }
    report.notes.push_back("alpha grid i/" + std::to_string(alpha_steps) + ", n <= " + std::to_string(n_max)
            + "; x grid i/" + std::to_string(8 * x_steps) + " on (0, 1/8]; exact comparisons");
    report.notes.push_back("C(n, floor(alpha n)) <= 2^(H(alpha) n) checked for alpha <= 1/2; above 1/2 the floor form fails in "
            + std::to_string(floor_form_above_half) + " cases and the bound is checked at alpha n integral");
    return report;
}

CheckReport check_turan_bounds(int k_min, int k_max, int n_max)
{
    CheckReport report;
    report.check_name = "turan_bounds";
    for (int k = k_min; k <= k_max; ++k)
        for (int n = k; n <= n_max; ++n) {
            ++report.instances_tested;
            Rational upper = make_rational(static_cast<long>(k - 2) * n * n, 2 * (k - 1));
            Rational lower = upper - k + 1;
            Rational ex(static_cast<long>(turan_ex(n, k)));
            if (! (lower < ex && ex <= upper))
                report.fail("n=" + std::to_string(n) + " k=" + std::to_string(k),
                        "ex = " + ex.get_str() + " outside (" + lower.get_str() + ", " + upper.get_str() + "]");
        }
    return report;
}

std::set<KsPair> published_tight_pairs()
{
    return {{5, 4}, {7, 4}, {7, 5}, {8, 4}, {8, 5}, {9, 3}, {9, 4}, {9, 6}};
}

PairsCensus pairs_census(int k_min, int k_max, int s_min)
{
    PairsCensus census;
    census.k_min = k_min;
    census.k_max = k_max;
    census.s_min = s_min;
    census.published = published_tight_pairs();
    for (int k = k_min; k <= k_max; ++k)
        for (int s = std::max(2, s_min); s <= binom2(k); ++s) {
            auto report = r0(k, s);
            if (report.r0 == report.r1 + 1) {
                census.pairs.insert({k, s});
                if (s >= 4)
                    census.pairs_s_at_least_4.insert({k, s});
            }
        }

    census.contains_published = std::includes(census.pairs.begin(), census.pairs.end(),
            census.published.begin(), census.published.end());
    std::set<KsPair> expected = census.published;
    for (int k = std::max(4, k_min); k <= k_max; ++k)
        if (s_min <= 3)
            expected.insert({k, 3});
    std::erase_if(expected, [&](const KsPair & p) { return p.first < k_min || p.first > k_max || p.second < s_min; });
    census.equals_published_plus_s3 = census.pairs == expected;
    std::set<KsPair> without = census.published;
    without.erase({9, 3});
    census.s4_equals_published_minus_9_3 = census.pairs_s_at_least_4 == without;
    census.notes.push_back("the published list is introduced for s >= 4 yet contains (9,3); "
            "under s >= 4 the computed set is the list without (9,3), under s >= 3 it is the list plus every (k,3)");
    return census;
}

K0Report find_k0(int s, int k_max)
{
    if (s < 3)
        throw ContractViolation("find_k0 needs s >= 3");
    if (k_max > 40)
        throw ResourceError("find_k0 is limited to k_max <= 40");
    K0Report report;
    report.s = s;
    report.k_max = k_max;
    std::vector<bool> ok;
    std::vector<int> tested;
    for (int k = 4; k <= k_max; ++k) {
        if (s > binom2(k))
            continue;
        auto t = r0(k, s);
        bool q = t.r0 == s && t.r1 == s - 1;
        tested.push_back(k);
        ok.push_back(q);
        if (q)
            report.qualifying.push_back(k);
    }
    for (std::size_t i = tested.size(); i-- > 0;) {
        if (! ok[i])
            break;
        report.k0 = tested[i];
    }
    return report;
}

nlohmann::ordered_json to_json(const CheckReport & report)
{
    nlohmann::ordered_json j;
    j["check_name"] = report.check_name;
    j["instances_tested"] = std::to_string(report.instances_tested);
    auto failures = nlohmann::ordered_json::array();
    for (auto & f : report.failures)
        failures.push_back({{"instance", f.instance}, {"detail", f.detail}});
    j["failures"] = failures;
    j["verdict"] = report.passed() ? "pass" : "fail";
    j["notes"] = report.notes;
    j["seed"] = report.seed ? nlohmann::ordered_json(std::to_string(*report.seed)) : nullptr;
    return j;
}

namespace {

nlohmann::ordered_json pair_list(const std::set<KsPair> & pairs)
{
    auto out = nlohmann::ordered_json::array();
    for (auto & [k, s] : pairs)
        out.push_back({k, s});
    return out;
}

} // namespace

nlohmann::ordered_json to_json(const PairsCensus & census)
{
    nlohmann::ordered_json j;
    j["k_min"] = census.k_min;
    j["k_max"] = census.k_max;
    j["s_min"] = census.s_min;
    j["pairs"] = pair_list(census.pairs);
    j["pairs_s_at_least_4"] = pair_list(census.pairs_s_at_least_4);
    j["published"] = pair_list(census.published);
    j["contains_published"] = census.contains_published;
    j["equals_published_plus_s3"] = census.equals_published_plus_s3;
    j["s4_equals_published_minus_9_3"] = census.s4_equals_published_minus_9_3;
    j["notes"] = census.notes;
    return j;
}

nlohmann::ordered_json to_json(const K0Report & report)
{
    nlohmann::ordered_json j;
    j["s"] = report.s;
    j["k_max"] = report.k_max;
    j["qualifying"] = report.qualifying;
    j["k0"] = report.k0 ? nlohmann::ordered_json(*report.k0) : nullptr;
    return j;
}

std::string summary_markdown(const std::vector<CheckReport> & reports)
{
    std::ostringstream out;
    out << "| check | instances | failures | verdict |\n|---|---|---|---|\n";
    for (auto & r : reports)
        out << "| " << r.check_name << " | " << r.instances_tested << " | " << r.failures.size() << " | "
            << (r.passed() ? "pass" : "fail") << " |\n";
    return out.str();
}

} // namespace rtl
