#include <rtl/graph.hh>
#include <rtl/errors.hh>

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>

namespace rtl {

Graph::Graph(int n) :
    n_(n),
    adj_(static_cast<std::size_t>(std::max(n, 0)), 0)
{
    if (n < 0 || n > max_vertices)
        throw ContractViolation("graph order " + std::to_string(n) + " outside [0, 64]");
}

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) :
    Graph(n)
{
    for (auto [u, v] : edges) {
        if (u == v || u < 0 || v < 0 || u >= n || v >= n)
            throw ContractViolation("bad edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        adj_[u] |= std::uint64_t{1} << v;
        adj_[v] |= std::uint64_t{1} << u;
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (adjacent(u, v))
                edges_.push_back({u, v});
}

int Graph::edge_index(int u, int v) const
{
    if (u > v)
        std::swap(u, v);
    if (u == v || ! adjacent(u, v))
        return -1;
    auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
    return static_cast<int>(it - edges_.begin());
}

Graph parse_graph6(std::string_view text)
{
    std::size_t offset = 0;
    if (text.starts_with(">>graph6<<"))
        offset = 10;
    while (! text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
        text.remove_suffix(1);

    auto byte_at = [&](std::size_t pos) -> int {
        if (pos >= text.size())
            throw ParseError("graph6: truncated input", pos);
        int b = static_cast<unsigned char>(text[pos]);
        if (b < 63 || b > 126)
            throw ParseError("graph6: byte outside the printable range 63..126", pos);
        return b - 63;
    };

    int n = 0;
    int first = byte_at(offset);
    if (first < 63) {
        n = first;
        offset += 1;
    }
    else {
        if (byte_at(offset + 1) == 63)
            throw ParseError("graph6: order above 64 vertices is not supported", offset + 1);
        long value = 0;
        for (int i = 1; i <= 3; ++i)
            value = (value << 6) | byte_at(offset + i);
        if (value > max_vertices)
            throw ParseError("graph6: order " + std::to_string(value) + " above 64 vertices", offset);
        if (value < 63)
            throw ParseError("graph6: long header used for order below 63", offset);
        n = static_cast<int>(value);
        offset += 4;
    }

    std::size_t bits = static_cast<std::size_t>(n) * (n - (n > 0)) / 2;
    std::size_t body = (bits + 5) / 6;
    if (text.size() - offset != body)
        throw ParseError("graph6: expected " + std::to_string(body) + " body bytes for n = " + std::to_string(n)
                + ", found " + std::to_string(text.size() - offset), offset);

    std::vector<std::pair<int, int>> edges;
    std::size_t bit = 0;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u, ++bit) {
            int chunk = byte_at(offset + bit / 6);
            if ((chunk >> (5 - bit % 6)) & 1)
                edges.emplace_back(u, v);
        }
    if (bits % 6 != 0) {
        int last = byte_at(offset + body - 1);
        if (last & ((1 << (6 - bits % 6)) - 1))
            throw ParseError("graph6: nonzero padding bits", offset + body - 1);
    }
    return Graph(n, std::move(edges));
}

std::string write_graph6(const Graph & g)
{
    std::string out;
    int n = g.n();
    if (n < 63)
        out.push_back(static_cast<char>(n + 63));
    else {
        out.push_back('~');
        for (int shift = 12; shift >= 0; shift -= 6)
            out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    }
    int chunk = 0, filled = 0;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u) {
            chunk = (chunk << 1) | (g.adjacent(u, v) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(chunk + 63));
                chunk = filled = 0;
            }
        }
    if (filled > 0)
        out.push_back(static_cast<char>((chunk << (6 - filled)) + 63));
    return out;
}

std::vector<Graph> read_graph6_file(const std::string & path)
{
    std::ifstream in(path);
    if (! in)
        throw std::runtime_error("cannot open graph6 file " + path);
    std::vector<Graph> graphs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r" || (line[0] == '>' && ! line.starts_with(">>graph6<<")))
            continue;
        graphs.push_back(parse_graph6(line));
    }
    return graphs;
}

Graph complete(int n)
{
    return complete_multipartite(std::vector<int>(static_cast<std::size_t>(n), 1));
}

Graph cycle(int n)
{
    if (n < 3)
        throw ContractViolation("cycle needs n >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v)
        edges.emplace_back(v, (v + 1) % n);
    return Graph(n, std::move(edges));
}

Graph complete_multipartite(const std::vector<int> & part_sizes)
{
    int n = std::accumulate(part_sizes.begin(), part_sizes.end(), 0);
    std::vector<int> part;
    for (std::size_t p = 0; p < part_sizes.size(); ++p) {
        if (part_sizes[p] < 0)
            throw ContractViolation("negative part size");
        part.insert(part.end(), static_cast<std::size_t>(part_sizes[p]), static_cast<int>(p));
    }
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (part[u] != part[v])
                edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

std::vector<int> turan_part_sizes(int n, int k)
{
    if (k < 2 || n < 0)
        throw ContractViolation("turan_graph needs k >= 2");
    int parts = k - 1;
    std::vector<int> sizes;
    for (int p = 0; p < parts; ++p)
        sizes.push_back(n / parts + (p < n % parts ? 1 : 0));
    return sizes;
}

Graph turan_graph(int n, int k)
{
    return complete_multipartite(turan_part_sizes(n, k));
}

Graph remove_edges(const Graph & g, const std::vector<int> & edge_indices)
{
    std::vector<bool> drop(static_cast<std::size_t>(g.m()), false);
    for (int e : edge_indices)
        drop.at(static_cast<std::size_t>(e)) = true;
    std::vector<std::pair<int, int>> kept;
    for (int e = 0; e < g.m(); ++e)
        if (! drop[e])
            kept.emplace_back(g.edges()[e].u, g.edges()[e].v);
    return Graph(g.n(), std::move(kept));
}

namespace {

template <typename Visit>
void walk_cliques(const Graph & g, int k, std::vector<int> & chosen, std::uint64_t candidates, Visit && visit)
{
    if (static_cast<int>(chosen.size()) == k) {
        visit(chosen);
        return;
    }
    int need = k - static_cast<int>(chosen.size());
    while (candidates && std::popcount(candidates) >= need) {
        int v = std::countr_zero(candidates);
        candidates &= candidates - 1;
        chosen.push_back(v);
        walk_cliques(g, k, chosen, candidates & g.neighbours(v), visit);
        chosen.pop_back();
    }
}

std::uint64_t all_vertices(int n)
{
    return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

} // namespace

std::vector<Clique> k_cliques(const Graph & g, int k, int mask_limit)
{
    if (k < 2)
        throw ContractViolation("k_cliques needs k >= 2");
    if (g.m() > mask_limit || mask_limit > default_mask_limit)
        throw ResourceError("k_cliques: " + std::to_string(g.m()) + " edges exceed the clique-mask width "
                + std::to_string(std::min(mask_limit, default_mask_limit)));
    std::vector<Clique> out;
    std::vector<int> chosen;
    walk_cliques(g, k, chosen, all_vertices(g.n()), [&](const std::vector<int> & vs) {
        Clique c{0, {}, {}};
        for (std::size_t a = 0; a < vs.size(); ++a) {
            c.vertices |= std::uint64_t{1} << vs[a];
            for (std::size_t b = a + 1; b < vs.size(); ++b) {
                int e = g.edge_index(vs[a], vs[b]);
                c.edge_mask.set(static_cast<std::size_t>(e));
                c.edge_indices.push_back(e);
            }
        }
        std::sort(c.edge_indices.begin(), c.edge_indices.end());
        out.push_back(std::move(c));
    });
    return out;
}

bool has_clique(const Graph & g, int k)
{
    bool found = false;
    std::vector<int> chosen;
    // walk_cliques has no early exit; graphs here are small enough
    walk_cliques(g, k, chosen, all_vertices(g.n()), [&](const std::vector<int> &) { found = true; });
    return found;
}

int VertexPartition::internal_edges(const Graph & g) const
{
    int count = 0;
    for (auto & e : g.edges())
        if (class_of.at(e.u) == class_of.at(e.v))
            ++count;
    return count;
}

namespace {

struct LPartiteSearch
{
    const Graph & g;
    int l;
    std::vector<std::uint64_t> class_mask;
    std::vector<int> labels;
    std::vector<int> best_labels;
    int best_internal;

    void run(int v, int used, int internal)
    {
        if (internal >= best_internal)
            return;
        if (v == g.n()) {
            best_internal = internal;
            best_labels = labels;
            return;
        }
        int bound = internal;
        for (int w = v; w < g.n() && bound < best_internal; ++w) {
            int cheapest = g.n();
            for (int c = 0; c < l; ++c)
                cheapest = std::min(cheapest, std::popcount(g.neighbours(w) & class_mask[c]));
            bound += cheapest;
        }
        if (bound >= best_internal)
            return;
        int top = std::min(used, l - 1);
        for (int c = 0; c <= top; ++c) {
            int added = std::popcount(g.neighbours(v) & class_mask[c]);
            labels[v] = c;
            class_mask[c] |= std::uint64_t{1} << v;
            run(v + 1, std::max(used, c + 1), internal + added);
            class_mask[c] &= ~(std::uint64_t{1} << v);
        }
    }
};

} // namespace

LPartiteResult max_lpartite(const Graph & g, int l)
{
    if (l < 1)
        throw ContractViolation("max_lpartite needs l >= 1");
    if (g.n() > max_lpartite_vertices)
        throw ResourceError("max_lpartite: exact search is limited to n <= " + std::to_string(max_lpartite_vertices)
                + " vertices, got n = " + std::to_string(g.n()));
    LPartiteSearch search{g, l, std::vector<std::uint64_t>(static_cast<std::size_t>(l), 0),
        std::vector<int>(static_cast<std::size_t>(g.n()), 0), {}, g.m() + 1};
    search.run(0, 0, 0);
    LPartiteResult result;
    result.partition.class_of = search.best_labels;
    result.cross_edges = g.m() - search.best_internal;
    return result;
}

} // namespace rtl
