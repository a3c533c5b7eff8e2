#ifndef RTL_GRAPH_HH
#define RTL_GRAPH_HH

#include <bitset>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rtl {

inline constexpr int max_vertices = 64;
inline constexpr int default_mask_limit = 128;

using EdgeMask = std::bitset<default_mask_limit>;

struct Edge
{
    int u;
    int v;

    bool operator==(const Edge &) const = default;
    auto operator<=>(const Edge &) const = default;
};

/// Simple undirected graph on at most 64 vertices. Edges are kept in
/// lexicographic (u, v) order with u < v; an edge's position in that order is
/// its index everywhere else (clique masks, colorings, census).
class Graph
{
public:
    explicit Graph(int n = 0);
    Graph(int n, std::vector<std::pair<int, int>> edges);

    int n() const noexcept { return n_; }
    int m() const noexcept { return static_cast<int>(edges_.size()); }

    const std::vector<Edge> & edges() const noexcept { return edges_; }
    std::uint64_t neighbours(int v) const { return adj_[v]; }
    bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1u; }

    /// -1 when u, v are not adjacent.
    int edge_index(int u, int v) const;

    bool operator==(const Graph & other) const { return n_ == other.n_ && edges_ == other.edges_; }

private:
    int n_;
    std::vector<std::uint64_t> adj_;
    std::vector<Edge> edges_;
};

Graph parse_graph6(std::string_view text);
std::string write_graph6(const Graph & g);
/// One graph per non-empty line; lines starting with '>' (headers) are skipped.
std::vector<Graph> read_graph6_file(const std::string & path);

Graph complete(int n);
Graph cycle(int n);
Graph complete_multipartite(const std::vector<int> & part_sizes);
/// T_{k-1}(n): k-1 near-equal parts, larger parts first.
Graph turan_graph(int n, int k);
std::vector<int> turan_part_sizes(int n, int k);
Graph remove_edges(const Graph & g, const std::vector<int> & edge_indices);

struct Clique
{
    std::uint64_t vertices;
    EdgeMask edge_mask;
    std::vector<int> edge_indices;
};

/// All k-vertex cliques in lexicographic order of their vertex lists.
/// Throws ResourceError when m exceeds mask_limit.
std::vector<Clique> k_cliques(const Graph & g, int k, int mask_limit = default_mask_limit);
bool has_clique(const Graph & g, int k);

struct VertexPartition
{
    std::vector<int> class_of;

    int internal_edges(const Graph & g) const;
};

struct LPartiteResult
{
    VertexPartition partition;
    int cross_edges = 0;
};

inline constexpr int max_lpartite_vertices = 16;

/// Maximum l-partite subgraph by exhaustive search over class labelings in
/// first-use order (vertex 0 sits in class 0), with branch and bound.
LPartiteResult max_lpartite(const Graph & g, int l);

} // namespace rtl

#endif // RTL_GRAPH_HH
