#ifndef RTL_CENSUS_HH
#define RTL_CENSUS_HH

#include <rtl/exactnum.hh>
#include <rtl/graph.hh>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace rtl {

struct CensusOptions
{
    std::uint64_t node_budget = 1'000'000'000;
    int threads = 1;
    /// Depth at which the partition tree is cut into independent tasks.
    int split_depth = 4;
};

/// a_t = number of partitions of E(G) into exactly t blocks in which every
/// k-clique meets at most s-1 blocks, for t in [0, t_max]. Assigning distinct
/// colors to blocks gives |C_{r,P_{k,s}}(G)| = sum_t a_t * r(r-1)...(r-t+1)
/// for every r <= t_max (and for every r once t_max >= m).
struct CensusPolynomial
{
    int k = 0;
    int s = 0;
    int m = 0;
    std::string graph6;
    int t_max = 0;
    std::vector<BigInt> coefficients; // index t
    std::uint64_t nodes_visited = 0;

    bool operator==(const CensusPolynomial & o) const
    {
        return k == o.k && s == o.s && m == o.m && graph6 == o.graph6 && t_max == o.t_max
            && coefficients == o.coefficients;
    }
};

enum class CountMethod { brute, census, trivial_kfree, trivial_few_colors };
std::string to_string(CountMethod method);

struct CountResult
{
    BigInt value;
    int r = 0;
    int k = 0;
    int s = 0;
    std::string graph6;
    CountMethod method = CountMethod::census;
    double elapsed_seconds = 0.0;
    std::uint64_t nodes_visited = 0;
};

BigInt falling(long r, long t);
BigInt binomial(long n, long t);
/// Stirling numbers of the second kind S(n, t).
BigInt stirling2(long n, long t);

inline constexpr std::uint64_t default_coloring_budget = 100'000'000;

/// Definitional oracle: runs through all r^m colorings.
CountResult count_brute(const Graph & g, int k, int s, int r,
        std::uint64_t coloring_budget = default_coloring_budget);

int default_t_max(const Graph & g);

CensusPolynomial build_census(const Graph & g, int k, int s, int t_max, const CensusOptions & options = {});

CountResult evaluate(const CensusPolynomial & poly, int r);

class CensusCache;

enum class CountRequest { automatic, brute, census };

struct CountConfig
{
    CountRequest method = CountRequest::automatic;
    CensusOptions census;
    std::uint64_t coloring_budget = default_coloring_budget;
    /// 0 selects min(m, r), the smallest lossless truncation.
    int t_max = 0;
    CensusCache * cache = nullptr;
};

/// Dispatches to a method. The automatic method answers r^m directly for
/// K_k-free graphs and for r < s, and uses the census otherwise.
CountResult count_colorings(const Graph & g, int k, int s, int r, const CountConfig & config = {});

struct TuranComparison
{
    std::strong_ordering ordering = std::strong_ordering::equal;
    BigInt graph_count;
    BigInt turan_count;
};

TuranComparison compare_vs_turan(const Graph & g, int k, int s, int r, const CountConfig & config = {});

enum class ScanFamily { complete_multipartite, graph6_file };

struct ScanRow
{
    std::string graph6;
    std::vector<int> part_sizes; // empty for graphs read from file
    bool is_turan = false;
    std::optional<BigInt> count;
    std::optional<std::strong_ordering> vs_turan;
    bool tied = false;
    std::string error;
};

struct ScanResult
{
    int n = 0;
    int k = 0;
    int s = 0;
    int r = 0;
    BigInt turan_count;
    std::vector<ScanRow> rows; // counted rows by descending count, then failed rows
    bool turan_on_top = false;
    bool top_tied = false;
};

std::vector<std::vector<int>> integer_partitions(int n);

/// For graph6_file, `graphs` holds the candidates; T_{k-1}(n) is appended when
/// absent so the ranking always contains it.
ScanResult extremal_scan(int n, int k, int s, int r, ScanFamily family,
        const std::vector<Graph> & graphs = {}, const CountConfig & config = {});

/// |C(K_n)| / ((s-1)^C(n,2) * C(r, s-1)) for small n: an exploratory look at
/// the conjectured asymptotics, no pass or fail attached.
struct CompleteGraphRatio
{
    int n = 0;
    BigInt count;
    Rational ratio;
};

std::vector<CompleteGraphRatio> complete_graph_ratios(int n_max, int k, int s, int r, const CountConfig & config = {});

nlohmann::ordered_json to_json(const CensusPolynomial & poly);
CensusPolynomial census_from_json(const nlohmann::json & j);
nlohmann::ordered_json to_json(const CountResult & result, bool with_timing = false);
nlohmann::ordered_json to_json(const ScanResult & scan);

/// JSON-lines store of finished census polynomials keyed by (graph6, k, s, t_max).
class CensusCache
{
public:
    explicit CensusCache(std::string path);

    std::optional<CensusPolynomial> get(const std::string & graph6, int k, int s, int t_max) const;
    void put(const CensusPolynomial & poly);

    const std::vector<std::string> & warnings() const noexcept { return warnings_; }
    const std::string & path() const noexcept { return path_; }

private:
    void load();
    void rewrite() const;

    std::string path_;
    std::vector<CensusPolynomial> entries_;
    std::vector<std::string> warnings_;
};

} // namespace rtl

#endif // RTL_CENSUS_HH
