#ifndef RTL_PROPCHECK_HH
#define RTL_PROPCHECK_HH

#include <rtl/graph.hh>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace rtl {

struct CheckFailure
{
    std::string instance;
    std::string detail;
};

struct CheckReport
{
    std::string check_name;
    std::uint64_t instances_tested = 0;
    std::vector<CheckFailure> failures;
    std::vector<std::string> notes;
    std::optional<std::uint64_t> seed;

    bool passed() const noexcept { return failures.empty(); }
    void fail(std::string instance, std::string detail);
};

inline constexpr int max_exhaustive_lpartite_order = 7;

/// Every graph with m >= 1 has an l-partite subgraph with more than (l-1)m/l
/// edges. Exhaustive over all labelled graphs for n <= `n_exhaustive`, plus
/// `samples` seeded G(n, 1/2) graphs with n in [n_exhaustive+1, n_sampled_max].
CheckReport check_lpartite_lemma(int l_min, int l_max, int n_exhaustive,
        int samples = 0, int n_sampled_max = 0, std::uint64_t seed = 1);

/// A K_k-free graph with ex(n,K_k) - t edges has a (k-1)-partition with at
/// most t edges inside classes.
CheckReport check_furedi(const Graph & g, int k);
/// Runs check_furedi on seeded near-Turan K_k-free graphs.
CheckReport check_furedi_samples(int count, std::uint64_t seed = 1);

/// Class sizes of (k-1)-partite m-vertex graphs with at least ex(m,K_k) - t
/// edges stay strictly within sqrt(2t) of m/(k-1).
CheckReport check_part_sizes(int samples, int k, int m, std::int64_t t, std::uint64_t seed = 1);

/// C(n, j) <= 2^(H(j/n) n) with j = floor(alpha n) for n <= n_max and
/// alpha = i/alpha_steps, the floor form C(n, j) <= 2^(H(alpha) n) for alpha <= 1/2,
/// and H(x) <= -2x log2 x for x = i/(8 x_steps), i in [1, x_steps]. Both are
/// decided exactly by clearing them into power products.
CheckReport check_entropy(int alpha_steps = 40, int x_steps = 64, int n_max = 60);

/// (k-2)n^2/(2(k-1)) - k + 1 < ex(n, K_k) <= (k-2)n^2/(2(k-1)) for n in [k, n_max].
CheckReport check_turan_bounds(int k_min, int k_max, int n_max = 200);

using KsPair = std::pair<int, int>;

/// The pairs listed in the closing remarks as having r0 = r1 + 1.
std::set<KsPair> published_tight_pairs();

struct PairsCensus
{
    int k_min = 0;
    int k_max = 0;
    int s_min = 0;
    std::set<KsPair> pairs;            // r0 = r1 + 1, s >= s_min
    std::set<KsPair> pairs_s_at_least_4;
    std::set<KsPair> published;
    bool contains_published = false;
    bool equals_published_plus_s3 = false;
    bool s4_equals_published_minus_9_3 = false;
    std::vector<std::string> notes;
};

PairsCensus pairs_census(int k_min, int k_max, int s_min);

struct K0Report
{
    int s = 0;
    int k_max = 0;
    std::vector<int> qualifying; // k with r0(k,s) = s and r1(k,s) = s-1
    std::optional<int> k0;       // least k such that every tested k' >= k qualifies
};

K0Report find_k0(int s, int k_max);

nlohmann::ordered_json to_json(const CheckReport & report);
nlohmann::ordered_json to_json(const PairsCensus & census);
nlohmann::ordered_json to_json(const K0Report & report);
std::string summary_markdown(const std::vector<CheckReport> & reports);

} // namespace rtl

#endif // RTL_PROPCHECK_HH
