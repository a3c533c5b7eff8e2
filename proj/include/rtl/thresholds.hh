#ifndef RTL_THRESHOLDS_HH
#define RTL_THRESHOLDS_HH

#include <rtl/exactnum.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace rtl {

std::int64_t binom2(std::int64_t n);

/// Edge count of the Turan graph T_{k-1}(n), i.e. ex(n, K_k).
std::int64_t turan_ex(std::int64_t n, int k);

/// Fewest edges to delete from K_k to make it j-partite, j in [2, k-1].
/// j = k gives 0 (K_k is already k-partite), which the formulas use at i = 1.
std::int64_t cap_A(int k, int j);

std::int64_t s0_of(int k);
std::int64_t s1_of(int k);

enum class Regime { low, mid, high };
std::string to_string(Regime regime);

struct RegimeParams
{
    std::int64_t s0 = 0;
    std::int64_t s1 = 0;
    Regime regime = Regime::low;
    std::optional<int> i_star;
    std::optional<int> p_star;
    std::optional<int> j_star;
};

RegimeParams regime_params(int k, int s);

std::int64_t b_param(int k, int p, int j);
/// 1 + 2p(k-1) / (j(p-1)); independent of s.
Rational l_param(int k, int p, int j);
/// b_param(k, p, j) <= C(k,2) - s + 2.
bool pj_feasible(int k, int s, int p, int j);

struct LOpt
{
    Rational value;
    int p = 0;
    int j = 0;
};

/// Minimum of l_param over every feasible (p, j); needs s > s0(k).
LOpt l_opt(int k, int s);

struct ThresholdReport
{
    int k = 0;
    int s = 0;
    RegimeParams params;
    PowerProduct base;
    BigInt r0;
    BigInt r1;
    std::optional<LOpt> l_opt;
};

/// The bracketed expression whose least greater integer is r0(k, s).
PowerProduct r0_base(int k, int s, const RegimeParams & params);

ThresholdReport r0(int k, int s);
BigInt r1(int k, int s);

/// r0 values for k = 3 come from earlier work on triangles, not from the
/// formulas here. Returns nullopt outside s in {2, 3}.
std::optional<int> prior_work_r0_k3(int s);

void check_range(int k, int s);

nlohmann::ordered_json to_json(const ThresholdReport & report);

struct ThresholdTable
{
    std::vector<int> ks;
    std::vector<int> ss;
    /// cells[row][col]; nullopt where s > C(k,2).
    std::vector<std::vector<std::optional<ThresholdReport>>> cells;
};

ThresholdTable emit_tables(const std::vector<int> & ks, const std::vector<int> & ss);

/// Grid with k as rows. Asterisk marks the first s > s0, a star the first s > s1.
std::string table_markdown(const ThresholdTable & table, bool r1_table);
std::string table_csv(const ThresholdTable & table);
nlohmann::ordered_json table_json(const ThresholdTable & table);

} // namespace rtl

#endif // RTL_THRESHOLDS_HH
