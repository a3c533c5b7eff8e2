#ifndef RTL_LPVERIFY_HH
#define RTL_LPVERIFY_HH

#include <rtl/exactnum.hh>

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

namespace rtl {

/// coefficient * (e_lo + ... + e_hi) <= bound
struct LPConstraint
{
    int row = 0; // the i of the clique-counting claim; 0 for the extra cap
    Rational coefficient;
    int lo = 0;
    int hi = 0;
    Rational bound = 1;
};

enum class LPVariant { low, mid_high };

/// The list-size LP behind the stability argument, normalised to beta m^2 = 1.
/// Variable e_j counts cluster edges with lists of size j; the objective is
/// prod_j j^(e_j).
struct StabilityLP
{
    int k = 0;
    int s = 0;
    LPVariant variant = LPVariant::low;
    int p = 0;
    int j = 0;
    std::vector<int> variables; // ascending indices
    std::vector<LPConstraint> constraints;
    std::optional<LPConstraint> extra;

    /// Indices with objective weight, i.e. every variable except e_1.
    std::vector<int> weighted_variables() const;
};

StabilityLP build_lp(int k, int s);
StabilityLP build_lp_mid_high(int k, int s, int p, int j);

using LPPoint = std::map<int, Rational>;

/// The optimum proposed in the stability proof. For the LOW regime that is
/// e_{s-1} = (k-1)/(k-2) and e_{s-A(k,k-i+1)-1} = 1/((k-i-1)(k-i)) for i in [2, i*];
/// the mid/high variant runs i to k-2 and puts the extra cap on e_{s-A(k,2)-1}.
LPPoint claimed_solution(int k, int s);
LPPoint claimed_solution(const StabilityLP & lp);

PowerProduct objective(const LPPoint & point);

struct LPVertex
{
    LPPoint point;
    PowerProduct value;
};

struct LPCertificate
{
    LPPoint claimed_point;
    PowerProduct claimed_value;
    bool feasible = false;
    int tight_rows = 0;
    /// False when some weighted variable sits in no constraint; the vertex
    /// maximum then does not bound the objective.
    bool bounded = false;
    PowerProduct vertex_max;
    LPPoint vertex_argmax;
    bool optimal = false;
    Rational sum_of_point;
    Rational eq14_sum_expected = 2;
    Rational eq14_sum_actual;
    bool eq14_matches = false;
    std::vector<LPVertex> vertices;
    std::size_t bases_tried = 0;
    std::size_t singular_bases = 0;
};

bool is_feasible(const StabilityLP & lp, const LPPoint & point, int * tight_rows = nullptr);

/// Feasibility of `point`, and the exact maximum over all basic feasible
/// solutions of the LP found by enumerating active sets.
LPCertificate certify(const StabilityLP & lp, const LPPoint & point);

/// Bases of the two cases split on beta (large beta vs small beta): they differ only in the
/// exponent of s-A(k,2)-1 (L-2 against L). Returns base_large_beta <=> base_small_beta.
std::strong_ordering compare_case_bases(int k, int s, int p, int j);

nlohmann::ordered_json to_json(const StabilityLP & lp);
nlohmann::ordered_json to_json(const LPCertificate & cert, bool with_vertices = true);
nlohmann::ordered_json factors_to_json(const PowerProduct & x);

} // namespace rtl

#endif // RTL_LPVERIFY_HH
