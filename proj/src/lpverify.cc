#include <rtl/lpverify.hh>
#include <rtl/errors.hh>
#include <rtl/thresholds.hh>

#include <algorithm>
#include <set>

namespace rtl {

std::vector<int> StabilityLP::weighted_variables() const
{
    std::vector<int> out;
    for (int v : variables)
        if (v >= 2)
            out.push_back(v);
    return out;
}

namespace {

Rational row_coefficient(int k, int i)
{
    return make_rational(k - i - 1, k - i);
}

void collect_variables(StabilityLP & lp)
{
    std::set<int> vars;
    auto add = [&](const LPConstraint & c) {
        for (int v = c.lo; v <= c.hi; ++v)
            vars.insert(v);
    };
    for (auto & c : lp.constraints)
        add(c);
    if (lp.extra)
        add(*lp.extra);
    lp.variables.assign(vars.begin(), vars.end());
}

} // namespace

StabilityLP build_lp(int k, int s)
{
    auto params = regime_params(k, s);
    if (params.regime != Regime::low)
        throw ContractViolation("build_lp: (k,s) = (" + std::to_string(k) + "," + std::to_string(s)
                + ") is not in the LOW regime; use build_lp_mid_high");
    StabilityLP lp;
    lp.k = k;
    lp.s = s;
    lp.variant = LPVariant::low;
    for (int i = 1; i <= *params.i_star; ++i) {
        int lo = static_cast<int>(std::max<std::int64_t>(1, s - cap_A(k, k - i)));
        lp.constraints.push_back({i, row_coefficient(k, i), lo, s - 1, Rational(1)});
    }
    collect_variables(lp);
    return lp;
}

StabilityLP build_lp_mid_high(int k, int s, int p, int j)
{
    check_range(k, s);
    if (s <= s0_of(k))
        throw ContractViolation("build_lp_mid_high needs s > s0(k)");
    if (p < 2 || p > k - 1 || j < 1 || j > k - 1 || ! pj_feasible(k, s, p, j))
        throw ContractViolation("(p,j) = (" + std::to_string(p) + "," + std::to_string(j)
                + ") is not feasible for (k,s) = (" + std::to_string(k) + "," + std::to_string(s) + ")");
    StabilityLP lp;
    lp.k = k;
    lp.s = s;
    lp.variant = LPVariant::mid_high;
    lp.p = p;
    lp.j = j;
    for (int i = 1; i <= k - 2; ++i)
        lp.constraints.push_back({i, row_coefficient(k, i), static_cast<int>(s - cap_A(k, k - i)), s - 1, Rational(1)});
    lp.extra = LPConstraint{0, Rational(1), 2, static_cast<int>(s - cap_A(k, 2) - 1), l_param(k, p, j)};
    collect_variables(lp);
    return lp;
}

namespace {

// Indices designated by the telescoping sum: s-1 for i = 1, then
// s - A(k, k-i+1) - 1 for i in [2, last].
std::vector<std::pair<int, Rational>> designated(int k, int s, int last)
{
    std::vector<std::pair<int, Rational>> out;
    out.emplace_back(s - 1, make_rational(k - 1, k - 2));
    for (int i = 2; i <= last; ++i)
        out.emplace_back(static_cast<int>(s - cap_A(k, k - i + 1) - 1), make_rational(1, (k - i - 1) * (k - i)));
    return out;
}

int designated_last(const StabilityLP & lp)
{
    return lp.variant == LPVariant::low ? *regime_params(lp.k, lp.s).i_star : lp.k - 2;
}

} // namespace

LPPoint claimed_solution(const StabilityLP & lp)
{
    LPPoint point;
    for (auto & [index, value] : designated(lp.k, lp.s, designated_last(lp)))
        point[index] += value;
    if (lp.extra)
        point[lp.extra->hi] += lp.extra->bound;
    return point;
}

LPPoint claimed_solution(int k, int s)
{
    return claimed_solution(build_lp(k, s));
}

PowerProduct objective(const LPPoint & point)
{
    PowerProduct value;
    for (auto & [index, e] : point)
        if (index >= 2)
            value *= PowerProduct::power(index, e);
    return value;
}

namespace {

Rational row_sum(const LPConstraint & c, const LPPoint & point)
{
    Rational sum = 0;
    for (auto & [index, value] : point)
        if (index >= c.lo && index <= c.hi)
            sum += value;
    return c.coefficient * sum;
}

std::vector<const LPConstraint *> all_constraints(const StabilityLP & lp)
{
    std::vector<const LPConstraint *> out;
    for (auto & c : lp.constraints)
        out.push_back(&c);
    if (lp.extra)
        out.push_back(&*lp.extra);
    return out;
}

// Solves the square system in place; false when singular.
bool solve(std::vector<std::vector<Rational>> & a, std::vector<Rational> & b)
{
    std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0)
            ++pivot;
        if (pivot == n)
            return false;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0)
                continue;
            Rational factor = a[row][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c)
                a[row][c] -= factor * a[col][c];
            b[row] -= factor * b[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        b[i] /= a[i][i];
    return true;
}

template <typename Visit>
void for_each_subset(std::size_t n, std::size_t size, Visit && visit)
{
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i)
        pick[i] = i;
    while (true) {
        visit(pick);
        std::size_t i = size;
        while (i > 0 && pick[i - 1] == n - size + i - 1)
            --i;
        if (i == 0)
            return;
        ++pick[i - 1];
        for (std::size_t j = i; j < size; ++j)
            pick[j] = pick[j - 1] + 1;
    }
}

} // namespace

bool is_feasible(const StabilityLP & lp, const LPPoint & point, int * tight_rows)
{
    int tight = 0;
    bool ok = true;
    for (auto & [index, value] : point)
        if (value < 0 || ! std::binary_search(lp.variables.begin(), lp.variables.end(), index))
            ok = false;
    for (auto * c : all_constraints(lp)) {
        Rational lhs = row_sum(*c, point);
        if (lhs > c->bound)
            ok = false;
        else if (lhs == c->bound)
            ++tight;
    }
    if (tight_rows)
        *tight_rows = tight;
    return ok;
}

LPCertificate certify(const StabilityLP & lp, const LPPoint & point)
{
    LPCertificate cert;
    cert.claimed_point = point;
    cert.claimed_value = objective(point);
    cert.feasible = is_feasible(lp, point, &cert.tight_rows);
    for (auto & [index, value] : point)
        cert.sum_of_point += value;

    for (auto & [index, value] : designated(lp.k, lp.s, designated_last(lp))) {
        auto it = point.find(index);
        if (it != point.end())
            cert.eq14_sum_actual += it->second;
    }
    cert.eq14_matches = cert.eq14_sum_actual == cert.eq14_sum_expected;

    auto rows = all_constraints(lp);
    const auto & vars = lp.variables;
    cert.bounded = std::all_of(vars.begin(), vars.end(), [&](int v) {
        return v < 2 || std::any_of(rows.begin(), rows.end(), [&](const LPConstraint * c) { return v >= c->lo && v <= c->hi; });
    });
    std::set<LPPoint> seen;
    std::size_t max_size = std::min(rows.size(), vars.size());
    for (std::size_t size = 0; size <= max_size; ++size) {
        for_each_subset(rows.size(), size, [&](const std::vector<std::size_t> & active) {
            for_each_subset(vars.size(), size, [&](const std::vector<std::size_t> & support) {
                ++cert.bases_tried;
                std::vector<std::vector<Rational>> a(size, std::vector<Rational>(size));
                std::vector<Rational> b(size);
                for (std::size_t r = 0; r < size; ++r) {
                    auto & c = *rows[active[r]];
                    for (std::size_t col = 0; col < size; ++col) {
                        int v = vars[support[col]];
                        a[r][col] = (v >= c.lo && v <= c.hi) ? c.coefficient : Rational(0);
                    }
                    b[r] = c.bound;
                }
                if (! solve(a, b)) {
                    ++cert.singular_bases;
                    return;
                }
                LPPoint candidate;
                for (std::size_t col = 0; col < size; ++col) {
                    if (b[col] < 0)
                        return;
                    if (b[col] != 0)
                        candidate[vars[support[col]]] = b[col];
                }
                if (! is_feasible(lp, candidate) || ! seen.insert(candidate).second)
                    return;
                cert.vertices.push_back({candidate, objective(candidate)});
            });
        });
    }

    bool first = true;
    for (auto & v : cert.vertices)
        if (first || pp_compare(v.value, cert.vertex_max) == std::strong_ordering::greater) {
            cert.vertex_max = v.value;
            cert.vertex_argmax = v.point;
            first = false;
        }
    cert.optimal = cert.feasible && pp_compare(cert.claimed_value, cert.vertex_max) == std::strong_ordering::equal;
    return cert;
}

std::strong_ordering compare_case_bases(int k, int s, int p, int j)
{
    check_range(k, s);
    if (s <= s0_of(k) || ! pj_feasible(k, s, p, j))
        throw ContractViolation("compare_case_bases needs s > s0(k) and feasible (p,j)");
    BigInt pivot = BigInt(static_cast<long>(s - cap_A(k, 2) - 1));
    Rational l = l_param(k, p, j);
    PowerProduct rest = PowerProduct::power(s - 1, make_rational(k - 1, k - 2));
    for (int i = 2; i <= k - 2; ++i)
        rest *= PowerProduct::power(s - cap_A(k, k - i + 1) - 1, make_rational(1, (k - i - 1) * (k - i)));
    PowerProduct large_beta = PowerProduct::power(pivot, l - 2) * rest;
    PowerProduct small_beta = PowerProduct::power(pivot, l) * rest;
    return pp_compare(large_beta, small_beta);
}

nlohmann::ordered_json factors_to_json(const PowerProduct & x)
{
    auto out = nlohmann::ordered_json::array();
    for (auto f = x.factors().rbegin(); f != x.factors().rend(); ++f)
        out.push_back({f->base.get_str(), f->exponent.get_str()});
    return out;
}

namespace {

nlohmann::ordered_json point_json(const LPPoint & point)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (auto & [index, value] : point)
        j["e" + std::to_string(index)] = value.get_str();
    return j;
}

} // namespace

nlohmann::ordered_json to_json(const StabilityLP & lp)
{
    nlohmann::ordered_json j;
    j["k"] = lp.k;
    j["s"] = lp.s;
    j["variant"] = lp.variant == LPVariant::low ? "LOW" : "MID_HIGH";
    if (lp.variant == LPVariant::mid_high) {
        j["p"] = lp.p;
        j["j"] = lp.j;
    }
    j["variables"] = lp.variables;
    auto rows = nlohmann::ordered_json::array();
    auto row_json = [](const LPConstraint & c) {
        return nlohmann::ordered_json{{"row", c.row}, {"coefficient", c.coefficient.get_str()},
            {"lo", c.lo}, {"hi", c.hi}, {"bound", c.bound.get_str()}};
    };
    for (auto & c : lp.constraints)
        rows.push_back(row_json(c));
    j["constraints"] = rows;
    j["extra_constraint"] = lp.extra ? row_json(*lp.extra) : nlohmann::ordered_json(nullptr);
    return j;
}

nlohmann::ordered_json to_json(const LPCertificate & cert, bool with_vertices)
{
    nlohmann::ordered_json j;
    j["claimed_point"] = point_json(cert.claimed_point);
    j["claimed_value"] = factors_to_json(cert.claimed_value);
    j["claimed_value_text"] = cert.claimed_value.to_string();
    j["feasible"] = cert.feasible;
    j["tight_rows"] = cert.tight_rows;
    j["bounded"] = cert.bounded;
    j["vertex_max"] = factors_to_json(cert.vertex_max);
    j["vertex_argmax"] = point_json(cert.vertex_argmax);
    j["optimal"] = cert.optimal;
    j["sum_of_point"] = cert.sum_of_point.get_str();
    j["eq14_sum_expected"] = cert.eq14_sum_expected.get_str();
    j["eq14_sum_actual"] = cert.eq14_sum_actual.get_str();
    j["eq14_matches"] = cert.eq14_matches;
    j["bases_tried"] = cert.bases_tried;
    j["singular_bases"] = cert.singular_bases;
    if (with_vertices) {
        auto vertices = nlohmann::ordered_json::array();
        for (auto & v : cert.vertices)
            vertices.push_back({{"point", point_json(v.point)}, {"value", factors_to_json(v.value)}});
        j["vertices"] = vertices;
    }
    return j;
}

} // namespace rtl
