#include <rtl/thresholds.hh>
#include <rtl/errors.hh>

#include <sstream>

namespace rtl {

std::int64_t binom2(std::int64_t n)
{
    return n < 2 ? 0 : n * (n - 1) / 2;
}

std::int64_t turan_ex(std::int64_t n, int k)
{
    if (n < 1 || k < 2)
        throw ContractViolation("turan_ex needs n >= 1 and k >= 2");
    std::int64_t parts = k - 1;
    std::int64_t small = n / parts, large_count = n % parts;
    return binom2(n) - large_count * binom2(small + 1) - (parts - large_count) * binom2(small);
}

std::int64_t cap_A(int k, int j)
{
    if (k < 3 || j < 2 || j > k)
        throw ContractViolation("cap_A(" + std::to_string(k) + ", " + std::to_string(j) + ") out of range");
    return binom2(k) - turan_ex(k, j + 1);
}

std::int64_t s0_of(int k)
{
    return cap_A(k, 2) + 2;
}

std::int64_t s1_of(int k)
{
    return binom2(k) - k / 2 + 2;
}

std::string to_string(Regime regime)
{
    switch (regime) {
        case Regime::low: return "LOW";
        case Regime::mid: return "MID";
        case Regime::high: return "HIGH";
    }
    return "?";
}

void check_range(int k, int s)
{
    if (k == 3)
        throw ContractViolation("k = 3 is outside the threshold formulas; the values r0(3,2) = 2 and r0(3,3) = 4 "
                "are cited from prior work on triangles (see prior_work_r0_k3)");
    if (k < 4)
        throw ContractViolation("threshold formulas need k >= 4, got k = " + std::to_string(k));
    if (s < 2 || s > binom2(k))
        throw ContractViolation("s = " + std::to_string(s) + " outside [2, C(" + std::to_string(k) + ",2)]");
}

std::optional<int> prior_work_r0_k3(int s)
{
    if (s == 2)
        return 2;
    if (s == 3)
        return 4;
    return std::nullopt;
}

std::int64_t b_param(int k, int p, int j)
{
    std::int64_t full = k / p;
    return std::min<std::int64_t>(j * binom2(p), full * binom2(p) + binom2(k - full * p));
}

Rational l_param(int k, int p, int j)
{
    if (p < 2 || j < 1)
        throw ContractViolation("l_param needs p >= 2 and j >= 1");
    return Rational(1) + make_rational(2 * p * (k - 1), j * (p - 1));
}

bool pj_feasible(int k, int s, int p, int j)
{
    return b_param(k, p, j) <= binom2(k) - s + 2;
}

RegimeParams regime_params(int k, int s)
{
    check_range(k, s);
    RegimeParams params;
    params.s0 = s0_of(k);
    params.s1 = s1_of(k);
    if (s <= params.s0) {
        params.regime = Regime::low;
        for (int i = 1; i <= k - 2; ++i)
            if (cap_A(k, k - i) >= s - 2) {
                params.i_star = i;
                break;
            }
        if (! params.i_star)
            throw ContractViolation("no i* for (k,s) = (" + std::to_string(k) + "," + std::to_string(s) + ")");
    }
    else if (s <= params.s1) {
        params.regime = Regime::mid;
        for (int p = 2; p <= k - 1; ++p)
            if (pj_feasible(k, s, p, k - 1))
                params.p_star = p;
        if (! params.p_star)
            throw ContractViolation("no p* for (k,s) = (" + std::to_string(k) + "," + std::to_string(s) + ")");
    }
    else {
        params.regime = Regime::high;
        for (int j = 1; j <= k - 1; ++j)
            if (pj_feasible(k, s, 2, j))
                params.j_star = j;
        if (! params.j_star)
            throw ContractViolation("no j* for (k,s) = (" + std::to_string(k) + "," + std::to_string(s) + ")");
    }
    return params;
}

LOpt l_opt(int k, int s)
{
    check_range(k, s);
    if (s <= s0_of(k))
        throw ContractViolation("L_opt is defined only for s > s0(k)");
    std::optional<LOpt> best;
    for (int p = 2; p <= k - 1; ++p)
        for (int j = 1; j <= k - 1; ++j) {
            if (! pj_feasible(k, s, p, j))
                continue;
            Rational value = l_param(k, p, j);
            if (! best || value < best->value)
                best = LOpt{value, p, j};
        }
    if (! best)
        throw ContractViolation("no feasible (p,j) for L_opt");
    return *best;
}

namespace {

// (s - A(k, k-i+1) - 1)^(1/((k-i-1)(k-i))) for i in [2, last]
PowerProduct lower_chain(int k, int s, int last)
{
    PowerProduct result;
    for (int i = 2; i <= last; ++i)
        result *= PowerProduct::power(s - cap_A(k, k - i + 1) - 1, make_rational(1, (k - i - 1) * (k - i)));
    return result;
}

} // namespace

PowerProduct r0_base(int k, int s, const RegimeParams & params)
{
    PowerProduct top = PowerProduct::power(s - 1, make_rational(k - 1, k - 2));
    switch (params.regime) {
        case Regime::low:
            return top * lower_chain(k, s, *params.i_star);
        case Regime::mid:
            return PowerProduct::power(s - cap_A(k, 2) - 1, l_param(k, *params.p_star, k - 1))
                * lower_chain(k, s, k - 2) * top;
        case Regime::high:
            return PowerProduct::power(s - cap_A(k, 2) - 1, l_param(k, 2, *params.j_star))
                * lower_chain(k, s, k - 2) * top;
    }
    throw ContractViolation("unknown regime");
}

BigInt r1(int k, int s)
{
    check_range(k, s);
    PowerProduct x = PowerProduct::power(s - 1, make_rational(k - 1, k - 2));
    BigInt f = pp_floor(x);
    return pp_is_integer(x) ? BigInt(f - 1) : f;
}

ThresholdReport r0(int k, int s)
{
    ThresholdReport report;
    report.k = k;
    report.s = s;
    report.params = regime_params(k, s);
    report.base = r0_base(k, s, report.params);
    report.r0 = least_integer_greater(report.base);
    report.r1 = r1(k, s);
    if (report.params.regime != Regime::low)
        report.l_opt = l_opt(k, s);
    return report;
}

namespace {

nlohmann::ordered_json factors_json(const PowerProduct & x)
{
    auto out = nlohmann::ordered_json::array();
    // same order as to_string
    for (auto f = x.factors().rbegin(); f != x.factors().rend(); ++f)
        out.push_back({f->base.get_str(), f->exponent.get_str()});
    return out;
}

std::string cell_text(const ThresholdReport & cell, bool r1_table)
{
    std::string text = r1_table ? cell.r1.get_str() : cell.r0.get_str();
    if (r1_table)
        return text;
    if (cell.s == cell.params.s0 + 1)
        text += "*";
    if (cell.s == cell.params.s1 + 1)
        text += "⋆";
    return text;
}

} // namespace

nlohmann::ordered_json to_json(const ThresholdReport & report)
{
    nlohmann::ordered_json j;
    j["k"] = report.k;
    j["s"] = report.s;
    j["s0"] = std::to_string(report.params.s0);
    j["s1"] = std::to_string(report.params.s1);
    j["regime"] = to_string(report.params.regime);
    j["i_star"] = report.params.i_star ? nlohmann::ordered_json(*report.params.i_star) : nullptr;
    j["p_star"] = report.params.p_star ? nlohmann::ordered_json(*report.params.p_star) : nullptr;
    j["j_star"] = report.params.j_star ? nlohmann::ordered_json(*report.params.j_star) : nullptr;
    j["base"] = report.base.to_string();
    j["base_factors"] = factors_json(report.base);
    j["r0"] = report.r0.get_str();
    j["r1"] = report.r1.get_str();
    if (report.l_opt)
        j["l_opt"] = {{"value", report.l_opt->value.get_str()}, {"p", report.l_opt->p}, {"j", report.l_opt->j}};
    else
        j["l_opt"] = nullptr;
    return j;
}

ThresholdTable emit_tables(const std::vector<int> & ks, const std::vector<int> & ss)
{
    ThresholdTable table{ks, ss, {}};
    for (int k : ks) {
        if (k < 4)
            check_range(k, 2);
        auto & row = table.cells.emplace_back();
        for (int s : ss)
            if (s >= 2 && s <= binom2(k))
                row.push_back(r0(k, s));
            else
                row.emplace_back();
    }
    return table;
}

std::string table_markdown(const ThresholdTable & table, bool r1_table)
{
    std::ostringstream out;
    out << "| k \\ s |";
    for (int s : table.ss)
        out << ' ' << s << " |";
    out << "\n|---|";
    for (std::size_t c = 0; c < table.ss.size(); ++c)
        out << "---|";
    out << '\n';
    for (std::size_t r = 0; r < table.ks.size(); ++r) {
        out << "| " << table.ks[r] << " |";
        for (auto & cell : table.cells[r]) {
            out << ' ';
            if (cell && ! (r1_table && cell->s < 3))
                out << cell_text(*cell, r1_table);
            out << " |";
        }
        out << '\n';
    }
    return out.str();
}

std::string table_csv(const ThresholdTable & table)
{
    std::ostringstream out;
    out << "k,s,r0,r1,regime\n";
    for (auto & row : table.cells)
        for (auto & cell : row)
            if (cell)
                out << cell->k << ',' << cell->s << ',' << cell->r0.get_str() << ',' << cell->r1.get_str() << ','
                    << to_string(cell->params.regime) << '\n';
    return out.str();
}

nlohmann::ordered_json table_json(const ThresholdTable & table)
{
    auto cells = nlohmann::ordered_json::array();
    for (auto & row : table.cells)
        for (auto & cell : row)
            if (cell)
                cells.push_back(to_json(*cell));
    return cells;
}

} // namespace rtl
