#include <rtl/errors.hh>
#include <rtl/thresholds.hh>

#include <algorithm>
#include <map>

#include <doctest.h>

using namespace rtl;

namespace {

// Largest j-partite subgraph of K_k by trying every labelling.
std::int64_t brute_cap_A(int k, int j)
{
    std::vector<int> label(k, 0);
    std::int64_t best = 0;
    while (true) {
        std::int64_t cross = 0;
        for (int u = 0; u < k; ++u)
            for (int v = u + 1; v < k; ++v)
                cross += label[u] != label[v];
        best = std::max(best, cross);
        int pos = 0;
        while (pos < k && ++label[pos] == j)
            label[pos++] = 0;
        if (pos == k)
            break;
    }
    return binom2(k) - best;
}

const std::map<int, std::vector<long>> table1 = {
    {4, {2, 3, 8, 222, 5434}},
    {5, {2, 3, 5, 11, 19, 457, 3270, 55507, 218896}},
    {6, {2, 3, 5, 7, 15, 24, 35, 606, 3528, 0, 309393, 933907, 0, 0}},
};

const std::map<int, std::vector<long>> table2 = {
    {4, {2, 5, 7, 11}},
    {5, {2, 4, 6, 8, 10, 13, 15, 18}},
    {6, {2, 3, 5, 7, 9, 11, 13, 15, 17, 20, 22, 24, 27}},
};

} // namespace

TEST_CASE("turan_ex examples")
{
    CHECK(turan_ex(6, 4) == 12);
    CHECK(turan_ex(5, 5) == 9);
    CHECK(turan_ex(9, 9) == 35);
    CHECK(turan_ex(3, 4) == 3);
}

TEST_CASE("cap_A examples and brute force")
{
    CHECK(cap_A(4, 2) == 2);
    CHECK(cap_A(5, 4) == 1);
    CHECK(cap_A(6, 2) == 6);
    for (int k = 3; k <= 8; ++k)
        for (int j = 2; j < k; ++j)
            CHECK(cap_A(k, j) == brute_cap_A(k, j));
}

TEST_CASE("A(k,k-i) = i for i <= k/2")
{
    for (int k = 4; k <= 12; ++k)
        for (int i = 1; i <= k / 2 && k - i >= 2; ++i)
            CHECK(cap_A(k, k - i) == i);
}

TEST_CASE("regime examples")
{
    auto a = regime_params(4, 5);
    CHECK(a.s0 == 4);
    CHECK(a.s1 == 6);
    CHECK(a.regime == Regime::mid);
    CHECK(a.p_star == 3);
    CHECK_FALSE(a.i_star);
    CHECK_FALSE(a.j_star);

    auto b = regime_params(6, 9);
    CHECK(b.s0 == 8);
    CHECK(b.s1 == 14);
    CHECK(b.regime == Regime::mid);

    auto c = regime_params(6, 15);
    CHECK(c.regime == Regime::high);
    CHECK(c.j_star == 2);
    CHECK_FALSE(c.p_star);
}

TEST_CASE("b and L examples")
{
    CHECK(b_param(4, 2, 3) == 2);
    CHECK(b_param(4, 3, 3) == 3);
    CHECK(l_param(4, 3, 3) == 4);
}

TEST_CASE("r0 and r1 examples")
{
    CHECK(r0(4, 3).r0 == 3);
    CHECK(r0(4, 5).r0 == 222);
    CHECK(r0(6, 10).r0 == 3528);
    CHECK(r0(5, 8).r0 == 3270);
    CHECK(r1(4, 4) == 5);
    CHECK(r1(6, 15) == 27);
    CHECK(r1(5, 10) == 18);
}

TEST_CASE("tables for k = 4..6")
{
    for (auto & [k, row] : table1)
        for (std::size_t c = 0; c < row.size(); ++c)
            if (row[c])
                CHECK_MESSAGE(r0(k, static_cast<int>(c) + 2).r0 == row[c], "k=" << k << " s=" << c + 2);
    for (auto & [k, row] : table2)
        for (std::size_t c = 0; c < row.size(); ++c)
            CHECK_MESSAGE(r1(k, static_cast<int>(c) + 3) == row[c], "k=" << k << " s=" << c + 3);
    BigInt big = r0(6, 15).r0;
    CHECK(big >= BigInt("1350000000000"));
    CHECK(big <= BigInt("1500000000000"));
}

TEST_CASE("l_opt examples")
{
    auto a = l_opt(4, 5);
    CHECK(a.value == 4);
    CHECK(a.p == 3);
    CHECK(a.j == 3);
    auto b = l_opt(6, 15);
    CHECK(b.value == 11);
    CHECK(b.p == 2);
    CHECK(b.j == 2);
    CHECK(l_opt(4, 6).value == 5);
    CHECK(l_opt(4, 6).j == 3);
    CHECK_THROWS_AS(l_opt(4, 4), ContractViolation);
}

TEST_CASE("invariants for k in [4,12]")
{
    for (int k = 4; k <= 12; ++k) {
        CHECK(r0(k, 2).r0 == 2);
        CHECK(r0(k, 2).base.is_one());
        for (int s = 2; s <= binom2(k); ++s) {
            auto report = r0(k, s);
            auto & p = report.params;
            CHECK(report.r0 == least_integer_greater(report.base));
            if (s >= 3)
                CHECK(report.r1 < report.r0);
            CHECK(p.i_star.has_value() == (p.regime == Regime::low));
            CHECK(p.p_star.has_value() == (p.regime == Regime::mid));
            CHECK(p.j_star.has_value() == (p.regime == Regime::high));
            if (p.i_star && s == 2)
                CHECK(*p.i_star == 1);
            if (p.i_star && s >= 3) {
                CHECK(*p.i_star <= std::min(s - 2, k - 2));
                // closed form: least i with A(k,k-i) >= s-2 equals s-2 while s-2 <= k/2
                if (s - 2 <= k / 2)
                    CHECK(*p.i_star == s - 2);
            }
            if (p.regime != Regime::low) {
                auto opt = l_opt(k, s);
                REQUIRE(report.l_opt);
                if (p.regime == Regime::mid) {
                    CHECK(opt.j == k - 1);
                    CHECK(opt.value > 3);
                    CHECK(opt.value <= 5);
                    CHECK(l_param(k, *p.p_star, k - 1) == opt.value);
                }
                else {
                    CHECK(opt.value == 1 + make_rational(4 * (k - 1), binom2(k) - s + 2));
                    CHECK(opt.value > 9);
                    CHECK(l_param(k, 2, *p.j_star) == opt.value);
                    // above s1 the cap C(k,2) - s + 2 is below floor(k/2), so j* equals it
                    CHECK(*p.j_star == std::min<std::int64_t>(k - 1, binom2(k) - s + 2));
                }
            }
        }
    }
}

TEST_CASE("turan bounds for n in [k, 200]")
{
    for (int k = 3; k <= 8; ++k)
        for (int n = k; n <= 200; ++n) {
            Rational upper = make_rational(static_cast<long>(k - 2) * n * n, 2 * (k - 1));
            Rational ex(static_cast<long>(turan_ex(n, k)));
            CHECK(ex <= upper);
            CHECK(ex > upper - k + 1);
        }
}

TEST_CASE("k = 3 is outside the formulas")
{
    CHECK_THROWS_AS(r0(3, 3), ContractViolation);
    CHECK(prior_work_r0_k3(2) == 2);
    CHECK(prior_work_r0_k3(3) == 4);
    CHECK_FALSE(prior_work_r0_k3(4));
    CHECK_THROWS_AS(r0(4, 7), ContractViolation);
    CHECK_THROWS_AS(r0(4, 1), ContractViolation);
}

TEST_CASE("table serialisation")
{
    auto t = emit_tables({4, 5, 6}, {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15});
    auto md = table_markdown(t, false);
    CHECK(md.find("| 4 | 2 | 3 | 8 | 222* | 5434 |") != std::string::npos);
    CHECK(md.find("457*") != std::string::npos);
    CHECK(md.find("606*") != std::string::npos);
    CHECK(md.find("1445567573761⋆") != std::string::npos);
    auto r1md = table_markdown(t, true);
    CHECK(r1md.find("| 5 |  | 2 | 4 | 6 | 8 | 10 | 13 | 15 | 18 |") != std::string::npos);
    auto csv = table_csv(t);
    CHECK(csv.rfind("k,s,r0,r1,regime\n", 0) == 0);
    CHECK(csv.find("4,5,222,7,MID\n") != std::string::npos);
    auto j = table_json(t);
    CHECK(j.dump().find("\"1445567573761\"") != std::string::npos);
}
