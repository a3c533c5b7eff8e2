#include <rtl/errors.hh>
#include <rtl/propcheck.hh>
#include <rtl/thresholds.hh>

#include <doctest.h>

using namespace rtl;

TEST_CASE("lemma on l-partite subgraphs")
{
    auto report = check_lpartite_lemma(2, 4, 6);
    CHECK(report.passed());
    CHECK(report.instances_tested > 0);
    CHECK(max_lpartite(cycle(5), 2).cross_edges * 2 > 5);
    CHECK(max_lpartite(complete(4), 3).cross_edges * 3 > 2 * 6);
    auto sampled = check_lpartite_lemma(2, 3, 4, 20, 11, 42);
    CHECK(sampled.passed());
    CHECK(sampled.seed == 42u);
}

TEST_CASE("stability of near-Turan graphs")
{
    Graph g = remove_edges(turan_graph(8, 4), {0});
    auto a = check_furedi(g, 4);
    CHECK(a.passed());
    CHECK(check_furedi(cycle(5), 3).passed());
    CHECK(check_furedi(complete_multipartite({3, 2, 2}), 4).passed());
    CHECK_THROWS_AS(check_furedi(complete(4), 4), ContractViolation);

    auto samples = check_furedi_samples(100, 9);
    CHECK(samples.passed());
    CHECK(samples.instances_tested == 100);
    auto again = check_furedi_samples(100, 9);
    CHECK(to_json(samples).dump() == to_json(again).dump());
}

TEST_CASE("part sizes")
{
    auto report = check_part_sizes(100, 4, 60, 9, 3);
    CHECK(report.passed());
    CHECK(report.instances_tested > 0);
    CHECK(check_part_sizes(50, 5, 40, 16, 8).passed());
}

TEST_CASE("entropy inequalities")
{
    auto report = check_entropy();
    CHECK(report.passed());
    CHECK(report.instances_tested == 41u * 60u + 64u);
}

TEST_CASE("turan bounds")
{
    CHECK(check_turan_bounds(3, 8, 200).passed());
}

TEST_CASE("pairs census")
{
    auto census = pairs_census(4, 9, 3);
    CHECK(census.pairs.count({5, 4}));
    CHECK(census.pairs.count({9, 3}));
    CHECK_FALSE(census.pairs.count({4, 4}));
    CHECK(census.contains_published);
    CHECK(census.equals_published_plus_s3);
    CHECK(census.s4_equals_published_minus_9_3);
    CHECK_FALSE(census.notes.empty());
    for (int k = 4; k <= 9; ++k)
        CHECK(census.pairs.count({k, 3}));
    CHECK(census.pairs.size() == 13);
    CHECK(published_tight_pairs().size() == 8);
}

TEST_CASE("find k0")
{
    auto a = find_k0(3, 30);
    CHECK(a.qualifying.size() == 27);
    CHECK(a.k0 == 4);
    auto b = find_k0(4, 30);
    REQUIRE(b.k0);
    CHECK(b.qualifying.back() == 30);
    for (int k = *b.k0; k <= 30; ++k) {
        CHECK(r0(k, 4).r0 == 4);
        CHECK(r1(k, 4) == 3);
    }
}

TEST_CASE("report serialisation")
{
    std::vector<CheckReport> reports = {check_turan_bounds(3, 4, 10)};
    CheckReport failing;
    failing.check_name = "demo";
    failing.fail("x", "y");
    reports.push_back(failing);
    auto md = summary_markdown(reports);
    CHECK(md.find("| turan_bounds |") != std::string::npos);
    CHECK(md.find("fail") != std::string::npos);
    CHECK(to_json(failing)["verdict"] == "fail");
}
