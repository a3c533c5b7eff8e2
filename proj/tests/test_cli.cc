#include <rtl/cli.hh>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

using namespace rtl;

namespace {

struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "rtl");
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json result_of(const Run & r)
{
    return nlohmann::json::parse(r.out)["result"];
}

} // namespace

TEST_CASE("integer lists")
{
    CHECK(parse_int_list("4..6") == std::vector<int>{4, 5, 6});
    CHECK(parse_int_list("2,3,7") == std::vector<int>{2, 3, 7});
    CHECK(parse_int_list("9") == std::vector<int>{9});
}

TEST_CASE("thresholds")
{
    auto r = run({"thresholds", "--k", "4", "--s", "5", "--format", "json"});
    REQUIRE(r.code == exit_code::success);
    auto j = result_of(r);
    CHECK(j["r0"] == "222");
    CHECK(j["r1"] == "7");
    CHECK(j["regime"] == "MID");
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["tool_version"] == "0.1.0");
    CHECK(doc["config"]["parameters"]["k"] == "4");

    auto md = run({"thresholds", "--k", "4", "--s", "5"});
    CHECK(md.out.rfind("<!-- rtl 0.1.0", 0) == 0);
    CHECK(md.out.find("| r0 | 222 |") != std::string::npos);

    auto k3 = run({"thresholds", "--k", "3", "--s", "3"});
    CHECK(k3.code == exit_code::contract);
    CHECK(k3.err.find("k = 3") != std::string::npos);
}

TEST_CASE("threshold table")
{
    auto r = run({"thresholds", "table", "--k", "4..6", "--format", "md"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("222*") != std::string::npos);
    CHECK(r.out.find("457*") != std::string::npos);
    CHECK(r.out.find("606*") != std::string::npos);
    CHECK(r.out.find("⋆") != std::string::npos);
    auto csv = run({"thresholds", "table", "--k", "4", "--format", "csv"});
    CHECK(csv.out.rfind("# rtl 0.1.0", 0) == 0);
    CHECK(csv.out.find("4,6,5434,11,MID") != std::string::npos);
}

TEST_CASE("count")
{
    auto a = run({"count", "--turan", "6", "4", "--k", "4", "--s", "3", "--r", "7", "--format", "json"});
    REQUIRE(a.code == 0);
    CHECK(result_of(a)["value"] == "13841287201");
    auto b = run({"count", "--complete", "4", "--k", "4", "--s", "4", "--r", "2", "--format", "json"});
    CHECK(result_of(b)["value"] == "64");
    auto c = run({"count", "--complete", "4", "--k", "4", "--s", "2", "--r", "3", "--method", "brute", "--format", "json"});
    CHECK(result_of(c)["value"] == "3");
    CHECK(result_of(c)["method"] == "brute");
    auto d = run({"count", "--parts", "2,2,1", "--k", "3", "--s", "3", "--r", "3", "--method", "census", "--format", "json"});
    auto e = run({"count", "--graph6", "D]{", "--k", "3", "--s", "3", "--r", "3", "--method", "brute", "--format", "json"});
    REQUIRE(d.code == 0);
    REQUIRE(e.code == 0);
    CHECK(result_of(d)["value"] == result_of(e)["value"]);
}

TEST_CASE("count errors")
{
    CHECK(run({"count", "--complete", "8", "--k", "3", "--s", "2", "--r", "3", "--method", "brute"}).code
            == exit_code::resource);
    CHECK(run({"count", "--graph6", "D?", "--k", "3", "--s", "2", "--r", "3"}).code == exit_code::usage);
    CHECK(run({"count", "--k", "3", "--s", "2", "--r", "3"}).code == exit_code::usage);
    CHECK(run({"count", "--complete", "4"}).code == exit_code::usage);
    CHECK(run({"nonsense"}).code == exit_code::usage);
    CHECK(run({"thresholds", "--k", "4", "--s", "5", "--format", "xml"}).code == exit_code::usage);
}

TEST_CASE("lp")
{
    auto r = run({"lp", "--k", "5", "--s", "4", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = result_of(r);
    CHECK(j["certificate"]["optimal"] == true);
    CHECK(j["certificate"]["claimed_value"].dump() == R"([["3","4/3"],["2","1/6"]])");
    CHECK(j["vertex_max_equals_r0_base"] == true);
    auto mid = run({"lp", "--k", "4", "--s", "5", "--format", "json", "--no-vertices"});
    CHECK(result_of(mid)["case_bases_ordered"] == "less");
    CHECK_FALSE(result_of(mid)["certificate"].contains("vertices"));
}

TEST_CASE("pairs, findk0, scan, props")
{
    auto p = run({"pairs", "--k", "4..9", "--s-min", "3", "--format", "json"});
    REQUIRE(p.code == 0);
    CHECK(result_of(p)["pairs"].dump().find("[9,3]") != std::string::npos);
    CHECK(result_of(p)["pairs"].size() == 13);
    CHECK(result_of(p)["contains_published"] == true);

    auto k0 = run({"findk0", "--s", "3", "--k-max", "30", "--format", "json"});
    CHECK(result_of(k0)["k0"] == 4);

    auto s = run({"scan", "--n", "5", "--k", "4", "--s", "4", "--r", "2", "--format", "json"});
    REQUIRE(s.code == 0);
    CHECK(result_of(s)["rows"][0]["graph6"] == "D~{");

    auto t = run({"props", "--only", "turan", "--format", "csv"});
    CHECK(t.code == 0);
    CHECK(t.out.find("turan_bounds,") != std::string::npos);
}

TEST_CASE("json output is reproducible")
{
    std::vector<std::string> args = {"scan", "--n", "6", "--k", "4", "--s", "3", "--r", "3", "--format", "json"};
    CHECK(run(args).out == run(args).out);
    std::vector<std::string> props = {"props", "--only", "furedi", "--seed", "11", "--format", "json"};
    CHECK(run(props).out == run(props).out);
}

TEST_CASE("config file and cache")
{
    auto dir = std::filesystem::temp_directory_path();
    auto config = (dir / "rtl_test.ini").string();
    {
        std::ofstream out(config);
        out << "format = json\nthreads = 2\n";
    }
    auto a = run({"--config", config, "thresholds", "--k", "4", "--s", "3"});
    REQUIRE(a.code == 0);
    CHECK(nlohmann::json::parse(a.out)["config"]["threads"] == 2);
    auto b = run({"--config", config, "--format", "csv", "thresholds", "--k", "4", "--s", "3"});
    CHECK(b.out.rfind("# ", 0) == 0);

    auto cache = (dir / "rtl_test_cli_cache.jsonl").string();
    std::filesystem::remove(cache);
    setenv("RTL_CACHE", cache.c_str(), 1);
    auto c = run({"count", "--complete", "5", "--k", "4", "--s", "3", "--r", "3", "--format", "json"});
    unsetenv("RTL_CACHE");
    REQUIRE(c.code == 0);
    CHECK(nlohmann::json::parse(c.out)["config"]["cache_path"] == cache);
    CHECK(std::filesystem::exists(cache));
    auto d = run({"count", "--complete", "5", "--k", "4", "--s", "3", "--r", "3", "--cache", cache, "--format", "json"});
    CHECK(result_of(d)["value"] == result_of(c)["value"]);
    std::filesystem::remove(cache);

    {
        std::ofstream out(config);
        out << "format = json\ncache = " << (dir / "from_config.jsonl").string() << "\n";
    }
    auto from_config = run({"--config", config, "thresholds", "--k", "4", "--s", "3"});
    CHECK(nlohmann::json::parse(from_config.out)["config"]["cache_path"] == (dir / "from_config.jsonl").string());
    setenv("RTL_CACHE", cache.c_str(), 1);
    auto env_wins = run({"--config", config, "thresholds", "--k", "4", "--s", "3"});
    auto flag_wins = run({"--config", config, "--cache", "x.jsonl", "thresholds", "--k", "4", "--s", "3"});
    unsetenv("RTL_CACHE");
    CHECK(nlohmann::json::parse(env_wins.out)["config"]["cache_path"] == cache);
    CHECK(nlohmann::json::parse(flag_wins.out)["config"]["cache_path"] == "x.jsonl");
    std::filesystem::remove(config);
}
