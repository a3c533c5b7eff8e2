#include <rtl/cli.hh>
#include <rtl/census.hh>
#include <rtl/errors.hh>
#include <rtl/lpverify.hh>
#include <rtl/propcheck.hh>
#include <rtl/thresholds.hh>
#include <rtl/version.hh>

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

namespace rtl {

std::vector<int> parse_int_list(const std::string & text)
{
    std::vector<int> out;
    auto dots = text.find("..");
    try {
        if (dots != std::string::npos) {
            int lo = std::stoi(text.substr(0, dots)), hi = std::stoi(text.substr(dots + 2));
            for (int v = lo; v <= hi; ++v)
                out.push_back(v);
            return out;
        }
        std::stringstream in(text);
        std::string item;
        while (std::getline(in, item, ','))
            out.push_back(std::stoi(item));
    }
    catch (const std::logic_error &) {
        throw CLI::ValidationError("bad integer list '" + text + "'");
    }
    return out;
}

namespace {

using Json = nlohmann::ordered_json;

enum class Format { md, csv, json };

struct RunConfig
{
    std::string command;
    std::string format = "md";
    int threads = 1;
    std::uint64_t node_budget = CensusOptions{}.node_budget;
    std::uint64_t coloring_budget = default_coloring_budget;
    std::string cache_path;
    std::uint64_t seed = 1;
    std::vector<std::pair<std::string, std::string>> parameters;

    void param(const std::string & key, const std::string & value) { parameters.emplace_back(key, value); }
    void param(const std::string & key, long value) { parameters.emplace_back(key, std::to_string(value)); }

    Json to_json() const
    {
        Json j;
        j["command"] = command;
        j["format"] = format;
        j["threads"] = threads;
        j["node_budget"] = std::to_string(node_budget);
        j["coloring_budget"] = std::to_string(coloring_budget);
        j["cache_path"] = cache_path;
        j["seed"] = std::to_string(seed);
        Json p = Json::object();
        for (auto & [key, value] : parameters)
            p[key] = value;
        j["parameters"] = p;
        return j;
    }

    std::string header_line() const
    {
        std::ostringstream line;
        line << "rtl " << tool_version << " command=" << command << " format=" << format << " threads=" << threads
             << " node_budget=" << node_budget << " coloring_budget=" << coloring_budget
             << " cache=" << (cache_path.empty() ? "-" : cache_path) << " seed=" << seed;
        for (auto & [key, value] : parameters)
            line << ' ' << key << '=' << value;
        return line.str();
    }

    Format output_format() const
    {
        if (format == "json")
            return Format::json;
        if (format == "csv")
            return Format::csv;
        return Format::md;
    }
};

struct Emitter
{
    std::ostream & out;
    const RunConfig & config;

    void json(const Json & result) const
    {
        Json doc;
        doc["tool_version"] = tool_version;
        doc["config"] = config.to_json();
        doc["result"] = result;
        out << doc.dump(2) << '\n';
    }

    void text(const std::string & body) const
    {
        if (config.output_format() == Format::csv)
            out << "# " << config.header_line() << '\n' << body;
        else
            out << "<!-- " << config.header_line() << " -->\n" << body;
    }

    void emit(const Json & result, const std::string & md, const std::string & csv) const
    {
        switch (config.output_format()) {
            case Format::json: json(result); break;
            case Format::csv: text(csv); break;
            case Format::md: text(md); break;
        }
    }
};

std::string ordering_name(std::strong_ordering o)
{
    return o < 0 ? "less" : o > 0 ? "greater" : "equal";
}

std::string join(const std::vector<int> & values, const char * sep)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? sep : "") + std::to_string(values[i]);
    return out;
}

std::string optional_text(const std::optional<int> & value)
{
    return value ? std::to_string(*value) : "-";
}

struct GraphSource
{
    std::string graph6;
    std::string file;
    int complete_n = 0;
    std::vector<int> turan;
    std::string parts;

    std::vector<Graph> load() const
    {
        int given = ! graph6.empty() + ! file.empty() + (complete_n > 0) + ! turan.empty() + ! parts.empty();
        if (given != 1)
            throw CLI::ValidationError("give exactly one of --graph6, --file, --complete, --turan, --parts");
        if (! graph6.empty())
            return {parse_graph6(graph6)};
        if (! file.empty())
            return read_graph6_file(file);
        if (complete_n > 0)
            return {complete(complete_n)};
        if (! turan.empty())
            return {turan_graph(turan.at(0), turan.at(1))};
        return {complete_multipartite(parse_int_list(parts))};
    }
};

} // namespace

int run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Exact thresholds, coloring counts and LP certificates for K_k colorings with few colors", "rtl"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key = value config file; flags take precedence");

    RunConfig config;
    app.add_option("--format", config.format, "Output format")->check(CLI::IsMember({"md", "csv", "json"}));
    app.add_option("--threads", config.threads, "Census worker threads")->check(CLI::PositiveNumber);
    app.add_option("--node-budget", config.node_budget, "Census node budget");
    app.add_option("--coloring-budget", config.coloring_budget, "Brute-force coloring budget");
    app.add_option("--cache", config.cache_path, "Census cache file (JSON lines); RTL_CACHE overrides the config file");
    app.add_option("--seed", config.seed, "Seed for sampled checks");
    bool timing = false;
    app.add_flag("--timing", timing, "Include elapsed times in JSON output");

    // thresholds
    auto * thresholds = app.add_subcommand("thresholds", "r0, r1 and regime data for one (k,s), or a table");
    int th_k = 0, th_s = 0;
    thresholds->add_option("--k", th_k, "Clique order k >= 4");
    thresholds->add_option("--s", th_s, "Number of forbidden colors s");
    auto * table = thresholds->add_subcommand("table", "Grid of r0 and r1 values");
    std::string table_k = "4..6", table_s, which = "both";
    table->add_option("--k", table_k, "k values, e.g. 4..6");
    table->add_option("--s", table_s, "s values, e.g. 2..15 or 2,3,4 (default: all valid)");
    table->add_option("--table", which, "Which grid for md output")->check(CLI::IsMember({"r0", "r1", "both"}));

    // count
    auto * count = app.add_subcommand("count", "Count P_{k,s}-free r-colorings of a graph");
    GraphSource source;
    int c_k = 0, c_s = 0, c_r = 0, c_tmax = 0, split_depth = CensusOptions{}.split_depth;
    std::string method = "auto";
    count->add_option("--graph6", source.graph6, "Graph in graph6 format");
    count->add_option("--file", source.file, "graph6 file, one graph per line");
    count->add_option("--complete", source.complete_n, "Complete graph K_n");
    count->add_option("--turan", source.turan, "Turan graph T_{k-1}(n): --turan n k")->expected(2);
    count->add_option("--parts", source.parts, "Complete multipartite graph, e.g. 2,2,1");
    count->add_option("--k", c_k)->required();
    count->add_option("--s", c_s)->required();
    count->add_option("--r", c_r)->required();
    count->add_option("--method", method)->check(CLI::IsMember({"auto", "brute", "census"}));
    count->add_option("--t-max", c_tmax, "Census truncation (default min(m, r))");
    count->add_option("--split-depth", split_depth, "Depth at which the census is split into tasks");

    // scan
    auto * scan = app.add_subcommand("scan", "Rank complete multipartite graphs (or a graph6 file) by count");
    int sc_n = 0, sc_k = 0, sc_s = 0, sc_r = 0;
    std::string scan_file;
    scan->add_option("--n", sc_n)->required();
    scan->add_option("--k", sc_k)->required();
    scan->add_option("--s", sc_s)->required();
    scan->add_option("--r", sc_r)->required();
    scan->add_option("--file", scan_file, "Rank the graphs of this graph6 file instead");

    // lp
    auto * lp = app.add_subcommand("lp", "Build and certify the stability LP");
    int lp_k = 0, lp_s = 0, lp_p = 0, lp_j = 0;
    bool no_vertices = false;
    lp->add_option("--k", lp_k)->required();
    lp->add_option("--s", lp_s)->required();
    lp->add_option("--p", lp_p, "p for s > s0 (default: the regime witness)");
    lp->add_option("--j", lp_j, "j for s > s0 (default: the regime witness)");
    lp->add_flag("--no-vertices", no_vertices, "Leave the vertex list out of the JSON");

    // props
    auto * props = app.add_subcommand("props", "Run the lemma and inequality checkers");
    std::string only = "all";
    int lemma_n = max_exhaustive_lpartite_order, furedi_count = 100;
    props->add_option("--only", only)->check(CLI::IsMember({"all", "lpartite", "furedi", "parts", "entropy", "turan"}));
    props->add_option("--lpartite-n", lemma_n, "Exhaustive order bound for the l-partite lemma");
    props->add_option("--furedi-samples", furedi_count);

    // pairs
    auto * pairs = app.add_subcommand("pairs", "Pairs (k,s) with r0 = r1 + 1");
    std::string pairs_k = "4..9";
    int s_min = 3;
    pairs->add_option("--k", pairs_k);
    pairs->add_option("--s-min", s_min);

    // findk0
    auto * findk0 = app.add_subcommand("findk0", "Scan k for r0(k,s) = s and r1(k,s) = s-1");
    int k0_s = 3, k0_max = 30;
    findk0->add_option("--s", k0_s);
    findk0->add_option("--k-max", k0_max);

    // ratio
    auto * ratio = app.add_subcommand("ratio", "Exploratory |C(K_n)| / ((s-1)^C(n,2) C(r,s-1)) for small n");
    int ra_n = 6, ra_k = 0, ra_s = 0, ra_r = 0;
    ratio->add_option("--n-max", ra_n);
    ratio->add_option("--k", ra_k)->required();
    ratio->add_option("--s", ra_s)->required();
    ratio->add_option("--r", ra_r)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (! reversed.empty())
            reversed.pop_back();
        app.parse(reversed);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_code::success : exit_code::usage;
    }

    // precedence: --cache flag, then RTL_CACHE, then the config file
    bool cache_flag = std::any_of(args.begin(), args.end(),
            [](const std::string & a) { return a == "--cache" || a.rfind("--cache=", 0) == 0; });
    if (const char * env = std::getenv("RTL_CACHE"); env && *env && ! cache_flag)
        config.cache_path = env;

    Emitter emitter{out, config};
    CountConfig count_config;
    count_config.census.node_budget = config.node_budget;
    count_config.census.threads = config.threads;
    count_config.census.split_depth = split_depth;
    count_config.coloring_budget = config.coloring_budget;
    std::unique_ptr<CensusCache> cache;

    try {
        if (! config.cache_path.empty()) {
            cache = std::make_unique<CensusCache>(config.cache_path);
            count_config.cache = cache.get();
        }

        if (thresholds->parsed() && table->parsed()) {
            config.command = "thresholds table";
            auto ks = parse_int_list(table_k);
            std::vector<int> ss;
            if (table_s.empty()) {
                int top = 2;
                for (int k : ks)
                    top = std::max<int>(top, static_cast<int>(binom2(k)));
                for (int s = 2; s <= top; ++s)
                    ss.push_back(s);
            }
            else
                ss = parse_int_list(table_s);
            config.param("k", table_k);
            config.param("s", table_s.empty() ? "all" : table_s);
            config.param("table", which);
            auto grid = emit_tables(ks, ss);
            std::string md;
            if (which != "r1")
                md += "r0(k,s); * first s > s0, ⋆ first s > s1\n\n" + table_markdown(grid, false);
            if (which == "both")
                md += "\n";
            if (which != "r0")
                md += "r1(k,s)\n\n" + table_markdown(grid, true);
            emitter.emit(table_json(grid), md, table_csv(grid));
        }
        else if (thresholds->parsed()) {
            config.command = "thresholds";
            if (th_k == 0 || th_s == 0)
                throw CLI::ValidationError("thresholds needs --k and --s (or the table subcommand)");
            config.param("k", th_k);
            config.param("s", th_s);
            auto report = r0(th_k, th_s);
            std::ostringstream md, csv;
            md << "| field | value |\n|---|---|\n"
               << "| k | " << report.k << " |\n| s | " << report.s << " |\n"
               << "| s0 | " << report.params.s0 << " |\n| s1 | " << report.params.s1 << " |\n"
               << "| regime | " << to_string(report.params.regime) << " |\n"
               << "| i* | " << optional_text(report.params.i_star) << " |\n"
               << "| p* | " << optional_text(report.params.p_star) << " |\n"
               << "| j* | " << optional_text(report.params.j_star) << " |\n"
               << "| base | " << report.base.to_string() << " |\n"
               << "| r0 | " << report.r0.get_str() << " |\n| r1 | " << report.r1.get_str() << " |\n";
            if (report.l_opt)
                md << "| L_opt | " << report.l_opt->value.get_str() << " at (p,j) = (" << report.l_opt->p << ","
                   << report.l_opt->j << ") |\n";
            csv << "k,s,r0,r1,regime\n" << report.k << ',' << report.s << ',' << report.r0.get_str() << ','
                << report.r1.get_str() << ',' << to_string(report.params.regime) << '\n';
            emitter.emit(to_json(report), md.str(), csv.str());
        }
        else if (count->parsed()) {
            config.command = "count";
            count_config.method = method == "brute" ? CountRequest::brute
                : method == "census" ? CountRequest::census : CountRequest::automatic;
            count_config.t_max = c_tmax;
            config.param("k", c_k);
            config.param("s", c_s);
            config.param("r", c_r);
            config.param("method", method);
            if (c_tmax)
                config.param("t_max", c_tmax);
            auto graphs = source.load();
            Json results = Json::array();
            std::ostringstream md, csv;
            md << "| graph6 | n | m | method | count |\n|---|---|---|---|---|\n";
            csv << "graph6,n,m,method,count\n";
            for (auto & g : graphs) {
                auto result = count_colorings(g, c_k, c_s, c_r, count_config);
                results.push_back(to_json(result, timing));
                md << "| " << result.graph6 << " | " << g.n() << " | " << g.m() << " | " << to_string(result.method)
                   << " | " << result.value.get_str() << " |\n";
                csv << result.graph6 << ',' << g.n() << ',' << g.m() << ',' << to_string(result.method) << ','
                    << result.value.get_str() << '\n';
            }
            emitter.emit(results.size() == 1 ? results[0] : results, md.str(), csv.str());
        }
        else if (scan->parsed()) {
            config.command = "scan";
            config.param("n", sc_n);
            config.param("k", sc_k);
            config.param("s", sc_s);
            config.param("r", sc_r);
            ScanResult result;
            if (scan_file.empty())
                result = extremal_scan(sc_n, sc_k, sc_s, sc_r, ScanFamily::complete_multipartite, {}, count_config);
            else {
                config.param("file", scan_file);
                result = extremal_scan(sc_n, sc_k, sc_s, sc_r, ScanFamily::graph6_file, read_graph6_file(scan_file),
                        count_config);
            }
            std::ostringstream md, csv;
            md << "Turan count r^ex(n,K_k) = " << result.turan_count.get_str() << (result.turan_on_top ? "; Turan graph on top" : "")
               << (result.top_tied ? "; top is tied" : "") << "\n\n"
               << "| rank | graph6 | parts | count | vs Turan | tied |\n|---|---|---|---|---|---|\n";
            csv << "rank,graph6,parts,count,vs_turan,tied,error\n";
            int rank = 0;
            for (auto & row : result.rows) {
                ++rank;
                std::string cnt = row.count ? row.count->get_str() : "error";
                std::string vs = row.vs_turan ? ordering_name(*row.vs_turan) : "-";
                md << "| " << rank << " | " << row.graph6 << " | " << join(row.part_sizes, ",")
                   << (row.is_turan ? " (Turan)" : "") << " | " << cnt << " | " << vs << " | " << (row.tied ? "yes" : "")
                   << " |\n";
                csv << rank << ',' << row.graph6 << ",\"" << join(row.part_sizes, ",") << "\"," << cnt << ',' << vs << ','
                    << (row.tied ? 1 : 0) << ",\"" << row.error << "\"\n";
            }
            emitter.emit(to_json(result), md.str(), csv.str());
        }
        else if (lp->parsed()) {
            config.command = "lp";
            config.param("k", lp_k);
            config.param("s", lp_s);
            auto params = regime_params(lp_k, lp_s);
            StabilityLP instance;
            std::optional<std::strong_ordering> case_order;
            if (params.regime == Regime::low) {
                if (lp_p || lp_j)
                    throw ContractViolation("--p/--j apply only when s > s0(k)");
                instance = build_lp(lp_k, lp_s);
            }
            else {
                int p = lp_p ? lp_p : params.p_star.value_or(2);
                int j = lp_j ? lp_j : params.j_star.value_or(lp_k - 1);
                config.param("p", p);
                config.param("j", j);
                instance = build_lp_mid_high(lp_k, lp_s, p, j);
                case_order = compare_case_bases(lp_k, lp_s, p, j);
            }
            auto cert = certify(instance, claimed_solution(instance));
            auto report = r0(lp_k, lp_s);
            bool matches_r0_base = pp_compare(cert.vertex_max, report.base) == std::strong_ordering::equal;
            Json result;
            result["lp"] = to_json(instance);
            result["certificate"] = to_json(cert, ! no_vertices);
            result["r0_base"] = factors_to_json(report.base);
            result["vertex_max_equals_r0_base"] = matches_r0_base;
            if (case_order)
                result["case_bases_ordered"] = ordering_name(*case_order);
            std::ostringstream md, csv;
            md << "| field | value |\n|---|---|\n"
               << "| variant | " << (instance.variant == LPVariant::low ? "LOW" : "MID_HIGH") << " |\n"
               << "| constraints | " << instance.constraints.size() + (instance.extra ? 1 : 0) << " |\n"
               << "| feasible | " << (cert.feasible ? "true" : "false") << " |\n"
               << "| optimal | " << (cert.optimal ? "true" : "false") << " |\n"
               << "| value | " << cert.claimed_value.to_string() << " |\n"
               << "| vertex max | " << cert.vertex_max.to_string() << " |\n"
               << "| vertices | " << cert.vertices.size() << " |\n"
               << "| eq14 sum | " << cert.eq14_sum_actual.get_str() << " (expected " << cert.eq14_sum_expected.get_str()
               << (cert.eq14_matches ? "" : ", differs") << ") |\n"
               << "| equals r0 base | " << (matches_r0_base ? "true" : "false") << " |\n";
            if (case_order)
                md << "| case bases | " << ordering_name(*case_order) << " |\n";
            csv << "k,s,feasible,optimal,value,eq14_sum,equals_r0_base\n"
                << lp_k << ',' << lp_s << ',' << cert.feasible << ',' << cert.optimal << ",\"" << cert.claimed_value.to_string()
                << "\"," << cert.eq14_sum_actual.get_str() << ',' << matches_r0_base << '\n';
            emitter.emit(result, md.str(), csv.str());
        }
        else if (props->parsed()) {
            config.command = "props";
            config.param("only", only);
            std::vector<CheckReport> reports;
            auto want = [&](const char * name) { return only == "all" || only == name; };
            if (want("lpartite"))
                reports.push_back(check_lpartite_lemma(2, 4, lemma_n, 30, 12, config.seed));
            if (want("furedi"))
                reports.push_back(check_furedi_samples(furedi_count, config.seed));
            if (want("parts"))
                reports.push_back(check_part_sizes(100, 4, 60, 9, config.seed));
            if (want("entropy"))
                reports.push_back(check_entropy());
            if (want("turan"))
                reports.push_back(check_turan_bounds(3, 8, 200));
            Json result = Json::array();
            std::ostringstream csv;
            csv << "check,instances,failures,verdict\n";
            bool all_pass = true;
            for (auto & r : reports) {
                result.push_back(to_json(r));
                csv << r.check_name << ',' << r.instances_tested << ',' << r.failures.size() << ','
                    << (r.passed() ? "pass" : "fail") << '\n';
                all_pass = all_pass && r.passed();
            }
            emitter.emit(result, summary_markdown(reports), csv.str());
            if (! all_pass)
                return exit_code::check_failed;
        }
        else if (pairs->parsed()) {
            config.command = "pairs";
            config.param("k", pairs_k);
            config.param("s_min", s_min);
            auto ks = parse_int_list(pairs_k);
            if (ks.empty())
                throw CLI::ValidationError("empty --k range");
            auto census = pairs_census(ks.front(), ks.back(), s_min);
            std::ostringstream md, csv;
            md << "| k | s | published |\n|---|---|---|\n";
            csv << "k,s,published\n";
            for (auto & [k, s] : census.pairs) {
                bool listed = census.published.count({k, s}) > 0;
                md << "| " << k << " | " << s << " | " << (listed ? "yes" : "no") << " |\n";
                csv << k << ',' << s << ',' << listed << '\n';
            }
            md << "\n" << census.pairs.size() << " pairs; contains published list: "
               << (census.contains_published ? "yes" : "no") << "; s >= 4 subset equals list without (9,3): "
               << (census.s4_equals_published_minus_9_3 ? "yes" : "no") << "\n";
            for (auto & note : census.notes)
                md << "\nnote: " << note << "\n";
            emitter.emit(to_json(census), md.str(), csv.str());
        }
        else if (findk0->parsed()) {
            config.command = "findk0";
            config.param("s", k0_s);
            config.param("k_max", k0_max);
            auto report = find_k0(k0_s, k0_max);
            std::ostringstream md, csv;
            md << "qualifying k: " << join(report.qualifying, ", ") << "\n\nk0 = "
               << (report.k0 ? std::to_string(*report.k0) : "none") << " (within k <= " << k0_max << ")\n";
            csv << "k\n";
            for (int k : report.qualifying)
                csv << k << '\n';
            emitter.emit(to_json(report), md.str(), csv.str());
        }
        else if (ratio->parsed()) {
            config.command = "ratio";
            config.param("n_max", ra_n);
            config.param("k", ra_k);
            config.param("s", ra_s);
            config.param("r", ra_r);
            auto rows = complete_graph_ratios(ra_n, ra_k, ra_s, ra_r, count_config);
            Json result = Json::array();
            std::ostringstream md, csv;
            md << "exploratory only\n\n| n | count | ratio | approx |\n|---|---|---|---|\n";
            csv << "n,count,ratio,approx\n";
            for (auto & row : rows) {
                result.push_back({{"n", row.n}, {"count", row.count.get_str()}, {"ratio", row.ratio.get_str()}});
                md << "| " << row.n << " | " << row.count.get_str() << " | " << row.ratio.get_str() << " | "
                   << row.ratio.get_d() << " |\n";
                csv << row.n << ',' << row.count.get_str() << ',' << row.ratio.get_str() << ',' << row.ratio.get_d() << '\n';
            }
            emitter.emit(result, md.str(), csv.str());
        }
    }
    catch (const CLI::ValidationError & e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    }
    catch (const ParseError & e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    }
    catch (const ContractViolation & e) {
        err << "contract violation: " << e.what() << '\n';
        return exit_code::contract;
    }
    catch (const ResourceError & e) {
        err << "resource limit: " << e.what() << '\n';
        return exit_code::resource;
    }
    catch (const std::exception & e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    }
    return exit_code::success;
}

} // namespace rtl
