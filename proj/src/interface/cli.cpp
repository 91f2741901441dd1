#include "mbt/cli.hpp"

#include <fstream>

#include <CLI11.hpp>

#include "mbt/bench.hpp"
#include "mbt/diagnose.hpp"
#include "mbt/error.hpp"
#include "mbt/service.hpp"
#include "mbt/table_io.hpp"

namespace mbt {

using nlohmann::json;

namespace {

struct ConfigFlags {
    std::string mode;
    std::size_t reduce_limit = 0;
    std::string max_buggy;
    long budget_ms = 0;

    void add(CLI::App* app) {
        app->add_option("--mode", mode, "normal or reduce")->check(CLI::IsMember({"normal", "reduce"}));
        app->add_option("--reduce-limit", reduce_limit, "frontier size that triggers merging")->check(CLI::PositiveNumber);
        app->add_option("--max-buggy", max_buggy, "cap on buggy rule applications per path, or 'none'");
        app->add_option("--budget-ms", budget_ms, "wall-clock budget")->check(CLI::NonNegativeNumber);
    }

    SearchConfig apply(SearchConfig cfg) const {
        if (!mode.empty()) cfg.mode = parse_search_mode(mode);
        if (reduce_limit) cfg.reduce_limit = reduce_limit;
        if (max_buggy == "none") cfg.max_buggy_applications.reset();
        else if (!max_buggy.empty()) cfg.max_buggy_applications = static_cast<std::uint32_t>(parse_count(max_buggy));
        if (budget_ms > 0) cfg.time_budget = std::chrono::milliseconds(budget_ms);
        return cfg;
    }

    static unsigned long parse_count(const std::string& s) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty() || s[0] == '-') throw DomainError("--max-buggy expects a count or 'none'");
        return v;
    }
};

Strategy pick_strategy(const DomainContract& d, const std::string& name) {
    if (name.empty() || name == "buggy") return d.buggy;
    if (name == "solving") return d.solving;
    return parse_strategy(name);
}

void print_human(const json& body, std::ostream& out) {
    out << "status: " << body.value("status", "error") << '\n';
    if (body.contains("completed_final_answer"))
        out << "completed final answer: " << body["completed_final_answer"].get<std::string>() << '\n';
    if (body.contains("single_rule")) out << "single rule: " << body["single_rule"].get<std::string>() << '\n';
    if (body.contains("alternatives")) {
        out << "alternatives:\n";
        const json& alts = body["alternatives"];
        const json& labels = body["alternative_labels"];
        for (std::size_t i = 0; i < alts.size(); ++i) {
            std::string ids, names;
            for (std::size_t j = 0; j < alts[i].size(); ++j) {
                ids += (j ? ", " : "") + alts[i][j].get<std::string>();
                names += (j ? "; " : "") + labels[i][j].get<std::string>();
            }
            out << "  {" << ids << "}  (" << names << ")\n";
        }
    }
    if (body.contains("reason")) out << "reason: " << body["reason"].get<std::string>() << '\n';
    if (body.contains("table_cache")) out << "table cache: " << body["table_cache"].get<std::string>() << '\n';
}

int exit_code_of(int http_status, const json& body) {
    if (http_status == 503) return 2;
    if (http_status != 200 || body.value("status", "") == "error") return 1;
    return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Buggy-rule diagnosis by model backtracking", "mbt"};
    app.require_subcommand(1);

    std::string domain_id, task, input, previous, out_path, strategy_text, host = "127.0.0.1";
    std::vector<std::string> tasks;
    bool as_json = false;
    bool csv = false;
    int port = 8080;
    std::uint64_t seed = 7;
    std::vector<int> ns{2, 3, 4}, ks{6, 7, 8};
    std::string bench_mode = "both";
    ConfigFlags flags;

    auto* diag = app.add_subcommand("diagnose", "diagnose a student input against a task");
    diag->add_option("--domain", domain_id, "sumreduce, polyeq or hypostrat:<n>:<k>:<seed>")->required();
    diag->add_option("--task", task)->required();
    diag->add_option("--input", input)->required();
    diag->add_option("--previous", previous, "previous input, for the single-rule check");
    diag->add_flag("--json", as_json);
    flags.add(diag);

    auto* stats = app.add_subcommand("stats", "count paths, prefixes and unique final answers");
    stats->add_option("--domain", domain_id)->required();
    stats->add_option("--task", task)->required();
    stats->add_option("--strategy", strategy_text, "buggy (default), solving, or strategy notation");
    stats->add_flag("--json", as_json);
    flags.add(stats);

    auto* table = app.add_subcommand("table", "build a diagnosis table");
    table->add_option("--domain", domain_id)->required();
    table->add_option("--task", task)->required();
    table->add_option("--out", out_path, "write the table file here instead of stdout");
    flags.add(table);

    auto* bench = app.add_subcommand("bench", "run the hypostrat benchmark grid");
    bench->add_option("--n", ns, "rule counts")->delimiter(',');
    bench->add_option("--k", ks, "summand counts")->delimiter(',');
    bench->add_option("--seed", seed);
    bench->add_option("--mode", bench_mode)->check(CLI::IsMember({"normal", "reduce", "both"}));
    bench->add_option("--budget-ms", flags.budget_ms, "per-cell budget")->check(CLI::NonNegativeNumber);
    bench->add_option("--out", out_path, "CSV output path");
    bench->add_flag("--csv", csv, "print CSV instead of the text table");

    auto* disamb = app.add_subcommand("disambiguate", "rank candidate tasks by unique final answers");
    disamb->add_option("--domain", domain_id)->required();
    disamb->add_option("--task", tasks, "candidate task (repeatable)")->required();
    disamb->add_flag("--json", as_json);
    flags.add(disamb);

    auto* serve = app.add_subcommand("serve", "serve POST /diagnose and GET /health");
    serve->add_option("--port", port)->check(CLI::Range(0, 65535));
    serve->add_option("--host", host);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (diag->parsed()) {
            json req{{"domain_id", domain_id}, {"task", task}, {"input", input}};
            if (!previous.empty()) req["previous_input"] = previous;
            if (!flags.mode.empty()) req["mode"] = flags.mode;
            if (flags.reduce_limit) req["reduce_limit"] = flags.reduce_limit;
            if (flags.max_buggy == "none") req["max_buggy_applications"] = nullptr;
            else if (!flags.max_buggy.empty()) req["max_buggy_applications"] = ConfigFlags::parse_count(flags.max_buggy);
            DiagnoseService service;
            ServiceResponse r = service.handle(req);
            if (as_json) out << r.body.dump() << '\n';
            else print_human(r.body, out);
            if (r.http_status != 200 && !as_json) err << r.body.value("reason", "request failed") << '\n';
            return exit_code_of(r.http_status, r.body);
        }
        if (stats->parsed()) {
            auto d = find_domain(domain_id);
            SearchConfig cfg = flags.apply(default_config(*d));
            if (flags.max_buggy.empty()) cfg.max_buggy_applications.reset();
            cfg.mode = SearchMode::normal;
            PathStats st = enumerate_paths(d->parse(task), pick_strategy(*d, strategy_text), *d->rules, d->normal_form, cfg);
            if (as_json) {
                out << json{{"paths", st.path_count},
                            {"prefixes", st.prefix_count},
                            {"unique_finals", st.unique_final_count},
                            {"stuck", st.stuck_count},
                            {"expanded_states", st.expanded_states}}
                           .dump()
                    << '\n';
            } else {
                out << "paths=" << st.path_count << "\nprefixes=" << st.prefix_count
                    << "\nunique_finals=" << st.unique_final_count << "\nstuck=" << st.stuck_count
                    << "\nexpanded_states=" << st.expanded_states << '\n';
            }
            return 0;
        }
        if (table->parsed()) {
            auto d = find_domain(domain_id);
            SearchConfig cfg = flags.apply(default_config(*d));
            DiagnosisTable t = build_task_table(*d, d->parse(task), cfg);
            if (out_path.empty()) {
                out << table_to_json(t).dump(1) << '\n';
            } else {
                save_table(t, out_path);
                out << "wrote " << t.entries.size() << " final answers to " << out_path << '\n';
            }
            return 0;
        }
        if (bench->parsed()) {
            BenchOptions opts;
            opts.ns = ns;
            opts.ks = ks;
            opts.seed = seed;
            if (bench_mode == "normal") opts.modes = {SearchMode::normal};
            if (bench_mode == "reduce") opts.modes = {SearchMode::reduce};
            if (flags.budget_ms > 0) opts.budget = std::chrono::milliseconds(flags.budget_ms);
            BenchReport rep = run_benchmark(opts);
            out << (csv ? rep.csv() : rep.text());
            if (!out_path.empty()) {
                std::ofstream os(out_path);
                if (!os) throw IoError("cannot write " + out_path);
                os << rep.csv();
            }
            return rep.mismatches.empty() ? 0 : 1;
        }
        if (disamb->parsed()) {
            auto d = find_domain(domain_id);
            SearchConfig cfg = flags.apply(default_config(*d));
            std::vector<Term> candidates;
            for (const auto& t : tasks) candidates.push_back(d->parse(t));
            DisambiguationReport rep = disambiguate(candidates, *d, cfg);
            json rows = json::array();
            for (const auto& e : rep.ranking) {
                json row{{"task", e.task}, {"index", e.index}};
                if (e.failed) row["failed"] = e.reason;
                else row.update({{"unique_finals", e.unique_finals}, {"mean_alternatives", e.mean_alternatives}});
                rows.push_back(row);
            }
            if (as_json) {
                out << rows.dump() << '\n';
            } else {
                for (const auto& e : rep.ranking) {
                    if (e.failed) out << e.task << "  failed: " << e.reason << '\n';
                    else out << e.task << "  unique_finals=" << e.unique_finals << "  mean_alternatives=" << e.mean_alternatives << '\n';
                }
            }
            return 0;
        }
        if (serve->parsed()) {
            HttpServer server(std::make_shared<DiagnoseService>());
            out << "listening on " << host << ':' << port << std::endl;
            if (!server.listen(host, port)) throw IoError("cannot listen on " + host + ":" + std::to_string(port));
            return 0;
        }
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace mbt
