#include "mbt/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "mbt/domain.hpp"
#include "mbt/error.hpp"

namespace mbt {

BenchCell run_bench_cell(int n, int k, std::uint64_t seed, SearchMode mode, std::chrono::milliseconds budget) {
    BenchCell c;
    c.n = n;
    c.k = k;
    c.mode = mode;
    HypoStratParams p{n, k, seed};
    auto domain = make_hypostrat(p);
    SearchConfig cfg = default_config(*domain);
    cfg.mode = mode;
    cfg.time_budget = budget;
    auto start = std::chrono::steady_clock::now();
    try {
        DiagnosisTable t = build_table(make_epsilon(p), domain->buggy, *domain->rules, domain->normal_form, cfg);
        c.completed = true;
        c.expanded_states = t.meta.expanded_states;
        c.unique_finals = t.entries.size();
        std::string keys;
        for (const auto& [key, ac] : t.entries) keys += key + "\n";
        c.finals_digest = stable_digest(keys);
    } catch (const BudgetExceeded& e) {
        c.note = e.what();
    }
    c.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return c;
}

BenchReport run_benchmark(const BenchOptions& opts) {
    BenchReport rep;
    for (int n : opts.ns) {
        for (int k : opts.ks) {
            for (SearchMode m : opts.modes) rep.cells.push_back(run_bench_cell(n, k, opts.seed, m, opts.budget));
            const BenchCell* a = rep.find(n, k, SearchMode::normal);
            const BenchCell* b = rep.find(n, k, SearchMode::reduce);
            if (a && b && a->completed && b->completed && a->finals_digest != b->finals_digest)
                rep.mismatches.emplace_back(n, k);
        }
    }
    return rep;
}

const BenchCell* BenchReport::find(int n, int k, SearchMode mode) const {
    for (const auto& c : cells)
        if (c.n == n && c.k == k && c.mode == mode) return &c;
    return nullptr;
}

std::string BenchReport::csv() const {
    std::ostringstream os;
    os << "n,k,mode,wall_ms,expanded_states,unique_finals,status\n";
    for (const auto& c : cells) {
        os << c.n << ',' << c.k << ',' << to_string(c.mode) << ',';
        if (c.completed) {
            char ms[32];
            std::snprintf(ms, sizeof ms, "%.3f", c.wall_ms);
            os << ms << ',' << c.expanded_states << ',' << c.unique_finals << ",ok\n";
        } else {
            os << "-,-,-,budget\n";
        }
    }
    return os.str();
}

std::string BenchReport::text() const {
    std::vector<int> ns, ks;
    for (const auto& c : cells) {
        if (std::find(ns.begin(), ns.end(), c.n) == ns.end()) ns.push_back(c.n);
        if (std::find(ks.begin(), ks.end(), c.k) == ks.end()) ks.push_back(c.k);
    }
    std::ostringstream os;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-6s %-8s", "n", "mode");
    os << buf;
    for (int k : ks) {
        std::snprintf(buf, sizeof buf, " %10s", ("eps(" + std::to_string(k) + ")").c_str());
        os << buf;
    }
    os << '\n';
    for (int n : ns) {
        for (SearchMode m : {SearchMode::normal, SearchMode::reduce}) {
            bool any = false;
            std::ostringstream row;
            std::snprintf(buf, sizeof buf, "%-6d %-8s", n, to_string(m).c_str());
            row << buf;
            for (int k : ks) {
                const BenchCell* c = find(n, k, m);
                if (c) any = true;
                if (c && c->completed) std::snprintf(buf, sizeof buf, " %9.3fs", c->wall_ms / 1000.0);
                else std::snprintf(buf, sizeof buf, " %10s", "-");
                row << buf;
            }
            if (any) os << row.str() << '\n';
        }
    }
    for (const auto& [n, k] : mismatches) os << "final answers differ between modes at n=" << n << " k=" << k << '\n';
    return os.str();
}

}  // namespace mbt
