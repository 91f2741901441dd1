#include "mbt/diagnose.hpp"

#include <algorithm>
#include <mutex>

#include "mbt/error.hpp"

namespace mbt {

NormalForm complete(const Term& input, const DomainContract& domain) {
    SearchConfig cfg;
    cfg.mode = SearchMode::reduce;
    DiagnosisTable t = build_table(input, domain.solving, *domain.rules, domain.normal_form, cfg);
    if (t.entries.empty()) throw CompletionStuck("no final state reachable from " + print_term(input));
    if (t.entries.size() > 1) {
        std::string keys;
        for (const auto& [k, ac] : t.entries) keys += (keys.empty() ? "" : ", ") + k;
        throw AmbiguousCompletion("completion of " + print_term(input) + " reaches " + keys);
    }
    return NormalForm::decode(t.entries.begin()->first);
}

DiagnosisTable build_task_table(const DomainContract& domain, const Term& task, const SearchConfig& cfg) {
    DiagnosisTable t = build_table(task, domain.buggy, *domain.rules, domain.normal_form, cfg);
    t.domain_id = domain.id;
    return t;
}

std::string TableCache::key(const DomainContract& domain, const Term& task, const SearchConfig& cfg) {
    return domain.id + "\n" + print_term(task) + "\n" + domain.rules->fingerprint() + "\n" + cfg.fingerprint();
}

std::pair<std::shared_ptr<const DiagnosisTable>, bool> TableCache::get(const DomainContract& domain, const Term& task,
                                                                       const SearchConfig& cfg) {
    std::string k = key(domain, task, cfg);
    {
        std::shared_lock lock(mu_);
        if (auto it = tables_.find(k); it != tables_.end()) return {it->second, true};
    }
    std::shared_ptr<const DiagnosisTable> built;
    bool hit = false;
    if (load_) {
        if (auto loaded = load_(k, cfg, domain)) {
            built = std::make_shared<const DiagnosisTable>(std::move(*loaded));
            hit = true;
        }
    }
    if (!built) {
        built = std::make_shared<const DiagnosisTable>(build_task_table(domain, task, cfg));
        if (save_) save_(k, *built);
    }
    std::unique_lock lock(mu_);
    auto [it, inserted] = tables_.emplace(k, built);
    return {it->second, hit || !inserted};
}

std::size_t TableCache::size() const {
    std::shared_lock lock(mu_);
    return tables_.size();
}

std::string to_string(DiagnosisResult::Kind k) {
    switch (k) {
        case DiagnosisResult::Kind::correct: return "correct";
        case DiagnosisResult::Kind::diagnosed: return "diagnosed";
        case DiagnosisResult::Kind::not_diagnosed: return "not-diagnosed";
        case DiagnosisResult::Kind::failed: return "error";
    }
    return "error";
}

std::vector<std::vector<std::string>> DiagnosisResult::alternative_names() const {
    std::vector<std::vector<std::string>> out;
    for (GroupSet s : alternatives.sets()) {
        auto names = group_names(s, groups);
        std::sort(names.begin(), names.end());
        out.push_back(std::move(names));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

DiagnosisResult diagnose(const Term& task, const Term& input, const DomainContract& domain, const SearchConfig& cfg,
                         TableCache* cache) {
    DiagnosisResult r;
    std::shared_ptr<const DiagnosisTable> table;
    if (cache) {
        auto [t, hit] = cache->get(domain, task, cfg);
        table = std::move(t);
        r.cache_hit = hit;
    } else {
        table = std::make_shared<const DiagnosisTable>(build_task_table(domain, task, cfg));
    }
    r.groups = table->groups;
    try {
        r.completed = complete(input, domain);
    } catch (const BudgetExceeded&) {
        throw;
    } catch (const Error& e) {
        r.kind = DiagnosisResult::Kind::failed;
        r.reason = e.what();
        return r;
    }
    auto it = table->entries.find(r.completed->encode());
    if (it == table->entries.end()) {
        r.kind = DiagnosisResult::Kind::not_diagnosed;
    } else if (it->second.contains_empty_set()) {
        r.kind = DiagnosisResult::Kind::correct;
    } else {
        r.kind = DiagnosisResult::Kind::diagnosed;
        r.alternatives = it->second;
    }
    return r;
}

std::optional<std::string> try_single_rule(const Term& prev, const Term& cur, const DomainContract& domain) {
    const RuleSet& rules = *domain.rules;
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        auto apps = rules.apply(i, prev);
        bool hit = std::any_of(apps.begin(), apps.end(), [&](const Application& a) { return a.term == cur; });
        if (!hit) continue;
        if (!best) {
            best = i;
            continue;
        }
        const RuleInfo& a = rules.info(i);
        const RuleInfo& b = rules.info(*best);
        if (std::make_pair(a.buggy, a.id) < std::make_pair(b.buggy, b.id)) best = i;
    }
    if (!best) return std::nullopt;
    return rules.info(*best).id;
}

DisambiguationReport disambiguate(const std::vector<Term>& candidates, const DomainContract& domain,
                                  const SearchConfig& cfg) {
    if (candidates.empty()) throw DomainError("no candidate tasks");
    DisambiguationReport rep;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        DisambiguationEntry e;
        e.index = i;
        e.task = print_term(candidates[i]);
        try {
            DiagnosisTable t = build_task_table(domain, candidates[i], cfg);
            e.unique_finals = t.entries.size();
            std::size_t alts = 0;
            for (const auto& [k, ac] : t.entries) alts += ac.size();
            e.mean_alternatives = t.entries.empty() ? 0.0 : static_cast<double>(alts) / static_cast<double>(t.entries.size());
        } catch (const BudgetExceeded& ex) {
            e.failed = true;
            e.reason = ex.what();
        }
        rep.ranking.push_back(std::move(e));
    }
    std::stable_sort(rep.ranking.begin(), rep.ranking.end(), [](const auto& a, const auto& b) {
        if (a.failed != b.failed) return !a.failed;
        return a.unique_finals > b.unique_finals;
    });
    return rep;
}

}  // namespace mbt
