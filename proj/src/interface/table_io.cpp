#include "mbt/table_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mbt/error.hpp"

namespace mbt {

using nlohmann::json;

json table_to_json(const DiagnosisTable& t) {
    json entries = json::array();
    for (const auto& [key, ac] : t.entries) {
        json sets = json::array();
        for (GroupSet s : ac.sets()) sets.push_back(group_names(s, t.groups));
        entries.push_back({{"key", key}, {"antichain", sets}});
    }
    return {
        {"format_version", table_format_version},
        {"domain_id", t.domain_id},
        {"task", t.task},
        {"config_fingerprint", t.meta.config_fingerprint},
        {"rules_fingerprint", t.meta.rules_fingerprint},
        {"groups", t.groups},
        {"entries", entries},
        {"meta",
         {{"expanded_states", t.meta.expanded_states},
          {"stuck_states", t.meta.stuck_states},
          {"peak_frontier", t.meta.peak_frontier},
          {"build_ms", t.meta.build_ms}}},
    };
}

DiagnosisTable table_from_json(const json& j) {
    try {
        int version = j.at("format_version").get<int>();
        if (version != table_format_version)
            throw VersionMismatch("table format " + std::to_string(version) + ", expected " +
                                  std::to_string(table_format_version));
        DiagnosisTable t;
        t.domain_id = j.at("domain_id").get<std::string>();
        t.task = j.at("task").get<std::string>();
        t.meta.config_fingerprint = j.at("config_fingerprint").get<std::string>();
        t.meta.rules_fingerprint = j.at("rules_fingerprint").get<std::string>();
        t.groups = j.at("groups").get<std::vector<std::string>>();
        if (t.groups.size() > 64) throw IoError("too many groups in table");
        for (const auto& e : j.at("entries")) {
            Antichain ac;
            for (const auto& set : e.at("antichain")) {
                GroupSet s = 0;
                for (const auto& name : set) {
                    auto it = std::find(t.groups.begin(), t.groups.end(), name.get<std::string>());
                    if (it == t.groups.end()) throw IoError("unknown group in table: " + name.get<std::string>());
                    s |= GroupSet{1} << (it - t.groups.begin());
                }
                ac.insert(s);
            }
            if (!t.entries.emplace(e.at("key").get<std::string>(), std::move(ac)).second)
                throw IoError("duplicate key in table");
        }
        const json& m = j.at("meta");
        t.meta.expanded_states = m.at("expanded_states").get<std::uint64_t>();
        t.meta.stuck_states = m.at("stuck_states").get<std::uint64_t>();
        t.meta.peak_frontier = m.at("peak_frontier").get<std::uint64_t>();
        t.meta.build_ms = m.at("build_ms").get<double>();
        return t;
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed table: ") + e.what());
    }
}

void save_table(const DiagnosisTable& t, const std::string& path) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::trunc);
        if (!os) throw IoError("cannot write " + tmp);
        os << table_to_json(t).dump(1) << '\n';
        if (!os) throw IoError("write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move table into place at " + path + ": " + ec.message());
}

DiagnosisTable load_table(const std::string& path, const std::optional<TableExpectation>& expect) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot read " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    json j;
    try {
        j = json::parse(buf.str());
    } catch (const json::exception& e) {
        throw IoError("unreadable table " + path + ": " + e.what());
    }
    DiagnosisTable t = table_from_json(j);
    if (expect) {
        if (t.meta.config_fingerprint != expect->config_fingerprint)
            throw FingerprintMismatch("config fingerprint " + t.meta.config_fingerprint + " != " +
                                      expect->config_fingerprint);
        if (t.meta.rules_fingerprint != expect->rules_fingerprint)
            throw FingerprintMismatch("rule-set fingerprint " + t.meta.rules_fingerprint + " != " +
                                      expect->rules_fingerprint);
    }
    return t;
}

std::shared_ptr<TableCache> make_table_cache() {
    const char* dir = std::getenv("MBT_TABLE_CACHE_DIR");
    if (!dir || !*dir) return std::make_shared<TableCache>();
    std::string root = dir;
    std::filesystem::create_directories(root);
    auto file_of = [root](const std::string& key) { return root + "/" + stable_digest(key) + ".json"; };
    return std::make_shared<TableCache>(
        [file_of](const std::string& key, const SearchConfig& cfg,
                  const DomainContract& domain) -> std::optional<DiagnosisTable> {
            std::string path = file_of(key);
            if (!std::filesystem::exists(path)) return std::nullopt;
            try {
                return load_table(path, TableExpectation{cfg.fingerprint(), domain.rules->fingerprint()});
            } catch (const Error&) {
                // stale or damaged entry: rebuild and overwrite
                return std::nullopt;
            }
        },
        [file_of](const std::string& key, const DiagnosisTable& t) {
            try {
                save_table(t, file_of(key));
            } catch (const Error&) {
                // the in-memory entry still serves this process
            }
        });
}

}  // namespace mbt
