#pragma once

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "mbt/diagnose.hpp"
#include "mbt/engine.hpp"

namespace mbt {

inline constexpr int table_format_version = 1;

nlohmann::json table_to_json(const DiagnosisTable& t);
DiagnosisTable table_from_json(const nlohmann::json& j);

/// Fingerprints a loaded table must carry.
struct TableExpectation {
    std::string config_fingerprint;
    std::string rules_fingerprint;
};

/// Writes through a temporary file, so readers never see a partial table.
void save_table(const DiagnosisTable& t, const std::string& path);
DiagnosisTable load_table(const std::string& path, const std::optional<TableExpectation>& expect = std::nullopt);

/// Cache backed by MBT_TABLE_CACHE_DIR when it is set, memory only otherwise.
std::shared_ptr<TableCache> make_table_cache();

}  // namespace mbt
