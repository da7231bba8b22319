#pragma once

#include <string>

#include <json.hpp>

#include "smax/scheme.hpp"

namespace smax {

/// Schema version of the emitted report documents.
inline constexpr int kReportSchemaVersion = 1;

/// FNV-1a 64-bit digest of raw bytes, formatted "fnv1a64:<16 hex>".
std::string digest_bytes(const std::string& bytes);

/// Skeleton document: schema version, tool id, subcommand.
nlohmann::json report_shell(const std::string& subcommand);

/// Config echo + result + timings subtree from one scheme run. Everything
/// except "timings" is a pure function of the inputs and the seed.
void attach_run_report(nlohmann::json& doc, const RunReport& report);

std::string to_json_text(const nlohmann::json& doc);

/// Flat CSV (header line + one value row) of all scalar leaves, dotted keys,
/// timings excluded. Meant for sweep post-processing.
std::string to_csv_text(const nlohmann::json& doc);

}  // namespace smax
