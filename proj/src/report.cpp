#include "smax/report.hpp"

#include <cstdio>

namespace smax {

namespace {

const char* mode_name(AssignmentMode mode) {
  switch (mode) {
    case AssignmentMode::exhaustive: return "exhaustive";
    case AssignmentMode::planted: return "planted";
    case AssignmentMode::random_draws: return "random";
  }
  return "?";
}

std::string bits_string(const std::vector<uint8_t>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (uint8_t b : bits) s += b ? '1' : '0';
  return s;
}

}  // namespace

std::string digest_bytes(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json report_shell(const std::string& subcommand) {
  nlohmann::json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["tool"] = "smoothmax";
  doc["subcommand"] = subcommand;
  return doc;
}

void attach_run_report(nlohmann::json& doc, const RunReport& r) {
  nlohmann::json cfg;
  cfg["eps"] = r.config.eps;
  cfg["delta"] = r.config.delta;
  cfg["gamma_scale"] = r.config.gamma_scale;
  cfg["sample_override"] = r.config.sample_override;
  cfg["mode"] = mode_name(r.config.mode);
  cfg["random_assignments"] = r.config.random_assignments;
  cfg["trials"] = r.config.trials;
  cfg["seed"] = r.config.seed;
  cfg["lp_tol"] = r.config.lp_tol;
  cfg["exhaustion_cap"] = r.config.exhaustion_cap;
  cfg["oracle_compare"] = r.config.oracle_compare;
  cfg["eps1"] = r.eps1;
  cfg["eps2"] = r.eps2;
  doc["config"] = std::move(cfg);

  nlohmann::json res;
  res["method"] = r.method;
  res["has_solution"] = r.has_solution;
  if (r.has_solution) {
    res["best_assignment"] = bits_string(r.best);
    res["value"] = r.value.to_double();
    res["value_exact"] = r.value.str();
    res["fractional_objective"] = r.fractional_objective;
    res["winning_ordinal"] = r.winning_ordinal;
  }
  if (r.has_oracle) {
    res["oracle"]["value"] = r.oracle_value.to_double();
    res["oracle"]["value_exact"] = r.oracle_value.str();
    res["oracle"]["ratio"] = r.ratio;
  }
  nlohmann::json counters;
  counters["assignments"] = r.assignments_tried;
  counters["lp_infeasible"] = r.lp_infeasible;
  counters["solver_errors"] = r.solver_errors;
  counters["deviation_failures"] = r.deviation_failures;
  counters["sample_r"] = r.sample_r;
  counters["sample_distinct"] = r.sample_distinct;
  counters["radius_escalations"] = r.radius_escalations;
  counters["winner_radius_multiplier"] = r.winner_radius_multiplier;
  res["counters"] = std::move(counters);
  if (r.satisfied >= 0) res["satisfied_constraints"] = r.satisfied;
  if (r.oracle_satisfied >= 0) res["oracle_satisfied_constraints"] = r.oracle_satisfied;
  if (r.trivial_opt_bound > 0) res["trivial_opt_bound"] = r.trivial_opt_bound;
  if (r.repair_moves >= 0) res["repair_moves"] = r.repair_moves;
  if (!r.branch.empty()) {
    res["branch"] = r.branch;
    res["asymptotic_threshold_k"] = r.kdense_threshold;
  }
  if (r.additive_budget > 0) {
    res["additive_budget"] = r.additive_budget;
    if (r.has_oracle) res["additive_gap"] = r.additive_gap;
  }
  doc["result"] = std::move(res);
  doc["timings"]["pipeline_s"] = r.wall_seconds;
}

std::string to_json_text(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

namespace {

void flatten(const nlohmann::json& node, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      if (prefix.empty() && it.key() == "timings") continue;
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (node.is_array()) {
    int i = 0;
    for (const auto& v : node) flatten(v, prefix + "." + std::to_string(i++), out);
  } else {
    std::string value = node.is_string() ? node.get<std::string>() : node.dump();
    out.emplace_back(prefix, value);
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

std::string to_csv_text(const nlohmann::json& doc) {
  std::vector<std::pair<std::string, std::string>> cells;
  flatten(doc, "", cells);
  std::string header, row;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) {
      header += ',';
      row += ',';
    }
    header += csv_escape(cells[i].first);
    row += csv_escape(cells[i].second);
  }
  return header + "\n" + row + "\n";
}

}  // namespace smax
