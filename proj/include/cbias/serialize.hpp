#pragma once

// JSON persistence of audit results:
//   { config: {...},
//     cells:   [ {method, function, variant, run_errors[], mean_error} ],
//     records: [ {method, function, unshifted_mean, shifted_mean, ratio} ],
//     reports: [ {method, geomean, verdict} ] }
// Doubles are written in shortest round-trip form.

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cbias/harness.hpp"

namespace cbias {

using Json = nlohmann::ordered_json;

inline Json to_json(const AuditConfig& c) {
  Json methods = Json::array();
  for (auto m : c.methods) methods.push_back(to_string(m));
  Json functions = Json::array();
  for (auto f : c.functions) functions.push_back(to_string(f));
  Json optim = Json::object();
  for (const auto& [m, params] : c.hyperparameters) {
    for (const auto& [k, v] : params) optim[to_string(m)][k] = v;
  }
  for (const auto& [m, n] : c.populations) optim[to_string(m)]["population"] = n;
  return Json{{"dimension", c.dimension},
              {"budget", c.budget},
              {"runs", c.runs},
              {"shift_fraction", c.shift_fraction},
              {"error_floor", c.error_floor},
              {"bias_threshold", c.bias_threshold},
              {"master_seed", c.master_seed},
              {"step_variant", c.step_variant == StepVariant::Smooth ? "smooth" : "floor"},
              {"methods", methods},
              {"functions", functions},
              {"optim", optim}};
}

inline AuditConfig audit_config_from_json(const Json& j) {
  AuditConfig c;
  c.dimension = j.at("dimension").get<std::size_t>();
  c.budget = j.at("budget").get<std::uint64_t>();
  c.runs = j.at("runs").get<std::size_t>();
  c.shift_fraction = j.at("shift_fraction").get<double>();
  c.error_floor = j.at("error_floor").get<double>();
  c.bias_threshold = j.at("bias_threshold").get<double>();
  c.master_seed = j.at("master_seed").get<std::uint64_t>();
  c.step_variant = j.value("step_variant", "smooth") == "floor" ? StepVariant::Floor : StepVariant::Smooth;
  c.methods.clear();
  for (const auto& m : j.at("methods")) c.methods.push_back(parse_method_id(m.get<std::string>()));
  c.functions.clear();
  for (const auto& f : j.at("functions")) c.functions.push_back(parse_function_id(f.get<std::string>()));
  if (j.contains("optim")) {
    for (const auto& [name, params] : j.at("optim").items()) {
      const MethodId m = parse_method_id(name);
      for (const auto& [k, v] : params.items()) {
        if (k == "population") {
          c.populations[m] = v.get<std::size_t>();
        } else {
          c.hyperparameters[m][k] = v.get<double>();
        }
      }
    }
  }
  return c;
}

inline Json to_json(const AuditCellResult& cell) {
  return Json{{"method", to_string(cell.method)},
              {"function", to_string(cell.function)},
              {"variant", to_string(cell.variant)},
              {"run_errors", cell.run_errors},
              {"mean_error", cell.mean_error}};
}

inline AuditCellResult cell_from_json(const Json& j) {
  return {parse_method_id(j.at("method").get<std::string>()), parse_function_id(j.at("function").get<std::string>()),
          parse_variant(j.at("variant").get<std::string>()), j.at("run_errors").get<std::vector<double>>(),
          j.at("mean_error").get<double>()};
}

inline Json to_json(const AuditRecord& r) {
  return Json{{"method", to_string(r.method)},
              {"function", to_string(r.function)},
              {"unshifted_mean", r.unshifted_mean},
              {"shifted_mean", r.shifted_mean},
              {"ratio", r.ratio}};
}

inline AuditRecord record_from_json(const Json& j) {
  return {parse_method_id(j.at("method").get<std::string>()), parse_function_id(j.at("function").get<std::string>()),
          j.at("unshifted_mean").get<double>(), j.at("shifted_mean").get<double>(), j.at("ratio").get<double>()};
}

// The records/reports pair shared by results files and the json table format.
inline void write_reports(Json& doc, const std::vector<MethodReport>& reports) {
  Json records = Json::array();
  Json summary = Json::array();
  for (const auto& rep : reports) {
    for (const auto& r : rep.records) records.push_back(to_json(r));
    summary.push_back(Json{{"method", rep.method}, {"geomean", rep.geomean}, {"verdict", to_string(rep.verdict)}});
  }
  doc["records"] = std::move(records);
  doc["reports"] = std::move(summary);
}

inline std::vector<MethodReport> reports_from_json(const Json& doc) {
  std::vector<MethodReport> reports;
  std::map<std::string, std::size_t> index;
  for (const auto& j : doc.at("reports")) {
    index[j.at("method").get<std::string>()] = reports.size();
    reports.push_back({j.at("method").get<std::string>(), j.at("geomean").get<double>(),
                       parse_verdict(j.at("verdict").get<std::string>()), {}});
  }
  for (const auto& j : doc.at("records")) {
    auto it = index.find(j.at("method").get<std::string>());
    if (it == index.end()) throw ConfigError("record for method without a report: " + j.at("method").dump());
    reports[it->second].records.push_back(record_from_json(j));
  }
  return reports;
}

inline Json to_json(const AuditResults& r) {
  Json doc;
  doc["config"] = to_json(r.config);
  Json cells = Json::array();
  for (const auto& c : r.cells) cells.push_back(to_json(c));
  doc["cells"] = std::move(cells);
  write_reports(doc, r.reports);
  return doc;
}

inline AuditResults results_from_json(const Json& doc) {
  AuditResults r;
  r.config = audit_config_from_json(doc.at("config"));
  for (const auto& c : doc.at("cells")) r.cells.push_back(cell_from_json(c));
  r.reports = reports_from_json(doc);
  return r;
}

inline std::string dump_results(const AuditResults& r) { return to_json(r).dump(2) + "\n"; }

}  // namespace cbias
