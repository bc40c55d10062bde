// cbias: command-line front end for center-bias audits.
//
// Exit codes: 0 success, 1 runtime/data failure, 2 usage/configuration error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cbias/cbias.hpp"

namespace {

using namespace cbias;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Splits and trims, dropping empty items.
std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    if (auto t = trim(item); !t.empty()) out.push_back(std::move(t));
  }
  return out;
}

// `key = value` lines; '#' starts a comment. Keys match the long flag names
// (dim, budget, ...) plus optim.<method>.<param>.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(n) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    auto v = trim(line.substr(eq + 1));
    if (key.empty() || v.empty()) throw ConfigError(path + ":" + std::to_string(n) + ": empty key or value");
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
    kv[key] = v;
  }
  return kv;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    if (!v.empty() && v.front() != '-') {
      const auto u = std::stoull(v, &used);
      if (used == v.size()) return u;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("'" + key + "' expects a non-negative integer, got '" + v + "'");
}

struct AuditFlags {
  std::optional<std::size_t> dim;
  std::optional<std::uint64_t> budget;
  std::optional<std::size_t> runs;
  std::optional<double> shift_fraction;
  std::optional<double> error_floor;
  std::optional<double> threshold;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> methods;
  std::optional<std::string> functions;
  std::optional<std::string> preset;
  std::optional<unsigned> workers;
  std::optional<std::string> out;
  std::optional<std::string> config;
  std::string format = "csv";
  bool step_floor = false;
  bool quiet = false;
};

// Precedence: flag or environment > config file > preset > defaults.
AuditConfig build_audit_config(const AuditFlags& f, unsigned& workers, std::optional<std::string>& out) {
  std::map<std::string, std::string> file;
  if (f.config) file = read_config_file(*f.config);
  auto from_file = [&](const char* key) -> std::optional<std::string> {
    auto it = file.find(key);
    return it == file.end() ? std::nullopt : std::optional<std::string>(it->second);
  };

  const std::string preset = f.preset ? *f.preset : from_file("preset").value_or("paper");
  AuditConfig c;
  if (preset == "paper") {
    c = paper_preset();
  } else if (preset == "ci") {
    c = ci_preset();
  } else {
    throw ConfigError("unknown preset '" + preset + "' (expected paper or ci)");
  }

  auto pick_uint = [&](const auto& flag, const char* key, auto& target) {
    using T = std::remove_reference_t<decltype(target)>;
    if (flag) {
      target = static_cast<T>(*flag);
    } else if (auto v = from_file(key)) {
      target = static_cast<T>(to_uint(key, *v));
    }
  };
  auto pick_double = [&](const auto& flag, const char* key, double& target) {
    if (flag) {
      target = *flag;
    } else if (auto v = from_file(key)) {
      target = to_double(key, *v);
    }
  };
  pick_uint(f.dim, "dim", c.dimension);
  pick_uint(f.budget, "budget", c.budget);
  pick_uint(f.runs, "runs", c.runs);
  pick_uint(f.seed, "seed", c.master_seed);
  pick_double(f.shift_fraction, "shift-fraction", c.shift_fraction);
  pick_double(f.error_floor, "error-floor", c.error_floor);
  pick_double(f.threshold, "threshold", c.bias_threshold);
  if (f.workers) {
    workers = *f.workers;
  } else if (auto v = from_file("workers")) {
    workers = static_cast<unsigned>(to_uint("workers", *v));
  }
  out = f.out ? f.out : from_file("out");
  if (f.step_floor || from_file("step-floor").value_or("false") == "true") c.step_variant = StepVariant::Floor;

  const auto methods = f.methods ? f.methods : from_file("methods");
  c.methods.clear();
  if (methods) {
    for (const auto& m : split(*methods, ',')) c.methods.push_back(parse_method_id(m));
  } else {
    c.methods.assign(kAllMethods.begin(), kAllMethods.end());
  }
  if (const auto functions = f.functions ? f.functions : from_file("functions")) {
    c.functions.clear();
    for (const auto& fn : split(*functions, ',')) c.functions.push_back(parse_function_id(fn));
  }

  for (const auto& [key, value] : file) {
    if (key.rfind("optim.", 0) != 0) continue;
    const auto parts = split(key, '.');
    if (parts.size() != 3) throw ConfigError("config key '" + key + "' must look like optim.<method>.<param>");
    const MethodId m = parse_method_id(parts[1]);
    if (parts[2] == "population") {
      c.populations[m] = static_cast<std::size_t>(to_uint(key, value));
    } else {
      c.hyperparameters[m][parts[2]] = to_double(key, value);
    }
  }
  static const std::vector<std::string> known = {"dim",       "budget",    "runs",      "shift-fraction",
                                                 "error-floor", "threshold", "seed",      "methods",
                                                 "functions", "preset",    "workers",   "out",
                                                 "step-floor"};
  for (const auto& [key, value] : file) {
    (void)value;
    if (key.rfind("optim.", 0) != 0 && std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  validate(c);
  if (c.methods.empty()) throw ConfigError("no methods selected");
  for (auto m : c.methods) validate(optimizer_config(c, m, 0));
  return c;
}

int cmd_list(const std::string& target, bool step_floor) {
  if (target == "functions") {
    std::cout << "id,name,modality,separability,low,high,f_star,x_star,f_at_zero\n";
    for (auto id : kAllFunctions) {
      const auto f = make_function(id, 30, step_floor ? StepVariant::Floor : StepVariant::Smooth);
      std::cout << to_string(f.id) << "," << detail::csv_field(f.name) << "," << to_string(f.modality) << ","
                << to_string(f.separability) << "," << -f.range << "," << f.range << "," << format_sci(f.f_star)
                << "," << f.x_star << "," << format_sci(f.f_at_zero) << "\n";
    }
    return kOk;
  }
  if (target == "methods") {
    std::cout << "method_id,default_population,hyperparameters\n";
    for (auto id : kAllMethods) {
      const auto& info = method_info(id);
      std::string params;
      for (const auto& h : info.hyperparameters) {
        if (!params.empty()) params += ";";
        std::ostringstream s;
        s << h.name << "=" << h.default_value;
        params += s.str();
      }
      std::cout << info.name << "," << info.default_population << "," << detail::csv_field(params) << "\n";
    }
    return kOk;
  }
  std::cerr << "error: unknown list target '" << target << "' (expected functions or methods)\n";
  return kUsage;
}

int cmd_evaluate(const std::string& id, const std::string& point, std::size_t dim, double shift_fraction,
                 bool step_floor, int digits) {
  const auto problem =
      make_problem(parse_function_id(id), dim, shift_fraction, step_floor ? StepVariant::Floor : StepVariant::Smooth);
  std::vector<double> x;
  if (point == "zero") {
    x.assign(dim, 0.0);
  } else if (point == "xstar") {
    x.assign(dim, problem.base.x_star);
  } else {
    for (const auto& v : split(point, ',')) x.push_back(to_double("point", v));
    if (x.size() == 1) x.assign(dim, x.front());
    if (x.size() != dim) {
      throw ConfigError("point has " + std::to_string(x.size()) + " coordinates, expected " + std::to_string(dim));
    }
  }
  const double value = shifted_evaluate(problem, x);
  std::printf("%.*E\n", std::max(0, digits - 1), value + 0.0);
  return kOk;
}

int cmd_audit(const AuditFlags& flags) {
  unsigned workers = 0;
  std::optional<std::string> out;
  const AuditConfig config = build_audit_config(flags, workers, out);
  const TableFormat format = parse_table_format(flags.format);

  const std::size_t total = config.methods.size() * config.functions.size() * 2;
  std::size_t done = 0;
  CellCallback log;
  if (!flags.quiet) {
    log = [&](const AuditCellResult& cell) {
      ++done;
      std::fprintf(stderr, "[%zu/%zu] %s %s %s mean_error=%s\n", done, total, to_string(cell.method).c_str(),
                   to_string(cell.function).c_str(), to_string(cell.variant).c_str(),
                   format_sci(cell.mean_error).c_str());
    };
  }
  const AuditResults results = run_audit(config, workers, log);

  if (out) {
    std::ofstream file(*out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + *out + "'");
    file << dump_results(results);
    if (!file) throw std::runtime_error("failed writing '" + *out + "'");
  }

  switch (format) {
    case TableFormat::Csv:
      std::cout << "method,geomean,verdict\n";
      for (const auto& r : results.reports) std::cout << r.method << "," << format_sci(r.geomean) << "," << to_string(r.verdict) << "\n";
      break;
    case TableFormat::Markdown:
      std::cout << "| method | geomean | verdict |\n|---|--:|---|\n";
      for (const auto& r : results.reports) {
        std::cout << "| " << r.method << " | " << format_sci(r.geomean) << " | " << to_string(r.verdict) << " |\n";
      }
      break;
    case TableFormat::Json: std::cout << render_table(results.reports, TableFormat::Json); break;
  }
  return kOk;
}

struct ReportFlags {
  std::optional<std::string> in;
  std::string format = "markdown";
  std::optional<std::string> registry;
  std::optional<std::string> svg;
  std::optional<double> threshold;
  bool histogram = false;
};

int cmd_report(const ReportFlags& f) {
  const TableFormat format = parse_table_format(f.format);
  if (!f.in && !f.registry) throw ConfigError("report needs --in and/or --registry");
  if ((f.svg || f.histogram) && !f.registry) throw ConfigError("--svg and --histogram need --registry");

  std::optional<Registry> registry;
  if (f.registry) registry = load_registry_file(*f.registry);

  std::vector<MethodReport> reports;
  if (f.in) {
    std::ifstream in(*f.in);
    if (!in) throw std::runtime_error("cannot open results file '" + *f.in + "'");
    std::ostringstream text;
    text << in.rdbuf();
    reports = results_from_json(Json::parse(text.str())).reports;
  } else {
    reports = reports_from_registry(*registry, f.threshold.value_or(10.0));
  }

  if (registry) {
    const auto h = year_histogram(reports, *registry);
    for (const auto& m : h.skipped) std::cerr << "warning: method '" << m << "' has no registry entry; skipped\n";
    if (f.svg) {
      if (h.empty()) throw std::runtime_error("no registered methods to plot");
      emit_histogram_svg(h, *f.svg);
    }
    if (f.histogram) {
      std::cout << "year,biased,unbiased\n";
      for (const auto& [year, c] : h.bins) std::cout << year << "," << c.biased << "," << c.unbiased << "\n";
      return kOk;
    }
  }
  if (f.in || !f.svg) std::cout << render_table(reports, format);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Center-bias audit harness for black-box optimizers"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "Print the function or method catalog as CSV");
  std::string list_target = "functions";
  bool list_methods = false;
  bool list_step_floor = false;
  list->add_option("target", list_target, "functions | methods");
  list->add_flag("--methods", list_methods, "Shorthand for target 'methods'");
  list->add_flag("--step-floor", list_step_floor, "Use the floor form of F06");

  auto* eval = app.add_subcommand("evaluate", "Evaluate a benchmark function at a point");
  std::string eval_id;
  std::string eval_point = "zero";
  std::size_t eval_dim = 30;
  double eval_shift = 0.0;
  bool eval_step_floor = false;
  int eval_digits = 3;
  eval->add_option("function", eval_id, "Function id, e.g. F05")->required();
  eval->add_option("point", eval_point, "zero | xstar | comma-separated coordinates (one value is replicated)");
  eval->add_option("--dim", eval_dim, "Dimension")->envname("CBIAS_DIM")->check(CLI::Range(2, 1 << 20));
  eval->add_option("--shift-fraction", eval_shift, "Shift as a fraction of the box width")
      ->envname("CBIAS_SHIFT_FRACTION");
  eval->add_flag("--step-floor", eval_step_floor, "Use the floor form of F06");
  eval->add_option("--digits", eval_digits, "Significant digits printed")->check(CLI::Range(1, 17));

  auto* audit = app.add_subcommand("audit", "Run the shifted/unshifted audit matrix");
  AuditFlags af;
  audit->add_option("--dim", af.dim, "Problem dimension")->envname("CBIAS_DIM");
  audit->add_option("--budget", af.budget, "Evaluations per run")->envname("CBIAS_BUDGET");
  audit->add_option("--runs", af.runs, "Independent runs per cell")->envname("CBIAS_RUNS");
  audit->add_option("--shift-fraction", af.shift_fraction, "Shift as a fraction of the box width")
      ->envname("CBIAS_SHIFT_FRACTION");
  audit->add_option("--error-floor", af.error_floor, "Errors below this are treated as equal to it")
      ->envname("CBIAS_ERROR_FLOOR");
  audit->add_option("--threshold", af.threshold, "Geomean above which a method is flagged")
      ->envname("CBIAS_THRESHOLD");
  audit->add_option("--seed", af.seed, "Master seed")->envname("CBIAS_SEED");
  audit->add_option("--methods", af.methods, "Comma-separated method ids (default: all)")->envname("CBIAS_METHODS");
  audit->add_option("--functions", af.functions, "Comma-separated function ids (default: F01..F13)")
      ->envname("CBIAS_FUNCTIONS");
  audit->add_option("--preset", af.preset, "paper | ci")->envname("CBIAS_PRESET");
  audit->add_option("--workers", af.workers, "Worker threads (0 = all cores)")->envname("CBIAS_WORKERS");
  audit->add_option("--out", af.out, "Write results JSON here")->envname("CBIAS_OUT");
  audit->add_option("--config", af.config, "key = value config file")->envname("CBIAS_CONFIG");
  audit->add_option("--format", af.format, "Summary format: csv | markdown | json")->envname("CBIAS_FORMAT");
  audit->add_flag("--step-floor", af.step_floor, "Use the floor form of F06");
  audit->add_flag("--quiet", af.quiet, "No per-cell log on stderr");

  auto* report = app.add_subcommand("report", "Render results tables and the per-year histogram");
  ReportFlags rf;
  report->add_option("--in", rf.in, "Results JSON from `audit --out`")->envname("CBIAS_IN");
  report->add_option("--format", rf.format, "csv | markdown | json")->envname("CBIAS_FORMAT");
  report->add_option("--registry", rf.registry, "Method registry CSV")->envname("CBIAS_REGISTRY");
  report->add_option("--svg", rf.svg, "Write the per-year histogram SVG here")->envname("CBIAS_SVG");
  report->add_option("--threshold", rf.threshold, "Threshold for registry-only reports")->envname("CBIAS_THRESHOLD");
  report->add_flag("--histogram", rf.histogram, "Print year,biased,unbiased instead of the table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*list) return cmd_list(list_methods ? "methods" : list_target, list_step_floor);
    if (*eval) return cmd_evaluate(eval_id, eval_point, eval_dim, eval_shift, eval_step_floor, eval_digits);
    if (*audit) return cmd_audit(af);
    if (*report) return cmd_report(rf);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "error: malformed JSON at byte " << e.byte << ": " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
