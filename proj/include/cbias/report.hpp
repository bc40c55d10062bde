#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cbias/errors.hpp"
#include "cbias/harness.hpp"
#include "cbias/serialize.hpp"

namespace cbias {

enum class TableFormat : std::uint8_t { Csv, Markdown, Json };

inline TableFormat parse_table_format(std::string_view s) {
  if (s == "csv") return TableFormat::Csv;
  if (s == "markdown" || s == "md") return TableFormat::Markdown;
  if (s == "json") return TableFormat::Json;
  throw ConfigError("unknown table format '" + std::string(s) + "' (expected csv, markdown or json)");
}

// Three significant digits, e.g. 9.66E-01.
inline std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2E", v);
  return buf;
}

namespace detail {

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// One RFC 4180 record; quoted fields may not span lines here.
inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw ConfigError("unterminated quoted field");
  return fields;
}

}  // namespace detail

inline const std::vector<std::string>& table_columns() {
  static const std::vector<std::string> cols = {"method", "function", "unshifted", "shifted", "ratio", "verdict"};
  return cols;
}

// One row per (method, function) plus a geomean row per method.
inline std::string render_table(const std::vector<MethodReport>& reports, TableFormat format) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& rep : reports) {
    for (const auto& r : rep.records) {
      rows.push_back({rep.method, to_string(r.function), format_sci(r.unshifted_mean), format_sci(r.shifted_mean),
                      format_sci(r.ratio), ""});
    }
    rows.push_back({rep.method, "geomean", "-", "-", format_sci(rep.geomean), to_string(rep.verdict)});
  }

  std::ostringstream out;
  switch (format) {
    case TableFormat::Csv: {
      auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << detail::csv_field(fields[i]);
        out << "\n";
      };
      line(table_columns());
      for (const auto& r : rows) line(r);
      break;
    }
    case TableFormat::Markdown: {
      auto line = [&](const std::vector<std::string>& fields) {
        out << "|";
        for (const auto& f : fields) out << " " << f << " |";
        out << "\n";
      };
      line(table_columns());
      out << "|---|---|--:|--:|--:|---|\n";
      for (const auto& r : rows) line(r);
      break;
    }
    case TableFormat::Json: {
      Json doc;
      write_reports(doc, reports);
      out << doc.dump(2) << "\n";
      break;
    }
  }
  return out.str();
}

inline std::vector<MethodReport> parse_table_json(std::string_view text) {
  return reports_from_json(Json::parse(text));
}

struct RegistryEntry {
  std::string abbreviation;
  std::string full_name;
  int year = 0;
  std::optional<double> paper_geomean;
  std::optional<Verdict> paper_verdict;
};

class Registry {
 public:
  Registry() = default;

  void add(RegistryEntry e) {
    if (e.year < 1900 || e.year > 2100) {
      throw ConfigError("year " + std::to_string(e.year) + " of '" + e.abbreviation + "' outside [1900, 2100]");
    }
    if (find(e.abbreviation)) throw ConfigError("duplicate registry abbreviation '" + e.abbreviation + "'");
    entries_.push_back(std::move(e));
  }

  [[nodiscard]] const RegistryEntry* find(std::string_view abbreviation) const {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const RegistryEntry& e) { return e.abbreviation == abbreviation; });
    return it == entries_.end() ? nullptr : &*it;
  }

  [[nodiscard]] const std::vector<RegistryEntry>& entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<RegistryEntry> entries_;
};

// Lines: abbreviation,name,year[,paper_geomean,paper_verdict]. Blank lines
// and lines starting with '#' are skipped.
inline Registry load_registry(std::istream& in) {
  Registry reg;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto where = [&] { return "registry line " + std::to_string(lineno) + ": "; };
    std::vector<std::string> f;
    try {
      f = detail::split_csv_line(line);
    } catch (const ConfigError& e) {
      throw ConfigError(where() + e.what());
    }
    if (f.size() != 3 && f.size() != 5) throw ConfigError(where() + "expected 3 or 5 fields");
    RegistryEntry e{f[0], f[1], 0, std::nullopt, std::nullopt};
    try {
      std::size_t used = 0;
      e.year = std::stoi(f[2], &used);
      if (used != f[2].size()) throw std::invalid_argument("year");
      if (f.size() == 5) {
        e.paper_geomean = std::stod(f[3], &used);
        if (used != f[3].size()) throw std::invalid_argument("geomean");
        e.paper_verdict = parse_verdict(f[4]);
      }
    } catch (const std::exception&) {
      throw ConfigError(where() + "malformed number or verdict");
    }
    try {
      reg.add(std::move(e));
    } catch (const ConfigError& err) {
      throw ConfigError(where() + err.what());
    }
  }
  return reg;
}

inline Registry load_registry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open registry file '" + path + "'");
  return load_registry(in);
}

// Reports carrying the registry's recorded geomeans (no records); entries
// without a recorded geomean are skipped.
inline std::vector<MethodReport> reports_from_registry(const Registry& reg, double threshold = 10.0) {
  std::vector<MethodReport> out;
  for (const auto& e : reg.entries()) {
    if (!e.paper_geomean) continue;
    out.push_back({e.abbreviation, *e.paper_geomean, classify(*e.paper_geomean, threshold), {}});
  }
  return out;
}

struct YearCounts {
  std::size_t biased = 0;
  std::size_t unbiased = 0;

  friend bool operator==(const YearCounts&, const YearCounts&) = default;
};

struct YearHistogram {
  std::map<int, YearCounts> bins;
  std::vector<std::string> skipped;  // methods without a registry entry

  [[nodiscard]] bool empty() const noexcept { return bins.empty(); }
  [[nodiscard]] YearCounts totals() const {
    YearCounts t;
    for (const auto& [year, c] : bins) {
      (void)year;
      t.biased += c.biased;
      t.unbiased += c.unbiased;
    }
    return t;
  }
};

inline YearHistogram year_histogram(const std::vector<MethodReport>& reports, const Registry& registry) {
  YearHistogram h;
  for (const auto& rep : reports) {
    const auto* entry = registry.find(rep.method);
    if (entry == nullptr) {
      h.skipped.push_back(rep.method);
      continue;
    }
    auto& bin = h.bins[entry->year];
    if (rep.verdict == Verdict::CenterBiased) {
      ++bin.biased;
    } else {
      ++bin.unbiased;
    }
  }
  return h;
}

// Stacked bars, one pair of <rect class="bar ..."> per year: unbiased at the
// bottom, biased on top. Output depends only on the histogram.
inline std::string render_histogram_svg(const YearHistogram& h) {
  if (h.empty()) throw ContractViolation("cannot draw an empty histogram");
  constexpr int bar = 14;
  constexpr int gap = 4;
  constexpr int plot_h = 240;
  constexpr int left = 40;
  constexpr int top = 30;
  constexpr int bottom = 60;

  std::size_t peak = 1;
  for (const auto& [y, c] : h.bins) {
    (void)y;
    peak = std::max(peak, c.biased + c.unbiased);
  }
  const int width = left + static_cast<int>(h.bins.size()) * (bar + gap) + 20 + 150;
  const int height = top + plot_h + bottom;
  const double unit = static_cast<double>(plot_h) / static_cast<double>(peak);
  const int base = top + plot_h;

  std::ostringstream s;
  char buf[256];
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
    << "\" font-family=\"sans-serif\" font-size=\"10\">\n"
    << "<title>Methods with/without center-bias per publication year</title>\n"
    << "<line x1=\"" << left << "\" y1=\"" << base << "\" x2=\"" << width - 160 << "\" y2=\"" << base
    << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << base
    << "\" stroke=\"black\"/>\n";
  for (std::size_t tick = 0; tick <= peak; ++tick) {
    const double y = base - unit * static_cast<double>(tick);
    std::snprintf(buf, sizeof buf, "<text x=\"%d\" y=\"%.2f\" text-anchor=\"end\">%zu</text>\n", left - 4, y + 3.0,
                  tick);
    s << buf;
  }
  int x = left + gap;
  for (const auto& [year, c] : h.bins) {
    const double hu = unit * static_cast<double>(c.unbiased);
    const double hb = unit * static_cast<double>(c.biased);
    std::snprintf(buf, sizeof buf,
                  "<rect class=\"bar unbiased\" x=\"%d\" y=\"%.2f\" width=\"%d\" height=\"%.2f\" fill=\"#4c72b0\"/>\n",
                  x, base - hu, bar, hu);
    s << buf;
    std::snprintf(buf, sizeof buf,
                  "<rect class=\"bar biased\" x=\"%d\" y=\"%.2f\" width=\"%d\" height=\"%.2f\" fill=\"#dd4444\"/>\n", x,
                  base - hu - hb, bar, hb);
    s << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" transform=\"rotate(-90 %d %d)\" text-anchor=\"end\">%d</text>\n",
                  x + bar / 2 + 3, base + 6, x + bar / 2 + 3, base + 6, year);
    s << buf;
    x += bar + gap;
  }
  const int lx = width - 150;
  s << "<text x=\"" << lx << "\" y=\"" << top + 10 << "\" fill=\"#dd4444\">with center-bias</text>\n"
    << "<text x=\"" << lx << "\" y=\"" << top + 26 << "\" fill=\"#4c72b0\">without center-bias</text>\n"
    << "</svg>\n";
  return s.str();
}

inline void emit_histogram_svg(const YearHistogram& h, const std::string& path) {
  const std::string svg = render_histogram_svg(h);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << svg;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace cbias
