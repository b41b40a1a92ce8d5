#pragma once

// Flat files: key = value configs, comma-separated tables with a header row,
// a JSON-lines event log and a gnuplot script over the emitted tables.

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pgd/serialize.hpp"

namespace pgd {

/// 17 significant digits; enough to recover every double.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

}  // namespace detail

/// Parses a number; throws ParseError naming `what` on anything else.
inline double parse_number(const std::string& text, const std::string& what) {
  const std::string s = detail::trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw Error(ErrorCode::ParseError, what + ": '" + text + "' is not a number");
  return v;
}

/// `key = value` lines; blank lines and '#' comments are skipped. Keys are
/// case-sensitive and may appear once.
class FlatConfig {
 public:
  static FlatConfig parse(std::istream& in) {
    FlatConfig c;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = detail::trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(number) + ": expected key = value");
      }
      const std::string key = detail::trim(line.substr(0, eq));
      if (key.empty()) throw Error(ErrorCode::ParseError, "line " + std::to_string(number) + ": empty key");
      if (!c.values_.emplace(key, detail::trim(line.substr(eq + 1))).second) {
        throw Error(ErrorCode::ParseError, "duplicate key '" + key + "'");
      }
    }
    return c;
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  const std::string& text(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw Error(ErrorCode::ParseError, "missing field '" + key + "'");
    return it->second;
  }

  double number(const std::string& key) const {
    const double v = parse_number(text(key), key);
    if (!std::isfinite(v)) throw Error(ErrorCode::ParseError, key + " must be finite");
    return v;
  }

  std::vector<double> numbers(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : detail::split(text(key), ',')) {
      const double v = parse_number(item, key);
      if (!std::isfinite(v)) throw Error(ErrorCode::ParseError, key + " must be finite");
      out.push_back(v);
    }
    return out;
  }

  std::vector<std::string> keys() const {
    std::vector<std::string> k;
    for (const auto& kv : values_) k.push_back(kv.first);
    return k;
  }

 private:
  std::map<std::string, std::string> values_;
};

/// Header-rowed numeric table.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return i;
    }
    throw Error(ErrorCode::ParseError, "no column '" + name + "'");
  }
};

inline void write_table(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt17(row[i]);
    os << "\n";
  }
}

inline Table read_table(std::istream& in) {
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "empty table");
  t.columns = detail::split(detail::trim(line), ',');
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto cells = detail::split(line, ',');
    if (cells.size() != t.columns.size()) {
      throw Error(ErrorCode::ParseError, "row " + std::to_string(number) + " has " + std::to_string(cells.size()) +
                                             " cells, header has " + std::to_string(t.columns.size()));
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_number(c, "row " + std::to_string(number)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Exact profile u and regular rho at each time on the x grid; atoms go to a
/// separate table because they are not functions of x.
inline Table profile_table(const PiecewiseSolution& sol, const std::vector<double>& xs, const std::vector<double>& times) {
  Table t{{"x", "t", "u", "rho"}, {}};
  for (double time : times) {
    for (double x : xs) {
      const auto s = evaluate(sol, x, time);
      t.rows.push_back({x, time, s.u, s.rho_regular});
    }
  }
  return t;
}

inline Table atom_table(const PiecewiseSolution& sol, const std::vector<double>& times) {
  Table t{{"t", "x", "e"}, {}};
  for (double time : times) {
    for (const auto& a : atoms_at(sol, time)) t.rows.push_back({time, a.position, a.strength});
  }
  return t;
}

/// One JSON object per line, in event order.
inline void write_events_jsonl(std::ostream& os, const std::vector<EventRecord>& events) {
  for (const auto& e : events) os << Json(e).dump() << "\n";
}

inline std::vector<EventRecord> read_events_jsonl(std::istream& in) {
  std::vector<EventRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    try {
      out.push_back(Json::parse(line).get<EventRecord>());
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
  }
  return out;
}

/// gnuplot script drawing u and rho against x, one curve per time, from a
/// table with columns x, t, u, rho (the exact profile table and the viscous csv
/// share this layout).
inline void write_gnuplot(std::ostream& os, const std::string& table_file, const std::vector<double>& times,
                          const std::string& png) {
  os << "set datafile separator ','\n";
  os << "set terminal pngcairo size 1000,700\n";
  os << "set output '" << png << "'\n";
  os << "set multiplot layout 2,1\n";
  for (const char* field : {"u", "rho"}) {
    const int col = std::string(field) == "u" ? 3 : 4;
    os << "set xlabel 'x'\nset ylabel '" << field << "'\n";
    os << "plot ";
    for (std::size_t k = 0; k < times.size(); ++k) {
      os << (k ? ", \\\n     " : "") << "'" << table_file << "' every ::1 using (abs($2 - " << fmt17(times[k])
         << ") < 1e-12 ? $1 : 1/0):" << col << " with lines title 't = " << fmt17(times[k]) << "'";
    }
    os << "\n";
  }
  os << "unset multiplot\n";
}

}  // namespace pgd
