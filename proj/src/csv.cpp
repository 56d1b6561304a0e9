// Copyright 2026 The lzs-search-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lzs/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "lzs/errors.hpp"

namespace lzs {

namespace {

constexpr std::string_view kParamsPrefix = "# params:";
constexpr std::string_view kResultsPrefix = "# results:";

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string join_entries(const std::map<std::string, std::string>& m) {
  std::string s;
  for (const auto& [k, v] : m) {
    if (v.find_first_of(" \t\n") != std::string::npos || k.find('=') != std::string::npos) {
      throw InvalidArgument("params entry '" + k + "' cannot contain whitespace or '='");
    }
    s += ' ';
    s += k;
    s += '=';
    s += v;
  }
  return s;
}

std::map<std::string, std::string> parse_entries(std::string_view line, std::size_t lineno) {
  std::map<std::string, std::string> m;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos >= line.size()) break;
    auto end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    const auto token = line.substr(pos, end - pos);
    const auto eq = token.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw InvalidArgument("csv line " + std::to_string(lineno) + ": malformed entry '" +
                            std::string(token) + "'");
    }
    m[std::string(token.substr(0, eq))] = std::string(token.substr(eq + 1));
    pos = end;
  }
  return m;
}

const std::string& entry(const std::map<std::string, std::string>& m, const std::string& key) {
  const auto it = m.find(key);
  if (it == m.end()) throw InvalidArgument("csv params lack '" + key + "'");
  return it->second;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

double parse_number(std::string_view text, std::string_view what) {
  const auto t = trim(text);
  std::string_view body = t;
  // from_chars rejects a leading '+'.
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double v = 0.0;
  const auto r = std::from_chars(body.data(), body.data() + body.size(), v);
  if (body.empty() || r.ec != std::errc() || r.ptr != body.data() + body.size()) {
    throw InvalidArgument(std::string(what) + ": cannot parse number '" + std::string(t) + "'");
  }
  return v;
}

std::map<std::string, std::string> params_entries(const DriveParams& p) {
  return {
      {"a1", format_number(p.a1)},
      {"amplitude_a", format_number(p.amplitude_a)},
      {"amplitude_b", format_number(p.amplitude_b)},
      {"delta", format_number(p.delta)},
      {"epsilon", format_number(p.epsilon)},
      {"eta", format_number(p.eta)},
      {"n", p.n ? std::to_string(*p.n) : "none"},
      {"omega", format_number(p.omega)},
      {"omega1", format_number(p.omega1)},
      {"phi", format_number(p.phi)},
  };
}

DriveParams drive_params_from(const std::map<std::string, std::string>& m) {
  DriveParams p;
  p.a1 = parse_number(entry(m, "a1"), "a1");
  p.amplitude_a = parse_number(entry(m, "amplitude_a"), "amplitude_a");
  p.amplitude_b = parse_number(entry(m, "amplitude_b"), "amplitude_b");
  p.delta = parse_number(entry(m, "delta"), "delta");
  p.epsilon = parse_number(entry(m, "epsilon"), "epsilon");
  p.eta = parse_number(entry(m, "eta"), "eta");
  const std::string& n = entry(m, "n");
  if (n != "none") p.n = static_cast<int>(parse_number(n, "n"));
  p.omega = parse_number(entry(m, "omega"), "omega");
  p.omega1 = parse_number(entry(m, "omega1"), "omega1");
  p.phi = parse_number(entry(m, "phi"), "phi");
  return p;
}

std::string to_csv(const CsvTable& table) {
  std::string out(kCsvMagic);
  out += '\n';
  out += kParamsPrefix;
  out += join_entries(table.params);
  out += '\n';
  if (!table.results.empty()) {
    out += kResultsPrefix;
    out += join_entries(table.results);
    out += '\n';
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw InvalidArgument("csv row width does not match the column count");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  std::size_t lineno = 0;
  bool seen_magic = false;
  bool seen_columns = false;
  for (auto line : split(text, '\n')) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line == kCsvMagic) {
        seen_magic = true;
      } else if (line.starts_with(kParamsPrefix)) {
        t.params = parse_entries(line.substr(kParamsPrefix.size()), lineno);
      } else if (line.starts_with(kResultsPrefix)) {
        t.results = parse_entries(line.substr(kResultsPrefix.size()), lineno);
      }
      continue;
    }
    if (!seen_magic) throw InvalidArgument("csv lacks the '# lzs-search-sim v1' header");
    const auto cells = split(line, ',');
    if (!seen_columns) {
      for (auto c : cells) t.columns.emplace_back(trim(c));
      seen_columns = true;
      continue;
    }
    if (cells.size() != t.columns.size()) {
      throw InvalidArgument("csv line " + std::to_string(lineno) + ": expected " +
                            std::to_string(t.columns.size()) + " cells, got " +
                            std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (auto c : cells) row.push_back(parse_number(c, "csv line " + std::to_string(lineno)));
    t.rows.push_back(std::move(row));
  }
  if (!seen_magic) throw InvalidArgument("csv lacks the '# lzs-search-sim v1' header");
  return t;
}

CsvTable grid_table(const SweepGrid& grid) {
  grid.validate();
  CsvTable t;
  t.params = params_entries(grid.params);
  for (const auto& [k, v] : grid.metadata) t.params[k] = v;
  std::string axes;
  for (const auto& a : grid.axes) {
    if (!axes.empty()) axes += ',';
    axes += a.name;
    t.columns.push_back(a.name);
  }
  t.params["axes"] = axes;
  for (const auto& o : grid.observables) t.columns.push_back(o.name);
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row = grid.coordinates(i);
    for (const auto& o : grid.observables) row.push_back(o.values[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

SweepGrid grid_from_table(const CsvTable& table) {
  SweepGrid g;
  g.params = drive_params_from(table.params);
  std::vector<std::string> axis_names;
  for (auto name : split(entry(table.params, "axes"), ',')) {
    if (!name.empty()) axis_names.emplace_back(name);
  }
  const auto fields = params_entries(DriveParams{});
  for (const auto& [k, v] : table.params) {
    if (k != "axes" && !fields.contains(k)) g.metadata[k] = v;
  }
  if (axis_names.size() > table.columns.size()) throw InvalidArgument("csv has fewer columns than axes");
  for (std::size_t a = 0; a < axis_names.size(); ++a) {
    if (table.columns[a] != axis_names[a]) {
      throw InvalidArgument("csv column " + table.columns[a] + " is not axis " + axis_names[a]);
    }
  }
  // Axis values: the distinct coordinates in order, each axis cycling at its stride.
  std::size_t stride = table.rows.size();
  for (std::size_t a = 0; a < axis_names.size(); ++a) {
    Axis axis;
    axis.name = axis_names[a];
    std::size_t count = 0;
    if (!table.rows.empty()) {
      const double first = table.rows[0][a];
      count = 1;
      // Rows advance axis a every (stride / count) rows.
      std::size_t block = 1;
      while (block < stride && table.rows[block][a] == first) ++block;
      count = stride / block;
      for (std::size_t i = 0; i < count; ++i) axis.explicit_values.push_back(table.rows[i * block][a]);
      stride = block;
    }
    axis.points = static_cast<int>(count);
    g.axes.push_back(std::move(axis));
  }
  for (std::size_t c = axis_names.size(); c < table.columns.size(); ++c) {
    Observable o{table.columns[c], {}, false};
    for (const auto& row : table.rows) o.values.push_back(row[c]);
    g.observables.push_back(std::move(o));
  }
  if (g.size() != table.rows.size()) throw InvalidArgument("csv rows do not form a full grid");
  return g;
}

CsvTable trajectory_table(const Trajectory& traj, const DriveParams& params,
                          const std::map<std::string, std::string>& metadata,
                          std::size_t stride) {
  if (stride == 0) throw InvalidArgument("stride must be >= 1");
  CsvTable t;
  t.params = params_entries(params);
  for (const auto& [k, v] : metadata) t.params[k] = v;
  t.columns.push_back("time");
  for (std::size_t c = 0; c < traj.columns; ++c) t.columns.push_back("p" + std::to_string(c));
  for (std::size_t r = 0; r < traj.size(); ++r) {
    if (r % stride != 0 && r + 1 != traj.size()) continue;
    std::vector<double> row{traj.times[r]};
    for (std::size_t c = 0; c < traj.columns; ++c) row.push_back(traj.at(r, c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace lzs
