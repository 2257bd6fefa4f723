// Copyright 2026 The Authors.
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

#include "d2dcache/csvio.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace d2dcache {

namespace {

std::runtime_error line_error(const std::string& source, int line,
                              const std::string& what) {
  return std::runtime_error(source + ":" + std::to_string(line) + ": " + what);
}

bool is_blank_or_comment(const std::string& line) {
  const size_t pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

double parse_double_field(const std::string& text, const std::string& source,
                          int line) {
  if (text == "inf" || text == "+inf" || text == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw line_error(source, line, "expected a number, got '" + text + "'");
  }
}

int parse_int_field(const std::string& text, const std::string& source,
                    int line) {
  try {
    size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw line_error(source, line, "expected an integer, got '" + text + "'");
  }
}

}  // namespace

std::string format_float(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

ContactTrace parse_trace(std::istream& in, const std::string& source_name) {
  ContactTrace trace;
  std::string line;
  int line_no = 0;
  int max_user = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::istringstream fields(line);
    int a = 0;
    int b = 0;
    double t0 = 0.0;
    double t1 = 0.0;
    if (!(fields >> a >> b >> t0 >> t1)) {
      throw line_error(source_name, line_no,
                       "expected 4 fields: user_a user_b t_start t_end");
    }
    std::string trailing;
    if (fields >> trailing) {
      throw line_error(source_name, line_no,
                       "unexpected trailing field '" + trailing + "'");
    }
    if (a < 0 || b < 0 || a == b) {
      throw line_error(source_name, line_no, "bad user pair");
    }
    if (t0 < 0.0 || !(t0 < t1)) {
      throw line_error(source_name, line_no,
                       "times must satisfy 0 <= t_start < t_end");
    }
    trace.records.push_back({a, b, t0, t1});
    max_user = std::max({max_user, a, b});
  }
  if (trace.records.empty()) {
    throw std::runtime_error(source_name + ": no records");
  }
  trace.n_users = max_user + 1;
  return trace;
}

ContactTrace load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  return parse_trace(in, path);
}

void write_mobility_csv(std::ostream& out, const MobilityModel& m) {
  out << "user_a,user_b,lambda_c,lambda_i\n";
  for (int i = 0; i < m.n_users(); ++i) {
    for (int j = i + 1; j < m.n_users(); ++j) {
      const PairParams& p = m.pair(i, j);
      out << i << "," << j << ",";
      if (p.has_contact()) {
        out << format_float(p.contact_rate) << ","
            << format_float(p.intercontact_rate) << "\n";
      } else {
        out << "inf,0\n";
      }
    }
  }
}

MobilityModel read_mobility_csv(std::istream& in,
                                const std::string& source_name) {
  std::string line;
  int line_no = 0;
  struct Row {
    int a, b;
    PairParams p;
  };
  std::vector<Row> rows;
  int max_user = -1;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("user_a", 0) == 0) continue;  // header row
    }
    const auto fields = split_csv(line);
    if (fields.size() != 4) {
      throw line_error(source_name, line_no,
                       "expected user_a,user_b,lambda_c,lambda_i");
    }
    Row row;
    row.a = parse_int_field(fields[0], source_name, line_no);
    row.b = parse_int_field(fields[1], source_name, line_no);
    row.p.contact_rate = parse_double_field(fields[2], source_name, line_no);
    row.p.intercontact_rate =
        parse_double_field(fields[3], source_name, line_no);
    try {
      row.p.validate();
    } catch (const std::exception& e) {
      throw line_error(source_name, line_no, e.what());
    }
    if (row.a < 0 || row.b < 0 || row.a == row.b) {
      throw line_error(source_name, line_no, "bad user pair");
    }
    rows.push_back(row);
    max_user = std::max({max_user, row.a, row.b});
  }
  if (rows.empty()) {
    throw std::runtime_error(source_name + ": no pairs");
  }
  MobilityModel m(max_user + 1);
  for (const Row& row : rows) m.set_pair(row.a, row.b, row.p);
  return m;
}

void write_placement_csv(std::ostream& out, const CachePlacement& placement) {
  out << "user,file\n";
  for (int j = 0; j < placement.n_users(); ++j) {
    for (int f = 0; f < placement.n_files(); ++f) {
      if (placement.caches(j, f)) out << j << "," << f << "\n";
    }
  }
}

CachePlacement read_placement_csv(std::istream& in, int n_users, int n_files,
                                  const std::string& source_name) {
  CachePlacement placement(n_users, n_files);
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("user", 0) == 0) continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 2) {
      throw line_error(source_name, line_no, "expected user,file");
    }
    const int user = parse_int_field(fields[0], source_name, line_no);
    const int file = parse_int_field(fields[1], source_name, line_no);
    if (user < 0 || user >= n_users || file < 0 || file >= n_files) {
      throw line_error(source_name, line_no, "row out of range");
    }
    placement.set(user, file, true);
  }
  return placement;
}

}  // namespace d2dcache
