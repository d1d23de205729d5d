// Copyright 2026 The fluidmimo Authors.
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

#include "fluidmimo/channel_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fluidmimo/errors.hpp"
#include "fluidmimo/format.hpp"

namespace fluidmimo {

namespace {

constexpr std::string_view kColumns = "i,n,j,k,re,im";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  for (;;) {
    const auto pos = s.find(sep);
    parts.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return parts;
}

int parse_index(std::string_view field, std::size_t line, const char* name) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || value < 1) {
    throw ParseError(line, std::string("bad index ") + name + " '" +
                               std::string(field) + "'");
  }
  return value;
}

double parse_value(std::string_view field, std::size_t line, const char* name) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line, std::string("bad value ") + name + " '" +
                               std::string(field) + "'");
  }
  return value;
}

// "# m_r=2,m_t=2,n_r=10,n_t=10"
ArrayDims parse_dims(std::string_view body, std::size_t line) {
  ArrayDims dims{0, 0, 0, 0};
  for (std::string_view item : split(body, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line, "expected key=value in dimension header");
    }
    const std::string_view key = trim(item.substr(0, eq));
    const int value = parse_index(trim(item.substr(eq + 1)), line, "dimension");
    if (key == "m_r") dims.m_r = value;
    else if (key == "m_t") dims.m_t = value;
    else if (key == "n_r") dims.n_r = value;
    else if (key == "n_t") dims.n_t = value;
    else throw ParseError(line, "unknown dimension '" + std::string(key) + "'");
  }
  if (dims.m_r < 1 || dims.m_t < 1 || dims.n_r < 1 || dims.n_t < 1) {
    throw ParseError(line, "dimension header must set m_r, m_t, n_r and n_t");
  }
  return dims;
}

struct Row {
  int i, n, j, k;
  double re, im;
  std::size_t line;
};

}  // namespace

void save_channel(const OverallChannel& channel, std::ostream& out) {
  const ArrayDims& d = channel.dims();
  out << "# m_r=" << d.m_r << ",m_t=" << d.m_t << ",n_r=" << d.n_r
      << ",n_t=" << d.n_t << '\n'
      << kColumns << '\n';
  for (int i = 0; i < d.m_r; ++i) {
    for (int n = 0; n < d.n_r; ++n) {
      for (int j = 0; j < d.m_t; ++j) {
        for (int k = 0; k < d.n_t; ++k) {
          const std::complex<double> g = channel.coefficient(i, n, j, k);
          out << i + 1 << ',' << n + 1 << ',' << j + 1 << ',' << k + 1 << ','
              << to_decimal(g.real()) << ',' << to_decimal(g.imag()) << '\n';
        }
      }
    }
  }
}

void save_channel(const OverallChannel& channel,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  save_channel(channel, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

OverallChannel load_channel(std::istream& in) {
  std::optional<ArrayDims> declared;
  bool seen_columns = false;
  std::vector<Row> rows;
  std::string raw;
  std::size_t line = 0;

  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty()) continue;
    if (text.front() == '#') {
      if (seen_columns || declared) {
        throw ParseError(line, "unexpected comment line");
      }
      declared = parse_dims(trim(text.substr(1)), line);
      continue;
    }
    if (!seen_columns) {
      if (text != kColumns) {
        throw ParseError(line, "expected header '" + std::string(kColumns) + "'");
      }
      seen_columns = true;
      continue;
    }
    const auto fields = split(text, ',');
    if (fields.size() != 6) {
      throw ParseError(line, "expected 6 fields, got " + std::to_string(fields.size()));
    }
    rows.push_back({parse_index(fields[0], line, "i"),
                    parse_index(fields[1], line, "n"),
                    parse_index(fields[2], line, "j"),
                    parse_index(fields[3], line, "k"),
                    parse_value(fields[4], line, "re"),
                    parse_value(fields[5], line, "im"), line});
  }
  if (!seen_columns) throw ParseError(line + 1, "missing header line");

  ArrayDims dims{0, 0, 0, 0};
  if (declared) {
    dims = *declared;
  } else {
    for (const Row& r : rows) {
      dims.m_r = std::max(dims.m_r, r.i);
      dims.n_r = std::max(dims.n_r, r.n);
      dims.m_t = std::max(dims.m_t, r.j);
      dims.n_t = std::max(dims.n_t, r.k);
    }
    if (rows.empty()) throw ParseError(line + 1, "no data rows");
  }

  const std::size_t expected =
      static_cast<std::size_t>(dims.rows()) * static_cast<std::size_t>(dims.cols());
  Eigen::MatrixXcd g(dims.rows(), dims.cols());
  std::vector<bool> filled(expected, false);
  for (const Row& r : rows) {
    if (r.i > dims.m_r || r.n > dims.n_r || r.j > dims.m_t || r.k > dims.n_t) {
      throw ParseError(r.line, "index outside the declared dimensions");
    }
    const int row = (r.i - 1) * dims.n_r + (r.n - 1);
    const int col = (r.j - 1) * dims.n_t + (r.k - 1);
    const std::size_t slot = static_cast<std::size_t>(row) * dims.cols() + col;
    if (filled[slot]) throw ParseError(r.line, "duplicate entry");
    filled[slot] = true;
    g(row, col) = {r.re, r.im};
  }
  if (rows.size() != expected) {
    throw ParseError(line + 1, "header declares " + std::to_string(expected) +
                                   " entries but the body has " +
                                   std::to_string(rows.size()));
  }
  return OverallChannel(dims, std::move(g));
}

OverallChannel load_channel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return load_channel(in);
}

}  // namespace fluidmimo
