// Copyright 2026 The stabcv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "stabcv/data.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "stabcv/error.hpp"
#include "stabcv/random.hpp"
#include "stabcv/resampling.hpp"

namespace stabcv {

LearningSet::LearningSet(std::vector<Example> examples)
    : examples_(std::move(examples)) {
  if (!examples_.empty()) dim_ = examples_.front().x.size();
  for (std::size_t i = 0; i < examples_.size(); ++i) {
    if (examples_[i].x.size() != dim_) {
      throw InvalidArgument("LearningSet: example " + std::to_string(i) +
                            " has dimension " +
                            std::to_string(examples_[i].x.size()) +
                            ", expected " + std::to_string(dim_));
    }
  }
}

LearningSet LearningSet::subset(const BinaryVector& mask) const {
  if (mask.size() != size()) {
    throw InvalidArgument("LearningSet::subset: mask length " +
                          std::to_string(mask.size()) + " != " +
                          std::to_string(size()));
  }
  std::vector<Example> out;
  out.reserve(mask.count());
  for (std::size_t i = 0; i < size(); ++i) {
    if (mask[i]) out.push_back(examples_[i]);
  }
  return LearningSet(std::move(out));
}

LearningSet LearningSet::without(std::size_t index) const {
  if (index >= size()) {
    throw InvalidArgument("LearningSet::without: index out of range");
  }
  std::vector<Example> out;
  out.reserve(size() - 1);
  for (std::size_t i = 0; i < size(); ++i) {
    if (i != index) out.push_back(examples_[i]);
  }
  return LearningSet(std::move(out));
}

LearningSet LearningSet::with_appended(const Example& z) const {
  std::vector<Example> out(examples_.begin(), examples_.end());
  out.push_back(z);
  return LearningSet(std::move(out));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

LearningSet load_csv(const std::filesystem::path& path, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open CSV file " + path.string());

  std::string line;
  if (!std::getline(in, line)) {
    throw InvalidArgument(path.string() + ": empty file");
  }
  const std::string header = line;
  const auto names = split(header);
  std::optional<std::size_t> y_col;
  std::optional<std::size_t> u_col;
  std::vector<std::size_t> x_cols;
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (names[c] == "y") {
      y_col = c;
    } else if (names[c] == "u") {
      u_col = c;
    } else {
      x_cols.push_back(c);
    }
  }
  if (!y_col) throw InvalidArgument(path.string() + ": no 'y' column");

  std::vector<Example> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (cells.size() != names.size()) {
      throw InvalidArgument(where + ": expected " +
                            std::to_string(names.size()) + " fields, got " +
                            std::to_string(cells.size()));
    }
    Example z;
    for (std::size_t c : x_cols) {
      const auto v = parse_number(cells[c]);
      if (!v) {
        throw InvalidArgument(where + ": bad number '" +
                              std::string(cells[c]) + "'");
      }
      z.x.push_back(*v);
    }
    const auto y = parse_number(cells[*y_col]);
    if (!y) throw InvalidArgument(where + ": bad label");
    z.y = *y;
    std::optional<double> u;
    if (u_col) u = parse_number(cells[*u_col]);
    if (u) {
      if (*u < 0.0 || *u > 1.0) {
        throw InvalidArgument(where + ": u outside [0, 1]");
      }
      z.u = *u;
    } else {
      Rng rng = make_stream(seed, rows.size(), StreamTag::kTiebreak);
      z.u = uniform01(rng);
    }
    rows.push_back(std::move(z));
  }
  return LearningSet(std::move(rows));
}

}  // namespace stabcv
