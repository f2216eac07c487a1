//
// Copyright 2026 The Private Prediction Authors.
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
//

#include "private_prediction/concepts/concept_class.h"

#include <bit>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "private_prediction/base/status_macros.h"

namespace private_prediction {
namespace {

// True iff the table rows realize all 2^|subset| labelings of `subset`.
bool Shatters(const PatternTable& table, const std::vector<int>& subset) {
  std::set<uint64_t> seen;
  for (const auto& row : table.patterns()) {
    uint64_t code = 0;
    for (int column : subset) {
      code = (code << 1) |
             (row[static_cast<size_t>(column)] == Label::kPositive ? 1 : 0);
    }
    seen.insert(code);
  }
  return seen.size() == (uint64_t{1} << subset.size());
}

// Visits size-s subsets of [0, n) in lexicographic order until `fn` is true.
template <typename Fn>
bool AnySubset(int n, int s, Fn fn) {
  std::vector<int> idx(static_cast<size_t>(s));
  for (int i = 0; i < s; ++i) idx[static_cast<size_t>(i)] = i;
  while (true) {
    if (fn(idx)) return true;
    int i = s - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n - s + i) --i;
    if (i < 0) return false;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < s; ++j) {
      idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
  }
}

int EnumeratedVc(const PatternTable& table) {
  const int n = static_cast<int>(table.points().size());
  const auto rows = static_cast<uint64_t>(table.num_hypotheses());
  // Shattering s points needs 2^s distinct rows.
  const int max_s = std::min<int>(n, std::bit_width(rows) - 1);
  int vc = 0;
  for (int s = 1; s <= max_s; ++s) {
    const bool found = AnySubset(
        n, s, [&](const std::vector<int>& subset) {
          return Shatters(table, subset);
        });
    if (!found) break;  // Shattering is hereditary.
    vc = s;
  }
  return vc;
}

absl::StatusOr<Point> ParsePoint(const nlohmann::json& j) {
  if (j.is_number()) return Point::Create({j.get<double>()});
  if (!j.is_array()) {
    return absl::InvalidArgumentError("A point must be a number or an array");
  }
  std::vector<double> coords;
  for (const auto& c : j) {
    if (!c.is_number()) {
      return absl::InvalidArgumentError("Point coordinates must be numbers");
    }
    coords.push_back(c.get<double>());
  }
  return Point::Create(std::move(coords));
}

}  // namespace

std::string ClassName(const ConceptClass& c) {
  struct {
    std::string operator()(const ThresholdClass&) const { return "thresholds"; }
    std::string operator()(const EnumeratedClass&) const {
      return "enumerated";
    }
    std::string operator()(const HalfspaceClass&) const {
      return "halfspaces";
    }
  } visitor;
  return std::visit(visitor, c);
}

absl::StatusOr<int> VcDimension(const ConceptClass& c) {
  if (std::holds_alternative<ThresholdClass>(c)) return 1;
  if (const auto* h = std::get_if<HalfspaceClass>(&c)) return h->dimension + 1;
  const auto& e = std::get<EnumeratedClass>(c);
  if (e.table == nullptr) {
    return absl::InvalidArgumentError("Enumerated class has no table");
  }
  return EnumeratedVc(*e.table);
}

absl::StatusOr<EnumeratedClass> ParseEnumeratedClass(const std::string& json) {
  const nlohmann::json doc = nlohmann::json::parse(json, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    return absl::InvalidArgumentError("Enumerated class JSON is malformed");
  }
  if (!doc.contains("points") || !doc["points"].is_array() ||
      !doc.contains("patterns") || !doc["patterns"].is_array()) {
    return absl::InvalidArgumentError(
        "Enumerated class JSON needs 'points' and 'patterns' arrays");
  }
  std::vector<Point> points;
  for (const auto& p : doc["points"]) {
    PP_ASSIGN_OR_RETURN(Point point, ParsePoint(p));
    points.push_back(std::move(point));
  }
  std::vector<std::vector<Label>> patterns;
  for (const auto& row : doc["patterns"]) {
    if (!row.is_array()) {
      return absl::InvalidArgumentError("Each pattern must be an array");
    }
    std::vector<Label> labels;
    for (const auto& v : row) {
      if (!v.is_number_integer()) {
        return absl::InvalidArgumentError("Pattern entries must be +1 or -1");
      }
      PP_ASSIGN_OR_RETURN(const Label label,
                          LabelFromInt(v.get<int>()));
      labels.push_back(label);
    }
    patterns.push_back(std::move(labels));
  }
  PP_ASSIGN_OR_RETURN(auto table,
                      PatternTable::Create(std::move(points), std::move(patterns)));
  return EnumeratedClass{std::move(table)};
}

absl::StatusOr<EnumeratedClass> LoadEnumeratedClass(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("Cannot open ", path));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseEnumeratedClass(buffer.str());
}

}  // namespace private_prediction
