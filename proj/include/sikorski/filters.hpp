// Copyright 2026 The Sikorski Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sikorski {

// Finite models on X = {0, ..., n-1} with n <= 5, printed as a, b, c, ...
//   subset   : bit x set iff x is a member (Subset)
//   relation : bit x*n + y set iff (x, y) is a member (Relation)
//   family   : bit s set iff the subset with mask s is a member (Family)
using Subset = std::uint32_t;
using Relation = std::uint32_t;
using Family = std::uint32_t;

inline constexpr int kMaxGroundSize = 5;
inline constexpr int kMaxCatalogSize = 4;

Subset full_set(int n);
std::string subset_label(Subset s);  // "{a,c}"

/// Entourage system of a uniformity: symmetric relations containing the
/// diagonal, closed under symmetric supersets and binary intersection, and
/// with some W satisfying W o W within every V. Checked at construction.
class FiniteUniformity {
 public:
  FiniteUniformity(int n, std::vector<Relation> entourages);

  int size() const { return n_; }
  const std::vector<Relation>& entourages() const { return entourages_; }
  /// Smallest entourage; an equivalence relation.
  Relation core() const { return core_; }
  std::string label() const;  // core classes, e.g. "{a,b}{c}"

 private:
  int n_;
  std::vector<Relation> entourages_;
  Relation core_;
};

FiniteUniformity discrete_uniformity(int n);
FiniteUniformity indiscrete_uniformity(int n);

/// Closes seed relations into a uniformity: symmetrise, add the diagonal,
/// intersect to D, then take the equivalence x ~ y iff K(x, D) = K(y, D)
/// (contained in D) and every symmetric superset of it.
FiniteUniformity uniformity_from_seeds(int n, const std::vector<Relation>& seeds);

/// Every uniformity on n points, one per equivalence relation, produced by
/// closing each reflexive symmetric seed and deduplicating.
std::vector<FiniteUniformity> uniformity_catalog(int n);

/// Ball K(x, V) = {y : (x, y) in V}.
Subset ball(int n, int x, Relation v);

struct FiniteFilter {
  int n = 0;
  Family members = 0;  // full upward closure

  bool contains(Subset s) const { return (members >> s) & 1u; }
  /// Intersection of all members.
  Subset core() const;
  std::string label() const;  // "^{a,b}" for the principal filter on {a,b}
  bool operator==(const FiniteFilter&) const = default;
};

/// F1 upward closed, F2 closed under binary intersection, F3 empty set absent.
bool is_filter(int n, Family f);

/// All filters on n points, by exhaustive search over upward-closed families.
std::vector<FiniteFilter> enumerate_filters(int n);

FiniteFilter principal_filter(int n, Subset s);

/// Upward closure of a filtering base. Rejects an empty base, a base
/// containing the empty set, and any pair whose intersection contains no
/// base member (the pair is named in the message).
FiniteFilter filter_from_base(int n, const std::vector<Subset>& base);

FiniteFilter intersect_filters(const std::vector<FiniteFilter>& filters);

bool converges_to(const FiniteFilter& f, int x, const FiniteUniformity& u);
bool is_cauchy(const FiniteFilter& f, const FiniteUniformity& u);
bool relation_R(const FiniteFilter& f1, const FiniteFilter& f2, const FiniteUniformity& u);

/// Intersection of every Cauchy filter R-related to f. Throws InvariantError
/// when f is not Cauchy or the result fails to be a Cauchy member-minimum.
FiniteFilter minimal_cauchy(const FiniteFilter& f, const FiniteUniformity& u);

// ---------------------------------------------------------------------------
// Exhaustive sweep

struct CheckTally {
  std::string name;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::optional<std::string> first_counterexample;
};

struct ModelSummary {
  int size = 0;
  std::string uniformity;
  std::size_t entourages = 0;
  std::size_t filters = 0;
  std::size_t cauchy_filters = 0;
  std::size_t convergent_filters = 0;
  std::size_t classes = 0;  // R-classes of Cauchy filters
};

struct FilterReport {
  std::vector<CheckTally> checks;
  std::vector<ModelSummary> models;
  bool ok() const;
  std::string text() const;
  std::string models_csv() const;
};

/// Runs every check over every catalog model with 1 <= |X| <= max_size
/// (at most kMaxCatalogSize) and over all filter tuples on it.
FilterReport verify_filter_calculus(int max_size);

}  // namespace sikorski
