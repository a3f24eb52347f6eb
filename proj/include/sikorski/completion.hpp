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

#include <optional>
#include <string>
#include <vector>

#include "sikorski/space.hpp"
#include "sikorski/uniform.hpp"

namespace sikorski {

/// Coordinate tolerance under which two points of R^G are the same point.
inline constexpr double kDedupTolerance = 1e-9;

enum class ProbeDisposition {
  Adjoined,   // new limit point
  Realized,   // limit is the image of a carrier point
  Duplicate,  // limit already present (sample or earlier adjoined point)
  NotCauchy,  // escaping or undecided; never adjoined
};
const char* to_string(ProbeDisposition d);

struct ProbeOutcome {
  std::string probe;
  CauchyVerdict verdict;
  ProbeDisposition disposition = ProbeDisposition::NotCauchy;
  std::optional<std::vector<double>> realized_params;  // when Realized
};

struct AdjoinedPoint {
  std::string probe;
  std::vector<double> tuple;        // in R^G
  std::vector<double> oscillation;  // tail bound per coordinate
};

/// Sampled phi_G(M) plus the limits of Cauchy probes that no carrier point
/// realises.
struct CompletedSpace {
  GeneratorFamily generators;
  EmbeddedCloud base;
  std::vector<AdjoinedPoint> adjoined;
  std::vector<ProbeOutcome> outcomes;  // in probe order
  double tol = 0.0;
  std::size_t tail = 0;
};

/// A Cauchy limit L is realised when the probe parameters settle (tail
/// oscillation <= tol) at p*, p* lies in the carrier box after snapping to a
/// closed end within tol, and |phi_G(p*) - L| <= tol.
CompletedSpace complete(const DiffSpace& s, const std::vector<Probe>& probes,
                        double tol, std::size_t tail);

/// Completes again, treating the points already adjoined to `cs` as present.
CompletedSpace complete_again(const CompletedSpace& cs, const DiffSpace& s,
                              const std::vector<Probe>& probes);

/// Values of the extension of generator g: g(m) at base points, the
/// g-coordinate of the limit at adjoined points.
struct ExtensionTable {
  std::string generator;
  std::vector<double> base;
  std::vector<double> adjoined;
};
ExtensionTable extend_function(const std::string& g, const CompletedSpace& cs);

/// Coordinates of `tuple` (over `from`) at the positions named by `to`.
std::vector<double> project(const std::vector<double>& tuple,
                            const std::vector<std::string>& from,
                            const std::vector<std::string>& to);

// ---------------------------------------------------------------------------
// Comparison map between completions over G subset of H

struct IotaImage {
  std::string probe;
  std::vector<double> h_point;
  std::vector<double> g_point;  // projection onto G
  std::optional<std::size_t> g_adjoined;  // matching adjoined point of compl_G
  bool g_realized = false;                // image is a carrier point of compl_G
};

struct IotaReport {
  std::vector<IotaImage> images;  // one per adjoined point of compl_H
  bool base_fixed = false;        // iota restricted to M is the identity
  double max_extension_residual = 0.0;  // |g~_G(iota p) - g~_H(p)| over all g, p
  std::vector<std::size_t> outside_image;  // adjoined points of compl_G missed
  std::vector<std::string> unmatched;      // H points with no G counterpart
  bool ok = false;
};

/// Throws InvariantError unless G's names are a subset of H's and both
/// completions share the carrier samples.
IotaReport iota(const CompletedSpace& cs_h, const CompletedSpace& cs_g);

enum class FamilyOrder { Below, Above, Equal, Incomparable };
const char* to_string(FamilyOrder o);

/// compl_G M below compl_H M iff G is a subfamily of H (by name).
FamilyOrder order_compare(const GeneratorFamily& g, const GeneratorFamily& h);

/// G together with every monomial of degree 2..degree in G's generators,
/// named "a*b", "a^2", ... A finite stand-in for the maximal structure.
GeneratorFamily maximal_family(const GeneratorFamily& g, int degree);

// ---------------------------------------------------------------------------
// Completeness transfer

struct CompletenessRow {
  std::string probe;
  CauchyStatus g_status = CauchyStatus::Undecided;
  CauchyStatus h_status = CauchyStatus::Undecided;
  std::optional<double> distance;  // H-limit to nearest carrier image, when H-Cauchy
  bool counterexample = false;     // H-Cauchy with a new limit
};

struct CompletenessReport {
  std::vector<CompletenessRow> rows;
  bool transfer_ok = true;  // every H-Cauchy probe is G-Cauchy
  bool pass = true;         // no counterexample
};

/// If (M, U_G) is complete, every H-Cauchy probe (H containing G) converges
/// to a carrier point. Reports each probe's distance to the carrier.
CompletenessReport completeness_probe_test(const DiffSpace& s, const GeneratorFamily& g,
                                           const GeneratorFamily& h,
                                           const std::vector<Probe>& probes, double tol,
                                           std::size_t tail);

}  // namespace sikorski
