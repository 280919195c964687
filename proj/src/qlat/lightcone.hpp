// Copyright 2026 The qlat authors
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
#include <utility>

#include "qlat/circuit.hpp"
#include "qlat/statevector.hpp"

namespace qlat {

enum class ConeDirection { forward, backward };

struct LightCone {
  int origin = 0;
  ConeDirection direction = ConeDirection::forward;
  std::vector<int> members;  // sorted; always contains origin
};

/// Gate-support reachability from `qubit`, processed through layers
/// [0, upto_layer); upto_layer = -1 means the whole circuit. On a line the
/// members always form a contiguous interval.
LightCone forward_lightcone(const Circuit &c, int qubit, int upto_layer = -1);
LightCone backward_lightcone(const Circuit &c, int qubit);

/// Forward cones of a whole subset at once, same truncation rule.
std::vector<std::vector<int>> forward_cones(const Circuit &c,
                                            const std::vector<int> &subset,
                                            int upto_layer = -1);

/// Number of cones from `subset` (grown through layers before `layer_index`)
/// that intersect the gate's support.
int gate_weight(const Circuit &c, int layer_index, const MultiCZGate &gate,
                const std::vector<int> &subset);

struct SeparabilityCertificate {
  std::vector<int> subset;
  std::vector<LightCone> cones;
  bool separable = false;
  std::pair<int, int> witness{-1, -1};  // qubits with intersecting cones
};

/// Separable iff the forward cones of the subset are pairwise disjoint.
SeparabilityCertificate check_separable(const Circuit &c,
                                        const std::vector<int> &subset);

/// Independent set of size >= ceil(|V|/2) in an acyclic graph of maximum
/// degree 2: alternate along each path from its lowest-id endpoint.
/// Throws on degree > 2 or on a cycle.
std::vector<int> independent_set_deg2(int num_vertices,
                                      const std::vector<std::pair<int, int>> &edges);

/// One round of the 1D structure selection: partitions the subset by how its
/// cones meet the layer's gates (covered by a gate / boundary overlaps /
/// untouched), keeps the lowest-id covered qubit per covering gate, an
/// alternating independent set of the boundary class, and every untouched
/// qubit. Preconditions (c separable on `subset`, every gate meeting at most
/// `s` cones, s >= 3) are enforced. The result leaves with_layer(c, layer)
/// separable and keeps at least |subset| / s qubits.
std::vector<int> structure_select_1d(const Circuit &c,
                                     const std::vector<int> &subset,
                                     const Layer &layer, int s);

/// Width-2 lattice variant: row gates are handled by the 1D selection rule
/// per row, column gates by two-coloring the cone intersection graph. Keeps
/// at least |subset| / (8 s^2) qubits.
std::vector<int> width2_structure_select(const Circuit &c,
                                         const std::vector<int> &subset,
                                         const Layer &layer, int s);

/// Odd-position elements of the sorted subset; their backward cones are
/// verified pairwise disjoint (an overlap signals an upstream separability
/// bug and throws).
std::vector<int> backward_disjoint_select(const Circuit &c,
                                          const std::vector<int> &subset);

/// Returns the circuit with one gate replaced by the identity.
Circuit erase_gate(const Circuit &c, int layer_index, const MultiCZGate &gate);

/// E_x || rho_a^x - rho_b^x ||_1 over uniform inputs (both circuits share the
/// input declaration). Exact enumeration up to 12 inputs, seeded sampling
/// beyond.
double empirical_state_error(const Circuit &a, const Circuit &b,
                             const RunOptions &opt = {}, int sample_cap = 256,
                             uint64_t seed = 0);

struct ErasedGateRecord {
  int layer = 0;
  std::vector<int> support;
  int weight = 0;      // cones met
  int covered = 0;     // cones fully contained
  double bound = 0.0;  // 4 * 2^-covered
};

struct RestrictionOutcome {
  Circuit approx;
  std::vector<int> surviving;
  std::vector<ErasedGateRecord> erased;
  double epsilon = 0.0;
  int s = 0;
  int depth = 0;
  double analytic_error_bound = 0.0;
  std::optional<double> empirical_error;
  uint64_t seed = 0;
};

/// Per-layer erase-then-select pipeline on a line circuit:
/// s = max(3, ceil(log2(n/epsilon))); every gate meeting >= s cones of the
/// current surviving set is erased, then the structure selection runs on the
/// remaining layer. The outcome is re-certified separable and carries the
/// 16 d epsilon budget.
RestrictionOutcome restriction_pipeline_1d(const Circuit &c, double epsilon,
                                           bool measure_empirical = false,
                                           const RunOptions &opt = {},
                                           uint64_t seed = 0);

struct ContiguousCertificate {
  std::vector<std::pair<int, int>> intervals;  // I_t per layer, inclusive
  double analytic_error = 0.0;        // sum of per-gate 4 * 2^{-cut/2}
  double theorem_error = 0.0;         // 4 d n 2^{-s/2}
  int max_backward_cone_inputs = 0;   // max |backward cone ∩ I_d| per qubit
  bool mixedness_checked = false;     // condition: E_x reduced state maximally mixed
  double mixedness_deviation = 0.0;
};

/// Contiguous-input restriction: erases every gate whose overlap with the
/// current interval reaches s, trims the interval where a surviving gate
/// straddles its boundary (at most two per layer), and tracks the error
/// budget. With check_mixedness the per-layer maximally-mixed condition is
/// verified by simulation (small circuits only).
RestrictionOutcome contiguous_restriction(const Circuit &c, int s,
                                          ContiguousCertificate *cert = nullptr,
                                          bool check_mixedness = false,
                                          const RunOptions &opt = {});

}  // namespace qlat
