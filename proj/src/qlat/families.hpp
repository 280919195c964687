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

#include <random>

#include "qlat/circuit.hpp"
#include "qlat/statevector.hpp"

namespace qlat {

/// Haar-ish random single-qubit unitary from a seeded generator.
Mat2 random_unitary2(std::mt19937_64 &rng);

/// Normalized random complex state.
StateVector random_state(int num_qubits, std::mt19937_64 &rng);

/// Random line circuit: every qubit is an input, each CZ layer packs random
/// disjoint contiguous supports of size 2..max_support, dressed with random
/// singles.
Circuit random_line_circuit(int num_qubits, int depth, int max_support,
                            std::mt19937_64 &rng);

/// Random all-to-all circuit with disjoint random supports per layer.
Circuit random_all_to_all_circuit(int num_qubits, int depth,
                                  std::mt19937_64 &rng);

/// A covered-cone erasure instance: k disjoint input triples on a line, each
/// coupling its input into a pair state with all-ones amplitude delta_i, all
/// cones covered by one full-line CZ appended in `with_cz`.
struct ErasureInstance {
  Circuit with_cz;
  Circuit without_cz;
  std::vector<int> separable_inputs;  // the k inputs with disjoint cones
  MultiCZGate covering;               // the erased gate
  int covered_cones = 0;
};

/// deltas.size() = k triples; rotate_inputs additionally puts each input
/// through a small RY so the covered amplitude varies with x.
ErasureInstance make_erasure_instance(const std::vector<double> &deltas,
                                      bool rotate_inputs, double rotate_angle);

/// In-place input-dependent cat preparation: |x> -> (|x> +- |xbar>)/sqrt(2)
/// via the CNOT-fan conjugation of a Hadamard (all-to-all layout).
Circuit cat_x_circuit(int n);

}  // namespace qlat
