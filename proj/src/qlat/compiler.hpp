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

#include "qlat/circuit.hpp"

namespace qlat {

/// CNOT between two cells of one lattice column, realized as a single
/// column-contiguous generalized Toffoli. Every cell strictly between the
/// rows must be in |1> when the fragment runs. Two layers: H CZ, then H.
std::vector<Layer> long_range_cnot_gadget(const Layout &lattice, int col,
                                          int from_row, int to_row);

/// The 7-CZ-layer pack simulating one all-to-all layer on the (n+1) x n
/// lattice: 3 swap-out layers (each swap is 3 column-corridor CNOTs spread
/// over the 3 layers), 1 in-row execution layer with the CZ stretched over
/// in-row |1> bystanders, 3 swap-back layers. Gates are assigned to rows
/// 1, 2, ... by ascending leftmost support column. Singles-only layers
/// contribute 0 CZ layers.
std::vector<Layer> embed_layer_2d(const Layer &layer, int n);

/// Theorem-style embedding: a depth-d all-to-all circuit on n qubits becomes
/// a depth-7d circuit on lattice(n+1, n), inputs in row 0 and all n*n
/// ancilla in |1>, with the ancilla restored exactly after every pack.
Circuit embed_circuit_2d(const Circuit &c);

}  // namespace qlat
