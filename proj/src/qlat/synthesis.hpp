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

/// Restricted fan-out F_k on a line of 2^k qubits: on input (b, 1^{2^k - 1})
/// the output is |b^{2^k}>. Qubit 0 is the input; the rest are |1> ancilla.
/// Depth is exactly k.
Circuit restricted_fanout(int k);

/// Line circuit with no ancilla preparing (|0^n> + |1^n>)/sqrt(2) from |0^n>.
/// Depth ceil(log2 n); powers of two reproduce the doubling construction
/// exactly, other sizes use the same recursion on uneven halves.
Circuit cat_1d(int n);

/// A parity synthesizer: the circuit maps |x, b> to |x, b + parity(x)> on
/// the declared interface qubits. circuit.inputs lists the data inputs in
/// order followed by the target (inputs.back() == target).
struct ParityCircuit {
  Circuit circuit;
  std::vector<int> data_inputs;
  int target = 0;
  /// Reported depth constant: depth / log2(n) (1.0 floor on log2).
  double depth_constant = 0.0;
};

/// Depth-n line circuit on n+1 qubits with no ancilla synthesizing the
/// parity unitary. The target sits mid-line so the two half-sweeps and
/// their undo phases interleave into exactly n CZ layers.
ParityCircuit parity_line(int n);

/// parity_line reinterpreted on lattice(1, n+1) for use as a recursion base.
ParityCircuit parity_line_lattice(int n);

/// Width-2 lattice circuit of depth 2 ceil(log2(n+1)) + 3 synthesizing the
/// parity unitary on the first row. The target's H-conjugated phase is fanned
/// through the second row (initially all |1>), hit by one layer of column
/// CZs against the inputs, and unfanned; the ancilla row is restored exactly.
ParityCircuit parity_width2(int n);

/// Recursive construction for n = m^k inputs from a base synthesizer on m
/// inputs (lattice layout, interface on its first row): m independent copies
/// per level, one CNOT layer copying the block parities to a fresh row, and
/// the base re-applied with its CZ supports extended over intermediate |1>
/// qubits. Depth = k * depth(base) + (k - 1). Block accumulators keep their
/// values; the map is exact on computational basis states.
ParityCircuit parity_recursive_2d(int n, const ParityCircuit &base);

struct AmplitudeCalibration {
  double p = 0.0;
  cplx a, b;
  int k = 0;
  double theta = 0.0;  // pi / (4k + 2)
  cplx alpha, beta;    // a * alpha = b * beta = sin(theta)
};

/// Computes the rotation amplitudes for one amplification round:
/// k = ceil(sqrt2 / (4 pi (sqrt(2p) - 1))), alpha = sin(pi/(4k+2)) / a,
/// beta likewise. Requires p > 1/2, |a|,|b| >= sqrt(2p) - 1, and the
/// resulting |alpha|^2 + |beta|^2 <= 1 (else an error: the round is
/// infeasible for the given amplitudes).
AmplitudeCalibration amplitude_calibration(double p, cplx a, cplx b);

/// Builds a state-preparation circuit for
///   amp0 |0^{n+a}> + amp1 |1^n 0^a> + c |1 0^{n-1} 0^a>
/// on all_to_all(n + a), used as the input of build_c2.
Circuit toy_c1(int n, int num_ancilla, double amp0, double amp1);

struct C2Result {
  Circuit circuit;
  int flag_qubit = 0;
  int pair_a = 0, pair_b = 0;  // the two appended rotation qubits
  double sin_theta = 0.0;
};

/// Assembles C2 = CNOT_{0^{n+2}} . CNOT_{1^{n+2}} . (Q C1 x X): two rotation
/// qubits and a flag are appended to c1, and the flag-0 branch carries the
/// balanced superposition of the all-zeros and all-ones components with
/// amplitude sin(theta) each. c1's first n_main qubits are the main register.
/// The simulated c1 output must match cal.a / cal.b within 1e-8.
C2Result build_c2(const Circuit &c1, int n_main, const AmplitudeCalibration &cal);

struct CounterexampleSpec {
  int k = 0;
  double delta = 0.0;
  double predicted_error = 0.0;  // 4 sqrt(delta^k (1 - delta^k))
};

struct CounterexamplePair {
  Circuit with_cz;     // D = CZ over the full ancilla row, after C
  Circuit without_cz;  // C
  CounterexampleSpec spec;
  std::vector<int> ancilla_row;  // support of the erased gate
};

/// Width-2 circuit family on lattice(2, 2k) whose full ancilla-row CZ has
/// weight n = 2k yet cannot be erased cheaply: each column couples its input
/// to the row-2 pair state sqrt(1-d)|00> + (-1)^x sqrt(d)|11>, so removing
/// the final CZ costs exactly 4 sqrt(d^k (1 - d^k)) in trace distance, on
/// every input. Requires 1 <= k <= 6 and 0 < delta < 1.
CounterexamplePair erasure_counterexample(int k, double delta);

}  // namespace qlat
