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
#include <functional>
#include <vector>

#include "qlat/circuit.hpp"

namespace qlat {

/// Dense complex amplitude vector. Qubit q is bit q of the index
/// (little-endian: index = sum x_q * 2^q).
struct StateVector {
  int num_qubits = 0;
  std::vector<cplx> amps;

  static StateVector basis(int num_qubits, uint64_t index);
  double norm() const;
  uint64_t size() const { return uint64_t{1} << num_qubits; }
};

cplx inner(const StateVector &a, const StateVector &b);
/// |<a|b>|^2 for pure states. The phase-dependent variant
/// 1 - || |a> - |b> ||^2 lower-bounds this; only the standard form is
/// computed here.
double fidelity(const StateVector &a, const StateVector &b);

struct RunOptions {
  int qubit_cap = 22;
  bool check_norms = false;  // asserts ||amps|| = 1 +- 1e-9 after every layer
};

void apply_single(StateVector &s, int qubit, const Mat2 &u);
void apply_cz(StateVector &s, const std::vector<int> &support);
void apply_layer(StateVector &s, const Layer &l);

/// Applies the circuit to |x> (x over c.inputs, in order) tensored with the
/// declared ancilla bits; undeclared qubits start in |0>.
StateVector run(const Circuit &c, const std::vector<int> &input_bits,
                const RunOptions &opt = {});

/// Applies the circuit to the computational basis state `basis` over all
/// qubits, ignoring the input/ancilla declarations.
StateVector run_basis(const Circuit &c, uint64_t basis,
                      const RunOptions &opt = {});

/// Applies the circuit to an arbitrary initial state over all qubits.
StateVector run_state(const Circuit &c, StateVector initial,
                      const RunOptions &opt = {});

/// Probability that measuring `output_qubit` of run(c, x) yields 1.
double f_eval(const Circuit &c, const std::vector<int> &input_bits,
              int output_qubit, const RunOptions &opt = {});

/// Measurement distribution over an ordered subset of qubits.
std::vector<double> measure_distribution(const StateVector &s,
                                         const std::vector<int> &qubits);

struct SuccessProfile {
  std::vector<double> per_input;  // empty in sampled mode
  double average = 0.0;
  bool exact = true;
  int samples = 0;
  uint64_t seed = 0;
};

struct SamplingOptions {
  bool allow_sampling = false;
  int samples = 4096;
  uint64_t seed = 0;
};

/// Average one-shot agreement with a Boolean target:
/// E_x[ f(x) f_C(x) + (1-f(x)) (1-f_C(x)) ], the probability that the
/// measured output bit equals f(x) on a uniform input. Exact enumeration up
/// to 16 inputs; beyond that seeded Monte-Carlo must be enabled explicitly.
SuccessProfile avg_success(const Circuit &c,
                           const std::function<int(uint64_t)> &target,
                           int output_qubit, const RunOptions &opt = {},
                           const SamplingOptions &sampling = {});

/// Full circuit unitary, column j = circuit applied to basis state j.
/// Dense; limited to 10 qubits.
std::vector<std::vector<cplx>> circuit_unitary(const Circuit &c,
                                               const RunOptions &opt = {});

/// Exact evaluation for staged circuits that are too wide for one dense
/// vector. Qubits are tracked classically until a gate forces them into a
/// register; registers merge on demand and qubits returning to a basis state
/// are peeled off. The cap bounds each merged register, not the circuit.
struct GroupedRunResult {
  bool all_classical = false;
  uint64_t bits = 0;      // valid when all_classical
  cplx phase = 1.0;       // accumulated scalar phase
  int max_active = 0;     // largest register seen, in qubits
};
GroupedRunResult run_grouped(const Circuit &c, uint64_t basis,
                             int active_cap = 22);

}  // namespace qlat
