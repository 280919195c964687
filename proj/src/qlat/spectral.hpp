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

#include <functional>
#include <string>

#include "qlat/circuit.hpp"
#include "qlat/statevector.hpp"

namespace qlat {

/// Boolean Fourier coefficients in the +-1 representation, indexed by subset
/// bitmask: coef[S] = E_x[ f(x) (-1)^{<S,x>} ]. Computed by the fast
/// Walsh-Hadamard transform; n is capped at 16.
struct FourierSpectrum {
  int n = 0;
  std::vector<double> coef;

  double parseval_total() const;  // sum of squared coefficients = E[f^2]
};

FourierSpectrum spectrum(const std::function<double(uint64_t)> &f, int n);

double weight_eq(const FourierSpectrum &s, int k);
double weight_le(const FourierSpectrum &s, int k);
double weight_gt(const FourierSpectrum &s, int k);

/// Closed-form degree-1 weight of majority: (4n / 4^n) C(n-1, (n-1)/2)^2.
/// Odd n only.
double majority_weight1_closed(int n);

/// Probability that a uniform m-bit string is balanced: C(m, m/2) / 2^m.
/// Even m only.
double balanced_assignment_prob(int m);

int parity_of(uint64_t x);
int majority_of(uint64_t x, int n);  // odd n

/// Average-case parity bound for depth-d line circuits:
/// 1/2 + 4 sqrt(2) d 2^{-n^{1/d}/6}.
double parity_bound(int n, int d);

/// Contiguous-input variant: 1/2 + 8 d n 2^{-n/(10 d)}.
double contiguous_parity_bound(int n, int d);

/// Majority bound with the explicit 0.045 constant:
/// 1 - 0.045 sqrt(1/n) + 2 sqrt(2) d 2^{-n^{1/d}/6}.
double majority_bound(int n, int d);

struct BoundReport {
  std::string suite;
  std::string name;
  int n = 0;
  int d = 0;
  double epsilon = 0.0;
  double analytic = 0.0;
  double empirical = 0.0;
  bool satisfied = false;  // empirical <= analytic + 1e-9
  uint64_t seed = 0;
};

BoundReport make_report(std::string suite, std::string name, int n, int d,
                        double epsilon, double analytic, double empirical,
                        uint64_t seed);
std::string bound_report_csv_header();
std::string to_csv_row(const BoundReport &r);

enum class WhichBound { parity, contiguous_parity, majority };

/// Runs avg_success of the circuit (output measured on `output_qubit`)
/// against the named bound.
BoundReport bound_experiment(const Circuit &c, int output_qubit,
                             WhichBound which, const RunOptions &opt = {},
                             uint64_t seed = 0);

/// E_x of the total-variation distance between the measurement distributions
/// of two circuits on the given output qubits, reported against 8 d epsilon.
BoundReport tv_gap(const Circuit &c, const Circuit &approx,
                   const std::vector<int> &outputs, double epsilon,
                   const RunOptions &opt = {}, uint64_t seed = 0);

struct PhaseGapResult {
  std::vector<cplx> phases;  // diagonal D, one entry per basis state
  double gap = 0.0;          // normalized ||U - V D||_2^2
};

/// D absorbs the phases of diag(V^dag U) (zero entries get phase 1); the gap
/// is the normalized squared Schatten 2-norm of U - V D. Inputs must be
/// unitary, same dimension, at most 2^10.
PhaseGapResult unitary_phase_gap(const std::vector<std::vector<cplx>> &u,
                                 const std::vector<std::vector<cplx>> &v);

struct NekomataReport {
  double product_quantity = 0.0;     // E_x[ Tr(Pi_x rho) Tr(Pi_xbar rho) ]
  double implied_lower_bound = 0.0;  // (1/4 - product_quantity) / 2
};

/// The agreement product over the input register I: Pi_x projects I onto x.
NekomataReport nekomata_distance(const Circuit &c, const RunOptions &opt = {});

}  // namespace qlat
