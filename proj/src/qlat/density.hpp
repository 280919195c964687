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

#include <vector>

#include "qlat/statevector.hpp"

namespace qlat {

/// Reduced density operator on an ordered subset of qubits, row-major dense.
struct ReducedDensity {
  std::vector<int> kept;
  std::vector<cplx> matrix;  // dim x dim, dim = 2^|kept|
  int dim = 0;

  cplx at(int r, int c) const { return matrix[static_cast<size_t>(r) * dim + c]; }
  cplx &at(int r, int c) { return matrix[static_cast<size_t>(r) * dim + c]; }
  double trace_real() const;
  double hermiticity_defect() const;
};

/// Traces out everything but `keep` (ordered; bit i of the reduced index is
/// keep[i]). 2^|keep| is capped at 1024.
ReducedDensity partial_trace(const StateVector &s, const std::vector<int> &keep);

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi sweeps with threshold
/// skipping; off-diagonal tolerance 1e-12, dimension cap 1024. Ascending.
std::vector<double> hermitian_eigenvalues(std::vector<cplx> a, int dim);

/// Unnormalized trace norm of (a - b): sum of |eigenvalues|, via the Jacobi
/// eigensolver. For pure states this equals 2 sqrt(1 - |<a|b>|^2).
double trace_distance(const ReducedDensity &a, const ReducedDensity &b);

/// 2 sqrt(1 - |<a|b>|^2): the trace distance of two pure states.
double pure_trace_distance(const StateVector &a, const StateVector &b);

/// Smallest eigenvalue (PSD check helper).
double min_eigenvalue(const ReducedDensity &r);

/// Total variation distance of two distributions over the same universe.
/// Both must be normalized to 1 within 1e-9.
double tv_distance(const std::vector<double> &p, const std::vector<double> &q);

}  // namespace qlat
