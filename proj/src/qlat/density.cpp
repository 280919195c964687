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

#include "qlat/density.hpp"

#include <algorithm>
#include <cmath>

namespace qlat {

double ReducedDensity::trace_real() const {
  double t = 0.0;
  for (int i = 0; i < dim; ++i) t += at(i, i).real();
  return t;
}

double ReducedDensity::hermiticity_defect() const {
  double worst = 0.0;
  for (int r = 0; r < dim; ++r)
    for (int c = r; c < dim; ++c)
      worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
  return worst;
}

ReducedDensity partial_trace(const StateVector &s, const std::vector<int> &keep) {
  if (keep.size() > 10)
    throw Error("partial_trace: keep set larger than 10 qubits");
  for (int q : keep)
    if (q < 0 || q >= s.num_qubits)
      throw Error("partial_trace: qubit out of range");

  std::vector<int> rest;
  uint64_t keep_mask = 0;
  for (int q : keep) keep_mask |= uint64_t{1} << q;
  for (int q = 0; q < s.num_qubits; ++q)
    if (!(keep_mask & (uint64_t{1} << q))) rest.push_back(q);

  ReducedDensity rd;
  rd.kept = keep;
  rd.dim = 1 << keep.size();
  rd.matrix.assign(static_cast<size_t>(rd.dim) * rd.dim, 0.0);

  const uint64_t rest_count = uint64_t{1} << rest.size();
  std::vector<cplx> column(rd.dim);
  for (uint64_t r = 0; r < rest_count; ++r) {
    uint64_t base = 0;
    for (size_t b = 0; b < rest.size(); ++b)
      if (r & (uint64_t{1} << b)) base |= uint64_t{1} << rest[b];
    for (int k = 0; k < rd.dim; ++k) {
      uint64_t idx = base;
      for (size_t b = 0; b < keep.size(); ++b)
        if (k & (1 << b)) idx |= uint64_t{1} << keep[b];
      column[k] = s.amps[idx];
    }
    for (int i = 0; i < rd.dim; ++i) {
      if (column[i] == cplx(0.0)) continue;
      for (int j = 0; j < rd.dim; ++j)
        rd.at(i, j) += column[i] * std::conj(column[j]);
    }
  }
  return rd;
}

std::vector<double> hermitian_eigenvalues(std::vector<cplx> a, int dim) {
  if (dim > 1024) throw Error("eigensolver: dimension cap is 1024");
  if (static_cast<size_t>(dim) * dim != a.size())
    throw Error("eigensolver: bad matrix size");
  auto at = [&](int r, int c) -> cplx & {
    return a[static_cast<size_t>(r) * dim + c];
  };

  constexpr double kTol = 1e-12;
  constexpr int kMaxSweeps = 60;
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < dim; ++p)
      for (int q = p + 1; q < dim; ++q) off = std::max(off, std::abs(at(p, q)));
    if (off <= kTol) {
      converged = true;
      break;
    }
    // Threshold for this sweep: rotating away only the significant pivots
    // keeps late sweeps cheap.
    const double thresh = std::max(kTol, off * 1e-4);
    for (int p = 0; p < dim; ++p) {
      for (int q = p + 1; q < dim; ++q) {
        const cplx apq = at(p, q);
        const double mag = std::abs(apq);
        if (mag < thresh) continue;
        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        // Unitary 2x2 rotation [c, -conj(s); s, c] zeroing the pivot, with
        // the phase of the pivot folded into s.
        const double theta = 0.5 * std::atan2(2.0 * mag, app - aqq);
        const double c = std::cos(theta);
        const cplx phase = apq / mag;
        const cplx s = std::sin(theta) * std::conj(phase);
        // Rows p and q.
        for (int k = 0; k < dim; ++k) {
          const cplx akp = at(p, k), akq = at(q, k);
          at(p, k) = c * akp + std::conj(s) * akq;
          at(q, k) = -s * akp + c * akq;
        }
        // Columns p and q.
        for (int k = 0; k < dim; ++k) {
          const cplx akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp + s * akq;
          at(k, q) = -std::conj(s) * akp + c * akq;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (int p = 0; p < dim; ++p)
      for (int q = p + 1; q < dim; ++q) off = std::max(off, std::abs(at(p, q)));
    if (off > kTol) throw Error("eigensolver: Jacobi sweeps did not converge");
  }
  std::vector<double> eig(dim);
  for (int i = 0; i < dim; ++i) eig[i] = at(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

double trace_distance(const ReducedDensity &a, const ReducedDensity &b) {
  if (a.kept != b.kept || a.dim != b.dim)
    throw Error("trace_distance: kept sets differ");
  std::vector<cplx> diff(a.matrix.size());
  for (size_t i = 0; i < diff.size(); ++i) diff[i] = a.matrix[i] - b.matrix[i];
  double td = 0.0;
  for (double ev : hermitian_eigenvalues(std::move(diff), a.dim))
    td += std::abs(ev);
  return td;
}

double pure_trace_distance(const StateVector &a, const StateVector &b) {
  const double f = fidelity(a, b);
  return 2.0 * std::sqrt(std::max(0.0, 1.0 - f));
}

double min_eigenvalue(const ReducedDensity &r) {
  std::vector<double> eig = hermitian_eigenvalues(r.matrix, r.dim);
  return eig.front();
}

double tv_distance(const std::vector<double> &p, const std::vector<double> &q) {
  if (p.size() != q.size()) throw Error("tv_distance: universes differ");
  double sp = 0.0, sq = 0.0;
  for (double v : p) sp += v;
  for (double v : q) sq += v;
  if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9)
    throw Error("tv_distance: distributions not normalized");
  double acc = 0.0;
  for (size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
  return 0.5 * acc;
}

}  // namespace qlat
