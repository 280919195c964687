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

#include "qlat/spectral.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "qlat/density.hpp"

namespace qlat {

double FourierSpectrum::parseval_total() const {
  double acc = 0.0;
  for (double c : coef) acc += c * c;
  return acc;
}

FourierSpectrum spectrum(const std::function<double(uint64_t)> &f, int n) {
  if (n < 1 || n > 16) throw Error("spectrum: n must lie in [1, 16]");
  FourierSpectrum s;
  s.n = n;
  const uint64_t total = uint64_t{1} << n;
  s.coef.resize(total);
  for (uint64_t x = 0; x < total; ++x) s.coef[x] = f(x);
  // In-place Walsh-Hadamard butterfly.
  for (uint64_t len = 1; len < total; len <<= 1) {
    for (uint64_t base = 0; base < total; base += len << 1) {
      for (uint64_t i = base; i < base + len; ++i) {
        const double a = s.coef[i], b = s.coef[i + len];
        s.coef[i] = a + b;
        s.coef[i + len] = a - b;
      }
    }
  }
  const double scale = 1.0 / static_cast<double>(total);
  for (double &c : s.coef) c *= scale;
  return s;
}

double weight_eq(const FourierSpectrum &s, int k) {
  double acc = 0.0;
  for (uint64_t mask = 0; mask < s.coef.size(); ++mask)
    if (std::popcount(mask) == k) acc += s.coef[mask] * s.coef[mask];
  return acc;
}

double weight_le(const FourierSpectrum &s, int k) {
  double acc = 0.0;
  for (uint64_t mask = 0; mask < s.coef.size(); ++mask)
    if (std::popcount(mask) <= k) acc += s.coef[mask] * s.coef[mask];
  return acc;
}

double weight_gt(const FourierSpectrum &s, int k) {
  double acc = 0.0;
  for (uint64_t mask = 0; mask < s.coef.size(); ++mask)
    if (std::popcount(mask) > k) acc += s.coef[mask] * s.coef[mask];
  return acc;
}

namespace {
double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}
}  // namespace

double majority_weight1_closed(int n) {
  if (n < 3 || n % 2 == 0) throw Error("majority_weight1_closed: odd n >= 3 required");
  const double c = binomial(n - 1, (n - 1) / 2);
  return 4.0 * n * c * c / std::pow(4.0, n);
}

double balanced_assignment_prob(int m) {
  if (m < 2 || m % 2 == 1) throw Error("balanced_assignment_prob: even m >= 2 required");
  return binomial(m, m / 2) / std::pow(2.0, m);
}

int parity_of(uint64_t x) { return std::popcount(x) & 1; }

int majority_of(uint64_t x, int n) {
  const int ones = std::popcount(x & ((uint64_t{1} << n) - 1));
  return 2 * ones >= n + 1 ? 1 : 0;  // odd n: strict majority of ones
}

double parity_bound(int n, int d) {
  return 0.5 + 4.0 * std::sqrt(2.0) * d *
                   std::pow(2.0, -std::pow(n, 1.0 / d) / 6.0);
}

double contiguous_parity_bound(int n, int d) {
  return 0.5 + 8.0 * d * n * std::pow(2.0, -static_cast<double>(n) / (10.0 * d));
}

double majority_bound(int n, int d) {
  return 1.0 - 0.045 * std::sqrt(1.0 / n) +
         2.0 * std::sqrt(2.0) * d * std::pow(2.0, -std::pow(n, 1.0 / d) / 6.0);
}

BoundReport make_report(std::string suite, std::string name, int n, int d,
                        double epsilon, double analytic, double empirical,
                        uint64_t seed) {
  BoundReport r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  r.n = n;
  r.d = d;
  r.epsilon = epsilon;
  r.analytic = analytic;
  r.empirical = empirical;
  r.satisfied = empirical <= analytic + 1e-9;
  r.seed = seed;
  return r;
}

std::string bound_report_csv_header() {
  return "suite,name,n,d,epsilon,analytic,empirical,satisfied,seed";
}

std::string to_csv_row(const BoundReport &r) {
  std::ostringstream os;
  os.precision(12);
  os << r.suite << "," << r.name << "," << r.n << "," << r.d << "," << r.epsilon
     << "," << r.analytic << "," << r.empirical << ","
     << (r.satisfied ? "true" : "false") << "," << r.seed;
  return os.str();
}

BoundReport bound_experiment(const Circuit &c, int output_qubit,
                             WhichBound which, const RunOptions &opt,
                             uint64_t seed) {
  const int n = static_cast<int>(c.inputs.size());
  const int d = c.depth();
  std::function<int(uint64_t)> target;
  std::string suite;
  double analytic = 0.0;
  switch (which) {
    case WhichBound::parity:
      target = [](uint64_t x) { return parity_of(x); };
      suite = "parity-bound";
      analytic = parity_bound(n, std::max(1, d));
      break;
    case WhichBound::contiguous_parity:
      target = [](uint64_t x) { return parity_of(x); };
      suite = "contiguous-parity-bound";
      analytic = contiguous_parity_bound(n, std::max(1, d));
      break;
    case WhichBound::majority:
      target = [n](uint64_t x) { return majority_of(x, n); };
      suite = "majority-bound";
      analytic = majority_bound(n, std::max(1, d));
      break;
  }
  SuccessProfile prof = avg_success(c, target, output_qubit, opt);
  return make_report(suite, "avg_success", n, d, 0.0, analytic, prof.average, seed);
}

BoundReport tv_gap(const Circuit &c, const Circuit &approx,
                   const std::vector<int> &outputs, double epsilon,
                   const RunOptions &opt, uint64_t seed) {
  if (c.inputs != approx.inputs)
    throw Error("tv_gap: circuits disagree on inputs");
  for (int q : outputs)
    if (!c.layout.contains(q)) throw Error("tv_gap: output qubit out of range");
  const size_t n = c.inputs.size();
  if (n > 16) throw Error("tv_gap: too many inputs for exact enumeration");
  const uint64_t total = uint64_t{1} << n;
  double acc = 0.0;
  for (uint64_t x = 0; x < total; ++x) {
    std::vector<int> bits(n);
    for (size_t i = 0; i < n; ++i) bits[i] = (x >> i) & 1;
    acc += tv_distance(measure_distribution(run(c, bits, opt), outputs),
                       measure_distribution(run(approx, bits, opt), outputs));
  }
  const int d = c.depth();
  return make_report("tv-gap", "avg_tv", static_cast<int>(n), d, epsilon,
                     8.0 * d * epsilon, acc / static_cast<double>(total), seed);
}

PhaseGapResult unitary_phase_gap(const std::vector<std::vector<cplx>> &u,
                                 const std::vector<std::vector<cplx>> &v) {
  const size_t dim = u.size();
  if (dim == 0 || dim > 1024 || v.size() != dim)
    throw Error("unitary_phase_gap: bad dimensions");
  auto check_unitary = [&](const std::vector<std::vector<cplx>> &m,
                           const char *name) {
    for (size_t i = 0; i < dim; ++i) {
      if (m[i].size() != dim) throw Error("unitary_phase_gap: ragged matrix");
      cplx diag = 0.0;
      for (size_t k = 0; k < dim; ++k) diag += std::conj(m[k][i]) * m[k][i];
      if (std::abs(diag - 1.0) > 1e-8)
        throw Error(std::string("unitary_phase_gap: ") + name + " is not unitary");
    }
  };
  check_unitary(u, "U");
  check_unitary(v, "V");

  PhaseGapResult res;
  res.phases.resize(dim);
  // W = V^dag U; D_xx = phase of W_xx.
  std::vector<cplx> w_diag(dim, 0.0);
  for (size_t x = 0; x < dim; ++x) {
    cplx acc = 0.0;
    for (size_t k = 0; k < dim; ++k) acc += std::conj(v[k][x]) * u[k][x];
    w_diag[x] = acc;
    res.phases[x] = std::abs(acc) > 1e-15 ? acc / std::abs(acc) : cplx(1.0);
  }
  double fro2 = 0.0;  // ||U - V D||_F^2
  for (size_t r = 0; r < dim; ++r)
    for (size_t x = 0; x < dim; ++x)
      fro2 += std::norm(u[r][x] - v[r][x] * res.phases[x]);
  res.gap = fro2 / static_cast<double>(dim);
  return res;
}

NekomataReport nekomata_distance(const Circuit &c, const RunOptions &opt) {
  const size_t n = c.inputs.size();
  if (n > 16) throw Error("nekomata_distance: too many inputs");
  const uint64_t total = uint64_t{1} << n;
  double acc = 0.0;
  for (uint64_t x = 0; x < total; ++x) {
    std::vector<int> bits(n);
    for (size_t i = 0; i < n; ++i) bits[i] = (x >> i) & 1;
    StateVector s = run(c, bits, opt);
    // P(I reads exactly y) for y = x and y = complement of x.
    double px = 0.0, pxbar = 0.0;
    for (uint64_t idx = 0; idx < s.size(); ++idx) {
      uint64_t y = 0;
      for (size_t i = 0; i < n; ++i)
        if (idx & (uint64_t{1} << c.inputs[i])) y |= uint64_t{1} << i;
      const double w = std::norm(s.amps[idx]);
      if (y == x) px += w;
      if (y == (~x & (total - 1))) pxbar += w;
    }
    acc += px * pxbar;
  }
  NekomataReport rep;
  rep.product_quantity = acc / static_cast<double>(total);
  rep.implied_lower_bound = (0.25 - rep.product_quantity) / 2.0;
  return rep;
}

}  // namespace qlat
