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

#include "qlat/families.hpp"

#include <algorithm>
#include <cmath>

namespace qlat {

Mat2 random_unitary2(std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  // Gram-Schmidt on a random complex 2x2.
  cplx a(g(rng), g(rng)), b(g(rng), g(rng));
  double na = std::sqrt(std::norm(a) + std::norm(b));
  a /= na;
  b /= na;
  cplx c(g(rng), g(rng)), d(g(rng), g(rng));
  const cplx ov = std::conj(a) * c + std::conj(b) * d;
  c -= ov * a;
  d -= ov * b;
  const double nc = std::sqrt(std::norm(c) + std::norm(d));
  Mat2 u;
  u.m[0] = a;
  u.m[1] = c / nc;
  u.m[2] = b;
  u.m[3] = d / nc;
  return u;
}

StateVector random_state(int num_qubits, std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  StateVector s;
  s.num_qubits = num_qubits;
  s.amps.resize(uint64_t{1} << num_qubits);
  double norm2 = 0.0;
  for (cplx &a : s.amps) {
    a = cplx(g(rng), g(rng));
    norm2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (cplx &a : s.amps) a *= inv;
  return s;
}

namespace {

void add_random_singles(CircuitBuilder &b, int num_qubits,
                        std::mt19937_64 &rng, double prob) {
  std::uniform_real_distribution<double> u;
  for (int q = 0; q < num_qubits; ++q)
    if (u(rng) < prob) b.single(q, random_unitary2(rng));
}

}  // namespace

Circuit random_line_circuit(int num_qubits, int depth, int max_support,
                            std::mt19937_64 &rng) {
  CircuitBuilder b(Layout::line(num_qubits));
  for (int q = 0; q < num_qubits; ++q) b.input(q);
  std::uniform_int_distribution<int> size_dist(2, std::max(2, max_support));
  std::uniform_real_distribution<double> u;
  for (int t = 0; t < depth; ++t) {
    add_random_singles(b, num_qubits, rng, 0.6);
    int cursor = 0;
    bool placed = false;
    while (cursor + 1 < num_qubits) {
      if (u(rng) < 0.55) {
        const int size = std::min(size_dist(rng), num_qubits - cursor);
        if (size >= 2) {
          std::vector<int> support;
          for (int q = cursor; q < cursor + size; ++q) support.push_back(q);
          b.cz(std::move(support));
          placed = true;
          cursor += size;
          continue;
        }
      }
      ++cursor;
    }
    if (!placed) b.cz({0, 1});  // keep the layer a genuine CZ layer
    b.barrier();
  }
  add_random_singles(b, num_qubits, rng, 0.6);
  return b.finish();
}

Circuit random_all_to_all_circuit(int num_qubits, int depth,
                                  std::mt19937_64 &rng) {
  CircuitBuilder b(Layout::all_to_all(num_qubits));
  for (int q = 0; q < num_qubits; ++q) b.input(q);
  std::uniform_real_distribution<double> u;
  for (int t = 0; t < depth; ++t) {
    add_random_singles(b, num_qubits, rng, 0.7);
    std::vector<int> perm(num_qubits);
    for (int q = 0; q < num_qubits; ++q) perm[q] = q;
    std::shuffle(perm.begin(), perm.end(), rng);
    size_t pos = 0;
    bool placed = false;
    while (pos + 1 < perm.size()) {
      const int size = 2 + static_cast<int>(u(rng) * 2.0);
      if (pos + size > perm.size()) break;
      if (u(rng) < 0.8) {
        std::vector<int> support(perm.begin() + pos, perm.begin() + pos + size);
        std::sort(support.begin(), support.end());
        b.cz(std::move(support));
        placed = true;
      }
      pos += size;
    }
    if (!placed) b.cz({perm[0], perm[1]});
    b.barrier();
  }
  add_random_singles(b, num_qubits, rng, 0.7);
  return b.finish();
}

ErasureInstance make_erasure_instance(const std::vector<double> &deltas,
                                      bool rotate_inputs, double rotate_angle) {
  const int k = static_cast<int>(deltas.size());
  if (k < 1) throw Error("make_erasure_instance: need at least one triple");
  const int n = 3 * k;
  CircuitBuilder b(Layout::line(n));
  for (int j = 0; j < k; ++j) b.input(3 * j);
  for (int j = 0; j < k; ++j) {
    b.set_ancilla(3 * j + 1, AncillaState::zero);
    b.set_ancilla(3 * j + 2, AncillaState::zero);
  }

  for (int j = 0; j < k; ++j) {
    const int a = 3 * j, mid = 3 * j + 1, right = 3 * j + 2;
    if (rotate_inputs) b.single(a, Mat2::ry(rotate_angle));
    b.single(mid, Mat2::ry(2.0 * std::asin(std::sqrt(deltas[j]))));
    b.cnot(mid, right);
    b.barrier();
    // Flip `right` when the input is 1 and `mid` is 0: the covered
    // all-ones amplitude stays sqrt(delta) on the input's 1-branch.
    b.single(mid, Mat2::x());
    b.toffoli({a, mid}, right);
    b.single(mid, Mat2::x());
    b.barrier();
  }

  ErasureInstance inst;
  inst.without_cz = b.finish();
  MultiCZGate cover;
  for (int q = 0; q < n; ++q) cover.support.push_back(q);
  inst.covering = cover;
  Layer last;
  last.czs.push_back(cover);
  inst.with_cz = with_layer(inst.without_cz, last);
  for (int j = 0; j < k; ++j) inst.separable_inputs.push_back(3 * j);
  inst.covered_cones = k;
  return inst;
}

Circuit cat_x_circuit(int n) {
  if (n < 2) throw Error("cat_x_circuit: n must be >= 2");
  CircuitBuilder b(Layout::all_to_all(n));
  for (int q = 0; q < n; ++q) b.input(q);
  std::vector<std::pair<int, int>> fan;
  for (int q = 1; q < n; ++q) fan.push_back({0, q});
  b.cnot_group(fan);
  b.barrier();
  b.single(0, Mat2::h());
  b.cnot_group(fan);
  return b.finish();
}

}  // namespace qlat
