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

#include <doctest.h>

#include <random>

#include "qlat/compiler.hpp"
#include "qlat/density.hpp"
#include "qlat/families.hpp"
#include "qlat/statevector.hpp"
#include "qlat/synthesis.hpp"

using namespace qlat;

TEST_SUITE_BEGIN("compiler");

namespace {

/// Embeds an n-qubit register state into row 0 of the lattice with every
/// ancilla in |1>.
StateVector lift_to_lattice(const StateVector &small, int n) {
  const int total = (n + 1) * n;
  StateVector s;
  s.num_qubits = total;
  s.amps.assign(uint64_t{1} << total, 0.0);
  uint64_t ones = 0;
  for (int q = n; q < total; ++q) ones |= uint64_t{1} << q;
  for (uint64_t i = 0; i < small.size(); ++i) s.amps[i | ones] = small.amps[i];
  return s;
}

/// |<reference x 1...1 | compiled>|^2.
double lattice_fidelity(const StateVector &reference_small,
                        const StateVector &compiled, int n) {
  uint64_t ones = 0;
  for (int q = n; q < (n + 1) * n; ++q) ones |= uint64_t{1} << q;
  cplx acc = 0.0;
  for (uint64_t i = 0; i < reference_small.size(); ++i)
    acc += std::conj(reference_small.amps[i]) * compiled.amps[i | ones];
  return std::norm(acc);
}

int count_czs(const Circuit &c) {
  int count = 0;
  for (const Layer &l : c.layers) count += static_cast<int>(l.czs.size());
  return count;
}

}  // namespace

TEST_CASE("long range cnot gadget acts as a cnot through a |1> corridor") {
  Layout lat = Layout::lattice(4, 1);
  Circuit c;
  c.layout = lat;
  for (const Layer &l : long_range_cnot_gadget(lat, 0, 0, 3)) c.layers.push_back(l);
  StateVector s = run_basis(c, 0b0111);
  CHECK(std::abs(s.amps[0b1111] - 1.0) < 1e-12);
  StateVector s2 = run_basis(c, 0b0110);
  CHECK(std::abs(s2.amps[0b0110] - 1.0) < 1e-12);
}

TEST_CASE("adjacent rows reduce to a plain cnot") {
  Layout lat = Layout::lattice(2, 1);
  Circuit c;
  c.layout = lat;
  for (const Layer &l : long_range_cnot_gadget(lat, 0, 0, 1)) c.layers.push_back(l);
  for (uint64_t x = 0; x < 4; ++x) {
    StateVector s = run_basis(c, x);
    const uint64_t want = (x & 1) ? x ^ 2 : x;
    CHECK(std::abs(s.amps[want] - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(long_range_cnot_gadget(lat, 0, 1, 1), Error);
}

TEST_CASE("one embedded layer reproduces a single cz") {
  Layer l;
  l.czs.push_back({{0, 1}});
  std::vector<Layer> pack = embed_layer_2d(l, 2);
  Circuit frag;
  frag.layout = Layout::lattice(3, 2);
  frag.layers = pack;
  int depth = 0;
  for (const Layer &pl : pack) depth += !pl.czs.empty();
  CHECK(depth == 7);
  for (uint64_t x = 0; x < 4; ++x) {
    StateVector in = StateVector::basis(2, x);
    apply_cz(in, {0, 1});
    StateVector compiled = run_state(frag, lift_to_lattice(StateVector::basis(2, x), 2));
    CHECK(lattice_fidelity(in, compiled, 2) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("singles-only layers embed with zero cz layers") {
  Layer l;
  l.singles.push_back({1, Mat2::h()});
  std::vector<Layer> pack = embed_layer_2d(l, 3);
  for (const Layer &pl : pack) CHECK(pl.czs.empty());
}

TEST_CASE("two disjoint gates share one 7-layer pack") {
  Layer l;
  l.czs.push_back({{0, 1}});
  l.czs.push_back({{2, 3}});
  std::vector<Layer> pack = embed_layer_2d(l, 4);
  int depth = 0;
  for (const Layer &pl : pack) depth += !pl.czs.empty();
  CHECK(depth == 7);
}

TEST_CASE("embedding rejects non all-to-all input") {
  Circuit c;
  c.layout = Layout::line(3);
  CHECK_THROWS_WITH_AS(embed_circuit_2d(c), doctest::Contains("all_to_all"), Error);
}

TEST_CASE("depth-0 circuits compile to depth 0") {
  Circuit c;
  c.layout = Layout::all_to_all(3);
  Layer l;
  l.singles.push_back({0, Mat2::h()});
  c.layers.push_back(l);
  Circuit v = embed_circuit_2d(c);
  CHECK(v.depth() == 0);
  CHECK(validate(v).ok());
}

TEST_CASE("random depth-2 circuit on n=3 compiles exactly") {
  std::mt19937_64 rng(101);
  Circuit c = random_all_to_all_circuit(3, 2, rng);
  Circuit v = embed_circuit_2d(c);
  REQUIRE(validate(v).ok());
  CHECK(v.depth() == 7 * c.depth());
  for (int trial = 0; trial < 10; ++trial) {
    StateVector phi = random_state(3, rng);
    StateVector want = run_state(c, phi);
    StateVector got = run_state(v, lift_to_lattice(phi, 3));
    CHECK(lattice_fidelity(want, got, 3) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("ancilla are restored exactly on basis inputs") {
  std::mt19937_64 rng(103);
  Circuit c = random_all_to_all_circuit(3, 2, rng);
  Circuit v = embed_circuit_2d(c);
  for (uint64_t x = 0; x < 8; ++x) {
    StateVector got = run_state(v, lift_to_lattice(StateVector::basis(3, x), 3));
    uint64_t ones = 0;
    for (int q = 3; q < v.qubit_count(); ++q) ones |= uint64_t{1} << q;
    double p = 0.0;
    for (uint64_t i = 0; i < got.size(); ++i)
      if ((i & ones) == ones) p += std::norm(got.amps[i]);
    CHECK(p == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("parity_line re-expressed all-to-all survives compilation") {
  ParityCircuit p = parity_line(3);
  Circuit flat = as_all_to_all(p.circuit);
  Circuit v = embed_circuit_2d(flat);
  REQUIRE(validate(v).ok());
  for (uint64_t xb = 0; xb < 16; ++xb) {
    StateVector want = run_basis(flat, xb);
    StateVector got = run_state(v, lift_to_lattice(StateVector::basis(4, xb), 4));
    CHECK(lattice_fidelity(want, got, 4) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("gate count blow-up stays within the quadratic budget") {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 5; ++trial) {
    Circuit c = random_all_to_all_circuit(4, 2, rng);
    Circuit v = embed_circuit_2d(c);
    CHECK(count_czs(v) <= 7 * 4 * count_czs(c));
  }
}

TEST_CASE("compiled circuits pass lattice validation") {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 5; ++trial) {
    Circuit c = random_all_to_all_circuit(4, 3, rng);
    Circuit v = embed_circuit_2d(c);
    CHECK(validate(v).ok());
    CHECK(v.depth() == 7 * c.depth());
  }
}

TEST_SUITE_END();
