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

#include "qlat/circuit.hpp"
#include "qlat/families.hpp"
#include "qlat/statevector.hpp"
#include "qlat/synthesis.hpp"

using namespace qlat;

TEST_SUITE_BEGIN("circuit");

namespace {

Circuit single_cz_circuit(Layout layout, std::vector<int> support) {
  Circuit c;
  c.layout = layout;
  Layer l;
  l.czs.push_back({std::move(support)});
  c.layers.push_back(l);
  return c;
}

}  // namespace

TEST_CASE("validate accepts contiguous line support") {
  Circuit c = single_cz_circuit(Layout::line(4), {0, 1, 2});
  CHECK(validate(c).ok());
}

TEST_CASE("validate flags non-contiguous line support") {
  Circuit c = single_cz_circuit(Layout::line(4), {0, 2});
  ValidationReport rep = validate(c);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations[0].message == "non-contiguous support on line");
  CHECK(rep.violations[0].layer == 0);
}

TEST_CASE("validate flags diagonal lattice support") {
  Layout lat = Layout::lattice(2, 3);
  Circuit c = single_cz_circuit(lat, {lat.at(0, 0), lat.at(1, 1)});
  ValidationReport rep = validate(c);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations[0].message ==
        "support spans neither a single row nor a single column");
}

TEST_CASE("validate accepts row and column lattice supports") {
  Layout lat = Layout::lattice(3, 4);
  CHECK(validate(single_cz_circuit(lat, {lat.at(1, 1), lat.at(1, 2), lat.at(1, 3)})).ok());
  CHECK(validate(single_cz_circuit(lat, {lat.at(0, 2), lat.at(1, 2), lat.at(2, 2)})).ok());
  CHECK_FALSE(validate(single_cz_circuit(lat, {lat.at(0, 0), lat.at(2, 0)})).ok());
}

TEST_CASE("validate reports repeated cz membership and bad singles") {
  Circuit c;
  c.layout = Layout::line(3);
  Layer l;
  l.czs.push_back({{0, 1}});
  l.czs.push_back({{1, 2}});
  Mat2 not_unitary;
  not_unitary.m[0] = 2.0;
  l.singles.push_back({0, not_unitary});
  c.layers.push_back(l);
  ValidationReport rep = validate(c);
  CHECK(rep.violations.size() == 2);
}

TEST_CASE("all-to-all accepts any support") {
  CHECK(validate(single_cz_circuit(Layout::all_to_all(5), {0, 3, 4})).ok());
}

TEST_CASE("depth counts only nonempty cz layers") {
  Circuit c;
  c.layout = Layout::line(2);
  Layer singles_only;
  singles_only.singles.push_back({0, Mat2::h()});
  c.layers.push_back(singles_only);
  CHECK(c.depth() == 0);
  Layer with_cz;
  with_cz.czs.push_back({{0, 1}});
  c.layers.push_back(with_cz);
  CHECK(c.depth() == 1);
  c.layers.push_back(singles_only);
  CHECK(c.depth() == 1);
}

TEST_CASE("toffoli lowering: single control is a CNOT") {
  GeneralizedToffoli g;
  g.controls = {0};
  g.target = 1;
  Circuit c;
  c.layout = Layout::line(2);
  c.layers = lower_toffoli(g);
  for (uint64_t x = 0; x < 4; ++x) {
    StateVector s = run_basis(c, x);
    const uint64_t want = (x & 1) ? (x ^ 2) : x;
    CHECK(std::abs(s.amps[want] - 1.0) < 1e-12);
  }
}

TEST_CASE("cz on one qubit is a Z") {
  ToffoliView v = raise_cz(MultiCZGate{{0}});
  CHECK(v.gate.controls.empty());
  CHECK(v.gate.target == 0);
  Circuit c = single_cz_circuit(Layout::line(1), {0});
  StateVector s1 = run_basis(c, 1);
  CHECK(std::abs(s1.amps[1] + 1.0) < 1e-12);
  StateVector s0 = run_basis(c, 0);
  CHECK(std::abs(s0.amps[0] - 1.0) < 1e-12);
}

TEST_CASE("toffoli lowering matches the explicit permutation matrix") {
  GeneralizedToffoli g;
  g.controls = {0, 1};
  g.target = 2;
  Circuit c;
  c.layout = Layout::all_to_all(3);
  c.layers = lower_toffoli(g);
  auto u = circuit_unitary(c);
  for (uint64_t col = 0; col < 8; ++col) {
    const uint64_t want = (col & 3) == 3 ? (col ^ 4) : col;
    for (uint64_t row = 0; row < 8; ++row) {
      const cplx expect = row == want ? 1.0 : 0.0;
      CHECK(std::abs(u[row][col] - expect) < 1e-12);
    }
  }
}

TEST_CASE("lowering is unitary-preserving for supports up to 4") {
  for (int size = 2; size <= 4; ++size) {
    GeneralizedToffoli g;
    for (int q = 0; q < size - 1; ++q) g.controls.push_back(q);
    g.target = size - 1;
    Circuit c;
    c.layout = Layout::all_to_all(size);
    c.layers = lower_toffoli(g);
    auto u = circuit_unitary(c);
    const uint64_t dim = uint64_t{1} << size;
    const uint64_t controls_mask = dim / 2 - 1;
    for (uint64_t col = 0; col < dim; ++col) {
      const uint64_t want =
          (col & controls_mask) == controls_mask ? col ^ (dim >> 1) : col;
      for (uint64_t row = 0; row < dim; ++row) {
        const cplx expect = row == want ? 1.0 : 0.0;
        CHECK(std::abs(u[row][col] - expect) < 1e-12);
      }
    }
  }
}

TEST_CASE("toffoli rejects empty-support cz") {
  CHECK_THROWS_AS(raise_cz(MultiCZGate{{}}), Error);
}

TEST_CASE("compose identity and depth additivity") {
  ParityCircuit p = parity_line(3);
  Circuit empty;
  empty.layout = p.circuit.layout;
  Circuit same = compose(p.circuit, empty);
  CHECK(structurally_equal(same, p.circuit));
  Circuit doubled = compose(p.circuit, p.circuit);
  CHECK(doubled.depth() == 2 * p.circuit.depth());
  Circuit other;
  other.layout = Layout::line(99);
  CHECK_THROWS_AS(compose(p.circuit, other), Error);
}

TEST_CASE("compose with inverse is the identity on all basis states") {
  ParityCircuit p = parity_line(3);
  Circuit round = compose(p.circuit, inverse(p.circuit));
  for (uint64_t x = 0; x < 16; ++x) {
    StateVector s = run_basis(round, x);
    CHECK(std::abs(s.amps[x] - 1.0) < 1e-10);
  }
}

TEST_CASE("inverse of a single H layer is the same layer") {
  Circuit c;
  c.layout = Layout::line(1);
  Layer l;
  l.singles.push_back({0, Mat2::h()});
  c.layers.push_back(l);
  CHECK(structurally_equal(inverse(c), c, 1e-15));
}

TEST_CASE("inverse is an involution field-for-field") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    Circuit c = random_line_circuit(5, 3, 3, rng);
    CHECK(structurally_equal(inverse(inverse(c)), c, 1e-12));
  }
}

TEST_CASE("random circuit times its inverse fixes random states") {
  std::mt19937_64 rng(13);
  Circuit c = random_line_circuit(3, 2, 3, rng);
  Circuit round = compose(c, inverse(c));
  for (int trial = 0; trial < 10; ++trial) {
    StateVector in = random_state(3, rng);
    StateVector out = run_state(round, in);
    CHECK(fidelity(in, out) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("builder packs parallel cnots into one layer") {
  CircuitBuilder b(Layout::line(4));
  b.cnot_group({{0, 1}, {2, 3}});
  Circuit c = b.finish();
  CHECK(c.depth() == 1);
}

TEST_CASE("builder splits overlapping czs") {
  CircuitBuilder b(Layout::line(3));
  b.cz({0, 1});
  b.cz({1, 2});
  Circuit c = b.finish();
  CHECK(c.depth() == 2);
}

TEST_SUITE_END();
