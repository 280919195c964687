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

#include <cmath>
#include <random>
#include <thread>

#include "qlat/density.hpp"
#include "qlat/families.hpp"
#include "qlat/statevector.hpp"
#include "qlat/synthesis.hpp"

using namespace qlat;

TEST_SUITE_BEGIN("simulator");

TEST_CASE("empty circuit maps basis to basis") {
  Circuit c;
  c.layout = Layout::line(4);
  c.inputs = {0, 1, 2};
  StateVector s = run(c, {1, 0, 1});
  CHECK(std::abs(s.amps[0b0101] - 1.0) < 1e-15);
}

TEST_CASE("cz touches only the all-ones subspace") {
  std::mt19937_64 rng(3);
  StateVector s = random_state(4, rng);
  StateVector before = s;
  apply_cz(s, {1, 2});
  const uint64_t mask = 0b0110;
  for (uint64_t i = 0; i < s.size(); ++i) {
    if ((i & mask) == mask)
      CHECK(s.amps[i] == -before.amps[i]);
    else
      CHECK(s.amps[i] == before.amps[i]);
  }
}

TEST_CASE("norm is preserved through random layers") {
  std::mt19937_64 rng(17);
  Circuit c = random_line_circuit(6, 3, 4, rng);
  RunOptions opt;
  opt.check_norms = true;  // throws if any layer drifts
  StateVector s = run(c, {0, 1, 0, 1, 1, 0}, opt);
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("qubit cap is enforced") {
  Circuit c;
  c.layout = Layout::line(23);
  CHECK_THROWS_AS(run(c, {}), Error);
  RunOptions opt;
  opt.qubit_cap = 23;
  CHECK_NOTHROW(run(c, {}, opt));
}

TEST_CASE("f_eval on prepared output bits") {
  Circuit c;
  c.layout = Layout::line(2);
  c.inputs = {};
  Layer l;
  l.singles.push_back({0, Mat2::x()});
  l.singles.push_back({1, Mat2::h()});
  c.layers.push_back(l);
  CHECK(f_eval(c, {}, 0) == doctest::Approx(1.0));
  CHECK(f_eval(c, {}, 1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("avg_success of exact parity synthesizer is 1") {
  ParityCircuit p = parity_line(4);
  auto target = [](uint64_t x) { return std::popcount(x) & 1; };
  // Feed b = 0 by treating the target as a data input fixed to zero: success
  // for the parity function read on the target qubit.
  Circuit c = p.circuit;
  c.inputs = p.data_inputs;  // target defaults to ancilla zero
  SuccessProfile prof = avg_success(c, target, p.target);
  CHECK(prof.exact);
  CHECK(prof.average == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("avg_success is exactly half when an input is ignored") {
  // No gate touches input 0, and the output qubit is 0.
  Circuit c;
  c.layout = Layout::line(3);
  c.inputs = {0, 1, 2};
  Layer l;
  l.czs.push_back({{1, 2}});
  c.layers.push_back(l);
  auto target = [](uint64_t x) { return std::popcount(x) & 1; };
  SuccessProfile prof = avg_success(c, target, 1);
  CHECK(prof.average == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("partial trace of a product state") {
  Circuit c;
  c.layout = Layout::line(2);
  Layer l;
  l.singles.push_back({1, Mat2::h()});
  c.layers.push_back(l);
  StateVector s = run(c, {});
  ReducedDensity rd = partial_trace(s, {0});
  CHECK(std::abs(rd.at(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(rd.at(1, 1)) < 1e-12);
}

TEST_CASE("cat marginals are maximally mixed") {
  StateVector s = run(cat_1d(4), {});
  for (int q = 0; q < 4; ++q) {
    ReducedDensity rd = partial_trace(s, {q});
    CHECK(std::abs(rd.at(0, 0) - 0.5) < 1e-10);
    CHECK(std::abs(rd.at(1, 1) - 0.5) < 1e-10);
    CHECK(std::abs(rd.at(0, 1)) < 1e-10);
  }
}

TEST_CASE("keep-all partial trace reproduces the projector") {
  std::mt19937_64 rng(23);
  StateVector s = random_state(3, rng);
  ReducedDensity rd = partial_trace(s, {0, 1, 2});
  for (int r = 0; r < 8; ++r)
    for (int col = 0; col < 8; ++col)
      CHECK(std::abs(rd.at(r, col) - s.amps[r] * std::conj(s.amps[col])) < 1e-12);
}

TEST_CASE("partial trace output is Hermitian PSD with unit trace") {
  std::mt19937_64 rng(29);
  Circuit c = random_line_circuit(5, 2, 3, rng);
  StateVector s = run(c, {1, 0, 1, 1, 0});
  ReducedDensity rd = partial_trace(s, {1, 3});
  CHECK(rd.trace_real() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rd.hermiticity_defect() < 1e-10);
  CHECK(min_eigenvalue(rd) > -1e-10);
}

TEST_CASE("trace distance basics") {
  StateVector zero = StateVector::basis(1, 0);
  StateVector one = StateVector::basis(1, 1);
  ReducedDensity a = partial_trace(zero, {0});
  ReducedDensity b = partial_trace(one, {0});
  CHECK(trace_distance(a, a) == doctest::Approx(0.0));
  CHECK(trace_distance(a, b) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("eigensolver agrees with the pure-state closed form") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    StateVector u = random_state(3, rng);
    StateVector v = random_state(3, rng);
    ReducedDensity a = partial_trace(u, {0, 1, 2});
    ReducedDensity b = partial_trace(v, {0, 1, 2});
    CHECK(trace_distance(a, b) ==
          doctest::Approx(pure_trace_distance(u, v)).epsilon(1e-9));
  }
}

TEST_CASE("trace distance triangle inequality on random triples") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 8; ++trial) {
    ReducedDensity a = partial_trace(random_state(2, rng), {0, 1});
    ReducedDensity b = partial_trace(random_state(2, rng), {0, 1});
    ReducedDensity c = partial_trace(random_state(2, rng), {0, 1});
    CHECK(trace_distance(a, c) <=
          trace_distance(a, b) + trace_distance(b, c) + 1e-8);
  }
}

TEST_CASE("Fuchs-van de Graaf sandwich on random pure pairs") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    StateVector u = random_state(3, rng);
    StateVector v = random_state(3, rng);
    const double f = fidelity(u, v);
    const double td = trace_distance(partial_trace(u, {0, 1, 2}),
                                     partial_trace(v, {0, 1, 2}));
    CHECK(2.0 - 2.0 * f <= td + 1e-8);
    CHECK(td <= 2.0 * std::sqrt(1.0 - f * f) + 1e-8);
  }
}

TEST_CASE("fidelity basics") {
  StateVector zero = StateVector::basis(1, 0);
  CHECK(fidelity(zero, zero) == doctest::Approx(1.0));
  StateVector plus = zero;
  apply_single(plus, 0, Mat2::h());
  CHECK(fidelity(zero, plus) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("tv distance basics") {
  CHECK(tv_distance({0.5, 0.5}, {0.5, 0.5}) == doctest::Approx(0.0));
  CHECK(tv_distance({1.0, 0.0}, {0.0, 1.0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(tv_distance({0.7, 0.7}, {0.5, 0.5}), Error);
}

TEST_CASE("concurrent runs on a shared circuit agree") {
  std::mt19937_64 rng(43);
  const Circuit c = random_line_circuit(6, 2, 3, rng);
  const StateVector want = run(c, {1, 1, 0, 0, 1, 0});
  std::vector<std::thread> pool;
  std::vector<double> fids(4, 0.0);
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t]() {
      StateVector got = run(c, {1, 1, 0, 0, 1, 0});
      fids[t] = fidelity(got, want);
    });
  }
  for (auto &th : pool) th.join();
  for (double f : fids) CHECK(f == doctest::Approx(1.0));
}

TEST_CASE("grouped evaluation matches dense on staged circuits") {
  // parity_width2 keeps registers small; compare outcomes with plain run.
  ParityCircuit p = parity_width2(4);
  for (uint64_t x = 0; x < 32; ++x) {
    uint64_t basis = 0;
    for (size_t i = 0; i < p.circuit.inputs.size(); ++i)
      if (x & (uint64_t{1} << i)) basis |= uint64_t{1} << p.circuit.inputs[i];
    for (const AncillaInit &a : p.circuit.ancilla)
      if (a.init == AncillaState::one) basis |= uint64_t{1} << a.qubit;
    GroupedRunResult g = run_grouped(p.circuit, basis);
    REQUIRE(g.all_classical);
    StateVector s = run_basis(p.circuit, basis);
    CHECK(std::abs(s.amps[g.bits]) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g.max_active <= 8);
  }
}

TEST_CASE("grouped evaluation respects the active cap") {
  Circuit c = cat_1d(8);  // genuinely entangles all eight qubits
  CHECK_THROWS_AS(run_grouped(c, 0, 4), Error);
}

TEST_CASE("avg_success over 16 inputs needs the sampling flag") {
  Circuit c;
  c.layout = Layout::line(17);
  for (int q = 0; q < 17; ++q) c.inputs.push_back(q);
  auto target = [](uint64_t x) { return std::popcount(x) & 1; };
  CHECK_THROWS_AS(avg_success(c, target, 0), Error);
  SamplingOptions sampling;
  sampling.allow_sampling = true;
  sampling.samples = 32;
  sampling.seed = 99;
  SuccessProfile prof = avg_success(c, target, 0, {}, sampling);
  CHECK_FALSE(prof.exact);
  CHECK(prof.samples == 32);
  CHECK(prof.seed == 99);
  // The identity circuit reads its own first input: every sample agrees
  // with parity only when the other bits are even, so the estimate sits
  // near one half; reproducibility is what matters here.
  SuccessProfile again = avg_success(c, target, 0, {}, sampling);
  CHECK(prof.average == again.average);
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("simulator");

TEST_CASE("grouped evaluation matches dense on random basis-permutation circuits") {
  // Random circuits built from X, CNOT, and Toffoli map basis states to
  // basis states, the regime run_grouped is for.
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 4);
    CircuitBuilder b(Layout::line(n));
    for (int q = 0; q < n; ++q) b.input(q);
    for (int t = 0; t < 4; ++t) {
      const int kind = rng() % 3;
      const int at = static_cast<int>(rng() % (n - 2));
      if (kind == 0)
        b.single(static_cast<int>(rng() % n), Mat2::x());
      else if (kind == 1)
        b.cnot(at, at + 1);
      else
        b.toffoli({at, at + 1}, at + 2);
      b.barrier();
    }
    Circuit c = b.finish();
    for (int rep = 0; rep < 8; ++rep) {
      const uint64_t basis = rng() & ((uint64_t{1} << n) - 1);
      GroupedRunResult g = run_grouped(c, basis);
      REQUIRE(g.all_classical);
      StateVector dense = run_basis(c, basis);
      CHECK(std::abs(dense.amps[g.bits] - g.phase) < 1e-10);
    }
  }
}

TEST_CASE("grouped evaluation tracks phases of diagonal actions") {
  // Z on a classical |1> contributes a pure phase; the dense amplitude and
  // the grouped phase must agree including sign.
  CircuitBuilder b(Layout::line(2));
  b.input(0);
  b.input(1);
  b.single(0, Mat2::z());
  b.cz({0, 1});
  Circuit c = b.finish();
  for (uint64_t basis = 0; basis < 4; ++basis) {
    GroupedRunResult g = run_grouped(c, basis);
    REQUIRE(g.all_classical);
    StateVector dense = run_basis(c, basis);
    CHECK(std::abs(dense.amps[g.bits] - g.phase) < 1e-12);
  }
}

TEST_SUITE_END();
