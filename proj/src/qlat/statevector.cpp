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

#include "qlat/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qlat {

StateVector StateVector::basis(int num_qubits, uint64_t index) {
  StateVector s;
  s.num_qubits = num_qubits;
  s.amps.assign(uint64_t{1} << num_qubits, 0.0);
  s.amps[index] = 1.0;
  return s;
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const cplx &a : amps) n2 += std::norm(a);
  return std::sqrt(n2);
}

cplx inner(const StateVector &a, const StateVector &b) {
  if (a.num_qubits != b.num_qubits) throw Error("inner: dimension mismatch");
  cplx acc = 0.0;
  for (uint64_t i = 0; i < a.size(); ++i)
    acc += std::conj(a.amps[i]) * b.amps[i];
  return acc;
}

double fidelity(const StateVector &a, const StateVector &b) {
  return std::norm(inner(a, b));
}

void apply_single(StateVector &s, int qubit, const Mat2 &u) {
  const uint64_t bit = uint64_t{1} << qubit;
  const uint64_t n = s.size();
  bool real = true;
  for (const cplx &e : u.m) real &= e.imag() == 0.0;
  if (real) {
    // Real matrices (H, X, RY) dominate the synthesized circuits; the real
    // butterfly runs at twice the complex rate.
    const double r0 = u.m[0].real(), r1 = u.m[1].real();
    const double r2 = u.m[2].real(), r3 = u.m[3].real();
    for (uint64_t block = 0; block < n; block += bit << 1) {
      for (uint64_t lo = block; lo < block + bit; ++lo) {
        const cplx a0 = s.amps[lo], a1 = s.amps[lo | bit];
        s.amps[lo] = r0 * a0 + r1 * a1;
        s.amps[lo | bit] = r2 * a0 + r3 * a1;
      }
    }
    return;
  }
  for (uint64_t block = 0; block < n; block += bit << 1) {
    for (uint64_t lo = block; lo < block + bit; ++lo) {
      const cplx a0 = s.amps[lo], a1 = s.amps[lo | bit];
      s.amps[lo] = u.m[0] * a0 + u.m[1] * a1;
      s.amps[lo | bit] = u.m[2] * a0 + u.m[3] * a1;
    }
  }
}

void apply_cz(StateVector &s, const std::vector<int> &support) {
  uint64_t mask = 0;
  for (int q : support) mask |= uint64_t{1} << q;
  // Walk only the all-ones subspace of the support, enumerating submasks of
  // the complement so each visited index costs O(1).
  const uint64_t cmask = (s.size() - 1) & ~mask;
  uint64_t t = cmask;
  while (true) {
    s.amps[mask | t] = -s.amps[mask | t];
    if (t == 0) break;
    t = (t - 1) & cmask;
  }
}

void apply_layer(StateVector &s, const Layer &l) {
  for (const SingleQubitGate &g : l.singles) apply_single(s, g.target, g.u);
  for (const MultiCZGate &g : l.czs) apply_cz(s, g.support);
}

namespace {

StateVector run_impl(const Circuit &c, StateVector s, const RunOptions &opt) {
  for (const Layer &l : c.layers) {
    apply_layer(s, l);
    if (opt.check_norms) {
      const double n = s.norm();
      if (std::abs(n - 1.0) > 1e-9)
        throw Error("norm drifted to " + std::to_string(n));
    }
  }
  return s;
}

uint64_t initial_basis(const Circuit &c, const std::vector<int> &input_bits) {
  if (input_bits.size() != c.inputs.size())
    throw Error("run: expected " + std::to_string(c.inputs.size()) +
                " input bits, got " + std::to_string(input_bits.size()));
  uint64_t basis = 0;
  for (size_t i = 0; i < c.inputs.size(); ++i)
    if (input_bits[i]) basis |= uint64_t{1} << c.inputs[i];
  for (const AncillaInit &a : c.ancilla)
    if (a.init == AncillaState::one) basis |= uint64_t{1} << a.qubit;
  return basis;
}

void check_cap(const Circuit &c, const RunOptions &opt) {
  if (c.qubit_count() > opt.qubit_cap)
    throw Error("qubit cap exceeded: circuit has " +
                std::to_string(c.qubit_count()) + " qubits, cap is " +
                std::to_string(opt.qubit_cap));
}

}  // namespace

StateVector run(const Circuit &c, const std::vector<int> &input_bits,
                const RunOptions &opt) {
  check_cap(c, opt);
  return run_impl(c, StateVector::basis(c.qubit_count(), initial_basis(c, input_bits)), opt);
}

StateVector run_basis(const Circuit &c, uint64_t basis, const RunOptions &opt) {
  check_cap(c, opt);
  return run_impl(c, StateVector::basis(c.qubit_count(), basis), opt);
}

StateVector run_state(const Circuit &c, StateVector initial,
                      const RunOptions &opt) {
  check_cap(c, opt);
  if (initial.num_qubits != c.qubit_count())
    throw Error("run_state: state size does not match circuit");
  return run_impl(c, std::move(initial), opt);
}

double f_eval(const Circuit &c, const std::vector<int> &input_bits,
              int output_qubit, const RunOptions &opt) {
  StateVector s = run(c, input_bits, opt);
  const uint64_t bit = uint64_t{1} << output_qubit;
  double p = 0.0;
  for (uint64_t i = 0; i < s.size(); ++i)
    if (i & bit) p += std::norm(s.amps[i]);
  return p;
}

std::vector<double> measure_distribution(const StateVector &s,
                                         const std::vector<int> &qubits) {
  std::vector<double> dist(uint64_t{1} << qubits.size(), 0.0);
  for (uint64_t i = 0; i < s.size(); ++i) {
    uint64_t y = 0;
    for (size_t b = 0; b < qubits.size(); ++b)
      if (i & (uint64_t{1} << qubits[b])) y |= uint64_t{1} << b;
    dist[y] += std::norm(s.amps[i]);
  }
  return dist;
}

SuccessProfile avg_success(const Circuit &c,
                           const std::function<int(uint64_t)> &target,
                           int output_qubit, const RunOptions &opt,
                           const SamplingOptions &sampling) {
  const size_t n = c.inputs.size();
  SuccessProfile prof;
  auto circuit_prob = [&](uint64_t x) {
    std::vector<int> bits(n);
    for (size_t i = 0; i < n; ++i) bits[i] = (x >> i) & 1;
    return f_eval(c, bits, output_qubit, opt);
  };
  auto agreement = [&](uint64_t x, double fc) {
    return target(x) ? fc : 1.0 - fc;
  };
  if (n <= 16) {
    const uint64_t total = uint64_t{1} << n;
    prof.per_input.resize(total);
    double acc = 0.0;
    for (uint64_t x = 0; x < total; ++x) {
      prof.per_input[x] = circuit_prob(x);  // the table holds f_C(x)
      acc += agreement(x, prof.per_input[x]);
    }
    prof.average = acc / static_cast<double>(total);
    prof.exact = true;
    return prof;
  }
  if (!sampling.allow_sampling)
    throw Error("avg_success: " + std::to_string(n) +
                " inputs exceed the exact-enumeration cap of 16; enable sampling");
  std::mt19937_64 rng(sampling.seed);
  double acc = 0.0;
  for (int i = 0; i < sampling.samples; ++i) {
    const uint64_t x = rng() & ((uint64_t{1} << n) - 1);
    acc += agreement(x, circuit_prob(x));
  }
  prof.average = acc / sampling.samples;
  prof.exact = false;
  prof.samples = sampling.samples;
  prof.seed = sampling.seed;
  return prof;
}

std::vector<std::vector<cplx>> circuit_unitary(const Circuit &c,
                                               const RunOptions &opt) {
  if (c.qubit_count() > 10)
    throw Error("circuit_unitary: limited to 10 qubits");
  const uint64_t dim = uint64_t{1} << c.qubit_count();
  std::vector<std::vector<cplx>> u(dim, std::vector<cplx>(dim, 0.0));
  for (uint64_t col = 0; col < dim; ++col) {
    StateVector s = run_basis(c, col, opt);
    for (uint64_t row = 0; row < dim; ++row) u[row][col] = s.amps[row];
  }
  return u;
}

// ---------------------------------------------------------------------------
// Grouped (product-register) evaluation.

namespace {

struct Register {
  std::vector<int> qubits;  // qubit id per local position
  std::vector<cplx> amps;   // dense over the local qubits
};

struct GroupedState {
  int num_qubits;
  std::vector<int> owner;    // register index, or -1 when classical
  std::vector<int> bit;      // classical value when owner == -1
  std::vector<Register> regs;
  cplx phase = 1.0;
  int max_active = 0;

  explicit GroupedState(int n, uint64_t basis)
      : num_qubits(n), owner(n, -1), bit(n, 0) {
    for (int q = 0; q < n; ++q) bit[q] = (basis >> q) & 1;
  }

  int local_pos(const Register &r, int qubit) const {
    for (size_t i = 0; i < r.qubits.size(); ++i)
      if (r.qubits[i] == qubit) return static_cast<int>(i);
    throw Error("grouped: qubit not in register");
  }

  // Moves a classical qubit into a fresh 1-qubit register.
  int promote(int qubit) {
    Register r;
    r.qubits = {qubit};
    r.amps = {0.0, 0.0};
    r.amps[bit[qubit]] = 1.0;
    regs.push_back(std::move(r));
    owner[qubit] = static_cast<int>(regs.size()) - 1;
    return owner[qubit];
  }

  // Merges register b into register a (a != b); b becomes empty.
  void merge(int a, int b) {
    Register &ra = regs[a];
    Register &rb = regs[b];
    const size_t na = ra.qubits.size(), nb = rb.qubits.size();
    std::vector<cplx> merged(uint64_t{1} << (na + nb));
    for (uint64_t ia = 0; ia < (uint64_t{1} << na); ++ia)
      for (uint64_t ib = 0; ib < (uint64_t{1} << nb); ++ib)
        merged[(ib << na) | ia] = ra.amps[ia] * rb.amps[ib];
    ra.amps = std::move(merged);
    for (int q : rb.qubits) {
      ra.qubits.push_back(q);
      owner[q] = a;
    }
    rb.qubits.clear();
    rb.amps.clear();
  }

  // Ensures all listed qubits live in one register; returns its index.
  int gather(const std::vector<int> &qubits, int cap) {
    int target = -1;
    for (int q : qubits) {
      int r = owner[q] >= 0 ? owner[q] : promote(q);
      if (target == -1) {
        target = r;
      } else if (r != target) {
        merge(target, r);
      }
    }
    const int active = static_cast<int>(regs[target].qubits.size());
    max_active = std::max(max_active, active);
    if (active > cap)
      throw Error("grouped: active register of " + std::to_string(active) +
                  " qubits exceeds cap " + std::to_string(cap));
    return target;
  }

  // Extracts qubits that returned to a basis state; drops empty registers.
  void peel() {
    for (size_t ri = 0; ri < regs.size(); ++ri) {
      Register &r = regs[ri];
      bool changed = true;
      while (changed && !r.qubits.empty()) {
        changed = false;
        for (size_t pos = 0; pos < r.qubits.size(); ++pos) {
          const uint64_t pbit = uint64_t{1} << pos;
          const uint64_t n = r.amps.size();
          double w0 = 0.0, w1 = 0.0;
          for (uint64_t i = 0; i < n; ++i)
            ((i & pbit) ? w1 : w0) += std::norm(r.amps[i]);
          int fixed = -1;
          if (w1 <= 1e-24) fixed = 0;
          if (w0 <= 1e-24) fixed = 1;
          if (fixed < 0) continue;
          // Project out the determined qubit.
          std::vector<cplx> rest(n >> 1);
          for (uint64_t i = 0; i < n; ++i) {
            if (((i >> pos) & 1) != static_cast<uint64_t>(fixed)) continue;
            const uint64_t low = i & (pbit - 1);
            const uint64_t high = (i >> (pos + 1)) << pos;
            rest[high | low] = r.amps[i];
          }
          const int q = r.qubits[pos];
          owner[q] = -1;
          bit[q] = fixed;
          r.qubits.erase(r.qubits.begin() + pos);
          r.amps = std::move(rest);
          changed = true;
          break;
        }
      }
      if (r.qubits.empty() && !r.amps.empty()) {
        phase *= r.amps[0];  // fully peeled register leaves a scalar behind
        r.amps.clear();
      }
    }
  }
};

bool near_zero(const cplx &z) { return std::abs(z) < 1e-14; }

}  // namespace

GroupedRunResult run_grouped(const Circuit &c, uint64_t basis, int active_cap) {
  GroupedState st(c.qubit_count(), basis);
  for (const Layer &l : c.layers) {
    for (const SingleQubitGate &g : l.singles) {
      const Mat2 &u = g.u;
      if (st.owner[g.target] < 0) {
        const int b = st.bit[g.target];
        const cplx to_same = u(b, b), to_flip = u(1 - b, b);
        if (near_zero(to_flip)) {
          st.phase *= to_same;  // diagonal action on this basis bit
          continue;
        }
        if (near_zero(to_same)) {
          st.phase *= to_flip;
          st.bit[g.target] = 1 - b;
          continue;
        }
        st.promote(g.target);
      }
      Register &r = st.regs[st.owner[g.target]];
      const int pos = st.local_pos(r, g.target);
      const uint64_t pbit = uint64_t{1} << pos;
      for (uint64_t i = 0; i < r.amps.size(); ++i) {
        if (i & pbit) continue;
        const cplx a0 = r.amps[i], a1 = r.amps[i | pbit];
        r.amps[i] = u.m[0] * a0 + u.m[1] * a1;
        r.amps[i | pbit] = u.m[2] * a0 + u.m[3] * a1;
      }
    }
    for (const MultiCZGate &g : l.czs) {
      // Classical zeros make the gate act as the identity.
      bool dead = false;
      std::vector<int> quantum;
      for (int q : g.support) {
        if (st.owner[q] < 0) {
          if (st.bit[q] == 0) {
            dead = true;
            break;
          }
        } else {
          quantum.push_back(q);
        }
      }
      if (dead) continue;
      if (quantum.empty()) {
        st.phase = -st.phase;  // every support qubit classically one
        continue;
      }
      const int ri = st.gather(quantum, active_cap);
      Register &r = st.regs[ri];
      uint64_t mask = 0;
      for (int q : quantum) mask |= uint64_t{1} << st.local_pos(r, q);
      for (uint64_t i = 0; i < r.amps.size(); ++i)
        if ((i & mask) == mask) r.amps[i] = -r.amps[i];
    }
    st.peel();
  }
  GroupedRunResult res;
  res.max_active = st.max_active;
  res.phase = st.phase;
  res.all_classical = true;
  uint64_t bits = 0;
  for (int q = 0; q < st.num_qubits; ++q) {
    if (st.owner[q] >= 0 && !st.regs[st.owner[q]].qubits.empty()) {
      res.all_classical = false;
      break;
    }
    if (st.bit[q]) bits |= uint64_t{1} << q;
  }
  res.bits = bits;
  return res;
}

}  // namespace qlat
