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

#include "qlat/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlat/statevector.hpp"

namespace qlat {

namespace {

constexpr double kPi = std::numbers::pi;

/// Emits the doubling fan-out over `cells` (corridor-ordered qubit ids,
/// adjacent in the layout): the value at cells[0] is copied to every cell,
/// all others assumed |1>. One X + corridor-Toffoli group per level.
void emit_fanout(CircuitBuilder &b, const std::vector<int> &cells) {
  std::vector<std::pair<int, int>> blocks = {{0, static_cast<int>(cells.size()) - 1}};
  while (true) {
    std::vector<std::pair<int, int>> next;
    std::vector<CircuitBuilder::CorridorCnot> gates;
    for (auto [lo, hi] : blocks) {
      if (lo >= hi) continue;
      const int len = hi - lo + 1;
      const int mid = lo + (len + 1) / 2;
      std::vector<int> support(cells.begin() + lo, cells.begin() + mid + 1);
      b.single(cells[mid], Mat2::x());
      gates.push_back({std::move(support), cells[mid]});
      next.push_back({lo, mid - 1});
      next.push_back({mid, hi});
    }
    if (gates.empty()) break;
    b.corridor_group(gates);
    blocks = std::move(next);
  }
}

/// Mirrors a lattice circuit left-right (column c -> cols-1-c).
Circuit mirror_columns(const Circuit &c) {
  const int cols = c.layout.cols;
  auto flip = [&](int id) {
    return c.layout.at(c.layout.row_of(id), cols - 1 - c.layout.col_of(id));
  };
  Circuit r;
  r.layout = c.layout;
  for (int q : c.inputs) r.inputs.push_back(flip(q));
  for (const AncillaInit &a : c.ancilla) r.ancilla.push_back({flip(a.qubit), a.init});
  for (const Layer &l : c.layers) {
    Layer nl;
    for (const SingleQubitGate &g : l.singles) nl.singles.push_back({flip(g.target), g.u});
    for (const MultiCZGate &g : l.czs) {
      MultiCZGate ng;
      for (int q : g.support) ng.support.push_back(flip(q));
      std::sort(ng.support.begin(), ng.support.end());
      nl.czs.push_back(std::move(ng));
    }
    r.layers.push_back(std::move(nl));
  }
  return r;
}

}  // namespace

Circuit restricted_fanout(int k) {
  if (k < 1) throw Error("restricted_fanout: k must be >= 1");
  const int n = 1 << k;
  CircuitBuilder b(Layout::line(n));
  b.input(0);
  for (int q = 1; q < n; ++q) b.set_ancilla(q, AncillaState::one);
  std::vector<int> cells(n);
  for (int q = 0; q < n; ++q) cells[q] = q;
  emit_fanout(b, cells);
  return b.finish();
}

Circuit cat_1d(int n) {
  if (n < 1) throw Error("cat_1d: n must be >= 1");
  CircuitBuilder b(Layout::line(n));
  b.single(0, Mat2::h());
  for (int q = 1; q < n; ++q) b.single(q, Mat2::x());
  std::vector<int> cells(n);
  for (int q = 0; q < n; ++q) cells[q] = q;
  emit_fanout(b, cells);
  return b.finish();
}

ParityCircuit parity_line(int n) {
  if (n < 1) throw Error("parity_line: n must be >= 1");
  const int left = (n + 1) / 2;            // inputs at 0..left-1
  const int right = n - left;              // inputs at left+1..n
  const int target = left;
  CircuitBuilder b(Layout::line(n + 1));

  // Two half-sweeps accumulate prefix/suffix parities toward the target,
  // merge into it, then undo outward. Everything interleaves into n layers.
  const int last = std::max({left, right >= 1 ? left + 1 : 0,
                             left >= 2 ? 2 * left - 1 : 0, right >= 2 ? n : 0});
  for (int layer = 1; layer <= last; ++layer) {
    std::vector<std::pair<int, int>> pairs;
    if (layer <= left - 1) pairs.push_back({layer - 1, layer});       // left sweep
    if (layer <= right - 1) pairs.push_back({n - layer + 1, n - layer});  // right sweep
    if (layer == left) pairs.push_back({left - 1, target});           // merge left
    if (right >= 1 && layer == left + 1) pairs.push_back({left + 1, target});  // merge right
    const int lu = layer - (left + 1);  // left undo index
    if (lu >= 0 && lu <= left - 2) pairs.push_back({left - 2 - lu, left - 1 - lu});
    const int ru = layer - (left + 2);  // right undo index
    if (ru >= 0 && ru <= right - 2) pairs.push_back({left + 2 + ru, left + 1 + ru});
    if (!pairs.empty()) b.cnot_group(pairs);
  }

  ParityCircuit pc;
  for (int q = 0; q < left; ++q) b.input(q);
  for (int q = left + 1; q <= n; ++q) b.input(q);
  b.input(target);
  pc.circuit = b.finish();
  for (int q = 0; q < left; ++q) pc.data_inputs.push_back(q);
  for (int q = left + 1; q <= n; ++q) pc.data_inputs.push_back(q);
  pc.target = target;
  pc.depth_constant =
      pc.circuit.depth() / std::max(1.0, std::log2(static_cast<double>(n)));
  return pc;
}

ParityCircuit parity_line_lattice(int n) {
  ParityCircuit pc = parity_line(n);
  pc.circuit = as_lattice_row(pc.circuit);
  return pc;
}

ParityCircuit parity_width2(int n) {
  if (n < 2) throw Error("parity_width2: n must be >= 2");
  const Layout lat = Layout::lattice(2, n + 1);
  const int target = lat.at(0, 0);
  const int root = lat.at(1, 0);

  // V: copy the (H-rotated) target value down and fan it through row 1.
  CircuitBuilder vb(lat);
  vb.single(root, Mat2::x());
  vb.cnot(target, root);
  std::vector<int> row1(n + 1);
  for (int c = 0; c <= n; ++c) row1[c] = lat.at(1, c);
  emit_fanout(vb, row1);
  Circuit v = vb.finish();
  Circuit vdag = inverse(v);

  Circuit full;
  full.layout = lat;
  full.layers = v.layers;
  if (full.layers.empty()) full.layers.push_back({});
  full.layers.front().singles.push_back({target, Mat2::h()});

  Layer phase_layer;
  for (int c = 1; c <= n; ++c)
    phase_layer.czs.push_back({{lat.at(0, c), lat.at(1, c)}});
  full.layers.push_back(std::move(phase_layer));

  for (Layer &l : vdag.layers) full.layers.push_back(std::move(l));
  Layer closing;
  closing.singles.push_back({target, Mat2::h()});
  full.layers.push_back(std::move(closing));

  for (int c = 1; c <= n; ++c) full.inputs.push_back(lat.at(0, c));
  full.inputs.push_back(target);
  for (int c = 0; c <= n; ++c) full.ancilla.push_back({lat.at(1, c), AncillaState::one});

  ParityCircuit pc;
  pc.circuit = std::move(full);
  for (int c = 1; c <= n; ++c) pc.data_inputs.push_back(lat.at(0, c));
  pc.target = target;
  pc.depth_constant =
      pc.circuit.depth() / std::max(1.0, std::log2(static_cast<double>(n)));
  return pc;
}

namespace {

struct SigmaMap {
  std::vector<int> host_col;  // per base column
};

/// Builds an increasing base-column -> host-column map pinning the base's
/// data-input columns to the block accumulator columns. Returns false when
/// the pinning leaves no room for some non-input column.
bool build_sigma(const std::vector<int> &base_cols_sorted_inputs,
                 const std::vector<int> &pinned_host, int base_cols,
                 int host_cols, SigmaMap *out) {
  std::vector<int> sigma(base_cols, -1);
  for (size_t i = 0; i < base_cols_sorted_inputs.size(); ++i)
    sigma[base_cols_sorted_inputs[i]] = pinned_host[i];
  int prev = -1;
  for (int c = 0; c < base_cols; ++c) {
    if (sigma[c] >= 0) {
      if (sigma[c] <= prev) return false;
      prev = sigma[c];
      continue;
    }
    // Next pinned column bounds the choice from above.
    int bound = host_cols;
    for (int c2 = c + 1; c2 < base_cols; ++c2) {
      if (sigma[c2] >= 0) {
        bound = sigma[c2];
        break;
      }
    }
    if (prev + 1 >= bound) return false;
    sigma[c] = prev + 1;
    prev = sigma[c];
  }
  out->host_col = std::move(sigma);
  return true;
}

}  // namespace

ParityCircuit parity_recursive_2d(int n, const ParityCircuit &base) {
  const Circuit &bc = base.circuit;
  if (bc.layout.kind != LayoutKind::lattice)
    throw Error("parity_recursive_2d: base must have a lattice layout");
  const int m = static_cast<int>(base.data_inputs.size());
  if (m < 2) throw Error("parity_recursive_2d: base must take >= 2 inputs");
  for (int q : base.data_inputs)
    if (bc.layout.row_of(q) != 0)
      throw Error("parity_recursive_2d: base interface must sit in its first row");
  if (bc.layout.row_of(base.target) != 0)
    throw Error("parity_recursive_2d: base interface must sit in its first row");

  int k = 0;
  long long power = 1;
  while (power < n) {
    power *= m;
    ++k;
  }
  if (power != n || k < 1)
    throw Error("parity_recursive_2d: n is not a power of the base input count");

  ParityCircuit level = base;
  for (int j = 2; j <= k; ++j) {
    const Circuit &prev = level.circuit;
    const int pw = prev.layout.rows, pl = prev.layout.cols;
    const int bw = bc.layout.rows, bl = bc.layout.cols;
    const Layout lat = Layout::lattice(pw + bw, m * pl);

    Circuit next;
    next.layout = lat;

    auto shift = [&](int id, int row_off, int col_off, const Layout &from) {
      return lat.at(from.row_of(id) + row_off, from.col_of(id) + col_off);
    };

    // m copies of the previous level, side by side, layers merged.
    next.layers.resize(prev.layers.size());
    for (int blk = 0; blk < m; ++blk) {
      const int off = blk * pl;
      for (size_t li = 0; li < prev.layers.size(); ++li) {
        for (const SingleQubitGate &g : prev.layers[li].singles)
          next.layers[li].singles.push_back({shift(g.target, 0, off, prev.layout), g.u});
        for (const MultiCZGate &g : prev.layers[li].czs) {
          MultiCZGate ng;
          for (int q : g.support) ng.support.push_back(shift(q, 0, off, prev.layout));
          std::sort(ng.support.begin(), ng.support.end());
          next.layers[li].czs.push_back(std::move(ng));
        }
      }
      for (int q : prev.inputs) {
        const int hq = shift(q, 0, off, prev.layout);
        if (q == level.target)
          next.ancilla.push_back({hq, AncillaState::zero});  // block accumulator
        else
          next.inputs.push_back(hq);
      }
      for (const AncillaInit &a : prev.ancilla)
        next.ancilla.push_back({shift(a.qubit, 0, off, prev.layout), a.init});
    }

    // Copy layer: block accumulators drop to the fresh row through the
    // restored |1> rows beneath each block target.
    const int copy_row = pw;
    const int t_row = prev.layout.row_of(level.target);
    const int t_col = prev.layout.col_of(level.target);
    std::vector<int> pinned_host;
    {
      // X then leading H on each destination collapse to one single.
      Layer fixed, trailing;
      for (int blk = 0; blk < m; ++blk) {
        const int col = blk * pl + t_col;
        const int dest = lat.at(copy_row, col);
        pinned_host.push_back(col);
        fixed.singles.push_back({dest, Mat2::h() * Mat2::x()});
        MultiCZGate g;
        for (int r = t_row; r <= copy_row; ++r) g.support.push_back(lat.at(r, col));
        fixed.czs.push_back(std::move(g));
        trailing.singles.push_back({dest, Mat2::h()});
      }
      next.layers.push_back(std::move(fixed));
      next.layers.push_back(std::move(trailing));
    }

    // Final stage: the base, rows shifted under the copy row, CZ supports
    // stretched over the |1> filler cells between accumulator columns.
    Circuit stage = bc;
    std::vector<int> stage_inputs = base.data_inputs;
    int stage_target = base.target;
    std::vector<int> input_cols;
    for (int q : stage_inputs) input_cols.push_back(bc.layout.col_of(q));
    std::sort(input_cols.begin(), input_cols.end());
    SigmaMap sigma;
    if (!build_sigma(input_cols, pinned_host, bl, lat.cols, &sigma)) {
      stage = mirror_columns(bc);
      stage_inputs.clear();
      for (int q : base.data_inputs)
        stage_inputs.push_back(stage.layout.at(0, bl - 1 - bc.layout.col_of(q)));
      stage_target = stage.layout.at(0, bl - 1 - bc.layout.col_of(base.target));
      input_cols.clear();
      for (int q : stage_inputs) input_cols.push_back(stage.layout.col_of(q));
      std::sort(input_cols.begin(), input_cols.end());
      if (!build_sigma(input_cols, pinned_host, bl, lat.cols, &sigma))
        throw Error("parity_recursive_2d: cannot place the final stage");
    }
    auto map_stage = [&](int id) {
      return lat.at(copy_row + stage.layout.row_of(id), sigma.host_col[stage.layout.col_of(id)]);
    };
    for (const Layer &l : stage.layers) {
      Layer nl;
      for (const SingleQubitGate &g : l.singles)
        nl.singles.push_back({map_stage(g.target), g.u});
      for (const MultiCZGate &g : l.czs) {
        // Same row: take the full host interval. Same column: rows shift.
        const int r0 = stage.layout.row_of(g.support.front());
        bool same_row = true;
        for (int q : g.support) same_row &= stage.layout.row_of(q) == r0;
        MultiCZGate ng;
        if (same_row && g.support.size() > 1) {
          const int c_lo = sigma.host_col[stage.layout.col_of(g.support.front())];
          const int c_hi = sigma.host_col[stage.layout.col_of(g.support.back())];
          for (int c = c_lo; c <= c_hi; ++c)
            ng.support.push_back(lat.at(copy_row + r0, c));
        } else {
          for (int q : g.support) ng.support.push_back(map_stage(q));
          std::sort(ng.support.begin(), ng.support.end());
        }
        nl.czs.push_back(std::move(ng));
      }
      next.layers.push_back(std::move(nl));
    }

    // Interface and remaining ancilla: the final target is the new target,
    // accumulator cells were declared above, fillers and the stage's own
    // rows start in |1> (or as the base declares).
    std::vector<bool> declared(lat.qubit_count(), false);
    for (int q : next.inputs) declared[q] = true;
    for (const AncillaInit &a : next.ancilla) declared[a.qubit] = true;
    const int host_target = map_stage(stage_target);
    for (const AncillaInit &a : stage.ancilla) {
      const int hq = map_stage(a.qubit);
      if (!declared[hq]) {
        next.ancilla.push_back({hq, a.init});
        declared[hq] = true;
      }
    }
    declared[host_target] = true;  // interface, declared below
    for (int r = copy_row; r < lat.rows; ++r) {
      for (int c = 0; c < lat.cols; ++c) {
        const int q = lat.at(r, c);
        if (!declared[q]) next.ancilla.push_back({q, AncillaState::one});
      }
    }
    next.inputs.push_back(host_target);

    ParityCircuit np;
    np.circuit = std::move(next);
    np.target = host_target;
    np.data_inputs.assign(np.circuit.inputs.begin(), np.circuit.inputs.end() - 1);
    level = std::move(np);
  }

  level.depth_constant = level.circuit.depth() /
                         std::max(1.0, std::log2(static_cast<double>(n)));
  return level;
}

AmplitudeCalibration amplitude_calibration(double p, cplx a, cplx b) {
  if (!(p > 0.5)) throw Error("amplitude_calibration: p must exceed 1/2");
  if (p > 1.0) throw Error("amplitude_calibration: p must be at most 1");
  const double floor_amp = std::sqrt(2 * p) - 1.0;
  if (std::abs(a) + 1e-12 < floor_amp || std::abs(b) + 1e-12 < floor_amp)
    throw Error("amplitude_calibration: amplitude bounds violated");

  AmplitudeCalibration cal;
  cal.p = p;
  cal.a = a;
  cal.b = b;
  cal.k = static_cast<int>(std::ceil(std::sqrt(2.0) / (4.0 * kPi * floor_amp)));
  cal.k = std::max(cal.k, 1);
  cal.theta = kPi / (4.0 * cal.k + 2.0);
  const double s = std::sin(cal.theta);
  cal.alpha = s / a;
  cal.beta = s / b;
  if (std::norm(cal.alpha) + std::norm(cal.beta) > 1.0 + 1e-12)
    throw Error("amplitude_calibration: infeasible, |alpha|^2 + |beta|^2 > 1");
  return cal;
}

namespace {

/// Any unitary whose first column is (c0, c1), with |c0|^2 + |c1|^2 = 1.
Mat2 unitary_from_column(cplx c0, cplx c1) {
  Mat2 u;
  u.m[0] = c0;
  u.m[2] = c1;
  u.m[1] = -std::conj(c1);
  u.m[3] = std::conj(c0);
  return u;
}

/// ZYZ angles: u = e^{i delta} Rz(phi1) Ry(phi2) Rz(phi3).
void zyz_decompose(const Mat2 &u, double *delta, double *phi1, double *phi2,
                   double *phi3) {
  const cplx det = u.m[0] * u.m[3] - u.m[1] * u.m[2];
  *delta = 0.5 * std::arg(det);
  const cplx u00 = u.m[0] * std::exp(cplx(0, -*delta));
  const cplx u10 = u.m[2] * std::exp(cplx(0, -*delta));
  *phi2 = 2.0 * std::atan2(std::abs(u10), std::abs(u00));
  double a1, a2;
  if (std::abs(u00) > 1e-12 && std::abs(u10) > 1e-12) {
    a1 = std::arg(u00);
    a2 = std::arg(u10);
  } else if (std::abs(u00) > 1e-12) {
    a1 = std::arg(u00);
    a2 = 0.0;
  } else {
    a1 = 0.0;
    a2 = std::arg(u10);
  }
  *phi1 = a2 - a1;
  *phi3 = -a1 - a2;
}

Mat2 rz_phase(double phi) {
  // diag(1, e^{i phi})
  Mat2 r;
  r.m[3] = std::exp(cplx(0, phi));
  return r;
}

/// Emits controlled-U(control -> target) as singles + two CNOTs.
void emit_controlled_unitary(CircuitBuilder &b, int control, int target,
                             const Mat2 &u) {
  double delta, phi1, phi2, phi3;
  zyz_decompose(u, &delta, &phi1, &phi2, &phi3);
  const Mat2 c_part = Mat2::rz((phi3 - phi1) / 2);
  const Mat2 b_part = Mat2::ry(-phi2 / 2) * Mat2::rz(-(phi1 + phi3) / 2);
  const Mat2 a_part = Mat2::rz(phi1) * Mat2::ry(phi2 / 2);
  b.single(target, c_part);
  b.cnot(control, target);
  b.single(target, b_part);
  b.cnot(control, target);
  b.single(target, a_part);
  b.single(control, rz_phase(delta));
}

}  // namespace

Circuit toy_c1(int n, int num_ancilla, double amp0, double amp1) {
  if (n < 2) throw Error("toy_c1: n must be >= 2");
  const double rest2 = 1.0 - amp0 * amp0;
  if (amp0 <= 0 || amp1 <= 0 || amp1 * amp1 > rest2 + 1e-12)
    throw Error("toy_c1: amplitudes out of range");
  const double s = std::sqrt(std::max(rest2, 0.0));
  const double c_amp = std::sqrt(std::max(rest2 - amp1 * amp1, 0.0));

  CircuitBuilder b(Layout::all_to_all(n + num_ancilla));
  b.single(0, unitary_from_column(amp0, s));
  emit_controlled_unitary(b, 0, 1, unitary_from_column(c_amp / s, amp1 / s));
  std::vector<std::pair<int, int>> copies;
  for (int q = 2; q < n; ++q) copies.push_back({1, q});
  if (!copies.empty()) b.cnot_group(copies);
  return b.finish();
}

C2Result build_c2(const Circuit &c1, int n_main, const AmplitudeCalibration &cal) {
  const int total = c1.qubit_count();
  if (n_main < 1 || n_main > total) throw Error("build_c2: bad main register size");
  if (c1.layout.kind != LayoutKind::all_to_all)
    throw Error("build_c2: c1 must be all_to_all");

  // Extract a, b from the simulated c1 output and check them against the
  // calibration; the residual branch must avoid the control patterns.
  StateVector s = run(c1, std::vector<int>(c1.inputs.size(), 0));
  const uint64_t ones_main = (uint64_t{1} << n_main) - 1;
  const cplx got_a = s.amps[0];
  const cplx got_b = s.amps[ones_main];
  if (std::abs(got_a - cal.a) > 1e-8 || std::abs(got_b - cal.b) > 1e-8)
    throw Error("build_c2: amplitude extraction mismatch beyond 1e-8");
  for (uint64_t idx = 0; idx < s.size(); ++idx) {
    const uint64_t main_bits = idx & ones_main;
    if ((main_bits == 0 || main_bits == ones_main) && idx != 0 && idx != ones_main &&
        std::abs(s.amps[idx]) > 1e-10)
      throw Error("build_c2: residual branch collides with a control pattern");
  }

  const int qa = total, qb = total + 1, flag = total + 2;
  CircuitBuilder b(Layout::all_to_all(total + 3));

  // Q: |00> -> alpha|00> + gamma|01> + beta|11> on (qa, qb).
  const double gamma2 =
      std::max(0.0, 1.0 - std::norm(cal.alpha) - std::norm(cal.beta));
  const double s1 = std::sqrt(std::norm(cal.beta) + gamma2);
  b.single(qb, unitary_from_column(cal.alpha, s1));
  if (s1 > 1e-15)
    emit_controlled_unitary(b, qb, qa,
                            unitary_from_column(std::sqrt(gamma2) / s1, cal.beta / s1));
  b.single(flag, Mat2::x());
  b.barrier();

  Circuit head = b.finish();
  Circuit body = c1;
  body.layout = head.layout;
  Circuit merged = head;
  merged.layers.insert(merged.layers.end(), body.layers.begin(), body.layers.end());

  CircuitBuilder tail(head.layout);
  std::vector<int> controls;
  for (int q = 0; q < n_main; ++q) controls.push_back(q);
  controls.push_back(qa);
  controls.push_back(qb);
  tail.toffoli(controls, flag);
  tail.barrier();
  for (int q : controls) tail.single(q, Mat2::x());
  tail.toffoli(controls, flag);
  for (int q : controls) tail.single(q, Mat2::x());
  Circuit tail_c = tail.finish();
  merged.layers.insert(merged.layers.end(), tail_c.layers.begin(), tail_c.layers.end());

  C2Result res;
  res.circuit = std::move(merged);
  res.flag_qubit = flag;
  res.pair_a = qa;
  res.pair_b = qb;
  res.sin_theta = std::sin(cal.theta);
  return res;
}

CounterexamplePair erasure_counterexample(int k, double delta) {
  if (k < 1 || k > 6) throw Error("erasure_counterexample: k must be in [1, 6]");
  if (!(delta > 0.0 && delta < 1.0))
    throw Error("erasure_counterexample: delta must lie in (0, 1)");
  const int n = 2 * k;
  const Layout lat = Layout::lattice(2, n);
  CircuitBuilder b(lat);
  for (int c = 0; c < n; ++c) b.input(lat.at(0, c));
  for (int c = 0; c < n; ++c) b.set_ancilla(lat.at(1, c), AncillaState::zero);

  const double theta = 2.0 * std::asin(std::sqrt(delta));
  for (int j = 0; j < k; ++j) b.single(lat.at(1, 2 * j), Mat2::ry(theta));
  std::vector<std::pair<int, int>> pair_copies;
  for (int j = 0; j < k; ++j)
    pair_copies.push_back({lat.at(1, 2 * j), lat.at(1, 2 * j + 1)});
  b.cnot_group(pair_copies);
  b.barrier();
  Layer couple;
  for (int c = 0; c < n; ++c)
    couple.czs.push_back({{lat.at(0, c), lat.at(1, c)}});
  Circuit base = b.finish();
  base.layers.push_back(std::move(couple));

  CounterexamplePair out;
  out.without_cz = base;
  Layer big;
  MultiCZGate row;
  for (int c = 0; c < n; ++c) row.support.push_back(lat.at(1, c));
  big.czs.push_back(std::move(row));
  out.with_cz = with_layer(base, big);
  out.spec.k = k;
  out.spec.delta = delta;
  const double dk = std::pow(delta, k);
  out.spec.predicted_error = 4.0 * std::sqrt(dk * (1.0 - dk));
  for (int c = 0; c < n; ++c) out.ancilla_row.push_back(lat.at(1, c));
  return out;
}

}  // namespace qlat
