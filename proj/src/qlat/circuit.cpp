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

#include "qlat/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qlat {

namespace {
constexpr double kUnitarityTol = 1e-10;

std::string join_ints(const std::vector<int> &v) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "}";
  return os.str();
}
}  // namespace

Mat2 Mat2::dagger() const {
  Mat2 r;
  r.m[0] = std::conj(m[0]);
  r.m[1] = std::conj(m[2]);
  r.m[2] = std::conj(m[1]);
  r.m[3] = std::conj(m[3]);
  return r;
}

Mat2 Mat2::operator*(const Mat2 &rhs) const {
  Mat2 r;
  r.m[0] = m[0] * rhs.m[0] + m[1] * rhs.m[2];
  r.m[1] = m[0] * rhs.m[1] + m[1] * rhs.m[3];
  r.m[2] = m[2] * rhs.m[0] + m[3] * rhs.m[2];
  r.m[3] = m[2] * rhs.m[1] + m[3] * rhs.m[3];
  return r;
}

double Mat2::unitarity_defect() const {
  Mat2 p = dagger() * (*this);
  p.m[0] -= 1.0;
  p.m[3] -= 1.0;
  double worst = 0.0;
  for (const cplx &e : p.m) worst = std::max(worst, std::abs(e));
  return worst;
}

bool Mat2::approx_equal(const Mat2 &rhs, double tol) const {
  for (int i = 0; i < 4; ++i)
    if (std::abs(m[i] - rhs.m[i]) > tol) return false;
  return true;
}

Mat2 Mat2::identity() { return Mat2{}; }

Mat2 Mat2::x() {
  Mat2 r;
  r.m[0] = 0.0;
  r.m[1] = 1.0;
  r.m[2] = 1.0;
  r.m[3] = 0.0;
  return r;
}

Mat2 Mat2::z() {
  Mat2 r;
  r.m[3] = -1.0;
  return r;
}

Mat2 Mat2::h() {
  const double s = 1.0 / std::sqrt(2.0);
  Mat2 r;
  r.m[0] = s;
  r.m[1] = s;
  r.m[2] = s;
  r.m[3] = -s;
  return r;
}

Mat2 Mat2::ry(double theta) {
  Mat2 r;
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  r.m[0] = c;
  r.m[1] = -s;
  r.m[2] = s;
  r.m[3] = c;
  return r;
}

Mat2 Mat2::rz(double theta) {
  Mat2 r;
  r.m[0] = std::exp(cplx(0, -theta / 2));
  r.m[3] = std::exp(cplx(0, theta / 2));
  return r;
}

Layout Layout::all_to_all(int n) {
  if (n < 1) throw Error("layout: n must be >= 1");
  return Layout{LayoutKind::all_to_all, n, 1};
}

Layout Layout::line(int n) {
  if (n < 1) throw Error("layout: n must be >= 1");
  return Layout{LayoutKind::line, n, 1};
}

Layout Layout::lattice(int rows, int cols) {
  if (rows < 1 || cols < 1) throw Error("layout: lattice needs rows,cols >= 1");
  return Layout{LayoutKind::lattice, cols, rows};
}

std::string to_string(LayoutKind k) {
  switch (k) {
    case LayoutKind::all_to_all: return "all_to_all";
    case LayoutKind::line: return "line";
    case LayoutKind::lattice: return "lattice";
  }
  return "?";
}

int Circuit::depth() const {
  int d = 0;
  for (const Layer &l : layers)
    if (!l.czs.empty()) ++d;
  return d;
}

int Circuit::ancilla_bit(int qubit) const {
  for (const AncillaInit &a : ancilla)
    if (a.qubit == qubit) return a.init == AncillaState::one ? 1 : 0;
  return 0;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const Violation &v : violations) {
    os << "layer " << v.layer << " " << v.where << ": " << v.message << "\n";
  }
  return os.str();
}

bool support_is_local(const Layout &layout, const std::vector<int> &support,
                      std::string *why) {
  auto fail = [&](const std::string &msg) {
    if (why) *why = msg;
    return false;
  };
  if (support.empty()) return fail("empty support");
  if (!std::is_sorted(support.begin(), support.end()))
    return fail("support not sorted");
  if (std::adjacent_find(support.begin(), support.end()) != support.end())
    return fail("support has repeated qubits");
  for (int q : support)
    if (!layout.contains(q)) return fail("qubit id out of range");

  switch (layout.kind) {
    case LayoutKind::all_to_all:
      return true;
    case LayoutKind::line: {
      int span = support.back() - support.front() + 1;
      if (span != static_cast<int>(support.size()))
        return fail("non-contiguous support on line");
      return true;
    }
    case LayoutKind::lattice: {
      const int r0 = layout.row_of(support.front());
      const int c0 = layout.col_of(support.front());
      bool same_row = true, same_col = true;
      for (int q : support) {
        same_row &= layout.row_of(q) == r0;
        same_col &= layout.col_of(q) == c0;
      }
      if (same_row) {
        int span = layout.col_of(support.back()) - c0 + 1;
        if (span != static_cast<int>(support.size()))
          return fail("non-contiguous support within row");
        return true;
      }
      if (same_col) {
        int span = layout.row_of(support.back()) - r0 + 1;
        if (span != static_cast<int>(support.size()))
          return fail("non-contiguous support within column");
        return true;
      }
      return fail("support spans neither a single row nor a single column");
    }
  }
  return fail("unknown layout");
}

ValidationReport validate(const Circuit &c) {
  ValidationReport rep;
  auto add = [&](int layer, std::string where, std::string msg) {
    rep.violations.push_back({layer, std::move(where), std::move(msg)});
  };

  if (c.layout.qubit_count() < 1) add(-1, "layout", "no qubits");

  std::set<int> input_set(c.inputs.begin(), c.inputs.end());
  if (input_set.size() != c.inputs.size())
    add(-1, "inputs", "repeated input qubit");
  for (int q : c.inputs)
    if (!c.layout.contains(q)) add(-1, "inputs", "input qubit out of range");
  std::set<int> anc_set;
  for (const AncillaInit &a : c.ancilla) {
    if (!c.layout.contains(a.qubit))
      add(-1, "ancilla", "ancilla qubit out of range");
    if (!anc_set.insert(a.qubit).second)
      add(-1, "ancilla", "repeated ancilla qubit");
    if (input_set.count(a.qubit))
      add(-1, "ancilla", "qubit declared both input and ancilla");
  }

  for (size_t li = 0; li < c.layers.size(); ++li) {
    const Layer &l = c.layers[li];
    std::set<int> singles_seen;
    for (const SingleQubitGate &g : l.singles) {
      if (!c.layout.contains(g.target))
        add(static_cast<int>(li), "single", "target out of range");
      else if (!singles_seen.insert(g.target).second)
        add(static_cast<int>(li), "single",
            "two single-qubit gates on qubit " + std::to_string(g.target));
      if (g.u.unitarity_defect() > kUnitarityTol)
        add(static_cast<int>(li), "single",
            "matrix on qubit " + std::to_string(g.target) + " is not unitary");
    }
    std::set<int> cz_seen;
    for (const MultiCZGate &g : l.czs) {
      std::string why;
      if (!support_is_local(c.layout, g.support, &why)) {
        add(static_cast<int>(li), "cz " + join_ints(g.support), why);
        continue;
      }
      for (int q : g.support) {
        if (!cz_seen.insert(q).second)
          add(static_cast<int>(li), "cz " + join_ints(g.support),
              "qubit " + std::to_string(q) + " appears in two cz supports");
      }
    }
  }
  return rep;
}

std::vector<Layer> lower_toffoli(const GeneralizedToffoli &g) {
  std::vector<int> support = g.controls;
  support.push_back(g.target);
  std::sort(support.begin(), support.end());
  if (std::adjacent_find(support.begin(), support.end()) != support.end())
    throw Error("toffoli: target collides with a control");

  Layer first;
  first.singles.push_back({g.target, Mat2::h()});
  first.czs.push_back({std::move(support)});
  Layer second;
  second.singles.push_back({g.target, Mat2::h()});
  return {first, second};
}

ToffoliView raise_cz(const MultiCZGate &g) {
  if (g.support.empty()) throw Error("cz: empty support");
  ToffoliView v;
  v.pre = Mat2::h();
  v.post = Mat2::h();
  v.gate.target = g.support.back();
  v.gate.controls.assign(g.support.begin(), g.support.end() - 1);
  return v;
}

Circuit compose(const Circuit &a, const Circuit &b) {
  if (!(a.layout == b.layout))
    throw Error("compose: layout mismatch");
  Circuit r = a;
  r.layers.insert(r.layers.end(), b.layers.begin(), b.layers.end());
  return r;
}

namespace {
// Op-level view used by inverse: a circuit is a sequence of singles-groups
// and cz-groups; a layer contributes its singles group then its cz group.
struct OpGroup {
  bool is_singles;
  std::vector<SingleQubitGate> singles;
  std::vector<MultiCZGate> czs;
};

std::vector<Layer> regroup(const std::vector<OpGroup> &ops) {
  // Greedy left-to-right: a layer is an optional singles group followed by
  // an optional cz group.
  std::vector<Layer> layers;
  size_t i = 0;
  while (i < ops.size()) {
    Layer l;
    if (ops[i].is_singles) {
      l.singles = ops[i].singles;
      ++i;
    }
    if (i < ops.size() && !ops[i].is_singles) {
      l.czs = ops[i].czs;
      ++i;
    }
    layers.push_back(std::move(l));
  }
  return layers;
}
}  // namespace

Circuit inverse(const Circuit &c) {
  std::vector<OpGroup> ops;
  for (const Layer &l : c.layers) {
    if (!l.singles.empty()) ops.push_back({true, l.singles, {}});
    if (!l.czs.empty()) ops.push_back({false, {}, l.czs});
  }
  std::reverse(ops.begin(), ops.end());
  for (OpGroup &g : ops) {
    if (g.is_singles)
      for (SingleQubitGate &s : g.singles) s.u = s.u.dagger();
  }
  Circuit r = c;
  r.layers = regroup(ops);
  return r;
}

Circuit as_lattice_row(const Circuit &c) {
  if (c.layout.kind != LayoutKind::line)
    throw Error("as_lattice_row: expected line layout");
  Circuit r = c;
  r.layout = Layout::lattice(1, c.layout.cols);
  return r;
}

Circuit as_all_to_all(const Circuit &c) {
  Circuit r = c;
  r.layout = Layout::all_to_all(c.layout.qubit_count());
  return r;
}

Circuit with_layer(const Circuit &c, const Layer &l) {
  Circuit r = c;
  r.layers.push_back(l);
  return r;
}

bool structurally_equal(const Circuit &a, const Circuit &b, double tol) {
  if (!(a.layout == b.layout) || a.inputs != b.inputs) return false;
  if (a.ancilla.size() != b.ancilla.size()) return false;
  for (size_t i = 0; i < a.ancilla.size(); ++i)
    if (a.ancilla[i].qubit != b.ancilla[i].qubit ||
        a.ancilla[i].init != b.ancilla[i].init)
      return false;
  if (a.layers.size() != b.layers.size()) return false;
  for (size_t i = 0; i < a.layers.size(); ++i) {
    const Layer &la = a.layers[i], &lb = b.layers[i];
    if (la.singles.size() != lb.singles.size() || la.czs.size() != lb.czs.size())
      return false;
    for (size_t j = 0; j < la.singles.size(); ++j) {
      if (la.singles[j].target != lb.singles[j].target) return false;
      if (!la.singles[j].u.approx_equal(lb.singles[j].u, tol)) return false;
    }
    for (size_t j = 0; j < la.czs.size(); ++j)
      if (la.czs[j].support != lb.czs[j].support) return false;
  }
  return true;
}

CircuitBuilder::CircuitBuilder(Layout layout) : layout_(layout) {}

void CircuitBuilder::flush() {
  if (!pending_.empty()) {
    done_.push_back(std::move(pending_));
    pending_ = Layer{};
  }
}

bool CircuitBuilder::overlaps_pending_cz(const std::vector<int> &support) const {
  for (const MultiCZGate &g : pending_.czs)
    for (int q : g.support)
      if (std::find(support.begin(), support.end(), q) != support.end())
        return true;
  return false;
}

CircuitBuilder &CircuitBuilder::single(int qubit, const Mat2 &u) {
  if (!pending_.czs.empty()) flush();
  for (SingleQubitGate &g : pending_.singles) {
    if (g.target == qubit) {
      g.u = u * g.u;  // compose: existing gate acts first
      return *this;
    }
  }
  pending_.singles.push_back({qubit, u});
  return *this;
}

CircuitBuilder &CircuitBuilder::cz(std::vector<int> support) {
  std::sort(support.begin(), support.end());
  if (overlaps_pending_cz(support)) flush();
  // A single on a support qubit already pending is fine: singles run first.
  pending_.czs.push_back({std::move(support)});
  return *this;
}

CircuitBuilder &CircuitBuilder::cnot(int control, int target) {
  single(target, Mat2::h());
  cz({control, target});
  single(target, Mat2::h());
  return *this;
}

CircuitBuilder &CircuitBuilder::toffoli(std::vector<int> controls, int target) {
  single(target, Mat2::h());
  controls.push_back(target);
  cz(std::move(controls));
  single(target, Mat2::h());
  return *this;
}

CircuitBuilder &CircuitBuilder::corridor_cnot(std::vector<int> support,
                                              int target) {
  single(target, Mat2::h());
  cz(std::move(support));
  single(target, Mat2::h());
  return *this;
}

CircuitBuilder &CircuitBuilder::corridor_group(
    const std::vector<CorridorCnot> &gates) {
  for (const CorridorCnot &g : gates) single(g.target, Mat2::h());
  for (const CorridorCnot &g : gates) cz(g.support);
  for (const CorridorCnot &g : gates) single(g.target, Mat2::h());
  return *this;
}

CircuitBuilder &CircuitBuilder::cnot_group(
    const std::vector<std::pair<int, int>> &pairs) {
  std::vector<CorridorCnot> gates;
  gates.reserve(pairs.size());
  for (auto [c, t] : pairs) gates.push_back({{c, t}, t});
  return corridor_group(gates);
}

CircuitBuilder &CircuitBuilder::barrier() {
  flush();
  return *this;
}

CircuitBuilder &CircuitBuilder::input(int qubit) {
  inputs_.push_back(qubit);
  return *this;
}

CircuitBuilder &CircuitBuilder::set_ancilla(int qubit, AncillaState s) {
  ancilla_.push_back({qubit, s});
  return *this;
}

Circuit CircuitBuilder::finish() {
  flush();
  Circuit c;
  c.layout = layout_;
  c.inputs = inputs_;
  c.ancilla = ancilla_;
  c.layers = std::move(done_);
  return c;
}

}  // namespace qlat
