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

#include "qlat/compiler.hpp"

#include <algorithm>

namespace qlat {

std::vector<Layer> long_range_cnot_gadget(const Layout &lattice, int col,
                                          int from_row, int to_row) {
  if (lattice.kind != LayoutKind::lattice)
    throw Error("long_range_cnot_gadget: lattice layout required");
  if (from_row == to_row) throw Error("long_range_cnot_gadget: rows equal");
  const int lo = std::min(from_row, to_row), hi = std::max(from_row, to_row);
  const int target = lattice.at(to_row, col);
  MultiCZGate g;
  for (int r = lo; r <= hi; ++r) g.support.push_back(lattice.at(r, col));
  Layer first;
  first.singles.push_back({target, Mat2::h()});
  first.czs.push_back(std::move(g));
  Layer second;
  second.singles.push_back({target, Mat2::h()});
  return {first, second};
}

namespace {

struct Assigned {
  MultiCZGate gate;
  int row;
};

std::vector<Assigned> assign_rows(const Layer &layer) {
  std::vector<Assigned> out;
  for (const MultiCZGate &g : layer.czs) out.push_back({g, 0});
  std::sort(out.begin(), out.end(), [](const Assigned &a, const Assigned &b) {
    return a.gate.support.front() < b.gate.support.front();
  });
  for (size_t i = 0; i < out.size(); ++i) out[i].row = static_cast<int>(i) + 1;
  return out;
}

}  // namespace

std::vector<Layer> embed_layer_2d(const Layer &layer, int n) {
  if (static_cast<int>(layer.czs.size()) > n)
    throw Error("embed_layer_2d: more gates than rows available");
  const Layout lat = Layout::lattice(n + 1, n);
  CircuitBuilder b(lat);
  for (const SingleQubitGate &g : layer.singles) b.single(lat.at(0, g.target), g.u);
  if (layer.czs.empty()) return b.finish().layers;

  const std::vector<Assigned> assigned = assign_rows(layer);

  // One swap per (gate, support column): column x of row 0 trades places
  // with column x of the gate's row, as 3 corridor CNOTs.
  auto corridor = [&](int col, int row, bool target_below) {
    CircuitBuilder::CorridorCnot g;
    for (int r = 0; r <= row; ++r) g.support.push_back(lat.at(r, col));
    g.target = target_below ? lat.at(row, col) : lat.at(0, col);
    return g;
  };
  auto emit_swaps = [&]() {
    for (int step = 0; step < 3; ++step) {
      std::vector<CircuitBuilder::CorridorCnot> group;
      for (const Assigned &a : assigned)
        for (int col : a.gate.support)
          group.push_back(corridor(col, a.row, step != 1));
      b.corridor_group(group);
    }
  };

  emit_swaps();
  for (const Assigned &a : assigned) {
    std::vector<int> support;
    const int lo = a.gate.support.front(), hi = a.gate.support.back();
    for (int col = lo; col <= hi; ++col) support.push_back(lat.at(a.row, col));
    b.cz(std::move(support));
  }
  emit_swaps();
  return b.finish().layers;
}

Circuit embed_circuit_2d(const Circuit &c) {
  if (c.layout.kind != LayoutKind::all_to_all)
    throw Error("embed_circuit_2d: expected all_to_all");
  const int n = c.layout.qubit_count();
  Circuit out;
  out.layout = Layout::lattice(n + 1, n);
  out.inputs = c.inputs;  // row 0 keeps the original ids
  out.ancilla = c.ancilla;
  for (int q = n; q < out.layout.qubit_count(); ++q)
    out.ancilla.push_back({q, AncillaState::one});
  for (const Layer &l : c.layers) {
    std::vector<Layer> pack = embed_layer_2d(l, n);
    out.layers.insert(out.layers.end(), pack.begin(), pack.end());
  }
  return out;
}

}  // namespace qlat
