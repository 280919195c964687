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

#include "qlat/lightcone.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "qlat/density.hpp"

namespace qlat {

namespace {

std::vector<int> grow_through_layers(const Circuit &c, int qubit, int first,
                                     int last, int step) {
  std::vector<char> in(c.qubit_count(), 0);
  in[qubit] = 1;
  for (int li = first; li != last; li += step) {
    for (const MultiCZGate &g : c.layers[li].czs) {
      bool touches = false;
      for (int q : g.support)
        if (in[q]) {
          touches = true;
          break;
        }
      if (touches)
        for (int q : g.support) in[q] = 1;
    }
  }
  std::vector<int> members;
  for (int q = 0; q < c.qubit_count(); ++q)
    if (in[q]) members.push_back(q);
  return members;
}

void assert_line_interval(const Circuit &c, const std::vector<int> &members) {
  if (c.layout.kind != LayoutKind::line) return;
  if (members.back() - members.front() + 1 != static_cast<int>(members.size()))
    throw Error("lightcone: line cone is not an interval");
}

bool sets_intersect(const std::vector<int> &a, const std::vector<int> &b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return false;
}

bool subset_of(const std::vector<int> &a, const std::vector<int> &b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

LightCone forward_lightcone(const Circuit &c, int qubit, int upto_layer) {
  if (!c.layout.contains(qubit)) throw Error("lightcone: qubit out of range");
  const int last = upto_layer < 0 ? static_cast<int>(c.layers.size())
                                  : std::min<int>(upto_layer, c.layers.size());
  LightCone cone;
  cone.origin = qubit;
  cone.direction = ConeDirection::forward;
  cone.members = grow_through_layers(c, qubit, 0, last, 1);
  assert_line_interval(c, cone.members);
  return cone;
}

LightCone backward_lightcone(const Circuit &c, int qubit) {
  if (!c.layout.contains(qubit)) throw Error("lightcone: qubit out of range");
  LightCone cone;
  cone.origin = qubit;
  cone.direction = ConeDirection::backward;
  cone.members = grow_through_layers(c, qubit, static_cast<int>(c.layers.size()) - 1, -1, -1);
  assert_line_interval(c, cone.members);
  return cone;
}

std::vector<std::vector<int>> forward_cones(const Circuit &c,
                                            const std::vector<int> &subset,
                                            int upto_layer) {
  std::vector<std::vector<int>> cones;
  cones.reserve(subset.size());
  for (int q : subset)
    cones.push_back(forward_lightcone(c, q, upto_layer).members);
  return cones;
}

int gate_weight(const Circuit &c, int layer_index, const MultiCZGate &gate,
                const std::vector<int> &subset) {
  bool found = false;
  if (layer_index < 0 || layer_index >= static_cast<int>(c.layers.size()))
    throw Error("gate_weight: layer out of range");
  for (const MultiCZGate &g : c.layers[layer_index].czs)
    if (g.support == gate.support) found = true;
  if (!found) throw Error("gate_weight: gate not found in layer");
  int w = 0;
  for (const std::vector<int> &cone : forward_cones(c, subset, layer_index))
    if (sets_intersect(cone, gate.support)) ++w;
  return w;
}

SeparabilityCertificate check_separable(const Circuit &c,
                                        const std::vector<int> &subset) {
  SeparabilityCertificate cert;
  cert.subset = subset;
  for (int q : subset) cert.cones.push_back(forward_lightcone(c, q));
  cert.separable = true;
  for (size_t i = 0; i < subset.size() && cert.separable; ++i)
    for (size_t j = i + 1; j < subset.size(); ++j)
      if (sets_intersect(cert.cones[i].members, cert.cones[j].members)) {
        cert.separable = false;
        cert.witness = {subset[i], subset[j]};
        break;
      }
  return cert;
}

std::vector<int> independent_set_deg2(int num_vertices,
                                      const std::vector<std::pair<int, int>> &edges) {
  std::vector<std::vector<int>> adj(num_vertices);
  for (auto [a, b] : edges) {
    if (a == b) throw Error("independent_set_deg2: self loop");
    if (std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end()) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (int v = 0; v < num_vertices; ++v)
    if (adj[v].size() > 2) throw Error("independent_set_deg2: degree exceeds 2");

  std::vector<char> seen(num_vertices, 0);
  std::vector<int> keep;
  for (int v = 0; v < num_vertices; ++v) {
    if (seen[v] || adj[v].size() == 2) continue;  // start only from endpoints
    // Walk the path from its endpoint, keeping alternate vertices. Each
    // component is scanned from its lowest-id endpoint because v ascends.
    int prev = -1, cur = v;
    bool take = true;
    while (cur != -1) {
      if (seen[cur]) throw Error("independent_set_deg2: cycle detected");
      seen[cur] = 1;
      if (take) keep.push_back(cur);
      take = !take;
      int next = -1;
      for (int u : adj[cur])
        if (u != prev) next = u;
      prev = cur;
      cur = next;
    }
  }
  for (int v = 0; v < num_vertices; ++v)
    if (!seen[v]) throw Error("independent_set_deg2: cycle detected");
  std::sort(keep.begin(), keep.end());
  return keep;
}

namespace {

struct GateHits {
  // Per gate of the layer: indices into `subset` whose cones meet it.
  std::vector<std::vector<int>> hit;
  std::vector<std::vector<int>> covered;  // cones fully inside the gate
};

GateHits collect_hits(const std::vector<std::vector<int>> &cones,
                      const std::vector<MultiCZGate> &gates) {
  GateHits h;
  h.hit.resize(gates.size());
  h.covered.resize(gates.size());
  for (size_t gi = 0; gi < gates.size(); ++gi) {
    std::vector<int> sorted = gates[gi].support;
    for (size_t ci = 0; ci < cones.size(); ++ci) {
      if (!sets_intersect(cones[ci], sorted)) continue;
      h.hit[gi].push_back(static_cast<int>(ci));
      if (subset_of(cones[ci], sorted)) h.covered[gi].push_back(static_cast<int>(ci));
    }
  }
  return h;
}

/// Shared selection core: good gates keep one covered cone, boundary cones
/// go through the alternating independent set, untouched cones survive.
std::vector<int> select_from_hits(const std::vector<int> &subset,
                                  const GateHits &h, int s) {
  const size_t num_gates = h.hit.size();
  std::vector<char> in_a1(subset.size(), 0);
  std::vector<char> touched(subset.size(), 0);
  for (size_t gi = 0; gi < num_gates; ++gi) {
    for (int ci : h.hit[gi]) touched[ci] = 1;
    if (static_cast<int>(h.hit[gi].size()) > s)
      throw Error("structure_select: a gate meets more than s cones");
  }
  std::vector<char> good(num_gates, 0);
  for (size_t gi = 0; gi < num_gates; ++gi) good[gi] = !h.covered[gi].empty();
  for (size_t gi = 0; gi < num_gates; ++gi)
    if (good[gi])
      for (int ci : h.hit[gi]) in_a1[ci] = 1;

  std::vector<int> keep;
  for (size_t gi = 0; gi < num_gates; ++gi) {
    if (!good[gi]) continue;
    // Lowest-id fully covered survivor for this gate.
    int best = -1;
    for (int ci : h.covered[gi])
      if (best < 0 || subset[ci] < subset[best]) best = ci;
    keep.push_back(best);
  }

  // A2: touched but only by non-good gates. Conflict edges join cones
  // sharing a gate.
  std::vector<int> a2;
  std::vector<int> a2_index(subset.size(), -1);
  for (size_t ci = 0; ci < subset.size(); ++ci) {
    if (touched[ci] && !in_a1[ci]) {
      a2_index[ci] = static_cast<int>(a2.size());
      a2.push_back(static_cast<int>(ci));
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (size_t gi = 0; gi < num_gates; ++gi) {
    if (good[gi]) continue;
    for (size_t i = 0; i < h.hit[gi].size(); ++i)
      for (size_t j = i + 1; j < h.hit[gi].size(); ++j) {
        const int a = a2_index[h.hit[gi][i]], b = a2_index[h.hit[gi][j]];
        if (a >= 0 && b >= 0) edges.push_back({a, b});
      }
  }
  for (int local : independent_set_deg2(static_cast<int>(a2.size()), edges))
    keep.push_back(a2[local]);

  for (size_t ci = 0; ci < subset.size(); ++ci)
    if (!touched[ci]) keep.push_back(static_cast<int>(ci));

  std::vector<int> result;
  for (int ci : keep) result.push_back(subset[ci]);
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace

std::vector<int> structure_select_1d(const Circuit &c,
                                     const std::vector<int> &subset,
                                     const Layer &layer, int s) {
  if (s < 3) throw Error("structure_select_1d: s must be >= 3");
  SeparabilityCertificate cert = check_separable(c, subset);
  if (!cert.separable)
    throw Error("structure_select_1d: circuit is not separable on the subset");
  std::vector<std::vector<int>> cones;
  for (const LightCone &lc : cert.cones) cones.push_back(lc.members);
  GateHits h = collect_hits(cones, layer.czs);
  return select_from_hits(subset, h, s);
}

namespace {

/// Greedy independent set (min-degree first) for the width-2 row phase where
/// cones escaping into the other row can give the conflict graph degree
/// above 2.
std::vector<int> greedy_independent(int num_vertices,
                                    const std::vector<std::pair<int, int>> &edges) {
  std::vector<std::set<int>> adj(num_vertices);
  for (auto [a, b] : edges)
    if (a != b) {
      adj[a].insert(b);
      adj[b].insert(a);
    }
  std::vector<char> alive(num_vertices, 1), taken(num_vertices, 0);
  for (int step = 0; step < num_vertices; ++step) {
    int best = -1;
    size_t best_deg = 0;
    for (int v = 0; v < num_vertices; ++v) {
      if (!alive[v]) continue;
      size_t deg = 0;
      for (int u : adj[v])
        if (alive[u]) ++deg;
      if (best < 0 || deg < best_deg) {
        best = v;
        best_deg = deg;
      }
    }
    if (best < 0) break;
    taken[best] = 1;
    alive[best] = 0;
    for (int u : adj[best]) alive[u] = 0;
  }
  std::vector<int> keep;
  for (int v = 0; v < num_vertices; ++v)
    if (taken[v]) keep.push_back(v);
  return keep;
}

/// Two-coloring independent set for the column phase (each column gate links
/// at most two cones, and the intersection graph is bipartite on a strip).
std::vector<int> bipartite_independent(int num_vertices,
                                       const std::vector<std::pair<int, int>> &edges) {
  std::vector<std::vector<int>> adj(num_vertices);
  for (auto [a, b] : edges)
    if (a != b) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  std::vector<int> color(num_vertices, -1);
  std::vector<int> keep;
  for (int v = 0; v < num_vertices; ++v) {
    if (color[v] != -1) continue;
    std::vector<int> comp, stack = {v};
    color[v] = 0;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      comp.push_back(cur);
      for (int u : adj[cur]) {
        if (color[u] == -1) {
          color[u] = 1 - color[cur];
          stack.push_back(u);
        } else if (color[u] == color[cur]) {
          throw Error("width2_structure_select: column intersection graph is not bipartite");
        }
      }
    }
    int zeros = 0;
    for (int u : comp) zeros += color[u] == 0;
    const int pick = 2 * zeros >= static_cast<int>(comp.size()) ? 0 : 1;
    for (int u : comp)
      if (color[u] == pick) keep.push_back(u);
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

}  // namespace

std::vector<int> width2_structure_select(const Circuit &c,
                                         const std::vector<int> &subset,
                                         const Layer &layer, int s) {
  if (c.layout.kind != LayoutKind::lattice || c.layout.rows != 2)
    throw Error("width2_structure_select: width-2 lattice required");
  if (s < 3) throw Error("width2_structure_select: s must be >= 3");
  {
    SeparabilityCertificate cert = check_separable(c, subset);
    if (!cert.separable)
      throw Error("width2_structure_select: circuit is not separable on the subset");
  }

  // Split the layer into row-0 gates, row-1 gates, and column gates; the
  // phases apply in that order (row-gate weights cannot grow from earlier
  // same-direction growth, and the column phase needs no weight bound).
  Layer row_phase[2], col_phase;
  for (const MultiCZGate &g : layer.czs) {
    const int r0 = c.layout.row_of(g.support.front());
    bool same_row = true;
    for (int q : g.support) same_row &= c.layout.row_of(q) == r0;
    if (same_row && g.support.size() > 1)
      row_phase[r0].czs.push_back(g);
    else if (g.support.size() == 1)
      row_phase[r0].czs.push_back(g);  // single-qubit phase, handled as a row gate
    else
      col_phase.czs.push_back(g);
  }
  Circuit prefix = c;
  std::vector<int> current = subset;

  for (int r = 0; r < 2; ++r) {
    if (row_phase[r].czs.empty()) continue;
    std::vector<std::vector<int>> cones = forward_cones(prefix, current);
    GateHits h = collect_hits(cones, row_phase[r].czs);
    for (const auto &hits : h.hit)
      if (static_cast<int>(hits.size()) > s)
        throw Error("width2_structure_select: a row gate meets more than s cones");
    // Good gates as in 1D; the leftover conflict graph can exceed degree 2
    // here, so fall back to the greedy independent set when needed.
    std::vector<int> selected;
    try {
      selected = select_from_hits(current, h, s);
    } catch (const Error &) {
      std::vector<char> touched(current.size(), 0), in_a1(current.size(), 0);
      std::vector<char> good(h.hit.size(), 0);
      for (size_t gi = 0; gi < h.hit.size(); ++gi) {
        for (int ci : h.hit[gi]) touched[ci] = 1;
        good[gi] = !h.covered[gi].empty();
        if (good[gi])
          for (int ci : h.hit[gi]) in_a1[ci] = 1;
      }
      std::vector<int> keep;
      for (size_t gi = 0; gi < h.hit.size(); ++gi) {
        if (!good[gi]) continue;
        int best = -1;
        for (int ci : h.covered[gi])
          if (best < 0 || current[ci] < current[best]) best = ci;
        keep.push_back(best);
      }
      std::vector<int> rest, rest_index(current.size(), -1);
      for (size_t ci = 0; ci < current.size(); ++ci)
        if (touched[ci] && !in_a1[ci]) {
          rest_index[ci] = static_cast<int>(rest.size());
          rest.push_back(static_cast<int>(ci));
        }
      std::vector<std::pair<int, int>> edges;
      for (size_t gi = 0; gi < h.hit.size(); ++gi) {
        if (good[gi]) continue;
        for (size_t i = 0; i < h.hit[gi].size(); ++i)
          for (size_t j = i + 1; j < h.hit[gi].size(); ++j) {
            int a = rest_index[h.hit[gi][i]], b = rest_index[h.hit[gi][j]];
            if (a >= 0 && b >= 0) edges.push_back({a, b});
          }
      }
      for (int local : greedy_independent(static_cast<int>(rest.size()), edges))
        keep.push_back(rest[local]);
      for (size_t ci = 0; ci < current.size(); ++ci)
        if (!touched[ci]) keep.push_back(static_cast<int>(ci));
      selected.clear();
      for (int ci : keep) selected.push_back(current[ci]);
      std::sort(selected.begin(), selected.end());
    }
    prefix = with_layer(prefix, row_phase[r]);
    current = std::move(selected);
  }

  if (!col_phase.czs.empty()) {
    std::vector<std::vector<int>> cones = forward_cones(prefix, current);
    GateHits h = collect_hits(cones, col_phase.czs);
    std::vector<char> touched(current.size(), 0);
    std::vector<std::pair<int, int>> edges;
    for (const auto &hits : h.hit) {
      for (int ci : hits) touched[ci] = 1;
      if (hits.size() > 2)
        throw Error("width2_structure_select: a column gate meets more than two cones");
      if (hits.size() == 2) edges.push_back({hits[0], hits[1]});
    }
    std::vector<int> tv, tv_index(current.size(), -1);
    for (size_t ci = 0; ci < current.size(); ++ci)
      if (touched[ci]) {
        tv_index[ci] = static_cast<int>(tv.size());
        tv.push_back(static_cast<int>(ci));
      }
    std::vector<std::pair<int, int>> local_edges;
    for (auto [a, b] : edges) local_edges.push_back({tv_index[a], tv_index[b]});
    std::vector<int> keep;
    for (int local : bipartite_independent(static_cast<int>(tv.size()), local_edges))
      keep.push_back(tv[local]);
    for (size_t ci = 0; ci < current.size(); ++ci)
      if (!touched[ci]) keep.push_back(static_cast<int>(ci));
    std::vector<int> selected;
    for (int ci : keep) selected.push_back(current[ci]);
    std::sort(selected.begin(), selected.end());
    current = std::move(selected);
  }

  SeparabilityCertificate post = check_separable(with_layer(c, layer), current);
  if (!post.separable)
    throw Error("width2_structure_select: selection failed to certify");
  return current;
}

std::vector<int> backward_disjoint_select(const Circuit &c,
                                          const std::vector<int> &subset) {
  std::vector<int> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> odd;
  for (size_t i = 0; i < sorted.size(); i += 2) odd.push_back(sorted[i]);
  std::vector<std::vector<int>> cones;
  for (int q : odd) cones.push_back(backward_lightcone(c, q).members);
  for (size_t i = 0; i < odd.size(); ++i)
    for (size_t j = i + 1; j < odd.size(); ++j)
      if (sets_intersect(cones[i], cones[j]))
        throw Error("backward_disjoint_select: backward cones intersect; "
                    "upstream separability is broken");
  return odd;
}

Circuit erase_gate(const Circuit &c, int layer_index, const MultiCZGate &gate) {
  if (layer_index < 0 || layer_index >= static_cast<int>(c.layers.size()))
    throw Error("erase_gate: layer out of range");
  Circuit r = c;
  auto &czs = r.layers[layer_index].czs;
  for (size_t i = 0; i < czs.size(); ++i) {
    if (czs[i].support == gate.support) {
      czs.erase(czs.begin() + i);
      return r;
    }
  }
  throw Error("erase_gate: gate not found");
}

double empirical_state_error(const Circuit &a, const Circuit &b,
                             const RunOptions &opt, int sample_cap,
                             uint64_t seed) {
  const size_t n = a.inputs.size();
  if (b.inputs.size() != n) throw Error("empirical_state_error: input mismatch");
  auto one = [&](uint64_t x) {
    std::vector<int> bits(n);
    for (size_t i = 0; i < n; ++i) bits[i] = (x >> i) & 1;
    return pure_trace_distance(run(a, bits, opt), run(b, bits, opt));
  };
  if (n <= 12) {
    double acc = 0.0;
    const uint64_t total = uint64_t{1} << n;
    for (uint64_t x = 0; x < total; ++x) acc += one(x);
    return acc / static_cast<double>(total);
  }
  std::mt19937_64 rng(seed);
  double acc = 0.0;
  for (int i = 0; i < sample_cap; ++i)
    acc += one(rng() & ((uint64_t{1} << n) - 1));
  return acc / sample_cap;
}

RestrictionOutcome restriction_pipeline_1d(const Circuit &c, double epsilon,
                                           bool measure_empirical,
                                           const RunOptions &opt, uint64_t seed) {
  if (c.layout.kind != LayoutKind::line)
    throw Error("restriction_pipeline_1d: line layout required");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw Error("restriction_pipeline_1d: epsilon must lie in (0, 1)");
  const int n = static_cast<int>(c.inputs.size());
  if (n < 1) throw Error("restriction_pipeline_1d: circuit has no inputs");

  RestrictionOutcome out;
  out.epsilon = epsilon;
  out.seed = seed;
  out.depth = c.depth();
  out.s = std::max(3, static_cast<int>(std::ceil(std::log2(n / epsilon))));

  Circuit approx = c;
  approx.layers.clear();
  std::vector<int> surviving = c.inputs;
  std::sort(surviving.begin(), surviving.end());

  for (size_t li = 0; li < c.layers.size(); ++li) {
    const Layer &l = c.layers[li];
    Layer kept = l;
    if (!l.czs.empty()) {
      std::vector<std::vector<int>> cones = forward_cones(approx, surviving);
      kept.czs.clear();
      for (const MultiCZGate &g : l.czs) {
        int weight = 0, covered = 0;
        for (const std::vector<int> &cone : cones) {
          if (!sets_intersect(cone, g.support)) continue;
          ++weight;
          if (subset_of(cone, g.support)) ++covered;
        }
        if (weight >= out.s) {
          out.erased.push_back({static_cast<int>(li), g.support, weight, covered,
                                4.0 * std::pow(2.0, -covered)});
        } else {
          kept.czs.push_back(g);
        }
      }
      surviving = structure_select_1d(approx, surviving, kept, out.s);
    }
    approx.layers.push_back(std::move(kept));
  }

  SeparabilityCertificate cert = check_separable(approx, surviving);
  if (!cert.separable)
    throw Error("restriction_pipeline_1d: output failed to certify separable");

  out.approx = std::move(approx);
  out.surviving = std::move(surviving);
  out.analytic_error_bound = 16.0 * out.depth * epsilon;
  if (measure_empirical)
    out.empirical_error = empirical_state_error(c, out.approx, opt, 256, seed);
  return out;
}

RestrictionOutcome contiguous_restriction(const Circuit &c, int s,
                                          ContiguousCertificate *cert,
                                          bool check_mixedness,
                                          const RunOptions &opt) {
  if (c.layout.kind != LayoutKind::line)
    throw Error("contiguous_restriction: line layout required");
  if (s < 1) throw Error("contiguous_restriction: s must be >= 1");
  std::vector<int> inputs = c.inputs;
  std::sort(inputs.begin(), inputs.end());
  if (inputs.empty() ||
      inputs.back() - inputs.front() + 1 != static_cast<int>(inputs.size()))
    throw Error("contiguous_restriction: inputs are not contiguous");

  RestrictionOutcome out;
  out.s = s;
  out.depth = c.depth();
  const int n = static_cast<int>(inputs.size());

  int lo = inputs.front(), hi = inputs.back();
  ContiguousCertificate local;
  local.intervals.push_back({lo, hi});

  Circuit approx = c;
  approx.layers.clear();

  auto overlap_count = [&](const MultiCZGate &g) {
    int count = 0;
    for (int q : g.support) count += q >= lo && q <= hi;
    return count;
  };

  for (size_t li = 0; li < c.layers.size(); ++li) {
    const Layer &l = c.layers[li];
    Layer kept = l;
    if (!l.czs.empty() && lo <= hi) {
      kept.czs.clear();
      for (const MultiCZGate &g : l.czs) {
        const int cut = overlap_count(g);
        if (cut >= s) {
          out.erased.push_back({static_cast<int>(li), g.support, cut, cut,
                                4.0 * std::pow(2.0, -cut / 2.0)});
          local.analytic_error += 4.0 * std::pow(2.0, -cut / 2.0);
        } else {
          kept.czs.push_back(g);
        }
      }
      // Trim where surviving gates straddle the interval boundary.
      int straddlers = 0;
      for (const MultiCZGate &g : kept.czs) {
        const int cut = overlap_count(g);
        if (cut == 0 || cut == static_cast<int>(g.support.size())) continue;
        ++straddlers;
        if (g.support.front() < lo) lo = std::max(lo, g.support.back() + 1);
        if (g.support.back() > hi) hi = std::min(hi, g.support.front() - 1);
      }
      if (straddlers > 2)
        throw Error("contiguous_restriction: more than two boundary gates in one layer");
      local.intervals.push_back({lo, hi});
    }
    approx.layers.push_back(std::move(kept));

    if (check_mixedness && lo <= hi) {
      // E_x of the reduced state on the interval must be maximally mixed.
      const int width = hi - lo + 1;
      if (c.qubit_count() <= opt.qubit_cap && width <= 10 && n <= 12) {
        std::vector<int> keep;
        for (int q = lo; q <= hi; ++q) keep.push_back(q);
        const int dim = 1 << width;
        std::vector<cplx> avg(static_cast<size_t>(dim) * dim, 0.0);
        const uint64_t total = uint64_t{1} << n;
        Circuit prefix = c;
        prefix.layers.assign(approx.layers.begin(), approx.layers.end());
        for (uint64_t x = 0; x < total; ++x) {
          std::vector<int> bits(n);
          for (int i = 0; i < n; ++i) bits[i] = (x >> i) & 1;
          ReducedDensity rd = partial_trace(run(prefix, bits, opt), keep);
          for (size_t e = 0; e < avg.size(); ++e) avg[e] += rd.matrix[e];
        }
        double dev = 0.0;
        for (int r = 0; r < dim; ++r)
          for (int col = 0; col < dim; ++col) {
            const cplx want = r == col ? cplx(1.0 / dim) : cplx(0.0);
            dev = std::max(dev, std::abs(avg[static_cast<size_t>(r) * dim + col] /
                                             static_cast<double>(total) -
                                         want));
          }
        local.mixedness_checked = true;
        local.mixedness_deviation = std::max(local.mixedness_deviation, dev);
      }
    }
  }

  out.approx = std::move(approx);
  for (int q = lo; q <= hi; ++q) out.surviving.push_back(q);
  local.theorem_error = 4.0 * out.depth * n * std::pow(2.0, -s / 2.0);
  out.analytic_error_bound = local.theorem_error;

  int worst = 0;
  for (int q = 0; q < c.qubit_count(); ++q) {
    const std::vector<int> members = backward_lightcone(out.approx, q).members;
    int count = 0;
    for (int m : members) count += m >= lo && m <= hi;
    worst = std::max(worst, count);
  }
  local.max_backward_cone_inputs = worst;
  if (cert) *cert = local;
  return out;
}

}  // namespace qlat
