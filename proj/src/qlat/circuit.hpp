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

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlat {

using cplx = std::complex<double>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// 2x2 complex matrix, row-major. The only single-qubit gate payload.
struct Mat2 {
  cplx m[4] = {1.0, 0.0, 0.0, 1.0};

  cplx &operator()(int r, int c) { return m[2 * r + c]; }
  cplx operator()(int r, int c) const { return m[2 * r + c]; }

  Mat2 dagger() const;
  Mat2 operator*(const Mat2 &rhs) const;
  /// max-norm of U†U - I.
  double unitarity_defect() const;
  bool approx_equal(const Mat2 &rhs, double tol = 1e-12) const;

  static Mat2 identity();
  static Mat2 x();
  static Mat2 z();
  static Mat2 h();
  /// Rotation about Y: |0> -> cos(t/2)|0> + sin(t/2)|1>.
  static Mat2 ry(double theta);
  static Mat2 rz(double theta);
};

enum class LayoutKind { all_to_all, line, lattice };

/// Qubit arrangement. Lattice coordinates are linearized row-major:
/// id = row * cols + col with rows, cols counted from zero.
struct Layout {
  LayoutKind kind = LayoutKind::all_to_all;
  int cols = 0;  // "n" in every layout
  int rows = 1;  // only > 1 for lattice

  int qubit_count() const { return rows * cols; }
  int row_of(int id) const { return id / cols; }
  int col_of(int id) const { return id % cols; }
  int at(int row, int col) const { return row * cols + col; }
  bool contains(int id) const { return id >= 0 && id < qubit_count(); }

  static Layout all_to_all(int n);
  static Layout line(int n);
  static Layout lattice(int rows, int cols);

  bool operator==(const Layout &o) const {
    return kind == o.kind && cols == o.cols && rows == o.rows;
  }
};

std::string to_string(LayoutKind k);

struct SingleQubitGate {
  int target = 0;
  Mat2 u;
};

/// Multi-qubit CZ: phase -1 on the all-ones subspace of the support.
struct MultiCZGate {
  std::vector<int> support;  // sorted, distinct
};

struct GeneralizedToffoli {
  std::vector<int> controls;  // sorted, distinct
  int target = 0;
};

/// One circuit layer. Semantics: all singles apply first, then all czs.
struct Layer {
  std::vector<SingleQubitGate> singles;
  std::vector<MultiCZGate> czs;

  bool empty() const { return singles.empty() && czs.empty(); }
};

enum class AncillaState { zero, one };

struct AncillaInit {
  int qubit = 0;
  AncillaState init = AncillaState::zero;
};

/// The circuit IR. Layout-tagged alternating layers of single-qubit
/// unitaries and multi-qubit CZ gates. Immutable after validation;
/// safe to share across threads for analysis and simulation.
struct Circuit {
  Layout layout;
  std::vector<int> inputs;          // ordered
  std::vector<AncillaInit> ancilla; // qubits in neither list default to zero
  std::vector<Layer> layers;

  int qubit_count() const { return layout.qubit_count(); }
  /// Number of layers with a nonempty CZ list.
  int depth() const;
  /// Initial bit of a non-input qubit (declared init, or zero).
  int ancilla_bit(int qubit) const;
};

struct Violation {
  int layer = -1;  // -1 for circuit-level problems
  std::string where;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// Checks every layout and structural invariant. Violations are report
/// entries, never exceptions.
ValidationReport validate(const Circuit &c);

/// True iff the support is legal for the layout: any set (all-to-all),
/// a contiguous index interval (line), or a contiguous run within one
/// row or one column (lattice).
bool support_is_local(const Layout &layout, const std::vector<int> &support,
                      std::string *why = nullptr);

/// Lowers a generalized Toffoli to H(target) . CZ(controls+target) . H(target).
/// The two layers returned reproduce the Toffoli unitary exactly.
std::vector<Layer> lower_toffoli(const GeneralizedToffoli &g);

/// The reverse view: a CZ equals a generalized Toffoli on its last support
/// element, conjugated by H on that element.
struct ToffoliView {
  Mat2 pre;   // applied before the Toffoli, on `gate.target`
  GeneralizedToffoli gate;
  Mat2 post;  // applied after
};
ToffoliView raise_cz(const MultiCZGate &g);

/// Concatenates layers; a's interface is kept. Throws on layout mismatch.
Circuit compose(const Circuit &a, const Circuit &b);

/// Layers reversed, singles conjugate-transposed, CZ gates kept (they are
/// self-inverse). inverse(inverse(c)) == c field-for-field, and
/// compose(c, inverse(c)) acts as the identity.
Circuit inverse(const Circuit &c);

/// Line(n) circuits reinterpreted as lattice(1, n); gates are unchanged.
Circuit as_lattice_row(const Circuit &line_circuit);

/// Forgets geometry: same gates on all_to_all(n).
Circuit as_all_to_all(const Circuit &c);

/// Appends one layer (convenience for the analysis pipelines).
Circuit with_layer(const Circuit &c, const Layer &l);

bool structurally_equal(const Circuit &a, const Circuit &b, double tol = 0.0);

/// Incremental circuit assembly. Keeps a pending layer open; singles merge by
/// matrix product, a CZ overlapping a pending CZ flushes the layer first, and
/// a single arriving after a pending CZ flushes too (singles precede czs
/// within a layer).
class CircuitBuilder {
 public:
  explicit CircuitBuilder(Layout layout);

  CircuitBuilder &single(int qubit, const Mat2 &u);
  CircuitBuilder &x(int qubit) { return single(qubit, Mat2::x()); }
  CircuitBuilder &h(int qubit) { return single(qubit, Mat2::h()); }
  CircuitBuilder &ry(int qubit, double theta) { return single(qubit, Mat2::ry(theta)); }
  CircuitBuilder &cz(std::vector<int> support);
  CircuitBuilder &cnot(int control, int target);
  CircuitBuilder &toffoli(std::vector<int> controls, int target);
  /// CNOT over a contiguous corridor whose interior sits in |1>.
  CircuitBuilder &corridor_cnot(std::vector<int> support, int target);

  struct CorridorCnot {
    std::vector<int> support;
    int target;
  };
  /// Emits a batch of corridor CNOTs into one CZ layer (supports must be
  /// pairwise disjoint): all leading H's, all CZs, all trailing H's.
  CircuitBuilder &corridor_group(const std::vector<CorridorCnot> &gates);
  CircuitBuilder &cnot_group(const std::vector<std::pair<int, int>> &pairs);

  /// Forces the pending layer to close.
  CircuitBuilder &barrier();

  CircuitBuilder &input(int qubit);
  CircuitBuilder &set_ancilla(int qubit, AncillaState s);

  Circuit finish();

 private:
  void flush();
  bool overlaps_pending_cz(const std::vector<int> &support) const;

  Layout layout_;
  std::vector<int> inputs_;
  std::vector<AncillaInit> ancilla_;
  std::vector<Layer> done_;
  Layer pending_;
};

}  // namespace qlat
