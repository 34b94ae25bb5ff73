#include "strobo/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace strobo {

GridLayout::GridLayout(size_t rows, size_t cols, Connectivity conn, bool periodic)
    : rows_(rows), cols_(cols), conn_(conn), periodic_(periodic) {
  if (rows < 2 || cols < 2) throw std::invalid_argument("grid needs rows, cols >= 2");
  auto add = [&](size_t a, size_t b) {
    if (a == b) return;
    if (a > b) std::swap(a, b);
    edges_.emplace_back(a, b);
  };
  for (size_t r = 0; r < rows; r++) {
    for (size_t c = 0; c < cols; c++) {
      size_t q = index(r, c);
      if (periodic) {
        size_t rp = (r + 1) % rows, cp = (c + 1) % cols, cm = (c + cols - 1) % cols;
        add(q, index(r, cp));
        add(q, index(rp, c));
        if (conn == Connectivity::kDiagonal) {
          add(q, index(rp, cp));
          add(q, index(rp, cm));
        }
      } else {
        if (c + 1 < cols) add(q, index(r, c + 1));
        if (r + 1 < rows) add(q, index(r + 1, c));
        if (conn == Connectivity::kDiagonal) {
          if (r + 1 < rows && c + 1 < cols) add(q, index(r + 1, c + 1));
          if (r + 1 < rows && c > 0) add(q, index(r + 1, c - 1));
        }
      }
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

double GridLayout::distance(size_t i, size_t j) const {
  auto [ri, ci] = coords(i);
  auto [rj, cj] = coords(j);
  double dr = std::abs(double(ri) - double(rj));
  double dc = std::abs(double(ci) - double(cj));
  if (periodic_) {
    dr = std::min(dr, (double)rows_ - dr);
    dc = std::min(dc, (double)cols_ - dc);
  }
  return std::sqrt(dr * dr + dc * dc);
}

WeightedPauliSum build_system_hamiltonian(const GridLayout& grid) {
  WeightedPauliSum h(grid.num_qubits());
  for (auto [i, j] : grid.edges()) {
    PhasedPauli p(grid.num_qubits());
    p.set_x(i, true);
    p.set_x(j, true);
    h.add(p, Rational(1));
  }
  return h;
}

namespace {

// Face (fr, fc), 1-based from the top-left corner; face (1,1) covers the
// 0-based qubits (0,0),(0,1),(1,0),(1,1). X-type on even (fr+fc).
bool face_is_x(int fr, int fc) { return ((fr + fc) & 1) == 0; }

PhasedPauli face_op(const GridLayout& g, int fr, int fc, bool torus) {
  size_t rows = g.rows(), cols = g.cols();
  char axis = face_is_x(fr, fc) ? 'X' : 'Z';
  PhasedPauli p(g.num_qubits());
  for (int dr = -1; dr <= 0; dr++) {
    for (int dc = -1; dc <= 0; dc++) {
      long r = fr + dr, c = fc + dc;
      if (torus) {
        r = (r % (long)rows + rows) % (long)rows;
        c = (c % (long)cols + cols) % (long)cols;
      }
      size_t q = g.index((size_t)r, (size_t)c);
      if (axis == 'X')
        p.set_x(q, true);
      else
        p.set_z(q, true);
    }
  }
  return p;
}

PhasedPauli pair_op(const GridLayout& g, char axis, std::pair<size_t, size_t> a,
                    std::pair<size_t, size_t> b) {
  PhasedPauli p(g.num_qubits());
  for (auto [r, c] : {a, b}) {
    size_t q = g.index(r, c);
    if (axis == 'X')
      p.set_x(q, true);
    else
      p.set_z(q, true);
  }
  return p;
}

}  // namespace

CodeLayout::CodeLayout(const GridLayout& grid, PatchMode mode,
                       const std::vector<HoleSpec>& holes, bool negative_coupling)
    : grid_(grid), mode_(mode), negative_coupling_(negative_coupling) {
  if (mode == PatchMode::kTorus) {
    if (grid.rows() % 2 || grid.cols() % 2)
      throw std::invalid_argument("torus checkerboard needs even dimensions");
    build_torus();
  } else {
    build_planar(mode == PatchMode::kPlanar);
  }
  apply_holes(holes);
  if (!stabilizers_commute())
    throw std::logic_error("stabilizer construction does not commute");
  build_logicals();
}

void CodeLayout::build_torus() {
  for (int fr = 1; fr <= (int)grid_.rows(); fr++)
    for (int fc = 1; fc <= (int)grid_.cols(); fc++)
      stabs_.push_back(Stabilizer{face_is_x(fr, fc) ? StabKind::kVertexX : StabKind::kPlaquetteZ,
                                  fr, fc, face_op(grid_, fr, fc, true)});
}

void CodeLayout::build_planar(bool with_boundary) {
  int rows = (int)grid_.rows(), cols = (int)grid_.cols();
  for (int fr = 1; fr <= rows - 1; fr++)
    for (int fc = 1; fc <= cols - 1; fc++)
      stabs_.push_back(Stabilizer{face_is_x(fr, fc) ? StabKind::kVertexX : StabKind::kPlaquetteZ,
                                  fr, fc, face_op(grid_, fr, fc, false)});
  if (!with_boundary) return;
  // 2-body boundary stabilizers continuing the checkerboard: X-type halves
  // above/below, Z-type halves left/right.
  for (int fc = 1; fc <= cols - 1; fc++) {
    if (face_is_x(0, fc))
      stabs_.push_back(Stabilizer{StabKind::kVertexX, 0, fc,
                                  pair_op(grid_, 'X', {0, (size_t)fc - 1}, {0, (size_t)fc})});
    if (face_is_x(rows, fc))
      stabs_.push_back(
          Stabilizer{StabKind::kVertexX, rows, fc,
                     pair_op(grid_, 'X', {(size_t)rows - 1, (size_t)fc - 1},
                             {(size_t)rows - 1, (size_t)fc})});
  }
  for (int fr = 1; fr <= rows - 1; fr++) {
    if (!face_is_x(fr, 0))
      stabs_.push_back(Stabilizer{StabKind::kPlaquetteZ, fr, 0,
                                  pair_op(grid_, 'Z', {(size_t)fr - 1, 0}, {(size_t)fr, 0})});
    if (!face_is_x(fr, cols))
      stabs_.push_back(
          Stabilizer{StabKind::kPlaquetteZ, fr, cols,
                     pair_op(grid_, 'Z', {(size_t)fr - 1, (size_t)cols - 1},
                             {(size_t)fr, (size_t)cols - 1})});
  }
}

void CodeLayout::apply_holes(const std::vector<HoleSpec>& holes) {
  std::set<std::pair<int, int>> seen;
  for (const auto& h : holes) {
    if (!seen.insert({h.face_row, h.face_col}).second)
      throw std::invalid_argument("overlapping hole specs");
    // A Z-cut hole disables an X-type stabilizer (it terminates Z strings);
    // an X-cut hole disables a Z-type one.
    StabKind want =
        h.kind == HoleSpec::Kind::kZCut ? StabKind::kVertexX : StabKind::kPlaquetteZ;
    bool found = false;
    for (auto& s : stabs_) {
      if (s.face_row == h.face_row && s.face_col == h.face_col && s.kind == want) {
        s.enabled = false;
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("hole references no matching stabilizer");
  }
}

std::vector<PhasedPauli> CodeLayout::enabled_stabilizers() const {
  std::vector<PhasedPauli> out;
  for (const auto& s : stabs_)
    if (s.enabled) out.push_back(s.op);
  return out;
}

std::vector<const Stabilizer*> CodeLayout::enabled_x_stabilizers() const {
  std::vector<const Stabilizer*> out;
  for (const auto& s : stabs_)
    if (s.enabled && s.kind == StabKind::kVertexX) out.push_back(&s);
  return out;
}

std::vector<const Stabilizer*> CodeLayout::enabled_z_stabilizers() const {
  std::vector<const Stabilizer*> out;
  for (const auto& s : stabs_)
    if (s.enabled && s.kind == StabKind::kPlaquetteZ) out.push_back(&s);
  return out;
}

size_t CodeLayout::enabled_count() const {
  size_t c = 0;
  for (const auto& s : stabs_)
    if (s.enabled) c++;
  return c;
}

WeightedPauliSum CodeLayout::code_hamiltonian() const {
  WeightedPauliSum h(grid_.num_qubits());
  Rational sign(negative_coupling_ ? -1 : 1);
  for (const auto& s : stabs_)
    if (s.enabled) h.add(s.op, sign);
  return h;
}

int64_t CodeLayout::epsilon0() const {
  int64_t n = (int64_t)enabled_count();
  return negative_coupling_ ? -n : n;
}

bool CodeLayout::stabilizers_commute() const {
  auto en = enabled_stabilizers();
  for (size_t i = 0; i < en.size(); i++)
    for (size_t j = i + 1; j < en.size(); j++)
      if (!commutes(en[i], en[j])) return false;
  return true;
}

void CodeLayout::build_logicals() {
  auto enabled = enabled_stabilizers();
  auto try_add = [&](char type, PhasedPauli op, const std::string& desc) {
    for (const auto& s : enabled)
      if (!commutes(s, op)) return false;
    if (span_contains(enabled, op)) return false;
    logicals_.push_back(LogicalString{type, std::move(op), desc});
    return true;
  };

  size_t rows = grid_.rows(), cols = grid_.cols();
  // Boundary-to-boundary strings: a column of X and a row of Z. Any column
  // commutes with every Z face (overlap 0 or 2); membership in the span is
  // what distinguishes a logical.
  for (size_t c = 0; c < cols; c++) {
    PhasedPauli op(grid_.num_qubits());
    for (size_t r = 0; r < rows; r++) op.set_x(grid_.index(r, c), true);
    if (try_add('X', op, "column " + std::to_string(c + 1) + " X string")) break;
  }
  for (size_t r = 0; r < rows; r++) {
    PhasedPauli op(grid_.num_qubits());
    for (size_t c = 0; c < cols; c++) op.set_z(grid_.index(r, c), true);
    if (try_add('Z', op, "row " + std::to_string(r + 1) + " Z string")) break;
  }

  // Hole-pair strings: same-kind disabled faces on a common qubit diagonal
  // are connected by the diagonal chain of their shared corners.
  std::vector<const Stabilizer*> disabled;
  for (const auto& s : stabs_)
    if (!s.enabled) disabled.push_back(&s);
  for (size_t i = 0; i < disabled.size(); i++) {
    for (size_t j = i + 1; j < disabled.size(); j++) {
      const Stabilizer *a = disabled[i], *b = disabled[j];
      if (a->kind != b->kind) continue;
      int dr = b->face_row - a->face_row, dc = b->face_col - a->face_col;
      if (std::abs(dr) != std::abs(dc) || dr == 0) continue;
      char type = a->kind == StabKind::kVertexX ? 'Z' : 'X';
      int sr = dr > 0 ? 1 : -1, sc = dc > 0 ? 1 : -1;
      PhasedPauli op(grid_.num_qubits());
      for (int k = 0; k < std::abs(dr); k++) {
        int fr = a->face_row + k * sr, fc = a->face_col + k * sc;
        // Qubit shared by faces (fr,fc) and (fr+sr,fc+sc).
        size_t qr = (size_t)(sr > 0 ? fr : fr - 1);
        size_t qc = (size_t)(sc > 0 ? fc : fc - 1);
        size_t q = grid_.index(qr, qc);
        if (type == 'Z')
          op.set_z(q, true);
        else
          op.set_x(q, true);
      }
      try_add(type, op,
              std::string(1, type) + " string between holes (" +
                  std::to_string(a->face_row) + "," + std::to_string(a->face_col) +
                  ")-(" + std::to_string(b->face_row) + "," + std::to_string(b->face_col) +
                  ")");
    }
  }
}

ErrorClassification classify_error(const CodeLayout& code, const PhasedPauli& e) {
  size_t c = 0;
  auto enabled = code.enabled_stabilizers();
  for (const auto& s : enabled)
    if (!commutes(s, e)) c++;
  if (c >= 1) return {ErrorKind::kDetectable, c};
  if (span_contains(enabled, e)) return {ErrorKind::kStabilizerElement, 0};
  return {ErrorKind::kLogical, 0};
}

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::kDetectable:
      return "detectable";
    case ErrorKind::kStabilizerElement:
      return "stabilizer-element";
    case ErrorKind::kLogical:
      return "logical";
  }
  return "?";
}

}  // namespace strobo
