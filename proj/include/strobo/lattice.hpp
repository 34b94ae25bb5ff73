#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strobo/pauli.hpp"
#include "strobo/pauli_sum.hpp"

namespace strobo {

enum class Connectivity { kDiagonal, kNearestOnly };

// Qubits on a rows x cols grid, row-major, 0-based indices internally.
// Euclidean metric with unit nearest-neighbor spacing (minimum image when
// periodic).
class GridLayout {
 public:
  GridLayout(size_t rows, size_t cols, Connectivity conn, bool periodic = false);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t num_qubits() const { return rows_ * cols_; }
  Connectivity connectivity() const { return conn_; }
  bool periodic() const { return periodic_; }

  size_t index(size_t r, size_t c) const { return r * cols_ + c; }
  std::pair<size_t, size_t> coords(size_t q) const { return {q / cols_, q % cols_}; }

  double distance(size_t i, size_t j) const;

  // Symmetric edge list (i < j) of the selected connectivity.
  const std::vector<std::pair<size_t, size_t>>& edges() const { return edges_; }

 private:
  size_t rows_, cols_;
  Connectivity conn_;
  bool periodic_;
  std::vector<std::pair<size_t, size_t>> edges_;
};

// Unit-coefficient X_i X_j term per edge.
WeightedPauliSum build_system_hamiltonian(const GridLayout& grid);

enum class StabKind { kVertexX, kPlaquetteZ };

struct Stabilizer {
  StabKind kind;
  // Face coordinates (1-based face row/col); boundary half-faces carry the
  // coordinates of the truncated face.
  int face_row;
  int face_col;
  PhasedPauli op;
  bool enabled = true;
};

struct HoleSpec {
  enum class Kind { kXCut, kZCut } kind;
  int face_row;
  int face_col;
};

enum class PatchMode {
  kTorus,     // periodic faces, no boundary
  kInterior,  // full 4-body faces of a planar patch only
  kPlanar,    // interior faces plus 2-body boundary stabilizers
};

struct LogicalString {
  char type;  // 'X' or 'Z'
  PhasedPauli op;
  std::string description;
};

// Stabilizer layout of the checkerboard code on the grid: X-type 4-body
// terms on faces with even (face_row+face_col), Z-type on odd, counting
// faces 1-based from the top-left corner.
class CodeLayout {
 public:
  CodeLayout(const GridLayout& grid, PatchMode mode,
             const std::vector<HoleSpec>& holes = {}, bool negative_coupling = false);

  const GridLayout& grid() const { return grid_; }
  PatchMode mode() const { return mode_; }
  const std::vector<Stabilizer>& stabilizers() const { return stabs_; }
  const std::vector<LogicalString>& logical_strings() const { return logicals_; }

  std::vector<PhasedPauli> enabled_stabilizers() const;
  std::vector<const Stabilizer*> enabled_x_stabilizers() const;
  std::vector<const Stabilizer*> enabled_z_stabilizers() const;
  size_t enabled_count() const;

  // H_p = sum of enabled stabilizers (sign from the coupling flag).
  WeightedPauliSum code_hamiltonian() const;

  bool negative_coupling() const { return negative_coupling_; }
  // Codespace eigenvalue of H_p: -(enabled count) under negative coupling,
  // +(enabled count) otherwise.
  int64_t epsilon0() const;

  // True if every pair of enabled stabilizers commutes.
  bool stabilizers_commute() const;

 private:
  void build_torus();
  void build_planar(bool with_boundary);
  void apply_holes(const std::vector<HoleSpec>& holes);
  void build_logicals();

  GridLayout grid_;
  PatchMode mode_;
  bool negative_coupling_;
  std::vector<Stabilizer> stabs_;
  std::vector<LogicalString> logicals_;
};

enum class ErrorKind { kDetectable, kStabilizerElement, kLogical };

struct ErrorClassification {
  ErrorKind kind;
  size_t c;  // enabled stabilizer generators anticommuting with the error
};

ErrorClassification classify_error(const CodeLayout& code, const PhasedPauli& e);

const char* error_kind_name(ErrorKind k);

}  // namespace strobo
