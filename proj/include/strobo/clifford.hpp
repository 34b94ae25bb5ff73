#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "strobo/pauli.hpp"

namespace strobo {

// Single-qubit phased Pauli: i^phase * X^x Z^z.
struct SqPauli {
  bool x = false;
  bool z = false;
  uint8_t phase = 0;  // power of i, mod 4

  friend SqPauli multiply(const SqPauli& a, const SqPauli& b) {
    SqPauli r;
    r.x = a.x != b.x;
    r.z = a.z != b.z;
    r.phase = static_cast<uint8_t>((a.phase + b.phase + ((a.z && b.x) ? 2 : 0)) & 3);
    return r;
  }
  bool operator==(const SqPauli& o) const = default;
};

// Layer of independent single-qubit Cliffords, each stored as its action
// table on (X, Z). Built from {I, X, Y, Z, W, S, Sd} and products, where W
// is the Hadamard gate and S the phase gate.
class CliffordLayer {
 public:
  CliffordLayer() = default;
  explicit CliffordLayer(size_t n);

  static CliffordLayer identity(size_t n) { return CliffordLayer(n); }

  // Applies the named gate on one qubit (composed after what is there).
  // Gate names: "I","X","Y","Z","W","S","Sd".
  CliffordLayer& apply_gate(size_t qubit, const std::string& gate);

  // Builds a layer from `spec` like "W1 W2 Z3" or "Sd2"; 1-indexed qubits.
  static CliffordLayer parse(size_t n, const std::string& spec);

  // Layer whose gates conjugate by the given Pauli layer pattern,
  // e.g. from a phase-free PhasedPauli mask.
  static CliffordLayer from_pauli(const PhasedPauli& p);

  size_t num_qubits() const { return image_x_.size(); }

  // Composition: (a*b) acts as a after b (i.e. conj_{a*b} = conj_a . conj_b).
  friend CliffordLayer operator*(const CliffordLayer& a, const CliffordLayer& b);

  CliffordLayer inverse() const;

  // C P C^dagger, phases exact.
  PhasedPauli conjugate(const PhasedPauli& p) const;

  bool is_identity() const;
  bool operator==(const CliffordLayer& o) const;

  const SqPauli& image_x(size_t q) const { return image_x_[q]; }
  const SqPauli& image_z(size_t q) const { return image_z_[q]; }

  std::string str() const;

 private:
  SqPauli conj_single(size_t q, const SqPauli& p) const;

  std::vector<SqPauli> image_x_;
  std::vector<SqPauli> image_z_;
};

}  // namespace strobo
