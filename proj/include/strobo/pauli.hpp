#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace strobo {

// n-qubit Pauli operator with phase, stored in symplectic (x,z) form.
// The operator is  i^phase * prod_j X_j^{x_j} Z_j^{z_j}.
// Note Y = i XZ, so the display phase of a string differs from the stored
// phase by one power of i per Y site.
class PhasedPauli {
 public:
  PhasedPauli() : n_(0), phase_(0) {}
  explicit PhasedPauli(size_t n) : n_(n), phase_(0), x_(words(n), 0), z_(words(n), 0) {}

  static PhasedPauli identity(size_t n) { return PhasedPauli(n); }

  // Single Pauli at a 0-based qubit: axis 'X','Y','Z'.
  static PhasedPauli single(size_t n, size_t qubit, char axis);

  // Parses "X1 Y2 Z4" (1-indexed qubits), optionally prefixed by
  // "+", "-", "i", "-i". "I" denotes the identity.
  static PhasedPauli parse(size_t n, const std::string& text);

  size_t num_qubits() const { return n_; }
  uint8_t phase_exponent() const { return phase_; }  // power of i, mod 4

  bool x_bit(size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1; }
  bool z_bit(size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1; }
  void set_x(size_t q, bool v);
  void set_z(size_t q, bool v);
  void set_phase_exponent(uint8_t p) { phase_ = p & 3; }

  const std::vector<uint64_t>& x_words() const { return x_; }
  const std::vector<uint64_t>& z_words() const { return z_; }

  bool is_identity_bits() const;
  size_t weight() const;  // popcount(x | z)

  // Display phase exponent: power of i in the conventional string form
  // (e.g. "Y1" has display phase 0, "-X1" has 2).
  uint8_t display_phase_exponent() const;
  bool is_hermitian() const { return (display_phase_exponent() & 1) == 0; }

  PhasedPauli adjoint() const;

  // Qubits in the support, ascending.
  std::vector<size_t> support() const;

  std::string str() const;

  friend PhasedPauli multiply(const PhasedPauli& p, const PhasedPauli& q);
  friend bool commutes(const PhasedPauli& p, const PhasedPauli& q);

  // Ignores phase; compares bits only.
  bool same_bits(const PhasedPauli& o) const { return x_ == o.x_ && z_ == o.z_; }
  bool operator==(const PhasedPauli& o) const {
    return n_ == o.n_ && phase_ == o.phase_ && x_ == o.x_ && z_ == o.z_;
  }

 private:
  static size_t words(size_t n) { return (n + 63) / 64; }
  size_t count_y_sites() const;

  size_t n_;
  uint8_t phase_;
  std::vector<uint64_t> x_;
  std::vector<uint64_t> z_;
};

// Exact Pauli group product, phases included.
PhasedPauli multiply(const PhasedPauli& p, const PhasedPauli& q);

// True iff the symplectic inner product of (x,z) vectors is even.
bool commutes(const PhasedPauli& p, const PhasedPauli& q);

// Symplectic span membership (up to phase) for a commuting generator list,
// by Gaussian elimination over GF(2).
bool span_contains(const std::vector<PhasedPauli>& generators, const PhasedPauli& p);

// Rank of the generator list as symplectic GF(2) vectors.
size_t symplectic_rank(const std::vector<PhasedPauli>& generators);

// All phase-free n-qubit Paulis commuting with every generator.
// Size is 4^n / 2^m for m independent generators. Enumerates the GF(2)
// solution space directly; throws if the result would exceed the cap.
std::vector<PhasedPauli> normalizer(size_t n, const std::vector<PhasedPauli>& generators,
                                    size_t cap = (size_t{1} << 22));

}  // namespace strobo
