#pragma once

#include <map>
#include <string>
#include <vector>

#include "strobo/clifford.hpp"
#include "strobo/pauli.hpp"
#include "strobo/rational.hpp"

namespace strobo {

// Phase-free Pauli key; term order is lexicographic on (z_bits, x_bits).
struct PauliKey {
  std::vector<uint64_t> z;
  std::vector<uint64_t> x;

  friend bool operator<(const PauliKey& a, const PauliKey& b) {
    if (a.z != b.z) return a.z < b.z;
    return a.x < b.x;
  }
  friend bool operator==(const PauliKey& a, const PauliKey& b) = default;
};

// One monomial of a graded coefficient: c * dt^dt_pow * lambda^lam_pow.
struct GradedCoeff {
  int dt_pow = 0;
  int lam_pow = 0;
  Rational c;
};

// Hermitian operator as a map from phase-free Pauli to an exact rational
// coefficient, optionally graded by powers of dt and lambda. Coefficients
// are real by construction; a term acquiring an imaginary phase is a logic
// error and throws.
class WeightedPauliSum {
 public:
  WeightedPauliSum() : n_(0) {}
  explicit WeightedPauliSum(size_t n) : n_(n) {}

  size_t num_qubits() const { return n_; }
  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  // Adds coefficient * p where p must have an even display phase
  // (a sign, folded into the coefficient).
  void add(const PhasedPauli& p, const Rational& coeff, int dt_pow = 0, int lam_pow = 0);

  // Convenience: parse a Pauli string and add it.
  void add_str(const std::string& pauli, const Rational& coeff, int dt_pow = 0,
               int lam_pow = 0);

  void add_sum(const WeightedPauliSum& other);
  void add_scaled(const WeightedPauliSum& other, const Rational& factor);

  WeightedPauliSum operator+(const WeightedPauliSum& o) const;
  WeightedPauliSum operator-(const WeightedPauliSum& o) const;
  WeightedPauliSum scaled(const Rational& factor) const;

  // Shifts every monomial's grading.
  WeightedPauliSum graded_shift(int d_dt, int d_lam) const;

  // Sub-sum of the monomials with the exact grade (dt_pow, lam_pow),
  // returned with that grading stripped to (0,0).
  WeightedPauliSum grade_part(int dt_pow, int lam_pow) const;
  // Sub-sum of monomials with the given lambda power (any dt), grade kept.
  WeightedPauliSum lambda_part(int lam_pow) const;

  // All (dt_pow, lam_pow) grades present.
  std::vector<std::pair<int, int>> grades() const;

  bool is_zero() const { return terms_.empty(); }
  bool operator==(const WeightedPauliSum& o) const;

  // The coefficient polynomial of one Pauli (empty if absent).
  std::vector<GradedCoeff> coeff(const PhasedPauli& p) const;
  // Plain rational coefficient at grade (0,0) convenience.
  Rational coeff_plain(const PhasedPauli& p) const;

  // Representative PhasedPauli of a key (display phase 0).
  static PhasedPauli to_phased(size_t n, const PauliKey& k);

  const std::map<PauliKey, std::vector<GradedCoeff>>& terms() const { return terms_; }

  // OR of the supports of all terms, one bit per qubit.
  std::vector<uint64_t> support_mask() const;

  // True iff every pair of terms commutes.
  bool terms_mutually_commute() const;

  // True iff this sum commutes with the given Pauli, term by term.
  bool commutes_with(const PhasedPauli& p) const;

  // C A C^dagger for a Clifford layer.
  WeightedPauliSum conjugated(const CliffordLayer& layer) const;

  // e^{-i k pi/4 A} (.) e^{+i k pi/4 A} for a Hermitian Pauli axis A;
  // exact Clifford conjugation (k quarter turns).
  WeightedPauliSum conjugated_pauli_exp(const PhasedPauli& axis, int quarter_turns) const;

  // Numeric evaluation of coefficients at dt, lambda (keyed by Pauli).
  std::map<PauliKey, double> evaluate(double dt, double lambda) const;

  // Sum over terms and monomials of |c| (grades ignored).
  double abs_coeff_sum() const;

  std::string str() const;

 private:
  void add_phased(const PhasedPauli& p, const Rational& coeff, int dt_pow, int lam_pow);

  size_t n_;
  std::map<PauliKey, std::vector<GradedCoeff>> terms_;
};

// The Hermitian sum i[A,B], expanded term by term and canonicalized.
// Grades multiply (dt and lambda powers add).
WeightedPauliSum commutator_i(const WeightedPauliSum& a, const WeightedPauliSum& b);

// Plain commutator contribution [A,B] represented as -i * (i[A,B]); kept
// internal to Magnus sums which multiply by explicit prefactors. Provided
// as the Hermitian pair (i[A,B]) since a bare [A,B] is anti-Hermitian.

}  // namespace strobo
