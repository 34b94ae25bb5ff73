#pragma once

// Tiny self-contained dense matrix helpers for oracle checks, independent of
// the library's Eigen-based simulation path.

#include <cassert>
#include <complex>
#include <vector>

#include "strobo/pauli.hpp"
#include "strobo/pauli_sum.hpp"

namespace mini {

using cd = std::complex<double>;
using Matrix = std::vector<std::vector<cd>>;

inline Matrix zero(size_t dim) { return Matrix(dim, std::vector<cd>(dim, cd(0, 0))); }

inline Matrix identity(size_t dim) {
  Matrix m = zero(dim);
  for (size_t i = 0; i < dim; i++) m[i][i] = 1;
  return m;
}

inline Matrix mul(const Matrix& a, const Matrix& b) {
  size_t dim = a.size();
  Matrix r = zero(dim);
  for (size_t i = 0; i < dim; i++)
    for (size_t k = 0; k < dim; k++) {
      cd av = a[i][k];
      if (av == cd(0, 0)) continue;
      for (size_t j = 0; j < dim; j++) r[i][j] += av * b[k][j];
    }
  return r;
}

inline Matrix sub(const Matrix& a, const Matrix& b) {
  Matrix r = a;
  for (size_t i = 0; i < r.size(); i++)
    for (size_t j = 0; j < r.size(); j++) r[i][j] -= b[i][j];
  return r;
}

inline Matrix scale(const Matrix& a, cd s) {
  Matrix r = a;
  for (auto& row : r)
    for (auto& v : row) v *= s;
  return r;
}

inline Matrix add(const Matrix& a, const Matrix& b) {
  Matrix r = a;
  for (size_t i = 0; i < r.size(); i++)
    for (size_t j = 0; j < r.size(); j++) r[i][j] += b[i][j];
  return r;
}

inline double max_abs(const Matrix& a) {
  double m = 0;
  for (const auto& row : a)
    for (const auto& v : row) m = std::max(m, std::abs(v));
  return m;
}

inline Matrix pauli(const strobo::PhasedPauli& p) {
  size_t n = p.num_qubits();
  size_t dim = size_t{1} << n;
  Matrix m = zero(dim);
  cd ph;
  switch (p.phase_exponent() & 3) {
    case 0: ph = {1, 0}; break;
    case 1: ph = {0, 1}; break;
    case 2: ph = {-1, 0}; break;
    default: ph = {0, -1};
  }
  uint64_t xm = 0, zm = 0;
  for (size_t q = 0; q < n; q++) {
    if (p.x_bit(q)) xm |= uint64_t{1} << q;
    if (p.z_bit(q)) zm |= uint64_t{1} << q;
  }
  for (uint64_t b = 0; b < dim; b++) {
    int bits = 0;
    uint64_t anded = b & zm;
    while (anded) {
      bits ^= (int)(anded & 1);
      anded >>= 1;
    }
    m[b ^ xm][b] = ph * (bits ? -1.0 : 1.0);
  }
  return m;
}

inline Matrix sum(const strobo::WeightedPauliSum& s, double dt = 1.0, double lam = 1.0) {
  size_t dim = size_t{1} << s.num_qubits();
  Matrix m = zero(dim);
  for (const auto& [key, value] : s.evaluate(dt, lam)) {
    auto p = strobo::WeightedPauliSum::to_phased(s.num_qubits(), key);
    m = add(m, scale(pauli(p), value));
  }
  return m;
}

// exp(-i t H) by scaling-and-squaring Taylor series (H Hermitian, small t*||H||).
inline Matrix expm_minus_i(const Matrix& h, double t) {
  size_t dim = h.size();
  double norm = 0;
  for (const auto& row : h) {
    double s = 0;
    for (const auto& v : row) s += std::abs(v);
    norm = std::max(norm, s);
  }
  int squarings = 0;
  double scaled_t = t;
  while (std::abs(scaled_t) * norm > 0.25) {
    scaled_t /= 2;
    squarings++;
  }
  Matrix a = scale(h, cd(0, -scaled_t));
  Matrix result = identity(dim);
  Matrix term = identity(dim);
  for (int k = 1; k <= 24; k++) {
    term = mul(term, a);
    term = scale(term, cd(1.0 / k, 0));
    result = add(result, term);
  }
  for (int k = 0; k < squarings; k++) result = mul(result, result);
  return result;
}

}  // namespace mini
