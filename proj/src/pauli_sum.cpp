#include "strobo/pauli_sum.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace strobo {

namespace {

PauliKey key_of(const PhasedPauli& p) { return PauliKey{p.z_words(), p.x_words()}; }

void insert_monomial(std::vector<GradedCoeff>& poly, int dt, int lam, const Rational& c) {
  for (auto it = poly.begin(); it != poly.end(); ++it) {
    if (it->dt_pow == dt && it->lam_pow == lam) {
      it->c += c;
      if (it->c.is_zero()) poly.erase(it);
      return;
    }
    if (std::pair(it->dt_pow, it->lam_pow) > std::pair(dt, lam)) {
      poly.insert(it, GradedCoeff{dt, lam, c});
      return;
    }
  }
  poly.push_back(GradedCoeff{dt, lam, c});
}

}  // namespace

void WeightedPauliSum::add_phased(const PhasedPauli& p, const Rational& coeff, int dt_pow,
                                  int lam_pow) {
  if (coeff.is_zero()) return;
  if (p.num_qubits() != n_) throw std::invalid_argument("qubit count mismatch");
  uint8_t d = p.display_phase_exponent();
  if (d & 1) throw std::logic_error("non-Hermitian term in WeightedPauliSum");
  Rational c = (d == 2) ? -coeff : coeff;
  auto k = key_of(p);
  auto& poly = terms_[k];
  insert_monomial(poly, dt_pow, lam_pow, c);
  if (poly.empty()) terms_.erase(k);
}

void WeightedPauliSum::add(const PhasedPauli& p, const Rational& coeff, int dt_pow,
                           int lam_pow) {
  add_phased(p, coeff, dt_pow, lam_pow);
}

void WeightedPauliSum::add_str(const std::string& pauli, const Rational& coeff, int dt_pow,
                               int lam_pow) {
  add_phased(PhasedPauli::parse(n_, pauli), coeff, dt_pow, lam_pow);
}

void WeightedPauliSum::add_sum(const WeightedPauliSum& other) {
  add_scaled(other, Rational(1));
}

void WeightedPauliSum::add_scaled(const WeightedPauliSum& other, const Rational& factor) {
  if (factor.is_zero()) return;
  if (other.n_ != n_) throw std::invalid_argument("qubit count mismatch");
  for (const auto& [k, poly] : other.terms_) {
    auto& mine = terms_[k];
    for (const auto& m : poly) insert_monomial(mine, m.dt_pow, m.lam_pow, m.c * factor);
    if (mine.empty()) terms_.erase(k);
  }
}

WeightedPauliSum WeightedPauliSum::operator+(const WeightedPauliSum& o) const {
  WeightedPauliSum r = *this;
  r.add_sum(o);
  return r;
}

WeightedPauliSum WeightedPauliSum::operator-(const WeightedPauliSum& o) const {
  WeightedPauliSum r = *this;
  r.add_scaled(o, Rational(-1));
  return r;
}

WeightedPauliSum WeightedPauliSum::scaled(const Rational& factor) const {
  WeightedPauliSum r(n_);
  r.add_scaled(*this, factor);
  return r;
}

WeightedPauliSum WeightedPauliSum::graded_shift(int d_dt, int d_lam) const {
  WeightedPauliSum r(n_);
  for (const auto& [k, poly] : terms_) {
    auto& out = r.terms_[k];
    for (const auto& m : poly)
      out.push_back(GradedCoeff{m.dt_pow + d_dt, m.lam_pow + d_lam, m.c});
  }
  return r;
}

WeightedPauliSum WeightedPauliSum::grade_part(int dt_pow, int lam_pow) const {
  WeightedPauliSum r(n_);
  for (const auto& [k, poly] : terms_)
    for (const auto& m : poly)
      if (m.dt_pow == dt_pow && m.lam_pow == lam_pow) {
        auto& out = r.terms_[k];
        insert_monomial(out, 0, 0, m.c);
        if (out.empty()) r.terms_.erase(k);
      }
  return r;
}

WeightedPauliSum WeightedPauliSum::lambda_part(int lam_pow) const {
  WeightedPauliSum r(n_);
  for (const auto& [k, poly] : terms_)
    for (const auto& m : poly)
      if (m.lam_pow == lam_pow) {
        auto& out = r.terms_[k];
        insert_monomial(out, m.dt_pow, m.lam_pow, m.c);
        if (out.empty()) r.terms_.erase(k);
      }
  return r;
}

std::vector<std::pair<int, int>> WeightedPauliSum::grades() const {
  std::vector<std::pair<int, int>> g;
  for (const auto& [k, poly] : terms_)
    for (const auto& m : poly) {
      auto pr = std::pair(m.dt_pow, m.lam_pow);
      if (std::find(g.begin(), g.end(), pr) == g.end()) g.push_back(pr);
    }
  std::sort(g.begin(), g.end());
  return g;
}

bool WeightedPauliSum::operator==(const WeightedPauliSum& o) const {
  if (n_ != o.n_) return false;
  auto norm = [](const std::map<PauliKey, std::vector<GradedCoeff>>& t) {
    std::map<PauliKey, std::map<std::pair<int, int>, Rational>> m;
    for (const auto& [k, poly] : t)
      for (const auto& g : poly) m[k][{g.dt_pow, g.lam_pow}] = g.c;
    return m;
  };
  return norm(terms_) == norm(o.terms_);
}

std::vector<GradedCoeff> WeightedPauliSum::coeff(const PhasedPauli& p) const {
  auto it = terms_.find(key_of(p));
  if (it == terms_.end()) return {};
  uint8_t d = p.display_phase_exponent();
  if (d & 1) throw std::logic_error("non-Hermitian query");
  if (d == 0) return it->second;
  auto poly = it->second;
  for (auto& m : poly) m.c = -m.c;
  return poly;
}

Rational WeightedPauliSum::coeff_plain(const PhasedPauli& p) const {
  for (const auto& m : coeff(p))
    if (m.dt_pow == 0 && m.lam_pow == 0) return m.c;
  return Rational(0);
}

PhasedPauli WeightedPauliSum::to_phased(size_t n, const PauliKey& k) {
  PhasedPauli p(n);
  size_t ycount = 0;
  for (size_t q = 0; q < n; q++) {
    bool xb = (k.x[q >> 6] >> (q & 63)) & 1;
    bool zb = (k.z[q >> 6] >> (q & 63)) & 1;
    p.set_x(q, xb);
    p.set_z(q, zb);
    if (xb && zb) ycount++;
  }
  p.set_phase_exponent(static_cast<uint8_t>(ycount & 3));
  return p;
}

std::vector<uint64_t> WeightedPauliSum::support_mask() const {
  std::vector<uint64_t> m((n_ + 63) / 64, 0);
  for (const auto& [k, poly] : terms_)
    for (size_t w = 0; w < m.size(); w++) m[w] |= k.x[w] | k.z[w];
  return m;
}

bool WeightedPauliSum::terms_mutually_commute() const {
  std::vector<PhasedPauli> ps;
  for (const auto& [k, poly] : terms_) ps.push_back(to_phased(n_, k));
  for (size_t i = 0; i < ps.size(); i++)
    for (size_t j = i + 1; j < ps.size(); j++)
      if (!commutes(ps[i], ps[j])) return false;
  return true;
}

bool WeightedPauliSum::commutes_with(const PhasedPauli& p) const {
  for (const auto& [k, poly] : terms_)
    if (!commutes(to_phased(n_, k), p)) return false;
  return true;
}

WeightedPauliSum WeightedPauliSum::conjugated(const CliffordLayer& layer) const {
  WeightedPauliSum r(n_);
  for (const auto& [k, poly] : terms_) {
    PhasedPauli img = layer.conjugate(to_phased(n_, k));
    for (const auto& m : poly) r.add_phased(img, m.c, m.dt_pow, m.lam_pow);
  }
  return r;
}

WeightedPauliSum WeightedPauliSum::conjugated_pauli_exp(const PhasedPauli& axis,
                                                        int quarter_turns) const {
  int k = ((quarter_turns % 8) + 8) % 8;
  WeightedPauliSum r(n_);
  for (const auto& [key, poly] : terms_) {
    PhasedPauli p = to_phased(n_, key);
    PhasedPauli img = p;
    if (!commutes(axis, p)) {
      // e^{-i k pi/4 A} P e^{+i k pi/4 A} with {A,P}=0:
      //   k=0: P, k=1: -iAP, k=2: -P ... period 4 in k (2theta period 2pi).
      switch (k % 4) {
        case 0:
          break;
        case 1: {
          img = multiply(axis, p);
          img.set_phase_exponent(static_cast<uint8_t>((img.phase_exponent() + 3) & 3));
          break;
        }
        case 2:
          img.set_phase_exponent(static_cast<uint8_t>((img.phase_exponent() + 2) & 3));
          break;
        case 3: {
          img = multiply(axis, p);
          img.set_phase_exponent(static_cast<uint8_t>((img.phase_exponent() + 1) & 3));
          break;
        }
      }
    }
    for (const auto& m : poly) r.add_phased(img, m.c, m.dt_pow, m.lam_pow);
  }
  return r;
}

std::map<PauliKey, double> WeightedPauliSum::evaluate(double dt, double lambda) const {
  std::map<PauliKey, double> out;
  for (const auto& [k, poly] : terms_) {
    double v = 0;
    for (const auto& m : poly) {
      double t = m.c.to_double();
      for (int i = 0; i < m.dt_pow; i++) t *= dt;
      for (int i = 0; i < m.lam_pow; i++) t *= lambda;
      v += t;
    }
    if (v != 0.0) out[k] = v;
  }
  return out;
}

double WeightedPauliSum::abs_coeff_sum() const {
  double s = 0;
  for (const auto& [k, poly] : terms_)
    for (const auto& m : poly) s += std::abs(m.c.to_double());
  return s;
}

std::string WeightedPauliSum::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, poly] : terms_) {
    PhasedPauli p = to_phased(n_, k);
    for (const auto& m : poly) {
      if (!first) os << " + ";
      os << "(" << m.c.str();
      if (m.dt_pow) os << " dt^" << m.dt_pow;
      if (m.lam_pow) os << " lam^" << m.lam_pow;
      os << ")*" << p.str();
      first = false;
    }
  }
  return os.str();
}

WeightedPauliSum commutator_i(const WeightedPauliSum& a, const WeightedPauliSum& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("qubit count mismatch");
  size_t n = a.num_qubits();
  WeightedPauliSum r(n);
  for (const auto& [ka, pa] : a.terms()) {
    PhasedPauli p = WeightedPauliSum::to_phased(n, ka);
    for (const auto& [kb, pb] : b.terms()) {
      PhasedPauli q = WeightedPauliSum::to_phased(n, kb);
      if (commutes(p, q)) continue;
      // [P,Q] = 2 PQ for anticommuting Paulis; with the leading i the
      // result i*2*PQ is Hermitian.
      PhasedPauli pq = multiply(p, q);
      pq.set_phase_exponent(static_cast<uint8_t>((pq.phase_exponent() + 1) & 3));
      for (const auto& ma : pa)
        for (const auto& mb : pb)
          r.add(pq, ma.c * mb.c * Rational(2), ma.dt_pow + mb.dt_pow,
                ma.lam_pow + mb.lam_pow);
    }
  }
  return r;
}

}  // namespace strobo
