#include <doctest.h>

#include <random>

#include "dense_mini.hpp"
#include "strobo/clifford.hpp"
#include "strobo/pauli.hpp"
#include "strobo/pauli_sum.hpp"

using namespace strobo;

namespace {

PhasedPauli random_pauli(size_t n, std::mt19937_64& rng) {
  PhasedPauli p(n);
  std::uniform_int_distribution<int> d(0, 3);
  size_t ycount = 0;
  for (size_t q = 0; q < n; q++) {
    switch (d(rng)) {
      case 1:
        p.set_x(q, true);
        break;
      case 2:
        p.set_z(q, true);
        break;
      case 3:
        p.set_x(q, true);
        p.set_z(q, true);
        ycount++;
        break;
      default:
        break;
    }
  }
  p.set_phase_exponent((uint8_t)(ycount & 3));
  return p;
}

}  // namespace

TEST_CASE("single-qubit products match the Pauli table") {
  auto X = PhasedPauli::parse(1, "X1");
  auto Y = PhasedPauli::parse(1, "Y1");
  auto Z = PhasedPauli::parse(1, "Z1");
  CHECK(multiply(X, Y).str() == "iZ1");
  CHECK(multiply(Y, X).str() == "-iZ1");
  CHECK(multiply(Y, Z).str() == "iX1");
  CHECK(multiply(Z, X).str() == "iY1");
  CHECK(multiply(X, X).str() == "I");
  CHECK(multiply(Y, Y).str() == "I");
}

TEST_CASE("parse and print round trip") {
  auto p = PhasedPauli::parse(4, "-i X1 Y2 Z4");
  CHECK(p.str() == "-iX1 Y2 Z4");
  CHECK(p.weight() == 3);
  CHECK_FALSE(p.is_hermitian());
  CHECK(PhasedPauli::parse(3, "I").str() == "I");
  CHECK_THROWS(PhasedPauli::parse(2, "X3"));
  CHECK_THROWS(PhasedPauli::parse(2, "X1 Z1"));
}

TEST_CASE("multiply matches the dense product on small registers") {
  // Exhaustive for n<=2, randomized for n=3,4.
  for (size_t n = 1; n <= 2; n++) {
    for (uint64_t a = 0; a < (uint64_t{1} << (2 * n)); a++) {
      for (uint64_t b = 0; b < (uint64_t{1} << (2 * n)); b++) {
        PhasedPauli p(n), q(n);
        for (size_t k = 0; k < n; k++) {
          p.set_x(k, (a >> (2 * k)) & 1);
          p.set_z(k, (a >> (2 * k + 1)) & 1);
          q.set_x(k, (b >> (2 * k)) & 1);
          q.set_z(k, (b >> (2 * k + 1)) & 1);
        }
        auto pq = multiply(p, q);
        auto dense = mini::mul(mini::pauli(p), mini::pauli(q));
        CHECK(mini::max_abs(mini::sub(dense, mini::pauli(pq))) < 1e-12);
        bool comm = commutes(p, q);
        auto diff = mini::sub(mini::mul(mini::pauli(p), mini::pauli(q)),
                              mini::mul(mini::pauli(q), mini::pauli(p)));
        CHECK(comm == (mini::max_abs(diff) < 1e-12));
      }
    }
  }
  std::mt19937_64 rng(7);
  for (size_t n : {3, 4}) {
    for (int trial = 0; trial < 50; trial++) {
      auto p = random_pauli(n, rng), q = random_pauli(n, rng);
      auto pq = multiply(p, q);
      auto dense = mini::mul(mini::pauli(p), mini::pauli(q));
      CHECK(mini::max_abs(mini::sub(dense, mini::pauli(pq))) < 1e-12);
    }
  }
}

TEST_CASE("associativity and involution") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; trial++) {
    auto p = random_pauli(3, rng), q = random_pauli(3, rng), r = random_pauli(3, rng);
    CHECK(multiply(multiply(p, q), r) == multiply(p, multiply(q, r)));
  }
  // Hermitian P has P*P = I with no phase.
  auto p = PhasedPauli::parse(3, "X1 Y2 Z3");
  auto sq = multiply(p, p);
  CHECK(sq.is_identity_bits());
  CHECK(sq.phase_exponent() == 0);
}

TEST_CASE("commutes examples") {
  CHECK_FALSE(commutes(PhasedPauli::parse(1, "X1"), PhasedPauli::parse(1, "Z1")));
  CHECK(commutes(PhasedPauli::parse(2, "Z1 Z2"), PhasedPauli::parse(2, "X1 X2")));
  CHECK(commutes(PhasedPauli::parse(4, "Z1 Y2"), PhasedPauli::parse(4, "X1 X2 X3 X4")));
  CHECK_FALSE(commutes(PhasedPauli::parse(4, "Z1 Y2"), PhasedPauli::parse(4, "Y1 Y2 X3 X4")));
}

TEST_CASE("clifford gate identities") {
  CliffordLayer w = CliffordLayer::parse(1, "W1");
  CHECK(w.conjugate(PhasedPauli::parse(1, "X1")).str() == "Z1");
  CHECK(w.conjugate(PhasedPauli::parse(1, "Y1")).str() == "-Y1");
  CHECK(w.conjugate(PhasedPauli::parse(1, "Z1")).str() == "X1");
  CliffordLayer s = CliffordLayer::parse(1, "S1");
  CHECK(s.conjugate(PhasedPauli::parse(1, "X1")).str() == "Y1");
  CHECK(s.conjugate(PhasedPauli::parse(1, "Y1")).str() == "-X1");
  CHECK(s.conjugate(PhasedPauli::parse(1, "Z1")).str() == "Z1");
  CliffordLayer sd = CliffordLayer::parse(1, "Sd1");
  CHECK(sd.conjugate(PhasedPauli::parse(1, "X1")).str() == "-Y1");
  CHECK((s * sd).is_identity());
  CHECK((sd * s).is_identity());
  CHECK((w * w).is_identity());
}

TEST_CASE("clifford layer composition and inverse round-trip") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> d(0, 6);
  const char* gates[] = {"I", "X", "Y", "Z", "W", "S", "Sd"};
  for (int trial = 0; trial < 40; trial++) {
    CliffordLayer a(3), b(3);
    for (size_t q = 0; q < 3; q++) {
      a.apply_gate(q, gates[d(rng)]);
      a.apply_gate(q, gates[d(rng)]);
      b.apply_gate(q, gates[d(rng)]);
    }
    CHECK((a * a.inverse()).is_identity());
    auto p = random_pauli(3, rng);
    // conj_{a*b} = conj_a . conj_b
    CHECK((a * b).conjugate(p) == a.conjugate(b.conjugate(p)));
    // Conjugation preserves weight per qubit and commutation.
    auto q2 = random_pauli(3, rng);
    CHECK(commutes(p, q2) == commutes(a.conjugate(p), a.conjugate(q2)));
    CHECK(a.conjugate(p).weight() == p.weight());
  }
}

TEST_CASE("span membership") {
  auto g1 = PhasedPauli::parse(3, "X1 X2");
  auto g2 = PhasedPauli::parse(3, "X2 X3");
  CHECK(span_contains({g1}, g1));
  CHECK(span_contains({g1, g2}, PhasedPauli::parse(3, "X1 X3")));
  CHECK_FALSE(span_contains({g1, g2}, PhasedPauli::parse(3, "Z1 Z2")));
  // Enumeration cross-check: the group generated by {g1,g2} has 4 elements.
  size_t members = 0;
  for (uint64_t mask = 0; mask < 64; mask++) {
    PhasedPauli s(3);
    for (size_t k = 0; k < 3; k++) {
      s.set_x(k, (mask >> (2 * k)) & 1);
      s.set_z(k, (mask >> (2 * k + 1)) & 1);
    }
    if (span_contains({g1, g2}, s)) members++;
  }
  CHECK(members == 4);
}

TEST_CASE("normalizer sizes") {
  auto xs = [](size_t n, size_t i, size_t j) {
    PhasedPauli p(n);
    p.set_x(i, true);
    p.set_x(j, true);
    return p;
  };
  CHECK(normalizer(4, {xs(4, 0, 1), xs(4, 1, 2), xs(4, 2, 3)}).size() == 32);
  CHECK(normalizer(2, {}).size() == 16);
  // Brute force over the 16 two-qubit Paulis for one generator.
  auto norm = normalizer(2, {xs(2, 0, 1)});
  size_t brute = 0;
  for (uint64_t mask = 0; mask < 16; mask++) {
    PhasedPauli s(2);
    s.set_x(0, mask & 1);
    s.set_z(0, (mask >> 1) & 1);
    s.set_x(1, (mask >> 2) & 1);
    s.set_z(1, (mask >> 3) & 1);
    if (commutes(s, xs(2, 0, 1))) brute++;
  }
  CHECK(norm.size() == brute);
  CHECK(norm.size() == 8);
  CHECK_THROWS_AS(normalizer(16, {}), std::length_error);
  // Dependent generators are rejected by symmetrize-level callers via rank.
  CHECK(symplectic_rank({xs(3, 0, 1), xs(3, 1, 2), xs(3, 0, 2)}) == 2);
}

TEST_CASE("symmetrization lemma on small registers") {
  // For every commuting generator set from a fixed family and every Pauli s:
  // sum_g g s g^dag = 0 if s outside the group, |N| s inside.
  struct Family {
    size_t n;
    std::vector<std::string> gens;
  };
  std::vector<Family> families = {
      {2, {"X1 X2"}},
      {3, {"X1 X2", "X2 X3"}},
      {4, {"X1 X2", "X2 X3", "X3 X4"}},
      {4, {"X1 X2", "Z3 Z4"}},
      {4, {"X1 X2 X3 X4", "Z1 Z2 Z3 Z4"}},
  };
  for (const auto& fam : families) {
    std::vector<PhasedPauli> gens;
    for (const auto& g : fam.gens) gens.push_back(PhasedPauli::parse(fam.n, g));
    auto norm = normalizer(fam.n, gens);
    for (uint64_t mask = 0; mask < (uint64_t{1} << (2 * fam.n)); mask++) {
      PhasedPauli s(fam.n);
      for (size_t k = 0; k < fam.n; k++) {
        s.set_x(k, (mask >> (2 * k)) & 1);
        s.set_z(k, (mask >> (2 * k + 1)) & 1);
      }
      int64_t sum = 0;
      for (const auto& g : norm) sum += commutes(g, s) ? 1 : -1;
      if (span_contains(gens, s))
        CHECK(sum == (int64_t)norm.size());
      else
        CHECK(sum == 0);
    }
  }
}

TEST_CASE("weighted sums canonicalize and stay Hermitian") {
  WeightedPauliSum h(2);
  h.add_str("X1 X2", Rational(1));
  h.add_str("X1 X2", Rational(-1));
  CHECK(h.is_zero());
  h.add_str("-Z1", Rational(2));
  CHECK(h.coeff_plain(PhasedPauli::parse(2, "Z1")) == Rational(-2));
  WeightedPauliSum g(2);
  g.add(PhasedPauli::parse(2, "iX1"), Rational(1), 0, 0);
  // iX1 is not Hermitian; adding it must have thrown before this line.
  CHECK(g.is_zero());
}

TEST_CASE("non-Hermitian terms are rejected") {
  WeightedPauliSum g(1);
  CHECK_THROWS_AS(g.add(PhasedPauli::parse(1, "iX1"), Rational(1), 0, 0), std::logic_error);
}

TEST_CASE("commutator_i basics") {
  WeightedPauliSum a(1), b(1);
  a.add_str("Z1", Rational(1));
  b.add_str("X1", Rational(1));
  auto c = commutator_i(a, b);
  CHECK(c.coeff_plain(PhasedPauli::parse(1, "Y1")) == Rational(-2));
  CHECK(c.size() == 1);
}

TEST_CASE("conjugate by pi/4 pauli exponential") {
  // e^{-i pi/4 X1X2} Y1 e^{+i pi/4 X1X2} = Z1 X2 (dense-checked).
  WeightedPauliSum y1(2);
  y1.add_str("Y1", Rational(1));
  auto axis = PhasedPauli::parse(2, "X1 X2");
  auto out = y1.conjugated_pauli_exp(axis, 1);
  CHECK(out.coeff_plain(PhasedPauli::parse(2, "Z1 X2")) == Rational(1));
  CHECK(out.size() == 1);

  // Dense oracle on 4x4 matrices.
  auto u = mini::expm_minus_i(mini::pauli(axis), M_PI / 4);
  auto udag = mini::expm_minus_i(mini::pauli(axis), -M_PI / 4);
  auto lhs = mini::mul(u, mini::mul(mini::pauli(PhasedPauli::parse(2, "Y1")), udag));
  auto rhs = mini::pauli(PhasedPauli::parse(2, "Z1 X2"));
  CHECK(mini::max_abs(mini::sub(lhs, rhs)) < 1e-10);

  // Commuting axis leaves operators alone; pi/2 maps P -> APA.
  WeightedPauliSum z3(3);
  z3.add_str("Z3", Rational(1));
  CHECK(z3.conjugated_pauli_exp(PhasedPauli::parse(3, "X1 X2"), 1) == z3);
}

TEST_CASE("clifford conjugation preserves coefficient norms") {
  std::mt19937_64 rng(17);
  WeightedPauliSum h(3);
  h.add_str("X1 X2", Rational(2));
  h.add_str("Z2 Z3", Rational(-3));
  h.add_str("Y1", Rational(1, 2));
  CliffordLayer layer = CliffordLayer::parse(3, "W1 S2 X3");
  auto sum_sq = [](const WeightedPauliSum& s) {
    Rational t(0);
    for (const auto& [k, poly] : s.terms())
      for (const auto& m : poly) t += m.c * m.c;
    return t;
  };
  CHECK(sum_sq(h.conjugated(layer)) == sum_sq(h));
  (void)rng;
}
