#include "strobo/magnus.hpp"

#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace strobo {

namespace {

bool masks_overlap(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  for (size_t i = 0; i < a.size(); i++)
    if (a[i] & b[i]) return true;
  return false;
}

Rational rational_gcd(const Rational& a, const Rational& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  int64_t n = std::gcd(a.num() < 0 ? -a.num() : a.num(),
                       b.num() < 0 ? -b.num() : b.num());
  int64_t d = std::lcm(a.den(), b.den());
  return Rational(n, d);
}

}  // namespace

WeightedPauliSum MagnusReport::h_eff_total() const {
  WeightedPauliSum t = orders.empty() ? WeightedPauliSum() : orders[0];
  for (size_t i = 1; i < orders.size(); i++) t.add_sum(orders[i]);
  return t;
}

WeightedPauliSum MagnusReport::phi_total() const {
  WeightedPauliSum t = phi.empty() ? WeightedPauliSum() : phi[0];
  for (size_t i = 1; i < phi.size(); i++) t.add_sum(phi[i]);
  return t;
}

MagnusReport magnus_orders(const std::vector<ToggledSegment>& raw, int max_order) {
  if (raw.empty()) throw std::invalid_argument("magnus_orders: no segments");
  if (max_order < 0 || max_order > 2)
    throw std::invalid_argument("magnus_orders: symbolic orders limited to 0..2");

  // Normalize to a common duration by splitting into gcd-sized chunks.
  Rational w(0);
  for (const auto& s : raw) {
    if (!(Rational(0) < s.duration))
      throw std::invalid_argument("magnus_orders: nonpositive duration");
    w = rational_gcd(w, s.duration);
  }
  size_t n_qubits = raw[0].h.num_qubits();

  // Deduplicate segment values.
  std::vector<WeightedPauliSum> values;
  std::vector<std::vector<uint64_t>> masks;
  std::vector<int> seq;  // position -> value id
  {
    std::map<std::string, int> lut;
    for (const auto& s : raw) {
      Rational count = s.duration / w;
      if (count.den() != 1) throw std::logic_error("duration normalization failed");
      std::string key = s.h.str();
      auto [it, fresh] = lut.try_emplace(key, (int)values.size());
      if (fresh) {
        values.push_back(s.h);
        masks.push_back(s.h.support_mask());
      }
      for (int64_t r = 0; r < count.num(); r++) seq.push_back(it->second);
    }
  }
  size_t n = seq.size();
  size_t d = values.size();

  MagnusReport rep;
  rep.segment_count = n;
  rep.step = w;

  // Phi^(0) = w dt * sum_k H_k.
  WeightedPauliSum phi0(n_qubits);
  {
    std::vector<int64_t> tot(d, 0);
    for (int id : seq) tot[id]++;
    for (size_t a = 0; a < d; a++)
      if (tot[a]) phi0.add_scaled(values[a].graded_shift(1, 0), w * Rational(tot[a]));
  }
  rep.phi.push_back(phi0);

  // Pair counts N_ab = #{l>k : id_l=a, id_k=b}.
  std::vector<int64_t> pair_counts(d * d, 0);
  if (max_order >= 1) {
    std::vector<int64_t> seen(d, 0);
    for (size_t l = 0; l < n; l++) {
      int a = seq[l];
      for (size_t b = 0; b < d; b++) pair_counts[a * d + b] += seen[b];
      seen[a]++;
    }
  }

  // Memoized J(a,b) = i[V_a, V_b].
  std::map<std::pair<int, int>, WeightedPauliSum> jmemo;
  auto J = [&](int a, int b) -> const WeightedPauliSum& {
    auto key = std::make_pair(a, b);
    auto it = jmemo.find(key);
    if (it != jmemo.end()) return it->second;
    WeightedPauliSum r(n_qubits);
    if (masks_overlap(masks[a], masks[b])) r = commutator_i(values[a], values[b]);
    return jmemo.emplace(key, std::move(r)).first->second;
  };

  if (max_order >= 1) {
    // Phi^(1) = -(w dt)^2/2 * sum_{l>k} i[H_l, H_k].
    WeightedPauliSum phi1(n_qubits);
    for (size_t a = 0; a < d; a++)
      for (size_t b = 0; b < d; b++) {
        int64_t c = pair_counts[a * d + b];
        if (!c) continue;
        const auto& j = J((int)a, (int)b);
        if (!j.empty())
          phi1.add_scaled(j.graded_shift(2, 0), w * w * Rational(-c, 2));
      }
    rep.phi.push_back(phi1);
  }

  if (max_order >= 2) {
    // Triple counts T_abc = #{m>l>k} via a running pair table.
    std::unordered_map<uint64_t, int64_t> triples;
    {
      std::vector<int64_t> seen(d, 0);
      std::vector<int64_t> pairs(d * d, 0);  // l>k among positions seen
      for (size_t m = 0; m < n; m++) {
        int a = seq[m];
        for (size_t b = 0; b < d; b++)
          for (size_t c = 0; c < d; c++) {
            int64_t p = pairs[b * d + c];
            if (p) triples[(uint64_t)a * d * d + b * d + c] += p;
          }
        for (size_t b = 0; b < d; b++) pairs[(size_t)a * d + b] += seen[b];
        seen[a]++;
      }
    }

    // Appendix-style third order for piecewise-constant segments, written
    // with the Hermitian pair J:
    //   [A,[B,C]] = -J(A, J(B,C)),  [[A,B],C] = -J(J(A,B), C)
    //   Phi^(2) = (w dt)^3/6 { sum_{m>l>k} J(m,J(l,k)) + J(J(m,l),k)
    //                        + 1/2 sum_{l>k} J(l,J(l,k)) + J(J(l,k),k) }.
    WeightedPauliSum phi2(n_qubits);
    Rational w3 = w * w * w;
    for (const auto& [key, cnt] : triples) {
      int a = (int)(key / (d * d));
      int b = (int)((key / d) % d);
      int c = (int)(key % d);
      const auto& jbc = J(b, c);
      if (!jbc.empty()) {
        WeightedPauliSum t = commutator_i(values[a], jbc);
        if (!t.empty()) phi2.add_scaled(t.graded_shift(3, 0), w3 * Rational(cnt, 6));
      }
      const auto& jab = J(a, b);
      if (!jab.empty()) {
        WeightedPauliSum t = commutator_i(jab, values[c]);
        if (!t.empty()) phi2.add_scaled(t.graded_shift(3, 0), w3 * Rational(cnt, 6));
      }
    }
    for (size_t a = 0; a < d; a++)
      for (size_t b = 0; b < d; b++) {
        int64_t cnt = pair_counts[a * d + b];
        if (!cnt) continue;
        const auto& jab = J((int)a, (int)b);
        if (jab.empty()) continue;
        WeightedPauliSum t1 = commutator_i(values[a], jab);
        if (!t1.empty()) phi2.add_scaled(t1.graded_shift(3, 0), w3 * Rational(cnt, 12));
        WeightedPauliSum t2 = commutator_i(jab, values[b]);
        if (!t2.empty()) phi2.add_scaled(t2.graded_shift(3, 0), w3 * Rational(cnt, 12));
      }
    rep.phi.push_back(phi2);
  }

  // H_eff^(k) = Phi^(k) / T_n with T_n = n w dt.
  Rational inv_tn = Rational(1) / (w * Rational((int64_t)n));
  for (const auto& p : rep.phi) rep.orders.push_back(p.graded_shift(-1, 0).scaled(inv_tn));
  return rep;
}

std::vector<ToggledSegment> collapse_equal_runs(const std::vector<ToggledSegment>& segments,
                                                size_t run) {
  if (run == 0 || segments.size() % run != 0)
    throw std::invalid_argument("collapse_equal_runs: segment count not divisible");
  std::vector<ToggledSegment> out;
  for (size_t i = 0; i < segments.size(); i += run) {
    Rational dur = segments[i].duration;
    WeightedPauliSum acc = segments[i].h;
    for (size_t j = 1; j < run; j++) {
      if (!(segments[i + j].duration == dur))
        throw std::invalid_argument("collapse_equal_runs: unequal durations in run");
      acc.add_sum(segments[i + j].h);
    }
    // Certify the run is mutually commuting (the collapse is exact).
    std::vector<PhasedPauli> ps;
    for (size_t j = 0; j < run; j++)
      for (size_t k = j + 1; k < run; k++)
        if (!commutator_i(segments[i + j].h, segments[i + k].h).empty())
          throw std::logic_error("collapse_equal_runs: non-commuting run");
    out.push_back(ToggledSegment{acc.scaled(Rational(1, (int64_t)run)),
                                 dur * Rational((int64_t)run)});
  }
  return out;
}

MagnusReport effective_hamiltonian(const PulseSchedule& s, int max_order) {
  TogglingResult t = s.toggling_frame();
  if (!t.exact)
    throw std::runtime_error("schedule has inexact pulses; symbolic path unavailable");
  return magnus_orders(t.segments, max_order);
}

}  // namespace strobo
