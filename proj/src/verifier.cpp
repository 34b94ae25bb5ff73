#include "strobo/verifier.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace strobo {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

std::complex<double> phase_value(uint8_t e) {
  switch (e & 3) {
    case 0:
      return {1, 0};
    case 1:
      return {0, 1};
    case 2:
      return {-1, 0};
    default:
      return {0, -1};
  }
}

}  // namespace

WeightedPauliSum BathModel::interaction() const {
  WeightedPauliSum s(total_qubits());
  for (const auto& c : couplings) {
    PhasedPauli sys = PhasedPauli::single(total_qubits(), c.system_qubit, c.axis);
    for (const auto& [key, poly] : c.bath_op.terms()) {
      PhasedPauli b = WeightedPauliSum::to_phased(total_qubits(), key);
      PhasedPauli prod = multiply(sys, b);
      for (const auto& m : poly) s.add(prod, m.c, m.dt_pow, m.lam_pow + 1);
    }
  }
  return s;
}

WeightedPauliSum BathModel::ambient() const {
  WeightedPauliSum s = extend_sum(h_bath, total_qubits());
  s.add_sum(interaction());
  return s;
}

bool BathModel::radii_consistent(const GridLayout& grid) const {
  for (size_t a = 0; a < couplings.size(); a++) {
    for (size_t b = a + 1; b < couplings.size(); b++) {
      size_t i = couplings[a].system_qubit, j = couplings[b].system_qubit;
      if (grid.distance(i, j) >= locality_r) {
        if (!commutator_i(couplings[a].bath_op, couplings[b].bath_op).empty())
          return false;
      }
    }
  }
  // For every bath term h: pairs (i,j) with d >= r' must not both see h.
  for (const auto& [key, poly] : h_bath.terms()) {
    WeightedPauliSum h(total_qubits());
    h.add(WeightedPauliSum::to_phased(total_qubits(), key), Rational(1));
    std::vector<size_t> touched;
    for (const auto& c : couplings)
      if (!commutator_i(c.bath_op, h).empty()) touched.push_back(c.system_qubit);
    for (size_t a = 0; a < touched.size(); a++)
      for (size_t b = a + 1; b < touched.size(); b++)
        if (touched[a] != touched[b] &&
            grid.distance(touched[a], touched[b]) >= locality_r_prime)
          return false;
  }
  return true;
}

WeightedPauliSum extend_sum(const WeightedPauliSum& s, size_t n_total) {
  if (s.num_qubits() == n_total) return s;
  if (s.num_qubits() > n_total) throw std::invalid_argument("cannot shrink a sum");
  WeightedPauliSum out(n_total);
  for (const auto& [key, poly] : s.terms()) {
    PhasedPauli p = WeightedPauliSum::to_phased(s.num_qubits(), key);
    PhasedPauli q(n_total);
    for (size_t i = 0; i < s.num_qubits(); i++) {
      q.set_x(i, p.x_bit(i));
      q.set_z(i, p.z_bit(i));
    }
    q.set_phase_exponent(p.phase_exponent());
    for (const auto& m : poly) out.add(q, m.c, m.dt_pow, m.lam_pow);
  }
  return out;
}

CliffordLayer extend_layer(const CliffordLayer& l, size_t n_total) {
  if (l.num_qubits() == n_total) return l;
  if (l.num_qubits() > n_total) throw std::invalid_argument("cannot shrink a layer");
  CliffordLayer out(n_total);
  // Reconstruct by composing the gate actions; image tables copy directly.
  for (size_t q = 0; q < l.num_qubits(); q++) {
    // Transfer by brute force: find the gate word mapping (X,Z) to the images.
    // Single-qubit Cliffords are generated by W and S words of length <= 5.
    static const std::vector<std::string> words = [] {
      std::vector<std::string> ws = {""};
      for (int len = 1; len <= 5; len++) {
        std::vector<std::string> next;
        for (const auto& w : ws)
          if ((int)w.size() == len - 1)
            for (char g : {'W', 'S'}) next.push_back(w + g);
        ws.insert(ws.end(), next.begin(), next.end());
      }
      return ws;
    }();
    bool found = false;
    for (const auto& w : words) {
      CliffordLayer probe(1);
      for (char g : w) probe.apply_gate(0, std::string(1, g));
      if (probe.image_x(0) == l.image_x(q) && probe.image_z(0) == l.image_z(q)) {
        for (char g : w) out.apply_gate(q, std::string(1, g));
        found = true;
        break;
      }
    }
    if (!found) {
      // Include Pauli prefixes for phase-flipped images.
      for (const char* pauli : {"X", "Y", "Z"}) {
        for (const auto& w : words) {
          CliffordLayer probe(1);
          probe.apply_gate(0, pauli);
          for (char g : w) probe.apply_gate(0, std::string(1, g));
          if (probe.image_x(0) == l.image_x(q) && probe.image_z(0) == l.image_z(q)) {
            out.apply_gate(q, pauli);
            for (char g : w) out.apply_gate(q, std::string(1, g));
            found = true;
            break;
          }
        }
        if (found) break;
      }
    }
    if (!found) throw std::logic_error("failed to transfer single-qubit clifford");
  }
  return out;
}

Mat pauli_matrix(size_t n, const PhasedPauli& p) {
  size_t dim = size_t{1} << n;
  Mat m = Mat::Zero(dim, dim);
  std::complex<double> ph = phase_value(p.phase_exponent());
  // P|b> = i^phase (-1)^{<z,b>} |b ^ x>.
  uint64_t xmask = 0, zmask = 0;
  for (size_t q = 0; q < n; q++) {
    if (p.x_bit(q)) xmask |= uint64_t{1} << q;
    if (p.z_bit(q)) zmask |= uint64_t{1} << q;
  }
  for (uint64_t b = 0; b < dim; b++) {
    int sign = std::popcount(b & zmask) & 1 ? -1 : 1;
    m((Eigen::Index)(b ^ xmask), (Eigen::Index)b) = ph * double(sign);
  }
  return m;
}

Mat sum_matrix(size_t n, const WeightedPauliSum& s, double dt, double lambda) {
  size_t dim = size_t{1} << n;
  Mat m = Mat::Zero(dim, dim);
  for (const auto& [key, value] : s.evaluate(dt, lambda)) {
    PhasedPauli p = WeightedPauliSum::to_phased(n, key);
    // to_phased yields display phase 0, so the matrix is Hermitian.
    m += value * pauli_matrix(n, p);
  }
  return m;
}

namespace {

Eigen::Matrix2cd sq_pauli_matrix(const SqPauli& p) {
  Eigen::Matrix2cd x, z, r;
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  r = Eigen::Matrix2cd::Identity();
  if (p.x) r = r * x;
  if (p.z) r = r * z;
  return phase_value(p.phase) * r;
}

Eigen::Matrix2cd single_clifford_matrix(const SqPauli& img_x, const SqPauli& img_z) {
  // Search the 24 single-qubit Cliffords (mod phase) generated by W and S.
  static const std::vector<Eigen::Matrix2cd> cliffords = [] {
    Eigen::Matrix2cd w, s;
    w << 1, 1, 1, -1;
    w /= std::sqrt(2.0);
    s << 1, 0, 0, kI;
    std::vector<Eigen::Matrix2cd> out = {Eigen::Matrix2cd::Identity()};
    auto canon = [](Eigen::Matrix2cd m) {
      for (int i = 0; i < 4; i++) {
        std::complex<double> v = m(i / 2, i % 2);
        if (std::abs(v) > 1e-9) {
          m *= std::conj(v) / std::abs(v);
          break;
        }
      }
      return m;
    };
    std::vector<Eigen::Matrix2cd> canon_seen = {canon(out[0])};
    for (size_t i = 0; i < out.size(); i++) {
      for (const auto& g : {w, s}) {
        Eigen::Matrix2cd cand = g * out[i];
        Eigen::Matrix2cd cc = canon(cand);
        bool fresh = true;
        for (const auto& seen : canon_seen)
          if ((seen - cc).cwiseAbs().maxCoeff() < 1e-8) {
            fresh = false;
            break;
          }
        if (fresh) {
          out.push_back(cand);
          canon_seen.push_back(cc);
        }
      }
    }
    return out;
  }();
  Eigen::Matrix2cd mx = sq_pauli_matrix(img_x), mz = sq_pauli_matrix(img_z);
  Eigen::Matrix2cd x, z;
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  for (const auto& c : cliffords) {
    if ((c * x * c.adjoint() - mx).cwiseAbs().maxCoeff() < 1e-9 &&
        (c * z * c.adjoint() - mz).cwiseAbs().maxCoeff() < 1e-9)
      return c;
  }
  throw std::logic_error("single-qubit clifford matrix not found");
}

}  // namespace

Mat layer_matrix(const CliffordLayer& layer, size_t n_total) {
  CliffordLayer l = extend_layer(layer, n_total);
  Mat m = Mat::Ones(1, 1);
  // Qubit 0 is the least significant bit: build kron from the top qubit down.
  for (size_t qi = n_total; qi-- > 0;) {
    Eigen::Matrix2cd g = single_clifford_matrix(l.image_x(qi), l.image_z(qi));
    Mat next(m.rows() * 2, m.cols() * 2);
    next.topLeftCorner(m.rows(), m.cols()) = g(0, 0) * m;
    next.topRightCorner(m.rows(), m.cols()) = g(0, 1) * m;
    next.bottomLeftCorner(m.rows(), m.cols()) = g(1, 0) * m;
    next.bottomRightCorner(m.rows(), m.cols()) = g(1, 1) * m;
    m = std::move(next);
  }
  return m;
}

Mat evolve_matrix(const Mat& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  Eigen::VectorXcd ph = (-kI * t * es.eigenvalues().array()).exp();
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

Mat simulate_dense(const PulseSchedule& s, double dt_value, double lambda_value,
                   const WeightedPauliSum* ambient, size_t qubit_cap) {
  size_t n = ambient ? std::max(s.num_qubits(), ambient->num_qubits()) : s.num_qubits();
  if (n > qubit_cap) throw std::length_error("dense dimension cap exceeded");
  size_t dim = size_t{1} << n;
  Mat u = Mat::Identity(dim, dim);
  for (const auto& e : s.events()) {
    switch (e.type) {
      case ScheduleEvent::Type::kPulse:
        u = layer_matrix(e.layer, n) * u;
        break;
      case ScheduleEvent::Type::kRotation: {
        Mat ax = sum_matrix(n, extend_sum(e.axis, n), dt_value, lambda_value);
        u = evolve_matrix(ax, e.angle.to_radians()) * u;
        break;
      }
      case ScheduleEvent::Type::kEvolve: {
        WeightedPauliSum h = extend_sum(s.hamiltonian(e.hamiltonian_id), n);
        if (ambient) h.add_sum(extend_sum(*ambient, n));
        Mat hm = sum_matrix(n, h, dt_value, lambda_value);
        double t = e.duration.to_double() * (s.durations_in_dt() ? dt_value : 1.0);
        u = evolve_matrix(hm, t) * u;
      }
    }
  }
  return u;
}

Generator extract_generator(const Mat& u, double t) {
  Eigen::ComplexSchur<Mat> schur(u);
  if (schur.info() != Eigen::Success) throw std::runtime_error("schur failed");
  const Mat& tt = schur.matrixT();
  // A unitary is normal, so T must be diagonal up to rounding.
  double offdiag = 0;
  for (Eigen::Index i = 0; i < tt.rows(); i++)
    for (Eigen::Index j = i + 1; j < tt.cols(); j++) offdiag += std::abs(tt(i, j));
  if (offdiag > 1e-8 * tt.rows()) throw std::runtime_error("input is not unitary enough");
  Eigen::VectorXd angles(tt.rows());
  for (Eigen::Index i = 0; i < tt.rows(); i++) {
    std::complex<double> lam = tt(i, i);
    double th = std::arg(lam);
    if (std::abs(std::abs(th) - M_PI) < 1e-9)
      throw std::runtime_error("eigenvalue at the log branch cut");
    angles(i) = -th / t;
  }
  Mat h = schur.matrixU() * angles.cast<std::complex<double>>().asDiagonal() *
          schur.matrixU().adjoint();
  Generator g;
  g.identity_coeff = h.trace().real() / (double)tt.rows();
  g.h = h - g.identity_coeff * Mat::Identity(tt.rows(), tt.cols());
  return g;
}

double pauli_coefficient(size_t n, const Mat& h, const PhasedPauli& p) {
  Mat pm = pauli_matrix(n, p);
  return ((pm.adjoint() * h).trace() / (double)h.rows()).real();
}

double spectral_norm(const Mat& m) {
  if (m.rows() <= 256) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
  }
  Eigen::BDCSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

double frobenius_norm(const Mat& m) { return m.norm(); }

double phase_optimized_distance(const Mat& u, const Mat& v) {
  std::complex<double> tr = (v.adjoint() * u).trace();
  double seed = std::abs(tr) > 1e-14 ? std::arg(tr) : 0.0;
  double best = std::numeric_limits<double>::infinity();
  // Golden-section refinement around the trace-aligned phase.
  double lo = seed - 0.2, hi = seed + 0.2;
  auto f = [&](double phi) {
    return spectral_norm(u - std::exp(kI * phi) * v);
  };
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 40; it++) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  best = std::min(fc, fd);
  best = std::min(best, f(seed));
  return best;
}

FitResult fit_scaling(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw std::invalid_argument("need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  size_t n = points.size();
  for (auto [x, y] : points) {
    if (x <= 0 || y <= 0) throw std::invalid_argument("log-log fit needs positive data");
    double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  double den = n * sxx - sx * sx;
  double slope = (n * sxy - sx * sy) / den;
  double intercept = (sy - slope * sx) / n;
  double ss_res = 0, ss_tot = 0, ybar = sy / n;
  for (auto [x, y] : points) {
    double ly = std::log(y);
    double fy = slope * std::log(x) + intercept;
    ss_res += (ly - fy) * (ly - fy);
    ss_tot += (ly - ybar) * (ly - ybar);
  }
  return {slope, intercept, ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0};
}

EtaResult eta(const PulseSchedule& s, const BathModel& bath,
              const WeightedPauliSum& system_on_total, double dt_value,
              double lambda_value, size_t qubit_cap) {
  WeightedPauliSum amb = bath.ambient();
  Mat u = simulate_dense(s, dt_value, lambda_value, &amb, qubit_cap);
  double t = s.total_duration().to_double() * (s.durations_in_dt() ? dt_value : 1.0);
  WeightedPauliSum ideal = extend_sum(system_on_total, bath.total_qubits());
  ideal.add_sum(extend_sum(bath.h_bath, bath.total_qubits()));
  Mat hm = sum_matrix(bath.total_qubits(), ideal, dt_value, lambda_value);
  Mat uid = evolve_matrix(hm, t);
  EtaResult r;
  r.raw = spectral_norm(u - uid);
  r.phase_optimized = phase_optimized_distance(u, uid);
  return r;
}

double eta_bound(const EtaBoundParams& p, double norm_sb, double norm_bx, size_t n_dd,
                 double dt_value, double lambda_value) {
  double ndt = (double)n_dd * dt_value;
  double lam_sb = lambda_value * norm_sb;
  double h2 = ndt * ndt * lam_sb * lam_sb * (p.c0 * lam_sb + p.c1 * norm_bx);
  double tot = lam_sb + norm_bx;
  double tail = ndt * ndt * ndt * lam_sb * tot * tot * tot * (p.c2 + p.c3 * tot * ndt);
  return ndt * (h2 + tail);
}

namespace {

Mat codespace_projector(const CodeLayout& code, size_t n_total) {
  size_t dim = size_t{1} << n_total;
  Mat p = Mat::Identity(dim, dim);
  for (const auto& s : code.enabled_stabilizers()) {
    PhasedPauli ext(n_total);
    for (size_t q = 0; q < s.num_qubits(); q++) {
      ext.set_x(q, s.x_bit(q));
      ext.set_z(q, s.z_bit(q));
    }
    ext.set_phase_exponent(s.phase_exponent());
    p = p * 0.5 * (Mat::Identity(dim, dim) + pauli_matrix(n_total, ext));
  }
  return p;
}

}  // namespace

SuppressionReportSet suppression_sweep(const CodeLayout& code, const BathModel& bath,
                                       const WeightedPauliSum& v,
                                       const std::vector<double>& h_values, double g,
                                       size_t k, double delta_t, double dt_scale,
                                       size_t qubit_cap) {
  size_t n = bath.total_qubits();
  if (n > qubit_cap) throw std::length_error("dense dimension cap exceeded");
  if (v.num_qubits() > n)
    throw std::invalid_argument("V outside the system/bath register");
  WeightedPauliSum vext = extend_sum(v, n);

  SuppressionReportSet out;
  // Classify the system part of every V term.
  for (const auto& [key, poly] : vext.terms()) {
    PhasedPauli p = WeightedPauliSum::to_phased(n, key);
    PhasedPauli sys(code.grid().num_qubits());
    for (size_t q = 0; q < code.grid().num_qubits(); q++) {
      sys.set_x(q, p.x_bit(q));
      sys.set_z(q, p.z_bit(q));
    }
    out.classifications.emplace_back(sys.str(), classify_error(code, sys));
  }

  WeightedPauliSum hp = extend_sum(code.code_hamiltonian(), n);
  WeightedPauliSum hb = extend_sum(bath.h_bath, n);
  Mat hp_m = sum_matrix(n, hp, 1.0, 1.0);
  Mat hb_m = sum_matrix(n, hb, 1.0, 1.0) / (dt_scale * dt_scale);
  Mat v_m = sum_matrix(n, vext, 1.0, 1.0);
  Mat proj = codespace_projector(code, n);
  double t = (double)k * delta_t;

  for (double h : h_values) {
    Mat h0 = h * hp_m + hb_m;
    Mat hfull = h0 - g * v_m;
    Mat u = evolve_matrix(hfull, t);
    Mat uid = evolve_matrix(h0, t);
    SuppressionPoint pt;
    pt.h = h;
    pt.deviation = spectral_norm((u - uid) * proj);
    pt.leakage = spectral_norm((Mat::Identity(u.rows(), u.cols()) - proj) * u * proj);
    // F(t) = g * int_0^t e^{i H0 tau} V e^{-i H0 tau} dtau * P, exactly.
    Eigen::SelfAdjointEigenSolver<Mat> es(h0);
    Mat vt = es.eigenvectors().adjoint() * v_m * es.eigenvectors();
    for (Eigen::Index a = 0; a < vt.rows(); a++) {
      for (Eigen::Index b = 0; b < vt.cols(); b++) {
        double w = es.eigenvalues()(a) - es.eigenvalues()(b);
        std::complex<double> f =
            std::abs(w) < 1e-12
                ? std::complex<double>(t, 0)
                : (std::exp(kI * w * t) - 1.0) / (kI * w);
        vt(a, b) *= f;
      }
    }
    Mat fmat = g * es.eigenvectors() * vt * es.eigenvectors().adjoint() * proj;
    pt.f_norm = spectral_norm(fmat);
    out.points.push_back(pt);
  }
  return out;
}


ErrorCatalog catalog_error_terms(int m, int q, int k_local, int l_local,
                                 const GridLayout& grid, const BathModel& bath,
                                 const DDSequence& dd) {
  if (m < 1 || m > 3) throw std::invalid_argument("catalog supports m in 1..3");
  if (q < 0 || q > m) throw std::invalid_argument("need 0 <= q <= m");
  size_t n_total = bath.total_qubits();
  size_t n_sys = bath.n_system;

  ErrorCatalog cat;
  cat.m = m;
  cat.q = q;
  cat.locality_bound = (size_t)(q * l_local + (m - q) * (k_local - 1));
  double ndd = (double)dd.n_segments();
  cat.count_bound = std::pow(ndd, m) * std::pow(3.0 * (double)n_sys, q);
  cat.base_spread = std::max(0, q - 1) * bath.locality_r;
  double step = grid.connectivity() == Connectivity::kDiagonal ? std::sqrt(2.0) : 1.0;

  // Factor pool: toggled system terms (type X), the bath Hamiltonian
  // (type B, frame-invariant), and toggled interaction terms (type SB).
  struct Factor {
    WeightedPauliSum sum;
    int type;  // 0 = system, 1 = bath, 2 = interaction
  };
  WeightedPauliSum hx = extend_sum(build_system_hamiltonian(grid), n_total);
  WeightedPauliSum hb = extend_sum(bath.h_bath, n_total);
  WeightedPauliSum hsb = bath.interaction();
  std::vector<Factor> factors;
  std::vector<std::string> seen;
  for (const auto& f : dd.frames) {
    CliffordLayer ext = extend_layer(f, n_total);
    std::pair<WeightedPauliSum, int> toggled[2] = {{hx.conjugated(ext), 0},
                                                   {hsb.conjugated(ext), 2}};
    for (const auto& [sum, type] : toggled) {
      std::string key = std::to_string(type) + "|" + sum.str();
      if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
        seen.push_back(key);
        factors.push_back({sum, type});
      }
    }
  }
  factors.push_back({hb, 1});

  auto record = [&](const WeightedPauliSum& res, int lam, int bfac) {
    for (const auto& [key, poly] : res.terms()) {
      PhasedPauli p = WeightedPauliSum::to_phased(n_total, key);
      CatalogTerm term;
      term.op = p;
      term.lambda_power = lam;
      term.bath_factors = bfac;
      std::vector<size_t> sys_support;
      for (size_t qb = 0; qb < n_sys; qb++)
        if (p.x_bit(qb) || p.z_bit(qb)) sys_support.push_back(qb);
      term.system_locality = sys_support.size();
      term.diameter = 0;
      for (size_t a = 0; a < sys_support.size(); a++)
        for (size_t b = a + 1; b < sys_support.size(); b++)
          term.diameter = std::max(term.diameter,
                                   grid.distance(sys_support[a], sys_support[b]));
      cat.terms.push_back(term);
    }
  };

  if (m == 1) {
    for (const auto& f : factors) {
      int lam = f.type == 2 ? 1 : 0;
      if (lam == q) record(f.sum, lam, f.type == 1 ? 1 : 0);
    }
  } else if (m == 2) {
    for (const auto& a : factors)
      for (const auto& b : factors) {
        int lam = (a.type == 2) + (b.type == 2);
        if (lam != q) continue;
        record(commutator_i(a.sum, b.sum), lam, (a.type == 1) + (b.type == 1));
      }
  } else {
    for (const auto& a : factors)
      for (const auto& b : factors)
        for (const auto& c : factors) {
          int lam = (a.type == 2) + (b.type == 2) + (c.type == 2);
          if (lam != q) continue;
          int bf = (a.type == 1) + (b.type == 1) + (c.type == 1);
          WeightedPauliSum inner = commutator_i(b.sum, c.sum);
          if (!inner.empty()) record(commutator_i(a.sum, inner), lam, bf);
          WeightedPauliSum left = commutator_i(a.sum, b.sum);
          if (!left.empty()) record(commutator_i(left, c.sum), lam, bf);
        }
  }

  // Deduplicate by operator bits.
  std::sort(cat.terms.begin(), cat.terms.end(), [](const CatalogTerm& a,
                                                   const CatalogTerm& b) {
    if (a.op.z_words() != b.op.z_words()) return a.op.z_words() < b.op.z_words();
    if (a.op.x_words() != b.op.x_words()) return a.op.x_words() < b.op.x_words();
    return a.bath_factors < b.bath_factors;
  });
  cat.terms.erase(std::unique(cat.terms.begin(), cat.terms.end(),
                              [](const CatalogTerm& a, const CatalogTerm& b) {
                                return a.op.z_words() == b.op.z_words() &&
                                       a.op.x_words() == b.op.x_words() &&
                                       a.bath_factors == b.bath_factors;
                              }),
                  cat.terms.end());

  for (const auto& term : cat.terms) {
    if (term.system_locality > cat.locality_bound) cat.locality_ok = false;
    int x_factors = m - q - term.bath_factors;
    double bound = cat.base_spread + term.bath_factors * bath.locality_r_prime +
                   std::max(0, x_factors) * step;
    if (term.diameter > bound + 1e-9) cat.spread_ok = false;
  }
  if ((double)cat.terms.size() > cat.count_bound) cat.count_ok = false;
  return cat;
}

}  // namespace strobo
