#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "strobo/decoupling.hpp"
#include "strobo/lattice.hpp"
#include "strobo/pauli_sum.hpp"
#include "strobo/schedule.hpp"

namespace strobo {

using Mat = Eigen::MatrixXcd;

// Finite qubit-register environment: a bath Hamiltonian on the bath register
// and 1-local system couplings sigma_i^alpha x B_i^alpha. All sums live on
// the combined register (system qubits first, then bath).
struct BathModel {
  size_t n_system = 0;
  size_t n_bath = 0;
  WeightedPauliSum h_bath;  // acts on bath qubits only
  struct Coupling {
    size_t system_qubit;
    char axis;  // 'X','Y','Z'
    WeightedPauliSum bath_op;
  };
  std::vector<Coupling> couplings;
  double locality_r = 0;        // d(i,j) >= r  => [B_i, B_j] = 0
  double locality_r_prime = 0;  // bath-term reach, see radii_consistent

  size_t total_qubits() const { return n_system + n_bath; }

  // sum_i sum_alpha sigma_i^alpha x B_i^alpha with lambda grading 1.
  WeightedPauliSum interaction() const;
  // h_bath + lambda * interaction (the environment added to every segment).
  WeightedPauliSum ambient() const;

  // Checks the declared radii against the actual commutators.
  bool radii_consistent(const GridLayout& grid) const;
};

// Extends a sum or layer on fewer qubits to a wider register (identity on
// the added qubits).
WeightedPauliSum extend_sum(const WeightedPauliSum& s, size_t n_total);
CliffordLayer extend_layer(const CliffordLayer& l, size_t n_total);

Mat pauli_matrix(size_t n, const PhasedPauli& p);
Mat sum_matrix(size_t n, const WeightedPauliSum& s, double dt, double lambda);
Mat layer_matrix(const CliffordLayer& layer, size_t n_total);
Mat evolve_matrix(const Mat& h, double t);

// Exact ordered product of segment exponentials and pulse matrices.
// `ambient` (if given) is added to the Hamiltonian of every evolve segment.
Mat simulate_dense(const PulseSchedule& s, double dt_value, double lambda_value = 0.0,
                   const WeightedPauliSum* ambient = nullptr, size_t qubit_cap = 14);

struct Generator {
  Mat h;                    // Hermitian, identity component removed
  double identity_coeff;    // reported separately (global phase)
};

// H = i log(U) / T via the Schur form, principal branch; throws when an
// eigenvalue sits at the branch cut.
Generator extract_generator(const Mat& u, double t);

double pauli_coefficient(size_t n, const Mat& h, const PhasedPauli& p);

double spectral_norm(const Mat& m);
double frobenius_norm(const Mat& m);
// min over a global phase of ||U - e^{i phi} V|| (spectral norm).
double phase_optimized_distance(const Mat& u, const Mat& v);

struct FitResult {
  double slope;
  double intercept;
  double r2;
};

// Least-squares slope in log-log coordinates.
FitResult fit_scaling(const std::vector<std::pair<double, double>>& points);

struct EtaResult {
  double raw;
  double phase_optimized;
};

// Effective noise strength: distance between the pulsed evolution under
// system+bath+interaction and the ideal e^{-i (system + H_B) T}.
EtaResult eta(const PulseSchedule& s, const BathModel& bath,
              const WeightedPauliSum& system_on_total, double dt_value,
              double lambda_value, size_t qubit_cap = 14);

struct EtaBoundParams {
  double c0 = 1, c1 = 1, c2 = 1, c3 = 1;
};

// Second-order plus tail bound: N_DD dt (||H2|| + ||sum_{k>=3} Hk||) with
// the displayed norm estimates.
double eta_bound(const EtaBoundParams& p, double norm_sb, double norm_bx, size_t n_dd,
                 double dt_value, double lambda_value);

struct SuppressionPoint {
  double h;
  double deviation;  // ||U(k Dt) P - U_ideal(k Dt) P||
  double f_norm;     // ||F(k Dt)||
  double leakage;    // ||(I-P) U(k Dt) P||
};

struct SuppressionReportSet {
  std::vector<SuppressionPoint> points;
  std::vector<std::pair<std::string, ErrorClassification>> classifications;
};

// Evolves under h H_p + H_B/dt^2 - g V for time k*delta_t at each h;
// F is evaluated exactly in the eigenbasis of the base Hamiltonian.
SuppressionReportSet suppression_sweep(const CodeLayout& code, const BathModel& bath,
                                       const WeightedPauliSum& v,
                                       const std::vector<double>& h_values, double g,
                                       size_t k, double delta_t, double dt_scale,
                                       size_t qubit_cap = 14);

struct CatalogTerm {
  PhasedPauli op;       // combined-register Pauli (system + bath)
  size_t system_locality;
  double diameter;      // max pairwise grid distance of the system support
  int lambda_power;
  int bath_factors;     // H_B factors in the nested-commutator ancestry
};

struct ErrorCatalog {
  int m;
  int q;
  size_t locality_bound;   // q l + (m-q)(k-1)
  double count_bound;      // N_DD^m (3N)^q
  double base_spread;      // (q-1) r
  std::vector<CatalogTerm> terms;
  bool locality_ok = true;
  bool count_ok = true;
  bool spread_ok = true;
};

// Enumerates the nested-commutator error terms of order dt^m (m <= 3) with
// exactly q interaction factors, toggled through the DD frames, and checks
// them against the locality, count, and geometric-spread bounds.
ErrorCatalog catalog_error_terms(int m, int q, int k_local, int l_local,
                                 const GridLayout& grid, const BathModel& bath,
                                 const DDSequence& dd);

}  // namespace strobo
