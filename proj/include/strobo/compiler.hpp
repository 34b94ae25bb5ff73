#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "strobo/lattice.hpp"
#include "strobo/magnus.hpp"
#include "strobo/schedule.hpp"

namespace strobo {

// A schedule segment described by its toggling-frame conjugator; the event
// stream (pulses at the right instants) is generated from these.
struct FrameSegment {
  CliffordLayer frame;  // conjugator K: the segment evolves under K H K^dag
  Rational duration;
  std::string ham_id;
};

// Emits pulses realizing the frame list, with a closing pulse returning the
// cumulative pulse product to the identity conjugator when close_cyclic.
PulseSchedule schedule_from_frames(size_t n,
                                   std::map<std::string, WeightedPauliSum> hams,
                                   const std::vector<FrameSegment>& segments,
                                   bool close_cyclic);

enum class Component { kA, kB, kC, kNegA, kNegB, kNegC, kCHole, kNegCHole };

// Exact 2-segment building block: frames and the certified effective
// generator (the block equals exp(-i * effective * dt) over 2 dt).
struct ComponentBlock {
  std::vector<FrameSegment> segments;
  WeightedPauliSum effective;
};

// Single-plaquette component on site qubits (labels 1..4 = TL,TR,BL,BR)
// embedded in an n-qubit register carrying the all-pairs coupling ham_id.
ComponentBlock component_block(size_t n, const std::string& ham_id,
                               const WeightedPauliSum& ham,
                               const std::array<size_t, 4>& site, Component which);

// Spec-facing wrapper: standalone schedule of one component over 2 dt,
// declared target = its exact effective generator.
PulseSchedule gen_component(Component which, const std::array<size_t, 4>& site = {0, 1, 2, 3});

struct CompileReport {
  PulseSchedule schedule;
  size_t step_count = 0;
  WeightedPauliSum declared_target;  // accumulated phase at the declared order
  int declared_dt_order = 3;
  int expected_residual_order = 4;
  bool certified = false;
  std::string notes;
  // Grid compile: the symbolically computed per-face constant and the
  // bookkeeping reference it is compared against.
  std::optional<Rational> computed_constant;
  std::optional<Rational> reference_constant;
};

// 20-block doubled commutator sequence with purge pulse u:
//   [a, b, -a, -b, c, a, -b, -a, b, -c] twice, first copy u-conjugated.
// Throws if the purge fails to commute with every surviving third-order
// term or to anticommute with every removed one.
std::vector<FrameSegment> commutator_sequence_frames(
    const ComponentBlock& a, const ComponentBlock& b, const ComponentBlock& c,
    const ComponentBlock& neg_a, const ComponentBlock& neg_b, const ComponentBlock& neg_c,
    const CliffordLayer& purge);

// Symbolic certification: dt^1 and dt^2 grades vanish (dt^2 may be the
// declared order for second-order targets), declared grade matches.
CompileReport certify_sequence(PulseSchedule schedule, int target_order,
                               const CliffordLayer& purge, size_t collapse_run,
                               const std::string& notes);

// N_X = 40 steps; target 64 dt^3 X1X2X3X4 on the site.
CompileReport compile_plaquette(size_t n = 4, const std::array<size_t, 4>& site = {0, 1, 2, 3});

// Grid rounds: which face-parity class a round targets and its patterns.
struct GridRound {
  int face_row_parity;  // 1 = odd face rows
  int face_col_parity;
  bool vertex_wrap;  // conjugate the round by W on every qubit
  std::vector<std::pair<int, int>> faces;
  CliffordLayer mask_h1, mask_h2;  // horizontal-selection toggles
  CliffordLayer mask_d1, mask_d2;  // diagonal-selection toggles
};

std::vector<GridRound> grid_rounds(const CodeLayout& code);

// N_sim = 320 steps on a periodic grid with dimensions divisible by 4;
// symbolic third-order target proportional to the code Hamiltonian.
CompileReport compile_grid(const CodeLayout& code);

// Exact pi/4-conjugation schedule: target i * exp(-i theta X^{x4}) on the
// site; entangling strength c is physical metadata (the schedule stores the
// pi/4 rotation directly).
PulseSchedule compile_pi4(double theta, size_t n = 4,
                          const std::array<size_t, 4>& site = {0, 1, 2, 3});

enum class BoundaryKind { kHole, kThreeBody, kSingleBody };

CompileReport compile_boundary(BoundaryKind kind);

struct DeformationParams {
  size_t n_qubits;
  WeightedPauliSum hole_term;     // B_2, ramped down
  WeightedPauliSum other_plaquettes;  // sum over p != 1,2
  WeightedPauliSum ramp_in;       // X_1, ramped up
  WeightedPauliSum vertices;      // sum over v
  Rational coupling;              // J
  Rational total_time;            // t_1
  size_t trotter_steps;           // N_tr
  bool negative_coupling = true;  // H(t) = -J (...) when set
};

// Ordered product of powers of the four building blocks; exponents at step
// m are (N_tr - m, N_tr, m, N_tr). Durations are absolute.
PulseSchedule compile_deformation(const DeformationParams& p);

// Nearest-neighbor variant: N_X = 20 steps, target 16 dt^3 X1X2X3X4.
CompileReport compile_nn_vertex();

}  // namespace strobo
