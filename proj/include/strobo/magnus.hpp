#pragma once

#include <vector>

#include "strobo/pauli_sum.hpp"
#include "strobo/schedule.hpp"

namespace strobo {

// Exact symbolic Magnus expansion for a piecewise-constant segment list,
// convention U = exp(-i T_n H_eff) with H_eff = sum_k H_eff^(k).
struct MagnusReport {
  // H_eff^(0..max_order); dt grading of the k-th order is shifted by k
  // relative to the segment Hamiltonians.
  std::vector<WeightedPauliSum> orders;
  // Accumulated phase operators T_n * H_eff^(k) (dt grading shifted by k+1).
  std::vector<WeightedPauliSum> phi;
  size_t segment_count = 0;
  Rational step;  // common segment duration w (in dt units)

  WeightedPauliSum h_eff_total() const;
  WeightedPauliSum phi_total() const;
};

// Segments must share a common rational duration after splitting; the
// computation deduplicates repeated segment values and prunes commutators
// of disjointly supported sums. max_order <= 2.
MagnusReport magnus_orders(const std::vector<ToggledSegment>& segments, int max_order);

// Replaces each consecutive run of `run` segments by its exact single-segment
// equivalent (sum/run over duration run*w). Every run must consist of
// mutually commuting Hamiltonians with equal durations; throws otherwise.
std::vector<ToggledSegment> collapse_equal_runs(const std::vector<ToggledSegment>& segments,
                                                size_t run);

// toggling_frame + magnus_orders.
MagnusReport effective_hamiltonian(const PulseSchedule& s, int max_order);

}  // namespace strobo
