#pragma once

#include <optional>
#include <vector>

#include "strobo/compiler.hpp"
#include "strobo/pauli.hpp"
#include "strobo/schedule.hpp"

namespace strobo {

// DD sequence as the per-segment toggling conjugators; the physical pulse
// train (product of adjacent frame transitions) follows from these.
struct DDSequence {
  size_t n_qubits = 0;
  std::vector<CliffordLayer> frames;
  // Populated when every frame is conjugation by a Pauli pattern.
  std::vector<PhasedPauli> frame_paulis;
  bool cyclic = true;
  std::vector<PhasedPauli> protected_group;

  size_t n_segments() const { return frames.size(); }

  // Schedule with one unit segment per frame, evolving ham_id.
  PulseSchedule to_schedule(std::map<std::string, WeightedPauliSum> hams,
                            const std::string& ham_id) const;
};

// 8-segment symmetric universal sequence: frames I,X,Y,Z,Z,Y,X,I on every
// qubit. Removes 1-local noise to first order and, being time-symmetric,
// all second-order terms.
DDSequence universal_sequence(size_t n);

// Doubles the sequence with a copy conjugated by X on every qubit, removing
// every first-order-in-lambda toggled term.
DDSequence lambda1_extension(const DDSequence& seq);

// Lemma-style symmetrization over the normalizer of a commuting independent
// generator set: averaging annihilates every Pauli outside the group and
// fixes every Pauli inside it.
DDSequence symmetrize_protecting(size_t n, const std::vector<PhasedPauli>& generators);

// Periodic local-noise pulses: all 4^(l^D) base patterns on an l^D window,
// extended with period l per axis. With constrain_to_xx, only window
// patterns commuting with every XX interaction inside the window are kept.
DDSequence symmetrize_local(size_t l, size_t D, size_t rows, size_t cols,
                            Connectivity conn = Connectivity::kDiagonal,
                            bool constrain_to_xx = false);

// Average of g e g^dag over the pulse set, as the multiplier of e
// (0 when the error is annihilated, set size when fixed).
int64_t twirl_multiplier(const std::vector<PhasedPauli>& pulses, const PhasedPauli& e);

// Subdivides every simulation segment into one DD cycle of that duration per
// sub-segment; DD frames must commute with the simulation's named system
// Hamiltonian. Boundary pulses fuse.
PulseSchedule interleave(const DDSequence& dd, const PulseSchedule& sim,
                         const std::string& system_id = "system");

struct LowerBoundReport {
  size_t n_qubits;
  std::vector<uint64_t> signatures;  // commutation pattern of Y_i vs pulses
  bool collision = false;
  size_t collide_i = 0, collide_j = 0;  // Y_i Y_j invariant under all pulses
  bool forced = false;                  // |pulses| < log2(N): pigeonhole
};

// Error family {Y_i Y_j}: reports a colliding signature pair whenever one
// exists; with fewer than log2(N) pulses a collision is forced.
LowerBoundReport lower_bound_check(size_t n, const std::vector<PhasedPauli>& pulses);

}  // namespace strobo
