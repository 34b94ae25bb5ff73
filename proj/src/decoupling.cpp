#include "strobo/decoupling.hpp"

#include <cmath>
#include <stdexcept>

namespace strobo {

PulseSchedule DDSequence::to_schedule(std::map<std::string, WeightedPauliSum> hams,
                                      const std::string& ham_id) const {
  std::vector<FrameSegment> segs;
  for (const auto& f : frames) segs.push_back(FrameSegment{f, Rational(1), ham_id});
  PulseSchedule s = schedule_from_frames(n_qubits, std::move(hams), segs, cyclic);
  return s;
}

namespace {

CliffordLayer uniform_layer(size_t n, const std::string& gate) {
  CliffordLayer l(n);
  for (size_t q = 0; q < n; q++) l.apply_gate(q, gate);
  return l;
}

}  // namespace

DDSequence universal_sequence(size_t n) {
  DDSequence seq;
  seq.n_qubits = n;
  for (const char* g : {"I", "X", "Y", "Z", "Z", "Y", "X", "I"})
    seq.frames.push_back(g[0] == 'I' ? CliffordLayer::identity(n) : uniform_layer(n, g));
  return seq;
}

DDSequence lambda1_extension(const DDSequence& seq) {
  if (!seq.cyclic) throw std::invalid_argument("lambda1_extension requires a cyclic sequence");
  DDSequence out;
  out.n_qubits = seq.n_qubits;
  out.protected_group = seq.protected_group;
  CliffordLayer x = uniform_layer(seq.n_qubits, "X");
  // The X-conjugated copy runs first, then the plain copy.
  for (const auto& f : seq.frames) out.frames.push_back(x * f);
  for (const auto& f : seq.frames) out.frames.push_back(f);
  return out;
}

DDSequence symmetrize_protecting(size_t n, const std::vector<PhasedPauli>& generators) {
  for (size_t i = 0; i < generators.size(); i++)
    for (size_t j = i + 1; j < generators.size(); j++)
      if (!commutes(generators[i], generators[j]))
        throw std::invalid_argument("generators must commute");
  if (symplectic_rank(generators) != generators.size())
    throw std::invalid_argument("dependent generator list");
  DDSequence seq;
  seq.n_qubits = n;
  seq.protected_group = generators;
  for (const auto& g : normalizer(n, generators)) {
    seq.frames.push_back(CliffordLayer::from_pauli(g));
    seq.frame_paulis.push_back(g);
  }
  return seq;
}

DDSequence symmetrize_local(size_t l, size_t D, size_t rows, size_t cols,
                            Connectivity conn, bool constrain_to_xx) {
  if (l < 1 || (D != 1 && D != 2)) throw std::invalid_argument("need l >= 1, D in {1,2}");
  size_t wrows = D == 2 ? l : 1;
  size_t wcols = l;
  size_t window = wrows * wcols;
  if (D == 2 && (rows < l || cols < l))
    throw std::invalid_argument("lattice smaller than the window");
  if (D == 1 && cols < l) throw std::invalid_argument("line shorter than the window");
  if (window > 10) throw std::length_error("window enumeration cap exceeded (l^D > 10)");

  // Window patterns: all Paulis on the window, or the normalizer of the
  // window's XX interactions.
  std::vector<PhasedPauli> base;
  if (constrain_to_xx) {
    std::vector<PhasedPauli> gens;
    GridLayout wgrid(std::max<size_t>(wrows, 2), std::max<size_t>(wcols, 2), conn);
    // Collect edges inside the actual window.
    for (auto [i, j] : wgrid.edges()) {
      auto [ri, ci] = wgrid.coords(i);
      auto [rj, cj] = wgrid.coords(j);
      if (ri >= wrows || rj >= wrows || ci >= wcols || cj >= wcols) continue;
      PhasedPauli p(window);
      p.set_x(ri * wcols + ci, true);
      p.set_x(rj * wcols + cj, true);
      gens.push_back(p);
    }
    base = normalizer(window, gens);
  } else {
    base = normalizer(window, {});
  }

  DDSequence seq;
  seq.n_qubits = rows * cols;
  for (const auto& pat : base) {
    PhasedPauli ext(rows * cols);
    size_t ycount = 0;
    for (size_t r = 0; r < rows; r++) {
      for (size_t c = 0; c < cols; c++) {
        size_t wq = (D == 2 ? (r % l) * wcols : 0) + (c % l);
        bool x = pat.x_bit(wq), z = pat.z_bit(wq);
        size_t q = r * cols + c;
        ext.set_x(q, x);
        ext.set_z(q, z);
        if (x && z) ycount++;
      }
    }
    ext.set_phase_exponent((uint8_t)(ycount & 3));
    seq.frames.push_back(CliffordLayer::from_pauli(ext));
    seq.frame_paulis.push_back(std::move(ext));
  }
  return seq;
}

int64_t twirl_multiplier(const std::vector<PhasedPauli>& pulses, const PhasedPauli& e) {
  int64_t sum = 0;
  for (const auto& g : pulses) sum += commutes(g, e) ? 1 : -1;
  return sum;
}

PulseSchedule interleave(const DDSequence& dd, const PulseSchedule& sim,
                         const std::string& system_id) {
  if (dd.n_qubits != sim.num_qubits())
    throw std::invalid_argument("qubit count mismatch");
  if (!dd.cyclic) throw std::invalid_argument("DD sequence must be cyclic");
  const WeightedPauliSum& hsys = sim.hamiltonian(system_id);
  for (const auto& f : dd.frames)
    if (!(hsys.conjugated(f) == hsys))
      throw std::invalid_argument("DD frame does not commute with the system Hamiltonian");

  // Frames of the simulation segments (layer-only pulses required).
  TogglingResult tog = sim.toggling_frame();
  if (!tog.exact) throw std::invalid_argument("simulation schedule has inexact pulses");
  Frame frame(sim.num_qubits());
  std::vector<FrameSegment> segs;
  for (const auto& e : sim.events()) {
    if (e.type == ScheduleEvent::Type::kPulse) frame.push_pulse(e.layer);
    if (e.type == ScheduleEvent::Type::kRotation)
      throw std::invalid_argument("interleave requires layer-only simulation pulses");
    if (e.type == ScheduleEvent::Type::kEvolve) {
      CliffordLayer simframe = frame.collapsed_layer();
      for (const auto& ddf : dd.frames)
        segs.push_back(FrameSegment{simframe * ddf, e.duration, e.hamiltonian_id});
    }
  }
  PulseSchedule out =
      schedule_from_frames(sim.num_qubits(), sim.hamiltonians(), segs, sim.cyclic());
  out.set_durations_in_dt(sim.durations_in_dt());
  if (sim.declared_target()) {
    // Each simulation dt becomes one DD cycle of N_DD dt: a dt^a-graded
    // target coefficient scales by N_DD^a.
    WeightedPauliSum scaled(sim.num_qubits());
    int64_t ndd = (int64_t)dd.n_segments();
    for (const auto& [key, poly] : sim.declared_target()->terms()) {
      PhasedPauli p = WeightedPauliSum::to_phased(sim.num_qubits(), key);
      for (const auto& m : poly) {
        Rational f(1);
        for (int i = 0; i < m.dt_pow; i++) f *= Rational(ndd);
        scaled.add(p, m.c * f, m.dt_pow, m.lam_pow);
      }
    }
    out.set_declared_target(scaled);
  }
  return out;
}

LowerBoundReport lower_bound_check(size_t n, const std::vector<PhasedPauli>& pulses) {
  if (pulses.size() > 63) throw std::invalid_argument("too many pulses for signatures");
  LowerBoundReport rep;
  rep.n_qubits = n;
  rep.forced = pulses.size() < (size_t)std::ceil(std::log2((double)n));
  for (size_t i = 0; i < n; i++) {
    PhasedPauli yi = PhasedPauli::single(n, i, 'Y');
    uint64_t sig = 0;
    for (size_t j = 0; j < pulses.size(); j++)
      if (!commutes(yi, pulses[j])) sig |= uint64_t{1} << j;
    rep.signatures.push_back(sig);
  }
  for (size_t i = 0; i < n && !rep.collision; i++)
    for (size_t j = i + 1; j < n; j++)
      if (rep.signatures[i] == rep.signatures[j]) {
        rep.collision = true;
        rep.collide_i = i;
        rep.collide_j = j;
        break;
      }
  return rep;
}

}  // namespace strobo
