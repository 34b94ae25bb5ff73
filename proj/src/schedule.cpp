#include "strobo/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace strobo {

double RotationAngle::to_radians() const {
  return exact_pi ? pi_frac.to_double() * M_PI : value;
}

ScheduleEvent ScheduleEvent::pulse(CliffordLayer l) {
  ScheduleEvent e;
  e.type = Type::kPulse;
  e.layer = std::move(l);
  return e;
}

ScheduleEvent ScheduleEvent::rotation(WeightedPauliSum ax, RotationAngle a) {
  ScheduleEvent e;
  e.type = Type::kRotation;
  e.axis = std::move(ax);
  e.angle = a;
  return e;
}

ScheduleEvent ScheduleEvent::evolve(std::string id, Rational dur) {
  ScheduleEvent e;
  e.type = Type::kEvolve;
  e.hamiltonian_id = std::move(id);
  e.duration = dur;
  return e;
}

void Frame::push_pulse(const CliffordLayer& p) {
  CliffordLayer inv = p.inverse();
  if (!prims_.empty() && prims_.back().is_layer) {
    prims_.back().layer = prims_.back().layer * inv;
    if (prims_.size() == 1 && prims_.back().layer.is_identity()) prims_.pop_back();
    return;
  }
  prims_.push_back(Primitive{true, inv, PhasedPauli(), 0});
}

void Frame::push_quarter_pulse(const PhasedPauli& axis, int quarter_turns) {
  // Conjugator gains (e^{-i k pi/4 A})^dagger = e^{+i k pi/4 A} innermost.
  prims_.push_back(Primitive{false, CliffordLayer(), axis, -quarter_turns});
}

WeightedPauliSum Frame::conjugate(const WeightedPauliSum& h) const {
  WeightedPauliSum out = h;
  for (auto it = prims_.rbegin(); it != prims_.rend(); ++it) {
    if (it->is_layer)
      out = out.conjugated(it->layer);
    else
      out = out.conjugated_pauli_exp(it->axis, it->quarter_turns);
  }
  return out;
}

bool Frame::layers_only() const {
  for (const auto& p : prims_)
    if (!p.is_layer) return false;
  return true;
}

CliffordLayer Frame::collapsed_layer() const {
  CliffordLayer l = CliffordLayer::identity(n_);
  for (const auto& p : prims_) {
    if (!p.is_layer) throw std::logic_error("frame has non-layer primitives");
    l = l * p.layer;
  }
  return l;
}

const WeightedPauliSum& PulseSchedule::hamiltonian(const std::string& id) const {
  auto it = hams_.find(id);
  if (it == hams_.end()) throw std::out_of_range("unknown hamiltonian id: " + id);
  return it->second;
}

Rational PulseSchedule::total_duration() const {
  Rational t(0);
  for (const auto& e : events_)
    if (e.type == ScheduleEvent::Type::kEvolve) t += e.duration;
  return t;
}

size_t PulseSchedule::segment_count() const {
  size_t c = 0;
  for (const auto& e : events_)
    if (e.type == ScheduleEvent::Type::kEvolve) c++;
  return c;
}

namespace {

// Decomposes an exact rotation into quarter-turn pulses per axis term.
// Returns false if the angle/coefficients are not quarter-turn exact.
bool rotation_as_quarter_pulses(const ScheduleEvent& e,
                                std::vector<std::pair<PhasedPauli, int>>* out) {
  if (!e.angle.exact_pi) return false;
  if (!e.axis.terms_mutually_commute()) return false;
  for (const auto& [key, poly] : e.axis.terms()) {
    Rational c(0);
    for (const auto& m : poly) {
      if (m.dt_pow != 0 || m.lam_pow != 0) return false;
      c += m.c;
    }
    // angle * c must be a multiple of pi/4: angle = frac*pi.
    Rational turns = e.angle.pi_frac * c * Rational(4);
    if (turns.den() != 1) return false;
    out->emplace_back(WeightedPauliSum::to_phased(e.axis.num_qubits(), key),
                      static_cast<int>(turns.num()));
  }
  return true;
}

}  // namespace

TogglingResult PulseSchedule::toggling_frame() const {
  TogglingResult result;
  Frame frame(n_);
  for (const auto& e : events_) {
    switch (e.type) {
      case ScheduleEvent::Type::kPulse:
        frame.push_pulse(e.layer);
        break;
      case ScheduleEvent::Type::kRotation: {
        std::vector<std::pair<PhasedPauli, int>> pulses;
        if (rotation_as_quarter_pulses(e, &pulses)) {
          for (auto& [axis, k] : pulses) frame.push_quarter_pulse(axis, k);
        } else {
          // Inexact rotation: fold as a unit-duration segment with the
          // angle-scaled axis; exactness of the symbolic path is lost.
          result.exact = false;
          WeightedPauliSum h = frame.conjugate(e.axis);
          result.segments.push_back(ToggledSegment{std::move(h), Rational(1)});
        }
        break;
      }
      case ScheduleEvent::Type::kEvolve: {
        WeightedPauliSum h = frame.conjugate(hamiltonian(e.hamiltonian_id));
        result.segments.push_back(ToggledSegment{std::move(h), e.duration});
        break;
      }
    }
  }
  // Cyclic closure: the conjugator built from all pulses is the identity.
  if (frame.layers_only()) {
    result.cyclic_closure = frame.collapsed_layer().is_identity();
  } else {
    result.cyclic_closure = false;
  }
  return result;
}

bool PulseSchedule::pulse_product_is_identity() const {
  Frame frame(n_);
  for (const auto& e : events_) {
    if (e.type == ScheduleEvent::Type::kPulse) frame.push_pulse(e.layer);
    if (e.type == ScheduleEvent::Type::kRotation) {
      std::vector<std::pair<PhasedPauli, int>> pulses;
      if (!rotation_as_quarter_pulses(e, &pulses)) return false;
      for (auto& [axis, k] : pulses) frame.push_quarter_pulse(axis, k);
    }
  }
  return frame.layers_only() && frame.collapsed_layer().is_identity();
}

PulseSchedule conjugate_schedule(const PulseSchedule& s, const CliffordLayer& u) {
  PulseSchedule r(s.num_qubits());
  r.hamiltonians() = s.hamiltonians();
  r.set_cyclic(s.cyclic());
  r.set_durations_in_dt(s.durations_in_dt());
  r.events().push_back(ScheduleEvent::pulse(u.inverse()));
  for (const auto& e : s.events()) r.events().push_back(e);
  r.events().push_back(ScheduleEvent::pulse(u));
  if (s.declared_target()) r.set_declared_target(s.declared_target()->conjugated(u));
  return r;
}

PulseSchedule symmetrize(const PulseSchedule& s) {
  if (!s.cyclic()) throw std::invalid_argument("symmetrize requires a cyclic schedule");
  for (const auto& e : s.events())
    if (e.type == ScheduleEvent::Type::kRotation)
      throw std::invalid_argument("symmetrize requires layer-only pulses");

  PulseSchedule r(s.num_qubits());
  r.hamiltonians() = s.hamiltonians();
  r.set_durations_in_dt(s.durations_in_dt());
  r.set_cyclic(true);
  if (s.events().empty()) return r;

  // Frames of the original segments, as collapsed conjugator layers.
  std::vector<CliffordLayer> frames;
  std::vector<ScheduleEvent> evolves;
  {
    Frame f(s.num_qubits());
    for (const auto& e : s.events()) {
      if (e.type == ScheduleEvent::Type::kPulse) f.push_pulse(e.layer);
      if (e.type == ScheduleEvent::Type::kEvolve) {
        frames.push_back(f.collapsed_layer());
        evolves.push_back(e);
      }
    }
  }

  for (const auto& e : s.events()) r.events().push_back(e);

  // Appended half: same durations, frame order reversed. A segment with
  // conjugator K needs cumulative physical pulse product K^dagger; s is
  // cyclic so the appended half starts from the identity product.
  CliffordLayer cumulative = CliffordLayer::identity(s.num_qubits());
  for (size_t i = frames.size(); i-- > 0;) {
    CliffordLayer want_cumulative = frames[i].inverse();
    CliffordLayer transition = want_cumulative * cumulative.inverse();
    if (!transition.is_identity()) r.events().push_back(ScheduleEvent::pulse(transition));
    r.events().push_back(evolves[i]);
    cumulative = want_cumulative;
  }
  CliffordLayer closing = cumulative.inverse();
  if (!closing.is_identity()) r.events().push_back(ScheduleEvent::pulse(closing));

  if (s.declared_target()) r.set_declared_target(*s.declared_target());
  return r;
}

}  // namespace strobo
