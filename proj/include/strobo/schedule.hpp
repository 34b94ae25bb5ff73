#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "strobo/clifford.hpp"
#include "strobo/pauli_sum.hpp"
#include "strobo/rational.hpp"

namespace strobo {

// Rotation angle: either an exact rational multiple of pi or a plain value.
struct RotationAngle {
  bool exact_pi = false;
  Rational pi_frac;  // angle = pi_frac * pi when exact_pi
  double value = 0.0;

  static RotationAngle of_pi(const Rational& frac) { return {true, frac, 0.0}; }
  static RotationAngle radians(double v) { return {false, Rational(0), v}; }
  double to_radians() const;
};

struct ScheduleEvent {
  enum class Type { kPulse, kRotation, kEvolve };
  Type type;

  CliffordLayer layer;  // kPulse

  WeightedPauliSum axis;  // kRotation: unitary exp(-i * angle * axis)
  RotationAngle angle;

  std::string hamiltonian_id;  // kEvolve
  Rational duration;           // kEvolve, in dt units (or absolute, per schedule)

  static ScheduleEvent pulse(CliffordLayer l);
  static ScheduleEvent rotation(WeightedPauliSum ax, RotationAngle a);
  static ScheduleEvent evolve(std::string id, Rational dur);
};

// Conjugator built from exact primitives: Clifford layers and quarter-turn
// Pauli exponentials. Applies innermost-last primitive first.
class Frame {
 public:
  explicit Frame(size_t n) : n_(n) {}

  size_t num_qubits() const { return n_; }

  // Extends the frame by pulse P (the conjugator gains P^dagger innermost).
  void push_pulse(const CliffordLayer& p);
  // Extends by the rotation pulse exp(-i k pi/4 * axis).
  void push_quarter_pulse(const PhasedPauli& axis, int quarter_turns);

  WeightedPauliSum conjugate(const WeightedPauliSum& h) const;

  struct Primitive {
    bool is_layer;
    CliffordLayer layer;
    PhasedPauli axis;
    int quarter_turns;
  };
  const std::vector<Primitive>& primitives() const { return prims_; }
  bool layers_only() const;
  // For a layers-only frame, the single collapsed conjugator layer.
  CliffordLayer collapsed_layer() const;

 private:
  size_t n_;
  std::vector<Primitive> prims_;
};

struct ToggledSegment {
  WeightedPauliSum h;
  Rational duration;  // in dt units unless the schedule is absolute-time
};

struct TogglingResult {
  std::vector<ToggledSegment> segments;
  // Cumulative physical pulse product as a frame conjugator (for cyclicity
  // checks); exact iff every pulse was a layer or a quarter-turn rotation.
  bool exact = true;
  bool cyclic_closure = false;  // pulse product is the identity conjugator
};

class PulseSchedule {
 public:
  PulseSchedule() : n_(0) {}
  explicit PulseSchedule(size_t n) : n_(n) {}

  size_t num_qubits() const { return n_; }

  std::map<std::string, WeightedPauliSum>& hamiltonians() { return hams_; }
  const std::map<std::string, WeightedPauliSum>& hamiltonians() const { return hams_; }
  const WeightedPauliSum& hamiltonian(const std::string& id) const;

  std::vector<ScheduleEvent>& events() { return events_; }
  const std::vector<ScheduleEvent>& events() const { return events_; }

  void set_declared_target(WeightedPauliSum t) { target_ = std::move(t); }
  const std::optional<WeightedPauliSum>& declared_target() const { return target_; }

  bool cyclic() const { return cyclic_; }
  void set_cyclic(bool c) { cyclic_ = c; }

  bool durations_in_dt() const { return dt_units_; }
  void set_durations_in_dt(bool v) { dt_units_ = v; }

  Rational total_duration() const;
  size_t segment_count() const;

  // Exact interaction-frame transformation: absorbs every pulse into frame
  // rotations, leaving piecewise-constant Hamiltonian segments.
  TogglingResult toggling_frame() const;

  // True iff the cumulative pulse product is the identity conjugator.
  bool pulse_product_is_identity() const;

 private:
  size_t n_;
  std::map<std::string, WeightedPauliSum> hams_;
  std::vector<ScheduleEvent> events_;
  std::optional<WeightedPauliSum> target_;
  bool cyclic_ = false;
  bool dt_units_ = true;
};

// u . s . u^dagger: prepends u^dagger, appends u, conjugates the declared
// target accordingly.
PulseSchedule conjugate_schedule(const PulseSchedule& s, const CliffordLayer& u);

// Appends the time-reversed pulse pattern (same segment durations, reversed
// frame order) so every even-order toggling-frame Magnus term vanishes.
// Requires a cyclic schedule with layer-only pulses.
PulseSchedule symmetrize(const PulseSchedule& s);

}  // namespace strobo
