#include "strobo/serialization.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace strobo {

Json rational_to_json(const Rational& r) {
  if (r.den() == 1) return Json(r.num());
  return Json{{"num", r.num()}, {"den", r.den()}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<int64_t>());
  return Rational(j.at("num").get<int64_t>(), j.at("den").get<int64_t>());
}

Json sum_to_json(const WeightedPauliSum& s) {
  Json arr = Json::array();
  for (const auto& [key, poly] : s.terms()) {
    PhasedPauli p = WeightedPauliSum::to_phased(s.num_qubits(), key);
    for (const auto& m : poly) {
      Json t;
      t["pauli"] = p.str();
      t["coeff"] = rational_to_json(m.c);
      if (m.dt_pow) t["dt_power"] = m.dt_pow;
      if (m.lam_pow) t["lambda_power"] = m.lam_pow;
      arr.push_back(std::move(t));
    }
  }
  return arr;
}

WeightedPauliSum sum_from_json(size_t n, const Json& j) {
  WeightedPauliSum s(n);
  for (const auto& t : j) {
    s.add_str(t.at("pauli").get<std::string>(), rational_from_json(t.at("coeff")),
              t.value("dt_power", 0), t.value("lambda_power", 0));
  }
  return s;
}

Json layer_to_json(const CliffordLayer& l) {
  // Serialized by per-qubit gate words reconstructing the action.
  Json arr = Json::array();
  for (size_t q = 0; q < l.num_qubits(); q++) {
    CliffordLayer probe(1);
    if (probe.image_x(0) == l.image_x(q) && probe.image_z(0) == l.image_z(q)) continue;
    static const std::vector<std::string> words = [] {
      std::vector<std::string> base = {"W", "S", "Sd", "X", "Y", "Z"};
      std::vector<std::string> ws = base;
      for (const auto& a : base)
        for (const auto& b : base) ws.push_back(a + " " + b);
      for (const auto& a : base)
        for (const auto& b : base)
          for (const auto& c : base) ws.push_back(a + " " + b + " " + c);
      return ws;
    }();
    bool found = false;
    for (const auto& w : words) {
      CliffordLayer cand(1);
      std::istringstream is(w);
      std::string g;
      while (is >> g) cand.apply_gate(0, g);
      if (cand.image_x(0) == l.image_x(q) && cand.image_z(0) == l.image_z(q)) {
        arr.push_back(Json{{"qubit", q + 1}, {"gates", w}});
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("unserializable single-qubit clifford");
  }
  return arr;
}

CliffordLayer layer_from_json(size_t n, const Json& j) {
  CliffordLayer l(n);
  for (const auto& e : j) {
    size_t q = e.at("qubit").get<size_t>() - 1;
    std::istringstream is(e.at("gates").get<std::string>());
    std::string g;
    while (is >> g) l.apply_gate(q, g);
  }
  return l;
}

Json schedule_to_json(const PulseSchedule& s) {
  Json j;
  j["n_qubits"] = s.num_qubits();
  j["hamiltonians"] = Json::object();
  for (const auto& [name, h] : s.hamiltonians()) j["hamiltonians"][name] = sum_to_json(h);
  Json events = Json::array();
  for (const auto& e : s.events()) {
    Json je;
    switch (e.type) {
      case ScheduleEvent::Type::kPulse:
        je["type"] = "pulse";
        je["layer"] = layer_to_json(e.layer);
        break;
      case ScheduleEvent::Type::kRotation:
        je["type"] = "rotation";
        je["axis"] = sum_to_json(e.axis);
        if (e.angle.exact_pi)
          je["angle_pi"] = rational_to_json(e.angle.pi_frac);
        else
          je["angle"] = e.angle.value;
        break;
      case ScheduleEvent::Type::kEvolve:
        je["type"] = "evolve";
        je["hamiltonian"] = e.hamiltonian_id;
        je["duration"] = rational_to_json(e.duration);
        break;
    }
    events.push_back(std::move(je));
  }
  j["events"] = std::move(events);
  if (s.declared_target()) j["declared_target"] = sum_to_json(*s.declared_target());
  j["cyclic"] = s.cyclic();
  j["durations_in_dt"] = s.durations_in_dt();
  return j;
}

PulseSchedule schedule_from_json(const Json& j) {
  size_t n = j.at("n_qubits").get<size_t>();
  PulseSchedule s(n);
  for (const auto& [name, h] : j.at("hamiltonians").items())
    s.hamiltonians()[name] = sum_from_json(n, h);
  for (const auto& je : j.at("events")) {
    std::string type = je.at("type").get<std::string>();
    if (type == "pulse") {
      s.events().push_back(ScheduleEvent::pulse(layer_from_json(n, je.at("layer"))));
    } else if (type == "rotation") {
      RotationAngle a;
      if (je.contains("angle_pi")) {
        a = RotationAngle::of_pi(rational_from_json(je.at("angle_pi")));
      } else {
        a = RotationAngle::radians(je.at("angle").get<double>());
      }
      s.events().push_back(ScheduleEvent::rotation(sum_from_json(n, je.at("axis")), a));
    } else if (type == "evolve") {
      s.events().push_back(ScheduleEvent::evolve(je.at("hamiltonian").get<std::string>(),
                                                 rational_from_json(je.at("duration"))));
    } else {
      throw std::invalid_argument("unknown event type: " + type);
    }
  }
  if (j.contains("declared_target"))
    s.set_declared_target(sum_from_json(n, j.at("declared_target")));
  s.set_cyclic(j.value("cyclic", false));
  s.set_durations_in_dt(j.value("durations_in_dt", true));
  return s;
}

Json layout_to_json(const CodeLayout& c) {
  Json j;
  j["rows"] = c.grid().rows();
  j["cols"] = c.grid().cols();
  j["connectivity"] =
      c.grid().connectivity() == Connectivity::kDiagonal ? "diagonal" : "nearest";
  j["periodic"] = c.grid().periodic();
  switch (c.mode()) {
    case PatchMode::kTorus:
      j["mode"] = "torus";
      break;
    case PatchMode::kInterior:
      j["mode"] = "interior";
      break;
    case PatchMode::kPlanar:
      j["mode"] = "planar";
      break;
  }
  j["negative_coupling"] = c.negative_coupling();
  Json holes = Json::array();
  Json stabs = Json::array();
  for (const auto& s : c.stabilizers()) {
    Json js;
    js["kind"] = s.kind == StabKind::kVertexX ? "vertex_x" : "plaquette_z";
    js["face"] = Json::array({s.face_row, s.face_col});
    js["pauli"] = s.op.str();
    js["enabled"] = s.enabled;
    stabs.push_back(std::move(js));
    if (!s.enabled)
      holes.push_back(Json{{"kind", s.kind == StabKind::kVertexX ? "z_cut" : "x_cut"},
                           {"face", Json::array({s.face_row, s.face_col})}});
  }
  j["holes"] = std::move(holes);
  j["stabilizers"] = std::move(stabs);
  return j;
}

CodeLayout layout_from_json(const Json& j) {
  Connectivity conn = j.at("connectivity").get<std::string>() == "diagonal"
                          ? Connectivity::kDiagonal
                          : Connectivity::kNearestOnly;
  GridLayout grid(j.at("rows").get<size_t>(), j.at("cols").get<size_t>(), conn,
                  j.value("periodic", false));
  std::string mode_s = j.at("mode").get<std::string>();
  PatchMode mode = mode_s == "torus"
                       ? PatchMode::kTorus
                       : (mode_s == "interior" ? PatchMode::kInterior : PatchMode::kPlanar);
  std::vector<HoleSpec> holes;
  for (const auto& h : j.value("holes", Json::array())) {
    HoleSpec spec;
    spec.kind = h.at("kind").get<std::string>() == "z_cut" ? HoleSpec::Kind::kZCut
                                                           : HoleSpec::Kind::kXCut;
    spec.face_row = h.at("face")[0].get<int>();
    spec.face_col = h.at("face")[1].get<int>();
    holes.push_back(spec);
  }
  return CodeLayout(grid, mode, holes, j.value("negative_coupling", false));
}

Json dd_to_json(const DDSequence& d) {
  Json j;
  j["n_qubits"] = d.n_qubits;
  j["cyclic"] = d.cyclic;
  Json frames = Json::array();
  for (const auto& f : d.frames) frames.push_back(layer_to_json(f));
  j["frames"] = std::move(frames);
  Json prot = Json::array();
  for (const auto& g : d.protected_group) prot.push_back(g.str());
  j["protected_group"] = std::move(prot);
  return j;
}

DDSequence dd_from_json(const Json& j) {
  DDSequence d;
  d.n_qubits = j.at("n_qubits").get<size_t>();
  d.cyclic = j.value("cyclic", true);
  for (const auto& f : j.at("frames")) d.frames.push_back(layer_from_json(d.n_qubits, f));
  for (const auto& g : j.value("protected_group", Json::array()))
    d.protected_group.push_back(PhasedPauli::parse(d.n_qubits, g.get<std::string>()));
  return d;
}

Json report_to_json(const CompileReport& r) {
  Json j;
  j["step_count"] = r.step_count;
  j["declared_target"] = sum_to_json(r.declared_target);
  j["declared_dt_order"] = r.declared_dt_order;
  j["expected_residual_order"] = r.expected_residual_order;
  j["certified"] = r.certified;
  j["notes"] = r.notes;
  if (r.computed_constant) j["computed_constant"] = rational_to_json(*r.computed_constant);
  if (r.reference_constant)
    j["reference_constant"] = rational_to_json(*r.reference_constant);
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

}  // namespace strobo
