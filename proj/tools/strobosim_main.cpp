// strobosim: compile stroboscopic pulse schedules, generate decoupling
// sequences, and verify them against dense simulation.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "strobo/compiler.hpp"
#include "strobo/decoupling.hpp"
#include "strobo/magnus.hpp"
#include "strobo/serialization.hpp"
#include "strobo/verifier.hpp"

namespace {

using namespace strobo;

constexpr int kExitOk = 0;
constexpr int kExitCertification = 2;
constexpr int kExitResourceCap = 3;
constexpr int kExitInput = 4;

Rational parse_decimal(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(std::stoll(text));
  std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
  int64_t den = 1;
  for (size_t i = 0; i < frac.size(); i++) den *= 10;
  bool neg = !whole.empty() && whole[0] == '-';
  int64_t w = whole.empty() || whole == "-" ? 0 : std::stoll(whole);
  int64_t num = std::abs(w) * den + (frac.empty() ? 0 : std::stoll(frac));
  return Rational(neg || w < 0 ? -num : num, den);
}

std::vector<double> log_grid(double lo, double hi, size_t points) {
  std::vector<double> g;
  if (points == 1) return {lo};
  for (size_t i = 0; i < points; i++)
    g.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * (double)i /
                                            (double)(points - 1)));
  return g;
}

size_t worker_count() {
  if (const char* env = std::getenv("STROBOSIM_WORKERS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return (size_t)v;
  }
  return 1;
}

template <typename F>
void parallel_for(size_t count, F&& fn) {
  size_t workers = std::min(worker_count(), count == 0 ? size_t{1} : count);
  if (workers <= 1) {
    for (size_t i = 0; i < count; i++) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  for (size_t w = 0; w < workers; w++) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

void emit_schedule(const PulseSchedule& s, const std::string& out) {
  if (!out.empty()) write_text_file(out, schedule_to_json(s).dump(2) + "\n");
}

int cmd_compile_common(const CompileReport& rep, const std::string& out,
                       const std::string& report_path) {
  emit_schedule(rep.schedule, out);
  Json jr = report_to_json(rep);
  if (!report_path.empty()) write_text_file(report_path, jr.dump(2) + "\n");
  std::cout << "steps: " << rep.step_count << "\n";
  std::cout << "declared target: " << rep.declared_target.str() << "\n";
  std::cout << "certified: " << (rep.certified ? "yes" : "NO") << "\n";
  if (rep.computed_constant)
    std::cout << "constant: " << rep.computed_constant->str() << " (reference "
              << rep.reference_constant->str() << ")\n";
  if (!rep.notes.empty()) std::cout << rep.notes << "\n";
  return rep.certified ? kExitOk : kExitCertification;
}

struct VerifyOptions {
  std::string schedule_path;
  double dt_min = 1e-3;
  double dt_max = std::pow(10.0, -1.5);
  size_t points = 6;
  double lambda = 0.0;
  std::string csv_path;
  std::string report_path;
  bool symbolic_only = false;
  size_t cap = 14;
};

int cmd_verify(const VerifyOptions& opt) {
  PulseSchedule s = schedule_from_json(Json::parse(read_text_file(opt.schedule_path)));
  Json rep;
  rep["schedule"] = opt.schedule_path;
  rep["segments"] = s.segment_count();

  bool symbolic = opt.symbolic_only || s.num_qubits() > opt.cap;
  if (symbolic) {
    TogglingResult tog = s.toggling_frame();
    if (!tog.exact) {
      std::cerr << "schedule has inexact pulses; symbolic verification unavailable\n";
      return kExitInput;
    }
    MagnusReport mag = magnus_orders(tog.segments, 2);
    WeightedPauliSum phi = mag.phi_total();
    bool ok = true;
    if (s.declared_target()) {
      for (auto [dt_pow, lam_pow] : s.declared_target()->grades()) {
        WeightedPauliSum want = s.declared_target()->grade_part(dt_pow, lam_pow);
        WeightedPauliSum got = phi.grade_part(dt_pow, lam_pow);
        if (!(want == got)) ok = false;
      }
    }
    rep["mode"] = "symbolic";
    rep["certified"] = ok;
    if (!opt.report_path.empty()) write_text_file(opt.report_path, rep.dump(2) + "\n");
    std::cout << "symbolic verification: " << (ok ? "pass" : "FAIL") << "\n";
    return ok ? kExitOk : kExitCertification;
  }

  if (!s.declared_target()) {
    std::cerr << "schedule has no declared target to verify against\n";
    return kExitInput;
  }
  std::vector<double> dts = log_grid(opt.dt_min, opt.dt_max, opt.points);
  std::vector<double> residuals(dts.size());
  std::string err;
  parallel_for(dts.size(), [&](size_t i) {
    try {
      double dt = dts[i];
      Mat u = simulate_dense(s, dt, opt.lambda, nullptr, opt.cap);
      Mat target =
          sum_matrix(s.num_qubits(), *s.declared_target(), dt, opt.lambda);
      Mat ideal = evolve_matrix(target, 1.0);
      residuals[i] = phase_optimized_distance(u, ideal);
    } catch (const std::exception& e) {
      err = e.what();
    }
  });
  if (!err.empty()) {
    std::cerr << err << "\n";
    return kExitResourceCap;
  }

  std::ostringstream csv;
  csv << "dt,residual\n";
  for (size_t i = 0; i < dts.size(); i++) {
    char line[64];
    std::snprintf(line, sizeof line, "%.12g,%.12g\n", dts[i], residuals[i]);
    csv << line;
  }
  if (!opt.csv_path.empty()) write_text_file(opt.csv_path, csv.str());

  bool exact = true;
  for (double r : residuals) exact = exact && r < 1e-10;
  rep["mode"] = "dense";
  rep["residuals"] = residuals;
  rep["dt"] = dts;
  bool ok = true;
  if (exact) {
    rep["exact"] = true;
    std::cout << "exact: residuals below 1e-10 at every dt\n";
  } else {
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < dts.size(); i++) pts.emplace_back(dts[i], residuals[i]);
    FitResult fit = fit_scaling(pts);
    rep["slope"] = fit.slope;
    rep["r2"] = fit.r2;
    // Residual must scale at least one order above the declared grade.
    int declared_order = 0;
    for (auto [dt_pow, lam_pow] : s.declared_target()->grades())
      declared_order = std::max(declared_order, dt_pow);
    ok = fit.slope >= declared_order + 1 - 0.1;
    std::cout << "residual slope: " << fit.slope << " (declared order "
              << declared_order << ")\n";
  }
  rep["certified"] = ok;
  if (!opt.report_path.empty()) write_text_file(opt.report_path, rep.dump(2) + "\n");
  return ok ? kExitOk : kExitCertification;
}

std::vector<PhasedPauli> parse_generators(size_t n, const std::string& spec) {
  std::vector<PhasedPauli> gens;
  std::istringstream is(spec);
  std::string tok;
  auto flush = [&](const std::string& t) {
    if (t.empty()) return;
    // "X1X2" form: insert spaces before axis letters.
    std::string spaced;
    for (char c : t) {
      if ((c == 'X' || c == 'Y' || c == 'Z' || c == 'I') && !spaced.empty())
        spaced += ' ';
      spaced += c;
    }
    gens.push_back(PhasedPauli::parse(n, spaced));
  };
  for (char c : spec) {
    if (c == ',') {
      flush(tok);
      tok.clear();
    } else if (!std::isspace((unsigned char)c)) {
      tok += c;
    }
  }
  flush(tok);
  return gens;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stroboscopic pulse-schedule compiler and verifier"};
  app.set_config("--config");
  app.require_subcommand(1);

  // --- compile ---
  auto* compile = app.add_subcommand("compile", "emit a pulse schedule");
  compile->require_subcommand(1);
  std::string out_path, report_path;
  compile->add_option("--out", out_path, "schedule JSON output path");
  compile->add_option("--report", report_path, "report JSON output path");

  auto* plaq = compile->add_subcommand("plaquette", "single 4-body plaquette target");
  auto* grid = compile->add_subcommand("grid", "all stabilizers on a periodic grid");
  size_t grows = 4, gcols = 4;
  grid->add_option("--rows", grows);
  grid->add_option("--cols", gcols);
  auto* pi4 = compile->add_subcommand("pi4", "exact pi/4-conjugation target");
  std::string theta_s = "0.3";
  pi4->add_option("--theta", theta_s);
  auto* hole = compile->add_subcommand("hole", "hole target (zero through dt^3)");
  auto* three = compile->add_subcommand("three-body", "boundary 3-body target");
  auto* single = compile->add_subcommand("single-body", "boundary target with Y bias");
  auto* nnv = compile->add_subcommand("nn-vertex", "nearest-neighbor vertex target");
  auto* deform = compile->add_subcommand("deformation", "Trotterized hole deformation");
  size_t ntr = 8;
  std::string j_s = "1", t1_s = "1";
  deform->add_option("--ntr", ntr);
  deform->add_option("--j", j_s);
  deform->add_option("--t1", t1_s);

  // --- verify ---
  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "check a schedule against dense simulation");
  verify->add_option("schedule", vopt.schedule_path)->required();
  verify->add_option("--dt-min", vopt.dt_min);
  verify->add_option("--dt-max", vopt.dt_max);
  verify->add_option("--points", vopt.points);
  verify->add_option("--lambda", vopt.lambda);
  verify->add_option("--csv", vopt.csv_path);
  verify->add_option("--report", vopt.report_path);
  verify->add_option("--cap", vopt.cap, "dense qubit cap");
  verify->add_flag("--symbolic-only", vopt.symbolic_only);

  // --- dd ---
  auto* dd = app.add_subcommand("dd", "generate decoupling sequences");
  dd->require_subcommand(1);
  std::string dd_out;
  dd->add_option("--out", dd_out, "sequence JSON output path");
  auto* universal = dd->add_subcommand("universal", "8-segment symmetric sequence");
  size_t un = 4;
  universal->add_option("--n", un);
  bool with_lambda1 = false;
  universal->add_flag("--lambda1", with_lambda1, "append the X-conjugated copy");
  auto* lemma1 = dd->add_subcommand("lemma1", "normalizer pulses protecting generators");
  std::string gens_s;
  size_t l1n = 4;
  lemma1->add_option("--gens", gens_s)->required();
  lemma1->add_option("--n", l1n);
  auto* lemma2 = dd->add_subcommand("lemma2", "periodic local-noise pulses");
  size_t l2l = 1, l2d = 1, l2n = 0, l2rows = 0, l2cols = 0;
  bool l2xx = false;
  lemma2->add_option("--l", l2l);
  lemma2->add_option("--D", l2d);
  lemma2->add_option("--n", l2n, "line length (D=1)");
  lemma2->add_option("--rows", l2rows);
  lemma2->add_option("--cols", l2cols);
  lemma2->add_flag("--xx-constraint", l2xx);
  auto* inter = dd->add_subcommand("interleave", "nest a DD cycle into a simulation");
  std::string inter_dd = "u_sec", inter_sim;
  inter->add_option("--dd", inter_dd, "'u_sec' or a sequence JSON path");
  inter->add_option("--sim", inter_sim)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (compile->parsed()) {
      if (plaq->parsed()) return cmd_compile_common(compile_plaquette(), out_path, report_path);
      if (grid->parsed()) {
        GridLayout g(grows, gcols, Connectivity::kDiagonal, true);
        CodeLayout code(g, PatchMode::kTorus);
        return cmd_compile_common(compile_grid(code), out_path, report_path);
      }
      if (pi4->parsed()) {
        Rational theta = parse_decimal(theta_s);
        PulseSchedule s = compile_pi4(theta.to_double());
        WeightedPauliSum target(4);
        target.add_str("X1 X2 X3 X4", theta);
        s.set_declared_target(target);
        emit_schedule(s, out_path);
        std::cout << "exact pi/4 target: theta=" << theta.str() << " X1X2X3X4 (exact)\n";
        return kExitOk;
      }
      if (hole->parsed())
        return cmd_compile_common(compile_boundary(BoundaryKind::kHole), out_path,
                                  report_path);
      if (three->parsed())
        return cmd_compile_common(compile_boundary(BoundaryKind::kThreeBody), out_path,
                                  report_path);
      if (single->parsed())
        return cmd_compile_common(compile_boundary(BoundaryKind::kSingleBody), out_path,
                                  report_path);
      if (nnv->parsed()) return cmd_compile_common(compile_nn_vertex(), out_path, report_path);
      if (deform->parsed()) {
        DeformationParams p;
        p.n_qubits = 5;
        WeightedPauliSum b2(5), bp(5), x1(5), av(5);
        b2.add_str("Z1 Z2 Z3 Z4", Rational(1));
        av.add_str("X1 X2 X3 X4", Rational(1));
        x1.add_str("X1", Rational(1));
        p.hole_term = b2;
        p.other_plaquettes = bp;
        p.ramp_in = x1;
        p.vertices = av;
        p.coupling = parse_decimal(j_s);
        p.total_time = parse_decimal(t1_s);
        p.trotter_steps = ntr;
        PulseSchedule s = compile_deformation(p);
        emit_schedule(s, out_path);
        std::cout << "deformation schedule: " << s.segment_count() << " segments, N_tr="
                  << ntr << "\n";
        return kExitOk;
      }
    }
    if (verify->parsed()) return cmd_verify(vopt);
    if (dd->parsed()) {
      DDSequence seq;
      if (universal->parsed()) {
        seq = universal_sequence(un);
        if (with_lambda1) seq = lambda1_extension(seq);
      } else if (lemma1->parsed()) {
        auto gens = parse_generators(l1n, gens_s);
        seq = symmetrize_protecting(l1n, gens);
        // Averaging self-test over every Pauli for small n.
        const std::vector<PhasedPauli>& pulses = seq.frame_paulis;
        bool ok = true;
        if (l1n <= 4) {
          for (uint64_t mask = 0; mask < (uint64_t{1} << (2 * l1n)); mask++) {
            PhasedPauli s(l1n);
            for (size_t q = 0; q < l1n; q++) {
              s.set_x(q, (mask >> (2 * q)) & 1);
              s.set_z(q, (mask >> (2 * q + 1)) & 1);
            }
            int64_t mult = twirl_multiplier(pulses, s);
            int64_t want = span_contains(gens, s) ? (int64_t)pulses.size() : 0;
            if (mult != want) ok = false;
          }
        }
        std::cout << "pulses: " << seq.frames.size() << "\n";
        std::cout << "self-test: " << (ok ? "pass" : "FAIL") << "\n";
        if (!ok) return kExitCertification;
      } else if (lemma2->parsed()) {
        size_t rows = l2d == 1 ? 1 : l2rows;
        size_t cols = l2d == 1 ? l2n : l2cols;
        if (l2d == 1 && l2n == 0) throw CLI::ValidationError("--n required for D=1");
        if (l2d == 2 && (l2rows == 0 || l2cols == 0))
          throw CLI::ValidationError("--rows/--cols required for D=2");
        seq = symmetrize_local(l2l, l2d, rows, cols, Connectivity::kDiagonal, l2xx);
        std::cout << "pulses: " << seq.frames.size() << "\n";
      } else if (inter->parsed()) {
        PulseSchedule sim = schedule_from_json(Json::parse(read_text_file(inter_sim)));
        DDSequence d;
        if (inter_dd == "u_sec")
          d = universal_sequence(sim.num_qubits());
        else
          d = dd_from_json(Json::parse(read_text_file(inter_dd)));
        PulseSchedule combined = interleave(d, sim);
        if (!dd_out.empty())
          write_text_file(dd_out, schedule_to_json(combined).dump(2) + "\n");
        std::cout << "segments: " << combined.segment_count() << "\n";
        return kExitOk;
      }
      if (!dd_out.empty()) write_text_file(dd_out, dd_to_json(seq).dump(2) + "\n");
      if (universal->parsed()) std::cout << "segments: " << seq.n_segments() << "\n";
      return kExitOk;
    }
  } catch (const std::length_error& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCertification;
  }
  return kExitOk;
}
