#include "activech/io/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "activech/analysis/convergence.hpp"
#include "activech/analysis/modes.hpp"
#include "activech/error.hpp"
#include "activech/fem/energy.hpp"
#include "activech/fem/simulation.hpp"
#include "activech/io/checkpoint.hpp"
#include "activech/io/invariants.hpp"
#include "activech/io/manifest.hpp"
#include "activech/io/writers.hpp"
#include "activech/model/quadrature.hpp"
#include "activech/model/sharp_params.hpp"
#include "activech/sharp/planar.hpp"
#include "activech/sharp/stability.hpp"

namespace activech::io {

namespace {

namespace fs = std::filesystem;

std::string printf_line(const char* format, ...) __attribute__((format(printf, 1, 2)));

std::string printf_line(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (fs::path(cfg.output.dir) / name).string();
}

fem::MeshSpec mesh_spec(const RunConfig& cfg) {
  fem::MeshSpec m;
  m.dim = cfg.domain.dim;
  m.lengths = cfg.domain.lengths;
  m.h = resolved_mesh_size(cfg);
  m.corners = cfg.disc.corners;
  return m;
}

fem::SolverConfig solver_config(const RunConfig& cfg) {
  fem::SolverConfig s = cfg.solver;
  s.tau = cfg.disc.tau;
  s.seed = cfg.seed;
  return s;
}

double lumped_norm(const fem::NodalField& f) {
  const Eigen::VectorXd sq = f.values().array().square();
  return std::sqrt(fem::lumped_integral(f.mesh(), sq));
}

/// Records the bookkeeping of a finished run in the manifest.
void record_run(Manifest& manifest, const fem::RunRecord& rec, const fem::SolverConfig& solver) {
  manifest.set_newton_iterations(rec.newton_iterations);
  for (const auto& w : rec.warnings) manifest.add_warning(w);
  const double bound = 1.1;
  manifest.add_check("max |phi_h| <= 1.1", rec.max_abs_phi <= bound,
                     "max |phi_h| = " + format_double(rec.max_abs_phi));
  const double mass_tol =
      10.0 * solver.linear_tol * std::max(1.0, lumped_norm(rec.final_state.phi));
  manifest.add_check("discrete mass balance", rec.max_mass_defect <= mass_tol,
                     "max defect " + format_double(rec.max_mass_defect) + ", tolerance " +
                         format_double(mass_tol));
  manifest.set_result("t_final", rec.final_state.t);
  manifest.set_result("steps", static_cast<double>(rec.final_state.step));
  manifest.set_result("max_abs_phi", rec.max_abs_phi);
  manifest.set_result("max_mass_defect", rec.max_mass_defect);
  manifest.set_result("linear_solver", rec.linear_solver);
  if (!rec.diagnostics.empty()) {
    const auto& last = rec.diagnostics.back();
    manifest.set_result("mass", last.mass);
    manifest.set_result("energy", last.energy);
    if (last.q_h) manifest.set_result("q_h", *last.q_h);
  }
}

void emit_run_summary(const fem::RunRecord& rec, const Emit& emit) {
  const auto& last = rec.diagnostics.back();
  emit(printf_line("t = %.6g after %ld steps (%s)", rec.final_state.t, rec.final_state.step,
                   rec.linear_solver.c_str()));
  emit(printf_line("mass = %.12g  energy = %.12g", last.mass, last.energy));
  if (last.q_h) emit(printf_line("q_h = %.10g", *last.q_h));
  emit(printf_line("max |phi_h| = %.6g  max mass defect = %.3g", rec.max_abs_phi,
                   rec.max_mass_defect));
  for (const auto& w : rec.warnings) emit("warning: " + w);
}

/// Simulation with snapshots and diagnostics as configured; shared by
/// simulate and modes.
fem::RunRecord simulate_with_output(const RunConfig& cfg, const fem::DiagnosticsSpec& diag,
                                    const fem::SolverConfig& solver) {
  const auto params = phase_field_params(cfg);
  const int vtk_stride = cfg.output.vtk_stride;
  auto snapshot = [&](const fem::SimState& s) {
    write_file_atomic(out_path(cfg, snapshot_name(s.step)), vtk_snapshot(s.phi, s.mu, s.t));
  };
  const double t_end = cfg.disc.t_end;
  const double tau = cfg.disc.tau;
  const fem::StateObserver observer = [&](const fem::SimState& s, const fem::StepReport* report) {
    if (!cfg.output.vtk) return;
    const bool first = report == nullptr;
    const bool last = s.t >= t_end - 0.5 * tau;
    const bool periodic = vtk_stride > 0 && s.step % vtk_stride == 0;
    if (first || last || periodic) snapshot(s);
  };
  if (cfg.output.restart) {
    fem::SimState start = read_checkpoint(*cfg.output.restart);
    if (start.phi.mesh().dim() != cfg.domain.dim)
      throw ConfigError("config field output.restart: checkpoint dimension does not match domain.dim");
    return fem::continue_simulation(params, std::move(start), solver, t_end, diag, observer);
  }
  return fem::run_simulation(params, mesh_spec(cfg), cfg.init, solver, t_end, diag, observer);
}

fem::DiagnosticsSpec diagnostics_spec(const RunConfig& cfg) {
  fem::DiagnosticsSpec d;
  d.stride = cfg.output.stride;
  d.track_front = cfg.output.track_front.value_or(std::holds_alternative<fem::FlatFront>(cfg.init));
  d.track_line = cfg.output.track_line;
  d.mode_lmax = cfg.output.mode_lmax;
  return d;
}

int cmd_simulate(const RunConfig& cfg, Manifest& manifest, const Emit& emit) {
  const auto solver = solver_config(cfg);
  const auto diag = diagnostics_spec(cfg);
  const auto rec = simulate_with_output(cfg, diag, solver);
  write_file_atomic(out_path(cfg, "diag.csv"), diagnostics_csv(rec.diagnostics, diag.mode_lmax));
  if (cfg.output.checkpoint) write_checkpoint(out_path(cfg, "checkpoint.bin"), rec.final_state);
  record_run(manifest, rec, solver);
  emit_run_summary(rec, emit);
  return 0;
}

int cmd_sharp_ode(const RunConfig& cfg, Manifest& manifest, const Emit& emit) {
  const auto p = sharp_model_params(cfg);
  sharp::PlanarConfig pc;
  pc.sharp = model::derive_sharp_params(p, cfg.domain.lengths[0], cfg.domain.lengths[1]);
  pc.sharp.require_planar();
  if (cfg.sharp_ode.q0) {
    pc.q0 = *cfg.sharp_ode.q0;
  } else if (const auto* f = std::get_if<fem::FlatFront>(&cfg.init)) {
    pc.q0 = f->q0;
  } else {
    throw ConfigError("config field sharp_ode.q0: required when initial.kind is not flat_front");
  }
  pc.dt = cfg.sharp_ode.dt;
  pc.t_end = cfg.disc.t_end;
  pc.output_stride = cfg.sharp_ode.stride;
  const auto traj = sharp::integrate_q(pc);

  std::ostringstream csv;
  csv << "t,q,H\n";
  for (const auto& pt : traj.points)
    csv << format_double(pt.t) << ',' << format_double(pt.q) << ',' << format_double(pt.H) << '\n';
  write_file_atomic(out_path(cfg, "sharp_ode.csv"), csv.str());

  const auto& end = traj.points.back();
  manifest.set_result("t_final", end.t);
  manifest.set_result("q_final", end.q);
  emit(printf_line("q(%.6g) = %.12g  H = %.6g", end.t, end.q, end.H));
  if (traj.boundary_hit) {
    manifest.add_warning("front reached the domain boundary; integration stopped");
    emit("warning: front reached the domain boundary; integration stopped");
  }
  if (const auto qs = sharp::find_stationary(pc.sharp)) {
    manifest.set_result("q_stationary", *qs);
    emit(printf_line("stationary front q* = %.12g", *qs));
  } else {
    emit("no stationary front in (0, L)");
  }
  return 0;
}

int cmd_stability(const RunConfig& cfg, Manifest& manifest, const Emit& emit) {
  const auto p = sharp_model_params(cfg);
  const auto sp = model::derive_sharp_params(p, cfg.domain.lengths[0], cfg.domain.lengths[1]);
  sp.require_planar();
  double q = 0.0;
  if (cfg.stability.q) {
    q = *cfg.stability.q;
  } else if (const auto qs = sharp::find_stationary(sp)) {
    q = *qs;
  } else {
    throw ConfigError("config field stability.q: no stationary front exists; give the front position");
  }
  const int lmax = cfg.stability.l_max;
  if (lmax < 0) throw ConfigError("config field stability.lmax: must be nonnegative");
  const auto modes = sharp::enumerate_modes(cfg.stability.dim, lmax * lmax);

  std::vector<sharp::StabilityRow> rows;
  for (const auto& m : modes.representatives) rows.push_back(sharp::amplification(sp, p.beta, q, m));
  const auto best = std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.factor < b.factor;
  });

  std::ostringstream csv;
  csv << "l_sq,gamma_plus,gamma_minus,a_plus,a_minus,factor,beta_crit,argmax\n";
  emit(printf_line("front q = %.10g, beta = %.6g", q, p.beta));
  emit("   l_sq      factor     beta_crit");
  for (auto it = rows.begin(); it != rows.end(); ++it) {
    const auto& r = *it;
    std::optional<double> bc = r.beta_crit;
    if (!bc && r.mode.l_sq > 0) bc = sharp::critical_beta(sp, q, r.mode);
    const bool arg = it == best;
    csv << r.mode.l_sq << ',' << format_double(r.gamma_plus) << ',' << format_double(r.gamma_minus)
        << ',' << format_double(r.a_plus) << ',' << format_double(r.a_minus) << ','
        << format_double(r.factor) << ',' << (bc ? format_double(*bc) : "") << ','
        << (arg ? 1 : 0) << '\n';
    emit(printf_line("%7d  %10.6g  %12s%s", r.mode.l_sq, r.factor,
                     bc ? printf_line("%.6g", *bc).c_str() : "-", arg ? "  <- max" : ""));
  }
  write_file_atomic(out_path(cfg, "stability.csv"), csv.str());
  manifest.set_result("q", q);
  manifest.set_result("argmax_l_sq", static_cast<double>(best->mode.l_sq));
  manifest.set_result("max_factor", best->factor);
  emit(printf_line("most amplified: |l|^2 = %d (factor %.6g)", best->mode.l_sq, best->factor));
  return 0;
}

int cmd_converge(const RunConfig& cfg, Manifest& manifest, const Emit& emit) {
  analysis::ConvergenceSetup s;
  s.params = sharp_model_params(cfg);
  s.length_L = cfg.domain.lengths[0];
  s.width_Lt = cfg.domain.lengths[1];
  s.dim = cfg.converge.dim;
  if (cfg.converge.q0) {
    s.q0 = *cfg.converge.q0;
  } else if (const auto* f = std::get_if<fem::FlatFront>(&cfg.init)) {
    s.q0 = f->q0;
  }
  s.t_end = cfg.disc.t_end;
  s.tau = cfg.disc.tau;
  s.epsilons = cfg.converge.epsilons;
  s.h = cfg.disc.h;
  s.reference_dt = cfg.converge.reference_dt;
  s.corners = cfg.disc.corners;
  s.threads = thread_cap(cfg.converge.threads);
  s.validate();

  const auto table = analysis::convergence_study(s);
  write_file_atomic(out_path(cfg, "convergence.csv"), convergence_csv(table));
  write_file_atomic(out_path(cfg, "convergence.dat"), convergence_dat(table));

  emit(printf_line("reference q(T) = %.12g", table.q_reference));
  emit("     epsilon          h        error     EOC");
  bool all_ok = true;
  for (const auto& r : table.rows) {
    if (r.failure) {
      all_ok = false;
      emit(printf_line("%12.6g %10.6g  failed: %s", r.epsilon, r.h, r.failure->c_str()));
      manifest.add_warning(printf_line("epsilon %.6g: %s", r.epsilon, r.failure->c_str()));
      continue;
    }
    emit(printf_line("%12.6g %10.6g %12.4e %7s", r.epsilon, r.h, r.error.value_or(NAN),
                     r.eoc ? printf_line("%.3f", *r.eoc).c_str() : "-"));
  }
  manifest.set_result("q_reference", table.q_reference);
  manifest.add_check("all convergence rows completed", all_ok,
                     std::to_string(table.rows.size()) + " rows");
  return all_ok ? 0 : 2;
}

int cmd_modes(const RunConfig& cfg, Manifest& manifest, const Emit& emit) {
  if (cfg.domain.dim != 2) throw ConfigError("config field domain.dim: modes needs a 2D domain");
  const auto* front = std::get_if<fem::FlatFront>(&cfg.init);
  if (!front) throw ConfigError("config field initial.kind: modes needs a flat_front start");
  const int lmax = cfg.modes.l_max;
  if (lmax < 1) throw ConfigError("config field modes.lmax: must be at least 1");

  auto diag = diagnostics_spec(cfg);
  diag.mode_lmax = lmax;
  const auto solver = solver_config(cfg);
  const auto rec = simulate_with_output(cfg, diag, solver);
  write_file_atomic(out_path(cfg, "diag.csv"), diagnostics_csv(rec.diagnostics, lmax));
  if (cfg.output.checkpoint) write_checkpoint(out_path(cfg, "checkpoint.bin"), rec.final_state);
  record_run(manifest, rec, solver);

  analysis::ModeSeries series;
  for (const auto& row : rec.diagnostics) {
    series.times.push_back(row.t);
    series.amplitudes.push_back(row.modes);
  }
  write_file_atomic(out_path(cfg, "modes.csv"), modes_csv(series));

  const auto p = phase_field_params(cfg);
  const double Lt = cfg.domain.lengths[1];
  const auto sp = model::derive_sharp_params(p, cfg.domain.lengths[0], Lt);
  const double cap = cfg.modes.cap * Lt;

  // End of the linear regime: first sample where a nonconstant mode reaches the cap.
  std::size_t lin_end = series.times.size() - 1;
  for (std::size_t i = 0; i < series.times.size() && lin_end == series.times.size() - 1; ++i)
    for (int l = 1; l <= lmax; ++l)
      if (std::abs(series.amplitudes[i][static_cast<std::size_t>(l)]) >= cap) {
        lin_end = i;
        break;
      }

  std::ostringstream csv;
  csv << "l,predicted_rate,fitted_rate,t_begin,t_end,amplitude_end_linear\n";
  emit("   l   predicted   fitted      window");
  int dominant = 1;
  for (int l = 1; l <= lmax; ++l) {
    const auto mag = series.magnitude(l);
    std::optional<double> predicted;
    if (sp.planar_supported())
      predicted = sharp::amplification(sp, p.beta, front->q0, sharp::ModeIndex::planar(l)).growth_rate();
    std::optional<double> fitted;
    // Fits stay inside the linear regime of the whole spectrum.
    const std::vector<double> lin_t(series.times.begin(), series.times.begin() + static_cast<long>(lin_end) + 1);
    const std::vector<double> lin_a(mag.begin(), mag.begin() + static_cast<long>(lin_end) + 1);
    const auto win = analysis::growth_window(lin_t, lin_a, cap, cfg.modes.start_factor);
    if (win) {
      const std::vector<double> t(series.times.begin() + static_cast<long>(win->begin),
                                  series.times.begin() + static_cast<long>(win->end));
      const std::vector<double> a(mag.begin() + static_cast<long>(win->begin),
                                  mag.begin() + static_cast<long>(win->end));
      try {
        fitted = analysis::fit_growth_rate(t, a);
      } catch (const DomainError&) {
      }
    }
    if (mag[lin_end] > series.magnitude(dominant)[lin_end]) dominant = l;
    csv << l << ',' << (predicted ? format_double(*predicted) : "") << ','
        << (fitted ? format_double(*fitted) : "") << ','
        << (win ? format_double(win->t_begin) : "") << ','
        << (win ? format_double(win->t_end) : "") << ',' << format_double(mag[lin_end]) << '\n';
    emit(printf_line("%4d %11s %8s  %s", l, predicted ? printf_line("%.4g", *predicted).c_str() : "-",
                     fitted ? printf_line("%.4g", *fitted).c_str() : "-",
                     win ? printf_line("[%.4g, %.4g]", win->t_begin, win->t_end).c_str() : "none"));
  }
  write_file_atomic(out_path(cfg, "growth.csv"), csv.str());
  manifest.set_result("t_linear_end", series.times[lin_end]);
  manifest.set_result("dominant_mode", static_cast<double>(dominant));
  emit(printf_line("dominant mode at t = %.4g: l = %d", series.times[lin_end], dominant));
  for (const auto& w : rec.warnings) emit("warning: " + w);
  return 0;
}

int cmd_si_table(const RunConfig& cfg, Manifest& manifest, const Emit& emit) {
  const auto& st = cfg.si_table;
  if (st.k_count < 1) throw ConfigError("config field si_table.k_count: must be positive");
  const auto pot = model::DoubleWellPotential::quartic();
  std::vector<double> ks;
  for (int i = 0; i < st.k_count; ++i)
    ks.push_back(st.k_count == 1 ? st.k_min
                                 : st.k_min + (st.k_max - st.k_min) * i / (st.k_count - 1));
  std::ostringstream csv;
  csv << "k_plus,k_minus,l_coef,r_c,si_quadrature,si_closed_form\n";
  emit("     K+      K-       L    r_c    S_I");
  std::size_t count = 0;
  for (double r_c : st.r_c_values)
    for (double l : st.l_values)
      for (double kp : ks)
        for (double km : ks) {
          model::ReactionSpec spec;
          spec.k_plus = kp;
          spec.k_minus = km;
          spec.l_coef = l;
          spec.r_c = r_c;
          spec.validate();
          const double si = model::si_quadrature(spec, pot);
          std::optional<double> closed;
          if (r_c == 1.0) closed = model::si_closed_form(spec, pot);
          csv << format_double(kp) << ',' << format_double(km) << ',' << format_double(l) << ','
              << format_double(r_c) << ',' << format_double(si) << ','
              << (closed ? format_double(*closed) : "") << '\n';
          emit(printf_line("%7.3g %7.3g %7.3g %6.3g  %.12g", kp, km, l, r_c, si));
          ++count;
        }
  write_file_atomic(out_path(cfg, "si_table.csv"), csv.str());
  manifest.set_result("rows", static_cast<double>(count));
  return 0;
}

int cmd_check(const RunConfig&, Manifest& manifest, const Emit& emit) {
  bool all = true;
  for (const auto& c : invariant_suite()) {
    manifest.add_check(c.name, c.passed, c.detail);
    emit((c.passed ? "PASS " : "FAIL ") + c.name + ": " + c.detail);
    all = all && c.passed;
  }
  return all ? 0 : 2;
}

using Command = int (*)(const RunConfig&, Manifest&, const Emit&);

Command find_command(const std::string& name) {
  if (name == "simulate") return cmd_simulate;
  if (name == "sharp-ode") return cmd_sharp_ode;
  if (name == "stability") return cmd_stability;
  if (name == "converge") return cmd_converge;
  if (name == "modes") return cmd_modes;
  if (name == "si-table") return cmd_si_table;
  if (name == "check") return cmd_check;
  return nullptr;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"simulate", "sharp-ode", "stability", "converge",
                                              "modes",    "si-table",  "check"};
  return names;
}

unsigned thread_cap(unsigned requested) {
  const char* env = std::getenv("ACTIVE_CH_THREADS");
  if (!env) return std::max(1u, requested);
  char* end = nullptr;
  const long cap = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || cap < 1) return std::max(1u, requested);
  return std::clamp(requested, 1u, static_cast<unsigned>(cap));
}

int run_command(const std::string& name, const RunConfig& cfg, const Emit& emit) {
  const Command command = find_command(name);
  if (!command) throw ConfigError("unknown command '" + name + "'");
  ensure_directory(cfg.output.dir);
  Manifest manifest(out_path(cfg, "manifest.json"), name, cfg);
  try {
    const int code = command(cfg, manifest, emit);
    manifest.finish(code == 0, code == 0 ? std::string{} : "numerical verdict failed");
    return code;
  } catch (const std::exception& e) {
    manifest.finish(false, e.what());
    throw;
  }
}

}  // namespace activech::io
