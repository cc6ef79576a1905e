#include "torusflow/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "torusflow/embedding.hpp"
#include "torusflow/mms.hpp"
#include "torusflow/output.hpp"
#include "torusflow/stepper.hpp"

namespace torusflow {

namespace {

namespace fs = std::filesystem;

std::string snap_name(int counter, int dim) {
  std::ostringstream os;
  os << "snap_" << std::setw(4) << std::setfill('0') << counter
     << (dim == 2 ? ".vtk" : ".csv");
  return os.str();
}

void write_snapshot(const fs::path& dir, int counter, const GraphState& state,
                    const std::string& hash) {
  std::ofstream os(dir / snap_name(counter, state.grid->dim));
  if (state.grid->dim == 2)
    write_snapshot_vtk(os, state, hash);
  else
    write_snapshot_csv(os, state, hash);
}

const char* reason_name(StopReason r) {
  switch (r) {
    case StopReason::converged: return "converged";
    case StopReason::t_final: return "t_final";
    default: return "aborted";
  }
}

}  // namespace

int cmd_run(const RunConfig& cfg, const std::string& out_dir, std::ostream& log,
            std::ostream& err) {
  const fs::path dir = out_dir.empty() ? fs::path(cfg.out_dir) : fs::path(out_dir);
  fs::create_directories(dir);
  const std::string hash = config_hash(cfg);

  {
    std::ofstream echo(dir / "config_echo.cfg");
    echo << "# config=" << hash << "\n" << echo_config(cfg);
  }

  GridPtr grid = make_grid(cfg);
  GraphState state = make_initial_state(cfg, grid);

  std::ofstream csv(dir / "diagnostics.csv");
  write_diagnostics_header(csv, hash, cfg.level_ks);

  int snap_counter = 0;
  long long last_snap_step = -1;
  if (cfg.snapshot_interval > 0) {
    write_snapshot(dir, snap_counter++, state, hash);
    last_snap_step = 0;
  }

  SampleOptions sopt;
  sopt.cadence = cfg.cadence;
  sopt.level_ks = cfg.level_ks;
  RunHooks hooks;
  hooks.on_sample = [&](const GraphState&, const DiagnosticsRow& row) {
    write_diagnostics_row(csv, row);
  };
  if (cfg.snapshot_interval > 0)
    hooks.on_step = [&](const GraphState& s, int step) {
      if (step % cfg.snapshot_interval == 0) {
        write_snapshot(dir, snap_counter++, s, hash);
        last_snap_step = step;
      }
    };

  RunResult res = run_flow(state, cfg.stepper, sopt, hooks);
  if (res.compat_flagged)
    err << "warning: initial data does not satisfy the contact condition; "
           "the flow will mollify it\n";

  if (cfg.snapshot_interval > 0 && res.steps != last_snap_step)
    write_snapshot(dir, snap_counter++, state, hash);

  log << "terminated: " << reason_name(res.reason) << " t=" << res.t_end
      << " steps=" << res.steps << " dt=" << res.dt
      << " osc=" << (res.samples.empty()
                         ? 0.0
                         : res.samples.back().u_max - res.samples.back().u_min)
      << "\n";
  if (res.reason == StopReason::aborted) {
    err << res.message << "\n";
    return 2;
  }
  return 0;
}

namespace {

struct CheckTable {
  std::ostream& log;
  bool all_ok = true;
  void row(const std::string& name, bool ok, const std::string& detail) {
    log << (ok ? "PASS  " : "FAIL  ") << std::left << std::setw(28) << name
        << " " << detail << "\n";
    all_ok = all_ok && ok;
  }
};

double linf_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<double> evolve_steps(GraphState state, const StepperConfig& cfg,
                                 int steps) {
  const double dt = cfl_dt(state, cfg);
  for (int i = 0; i < steps; ++i) {
    const StepStatus st = step_once(state, cfg, dt);
    if (!st.ok) throw std::runtime_error(st.error);
  }
  return state.u;
}

std::string metric(double value, double threshold) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << "(val=" << value
     << ", thr=" << threshold << ")";
  return os.str();
}

}  // namespace

int cmd_check(const RunConfig& cfg, std::ostream& log, const CheckFaults& faults) {
  CheckTable t{log};
  GridPtr grid = make_grid(cfg);
  GraphState state0 = make_initial_state(cfg, grid);

  // Contact-condition residual of the ghost solve (fault-injection target).
  {
    GraphState s = state0;
    apply_neumann(s);
    if (faults.break_neumann) s.ghost[0] += 0.1;
    double scale = 1.0;
    for (double x : s.u) scale = std::max(scale, std::abs(x));
    const double res = neumann_residual(s);
    t.row("neumann_ghost", res <= 1e-10 * scale, metric(res, 1e-10 * scale));
  }

  // Stationarity of the flat cross-section.
  {
    GraphState s(grid);
    for (double& x : s.u) x = 0.7;
    const std::vector<double> u1 = evolve_steps(s, cfg.stepper, 200);
    double drift = 0.0;
    for (double x : u1) drift = std::max(drift, std::abs(x - 0.7));
    t.row("stationarity", drift <= 1e-12, metric(drift, 1e-12));
  }

  // Equivariance under u -> u + 2 pi and u -> -u.
  {
    const int steps = 100;
    const std::vector<double> base = evolve_steps(state0, cfg.stepper, steps);
    GraphState sp = state0;
    for (double& x : sp.u) x += 2.0 * M_PI;
    std::vector<double> shifted = evolve_steps(sp, cfg.stepper, steps);
    for (double& x : shifted) x -= 2.0 * M_PI;
    const double ed = linf_diff(base, shifted);
    t.row("translation_equivariance", ed <= 1e-12, metric(ed, 1e-12));

    GraphState sn = state0;
    for (double& x : sn.u) x = -x;
    std::vector<double> negated = evolve_steps(sn, cfg.stepper, steps);
    for (double& x : negated) x = -x;
    const double en = linf_diff(base, negated);
    t.row("reflection_equivariance", en <= 1e-12, metric(en, 1e-12));
  }

  // Algebraic identities on the initial state.
  {
    GraphState s = state0;
    apply_neumann(s);
    const GeomFields f = compute_geometry(s);
    double worst_metric = 0.0, worst_normal = 0.0, worst_det = 0.0;
    for (int i = 0; i < grid->size(); ++i) {
      const long double r2 = (long double)grid->r[i] * grid->r[i];
      if (grid->dim == 1) {
        const long double g11 = 1.0L + r2 * f.du_r[i] * f.du_r[i];
        worst_metric =
            std::max(worst_metric, (double)std::abs(g11 * f.g11[i] - 1.0L));
        worst_det = std::max(
            worst_det,
            (double)std::abs((long double)f.vtilde[i] * f.vtilde[i] * f.g11[i] -
                             1.0L));
      } else {
        const long double a = 1.0L + r2 * f.du_y[i] * f.du_y[i];
        const long double b = r2 * f.du_y[i] * f.du_r[i];
        const long double c = 1.0L + r2 * f.du_r[i] * f.du_r[i];
        worst_metric = std::max(
            {worst_metric, (double)std::abs(a * f.g11[i] + b * f.g12[i] - 1.0L),
             (double)std::abs(a * f.g12[i] + b * f.g22[i]),
             (double)std::abs(b * f.g11[i] + c * f.g12[i]),
             (double)std::abs(b * f.g12[i] + c * f.g22[i] - 1.0L)});
        const long double det =
            (long double)f.g11[i] * f.g22[i] - (long double)f.g12[i] * f.g12[i];
        worst_det = std::max(
            worst_det,
            (double)std::abs((long double)f.vtilde[i] * f.vtilde[i] * det -
                             1.0L));
      }
      const Vec3 nu = normal_vector(s, i);
      const Vec3 tau = tau_at(s, i);
      worst_normal =
          std::max(worst_normal, std::abs(dot(nu, tau) * f.vtilde[i] - 1.0));
    }
    t.row("metric_identity", worst_metric <= 1e-12, metric(worst_metric, 1e-12));
    t.row("normal_identity", worst_normal <= 1e-10, metric(worst_normal, 1e-10));
    t.row("volume_identity", worst_det <= 1e-10, metric(worst_det, 1e-10));
  }

  // Run-based checks.
  SampleOptions sopt;
  sopt.cadence = cfg.cadence;
  sopt.level_ks = cfg.level_ks;
  GraphState run_state = state0;
  RunResult res = run_flow(run_state, cfg.stepper, sopt);
  if (res.reason == StopReason::aborted) {
    t.row("run_completed", false, res.message);
    log << (t.all_ok ? "ALL CHECKS PASSED\n" : "CHECK FAILURES\n");
    return t.all_ok ? 0 : 1;
  }

  const double osc0 = res.u_max0 - res.u_min0;
  {
    const double viol =
        std::max(res.max_violation_up, res.max_violation_down);
    const double tol = 1e-6 * std::max(osc0, 1e-30);
    t.row("extremum_monotonicity", viol <= tol, metric(viol, tol));
  }
  {
    double up = 0.0;
    for (std::size_t i = 1; i < res.samples.size(); ++i)
      up += std::max(0.0, res.samples[i].area - res.samples[i - 1].area);
    const double tol = 1e-8 * res.samples.front().area * double(res.steps + 1);
    t.row("area_monotonicity", up <= tol, metric(up, tol));
  }
  {
    const EnergyResidual er = energy_identity_residual(res.samples);
    const bool drop_meaningful =
        std::abs(er.area0 - res.samples.back().area) > 1e-10;
    // Star maps carry a small non-converging pole-filter contribution in the
    // time-accumulated budget (curve and round-torus runs resolve to ~1e-3).
    const double tol = cfg.profile_kind == "star" ? 5e-2 : 1e-2;
    const bool ok = (!drop_meaningful || er.relative <= tol) && er.bound_ok;
    t.row("energy_identity", ok, metric(er.relative, tol));
  }
  {
    // Flux identity, evaluated where the run is resolved: prefer the sample
    // with the largest |H|-mass among those with vtilde <= 2, else the most
    // resolved one. Unresolved early states can carry O(1) residuals.
    const DiagnosticsRow* pick = nullptr;
    for (const DiagnosticsRow& row : res.samples) {
      if (row.flux_hr_norm <= 1e-12) continue;
      if (row.vtilde_max <= 2.0) {
        if (!pick || pick->vtilde_max > 2.0 ||
            row.flux_hr_norm > pick->flux_hr_norm)
          pick = &row;
      } else if (!pick || (pick->vtilde_max > 2.0 &&
                           row.vtilde_max < pick->vtilde_max)) {
        pick = &row;
      }
    }
    const double rel = pick ? std::abs(pick->flux_hr) / pick->flux_hr_norm : 0.0;
    t.row("flux_identity", rel <= 5e-2, metric(rel, 5e-2));
  }
  {
    double worst = 0.0;
    const double cap = 100.0 * res.samples.front().h2v2_max + 1e-8;
    for (const DiagnosticsRow& row : res.samples)
      worst = std::max(worst, row.h2v2_max);
    t.row("h2v2_cap", worst <= cap, metric(worst, cap));
  }
  {
    const double cap = 10.0 * res.vtilde_max0;
    t.row("vtilde_bound", res.vtilde_max_run <= cap,
          metric(res.vtilde_max_run, cap));
  }
  if (res.samples.size() >= 2) {
    const LevelSetReport rep = level_set_accumulate(*grid, res.samples);
    t.row("level_set_inequality", rep.inequality_holds,
          metric(rep.tau_top_spacetime, 0.0));
  }
  if (res.reason == StopReason::converged && cfg.stepper.osc_tol <= 1e-4) {
    const double tau_end = res.samples.back().tau_top;
    t.row("tau_top_at_convergence", tau_end <= 1e-6, metric(tau_end, 1e-6));
  }

  log << (t.all_ok ? "ALL CHECKS PASSED\n" : "CHECK FAILURES\n");
  return t.all_ok ? 0 : 1;
}

int cmd_mms(const RunConfig& cfg, int levels, const std::string& out_dir,
            std::ostream& log, std::ostream& err) {
  if (levels < 3) {
    err << "levels >= 3\n";
    return 1;
  }
  const ProfileCurve profile = make_profile(cfg);
  ManufacturedCase mc;
  if (cfg.dim() == 1) {
    mc = mms_case_cosine_1d(1.0, cfg.r0, cfg.r1);
  } else {
    if (cfg.profile_kind != "circle") {
      err << "mms: 2-d study requires a circle profile\n";
      return 1;
    }
    mc = mms_case_radial_2d({cfg.center_y, cfg.center_r}, cfg.a);
  }

  const StudyReport rep =
      convergence_study(mc, profile, cfg.dim() == 1 ? cfg.n : cfg.ns, cfg.nphi,
                        levels, cfg.mms_t, cfg.stepper.sigma);

  const double omin =
      cfg.order_min != 0.0 ? cfg.order_min : (cfg.dim() == 1 ? 1.8 : 1.7);
  const double omax =
      cfg.order_max != 0.0 ? cfg.order_max : (cfg.dim() == 1 ? 2.2 : 2.3);

  const fs::path dir = out_dir.empty() ? fs::path(cfg.out_dir) : fs::path(out_dir);
  fs::create_directories(dir);
  std::ofstream csv(dir / "mms.csv");
  csv << "# config=" << config_hash(cfg) << "\n";
  csv << "level,n,ns,nphi,h,linf,order\n";
  for (std::size_t i = 0; i < rep.levels.size(); ++i) {
    const StudyLevel& l = rep.levels[i];
    csv << i << ',' << l.n1 << ',' << l.ns << ',' << l.nphi << ','
        << format_double(l.h) << ',' << format_double(l.linf) << ',';
    if (rep.exact)
      csv << "exact";
    else if (i > 0)
      csv << format_double(rep.orders[i - 1]);
    csv << "\n";
    log << "level " << i << ": h=" << format_double(l.h)
        << " linf=" << format_double(l.linf);
    if (!rep.exact && i > 0)
      log << " order=" << format_double(rep.orders[i - 1]);
    if (rep.exact) log << " order=exact";
    log << "\n";
  }

  if (rep.exact) return 0;
  for (std::size_t i = 0; i < rep.orders.size(); ++i)
    if (rep.orders[i] < omin || rep.orders[i] > omax) {
      err << "order " << format_double(rep.orders[i]) << " between levels " << i
          << " and " << i + 1 << " outside [" << omin << ", " << omax << "]\n";
      return 1;
    }
  return 0;
}

}  // namespace torusflow
