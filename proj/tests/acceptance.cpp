// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line each. Exit status is nonzero if any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "torusflow/diagnostics.hpp"
#include "torusflow/embedding.hpp"
#include "torusflow/mms.hpp"
#include "torusflow/operators.hpp"
#include "torusflow/stepper.hpp"

using namespace torusflow;

namespace {

int g_failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("[%s] %-4s %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  if (!ok) ++g_failures;
}

double now_s() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

struct Timer {
  double start = now_s();
  double elapsed() const { return now_s() - start; }
};

GraphState annulus_cos(int n, double amplitude) {
  GraphState s(build_grid_1d(make_interval_profile(1.0, 2.0), n));
  for (int j = 0; j < n; ++j)
    s.u[j] = amplitude * std::cos(M_PI * (s.grid->r[j] - 1.0));
  apply_neumann(s);
  return s;
}

GraphState torus_wrap(int ns, int nphi, double amplitude) {
  GraphState s(build_grid(make_circle_profile({0.0, 2.0}, 0.5), ns, nphi));
  const DomainGrid& g = *s.grid;
  for (int j = 0; j < g.ns; ++j) {
    const double sj = (j + 0.5) * g.ds;
    const double v = amplitude * 0.5 * (1.0 + std::cos(M_PI * sj));
    for (int k = 0; k < g.nphi; ++k) s.u[g.idx(j, k)] = v;
  }
  apply_neumann(s);
  return s;
}

// Worst geometric-identity defects over all nodes of a state.
void identity_worst(const GraphState& s, double& nu_defect, double& metric_defect) {
  const DomainGrid& g = *s.grid;
  const GeomFields f = compute_geometry(s);
  for (int i = 0; i < g.size(); ++i) {
    const Vec3 nu = normal_vector(s, i);
    const Vec3 tau = tau_at(s, i);
    nu_defect = std::max(nu_defect, std::abs(dot(nu, tau) * f.vtilde[i] - 1.0));
    const long double r2 = (long double)g.r[i] * g.r[i];
    if (g.dim == 1) {
      const long double g11 = 1.0L + r2 * f.du_r[i] * f.du_r[i];
      metric_defect =
          std::max(metric_defect, (double)std::abs(g11 * f.g11[i] - 1.0L));
    } else {
      const long double a = 1.0L + r2 * f.du_y[i] * f.du_y[i];
      const long double b = r2 * f.du_y[i] * f.du_r[i];
      const long double c = 1.0L + r2 * f.du_r[i] * f.du_r[i];
      metric_defect = std::max(
          {metric_defect, (double)std::abs(a * f.g11[i] + b * f.g12[i] - 1.0L),
           (double)std::abs(a * f.g12[i] + b * f.g22[i]),
           (double)std::abs(b * f.g11[i] + c * f.g12[i]),
           (double)std::abs(b * f.g12[i] + c * f.g22[i] - 1.0L)});
    }
  }
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

}  // namespace

int main() {
  StepperConfig cfg;  // sigma 0.2, euler

  // ---- A1: stationarity of the flat cross-section ----
  {
    Timer timer;
    bool ok = true;
    double worst = 0.0;
    {
      GraphState s(build_grid_1d(make_interval_profile(1.0, 2.0), 129));
      for (double& x : s.u) x = 0.7;
      const double dt = cfl_dt(s, cfg);
      for (int i = 0; i < 1000; ++i)
        if (!step_once(s, cfg, dt).ok) ok = false;
      for (double x : s.u) worst = std::max(worst, std::abs(x - 0.7));
    }
    {
      GraphState s(build_grid(make_circle_profile({0.0, 2.0}, 0.5), 64, 64));
      for (double& x : s.u) x = 0.7;
      const double dt = cfl_dt(s, cfg);
      for (int i = 0; i < 1000; ++i)
        if (!step_once(s, cfg, dt).ok) ok = false;
      for (double x : s.u) worst = std::max(worst, std::abs(x - 0.7));
    }
    const double el = timer.elapsed();
    ok = ok && worst <= 1e-12 && el < 5.0;
    report("A1", ok,
           fmt("stationarity: drift=%.3e (<=1e-12), %.1fs (<5s)", worst, el));
  }

  // ---- A2 + A3(1-d) + A4 + A7 + A10 share one convergence run ----
  const double osc0_1d = 4.0 * M_PI;
  RunResult run1d;
  double nu_defect = 0.0, metric_defect = 0.0;
  double a2_elapsed = 0.0;
  GraphState state1d = annulus_cos(129, 2.0 * M_PI);
  {
    Timer timer;
    StepperConfig c1 = cfg;
    c1.t_final = 50.0;
    c1.osc_tol = 1e-3 * osc0_1d;
    SampleOptions sopt;
    sopt.cadence = 10;
    sopt.level_ks = {0.5, 1.0, 2.0, 3.0};
    RunHooks hooks;
    hooks.on_sample = [&](const GraphState& s, const DiagnosticsRow&) {
      identity_worst(s, nu_defect, metric_defect);
    };
    run1d = run_flow(state1d, c1, sopt, hooks);
    a2_elapsed = timer.elapsed();
  }
  {
    const double viol =
        std::max(run1d.max_violation_up, run1d.max_violation_down);
    const bool ok = viol <= 1e-6 * osc0_1d && a2_elapsed < 30.0;
    report("A2", ok,
           fmt("extremum monotonicity: violation=%.3e (<=%.3e), %.1fs (<30s)",
               viol, 1e-6 * osc0_1d, a2_elapsed));
  }

  // ---- A3: convergence to a flat cross-section ----
  {
    double lo = state1d.u[0], hi = state1d.u[0];
    for (double x : state1d.u) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    const bool conv = run1d.reason == StopReason::converged;
    const bool inside = lo >= -2.0 * M_PI && hi <= 2.0 * M_PI;
    const bool ok =
        conv && inside && (hi - lo) <= 1e-3 * osc0_1d && a2_elapsed < 120.0;
    report("A3", ok,
           fmt("1-d converged: osc=%.3e (<=%.3e), final in [%.3f, ...]",
               hi - lo, 1e-3 * osc0_1d, lo));
  }

  RunResult run2d;
  GraphState state2d = torus_wrap(64, 64, 3.0 * M_PI);
  {
    Timer timer;
    StepperConfig c2 = cfg;
    c2.t_final = 50.0;
    c2.osc_tol = 3.0 * M_PI / 100.0;  // 100x oscillation reduction
    SampleOptions sopt;
    sopt.cadence = 20;
    sopt.level_ks = {0.5, 1.0, 2.0, 3.0};
    RunHooks hooks;
    hooks.on_sample = [&](const GraphState& s, const DiagnosticsRow&) {
      identity_worst(s, nu_defect, metric_defect);
    };
    run2d = run_flow(state2d, c2, sopt, hooks);
    const double el = timer.elapsed();
    double lo = state2d.u[0], hi = state2d.u[0];
    for (double x : state2d.u) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    const bool ok = run2d.reason == StopReason::converged &&
                    (hi - lo) <= 3.0 * M_PI / 100.0 && el < 120.0;
    report("A3", ok,
           fmt("2-d wrap unwound: osc=%.3e (<=%.3e), %.1fs (<120s)", hi - lo,
               3.0 * M_PI / 100.0, el));
  }

  // ---- A4: energy identity on the 1-d run ----
  {
    const EnergyResidual er = energy_identity_residual(run1d.samples);
    const bool ok = er.relative <= 1e-2 && er.bound_ok;
    report("A4", ok,
           fmt("energy identity: rel=%.3e (<=1e-2), accum=%.4f <= 1.02*area0=%.4f",
               er.relative, er.accum, 1.02 * er.area0));
  }

  // ---- A5: rotational flux identity ----
  {
    const FluxResidual f65 = flux_identity_residual(annulus_cos(65, 0.5));
    const FluxResidual f129 = flux_identity_residual(annulus_cos(129, 0.5));
    const double ratio = f65.relative / f129.relative;
    const bool ok = f65.relative <= 2e-2 && ratio >= 3.0 && ratio <= 5.0;
    report("A5", ok,
           fmt("flux identity: rel(n=65)=%.3e (<=2e-2), ratio=%.2f in [3,5]",
               f65.relative, ratio));
  }

  // ---- A6: gradient boundedness across both runs ----
  {
    const bool ok1 = run1d.vtilde_max_run <= 10.0 * run1d.vtilde_max0 &&
                     run1d.reason != StopReason::aborted;
    const bool ok2 = run2d.vtilde_max_run <= 10.0 * run2d.vtilde_max0 &&
                     run2d.reason != StopReason::aborted;
    report("A6", ok1 && ok2,
           fmt("gradient bound: 1-d max=%.1f<=%.1f, 2-d max=%.1f",
               run1d.vtilde_max_run, 10.0 * run1d.vtilde_max0,
               run2d.vtilde_max_run));
  }

  // ---- A7: level-set spacetime inequality on the 1-d run ----
  {
    const LevelSetReport rep =
        level_set_accumulate(*state1d.grid, run1d.samples, 1e-8);
    bool any = false;
    for (bool b : rep.above_threshold) any = any || b;
    report("A7", rep.inequality_holds && any,
           fmt("level sets: ||A(k)|| <= 2*%.4f + 1e-8 for all monitored k",
               rep.tau_top_spacetime));
  }

  // ---- A8: discretisation order by manufactured solutions ----
  {
    Timer timer;
    const StudyReport r1 = convergence_study(
        mms_case_cosine_1d(1.0, 1.0, 2.0), make_interval_profile(1.0, 2.0), 33,
        0, 3, 0.05);
    bool ok = !r1.orders.empty();
    for (double o : r1.orders) ok = ok && o >= 1.8 && o <= 2.2;
    const StudyReport r2 = convergence_study(
        mms_case_radial_2d({0.0, 2.0}, 0.5),
        make_circle_profile({0.0, 2.0}, 0.5), 16, 16, 3, 0.02);
    bool ok2 = !r2.orders.empty();
    for (double o : r2.orders) ok2 = ok2 && o >= 1.7 && o <= 2.3;
    const double el = timer.elapsed();
    report("A8", ok && ok2 && el < 120.0,
           fmt("mms orders: 1-d %.2f/%.2f in [1.8,2.2], 2-d %.2f in [1.7,2.3]",
               r1.orders[0], r1.orders[1], r2.orders.empty() ? 0.0 : r2.orders[0]) +
               fmt(", %.1fs (<120s)", el));
  }

  // ---- A9: equivariance after 100 steps ----
  {
    auto evolve100 = [&](GraphState s) {
      const double dt = cfl_dt(s, cfg);
      for (int i = 0; i < 100; ++i) step_once(s, cfg, dt);
      return s.u;
    };
    double worst = 0.0;
    {
      GraphState base = annulus_cos(129, 2.0 * M_PI);
      GraphState plus = base;
      for (double& x : plus.u) x += 2.0 * M_PI;
      GraphState minus = base;
      for (double& x : minus.u) x = -x;
      const std::vector<double> ub = evolve100(base);
      const std::vector<double> up = evolve100(plus);
      const std::vector<double> um = evolve100(minus);
      for (std::size_t j = 0; j < ub.size(); ++j) {
        worst = std::max(worst, std::abs(up[j] - 2.0 * M_PI - ub[j]));
        worst = std::max(worst, std::abs(-um[j] - ub[j]));
      }
    }
    {
      GraphState base = torus_wrap(32, 32, M_PI);
      GraphState plus = base;
      for (double& x : plus.u) x += 2.0 * M_PI;
      GraphState minus = base;
      for (double& x : minus.u) x = -x;
      const std::vector<double> ub = evolve100(base);
      const std::vector<double> up = evolve100(plus);
      const std::vector<double> um = evolve100(minus);
      for (std::size_t j = 0; j < ub.size(); ++j) {
        worst = std::max(worst, std::abs(up[j] - 2.0 * M_PI - ub[j]));
        worst = std::max(worst, std::abs(-um[j] - ub[j]));
      }
    }
    report("A9", worst <= 1e-12,
           fmt("equivariance after 100 steps: defect=%.3e (<=1e-12)", worst));
  }

  // ---- A10: geometric identities at every sampled state ----
  {
    const bool ok = nu_defect <= 1e-10 && metric_defect <= 1e-12;
    report("A10", ok,
           fmt("identities: |<nu,tau>vt-1|=%.3e (<=1e-10), |g ginv - I|=%.3e "
               "(<=1e-12)",
               nu_defect, metric_defect));
  }

  std::printf("%s (%d failure%s)\n", g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              g_failures, g_failures == 1 ? "" : "s");
  return g_failures == 0 ? 0 : 1;
}
