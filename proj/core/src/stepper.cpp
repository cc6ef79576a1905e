#include "torusflow/stepper.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace torusflow {

double cfl_dt(const GraphState& state, const StepperConfig& cfg) {
  if (!(cfg.sigma > 0.0) || cfg.sigma > 0.5)
    throw std::invalid_argument("sigma out of range (0, 0.5]");
  return cfg.sigma * state.grid->h_min * state.grid->h_min;
}

namespace {

StepStatus abort_status(const GraphState& state, const char* what) {
  StepStatus st;
  st.ok = false;
  std::ostringstream os;
  os << what << " at t=" << state.t;
  st.error = os.str();
  return st;
}

// One rhs evaluation with ghost refresh, forcing and increment filtering.
double stage(GraphState& state, double t_stage, std::vector<double>& rhs,
             const Forcing* forcing) {
  apply_neumann(state);
  const double vt2max = flow_rhs_into(state, rhs);
  if (forcing) (*forcing)(t_stage, rhs);
  return vt2max;
}

}  // namespace

StepStatus step_once(GraphState& state, const StepperConfig& cfg, double dt,
                     const Forcing* forcing) {
  const DomainGrid& g = *state.grid;
  const int n = g.size();
  StepStatus st;

  static thread_local std::vector<double> k1, k2, k3, k4, inc;
  static thread_local std::vector<double> ustage;

  const double vt2max = stage(state, state.t, k1, forcing);
  st.vtilde_max = std::sqrt(vt2max);
  if (!std::isfinite(vt2max)) return abort_status(state, "non-finite value");
  if (st.vtilde_max > cfg.vtilde_cap)
    return abort_status(state, "gradient blow-up");

  if (!cfg.rk4) {
    inc.resize(n);
    for (int i = 0; i < n; ++i) inc[i] = dt * k1[i];
    filter_increment(g, inc);
    for (int i = 0; i < n; ++i) state.u[i] += inc[i];
  } else {
    ustage = state.u;
    GraphState tmp(state.grid);
    tmp.t = state.t;

    auto eval_at = [&](const std::vector<double>& kk, double frac,
                       std::vector<double>& kout) {
      inc.resize(n);
      for (int i = 0; i < n; ++i) inc[i] = frac * dt * kk[i];
      filter_increment(g, inc);
      for (int i = 0; i < n; ++i) tmp.u[i] = ustage[i] + inc[i];
      tmp.t = state.t + frac * dt;
      stage(tmp, tmp.t, kout, forcing);
    };
    eval_at(k1, 0.5, k2);
    eval_at(k2, 0.5, k3);
    eval_at(k3, 1.0, k4);
    inc.resize(n);
    for (int i = 0; i < n; ++i)
      inc[i] = dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    filter_increment(g, inc);
    for (int i = 0; i < n; ++i) state.u[i] += inc[i];
  }

  state.t += dt;
  apply_neumann(state);
  return st;
}

RunResult run_flow(GraphState& state, const StepperConfig& cfg,
                   const SampleOptions& sopt, const RunHooks& hooks,
                   const Forcing* forcing) {
  if (!(cfg.t_final > 0.0)) throw std::invalid_argument("t_final must be > 0");
  if (!(cfg.vtilde_cap > 1.0))
    throw std::invalid_argument("vtilde_cap must be > 1");

  RunResult res;
  res.dt = cfl_dt(state, cfg);

  apply_neumann(state);

  double umin = state.u[0], umax = state.u[0];
  for (double x : state.u) {
    umin = std::min(umin, x);
    umax = std::max(umax, x);
  }
  res.u_min0 = umin;
  res.u_max0 = umax;

  // Compatible smooth data leaves an O(h^2) one-sided residual; anything at
  // the scale of the data itself is genuinely incompatible.
  res.compat_flagged =
      boundary_compatibility_residual(state) > 0.05 * (umax - umin);

  double prev_h2 = 0.0, prev_t = 0.0, accum = 0.0;
  bool have_prev = false;
  auto take_sample = [&](int step) {
    if (!sopt.enabled) return;
    DiagnosticsRow row = sample(state, sopt.level_ks);
    if (have_prev)
      accum += 0.5 * (row.h2_dmu + prev_h2) * (row.t - prev_t);
    row.energy_accum = accum;
    prev_h2 = row.h2_dmu;
    prev_t = row.t;
    have_prev = true;
    if (hooks.on_sample) hooks.on_sample(state, row);
    res.samples.push_back(std::move(row));
    (void)step;
  };

  take_sample(0);
  {
    std::vector<double> tmp;
    res.vtilde_max0 = std::sqrt(flow_rhs_into(state, tmp));
    res.vtilde_max_run = res.vtilde_max0;
  }

  if (umax - umin < cfg.osc_tol) {
    res.reason = StopReason::converged;
    res.t_end = state.t;
    return res;
  }

  const int cadence = std::max(1, sopt.cadence);
  long long step = 0;
  while (state.t < cfg.t_final) {
    const double dt = std::min(res.dt, cfg.t_final - state.t);
    const StepStatus st = step_once(state, cfg, dt, forcing);
    res.vtilde_max_run = std::max(res.vtilde_max_run, st.vtilde_max);
    if (!st.ok) {
      res.reason = StopReason::aborted;
      res.message = st.error;
      res.t_end = state.t;
      res.steps = step;
      take_sample(int(step));
      return res;
    }
    ++step;

    double nmin = state.u[0], nmax = state.u[0];
    bool finite = true;
    for (double x : state.u) {
      if (!std::isfinite(x)) finite = false;
      nmin = std::min(nmin, x);
      nmax = std::max(nmax, x);
    }
    if (!finite) {
      res.reason = StopReason::aborted;
      std::ostringstream os;
      os << "non-finite value at t=" << state.t;
      res.message = os.str();
      res.t_end = state.t;
      res.steps = step;
      return res;
    }
    res.max_violation_up += std::max(0.0, nmax - umax);
    res.max_violation_down += std::max(0.0, umin - nmin);
    umin = nmin;
    umax = nmax;

    if (hooks.on_step) hooks.on_step(state, int(step));
    const bool converged = (umax - umin) < cfg.osc_tol;
    const bool done = converged || state.t >= cfg.t_final;
    if (step % cadence == 0 && !done) take_sample(int(step));
    if (done) {
      take_sample(int(step));
      res.reason = converged ? StopReason::converged : StopReason::t_final;
      res.t_end = state.t;
      res.steps = step;
      return res;
    }
  }
  res.reason = StopReason::t_final;
  res.t_end = state.t;
  res.steps = step;
  return res;
}

}  // namespace torusflow
