#pragma once

#include <functional>
#include <string>
#include <vector>

#include "torusflow/diagnostics.hpp"
#include "torusflow/operators.hpp"
#include "torusflow/state.hpp"

namespace torusflow {

/// Stable explicit step size, sigma * h_min^2. The principal coefficients of
/// the flow are at most one, so the bound is uniform in the state.
double cfl_dt(const GraphState& state, const StepperConfig& cfg);

/// Optional volumetric forcing f(node, t) added to the flow right-hand side
/// (manufactured-solution runs).
using Forcing = std::function<void(double t, std::vector<double>& rhs)>;

struct StepStatus {
  bool ok = true;
  std::string error;      // "gradient blow-up ..." or "non-finite value ..."
  double vtilde_max = 1.0;
};

/// Advances one Euler or RK4 step of size dt. The ghost layer is refreshed
/// before every stage and left current on exit. Unresolvable azimuthal modes
/// of the update are projected out next to the map center (dim 2).
StepStatus step_once(GraphState& state, const StepperConfig& cfg, double dt,
                     const Forcing* forcing = nullptr);

enum class StopReason { converged, t_final, aborted };

struct SampleOptions {
  bool enabled = true;
  int cadence = 10;                 // steps between diagnostic samples
  std::vector<double> level_ks;     // monitored Q level-set thresholds
};

struct RunHooks {
  std::function<void(const GraphState&, const DiagnosticsRow&)> on_sample;
  std::function<void(const GraphState&, int step)> on_step;
};

struct RunResult {
  StopReason reason = StopReason::t_final;
  std::string message;
  double t_end = 0.0;
  long long steps = 0;
  double dt = 0.0;
  double u_min0 = 0.0, u_max0 = 0.0;
  double max_violation_up = 0.0;    // accumulated increase of max u
  double max_violation_down = 0.0;  // accumulated decrease of min u
  double vtilde_max0 = 1.0;
  double vtilde_max_run = 1.0;
  bool compat_flagged = false;      // initial data failed gamma . Du0 = 0
  std::vector<DiagnosticsRow> samples;
};

/// Integrates the flow until t_final, convergence of the oscillation below
/// osc_tol, or abort. Diagnostics rows are collected at the configured
/// cadence (plus the initial and final states) with the running energy
/// accumulator filled in.
RunResult run_flow(GraphState& state, const StepperConfig& cfg,
                   const SampleOptions& sopt = {}, const RunHooks& hooks = {},
                   const Forcing* forcing = nullptr);

}  // namespace torusflow
