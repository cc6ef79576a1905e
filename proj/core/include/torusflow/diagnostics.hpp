#pragma once

#include <vector>

#include "torusflow/operators.hpp"
#include "torusflow/state.hpp"

namespace torusflow {

/// One time sample of every monitored integral and extremum. Integrals use
/// the midpoint rule with exact mapped cell volumes; measure-weighted
/// integrals carry the extra factor vtilde (the area element of the graph).
struct DiagnosticsRow {
  double t = 0.0;
  double area = 0.0;          // integral of vtilde dx = |M_t|
  double u_min = 0.0, u_max = 0.0;
  double vtilde_max = 1.0;
  double q_max = 0.0;         // max log(vtilde / r)
  double h2v2_max = 0.0;      // max H^2 v^2
  double flux_hr = 0.0;       // integral of H r dx (signed)
  double flux_hr_norm = 0.0;  // integral of |H| r dx
  double tau_top = 0.0;       // integral of |tau^T|^2 dmu = r^2|Du|^2/vt dx
  double kappa = 0.0;         // integral of u^2 r^2 dmu
  double h2_dmu = 0.0;        // integral of H^2 dmu
  double energy_accum = 0.0;  // running time-trapezoid of h2_dmu
  std::vector<double> level_ks;
  std::vector<double> level_measures;  // dmu-measure of {Q > k}
};

double integrate_dx(const DomainGrid& grid, const std::vector<double>& f);
double integrate_dmu(const DomainGrid& grid, const std::vector<double>& f,
                     const std::vector<double>& vtilde);

/// Full diagnostics sample of a state (energy_accum left at zero; the run
/// loop owns the accumulation).
DiagnosticsRow sample(const GraphState& state,
                      const std::vector<double>& level_ks = {});

struct FluxResidual {
  double abs_integral = 0.0;  // |integral of H r dx|
  double normalizer = 0.0;    // integral of |H| r dx
  double relative = 0.0;
};

/// Rotational flux identity: the integral of H r over the cross-section
/// vanishes for any state satisfying the contact condition; the residual
/// decays at second order.
FluxResidual flux_identity_residual(const GraphState& state);

struct EnergyResidual {
  double residual = 0.0;   // |area(end) - area(0) + accumulated energy|
  double relative = 0.0;   // residual / |area drop|
  double accum = 0.0;
  double area0 = 0.0;
  bool bound_ok = false;   // accum <= 1.02 area(0)
};

EnergyResidual energy_identity_residual(const std::vector<DiagnosticsRow>& series);

/// Boundary derivative relation grad_mu H + H A^Sigma(nu, nu) = 0 evaluated
/// at the two endpoints (curves only); returns the worst absolute residual.
double stahl_boundary_residual(const GraphState& state);

struct LevelSetReport {
  std::vector<double> ks;
  std::vector<double> spacetime_measure;   // time-trapezoid of each level measure
  std::vector<bool> above_threshold;       // e^k r_min >= sqrt(2)
  double tau_top_spacetime = 0.0;          // time-trapezoid of tau_top
  bool inequality_holds = true;            // ||A(k)|| <= 2 tau_top_spacetime + tol
};

LevelSetReport level_set_accumulate(const DomainGrid& grid,
                                    const std::vector<DiagnosticsRow>& series,
                                    double tol = 1e-8);

}  // namespace torusflow
