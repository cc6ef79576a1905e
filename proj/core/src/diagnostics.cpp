#include "torusflow/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "torusflow/embedding.hpp"

namespace torusflow {

double integrate_dx(const DomainGrid& grid, const std::vector<double>& f) {
  double acc = 0.0;
  for (int i = 0; i < grid.size(); ++i) acc += f[i] * grid.vol[i];
  return acc;
}

double integrate_dmu(const DomainGrid& grid, const std::vector<double>& f,
                     const std::vector<double>& vtilde) {
  double acc = 0.0;
  for (int i = 0; i < grid.size(); ++i) acc += f[i] * vtilde[i] * grid.vol[i];
  return acc;
}

DiagnosticsRow sample(const GraphState& state, const std::vector<double>& ks) {
  const DomainGrid& g = *state.grid;
  const GeomFields f = compute_geometry(state);

  DiagnosticsRow row;
  row.t = state.t;
  row.u_min = state.u[0];
  row.u_max = state.u[0];
  row.level_ks = ks;
  row.level_measures.assign(ks.size(), 0.0);

  for (int i = 0; i < g.size(); ++i) {
    const double w = g.vol[i];
    const double vt = f.vtilde[i];
    row.area += vt * w;
    row.u_min = std::min(row.u_min, state.u[i]);
    row.u_max = std::max(row.u_max, state.u[i]);
    row.vtilde_max = std::max(row.vtilde_max, vt);
    row.q_max = std::max(row.q_max, f.q[i]);
    row.h2v2_max = std::max(row.h2v2_max, f.H[i] * f.H[i] * f.v[i] * f.v[i]);
    row.flux_hr += f.H[i] * g.r[i] * w;
    row.flux_hr_norm += std::abs(f.H[i]) * g.r[i] * w;
    const double dy = g.dim == 1 ? 0.0 : f.du_y[i];
    const double dr = f.du_r[i];
    const double tau2 = g.r[i] * g.r[i] * (dy * dy + dr * dr) / (vt * vt);
    row.tau_top += tau2 * vt * w;
    row.kappa += state.u[i] * state.u[i] * g.r[i] * g.r[i] * vt * w;
    row.h2_dmu += f.H[i] * f.H[i] * vt * w;
    for (std::size_t m = 0; m < ks.size(); ++m)
      if (f.q[i] > ks[m]) row.level_measures[m] += vt * w;
  }
  return row;
}

FluxResidual flux_identity_residual(const GraphState& state) {
  const DomainGrid& g = *state.grid;
  const std::vector<double> H = mean_curvature(state);
  FluxResidual out;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    num += H[i] * g.r[i] * g.vol[i];
    den += std::abs(H[i]) * g.r[i] * g.vol[i];
  }
  out.abs_integral = std::abs(num);
  out.normalizer = den;
  out.relative = den > 0.0 ? out.abs_integral / den : 0.0;
  return out;
}

EnergyResidual energy_identity_residual(const std::vector<DiagnosticsRow>& s) {
  if (s.empty()) throw std::invalid_argument("empty series");
  EnergyResidual out;
  out.area0 = s.front().area;
  out.accum = s.back().energy_accum - s.front().energy_accum;
  const double drop = s.front().area - s.back().area;
  out.residual = std::abs(s.back().area - s.front().area + out.accum);
  out.relative = std::abs(drop) > 0.0 ? out.residual / std::abs(drop) : out.residual;
  out.bound_ok = out.accum <= 1.02 * out.area0;
  return out;
}

double stahl_boundary_residual(const GraphState& state) {
  const DomainGrid& g = *state.grid;
  if (g.dim != 1)
    throw std::logic_error("stahl_boundary_residual is defined for curves only");

  const std::vector<double> H = mean_curvature(state);
  const GradField du = gradient(state);
  const int n = g.n1;
  double worst = 0.0;
  for (int side = 0; side < 2; ++side) {
    const int i = side == 0 ? 0 : n - 1;
    const double gam = g.bnd_gr[side];
    double hr;  // one-sided second-order dH/dr into the domain
    if (side == 0)
      hr = (-3.0 * H[0] + 4.0 * H[1] - H[2]) / (2.0 * g.h);
    else
      hr = (3.0 * H[n - 1] - 4.0 * H[n - 2] + H[n - 3]) / (2.0 * g.h);
    const double vt2 = 1.0 + g.r[i] * g.r[i] * du.du_r[i] * du.du_r[i];
    const double grad_mu_h = gam * hr / vt2;
    // A^Sigma(nu, nu): nu projects onto the rotational direction with
    // weight <nu, tau> = 1/vtilde.
    const Vec3 nu = normal_vector(state, i);
    const Vec3 tau = tau_at(state, i);
    const double c = dot(nu, tau);
    const double asig = c * c * g.bnd_sig_tau[side];
    worst = std::max(worst, std::abs(grad_mu_h + H[i] * asig));
  }
  return worst;
}

LevelSetReport level_set_accumulate(const DomainGrid& grid,
                                    const std::vector<DiagnosticsRow>& series,
                                    double tol) {
  if (series.empty()) throw std::invalid_argument("empty series");
  LevelSetReport rep;
  rep.ks = series.front().level_ks;
  rep.spacetime_measure.assign(rep.ks.size(), 0.0);
  for (std::size_t i = 1; i < series.size(); ++i) {
    const double dt = series[i].t - series[i - 1].t;
    rep.tau_top_spacetime += 0.5 * (series[i].tau_top + series[i - 1].tau_top) * dt;
    for (std::size_t m = 0; m < rep.ks.size(); ++m)
      rep.spacetime_measure[m] +=
          0.5 * (series[i].level_measures[m] + series[i - 1].level_measures[m]) * dt;
  }
  rep.above_threshold.resize(rep.ks.size());
  for (std::size_t m = 0; m < rep.ks.size(); ++m) {
    rep.above_threshold[m] = std::exp(rep.ks[m]) * grid.r_min >= std::sqrt(2.0);
    if (rep.above_threshold[m] &&
        rep.spacetime_measure[m] > 2.0 * rep.tau_top_spacetime + tol)
      rep.inequality_holds = false;
  }
  return rep;
}

}  // namespace torusflow
