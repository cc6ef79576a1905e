#include "torusflow/mms.hpp"

#include <cmath>
#include <stdexcept>

#include "torusflow/state.hpp"
#include "torusflow/stepper.hpp"

namespace torusflow {

double oracle_operator(const ManufacturedCase& mc, double y, double r, double t) {
  const PointDerivs d = mc.eval(y, r, t);
  if (mc.dim == 1) {
    const double vt2 = 1.0 + r * r * d.du_r * d.du_r;
    return d.d2_rr / vt2 + (d.du_r / r) * (1.0 + 1.0 / vt2);
  }
  const double r2 = r * r;
  const double vt2 = 1.0 + r2 * (d.du_y * d.du_y + d.du_r * d.du_r);
  const double g11 = 1.0 - r2 * d.du_y * d.du_y / vt2;
  const double g12 = -r2 * d.du_y * d.du_r / vt2;
  const double g22 = 1.0 - r2 * d.du_r * d.du_r / vt2;
  return g11 * d.d2_yy + 2.0 * g12 * d.d2_yr + g22 * d.d2_rr +
         (d.du_r / r) * (1.0 + 1.0 / vt2);
}

double oracle_forcing(const ManufacturedCase& mc, double y, double r, double t) {
  return mc.eval(y, r, t).ut - oracle_operator(mc, y, r, t);
}

ManufacturedCase mms_case_constant(int dim, double c) {
  ManufacturedCase mc;
  mc.description = "constant";
  mc.dim = dim;
  mc.eval = [c](double, double, double) {
    PointDerivs d;
    d.u = c;
    return d;
  };
  return mc;
}

ManufacturedCase mms_case_cosine_1d(double amplitude, double r0, double r1) {
  ManufacturedCase mc;
  mc.description = "1d cosine";
  mc.dim = 1;
  const double k = M_PI / (r1 - r0);
  mc.eval = [amplitude, r0, k](double, double r, double) {
    PointDerivs d;
    const double x = k * (r - r0);
    d.u = amplitude * std::cos(x);
    d.du_r = -amplitude * k * std::sin(x);
    d.d2_rr = -amplitude * k * k * std::cos(x);
    return d;
  };
  return mc;
}

ManufacturedCase mms_case_radial_2d(Vec2 center, double a, double amplitude) {
  ManufacturedCase mc;
  mc.description = "2d radial cosine";
  mc.dim = 2;
  mc.eval = [center, a, amplitude](double y, double r, double) {
    PointDerivs d;
    const double px = y - center.y, pr = r - center.r;
    const double dist = std::sqrt(px * px + pr * pr);
    const double k = M_PI / a;
    // radial profile f(dist) = A cos(k dist), smooth across the map center
    const double f1 = -amplitude * k * std::sin(k * dist);
    const double f2 = -amplitude * k * k * std::cos(k * dist);
    d.u = amplitude * std::cos(k * dist);
    const double e1 = px / dist, e2 = pr / dist;
    d.du_y = f1 * e1;
    d.du_r = f1 * e2;
    const double fd = f1 / dist;
    d.d2_yy = f2 * e1 * e1 + fd * (1.0 - e1 * e1);
    d.d2_yr = (f2 - fd) * e1 * e2;
    d.d2_rr = f2 * e2 * e2 + fd * (1.0 - e2 * e2);
    return d;
  };
  return mc;
}

ManufacturedCase mms_case_tilt_2d(Vec2 center, double a) {
  ManufacturedCase mc;
  mc.description = "2d tilted (azimuthal mode one)";
  mc.dim = 2;
  const double c3 = 1.0 / (3.0 * a * a);
  mc.eval = [center, c3](double y, double r, double) {
    PointDerivs d;
    const double px = y - center.y, pr = r - center.r;
    const double d2 = px * px + pr * pr;
    d.u = px * (1.0 - d2 * c3);
    d.du_y = 1.0 - (3.0 * px * px + pr * pr) * c3;
    d.du_r = -2.0 * px * pr * c3;
    d.d2_yy = -6.0 * px * c3;
    d.d2_yr = -2.0 * pr * c3;
    d.d2_rr = -2.0 * px * c3;
    return d;
  };
  return mc;
}

ManufacturedCase mms_case_parabola_2d() {
  ManufacturedCase mc;
  mc.description = "2d parabola y^2";
  mc.dim = 2;
  mc.eval = [](double y, double, double) {
    PointDerivs d;
    d.u = y * y;
    d.du_y = 2.0 * y;
    d.d2_yy = 2.0;
    return d;
  };
  return mc;
}

StudyReport convergence_study(const ManufacturedCase& mc,
                              const ProfileCurve& profile, int base_ns,
                              int base_nphi, int levels, double T,
                              double sigma) {
  if (levels < 3) throw std::invalid_argument("levels >= 3");
  StudyReport rep;

  int n1 = base_ns, ns = base_ns, nphi = base_nphi;
  for (int lev = 0; lev < levels; ++lev) {
    GridPtr grid = mc.dim == 1 ? build_grid_1d(profile, n1)
                               : build_grid(profile, ns, nphi);
    GraphState state(grid);
    for (int i = 0; i < grid->size(); ++i) {
      const double y = mc.dim == 1 ? 0.0 : grid->xy[i];
      state.u[i] = mc.eval(y, grid->r[i], 0.0).u;
    }

    std::vector<double> f0(grid->size());
    if (mc.steady)
      for (int i = 0; i < grid->size(); ++i)
        f0[i] = oracle_forcing(mc, mc.dim == 1 ? 0.0 : grid->xy[i], grid->r[i]);
    Forcing forcing = [&](double t, std::vector<double>& rhs) {
      if (mc.steady) {
        for (int i = 0; i < grid->size(); ++i) rhs[i] += f0[i];
      } else {
        for (int i = 0; i < grid->size(); ++i)
          rhs[i] += oracle_forcing(mc, mc.dim == 1 ? 0.0 : grid->xy[i],
                                   grid->r[i], t);
      }
    };

    StepperConfig cfg;
    cfg.sigma = sigma;
    cfg.t_final = T;
    const double dt = cfl_dt(state, cfg);
    apply_neumann(state);
    while (state.t < T - 1e-14) {
      const double step = std::min(dt, T - state.t);
      const StepStatus st = step_once(state, cfg, step, &forcing);
      if (!st.ok) throw std::runtime_error("forced run aborted: " + st.error);
    }

    StudyLevel out;
    out.n1 = mc.dim == 1 ? n1 : 0;
    out.ns = mc.dim == 2 ? ns : 0;
    out.nphi = mc.dim == 2 ? nphi : 0;
    out.h = mc.dim == 1 ? grid->h : grid->ds;
    double err = 0.0;
    for (int i = 0; i < grid->size(); ++i) {
      const double y = mc.dim == 1 ? 0.0 : grid->xy[i];
      err = std::max(err, std::abs(state.u[i] - mc.eval(y, grid->r[i], T).u));
    }
    out.linf = err;
    rep.levels.push_back(out);

    n1 = 2 * n1 - 1;  // halves h on the node-centered interval grid
    ns *= 2;
    nphi *= 2;
  }

  rep.exact = true;
  for (const StudyLevel& l : rep.levels)
    if (l.linf != 0.0) rep.exact = false;
  if (!rep.exact)
    for (std::size_t i = 0; i + 1 < rep.levels.size(); ++i)
      rep.orders.push_back(
          std::log2(rep.levels[i].linf / rep.levels[i + 1].linf));
  return rep;
}

}  // namespace torusflow
