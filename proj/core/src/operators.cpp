#include "torusflow/operators.hpp"

#include <atomic>
#include <limits>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace torusflow {

namespace {

std::atomic<int> g_threads{0};

int env_threads() {
  if (const char* e = std::getenv("TORUSFLOW_THREADS")) {
    const int v = std::atoi(e);
    if (v >= 1) return v;
  }
  return 1;
}

struct NodeOut {
  double du1, du2, vt2, g11, g12, g22, rhs;
};

// 1-d kernel: u_t = u''/vt^2 + (u'/r)(1 + 1/vt^2).
inline NodeOut eval1(double r, double ul, double uc, double ur_, double h) {
  NodeOut o{};
  const double du = (ur_ - ul) / (2.0 * h);
  const double ddu = (ur_ - 2.0 * uc + ul) / (h * h);
  o.du1 = 0.0;
  o.du2 = du;
  o.vt2 = 1.0 + r * r * du * du;
  o.g11 = 1.0 / o.vt2;
  o.g12 = 0.0;
  o.g22 = 0.0;
  o.rhs = ddu / o.vt2 + (du / r) * (1.0 + 1.0 / o.vt2);
  return o;
}

// 2-d kernel in mapped coordinates; mapping data per node, stencil values
// gathered by the caller. Second derivatives are chain-ruled through the
// map including its curvature terms.
inline NodeOut eval2(const DomainGrid& g, int i, double uc, double ue, double uw,
                     double un, double uso, double une, double unw, double usee,
                     double usw) {
  NodeOut o{};
  const double ds = g.ds;
  const double us = (un - uso) / (2.0 * ds);
  const double uss = (un - 2.0 * uc + uso) / (ds * ds);
  const double up = (ue - uw) * g.inv_d1;
  const double upp = (ue - 2.0 * uc + uw) * g.inv_d2;
  const double usp = ((une - unw) - (usee - usw)) * g.inv_d1 / (2.0 * ds);

  const double a1 = g.as1[i], a2 = g.as2[i], b1 = g.ap1[i], b2 = g.ap2[i];
  o.du1 = a1 * us + b1 * up;
  o.du2 = a2 * us + b2 * up;

  const double mss = uss;
  const double msp = usp - g.gssp[i] * us - g.gpsp[i] * up;
  const double mpp = upp - g.gspp[i] * us - g.gppp[i] * up;
  const double p11 = a1 * a1 * mss + 2.0 * a1 * b1 * msp + b1 * b1 * mpp;
  const double p12 = a1 * a2 * mss + (a1 * b2 + a2 * b1) * msp + b1 * b2 * mpp;
  const double p22 = a2 * a2 * mss + 2.0 * a2 * b2 * msp + b2 * b2 * mpp;

  const double r = g.r[i];
  const double r2 = r * r;
  o.vt2 = 1.0 + r2 * (o.du1 * o.du1 + o.du2 * o.du2);
  o.g11 = 1.0 - r2 * o.du1 * o.du1 / o.vt2;
  o.g12 = -r2 * o.du1 * o.du2 / o.vt2;
  o.g22 = 1.0 - r2 * o.du2 * o.du2 / o.vt2;
  const double lap = o.g11 * p11 + 2.0 * o.g12 * p12 + o.g22 * p22;
  o.rhs = lap + (o.du2 / r) * (1.0 + 1.0 / o.vt2);
  return o;
}

// Gathers the nine stencil values at (j, k) honoring the periodic, pole and
// ghost closures.
inline void gather2(const DomainGrid& g, const std::vector<double>& u,
                    const std::vector<double>& ghost, int j, int k, double& uc,
                    double& ue, double& uw, double& un, double& uso, double& une,
                    double& unw, double& usee, double& usw) {
  const int ke = g.wrap(k + 1), kw = g.wrap(k - 1);
  uc = u[g.idx(j, k)];
  ue = u[g.idx(j, ke)];
  uw = u[g.idx(j, kw)];
  if (j + 1 < g.ns) {
    un = u[g.idx(j + 1, k)];
    une = u[g.idx(j + 1, ke)];
    unw = u[g.idx(j + 1, kw)];
  } else {
    un = ghost[k];
    une = ghost[ke];
    unw = ghost[kw];
  }
  if (j > 0) {
    uso = u[g.idx(j - 1, k)];
    usee = u[g.idx(j - 1, ke)];
    usw = u[g.idx(j - 1, kw)];
  } else {
    uso = u[g.antipode(k)];
    usee = u[g.antipode(ke)];
    usw = u[g.antipode(kw)];
  }
}

// Tangential derivative along a node row, used by the Neumann solve.
inline double row_uphi(const DomainGrid& g, const std::vector<double>& u, int j,
                       int k) {
  return (u[g.idx(j, g.wrap(k + 1))] - u[g.idx(j, g.wrap(k - 1))]) * g.inv_d1;
}

}  // namespace

void set_num_threads(int n) { g_threads.store(n > 0 ? n : 1); }

int num_threads() {
  int v = g_threads.load();
  if (v == 0) {
    v = env_threads();
    g_threads.store(v);
  }
  return v;
}

void apply_neumann(GraphState& state) {
  const DomainGrid& g = *state.grid;
  if (g.dim == 1) {
    state.ghost[0] = state.u[1];
    state.ghost[1] = state.u[g.n1 - 2];
    return;
  }
  const int last = g.ns - 1;
  for (int k = 0; k < g.nphi; ++k) {
    // Solve c_s (ghost - u_last)/ds + c_phi u_phi|_{s=1} = 0 with the
    // tangential derivative extrapolated from the two interior rows.
    const double up1 = row_uphi(g, state.u, last, k);
    const double up2 = row_uphi(g, state.u, last - 1, k);
    const double up_b = 1.5 * up1 - 0.5 * up2;
    state.ghost[k] =
        state.u[g.idx(last, k)] - g.ds * (g.bnd_cp[k] / g.bnd_cs[k]) * up_b;
  }
}

double neumann_residual(const GraphState& state) {
  const DomainGrid& g = *state.grid;
  if (g.dim == 1) {
    const double rl = (state.u[1] - state.ghost[0]) / (2.0 * g.h);
    const double rr = (state.ghost[1] - state.u[g.n1 - 2]) / (2.0 * g.h);
    return std::max(std::abs(rl), std::abs(rr));
  }
  const int last = g.ns - 1;
  double worst = 0.0;
  for (int k = 0; k < g.nphi; ++k) {
    const double up_b = 1.5 * row_uphi(g, state.u, last, k) -
                        0.5 * row_uphi(g, state.u, last - 1, k);
    const double res = g.bnd_cs[k] * (state.ghost[k] - state.u[g.idx(last, k)]) / g.ds +
                       g.bnd_cp[k] * up_b;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

double boundary_compatibility_residual(const GraphState& state) {
  const DomainGrid& g = *state.grid;
  const std::vector<double>& u = state.u;
  if (g.dim == 1) {
    const int n = g.n1;
    const double dl = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * g.h);
    const double drr = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * g.h);
    return std::max(std::abs(dl), std::abs(drr));
  }
  const int last = g.ns - 1;
  double worst = 0.0;
  for (int k = 0; k < g.nphi; ++k) {
    const double us_b = (2.0 * u[g.idx(last, k)] - 3.0 * u[g.idx(last - 1, k)] +
                         u[g.idx(last - 2, k)]) / g.ds;
    const double up_b = 1.5 * row_uphi(g, u, last, k) -
                        0.5 * row_uphi(g, u, last - 1, k);
    worst = std::max(worst, std::abs(g.bnd_cs[k] * us_b + g.bnd_cp[k] * up_b));
  }
  return worst;
}

GradField gradient(const GraphState& state) {
  const DomainGrid& g = *state.grid;
  GradField out;
  out.du_r.resize(g.size());
  if (g.dim == 1) {
    for (int j = 0; j < g.n1; ++j) {
      const double ul = j > 0 ? state.u[j - 1] : state.ghost[0];
      const double ur_ = j < g.n1 - 1 ? state.u[j + 1] : state.ghost[1];
      out.du_r[j] = (ur_ - ul) / (2.0 * g.h);
    }
    return out;
  }
  out.du_y.resize(g.size());
  for (int j = 0; j < g.ns; ++j)
    for (int k = 0; k < g.nphi; ++k) {
      double uc, ue, uw, un, uso, une, unw, usee, usw;
      gather2(g, state.u, state.ghost, j, k, uc, ue, uw, un, uso, une, unw, usee,
              usw);
      const int i = g.idx(j, k);
      const double us = (un - uso) / (2.0 * g.ds);
      const double up = (ue - uw) * g.inv_d1;
      out.du_y[i] = g.as1[i] * us + g.ap1[i] * up;
      out.du_r[i] = g.as2[i] * us + g.ap2[i] * up;
    }
  return out;
}

VtildeField vtilde_field(const DomainGrid& grid, const GradField& du) {
  VtildeField out;
  const int n = grid.size();
  out.vtilde.resize(n);
  out.v.resize(n);
  out.q.resize(n);
  out.w.resize(n);
  for (int i = 0; i < n; ++i) {
    const double dy = grid.dim == 1 ? 0.0 : du.du_y[i];
    const double dr = du.du_r[i];
    const double r = grid.r[i];
    const double vt = std::sqrt(1.0 + r * r * (dy * dy + dr * dr));
    out.vtilde[i] = vt;
    out.v[i] = vt / r;
    out.q[i] = std::log(vt / r);
    out.w[i] = r / vt;
  }
  return out;
}

InverseMetric inverse_metric(const DomainGrid& grid, const GradField& du) {
  InverseMetric out;
  const int n = grid.size();
  out.g11.resize(n);
  if (grid.dim == 1) {
    for (int i = 0; i < n; ++i) {
      const double d = du.du_r[i];
      out.g11[i] = 1.0 / (1.0 + grid.r[i] * grid.r[i] * d * d);
    }
    return out;
  }
  out.g12.resize(n);
  out.g22.resize(n);
  // extended precision keeps the product with the forward metric at unit
  // roundoff even for steep states
  for (int i = 0; i < n; ++i) {
    const long double r2 = (long double)grid.r[i] * grid.r[i];
    const long double dy = du.du_y[i], dr = du.du_r[i];
    const long double vt2 = 1.0L + r2 * (dy * dy + dr * dr);
    out.g11[i] = double(1.0L - r2 * dy * dy / vt2);
    out.g12[i] = double(-r2 * dy * dr / vt2);
    out.g22[i] = double(1.0L - r2 * dr * dr / vt2);
  }
  return out;
}

double flow_rhs_into(const GraphState& state, std::vector<double>& out) {
  const DomainGrid& g = *state.grid;
  out.resize(g.size());
  if (g.dim == 1) {
    double vt2max = 1.0;
    double acc = 0.0;
    for (int j = 0; j < g.n1; ++j) {
      const double ul = j > 0 ? state.u[j - 1] : state.ghost[0];
      const double ur_ = j < g.n1 - 1 ? state.u[j + 1] : state.ghost[1];
      const NodeOut o = eval1(g.r[j], ul, state.u[j], ur_, g.h);
      out[j] = o.rhs;
      vt2max = std::max(vt2max, o.vt2);
      acc += o.rhs;
    }
    return std::isfinite(acc) ? vt2max
                              : std::numeric_limits<double>::quiet_NaN();
  }

  auto run_rows = [&](int j0, int j1) {
    double vt2max = 1.0;
    double acc = 0.0;  // poisons on any non-finite node
    for (int j = j0; j < j1; ++j)
      for (int k = 0; k < g.nphi; ++k) {
        double uc, ue, uw, un, uso, une, unw, usee, usw;
        gather2(g, state.u, state.ghost, j, k, uc, ue, uw, un, uso, une, unw,
                usee, usw);
        const NodeOut o = eval2(g, g.idx(j, k), uc, ue, uw, un, uso, une, unw,
                                usee, usw);
        out[g.idx(j, k)] = o.rhs;
        vt2max = std::max(vt2max, o.vt2);
        acc += o.rhs;
      }
    return std::isfinite(acc) ? vt2max
                              : std::numeric_limits<double>::quiet_NaN();
  };

  const int nt = std::min(num_threads(), g.ns);
  if (nt <= 1) return run_rows(0, g.ns);

  std::vector<double> maxes(nt, 1.0);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int tix = 0; tix < nt; ++tix) {
    const int j0 = g.ns * tix / nt, j1 = g.ns * (tix + 1) / nt;
    pool.emplace_back([&, tix, j0, j1] { maxes[tix] = run_rows(j0, j1); });
  }
  double vt2max = 1.0;
  for (int tix = 0; tix < nt; ++tix) {
    pool[tix].join();
    vt2max = std::max(vt2max, maxes[tix]);
  }
  return vt2max;
}

std::vector<double> flow_rhs(const GraphState& state) {
  std::vector<double> out;
  flow_rhs_into(state, out);
  return out;
}

std::vector<double> mean_curvature(const GraphState& state) {
  const DomainGrid& g = *state.grid;
  std::vector<double> rhs;
  flow_rhs_into(state, rhs);
  const GradField du = gradient(state);
  std::vector<double> H(g.size());
  for (int i = 0; i < g.size(); ++i) {
    const double dy = g.dim == 1 ? 0.0 : du.du_y[i];
    const double dr = du.du_r[i];
    const double r = g.r[i];
    const double vt = std::sqrt(1.0 + r * r * (dy * dy + dr * dr));
    H[i] = -(r / vt) * rhs[i];
  }
  return H;
}

GeomFields compute_geometry(const GraphState& state) {
  const DomainGrid& g = *state.grid;
  GeomFields f;
  f.dim = g.dim;
  const int n = g.size();
  f.du_r.resize(n);
  f.vtilde.resize(n);
  f.v.resize(n);
  f.q.resize(n);
  f.w.resize(n);
  f.g11.resize(n);
  f.rhs.resize(n);
  f.H.resize(n);
  if (g.dim == 2) {
    f.du_y.resize(n);
    f.g12.resize(n);
    f.g22.resize(n);
  }

  auto store = [&](int i, const NodeOut& o) {
    f.du_r[i] = o.du2;
    if (g.dim == 2) f.du_y[i] = o.du1;
    const double vt = std::sqrt(o.vt2);
    f.vtilde[i] = vt;
    f.v[i] = vt / g.r[i];
    f.q[i] = std::log(vt / g.r[i]);
    f.w[i] = g.r[i] / vt;
    const long double r2 = (long double)g.r[i] * g.r[i];
    const long double dy = o.du1, dr = o.du2;
    const long double vt2l = 1.0L + r2 * (dy * dy + dr * dr);
    if (g.dim == 1) {
      f.g11[i] = double(1.0L / vt2l);
    } else {
      f.g11[i] = double(1.0L - r2 * dy * dy / vt2l);
      f.g12[i] = double(-r2 * dy * dr / vt2l);
      f.g22[i] = double(1.0L - r2 * dr * dr / vt2l);
    }
    f.rhs[i] = o.rhs;
    f.H[i] = -(g.r[i] / vt) * o.rhs;
  };

  if (g.dim == 1) {
    for (int j = 0; j < g.n1; ++j) {
      const double ul = j > 0 ? state.u[j - 1] : state.ghost[0];
      const double ur_ = j < g.n1 - 1 ? state.u[j + 1] : state.ghost[1];
      store(j, eval1(g.r[j], ul, state.u[j], ur_, g.h));
    }
    return f;
  }
  for (int j = 0; j < g.ns; ++j)
    for (int k = 0; k < g.nphi; ++k) {
      double uc, ue, uw, un, uso, une, unw, usee, usw;
      gather2(g, state.u, state.ghost, j, k, uc, ue, uw, un, uso, une, unw, usee,
              usw);
      store(g.idx(j, k), eval2(g, g.idx(j, k), uc, ue, uw, un, uso, une, unw,
                               usee, usw));
    }
  return f;
}

void filter_increment(const DomainGrid& grid, std::vector<double>& inc) {
  if (grid.dim == 1) return;
  const int nphi = grid.nphi;
  std::vector<double> coef;
  for (int j = 0; j < grid.ns; ++j) {
    const std::vector<double>& basis = grid.killed_basis[j];
    if (basis.empty()) continue;
    const int rows = int(basis.size()) / nphi;
    coef.assign(rows, 0.0);
    double* row = &inc[grid.idx(j, 0)];
    for (int m = 0; m < rows; ++m) {
      const double* b = &basis[m * nphi];
      double acc = 0.0;
      for (int k = 0; k < nphi; ++k) acc += b[k] * row[k];
      coef[m] = acc;
    }
    for (int m = 0; m < rows; ++m) {
      const double* b = &basis[m * nphi];
      for (int k = 0; k < nphi; ++k) row[k] -= coef[m] * b[k];
    }
  }
}

}  // namespace torusflow
