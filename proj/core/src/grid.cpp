#include "torusflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace torusflow {

GridPtr build_grid_1d(const ProfileCurve& profile, int n) {
  if (profile.kind != ProfileKind::interval)
    throw std::invalid_argument("1-d grid requires an interval profile");
  if (n < 3) throw std::invalid_argument("resolution must be >= 3");

  auto g = std::make_shared<DomainGrid>();
  g->dim = 1;
  g->profile = profile;
  g->n1 = n;
  g->h = (profile.r1 - profile.r0) / double(n - 1);
  g->r1d.resize(n);
  g->r.resize(n);
  g->vol.assign(n, g->h);
  for (int j = 0; j < n; ++j) {
    g->r1d[j] = profile.r0 + g->h * double(j);
    g->r[j] = g->r1d[j];
  }
  g->vol.front() = g->vol.back() = 0.5 * g->h;

  g->bnd_r = {profile.r0, profile.r1};
  g->bnd_gr = {-1.0, +1.0};
  g->bnd_gy = {0.0, 0.0};
  g->bnd_y = {0.0, 0.0};
  // A^Sigma(r tau, r tau) = -r <mu, rhat>
  g->bnd_sig_rtau = {profile.r0, -profile.r1};
  g->bnd_sig_tau = {1.0 / profile.r0, -1.0 / profile.r1};

  g->h_min = g->h;
  g->r_min = profile.r0;
  return g;
}

GridPtr build_grid(const ProfileCurve& profile, int ns, int nphi) {
  if (profile.kind == ProfileKind::interval)
    throw std::invalid_argument("2-d grid requires a circle or star profile");
  if (ns < 8 || nphi < 8) throw std::invalid_argument("resolution must be >= 8");
  if (nphi % 2 != 0) throw std::invalid_argument("nphi must be even");

  auto g = std::make_shared<DomainGrid>();
  g->dim = 2;
  g->profile = profile;
  g->ns = ns;
  g->nphi = nphi;
  g->ds = 1.0 / double(ns);
  g->dphi = 2.0 * M_PI / double(nphi);
  g->inv_d1 = 1.0 / (2.0 * std::sin(g->dphi));
  g->inv_d2 = 1.0 / (2.0 * (1.0 - std::cos(g->dphi)));

  const int nn = ns * nphi;
  g->xy.resize(nn);
  g->xr.resize(nn);
  g->r.resize(nn);
  g->vol.resize(nn);
  g->as1.resize(nn);
  g->as2.resize(nn);
  g->ap1.resize(nn);
  g->ap2.resize(nn);
  g->gssp.resize(nn);
  g->gspp.resize(nn);
  g->gpsp.resize(nn);
  g->gppp.resize(nn);

  const Vec2 c = profile.center;
  for (int j = 0; j < ns; ++j) {
    const double s = (double(j) + 0.5) * g->ds;
    for (int k = 0; k < nphi; ++k) {
      const double phi = double(k) * g->dphi;
      const double rho = profile.rho(phi);
      const double dr = profile.drho(phi);
      const double ddr = profile.ddrho(phi);
      const double cs = std::cos(phi), sn = std::sin(phi);
      const int i = g->idx(j, k);

      g->xy[i] = c.y + s * rho * cs;
      g->xr[i] = c.r + s * rho * sn;
      g->r[i] = g->xr[i];
      if (!(g->r[i] > 0.0)) {
        std::ostringstream os;
        os << "node radius <= 0 at phi=" << phi;
        throw std::invalid_argument(os.str());
      }

      // Jacobian of the map has det = s rho^2; reject folds explicitly.
      const double det = s * rho * rho;
      if (!(det > 0.0)) {
        std::ostringstream os;
        os << "grid folding: jacobian <= 0 at phi=" << phi;
        throw std::invalid_argument(os.str());
      }
      g->vol[i] = det * g->ds * g->dphi;

      g->as1[i] = (dr * sn + rho * cs) / (rho * rho);
      g->as2[i] = (rho * sn - dr * cs) / (rho * rho);
      g->ap1[i] = -sn / (s * rho);
      g->ap2[i] = cs / (s * rho);

      // Map Hessian (x_ss vanishes): x_sphi, x_phiphi in (y, r) components.
      const double hs1 = dr * cs - rho * sn;
      const double hs2 = dr * sn + rho * cs;
      const double hp1 = s * ((ddr - rho) * cs - 2.0 * dr * sn);
      const double hp2 = s * ((ddr - rho) * sn + 2.0 * dr * cs);
      g->gssp[i] = g->as1[i] * hs1 + g->as2[i] * hs2;
      g->gspp[i] = g->as1[i] * hp1 + g->as2[i] * hp2;
      g->gpsp[i] = g->ap1[i] * hs1 + g->ap2[i] * hs2;
      g->gppp[i] = g->ap1[i] * hp1 + g->ap2[i] * hp2;
    }
  }

  // Boundary cache at s = 1.
  g->bnd_y.resize(nphi);
  g->bnd_r.resize(nphi);
  g->bnd_gy.resize(nphi);
  g->bnd_gr.resize(nphi);
  g->bnd_cs.resize(nphi);
  g->bnd_cp.resize(nphi);
  g->bnd_sig_rtau.resize(nphi);
  g->bnd_sig_tau.resize(nphi);
  for (int k = 0; k < nphi; ++k) {
    const double phi = double(k) * g->dphi;
    const Vec2 x = profile_point(profile, phi);
    const Vec2 nu = profile_normal(profile, phi);
    const SigmaEigenvalue sig = sigma_rotational_eigenvalue(profile, phi);
    g->bnd_y[k] = x.y;
    g->bnd_r[k] = x.r;
    g->bnd_gy[k] = nu.y;
    g->bnd_gr[k] = nu.r;
    g->bnd_sig_rtau[k] = sig.rtau_rtau;
    g->bnd_sig_tau[k] = sig.tau_tau;

    const double rho = profile.rho(phi);
    const double dr = profile.drho(phi);
    const double cs = std::cos(phi), sn = std::sin(phi);
    const double a_s1 = (dr * sn + rho * cs) / (rho * rho);
    const double a_s2 = (rho * sn - dr * cs) / (rho * rho);
    const double a_p1 = -sn / rho;
    const double a_p2 = cs / rho;
    g->bnd_cs[k] = a_s1 * nu.y + a_s2 * nu.r;
    g->bnd_cp[k] = a_p1 * nu.y + a_p2 * nu.r;
  }

  // Azimuthal cutoffs and killed-mode bases next to the map center.
  g->mmax.resize(ns);
  g->killed_basis.resize(ns);
  for (int j = 0; j < ns; ++j) {
    g->mmax[j] = std::min(2 * j + 1, nphi / 2);
    if (g->mmax[j] >= nphi / 2) continue;
    std::vector<double> basis;
    for (int m = g->mmax[j] + 1; m <= nphi / 2; ++m) {
      const bool nyquist = (m == nphi / 2);
      const double amp = nyquist ? std::sqrt(1.0 / double(nphi))
                                 : std::sqrt(2.0 / double(nphi));
      for (int k = 0; k < nphi; ++k)
        basis.push_back(amp * std::cos(double(m) * double(k) * g->dphi));
      if (!nyquist)
        for (int k = 0; k < nphi; ++k)
          basis.push_back(amp * std::sin(double(m) * double(k) * g->dphi));
    }
    g->killed_basis[j] = std::move(basis);
  }

  // h_min: radial legs (including the pole-crossing one) and per-ring
  // azimuthal node spacing widened to the resolvable cutoff wavelength.
  double hmin = std::numeric_limits<double>::max();
  for (int k = 0; k < nphi; ++k) {
    const double phi = double(k) * g->dphi;
    hmin = std::min(hmin, profile.rho(phi) * g->ds);
  }
  for (int j = 0; j < ns; ++j) {
    const double cap = double(nphi / 2) / double(g->mmax[j]);
    for (int k = 0; k < nphi; ++k) {
      const int i = g->idx(j, k), in = g->idx(j, g->wrap(k + 1));
      const double dx = g->xy[in] - g->xy[i], drr = g->xr[in] - g->xr[i];
      const double chord = std::sqrt(dx * dx + drr * drr);
      hmin = std::min(hmin, chord * std::max(1.0, cap));
    }
  }
  g->h_min = hmin;
  g->r_min = *std::min_element(g->r.begin(), g->r.end());
  return g;
}

}  // namespace torusflow
