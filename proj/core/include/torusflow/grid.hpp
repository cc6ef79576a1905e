#pragma once

#include <memory>
#include <vector>

#include "torusflow/geometry.hpp"

namespace torusflow {

/// Discretised cross-section domain with curvilinear mapping data.
///
/// dim == 1: nodes r_j = r0 + j h including both endpoints; the boundary is
/// the node pair {r0, r1} with outward normals -1 / +1.
///
/// dim == 2: cell-centered polar map about the profile center,
///   x(s, phi) = c + s rho(phi) (cos phi, sin phi),
///   s_j = (j + 1/2) ds (ds = 1/ns), phi_k = k dphi (dphi = 2 pi / nphi).
/// The boundary sits at s = 1 between the last node row and a ghost row;
/// values across the map center use the antipodal rule
/// u(-s, phi) = u(s, phi + pi), so nphi must be even. All mapping data
/// (inverse Jacobian, Christoffel terms of the map, cell volumes, boundary
/// normals, rotational eigenvalues) is evaluated analytically from rho.
///
/// Azimuthal modes m > m_max(j) = 2 j + 1 are unresolvable next to the map
/// center at the stable explicit step size; rings where m_max < nphi/2 carry
/// an orthonormal basis of those modes so the stepper can project them out
/// of its update. h_min reflects the finest spacing the stencils actually
/// resolve: radial node distances and per-ring azimuthal spacing capped at
/// the half-wavelength of mode m_max.
struct DomainGrid {
  int dim = 1;
  ProfileCurve profile;

  // ---- 1-d fields ----
  int n1 = 0;
  double h = 0.0;
  std::vector<double> r1d;

  // ---- 2-d fields ----
  int ns = 0, nphi = 0;
  double ds = 0.0, dphi = 0.0;
  double inv_d1 = 0.0, inv_d2 = 0.0;  // 1/(2 sin dphi), 1/(2(1-cos dphi))
  std::vector<double> xy, xr;         // node coordinates (y, r)
  std::vector<double> as1, as2;       // grad s components
  std::vector<double> ap1, ap2;       // grad phi components
  std::vector<double> gssp, gspp;     // Gamma^s_{s phi}, Gamma^s_{phi phi}
  std::vector<double> gpsp, gppp;     // Gamma^phi_{s phi}, Gamma^phi_{phi phi}
  std::vector<int> mmax;              // per-ring azimuthal cutoff
  std::vector<std::vector<double>> killed_basis;  // per ring: rows x nphi, empty if none

  // boundary cache per phi_k (2-d) or per endpoint (1-d, size 2)
  std::vector<double> bnd_y, bnd_r;      // contact point
  std::vector<double> bnd_gy, bnd_gr;    // outward normal gamma
  std::vector<double> bnd_cs, bnd_cp;    // Neumann coefficients (grad s|phi . gamma)
  std::vector<double> bnd_sig_rtau;      // A^Sigma on r tau
  std::vector<double> bnd_sig_tau;       // A^Sigma on unit tau

  // shared
  std::vector<double> r;    // radius per node
  std::vector<double> vol;  // quadrature cell volume per node
  double h_min = 0.0;
  double r_min = 0.0;

  int size() const { return dim == 1 ? n1 : ns * nphi; }
  int idx(int j, int k) const { return j * nphi + k; }
  int wrap(int k) const {
    k %= nphi;
    return k < 0 ? k + nphi : k;
  }
  int antipode(int k) const { return (k + nphi / 2) % nphi; }
};

using GridPtr = std::shared_ptr<const DomainGrid>;

GridPtr build_grid(const ProfileCurve& profile, int ns, int nphi);
GridPtr build_grid_1d(const ProfileCurve& profile, int n);

}  // namespace torusflow
