#pragma once

#include <functional>
#include <string>
#include <vector>

#include "torusflow/grid.hpp"

namespace torusflow {

/// Closed-form values of a manufactured field and its hand-differentiated
/// derivatives at a half-plane point. d2_* are the physical second
/// derivatives; for curves only the r entries are used.
struct PointDerivs {
  double u = 0.0, ut = 0.0;
  double du_y = 0.0, du_r = 0.0;
  double d2_yy = 0.0, d2_yr = 0.0, d2_rr = 0.0;
};

struct ManufacturedCase {
  std::string description;
  int dim = 1;
  bool steady = true;  // ut == 0 and coefficients time-independent
  std::function<PointDerivs(double y, double r, double t)> eval;
};

/// Reference evaluation of the graphical flow operator from analytic
/// derivatives, independent of the stencil code path.
double oracle_operator(const ManufacturedCase& mc, double y, double r,
                       double t = 0.0);

/// Forcing that turns the manufactured field into an exact solution of the
/// forced flow, f = du*/dt - N(u*).
double oracle_forcing(const ManufacturedCase& mc, double y, double r,
                      double t = 0.0);

// Presets. All forced-run cases satisfy the contact condition exactly.
ManufacturedCase mms_case_constant(int dim, double c);
ManufacturedCase mms_case_cosine_1d(double amplitude, double r0, double r1);
ManufacturedCase mms_case_radial_2d(Vec2 center, double a, double amplitude = 1.0);
/// Non-axisymmetric compatible field y (1 - d^2 / (3 a^2)) over a circle
/// cross-section; exercises the azimuthal stencils.
ManufacturedCase mms_case_tilt_2d(Vec2 center, double a);
/// u = y^2; not compatible at the boundary, used for operator consistency
/// checks on interior nodes.
ManufacturedCase mms_case_parabola_2d();

struct StudyLevel {
  int n1 = 0, ns = 0, nphi = 0;
  double h = 0.0;
  double linf = 0.0;
};

struct StudyReport {
  std::vector<StudyLevel> levels;
  std::vector<double> orders;  // log2(e_i / e_{i+1}) per consecutive pair
  bool exact = false;          // every level error is exactly zero
};

/// Runs the forced equation from u*(., 0) to time T on `levels` meshes,
/// halving h each time, and reports the L-infinity errors and observed
/// orders. The profile must match the case (interval for 1-d cases).
StudyReport convergence_study(const ManufacturedCase& mc,
                              const ProfileCurve& profile, int base_ns,
                              int base_nphi, int levels, double T,
                              double sigma = 0.2);

}  // namespace torusflow
