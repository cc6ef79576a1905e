#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace torusflow {

/// Point or vector in the half-plane. `y` is the symmetry coordinate kept
/// after collapsing the first n-1 ambient directions, `r` the distance to
/// the rotation axis. For curves in an annulus (dim == 1) only `r` is used.
struct Vec2 {
  double y = 0.0;
  double r = 0.0;
};

enum class ProfileKind { circle, star, interval };

/// Cross-section boundary of the torus of revolution. Circle and star
/// profiles live in the open half-plane r > 0 and are star-shaped about
/// `center`; the interval kind is the degenerate 1-d cross-section
/// [r0, r1] whose boundary is two points.
///
/// Star radial law: rho(phi) = cos_coeffs[0]
///                           + sum_m cos_coeffs[m] cos(m phi)
///                           + sum_m sin_coeffs[m] sin(m phi).
struct ProfileCurve {
  ProfileKind kind = ProfileKind::circle;
  Vec2 center;
  std::vector<double> cos_coeffs;  // index m; [0] is the mean radius
  std::vector<double> sin_coeffs;  // index m; [0] unused
  double r0 = 0.0, r1 = 0.0;       // interval kind only

  double rho(double phi) const;
  double drho(double phi) const;
  double ddrho(double phi) const;
};

ProfileCurve make_circle_profile(Vec2 center, double a);
ProfileCurve make_star_profile(Vec2 center, std::vector<double> cos_coeffs,
                               std::vector<double> sin_coeffs = {});
ProfileCurve make_interval_profile(double r0, double r1);

/// Boundary point P(phi) = center + rho(phi) (cos phi, sin phi).
Vec2 profile_point(const ProfileCurve& p, double phi);

/// Outward unit normal of the profile curve at parameter phi.
Vec2 profile_normal(const ProfileCurve& p, double phi);

/// Rotational second-fundamental-form eigenvalue of the torus at the
/// boundary point over phi, in both scalings.
struct SigmaEigenvalue {
  double rtau_rtau = 0.0;  // value on the unnormalised rotational direction
  double tau_tau = 0.0;    // value on the unit rotational direction
};
SigmaEigenvalue sigma_rotational_eigenvalue(const ProfileCurve& p, double phi);

}  // namespace torusflow
