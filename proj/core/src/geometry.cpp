#include "torusflow/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace torusflow {

double ProfileCurve::rho(double phi) const {
  double v = cos_coeffs.empty() ? 0.0 : cos_coeffs[0];
  for (std::size_t m = 1; m < cos_coeffs.size(); ++m)
    v += cos_coeffs[m] * std::cos(double(m) * phi);
  for (std::size_t m = 1; m < sin_coeffs.size(); ++m)
    v += sin_coeffs[m] * std::sin(double(m) * phi);
  return v;
}

double ProfileCurve::drho(double phi) const {
  double v = 0.0;
  for (std::size_t m = 1; m < cos_coeffs.size(); ++m)
    v -= double(m) * cos_coeffs[m] * std::sin(double(m) * phi);
  for (std::size_t m = 1; m < sin_coeffs.size(); ++m)
    v += double(m) * sin_coeffs[m] * std::cos(double(m) * phi);
  return v;
}

double ProfileCurve::ddrho(double phi) const {
  double v = 0.0;
  for (std::size_t m = 1; m < cos_coeffs.size(); ++m)
    v -= double(m * m) * cos_coeffs[m] * std::cos(double(m) * phi);
  for (std::size_t m = 1; m < sin_coeffs.size(); ++m)
    v -= double(m * m) * sin_coeffs[m] * std::sin(double(m) * phi);
  return v;
}

ProfileCurve make_circle_profile(Vec2 center, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("nonpositive radius");
  if (!(center.r - a > 0.0))
    throw std::invalid_argument("profile touches rotation axis");
  ProfileCurve p;
  p.kind = ProfileKind::circle;
  p.center = center;
  p.cos_coeffs = {a};
  return p;
}

ProfileCurve make_star_profile(Vec2 center, std::vector<double> cos_coeffs,
                               std::vector<double> sin_coeffs) {
  ProfileCurve p;
  p.kind = ProfileKind::star;
  p.center = center;
  p.cos_coeffs = std::move(cos_coeffs);
  p.sin_coeffs = std::move(sin_coeffs);
  if (p.cos_coeffs.empty()) throw std::invalid_argument("empty coefficient list");

  // Validity by dense sampling; a finite trig polynomial cannot hide a sign
  // change between 1024 samples at the harmonic counts we accept.
  const int nsamp = 2048;
  for (int i = 0; i < nsamp; ++i) {
    const double phi = 2.0 * M_PI * double(i) / double(nsamp);
    const double rho = p.rho(phi);
    if (!(rho > 0.0)) {
      std::ostringstream os;
      os << "rho <= 0 at phi=" << phi;
      throw std::invalid_argument(os.str());
    }
    const double r = center.r + rho * std::sin(phi);
    if (!(r > 0.0)) {
      std::ostringstream os;
      os << "profile exits half-plane (r <= 0) at phi=" << phi;
      throw std::invalid_argument(os.str());
    }
  }
  return p;
}

ProfileCurve make_interval_profile(double r0, double r1) {
  if (!(r0 > 0.0)) throw std::invalid_argument("nonpositive radius");
  if (!(r1 > r0)) throw std::invalid_argument("r1 must exceed r0");
  ProfileCurve p;
  p.kind = ProfileKind::interval;
  p.r0 = r0;
  p.r1 = r1;
  return p;
}

Vec2 profile_point(const ProfileCurve& p, double phi) {
  const double rho = p.rho(phi);
  return {p.center.y + rho * std::cos(phi), p.center.r + rho * std::sin(phi)};
}

Vec2 profile_normal(const ProfileCurve& p, double phi) {
  // Tangent P' = rho' e + rho e_perp; rotate by -90 degrees and normalise.
  const double rho = p.rho(phi), dr = p.drho(phi);
  const double c = std::cos(phi), s = std::sin(phi);
  const double w = std::sqrt(rho * rho + dr * dr);
  return {(rho * c + dr * s) / w, (rho * s - dr * c) / w};
}

SigmaEigenvalue sigma_rotational_eigenvalue(const ProfileCurve& p, double phi) {
  const Vec2 x = profile_point(p, phi);
  const Vec2 nu = profile_normal(p, phi);
  // -r <mu, rhat>: the rhat component of the rotated normal equals the
  // r component of the profile normal.
  return {-x.r * nu.r, -nu.r / x.r};
}

}  // namespace torusflow
