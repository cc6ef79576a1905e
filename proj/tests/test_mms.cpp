#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "torusflow/mms.hpp"
#include "torusflow/operators.hpp"

using namespace torusflow;

namespace {

// High-precision central differences of a case's u, used to cross-check the
// hand-coded derivatives.
PointDerivs fd_derivs(const ManufacturedCase& mc, double y, double r,
                      double step = 1e-5) {
  auto u = [&](double yy, double rr) { return mc.eval(yy, rr, 0.0).u; };
  PointDerivs d;
  d.u = u(y, r);
  d.du_y = (u(y + step, r) - u(y - step, r)) / (2.0 * step);
  d.du_r = (u(y, r + step) - u(y, r - step)) / (2.0 * step);
  d.d2_yy = (u(y + step, r) - 2.0 * d.u + u(y - step, r)) / (step * step);
  d.d2_rr = (u(y, r + step) - 2.0 * d.u + u(y, r - step)) / (step * step);
  d.d2_yr = (u(y + step, r + step) - u(y + step, r - step) -
             u(y - step, r + step) + u(y - step, r - step)) /
            (4.0 * step * step);
  return d;
}

double oracle_from(const PointDerivs& d, double r, int dim) {
  if (dim == 1) {
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

}  // namespace

TEST_CASE("oracle values") {
  CHECK(oracle_operator(mms_case_constant(1, 3.0), 0.0, 1.7) == 0.0);
  CHECK(oracle_operator(mms_case_constant(2, -1.0), 0.4, 2.2) == 0.0);

  // 1-d cosine anchor at r = 1.5
  const ManufacturedCase c1 = mms_case_cosine_1d(0.01, 1.0, 2.0);
  CHECK(oracle_operator(c1, 0.0, 1.5) == doctest::Approx(-0.0418415).epsilon(1e-5));

  // u = y^2 reduces to N = 2 / vtilde^2
  const ManufacturedCase par = mms_case_parabola_2d();
  for (double y : {0.0, 0.3, -0.8})
    for (double r : {1.6, 2.0, 2.4}) {
      const double vt2 = 1.0 + 4.0 * r * r * y * y;
      CHECK(oracle_operator(par, y, r) ==
            doctest::Approx(2.0 / vt2).epsilon(1e-13));
    }
}

TEST_CASE("hand derivatives agree with high-precision finite differences") {
  const ManufacturedCase cases[] = {
      mms_case_cosine_1d(0.5, 1.0, 2.0),
      mms_case_radial_2d({0.0, 2.0}, 0.5),
      mms_case_tilt_2d({0.0, 2.0}, 0.5),
      mms_case_parabola_2d(),
  };
  const double pts[][2] = {{0.1, 1.9}, {-0.2, 2.2}, {0.15, 1.8}};
  for (const ManufacturedCase& mc : cases)
    for (auto& p : pts) {
      const double y = mc.dim == 1 ? 0.0 : p[0];
      const double r = p[1];
      const double a = oracle_operator(mc, y, r);
      const double b = oracle_from(fd_derivs(mc, y, r), r, mc.dim);
      CHECK(a == doctest::Approx(b).epsilon(1e-6));
    }
}

TEST_CASE("stencil operator converges to the oracle on smooth presets") {
  // u = y^2 over the round cross-section, analytic ghost
  const ManufacturedCase par = mms_case_parabola_2d();
  double prev = 0.0;
  for (int lev = 0; lev < 3; ++lev) {
    const int ns = 16 << lev;
    GraphState s(build_grid(make_circle_profile({0.0, 2.0}, 0.5), ns, ns));
    const DomainGrid& g = *s.grid;
    for (int i = 0; i < g.size(); ++i) s.u[i] = g.xy[i] * g.xy[i];
    const double sg = 1.0 + 0.5 * g.ds;
    for (int k = 0; k < g.nphi; ++k) {
      const double yg = sg * g.profile.rho(k * g.dphi) * std::cos(k * g.dphi);
      s.ghost[k] = yg * yg;
    }
    const std::vector<double> f = flow_rhs(s);
    double worst = 0.0;
    for (int i = 0; i < g.size(); ++i)
      worst = std::max(worst,
                       std::abs(f[i] - oracle_operator(par, g.xy[i], g.r[i])));
    if (lev > 0) {
      const double order = std::log2(prev / worst);
      CHECK(order >= 1.7);
      CHECK(order <= 2.3);
    }
    prev = worst;
  }
}

TEST_CASE("forced 1-d study reaches second order") {
  const ManufacturedCase mc = mms_case_cosine_1d(1.0, 1.0, 2.0);
  const StudyReport rep =
      convergence_study(mc, make_interval_profile(1.0, 2.0), 33, 0, 3, 0.05);
  REQUIRE(rep.levels.size() == 3);
  CHECK(rep.levels[0].n1 == 33);
  CHECK(rep.levels[2].n1 == 129);
  for (double o : rep.orders) {
    CHECK(o >= 1.8);
    CHECK(o <= 2.2);
  }
}

TEST_CASE("forced non-axisymmetric 2-d study reaches second order") {
  const ManufacturedCase mc = mms_case_tilt_2d({0.0, 2.0}, 0.5);
  const StudyReport rep = convergence_study(
      mc, make_circle_profile({0.0, 2.0}, 0.5), 8, 8, 3, 0.01);
  REQUIRE(rep.orders.size() == 2);
  for (double o : rep.orders) {
    CHECK(o >= 1.6);
    CHECK(o <= 2.4);
  }
}

TEST_CASE("constant case is reproduced exactly") {
  const ManufacturedCase mc = mms_case_constant(1, 0.4);
  const StudyReport rep =
      convergence_study(mc, make_interval_profile(1.0, 2.0), 17, 0, 3, 0.01);
  CHECK(rep.exact);
  for (const StudyLevel& l : rep.levels) CHECK(l.linf == 0.0);
  CHECK(rep.orders.empty());
}

TEST_CASE("study validation") {
  const ManufacturedCase mc = mms_case_cosine_1d(1.0, 1.0, 2.0);
  CHECK_THROWS_WITH_AS(
      convergence_study(mc, make_interval_profile(1.0, 2.0), 17, 0, 2, 0.01),
      "levels >= 3", std::invalid_argument);
}
