#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "torusflow/operators.hpp"
#include "torusflow/stepper.hpp"

using namespace torusflow;

namespace {

GraphState annulus_state(int n, double amplitude) {
  GraphState s(build_grid_1d(make_interval_profile(1.0, 2.0), n));
  for (int j = 0; j < n; ++j)
    s.u[j] = amplitude * std::cos(M_PI * (s.grid->r[j] - 1.0));
  apply_neumann(s);
  return s;
}

}  // namespace

TEST_CASE("cfl step size") {
  StepperConfig cfg;
  cfg.sigma = 0.2;
  // uniform h = 0.1 on [1, 2] with 11 nodes
  GraphState s(build_grid_1d(make_interval_profile(1.0, 2.0), 11));
  CHECK(cfl_dt(s, cfg) == doctest::Approx(0.002).epsilon(1e-14));

  // 2-d round torus: the radial spacing a ds is the finest stencil leg
  GraphState s2(build_grid(make_circle_profile({0.0, 2.0}, 0.5), 64, 64));
  CHECK(s2.grid->h_min == doctest::Approx(0.5 / 64.0).epsilon(1e-12));
  CHECK(cfl_dt(s2, cfg) ==
        doctest::Approx(0.2 * (0.5 / 64.0) * (0.5 / 64.0)).epsilon(1e-12));

  cfg.sigma = 0.0;
  CHECK_THROWS_WITH_AS(cfl_dt(s, cfg), "sigma out of range (0, 0.5]",
                       std::invalid_argument);
}

TEST_CASE("constants are exact stationary points of step") {
  StepperConfig cfg;
  for (bool rk4 : {false, true}) {
    cfg.rk4 = rk4;
    GraphState s(build_grid_1d(make_interval_profile(1.0, 2.0), 17));
    for (double& x : s.u) x = -2.5;
    const double dt = cfl_dt(s, cfg);
    for (int i = 0; i < 50; ++i) REQUIRE(step_once(s, cfg, dt).ok);
    for (double x : s.u) CHECK(x == -2.5);
    CHECK(s.t == doctest::Approx(50 * dt).epsilon(1e-13));

    GraphState s2(build_grid(make_circle_profile({0.0, 2.0}, 0.5), 8, 8));
    for (double& x : s2.u) x = 7.0;
    const double dt2 = cfl_dt(s2, cfg);
    for (int i = 0; i < 50; ++i) REQUIRE(step_once(s2, cfg, dt2).ok);
    for (double x : s2.u) CHECK(x == 7.0);
  }
}

TEST_CASE("three-node hand case: one Euler step") {
  GraphState s(build_grid_1d(make_interval_profile(1.0, 2.0), 3));
  s.u = {0.0, 0.1, 0.0};
  StepperConfig cfg;
  const double dt = 0.002;
  // hand oracle: mirror ghosts give u'' = (0.2-0, -0.2, 0.2-0)/h^2 with
  // h = 0.5 and u' = 0 at all three nodes, so rhs = (0.8, -0.8, 0.8)
  REQUIRE(step_once(s, cfg, dt).ok);
  CHECK(s.u[0] == 0.0 + dt * 0.8);
  CHECK(s.u[1] == 0.1 + dt * -0.8);
  CHECK(s.u[2] == 0.0 + dt * 0.8);
  CHECK(s.t == dt);
}

TEST_CASE("translation and reflection equivariance over 100 steps") {
  StepperConfig cfg;
  GraphState base = annulus_state(65, 1.0);
  GraphState plus = base;
  for (double& x : plus.u) x += 2.0 * M_PI;
  GraphState minus = base;
  for (double& x : minus.u) x = -x;

  const double dt = cfl_dt(base, cfg);
  for (int i = 0; i < 100; ++i) {
    REQUIRE(step_once(base, cfg, dt).ok);
    REQUIRE(step_once(plus, cfg, dt).ok);
    REQUIRE(step_once(minus, cfg, dt).ok);
  }
  for (int j = 0; j < 65; ++j) {
    CHECK(std::abs((plus.u[j] - 2.0 * M_PI) - base.u[j]) <= 1e-12);
    CHECK(-minus.u[j] == base.u[j]);  // sign-symmetric arithmetic, bitwise
  }
}

TEST_CASE("gradient blow-up abort") {
  GraphState s = annulus_state(65, 1.0);
  StepperConfig cfg;
  cfg.vtilde_cap = 1.0001;
  const double dt = cfl_dt(s, cfg);
  const StepStatus st = step_once(s, cfg, dt);
  CHECK_FALSE(st.ok);
  CHECK(st.error.find("gradient blow-up at t=") == 0);
}

TEST_CASE("non-finite data aborts") {
  GraphState s = annulus_state(65, 1.0);
  s.u[10] = std::numeric_limits<double>::quiet_NaN();
  StepperConfig cfg;
  const StepStatus st = step_once(s, cfg, 1e-5);
  CHECK_FALSE(st.ok);
  CHECK(st.error.find("non-finite value") == 0);
}

TEST_CASE("run_flow: constant data converges immediately") {
  GraphState s(build_grid_1d(make_interval_profile(1.0, 2.0), 33));
  for (double& x : s.u) x = 0.7;
  StepperConfig cfg;
  const RunResult res = run_flow(s, cfg);
  CHECK(res.reason == StopReason::converged);
  CHECK(res.steps == 0);
  for (double x : s.u) CHECK(x == 0.7);
}

TEST_CASE("run_flow: cosine data flattens inside its initial hull") {
  GraphState s = annulus_state(33, M_PI);
  StepperConfig cfg;
  cfg.t_final = 50.0;
  cfg.osc_tol = 1e-3 * 2.0 * M_PI;
  const RunResult res = run_flow(s, cfg);
  CHECK(res.reason == StopReason::converged);
  for (double x : s.u) {
    CHECK(x >= -M_PI);
    CHECK(x <= M_PI);
  }
  CHECK(res.max_violation_up <= 1e-6 * 2.0 * M_PI);
  CHECK(res.max_violation_down <= 1e-6 * 2.0 * M_PI);
  // oscillation shrank below tolerance
  double lo = s.u[0], hi = s.u[0];
  for (double x : s.u) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  CHECK(hi - lo < cfg.osc_tol);
}

TEST_CASE("run_flow: t_final termination and dt clamp") {
  GraphState s = annulus_state(33, 0.1);
  StepperConfig cfg;
  cfg.t_final = 0.01;
  cfg.osc_tol = 1e-14;
  const RunResult res = run_flow(s, cfg);
  CHECK(res.reason == StopReason::t_final);
  CHECK(s.t == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("run_flow flags incompatible initial data") {
  GraphState s(build_grid_1d(make_interval_profile(1.0, 2.0), 33));
  for (int j = 0; j < 33; ++j) s.u[j] = s.grid->r[j];  // slope 1 at boundary
  StepperConfig cfg;
  cfg.t_final = 1e-3;
  const RunResult res = run_flow(s, cfg);
  CHECK(res.compat_flagged);

  GraphState c = annulus_state(33, 1.0);  // compatible preset
  const RunResult res2 = run_flow(c, cfg);
  CHECK_FALSE(res2.compat_flagged);
}

TEST_CASE("2-d star run keeps identities and shrinks oscillation") {
  const ProfileCurve p = make_star_profile({0.0, 2.0}, {0.5, 0.0, 0.1});
  GraphState s(build_grid(p, 12, 16));
  const DomainGrid& g = *s.grid;
  for (int j = 0; j < g.ns; ++j) {
    const double sj = (j + 0.5) * g.ds;
    for (int k = 0; k < g.nphi; ++k)
      s.u[g.idx(j, k)] = 0.5 * std::cos(M_PI * sj);
  }
  apply_neumann(s);
  StepperConfig cfg;
  cfg.t_final = 1e9;  // step-count bound below
  const double dt = cfl_dt(s, cfg);
  double osc0 = 0.0;
  {
    double lo = s.u[0], hi = s.u[0];
    for (double x : s.u) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    osc0 = hi - lo;
  }
  for (int i = 0; i < 400; ++i) REQUIRE(step_once(s, cfg, dt).ok);
  double lo = s.u[0], hi = s.u[0];
  for (double x : s.u) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  CHECK(hi - lo < osc0);
  CHECK(neumann_residual(s) <= 1e-12);
}

TEST_CASE("euler-rk4 mismatch scales like the euler error") {
  StepperConfig euler, rk4;
  rk4.rk4 = true;
  auto mismatch = [&](double dt, int steps) {
    GraphState a = annulus_state(65, 0.5);
    GraphState b = a;
    for (int i = 0; i < steps; ++i) {
      REQUIRE(step_once(a, euler, dt).ok);
      REQUIRE(step_once(b, rk4, dt).ok);
    }
    double diff = 0.0;
    for (int j = 0; j < 65; ++j)
      diff = std::max(diff, std::abs(a.u[j] - b.u[j]));
    return diff;
  };
  const double dt = cfl_dt(annulus_state(65, 0.5), euler);
  const double d1 = mismatch(dt, 40);
  const double d2 = mismatch(0.5 * dt, 80);  // same horizon, halved step
  CHECK(d1 > 0.0);
  CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("random resolvable data respects the hull") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> amp(-0.3, 0.3);
  for (int trial = 0; trial < 3; ++trial) {
    // random mixture of compatible radial modes
    GraphState s(build_grid_1d(make_interval_profile(1.0, 2.0), 65));
    for (int j = 0; j < 65; ++j) s.u[j] = 0.0;
    for (int k = 1; k <= 4; ++k) {
      const double a = amp(gen);
      for (int j = 0; j < 65; ++j)
        s.u[j] += a * std::cos(k * M_PI * (s.grid->r[j] - 1.0));
    }
    apply_neumann(s);
    StepperConfig cfg;
    cfg.t_final = 0.2;
    cfg.osc_tol = 1e-8;
    const RunResult res = run_flow(s, cfg);
    CHECK(res.reason != StopReason::aborted);
    CHECK_FALSE(res.compat_flagged);
    const double osc0 = res.u_max0 - res.u_min0;
    CHECK(res.max_violation_up <= 1e-6 * osc0);
    CHECK(res.max_violation_down <= 1e-6 * osc0);
  }

  // same game on a star surface
  const ProfileCurve p = make_star_profile({0.0, 2.0}, {0.5, 0.0, 0.08});
  GraphState s(build_grid(p, 16, 24));
  const DomainGrid& g = *s.grid;
  for (int j = 0; j < g.ns; ++j) {
    const double sj = (j + 0.5) * g.ds;
    const double v =
        0.4 * std::cos(M_PI * sj) - 0.2 * std::cos(2.0 * M_PI * sj);
    for (int k = 0; k < g.nphi; ++k) s.u[g.idx(j, k)] = v;
  }
  apply_neumann(s);
  StepperConfig cfg;
  cfg.t_final = 0.1;
  cfg.osc_tol = 1e-8;
  const RunResult res = run_flow(s, cfg);
  CHECK(res.reason != StopReason::aborted);
  CHECK(res.max_violation_up <= 1e-6 * (res.u_max0 - res.u_min0));
  CHECK(res.max_violation_down <= 1e-6 * (res.u_max0 - res.u_min0));
}

TEST_CASE("unresolvable rough data is flagged and never leaks non-finite values") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  GraphState s(build_grid(make_circle_profile({0.0, 2.0}, 0.5), 16, 16));
  for (double& x : s.u) x = dist(gen);
  StepperConfig cfg;
  cfg.t_final = 0.05;
  const RunResult res = run_flow(s, cfg);
  CHECK(res.compat_flagged);
  if (res.reason == StopReason::aborted) {
    // a clean abort names the failure and the time it happened
    CHECK((res.message.find("gradient blow-up at t=") != std::string::npos ||
           res.message.find("non-finite value at t=") != std::string::npos));
  } else {
    for (double x : s.u) CHECK(std::isfinite(x));
  }
}
