#pragma once

#include <vector>

#include "torusflow/grid.hpp"

namespace torusflow {

/// Angle field over the cross-section at one instant, plus the exterior
/// ghost layer that realises the perpendicular contact condition. The range
/// of u is unrestricted; multi-wrap data beyond 2 pi is never reduced.
struct GraphState {
  GridPtr grid;
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> ghost;  // dim 1: {left, right}; dim 2: one ring at s = 1 + ds/2

  explicit GraphState(GridPtr g)
      : grid(std::move(g)),
        u(grid->size(), 0.0),
        ghost(grid->dim == 1 ? 2 : grid->nphi, 0.0) {}
};

struct StepperConfig {
  double sigma = 0.2;          // CFL safety factor, dt = sigma h_min^2
  bool rk4 = false;            // false: forward Euler
  double t_final = 1.0;
  double vtilde_cap = 1e3;     // abort threshold on max vtilde
  double osc_tol = 1e-4;       // stop when max u - min u drops below this
};

}  // namespace torusflow
