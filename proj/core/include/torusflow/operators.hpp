#pragma once

#include <vector>

#include "torusflow/state.hpp"

namespace torusflow {

/// Per-node geometric quantities derived from a state. In 1-d the metric is
/// the single entry g11 and du_y stays empty.
struct GeomFields {
  int dim = 1;
  std::vector<double> du_y, du_r;        // half-plane gradient components
  std::vector<double> vtilde;            // sqrt(1 + r^2 |Du|^2)
  std::vector<double> v;                 // vtilde / r
  std::vector<double> q;                 // log v
  std::vector<double> w;                 // r / vtilde
  std::vector<double> g11, g12, g22;     // inverse metric
  std::vector<double> rhs;               // graphical flow right-hand side
  std::vector<double> H;                 // mean curvature, rhs = -H vtilde / r
};

/// Solves the ghost layer so the discrete outward derivative gamma . Du
/// vanishes at every boundary node, second order. Tangential terms in the
/// mapped frame are closed with interior values.
void apply_neumann(GraphState& state);

/// Residual of the discrete contact condition; zero (roundoff) right after
/// apply_neumann. Exposed for checks and fault injection.
double neumann_residual(const GraphState& state);

/// Discrete gamma . Du at the boundary evaluated from interior values only
/// (one-sided), used to flag initial data that is not compatible.
double boundary_compatibility_residual(const GraphState& state);

struct GradField {
  std::vector<double> du_y, du_r;
};

GradField gradient(const GraphState& state);

struct VtildeField {
  std::vector<double> vtilde, v, q, w;
};

VtildeField vtilde_field(const DomainGrid& grid, const GradField& du);

struct InverseMetric {
  std::vector<double> g11, g12, g22;
};

InverseMetric inverse_metric(const DomainGrid& grid, const GradField& du);

std::vector<double> flow_rhs(const GraphState& state);
std::vector<double> mean_curvature(const GraphState& state);

/// One-pass evaluation of everything above plus rhs and H.
GeomFields compute_geometry(const GraphState& state);

/// Fused kernel used by the stepper: writes rhs into `out` and returns the
/// maximum of vtilde^2 over the grid. Honors set_num_threads for dim 2.
double flow_rhs_into(const GraphState& state, std::vector<double>& out);

/// Projects unresolvable azimuthal modes out of an increment field, ring by
/// ring, next to the map center. No-op in 1-d and on rings without a basis.
void filter_increment(const DomainGrid& grid, std::vector<double>& inc);

void set_num_threads(int n);
int num_threads();

}  // namespace torusflow
