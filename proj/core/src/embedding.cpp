#include "torusflow/embedding.hpp"

#include <cmath>

#include "torusflow/operators.hpp"

namespace torusflow {

namespace {

// Gradient at a single node, matching the field stencils.
void node_gradient(const GraphState& state, int node, double& dy, double& dr) {
  const DomainGrid& g = *state.grid;
  if (g.dim == 1) {
    const double ul = node > 0 ? state.u[node - 1] : state.ghost[0];
    const double ur_ = node < g.n1 - 1 ? state.u[node + 1] : state.ghost[1];
    dy = 0.0;
    dr = (ur_ - ul) / (2.0 * g.h);
    return;
  }
  const int j = node / g.nphi, k = node % g.nphi;
  const int ke = g.wrap(k + 1), kw = g.wrap(k - 1);
  const double un = j + 1 < g.ns ? state.u[g.idx(j + 1, k)] : state.ghost[k];
  const double uso = j > 0 ? state.u[g.idx(j - 1, k)] : state.u[g.antipode(k)];
  const double us = (un - uso) / (2.0 * g.ds);
  const double up = (state.u[g.idx(j, ke)] - state.u[g.idx(j, kw)]) * g.inv_d1;
  dy = g.as1[node] * us + g.ap1[node] * up;
  dr = g.as2[node] * us + g.ap2[node] * up;
}

}  // namespace

Vec3 embed(const GraphState& state, int node) {
  const DomainGrid& g = *state.grid;
  const double u = state.u[node];
  const double r = g.r[node];
  if (g.dim == 1) return {r * std::cos(u), r * std::sin(u), 0.0};
  return {g.xy[node], r * std::cos(u), r * std::sin(u)};
}

Vec3 tau_at(const GraphState& state, int node) {
  const double u = state.u[node];
  if (state.grid->dim == 1) return {-std::sin(u), std::cos(u), 0.0};
  return {0.0, -std::sin(u), std::cos(u)};
}

Vec3 normal_vector(const GraphState& state, int node) {
  const DomainGrid& g = *state.grid;
  const double u = state.u[node];
  const double r = g.r[node];
  const double cu = std::cos(u), su = std::sin(u);
  double dy, dr;
  node_gradient(state, node, dy, dr);

  if (g.dim == 1) {
    // Tangent rhat + r u' tau; normal is its left rotation, <nu, tau> = 1/vt.
    const double nx = -r * dr * cu - su;
    const double ny = -r * dr * su + cu;
    const double nn = std::sqrt(nx * nx + ny * ny);
    return {nx / nn, ny / nn, 0.0};
  }
  // Tangents F_y = e_y + r D_y u tau, F_r = rhat + r D_r u tau.
  const Vec3 fy = {1.0, -r * dy * su, r * dy * cu};
  const Vec3 fr = {0.0, cu - r * dr * su, su + r * dr * cu};
  Vec3 nu = {fy[1] * fr[2] - fy[2] * fr[1], fy[2] * fr[0] - fy[0] * fr[2],
             fy[0] * fr[1] - fy[1] * fr[0]};
  const double nn = std::sqrt(dot(nu, nu));
  return {nu[0] / nn, nu[1] / nn, nu[2] / nn};
}

}  // namespace torusflow
