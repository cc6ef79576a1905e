#pragma once

#include <array>

#include "torusflow/state.hpp"

namespace torusflow {

using Vec3 = std::array<double, 3>;

/// Ambient position of the graph point over node i. For curves (dim 1) the
/// third component is zero; for surfaces the layout is
/// (y, r cos u, r sin u).
Vec3 embed(const GraphState& state, int node);

/// Unit rotational field at the embedded point over node i.
Vec3 tau_at(const GraphState& state, int node);

/// Unit normal of the flowing manifold over node i, built from the tangent
/// frame of the embedding and oriented so that <nu, tau> > 0.
Vec3 normal_vector(const GraphState& state, int node);

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace torusflow
