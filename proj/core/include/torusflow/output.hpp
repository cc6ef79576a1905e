#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "torusflow/diagnostics.hpp"
#include "torusflow/state.hpp"

namespace torusflow {

/// Shortest decimal representation that round-trips the exact double.
std::string format_double(double x);

/// Header line + one row per sample. Every file starts with a comment line
/// carrying the config hash for provenance.
void write_diagnostics_header(std::ostream& os, const std::string& hash,
                              const std::vector<double>& level_ks);
void write_diagnostics_row(std::ostream& os, const DiagnosticsRow& row);

/// Snapshot of a state: legacy ASCII STRUCTURED_GRID for surfaces (dim 2),
/// embedded-coordinate CSV for curves (dim 1). Point data: u, vtilde, H.
void write_snapshot_vtk(std::ostream& os, const GraphState& state,
                        const std::string& hash);
void write_snapshot_csv(std::ostream& os, const GraphState& state,
                        const std::string& hash);

}  // namespace torusflow
