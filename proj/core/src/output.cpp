#include "torusflow/output.hpp"

#include <charconv>
#include <cmath>

#include "torusflow/embedding.hpp"

namespace torusflow {

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_diagnostics_header(std::ostream& os, const std::string& hash,
                              const std::vector<double>& level_ks) {
  os << "# config=" << hash << "\n";
  os << "t,area,u_min,u_max,vtilde_max,q_max,h2v2_max,flux_hr,flux_hr_norm,"
        "tau_top,kappa,h2_dmu,energy_accum";
  for (double k : level_ks) os << ",lvl_" << format_double(k);
  os << "\n";
}

void write_diagnostics_row(std::ostream& os, const DiagnosticsRow& row) {
  os << format_double(row.t) << ',' << format_double(row.area) << ','
     << format_double(row.u_min) << ',' << format_double(row.u_max) << ','
     << format_double(row.vtilde_max) << ',' << format_double(row.q_max) << ','
     << format_double(row.h2v2_max) << ',' << format_double(row.flux_hr) << ','
     << format_double(row.flux_hr_norm) << ',' << format_double(row.tau_top)
     << ',' << format_double(row.kappa) << ',' << format_double(row.h2_dmu)
     << ',' << format_double(row.energy_accum);
  for (double m : row.level_measures) os << ',' << format_double(m);
  os << "\n";
}

void write_snapshot_vtk(std::ostream& os, const GraphState& state,
                        const std::string& hash) {
  const DomainGrid& g = *state.grid;
  const GeomFields f = compute_geometry(state);
  // Close the azimuthal seam by repeating the phi = 0 column.
  const int np = g.nphi + 1;

  os << "# vtk DataFile Version 3.0\n";
  os << "torusflow snapshot t=" << format_double(state.t) << " config=" << hash
     << "\n";
  os << "ASCII\nDATASET STRUCTURED_GRID\n";
  os << "DIMENSIONS " << np << " " << g.ns << " 1\n";
  os << "POINTS " << np * g.ns << " double\n";
  for (int j = 0; j < g.ns; ++j)
    for (int kk = 0; kk < np; ++kk) {
      const Vec3 p = embed(state, g.idx(j, kk % g.nphi));
      os << format_double(p[0]) << ' ' << format_double(p[1]) << ' '
         << format_double(p[2]) << "\n";
    }
  os << "POINT_DATA " << np * g.ns << "\n";
  auto field = [&](const char* name, const std::vector<double>& v) {
    os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (int j = 0; j < g.ns; ++j)
      for (int kk = 0; kk < np; ++kk)
        os << format_double(v[g.idx(j, kk % g.nphi)]) << "\n";
  };
  field("u", state.u);
  field("vtilde", f.vtilde);
  field("H", f.H);
}

void write_snapshot_csv(std::ostream& os, const GraphState& state,
                        const std::string& hash) {
  const DomainGrid& g = *state.grid;
  const GeomFields f = compute_geometry(state);
  os << "# config=" << hash << " t=" << format_double(state.t) << "\n";
  os << "x,y,r,u,vtilde,H\n";
  for (int i = 0; i < g.size(); ++i) {
    const Vec3 p = embed(state, i);
    os << format_double(p[0]) << ',' << format_double(p[1]) << ','
       << format_double(g.r[i]) << ',' << format_double(state.u[i]) << ','
       << format_double(f.vtilde[i]) << ',' << format_double(f.H[i]) << "\n";
  }
}

}  // namespace torusflow
