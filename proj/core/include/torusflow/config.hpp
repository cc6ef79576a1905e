#pragma once

#include <string>
#include <vector>

#include "torusflow/state.hpp"

namespace torusflow {

/// Parsed and validated run configuration. Text format is flat
/// `key = value` lines with `#` comments; unknown keys are rejected.
struct RunConfig {
  // profile
  std::string profile_kind = "circle";  // circle | star | interval
  double center_y = 0.0, center_r = 2.0;
  double a = 0.5;                          // circle radius
  std::vector<double> cos_coeffs, sin_coeffs;  // star
  double r0 = 1.0, r1 = 2.0;               // interval

  // grid
  int n = 129;          // interval nodes
  int ns = 64, nphi = 64;

  // initial condition
  std::string preset = "const";  // const | radial_cos | wrap | table
  double amplitude = 0.0;
  int wavenumber = 1;
  std::string table_path;

  // stepper
  StepperConfig stepper;
  std::string scheme = "euler";

  // diagnostics
  int cadence = 10;
  std::vector<double> level_ks = {0.5, 1.0, 2.0, 3.0};

  // output
  std::string out_dir = "out";
  int snapshot_interval = 0;  // steps between snapshots, 0 disables

  // mms
  double mms_t = 0.05;
  double order_min = 0.0, order_max = 0.0;  // 0: dimension default

  int dim() const { return profile_kind == "interval" ? 1 : 2; }
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical full-precision echo; parse(echo(c)) reproduces c and the echo
/// of a parsed echo is byte-identical.
std::string echo_config(const RunConfig& c);

/// FNV-1a hash of the canonical echo, as fixed-width hex.
std::string config_hash(const RunConfig& c);

ProfileCurve make_profile(const RunConfig& c);
GridPtr make_grid(const RunConfig& c);
GraphState make_initial_state(const RunConfig& c, GridPtr grid);

}  // namespace torusflow
