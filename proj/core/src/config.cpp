#include "torusflow/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "torusflow/output.hpp"

namespace torusflow {

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw std::invalid_argument(key + ": " + what);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) fail(key, "expected a number, got '" + v + "'");
    return x;
  } catch (const std::invalid_argument&) {
    fail(key, "expected a number, got '" + v + "'");
  } catch (const std::out_of_range&) {
    fail(key, "number out of range: '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  const int i = int(x);
  if (double(i) != x) fail(key, "expected an integer, got '" + v + "'");
  return i;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::istringstream is(v);
  std::string tok;
  while (is >> tok) out.push_back(to_double(key, tok));
  return out;
}

void validate(const RunConfig& c) {
  if (c.profile_kind != "circle" && c.profile_kind != "star" &&
      c.profile_kind != "interval")
    fail("profile.kind", "must be circle, star or interval");
  if (c.profile_kind == "circle" && !(c.a > 0.0))
    fail("profile.a", "must be > 0");
  if (c.profile_kind == "circle" && !(c.center_r - c.a > 0.0))
    fail("profile.a", "circle touches the rotation axis (center_r <= a)");
  if (c.profile_kind == "interval") {
    if (!(c.r0 > 0.0)) fail("profile.r0", "must be > 0");
    if (!(c.r1 > c.r0)) fail("profile.r1", "must be > profile.r0");
    if (c.n < 8) fail("grid.n", "must be >= 8");
  } else {
    if (c.ns < 8) fail("grid.ns", "must be >= 8");
    if (c.nphi < 8 || c.nphi % 2 != 0) fail("grid.nphi", "must be even and >= 8");
  }
  if (c.preset != "const" && c.preset != "radial_cos" && c.preset != "wrap" &&
      c.preset != "table")
    fail("ic.preset", "must be const, radial_cos, wrap or table");
  if (c.preset == "radial_cos" && c.wavenumber < 1)
    fail("ic.k", "must be >= 1");
  if (c.preset == "table" && c.table_path.empty())
    fail("ic.table", "path required for the table preset");
  if (!(c.stepper.sigma > 0.0) || c.stepper.sigma > 0.5)
    fail("stepper.sigma", "must be in (0, 0.5]");
  if (c.scheme != "euler" && c.scheme != "rk4")
    fail("stepper.scheme", "must be euler or rk4");
  if (!(c.stepper.t_final > 0.0)) fail("stepper.t_final", "must be > 0");
  if (!(c.stepper.vtilde_cap > 1.0)) fail("stepper.vtilde_cap", "must be > 1");
  if (!(c.stepper.osc_tol > 0.0)) fail("stepper.osc_tol", "must be > 0");
  if (c.cadence < 1) fail("diag.cadence", "must be >= 1");
  for (std::size_t i = 1; i < c.level_ks.size(); ++i)
    if (!(c.level_ks[i] > c.level_ks[i - 1]))
      fail("diag.levels", "must be strictly increasing");
  if (c.snapshot_interval < 0) fail("output.snapshot_interval", "must be >= 0");
  if (!(c.mms_t > 0.0)) fail("mms.t", "must be > 0");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "line " << lineno << ": expected 'key = value'";
      throw std::invalid_argument(os.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (val.empty()) fail(key, "empty value");

    if (key == "profile.kind") c.profile_kind = val;
    else if (key == "profile.center_y") c.center_y = to_double(key, val);
    else if (key == "profile.center_r") c.center_r = to_double(key, val);
    else if (key == "profile.a") c.a = to_double(key, val);
    else if (key == "profile.cos_coeffs") c.cos_coeffs = to_list(key, val);
    else if (key == "profile.sin_coeffs") c.sin_coeffs = to_list(key, val);
    else if (key == "profile.r0") c.r0 = to_double(key, val);
    else if (key == "profile.r1") c.r1 = to_double(key, val);
    else if (key == "grid.n") c.n = to_int(key, val);
    else if (key == "grid.ns") c.ns = to_int(key, val);
    else if (key == "grid.nphi") c.nphi = to_int(key, val);
    else if (key == "ic.preset") c.preset = val;
    else if (key == "ic.amplitude") c.amplitude = to_double(key, val);
    else if (key == "ic.k") c.wavenumber = to_int(key, val);
    else if (key == "ic.table") c.table_path = val;
    else if (key == "stepper.sigma") c.stepper.sigma = to_double(key, val);
    else if (key == "stepper.scheme") c.scheme = val;
    else if (key == "stepper.t_final") c.stepper.t_final = to_double(key, val);
    else if (key == "stepper.osc_tol") c.stepper.osc_tol = to_double(key, val);
    else if (key == "stepper.vtilde_cap") c.stepper.vtilde_cap = to_double(key, val);
    else if (key == "diag.cadence") c.cadence = to_int(key, val);
    else if (key == "diag.levels") c.level_ks = to_list(key, val);
    else if (key == "output.dir") c.out_dir = val;
    else if (key == "output.snapshot_interval") c.snapshot_interval = to_int(key, val);
    else if (key == "mms.t") c.mms_t = to_double(key, val);
    else if (key == "mms.order_min") c.order_min = to_double(key, val);
    else if (key == "mms.order_max") c.order_max = to_double(key, val);
    else throw std::invalid_argument("unknown key: " + key);
  }
  c.stepper.rk4 = (c.scheme == "rk4");
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

std::string echo_config(const RunConfig& c) {
  std::ostringstream os;
  auto num = [](double x) { return format_double(x); };
  os << "profile.kind = " << c.profile_kind << "\n";
  if (c.profile_kind == "interval") {
    os << "profile.r0 = " << num(c.r0) << "\n";
    os << "profile.r1 = " << num(c.r1) << "\n";
    os << "grid.n = " << c.n << "\n";
  } else {
    os << "profile.center_y = " << num(c.center_y) << "\n";
    os << "profile.center_r = " << num(c.center_r) << "\n";
    if (c.profile_kind == "circle") {
      os << "profile.a = " << num(c.a) << "\n";
    } else {
      os << "profile.cos_coeffs =";
      for (double x : c.cos_coeffs) os << " " << num(x);
      os << "\n";
      if (!c.sin_coeffs.empty()) {
        os << "profile.sin_coeffs =";
        for (double x : c.sin_coeffs) os << " " << num(x);
        os << "\n";
      }
    }
    os << "grid.ns = " << c.ns << "\n";
    os << "grid.nphi = " << c.nphi << "\n";
  }
  os << "ic.preset = " << c.preset << "\n";
  if (c.preset != "table") os << "ic.amplitude = " << num(c.amplitude) << "\n";
  if (c.preset == "radial_cos") os << "ic.k = " << c.wavenumber << "\n";
  if (c.preset == "table") os << "ic.table = " << c.table_path << "\n";
  os << "stepper.sigma = " << num(c.stepper.sigma) << "\n";
  os << "stepper.scheme = " << c.scheme << "\n";
  os << "stepper.t_final = " << num(c.stepper.t_final) << "\n";
  os << "stepper.osc_tol = " << num(c.stepper.osc_tol) << "\n";
  os << "stepper.vtilde_cap = " << num(c.stepper.vtilde_cap) << "\n";
  os << "diag.cadence = " << c.cadence << "\n";
  os << "diag.levels =";
  for (double x : c.level_ks) os << " " << num(x);
  os << "\n";
  os << "output.dir = " << c.out_dir << "\n";
  os << "output.snapshot_interval = " << c.snapshot_interval << "\n";
  os << "mms.t = " << num(c.mms_t) << "\n";
  if (c.order_min != 0.0) os << "mms.order_min = " << num(c.order_min) << "\n";
  if (c.order_max != 0.0) os << "mms.order_max = " << num(c.order_max) << "\n";
  return os.str();
}

std::string config_hash(const RunConfig& c) {
  const std::string text = echo_config(c);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = hex[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

ProfileCurve make_profile(const RunConfig& c) {
  if (c.profile_kind == "interval") return make_interval_profile(c.r0, c.r1);
  if (c.profile_kind == "circle")
    return make_circle_profile({c.center_y, c.center_r}, c.a);
  return make_star_profile({c.center_y, c.center_r}, c.cos_coeffs, c.sin_coeffs);
}

GridPtr make_grid(const RunConfig& c) {
  const ProfileCurve p = make_profile(c);
  return c.dim() == 1 ? build_grid_1d(p, c.n) : build_grid(p, c.ns, c.nphi);
}

GraphState make_initial_state(const RunConfig& c, GridPtr grid) {
  GraphState state(std::move(grid));
  const DomainGrid& g = *state.grid;

  // Radial coordinate normalised to [0, 1]: (r - r0)/(r1 - r0) on the
  // interval, the map parameter s on the disk.
  auto xi = [&](int i) {
    if (g.dim == 1) return (g.r[i] - g.profile.r0) / (g.profile.r1 - g.profile.r0);
    const double py = g.xy[i] - g.profile.center.y;
    const double pr = g.xr[i] - g.profile.center.r;
    const double phi = std::atan2(pr, py);
    return std::sqrt(py * py + pr * pr) / g.profile.rho(phi);
  };

  if (c.preset == "const") {
    for (int i = 0; i < g.size(); ++i) state.u[i] = c.amplitude;
  } else if (c.preset == "radial_cos") {
    for (int i = 0; i < g.size(); ++i)
      state.u[i] = c.amplitude * std::cos(double(c.wavenumber) * M_PI * xi(i));
  } else if (c.preset == "wrap") {
    for (int i = 0; i < g.size(); ++i)
      state.u[i] = c.amplitude * 0.5 * (1.0 + std::cos(M_PI * xi(i)));
  } else {  // table
    std::ifstream in(c.table_path);
    if (!in) throw std::runtime_error("cannot open table file: " + c.table_path);
    for (int i = 0; i < g.size(); ++i)
      if (!(in >> state.u[i]))
        throw std::runtime_error("table file too short: " + c.table_path);
  }
  apply_neumann(state);
  return state;
}

}  // namespace torusflow
