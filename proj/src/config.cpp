#include "decaylab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "decaylab/rate_analysis.hpp"

namespace decaylab {

std::string to_string(ModelKind m) {
  switch (m) {
    case ModelKind::Linear: return "linear";
    case ModelKind::QG: return "qg";
    case ModelKind::Compressible: return "compressible";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(x))
    throw ConfigError("key '" + key + "': not a number: '" + v + "'");
  return x;
}

long long to_int(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError("key '" + key + "': not an integer: '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("key '" + key + "': not a boolean: '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

std::string list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt17(v[i]);
  return s;
}

}  // namespace

std::pair<double, double> parse_window(const std::string& text) {
  const auto v = to_list("window", text);
  if (v.size() != 2) throw ConfigError("window must be LO,HI");
  if (!(v[0] < v[1])) throw ConfigError("window needs LO < HI");
  return {v[0], v[1]};
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find_first_of("#;")));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": bad section");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "experiment" && section != "initial_data" && section != "fit")
        throw ConfigError("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError("key '" + key + "' outside any section");
    if (seen[section + "." + key]++) throw ConfigError("duplicate key '" + key + "'");
    DatumSpec& d = c.datum;
    if (section == "experiment") {
      if (key == "model") {
        if (val == "linear") c.model = ModelKind::Linear;
        else if (val == "qg") c.model = ModelKind::QG;
        else if (val == "compressible") c.model = ModelKind::Compressible;
        else throw ConfigError("unknown model '" + val + "'");
      } else if (key == "dim") c.dim = static_cast<int>(to_int(key, val));
      else if (key == "points") c.points = static_cast<int>(to_int(key, val));
      else if (key == "box_length") c.box_length = to_double(key, val);
      else if (key == "box_periods") c.box_length = 2.0 * M_PI * to_double(key, val);
      else if (key == "symbol") c.symbol = val;
      else if (key == "alpha") c.alpha = to_double(key, val);
      else if (key == "kappa") c.kappa = to_double(key, val);
      else if (key == "epsilon") c.epsilon = to_double(key, val);
      else if (key == "components") c.components = static_cast<int>(to_int(key, val));
      else if (key == "dt") c.dt = to_double(key, val);
      else if (key == "t_end") c.t_end = to_double(key, val);
      else if (key == "cfl_safety") c.cfl_safety = to_double(key, val);
      else if (key == "sample_t0") c.sample_t0 = to_double(key, val);
      else if (key == "sample_growth") c.sample_growth = to_double(key, val);
      else if (key == "s_values") c.s_values = to_list(key, val);
      else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_int(key, val));
      else if (key == "checkpoint_every") c.checkpoint_every = static_cast<int>(to_int(key, val));
      else throw ConfigError("unknown key '" + key + "' in [experiment]");
    } else if (section == "initial_data") {
      if (key == "kind") {
        try {
          d.kind = datum_kind_from_string(val);
        } catch (const std::exception& e) {
          throw ConfigError(e.what());
        }
      } else if (key == "q") d.q = to_double(key, val);
      else if (key == "cutoff") d.cutoff = to_double(key, val);
      else if (key == "width") d.width = to_double(key, val);
      else if (key == "inner") d.inner = to_double(key, val);
      else if (key == "outer") d.outer = to_double(key, val);
      else if (key == "amplitude") d.amplitude = to_double(key, val);
      else if (key == "mean_zero") d.mean_zero = to_bool(key, val);
      else if (key == "profile") {
        if (val == "sharp") d.profile = CutoffProfile::Sharp;
        else if (val == "smooth") d.profile = CutoffProfile::Smooth;
        else if (val == "kernel") d.profile = CutoffProfile::Kernel;
        else throw ConfigError("unknown profile '" + val + "'");
      } else if (key == "kernel_exponent") d.kernel_exponent = to_double(key, val);
      else if (key == "longitudinal_weight") d.longitudinal_weight = to_double(key, val);
      else throw ConfigError("unknown key '" + key + "' in [initial_data]");
    } else {
      if (key == "window") c.fit_window = parse_window(val);
      else if (key == "tol") c.tol = to_double(key, val);
      else if (key == "r_star") {
        if (val == "auto") c.r_star.reset();
        else c.r_star = to_double(key, val);
      } else throw ConfigError("unknown key '" + key + "' in [fit]");
    }
  }
  c.datum.seed = c.seed;
  c.datum.components = c.components;
  return c;
}

std::string serialize_config(const ExperimentConfig& c) {
  const DatumSpec& d = c.datum;
  std::ostringstream o;
  o << "[experiment]\n"
    << "model = " << to_string(c.model) << "\n"
    << "dim = " << c.dim << "\n"
    << "points = " << c.points << "\n"
    << "box_length = " << fmt17(c.box_length) << "\n"
    << "symbol = " << c.symbol << "\n"
    << "alpha = " << fmt17(c.alpha) << "\n"
    << "kappa = " << fmt17(c.kappa) << "\n"
    << "epsilon = " << fmt17(c.epsilon) << "\n"
    << "components = " << c.components << "\n"
    << "dt = " << fmt17(c.dt) << "\n"
    << "t_end = " << fmt17(c.t_end) << "\n"
    << "cfl_safety = " << fmt17(c.cfl_safety) << "\n"
    << "sample_t0 = " << fmt17(c.sample_t0) << "\n"
    << "sample_growth = " << fmt17(c.sample_growth) << "\n"
    << "s_values = " << list(c.s_values) << "\n"
    << "seed = " << c.seed << "\n"
    << "checkpoint_every = " << c.checkpoint_every << "\n"
    << "\n[initial_data]\n"
    << "kind = " << to_string(d.kind) << "\n"
    << "q = " << fmt17(d.q) << "\n"
    << "cutoff = " << fmt17(d.cutoff) << "\n"
    << "width = " << fmt17(d.width) << "\n"
    << "inner = " << fmt17(d.inner) << "\n"
    << "outer = " << fmt17(d.outer) << "\n"
    << "amplitude = " << fmt17(d.amplitude) << "\n"
    << "mean_zero = " << (d.mean_zero ? "true" : "false") << "\n"
    << "profile = "
    << (d.profile == CutoffProfile::Smooth ? "smooth"
        : d.profile == CutoffProfile::Kernel ? "kernel"
                                             : "sharp")
    << "\n"
    << "kernel_exponent = " << fmt17(d.kernel_exponent) << "\n"
    << "longitudinal_weight = " << fmt17(d.longitudinal_weight) << "\n"
    << "\n[fit]\n";
  if (c.fit_window)
    o << "window = " << fmt17(c.fit_window->first) << "," << fmt17(c.fit_window->second) << "\n";
  if (c.tol) o << "tol = " << fmt17(*c.tol) << "\n";
  o << "r_star = " << (c.r_star ? fmt17(*c.r_star) : "auto") << "\n";
  return o.str();
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (!(alpha > 0.0 && alpha <= 1.0)) fail("alpha out of range (0,1]");
  if (dim != 2 && dim != 3) fail("dim must be 2 or 3");
  if (points < 8 || (points & (points - 1)) != 0) fail("points must be a power of two >= 8");
  if (!(box_length > 0.0)) fail("box_length must be > 0");
  if (!(kappa > 0.0)) fail("kappa must be > 0");
  if (!(epsilon > 0.0)) fail("epsilon must be > 0");
  if (!(dt > 0.0)) fail("dt must be > 0");
  if (!(t_end > 0.0)) fail("t_end must be > 0");
  if (!(cfl_safety > 0.0)) fail("cfl_safety must be > 0");
  if (!(sample_t0 > 0.0)) fail("sample_t0 must be > 0");
  if (!(sample_growth > 1.0)) fail("sample_growth must be > 1");
  if (checkpoint_every < 0) fail("checkpoint_every must be >= 0");
  for (double s : s_values)
    if (!(s >= 0.0)) fail("s_values must be >= 0");
  if (tol && !(*tol >= 0.0 && *tol < 1.0)) fail("tol must lie in [0,1)");
  switch (model) {
    case ModelKind::Linear:
      if (symbol == "compressible_stokes") {
        if (alpha != 1.0) fail("compressible_stokes has alpha = 1");
        if (components != dim) fail("compressible_stokes needs components = dim");
      } else if (symbol != "fractional_laplacian") {
        fail("unknown symbol '" + symbol + "'");
      }
      if (components < 1 || components > 3) fail("components must be 1..3");
      break;
    case ModelKind::QG:
      if (dim != 2) fail("qg model needs dim = 2");
      if (components != 1) fail("qg model needs components = 1");
      break;
    case ModelKind::Compressible:
      if (dim != 3) fail("compressible model needs dim = 3");
      if (components != 3) fail("compressible model needs components = 3");
      if (alpha != 1.0) fail("compressible model has alpha = 1");
      break;
  }
}

std::vector<double> ExperimentConfig::sample_times() const {
  std::vector<double> t{0.0};
  for (double x : geometric_times(sample_t0, sample_growth, t_end))
    if (x > t.back()) t.push_back(x);
  if (t.back() < t_end) t.push_back(t_end);
  return t;
}

std::string config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : serialize_config(cfg)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace decaylab
