#include "motslab/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "motslab/errors.hpp"

namespace motslab {

namespace pt = boost::property_tree;

namespace {

const char* kDefault = R"([regime]
a = 1e4
kappa = 0.6
y = 10
t = 0.3
gamma = 0.1
lambda = 0.85
lambda_prime = 0.88
c1 = 20
c2_zeta = 20
c2_unknown_bound = 1.0
o1 = 0.05
d0 = 20
f0 = 100
C_eps = 1.0

[grid]
n_theta = 32
n_phi = 64
n_ramp = 64
n_window = 96
n_transition = 64
n_tail = 32
integrator_steps = 2048
cone_store_every = 64
trapped_n_u = 24
trapped_n_ubar = 16

[profile]
zero_width = 2e-4
zero_phi = 1.0
norm_bound = 5e19
norm_j_max = 2
norm_i_max = 2

[solver]
seed = 20240521
beta = 1.0
newton_tol = 1e-10
linear_tol = 1e-10
max_newton = 50
dlambda_init = 0.1
dlambda_min = 1e-4
family = G
c1_threshold = 0.1
c2_fraction = 0.1
w12_fraction = 0.05
uniqueness_guesses = 0

[horizon]
n_window = 17
n_transition = 6
n_tail = 6
spacelike_samples = 64

[toggles]
penrose_coupling = true
disc_hypothesis = false
envelope_multiplier = 1.0

[sweep]
kappa = 0.55, 0.6, 0.7
y = 4, 6, 8, 10, 12
t = 0.1, 0.3
ubar_position = 0.0, 0.5, 0.9

[output]
dir = out
)";

std::vector<double> parse_list(const std::string& s) {
  std::vector<std::string> parts;
  boost::split(parts, s, boost::is_any_of(","));
  std::vector<double> out;
  for (auto& p : parts) {
    boost::trim(p);
    if (p.empty()) continue;
    try {
      out.push_back(std::stod(p));
    } catch (const std::exception&) {
      throw ConfigError("config: bad number '" + p + "' in list");
    }
  }
  return out;
}

template <class T>
T need(const pt::ptree& t, const std::string& key) {
  try {
    return t.get<T>(key);
  } catch (const pt::ptree_bad_path&) {
    throw ConfigError("config: missing key '" + key + "'");
  } catch (const pt::ptree_bad_data&) {
    throw ConfigError("config: bad value for '" + key + "'");
  }
}

template <class T>
T opt(const pt::ptree& t, const std::string& key, T fallback) {
  try {
    return t.get<T>(key, fallback);
  } catch (const pt::ptree_bad_data&) {
    throw ConfigError("config: bad value for '" + key + "'");
  }
}

bool parse_bool(const pt::ptree& t, const std::string& key, bool fallback) {
  auto v = t.get_optional<std::string>(key);
  if (!v) return fallback;
  std::string s = boost::to_lower_copy(boost::trim_copy(*v));
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError("config: bad boolean for '" + key + "'");
}

RunConfig from_tree(const pt::ptree& t) {
  for (const char* sec : {"regime", "grid", "solver", "toggles", "output"})
    if (!t.get_child_optional(sec)) throw ConfigError(std::string("config: missing section [") + sec + "]");
  RunConfig c;
  auto& r = c.regime;
  r.a = need<double>(t, "regime.a");
  r.kappa = need<double>(t, "regime.kappa");
  r.y = need<double>(t, "regime.y");
  r.t = need<double>(t, "regime.t");
  r.gamma = need<double>(t, "regime.gamma");
  r.lambda_lo = need<double>(t, "regime.lambda");
  r.lambda_hi = need<double>(t, "regime.lambda_prime");
  r.c1 = opt<double>(t, "regime.c1", r.c1);
  r.c2_zeta = opt<double>(t, "regime.c2_zeta", r.c2_zeta);
  r.c2_unknown_bound = opt<double>(t, "regime.c2_unknown_bound", r.c2_unknown_bound);
  r.o1 = opt<double>(t, "regime.o1", r.o1);
  r.d0 = opt<double>(t, "regime.d0", r.d0);
  r.f0 = opt<double>(t, "regime.f0", r.f0);
  r.C_eps = opt<double>(t, "regime.C_eps", r.C_eps);
  r.penrose_coupling = parse_bool(t, "toggles.penrose_coupling", true);
  auto mu = t.get_optional<std::string>("regime.mu");
  if (mu) r.mu = need<double>(t, "regime.mu");
  else if (r.penrose_coupling) r.mu = RegimeParameters::coupled_mu(r.kappa, r.y, r.t);
  else throw ConfigError("config: regime.mu is required when the Penrose coupling is off");

  auto& p = c.profile;
  p.n_theta = opt<int>(t, "grid.n_theta", p.n_theta);
  p.n_phi = opt<int>(t, "grid.n_phi", p.n_phi);
  p.n_ramp = opt<int>(t, "grid.n_ramp", p.n_ramp);
  p.n_window = opt<int>(t, "grid.n_window", p.n_window);
  p.n_transition = opt<int>(t, "grid.n_transition", p.n_transition);
  p.n_tail = opt<int>(t, "grid.n_tail", p.n_tail);
  p.zero_width = opt<double>(t, "profile.zero_width", p.zero_width);
  p.zero_phi = opt<double>(t, "profile.zero_phi", p.zero_phi);
  c.integrator_steps = opt<int>(t, "grid.integrator_steps", c.integrator_steps);
  c.cone_store_every = opt<int>(t, "grid.cone_store_every", c.cone_store_every);
  c.trapped_n_u = opt<int>(t, "grid.trapped_n_u", c.trapped_n_u);
  c.trapped_n_ubar = opt<int>(t, "grid.trapped_n_ubar", c.trapped_n_ubar);
  c.norm_bound = opt<double>(t, "profile.norm_bound", c.norm_bound);
  c.norm_j_max = opt<int>(t, "profile.norm_j_max", c.norm_j_max);
  c.norm_i_max = opt<int>(t, "profile.norm_i_max", c.norm_i_max);

  if (!t.get_optional<std::string>("solver.seed")) throw ConfigError("config: solver.seed is mandatory");
  c.perturbation.seed = need<std::uint64_t>(t, "solver.seed");
  c.perturbation.beta = opt<double>(t, "solver.beta", c.perturbation.beta);
  c.perturbation.envelope_multiplier = opt<double>(t, "toggles.envelope_multiplier", 1.0);
  auto& s = c.solver;
  s.newton_tol = opt<double>(t, "solver.newton_tol", s.newton_tol);
  s.linear_tol = opt<double>(t, "solver.linear_tol", s.linear_tol);
  s.max_newton = opt<int>(t, "solver.max_newton", s.max_newton);
  s.dlambda_init = opt<double>(t, "solver.dlambda_init", s.dlambda_init);
  s.dlambda_min = opt<double>(t, "solver.dlambda_min", s.dlambda_min);
  const std::string fam = boost::to_upper_copy(opt<std::string>(t, "solver.family", "G"));
  if (fam == "F") s.family = Family::F;
  else if (fam == "G") s.family = Family::G;
  else if (fam == "H") s.family = Family::H;
  else throw ConfigError("config: solver.family must be F, G or H");
  c.apriori.c1_threshold = opt<double>(t, "solver.c1_threshold", c.apriori.c1_threshold);
  c.apriori.c2_fraction = opt<double>(t, "solver.c2_fraction", c.apriori.c2_fraction);
  c.apriori.w12_fraction = opt<double>(t, "solver.w12_fraction", c.apriori.w12_fraction);
  c.uniqueness_guesses = opt<int>(t, "solver.uniqueness_guesses", c.uniqueness_guesses);

  c.slices.n_window = opt<int>(t, "horizon.n_window", c.slices.n_window);
  c.slices.n_transition = opt<int>(t, "horizon.n_transition", c.slices.n_transition);
  c.slices.n_tail = opt<int>(t, "horizon.n_tail", c.slices.n_tail);
  c.spacelike_samples = opt<int>(t, "horizon.spacelike_samples", c.spacelike_samples);
  c.disc_hypothesis = parse_bool(t, "toggles.disc_hypothesis", false);

  c.sweep.kappa = parse_list(opt<std::string>(t, "sweep.kappa", std::to_string(r.kappa)));
  c.sweep.y = parse_list(opt<std::string>(t, "sweep.y", std::to_string(r.y)));
  c.sweep.t = parse_list(opt<std::string>(t, "sweep.t", std::to_string(r.t)));
  c.sweep.mu = parse_list(opt<std::string>(t, "sweep.mu", std::to_string(r.mu)));
  c.sweep.ubar_position = parse_list(opt<std::string>(t, "sweep.ubar_position", "0"));

  c.output_dir = need<std::string>(t, "output.dir");
  return c;
}

void apply_overrides(pt::ptree& t, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    const auto dot = o.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
      throw ConfigError("override '" + o + "' is not of the form section.key=value");
    t.put(boost::trim_copy(o.substr(0, eq)), boost::trim_copy(o.substr(eq + 1)));
  }
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  pt::ptree t;
  std::istringstream is(text);
  try {
    pt::read_ini(is, t);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  apply_overrides(t, overrides);
  return from_tree(t);
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str(), overrides);
}

std::string default_config_text() { return kDefault; }

nlohmann::json to_json(const RunConfig& c) {
  return {{"regime", to_json(c.regime)},
          {"profile", to_json(c.profile)},
          {"integrator_steps", c.integrator_steps},
          {"cone_store_every", c.cone_store_every},
          {"trapped_lattice", {c.trapped_n_u, c.trapped_n_ubar}},
          {"solver", {{"newton_tol", c.solver.newton_tol}, {"linear_tol", c.solver.linear_tol},
                      {"max_newton", c.solver.max_newton}, {"dlambda_init", c.solver.dlambda_init},
                      {"dlambda_min", c.solver.dlambda_min}, {"family", to_string(c.solver.family)},
                      {"seed", c.perturbation.seed}, {"beta", c.perturbation.beta},
                      {"uniqueness_guesses", c.uniqueness_guesses}}},
          {"apriori", {{"c1_threshold", c.apriori.c1_threshold}, {"c2_fraction", c.apriori.c2_fraction},
                       {"w12_fraction", c.apriori.w12_fraction}}},
          {"slices", {c.slices.n_window, c.slices.n_transition, c.slices.n_tail}},
          {"spacelike_samples", c.spacelike_samples},
          {"toggles", {{"disc_hypothesis", c.disc_hypothesis},
                       {"envelope_multiplier", c.perturbation.envelope_multiplier}}},
          {"norm", {{"bound", c.norm_bound}, {"j_max", c.norm_j_max}, {"i_max", c.norm_i_max}}},
          {"sweep", {{"kappa", c.sweep.kappa}, {"mu", c.sweep.mu}, {"y", c.sweep.y}, {"t", c.sweep.t},
                     {"ubar_position", c.sweep.ubar_position}}}};
}

std::string config_hash(const RunConfig& c) {
  const std::string s = to_json(c).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace motslab
