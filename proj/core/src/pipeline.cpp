#include "motslab/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "motslab/container.hpp"
#include "motslab/horizon.hpp"
#include "motslab/mots.hpp"
#include "motslab/penrose.hpp"
#include "motslab/shear.hpp"
#include "motslab/svg.hpp"
#include "motslab/transport.hpp"

namespace motslab {

namespace {

using nlohmann::json;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_json(const fs::path& p, const json& j) { write_text_atomic(p.string(), j.dump(2) + "\n"); }

json read_json(const fs::path& p, const std::string& producer) {
  std::ifstream is(p);
  if (!is) throw DependencyError("missing " + p.filename().string() + "; run " + producer + " first", producer);
  try {
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw DependencyError("unreadable " + p.filename().string() + ": " + e.what(), producer);
  }
}

void check_hash(const json& header, const std::string& hash, const fs::path& p, const std::string& producer) {
  if (header.value("config_hash", std::string()) != hash)
    throw DependencyError(p.filename().string() + " was produced from a different config; rerun " + producer,
                          producer);
}

Regime regime_or_fail(const RunConfig& cfg) {
  const auto v = validate(cfg.regime);
  if (!v.ok()) {
    json f = json::array();
    for (const auto& c : v.checks)
      if (!c.pass) f.push_back({{"name", c.name}, {"statement", c.statement}, {"slack", c.slack}});
    throw ConstraintFailure("regime parameters violate " + std::to_string(f.size()) + " constraint(s)", f);
  }
  return make_regime(cfg.regime);
}

json derived_json(const Regime& r) {
  const auto& d = r.derived;
  return {{"b", d.b},
          {"delta", d.delta},
          {"m0", d.m0},
          {"amp", d.amp},
          {"ubar_gamma", d.ubar_gamma},
          {"ubar_lambda", d.ubar_lambda},
          {"ubar_lambda_hi", d.ubar_lambda_hi},
          {"ubar_end", d.ubar_end},
          {"u_trapped", d.u_trapped},
          {"eps_glue", d.eps_glue},
          {"mu", r.params.mu}};
}

json failed(const CheckList& l) {
  json f = json::array();
  for (const auto& c : l.checks)
    if (!c.pass) f.push_back({{"name", c.name}, {"measured", c.measured}, {"threshold", c.threshold}});
  return f;
}

ShearProfile load_profile(const fs::path& out, const std::string& hash) {
  const fs::path p = out / "profile.mlb";
  if (!fs::exists(p)) throw DependencyError("missing profile.mlb; run gen-data first", "gen-data");
  Container c;
  try {
    c = read_container(p.string());
  } catch (const Error& e) {
    throw DependencyError(std::string("unreadable profile.mlb: ") + e.what(), "gen-data");
  }
  check_hash(c.header, hash, p, "gen-data");
  return profile_from_container(c);
}

fs::path slice_path(const fs::path& out, std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "slice_%03zu.mlb", k);
  return out / "mots" / buf;
}

std::vector<MotsSolution> load_slices(const fs::path& out, const std::string& hash) {
  const json bounds = read_json(out / "mots_bounds.json", "find-mots");
  check_hash(bounds, hash, out / "mots_bounds.json", "find-mots");
  std::vector<MotsSolution> s;
  const std::size_t n = bounds.at("slices").size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto p = slice_path(out, k);
    if (!fs::exists(p)) throw DependencyError("missing " + p.string() + "; run find-mots first", "find-mots");
    const auto c = read_container(p.string());
    check_hash(c.header, hash, p, "find-mots");
    s.push_back(solution_from_container(c));
  }
  return s;
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void stamp(const fs::path& out, const std::string& sub, const std::string& hash, const std::string& start,
           int code) {
  json meta = json::object();
  const fs::path p = out / "run_metadata.json";
  if (fs::exists(p)) {
    std::ifstream is(p);
    meta = json::parse(is, nullptr, false);
    if (meta.is_discarded() || !meta.is_object()) meta = json::object();
  }
  meta[sub] = {{"started", start}, {"finished", utc_now()}, {"config_hash", hash}, {"exit_code", code}};
  write_json(p, meta);
}

}  // namespace

void gen_data(const RunConfig& cfg, const fs::path& out) {
  const std::string hash = config_hash(cfg);
  const Regime regime = regime_or_fail(cfg);
  fs::create_directories(out);
  const ShearProfile profile = build_profile(regime, cfg.profile);
  const CheckList checks = verify_profile(profile);
  const NormResult norm = scale_critical_norm(profile, cfg.norm_j_max, cfg.norm_i_max, cfg.norm_bound);

  Container c = to_container(profile);
  c.header["config_hash"] = hash;
  write_container(c, (out / "profile.mlb").string());

  std::ostringstream csv;
  csv << "# config_hash=" << hash << "\n# I(ubar) at the initial zero node and angular extremes\n";
  csv << "ubar,ubar_over_delta,I_min,I_max,amp2_min,amp2_max\n";
  for (std::size_t k = 0; k < profile.n_ubar(); ++k) {
    const auto I = profile.slice(profile.I, k);
    const auto a2 = profile.slice(profile.amp2, k);
    csv << g17(profile.ubar[k]) << ',' << g17(profile.ubar[k] / regime.derived.delta) << ',' << g17(I.min()) << ','
        << g17(I.max()) << ',' << g17(a2.min()) << ',' << g17(a2.max()) << '\n';
  }
  write_text_atomic((out / "I_slices.csv").string(), csv.str());

  json f = failed(checks);
  if (!norm.pass)
    f.push_back({{"name", "scale_critical_norm"}, {"measured", norm.value}, {"threshold", norm.bound}});
  const json rep = {{"config_hash", hash},
                    {"derived", derived_json(regime)},
                    {"regime_checks", [&] {
                       json a = json::array();
                       for (const auto& ch : validate(cfg.regime).checks)
                         a.push_back({{"name", ch.name}, {"slack", ch.slack}, {"pass", ch.pass}});
                       return a;
                     }()},
                    {"profile_checks", to_json(checks)},
                    {"scale_critical_norm",
                     {{"value", norm.value}, {"bound", norm.bound}, {"ubar_at_max", norm.ubar_at_max},
                      {"j_max", cfg.norm_j_max}, {"i_max", cfg.norm_i_max}, {"pass", norm.pass}}},
                    {"all_pass", f.empty()}};
  write_json(out / "constraint_report.json", rep);
  if (!f.empty()) throw ConstraintFailure("shear profile failed " + std::to_string(f.size()) + " check(s)", f);
}

void evolve(const RunConfig& cfg, const fs::path& out) {
  const std::string hash = config_hash(cfg);
  const ShearProfile profile = load_profile(out, hash);
  const Regime& regime = profile.regime;
  const auto model = profile.model();
  const auto& d = regime.derived;

  ConeOptions co;
  co.steps = cfg.integrator_steps;
  co.store_every = cfg.cone_store_every;
  co.estimate_error = true;
  const ConeState cone = integrate_data_cone(*model, profile.grid, co, d.delta);

  std::ostringstream csv;
  csv << "# config_hash=" << hash << "\nubar,ubar_over_delta,trchi_min,trchi_max\n";
  for (std::size_t k = 0; k < cone.ubar.size(); ++k)
    csv << g17(cone.ubar[k]) << ',' << g17(cone.ubar[k] / d.delta) << ',' << g17(cone.trchi[k].min()) << ','
        << g17(cone.trchi[k].max()) << '\n';
  write_text_atomic((out / "cone.csv").string(), csv.str());

  SlabModel slab{regime, model.get(), profile.grid, cfg.perturbation.envelope_multiplier};
  const double u_lo = d.u_trapped, u_hi = 1.0;
  std::map<std::string, int> counts;
  std::ostringstream map;
  map << "# config_hash=" << hash << "\ni,j,u,ubar,ubar_over_delta,status\n";
  for (int j = 0; j < cfg.trapped_n_ubar; ++j) {
    const double ub = d.delta * (j + 1) / cfg.trapped_n_ubar;
    for (int i = 0; i < cfg.trapped_n_u; ++i) {
      const double s = cfg.trapped_n_u > 1 ? static_cast<double>(i) / (cfg.trapped_n_u - 1) : 0.0;
      const double u = std::exp(std::log(u_lo) + s * (std::log(u_hi) - std::log(u_lo)));
      const std::string st = to_string(detect_trapped(slab, std::min(u, u_hi), ub));
      ++counts[st];
      map << i << ',' << j << ',' << g17(u) << ',' << g17(ub) << ',' << g17(ub / d.delta) << ',' << st << '\n';
    }
  }
  write_text_atomic((out / "trapped_map.csv").string(), map.str());

  const json rep = {{"config_hash", hash},
                    {"steps", co.steps},
                    {"richardson_error", cone.error_estimate},
                    {"trchi_final", {{"min", cone.trchi.back().min()}, {"max", cone.trchi.back().max()}}},
                    {"trapped_lattice", {{"n_u", cfg.trapped_n_u}, {"n_ubar", cfg.trapped_n_ubar},
                                         {"u_range", {u_lo, u_hi}}, {"counts", counts}}},
                    {"corner_status", to_string(detect_trapped(slab, d.u_trapped, d.delta))}};
  write_json(out / "evolve.json", rep);
}

void find_mots(const RunConfig& cfg, const fs::path& out) {
  const std::string hash = config_hash(cfg);
  const ShearProfile profile = load_profile(out, hash);
  const Regime& regime = profile.regime;
  const auto model = profile.model();
  const auto ubars = slice_grid(regime, cfg.slices);
  fs::create_directories(out / "mots");

  json slices = json::array();
  json fails = json::array();
  std::ostringstream hist;
  hist << "# config_hash=" << hash << "\nslice,iterate,residual\n";
  for (std::size_t k = 0; k < ubars.size(); ++k) {
    const auto pb = make_problem(regime, *model, profile.grid, ubars[k], cfg.perturbation);
    MotsSolution sol;
    try {
      sol = solve_slice(pb, cfg.solver);
    } catch (const NonConvergence& e) {
      throw NonConvergence("slice " + std::to_string(k) + " (ubar/delta = " + g17(ubars[k] / regime.derived.delta) +
                           "): " + e.what());
    }
    const CheckList checks = verify_apriori(sol, pb, regime, cfg.apriori);
    Container c = to_container(sol);
    c.header["config_hash"] = hash;
    c.header["slice"] = k;
    write_container(c, slice_path(out, k).string());
    for (std::size_t i = 0; i < sol.final_residuals.size(); ++i)
      hist << k << ',' << i << ',' << g17(sol.final_residuals[i]) << '\n';

    json e = {{"index", k},
              {"ubar", sol.ubar},
              {"ubar_over_delta", sol.ubar / regime.derived.delta},
              {"residual_norm", sol.residual_norm},
              {"newton_trace", sol.newton_trace},
              {"continuation_steps", sol.lambda_path.size()},
              {"R", {{"min", sol.diagnostics.r_min}, {"max", sol.diagnostics.r_max}}},
              {"grad_max", sol.diagnostics.grad_max},
              {"hess_max", sol.diagnostics.hess_max},
              {"checks", to_json(checks)}};
    if (cfg.uniqueness_guesses > 0) {
      const auto u = uniqueness_probe(pb, sol, regime, cfg.uniqueness_guesses, cfg.perturbation.seed + k, cfg.solver);
      const bool ok = u.converged == u.attempts && u.max_deviation <= 10 * cfg.solver.newton_tol;
      e["uniqueness"] = {{"attempts", u.attempts}, {"converged", u.converged},
                         {"max_deviation", u.max_deviation}, {"pass", ok}};
      if (!ok)
        fails.push_back({{"name", "uniqueness"}, {"slice", k}, {"measured", u.max_deviation},
                         {"threshold", 10 * cfg.solver.newton_tol}});
    }
    for (auto f : failed(checks)) {
      f["slice"] = k;
      fails.push_back(std::move(f));
    }
    slices.push_back(std::move(e));
  }
  write_text_atomic((out / "residual_history.csv").string(), hist.str());
  write_json(out / "mots_bounds.json", {{"config_hash", hash},
                                        {"grid", {profile.grid->n_theta(), profile.grid->n_phi()}},
                                        {"slices", slices},
                                        {"all_pass", fails.empty()}});
  if (!fails.empty()) throw ConstraintFailure("a-priori bounds failed on some slices", fails);
}

void horizon(const RunConfig& cfg, const fs::path& out) {
  const std::string hash = config_hash(cfg);
  const ShearProfile profile = load_profile(out, hash);
  const Regime& regime = profile.regime;
  const auto model = profile.model();
  const auto h = assemble_from(regime, *model, load_slices(out, hash), cfg.disc_hypothesis);
  const json slices = horizon_report(h, regime, cfg.spacelike_samples, cfg.perturbation.seed);

  double tail_max = 0.0;
  for (std::size_t k = 0; k < h.ubar.size(); ++k)
    if (h.ubar[k] > regime.derived.ubar_lambda_hi)
      tail_max = std::max({tail_max, std::abs(h.dR_dubar[k].min()), std::abs(h.dR_dubar[k].max())});
  const double bound = 1e-6 * regime.derived.amp;
  write_json(out / "horizon.json",
             {{"config_hash", hash},
              {"derived", derived_json(regime)},
              {"disc_hypothesis", cfg.disc_hypothesis},
              {"slices", slices},
              {"null_approach", {{"max_dR_dubar", tail_max}, {"bound", bound}, {"pass", tail_max <= bound}}}});
}

void penrose(const RunConfig& cfg, const fs::path& out) {
  const std::string hash = config_hash(cfg);
  const json hz = read_json(out / "horizon.json", "horizon");
  check_hash(hz, hash, out / "horizon.json", "horizon");
  const Regime regime = regime_or_fail(cfg);
  const auto& d = regime.derived;

  json margins = json::array();
  for (const auto& s : hz.at("slices")) {
    const Interval proxy{s.at("radius_proxy").at("lo").get<double>(), s.at("radius_proxy").at("hi").get<double>()};
    const double ub = s.at("ubar").get<double>();
    const auto m = margin(regime, proxy, ub);
    margins.push_back({{"ubar", ub},
                       {"ubar_over_delta", ub / d.delta},
                       {"numeric", {m.numeric.lo, m.numeric.hi}},
                       {"analytic", {m.analytic.lo, m.analytic.hi}},
                       {"center", m.center},
                       {"overlap", m.numeric.lo <= m.analytic.hi && m.analytic.lo <= m.numeric.hi}});
  }
  const auto ef = exponent_form_at_gamma(regime);
  const Interval adm = adm_mass(regime);
  json audit = {{"config_hash", hash},
                {"derived", derived_json(regime)},
                {"adm_mass", {adm.lo, adm.hi}},
                {"margins", margins},
                {"exponent_form",
                 {{"prefactor", ef.prefactor}, {"exp_leading_direct", ef.exp_leading_direct},
                  {"exp_leading_form", ef.exp_leading_form}, {"exp_eps", ef.exp_eps},
                  {"value_direct", ef.value_direct}, {"value_form", ef.value_form},
                  {"exponents_match", ef.exponents_match}, {"values_match", ef.values_match}}},
                {"exponent_ledger", exponent_ledger(cfg.regime)}};
  if (cfg.regime.penrose_coupling) {
    auto cls = [&](double ub) {
      const auto c = classify_regime(cfg.regime, ub);
      return json{{"ubar", ub}, {"lower", to_string(c.lower)}, {"upper", to_string(c.upper)},
                  {"log10_slack", c.log10_slack}, {"reason", c.reason}};
    };
    audit["classification"] = {{"at_ubar_gamma", cls(d.ubar_gamma)},
                               {"near_lambda_delta", cls(d.ubar_lambda - std::pow(d.delta, 1.5))}};
  } else {
    audit["classification"] = "coupling disabled";
  }
  write_json(out / "penrose_audit.json", audit);
  write_text_atomic((out / "sweep.csv").string(), sweep_csv(sweep(cfg.regime, cfg.sweep), "config_hash=" + hash));
}

void report(const RunConfig& cfg, const fs::path& out) {
  const std::string hash = config_hash(cfg);
  const json cons = read_json(out / "constraint_report.json", "gen-data");
  const json ev = read_json(out / "evolve.json", "evolve");
  const json mb = read_json(out / "mots_bounds.json", "find-mots");
  const json hz = read_json(out / "horizon.json", "horizon");
  const json pa = read_json(out / "penrose_audit.json", "penrose");
  check_hash(cons, hash, out / "constraint_report.json", "gen-data");
  check_hash(ev, hash, out / "evolve.json", "evolve");
  check_hash(mb, hash, out / "mots_bounds.json", "find-mots");
  check_hash(hz, hash, out / "horizon.json", "horizon");
  check_hash(pa, hash, out / "penrose_audit.json", "penrose");
  const Regime regime = regime_or_fail(cfg);
  const auto& p = regime.params;
  const auto& d = regime.derived;

  const double k_lo = (1 - 1 / p.c1) * (1 - 1 / p.c2_zeta) * (0.5 - p.o1);
  const double k_hi = (1 + 1 / p.c1) * (1 + 1 / p.c2_zeta) * (0.5 + p.o1);
  json rows = json::array();
  bool all_c0 = true, all_proxy = true;
  svg::Series r_lo{"R min", {}, {}, "#1f77b4", false, true}, r_hi{"R max", {}, {}, "#d62728", false, true};
  svg::Series b_lo{"band lower", {}, {}, "#555555", true}, b_hi{"band upper", {}, {}, "#555555", true};
  std::ostringstream dat;
  dat << "# config_hash=" << hash << "\n# ubar/delta R_min R_max band_lo band_hi (units of A delta)\n";
  const double unit = d.amp * d.delta;
  for (const auto& s : hz.at("slices")) {
    const double ub = s.at("ubar");
    const double lo = k_lo * s.at("M0_min").get<double>(), hi = k_hi * s.at("M0_max").get<double>();
    const double rmin = s.at("R_min"), rmax = s.at("R_max");
    const bool c0 = lo <= rmin && rmax <= hi;
    const bool window = ub <= d.ubar_lambda * (1 + 1e-12);
    const auto& rp = s.at("radius_proxy");
    json row = {{"ubar", ub},
                {"ubar_over_delta", ub / d.delta},
                {"R", {rmin, rmax}},
                {"c0_band", {lo, hi}},
                {"in_c0_band", c0},
                {"radius_proxy", rp}};
    if (window) {
      const double plo = (0.25 - p.o1) * d.amp * ub, phi = (0.25 + p.o1) * d.amp * ub;
      const bool in = plo <= rp.at("lo").get<double>() && rp.at("hi").get<double>() <= phi;
      row["proxy_band"] = {plo, phi};
      row["in_proxy_band"] = in;
      all_proxy = all_proxy && in;
      all_c0 = all_c0 && c0;
    }
    rows.push_back(std::move(row));
    for (auto* sr : {&r_lo, &r_hi, &b_lo, &b_hi}) sr->x.push_back(ub / d.delta);
    r_lo.y.push_back(rmin / unit);
    r_hi.y.push_back(rmax / unit);
    b_lo.y.push_back(lo / unit);
    b_hi.y.push_back(hi / unit);
    dat << g17(ub / d.delta) << ' ' << g17(rmin / unit) << ' ' << g17(rmax / unit) << ' ' << g17(lo / unit) << ' '
        << g17(hi / unit) << '\n';
  }

  const json summary = {{"config_hash", hash},
                        {"derived", derived_json(regime)},
                        {"profile_all_pass", cons.at("all_pass")},
                        {"scale_critical_norm", cons.at("scale_critical_norm")},
                        {"cone", {{"richardson_error", ev.at("richardson_error")},
                                  {"corner_status", ev.at("corner_status")},
                                  {"trapped_counts", ev.at("trapped_lattice").at("counts")}}},
                        {"mots_all_pass", mb.at("all_pass")},
                        {"slices", rows},
                        {"window_in_c0_band", all_c0},
                        {"window_in_proxy_band", all_proxy},
                        {"null_approach", hz.at("null_approach")},
                        {"adm_mass", pa.at("adm_mass")},
                        {"exponent_form", pa.at("exponent_form")},
                        {"classification", pa.at("classification")}};
  write_json(out / "summary.json", summary);

  const fs::path plots = out / "plots";
  fs::create_directories(plots);
  const std::string tag = "config_hash=" + hash;
  write_text_atomic((plots / "R_band.dat").string(), dat.str());
  write_text_atomic((plots / "R_band.svg").string(),
                    svg::line_chart({"MOTS radius against the C0 band", "ubar / delta", "R / (A delta)"},
                                    {r_lo, r_hi, b_lo, b_hi}, tag));
  write_text_atomic((plots / "R_band.gp").string(),
                    "# " + tag + "\nset terminal svg size 720,440\nset output 'R_band_gnuplot.svg'\n"
                    "set xlabel 'ubar / delta'\nset ylabel 'R / (A delta)'\n"
                    "plot 'R_band.dat' u 1:2 w lp t 'R min', '' u 1:3 w lp t 'R max', "
                    "'' u 1:4 w l dt 2 t 'band lower', '' u 1:5 w l dt 2 t 'band upper'\n");

  // trapped map
  {
    std::ifstream is(out / "trapped_map.csv");
    if (!is) throw DependencyError("missing trapped_map.csv; run evolve first", "evolve");
    const std::vector<std::string> names = {"certified-trapped", "nominally-trapped", "untrapped", "indeterminate"};
    svg::Heatmap hm;
    hm.nx = ev.at("trapped_lattice").at("n_u");
    hm.ny = ev.at("trapped_lattice").at("n_ubar");
    hm.cells.assign(static_cast<std::size_t>(hm.nx) * hm.ny, 3);
    hm.palette = {"#2c7a3f", "#9fd39f", "#d9d9d9", "#f0b070"};
    hm.legend = names;
    std::ostringstream tdat;
    tdat << "# " << tag << "\n# i j status_code\n";
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty() || line[0] == '#' || line[0] == 'i') continue;
      std::istringstream ls(line);
      std::string f[6];
      for (auto& x : f) std::getline(ls, x, ',');
      const int i = std::stoi(f[0]), j = std::stoi(f[1]);
      int code = 3;
      for (std::size_t k = 0; k < names.size(); ++k)
        if (names[k] == f[5]) code = static_cast<int>(k);
      hm.cells[static_cast<std::size_t>(j) * hm.nx + i] = code;
      tdat << i << ' ' << j << ' ' << code << '\n';
    }
    write_text_atomic((plots / "trapped_map.dat").string(), tdat.str());
    write_text_atomic((plots / "trapped_map.svg").string(),
                      svg::heatmap({"Trapped-surface status", "log u (index)", "ubar (index)"}, hm, tag));
    write_text_atomic((plots / "trapped_map.gp").string(),
                      "# " + tag + "\nset terminal svg size 720,440\nset output 'trapped_map_gnuplot.svg'\n"
                      "set xlabel 'log u (index)'\nset ylabel 'ubar (index)'\nset cbrange [0:3]\n"
                      "plot 'trapped_map.dat' u 1:2:3 w image t ''\n");
  }

  // margin
  {
    svg::Series nlo{"numeric lower", {}, {}, "#1f77b4"}, nhi{"numeric upper", {}, {}, "#1f77b4", true};
    svg::Series alo{"analytic lower", {}, {}, "#d62728"}, ahi{"analytic upper", {}, {}, "#d62728", true};
    std::ostringstream mdat;
    mdat << "# " << tag << "\n# ubar/delta numeric_lo numeric_hi analytic_lo analytic_hi (units of m0)\n";
    for (const auto& m : pa.at("margins")) {
      const double x = m.at("ubar_over_delta");
      const double v[4] = {m.at("numeric")[0].get<double>() / d.m0, m.at("numeric")[1].get<double>() / d.m0,
                           m.at("analytic")[0].get<double>() / d.m0, m.at("analytic")[1].get<double>() / d.m0};
      svg::Series* s[4] = {&nlo, &nhi, &alo, &ahi};
      mdat << g17(x);
      for (int k = 0; k < 4; ++k) {
        s[k]->x.push_back(x);
        s[k]->y.push_back(v[k]);
        mdat << ' ' << g17(v[k]);
      }
      mdat << '\n';
    }
    write_text_atomic((plots / "margin.dat").string(), mdat.str());
    write_text_atomic((plots / "margin.svg").string(),
                      svg::line_chart({"Penrose margin", "ubar / delta", "margin / m0"}, {nlo, nhi, alo, ahi}, tag));
    write_text_atomic((plots / "margin.gp").string(),
                      "# " + tag + "\nset terminal svg size 720,440\nset output 'margin_gnuplot.svg'\n"
                      "set xlabel 'ubar / delta'\nset ylabel 'margin / m0'\n"
                      "plot 'margin.dat' u 1:2 w l t 'numeric lower', '' u 1:3 w l dt 2 t 'numeric upper', "
                      "'' u 1:4 w l t 'analytic lower', '' u 1:5 w l dt 2 t 'analytic upper'\n");
  }
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s = {"gen-data", "evolve", "find-mots", "horizon", "penrose", "report"};
  return s;
}

int run(const std::string& sub, const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  const std::string start = utc_now();
  const std::string hash = config_hash(cfg);
  int code = 0;
  json failures;
  try {
    if (sub == "gen-data") gen_data(cfg, out);
    else if (sub == "evolve") evolve(cfg, out);
    else if (sub == "find-mots") find_mots(cfg, out);
    else if (sub == "horizon") horizon(cfg, out);
    else if (sub == "penrose") penrose(cfg, out);
    else if (sub == "report") report(cfg, out);
    else throw ConfigError("unknown subcommand '" + sub + "'");
  } catch (const ConstraintFailure& e) {
    code = 3;
    failures = e.failures();
    log << sub << ": " << e.what() << '\n';
  } catch (const DependencyError& e) {
    code = 2;
    failures = json::array({{{"name", "dependency"}, {"requires", e.required_subcommand()}, {"detail", e.what()}}});
    log << sub << ": " << e.what() << '\n';
  } catch (const ConfigError& e) {
    code = 2;
    log << sub << ": " << e.what() << '\n';
  } catch (const MalformedParameters& e) {
    code = 2;
    log << sub << ": " << e.what() << '\n';
  } catch (const ConstraintError& e) {
    code = 3;
    failures = json::array({{{"name", "constraint"}, {"detail", e.what()}}});
    log << sub << ": " << e.what() << '\n';
  } catch (const FocusingError& e) {
    code = 3;
    failures = json::array({{{"name", "focusing"}, {"ubar", e.ubar()}, {"detail", e.what()}}});
    log << sub << ": " << e.what() << '\n';
  } catch (const NonConvergence& e) {
    code = 4;
    log << sub << ": " << e.what() << '\n';
  } catch (const Error& e) {
    code = 1;
    log << sub << ": " << e.what() << '\n';
  }
  if (code == 3) {
    const json f = {{"config_hash", hash}, {"subcommand", sub}, {"failures", failures}};
    log << f.dump(2) << '\n';
    fs::create_directories(out);
    write_json(out / "failures.json", f);
  }
  if (fs::exists(out)) stamp(out, sub, hash, start, code);
  return code;
}

int run_all(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  for (const auto& s : subcommands())
    if (const int c = run(s, cfg, out, log); c != 0) return c;
  return 0;
}

fs::path resolve_output_dir(const RunConfig& cfg, const std::string& cli_override) {
  if (!cli_override.empty()) return cli_override;
  if (const char* env = std::getenv("MOTSLAB_OUTPUT_DIR"); env && *env) return env;
  return cfg.output_dir;
}

}  // namespace motslab
