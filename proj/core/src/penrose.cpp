#include "motslab/penrose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "motslab/errors.hpp"

namespace motslab {

Interval adm_mass(const Regime& regime) {
  const auto& d = regime.derived;
  return {d.m0 - d.eps_glue, d.m0 + d.eps_glue};
}

MarginReport margin(const Regime& regime, const Interval& proxy, double ubar) {
  const auto& d = regime.derived;
  const double o1 = regime.params.o1;
  MarginReport m;
  const Interval adm = adm_mass(regime);
  m.numeric = {adm.lo - proxy.hi, adm.hi - proxy.lo};
  const double gap = d.ubar_lambda - ubar;
  const double lo_c = gap >= 0 ? 0.25 - o1 : 0.25 + o1;
  const double hi_c = gap >= 0 ? 0.25 + o1 : 0.25 - o1;
  m.analytic = {d.amp * lo_c * gap - d.eps_glue, d.amp * hi_c * gap + d.eps_glue};
  m.center = d.m0 - 0.25 * d.amp * ubar;
  return m;
}

ExponentForm exponent_form_at_gamma(const Regime& regime) {
  const auto& p = regime.params;
  ExponentForm f;
  f.prefactor = (0.25 - p.o1) * (p.lambda_lo - p.gamma * std::pow(p.a, 0.5 - p.kappa));
  const double km = p.kappa * p.mu;
  f.exp_leading_direct = (0.5 + km) + (-p.y);
  f.exp_leading_form = (km - 0.5 * p.y) + (0.5 - 0.5 * p.y);
  f.exp_eps = 0.5 - 0.5 * p.y;
  const double em = std::max(std::abs(f.exp_leading_direct), std::abs(f.exp_leading_form));
  f.exponent_tolerance = std::nextafter(em, INFINITY) - em;
  f.exponents_match = std::abs(f.exp_leading_direct - f.exp_leading_form) <= f.exponent_tolerance;
  // lower side with the conservative sign on eps
  const double la = std::log(p.a);
  f.value_direct = f.prefactor * std::exp(f.exp_leading_direct * la) - p.C_eps * std::exp(f.exp_eps * la);
  f.value_form = (f.prefactor * std::exp((km - 0.5 * p.y) * la) - p.C_eps) * std::exp(f.exp_eps * la);
  const double vs = std::max(std::abs(f.value_direct), std::abs(f.value_form));
  f.values_match = std::abs(f.value_direct - f.value_form) <= std::nextafter(vs, INFINITY) - vs;
  return f;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedPositive: return "certified-positive";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::ViolatedNever: return "violated-never";
  }
  return "inconclusive";
}

Classification classify_regime(const RegimeParameters& p, double ubar) {
  if (!p.penrose_coupling) throw ConfigError("classify_regime: Penrose coupling is disabled");
  const auto d = derive(p);
  Classification c;
  const double s = (d.ubar_lambda - ubar) / (d.ubar_lambda - d.ubar_gamma);
  if (!(s > 0.0)) {
    c.log10_slack = -INFINITY;
    c.reason = "ubar at or beyond lambda delta: leading term does not dominate";
    return c;
  }
  const double expo = p.kappa * p.mu - 0.5 * p.y;  // equals t y - 1/2 under coupling
  c.log10_slack = std::log10(p.o1 * s) + expo * std::log10(p.a) - std::log10(p.c2_unknown_bound);
  if (c.log10_slack > 0.0) {
    c.lower = Verdict::CertifiedPositive;
    c.reason = "o1 s a^(ty-1/2) exceeds the c2 bound";
  } else {
    c.reason = "o1 s a^(ty-1/2) does not exceed the c2 bound";
  }
  return c;
}

nlohmann::json exponent_ledger(const RegimeParameters& p) {
  const double km = p.kappa * p.mu;
  return {{"ty-1/2", p.t * p.y - 0.5},
          {"kappa mu-y/2", km - 0.5 * p.y},
          {"1/2-y/2", 0.5 - 0.5 * p.y},
          {"kappa mu+1/2-y", km + 0.5 - p.y},
          {"kappa mu+1/2-3y/2", km + 0.5 - 1.5 * p.y},
          {"y/2-kappa mu", 0.5 * p.y - km}};
}

std::vector<SweepEntry> sweep(const RegimeParameters& base, const SweepAxes& ax) {
  if (ax.kappa.empty() || ax.y.empty() || ax.t.empty() || ax.ubar_position.empty() ||
      (!base.penrose_coupling && ax.mu.empty()))
    throw ConfigError("sweep: empty grid axis");
  std::vector<double> mus = base.penrose_coupling ? std::vector<double>{0.0} : ax.mu;
  std::vector<SweepEntry> out;
  for (double k : ax.kappa)
    for (double mu : mus)
      for (double y : ax.y)
        for (double t : ax.t)
          for (double pos : ax.ubar_position) {
            RegimeParameters p = base;
            p.kappa = k;
            p.y = y;
            p.t = t;
            p.mu = base.penrose_coupling ? RegimeParameters::coupled_mu(k, y, t) : mu;
            SweepEntry e{k, p.mu, y, t, pos, "invalid", 0.0, ""};
            const auto rep = validate(p);
            if (!rep.ok()) {
              for (const auto& f : rep.failures()) e.reason += (e.reason.empty() ? "" : ";") + f;
              out.push_back(e);
              continue;
            }
            const auto d = derive(p);
            const double ubar = d.ubar_gamma + pos * (d.ubar_lambda - d.ubar_gamma);
            if (p.penrose_coupling) {
              const auto c = classify_regime(p, ubar);
              e.status = to_string(c.lower);
              e.log10_slack = c.log10_slack;
              e.reason = c.reason;
            } else {
              e.status = "inconclusive";
              e.reason = "coupling disabled";
            }
            out.push_back(e);
          }
  return out;
}

std::string sweep_csv(const std::vector<SweepEntry>& entries, const std::string& header_comment) {
  std::ostringstream os;
  os.precision(17);
  if (!header_comment.empty()) os << "# " << header_comment << "\n";
  os << "kappa,mu,y,t,ubar_position,class,log10_slack,reason\n";
  for (const auto& e : entries)
    os << e.kappa << ',' << e.mu << ',' << e.y << ',' << e.t << ',' << e.ubar_position << ',' << e.status << ','
       << e.log10_slack << ",\"" << e.reason << "\"\n";
  return os.str();
}

}  // namespace motslab
