#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "motslab/regime.hpp"

namespace motslab {

struct Interval {
  double lo = 0.0, hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

Interval adm_mass(const Regime& regime);

struct MarginReport {
  Interval numeric;
  Interval analytic;
  double center = 0.0;  // m0 - A ubar / 4
};
MarginReport margin(const Regime& regime, const Interval& radius_proxy, double ubar);

// margin lower bound at ubar = gamma a^{1/2} delta / b in both forms
struct ExponentForm {
  double prefactor = 0.0;         // (1/4 - o1)(lambda - gamma a^{1/2}/b)
  double exp_leading_direct = 0;  // kappa mu + 1/2 - y
  double exp_leading_form = 0;    // (kappa mu - y/2) + (1/2 - y/2)
  double exp_eps = 0.0;           // 1/2 - y/2
  double value_direct = 0.0;
  double value_form = 0.0;
  double exponent_tolerance = 0.0;
  bool exponents_match = false;
  bool values_match = false;
};
ExponentForm exponent_form_at_gamma(const Regime& regime);

enum class Verdict { CertifiedPositive, Inconclusive, ViolatedNever };
std::string to_string(Verdict v);

struct Classification {
  Verdict lower = Verdict::Inconclusive;
  Verdict upper = Verdict::ViolatedNever;
  double log10_slack = 0.0;  // log10(o1 s a^{ty-1/2}) - log10(c2 bound)
  std::string reason;
};
Classification classify_regime(const RegimeParameters& params, double ubar);

nlohmann::json exponent_ledger(const RegimeParameters& p);

struct SweepAxes {
  std::vector<double> kappa, mu, y, t, ubar_position;  // mu used only without coupling
};

struct SweepEntry {
  double kappa = 0, mu = 0, y = 0, t = 0, ubar_position = 0;
  std::string status;  // invalid | certified-positive | inconclusive
  double log10_slack = 0.0;
  std::string reason;
};

std::vector<SweepEntry> sweep(const RegimeParameters& base, const SweepAxes& axes);
std::string sweep_csv(const std::vector<SweepEntry>& entries, const std::string& header_comment);

}  // namespace motslab
