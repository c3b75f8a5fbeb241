#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "motslab/checks.hpp"
#include "motslab/container.hpp"
#include "motslab/regime.hpp"
#include "motslab/sphere.hpp"

namespace motslab {

// Pointwise access to |chi0|^2 and its u-bar integral.
class ShearSource {
 public:
  virtual ~ShearSource() = default;
  virtual double amp2(double ubar, double theta, double phi) const = 0;
  virtual double cumulative(double ubar, double theta, double phi) const = 0;
};

class ZeroShear : public ShearSource {
 public:
  double amp2(double, double, double) const override { return 0.0; }
  double cumulative(double, double, double) const override { return 0.0; }
};

// |chi0|^2 = rate, I = rate * ubar
class UniformShear : public ShearSource {
 public:
  explicit UniformShear(double rate) : rate_(rate) {}
  double amp2(double ubar, double, double) const override { return ubar >= 0 ? rate_ : 0.0; }
  double cumulative(double ubar, double, double) const override { return ubar > 0 ? rate_ * ubar : 0.0; }
 private:
  double rate_;
};

struct ProfileSpec {
  int n_theta = 32;
  int n_phi = 64;
  // intervals per u-bar panel: [0,ug], [ug,lambda delta], [lambda delta,lambda' delta], [lambda' delta, 2 delta]
  int n_ramp = 64;
  int n_window = 96;
  int n_transition = 64;
  int n_tail = 32;
  double zero_width = 2e-4;  // angular half-width of the dip around the zero
  double zero_phi = 1.0;
  bool zeta_step = false;  // defect injection: hard switch instead of smoothstep
};

class ShearModel : public ShearSource {
 public:
  ShearModel(const Regime& regime, const ProfileSpec& spec);

  double f(double ubar, double theta, double phi) const;
  double f_u(double ubar, double theta, double phi) const;
  double zeta(double ubar, double theta, double phi) const;
  double zeta_u(double ubar, double theta, double phi) const;
  double zeta_mean(double ubar) const;
  double zeta_mean_u(double ubar) const;
  double base(double T, double theta, double phi) const;
  double base_rate(double T, double theta, double phi) const;
  std::pair<double, double> warp(double ubar, double theta, double phi) const;  // T, dT/dubar
  std::pair<double, double> zero_point(double ubar) const;
  bool in_omega(double theta, double phi) const;

  double amp2(double ubar, double theta, double phi) const override;
  double cumulative(double ubar, double theta, double phi) const override;

  // effective mass reference: A ubar zeta(ubar) + (1 - zeta(ubar)) 4 m0
  double mass_reference(double ubar) const;
  double mass_reference_u(double ubar) const;

  const Regime& regime() const { return regime_; }
  const ProfileSpec& spec() const { return spec_; }

 private:
  Regime regime_;
  ProfileSpec spec_;
  double A_, m4_, ug_, ul_, uh_, c1_, c2_, o1_;
  double w_, wt_, theta_speed_, xstar_, bprime_max_;
  double theta_start_;
};

struct ShearProfile {
  Regime regime;
  ProfileSpec spec;
  GridPtr grid;
  std::vector<double> ubar;
  std::vector<int> panel_ends;  // index of last point of each panel
  std::vector<double> I, amp2, f, zeta;  // [ubar][node]
  std::vector<double> zero_theta, zero_phi;

  std::size_t n_ubar() const { return ubar.size(); }
  std::size_t nodes() const { return grid->size(); }
  SphereField slice(const std::vector<double>& arr, std::size_t k) const;
  std::unique_ptr<ShearModel> model() const;
};

ShearProfile build_profile(const Regime& regime, const ProfileSpec& spec);
CheckList verify_profile(const ShearProfile& profile, double total_tol = 1e-6,
                         double identity_tol = 1e-8, double dominance_tol = 0.2);

struct NormResult {
  double value = 0.0;
  double ubar_at_max = 0.0;
  double bound = 0.0;
  bool pass = false;
};
NormResult scale_critical_norm(const ShearProfile& profile, int j_max, int i_max, double bound);

// u-bar integral of stored amp2 at one node
double simpson_total(const ShearProfile& p, std::size_t node);
std::vector<double> trapezoid_cumulative(const ShearProfile& p, std::size_t node);

Container to_container(const ShearProfile& p);
ShearProfile profile_from_container(const Container& c);

nlohmann::json to_json(const RegimeParameters& p);
RegimeParameters regime_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ProfileSpec& s);
ProfileSpec profile_spec_from_json(const nlohmann::json& j);

}  // namespace motslab
