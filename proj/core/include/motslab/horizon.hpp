#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "motslab/mots.hpp"

namespace motslab {

struct SliceLayout {
  int n_window = 17;      // points on [ubar_gamma, lambda delta], both ends included
  int n_transition = 6;   // points on (lambda delta, lambda' delta], right end included
  int n_tail = 6;         // points on (lambda' delta, 2 delta]
};

std::vector<double> slice_grid(const Regime& regime, const SliceLayout& layout);

struct HorizonAssembly {
  std::vector<double> ubar;
  std::vector<MotsSolution> slices;
  std::vector<double> M0_min, M0_max, M_ref;
  std::vector<SphereField> dR_dubar;
  std::vector<std::optional<double>> h_field;  // empty when the disc hypothesis is off
};

// dR/dubar by three-point differences on a nonuniform slice set
std::vector<SphereField> ubar_derivative(const std::vector<double>& ubar, const std::vector<SphereField>& R);

HorizonAssembly assemble(const Regime& regime, const ShearModel& shear, const GridPtr& grid,
                         const std::vector<double>& ubars, const PerturbationOptions& pert,
                         const SolverOptions& solver, bool disc_hypothesis);

// from already-solved slices (e.g. loaded from disk)
HorizonAssembly assemble_from(const Regime& regime, const ShearModel& shear, std::vector<MotsSolution> slices,
                              bool disc_hypothesis);

struct AreaReport {
  double area = 0, area_lo = 0, area_hi = 0;
  double radius_proxy = 0, proxy_lo = 0, proxy_hi = 0;
};
AreaReport area(const SphereField& R, double f0);
AreaReport area(const HorizonAssembly& h, std::size_t slice, double f0);

enum class Spacelike { Spacelike, NotCertified };
struct SpacelikeResult {
  Spacelike status = Spacelike::NotCertified;
  std::string reason;
  double min_value = 0.0;  // smallest normalized form value over samples
};
SpacelikeResult spacelike_check(const SphereField& R, std::optional<double> h, double o1, int samples,
                                std::uint64_t seed);
SpacelikeResult spacelike_check(const HorizonAssembly& h, std::size_t slice, double o1, int samples,
                                std::uint64_t seed);

nlohmann::json horizon_report(const HorizonAssembly& h, const Regime& regime, int samples, std::uint64_t seed);

}  // namespace motslab
