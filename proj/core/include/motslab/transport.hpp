#pragma once

#include <string>
#include <vector>

#include "motslab/regime.hpp"
#include "motslab/shear.hpp"
#include "motslab/sphere.hpp"

namespace motslab {

struct ConeOptions {
  int steps = 2048;
  double span = 0.0;      // 0 means 2 delta
  bool estimate_error = true;
  int store_every = 1;    // keep every n-th step
};

struct ConeState {
  GridPtr grid;
  std::vector<double> ubar;
  std::vector<SphereField> trchi;
  double omega_lapse = 1.0;
  double error_estimate = 0.0;  // Richardson estimate from step halving
};

ConeState integrate_data_cone(const ShearSource& shear, const GridPtr& grid, const ConeOptions& opt,
                              double delta);

struct SlabModel {
  Regime regime;
  const ShearSource* shear = nullptr;
  GridPtr grid;
  double envelope_multiplier = 1.0;
};

struct ModelTrchi {
  SphereField leading;
  double envelope = 0.0;
};

ModelTrchi model_trchi(const SlabModel& slab, double u, double ubar);

enum class TrapStatus { CertifiedTrapped, NominallyTrapped, Untrapped, Indeterminate };
std::string to_string(TrapStatus s);
TrapStatus detect_trapped(const SlabModel& slab, double u, double ubar);

}  // namespace motslab
