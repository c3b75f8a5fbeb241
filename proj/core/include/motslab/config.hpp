#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "motslab/horizon.hpp"
#include "motslab/mots.hpp"
#include "motslab/penrose.hpp"
#include "motslab/regime.hpp"
#include "motslab/shear.hpp"
#include "motslab/transport.hpp"

namespace motslab {

struct RunConfig {
  RegimeParameters regime;
  ProfileSpec profile;
  int integrator_steps = 2048;
  int cone_store_every = 64;
  int trapped_n_u = 24;
  int trapped_n_ubar = 16;
  SolverOptions solver;
  PerturbationOptions perturbation;
  AprioriThresholds apriori;
  int uniqueness_guesses = 0;
  SliceLayout slices;
  int spacelike_samples = 64;
  bool disc_hypothesis = false;
  double norm_bound = 5e19;
  int norm_j_max = 2;
  int norm_i_max = 2;
  SweepAxes sweep;
  std::string output_dir = "out";
};

// INI text with [sections]; overrides are "section.key=value"
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});
std::string default_config_text();

// everything that affects numeric outputs (the output directory is excluded)
nlohmann::json to_json(const RunConfig& c);
std::string config_hash(const RunConfig& c);

}  // namespace motslab
