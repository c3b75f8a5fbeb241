#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "motslab/config.hpp"
#include "motslab/errors.hpp"

namespace motslab {

// constraint failure with a machine-readable list of the failed checks
class ConstraintFailure : public ConstraintError {
 public:
  ConstraintFailure(const std::string& what, nlohmann::json failures)
      : ConstraintError(what), failures_(std::move(failures)) {}
  const nlohmann::json& failures() const { return failures_; }
 private:
  nlohmann::json failures_;
};

namespace fs = std::filesystem;

void gen_data(const RunConfig& cfg, const fs::path& out);
void evolve(const RunConfig& cfg, const fs::path& out);
void find_mots(const RunConfig& cfg, const fs::path& out);
void horizon(const RunConfig& cfg, const fs::path& out);
void penrose(const RunConfig& cfg, const fs::path& out);
void report(const RunConfig& cfg, const fs::path& out);

const std::vector<std::string>& subcommands();

// maps errors to exit codes: 2 config/dependency, 3 constraint, 4 non-convergence
int run(const std::string& subcommand, const RunConfig& cfg, const fs::path& out, std::ostream& log);
int run_all(const RunConfig& cfg, const fs::path& out, std::ostream& log);

// cli flag, then MOTSLAB_OUTPUT_DIR, then the config value
fs::path resolve_output_dir(const RunConfig& cfg, const std::string& cli_override);

}  // namespace motslab
