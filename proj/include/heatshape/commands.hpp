#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heatshape/config.hpp"

namespace heatshape {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitLineSearch = 3;
inline constexpr int kExitValidation = 4;

/// Synthesizes measured exterior Neumann data for the truth shape on the
/// synthesis grid, adds noise, resamples to the config grid and writes
/// g_measured.csv (+ sidecar) and truth_tube.vtk into out_dir.
int cmd_synth(const RunConfig& config, const std::string& truth_path,
              const std::string& out_dir);

/// Runs the inversion against a measured data file; writes history.csv,
/// final_coefficients.txt and the tube exports.
int cmd_invert(const RunConfig& config, const std::string& data_path,
               const std::optional<std::string>& truth_path,
               const std::string& out_dir);

/// Runs the validation suite: manufactured-solution convergence, gradient
/// fidelity, shape-calculus consistency; writes conventions.txt and
/// validation_report.txt.  corrupt_curvature is a fault-injection hook.
int cmd_validate(const RunConfig& config, const std::vector<int>& study_levels,
                 const std::string& out_dir, bool corrupt_curvature = false);

/// Prints the finite-difference gradient table on a coarse configuration.
int cmd_gradcheck(const RunConfig& config, const std::string& out_dir);

}  // namespace heatshape
