#pragma once

#include <cstdint>
#include <string>

namespace heatshape {

/// Flat key-value run configuration; unknown keys are rejected.
struct RunConfig {
  double horizon = 1.0;            ///< key: T
  double exterior_radius = 1.0;    ///< key: exterior_radius
  int n_time = 90;                 ///< key: n_time
  int n_space = 80;                ///< key: n_space
  int n_fourier = 8;               ///< key: n_fourier
  int n_legendre = 9;              ///< key: n_legendre
  int max_iterations = 100;        ///< key: max_iterations
  int lbfgs_memory = 10;           ///< key: lbfgs_memory
  double noise_level = 0.01;       ///< key: noise_level
  std::uint64_t seed = 42;         ///< key: seed
  double initial_radius = 0.3;     ///< key: initial_radius
  int synth_n_time = 0;            ///< key: synth_n_time (0 -> n_time + 7)
  int synth_n_space = 0;           ///< key: synth_n_space (0 -> n_space + 16)
  std::string synth_route = "indirect";  ///< key: synth_route (indirect | direct)
  double gradient_tolerance = 1e-8;      ///< key: gradient_tolerance
  double armijo_c1 = 1e-4;         ///< key: armijo_c1
  int max_line_search = 20;        ///< key: max_line_search
  double trial_step = 1.0;         ///< key: trial_step
  std::string output_dir = "out";  ///< key: output_dir

  int effective_synth_n_time() const { return synth_n_time > 0 ? synth_n_time : n_time + 7; }
  int effective_synth_n_space() const { return synth_n_space > 0 ? synth_n_space : n_space + 16; }

  void validate() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);

}  // namespace heatshape
