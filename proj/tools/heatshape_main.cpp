#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heatshape/commands.hpp"
#include "heatshape/config.hpp"
#include "heatshape/errors.hpp"

namespace {

heatshape::RunConfig load_or_default(const std::string& config_path) {
  if (config_path.empty()) return heatshape::RunConfig{};
  return heatshape::load_config(config_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-time boundary-element reconstruction of a moving void "
               "from exterior thermal data"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string truth_path;
  std::string data_path;
  std::optional<std::uint64_t> seed_override;
  std::string levels_arg = "20,40,80";
  bool corrupt_curvature = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Key-value configuration file");
    cmd->add_option("--out", out_dir, "Output directory");
    cmd->add_option("--seed", seed_override, "Override the config seed");
  };

  CLI::App* synth = app.add_subcommand("synth", "Generate measured data for a truth shape");
  add_common(synth);
  synth->add_option("--truth", truth_path, "Truth coefficients file")->required();

  CLI::App* invert = app.add_subcommand("invert", "Reconstruct the shape from measured data");
  add_common(invert);
  invert->add_option("--data", data_path, "Measured data CSV")->required();
  invert->add_option("--truth", truth_path, "Optional truth coefficients for error tracking");

  CLI::App* validate = app.add_subcommand("validate", "Run the validation suite");
  add_common(validate);
  validate->add_option("--levels", levels_arg, "Comma-separated refinement levels (n_time)");
  validate->add_flag("--corrupt-curvature", corrupt_curvature,
                     "Fault-injection hook: run with a wrong curvature factor");

  CLI::App* gradcheck = app.add_subcommand("gradcheck", "Finite-difference gradient table");
  add_common(gradcheck);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // usage problems map to exit 2; --help and --version stay 0
    return code == 0 ? 0 : heatshape::kExitUsage;
  }

  try {
    heatshape::RunConfig config = load_or_default(config_path);
    if (seed_override) config.seed = *seed_override;
    const std::string out = out_dir.empty() ? config.output_dir : out_dir;

    if (synth->parsed())
      return heatshape::cmd_synth(config, truth_path, out);
    if (invert->parsed()) {
      std::optional<std::string> truth;
      if (!truth_path.empty()) truth = truth_path;
      return heatshape::cmd_invert(config, data_path, truth, out);
    }
    if (validate->parsed()) {
      std::vector<int> levels;
      std::string item;
      std::stringstream ss(levels_arg);
      while (std::getline(ss, item, ','))
        if (!item.empty()) levels.push_back(std::stoi(item));
      if (levels.empty()) {
        std::cerr << "validate: empty level list\n";
        return heatshape::kExitUsage;
      }
      return heatshape::cmd_validate(config, levels, out, corrupt_curvature);
    }
    if (gradcheck->parsed())
      return heatshape::cmd_gradcheck(config, out);
  } catch (const heatshape::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return heatshape::kExitUsage;
  } catch (const heatshape::data_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return heatshape::kExitUsage;
  } catch (const heatshape::geometry_fault& e) {
    std::cerr << "error: " << e.what() << "\n";
    return heatshape::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return heatshape::kExitUsage;
}
