#include "heatshape/config.hpp"

#include <fstream>
#include <sstream>

#include "heatshape/errors.hpp"

namespace heatshape {

void RunConfig::validate() const {
  if (!(horizon > 0.0)) throw config_error("config: T must be positive");
  if (!(exterior_radius > 0.0)) throw config_error("config: exterior_radius must be positive");
  if (n_time < 1 || n_space < 4) throw config_error("config: n_time/n_space too small");
  if (n_fourier < 1 || n_legendre < 0) throw config_error("config: invalid basis sizes");
  if (n_space <= 2 * n_fourier)
    throw config_error("config: n_space must exceed twice n_fourier");
  if (max_iterations < 0 || lbfgs_memory < 0) throw config_error("config: negative counts");
  if (noise_level < 0.0) throw config_error("config: noise_level must be >= 0");
  if (!(initial_radius > 0.0 && initial_radius < exterior_radius))
    throw config_error("config: initial_radius must lie in (0, exterior_radius)");
  if (synth_route != "indirect" && synth_route != "direct")
    throw config_error("config: synth_route must be 'indirect' or 'direct'");
  if (max_line_search < 1) throw config_error("config: max_line_search must be >= 1");
  if (!(trial_step > 0.0)) throw config_error("config: trial_step must be positive");
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto strip = [](std::string& s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    };
    strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config: missing '=' on line " + std::to_string(lineno));
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    strip(key);
    strip(value);
    try {
      if (key == "T") c.horizon = std::stod(value);
      else if (key == "exterior_radius") c.exterior_radius = std::stod(value);
      else if (key == "n_time") c.n_time = std::stoi(value);
      else if (key == "n_space") c.n_space = std::stoi(value);
      else if (key == "n_fourier") c.n_fourier = std::stoi(value);
      else if (key == "n_legendre") c.n_legendre = std::stoi(value);
      else if (key == "max_iterations") c.max_iterations = std::stoi(value);
      else if (key == "lbfgs_memory") c.lbfgs_memory = std::stoi(value);
      else if (key == "noise_level") c.noise_level = std::stod(value);
      else if (key == "seed") c.seed = std::stoull(value);
      else if (key == "initial_radius") c.initial_radius = std::stod(value);
      else if (key == "synth_n_time") c.synth_n_time = std::stoi(value);
      else if (key == "synth_n_space") c.synth_n_space = std::stoi(value);
      else if (key == "synth_route") c.synth_route = value;
      else if (key == "gradient_tolerance") c.gradient_tolerance = std::stod(value);
      else if (key == "armijo_c1") c.armijo_c1 = std::stod(value);
      else if (key == "max_line_search") c.max_line_search = std::stoi(value);
      else if (key == "trial_step") c.trial_step = std::stod(value);
      else if (key == "output_dir") c.output_dir = value;
      else throw config_error("config: unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw config_error("config: bad value for key '" + key + "'");
    } catch (const std::out_of_range&) {
      throw config_error("config: value out of range for key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out.precision(17);
  out << "T = " << c.horizon << "\n";
  out << "exterior_radius = " << c.exterior_radius << "\n";
  out << "n_time = " << c.n_time << "\n";
  out << "n_space = " << c.n_space << "\n";
  out << "n_fourier = " << c.n_fourier << "\n";
  out << "n_legendre = " << c.n_legendre << "\n";
  out << "max_iterations = " << c.max_iterations << "\n";
  out << "lbfgs_memory = " << c.lbfgs_memory << "\n";
  out << "noise_level = " << c.noise_level << "\n";
  out << "seed = " << c.seed << "\n";
  out << "initial_radius = " << c.initial_radius << "\n";
  out << "synth_n_time = " << c.synth_n_time << "\n";
  out << "synth_n_space = " << c.synth_n_space << "\n";
  out << "synth_route = " << c.synth_route << "\n";
  out << "gradient_tolerance = " << c.gradient_tolerance << "\n";
  out << "armijo_c1 = " << c.armijo_c1 << "\n";
  out << "max_line_search = " << c.max_line_search << "\n";
  out << "trial_step = " << c.trial_step << "\n";
  out << "output_dir = " << c.output_dir << "\n";
  return out.str();
}

}  // namespace heatshape
