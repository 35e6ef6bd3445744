#include "heatshape/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "heatshape/errors.hpp"
#include "heatshape/fft.hpp"

namespace heatshape {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_exterior_data(const std::string& path, const ExteriorField& field,
                         const DataMeta& meta) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write data file: " + path);
  out << "t,phi,value\n";
  const double h = meta.horizon / field.n_time;
  for (int n = 0; n <= field.n_time; ++n) {
    const double t = h * n;
    for (int i = 0; i < field.n_space; ++i) {
      const double phi = kTwoPi * i / field.n_space;
      out << format_double(t) << ',' << format_double(phi) << ','
          << format_double(field.at(n, i)) << '\n';
    }
  }
  std::ofstream ms(path + ".meta");
  if (!ms) throw data_error("cannot write metadata file: " + path + ".meta");
  ms << "n_time = " << field.n_time << "\n";
  ms << "n_space = " << field.n_space << "\n";
  ms << "T = " << format_double(meta.horizon) << "\n";
  ms << "exterior_radius = " << format_double(meta.exterior_radius) << "\n";
  ms << "seed = " << meta.seed << "\n";
  ms << "noise_level = " << format_double(meta.noise_level) << "\n";
  ms << "synth_n_time = " << meta.synth_n_time << "\n";
  ms << "synth_n_space = " << meta.synth_n_space << "\n";
  ms << "route = " << meta.route << "\n";
}

ExteriorField read_exterior_data(const std::string& path, DataMeta* meta_out) {
  DataMeta meta;
  {
    std::ifstream ms(path + ".meta");
    if (!ms) throw data_error("missing metadata file: " + path + ".meta");
    std::string line;
    std::map<std::string, std::string> kv;
    while (std::getline(ms, line)) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(0, eq);
      std::string value = line.substr(eq + 1);
      auto strip = [](std::string& s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
      };
      strip(key);
      strip(value);
      kv[key] = value;
    }
    try {
      meta.n_time = std::stoi(kv.at("n_time"));
      meta.n_space = std::stoi(kv.at("n_space"));
      meta.horizon = std::stod(kv.at("T"));
      meta.exterior_radius = std::stod(kv.at("exterior_radius"));
      meta.seed = std::stoull(kv.at("seed"));
      meta.noise_level = std::stod(kv.at("noise_level"));
      meta.synth_n_time = std::stoi(kv.at("synth_n_time"));
      meta.synth_n_space = std::stoi(kv.at("synth_n_space"));
      meta.route = kv.at("route");
    } catch (const std::out_of_range&) {
      throw data_error("metadata file incomplete: " + path + ".meta");
    }
  }

  std::ifstream in(path);
  if (!in) throw data_error("cannot open data file: " + path);
  std::string header;
  if (!std::getline(in, header) || header.rfind("t,phi,value", 0) != 0)
    throw data_error("data file missing 't,phi,value' header: " + path);

  ExteriorField field(meta.n_time, meta.n_space);
  std::string line;
  std::size_t count = 0;
  const std::size_t expected = field.values.size();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (count >= expected) throw data_error("data file has extra rows: " + path);
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw data_error("malformed data row: " + line);
    field.values[count] = std::stod(line.substr(c2 + 1));
    ++count;
  }
  if (count != expected)
    throw data_error("data file row count mismatch: " + path);
  if (meta_out) *meta_out = meta;
  return field;
}

ExteriorField resample_exterior(const ExteriorField& field, int n_time, int n_space) {
  if (field.n_time == n_time && field.n_space == n_space) return field;

  // Angle first: trigonometric resampling level by level.
  ExteriorField angular(field.n_time, n_space);
  for (int n = 0; n <= field.n_time; ++n) {
    std::vector<double> row(field.level(n), field.level(n) + field.n_space);
    const std::vector<double> res = fft::resample_periodic(row, n_space);
    for (int i = 0; i < n_space; ++i) angular.at(n, i) = res[static_cast<std::size_t>(i)];
  }
  if (field.n_time == n_time) return angular;

  // Linear interpolation in time on the shared horizon.
  ExteriorField out(n_time, n_space);
  for (int n = 0; n <= n_time; ++n) {
    const double s = static_cast<double>(n) * field.n_time / n_time;
    int j = static_cast<int>(std::floor(s));
    if (j >= field.n_time) j = field.n_time - 1;
    const double frac = s - j;
    for (int i = 0; i < n_space; ++i)
      out.at(n, i) = (1.0 - frac) * angular.at(j, i) + frac * angular.at(j + 1, i);
  }
  return out;
}

void write_coefficients(const std::string& path, const ShapeCoefficients& coeffs) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write coefficients file: " + path);
  out << coeffs.n_legendre() << ' ' << coeffs.n_fourier() << ' '
      << format_double(coeffs.horizon()) << "\n";
  for (int l = 0; l <= coeffs.n_legendre(); ++l) {
    for (int j = 0; j < coeffs.row_size(); ++j) {
      if (j) out << ' ';
      out << format_double(coeffs.at(l, j));
    }
    out << "\n";
  }
}

ShapeCoefficients read_coefficients(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open coefficients file: " + path);
  int nl = 0, nk = 0;
  double T = 0.0;
  if (!(in >> nl >> nk >> T))
    throw data_error("coefficients file header malformed: " + path);
  ShapeCoefficients coeffs(nl, nk, T);
  for (int l = 0; l <= nl; ++l)
    for (int j = 0; j < 2 * nk; ++j)
      if (!(in >> coeffs.at(l, j)))
        throw data_error("coefficients file truncated: " + path);
  return coeffs;
}

void write_history_csv(const std::string& path, const InversionHistory& history) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write history file: " + path);
  out << "iteration,J,grad_inf,step,l2_err\n";
  for (const InversionRecord& r : history.records) {
    out << r.iteration << ',' << format_double(r.value) << ','
        << format_double(r.gradient_inf) << ',' << format_double(r.step) << ',';
    if (std::isnan(r.l2_error)) out << "nan";
    else out << format_double(r.l2_error);
    out << '\n';
  }
}

void write_tube_vtk(const std::string& path, const SpaceTimeMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write VTK file: " + path);
  const int rings = mesh.n_time + 1;
  const int ns = mesh.n_space;
  out << "# vtk DataFile Version 3.0\n";
  out << "space-time tube of the moving boundary\n";
  out << "ASCII\nDATASET POLYDATA\n";
  out << "POINTS " << rings * ns << " double\n";
  for (int n = 0; n < rings; ++n) {
    const LevelNodes& lvl = mesh.levels[static_cast<std::size_t>(n)];
    const double t = mesh.time_of(n);
    for (int i = 0; i < ns; ++i)
      out << format_double(lvl.px[static_cast<std::size_t>(i)]) << ' '
          << format_double(lvl.py[static_cast<std::size_t>(i)]) << ' '
          << format_double(t) << '\n';
  }
  out << "LINES " << rings << ' ' << rings * (ns + 2) << '\n';
  for (int n = 0; n < rings; ++n) {
    out << ns + 1;
    for (int i = 0; i < ns; ++i) out << ' ' << n * ns + i;
    out << ' ' << n * ns << '\n';
  }
}

void write_tube_csv(const std::string& path, const SpaceTimeMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write tube CSV: " + path);
  out << "t,phi,x,y\n";
  for (int n = 0; n <= mesh.n_time; ++n) {
    const LevelNodes& lvl = mesh.levels[static_cast<std::size_t>(n)];
    const double t = mesh.time_of(n);
    for (int i = 0; i < mesh.n_space; ++i) {
      out << format_double(t) << ',' << format_double(mesh.angle_of(i)) << ','
          << format_double(lvl.px[static_cast<std::size_t>(i)]) << ','
          << format_double(lvl.py[static_cast<std::size_t>(i)]) << '\n';
    }
  }
}

}  // namespace heatshape
