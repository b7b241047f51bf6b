#include "sphfri/sample_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sphfri {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return in;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw Error("malformed numeric field '" + s + "'");
  return v;
}

}  // namespace

void write_samples_csv(const SampleSet& s, const std::string& path) {
  validate_samples(s);
  auto out = open_out(path);
  out << "theta,phi,re,im\n";
  for (Eigen::Index n = 0; n < s.size(); ++n)
    out << fmt(s.points[n].theta) << ',' << fmt(s.points[n].phi) << ','
        << fmt(s.values(n).real()) << ',' << fmt(s.values(n).imag()) << '\n';
}

SampleSet read_samples_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || split_row(line) != std::vector<std::string>{"theta", "phi", "re", "im"})
    throw Error("'" + path + "': expected header theta,phi,re,im");
  SampleSet s;
  std::vector<Complex> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_row(line);
    if (f.size() != 4) throw Error("'" + path + "': expected 4 fields per row");
    s.points.emplace_back(to_double(f[0]), to_double(f[1]));
    values.emplace_back(to_double(f[2]), to_double(f[3]));
  }
  s.values = Eigen::Map<const Eigen::VectorXcd>(values.data(), values.size());
  validate_samples(s);
  return s;
}

void write_grid_values_csv(const DHGrid& grid, const Eigen::VectorXcd& values,
                           const std::string& path) {
  if (values.size() != grid.node_count())
    throw Error("grid value count mismatch");
  auto out = open_out(path);
  out << "p,q,re,im\n";
  for (int p = 0; p < grid.rings(); ++p)
    for (int q = 0; q < grid.rings(); ++q) {
      const Complex v = values(grid.node_index(p, q));
      out << p << ',' << q << ',' << fmt(v.real()) << ',' << fmt(v.imag()) << '\n';
    }
}

Eigen::VectorXcd read_grid_values_csv(const DHGrid& grid, const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || split_row(line) != std::vector<std::string>{"p", "q", "re", "im"})
    throw Error("'" + path + "': expected header p,q,re,im");
  Eigen::VectorXcd values = Eigen::VectorXcd::Zero(grid.node_count());
  Eigen::VectorXi seen = Eigen::VectorXi::Zero(grid.node_count());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_row(line);
    if (f.size() != 4) throw Error("'" + path + "': expected 4 fields per row");
    const int p = static_cast<int>(to_double(f[0]));
    const int q = static_cast<int>(to_double(f[1]));
    if (p < 0 || p >= grid.rings() || q < 0 || q >= grid.rings())
      throw Error("'" + path + "': node index out of range");
    values(grid.node_index(p, q)) = Complex(to_double(f[2]), to_double(f[3]));
    seen(grid.node_index(p, q)) = 1;
  }
  if (seen.sum() != grid.node_count())
    throw Error("'" + path + "': missing grid nodes (" + std::to_string(seen.sum()) + " of " +
                std::to_string(grid.node_count()) + ")");
  return values;
}

void write_ensemble_csv(const DiracEnsemble& f, const std::string& path) {
  auto out = open_out(path);
  out << "alpha_re,alpha_im,theta,phi\n";
  for (const auto& spike : f.spikes)
    out << fmt(spike.amplitude.real()) << ',' << fmt(spike.amplitude.imag()) << ','
        << fmt(spike.location.theta) << ',' << fmt(spike.location.phi) << '\n';
}

DiracEnsemble read_ensemble_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) ||
      split_row(line) != std::vector<std::string>{"alpha_re", "alpha_im", "theta", "phi"})
    throw Error("'" + path + "': expected header alpha_re,alpha_im,theta,phi");
  DiracEnsemble f;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_row(line);
    if (fields.size() != 4) throw Error("'" + path + "': expected 4 fields per row");
    f.spikes.push_back({Complex(to_double(fields[0]), to_double(fields[1])),
                        SphericalPoint(to_double(fields[2]), to_double(fields[3]))});
  }
  return f;
}

}  // namespace sphfri
