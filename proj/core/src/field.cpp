#include "swirlbound/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "swirlbound/errors.hpp"

namespace swirlbound {

void SpaceTimeField1D::ensure_finite(const std::string& context) const {
  for (std::size_t it = 0; it < ntimes(); ++it)
    for (std::size_t j = 0; j < nnodes(); ++j)
      if (!std::isfinite(at(it, j)))
        throw NonFiniteValue(context + ": non-finite value at t=" +
                             format_full(times[it]) + ", x=" +
                             format_full(grid[j]));
}

void SpaceTimeField1D::require_same_layout(const SpaceTimeField1D& other) const {
  if (!grid.same_nodes(other.grid) || !times.same_nodes(other.times))
    throw GridMismatch("fields live on different grids (" + provenance + " vs " +
                       other.provenance + ")");
}

double SpaceTimeField1D::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double SpaceTimeField1D::interp_space(std::size_t it, double x) const {
  const auto& xs = grid.nodes;
  const double* v = slice(it);
  if (x <= xs.front()) return v[0];
  if (x >= xs.back()) return v[nnodes() - 1];
  const auto iter = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(iter - xs.begin());
  const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return (1.0 - w) * v[i - 1] + w * v[i];
}

double interp_cubic(const std::vector<double>& xs, const double* v, double x) {
  const std::size_t n = xs.size();
  if (x <= xs.front()) return v[0];
  if (x >= xs.back()) return v[n - 1];
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  if (n < 4) {
    const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return (1.0 - w) * v[i - 1] + w * v[i];
  }
  const std::size_t s = std::min(i >= 2 ? i - 2 : 0, n - 4);
  double acc = 0.0;
  for (std::size_t k = s; k < s + 4; ++k) {
    double lk = 1.0;
    for (std::size_t m = s; m < s + 4; ++m) {
      if (m == k) continue;
      lk *= (x - xs[m]) / (xs[k] - xs[m]);
    }
    acc += lk * v[k];
  }
  return acc;
}

std::size_t SpaceTimeField1D::nearest_time(double t) const {
  const auto& ts = times.nodes;
  const auto it = std::lower_bound(ts.begin(), ts.end(), t);
  if (it == ts.begin()) return 0;
  if (it == ts.end()) return ts.size() - 1;
  const std::size_t i = static_cast<std::size_t>(it - ts.begin());
  return (t - ts[i - 1] <= ts[i] - t) ? i - 1 : i;
}

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void SpaceTimeField1D::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "t,rho,value\n";
  for (std::size_t it = 0; it < ntimes(); ++it)
    for (std::size_t j = 0; j < nnodes(); ++j)
      out << format_full(times[it]) << ',' << format_full(grid[j]) << ','
          << format_full(at(it, j)) << '\n';
  if (!out) throw Error("write failed: " + path);
}

void SpaceTimeField1D::write_binary(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  const std::uint64_t nt = ntimes(), nx = nnodes();
  out.write(reinterpret_cast<const char*>(&nt), sizeof nt);
  out.write(reinterpret_cast<const char*>(&nx), sizeof nx);
  auto dump = [&out](const std::vector<double>& v) {
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
  };
  dump(grid.nodes);
  dump(times.nodes);
  dump(values);
  if (!out) throw Error("write failed: " + path);
}

std::uint64_t SpaceTimeField1D::checksum() const {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (std::size_t it = 0; it < ntimes(); ++it)
    for (std::size_t j = 0; j < nnodes(); ++j) {
      mix(format_full(at(it, j)));
      mix(";");
    }
  return h;
}

SpaceTimeField1D field_from_function(
    const Grid1D& grid, const TimeGrid& times,
    const std::function<double(double, double)>& f_rho_t,
    const std::string& provenance) {
  SpaceTimeField1D f;
  f.grid = grid;
  f.times = times;
  f.provenance = provenance;
  f.values.resize(grid.size() * times.size());
  for (std::size_t it = 0; it < times.size(); ++it)
    for (std::size_t j = 0; j < grid.size(); ++j)
      f.at(it, j) = f_rho_t(grid[j], times[it]);
  f.ensure_finite(provenance);
  return f;
}

std::uint64_t fnv1a64(const void* data, std::size_t nbytes) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 14695981039346656037ull;
  for (std::size_t i = 0; i < nbytes; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::uint64_t h = 14695981039346656037ull;
  char buf[65536];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    const std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  }
  return h;
}

}  // namespace swirlbound
