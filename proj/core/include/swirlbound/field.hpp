#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "swirlbound/grid.hpp"

namespace swirlbound {

// Node values over (time, space), time-major. Immutable by convention once a
// solver hands it out.
struct SpaceTimeField1D {
  Grid1D grid;
  TimeGrid times;
  std::vector<double> values;  // size times.size() * grid.size()
  std::string provenance;      // which solver produced it

  double at(std::size_t it, std::size_t j) const {
    return values[it * grid.size() + j];
  }
  double& at(std::size_t it, std::size_t j) {
    return values[it * grid.size() + j];
  }
  const double* slice(std::size_t it) const {
    return values.data() + it * grid.size();
  }
  double* slice(std::size_t it) { return values.data() + it * grid.size(); }

  std::size_t ntimes() const { return times.size(); }
  std::size_t nnodes() const { return grid.size(); }

  // throws NonFiniteValue naming the first bad entry
  void ensure_finite(const std::string& context) const;
  // throws GridMismatch unless both grids and time grids coincide
  void require_same_layout(const SpaceTimeField1D& other) const;

  double max_abs() const;
  // linear interpolation in space at a fixed stored time index
  double interp_space(std::size_t it, double x) const;
  // time index of the stored node nearest t
  std::size_t nearest_time(double t) const;

  // CSV columns: t, rho, value (full decimal precision, %.17g)
  void write_csv(const std::string& path) const;
  // raw little-endian doubles: header counts, then nodes, times, values
  void write_binary(const std::string& path) const;
  std::uint64_t checksum() const;  // FNV-1a over the %.17g rendering
};

SpaceTimeField1D field_from_function(
    const Grid1D& grid, const TimeGrid& times,
    const std::function<double(double, double)>& f_rho_t,
    const std::string& provenance);

// 4-point Lagrange interpolation on sorted abscissas, clamped beyond the node
// range; falls back to linear when fewer than four samples exist.
double interp_cubic(const std::vector<double>& xs, const double* values,
                    double x);

// FNV-1a 64-bit over a byte buffer.
std::uint64_t fnv1a64(const void* data, std::size_t nbytes);
std::uint64_t fnv1a64_file(const std::string& path);

// %.17g rendering shared by every CSV writer so outputs are reproducible.
std::string format_full(double x);

}  // namespace swirlbound
