#pragma once

#include <cstddef>
#include <vector>

namespace swirlbound {

enum class GridSpacing { Uniform, GeometricNearZero, CellCentered, Window };

// 1D radial grid on [0, L] (or a window of it).
struct Grid1D {
  std::vector<double> nodes;
  double L = 0.0;
  GridSpacing spacing = GridSpacing::Uniform;

  // nodes 0, h, ..., L; enforces the truncation-radius floor L >= 10 that
  // keeps the initial-data plateaus inside the domain.
  static Grid1D half_line(double L, std::size_t ncells);
  // geometric refinement towards 0: spacing ratio `ratio` > 1 coarsening
  // outwards, first cell h0 chosen so the cells tile [0, L].
  static Grid1D half_line_geometric(double L, std::size_t ncells, double ratio);
  // cell centers (j + 1/2) h on (0, L): axis-symmetric solvers.
  static Grid1D cell_centered(double L, std::size_t ncells);
  // uniform nodes on [a, b] without the half-line constraints.
  static Grid1D window(double a, double b, std::size_t ncells);

  std::size_t size() const { return nodes.size(); }
  double operator[](std::size_t i) const { return nodes[i]; }
  // spacing of a uniform grid; throws if the grid is graded.
  double uniform_spacing() const;
  bool is_uniform(double rel_tol = 1e-12) const;
  // index of the node closest to x.
  std::size_t nearest(double x) const;

  bool same_nodes(const Grid1D& other, double tol = 0.0) const;
};

// Graded time nodes on [0, T - tau_min]: dt_n = min(dt_max, theta (T - t_n)),
// so the step shrinks with the distance to the horizon.
struct TimeGrid {
  std::vector<double> nodes;
  double horizon = 0.0;
  double tau_min = 0.0;
  double theta = 0.0;
  double dt_max = 0.0;

  static TimeGrid graded(double T, double theta = 1.0 / 64.0,
                         double dt_max = 1e-3, double tau_min_factor = 1e-4);
  static TimeGrid uniform(double t_end, std::size_t nsteps);

  std::size_t size() const { return nodes.size(); }
  double operator[](std::size_t i) const { return nodes[i]; }
  double front() const { return nodes.front(); }
  double back() const { return nodes.back(); }

  bool same_nodes(const TimeGrid& other, double tol = 0.0) const;
};

}  // namespace swirlbound
