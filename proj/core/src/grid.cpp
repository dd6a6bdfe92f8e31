#include "swirlbound/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swirlbound/errors.hpp"

namespace swirlbound {

static void require(bool ok, const char* msg, const char* key) {
  if (!ok) throw ConfigInvalid(msg, key);
}

Grid1D Grid1D::half_line(double L, std::size_t ncells) {
  require(L >= 10.0, "half-line grid needs L >= 10", "grid.L");
  require(ncells >= 8, "half-line grid needs >= 8 cells", "grid.n");
  Grid1D g;
  g.L = L;
  g.spacing = GridSpacing::Uniform;
  g.nodes.resize(ncells + 1);
  for (std::size_t j = 0; j <= ncells; ++j)
    g.nodes[j] = L * static_cast<double>(j) / static_cast<double>(ncells);
  g.nodes.front() = 0.0;
  g.nodes.back() = L;
  return g;
}

Grid1D Grid1D::half_line_geometric(double L, std::size_t ncells, double ratio) {
  require(L >= 10.0, "half-line grid needs L >= 10", "grid.L");
  require(ncells >= 8, "half-line grid needs >= 8 cells", "grid.n");
  require(ratio > 1.0, "geometric grid needs ratio > 1", "grid.ratio");
  // h0 (ratio^n - 1)/(ratio - 1) = L
  const double n = static_cast<double>(ncells);
  const double h0 = L * (ratio - 1.0) / (std::pow(ratio, n) - 1.0);
  Grid1D g;
  g.L = L;
  g.spacing = GridSpacing::GeometricNearZero;
  g.nodes.resize(ncells + 1);
  g.nodes[0] = 0.0;
  double h = h0;
  for (std::size_t j = 1; j <= ncells; ++j) {
    g.nodes[j] = g.nodes[j - 1] + h;
    h *= ratio;
  }
  g.nodes.back() = L;
  return g;
}

Grid1D Grid1D::cell_centered(double L, std::size_t ncells) {
  require(L > 0.0, "cell-centered grid needs L > 0", "grid.L");
  require(ncells >= 4, "cell-centered grid needs >= 4 cells", "grid.n");
  Grid1D g;
  g.L = L;
  g.spacing = GridSpacing::CellCentered;
  g.nodes.resize(ncells);
  const double h = L / static_cast<double>(ncells);
  for (std::size_t j = 0; j < ncells; ++j)
    g.nodes[j] = (static_cast<double>(j) + 0.5) * h;
  return g;
}

Grid1D Grid1D::window(double a, double b, std::size_t ncells) {
  require(b > a, "window grid needs b > a", "grid.window");
  require(ncells >= 1, "window grid needs >= 1 cell", "grid.n");
  Grid1D g;
  g.L = b;
  g.spacing = GridSpacing::Window;
  g.nodes.resize(ncells + 1);
  for (std::size_t j = 0; j <= ncells; ++j)
    g.nodes[j] =
        a + (b - a) * static_cast<double>(j) / static_cast<double>(ncells);
  g.nodes.back() = b;
  return g;
}

double Grid1D::uniform_spacing() const {
  if (nodes.size() < 2) throw GridTooCoarse("grid has fewer than 2 nodes");
  const double h = nodes[1] - nodes[0];
  if (!is_uniform())
    throw GridMismatch("operation requires a uniform grid");
  return h;
}

bool Grid1D::is_uniform(double rel_tol) const {
  if (nodes.size() < 2) return true;
  const double h = nodes[1] - nodes[0];
  for (std::size_t j = 1; j + 1 < nodes.size(); ++j)
    if (std::abs((nodes[j + 1] - nodes[j]) - h) > rel_tol * std::max(1.0, h))
      return false;
  return true;
}

std::size_t Grid1D::nearest(double x) const {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
  if (it == nodes.begin()) return 0;
  if (it == nodes.end()) return nodes.size() - 1;
  const std::size_t i = static_cast<std::size_t>(it - nodes.begin());
  return (x - nodes[i - 1] <= nodes[i] - x) ? i - 1 : i;
}

bool Grid1D::same_nodes(const Grid1D& other, double tol) const {
  if (nodes.size() != other.nodes.size()) return false;
  for (std::size_t j = 0; j < nodes.size(); ++j)
    if (std::abs(nodes[j] - other.nodes[j]) > tol) return false;
  return true;
}

TimeGrid TimeGrid::graded(double T, double theta, double dt_max,
                          double tau_min_factor) {
  require(T > 0.0, "time grid needs T > 0", "time.T");
  require(theta > 0.0 && theta < 1.0, "grading constant must be in (0,1)",
          "time.theta");
  require(dt_max > 0.0, "dt_max must be positive", "time.dt_max");
  require(tau_min_factor > 0.0 && tau_min_factor < 1.0,
          "stop margin factor must be in (0,1)", "time.tau_min");
  TimeGrid tg;
  tg.horizon = T;
  tg.theta = theta;
  tg.dt_max = dt_max;
  tg.tau_min = tau_min_factor * T;
  const double stop = T - tg.tau_min;
  tg.nodes.push_back(0.0);
  for (;;) {
    const double t = tg.nodes.back();
    const double step = std::min(dt_max, theta * (T - t));
    if (t + step >= stop - 1e-15 * T) break;
    tg.nodes.push_back(t + step);
  }
  tg.nodes.push_back(stop);
  return tg;
}

TimeGrid TimeGrid::uniform(double t_end, std::size_t nsteps) {
  require(t_end > 0.0, "time grid needs t_end > 0", "time.t_end");
  require(nsteps >= 1, "time grid needs >= 1 step", "time.nsteps");
  TimeGrid tg;
  tg.horizon = t_end;
  tg.tau_min = 0.0;
  tg.theta = 0.0;
  tg.dt_max = t_end / static_cast<double>(nsteps);
  tg.nodes.resize(nsteps + 1);
  for (std::size_t n = 0; n <= nsteps; ++n)
    tg.nodes[n] =
        t_end * static_cast<double>(n) / static_cast<double>(nsteps);
  tg.nodes.back() = t_end;
  return tg;
}

bool TimeGrid::same_nodes(const TimeGrid& other, double tol) const {
  if (nodes.size() != other.nodes.size()) return false;
  for (std::size_t n = 0; n < nodes.size(); ++n)
    if (std::abs(nodes[n] - other.nodes[n]) > tol) return false;
  return true;
}

}  // namespace swirlbound
