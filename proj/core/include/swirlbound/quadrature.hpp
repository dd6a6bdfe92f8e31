#pragma once

#include <functional>
#include <vector>

namespace swirlbound {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [a, b]; nodes by Newton iteration on P_n.
QuadRule gauss_legendre(std::size_t n, double a, double b);

// Adaptive Simpson; throws QuadratureNotConverged when the recursion
// cannot reach the tolerance within max_depth.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 48);

// Composite trapezoid of sampled values.
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);
// Running trapezoid integral: out[0] = 0, out[j] = integral up to x[j].
std::vector<double> cumulative_trapezoid(const std::vector<double>& x,
                                         const std::vector<double>& y);

}  // namespace swirlbound
