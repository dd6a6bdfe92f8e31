#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "swirlbound/field.hpp"

namespace swirlbound {

struct HolderReport {
  double alpha = 0.0;
  double C = 0.0;  // fitted / seminorm constant of the producing check
  double C0 = 0.0;
  double C1 = 0.0;
  double rho0 = 0.0;
  double rho1 = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  // largest excess of u over the closed-form comparison profile, when the
  // producing check carries one
  double comparison_excess = 0.0;
  // proposition route: smallest multiplier closing the seminorm-vs-sup bound
  double required_Cstar = 0.0;
  std::vector<double> residuals;  // per-slice trace
  std::vector<std::string> witnesses;
  bool pass = false;

  nlohmann::json to_json() const;
};

// Log-log least squares of u against rho over the window at the stored time
// nearest t. Returns (alpha, C) with u ~ C rho^alpha.
std::pair<double, double> estimate_holder_at_axis(const SpaceTimeField1D& u,
                                                  double t, double window_lo,
                                                  double window_hi);

// Checks for solutions with linear unit-slope data under a blow-up drift:
// (a) near-axis growth u <= C0 (rho^alpha + rho),
// (b) gradient cap beyond the plateau-join radius rho1,
// (c) linear lower bound u >= (1-eps) rho beyond rho0,
// plus the closed-form comparison u <= rho + 2 K sqrt(T).
HolderReport verify_lemma1(const SpaceTimeField1D& u, double K, double T,
                           double eps);

// Same battery for sublinear data with far slope alpha0:
// growth u <= C0 alpha0 (rho^alpha + rho), lower bound u >= (1-eps) alpha0 rho
// beyond rho0, and the gradient band 0 <= du <= C0 alpha0 for rho >= rho0,
// t >= delta.
HolderReport verify_lemma2(const SpaceTimeField1D& u, double alpha0, double eps,
                           double delta);

}  // namespace swirlbound
