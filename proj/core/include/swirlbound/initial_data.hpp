#pragma once

#include <vector>

namespace swirlbound {

enum class InitialKind { Linear, TwoAlphaLinear, LambdaZero, EtaBump, Tabulated };

// Initial profiles for the half-line and axis problems. All vanish at 0.
class InitialData1D {
 public:
  static InitialData1D linear(double alpha0);
  static InitialData1D two_alpha_linear(double alpha0);
  static InitialData1D lambda_zero(double alpha0);
  static InitialData1D eta_bump();
  static InitialData1D tabulated(std::vector<double> nodes,
                                 std::vector<double> values);

  InitialKind kind() const { return kind_; }
  double alpha0() const { return alpha0_; }

  double eval(double rho) const;
  double operator()(double rho) const { return eval(rho); }
  // one-sided at the piecewise joints
  double slope(double rho) const;
  // asymptotic slope as rho -> inf; the far Dirichlet policy advects the
  // boundary value by this times A(t).
  double far_slope() const;

 private:
  InitialData1D() = default;

  InitialKind kind_ = InitialKind::Linear;
  double alpha0_ = 1.0;
  std::vector<double> tab_nodes_;
  std::vector<double> tab_values_;
};

// LambdaZero profile: alpha0 rho^2 below 1/2, alpha0 rho above 1, monotone
// cubic Hermite bridge in between (C^1 at both joints, slope <= 2 alpha0).
InitialData1D make_lambda_zero(double alpha0);

}  // namespace swirlbound
