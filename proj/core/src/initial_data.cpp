#include "swirlbound/initial_data.hpp"

#include <algorithm>
#include <cmath>

#include "swirlbound/errors.hpp"
#include "swirlbound/special.hpp"

namespace swirlbound {

namespace {

const double kLn10 = std::log(10.0);

// cubic Hermite basis on s in [0,1]
inline double h00(double s) { return (2.0 * s - 3.0) * s * s + 1.0; }
inline double h10(double s) { return ((s - 2.0) * s + 1.0) * s; }
inline double h01(double s) { return (3.0 - 2.0 * s) * s * s; }
inline double h11(double s) { return (s - 1.0) * s * s; }
inline double dh00(double s) { return 6.0 * s * (s - 1.0); }
inline double dh10(double s) { return (3.0 * s - 4.0) * s + 1.0; }
inline double dh01(double s) { return 6.0 * s * (1.0 - s); }
inline double dh11(double s) { return (3.0 * s - 2.0) * s; }

// bridge on [1/2, 1]: value alpha0/4 -> alpha0, slope alpha0 at both ends
inline double bridge(double alpha0, double rho) {
  const double s = 2.0 * rho - 1.0;
  const double w = 0.5;
  return alpha0 * (0.25 * h00(s) + w * h10(s) + h01(s) + w * h11(s));
}

inline double bridge_slope(double alpha0, double rho) {
  const double s = 2.0 * rho - 1.0;
  const double w = 0.5;
  return 2.0 * alpha0 * (0.25 * dh00(s) + w * dh10(s) + dh01(s) + w * dh11(s));
}

}  // namespace

InitialData1D InitialData1D::linear(double alpha0) {
  if (!(alpha0 > 0.0))
    throw ConfigInvalid("linear initial data needs alpha0 > 0", "initial.alpha0");
  InitialData1D d;
  d.kind_ = InitialKind::Linear;
  d.alpha0_ = alpha0;
  return d;
}

InitialData1D InitialData1D::two_alpha_linear(double alpha0) {
  if (!(alpha0 > 0.0))
    throw ConfigInvalid("linear initial data needs alpha0 > 0", "initial.alpha0");
  InitialData1D d;
  d.kind_ = InitialKind::TwoAlphaLinear;
  d.alpha0_ = alpha0;
  return d;
}

InitialData1D InitialData1D::lambda_zero(double alpha0) {
  if (!(alpha0 > 0.0))
    throw ConfigInvalid("lambda-zero data needs alpha0 > 0", "initial.alpha0");
  InitialData1D d;
  d.kind_ = InitialKind::LambdaZero;
  d.alpha0_ = alpha0;
  return d;
}

InitialData1D InitialData1D::eta_bump() {
  InitialData1D d;
  d.kind_ = InitialKind::EtaBump;
  d.alpha0_ = 0.0;
  return d;
}

InitialData1D InitialData1D::tabulated(std::vector<double> nodes,
                                       std::vector<double> values) {
  if (nodes.size() < 2 || nodes.size() != values.size())
    throw ConfigInvalid("tabulated data needs matching tables, length >= 2",
                        "initial.nodes");
  for (size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i] > nodes[i - 1]))
      throw ConfigInvalid("tabulated nodes must increase strictly",
                          "initial.nodes");
  InitialData1D d;
  d.kind_ = InitialKind::Tabulated;
  d.alpha0_ = 0.0;
  d.tab_nodes_ = std::move(nodes);
  d.tab_values_ = std::move(values);
  return d;
}

double InitialData1D::eval(double rho) const {
  switch (kind_) {
    case InitialKind::Linear:
      return alpha0_ * rho;
    case InitialKind::TwoAlphaLinear:
      return 2.0 * alpha0_ * rho;
    case InitialKind::LambdaZero:
      if (rho <= 0.5) return alpha0_ * rho * rho;
      if (rho >= 1.0) return alpha0_ * rho;
      return bridge(alpha0_, rho);
    case InitialKind::EtaBump:
      return eta_ramp(1.0 - rho / kLn10);
    case InitialKind::Tabulated: {
      const auto& xs = tab_nodes_;
      const auto& ys = tab_values_;
      if (rho <= xs.front())
        return ys.front() + (ys[1] - ys[0]) / (xs[1] - xs[0]) * (rho - xs[0]);
      if (rho >= xs.back()) {
        const size_t n = xs.size();
        return ys.back() + (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]) *
                               (rho - xs.back());
      }
      const auto it = std::upper_bound(xs.begin(), xs.end(), rho);
      const size_t i = static_cast<size_t>(it - xs.begin());
      const double w = (rho - xs[i - 1]) / (xs[i] - xs[i - 1]);
      return (1.0 - w) * ys[i - 1] + w * ys[i];
    }
  }
  return 0.0;
}

double InitialData1D::slope(double rho) const {
  switch (kind_) {
    case InitialKind::Linear:
      return alpha0_;
    case InitialKind::TwoAlphaLinear:
      return 2.0 * alpha0_;
    case InitialKind::LambdaZero:
      if (rho <= 0.5) return 2.0 * alpha0_ * rho;
      if (rho >= 1.0) return alpha0_;
      return bridge_slope(alpha0_, rho);
    case InitialKind::EtaBump:
      return -eta_ramp_prime(1.0 - rho / kLn10) / kLn10;
    case InitialKind::Tabulated: {
      const auto& xs = tab_nodes_;
      const auto& ys = tab_values_;
      const auto it = std::upper_bound(xs.begin(), xs.end(), rho);
      size_t i = static_cast<size_t>(it - xs.begin());
      i = std::min(std::max<size_t>(i, 1), xs.size() - 1);
      return (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
    }
  }
  return 0.0;
}

double InitialData1D::far_slope() const {
  switch (kind_) {
    case InitialKind::Linear:
      return alpha0_;
    case InitialKind::TwoAlphaLinear:
      return 2.0 * alpha0_;
    case InitialKind::LambdaZero:
      return alpha0_;
    case InitialKind::EtaBump:
      return 0.0;
    case InitialKind::Tabulated: {
      const size_t n = tab_nodes_.size();
      return (tab_values_[n - 1] - tab_values_[n - 2]) /
             (tab_nodes_[n - 1] - tab_nodes_[n - 2]);
    }
  }
  return 0.0;
}

InitialData1D make_lambda_zero(double alpha0) {
  return InitialData1D::lambda_zero(alpha0);
}

}  // namespace swirlbound
