#pragma once

#include <vector>

namespace swirlbound {

enum class DriftKind { TypeI, LogSupercritical, Constant, Zero, Tabulated };

struct DriftSample {
  double g;
  double A;
};

// Drift coefficient g(t) together with its primitive A(t) = ∫₀ᵗ g.
// Closed forms where they exist, composite trapezoid for tabulated data.
class DriftProfile {
 public:
  static DriftProfile type_one(double K, double T);
  static DriftProfile log_supercritical();
  static DriftProfile constant(double c);
  static DriftProfile zero();
  static DriftProfile tabulated(std::vector<double> times,
                                std::vector<double> values);

  // Same profile with g and A negated (decreasing-boundary problems).
  DriftProfile negated() const;

  DriftKind kind() const { return kind_; }
  // First time at which eval is no longer defined (+inf when none).
  double horizon() const { return horizon_; }
  double param_K() const { return K_; }
  double param_T() const { return T_; }

  DriftSample eval(double t) const;  // throws HorizonExceeded at t >= horizon
  double g(double t) const { return eval(t).g; }
  double A(double t) const { return eval(t).A; }

  // (A(t1) - A(t0)) / (t1 - t0): the step-averaged drift used by the
  // implicit marchers so affine profiles stay discrete-exact.
  double step_average(double t0, double t1) const;

 private:
  DriftProfile() = default;

  DriftKind kind_ = DriftKind::Zero;
  double K_ = 0.0;  // TypeI strength, Constant value
  double T_ = 0.0;  // TypeI horizon
  double sign_ = 1.0;
  double horizon_ = 0.0;
  std::vector<double> tab_times_;
  std::vector<double> tab_values_;
  std::vector<double> tab_primitive_;  // trapezoid partial sums
};

DriftSample drift_eval(const DriftProfile& profile, double t);

}  // namespace swirlbound
