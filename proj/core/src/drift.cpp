#include "swirlbound/drift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "swirlbound/errors.hpp"

namespace swirlbound {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DriftProfile DriftProfile::type_one(double K, double T) {
  if (!(K > 0.0)) throw ConfigInvalid("TypeI drift needs K > 0", "drift.K");
  if (!(T > 0.0)) throw ConfigInvalid("TypeI drift needs T > 0", "drift.T");
  DriftProfile p;
  p.kind_ = DriftKind::TypeI;
  p.K_ = K;
  p.T_ = T;
  p.horizon_ = T;
  return p;
}

DriftProfile DriftProfile::log_supercritical() {
  DriftProfile p;
  p.kind_ = DriftKind::LogSupercritical;
  p.T_ = 1.0;
  p.horizon_ = 1.0;
  return p;
}

DriftProfile DriftProfile::constant(double c) {
  DriftProfile p;
  p.kind_ = DriftKind::Constant;
  p.K_ = c;
  p.horizon_ = kInf;
  return p;
}

DriftProfile DriftProfile::zero() {
  DriftProfile p;
  p.kind_ = DriftKind::Zero;
  p.horizon_ = kInf;
  return p;
}

DriftProfile DriftProfile::tabulated(std::vector<double> times,
                                     std::vector<double> values) {
  if (times.size() < 2 || times.size() != values.size())
    throw ConfigInvalid("tabulated drift needs matching tables, length >= 2",
                        "drift.times");
  for (size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw ConfigInvalid("tabulated drift times must increase strictly",
                          "drift.times");
  DriftProfile p;
  p.kind_ = DriftKind::Tabulated;
  p.horizon_ = kInf;  // clamped past the table, see eval
  p.tab_times_ = std::move(times);
  p.tab_values_ = std::move(values);
  p.tab_primitive_.assign(p.tab_times_.size(), 0.0);
  for (size_t i = 1; i < p.tab_times_.size(); ++i) {
    const double dt = p.tab_times_[i] - p.tab_times_[i - 1];
    p.tab_primitive_[i] = p.tab_primitive_[i - 1] +
                          0.5 * (p.tab_values_[i] + p.tab_values_[i - 1]) * dt;
  }
  return p;
}

DriftProfile DriftProfile::negated() const {
  DriftProfile p = *this;
  p.sign_ = -p.sign_;
  return p;
}

DriftSample DriftProfile::eval(double t) const {
  if (t >= horizon_)
    throw HorizonExceeded("drift evaluated at t = " + std::to_string(t) +
                          " >= horizon " + std::to_string(horizon_));
  double g = 0.0, A = 0.0;
  switch (kind_) {
    case DriftKind::TypeI: {
      const double s = std::sqrt(T_ - t);
      g = K_ / s;
      A = 2.0 * K_ * (std::sqrt(T_) - s);
      break;
    }
    case DriftKind::LogSupercritical: {
      const double m = 1.0 - t;
      const double s = std::sqrt(m);
      const double lg = std::log(10.0 / m);
      g = lg / s;
      // d/dt [-2 sqrt(1-t) (log(10/(1-t)) + 2)] = log(10/(1-t))/sqrt(1-t)
      A = 2.0 * (std::log(10.0) + 2.0) - 2.0 * s * (lg + 2.0);
      break;
    }
    case DriftKind::Constant:
      g = K_;
      A = K_ * t;
      break;
    case DriftKind::Zero:
      break;
    case DriftKind::Tabulated: {
      const auto& ts = tab_times_;
      const auto& vs = tab_values_;
      if (t <= ts.front()) {
        g = vs.front();
        A = vs.front() * (t - ts.front()) + 0.0;
        // table is assumed to start at the experiment origin; A(front) = 0
      } else if (t >= ts.back()) {
        g = vs.back();
        A = tab_primitive_.back() + vs.back() * (t - ts.back());
      } else {
        const auto it = std::upper_bound(ts.begin(), ts.end(), t);
        const size_t i = static_cast<size_t>(it - ts.begin());
        const double t0 = ts[i - 1], t1 = ts[i];
        const double w = (t - t0) / (t1 - t0);
        g = (1.0 - w) * vs[i - 1] + w * vs[i];
        A = tab_primitive_[i - 1] + 0.5 * (vs[i - 1] + g) * (t - t0);
      }
      break;
    }
  }
  return {sign_ * g, sign_ * A};
}

double DriftProfile::step_average(double t0, double t1) const {
  if (!(t1 > t0)) throw Error("step_average needs t1 > t0");
  return (A(t1) - A(t0)) / (t1 - t0);
}

DriftSample drift_eval(const DriftProfile& profile, double t) {
  return profile.eval(t);
}

}  // namespace swirlbound
