#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "swirlbound/errors.hpp"
#include "swirlbound/initial_data.hpp"
#include "swirlbound/lambda_modulus.hpp"
#include "swirlbound/special.hpp"

namespace swirlbound {
namespace {

constexpr int kSubSteps = 32;            // midpoint time nodes per sub-interval
constexpr double kContractionCap = 0.5;  // (sup g) * sqrt(len) budget
constexpr int kMaxSubIntervals = 64;

enum class Kernel { Value, Derivative };

// Row-major nq x nq matrix carrying kernel(r_i, rho_j; tau) * rho_j w_j, so a
// plain matrix-vector product is the quadrature of the convolution. The
// Gaussian factor is paired with scaled Bessel evaluations to stay finite for
// large r rho / tau.
std::vector<double> kernel_matrix(const QuadRule& q, double tau,
                                  Kernel which) {
  const auto& r = q.nodes;
  const auto& w = q.weights;
  const std::size_t n = r.size();
  std::vector<double> M(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    double* row = &M[i * n];
    for (std::size_t j = 0; j < n; ++j) {
      const double d = r[i] - r[j];
      const double gauss = std::exp(-d * d / (4.0 * tau));
      const double z = r[i] * r[j] / (2.0 * tau);
      double k;
      if (which == Kernel::Value) {
        k = gauss * bessel_i1_scaled(z) / (2.0 * tau);
      } else {
        const double comb =
            r[i] * (bessel_i0_scaled(z) + bessel_i2_scaled(z)) -
            2.0 * r[j] * bessel_i1_scaled(z);
        k = gauss * comb / (8.0 * tau * tau);
      }
      row[j] = k * r[j] * w[j];
    }
  }
  return M;
}

void apply(const std::vector<double>& M, const std::vector<double>& v,
           std::vector<double>& out) {
  const std::size_t n = v.size();
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = &M[i * n];
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * v[j];
    out[i] = acc;
  }
}

// acc += coef * M v
void axpy_apply(const std::vector<double>& M, const std::vector<double>& v,
                double coef, std::vector<double>& acc) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = &M[i * n];
    double dot = 0.0;
    for (std::size_t j = 0; j < n; ++j) dot += row[j] * v[j];
    acc[i] += coef * dot;
  }
}

std::vector<double> contraction_boundaries(const DriftProfile& drift,
                                           double t0, double t_end) {
  std::vector<double> bounds{t0};
  double t = t0;
  const auto fits = [&](double lo, double hi) {
    double sup = 0.0;
    for (int i = 0; i <= 32; ++i) {
      const double x = lo + (hi - lo) * i / 32.0;
      sup = std::max(sup, std::abs(drift.g(x)));
    }
    return sup * std::sqrt(hi - lo) <= kContractionCap;
  };
  while (t < t_end - 1e-14) {
    double next;
    if (fits(t, t_end)) {
      next = t_end;
    } else {
      double lo = t, hi = t_end;
      for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (fits(t, mid) ? lo : hi) = mid;
      }
      next = lo;
    }
    if (!(next > t + 1e-12) ||
        bounds.size() > static_cast<std::size_t>(kMaxSubIntervals))
      throw ContractionFailed(
          "drift too singular to partition [" + format_full(t0) + ", " +
          format_full(t_end) + "] into contracting sub-intervals");
    bounds.push_back(next);
    t = next;
  }
  return bounds;
}

// One Volterra sweep block on [t0, t1]: fixed-point iterate the midpoint
// profiles, then evaluate at the right endpoint where every kernel offset is
// a half-integer multiple of the step (no zero-offset kernel ever needed).
std::vector<double> march_subinterval(const QuadRule& q,
                                      const DriftProfile& drift, double t0,
                                      double t1,
                                      const std::vector<double>& f0,
                                      int iterations,
                                      std::vector<double>& changes) {
  const std::size_t nq = q.nodes.size();
  const int M = kSubSteps;
  const double dt = (t1 - t0) / M;
  std::vector<double> gs(M);
  for (int k = 0; k < M; ++k) gs[k] = drift.g(t0 + (k + 0.5) * dt);

  std::vector<std::vector<double>> Hs(M);
  for (int k = 0; k < M; ++k)
    Hs[k] = kernel_matrix(q, (k + 0.5) * dt, Kernel::Value);
  std::vector<std::vector<double>> Dint(M);  // Dint[m] = derivative kernel at m dt
  for (int m = 1; m < M; ++m)
    Dint[m] = kernel_matrix(q, m * dt, Kernel::Derivative);
  const auto Dhalf = kernel_matrix(q, 0.5 * dt, Kernel::Derivative);

  std::vector<std::vector<double>> F(M), Fn(M);
  for (int k = 0; k < M; ++k) apply(Hs[k], f0, F[k]);

  std::vector<double> scaled(nq), g0f0(nq);
  for (std::size_t i = 0; i < nq; ++i) g0f0[i] = drift.g(t0) * f0[i];

  double prev_change = std::numeric_limits<double>::infinity();
  for (int it = 0; it < iterations; ++it) {
    for (int k = 0; k < M; ++k) {
      apply(Hs[k], f0, Fn[k]);
      if (k == 0) {
        axpy_apply(Dhalf, g0f0, -0.5 * dt, Fn[k]);
      } else {
        for (int j = 0; j < k; ++j) {
          for (std::size_t i = 0; i < nq; ++i) scaled[i] = gs[j] * F[j][i];
          axpy_apply(Dint[k - j], scaled, -dt, Fn[k]);
        }
        for (std::size_t i = 0; i < nq; ++i)
          scaled[i] = gs[k - 1] * F[k - 1][i];
        axpy_apply(Dint[1], scaled, -0.5 * dt, Fn[k]);
      }
    }
    double change = 0.0;
    for (int k = 0; k < M; ++k)
      for (std::size_t i = 0; i < nq; ++i)
        change = std::max(change, std::abs(Fn[k][i] - F[k][i]));
    F.swap(Fn);
    changes.push_back(change);
    if (!std::isfinite(change) ||
        (it >= 2 && change > prev_change && change > 1e-9))
      throw ContractionFailed("iterates diverge on [" + format_full(t0) +
                              ", " + format_full(t1) + "]: sweep " +
                              std::to_string(it) + " moved by " +
                              format_full(change));
    prev_change = change;
    if (change < 1e-13) break;
  }

  std::vector<double> fe;
  apply(kernel_matrix(q, M * dt, Kernel::Value), f0, fe);
  for (int j = 0; j < M; ++j) {
    for (std::size_t i = 0; i < nq; ++i) scaled[i] = gs[j] * F[j][i];
    const auto& D = (j == M - 1)
                        ? Dhalf
                        : kernel_matrix(q, (M - j - 0.5) * dt,
                                        Kernel::Derivative);
    axpy_apply(D, scaled, -dt, fe);
  }
  return fe;
}

}  // namespace

QuadRule picard_quadrature() {
  static const struct {
    double a, b;
    std::size_t n;
  } panels[] = {{0.0, 0.0032, 16},  {0.0032, 0.032, 32}, {0.032, 0.32, 128},
                {0.32, 3.2, 256},   {3.2, 12.0, 96},     {12.0, 32.0, 64}};
  QuadRule rule;
  for (const auto& p : panels) {
    const QuadRule piece = gauss_legendre(p.n, p.a, p.b);
    rule.nodes.insert(rule.nodes.end(), piece.nodes.begin(),
                      piece.nodes.end());
    rule.weights.insert(rule.weights.end(), piece.weights.begin(),
                        piece.weights.end());
  }
  return rule;
}

std::vector<double> picard_heat_apply(const QuadRule& q, double tau,
                                      const std::vector<double>& f) {
  std::vector<double> out;
  apply(kernel_matrix(q, tau, Kernel::Value), f, out);
  return out;
}

std::vector<double> picard_drift_apply(const QuadRule& q, double tau,
                                       const std::vector<double>& f) {
  std::vector<double> out;
  apply(kernel_matrix(q, tau, Kernel::Derivative), f, out);
  return out;
}

SpaceTimeField1D picard_lambda_oracle(const LambdaProblem& problem,
                                      int iterations, PicardTrace* trace) {
  problem.validate();
  if (iterations < 1)
    throw ConfigInvalid("need at least one sweep", "picard.iterations");
  const QuadRule q = picard_quadrature();
  const auto init = InitialData1D::lambda_zero(problem.alpha0);
  std::vector<double> f(q.nodes.size());
  for (std::size_t i = 0; i < q.nodes.size(); ++i)
    f[i] = init.eval(q.nodes[i]) / q.nodes[i];

  const auto bounds = contraction_boundaries(
      problem.drift, problem.times.front(), problem.times.back());

  SpaceTimeField1D out;
  out.grid = Grid1D{q.nodes, q.nodes.back(), GridSpacing::Window};
  out.times = TimeGrid{bounds, problem.drift.horizon(), 0.0, 0.0, 0.0};
  out.provenance = "picard_ratio";
  out.values.reserve(bounds.size() * q.nodes.size());
  out.values.insert(out.values.end(), f.begin(), f.end());
  if (trace != nullptr) {
    trace->boundaries = bounds;
    trace->sup_changes.clear();
  }

  for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
    std::vector<double> changes;
    f = march_subinterval(q, problem.drift, bounds[s], bounds[s + 1], f,
                          iterations, changes);
    if (trace != nullptr) trace->sup_changes.push_back(std::move(changes));
    out.values.insert(out.values.end(), f.begin(), f.end());
  }
  out.ensure_finite("picard_ratio");
  return out;
}

AgreementReport picard_agreement(const SpaceTimeField1D& oracle_f,
                                 const SpaceTimeField1D& direct_f,
                                 double r_max) {
  // direct profile, time-interpolated, with the exact axis sample prepended
  // (the cell-centered grid starts half a cell out; flat extrapolation there
  // would manufacture a spurious near-axis disagreement)
  std::vector<double> xs, vs;
  xs.reserve(direct_f.nnodes() + 1);
  vs.reserve(direct_f.nnodes() + 1);
  const auto& dts = direct_f.times.nodes;

  AgreementReport rep;
  double sup_diff = 0.0, sup_ref = 0.0;
  for (std::size_t it = 0; it < oracle_f.ntimes(); ++it) {
    const double t = oracle_f.times[it];
    auto hi = std::lower_bound(dts.begin(), dts.end(), t - 1e-15);
    std::size_t n1 = static_cast<std::size_t>(hi - dts.begin());
    if (n1 == 0) n1 = 1;
    if (n1 >= dts.size()) n1 = dts.size() - 1;
    const std::size_t n0 = n1 - 1;
    const double w = std::clamp((t - dts[n0]) / (dts[n1] - dts[n0]), 0.0, 1.0);

    xs.assign(1, 0.0);
    vs.assign(1, 0.0);
    const double* a = direct_f.slice(n0);
    const double* b = direct_f.slice(n1);
    for (std::size_t j = 0; j < direct_f.nnodes(); ++j) {
      xs.push_back(direct_f.grid.nodes[j]);
      vs.push_back((1.0 - w) * a[j] + w * b[j]);
    }

    for (std::size_t i = 0; i < oracle_f.nnodes(); ++i) {
      const double r = oracle_f.grid.nodes[i];
      if (r > r_max) break;
      const auto ub = std::upper_bound(xs.begin(), xs.end(), r);
      const std::size_t k = static_cast<std::size_t>(ub - xs.begin());
      double ref;
      if (k >= xs.size()) {
        ref = vs.back();
      } else {
        const double ww = (r - xs[k - 1]) / (xs[k] - xs[k - 1]);
        ref = (1.0 - ww) * vs[k - 1] + ww * vs[k];
      }
      sup_ref = std::max(sup_ref, std::abs(ref));
      const double d = std::abs(oracle_f.at(it, i) - ref);
      if (d > sup_diff) {
        sup_diff = d;
        rep.at_t = t;
        rep.at_r = r;
      }
    }
  }
  rep.sup_rel_diff = sup_ref > 0.0 ? sup_diff / sup_ref : sup_diff;
  return rep;
}

}  // namespace swirlbound
