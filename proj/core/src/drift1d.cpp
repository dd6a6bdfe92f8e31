#include "swirlbound/drift1d.hpp"

#include <cmath>
#include <vector>

#include "swirlbound/errors.hpp"
#include "swirlbound/quadrature.hpp"
#include "swirlbound/tridiag.hpp"

namespace swirlbound {

namespace {

struct RowCoeffs {
  double w, c, e;  // L u |_j = w u_{j-1} + c u_j + e u_{j+1}
};

RowCoeffs spatial_row(double hm, double hp, double gbar,
                      DriftDiscretization disc) {
  const double aw = 2.0 / (hm * (hm + hp));
  const double ae = 2.0 / (hp * (hm + hp));
  RowCoeffs rc{aw, -(aw + ae), ae};
  if (disc == DriftDiscretization::Upwind) {
    if (gbar >= 0.0) {
      rc.e += gbar / hp;
      rc.c -= gbar / hp;
    } else {
      rc.c += gbar / hm;
      rc.w -= gbar / hm;
    }
  } else {
    rc.w += gbar * (-hp / (hm * (hm + hp)));
    rc.c += gbar * ((hp - hm) / (hm * hp));
    rc.e += gbar * (hm / (hp * (hm + hp)));
  }
  return rc;
}

}  // namespace

SpaceTimeField1D solve_halfline(const HalfLineProblem& pb) {
  const auto& xs = pb.grid.nodes;
  const std::size_t n = xs.size();
  if (n < 3) throw GridTooCoarse("half-line solve needs at least 3 nodes");
  if (pb.times.size() < 1) throw ConfigInvalid("empty time grid", "time");
  if (std::abs(pb.initial.eval(0.0)) > 1e-12)
    throw ConfigInvalid("initial data must vanish at the axis", "initial");

  SpaceTimeField1D F;
  F.grid = pb.grid;
  F.times = pb.times;
  F.provenance = pb.label;
  F.values.resize(n * pb.times.size());
  for (std::size_t j = 0; j < n; ++j) F.at(0, j) = pb.initial.eval(xs[j]);
  F.at(0, 0) = 0.0;

  const double far_base = pb.initial.eval(xs.back());
  const double far_slope = pb.initial.far_slope();
  const bool cn = pb.scheme == TimeScheme::CrankNicolson;

  std::vector<double> dl(n), d(n), du(n), rhs(n);
  TridiagWorkspace ws;

  for (std::size_t k = 0; k + 1 < pb.times.size(); ++k) {
    const double t0 = pb.times[k], t1 = pb.times[k + 1];
    const double dt = t1 - t0;
    const double gbar = pb.drift.step_average(t0, t1);
    const double* uc = F.slice(k);
    double* un = F.slice(k + 1);

    if (pb.drift_disc == DriftDiscretization::Centered) {
      double hmax = 0.0;
      for (std::size_t j = 1; j < n; ++j)
        hmax = std::max(hmax, xs[j] - xs[j - 1]);
      if (std::abs(gbar) * hmax > pb.peclet_cap)
        throw GridTooCoarse("cell Peclet number " +
                            format_full(std::abs(gbar) * hmax) +
                            " exceeds cap " + format_full(pb.peclet_cap) +
                            " under the centered drift variant");
    }

    dl[0] = 0.0;
    d[0] = 1.0;
    du[0] = 0.0;
    rhs[0] = 0.0;
    for (std::size_t j = 1; j + 1 < n; ++j) {
      const double hm = xs[j] - xs[j - 1];
      const double hp = xs[j + 1] - xs[j];
      const RowCoeffs rc = spatial_row(hm, hp, gbar, pb.drift_disc);
      const double w = cn ? 0.5 : 1.0;
      dl[j] = -dt * w * rc.w;
      d[j] = 1.0 - dt * w * rc.c;
      du[j] = -dt * w * rc.e;
      rhs[j] = uc[j];
      if (cn)
        rhs[j] += 0.5 * dt *
                  (rc.w * uc[j - 1] + rc.c * uc[j] + rc.e * uc[j + 1]);
    }
    if (pb.far == FarPolicy::LinearComparison) {
      dl[n - 1] = 0.0;
      d[n - 1] = 1.0;
      du[n - 1] = 0.0;
      rhs[n - 1] = far_base + far_slope * pb.drift.A(t1);
    } else {
      dl[n - 1] = -1.0;
      d[n - 1] = 1.0;
      du[n - 1] = 0.0;
      rhs[n - 1] = 0.0;
    }

    tridiag_solve(dl.data(), d.data(), du.data(), rhs.data(), un, n, ws);
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(un[j]))
        throw NonFiniteValue(pb.label + ": step to t=" + format_full(t1) +
                             " produced a non-finite value");
  }
  return F;
}

double explicit_wholeline(const std::function<double(double)>& initial,
                          const DriftProfile& drift, double r, double t) {
  if (t < 0.0) throw Error("explicit_wholeline needs t >= 0");
  if (t == 0.0) return initial(r);
  const double y0 = r + drift.A(t);
  const double sig = 2.0 * std::sqrt(t);
  // substitution y = y0 + sig s turns the kernel into pi^{-1/2} e^{-s^2};
  // [-10, 10] truncates at e^{-100} times at-most-linear data
  const auto integrand = [&](double s) {
    return std::exp(-s * s) * initial(y0 + sig * s);
  };
  const double scale =
      std::max({1.0, std::abs(initial(y0)), std::abs(initial(y0 - sig)),
                std::abs(initial(y0 + sig))});
  const double raw = adaptive_simpson(integrand, -10.0, 10.0, 1e-12 * scale, 48);
  return raw / std::sqrt(M_PI);
}

std::pair<SpaceTimeField1D, SpaceTimeField1D> solve_robin(
    const DriftProfile& drift, const Grid1D& grid, const TimeGrid& times) {
  const double h = grid.uniform_spacing();
  const std::size_t n = grid.size();
  if (grid.nodes.front() != 0.0)
    throw ConfigInvalid("zero-flux solve needs a grid starting at 0", "grid");

  SpaceTimeField1D v;
  v.grid = grid;
  v.times = times;
  v.provenance = "robin_v";
  v.values.assign(n * times.size(), 1.0);

  std::vector<double> dl(n), d(n), du(n), rhs(n);
  TridiagWorkspace ws;

  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double t0 = times[k], t1 = times[k + 1];
    const double dt = t1 - t0;
    const double gbar = drift.step_average(t0, t1);
    const double* vc = v.slice(k);
    double* vn = v.slice(k + 1);

    // half cell at the axis node; discrete flux through 0 is identically 0
    dl[0] = 0.0;
    d[0] = 0.5 * h / dt + 1.0 / h;
    du[0] = -(1.0 / h + gbar);
    rhs[0] = 0.5 * h / dt * vc[0];
    for (std::size_t j = 1; j + 1 < n; ++j) {
      dl[j] = -1.0 / h;
      d[j] = h / dt + 2.0 / h + gbar;
      du[j] = -(1.0 / h + gbar);
      rhs[j] = h / dt * vc[j];
    }
    dl[n - 1] = 0.0;
    d[n - 1] = 1.0;
    du[n - 1] = 0.0;
    rhs[n - 1] = 1.0;

    tridiag_solve(dl.data(), d.data(), du.data(), rhs.data(), vn, n, ws);
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(vn[j]))
        throw NonFiniteValue("robin: step to t=" + format_full(t1) +
                             " produced a non-finite value");
  }

  SpaceTimeField1D u;
  u.grid = grid;
  u.times = times;
  u.provenance = "robin_u";
  u.values.resize(n * times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double* vk = v.slice(k);
    double* uk = u.slice(k);
    uk[0] = 0.0;
    for (std::size_t j = 1; j < n; ++j)
      uk[j] = uk[j - 1] + 0.5 * (vk[j] + vk[j - 1]) * (grid[j] - grid[j - 1]);
  }
  return {std::move(v), std::move(u)};
}

ComparisonReport check_comparison(const SpaceTimeField1D& lower,
                                  const SpaceTimeField1D& upper, double tol) {
  lower.require_same_layout(upper);
  ComparisonReport rep;
  rep.tol = tol;
  rep.max_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < lower.ntimes(); ++it)
    for (std::size_t j = 0; j < lower.nnodes(); ++j) {
      const double excess = lower.at(it, j) - upper.at(it, j);
      if (excess > rep.max_excess) {
        rep.max_excess = excess;
        rep.at_rho = lower.grid[j];
        rep.at_t = lower.times[it];
      }
    }
  rep.pass = rep.max_excess <= tol;
  return rep;
}

}  // namespace swirlbound
