#include "swirlbound/holder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "swirlbound/errors.hpp"

namespace swirlbound {

namespace {

std::string loc(double rho, double t) {
  return "rho=" + format_full(rho) + ", t=" + format_full(t);
}

// centered differences inside, one-sided at the ends
std::vector<double> slice_gradient(const SpaceTimeField1D& u, std::size_t it) {
  const auto& xs = u.grid.nodes;
  const double* v = u.slice(it);
  const std::size_t n = xs.size();
  std::vector<double> g(n);
  g[0] = (v[1] - v[0]) / (xs[1] - xs[0]);
  for (std::size_t j = 1; j + 1 < n; ++j)
    g[j] = (v[j + 1] - v[j - 1]) / (xs[j + 1] - xs[j - 1]);
  g[n - 1] = (v[n - 1] - v[n - 2]) / (xs[n - 1] - xs[n - 2]);
  return g;
}

std::vector<std::size_t> times_from(const SpaceTimeField1D& u, double t_lo) {
  std::vector<std::size_t> sel;
  for (std::size_t it = 0; it < u.ntimes(); ++it)
    if (u.times[it] >= t_lo - 1e-15) sel.push_back(it);
  return sel;
}

}  // namespace

nlohmann::json HolderReport::to_json() const {
  nlohmann::json j;
  j["alpha"] = alpha;
  j["C"] = C;
  j["C0"] = C0;
  j["C1"] = C1;
  j["rho0"] = rho0;
  j["rho1"] = rho1;
  j["epsilon"] = epsilon;
  j["delta"] = delta;
  j["window"] = {window_lo, window_hi};
  j["comparison_excess"] = comparison_excess;
  j["required_Cstar"] = required_Cstar;
  j["witnesses"] = witnesses;
  j["pass"] = pass;
  return j;
}

std::pair<double, double> estimate_holder_at_axis(const SpaceTimeField1D& u,
                                                  double t, double window_lo,
                                                  double window_hi) {
  const std::size_t it = u.nearest_time(t);
  const auto& xs = u.grid.nodes;
  const double* v = u.slice(it);
  std::vector<double> lx, ly;
  std::size_t in_window = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (xs[j] < window_lo || xs[j] > window_hi) continue;
    ++in_window;
    if (v[j] > 0.0) {
      lx.push_back(std::log(xs[j]));
      ly.push_back(std::log(v[j]));
    }
  }
  if (in_window < 2)
    throw InsufficientSamples("fit window [" + format_full(window_lo) + ", " +
                              format_full(window_hi) +
                              "] holds fewer than 2 grid nodes");
  if (lx.empty())
    throw NonPositiveSamples("field vanishes on the whole fit window at t=" +
                             format_full(u.times[it]));
  if (lx.size() < 2)
    throw InsufficientSamples("fewer than 2 positive samples in the fit window");
  const double n = static_cast<double>(lx.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0)
    throw InsufficientSamples("degenerate abscissas in the log-log fit");
  const double alpha = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - alpha * sx) / n;
  return {alpha, std::exp(intercept)};
}

HolderReport verify_lemma1(const SpaceTimeField1D& u, double K, double T,
                           double eps) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw ConfigInvalid("needs eps in (0,1)", "lemma1.eps");
  const auto& xs = u.grid.nodes;
  const std::size_t n = xs.size();
  const double delta = 0.05 * std::sqrt(T);
  const auto tsel = times_from(u, delta * delta);
  if (tsel.empty())
    throw InsufficientSamples("no stored times at or after delta^2");

  const double drho = xs[1] - xs[0];
  const double win_lo = 4.0 * drho, win_hi = 0.5;

  HolderReport rep;
  rep.epsilon = eps;
  rep.delta = delta;
  rep.window_lo = win_lo;
  rep.window_hi = win_hi;

  // (a) exponent from the final slice, then a constant making
  // u <= C0 (rho^alpha + rho) hold at every checked node; the fit intercept
  // is kept as a floor so the closed-form identity cases report their
  // textbook constant instead of the slack-halved one
  const auto [alpha_fit, cfit] =
      estimate_holder_at_axis(u, u.times.back(), win_lo, win_hi);
  const double alpha = std::min(alpha_fit, 1.0);
  rep.alpha = alpha;
  double c0 = cfit;
  double c0_rho = 0.0, c0_t = 0.0;
  for (const std::size_t it : tsel) {
    const double* v = u.slice(it);
    for (std::size_t j = 1; j < n; ++j) {
      const double ratio = v[j] / (std::pow(xs[j], alpha) + xs[j]);
      if (ratio > c0) {
        c0 = ratio;
        c0_rho = xs[j];
        c0_t = u.times[it];
      }
    }
  }
  rep.C0 = c0;
  rep.C = c0;
  rep.witnesses.push_back("C0 at " + loc(c0_rho, c0_t));

  // (b) gradient cap: suffix max of the time-max gradient, the interface
  // rho1 is where that suffix max joins its far plateau
  std::vector<double> gmax(n, -std::numeric_limits<double>::infinity());
  for (const std::size_t it : tsel) {
    const auto g = slice_gradient(u, it);
    for (std::size_t j = 0; j < n; ++j) gmax[j] = std::max(gmax[j], g[j]);
  }
  std::vector<double> suffix(n);
  double run = -std::numeric_limits<double>::infinity();
  for (std::size_t j = n; j-- > 0;) {
    run = std::max(run, gmax[j]);
    suffix[j] = run;
  }
  const double ref = suffix[u.grid.nearest(0.5 * xs.back())];
  std::size_t j1 = 0;
  while (j1 + 1 < n && suffix[j1] > ref * (1.0 + 1e-9)) ++j1;
  rep.rho1 = xs[j1];
  rep.C1 = suffix[j1];
  rep.witnesses.push_back("C1 plateau from rho1=" + format_full(rep.rho1));

  // (c) smallest rho0 with u >= (1-eps) rho beyond it, uniformly in t
  std::vector<double> qmin(n, std::numeric_limits<double>::infinity());
  std::vector<double> qmin_t(n, 0.0);
  for (const std::size_t it : tsel) {
    const double* v = u.slice(it);
    for (std::size_t j = 1; j < n; ++j) {
      const double q = v[j] / xs[j];
      if (q < qmin[j]) {
        qmin[j] = q;
        qmin_t[j] = u.times[it];
      }
    }
  }
  std::vector<double> smin(n, std::numeric_limits<double>::infinity());
  run = std::numeric_limits<double>::infinity();
  for (std::size_t j = n; j-- > 1;) {
    run = std::min(run, qmin[j]);
    smin[j] = run;
  }
  std::size_t j0 = n;
  for (std::size_t j = 1; j < n; ++j)
    if (smin[j] >= 1.0 - eps) {
      j0 = j;
      break;
    }
  if (j0 == n) {
    std::size_t jw = n - 1;
    for (std::size_t j = 1; j < n; ++j)
      if (qmin[j] < qmin[jw]) jw = j;
    throw PropertyFailed("no rho0 with u >= (1-eps) rho beyond it",
                         loc(xs[jw], qmin_t[jw]));
  }
  // the axis node carries u = 0 >= (1-eps) * 0, so a bound that holds from
  // the first interior node on holds from 0
  rep.rho0 = (j0 == 1) ? xs[0] : xs[j0];
  rep.witnesses.push_back("rho0 lower bound certified from rho=" +
                          format_full(rep.rho0));

  // closed-form ceiling u <= rho + 2 K sqrt(T), checked at every stored node
  const double cap = 2.0 * K * std::sqrt(T);
  double excess = -std::numeric_limits<double>::infinity();
  double ex_rho = 0.0, ex_t = 0.0;
  for (std::size_t it = 0; it < u.ntimes(); ++it) {
    const double* v = u.slice(it);
    for (std::size_t j = 0; j < n; ++j) {
      const double e = v[j] - (xs[j] + cap);
      if (e > excess) {
        excess = e;
        ex_rho = xs[j];
        ex_t = u.times[it];
      }
    }
  }
  rep.comparison_excess = excess;
  if (excess > 1e-8)
    throw PropertyFailed("comparison ceiling rho + 2 K sqrt(T) violated",
                         loc(ex_rho, ex_t));

  rep.pass = std::isfinite(rep.C0) && std::isfinite(rep.C1) &&
             rep.alpha > 0.0 && rep.alpha <= 1.0 + 1e-12;
  return rep;
}

HolderReport verify_lemma2(const SpaceTimeField1D& u, double alpha0, double eps,
                           double delta) {
  if (!(alpha0 > 0.0)) throw ConfigInvalid("needs alpha0 > 0", "lemma2.alpha0");
  if (!(eps > 0.0) || !(eps < 1.0))
    throw ConfigInvalid("needs eps in (0,1)", "lemma2.eps");
  if (!(delta > 0.0)) throw ConfigInvalid("needs delta > 0", "lemma2.delta");
  const auto& xs = u.grid.nodes;
  const std::size_t n = xs.size();
  const double drho = xs[1] - xs[0];
  // growth/lower-bound checks quantify over [delta^2, end]; the gradient
  // band is asked for t >= delta only
  const auto tsel = times_from(u, delta * delta);
  const auto tsel_c = times_from(u, delta);
  if (tsel.empty() || tsel_c.empty())
    throw InsufficientSamples("time grid ends before the requested delta");

  HolderReport rep;
  rep.epsilon = eps;
  rep.delta = delta;
  rep.window_lo = 4.0 * drho;
  rep.window_hi = 0.5;

  const auto [alpha_fit, cfit] =
      estimate_holder_at_axis(u, u.times.back(), rep.window_lo, rep.window_hi);
  (void)cfit;
  // sublinear data can fit super-linear growth in the window early on; the
  // claimed exponent lives in (0, 1]
  const double alpha = std::min(alpha_fit, 1.0);
  rep.alpha = alpha;

  double c0 = 0.0;
  double c0_rho = 0.0, c0_t = 0.0;
  for (const std::size_t it : tsel) {
    const double* v = u.slice(it);
    for (std::size_t j = 1; j < n; ++j) {
      const double ratio = v[j] / (alpha0 * (std::pow(xs[j], alpha) + xs[j]));
      if (ratio > c0) {
        c0 = ratio;
        c0_rho = xs[j];
        c0_t = u.times[it];
      }
    }
  }
  rep.C0 = c0;
  rep.C = c0;
  rep.witnesses.push_back("C0 at " + loc(c0_rho, c0_t));

  // (b) linear lower bound beyond rho0
  std::vector<double> qmin(n, std::numeric_limits<double>::infinity());
  std::vector<double> qmin_t(n, 0.0);
  for (const std::size_t it : tsel) {
    const double* v = u.slice(it);
    for (std::size_t j = 1; j < n; ++j) {
      const double q = v[j] / (alpha0 * xs[j]);
      if (q < qmin[j]) {
        qmin[j] = q;
        qmin_t[j] = u.times[it];
      }
    }
  }
  std::size_t j0 = n;
  {
    std::vector<double> smin(n, std::numeric_limits<double>::infinity());
    double run = std::numeric_limits<double>::infinity();
    for (std::size_t j = n; j-- > 1;) {
      run = std::min(run, qmin[j]);
      smin[j] = run;
    }
    for (std::size_t j = 1; j < n; ++j)
      if (smin[j] >= 1.0 - eps) {
        j0 = j;
        break;
      }
  }
  if (j0 == n) {
    std::size_t jw = n - 1;
    for (std::size_t j = 1; j < n; ++j)
      if (qmin[j] < qmin[jw]) jw = j;
    throw PropertyFailed("no rho0 with u >= (1-eps) alpha0 rho beyond it",
                         loc(xs[jw], qmin_t[jw]));
  }
  rep.rho0 = (j0 == 1) ? xs[0] : xs[j0];
  rep.rho1 = rep.rho0;

  // (c) gradient band on rho >= rho0, t >= delta
  const double tol = 1e-6 * std::max(1.0, u.max_abs());
  const double cap = rep.C0 * alpha0;
  for (const std::size_t it : tsel_c) {
    const auto g = slice_gradient(u, it);
    for (std::size_t j = j0; j < n; ++j) {
      if (g[j] < -tol)
        throw PropertyFailed("gradient dropped below 0 in the far band",
                             loc(xs[j], u.times[it]));
      if (g[j] > cap + tol)
        throw PropertyFailed("gradient exceeded C0 alpha0 in the far band",
                             loc(xs[j], u.times[it]));
    }
  }
  rep.C1 = cap;
  rep.witnesses.push_back("gradient band certified from rho0=" +
                          format_full(rep.rho0));

  rep.pass = std::isfinite(rep.C0) && rep.alpha > 0.0 &&
             rep.alpha <= 1.0 + 1e-12;
  return rep;
}

}  // namespace swirlbound
