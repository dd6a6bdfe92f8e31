#include "swirlbound/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>

#include <nlohmann/json.hpp>

#include "swirlbound/drift.hpp"
#include "swirlbound/drift1d.hpp"
#include "swirlbound/errors.hpp"
#include "swirlbound/field.hpp"
#include "swirlbound/initial_data.hpp"
#include "swirlbound/quadrature.hpp"
#include "swirlbound/special.hpp"

namespace swirlbound {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kLn10 = 2.302585092994046;
}  // namespace

double EtaProfile::eval(double s) const { return eta_ramp(s); }
double EtaProfile::deriv(double s) const { return eta_ramp_prime(s); }
double EtaProfile::second(double s) const { return eta_ramp_second(s); }

EtaProfile build_eta(double a) {
  if (!(a >= 0.5 * kPi * kPi))
    throw ConfigInvalid("curvature constant below the ramp's spectral floor",
                        "eta.a");
  EtaProfile eta;
  eta.a = a;
  eta.min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 20000; ++i) {
    const double s = -0.5 + 2.0 * i / 20000.0;  // covers both flats and ramp
    const double gap = eta.second(s) + a * eta.eval(s);
    eta.min_gap = std::min(eta.min_gap, gap);
    if (eta.deriv(s) > 0.0)
      throw AdmissibilityFailed("ramp fails to be nonincreasing at s=" +
                                format_full(s));
  }
  if (eta.min_gap < -1e-10)
    throw AdmissibilityFailed("curvature bound fails: min gap " +
                              format_full(eta.min_gap));
  return eta;
}

CounterexampleSpec CounterexampleSpec::standard() {
  CounterexampleSpec spec;
  spec.a = 0.5 * kPi * kPi;
  spec.eta = build_eta(spec.a);
  return spec;
}

double CounterexampleSpec::h(double t) const {
  return std::sqrt(1.0 - t) * std::log(10.0 / (1.0 - t));
}

double CounterexampleSpec::h_prime(double t) const {
  const double s = std::sqrt(1.0 - t);
  return (2.0 - std::log(10.0 / (1.0 - t))) / (2.0 * s);
}

double CounterexampleSpec::time_integral(double t) const {
  return 1.0 / kLn10 - 1.0 / std::log(10.0 / (1.0 - t));
}

double CounterexampleSpec::envelope(double t) const {
  return std::exp(-a * time_integral(t));
}

double phi_eval(const CounterexampleSpec& spec, double r, double t) {
  if (t >= 1.0)
    throw HorizonExceeded("barrier undefined at t=" + format_full(t));
  const double ht = spec.h(t);
  return spec.envelope(t) * spec.eta.eval((ht - r) / ht);
}

double time_integral_quadrature(const CounterexampleSpec& spec, double t) {
  if (t > 1.0 - 1e-6)
    throw HorizonExceeded("direct quadrature needs t <= 1 - 1e-6");
  if (t <= 0.0) return 0.0;
  return adaptive_simpson(
      [&](double s) {
        const double hs = spec.h(s);
        return 1.0 / (hs * hs);
      },
      0.0, t, 1e-11);
}

double full_time_integral_quadrature(const CounterexampleSpec& spec) {
  const double t_split = 1.0 - 1e-6;
  const double direct = time_integral_quadrature(spec, t_split);
  // remaining mass in the substituted variable w = ln(10/(1-s)); the
  // integrand is q / h(q)^2 with q = 10 e^-w, evaluated through h while q
  // stays representable and through the substitution identity 1/w^2 beyond
  const double w_lo = std::log(10.0 / (1.0 - t_split));
  const double w_hi = 1e9;
  const double tail = adaptive_simpson(
      [&](double w) {
        const double q = 10.0 * std::exp(-w);
        if (q > 1e-290) {
          const double hq = std::sqrt(q) * std::log(10.0 / q);
          return q / (hq * hq);
        }
        return 1.0 / (w * w);
      },
      w_lo, w_hi, 1e-10, 60);
  // beyond w_hi the mass is between 0 and 1/w_hi = 1e-9
  return direct + tail + 0.5e-9;
}

SubsolutionReport verify_subsolution(const CounterexampleSpec& spec,
                                     const Grid1D& window,
                                     const TimeGrid& times) {
  const auto drift = DriftProfile::log_supercritical();
  SubsolutionReport rep;
  rep.min_residual = std::numeric_limits<double>::infinity();
  for (double t : times.nodes) {
    const double ht = spec.h(t);
    const double hp = spec.h_prime(t);
    const double env = spec.envelope(t);
    const double g = drift.g(t);
    for (double r : window.nodes) {
      if (r < 0.0) continue;
      const double s = (ht - r) / ht;
      // residual = env h^-2 [ (eta'' + a eta) + (-eta')(g h + r h') ],
      // with one-sided eta derivatives at the ramp ends
      const double gap = spec.eta.second(s) + spec.a * spec.eta.eval(s);
      const double adv = -spec.eta.deriv(s) * (g * ht + r * hp);
      const double residual = env / (ht * ht) * (gap + adv);
      rep.scale = std::max(rep.scale, std::abs(residual));
      if (residual < rep.min_residual) {
        rep.min_residual = residual;
        rep.at_r = r;
        rep.at_t = t;
      }
    }
  }
  rep.pass = rep.min_residual >= -1e-8 * rep.scale;
  return rep;
}

nlohmann::json SubsolutionReport::to_json() const {
  return nlohmann::json{{"min_residual", min_residual},
                        {"at_r", at_r},
                        {"at_t", at_t},
                        {"scale", scale},
                        {"pass", pass}};
}

void CollapseTrace::write_csv(const std::string& path) const {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (fp == nullptr) throw Error("cannot open " + path);
  std::fprintf(fp, "t,h,u_at_h,phi_at_h\n");
  for (std::size_t i = 0; i < t.size(); ++i)
    std::fprintf(fp, "%s,%s,%s,%s\n", format_full(t[i]).c_str(),
                 format_full(h[i]).c_str(), format_full(u_at_h[i]).c_str(),
                 format_full(phi_at_h[i]).c_str());
  std::fclose(fp);
}

CollapseReport modulus_collapse_experiment(const Grid1D& grid,
                                           const TimeGrid& times) {
  const auto spec = CounterexampleSpec::standard();

  HalfLineProblem main_problem;
  main_problem.drift = DriftProfile::log_supercritical();
  main_problem.initial = InitialData1D::eta_bump();
  main_problem.grid = grid;
  main_problem.times = times;
  main_problem.label = "collapse_main";

  HalfLineProblem contrast_problem = main_problem;
  contrast_problem.drift = DriftProfile::type_one(1.0, 1.0);
  contrast_problem.label = "collapse_contrast";

  // independent solves; concurrency lives here, never inside one march
  auto main_future = std::async(std::launch::async, [&] {
    return solve_halfline(main_problem);
  });
  auto contrast_future = std::async(std::launch::async, [&] {
    return solve_halfline(contrast_problem);
  });
  const SpaceTimeField1D u = main_future.get();
  const SpaceTimeField1D v = contrast_future.get();
  u.ensure_finite("collapse main solve");
  v.ensure_finite("collapse contrast solve");

  CollapseReport rep;
  rep.threshold = 0.9 * std::exp(-spec.a / kLn10);
  rep.min_trace = std::numeric_limits<double>::infinity();
  rep.min_domination = std::numeric_limits<double>::infinity();
  rep.contrast_max_rise = -std::numeric_limits<double>::infinity();

  for (std::size_t it = 0; it < u.ntimes(); ++it) {
    const double t = u.times[it];
    const double ht = spec.h(t);
    const double uh = u.interp_space(it, ht);
    const double vh = v.interp_space(it, ht);
    const double ph = phi_eval(spec, ht, t);
    rep.trace.t.push_back(t);
    rep.trace.h.push_back(ht);
    rep.trace.u_at_h.push_back(uh);
    rep.trace.phi_at_h.push_back(ph);
    rep.contrast.t.push_back(t);
    rep.contrast.h.push_back(ht);
    rep.contrast.u_at_h.push_back(vh);
    rep.contrast.phi_at_h.push_back(ph);
    rep.min_trace = std::min(rep.min_trace, uh);
    if (it > 0)
      rep.contrast_max_rise =
          std::max(rep.contrast_max_rise,
                   vh - rep.contrast.u_at_h[rep.contrast.u_at_h.size() - 2]);
    for (std::size_t j = 0; j < u.nnodes(); ++j)
      rep.min_domination = std::min(
          rep.min_domination, u.at(it, j) - phi_eval(spec, grid.nodes[j], t));
  }
  rep.h_end = rep.trace.h.back();
  rep.contrast_final = rep.contrast.u_at_h.back();
  rep.trace_pass = rep.min_trace >= rep.threshold && rep.h_end < 0.12;
  rep.domination_pass = rep.min_domination >= -1e-6;
  rep.contrast_monotone = rep.contrast_max_rise <= 1e-12;
  rep.contrast_collapsed = rep.contrast_final <= 0.05;
  rep.pass = rep.trace_pass && rep.domination_pass && rep.contrast_monotone &&
             rep.contrast_collapsed;
  return rep;
}

nlohmann::json CollapseReport::certificate() const {
  // late-window summary: the trace floor persists while the curve shrinks
  double late_inf = std::numeric_limits<double>::infinity();
  double late_sup_h = 0.0;
  for (std::size_t i = 0; i < trace.t.size(); ++i)
    if (trace.t[i] >= 0.9) {
      late_inf = std::min(late_inf, trace.u_at_h[i]);
      late_sup_h = std::max(late_sup_h, trace.h[i]);
    }
  return nlohmann::json{
      {"threshold", threshold},
      {"min_trace", min_trace},
      {"h_end", h_end},
      {"late_inf_trace", late_inf},
      {"late_sup_h", late_sup_h},
      {"min_domination", min_domination},
      {"contrast_final", contrast_final},
      {"contrast_max_rise", contrast_max_rise},
      {"checks",
       {{"trace", trace_pass},
        {"domination", domination_pass},
        {"contrast_monotone", contrast_monotone},
        {"contrast_collapsed", contrast_collapsed}}},
      {"pass", pass}};
}

}  // namespace swirlbound
