#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "swirlbound/grid.hpp"

namespace swirlbound {

// C^1 cutoff ramp with the one-sided curvature bound second + a*value >= 0.
struct EtaProfile {
  double a = 0.0;
  double min_gap = 0.0;  // grid minimum of eta'' + a eta

  double eval(double s) const;
  double deriv(double s) const;   // <= 0 everywhere
  double second(double s) const;  // one-sided limits at the ramp ends
};

// Cosine ramp 1 / (1+cos(pi s))/2 / 0 with admissibility checked on a fine
// grid. Throws ConfigInvalid when a < pi^2/2 (the ramp's spectral constant)
// and AdmissibilityFailed if the grid check finds second + a eval < -1e-10.
EtaProfile build_eta(double a);

// Barrier riding the shrinking curve h(t) = sqrt(1-t) ln(10/(1-t)):
//   phi(r, t) = exp(-a int_0^t h^-2) eta((h(t) - r)/h(t)),
// zero at the axis, plateauing at the decayed envelope beyond r = h(t).
struct CounterexampleSpec {
  double a = 0.0;
  EtaProfile eta;

  static CounterexampleSpec standard();  // a = pi^2/2

  double h(double t) const;
  double h_prime(double t) const;
  // int_0^t h^-2 in closed form: 1/ln 10 - 1/ln(10/(1-t))
  double time_integral(double t) const;
  double envelope(double t) const;  // exp(-a * time_integral)
};

// throws HorizonExceeded at t >= 1
double phi_eval(const CounterexampleSpec& spec, double r, double t);

// Adaptive-quadrature cross-checks of the closed-form time integral.
// Direct integration of h^-2 on [0, t]; t <= 1 - 1e-6 keeps the integrand
// representable (it blows up only logarithmically slower than 1/(1-t)).
double time_integral_quadrature(const CounterexampleSpec& spec, double t);
// Full [0, 1] mass: direct part plus the log-substituted tail, where the
// last stretch uses the substitution identity verbatim because 1 - s falls
// below machine resolution; the remainder beyond the quadrature window is
// enclosed analytically at width 1e-9.
double full_time_integral_quadrature(const CounterexampleSpec& spec);

struct SubsolutionReport {
  double min_residual = 0.0;
  double at_r = 0.0, at_t = 0.0;
  double scale = 0.0;  // largest |residual| on the window; the gate is relative
  bool pass = false;

  nlohmann::json to_json() const;
};

// Exact piecewise residual of the barrier under (d_rr + g d_r - d_t) with
// the log-supercritical drift, evaluated on window x times with one-sided
// derivatives at the ramp ends; pass iff min >= -1e-8 * scale.
SubsolutionReport verify_subsolution(const CounterexampleSpec& spec,
                                     const Grid1D& window,
                                     const TimeGrid& times);

struct CollapseTrace {
  std::vector<double> t, h, u_at_h, phi_at_h;

  // CSV columns: t, h, u_at_h, phi_at_h
  void write_csv(const std::string& path) const;
};

struct CollapseReport {
  CollapseTrace trace;     // log-supercritical drift
  CollapseTrace contrast;  // TypeI(1,1) drift along the same curve
  double threshold = 0.0;  // 0.9 exp(-a/ln 10)
  double min_trace = 0.0;
  double h_end = 0.0;
  double min_domination = 0.0;     // min of u - phi over nodes and times
  double contrast_final = 0.0;     // last contrast sample
  double contrast_max_rise = 0.0;  // largest increase between samples
  bool trace_pass = false;
  bool domination_pass = false;
  bool contrast_monotone = false;
  bool contrast_collapsed = false;  // final sample <= 0.05
  bool pass = false;

  nlohmann::json certificate() const;
};

// Solves the log-supercritical and TypeI problems concurrently from the same
// ramp initial data, samples both along r = h(t), and checks the trace floor
// u(h(t), t) >= 0.9 exp(-a/ln 10), pointwise domination u >= phi - 1e-6, and
// the contrast decay. Throws NonFiniteValue if either solve degenerates.
CollapseReport modulus_collapse_experiment(const Grid1D& grid,
                                           const TimeGrid& times);

}  // namespace swirlbound
