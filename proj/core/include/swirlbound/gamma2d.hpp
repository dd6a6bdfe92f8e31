#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "swirlbound/drift.hpp"
#include "swirlbound/field.hpp"
#include "swirlbound/grid.hpp"

namespace swirlbound {

// Axisymmetric (r, x3) scalar over stored times; x3 periodic. Layout is
// time-major, then radius, x3 fastest.
struct AxiField2D {
  Grid1D rgrid;             // cell-centered radii
  std::vector<double> x3;   // 0, d3, ..., L3 - d3
  double L3 = 8.0;
  TimeGrid times;           // stored (subsampled) slice times
  std::vector<double> values;
  std::string provenance;

  std::size_t nr() const { return rgrid.size(); }
  std::size_t n3() const { return x3.size(); }
  std::size_t ntimes() const { return times.size(); }
  double at(std::size_t it, std::size_t i, std::size_t j) const {
    return values[(it * nr() + i) * n3() + j];
  }
  double& at(std::size_t it, std::size_t i, std::size_t j) {
    return values[(it * nr() + i) * n3() + j];
  }
  const double* slice(std::size_t it) const {
    return values.data() + it * nr() * n3();
  }

  void ensure_finite(const std::string& context) const;
  double max_abs() const;
  // CSV columns: t, r, x3, value
  void write_csv(const std::string& path) const;
  void write_binary(const std::string& path) const;
  std::uint64_t checksum() const;
};

enum class VelocityFamily { Zero, SwirlCell, Stationary, Random, Jet };

struct VelocityParams {
  double amp = 1.0;
  double phase = 0.0;      // x3 shift of the cell pattern
  std::uint64_t seed = 0;  // Random family
  Grid1D rgrid;            // cell-centered sampling grid
  std::size_t n3 = 128;
  double L3 = 8.0;
};

struct VelocityCertification {
  double max_divergence = 0.0;  // sup of the discrete divergence, unit drift
  // min over the grid of (v_r + g)/g for drift-scaled families (or of
  // v_r + g(0) for stationary ones); negative means the bound fails there
  double min_margin = 0.0;
  double at_r = 0.0;
  double at_x3 = 0.0;
  bool certified = false;

  nlohmann::json to_json() const;
};

// Stream-function generated velocity sampled on the grid. Components come
// from centered differences of point samples of psi, so the discrete
// divergence vanishes identically (the difference operators commute); the
// drift-scaled families carry a unit-drift table multiplied by the step
// average of g during the solve.
struct VelocitySpec {
  VelocityFamily family = VelocityFamily::Zero;
  double amp = 1.0;
  double phase = 0.0;
  std::uint64_t seed = 0;
  DriftProfile drift = DriftProfile::zero();
  bool drift_scaled = true;  // false: components are time-independent
  std::size_t nr = 0, n3 = 0;
  std::vector<double> vr_unit, v3_unit;  // nr x n3, x3 fastest
  VelocityCertification cert;
};

// Builds and certifies a velocity; throws LowerBoundViolated (with the worst
// grid point as witness) when the radial component dips below -g anywhere.
VelocitySpec make_velocity(VelocityFamily family, const VelocityParams& params,
                           const DriftProfile& drift);

// Negative control: a non-tapered jet whose inward radial velocity exceeds
// the certified envelope once amp > 1. Certification runs and records the
// violation but does not throw.
VelocitySpec make_violating_jet(double amp, const VelocityParams& params,
                                const DriftProfile& drift);

enum class AdvectionMode { ImplicitUpwind, ExplicitUpwind };

struct GammaProblem {
  VelocitySpec velocity;
  DriftProfile drift = DriftProfile::type_one(1.0, 1.0);
  double alpha0 = 1.0;
  Grid1D rgrid;  // cell-centered on [0, Lr]
  std::size_t n3 = 128;
  double L3 = 8.0;
  TimeGrid times;
  AdvectionMode advection = AdvectionMode::ImplicitUpwind;
  // empty: axis-quadratic slope profile times an even plateau bump; a custom
  // initial must vanish at the axis and stay under alpha0 * r
  std::function<double(double, double)> initial;
  double x3_shift = 0.0;  // shift applied to the default initial
  std::size_t stored_slices = 64;

  static GammaProblem standard(const VelocitySpec& vel, double K = 1.0,
                               double T = 1.0, double alpha0 = 1.0);
  void validate() const;
  double initial_value(double r, double x3) const;
};

struct GammaRunReport {
  double sup_initial = 0.0;
  double sup_max = 0.0;  // over every step, not just stored slices
  std::vector<double> sup_history;     // per time step
  double worst_excess_vs_Lambda = 0.0;  // max over steps of |Gamma| - Lambda
  double excess_at_r = 0.0, excess_at_x3 = 0.0, excess_at_t = 0.0;
  std::vector<double> excess_history;  // per time step (when Lambda given)
  bool chain_checked = false;

  nlohmann::json to_json() const;
};

struct GammaSolution {
  AxiField2D field;
  GammaRunReport report;
};

// Operator-split march: implicit diffusion line solves in r (tridiagonal)
// and x3 (cyclic), upwinded advection either inside the line solves or
// explicit under a step-size advisory. When Lambda is given, the domination
// gap is accounted at every step.
GammaSolution solve_gamma_detail(const GammaProblem& problem,
                                 const SpaceTimeField1D* Lambda = nullptr);
AxiField2D solve_gamma(const GammaProblem& problem);

struct ChainReport {
  double max_gamma_minus_lambda = 0.0;
  double max_lambda_minus_u = 0.0;
  double gamma_at_r = 0.0, gamma_at_x3 = 0.0, gamma_at_t = 0.0;
  double lambda_at_r = 0.0, lambda_at_t = 0.0;
  double tol_gamma = 1e-4;
  double tol_lambda = 1e-6;
  bool pass = false;

  nlohmann::json to_json() const;
};

// Pointwise |Gamma| <= Lambda <= u on the stored slices, with Lambda and u
// sampled at Gamma's radii and time rows matched exactly.
ChainReport verify_chain(const AxiField2D& Gamma,
                         const SpaceTimeField1D& Lambda,
                         const SpaceTimeField1D& u);

struct SwirlBoundReport {
  double alpha = 0.0;
  double C0 = 0.0;
  double alpha0 = 0.0;
  double delta = 0.0;
  double max_ratio = 0.0;  // sup of |Gamma| / (C0 alpha0 r^alpha), r <= 1
  double at_r = 0.0, at_x3 = 0.0, at_t = 0.0;
  // the certified azimuthal-velocity envelope |v_theta| <= C0 alpha0 r^(a-1)
  double envelope_at_r1 = 0.0;  // value of the envelope at r = 1
  bool pass = false;

  nlohmann::json to_json() const;
};

// Checks |Gamma| <= C0 alpha0 r^alpha for r <= 1 on slices with t >= delta;
// constants come from the paired slope-envelope fit of the dominating
// half-line solution. Throws PropertyFailed with a witness on violation.
SwirlBoundReport swirl_bound_report(const AxiField2D& Gamma, double alpha,
                                    double C0, double alpha0, double delta);

}  // namespace swirlbound
