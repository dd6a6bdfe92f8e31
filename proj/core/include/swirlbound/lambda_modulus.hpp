#pragma once

#include <cstddef>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "swirlbound/drift.hpp"
#include "swirlbound/field.hpp"
#include "swirlbound/grid.hpp"
#include "swirlbound/quadrature.hpp"

namespace swirlbound {

// Radial modulus construction. The solve works on the ratio f = Lambda/r so
// the axis needs nothing beyond a symmetry row; Lambda = r f is recovered
// exactly on the cell-centered grid, which never touches r = 0.
struct LambdaProblem {
  DriftProfile drift = DriftProfile::type_one(1.0, 1.0);
  double alpha0 = 1.0;
  Grid1D grid;      // CellCentered spacing required
  TimeGrid times;

  // growth-rate K, horizon T, truncation radius L: the default production run
  static LambdaProblem standard(double K = 1.0, double T = 1.0,
                                double alpha0 = 1.0, double L = 20.0,
                                std::size_t ncells = 1280);
  void validate() const;
};

struct LambdaSolution {
  SpaceTimeField1D Lambda;  // r * f
  SpaceTimeField1D f;
  double sup_abs_f = 0.0;
  // sup |Lambda(r,0)/r|: the t=0 level. The field does not stay under any
  // flat multiple of it — the near-axis slope steepens as the displacement
  // accumulates — so boundedness is certified against the drift-adjusted
  // envelope alpha0 (1 + A(t)) instead.
  double interior_cap = 0.0;
  // sup over stored times of sup_r |f(r,t)| / (alpha0 (1 + A(t)))
  double envelope_ratio = 0.0;
};

LambdaSolution solve_lambda_detail(const LambdaProblem& problem);
SpaceTimeField1D solve_lambda(const LambdaProblem& problem);

// min of the discrete radial increment ratio over every stored slice
struct SlopeReport {
  double min_slope = 0.0;
  double at_r = 0.0;  // left node of the worst increment
  double at_t = 0.0;
  double tol = 0.0;
  bool pass = false;
};

SlopeReport verify_monotonicity(const SpaceTimeField1D& Lambda,
                                double tol = 1e-6);

// Truncated-domain approximants: for each index i the slope unknown Z_i is
// solved on [1/i, L] (where the 1/r^2 zero-order term is harmless), then
// integrated back up from the cut.
struct LadderMember {
  int index = 0;
  SpaceTimeField1D Z;
  SpaceTimeField1D Lambda;  // running integral of Z from r = 1/i
  double min_Z = 0.0;
};

struct LadderReport {
  double min_Z = 0.0;
  // min over consecutive index pairs, shared nodes, all times of Z_2i - Z_i
  double min_ordering_gap = 0.0;
  // max over members of max(Lambda_i - Lambda); must stay below tol_excess
  double max_excess_over_Lambda = 0.0;
  // per member: sup |Lambda_i - Lambda| (reported, no threshold — the gap is
  // dominated by the fixed far-field deficit, not by the truncation index)
  std::vector<double> sup_gap;
  double tol_Z = 1e-8;
  double tol_ordering = 1e-6;
  double tol_excess = 1e-4;
  bool pass = false;

  nlohmann::json to_json() const;
};

struct TruncatedLadder {
  std::vector<int> indices{4, 8, 16};
  double h = 1.0 / 64.0;  // node spacing of the truncated solves
  std::vector<LadderMember> members;
  LadderReport report;
};

// Fills the members and the report. When `Lambda` is null the reference field
// is solved internally from `problem`; pass the already-solved field to skip
// that.
TruncatedLadder solve_truncated_ladder(const LambdaProblem& problem,
                                       TruncatedLadder ladder,
                                       const SpaceTimeField1D* Lambda = nullptr);

// Contraction-mapping oracle for solve_lambda: a Volterra iteration against
// the exact rotating-mode heat kernel on a fixed composite Gauss-Legendre
// rule, marched over sub-intervals short enough that the drift term stays a
// contraction. Returns the radial f profile at the sub-interval boundaries.
struct PicardTrace {
  std::vector<double> boundaries;  // t0, then each sub-interval end
  std::vector<std::vector<double>> sup_changes;  // per sub-interval, per sweep
};

SpaceTimeField1D picard_lambda_oracle(const LambdaProblem& problem,
                                      int iterations,
                                      PicardTrace* trace = nullptr);

// The frozen radial rule backing the oracle, exposed so the kernel identities
// (linear-data invariance, Gaussian closed form, derivative-kernel limit) can
// be checked in isolation.
QuadRule picard_quadrature();
// One application of the propagation kernel (value / radial-derivative flavor)
// at time offset tau against the rule's weights and the rho drho measure.
std::vector<double> picard_heat_apply(const QuadRule& q, double tau,
                                      const std::vector<double>& f);
std::vector<double> picard_drift_apply(const QuadRule& q, double tau,
                                       const std::vector<double>& f);

// Cross-method agreement: oracle profiles vs the grid solve, compared on the
// oracle's nodes up to r_max. The direct field is linearly interpolated in
// time and, with an exact axis anchor prepended, in radius; sup of the
// pointwise difference divided by the sup of the direct field on the window.
struct AgreementReport {
  double sup_rel_diff = 0.0;
  double at_t = 0.0;
  double at_r = 0.0;
};

AgreementReport picard_agreement(const SpaceTimeField1D& oracle_f,
                                 const SpaceTimeField1D& direct_f,
                                 double r_max = 10.0);

}  // namespace swirlbound
