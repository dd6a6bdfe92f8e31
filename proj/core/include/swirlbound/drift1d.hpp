#pragma once

#include <functional>
#include <string>
#include <utility>

#include "swirlbound/drift.hpp"
#include "swirlbound/field.hpp"
#include "swirlbound/grid.hpp"
#include "swirlbound/initial_data.hpp"

namespace swirlbound {

// Far boundary handling at rho = L.
//  LinearComparison: Dirichlet with the advected comparison value
//                    initial(L) + far_slope * A(t) (one-signed truncation
//                    error since the solution sits below it).
//  ZeroNeumann: reflecting far wall.
enum class FarPolicy { LinearComparison, ZeroNeumann };

enum class TimeScheme { BackwardEuler, CrankNicolson };

enum class DriftDiscretization { Upwind, Centered };

struct HalfLineProblem {
  DriftProfile drift = DriftProfile::zero();
  InitialData1D initial = InitialData1D::linear(1.0);
  FarPolicy far = FarPolicy::LinearComparison;
  Grid1D grid;
  TimeGrid times;
  TimeScheme scheme = TimeScheme::BackwardEuler;
  DriftDiscretization drift_disc = DriftDiscretization::Upwind;
  // centered variant only: largest admissible |g| * h before the scheme
  // loses its M-matrix sign structure
  double peclet_cap = 2.0;
  std::string label = "halfline";
};

// Implicit marcher for  u_t = u_rr + g(t) u_r  on [0, L], u(0, t) = 0.
// Uses the interval-averaged drift (A(t1)-A(t0))/dt per step, which keeps
// affine comparison profiles discrete-exact.
SpaceTimeField1D solve_halfline(const HalfLineProblem& problem);

// Whole-line closed-form solution evaluated by quadrature:
//   (4 pi t)^{-1/2} integral exp(-|r - y + A(t)|^2 / (4t)) u0(y) dy.
// t = 0 returns u0(r). Gaussian substitution plus adaptive Simpson on
// [-10, 10] standard deviations (tail certified by the e^{-s^2} factor).
double explicit_wholeline(const std::function<double(double)>& initial,
                          const DriftProfile& drift, double r, double t);

// Zero-flux problem  v_t = (v_r + g v)_r,  flux(0) = 0,  v(., 0) = 1,
// far Dirichlet v(L) = 1; returns v and u = cumulative trapezoid of v.
// Finite-volume form so the discrete flux vanishes exactly at the axis.
std::pair<SpaceTimeField1D, SpaceTimeField1D> solve_robin(
    const DriftProfile& drift, const Grid1D& grid, const TimeGrid& times);

struct ComparisonReport {
  double max_excess = 0.0;  // max over nodes of (lower - upper)
  double at_rho = 0.0;
  double at_t = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// Pointwise domination check lower <= upper + tol over the shared layout.
ComparisonReport check_comparison(const SpaceTimeField1D& lower,
                                  const SpaceTimeField1D& upper, double tol);

}  // namespace swirlbound
