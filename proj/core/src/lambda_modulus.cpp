#include "swirlbound/lambda_modulus.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include <nlohmann/json.hpp>

#include "swirlbound/errors.hpp"
#include "swirlbound/initial_data.hpp"
#include "swirlbound/special.hpp"
#include "swirlbound/tridiag.hpp"

namespace swirlbound {

LambdaProblem LambdaProblem::standard(double K, double T, double alpha0,
                                      double L, std::size_t ncells) {
  LambdaProblem p;
  p.drift = DriftProfile::type_one(K, T);
  p.alpha0 = alpha0;
  p.grid = Grid1D::cell_centered(L, ncells);
  p.times = TimeGrid::graded(T);
  return p;
}

void LambdaProblem::validate() const {
  if (!(alpha0 > 0.0))
    throw ConfigInvalid("initial slope must be positive", "lambda.alpha0");
  if (grid.spacing != GridSpacing::CellCentered)
    throw ConfigInvalid("ratio solve needs a cell-centered grid",
                        "lambda.grid");
  if (grid.size() < 8)
    throw ConfigInvalid("fewer than 8 radial cells", "lambda.grid");
  if (times.size() < 2)
    throw ConfigInvalid("need at least one time step", "lambda.times");
}

LambdaSolution solve_lambda_detail(const LambdaProblem& problem) {
  problem.validate();
  const auto& r = problem.grid.nodes;
  const std::size_t m = r.size();
  const double dr = problem.grid.uniform_spacing();
  const double dr2 = dr * dr;
  const double L = problem.grid.L;
  const auto& ts = problem.times.nodes;
  const auto init = InitialData1D::lambda_zero(problem.alpha0);

  std::vector<double> f(m);
  double cap = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    f[j] = init.eval(r[j]) / r[j];
    cap = std::max(cap, std::abs(f[j]));
  }

  LambdaSolution out;
  out.interior_cap = cap;
  out.sup_abs_f = cap;
  out.envelope_ratio = cap / problem.alpha0;
  out.f = SpaceTimeField1D{problem.grid, problem.times, {}, "lambda_ratio"};
  out.f.values.reserve(ts.size() * m);
  out.f.values.insert(out.f.values.end(), f.begin(), f.end());

  std::vector<double> lo(m), di(m), up(m), rhs(m);
  TridiagWorkspace ws;
  for (std::size_t n = 0; n + 1 < ts.size(); ++n) {
    const double dt = ts[n + 1] - ts[n];
    const double gbar = problem.drift.step_average(ts[n], ts[n + 1]);
    for (std::size_t j = 0; j < m; ++j) {
      const double b = gbar + 1.0 / r[j];
      di[j] = 1.0 + dt * (2.0 / dr2 + 1.0 / (r[j] * r[j]) - gbar / r[j]) +
              dt * b / dr;
      up[j] = -dt / dr2 - dt * b / dr;
      lo[j] = -dt / dr2;
      rhs[j] = f[j];
    }
    // axis row: mirror ghost for the even part of the 2D radial Laplacian
    const double b0 = gbar + 1.0 / r[0];
    di[0] = 1.0 + dt * (3.0 / dr2 + b0 / dr + 1.0 / (r[0] * r[0]) -
                        gbar / r[0]);
    up[0] = -dt * (1.0 / dr2 + b0 / dr);
    // far row: clamped Dirichlet advected by the accumulated displacement
    di[m - 1] = 1.0;
    lo[m - 1] = 0.0;
    rhs[m - 1] = problem.alpha0 * (1.0 + problem.drift.A(ts[n + 1]) / L);

    tridiag_solve(lo.data(), di.data(), up.data(), rhs.data(), f.data(), m,
                  ws);

    double slice_sup = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (!std::isfinite(f[j]))
        throw NonFiniteValue("ratio solve lost finiteness at t=" +
                             format_full(ts[n + 1]) +
                             ", r=" + format_full(r[j]));
      slice_sup = std::max(slice_sup, std::abs(f[j]));
    }
    out.sup_abs_f = std::max(out.sup_abs_f, slice_sup);
    out.envelope_ratio = std::max(
        out.envelope_ratio,
        slice_sup /
            (problem.alpha0 * (1.0 + problem.drift.A(ts[n + 1]))));
    if (std::abs(f[0]) > 100.0 * problem.alpha0)
      throw AxisCellBlowup("first-cell value " + format_full(f[0]) +
                           " at t=" + format_full(ts[n + 1]));
    out.f.values.insert(out.f.values.end(), f.begin(), f.end());
  }

  out.Lambda =
      SpaceTimeField1D{problem.grid, problem.times, {}, "lambda_modulus"};
  out.Lambda.values.resize(out.f.values.size());
  for (std::size_t n = 0; n < ts.size(); ++n)
    for (std::size_t j = 0; j < m; ++j)
      out.Lambda.values[n * m + j] = r[j] * out.f.values[n * m + j];
  return out;
}

SpaceTimeField1D solve_lambda(const LambdaProblem& problem) {
  return solve_lambda_detail(problem).Lambda;
}

SlopeReport verify_monotonicity(const SpaceTimeField1D& Lambda, double tol) {
  SlopeReport rep;
  rep.tol = tol;
  rep.min_slope = std::numeric_limits<double>::infinity();
  const auto& r = Lambda.grid.nodes;
  for (std::size_t n = 0; n < Lambda.ntimes(); ++n) {
    const double* v = Lambda.slice(n);
    for (std::size_t j = 0; j + 1 < r.size(); ++j) {
      const double s = (v[j + 1] - v[j]) / (r[j + 1] - r[j]);
      if (s < rep.min_slope) {
        rep.min_slope = s;
        rep.at_r = r[j];
        rep.at_t = Lambda.times[n];
      }
    }
  }
  rep.pass = rep.min_slope >= -tol;
  return rep;
}

namespace {

LadderMember solve_ladder_member(const LambdaProblem& pb, int idx, double h) {
  const double r0 = 1.0 / idx;
  const double L = pb.grid.L;
  const auto n = static_cast<std::size_t>(std::lround((L - r0) / h));
  LadderMember mem;
  mem.index = idx;
  Grid1D grid = Grid1D::window(r0, L, n);
  const auto& r = grid.nodes;
  const std::size_t sz = r.size();
  const double hh = grid.uniform_spacing();
  const double h2 = hh * hh;
  const auto& ts = pb.times.nodes;
  const auto init = InitialData1D::lambda_zero(pb.alpha0);

  std::vector<double> Z(sz);
  for (std::size_t j = 0; j < sz; ++j)
    Z[j] = smoothstep(idx * r[j] - 1.0) * init.slope(r[j]);
  Z[0] = 0.0;
  Z[sz - 1] = pb.alpha0;

  mem.Z = SpaceTimeField1D{grid, pb.times, {},
                           "ladder_slope_" + std::to_string(idx)};
  mem.Z.values.reserve(ts.size() * sz);
  mem.Z.values.insert(mem.Z.values.end(), Z.begin(), Z.end());
  mem.min_Z = *std::min_element(Z.begin(), Z.end());

  std::vector<double> lo(sz), di(sz), up(sz), rhs(sz);
  TridiagWorkspace ws;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    const double dt = ts[k + 1] - ts[k];
    const double gbar = pb.drift.step_average(ts[k], ts[k + 1]);
    for (std::size_t j = 0; j < sz; ++j) {
      const double b = gbar - 1.0 / r[j];
      di[j] = 1.0 + dt * (2.0 / h2 - 1.0 / (r[j] * r[j]));
      up[j] = -dt / h2;
      lo[j] = -dt / h2;
      if (b >= 0.0) {
        di[j] += dt * b / hh;
        up[j] -= dt * b / hh;
      } else {
        di[j] -= dt * b / hh;
        lo[j] += dt * b / hh;
      }
      rhs[j] = Z[j];
    }
    di[0] = 1.0;
    up[0] = 0.0;
    rhs[0] = 0.0;
    di[sz - 1] = 1.0;
    lo[sz - 1] = 0.0;
    rhs[sz - 1] = pb.alpha0;

    tridiag_solve(lo.data(), di.data(), up.data(), rhs.data(), Z.data(), sz,
                  ws);
    for (double v : Z)
      if (!std::isfinite(v))
        throw NonFiniteValue("truncated solve " + std::to_string(idx) +
                             " lost finiteness at t=" +
                             format_full(ts[k + 1]));
    mem.min_Z = std::min(mem.min_Z, *std::min_element(Z.begin(), Z.end()));
    mem.Z.values.insert(mem.Z.values.end(), Z.begin(), Z.end());
  }

  mem.Lambda = SpaceTimeField1D{grid, pb.times, {},
                                "ladder_modulus_" + std::to_string(idx)};
  mem.Lambda.values.resize(mem.Z.values.size());
  std::vector<double> slice(sz);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    slice.assign(mem.Z.slice(k), mem.Z.slice(k) + sz);
    const auto acc = cumulative_trapezoid(r, slice);
    std::copy(acc.begin(), acc.end(), mem.Lambda.slice(k));
  }
  return mem;
}

}  // namespace

TruncatedLadder solve_truncated_ladder(const LambdaProblem& problem,
                                       TruncatedLadder ladder,
                                       const SpaceTimeField1D* Lambda) {
  problem.validate();
  for (int idx : ladder.indices)
    if (idx < 4)
      throw ConfigInvalid("truncation index below 4", "ladder.indices");

  ladder.members.clear();
  for (int idx : ladder.indices)
    ladder.members.push_back(solve_ladder_member(problem, idx, ladder.h));

  LadderReport& rep = ladder.report;
  rep.min_Z = std::numeric_limits<double>::infinity();
  for (const auto& mem : ladder.members)
    rep.min_Z = std::min(rep.min_Z, mem.min_Z);

  // pairwise ordering on shared nodes: the coarser-truncation member starts
  // further out, so align by the integer node offset
  rep.min_ordering_gap = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p + 1 < ladder.members.size(); ++p) {
    const auto& lo = ladder.members[p];      // larger r0
    const auto& hi = ladder.members[p + 1];  // smaller r0
    const double h = hi.Z.grid.uniform_spacing();
    const auto off = static_cast<std::size_t>(
        std::lround((lo.Z.grid.nodes[0] - hi.Z.grid.nodes[0]) / h));
    if (off >= hi.Z.nnodes() ||
        std::abs(hi.Z.grid.nodes[off] - lo.Z.grid.nodes[0]) > 1e-9)
      throw GridMismatch("ladder grids do not share nodes");
    for (std::size_t n = 0; n < lo.Z.ntimes(); ++n) {
      const double* a = lo.Z.slice(n);
      const double* b = hi.Z.slice(n) + off;
      for (std::size_t j = 0; j < lo.Z.nnodes(); ++j)
        rep.min_ordering_gap = std::min(rep.min_ordering_gap, b[j] - a[j]);
    }
  }

  SpaceTimeField1D owned;
  if (Lambda == nullptr) {
    owned = solve_lambda(problem);
    Lambda = &owned;
  }
  if (!Lambda->times.same_nodes(problem.times, 1e-12))
    throw GridMismatch("ladder and reference fields use different time grids");

  rep.max_excess_over_Lambda = -std::numeric_limits<double>::infinity();
  rep.sup_gap.assign(ladder.members.size(), 0.0);
  for (std::size_t p = 0; p < ladder.members.size(); ++p) {
    const auto& mem = ladder.members[p];
    for (std::size_t n = 0; n < mem.Lambda.ntimes(); ++n) {
      const double* v = mem.Lambda.slice(n);
      const double* ref = Lambda->slice(n);
      for (std::size_t j = 0; j < mem.Lambda.nnodes(); ++j) {
        const double lam =
            interp_cubic(Lambda->grid.nodes, ref, mem.Lambda.grid.nodes[j]);
        const double d = v[j] - lam;
        rep.max_excess_over_Lambda = std::max(rep.max_excess_over_Lambda, d);
        rep.sup_gap[p] = std::max(rep.sup_gap[p], std::abs(d));
      }
    }
  }

  rep.pass = rep.min_Z >= -rep.tol_Z &&
             rep.min_ordering_gap >= -rep.tol_ordering &&
             rep.max_excess_over_Lambda <= rep.tol_excess;
  return ladder;
}

nlohmann::json LadderReport::to_json() const {
  return nlohmann::json{{"min_Z", min_Z},
                        {"min_ordering_gap", min_ordering_gap},
                        {"max_excess_over_Lambda", max_excess_over_Lambda},
                        {"sup_gap", sup_gap},
                        {"tol_Z", tol_Z},
                        {"tol_ordering", tol_ordering},
                        {"tol_excess", tol_excess},
                        {"pass", pass}};
}

}  // namespace swirlbound
