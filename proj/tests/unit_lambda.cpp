#include <doctest.h>

#include <cmath>
#include <vector>

#include <nlohmann/json.hpp>

#include "swirlbound/drift.hpp"
#include "swirlbound/errors.hpp"
#include "swirlbound/field.hpp"
#include "swirlbound/grid.hpp"
#include "swirlbound/lambda_modulus.hpp"

using namespace swirlbound;

namespace {

const LambdaSolution& standard_solution() {
  static const LambdaSolution sol =
      solve_lambda_detail(LambdaProblem::standard());
  return sol;
}

}  // namespace

TEST_CASE("rotating-mode kernel leaves linear profiles invariant") {
  const QuadRule q = picard_quadrature();
  REQUIRE(q.nodes.size() > 100);
  const auto out = picard_heat_apply(q, 0.01, q.nodes);
  double worst = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    if (q.nodes[i] > 10.0) break;  // truncation shows near the far edge
    worst = std::max(worst, std::abs(out[i] - q.nodes[i]) / q.nodes[i]);
  }
  CHECK(worst < 1e-6);  // frozen 5.4e-7
}

TEST_CASE("rotating-mode kernel: Gaussian closed form") {
  const QuadRule q = picard_quadrature();
  const double s = 1.0, tau = 0.01;
  std::vector<double> f(q.nodes.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = q.nodes[i] * std::exp(-q.nodes[i] * q.nodes[i] / (4 * s));
  const auto out = picard_heat_apply(q, tau, f);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = q.nodes[i];
    if (r > 10.0) break;
    const double ref = r * std::pow(s / (s + tau), 2.0) *
                       std::exp(-r * r / (4 * (s + tau)));
    worst = std::max(worst, std::abs(out[i] - ref) / std::abs(ref));
  }
  CHECK(worst < 1e-6);  // frozen 5.4e-7
}

TEST_CASE("derivative kernel applied to the identity profile") {
  const QuadRule q = picard_quadrature();
  const auto out = picard_drift_apply(q, 1e-2, q.nodes);
  // (d_r + 1/r) r = 2; the kernel carries the minus sign of the drift term
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const double r = q.nodes[i];
    if (r < 0.5 || r > 5.0) continue;
    CHECK(out[i] > -2.01);
    CHECK(out[i] < -1.89);
  }
}

TEST_CASE("slope solve: envelope and axis behavior") {
  const auto& sol = standard_solution();
  sol.Lambda.ensure_finite("Lambda");
  sol.f.ensure_finite("f");
  CHECK(sol.interior_cap == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sol.envelope_ratio == doctest::Approx(1.46046).epsilon(2e-3));
  CHECK(sol.envelope_ratio <= 2.0);
  CHECK(sol.sup_abs_f == doctest::Approx(4.35217).epsilon(2e-3));
  // Lambda = r f on the cell-centered radii
  const std::size_t it = sol.f.ntimes() / 2;
  for (std::size_t j = 0; j < sol.f.nnodes(); j += 97)
    CHECK(sol.Lambda.at(it, j) ==
          doctest::Approx(sol.f.grid[j] * sol.f.at(it, j)).epsilon(1e-13));
}

TEST_CASE("radial monotonicity of the modulus") {
  const auto rep = verify_monotonicity(standard_solution().Lambda);
  CHECK(rep.pass);
  CHECK(rep.min_slope == doctest::Approx(0.03125).epsilon(1e-6));
  CHECK(rep.min_slope >= -1e-6);
}

TEST_CASE("monotonicity check reports a decreasing field") {
  const auto bad = field_from_function(
      Grid1D::cell_centered(20.0, 128), TimeGrid::uniform(0.5, 4),
      [](double rho, double) { return -rho; }, "bad");
  const auto rep = verify_monotonicity(bad);
  CHECK_FALSE(rep.pass);
  CHECK(rep.min_slope == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("problem validation") {
  LambdaProblem p = LambdaProblem::standard();
  p.grid = Grid1D::half_line(20.0, 128);  // node grid, not cell-centered
  CHECK_THROWS_AS(p.validate(), ConfigInvalid);
  LambdaProblem bad_alpha = LambdaProblem::standard();
  bad_alpha.alpha0 = -1.0;
  CHECK_THROWS_AS(bad_alpha.validate(), ConfigInvalid);
}

TEST_CASE("truncated approximants stay ordered and below the modulus") {
  const LambdaProblem problem = LambdaProblem::standard();
  TruncatedLadder ladder;
  ladder = solve_truncated_ladder(problem, ladder,
                                  &standard_solution().Lambda);
  REQUIRE(ladder.members.size() == 3);
  CHECK(ladder.report.pass);
  CHECK(std::abs(ladder.report.min_Z) <= 1e-12);            // frozen 0
  CHECK(ladder.report.min_ordering_gap >= -1e-12);          // frozen 0
  CHECK(ladder.report.max_excess_over_Lambda <= 1e-4);
  CHECK(ladder.report.max_excess_over_Lambda ==
        doctest::Approx(-1.373e-3).epsilon(0.02).scale(0.0));
  for (const auto& m : ladder.members) {
    CHECK(m.min_Z >= -1e-12);
    CHECK(m.index >= 4);
  }
  CHECK(ladder.report.sup_gap.size() == 3);
  const auto j = ladder.report.to_json();
  CHECK(j.at("pass").get<bool>());
}

TEST_CASE("contraction oracle agrees with the grid solve") {
  LambdaProblem direct_problem = LambdaProblem::standard();
  direct_problem.times = TimeGrid::uniform(0.5, 512);
  const auto direct = solve_lambda_detail(direct_problem);

  LambdaProblem oracle_problem = LambdaProblem::standard();
  oracle_problem.times = TimeGrid::uniform(0.5, 8);
  PicardTrace trace;
  const auto oracle = picard_lambda_oracle(oracle_problem, 40, &trace);

  const auto agree = picard_agreement(oracle, direct.f);
  CHECK(agree.sup_rel_diff < 1e-2);
  CHECK(agree.sup_rel_diff ==
        doctest::Approx(5.6537e-3).epsilon(0.1).scale(0.0));

  REQUIRE(!trace.boundaries.empty());
  CHECK(trace.boundaries.front() == 0.0);
  CHECK(trace.boundaries.back() == doctest::Approx(0.5));
  // fixed-point sweeps contract
  for (const auto& changes : trace.sup_changes) {
    REQUIRE(changes.size() >= 2);
    CHECK(changes.back() < changes.front());
  }
}

TEST_CASE("oracle refuses a drift too singular to partition") {
  LambdaProblem p = LambdaProblem::standard(5.0, 1.0, 1.0, 20.0, 64);
  p.times = TimeGrid::uniform(0.99, 4);
  CHECK_THROWS_AS(picard_lambda_oracle(p, 5), ContractionFailed);
}
