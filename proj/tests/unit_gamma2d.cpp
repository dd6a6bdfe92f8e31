#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "swirlbound/drift.hpp"
#include "swirlbound/drift1d.hpp"
#include "swirlbound/errors.hpp"
#include "swirlbound/gamma2d.hpp"
#include "swirlbound/grid.hpp"
#include "swirlbound/holder.hpp"
#include "swirlbound/initial_data.hpp"
#include "swirlbound/lambda_modulus.hpp"

using namespace swirlbound;

namespace {

VelocityParams standard_params() {
  VelocityParams vp;
  vp.rgrid = Grid1D::cell_centered(8.0, 512);
  vp.n3 = 128;
  vp.L3 = 8.0;
  return vp;
}

const DriftProfile& type_one_drift() {
  static const DriftProfile d = DriftProfile::type_one(1.0, 1.0);
  return d;
}

const SpaceTimeField1D& lambda_reference() {
  static const SpaceTimeField1D L =
      solve_lambda(LambdaProblem::standard());
  return L;
}

struct ChainFixture {
  GammaSolution swirl;
  GammaSolution jet;
};

const ChainFixture& chain_fixture() {
  static const ChainFixture fx = [] {
    ChainFixture out;
    const auto vel =
        make_velocity(VelocityFamily::SwirlCell, standard_params(),
                      type_one_drift());
    auto prob = GammaProblem::standard(vel);
    out.swirl = solve_gamma_detail(prob, &lambda_reference());
    const auto jet_vel =
        make_violating_jet(2.0, standard_params(), type_one_drift());
    auto jet_prob = GammaProblem::standard(jet_vel);
    out.jet = solve_gamma_detail(jet_prob, &lambda_reference());
    return out;
  }();
  return fx;
}

}  // namespace

TEST_CASE("stream-function velocities certify with tiny discrete divergence") {
  const auto vp = standard_params();
  for (auto family : {VelocityFamily::Zero, VelocityFamily::SwirlCell,
                      VelocityFamily::Stationary}) {
    const auto vel = make_velocity(family, vp, type_one_drift());
    CHECK(vel.cert.certified);
    CHECK(vel.cert.max_divergence < 1e-10);
    CHECK(vel.cert.min_margin > 0.3);
    CHECK(vel.nr == 512);
    CHECK(vel.n3 == 128);
  }
  auto vr = vp;
  vr.seed = 42;
  const auto vel = make_velocity(VelocityFamily::Random, vr, type_one_drift());
  CHECK(vel.cert.certified);
  CHECK(vel.cert.max_divergence < 1e-10);
  CHECK(vel.cert.min_margin == doctest::Approx(0.615322).epsilon(1e-4));
}

TEST_CASE("the stationary family is certified against the initial drift") {
  const auto vel = make_velocity(VelocityFamily::Stationary, standard_params(),
                                 type_one_drift());
  CHECK_FALSE(vel.drift_scaled);
  // same stream function as the drift-scaled cell, so the margin matches
  CHECK(vel.cert.min_margin == doctest::Approx(0.455188).epsilon(1e-4));
}

TEST_CASE("amplitude beyond the envelope is rejected with a witness") {
  auto vp = standard_params();
  vp.amp = 2.0;
  CHECK_THROWS_AS(
      make_velocity(VelocityFamily::SwirlCell, vp, type_one_drift()),
      LowerBoundViolated);
  try {
    make_velocity(VelocityFamily::SwirlCell, vp, type_one_drift());
  } catch (const LowerBoundViolated& e) {
    CHECK_FALSE(e.witness.empty());
  }
}

TEST_CASE("the jet family never certifies and is refused by make_velocity") {
  CHECK_THROWS_AS(
      make_velocity(VelocityFamily::Jet, standard_params(), type_one_drift()),
      ConfigInvalid);
  const auto jet =
      make_violating_jet(2.0, standard_params(), type_one_drift());
  CHECK_FALSE(jet.cert.certified);
  CHECK(jet.cert.min_margin == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(jet.cert.max_divergence > 1e-3);  // analytic components, not sampled
}

TEST_CASE("problem validation rejects bad initial data and grids") {
  const auto vel = make_velocity(VelocityFamily::Zero, standard_params(),
                                 type_one_drift());
  auto prob = GammaProblem::standard(vel);
  CHECK_NOTHROW(prob.validate());
  auto off_axis = prob;
  off_axis.initial = [](double, double) { return 1.0; };
  CHECK_THROWS_AS(off_axis.validate(), ConfigInvalid);
  auto over = prob;
  over.initial = [](double r, double) { return 2.0 * r; };
  CHECK_THROWS_AS(over.validate(), ConfigInvalid);
  auto mismatch = prob;
  mismatch.rgrid = Grid1D::cell_centered(8.0, 256);
  CHECK_THROWS_AS(mismatch.validate(), GridMismatch);
}

TEST_CASE("odd initial data under the cell velocity evolves oddly") {
  const auto vel = make_velocity(VelocityFamily::SwirlCell, standard_params(),
                                 type_one_drift());
  auto prob = GammaProblem::standard(vel);
  prob.times = TimeGrid::uniform(0.2, 200);
  prob.initial = [](double r, double x3) {
    const double radial = std::min(r * r, r);
    return radial * std::sin(2.0 * M_PI * (x3 - 4.0) / 8.0);
  };
  const auto field = solve_gamma(prob);
  double worst = 0.0;
  const std::size_t last = field.ntimes() - 1;
  for (std::size_t i = 0; i < field.nr(); ++i)
    for (std::size_t j = 0; j < field.n3(); ++j)
      worst = std::max(worst, std::abs(field.at(last, i, j) +
                                       field.at(last, i,
                                                (field.n3() - j) %
                                                    field.n3())));
  CHECK(worst < 1e-8);  // frozen 7.1e-15
}

TEST_CASE("shifting the cell pattern and the data shifts the solution") {
  const auto velA = make_velocity(VelocityFamily::SwirlCell, standard_params(),
                                  type_one_drift());
  auto vp2 = standard_params();
  vp2.phase = 1.0;
  const auto velB =
      make_velocity(VelocityFamily::SwirlCell, vp2, type_one_drift());
  auto probA = GammaProblem::standard(velA);
  probA.times = TimeGrid::uniform(0.2, 200);
  auto probB = probA;
  probB.velocity = velB;
  probB.x3_shift = 1.0;  // 16 cells at L3 = 8, n3 = 128
  const auto A = solve_gamma(probA);
  const auto B = solve_gamma(probB);
  double worst = 0.0;
  const std::size_t last = A.ntimes() - 1;
  for (std::size_t i = 0; i < A.nr(); ++i)
    for (std::size_t j = 0; j < A.n3(); ++j)
      worst = std::max(worst, std::abs(B.at(last, i, (j + 16) % A.n3()) -
                                       A.at(last, i, j)));
  CHECK(worst < 1e-12);  // frozen 2.2e-15
}

TEST_CASE("pure diffusion never raises the sup") {
  const auto vel = make_velocity(VelocityFamily::Zero, standard_params(),
                                 type_one_drift());
  auto prob = GammaProblem::standard(vel);
  prob.times = TimeGrid::uniform(0.3, 300);
  const auto sol = solve_gamma_detail(prob);
  REQUIRE(sol.report.sup_history.size() >= 2);
  double worst_rise = -1e300;
  for (std::size_t n = 1; n < sol.report.sup_history.size(); ++n)
    worst_rise = std::max(worst_rise, sol.report.sup_history[n] -
                                          sol.report.sup_history[n - 1]);
  CHECK(worst_rise < 1e-12);
}

TEST_CASE("explicit advection matches the implicit sweep to truncation") {
  const auto vel = make_velocity(VelocityFamily::SwirlCell, standard_params(),
                                 type_one_drift());
  auto prob = GammaProblem::standard(vel);
  prob.times = TimeGrid::uniform(0.2, 400);  // dt = 5e-4, under the limit
  const auto imp = solve_gamma(prob);
  prob.advection = AdvectionMode::ExplicitUpwind;
  const auto exp_field = solve_gamma(prob);
  double worst = 0.0;
  const std::size_t last = imp.ntimes() - 1;
  for (std::size_t i = 0; i < imp.nr(); ++i)
    for (std::size_t j = 0; j < imp.n3(); ++j)
      worst = std::max(worst, std::abs(imp.at(last, i, j) -
                                       exp_field.at(last, i, j)));
  CHECK(worst < 5e-3);  // frozen 4.2e-4
}

TEST_CASE("explicit advection raises a step-size advisory when unstable") {
  const auto vel = make_velocity(VelocityFamily::SwirlCell, standard_params(),
                                 type_one_drift());
  auto prob = GammaProblem::standard(vel);
  prob.advection = AdvectionMode::ExplicitUpwind;
  prob.times = TimeGrid::uniform(0.2, 10);  // dt = 0.02
  bool thrown = false;
  try {
    solve_gamma(prob);
  } catch (const CFLAdvisory& e) {
    thrown = true;
    CHECK(e.dt_used == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(e.dt_limit > 0.01);   // frozen 0.01316
    CHECK(e.dt_limit < 0.02);
  }
  CHECK(thrown);
}

TEST_CASE("compliant transport stays under the modulus at every step") {
  const auto& fx = chain_fixture();
  const auto& rep = fx.swirl.report;
  CHECK(rep.chain_checked);
  CHECK(rep.sup_initial == doctest::Approx(7.9921875).epsilon(1e-12));
  CHECK(rep.sup_max <= rep.sup_initial + 1e-8);
  CHECK(rep.worst_excess_vs_Lambda <= 1e-12);  // frozen 0, attained at t = 0
  CHECK(rep.excess_history.size() == rep.sup_history.size());
  const auto j = rep.to_json();
  CHECK(j.at("sup_max").get<double>() == rep.sup_max);
}

TEST_CASE("slice-level chain check passes for the compliant run") {
  const auto& fx = chain_fixture();
  HalfLineProblem up;
  up.drift = type_one_drift();
  up.initial = InitialData1D::two_alpha_linear(1.0);
  up.grid = Grid1D::half_line(20.0, 1280);
  up.times = TimeGrid::graded(1.0);
  const auto u = solve_halfline(up);
  const auto chain = verify_chain(fx.swirl.field, lambda_reference(), u);
  CHECK(chain.pass);
  CHECK(chain.max_gamma_minus_lambda <= 1e-4);
  CHECK(chain.max_lambda_minus_u <= 1e-6);
  const auto bad = verify_chain(fx.jet.field, lambda_reference(), u);
  CHECK_FALSE(bad.pass);
  CHECK(bad.max_gamma_minus_lambda > 1.0);
}

TEST_CASE("the jet run breaks the modulus bound by an order-one margin") {
  const auto& rep = chain_fixture().jet.report;
  CHECK(rep.worst_excess_vs_Lambda == doctest::Approx(1.4807).epsilon(5e-3));
  CHECK(rep.sup_max <= rep.sup_initial + 1e-8);
}

TEST_CASE("swirl envelope certificate with the paired sublinear constants") {
  const auto& fx = chain_fixture();
  // constants from the dominating sublinear-data certificate (frozen)
  const double alpha = 0.31372, C0 = 2.34201;
  const auto rep = swirl_bound_report(fx.swirl.field, alpha, C0, 1.0, 0.05);
  CHECK(rep.pass);
  CHECK(rep.max_ratio == doctest::Approx(0.31602).epsilon(2e-3));
  CHECK(rep.envelope_at_r1 == doctest::Approx(C0).epsilon(1e-12));
  CHECK_THROWS_AS(swirl_bound_report(fx.jet.field, alpha, C0, 1.0, 0.05),
                  PropertyFailed);
}

TEST_CASE("2D field utilities: checksums, CSV header, finiteness") {
  const auto& field = chain_fixture().swirl.field;
  CHECK(field.checksum() == field.checksum());
  auto copy = field;
  copy.values[12345] += 1e-12;
  CHECK(copy.checksum() != field.checksum());
  copy.values[0] = std::nan("");
  CHECK_THROWS_AS(copy.ensure_finite("unit"), NonFiniteValue);

  const auto dir = std::filesystem::temp_directory_path() / "swb_unit_gamma";
  std::filesystem::create_directories(dir);
  const std::string p = (dir / "slice.csv").string();
  // keep the dump small: a single stored slice through the accessors
  AxiField2D tiny;
  tiny.rgrid = Grid1D::cell_centered(8.0, 8);
  tiny.x3 = {0.0, 4.0};
  tiny.L3 = 8.0;
  tiny.times = TimeGrid::uniform(0.1, 1);
  tiny.values.assign(tiny.ntimes() * tiny.nr() * tiny.n3(), 0.25);
  tiny.write_csv(p);
  std::ifstream in(p);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,r,x3,value");
}
