#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "swirlbound/drift.hpp"
#include "swirlbound/errors.hpp"
#include "swirlbound/field.hpp"
#include "swirlbound/grid.hpp"
#include "swirlbound/quadrature.hpp"
#include "swirlbound/special.hpp"
#include "swirlbound/tridiag.hpp"

using namespace swirlbound;

TEST_CASE("half-line grid") {
  const auto g = Grid1D::half_line(20.0, 512);
  CHECK(g.size() == 513);
  CHECK(g[0] == 0.0);
  CHECK(g[512] == doctest::Approx(20.0).epsilon(1e-14));
  CHECK(g.is_uniform());
  CHECK(g.uniform_spacing() == doctest::Approx(20.0 / 512).epsilon(1e-14));
  CHECK(g.nearest(0.041) == 1);
  CHECK_THROWS_AS(Grid1D::half_line(5.0, 64), ConfigInvalid);
}

TEST_CASE("geometric grid tiles the interval") {
  const auto g = Grid1D::half_line_geometric(20.0, 256, 1.05);
  CHECK(g.size() == 257);
  CHECK(g[0] == 0.0);
  CHECK(g[256] == doctest::Approx(20.0).epsilon(1e-12));
  for (std::size_t j = 1; j < g.size(); ++j) CHECK(g[j] > g[j - 1]);
  // coarsens outwards
  CHECK(g[1] - g[0] < g[256] - g[255]);
  CHECK_FALSE(g.is_uniform());
}

TEST_CASE("cell-centered grid avoids the axis") {
  const auto g = Grid1D::cell_centered(20.0, 1280);
  const double h = 20.0 / 1280;
  CHECK(g.size() == 1280);
  CHECK(g[0] == doctest::Approx(0.5 * h).epsilon(1e-14));
  CHECK(g[1279] == doctest::Approx(20.0 - 0.5 * h).epsilon(1e-14));
  CHECK(g.spacing == GridSpacing::CellCentered);
}

TEST_CASE("window grid") {
  const auto g = Grid1D::window(0.0, 3.0, 600);
  CHECK(g.size() == 601);
  CHECK(g[0] == 0.0);
  CHECK(g[600] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("graded time grid shrinks towards the horizon") {
  const auto ts = TimeGrid::graded(1.0);
  CHECK(ts.front() == 0.0);
  CHECK(ts.back() == doctest::Approx(1.0 - 1e-4).epsilon(1e-12));
  CHECK(ts.size() > 1200);
  CHECK(ts.size() < 1500);
  double prev_dt = 1e300;
  bool shrinking_tail = true;
  for (std::size_t n = 1; n < ts.size(); ++n) {
    const double dt = ts[n] - ts[n - 1];
    CHECK(dt > 0.0);
    CHECK(dt <= ts.dt_max + 1e-15);
    if (ts[n] > 0.95 && dt > prev_dt + 1e-15) shrinking_tail = false;
    prev_dt = dt;
  }
  CHECK(shrinking_tail);
}

TEST_CASE("uniform time grid") {
  const auto ts = TimeGrid::uniform(0.5, 512);
  CHECK(ts.size() == 513);
  CHECK(ts.back() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(ts[1] - ts[0] == doctest::Approx(0.5 / 512).epsilon(1e-14));
}

TEST_CASE("drift profiles: closed forms and step averages") {
  const auto zero = DriftProfile::zero();
  CHECK(zero.g(0.3) == 0.0);
  CHECK(zero.A(0.3) == 0.0);

  const auto c = DriftProfile::constant(2.0);
  CHECK(c.g(0.7) == 2.0);
  CHECK(c.A(0.7) == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(c.step_average(0.1, 0.4) == doctest::Approx(2.0).epsilon(1e-14));

  const auto t1 = DriftProfile::type_one(1.0, 1.0);
  CHECK(t1.horizon() == 1.0);
  CHECK(t1.g(0.75) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(t1.A(0.75) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t1.step_average(0.0, 0.75) ==
        doctest::Approx((t1.A(0.75) - 0.0) / 0.75).epsilon(1e-14));
  CHECK_THROWS_AS(t1.eval(1.0), HorizonExceeded);

  const auto neg = t1.negated();
  CHECK(neg.g(0.75) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(neg.A(0.75) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("log-supercritical drift primitive differentiates back to g") {
  const auto d = DriftProfile::log_supercritical();
  CHECK(d.A(0.0) == 0.0);
  CHECK(d.horizon() == 1.0);
  for (double t : {0.1, 0.5, 0.9, 0.99}) {
    const double h = 1e-6;
    const double dA = (d.A(t + h) - d.A(t - h)) / (2 * h);
    CHECK(dA == doctest::Approx(d.g(t)).epsilon(1e-7));
    CHECK(d.g(t) ==
          doctest::Approx(std::log(10.0 / (1 - t)) / std::sqrt(1 - t))
              .epsilon(1e-14));
  }
}

TEST_CASE("tabulated drift integrates by trapezoid") {
  const auto d =
      DriftProfile::tabulated({0.0, 1.0, 2.0}, {1.0, 3.0, 3.0});
  CHECK(d.g(0.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(d.A(1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(d.A(2.0) == doctest::Approx(5.0).epsilon(1e-14));
}

namespace {

// dense check of the cyclic system: A x = b with wrap couplings
std::vector<double> cyclic_residual(const std::vector<double>& lo,
                                    const std::vector<double>& di,
                                    const std::vector<double>& up,
                                    const std::vector<double>& x,
                                    const std::vector<double>& b) {
  const std::size_t n = di.size();
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = di[i] * x[i];
    if (i > 0) acc += lo[i] * x[i - 1];
    if (i + 1 < n) acc += up[i] * x[i + 1];
    if (i == 0) acc += lo[0] * x[n - 1];
    if (i == n - 1) acc += up[n - 1] * x[0];
    r[i] = acc - b[i];
  }
  return r;
}

}  // namespace

TEST_CASE("tridiagonal solve") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = 40;
  std::vector<double> lo(n), di(n), up(n), b(n), x(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = u(rng);
    up[i] = u(rng);
    di[i] = 4.0 + u(rng);  // diagonally dominant
    b[i] = u(rng);
  }
  TridiagWorkspace ws;
  tridiag_solve(lo.data(), di.data(), up.data(), b.data(), x.data(), n, ws);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = di[i] * x[i];
    if (i > 0) acc += lo[i] * x[i - 1];
    if (i + 1 < n) acc += up[i] * x[i + 1];
    CHECK(acc == doctest::Approx(b[i]).epsilon(1e-12));
  }
}

TEST_CASE("cyclic tridiagonal solve carries the wrap entries") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = 32;
  std::vector<double> lo(n), di(n), up(n), b(n), x(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = u(rng);
    up[i] = u(rng);
    di[i] = 5.0 + u(rng);
    b[i] = u(rng);
  }
  TridiagWorkspace ws;
  tridiag_solve_cyclic(lo.data(), di.data(), up.data(), b.data(), x.data(), n,
                       ws);
  const auto r = cyclic_residual(lo, di, up, x, b);
  for (double ri : r) CHECK(std::abs(ri) < 1e-12);
}

TEST_CASE("Gauss-Legendre exactness") {
  const auto q = gauss_legendre(12, 0.0, 1.0);
  REQUIRE(q.nodes.size() == 12);
  double wsum = 0.0, p10 = 0.0, p23 = 0.0;
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(q.nodes[i] > 0.0);
    CHECK(q.nodes[i] < 1.0);
    CHECK(q.weights[i] > 0.0);
    wsum += q.weights[i];
    p10 += q.weights[i] * std::pow(q.nodes[i], 10);
    p23 += q.weights[i] * std::pow(q.nodes[i], 23);
  }
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p10 == doctest::Approx(1.0 / 11).epsilon(1e-13));
  CHECK(p23 == doctest::Approx(1.0 / 24).epsilon(1e-13));  // degree 2n-1
}

TEST_CASE("adaptive Simpson") {
  const double I =
      adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12);
  CHECK(I == doctest::Approx(2.0).epsilon(1e-11));
  // a jump cannot be resolved within a shallow recursion budget
  CHECK_THROWS_AS(
      adaptive_simpson([](double x) { return x < 0.3141 ? 0.0 : 1.0; }, 0.0,
                       1.0, 1e-15, 6),
      QuadratureNotConverged);
}

TEST_CASE("trapezoid rules") {
  const std::vector<double> x{0.0, 0.5, 1.5, 2.0};
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 3.0 * x[i] + 1.0;
  CHECK(trapezoid(x, y) == doctest::Approx(8.0).epsilon(1e-14));
  const auto c = cumulative_trapezoid(x, y);
  CHECK(c.front() == 0.0);
  CHECK(c.back() == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(c[1] == doctest::Approx(0.5 * (1.0 + 2.5) * 0.5).epsilon(1e-14));
}

TEST_CASE("cutoff ramp") {
  CHECK(eta_ramp(-0.5) == 1.0);
  CHECK(eta_ramp(0.0) == 1.0);
  CHECK(eta_ramp(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eta_ramp(1.0) == 0.0);
  CHECK(eta_ramp(1.5) == 0.0);
  CHECK(eta_ramp_prime(-0.1) == 0.0);
  CHECK(eta_ramp_prime(0.5) == doctest::Approx(-M_PI / 2).epsilon(1e-14));
  CHECK(eta_ramp_prime(1.1) == 0.0);
  CHECK(eta_ramp_second(0.5) == doctest::Approx(0.0).epsilon(1e-14));
  // one-sided curvature at the ramp start
  CHECK(eta_ramp_second(0.0) ==
        doctest::Approx(-M_PI * M_PI / 2).epsilon(1e-14));
  for (double s = -0.2; s < 1.2; s += 0.01)
    CHECK(eta_ramp(s) >= eta_ramp(s + 0.01) - 1e-15);
}

TEST_CASE("smoothstep") {
  CHECK(smoothstep(-1.0) == 0.0);
  CHECK(smoothstep(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(smoothstep(2.0) == 1.0);
  CHECK(smoothstep_prime(0.5) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(smoothstep_prime(-0.5) == 0.0);
}

TEST_CASE("scaled Bessel functions match the library values") {
  CHECK(bessel_i0_scaled(0.0) == 1.0);
  CHECK(bessel_i1_scaled(0.0) == 0.0);
  CHECK(bessel_i2_scaled(0.0) == 0.0);
  for (double z : {0.1, 1.0, 5.0, 20.0}) {
    CHECK(bessel_i0_scaled(z) ==
          doctest::Approx(std::exp(-z) * std::cyl_bessel_i(0.0, z))
              .epsilon(1e-12));
    CHECK(bessel_i1_scaled(z) ==
          doctest::Approx(std::exp(-z) * std::cyl_bessel_i(1.0, z))
              .epsilon(1e-12));
    CHECK(bessel_i2_scaled(z) ==
          doctest::Approx(std::exp(-z) * std::cyl_bessel_i(2.0, z))
              .epsilon(1e-12));
  }
  // far asymptote ~ 1/sqrt(2 pi z); the unscaled value would overflow here
  const double z = 800.0;
  CHECK(bessel_i0_scaled(z) ==
        doctest::Approx(1.0 / std::sqrt(2 * M_PI * z)).epsilon(1e-3));
}

TEST_CASE("space-time field utilities") {
  const auto grid = Grid1D::half_line(10.0, 64);
  const auto times = TimeGrid::uniform(0.5, 4);
  auto f = field_from_function(
      grid, times, [](double rho, double t) { return 2.0 * rho + t; },
      "unit");
  CHECK(f.ntimes() == 5);
  CHECK(f.nnodes() == 65);
  CHECK(f.at(2, 3) == doctest::Approx(2.0 * grid[3] + times[2]));
  // linear interpolation of linear data is exact off the nodes
  CHECK(f.interp_space(1, 0.7123) ==
        doctest::Approx(2.0 * 0.7123 + times[1]).epsilon(1e-13));
  CHECK(f.nearest_time(0.26) == 2);
  CHECK(f.max_abs() == doctest::Approx(20.5));

  const auto sum0 = f.checksum();
  CHECK(sum0 == f.checksum());
  auto g = f;
  g.at(0, 0) += 1e-9;
  CHECK(g.checksum() != sum0);

  g.at(1, 1) = std::nan("");
  CHECK_THROWS_AS(g.ensure_finite("unit"), NonFiniteValue);

  const auto shifted = field_from_function(
      Grid1D::half_line(10.0, 32), times,
      [](double rho, double t) { return rho + t; }, "unit");
  CHECK_THROWS_AS(f.require_same_layout(shifted), GridMismatch);
}

TEST_CASE("field CSV writer is stable and headed") {
  const auto grid = Grid1D::half_line(10.0, 8);
  const auto times = TimeGrid::uniform(0.1, 2);
  const auto f = field_from_function(
      grid, times, [](double rho, double t) { return rho * t / 3.0; },
      "unit");
  const auto dir = std::filesystem::temp_directory_path() / "swb_unit_core";
  std::filesystem::create_directories(dir);
  const std::string p1 = (dir / "f1.csv").string();
  const std::string p2 = (dir / "f2.csv").string();
  f.write_csv(p1);
  f.write_csv(p2);
  CHECK(fnv1a64_file(p1) == fnv1a64_file(p2));
  std::ifstream in(p1);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,rho,value");
}

TEST_CASE("cubic interpolation reproduces cubics") {
  const std::vector<double> xs{0.0, 0.7, 1.1, 2.0, 3.2, 4.0};
  std::vector<double> vals(xs.size());
  const auto poly = [](double x) {
    return 0.5 * x * x * x - x * x + 2.0 * x - 3.0;
  };
  for (std::size_t i = 0; i < xs.size(); ++i) vals[i] = poly(xs[i]);
  for (double x : {0.2, 0.9, 1.6, 2.5, 3.9})
    CHECK(interp_cubic(xs, vals.data(), x) ==
          doctest::Approx(poly(x)).epsilon(1e-12));
  // clamped beyond the span
  CHECK(interp_cubic(xs, vals.data(), -1.0) ==
        doctest::Approx(interp_cubic(xs, vals.data(), 0.0)));
}

TEST_CASE("full-precision rendering round-trips") {
  for (double v : {1.0 / 3.0, 0.1, 2.0 / 7.0, 1e-17, 12345.678901234567}) {
    const std::string s = format_full(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_full(0.5) == "0.5");
}

TEST_CASE("FNV-1a is order-sensitive") {
  const char a[] = "abc";
  const char b[] = "acb";
  CHECK(fnv1a64(a, 3) != fnv1a64(b, 3));
  CHECK(fnv1a64(a, 3) == fnv1a64("abc", 3));
}
