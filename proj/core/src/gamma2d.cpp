#include "swirlbound/gamma2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include <nlohmann/json.hpp>

#include "swirlbound/errors.hpp"
#include "swirlbound/special.hpp"
#include "swirlbound/tridiag.hpp"

namespace swirlbound {

void AxiField2D::ensure_finite(const std::string& context) const {
  for (std::size_t it = 0; it < ntimes(); ++it)
    for (std::size_t i = 0; i < nr(); ++i)
      for (std::size_t j = 0; j < n3(); ++j)
        if (!std::isfinite(at(it, i, j)))
          throw NonFiniteValue(context + ": non-finite at t=" +
                               format_full(times[it]) + ", r=" +
                               format_full(rgrid[i]) + ", x3=" +
                               format_full(x3[j]));
}

double AxiField2D::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

void AxiField2D::write_csv(const std::string& path) const {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (fp == nullptr) throw Error("cannot open " + path);
  std::fprintf(fp, "t,r,x3,value\n");
  for (std::size_t it = 0; it < ntimes(); ++it)
    for (std::size_t i = 0; i < nr(); ++i)
      for (std::size_t j = 0; j < n3(); ++j)
        std::fprintf(fp, "%s,%s,%s,%s\n", format_full(times[it]).c_str(),
                     format_full(rgrid[i]).c_str(),
                     format_full(x3[j]).c_str(),
                     format_full(at(it, i, j)).c_str());
  std::fclose(fp);
}

void AxiField2D::write_binary(const std::string& path) const {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (fp == nullptr) throw Error("cannot open " + path);
  const std::uint64_t nt = ntimes(), nri = nr(), n3i = n3();
  std::fwrite(&nt, sizeof nt, 1, fp);
  std::fwrite(&nri, sizeof nri, 1, fp);
  std::fwrite(&n3i, sizeof n3i, 1, fp);
  std::fwrite(rgrid.nodes.data(), sizeof(double), nri, fp);
  std::fwrite(x3.data(), sizeof(double), n3i, fp);
  std::fwrite(times.nodes.data(), sizeof(double), nt, fp);
  std::fwrite(values.data(), sizeof(double), values.size(), fp);
  std::fclose(fp);
}

std::uint64_t AxiField2D::checksum() const {
  std::string acc;
  acc.reserve(values.size() * 8);
  for (double v : values) {
    acc += format_full(v);
    acc += ';';
  }
  return fnv1a64(acc.data(), acc.size());
}

namespace {

// cell taper: quadratic core, Hermite shoulder, smooth decay to 0 by r = 2
double taper(double r) {
  r = std::abs(r);
  if (r <= 0.5) return r * r;
  if (r < 1.0) {
    const double u = (r - 0.5) / 0.5;
    const double h00 = 2 * u * u * u - 3 * u * u + 1;
    const double h10 = u * u * u - 2 * u * u + u;
    const double h01 = -2 * u * u * u + 3 * u * u;
    return 0.25 * h00 + 0.5 * h10 + 0.375 * h01;
  }
  if (r < 2.0) {
    const double u = r - 1.0;
    return 0.375 * (1.0 - smoothstep(u));
  }
  return 0.0;
}

double wrap_period(double x, double period) {
  double y = std::fmod(x, period);
  if (y < 0.0) y += period;
  return y;
}

struct ZetaShape {
  // sum of a_k/k sin(2 pi k (x - phi_k) / L3) style modes
  struct Mode {
    double amp, k, phi;
  };
  std::vector<Mode> modes;
  double L3 = 8.0;

  double eval(double x) const {
    const double w = 2.0 * M_PI / L3;
    double acc = 0.0;
    for (const auto& m : modes)
      acc += (m.amp / m.k) * std::sin(w * m.k * (x - m.phi)) / w;
    return acc;
  }
};

ZetaShape base_zeta(double L3) {
  return ZetaShape{{{1.0, 1.0, 0.0}}, L3};
}

ZetaShape random_zeta(std::uint64_t seed, double L3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  ZetaShape z;
  z.L3 = L3;
  for (int k = 1; k <= 4; ++k) {
    const double a = 0.25 + 0.75 * uni(rng);
    const double phi = L3 * uni(rng);
    z.modes.push_back({a, static_cast<double>(k), phi});
  }
  // normalize the slope sup to 0.9 so the admissibility margin survives the
  // taper's r-profile
  double sup = 0.0;
  const double w = 2.0 * M_PI / L3;
  for (int i = 0; i < 8192; ++i) {
    const double x = L3 * i / 8192.0;
    double d = 0.0;
    for (const auto& m : z.modes)
      d += m.amp * std::cos(w * m.k * (x - m.phi));
    sup = std::max(sup, std::abs(d));
  }
  for (auto& m : z.modes) m.amp *= 0.9 / sup;
  return z;
}

}  // namespace

nlohmann::json VelocityCertification::to_json() const {
  return nlohmann::json{{"max_divergence", max_divergence},
                        {"min_margin", min_margin},
                        {"at_r", at_r},
                        {"at_x3", at_x3},
                        {"certified", certified}};
}

namespace {

VelocitySpec build_from_stream(VelocityFamily family,
                               const VelocityParams& params,
                               const DriftProfile& drift) {
  const auto& r = params.rgrid.nodes;
  const std::size_t mr = r.size();
  const std::size_t m3 = params.n3;
  const double dr = params.rgrid.uniform_spacing();
  const double d3 = params.L3 / static_cast<double>(m3);

  VelocitySpec spec;
  spec.family = family;
  spec.amp = params.amp;
  spec.phase = params.phase;
  spec.seed = params.seed;
  spec.drift = drift;
  spec.drift_scaled = family != VelocityFamily::Stationary;
  spec.nr = mr;
  spec.n3 = m3;
  spec.vr_unit.assign(mr * m3, 0.0);
  spec.v3_unit.assign(mr * m3, 0.0);
  if (family == VelocityFamily::Zero) return spec;

  const ZetaShape zeta = family == VelocityFamily::Random
                             ? random_zeta(params.seed, params.L3)
                             : base_zeta(params.L3);
  const auto psi = [&](double rad, double x) {
    return params.amp * taper(rad) *
           zeta.eval(wrap_period(x - params.phase, params.L3));
  };

  // psi point samples one ghost ring beyond each radial edge (even across the
  // axis); centered differences of these commute, which is what makes the
  // discrete divergence vanish identically below.
  std::vector<double> psi_ext((mr + 2) * m3);
  for (std::size_t k = 0; k < mr + 2; ++k) {
    const double rad = (static_cast<double>(k) - 0.5) * dr;
    for (std::size_t j = 0; j < m3; ++j)
      psi_ext[k * m3 + j] = psi(rad, j * d3);
  }
  const auto pe = [&](std::size_t k, std::size_t j) {
    return psi_ext[k * m3 + (j % m3)];
  };
  for (std::size_t i = 0; i < mr; ++i)
    for (std::size_t j = 0; j < m3; ++j) {
      const std::size_t jm = (j + m3 - 1) % m3;
      spec.vr_unit[i * m3 + j] =
          -(pe(i + 1, j + 1) - pe(i + 1, jm)) / (2.0 * d3 * r[i]);
      spec.v3_unit[i * m3 + j] =
          (pe(i + 2, j) - pe(i, j)) / (2.0 * dr * r[i]);
    }
  return spec;
}

void certify(VelocitySpec& spec, const VelocityParams& params, bool strict) {
  const auto& r = params.rgrid.nodes;
  const std::size_t mr = spec.nr, m3 = spec.n3;
  const double dr = mr > 0 ? params.rgrid.uniform_spacing() : 0.0;
  const double d3 = params.L3 / static_cast<double>(m3);
  auto& cert = spec.cert;

  // discrete divergence (1/r) D_r(r v_r) + D_3 v_3 on interior cells
  cert.max_divergence = 0.0;
  for (std::size_t i = 1; i + 1 < mr; ++i)
    for (std::size_t j = 0; j < m3; ++j) {
      const std::size_t jp = (j + 1) % m3, jm = (j + m3 - 1) % m3;
      const double drv = (r[i + 1] * spec.vr_unit[(i + 1) * m3 + j] -
                          r[i - 1] * spec.vr_unit[(i - 1) * m3 + j]) /
                         (2.0 * dr);
      const double d3v = (spec.v3_unit[i * m3 + jp] -
                          spec.v3_unit[i * m3 + jm]) /
                         (2.0 * d3);
      cert.max_divergence =
          std::max(cert.max_divergence, std::abs(drv / r[i] + d3v));
    }

  // pointwise admissibility v_r >= -g: for drift-scaled tables the margin is
  // 1 + vr_unit (v_r = g vr_unit, g >= 0); stationary tables check against
  // the drift's smallest value, at t = 0 for the nondecreasing families here
  cert.min_margin = std::numeric_limits<double>::infinity();
  const double g0 = spec.drift_scaled ? 0.0 : spec.drift.g(0.0);
  for (std::size_t i = 0; i < mr; ++i)
    for (std::size_t j = 0; j < m3; ++j) {
      const double margin = spec.drift_scaled
                                ? 1.0 + spec.vr_unit[i * m3 + j]
                                : spec.vr_unit[i * m3 + j] + g0;
      if (margin < cert.min_margin) {
        cert.min_margin = margin;
        cert.at_r = r[i];
        cert.at_x3 = j * d3;
      }
    }
  if (mr == 0) cert.min_margin = spec.drift_scaled ? 1.0 : g0;

  cert.certified = cert.min_margin >= -1e-8;
  if (strict && !cert.certified)
    throw LowerBoundViolated(
        "radial velocity dips below -g by " + format_full(-cert.min_margin),
        "r=" + format_full(cert.at_r) + ", x3=" + format_full(cert.at_x3));
}

}  // namespace

VelocitySpec make_velocity(VelocityFamily family, const VelocityParams& params,
                           const DriftProfile& drift) {
  if (family == VelocityFamily::Jet)
    throw ConfigInvalid("the jet family is the negative control; build it "
                        "through its own factory",
                        "velocity.family");
  if (params.rgrid.spacing != GridSpacing::CellCentered)
    throw ConfigInvalid("velocity sampling needs cell-centered radii",
                        "velocity.rgrid");
  if (params.n3 < 8)
    throw ConfigInvalid("periodic direction needs at least 8 nodes",
                        "velocity.n3");
  VelocitySpec spec = build_from_stream(family, params, drift);
  certify(spec, params, /*strict=*/true);
  return spec;
}

VelocitySpec make_violating_jet(double amp, const VelocityParams& params,
                                const DriftProfile& drift) {
  const auto& r = params.rgrid.nodes;
  const std::size_t mr = r.size();
  const std::size_t m3 = params.n3;
  const double d3 = params.L3 / static_cast<double>(m3);

  VelocitySpec spec;
  spec.family = VelocityFamily::Jet;
  spec.amp = amp;
  spec.drift = drift;
  spec.drift_scaled = true;
  spec.nr = mr;
  spec.n3 = m3;
  spec.vr_unit.assign(mr * m3, 0.0);
  spec.v3_unit.assign(mr * m3, 0.0);
  // psi = amp g r zeta2(x3), zeta2 centered on the initial bump: the inward
  // phase does not vanish at the axis, which is exactly what the certified
  // families' taper rules out
  const double w = 2.0 * M_PI / params.L3;
  for (std::size_t i = 0; i < mr; ++i)
    for (std::size_t j = 0; j < m3; ++j) {
      const double x = j * d3;
      const double zeta2 = std::sin(w * (x - params.L3 / 2)) / w;
      const double dzeta2 = std::cos(w * (x - params.L3 / 2));
      spec.vr_unit[i * m3 + j] = -amp * dzeta2;
      spec.v3_unit[i * m3 + j] = amp * zeta2 / r[i];
    }
  certify(spec, params, /*strict=*/false);
  return spec;
}

GammaProblem GammaProblem::standard(const VelocitySpec& vel, double K,
                                    double T, double alpha0) {
  GammaProblem p;
  p.velocity = vel;
  p.drift = DriftProfile::type_one(K, T);
  p.alpha0 = alpha0;
  p.rgrid = Grid1D::cell_centered(8.0, 512);
  p.n3 = 128;
  p.L3 = 8.0;
  p.times = TimeGrid::graded(T);
  return p;
}

double GammaProblem::initial_value(double r, double x3v) const {
  if (initial) return initial(r, x3v);
  const double radial = std::min(alpha0 * r * r, alpha0 * r);
  const double x = wrap_period(x3v - x3_shift, L3);
  return radial * eta_ramp(std::abs(x - L3 / 2) / 2.0);
}

void GammaProblem::validate() const {
  if (!(alpha0 > 0.0))
    throw ConfigInvalid("initial slope must be positive", "gamma.alpha0");
  if (rgrid.spacing != GridSpacing::CellCentered)
    throw ConfigInvalid("solve needs cell-centered radii", "gamma.rgrid");
  if (rgrid.size() < 8 || n3 < 8)
    throw ConfigInvalid("grid too small", "gamma.grid");
  if (times.size() < 2)
    throw ConfigInvalid("need at least one time step", "gamma.times");
  if (velocity.nr != rgrid.size() || velocity.n3 != n3)
    throw GridMismatch("velocity tables sampled on a different grid");
  const double d3 = L3 / static_cast<double>(n3);
  for (std::size_t j = 0; j < n3; ++j) {
    if (std::abs(initial_value(0.0, j * d3)) > 1e-12 * alpha0)
      throw ConfigInvalid("initial data must vanish on the axis",
                          "gamma.initial");
    for (std::size_t i = 0; i < rgrid.size(); ++i)
      if (std::abs(initial_value(rgrid[i], j * d3)) >
          alpha0 * rgrid[i] + 1e-9 * alpha0)
        throw ConfigInvalid("initial data exceeds the slope envelope",
                            "gamma.initial");
  }
}

GammaSolution solve_gamma_detail(const GammaProblem& problem,
                                 const SpaceTimeField1D* Lambda) {
  problem.validate();
  const auto& r = problem.rgrid.nodes;
  const std::size_t mr = r.size();
  const std::size_t m3 = problem.n3;
  const double dr = problem.rgrid.uniform_spacing();
  const double dr2 = dr * dr;
  const double d3 = problem.L3 / static_cast<double>(m3);
  const double d32 = d3 * d3;
  const auto& ts = problem.times.nodes;
  const bool implicit_adv =
      problem.advection == AdvectionMode::ImplicitUpwind;

  if (Lambda != nullptr) {
    if (!Lambda->times.same_nodes(problem.times, 1e-12))
      throw GridMismatch("domination field uses a different time grid");
    if (Lambda->nnodes() < mr)
      throw GridMismatch("domination field does not cover the radii");
    for (std::size_t i = 0; i < mr; ++i)
      if (std::abs(Lambda->grid.nodes[i] - r[i]) > 1e-9)
        throw GridMismatch("domination field radii differ");
  }

  std::vector<double> x3(m3);
  for (std::size_t j = 0; j < m3; ++j) x3[j] = j * d3;

  std::vector<double> Q(mr * m3);
  std::vector<double> far(m3);
  for (std::size_t j = 0; j < m3; ++j) {
    for (std::size_t i = 0; i < mr; ++i)
      Q[i * m3 + j] = problem.initial_value(r[i], x3[j]) / r[i];
    far[j] = Q[(mr - 1) * m3 + j];
  }

  GammaSolution out;
  auto& rep = out.report;
  rep.chain_checked = Lambda != nullptr;
  for (std::size_t i = 0; i < mr; ++i)
    for (std::size_t j = 0; j < m3; ++j)
      rep.sup_initial = std::max(rep.sup_initial, std::abs(Q[i * m3 + j]) * r[i]);
  rep.sup_max = rep.sup_initial;
  rep.sup_history.reserve(ts.size());
  rep.sup_history.push_back(rep.sup_initial);
  rep.worst_excess_vs_Lambda = -std::numeric_limits<double>::infinity();
  if (Lambda != nullptr) {
    rep.excess_history.reserve(ts.size());
    double d0 = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < mr; ++i)
      for (std::size_t j = 0; j < m3; ++j)
        d0 = std::max(d0, std::abs(Q[i * m3 + j]) * r[i] - Lambda->at(0, i));
    rep.excess_history.push_back(d0);
    rep.worst_excess_vs_Lambda = d0;
    rep.excess_at_t = ts[0];
  }

  // stored-slice schedule
  const std::size_t want = std::max<std::size_t>(2, problem.stored_slices);
  const std::size_t stride = std::max<std::size_t>(1, ts.size() / want);
  AxiField2D& field = out.field;
  field.rgrid = problem.rgrid;
  field.x3 = x3;
  field.L3 = problem.L3;
  field.provenance = "gamma";
  const auto store_slice = [&](double t) {
    field.times.nodes.push_back(t);
    const std::size_t base = field.values.size();
    field.values.resize(base + mr * m3);
    for (std::size_t i = 0; i < mr; ++i)
      for (std::size_t j = 0; j < m3; ++j)
        field.values[base + i * m3 + j] = Q[i * m3 + j] * r[i];
  };
  store_slice(ts[0]);

  std::vector<double> lo(std::max(mr, m3)), di(std::max(mr, m3)),
      up(std::max(mr, m3)), rhs(std::max(mr, m3)), col(mr);
  TridiagWorkspace ws;

  for (std::size_t n = 0; n + 1 < ts.size(); ++n) {
    const double dt = ts[n + 1] - ts[n];
    const double gbar = problem.drift.step_average(ts[n], ts[n + 1]);
    const double vscale = problem.velocity.drift_scaled ? gbar : 1.0;
    const auto vr = [&](std::size_t i, std::size_t j) {
      return vscale * problem.velocity.vr_unit[i * m3 + j];
    };
    const auto v3 = [&](std::size_t i, std::size_t j) {
      return vscale * problem.velocity.v3_unit[i * m3 + j];
    };

    if (!implicit_adv) {
      double vmax_r = 0.0, vmax_3 = 0.0;
      for (std::size_t i = 0; i < mr; ++i)
        for (std::size_t j = 0; j < m3; ++j) {
          vmax_r = std::max(vmax_r, std::abs(vr(i, j)));
          vmax_3 = std::max(vmax_3, std::abs(v3(i, j)));
        }
      const double rate = vmax_r / dr + vmax_3 / d3;
      if (rate * dt > 1.0)
        throw CFLAdvisory("explicit advection step exceeds the stability "
                          "budget at t=" + format_full(ts[n]),
                          dt, 1.0 / rate);
    }

    // radial sweep, one tridiagonal line per x3
    for (std::size_t j = 0; j < m3; ++j) {
      for (std::size_t i = 0; i < mr; ++i) col[i] = Q[i * m3 + j];
      for (std::size_t i = 0; i < mr; ++i) {
        di[i] = 1.0 + dt * (2.0 / dr2 + 1.0 / (r[i] * r[i]) +
                            vr(i, j) / r[i]);
        up[i] = -dt / dr2;
        lo[i] = -dt / dr2;
        rhs[i] = col[i];
        const double b = implicit_adv ? 1.0 / r[i] - vr(i, j) : 1.0 / r[i];
        if (b >= 0.0) {
          di[i] += dt * b / dr;
          up[i] -= dt * b / dr;
        } else {
          di[i] += dt * (-b) / dr;
          lo[i] += dt * b / dr;
        }
        if (!implicit_adv) {
          // physical advection explicit, upwinded on the old values
          const double bp = -vr(i, j);
          double diff;
          if (bp >= 0.0)
            diff = (i + 1 < mr ? col[i + 1] - col[i] : 0.0) / dr;
          else
            diff = (i > 0 ? col[i] - col[i - 1] : 2.0 * col[0]) / dr;
          rhs[i] += dt * bp * diff;
        }
      }
      // axis row: mirror ghost diffusion, geometric upwind folded in
      di[0] = 1.0 + dt * (3.0 / dr2 + 1.0 / (r[0] * r[0]) + vr(0, j) / r[0]);
      up[0] = -dt / dr2;
      {
        const double b0 = implicit_adv ? 1.0 / r[0] - vr(0, j) : 1.0 / r[0];
        if (b0 >= 0.0) {
          di[0] += dt * b0 / dr;
          up[0] += -dt * b0 / dr;
        } else {
          di[0] += 2.0 * dt * (-b0) / dr;
        }
      }
      di[mr - 1] = 1.0;
      lo[mr - 1] = 0.0;
      rhs[mr - 1] = far[j];
      tridiag_solve(lo.data(), di.data(), up.data(), rhs.data(), col.data(),
                    mr, ws);
      for (std::size_t i = 0; i < mr; ++i) Q[i * m3 + j] = col[i];
    }

    // periodic sweep, one cyclic line per radius
    for (std::size_t i = 0; i < mr; ++i) {
      double* line = &Q[i * m3];
      for (std::size_t j = 0; j < m3; ++j) {
        di[j] = 1.0 + 2.0 * dt / d32;
        up[j] = -dt / d32;
        lo[j] = -dt / d32;
        rhs[j] = line[j];
        const double b3 = implicit_adv ? -v3(i, j) : 0.0;
        if (b3 >= 0.0) {
          di[j] += dt * b3 / d3;
          up[j] -= dt * b3 / d3;
        } else {
          di[j] += dt * (-b3) / d3;
          lo[j] += dt * b3 / d3;
        }
        if (!implicit_adv) {
          const double bp = -v3(i, j);
          const std::size_t jp = (j + 1) % m3, jm = (j + m3 - 1) % m3;
          const double diff =
              bp >= 0.0 ? (line[jp] - line[j]) / d3 : (line[j] - line[jm]) / d3;
          rhs[j] += dt * bp * diff;
        }
      }
      tridiag_solve_cyclic(lo.data(), di.data(), up.data(), rhs.data(), line,
                           m3, ws);
    }

    double sup = 0.0;
    double excess = -std::numeric_limits<double>::infinity();
    std::size_t ei = 0, ej = 0;
    for (std::size_t i = 0; i < mr; ++i) {
      const double lam = Lambda != nullptr ? Lambda->at(n + 1, i) : 0.0;
      for (std::size_t j = 0; j < m3; ++j) {
        const double G = Q[i * m3 + j] * r[i];
        if (!std::isfinite(G))
          throw NonFiniteValue("swirl solve lost finiteness at t=" +
                               format_full(ts[n + 1]));
        sup = std::max(sup, std::abs(G));
        if (Lambda != nullptr) {
          const double d = std::abs(G) - lam;
          if (d > excess) {
            excess = d;
            ei = i;
            ej = j;
          }
        }
      }
    }
    rep.sup_history.push_back(sup);
    rep.sup_max = std::max(rep.sup_max, sup);
    if (Lambda != nullptr) {
      rep.excess_history.push_back(excess);
      if (excess > rep.worst_excess_vs_Lambda) {
        rep.worst_excess_vs_Lambda = excess;
        rep.excess_at_r = r[ei];
        rep.excess_at_x3 = x3[ej];
        rep.excess_at_t = ts[n + 1];
      }
    }
    if ((n + 1) % stride == 0 || n + 2 == ts.size()) store_slice(ts[n + 1]);
  }

  field.times.horizon = problem.times.horizon;
  field.times.tau_min = problem.times.tau_min;
  field.times.theta = problem.times.theta;
  field.times.dt_max = problem.times.dt_max;
  return out;
}

AxiField2D solve_gamma(const GammaProblem& problem) {
  return solve_gamma_detail(problem).field;
}

nlohmann::json GammaRunReport::to_json() const {
  nlohmann::json j{{"sup_initial", sup_initial},
                   {"sup_max", sup_max},
                   {"chain_checked", chain_checked}};
  if (chain_checked) {
    j["worst_excess_vs_Lambda"] = worst_excess_vs_Lambda;
    j["excess_at"] = {{"r", excess_at_r},
                      {"x3", excess_at_x3},
                      {"t", excess_at_t}};
  }
  return j;
}

ChainReport verify_chain(const AxiField2D& Gamma,
                         const SpaceTimeField1D& Lambda,
                         const SpaceTimeField1D& u) {
  const std::size_t mr = Gamma.nr();
  if (Lambda.nnodes() < mr)
    throw GridMismatch("domination field does not cover the radii");
  for (std::size_t i = 0; i < mr; ++i)
    if (std::abs(Lambda.grid.nodes[i] - Gamma.rgrid.nodes[i]) > 1e-9)
      throw GridMismatch("domination field radii differ");

  ChainReport rep;
  rep.max_gamma_minus_lambda = -std::numeric_limits<double>::infinity();
  rep.max_lambda_minus_u = -std::numeric_limits<double>::infinity();
  const auto& lts = Lambda.times.nodes;
  const auto& uts = u.times.nodes;
  for (std::size_t it = 0; it < Gamma.ntimes(); ++it) {
    const double t = Gamma.times[it];
    const std::size_t lk = Lambda.nearest_time(t);
    if (std::abs(lts[lk] - t) > 1e-12)
      throw GridMismatch("stored slices do not align with the 1D field");
    const std::size_t uk = u.nearest_time(t);
    if (std::abs(uts[uk] - t) > 1e-12)
      throw GridMismatch("stored slices do not align with the 1D field");
    for (std::size_t i = 0; i < mr; ++i) {
      const double lam = Lambda.at(lk, i);
      const double uref = u.interp_space(uk, Gamma.rgrid.nodes[i]);
      const double dlu = lam - uref;
      if (dlu > rep.max_lambda_minus_u) {
        rep.max_lambda_minus_u = dlu;
        rep.lambda_at_r = Gamma.rgrid.nodes[i];
        rep.lambda_at_t = t;
      }
      for (std::size_t j = 0; j < Gamma.n3(); ++j) {
        const double d = std::abs(Gamma.at(it, i, j)) - lam;
        if (d > rep.max_gamma_minus_lambda) {
          rep.max_gamma_minus_lambda = d;
          rep.gamma_at_r = Gamma.rgrid.nodes[i];
          rep.gamma_at_x3 = Gamma.x3[j];
          rep.gamma_at_t = t;
        }
      }
    }
  }
  rep.pass = rep.max_gamma_minus_lambda <= rep.tol_gamma &&
             rep.max_lambda_minus_u <= rep.tol_lambda;
  return rep;
}

nlohmann::json ChainReport::to_json() const {
  return nlohmann::json{
      {"max_gamma_minus_lambda", max_gamma_minus_lambda},
      {"gamma_at",
       {{"r", gamma_at_r}, {"x3", gamma_at_x3}, {"t", gamma_at_t}}},
      {"max_lambda_minus_u", max_lambda_minus_u},
      {"lambda_at", {{"r", lambda_at_r}, {"t", lambda_at_t}}},
      {"tol_gamma", tol_gamma},
      {"tol_lambda", tol_lambda},
      {"pass", pass}};
}

SwirlBoundReport swirl_bound_report(const AxiField2D& Gamma, double alpha,
                                    double C0, double alpha0, double delta) {
  if (!(alpha > 0.0) || !(C0 > 0.0) || !(alpha0 > 0.0))
    throw ConfigInvalid("swirl bound needs positive fitted constants",
                        "swirl.constants");
  SwirlBoundReport rep;
  rep.alpha = alpha;
  rep.C0 = C0;
  rep.alpha0 = alpha0;
  rep.delta = delta;
  rep.envelope_at_r1 = C0 * alpha0;
  for (std::size_t it = 0; it < Gamma.ntimes(); ++it) {
    if (Gamma.times[it] < delta) continue;
    for (std::size_t i = 0; i < Gamma.nr(); ++i) {
      const double r = Gamma.rgrid.nodes[i];
      if (r > 1.0) break;
      const double cap = C0 * alpha0 * std::pow(r, alpha);
      for (std::size_t j = 0; j < Gamma.n3(); ++j) {
        const double ratio = std::abs(Gamma.at(it, i, j)) / cap;
        if (ratio > rep.max_ratio) {
          rep.max_ratio = ratio;
          rep.at_r = r;
          rep.at_x3 = Gamma.x3[j];
          rep.at_t = Gamma.times[it];
        }
      }
    }
  }
  rep.pass = rep.max_ratio <= 1.0 + 1e-9;
  if (!rep.pass)
    throw PropertyFailed(
        "swirl exceeds the fitted envelope by factor " +
            format_full(rep.max_ratio),
        "r=" + format_full(rep.at_r) + ", x3=" + format_full(rep.at_x3) +
            ", t=" + format_full(rep.at_t));
  return rep;
}

nlohmann::json SwirlBoundReport::to_json() const {
  return nlohmann::json{{"alpha", alpha},
                        {"C0", C0},
                        {"alpha0", alpha0},
                        {"delta", delta},
                        {"max_ratio", max_ratio},
                        {"at", {{"r", at_r}, {"x3", at_x3}, {"t", at_t}}},
                        {"envelope_at_r1", envelope_at_r1},
                        {"pass", pass}};
}

}  // namespace swirlbound
