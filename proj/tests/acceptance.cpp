// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "manakov/abelian_constants.hpp"
#include "manakov/elliptic.hpp"
#include "manakov/errors.hpp"
#include "manakov/periods.hpp"
#include "manakov/solution.hpp"
#include "manakov/theta.hpp"
#include "manakov/zero_curvature.hpp"

using namespace manakov;

namespace {

struct Triple {
  double l2, l3, m0;
};
const std::vector<Triple> kTriples{{1, 2, 0.5}, {0.5, 3, 0.3}, {-1, 2.5, 1.0}};

struct Line {
  std::string detail;
  bool ok = true;
  void add(const std::string& what, double value, double tol) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s %.2e < %.0e", detail.empty() ? "" : ", ", what.c_str(), value, tol);
    detail += buf;
    ok = ok && value < tol;
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : ", ") + s; }
};

struct Pipeline {
  SpectralCurve curve;
  PeriodData pd;
  ThetaContext ctx;
  ConstantsBundle b;
};

Pipeline pipeline(const TrigonalCurve& c) {
  SpectralCurve sc(c);
  auto sd = compute_surface(sc, false);
  ThetaContext ctx(sd.periods.tau);
  auto ch = select_characteristic(ctx, sd.periods);
  auto b = compute_constants(sd.periods, ctx, ch);
  return {std::move(sc), std::move(sd.periods), std::move(ctx), std::move(b)};
}

TrigonalCurve default_curve() { return TrigonalCurve::make(3, {1, 1, 1}, {0.5, 0.25}); }
TrigonalCurve genus1(const Triple& t) { return TrigonalCurve::make(2, {t.l2, t.l3}, {t.m0}); }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// ---- 1
Line theta_stack() {
  Line L;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  double per = 0, der = 0;
  std::vector<MatC> taus{pipeline(genus1(kTriples[0])).pd.tau, pipeline(default_curve()).pd.tau};
  for (const MatC& tau : taus) {
    ThetaContext ctx(tau);
    const int g = ctx.genus();
    std::vector<Characteristic> chars{Characteristic::zero(g), find_odd_nonsingular(ctx)};
    for (int trial = 0; trial < 100; ++trial) {
      VecR a(g), bb(g);
      for (int k = 0; k < g; ++k) {
        a[k] = u(rng);
        bb[k] = u(rng);
      }
      const VecC v = a.cast<cplx>() + tau * bb.cast<cplx>();
      VecC d(g);
      for (int k = 0; k < g; ++k) d[k] = cplx(u(rng), u(rng));
      d /= d.norm();
      for (const auto& ch : chars) {
        for (int k = 0; k < g; ++k) per = std::max(per, periodicity_check(ctx, ch, v, k));
        // five-point stencils on theta itself
        const double h = 1e-3;
        auto th = [&](double s) { return ctx.theta(v + s * d, ch); };
        const cplx f1 = (th(-2 * h) - 8.0 * th(-h) + 8.0 * th(h) - th(2 * h)) / (12 * h);
        const cplx f2 = (-th(-2 * h) + 16.0 * th(-h) - 30.0 * th(0) + 16.0 * th(h) - th(2 * h)) / (12 * h * h);
        const cplx a1 = ctx.dtheta(v, ch, {d}), a2 = ctx.dtheta(v, ch, {d, d});
        const double scale = std::max({std::abs(a1), std::abs(th(0)), 1e-300});
        const double scale2 = std::max({std::abs(a2), std::abs(th(0)), 1e-300});
        der = std::max({der, std::abs(a1 - f1) / scale, std::abs(a2 - f2) / scale2});
      }
    }
  }
  L.add("quasi-periodicity g=1,3", per, 1e-10);
  L.add("d/dv vs fd (relative)", der, 1e-6);
  return L;
}

// ---- 2
Line period_validators() {
  Line L;
  auto sc = SpectralCurve(default_curve());
  const auto pd = compute_surface(sc, false).periods;
  L.add("tau symmetry", pd.check.symmetry, 1e-8);
  char buf[64];
  std::snprintf(buf, sizeof buf, "min eig Im tau %.3f > 0", pd.check.min_imag_eig);
  L.note(buf);
  L.ok = L.ok && pd.check.positive();
  L.add("|conj tau + tau - tau0|", pd.check.tau_reality, 1e-6);
  L.add("|Im A|/|A|", pd.check.A_imag_ratio, 1e-8);
  return L;
}

// ---- 3
Line genus1_bridge() {
  Line L;
  const Triple t = kTriples[0];
  auto p = pipeline(genus1(t));
  elliptic::Weierstrass wei(64 * t.l3, 64 * (t.l2 * t.l2 + 4 * t.m0));
  const double w = wei.omega(), eta = wei.eta();
  const cplx r = p.pd.r2[0];
  L.add("|A + 2 omega|", std::abs(p.pd.A(0, 0) + 2 * w), 1e-8);
  L.add("|V - 1/2A|", std::abs(p.pd.V[0] - 0.5 / p.pd.A(0, 0)), 1e-8);
  L.add("|W|", std::abs(p.pd.W[0]), 1e-8);
  L.add("|N1|,|N2|", std::max(std::abs(p.b.N1), std::abs(p.b.N2)), 1e-8);
  const cplx e_zeta = -0.5 * (wei.zeta(2 * w * r) - 2 * eta * r);
  L.add("|E - zeta form|", std::abs(p.b.E1 - e_zeta), 1e-8);
  L.add("|wp(2 omega r)|", std::abs(wei.wp(2 * w * r)), 1e-10);
  return L;
}

// ---- 4
Line genus1_residual() {
  Line L;
  double res = 0, res_fd = 0, ident = 0;
  std::size_t poles = 0;
  for (const auto& t : kTriples) {
    auto p = pipeline(genus1(t));
    VecR D(1);
    D << 0.1;
    auto sp = SolutionParams::build(p.pd, p.b, p.ctx, D);
    const Grid g{-5, 5, 101, 0, 1, 11};
    auto ra = residual(sp, p.ctx, g, ResidualMode::analytic);
    auto rf = residual(sp, p.ctx, g, ResidualMode::fd);
    res = std::max(res, ra.max());
    res_fd = std::max(res_fd, rf.max());
    poles += ra.flagged_poles;
    elliptic::EllipticCurve ec(t.l2, t.l3, t.m0);
    auto id = elliptic::check_identities(ec, 101, 0.1);
    ident = std::max({ident, id.intensity, id.second_derivative});
  }
  L.add("residual (3 triples)", res, 1e-7);
  L.add("fd residual", res_fd, 1e-7);
  L.add("intensity and q_xx identities", ident, 1e-8);
  L.add("flagged poles", double(poles), 0.5);
  return L;
}

// ---- 5
Line genus3_residual() {
  Line L;
  auto p = pipeline(default_curve());
  auto sp = SolutionParams::build(p.pd, p.b, p.ctx, VecR::Zero(3));
  const Grid g{0, 4, 41, 0, 1, 11};
  auto ra = residual(sp, p.ctx, g, ResidualMode::analytic);
  auto rf = residual(sp, p.ctx, g, ResidualMode::fd);
  L.add("residual", ra.max(), 1e-5);
  L.add("fd residual", rf.max(), 1e-5);
  L.add("flagged poles", double(ra.flagged_poles), 0.5);
  return L;
}

// ---- 6
Line constants_cross() {
  Line L;
  double o1 = 0, o2 = 0, dl = 0, pur = 0;
  for (const auto& c : {default_curve(), genus1(kTriples[0])}) {
    auto p = pipeline(c);
    auto rep = verify_constants_by_asymptotics(p.curve, p.pd, p.ctx, p.b);
    o1 = std::max(o1, rep.omega1_error);
    o2 = std::max(o2, rep.omega2_error);
    dl = std::max(dl, rep.delta_error);
    pur = std::max(pur, p.b.purity());
  }
  L.add("E vs Omega1 fit", o1, 1e-6);
  L.add("N vs Omega2 fit", o2, 1e-6);
  L.add("delta vs h fit", dl, 1e-6);
  L.add("purity", pur, 1e-7);
  return L;
}

// ---- 7
Line invariant_round_trip() {
  Line L;
  double err = 0, drift = 0, closed = 0;
  for (const auto& t : kTriples) {
    auto p = pipeline(genus1(t));
    VecR D(1);
    D << 0.1;
    auto sp = SolutionParams::build(p.pd, p.b, p.ctx, D);
    const std::array<cplx, 3> want{t.l2, t.l3, I * t.m0};
    std::array<cplx, 3> lo;
    bool first = true;
    for (int k = 0; k <= 20; ++k) {
      const double x = -2.0 + 0.2 * k;
      auto fd = solution_derivs(sp, p.ctx, x, 0.0);
      FieldJet jet{{Vec2C(fd.q[0], fd.q[1]), Vec2C(fd.qx[0], fd.qx[1]), Vec2C(fd.qxx[0], fd.qxx[1])}};
      auto inv = lambda_from_field(jet, 2);
      auto cf = lambda_genus1(jet);
      const std::array<cplx, 3> got{inv.lambda[0], inv.lambda[1], inv.mu[0]};
      const std::array<cplx, 3> got_cf{cf.lambda[0], cf.lambda[1], cf.mu[0]};
      for (int j = 0; j < 3; ++j) {
        err = std::max(err, rel(got[j], want[j]));
        closed = std::max(closed, rel(got_cf[j], want[j]));
        if (first) lo[j] = got[j];
        drift = std::max(drift, std::abs(got[j] - lo[j]) / std::abs(want[j]));
      }
      first = false;
    }
  }
  L.add("relative error", err, 1e-6);
  L.add("closed-form route", closed, 1e-6);
  L.add("drift across x", drift, 1e-7);
  return L;
}

// ---- 8
Line soliton() {
  Line L;
  auto q = manakov_soliton(0.3, 0.5, 0.6, 0.8);
  auto rep = residual_fd(q, Grid{-5, 5, 101, 0, 1, 11});
  L.add("soliton residual", rep.max(), 1e-9);
  return L;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Line()>>> criteria{
      {"theta stack", theta_stack},           {"period validators (n=3)", period_validators},
      {"genus-1 bridge", genus1_bridge},      {"genus-1 PDE residual", genus1_residual},
      {"genus-3 PDE residual", genus3_residual}, {"constants cross-validation", constants_cross},
      {"invariant round trip", invariant_round_trip}, {"soliton harness", soliton},
  };
  int failures = 0, k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    const auto t0 = std::chrono::steady_clock::now();
    Line L;
    try {
      L = fn();
    } catch (const std::exception& e) {
      L.ok = false;
      L.note(std::string("threw ") + e.what());
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %d %s: %s (%.2f s)\n", L.ok ? "PASS" : "FAIL", k, name, L.detail.c_str(), sec);
    failures += !L.ok;
  }
  return failures;
}
