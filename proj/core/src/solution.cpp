#include "manakov/solution.hpp"

#include <cmath>

#include "manakov/errors.hpp"
#include "manakov/parallel.hpp"

namespace manakov {

namespace {

const Characteristic& canonical(int g) {
  static thread_local Characteristic c;
  if (c.genus() != g) c = Characteristic::zero(g);
  return c;
}

Pair residual_at(const Pair& q, const Pair& qxx, const Pair& qt) {
  const double n2 = std::norm(q[0]) + std::norm(q[1]);
  return {I * qt[0] + qxx[0] + 2.0 * n2 * q[0], I * qt[1] + qxx[1] + 2.0 * n2 * q[1]};
}

}  // namespace

SolutionParams SolutionParams::build(const PeriodData& pd, const ConstantsBundle& b, const ThetaContext& ctx,
                                     const VecR& D) {
  SolutionParams p;
  const int g = pd.g;
  if (D.size() != g) throw ValidatorFailure("D must have g = " + std::to_string(g) + " entries");
  p.V = pd.V;
  p.W = pd.W;
  if (p.V.imag().cwiseAbs().maxCoeff() > 1e-8 * (1.0 + p.V.norm()) ||
      p.W.imag().cwiseAbs().maxCoeff() > 1e-8 * (1.0 + p.W.norm()))
    throw ValidatorFailure("winding vectors are not real");
  p.r2 = pd.r2;
  p.r3 = pd.r3;
  p.E1 = b.E1;
  p.E2 = b.E2;
  p.N1 = b.N1;
  p.N2 = b.N2;
  p.delta2 = b.delta2;
  p.delta3 = b.delta3;
  p.D = D.cast<cplx>();
  const auto& ch = canonical(g);
  p.theta_D = ctx.theta(p.D, ch);
  if (std::abs(p.theta_D) < 1e-10) throw ThetaZero("theta(D) vanishes");
  p.alpha1 = std::norm(ctx.theta(p.r2 - p.D, ch) / p.theta_D);
  p.alpha2 = std::norm(ctx.theta(p.r3 - p.D, ch) / p.theta_D);
  return p;
}

VecC gamma(const SolutionParams& p, double x, double t) { return p.V * x + p.W * t - p.D; }

Pair q_raw(const SolutionParams& p, const ThetaContext& ctx, double x, double t) {
  const auto& ch = canonical(int(p.V.size()));
  const VecC G = gamma(p, x, t);
  const cplx tg = ctx.theta(G, ch);
  if (std::abs(tg) < 1e-12 * std::abs(p.theta_D)) throw ThetaZero("theta(Gamma) vanishes: pole of the solution");
  Pair out;
  const VecC* r[2] = {&p.r2, &p.r3};
  const cplx dl[2] = {p.delta2, p.delta3}, E[2] = {p.E1, p.E2}, N[2] = {p.N1, p.N2};
  for (int k = 0; k < 2; ++k) {
    const cplx amp = 2.0 * I * dl[k] * p.theta_D / ctx.theta(*r[k] - p.D, ch);
    out[k] = amp * ctx.theta(G + *r[k], ch) / tg * std::exp(-E[k] * x + N[k] * t);
  }
  return out;
}

Pair rescale(const SolutionParams& p, const Pair& q) { return {std::sqrt(p.alpha1) * q[0], std::sqrt(p.alpha2) * q[1]}; }

Pair solution(const SolutionParams& p, const ThetaContext& ctx, double x, double t) {
  return rescale(p, q_raw(p, ctx, x, t));
}

FieldDerivs solution_derivs(const SolutionParams& p, const ThetaContext& ctx, double x, double t) {
  const auto& ch = canonical(int(p.V.size()));
  const VecC G = gamma(p, x, t);
  const std::vector<std::vector<VecC>> mons{{}, {p.V}, {p.V, p.V}, {p.W}};
  auto base = ctx.jets(G, ch, mons);
  if (std::abs(base[0]) < 1e-12 * std::abs(p.theta_D)) throw ThetaZero("theta(Gamma) vanishes: pole of the solution");
  const cplx lv0 = base[1] / base[0], lvv0 = base[2] / base[0] - lv0 * lv0, lw0 = base[3] / base[0];
  FieldDerivs f;
  f.theta_gamma = base[0];
  const Pair q = solution(p, ctx, x, t);
  const VecC* r[2] = {&p.r2, &p.r3};
  const cplx E[2] = {p.E1, p.E2}, N[2] = {p.N1, p.N2};
  for (int k = 0; k < 2; ++k) {
    auto s = ctx.jets(G + *r[k], ch, mons);
    const cplx lv = s[1] / s[0], lvv = s[2] / s[0] - lv * lv, lw = s[3] / s[0];
    const cplx dx = lv - lv0 - E[k];
    const cplx dxx = lvv - lvv0;
    const cplx dt = lw - lw0 + N[k];
    f.q[k] = q[k];
    f.qx[k] = q[k] * dx;
    f.qxx[k] = q[k] * (dx * dx + dxx);
    f.qt[k] = q[k] * dt;
  }
  return f;
}

ResidualReport residual(const SolutionParams& p, const ThetaContext& ctx, const Grid& grid, ResidualMode mode,
                        double fd_step) {
  const std::size_t n = std::size_t(grid.nx) * std::size_t(grid.nt);
  std::vector<double> th(n);
  parallel_for(n, [&](std::size_t k) {
    const auto& ch = canonical(int(p.V.size()));
    th[k] = std::abs(ctx.theta(gamma(p, grid.x(int(k / grid.nt)), grid.t(int(k % grid.nt))), ch));
  });
  double scale = 0;
  for (double v : th) scale = std::max(scale, v);
  std::vector<std::array<double, 2>> res(n, {0.0, 0.0});
  std::vector<char> skip(n, 0);
  parallel_for(n, [&](std::size_t k) {
    if (th[k] < 1e-6 * scale) {
      skip[k] = 1;
      return;
    }
    const double x = grid.x(int(k / grid.nt)), t = grid.t(int(k % grid.nt));
    Pair q, qxx, qt;
    if (mode == ResidualMode::analytic) {
      auto f = solution_derivs(p, ctx, x, t);
      q = f.q;
      qxx = f.qxx;
      qt = f.qt;
    } else {
      const double h = fd_step;
      auto Q = [&](double xx, double tt) { return solution(p, ctx, xx, tt); };
      q = Q(x, t);
      const Pair xp1 = Q(x + h, t), xm1 = Q(x - h, t), xp2 = Q(x + 2 * h, t), xm2 = Q(x - 2 * h, t);
      const Pair tp1 = Q(x, t + h), tm1 = Q(x, t - h), tp2 = Q(x, t + 2 * h), tm2 = Q(x, t - 2 * h);
      for (int j = 0; j < 2; ++j) {
        qxx[j] = (-xp2[j] + 16.0 * xp1[j] - 30.0 * q[j] + 16.0 * xm1[j] - xm2[j]) / (12.0 * h * h);
        qt[j] = (-tp2[j] + 8.0 * tp1[j] - 8.0 * tm1[j] + tm2[j]) / (12.0 * h);
      }
    }
    auto r = residual_at(q, qxx, qt);
    res[k] = {std::abs(r[0]), std::abs(r[1])};
  });
  ResidualReport rep;
  for (std::size_t k = 0; k < n; ++k) {
    if (skip[k]) {
      ++rep.flagged_poles;
      continue;
    }
    ++rep.points;
    rep.max_residual_q1 = std::max(rep.max_residual_q1, res[k][0]);
    rep.max_residual_q2 = std::max(rep.max_residual_q2, res[k][1]);
  }
  return rep;
}

ResidualReport residual_fd(const FieldFn& Q, const Grid& grid, double h) {
  const std::size_t n = std::size_t(grid.nx) * std::size_t(grid.nt);
  std::vector<std::array<double, 2>> res(n);
  parallel_for(n, [&](std::size_t k) {
    const double x = grid.x(int(k / grid.nt)), t = grid.t(int(k % grid.nt));
    const Pair q = Q(x, t);
    const Pair xp1 = Q(x + h, t), xm1 = Q(x - h, t), xp2 = Q(x + 2 * h, t), xm2 = Q(x - 2 * h, t);
    const Pair tp1 = Q(x, t + h), tm1 = Q(x, t - h), tp2 = Q(x, t + 2 * h), tm2 = Q(x, t - 2 * h);
    Pair qxx, qt;
    for (int j = 0; j < 2; ++j) {
      qxx[j] = (-xp2[j] + 16.0 * xp1[j] - 30.0 * q[j] + 16.0 * xm1[j] - xm2[j]) / (12.0 * h * h);
      qt[j] = (-tp2[j] + 8.0 * tp1[j] - 8.0 * tm1[j] + tm2[j]) / (12.0 * h);
    }
    auto r = residual_at(q, qxx, qt);
    res[k] = {std::abs(r[0]), std::abs(r[1])};
  });
  ResidualReport rep;
  rep.points = n;
  for (auto& r : res) {
    rep.max_residual_q1 = std::max(rep.max_residual_q1, r[0]);
    rep.max_residual_q2 = std::max(rep.max_residual_q2, r[1]);
  }
  return rep;
}

FieldFn manakov_soliton(double xi, double eta, cplx c1, cplx c2) {
  const double nc = std::sqrt(std::norm(c1) + std::norm(c2));
  if (std::abs(nc - 1.0) > 1e-12) throw InvalidCurve("soliton polarization must be a unit vector");
  return [=](double x, double t) -> Pair {
    const cplx a = 2.0 * eta / std::cosh(2.0 * eta * (x + 4.0 * xi * t)) *
                   std::exp(-2.0 * I * xi * x - 4.0 * I * (xi * xi - eta * eta) * t);
    return {a * c1, a * c2};
  };
}

std::vector<FieldSample> sample_grid(const SolutionParams& p, const ThetaContext& ctx, const Grid& grid) {
  const std::size_t n = std::size_t(grid.nx) * std::size_t(grid.nt);
  std::vector<FieldSample> out(n);
  parallel_for(n, [&](std::size_t k) {
    FieldSample& s = out[k];
    s.x = grid.x(int(k / grid.nt));
    s.t = grid.t(int(k % grid.nt));
    try {
      s.q = solution(p, ctx, s.x, s.t);
    } catch (const ThetaZero&) {
      s.pole = true;
    }
  });
  return out;
}

}  // namespace manakov
