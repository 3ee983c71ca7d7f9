#include "manakov/abelian_constants.hpp"

#include <cmath>

#include "manakov/errors.hpp"

namespace manakov {

namespace {

VecC r_of(const PeriodData& pd, int sheet) {
  if (sheet == 1) return VecC::Zero(pd.g);
  return sheet == 2 ? pd.r2 : pd.r3;
}

// theta[ch] and the derivatives needed by the second-kind integrals
struct LogJet {
  cplx t, tv, tw, tvv;
};

LogJet log_jet(const ThetaContext& ctx, const Characteristic& ch, const VecC& v, const VecC& V, const VecC& W) {
  auto r = ctx.jets(v, ch, {{}, {V}, {W}, {V, V}});
  return {r[0], r[1], r[2], r[3]};
}

void near_pole_guard(const LogJet& j, const VecC& v) {
  if (std::abs(j.t) < 1e-14 * (1.0 + std::abs(j.tv)) || v.norm() < 1e-12)
    throw NearPole("point too close to the pole of the second-kind integral");
}

// f sampled at +z and -z; the even part is fitted as c + a s^2 + b s^4, s = 1/|z|
cplx richardson(const std::array<cplx, 3>& fp, const std::array<cplx, 3>& fm, const std::array<double, 3>& z) {
  Eigen::Matrix3cd M;
  Eigen::Vector3cd rhs;
  for (int k = 0; k < 3; ++k) {
    const double s2 = 1.0 / (z[k] * z[k]);
    M(k, 0) = 1.0;
    M(k, 1) = s2;
    M(k, 2) = s2 * s2;
    rhs[k] = 0.5 * (fp[k] + fm[k]);
  }
  return M.partialPivLu().solve(rhs)[0];
}

}  // namespace

VecC abel_from_infinity(const SpectralCurve& c, const PeriodData& pd, int from_sheet, cplx z, int sheet) {
  HolomorphicBasis hb(c);
  const double R = c.base_x();
  VecC local;
  if (std::abs(z) >= R) {
    local = pd.C * hb.tail(sheet, 1.0 / z);
  } else {
    const double H = c.top_y();
    std::vector<cplx> path{cplx(R, 0.0), cplx(R, H), cplx(z.real(), H), z};
    auto res = track_path(c, path, c.label_root(R, sheet), hb.size(),
                          [&](cplx zz, cplx u, cplx* o) { hb.eval(zz, u, o); });
    local = pd.C * (hb.tail(sheet, 1.0 / cplx(R, 0.0)) + res.integral);
  }
  return r_of(pd, sheet) - r_of(pd, from_sheet) + local;
}

Characteristic select_characteristic(const ThetaContext& ctx, const PeriodData& pd, double threshold) {
  const int g = ctx.genus();
  const VecC zero = VecC::Zero(g);
  for (int idx = 0; idx < (1 << (2 * g)); ++idx) {
    auto ch = Characteristic::from_index(g, idx);
    if (!ch.odd()) continue;
    if (theta_gradient(ctx, zero, ch).norm() <= threshold) continue;
    bool ok = std::abs(ctx.theta(pd.r2, ch)) > threshold && std::abs(ctx.theta(pd.r3, ch)) > threshold;
    for (int i = 0; i < 3 && ok; ++i) ok = std::abs(ctx.dtheta(zero, ch, {pd.Vi[i]})) > threshold;
    if (ok) return ch;
  }
  throw SingularTheta("no odd non-singular characteristic keeps theta(r_2,3) and d_V theta(0) nonzero");
}

double ConstantsBundle::purity() const {
  double w = 0;
  for (cplx x : {E1, E2, N1, N2, delta2, delta3}) w = std::max(w, std::abs(x.real()) / (1.0 + std::abs(x)));
  return w;
}

cplx omega1_i(const PeriodData& pd, const ThetaContext& ctx, const Characteristic& ch, int i, const VecC& v) {
  auto j = log_jet(ctx, ch, v, pd.Vi[i - 1], pd.Wi[i - 1]);
  near_pole_guard(j, v);
  return j.tv / j.t;
}

cplx omega2_i(const PeriodData& pd, const ThetaContext& ctx, const Characteristic& ch, int i, const VecC& v) {
  auto j = log_jet(ctx, ch, v, pd.Vi[i - 1], pd.Wi[i - 1]);
  near_pole_guard(j, v);
  const cplx l = j.tv / j.t;
  return 2.0 * j.tw / j.t - j.tvv / j.t + l * l;
}

cplx omega1_at(const SpectralCurve& c, const PeriodData& pd, const ThetaContext& ctx, const Characteristic& ch,
               int i, cplx z, int sheet) {
  return omega1_i(pd, ctx, ch, i, abel_from_infinity(c, pd, i, z, sheet));
}

cplx omega2_at(const SpectralCurve& c, const PeriodData& pd, const ThetaContext& ctx, const Characteristic& ch,
               int i, cplx z, int sheet) {
  return omega2_i(pd, ctx, ch, i, abel_from_infinity(c, pd, i, z, sheet));
}

cplx h_k(const SpectralCurve& c, const PeriodData& pd, const ThetaContext& ctx, const Characteristic& ch, int k,
         cplx z, int sheet) {
  const VecC v1 = abel_from_infinity(c, pd, 1, z, sheet);
  const VecC vk = abel_from_infinity(c, pd, k, z, sheet);
  const cplx t1 = ctx.theta(v1, ch), tk = ctx.theta(vk, ch);
  if (std::abs(t1) < 1e-14 || std::abs(tk) < 1e-14) throw NearPole("point too close to a pole of h");
  const VecC zero = VecC::Zero(pd.g);
  const cplx a1 = ctx.dtheta(zero, ch, {pd.Vi[0]}), ak = ctx.dtheta(zero, ch, {pd.Vi[k - 1]});
  return std::log(t1) - std::log(tk) + 0.5 * std::log(ak) - 0.5 * std::log(a1) + 0.5 * I * PI;
}

ConstantsBundle compute_constants(const PeriodData& pd, const ThetaContext& ctx, const Characteristic& ch) {
  ConstantsBundle b;
  b.ch = ch;
  const int g = pd.g;
  const VecC zero = VecC::Zero(g);
  for (int i = 0; i < 3; ++i) {
    const VecC& V = pd.Vi[i];
    auto j = ctx.jets(zero, ch, {{V}, {pd.Wi[i]}, {pd.Zi[i]}, {V, V, V}});
    if (std::abs(j[0]) < 1e-10) throw SingularTheta("directional derivative of theta at 0 vanishes");
    b.theta_V[i] = j[0];
    const cplx beta = j[1] / j[0];
    b.c1[i] = -beta;
    b.c2[i] = beta * beta - 2.0 * j[2] / j[0] - j[3] / (3.0 * j[0]);
  }
  b.theta_r2 = ctx.theta(pd.r2, ch);
  b.theta_r3 = ctx.theta(pd.r3, ch);
  if (std::abs(b.theta_r2) < 1e-10 || std::abs(b.theta_r3) < 1e-10)
    throw SingularTheta("theta[eps](r_2) or theta[eps](r_3) vanishes");
  for (int i = 1; i <= 3; ++i)
    for (int jj = 1; jj <= 3; ++jj) {
      if (i == jj) continue;
      const VecC v = pd.between(i, jj);
      b.X(i - 1, jj - 1) = omega1_i(pd, ctx, ch, i, v);
      b.Y(i - 1, jj - 1) = omega2_i(pd, ctx, ch, i, v);
    }
  auto X = [&](int i, int j) { return b.X(i - 1, j - 1); };
  auto Y = [&](int i, int j) { return b.Y(i - 1, j - 1); };
  // constant terms of the pole combinations at each infinity
  const cplx k1 = I * (X(2, 1) + X(3, 1) - b.c1[0]);
  const cplx k2 = I * (-X(1, 2) + X(3, 2) + b.c1[1]);
  const cplx k3 = I * (-X(1, 3) + X(2, 3) + b.c1[2]);
  b.E1 = k1 - k2;
  b.E2 = k1 - k3;
  b.C1 = -0.5 * (k2 + k3);
  const cplx n1 = 2.0 * I * (Y(2, 1) + Y(3, 1) - b.c2[0]);
  const cplx n2 = 2.0 * I * (-Y(1, 2) + Y(3, 2) + b.c2[1]);
  const cplx n3 = 2.0 * I * (-Y(1, 3) + Y(2, 3) + b.c2[2]);
  b.N1 = n2 - n1;
  b.N2 = n3 - n1;
  b.C2 = -0.5 * (n2 + n3);
  const cplx s1 = std::sqrt(b.theta_V[0]);
  b.delta2 = -I * s1 * std::sqrt(b.theta_V[1]) / b.theta_r2;
  b.delta3 = -I * s1 * std::sqrt(b.theta_V[2]) / b.theta_r3;
  return b;
}

cplx assembled_omega1(const SpectralCurve& c, const PeriodData& pd, const ThetaContext& ctx,
                      const ConstantsBundle& b, cplx z, int sheet) {
  cplx s = b.C1;
  for (int i = 1; i <= 3; ++i) s += (i == 1 ? -I : I) * omega1_at(c, pd, ctx, b.ch, i, z, sheet);
  return s;
}

cplx assembled_omega2(const SpectralCurve& c, const PeriodData& pd, const ThetaContext& ctx,
                      const ConstantsBundle& b, cplx z, int sheet) {
  cplx s = b.C2;
  for (int i = 1; i <= 3; ++i) s += (i == 1 ? -2.0 * I : 2.0 * I) * omega2_at(c, pd, ctx, b.ch, i, z, sheet);
  return s;
}

AsymptoticReport verify_constants_by_asymptotics(const SpectralCurve& c, const PeriodData& pd,
                                                 const ThetaContext& ctx, const ConstantsBundle& b) {
  AsymptoticReport rep;
  const double base = c.radius();
  const std::array<double, 3> zs{10.0 * base, 20.0 * base, 40.0 * base};
  rep.omega1_expect = {0.5 * (b.E1 + b.E2), 0.5 * (b.E2 - b.E1), -0.5 * (b.E2 - b.E1)};
  rep.omega2_expect = {-0.5 * (b.N1 + b.N2), -0.5 * (b.N2 - b.N1), 0.5 * (b.N2 - b.N1)};
  for (int s = 1; s <= 3; ++s) {
    const cplx sgn = s == 1 ? -1.0 : 1.0;
    std::array<cplx, 3> f1p, f1m, f2p, f2m;
    for (int k = 0; k < 3; ++k)
      for (double side : {1.0, -1.0}) {
        const cplx z = side * zs[k];
        (side > 0 ? f1p : f1m)[k] = assembled_omega1(c, pd, ctx, b, z, s) - sgn * I * z;
        (side > 0 ? f2p : f2m)[k] = assembled_omega2(c, pd, ctx, b, z, s) - sgn * 2.0 * I * z * z;
      }
    rep.omega1_fit[s - 1] = richardson(f1p, f1m, zs);
    rep.omega2_fit[s - 1] = richardson(f2p, f2m, zs);
    rep.omega1_error = std::max(rep.omega1_error, std::abs(rep.omega1_fit[s - 1] - rep.omega1_expect[s - 1]));
    rep.omega2_error = std::max(rep.omega2_error, std::abs(rep.omega2_fit[s - 1] - rep.omega2_expect[s - 1]));
  }
  for (int k = 2; k <= 3; ++k) {
    std::array<cplx, 3> kp, km, p1, m1;
    for (int m = 0; m < 3; ++m)
      for (double side : {1.0, -1.0}) {
        const cplx z = side * zs[m];
        (side > 0 ? kp : km)[m] = z * std::exp(-h_k(c, pd, ctx, b.ch, k, z, k));
        (side > 0 ? p1 : m1)[m] = z * std::exp(h_k(c, pd, ctx, b.ch, k, z, 1));
      }
    const cplx fk = richardson(kp, km, zs), f1 = richardson(p1, m1, zs);
    const cplx d = k == 2 ? b.delta2 : b.delta3;
    (k == 2 ? rep.delta2_fit : rep.delta3_fit) = fk;
    rep.delta_error = std::max({rep.delta_error, std::abs(fk - d) / std::abs(d), std::abs(f1 - d) / std::abs(d)});
  }
  return rep;
}

}  // namespace manakov
