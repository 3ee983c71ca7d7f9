#include "manakov/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "manakov/errors.hpp"
#include "manakov/polynomial.hpp"

namespace manakov::elliptic {

namespace {

double agm(double a, double b) {
  for (int it = 0; it < 64 && std::abs(a - b) > 1e-16 * a; ++it) {
    const double m = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = m;
  }
  return 0.5 * (a + b);
}

// d-th derivative of cos / sin at angle x (x includes the frequency factor)
cplx dcos(cplx x, int d) {
  switch (d & 3) {
    case 0: return std::cos(x);
    case 1: return -std::sin(x);
    case 2: return -std::cos(x);
    default: return std::sin(x);
  }
}
cplx dsin(cplx x, int d) { return dcos(x, d + 3); }

}  // namespace

cplx jtheta(int k, cplx z, cplx tau, int d) {
  if (tau.imag() <= 0) throw ValidatorFailure("jacobi theta needs Im tau > 0");
  const cplx iq = I * PI * tau;
  cplx s{};
  if (k == 1 || k == 2) {
    for (int n = 0; n < 200; ++n) {
      const double m = n + 0.5;
      const cplx w = std::exp(iq * m * m);
      const double f = std::pow(2.0 * PI * m, d);
      const cplx t = k == 1 ? (n % 2 ? -1.0 : 1.0) * dsin(2.0 * PI * m * z, d) : dcos(2.0 * PI * m * z, d);
      const cplx term = 2.0 * w * f * t;
      s += term;
      if (n > 2 && std::abs(term) < 1e-18 * (1.0 + std::abs(s))) break;
    }
    return s;
  }
  if (d == 0) s = 1.0;
  for (int n = 1; n < 200; ++n) {
    const cplx w = std::exp(iq * double(n) * double(n));
    const double f = std::pow(2.0 * PI * n, d);
    const double sg = k == 4 && n % 2 ? -1.0 : 1.0;
    const cplx term = 2.0 * sg * w * f * dcos(2.0 * PI * double(n) * z, d);
    s += term;
    if (n > 2 && std::abs(term) < 1e-18 * (1.0 + std::abs(s))) break;
  }
  return s;
}

Weierstrass::Weierstrass(double g2, double g3) : g2_(g2), g3_(g3) {
  const double disc = g2 * g2 * g2 - 27.0 * g3 * g3;
  if (!(disc > 0)) throw DegenerateCubic("cubic 4x^3 - g2 x - g3 needs three distinct real roots (rectangular lattice)");
  // trigonometric solution of x^3 - (g2/4) x - g3/4 = 0
  const double p = g2 / 4.0, q = g3 / 4.0;
  const double m = 2.0 * std::sqrt(p / 3.0);
  const double th = std::acos(std::clamp(3.0 * q / (p * m), -1.0, 1.0)) / 3.0;
  for (int k = 0; k < 3; ++k) e_[k] = m * std::cos(th - 2.0 * PI * k / 3.0);
  std::sort(e_.begin(), e_.end(), std::greater<>());
  w_ = PI / (2.0 * agm(std::sqrt(e_[0] - e_[2]), std::sqrt(e_[0] - e_[1])));
  wp_ = I * PI / (2.0 * agm(std::sqrt(e_[0] - e_[2]), std::sqrt(e_[1] - e_[2])));
  const cplx t = tau();
  eta_ = (-jtheta(1, 0.0, t, 3) / (12.0 * w_ * jtheta(1, 0.0, t, 1))).real();
}

cplx Weierstrass::wp(cplx u) const {
  const cplx t = tau(), y = u / (2.0 * w_);
  const cplx K = PI * jtheta(3, 0.0, t) * jtheta(4, 0.0, t) / (2.0 * w_);
  const cplx r = jtheta(2, y, t) / jtheta(1, y, t);
  return e_[0] + K * K * r * r;
}

cplx Weierstrass::wp_prime(cplx u) const {
  const cplx t = tau(), y = u / (2.0 * w_);
  const cplx K = PI * jtheta(3, 0.0, t) * jtheta(4, 0.0, t) / (2.0 * w_);
  const cplx t1 = jtheta(1, y, t), t2 = jtheta(2, y, t);
  const cplx d = (jtheta(2, y, t, 1) * t1 - t2 * jtheta(1, y, t, 1)) / (t1 * t1);
  return 2.0 * K * K * (t2 / t1) * d / (2.0 * w_);
}

cplx Weierstrass::zeta(cplx u) const {
  const cplx t = tau(), y = u / (2.0 * w_);
  return eta_ * u / w_ + jtheta(1, y, t, 1) / (2.0 * w_ * jtheta(1, y, t));
}

cplx Weierstrass::sigma(cplx u) const {
  const cplx t = tau(), y = u / (2.0 * w_);
  return 2.0 * w_ / jtheta(1, 0.0, t, 1) * std::exp(eta_ * u * u / (2.0 * w_)) * jtheta(1, y, t);
}

cplx Weierstrass::eta_prime() const { return zeta(wp_); }

namespace {

// the zero of wp on omega + i[0, |omega'|], where wp falls from e1 to e2 < 0
cplx wp_zero(const Weierstrass& W) {
  const double w = W.omega(), h = W.omega_prime().imag();
  if (!(W.roots()[1] < 0)) throw RootNotFound("wp has no zero on the half-period segment");
  double lo = 0, hi = h;
  double s = 0.5 * h;
  for (int it = 0; it < 200; ++it) {
    const double f = W.wp(cplx(w, s)).real();
    if (f > 0) lo = s; else hi = s;
    // d wp / ds = i wp', real on the segment
    const double df = (I * W.wp_prime(cplx(w, s))).real();
    double sn = s - f / df;
    if (!(sn > lo && sn < hi)) sn = 0.5 * (lo + hi);
    if (std::abs(sn - s) < 1e-15 * h) {
      s = sn;
      break;
    }
    s = sn;
  }
  const cplx u(w, s);
  if (std::abs(W.wp(u)) > 1e-9 * (1.0 + std::abs(W.roots()[0]))) throw RootNotFound("Newton did not converge on the wp zero");
  return u;
}

}  // namespace

EllipticCurve::EllipticCurve(double lambda2, double lambda3, double mu0_imag)
    : wei_([&] {
        const double Delta = lambda2 * lambda2 + 4.0 * mu0_imag;
        if (!(Delta > 0)) throw InvalidCurve("Delta = lambda2^2 - 4 i mu0 must be positive");
        if (mu0_imag == 0) throw InvalidCurve("mu0 = 0 makes the curve reducible");
        return Weierstrass(64.0 * lambda3, 64.0 * Delta);
      }()) {
  EllipticConstants& k = k_;
  k.lambda2 = lambda2;
  k.lambda3 = lambda3;
  k.mu0_imag = mu0_imag;
  k.Delta = lambda2 * lambda2 + 4.0 * mu0_imag;
  k.sqrtDelta = std::sqrt(k.Delta);
  k.g2 = wei_.g2();
  k.g3 = wei_.g3();
  const cplx mu0 = I * mu0_imag;
  const double l2 = lambda2, l3 = lambda3, D = k.Delta, sD = k.sqrtDelta;
  k.nondegeneracy = mu0 * D * (27.0 * D * D - 64.0 * l3 * l3 * l3) *
                    (-27.0 * I * mu0 * std::pow(D + I * mu0, 3) +
                     l3 * l3 * l3 * (l3 * l3 * l3 + 54.0 * I * mu0 * D - 270.0 * mu0));
  const double w = wei_.omega();
  tau_ = 1.0 + wei_.tau();
  k.A = -2.0 * w;
  const double A = k.A;

  cplx u = wp_zero(wei_);
  if ((wei_.wp_prime(u) / (I * std::sqrt(k.g3))).real() < 0) u = -u;
  k.r = u / (2.0 * w);

  k.V = 1.0 / (2.0 * A);
  k.W = 0;
  k.Vi = {-I / (4.0 * A), I * (sD + l2) / (8.0 * A * sD), I * (sD - l2) / (8.0 * A * sD)};
  const cplx w2 = l3 * mu0 / (8.0 * A * D * sD);
  k.Wi = {0.0, w2, -w2};
  const cplx z2 = -l2 * mu0 * l3 * l3 / (16.0 * A * D * D * sD);
  k.Zi = {0.0, z2, -z2};

  // third over first derivative of theta1 at 0 is -12 omega eta
  const cplx t31 = -12.0 * w * wei_.eta();
  for (int i = 0; i < 3; ++i) {
    const cplx beta = k.Wi[i] / k.Vi[i];
    k.c1[i] = -beta;
    k.c2[i] = beta * beta - 2.0 * k.Zi[i] / k.Vi[i] - k.Vi[i] * k.Vi[i] * t31 / 3.0;
  }

  // theta quotients at v_ij = r_j - r_i with r_1 = 0, r_2 = r, r_3 = -r
  const cplx rr[3] = {0.0, k.r, -k.r};
  auto X = [&](int i, int j) { return k.Vi[i - 1] * dlog_theta1(rr[j - 1] - rr[i - 1]); };
  auto Y = [&](int i, int j) {
    const cplx v = rr[j - 1] - rr[i - 1];
    return 2.0 * k.Wi[i - 1] * dlog_theta1(v) - k.Vi[i - 1] * k.Vi[i - 1] * d2log_theta1(v);
  };
  const cplx k1 = I * (X(2, 1) + X(3, 1) - k.c1[0]);
  const cplx k2 = I * (-X(1, 2) + X(3, 2) + k.c1[1]);
  const cplx k3 = I * (-X(1, 3) + X(2, 3) + k.c1[2]);
  E1_quot_ = k1 - k2;
  E2_quot_ = k1 - k3;
  k.E = -0.5 * (wei_.zeta(2.0 * w * k.r) - 2.0 * wei_.eta() * k.r);
  const cplx n1 = 2.0 * I * (Y(2, 1) + Y(3, 1) - k.c2[0]);
  const cplx n2 = 2.0 * I * (-Y(1, 2) + Y(3, 2) + k.c2[1]);
  const cplx n3 = 2.0 * I * (-Y(1, 3) + Y(2, 3) + k.c2[2]);
  k.N1 = n2 - n1;
  k.N2 = n3 - n1;

  // the odd theta [1/2; 1/2] at the canonical tau is -theta1
  const cplx t1p = jtheta(1, 0.0, tau_, 1);
  for (int i = 0; i < 3; ++i) k.theta_V[i] = -t1p * k.Vi[i];
  const cplx s1 = std::sqrt(k.theta_V[0]);
  k.delta2 = -I * s1 * std::sqrt(k.theta_V[1]) / (-jtheta(1, k.r, tau_));
  k.delta3 = -I * s1 * std::sqrt(k.theta_V[2]) / (-jtheta(1, -k.r, tau_));
}

cplx EllipticCurve::dlog_theta1(cplx v) const {
  const double w = wei_.omega();
  return 2.0 * w * (wei_.zeta(2.0 * w * v) - 2.0 * wei_.eta() * v);
}

cplx EllipticCurve::d2log_theta1(cplx v) const {
  const double w = wei_.omega();
  return -4.0 * w * w * wei_.wp(2.0 * w * v) - 4.0 * w * wei_.eta();
}

std::array<cplx, 2> EllipticCurve::to_cubic(cplx z, cplx w) const {
  const cplx u = w - 2.0 * I * z * z;
  return {-4.0 * I * u, 8.0 * I * k_.lambda2 - 32.0 * z * u};
}

std::array<cplx, 2> EllipticCurve::from_cubic(cplx x, cplx y) const {
  if (std::abs(x) < 1e-14) throw MapSingular("x = 0 is the image of a point at infinity");
  const cplx z = (8.0 * k_.lambda2 + I * y) / (8.0 * x);
  return {z, I * x / 4.0 + 2.0 * I * z * z};
}

cplx EllipticCurve::curve_residual(cplx z, cplx w) const {
  const cplx a = w - 2.0 * I * z * z;
  return (w + 2.0 * I * z * z) * a * a + (2.0 * k_.lambda2 * z + k_.lambda3) * a + I * k_.mu0_imag;
}

cplx EllipticCurve::cubic_residual(cplx x, cplx y) const { return y * y - (4.0 * x * x * x - k_.g2 * x - k_.g3); }

cplx EllipticCurve::pole_shift(double D) const { return D + 0.5 * (1.0 + tau_); }

namespace {

struct Parts {
  std::array<cplx, 2> q, l, dl;  // q, its x log-derivative, and that one's derivative
};

Parts solution_parts(const EllipticCurve& ec, double x, double D) {
  const auto& k = ec.constants();
  const cplx tau = ec.tau();
  const cplx G = k.V * x - D;
  const cplx t0 = jtheta(3, G, tau), tD = jtheta(3, D, tau);
  if (std::abs(t0) < 1e-14 * std::abs(tD)) throw ThetaZero("theta(Vx - D) vanishes: pole of the solution");
  const cplx l0 = jtheta(3, G, tau, 1) / t0, m0 = jtheta(3, G, tau, 2) / t0 - l0 * l0;
  const cplx rk[2] = {k.r, -k.r}, Ek[2] = {k.E, -k.E}, dk[2] = {k.delta2, k.delta3};
  Parts p;
  for (int j = 0; j < 2; ++j) {
    const cplx tr = jtheta(3, rk[j] - D, tau);
    const cplx ts = jtheta(3, G + rk[j], tau);
    const cplx amp = 2.0 * I * dk[j] * (tD / tr) * std::abs(tr / tD);
    p.q[j] = amp * ts / t0 * std::exp(-Ek[j] * x);
    const cplx ls = jtheta(3, G + rk[j], tau, 1) / ts, ms = jtheta(3, G + rk[j], tau, 2) / ts - ls * ls;
    p.l[j] = k.V * (ls - l0) - Ek[j];
    p.dl[j] = k.V * k.V * (ms - m0);
  }
  return p;
}

}  // namespace

std::array<cplx, 2> EllipticCurve::solution(double x, double D) const { return solution_parts(*this, x, D).q; }

std::array<cplx, 2> EllipticCurve::solution_dx(double x, double D) const {
  auto p = solution_parts(*this, x, D);
  return {p.q[0] * p.l[0], p.q[1] * p.l[1]};
}

std::array<cplx, 2> EllipticCurve::solution_dxx(double x, double D) const {
  auto p = solution_parts(*this, x, D);
  std::array<cplx, 2> out;
  for (int j = 0; j < 2; ++j) out[j] = p.q[j] * (p.l[j] * p.l[j] + p.dl[j]);
  return out;
}

namespace {

struct Tol {
  const char* name;
  double IdentityReport::*field;
  double tol;
};

const std::vector<Tol>& tolerances() {
  static const std::vector<Tol> t{
      {"wp_zero", &IdentityReport::wp_zero, 1e-10},
      {"legendre", &IdentityReport::legendre, 1e-12},
      {"duplication", &IdentityReport::duplication, 1e-9},
      {"e_sum", &IdentityReport::e_sum, 1e-8},
      {"e_difference", &IdentityReport::e_difference, 1e-8},
      {"e_quotients", &IdentityReport::e_quotients, 1e-8},
      {"n_sum", &IdentityReport::n_sum, 1e-8},
      {"intensity", &IdentityReport::intensity, 1e-8},
      {"second_derivative", &IdentityReport::second_derivative, 1e-7},
      {"delta_product", &IdentityReport::delta_product, 1e-10},
      {"c1_closed", &IdentityReport::c1_closed, 1e-12},
      {"map_roundtrip", &IdentityReport::map_roundtrip, 1e-10},
  };
  return t;
}

}  // namespace

std::string IdentityReport::first_failure() const {
  for (const auto& t : tolerances())
    if (!(this->*t.field < t.tol)) return t.name;
  return {};
}

bool IdentityReport::pass() const { return first_failure().empty(); }

std::vector<std::pair<std::string, double>> IdentityReport::entries() const {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& t : tolerances()) out.emplace_back(t.name, this->*t.field);
  return out;
}

IdentityReport check_identities(const EllipticCurve& ec, int samples, double D) {
  const auto& k = ec.constants();
  const auto& W = ec.weierstrass();
  const double w = W.omega(), eta = W.eta();
  const cplx u = 2.0 * w * k.r;
  IdentityReport rep;
  rep.wp_zero = std::abs(W.wp(u));
  rep.legendre = std::abs(eta * W.omega_prime() - W.eta_prime() * w - I * PI / 2.0);
  rep.duplication = std::abs(W.zeta(2.0 * u) - 2.0 * W.zeta(u) - 2.0 * I * k.lambda3 / k.sqrtDelta);
  rep.e_sum = std::abs(-I * k.lambda2 * k.lambda3 / k.Delta * (w / k.A + 0.5));
  rep.e_difference = std::abs(2.0 * k.E - 4.0 * w * k.V * (W.zeta(u) - 2.0 * eta * k.r));
  const auto eq = ec.e_from_quotients();
  rep.e_quotients = std::max(std::abs(eq[0] - k.E), std::abs(eq[1] + k.E));
  rep.n_sum = std::max(std::abs(k.N1), std::abs(k.N2));
  // one real period of |q|^2 in x is 1 / V
  const double period = std::abs(1.0 / k.V);
  for (int s = 0; s < samples; ++s) {
    const double x = -0.5 * period + period * (s + 0.5) / samples;
    const cplx p = W.wp(2.0 * w * (k.V * x - ec.pole_shift(D)));
    std::array<cplx, 2> q, qxx;
    try {
      q = ec.solution(x, D);
      qxx = ec.solution_dxx(x, D);
    } catch (const ThetaZero&) {
      continue;
    }
    const double n2 = std::norm(q[0]) + std::norm(q[1]);
    rep.intensity = std::max(rep.intensity, std::abs(2.0 * n2 + 0.5 * p) / (1.0 + std::abs(p)));
    for (int j = 0; j < 2; ++j)
      rep.second_derivative =
          std::max(rep.second_derivative, std::abs(qxx[j] - 0.5 * p * q[j]) / (1.0 + std::abs(p * q[j])));
  }
  const cplx t1p = jtheta(1, 0.0, ec.tau(), 1), t1r = jtheta(1, k.r, ec.tau());
  const cplx mu0 = I * k.mu0_imag;
  const cplx closed = -I * mu0 * std::pow(t1p, 4) / (256.0 * std::pow(k.A, 4) * k.Delta * std::pow(t1r, 4));
  const cplx prod = k.delta2 * k.delta2 * k.delta3 * k.delta3;
  rep.delta_product = std::abs(prod - closed) / std::abs(closed);
  rep.c1_closed = std::max({std::abs(k.c1[0]),
                            std::abs(k.c1[1] - k.lambda3 * (k.lambda2 - k.sqrtDelta) / (4.0 * k.Delta)),
                            std::abs(k.c1[2] - k.lambda3 * (k.lambda2 + k.sqrtDelta) / (4.0 * k.Delta))});
  for (cplx z : {cplx(0.3, 0.2), cplx(-1.1, 0.4), cplx(0.7, -0.9)}) {
    // u^3 + 4 i z^2 u^2 + (2 lambda2 z + lambda3) u + mu0 = 0 in u = w - 2 i z^2
    const cplx a = 2.0 * I * z * z;
    for (cplx uu : cubic_roots(2.0 * a, 2.0 * k.lambda2 * z + k.lambda3, mu0)) {
      const cplx wv = uu + a;
      auto xy = ec.to_cubic(z, wv);
      auto zw = ec.from_cubic(xy[0], xy[1]);
      rep.map_roundtrip = std::max({rep.map_roundtrip, std::abs(zw[0] - z) + std::abs(zw[1] - wv),
                                    std::abs(ec.cubic_residual(xy[0], xy[1])) / (1.0 + std::norm(xy[1]))});
    }
  }
  return rep;
}

}  // namespace manakov::elliptic
