#include "manakov/spectral_curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "manakov/errors.hpp"
#include "manakov/series.hpp"
#include "manakov/tracking.hpp"

namespace manakov {

using series::Series;

TrigonalCurve TrigonalCurve::make(int n, const std::vector<double>& lambda,
                                  const std::vector<double>& mu_imag) {
  TrigonalCurve c;
  c.n = n;
  for (double l : lambda) c.lambda.emplace_back(l, 0.0);
  for (double m : mu_imag) c.mu.emplace_back(0.0, m);
  c.validate();
  return c;
}

void TrigonalCurve::validate(double tol) const {
  if (n < 2) throw InvalidCurve("n must be >= 2");
  if (int(lambda.size()) != n) throw InvalidCurve("expected " + std::to_string(n) + " lambda values");
  if (int(mu.size()) != n - 1) throw InvalidCurve("expected " + std::to_string(n - 1) + " mu values");
  for (std::size_t k = 0; k < lambda.size(); ++k)
    if (std::abs(lambda[k].imag()) > tol * (1.0 + std::abs(lambda[k])))
      throw InvalidCurve("reality: lambda_" + std::to_string(n + int(k)) + " is not real");
  for (std::size_t k = 0; k < mu.size(); ++k)
    if (std::abs(mu[k].real()) > tol * (1.0 + std::abs(mu[k])))
      throw InvalidCurve("reality: mu_" + std::to_string(k) + " is not purely imaginary");
  if (std::abs(leading_delta()) <= 1e-12 * (1.0 + std::norm(lambda[0]) + std::abs(mu[0])))
    throw InvalidCurve("leading factor: lambda_n^2 - 4 i mu_0 vanishes");
}

cplx InfinitySeries::leading() const {
  double sg = sheet == 1 ? -1.0 : 1.0;
  return sg * I * std::ldexp(1.0, n - 1);
}

cplx InfinitySeries::coefficient(int p) const {
  if (p == -n) return leading();
  if (p >= 1 && p - 1 < int(v.size())) return v[p - 1];
  return {};
}

cplx InfinitySeries::w(cplx xi) const {
  return leading() * std::pow(xi, -n) + xi * series::eval(v, xi);
}

cplx InfinitySeries::u(cplx xi) const {
  cplx reg = xi * series::eval(v, xi);
  if (sheet == 1) return -2.0 * I * std::ldexp(1.0, n - 1) * std::pow(xi, -n) + reg;
  return reg;
}

namespace {

// Coefficient polynomials of F(xi, v) = sum_m F[m](xi) v^m
Series solve_branch(const std::vector<Series>& F, cplx v0, int order) {
  cplx Fv{};
  for (std::size_t m = 1; m < F.size(); ++m)
    if (!F[m].empty()) Fv += double(m) * F[m][0] * std::pow(v0, double(m - 1));
  Series v(order + 1, cplx{});
  v[0] = v0;
  for (int k = 1; k <= order; ++k) {
    // Horner in v with truncation at xi^k; v currently holds v_0..v_{k-1}
    Series acc;
    for (int m = int(F.size()) - 1; m >= 0; --m) {
      acc = series::mul(acc, v, k);
      acc = series::add(acc, F[m], k);
    }
    v[k] = -acc[k] / Fv;
  }
  return v;
}

Series reversed_poly(const Poly& p, int deg) {
  // xi^deg p(1/xi)
  Series r(deg + 1, cplx{});
  for (int e = 0; e <= deg; ++e) r[deg - e] = p[e];
  return r;
}

}  // namespace

SpectralCurve::SpectralCurve(TrigonalCurve curve) : c_(std::move(curve)) {
  c_.validate();
  const int n = c_.n;
  s2_ = Poly::monomial(I * std::ldexp(1.0, n), n);
  std::vector<cplx> p(n, cplx{}), q(std::max(n - 1, 1), cplx{});
  for (int j = n; j <= 2 * n - 1; ++j) {
    int e = 2 * n - j - 1;
    p[e] += c_.lam(j) * std::ldexp(1.0, e);
  }
  for (int j = 0; j <= n - 2; ++j) q[j] += c_.mu_at(n - 2 - j) * std::ldexp(1.0, j);
  P_ = Poly(p);
  Q_ = Poly(q);
  ds2_ = s2_.derivative();
  dP_ = P_.derivative();
  dQ_ = Q_.derivative();
  dds2_ = ds2_.derivative();
  ddP_ = dP_.derivative();
  ddQ_ = dQ_.derivative();

  // Resultant(f, f_w; w) of the monic cubic equals minus its discriminant;
  // written in u = w - s (translation invariant) to avoid cancellation.
  const Poly& a = s2_;
  const Poly& b = P_;
  const Poly& cc = Q_;
  Poly disc = cplx(18.0) * (a * b * cc) - cplx(4.0) * (a * a * a * cc) + a * a * b * b -
              cplx(4.0) * (b * b * b) - cplx(27.0) * (cc * cc);
  disc_ = (cplx(-1.0) * disc).trimmed();
  compute_branch_points();
  label_base();
}

int SpectralCurve::genus() const {
  const int g = 2 * c_.n - 3;
  const int B = int(br_.points.size());
  const int rh = B / 2 - 3 + 1;
  if (rh != g) throw MultipleRoot("Riemann-Hurwitz count " + std::to_string(rh) + " != 2n-3");
  return g;
}

cplx SpectralCurve::eval_f(cplx z, cplx w) const {
  cplx s = this->s(z);
  return (w + s) * (w - s) * (w - s) + (w - s) * P_(z) + Q_(z);
}

cplx SpectralCurve::f_w(cplx z, cplx w) const { return g_u(z, w - s(z)); }

cplx SpectralCurve::g_u(cplx z, cplx u) const {
  return (3.0 * u + 2.0 * s2_(z)) * u + P_(z);
}

CubicJet SpectralCurve::jet(cplx z, cplx u) const {
  const cplx a = s2_(z), b = P_(z), c = Q_(z);
  const cplx da = ds2_(z), db = dP_(z), dc = dQ_(z);
  const cplx dda = dds2_(z), ddb = ddP_(z), ddc = ddQ_(z);
  CubicJet j;
  j.g = ((u + a) * u + b) * u + c;
  j.gu = (3.0 * u + 2.0 * a) * u + b;
  j.gz = (da * u + db) * u + dc;
  j.guu = 6.0 * u + 2.0 * a;
  j.gzu = 2.0 * da * u + db;
  j.gzz = (dda * u + ddb) * u + ddc;
  return j;
}

double SpectralCurve::residual(cplx z, cplx w) const {
  return std::abs(eval_f(z, w)) / std::max(1.0, std::pow(std::abs(w), 3));
}

std::array<cplx, 3> SpectralCurve::u_roots(cplx z) const {
  auto r = cubic_roots(s2_(z), P_(z), Q_(z));
  return {r[0], r[1], r[2]};
}

double SpectralCurve::branch_distance(cplx z) const {
  double d = 1e300;
  for (cplx e : br_.points) d = std::min(d, std::abs(z - e));
  return d;
}

void SpectralCurve::compute_branch_points() {
  auto r = poly_roots(disc_);
  const int expect = 4 * c_.n - 2;
  if (int(r.size()) != expect)
    throw MultipleRoot("discriminant degree " + std::to_string(r.size()) + " != 4n-2");
  double scale = 0.0;
  for (cplx x : r) scale = std::max(scale, std::abs(x));
  rad_ = scale;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j)
      if (std::abs(r[i] - r[j]) < 1e-6 * std::max(1.0, scale))
        throw MultipleRoot("discriminant roots collide near (" + std::to_string(r[i].real()) + ", " +
                           std::to_string(r[i].imag()) + ")");
  std::vector<cplx> lo, hi;
  const double tol = 1e-7 * std::max(1.0, scale);
  for (cplx x : r) {
    if (std::abs(x.imag()) <= tol) throw PairingFailure("real branch point");
    (x.imag() < 0 ? lo : hi).push_back(x);
  }
  if (lo.size() != hi.size()) throw PairingFailure("branch points are not closed under conjugation");
  std::sort(lo.begin(), lo.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  std::vector<bool> used(hi.size(), false);
  br_.points.clear();
  for (cplx e : lo) {
    std::size_t best = hi.size();
    double bd = 1e300;
    for (std::size_t j = 0; j < hi.size(); ++j)
      if (!used[j] && std::abs(std::conj(e) - hi[j]) < bd) {
        bd = std::abs(std::conj(e) - hi[j]);
        best = j;
      }
    if (bd > tol) throw PairingFailure("no conjugate partner for a branch point (are the coefficients real?)");
    used[best] = true;
    cplx m = 0.5 * (e + std::conj(hi[best]));
    br_.points.push_back(m);
    br_.points.push_back(std::conj(m));
  }
  R_ = 10.0 * std::max(rad_, 0.1);
  double ymax = 0.0;
  for (cplx e : br_.points) ymax = std::max(ymax, std::abs(e.imag()));
  H_ = 1.5 * ymax + 0.1 * std::max(rad_, 0.1);
}

InfinitySeries SpectralCurve::infinity_series(int sheet, int order) const {
  if (sheet < 1 || sheet > 3) throw InvalidCurve("sheet must be 1, 2 or 3");
  if (order < 1) throw InvalidCurve("series order must be >= 1");
  const int n = c_.n;
  const int K = order;
  // p~ = xi^{n-1} P(1/xi), q~ = xi^{n-2} Q(1/xi)
  Series pt = reversed_poly(P_, n - 1);
  Series qt = reversed_poly(Q_, n - 2);
  const cplx c2n = I * std::ldexp(1.0, n);
  std::vector<Series> F(4);
  cplx v0;
  if (sheet == 1) {
    // v (xi^{n+1} v - i 2^n)^2 + (xi^{n+1} v - i 2^n) p~ + xi^{n+1} q~
    F[3] = series::shift({1.0}, 2 * n + 2, 2 * n + 2);
    F[2] = series::shift({-2.0 * c2n}, n + 1, n + 1);
    F[1] = series::add({-std::ldexp(1.0, 2 * n)}, series::shift(pt, n + 1, K + n + 1), K + n + 1);
    F[0] = series::add(series::scale(pt, -c2n), series::shift(qt, n + 1, K + n + 1), K + n + 1);
    v0 = -0.5 * I * c_.lam(n);
  } else {
    // (i 2^n + xi^{n+1} v) v^2 + p~ v + q~
    F[3] = series::shift({1.0}, n + 1, n + 1);
    F[2] = {c2n};
    F[1] = pt;
    F[0] = qt;
    cplx r = std::sqrt(c_.leading_delta());
    v0 = 0.25 * I * (c_.lam(n) + (sheet == 2 ? r : -r));
  }
  InfinitySeries out;
  out.sheet = sheet;
  out.n = n;
  out.v = solve_branch(F, v0, K);
  return out;
}

void SpectralCurve::label_base() {
  const cplx z0 = R_;
  auto r = u_roots(z0);
  const cplx xi = 1.0 / z0;
  for (int k = 0; k < 3; ++k) {
    cplx pred = infinity_series(k + 1, 40).u(xi);
    cplx u;
    if (!root_near(*this, z0, pred, 4.0, u))
      throw AmbiguousContinuation("cannot identify sheet " + std::to_string(k + 1) + " at the base point");
    base_u_[k] = u;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(base_u_[i] - base_u_[j]) < 1e-9 * (1.0 + std::abs(base_u_[i])))
        throw AmbiguousContinuation("base point sheets coincide");
  (void)r;
}

cplx SpectralCurve::label_root(cplx z, int sheet) const {
  if (sheet < 1 || sheet > 3) throw InvalidCurve("sheet must be 1, 2 or 3");
  const cplx z0 = R_;
  std::vector<cplx> path{z0, cplx(R_, H_), cplx(z.real(), H_), z};
  return track_root(*this, path, base_u_[sheet - 1]);
}

std::array<SheetPoint, 3> SpectralCurve::fiber(cplx z) const {
  auto r = u_roots(z);
  double sc = 1.0;
  for (cplx x : r) sc = std::max(sc, std::abs(x));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(r[i] - r[j]) < 1e-6 * sc)
        throw DegenerateFiber("fiber roots collide (branch point) at z = (" + std::to_string(z.real()) +
                              ", " + std::to_string(z.imag()) + ")");
  std::array<SheetPoint, 3> out;
  for (int k = 0; k < 3; ++k) {
    cplx u = label_root(z, k + 1);
    // snap to the companion root
    std::size_t best = 0;
    for (std::size_t j = 1; j < 3; ++j)
      if (std::abs(r[j] - u) < std::abs(r[best] - u)) best = j;
    out[k] = {z, r[best] + s(z), k + 1};
  }
  return out;
}

SheetPoint SpectralCurve::continue_sheet(const std::vector<cplx>& path, const SheetPoint& start) const {
  if (path.empty()) return start;
  if (residual(start.z, start.w) > 1e-8) throw AmbiguousContinuation("start point is not on the curve");
  std::vector<cplx> p(path);
  if (p.front() != start.z) p.insert(p.begin(), start.z);
  cplx u = track_root(*this, p, start.w - s(start.z));
  const cplx ze = p.back();
  SheetPoint out{ze, u + s(ze), 0};
  double best = 1e300, second = 1e300;
  for (int k = 1; k <= 3; ++k) {
    double d = std::abs(label_root(ze, k) - u);
    if (d < best) {
      second = best;
      best = d;
      out.sheet = k;
    } else if (d < second) {
      second = d;
    }
  }
  if (!(second > 4.0 * best)) throw AmbiguousContinuation("end point label is ambiguous");
  return out;
}

}  // namespace manakov
