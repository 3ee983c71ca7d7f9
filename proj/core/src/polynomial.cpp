#include "manakov/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace manakov {

Poly Poly::monomial(cplx a, int k) {
  std::vector<cplx> c(k + 1, cplx{});
  c[k] = a;
  return Poly(std::move(c));
}

int Poly::degree() const {
  for (int k = int(c_.size()) - 1; k >= 0; --k)
    if (c_[k] != cplx{}) return k;
  return -1;
}

cplx Poly::operator()(cplx z) const {
  cplx s{};
  for (int k = int(c_.size()) - 1; k >= 0; --k) s = s * z + c_[k];
  return s;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = double(k) * c_[k];
  return Poly(std::move(d));
}

Poly Poly::trimmed(double tol) const {
  std::vector<cplx> c(c_);
  while (!c.empty() && std::abs(c.back()) <= tol) c.pop_back();
  return Poly(std::move(c));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<cplx> c(std::max(a.c_.size(), b.c_.size()), cplx{});
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[int(k)] + b[int(k)];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + cplx(-1.0) * b; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.c_.empty() || b.c_.empty()) return Poly();
  std::vector<cplx> c(a.c_.size() + b.c_.size() - 1, cplx{});
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

Poly operator*(cplx s, const Poly& a) {
  std::vector<cplx> c(a.c_);
  for (auto& x : c) x *= s;
  return Poly(std::move(c));
}

namespace {

std::vector<cplx> companion_eigs(const std::vector<cplx>& monic) {
  // monic: c0..c_{d-1} of z^d + c_{d-1} z^{d-1} + ... + c0
  const int d = int(monic.size());
  MatC M = MatC::Zero(d, d);
  for (int i = 1; i < d; ++i) M(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) M(i, d - 1) = -monic[i];
  Eigen::ComplexEigenSolver<MatC> es(M, false);
  std::vector<cplx> r(d);
  for (int i = 0; i < d; ++i) r[i] = es.eigenvalues()[i];
  return r;
}

cplx newton_polish(const Poly& p, const Poly& dp, cplx z, int steps) {
  for (int s = 0; s < steps; ++s) {
    cplx d = dp(z);
    if (d == cplx{}) break;
    cplx dz = p(z) / d;
    z -= dz;
    if (std::abs(dz) <= 1e-16 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

}  // namespace

std::vector<cplx> poly_roots(const Poly& p0) {
  Poly p = p0.trimmed();
  const int d = p.degree();
  if (d < 1) return {};
  // balance: z = rho * t with rho from the Fujiwara-type bound
  const cplx lead = p[d];
  double rho = 0.0;
  for (int k = 0; k < d; ++k) {
    double a = std::abs(p[k] / lead);
    if (a > 0) rho = std::max(rho, std::pow(a, 1.0 / (d - k)));
  }
  if (rho == 0.0) rho = 1.0;
  std::vector<cplx> monic(d);
  for (int k = 0; k < d; ++k) monic[k] = p[k] / lead * std::pow(rho, double(k - d));
  auto t = companion_eigs(monic);
  Poly dp = p.derivative();
  std::vector<cplx> r(d);
  for (int i = 0; i < d; ++i) r[i] = newton_polish(p, dp, t[i] * rho, 1);
  return r;
}

std::vector<cplx> cubic_roots(cplx a, cplx b, cplx c) {
  Poly p({c, b, a, 1.0});
  return poly_roots(p);
}

}  // namespace manakov
