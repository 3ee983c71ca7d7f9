#pragma once

#include <vector>

#include "manakov/types.hpp"

namespace manakov {

/// Dense univariate polynomial, coefficients stored lowest degree first.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<cplx> c) : c_(std::move(c)) {}
  static Poly monomial(cplx a, int k);

  int degree() const;
  cplx operator[](int k) const { return k >= 0 && k < int(c_.size()) ? c_[k] : cplx{}; }
  const std::vector<cplx>& coeffs() const { return c_; }

  cplx operator()(cplx z) const;
  Poly derivative() const;
  /// Drop leading coefficients with |c| <= tol.
  Poly trimmed(double tol = 0.0) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(cplx s, const Poly& a);

 private:
  std::vector<cplx> c_;
};

/// Roots from companion-matrix eigenvalues (after rescaling z so the
/// coefficients are balanced), each polished by Newton steps on p.
std::vector<cplx> poly_roots(const Poly& p);

/// Roots of a monic cubic u^3 + a u^2 + b u + c, companion eigenvalues plus
/// one Newton polish.
std::vector<cplx> cubic_roots(cplx a, cplx b, cplx c);

}  // namespace manakov
