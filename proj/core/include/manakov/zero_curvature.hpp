#pragma once

#include <vector>

#include <Eigen/Dense>

#include "manakov/types.hpp"

namespace manakov {

using Vec2C = Eigen::Vector2cd;
using Mat2C = Eigen::Matrix2cd;
using Mat3C = Eigen::Matrix3cd;

/// q and its x-derivatives at one point: d[k] = d^k q / dx^k.
struct FieldJet {
  std::vector<Vec2C> d;
  int order() const { return int(d.size()) - 1; }
  const Vec2C& q() const { return d.at(0); }
};

/// (a^+ b - b^+ a) 1 + b a^+ - a b^+, anti-hermitian by construction.
Mat2C abracket(const Vec2C& a, const Vec2C& b);

struct HierarchyCoeffs {
  std::vector<cplx> alphas;   // alpha_0 .. alpha_k
  std::vector<Mat2C> Amats;   // A_0 .. A_k
  std::vector<Vec2C> betas;   // beta_0 .. beta_{k-1}; gamma_j = -conj(beta_j)
  int k_max() const { return int(alphas.size()) - 1; }
};

/// Diagonal blocks through k_max <= 4 and the off-diagonal vectors they need.
/// beta_0 = q, beta_1 = i q_x, beta_2 = -q_xx - 2 (q^+ q) q.
/// Throws OrderTooHigh past k_max = 4 or when the jet is too short.
HierarchyCoeffs recursion_coeffs(const FieldJet& jet, int k_max);

/// L_n(z) = sum_k (2z)^{n-k} L_k with L_k = [[alpha_k, beta_{k-1}^T], [gamma_{k-1}, A_k]].
Mat3C lax_matrix(const HierarchyCoeffs& h, int n, cplx z);

struct CurveInvariants {
  int n = 0;
  std::vector<cplx> lambda;  // lambda_n .. lambda_{2n-1}
  std::vector<cplx> mu;      // mu_0 .. mu_{n-2}
  double consistency = 0;    // size of coefficients det(L_n - w) should not have
};

/// Coefficients of det(w - L_n(z)) read off on a circle in z. n = 2, 3.
CurveInvariants lambda_from_field(const FieldJet& jet, int n);

/// The closed genus-one expressions in q and q_x.
CurveInvariants lambda_genus1(const FieldJet& jet);

}  // namespace manakov
