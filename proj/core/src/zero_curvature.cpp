#include "manakov/zero_curvature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "manakov/errors.hpp"

namespace manakov {

Mat2C abracket(const Vec2C& a, const Vec2C& b) {
  const cplx s = a.dot(b) - b.dot(a);  // dot conjugates the left operand
  return s * Mat2C::Identity() + b * a.adjoint() - a * b.adjoint();
}

HierarchyCoeffs recursion_coeffs(const FieldJet& jet, int k_max) {
  if (k_max < 0) throw OrderTooHigh("negative order");
  if (k_max > 4)
    throw OrderTooHigh("order " + std::to_string(k_max) + " needs beta_3, which involves the unresolved antiderivative");
  const int nb = std::clamp(k_max, 1, 3);  // betas 0 .. nb - 1
  if (jet.order() < nb - 1)
    throw OrderTooHigh("jet carries " + std::to_string(jet.order()) + " derivatives, order " + std::to_string(k_max) +
                       " needs more");
  HierarchyCoeffs h;
  const Vec2C& q = jet.q();
  h.betas.push_back(q);
  if (nb > 1) h.betas.push_back(I * jet.d[1]);
  if (nb > 2) h.betas.push_back(-jet.d[2] - 2.0 * q.squaredNorm() * q);
  auto beta = [&](int j) -> const Vec2C& { return h.betas.at(j); };
  auto gamma = [&](int j) -> Vec2C { return -beta(j).conjugate(); };

  h.alphas = {-0.5 * I, 0.0};
  h.Amats = {0.5 * I * Mat2C::Identity(), Mat2C::Zero()};
  for (int m = 2; m <= k_max; ++m) {
    const int k = m - 2;
    cplx a = 0;
    Mat2C A = Mat2C::Zero();
    for (int j = 0; j <= k; ++j) {
      a += -I * (gamma(k - j).transpose() * beta(j)).value();
      A += I * gamma(k - j) * beta(j).transpose();
    }
    for (int j = 0; j <= k - 2; ++j) {
      a += -I * h.alphas[k - j] * h.alphas[j + 2];
      A += I * h.alphas[k - j] * h.Amats[j + 2];
    }
    h.alphas.push_back(a);
    h.Amats.push_back(A);
  }
  h.alphas.resize(k_max + 1);
  h.Amats.resize(k_max + 1);
  return h;
}

Mat3C lax_matrix(const HierarchyCoeffs& h, int n, cplx z) {
  if (n > h.k_max() || n > int(h.betas.size()))
    throw OrderTooHigh("L_" + std::to_string(n) + " needs coefficients through order " + std::to_string(n));
  Mat3C L = Mat3C::Zero();
  for (int k = 0; k <= n; ++k) {
    Mat3C Lk = Mat3C::Zero();
    Lk(0, 0) = h.alphas[k];
    Lk.bottomRightCorner<2, 2>() = h.Amats[k];
    if (k >= 1) {
      const Vec2C& b = h.betas[k - 1];
      Lk.block<1, 2>(0, 1) = b.transpose();
      Lk.block<2, 1>(1, 0) = -b.conjugate();
    }
    L += std::pow(2.0 * z, n - k) * Lk;
  }
  return L;
}

CurveInvariants lambda_from_field(const FieldJet& jet, int n) {
  if (n < 2) throw OrderTooHigh("curves start at n = 2");
  if (n > 3) throw OrderTooHigh("L_" + std::to_string(n) + " needs beta_" + std::to_string(n - 1));
  const auto h = recursion_coeffs(jet, n);
  // P and Q sampled on |2z| = 1, coefficients by discrete Fourier sums
  const int M = 16;
  std::vector<cplx> P(M), Q(M), zeta(M);
  double trace_err = 0;
  for (int k = 0; k < M; ++k) {
    zeta[k] = std::polar(1.0, 2.0 * PI * k / M);
    const cplx z = 0.5 * zeta[k];
    const Mat3C L = lax_matrix(h, n, z);
    const cplx s = 0.5 * I * std::pow(zeta[k], n);
    const cplx tr = L.trace();
    const cplx c2 = 0.5 * (tr * tr - (L * L).trace());
    const cplx det = L.determinant();
    trace_err = std::max(trace_err, std::abs(tr - s));
    P[k] = c2 + s * s;
    Q[k] = -det - s * s * s + s * P[k];
  }
  auto coeff = [&](const std::vector<cplx>& f, int m) {
    cplx c = 0;
    for (int k = 0; k < M; ++k) c += f[k] * std::pow(zeta[k], -m);
    return c / double(M);
  };
  CurveInvariants out;
  out.n = n;
  for (int j = n; j <= 2 * n - 1; ++j) out.lambda.push_back(coeff(P, 2 * n - 1 - j));
  for (int i = 0; i <= n - 2; ++i) out.mu.push_back(coeff(Q, n - 2 - i));
  out.consistency = trace_err;
  for (int m = n; m < M / 2; ++m) out.consistency = std::max(out.consistency, std::abs(coeff(P, m)));
  for (int m = n - 1; m < M / 2; ++m) out.consistency = std::max(out.consistency, std::abs(coeff(Q, m)));
  return out;
}

CurveInvariants lambda_genus1(const FieldJet& jet) {
  if (jet.order() < 1) throw OrderTooHigh("needs q_x");
  const Vec2C& q = jet.d[0];
  const Vec2C& qx = jet.d[1];
  CurveInvariants out;
  out.n = 2;
  out.lambda = {-I * (q.transpose() * qx.conjugate() - qx.transpose() * q.conjugate()).value(),
                (qx.transpose() * qx.conjugate()).value() + std::pow(q.squaredNorm(), 2)};
  out.mu = {I * std::norm(qx(0) * q(1) - qx(1) * q(0))};
  return out;
}

}  // namespace manakov
