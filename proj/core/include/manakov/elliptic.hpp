#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "manakov/types.hpp"

namespace manakov::elliptic {

/// Jacobi theta functions in the period-1 convention,
/// theta3(z|tau) = sum_n exp(i pi n^2 tau + 2 i pi n z); `d` is the z-derivative order.
cplx jtheta(int k, cplx z, cplx tau, int d = 0);

/// Weierstrass functions of y^2 = 4x^3 - g2 x - g3 with real g2, g3 and three
/// real roots (rectangular lattice): real half-period omega, imaginary omega'.
/// Throws DegenerateCubic otherwise.
class Weierstrass {
 public:
  Weierstrass(double g2, double g3);

  double g2() const { return g2_; }
  double g3() const { return g3_; }
  const std::array<double, 3>& roots() const { return e_; }  // e1 > e2 > e3
  double omega() const { return w_; }
  cplx omega_prime() const { return wp_; }
  cplx tau() const { return wp_ / w_; }
  double eta() const { return eta_; }
  cplx eta_prime() const;

  cplx wp(cplx u) const;
  cplx wp_prime(cplx u) const;
  cplx zeta(cplx u) const;
  cplx sigma(cplx u) const;

 private:
  double g2_, g3_;
  std::array<double, 3> e_{};
  double w_ = 0, eta_ = 0;
  cplx wp_{};
};

/// Genus-1 curve data and the closed-form constants.
struct EllipticConstants {
  double lambda2 = 0, lambda3 = 0, mu0_imag = 0;
  double Delta = 0, sqrtDelta = 0;
  double g2 = 0, g3 = 0;
  double A = 0;        // a-period, -2 omega
  cplx r{};            // r_2 = -r_3, with wp'(2 omega r) = +i sqrt(g3)
  double V = 0, W = 0;
  std::array<cplx, 3> theta_V{};  // directional derivatives of the odd theta at 0
  std::array<cplx, 3> Vi{}, Wi{}, Zi{};
  std::array<cplx, 3> c1{}, c2{};
  cplx E{};            // E_1 = -E_2
  cplx N1{}, N2{};
  cplx delta2{}, delta3{};
  cplx nondegeneracy{};  // the discriminant product that must not vanish
};

class EllipticCurve {
 public:
  /// Throws InvalidCurve when Delta <= 0 or the discriminant product vanishes,
  /// DegenerateCubic when the cubic lattice is not rectangular.
  EllipticCurve(double lambda2, double lambda3, double mu0_imag);

  const Weierstrass& weierstrass() const { return wei_; }
  const EllipticConstants& constants() const { return k_; }
  cplx tau() const { return tau_; }  // canonical-basis period ratio, Re tau = 1

  /// (z, w) -> (x, y) with du = dx/y on y^2 = 4x^3 - g2 x - g3, and back.
  /// from_cubic throws MapSingular at x = 0.
  std::array<cplx, 2> to_cubic(cplx z, cplx w) const;
  std::array<cplx, 2> from_cubic(cplx x, cplx y) const;
  cplx curve_residual(cplx z, cplx w) const;
  cplx cubic_residual(cplx x, cplx y) const;

  /// log-derivative of theta1 in the normalized coordinate and its derivative
  cplx dlog_theta1(cplx v) const;
  cplx d2log_theta1(cplx v) const;

  /// q_k(x) = 2i delta_k theta(D) theta(Vx - D + r_k) / (theta(r_k - D) theta(Vx - D)) e^{-E_k x},
  /// rescaled by |theta(r_k - D) / theta(D)|; theta is theta3 at the canonical tau.
  std::array<cplx, 2> solution(double x, double D = 0.0) const;
  std::array<cplx, 2> solution_dx(double x, double D = 0.0) const;
  std::array<cplx, 2> solution_dxx(double x, double D = 0.0) const;

  /// Lattice point with the pole of |q|^2: Vx - D = (1 + tau)/2.
  cplx pole_shift(double D = 0.0) const;

  /// E_1, E_2 assembled from the theta quotients X_ij and c1.
  std::array<cplx, 2> e_from_quotients() const { return {E1_quot_, E2_quot_}; }

 private:
  Weierstrass wei_;
  EllipticConstants k_;
  cplx tau_{};
  cplx E1_quot_{}, E2_quot_{};
};

struct IdentityReport {
  double wp_zero = 0;                 // |wp(2 omega r)|
  double legendre = 0;                // eta omega' - eta' omega - i pi / 2
  double duplication = 0;             // zeta(4 omega r) - 2 zeta(2 omega r) - 2i lambda3 / sqrt(Delta)
  double e_sum = 0;                   // |E_1 + E_2|
  double e_difference = 0;            // E_1 - E_2 - 4 omega V (zeta(2 omega r) - 2 eta r)
  double e_quotients = 0;             // E from the X_ij combinations against the zeta form
  double n_sum = 0;                   // |N_1|, |N_2|
  double intensity = 0;               // 2(|q1|^2+|q2|^2) + wp/2
  double second_derivative = 0;       // q_xx - wp q / 2
  double delta_product = 0;           // delta2^2 delta3^2 against theta1'(0)^4 / theta1(r)^4
  double c1_closed = 0;               // c1 against lambda3 (lambda2 -+ sqrt Delta) / (4 Delta)
  double map_roundtrip = 0;
  bool pass() const;
  /// name of the first identity over its tolerance, empty when all pass
  std::string first_failure() const;
  std::vector<std::pair<std::string, double>> entries() const;
};

/// Samples x over one real period of |q|^2 with an offset D.
IdentityReport check_identities(const EllipticCurve& ec, int samples = 50, double D = 0.1);

}  // namespace manakov::elliptic
