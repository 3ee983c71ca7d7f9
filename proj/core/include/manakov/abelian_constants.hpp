#pragma once

#include <array>
#include <string>

#include "manakov/periods.hpp"
#include "manakov/theta.hpp"

namespace manakov {

/// Abel map from the infinity of `from_sheet` to the point (z, sheet):
/// r_sheet - r_from plus the integral from infinity on `sheet`.
VecC abel_from_infinity(const SpectralCurve& curve, const PeriodData& pd, int from_sheet, cplx z, int sheet);

/// Odd non-singular characteristic that also keeps theta(r_2), theta(r_3) and
/// every d_{V^(i)} theta(0) away from zero; SingularTheta otherwise.
Characteristic select_characteristic(const ThetaContext& ctx, const PeriodData& pd, double threshold = 1e-6);

struct ConstantsBundle {
  Characteristic ch;
  MatC X = MatC::Zero(3, 3), Y = MatC::Zero(3, 3);  // zero-based indices, diagonal unused
  std::array<cplx, 3> c1{}, c2{};
  std::array<cplx, 3> theta_V{};  // d_{V^(i)} theta[ch](0)
  cplx theta_r2{}, theta_r3{};
  cplx E1{}, E2{}, N1{}, N2{};
  cplx delta2{}, delta3{};
  cplx C1{}, C2{};

  double purity() const;  // worst relative real part of E, N, delta
};

cplx omega1_i(const PeriodData& pd, const ThetaContext& ctx, const Characteristic& ch, int i, const VecC& v);
cplx omega2_i(const PeriodData& pd, const ThetaContext& ctx, const Characteristic& ch, int i, const VecC& v);

/// Omega_1^(i) and Omega_2^(i) at the point (z, sheet).
cplx omega1_at(const SpectralCurve& curve, const PeriodData& pd, const ThetaContext& ctx, const Characteristic& ch,
               int i, cplx z, int sheet);
cplx omega2_at(const SpectralCurve& curve, const PeriodData& pd, const ThetaContext& ctx, const Characteristic& ch,
               int i, cplx z, int sheet);

/// Third-kind integral with logarithmic poles at infinity_1 and infinity_k.
cplx h_k(const SpectralCurve& curve, const PeriodData& pd, const ThetaContext& ctx, const Characteristic& ch,
         int k, cplx z, int sheet);

ConstantsBundle compute_constants(const PeriodData& pd, const ThetaContext& ctx, const Characteristic& ch);

/// Assembled Omega_1 and Omega_2 with their additive constants.
cplx assembled_omega1(const SpectralCurve& curve, const PeriodData& pd, const ThetaContext& ctx,
                      const ConstantsBundle& b, cplx z, int sheet);
cplx assembled_omega2(const SpectralCurve& curve, const PeriodData& pd, const ThetaContext& ctx,
                      const ConstantsBundle& b, cplx z, int sheet);

struct AsymptoticReport {
  std::array<cplx, 3> omega1_fit{}, omega2_fit{};        // constant terms on sheets 1..3
  std::array<cplx, 3> omega1_expect{}, omega2_expect{};
  cplx delta2_fit{}, delta3_fit{};
  double omega1_error = 0, omega2_error = 0, delta_error = 0;
  bool pass(double tol = 1e-6) const { return omega1_error < tol && omega2_error < tol && delta_error < tol; }
};

/// Constant terms from the even part in z, fitted at |z| in {10, 20, 40} x max|e|.
AsymptoticReport verify_constants_by_asymptotics(const SpectralCurve& curve, const PeriodData& pd,
                                                 const ThetaContext& ctx, const ConstantsBundle& b);

}  // namespace manakov
