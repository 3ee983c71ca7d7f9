#pragma once

#include <array>
#include <string>
#include <vector>

#include "manakov/homology.hpp"
#include "manakov/series.hpp"
#include "manakov/spectral_curve.hpp"

namespace manakov {

/// du_j = phi_j(z, u) dz with u = w - s:
///   family one  i z^p / f_w          (j = 1..n-2,    p = j-1)
///   family two  z^p (w - s) / f_w    (j = n-1..2n-3, p = 2n-3-j)
struct HolomorphicDifferential {
  int family = 2;
  int power = 0;
};

class HolomorphicBasis {
 public:
  explicit HolomorphicBasis(const SpectralCurve& curve);
  int size() const { return int(d_.size()); }
  const std::vector<HolomorphicDifferential>& differentials() const { return d_; }

  void eval(cplx z, cplx u, cplx* out) const;
  VecC eval(cplx z, cplx u) const;
  /// du_j = (sum_k c[j][k] xi^k) d xi near infinity on the given sheet, xi = 1/z.
  std::vector<series::Series> at_infinity(int sheet, int order) const;
  /// Integral from infinity on `sheet` to the point z = 1/xi on the same sheet.
  VecC tail(int sheet, cplx xi, int order = 48) const;

 private:
  const SpectralCurve* c_;
  std::vector<HolomorphicDifferential> d_;
};

struct PeriodValidation {
  double A_imag_ratio = 0;   // max|Im A| / max|Re A|
  double symmetry = 0;       // max|tau - tau^T|
  double min_imag_eig = 0;   // smallest eigenvalue of Im tau
  double tau_reality = 0;    // max|conj(tau) + tau - tau0|
  double V_imag = 0, W_imag = 0;
  double r_reality = 0;      // max distance of conj(r) + r to the integers
  bool A_real() const { return A_imag_ratio < 1e-8; }
  bool symmetric() const { return symmetry < 1e-8; }
  bool positive() const { return min_imag_eig > 0; }
  bool involution() const { return tau_reality < 1e-6; }
  /// Name of the first failing invariant or empty.
  std::string first_failure() const;
};

/// A(j,k) = a_k-period of du_j, C = A^{-1}, dv = C du, tau(j,k) = b_k-period of dv_j.
struct PeriodData {
  int g = 0;
  MatC A, B, C, tau;
  std::array<VecC, 3> Vi, Wi, Zi;  // expansion of the Abel map at each infinity
  VecC V, W;
  VecC r2, r3;
  PeriodValidation check;
  /// Abel map integral from infinity_i to infinity_j (r_j - r_i, r_1 = 0).
  VecC between(int i, int j) const;
};

/// Integral of all g holomorphic differentials along a cycle.
VecC integrate_differential(const SpectralCurve& curve, const HolomorphicBasis& basis, const CyclePath& path,
                            double* err = nullptr);

MatC tau0(int g);

/// A, C, tau and validators; strict mode throws ValidatorFailure naming the first failed invariant.
PeriodData period_matrices(const SpectralCurve& curve, const HomologyBasis& basis, bool strict = true);
void winding_vectors(const SpectralCurve& curve, PeriodData& pd);
void r_vectors(const SpectralCurve& curve, const SurfaceGeometry& geo, PeriodData& pd);

/// Open path from z = base_x() on sheet 1 to the same z on `target`, going
/// below the branch points and around lower branch points of tree cuts.
std::vector<cplx> sheet_transfer_path(const SpectralCurve& curve, const SurfaceGeometry& geo, int target);

/// Complete pipeline: geometry, default basis, periods, windings and r.
struct SurfaceData {
  SurfaceGeometry geo;
  HomologyBasis basis;
  PeriodData periods;
};
SurfaceData compute_surface(const SpectralCurve& curve, bool strict = true);
SurfaceData compute_surface(const SpectralCurve& curve, const HomologyBasis& basis, bool strict = true);

}  // namespace manakov
