#pragma once

#include <array>
#include <vector>

#include "manakov/polynomial.hpp"
#include "manakov/types.hpp"

namespace manakov {

/// Spectral data: f(z,w) = (w+s)(w-s)^2 + (w-s) P(z) + Q(z), s = i(2z)^n/2,
/// P = sum_{j=n}^{2n-1} lambda_j (2z)^{2n-j-1}, Q = sum_{j=0}^{n-2} mu_{n-2-j} (2z)^j.
struct TrigonalCurve {
  int n = 2;
  std::vector<cplx> lambda;  // lambda_n .. lambda_{2n-1}
  std::vector<cplx> mu;      // mu_0 .. mu_{n-2}

  /// Build from real lambda values and the imaginary parts of mu; validated.
  static TrigonalCurve make(int n, const std::vector<double>& lambda,
                            const std::vector<double>& mu_imag);

  cplx lam(int j) const { return lambda.at(j - n); }
  cplx mu_at(int j) const { return mu.at(j); }
  int genus() const { return 2 * n - 3; }
  /// lambda_n^2 - 4 i mu_0, the leading discriminant factor.
  cplx leading_delta() const { return lambda[0] * lambda[0] - 4.0 * I * mu[0]; }

  /// Throws InvalidCurve naming the violated condition (reality, leading factor, size).
  void validate(double tol = 1e-14) const;
};

struct SheetPoint {
  cplx z{};
  cplx w{};
  int sheet = 0;
};

/// Branch points e_1..e_{4n-2}: e_{2k-1} in the lower half plane,
/// e_{2k} = conj(e_{2k-1}), pairs ordered by real part.
struct BranchSet {
  std::vector<cplx> points;
  std::size_t pairs() const { return points.size() / 2; }
  cplx lower(std::size_t k) const { return points[2 * k]; }
  cplx upper(std::size_t k) const { return points[2 * k + 1]; }
};

/// w(xi) at infinity on one sheet, xi = 1/z:
///   w = sign * i 2^{n-1} xi^{-n} + sum_k v[k] xi^{k+1},
/// sign = -1 on sheet 1 and +1 on sheets 2, 3.
struct InfinitySeries {
  int sheet = 1;
  int n = 2;
  std::vector<cplx> v;

  int order() const { return int(v.size()) - 1; }
  cplx leading() const;
  /// Coefficient of xi^p in w.
  cplx coefficient(int p) const;
  cplx w(cplx xi) const;
  /// u = w - s as a function of xi.
  cplx u(cplx xi) const;
};

/// Values of the shifted cubic g(z,u) = f(z, u+s) and its partial derivatives.
struct CubicJet {
  cplx g, gu, gz, guu, gzu, gzz;
};

/// Analysis object for one curve: discriminant, branch points, sheet labels.
///
/// Most computations use u = w - s, where the fiber cubic reads
/// g(u) = u^3 + 2s u^2 + P u + Q and has no large cancellations.
///
/// Sheet labels: at the real base point z0 to the right of everything the
/// roots are identified with the three infinity expansions; elsewhere the
/// label is carried by continuation along the canonical path
/// z0 -> z0 + iH -> Re z + iH -> z, H above every branch point.
class SpectralCurve {
 public:
  explicit SpectralCurve(TrigonalCurve curve);

  const TrigonalCurve& curve() const { return c_; }
  int n() const { return c_.n; }
  int genus() const;

  cplx s(cplx z) const { return 0.5 * s2_(z); }
  cplx eval_f(cplx z, cplx w) const;
  cplx f_w(cplx z, cplx w) const;
  CubicJet jet(cplx z, cplx u) const;
  /// g_u = f_w written without cancellation.
  cplx g_u(cplx z, cplx u) const;

  /// Unlabeled u-roots of the fiber cubic (companion eigenvalues + polish).
  std::array<cplx, 3> u_roots(cplx z) const;
  /// Labelled fiber; entry k has sheet k+1. Throws DegenerateFiber near a branch point.
  std::array<SheetPoint, 3> fiber(cplx z) const;
  /// u-root on the given sheet at z.
  cplx label_root(cplx z, int sheet) const;

  const Poly& discriminant_poly() const { return disc_; }
  const BranchSet& branch_points() const { return br_; }
  double branch_distance(cplx z) const;

  /// Continue start along a polyline; the result carries the slit-plane label.
  SheetPoint continue_sheet(const std::vector<cplx>& path, const SheetPoint& start) const;

  InfinitySeries infinity_series(int sheet, int order) const;

  double base_x() const { return R_; }
  double top_y() const { return H_; }
  /// Largest |e_k|.
  double radius() const { return rad_; }
  const Poly& P() const { return P_; }
  const Poly& Q() const { return Q_; }

  /// Relative fiber residual |f| / max(1, |w|^3).
  double residual(cplx z, cplx w) const;

 private:
  TrigonalCurve c_;
  Poly s2_, P_, Q_;
  Poly ds2_, dP_, dQ_, dds2_, ddP_, ddQ_;
  Poly disc_;
  BranchSet br_;
  double rad_ = 1, R_ = 10, H_ = 1;
  std::array<cplx, 3> base_u_{};

  void compute_branch_points();
  void label_base();
};

}  // namespace manakov
