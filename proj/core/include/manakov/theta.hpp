#pragma once

#include <string>
#include <vector>

#include "manakov/types.hpp"

namespace manakov {

/// Half-integer characteristic [eps'; eps], entries 0 or 1/2.
struct Characteristic {
  VecR eps_prime;
  VecR eps;

  static Characteristic zero(int g);
  /// Bits 0..g-1 fill eps', bits g..2g-1 fill eps.
  static Characteristic from_index(int g, int index);
  int genus() const { return int(eps.size()); }
  /// +1 even, -1 odd: exp(4 i pi eps . eps').
  int parity() const;
  bool odd() const { return parity() < 0; }
  std::string str() const;
};

class ThetaContext {
 public:
  explicit ThetaContext(MatC tau, double precision = 1e-12);

  int genus() const { return int(tau_.rows()); }
  const MatC& tau() const { return tau_; }
  double precision() const { return eps_; }
  double radius() const { return radius_; }
  double min_imag_eig() const { return min_eig_; }

  cplx theta(const VecC& v, const Characteristic& ch) const;
  /// Derivative along the listed directions (0 to 3 of them).
  cplx dtheta(const VecC& v, const Characteristic& ch, const std::vector<VecC>& dirs) const;
  /// Several directional derivatives in one lattice pass; each entry of
  /// `monomials` is a list of directions (an empty list gives theta itself).
  std::vector<cplx> jets(const VecC& v, const Characteristic& ch,
                         const std::vector<std::vector<VecC>>& monomials) const;

  /// Lattice points (n - center)^T Im(tau) (n - center) <= r^2.
  std::vector<Eigen::VectorXi> lattice(const VecR& center, double r) const;

 private:
  MatC tau_;
  MatR Y_, Yinv_, chol_;  // chol_: upper factor, Y = chol^T chol
  double eps_;
  double radius_;
  double min_eig_;
};

/// Quasi-periodicity in direction k: theta(v + e_k) and theta(v + tau e_k), each
/// divided by its automorphy factor, against theta(v), relative to |theta(v)|.
double periodicity_check(const ThetaContext& ctx, const Characteristic& ch, const VecC& v, int k);

/// First odd characteristic (lexicographic index order) with gradient norm at 0
/// above `threshold`; NoneFound when all are singular.
Characteristic find_odd_nonsingular(const ThetaContext& ctx, double threshold = 1e-6);

/// Gradient of theta[ch] at v.
VecC theta_gradient(const ThetaContext& ctx, const VecC& v, const Characteristic& ch);

}  // namespace manakov
