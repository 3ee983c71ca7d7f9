#pragma once

#include <array>
#include <functional>
#include <vector>

#include "manakov/abelian_constants.hpp"
#include "manakov/theta.hpp"

namespace manakov {

struct SolutionParams {
  VecC V, W;
  VecC r2, r3;
  cplx E1{}, E2{}, N1{}, N2{};
  cplx delta2{}, delta3{};
  VecC D;
  double alpha1 = 1, alpha2 = 1;
  cplx theta_D{};

  /// Pulls the pieces together; checks the reality of V, W, D and theta(D) != 0.
  static SolutionParams build(const PeriodData& pd, const ConstantsBundle& b, const ThetaContext& ctx,
                              const VecR& D);
};

using Pair = std::array<cplx, 2>;

VecC gamma(const SolutionParams& p, double x, double t);

/// Before the modulus rescaling: 2i delta theta(D) theta(Gamma + r) / (theta(r - D) theta(Gamma)) e^{-Ex + Nt}.
Pair q_raw(const SolutionParams& p, const ThetaContext& ctx, double x, double t);
Pair rescale(const SolutionParams& p, const Pair& q);
Pair solution(const SolutionParams& p, const ThetaContext& ctx, double x, double t);

/// q, q_x, q_xx, q_t of the rescaled solution from directional theta derivatives.
struct FieldDerivs {
  Pair q{}, qx{}, qxx{}, qt{};
  cplx theta_gamma{};
};
FieldDerivs solution_derivs(const SolutionParams& p, const ThetaContext& ctx, double x, double t);

/// Any field evaluator q(x, t).
using FieldFn = std::function<Pair(double, double)>;

enum class ResidualMode { analytic, fd };

struct ResidualReport {
  double max_residual_q1 = 0, max_residual_q2 = 0;
  std::size_t points = 0, flagged_poles = 0;
  double max() const { return std::max(max_residual_q1, max_residual_q2); }
};

struct Grid {
  double x0 = 0, x1 = 1;
  int nx = 1;
  double t0 = 0, t1 = 0;
  int nt = 1;
  double x(int i) const { return nx > 1 ? x0 + (x1 - x0) * i / (nx - 1) : x0; }
  double t(int j) const { return nt > 1 ? t0 + (t1 - t0) * j / (nt - 1) : t0; }
};

/// i q_t + q_xx + 2(|q1|^2 + |q2|^2) q on the grid. Points with
/// |theta(Gamma)| below 1e-6 of the grid maximum are flagged and skipped.
ResidualReport residual(const SolutionParams& p, const ThetaContext& ctx, const Grid& grid, ResidualMode mode,
                        double fd_step = 2e-3);

/// Same residual via fourth-order central differences of an arbitrary field.
ResidualReport residual_fd(const FieldFn& q, const Grid& grid, double fd_step = 2e-3);

/// 2 eta sech(2 eta (x + 4 xi t)) exp(-2i xi x - 4i (xi^2 - eta^2) t) c, |c| = 1.
FieldFn manakov_soliton(double xi, double eta, cplx c1, cplx c2);

struct FieldSample {
  double x = 0, t = 0;
  Pair q{};
  bool pole = false;
};
std::vector<FieldSample> sample_grid(const SolutionParams& p, const ThetaContext& ctx, const Grid& grid);

}  // namespace manakov
