#include "manakov/theta.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "manakov/errors.hpp"

namespace manakov {

Characteristic Characteristic::zero(int g) { return {VecR::Zero(g), VecR::Zero(g)}; }

Characteristic Characteristic::from_index(int g, int index) {
  Characteristic c = zero(g);
  for (int k = 0; k < g; ++k) {
    if (index >> k & 1) c.eps_prime[k] = 0.5;
    if (index >> (g + k) & 1) c.eps[k] = 0.5;
  }
  return c;
}

int Characteristic::parity() const {
  const double s = 4.0 * eps.dot(eps_prime);
  return int(std::lround(s)) % 2 == 0 ? 1 : -1;
}

std::string Characteristic::str() const {
  auto half = [](double x) { return x > 0.25 ? std::string("1/2") : std::string("0"); };
  std::string s = "[";
  for (int k = 0; k < genus(); ++k) s += (k ? " " : "") + half(eps_prime[k]);
  s += "; ";
  for (int k = 0; k < genus(); ++k) s += (k ? " " : "") + half(eps[k]);
  return s + "]";
}

ThetaContext::ThetaContext(MatC tau, double precision) : tau_(std::move(tau)), eps_(precision) {
  const int g = genus();
  if (g < 1 || tau_.cols() != g) throw ValidatorFailure("tau must be square");
  Y_ = 0.5 * (tau_.imag() + tau_.imag().transpose());
  Eigen::SelfAdjointEigenSolver<MatR> es(Y_);
  min_eig_ = es.eigenvalues().minCoeff();
  if (!(min_eig_ > 0)) throw ValidatorFailure("Im tau is not positive definite");
  Eigen::LLT<MatR> llt(Y_);
  chol_ = llt.matrixU();
  Yinv_ = llt.solve(MatR::Identity(g, g));
  // keeps exp(-pi R^2) times the polynomial weight of third derivatives and
  // the boundary shell count below the target
  const double L = std::log(1.0 / eps_);
  double R = std::sqrt(L / PI);
  for (int it = 0; it < 4; ++it) {
    const double shell = g * std::log(2.0 + 2.0 * R / std::sqrt(min_eig_));
    const double poly = 3.0 * std::log(2.0 * PI * (1.0 + R / std::sqrt(min_eig_)));
    R = std::sqrt((L + shell + poly + 2.0) / PI);
  }
  radius_ = R;
}

std::vector<Eigen::VectorXi> ThetaContext::lattice(const VecR& center, double r) const {
  const int g = genus();
  std::vector<Eigen::VectorXi> out;
  Eigen::VectorXi n(g);
  // q(x) = sum_i (chol_(i,i) x_i + sum_{j>i} chol_(i,j) x_j)^2, x = n - center
  std::vector<double> partial(g + 1, 0.0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i < 0) {
      out.push_back(n);
      return;
    }
    double shift = 0.0;
    for (int j = i + 1; j < g; ++j) shift += chol_(i, j) * (n[j] - center[j]);
    const double d = chol_(i, i);
    const double rem = r * r - partial[i + 1];
    if (rem < 0) return;
    const double half = std::sqrt(rem) / d;
    const double mid = center[i] - shift / d;
    for (int k = int(std::ceil(mid - half)); k <= int(std::floor(mid + half)); ++k) {
      n[i] = k;
      const double t = d * (k - center[i]) + shift;
      partial[i] = partial[i + 1] + t * t;
      self(self, i - 1);
    }
  };
  rec(rec, g - 1);
  return out;
}

std::vector<cplx> ThetaContext::jets(const VecC& v, const Characteristic& ch,
                                     const std::vector<std::vector<VecC>>& monomials) const {
  const int g = genus();
  const VecR center = -Yinv_ * v.imag() - ch.eps_prime;
  auto pts = lattice(center, radius_);
  std::vector<cplx> out(monomials.size(), cplx{});
  const VecC ve = v + ch.eps.cast<cplx>();
  VecC m(g);
  std::vector<cplx> proj;
  for (const auto& p : pts) {
    m = p.cast<double>().cast<cplx>() + ch.eps_prime.cast<cplx>();
    const cplx e = I * PI * m.dot(tau_ * m) + 2.0 * I * PI * m.dot(ve);
    const cplx term = std::exp(e);
    for (std::size_t k = 0; k < monomials.size(); ++k) {
      cplx f = term;
      for (const auto& d : monomials[k]) f *= 2.0 * I * PI * m.dot(d);
      out[k] += f;
    }
  }
  return out;
}

cplx ThetaContext::theta(const VecC& v, const Characteristic& ch) const { return jets(v, ch, {{}})[0]; }

cplx ThetaContext::dtheta(const VecC& v, const Characteristic& ch, const std::vector<VecC>& dirs) const {
  if (dirs.size() > 3) throw ValidatorFailure("at most three derivative directions");
  return jets(v, ch, {dirs})[0];
}

VecC theta_gradient(const ThetaContext& ctx, const VecC& v, const Characteristic& ch) {
  const int g = ctx.genus();
  std::vector<std::vector<VecC>> mons;
  for (int k = 0; k < g; ++k) mons.push_back({VecC::Unit(g, k)});
  auto r = ctx.jets(v, ch, mons);
  return Eigen::Map<VecC>(r.data(), g);
}

double periodicity_check(const ThetaContext& ctx, const Characteristic& ch, const VecC& v, int k) {
  const cplx t0 = ctx.theta(v, ch);
  const VecC ek = VecC::Unit(ctx.genus(), k);
  const cplx t1 = ctx.theta(v + ek, ch);
  const cplx t2 = ctx.theta(v + ctx.tau().col(k), ch);
  const cplx f1 = std::exp(2.0 * I * PI * ch.eps_prime[k]);
  const cplx f2 = std::exp(-I * PI * ctx.tau()(k, k) - 2.0 * I * PI * v[k] - 2.0 * I * PI * ch.eps[k]);
  const double s = std::abs(t0) > 0 ? std::abs(t0) : 1.0;
  return std::max(std::abs(t1 - f1 * t0), std::abs(t2 / f2 - t0)) / s;
}

Characteristic find_odd_nonsingular(const ThetaContext& ctx, double threshold) {
  const int g = ctx.genus();
  for (int idx = 0; idx < (1 << (2 * g)); ++idx) {
    auto ch = Characteristic::from_index(g, idx);
    if (!ch.odd()) continue;
    if (theta_gradient(ctx, VecC::Zero(g), ch).norm() > threshold) return ch;
  }
  throw NoneFound("every odd half-integer characteristic is singular");
}

}  // namespace manakov
