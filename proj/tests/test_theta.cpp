#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "manakov/elliptic.hpp"
#include "manakov/errors.hpp"

using namespace manakov;

namespace {

// plain box sum, no ellipsoid
cplx brute_theta(const MatC& tau, const VecC& v, const Characteristic& ch, int N) {
  const int g = int(tau.rows());
  Eigen::VectorXi n = Eigen::VectorXi::Constant(g, -N);
  cplx s{};
  while (true) {
    VecC m = n.cast<double>().cast<cplx>() + ch.eps_prime.cast<cplx>();
    cplx e{};
    for (int i = 0; i < g; ++i) {
      for (int j = 0; j < g; ++j) e += m[i] * tau(i, j) * m[j];
    }
    e *= I * PI;
    for (int i = 0; i < g; ++i) e += 2.0 * I * PI * m[i] * (v[i] + ch.eps[i]);
    s += std::exp(e);
    int k = 0;
    while (k < g && ++n[k] > N) n[k++] = -N;
    if (k == g) break;
  }
  return s;
}

VecC random_point(std::mt19937_64& rng, const MatC& tau) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const int g = int(tau.rows());
  VecR a(g), b(g);
  for (int k = 0; k < g; ++k) {
    a[k] = u(rng);
    b[k] = u(rng);
  }
  return a.cast<cplx>() + tau * b.cast<cplx>();
}

}  // namespace

TEST_CASE("genus 1 theta equals the Jacobi thetas") {
  const cplx tau(1.0, 1.2427581757);
  ThetaContext ctx(MatC::Constant(1, 1, tau));
  for (cplx z : {cplx(0.1, 0.2), cplx(-0.37, -0.5), cplx(0.45, 0.9)}) {
    VecC v = VecC::Constant(1, z);
    CHECK(std::abs(ctx.theta(v, Characteristic::from_index(1, 0)) - elliptic::jtheta(3, z, tau)) < 1e-13);
    CHECK(std::abs(ctx.theta(v, Characteristic::from_index(1, 1)) - elliptic::jtheta(2, z, tau)) < 1e-13);
    CHECK(std::abs(ctx.theta(v, Characteristic::from_index(1, 2)) - elliptic::jtheta(4, z, tau)) < 1e-13);
    CHECK(std::abs(ctx.theta(v, Characteristic::from_index(1, 3)) + elliptic::jtheta(1, z, tau)) < 1e-13);
  }
}

TEST_CASE("genus 3 theta matches a box sum") {
  const MatC& tau = fixtures::genus3().pd().tau;
  ThetaContext ctx(tau);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 5; ++t) {
    const VecC v = random_point(rng, tau);
    for (int idx : {0, 9, 63}) {
      auto ch = Characteristic::from_index(3, idx);
      const cplx b = brute_theta(tau, v, ch, 12);
      CHECK(std::abs(ctx.theta(v, ch) - b) < 1e-11 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST_CASE("quasi-periodicity over random points") {
  for (const MatC* tau : {&fixtures::genus1().pd().tau, &fixtures::genus3().pd().tau}) {
    ThetaContext ctx(*tau);
    const int g = ctx.genus();
    std::mt19937_64 rng(11);
    for (int t = 0; t < 30; ++t) {
      const VecC v = random_point(rng, *tau);
      for (int idx = 0; idx < (1 << (2 * g)); idx += g == 1 ? 1 : 7)
        for (int k = 0; k < g; ++k)
          CHECK(periodicity_check(ctx, Characteristic::from_index(g, idx), v, k) < 1e-10);
    }
  }
}

TEST_CASE("parity: odd characteristics give odd functions") {
  ThetaContext ctx(fixtures::genus3().pd().tau);
  std::mt19937_64 rng(3);
  int odd = 0;
  for (int idx = 0; idx < 64; ++idx) {
    auto ch = Characteristic::from_index(3, idx);
    odd += ch.odd();
    const VecC v = random_point(rng, ctx.tau());
    const cplx p = ctx.theta(v, ch), m = ctx.theta(-v, ch);
    CHECK(std::abs(p - double(ch.parity()) * m) < 1e-11 * std::max(1.0, std::abs(p)));
  }
  CHECK(odd == 28);
}

TEST_CASE("directional derivatives against finite differences") {
  ThetaContext ctx(fixtures::genus3().pd().tau);
  std::mt19937_64 rng(5);
  auto ch = Characteristic::from_index(3, 9);
  for (int t = 0; t < 10; ++t) {
    const VecC v = random_point(rng, ctx.tau());
    VecC a = random_point(rng, ctx.tau()), b = random_point(rng, ctx.tau()), c = random_point(rng, ctx.tau());
    a.normalize();
    b.normalize();
    c.normalize();
    const double h = 1e-3;
    auto d1 = [&](const VecC& x, const VecC& d) {
      return (ctx.theta(x - 2 * h * d, ch) - 8.0 * ctx.theta(x - h * d, ch) + 8.0 * ctx.theta(x + h * d, ch) -
              ctx.theta(x + 2 * h * d, ch)) /
             (12 * h);
    };
    auto dd = [&](const VecC& x, const VecC& d, const std::vector<VecC>& rest) {
      return (ctx.dtheta(x - 2 * h * d, ch, rest) - 8.0 * ctx.dtheta(x - h * d, ch, rest) +
              8.0 * ctx.dtheta(x + h * d, ch, rest) - ctx.dtheta(x + 2 * h * d, ch, rest)) /
             (12 * h);
    };
    const double s = std::abs(ctx.theta(v, ch));
    const cplx a1 = ctx.dtheta(v, ch, {a});
    CHECK(std::abs(a1 - d1(v, a)) < 1e-6 * std::max(s, std::abs(a1)));
    const cplx a2 = ctx.dtheta(v, ch, {a, b});
    CHECK(std::abs(a2 - dd(v, b, {a})) < 1e-6 * std::max(s, std::abs(a2)));
    const cplx a3 = ctx.dtheta(v, ch, {a, b, c});
    CHECK(std::abs(a3 - dd(v, c, {a, b})) < 1e-6 * std::max(s, std::abs(a3)));
    auto j = ctx.jets(v, ch, {{}, {a}, {a, b}, {a, b, c}});
    CHECK(j[0] == ctx.theta(v, ch));
    CHECK(j[3] == a3);
  }
}

TEST_CASE("truncation: tighter precision changes nothing visible") {
  const MatC& tau = fixtures::genus3().pd().tau;
  ThetaContext a(tau), b(tau, 1e-30);
  CHECK(b.radius() > a.radius());
  std::mt19937_64 rng(13);
  const VecC v = random_point(rng, tau);
  auto ch = Characteristic::zero(3);
  const cplx x = b.theta(v, ch);
  CHECK(std::abs(a.theta(v, ch) - x) < 1e-12 * std::abs(x));
}

TEST_CASE("odd non-singular characteristic") {
  ThetaContext ctx(fixtures::genus3().pd().tau);
  auto ch = find_odd_nonsingular(ctx);
  CHECK(ch.odd());
  CHECK(theta_gradient(ctx, VecC::Zero(3), ch).norm() > 1e-6);
  CHECK(std::abs(ctx.theta(VecC::Zero(3), ch)) < 1e-14);
}

TEST_CASE("characteristic encoding") {
  auto c = Characteristic::from_index(2, 0b0110);
  CHECK(c.eps_prime[0] == 0.0);
  CHECK(c.eps_prime[1] == 0.5);
  CHECK(c.eps[0] == 0.5);
  CHECK(c.eps[1] == 0.0);
  CHECK(c.str() == "[0 1/2; 1/2 0]");
  CHECK(c.parity() == 1);
  CHECK(Characteristic::from_index(1, 3).odd());
}

TEST_CASE("tau must have positive definite imaginary part") {
  MatC t = MatC::Identity(2, 2) * cplx(0.0, 1.0);
  t(1, 1) = cplx(0.0, -0.1);
  CHECK_THROWS_AS(ThetaContext{t}, ValidatorFailure);
}
