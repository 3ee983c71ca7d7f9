#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "manakov/elliptic.hpp"
#include "manakov/errors.hpp"
#include "manakov/zero_curvature.hpp"

using namespace manakov;
using fixtures::vec;

namespace {

FieldJet jet_of(const FieldDerivs& d) {
  return {{Vec2C(d.q[0], d.q[1]), Vec2C(d.qx[0], d.qx[1]), Vec2C(d.qxx[0], d.qxx[1])}};
}

}  // namespace

TEST_CASE("bracket is anti-hermitian") {
  Vec2C a(cplx(0.3, 1.0), cplx(-0.2, 0.5)), b(cplx(1.1, -0.4), cplx(0.7, 0.9));
  Mat2C m = abracket(a, b);
  CHECK((m + m.adjoint()).norm() < 1e-15);
  CHECK(abracket(a, a).norm() < 1e-15);
}

TEST_CASE("plane wave invariants") {
  const cplx c(0.6, 0.3);
  const double k = 1.7, x = 0.4;
  const cplx e = std::exp(I * k * x);
  FieldJet jet{{Vec2C(c * e, 0.0), Vec2C(I * k * c * e, 0.0), Vec2C(-k * k * c * e, 0.0)}};
  const double c2 = std::norm(c);
  for (const auto& inv : {lambda_genus1(jet), lambda_from_field(jet, 2)}) {
    CHECK(std::abs(inv.lambda[0] - (-2.0 * k * c2)) < 1e-12);
    CHECK(std::abs(inv.lambda[1] - (k * k * c2 + c2 * c2)) < 1e-12);
    CHECK(std::abs(inv.mu[0]) < 1e-12);
  }
}

TEST_CASE("recursion coefficients: first orders") {
  FieldJet jet{{Vec2C(cplx(0.5, 0.1), cplx(-0.3, 0.2)), Vec2C(cplx(0.1, 0.4), cplx(0.2, -0.6)),
                Vec2C(cplx(-0.7, 0.2), cplx(0.3, 0.1))}};
  auto h = recursion_coeffs(jet, 3);
  const Vec2C& q = jet.q();
  CHECK(std::abs(h.alphas[0] - (-0.5 * I)) < 1e-15);
  CHECK(std::abs(h.alphas[1]) < 1e-15);
  CHECK(std::abs(h.alphas[2] - I * q.squaredNorm()) < 1e-14);
  CHECK((h.Amats[2] + I * q.conjugate() * q.transpose()).norm() < 1e-14);
  CHECK((h.betas[0] - q).norm() == 0.0);
  CHECK((h.betas[1] - I * jet.d[1]).norm() < 1e-15);
  CHECK((h.betas[2] - (-jet.d[2] - 2.0 * q.squaredNorm() * q)).norm() < 1e-14);
  // trace of each level vanishes past the leading one
  for (int k = 1; k <= 3; ++k) CHECK(std::abs(h.alphas[k] + h.Amats[k].trace()) < 1e-13);
}

TEST_CASE("Lax matrix spectrum reproduces the curve") {
  FieldJet jet{{Vec2C(cplx(0.5, 0.1), cplx(-0.3, 0.2)), Vec2C(cplx(0.1, 0.4), cplx(0.2, -0.6)),
                Vec2C(cplx(-0.7, 0.2), cplx(0.3, 0.1))}};
  auto inv = lambda_from_field(jet, 2);
  TrigonalCurve c;
  c.n = 2;
  c.lambda = inv.lambda;
  c.mu = inv.mu;
  SpectralCurve sc(c);
  auto h = recursion_coeffs(jet, 2);
  for (cplx z : {cplx(0.3, 0.2), cplx(-1.0, 0.5)}) {
    auto ev = lax_matrix(h, 2, z).eigenvalues();
    for (int k = 0; k < 3; ++k) CHECK(std::abs(sc.eval_f(z, ev[k])) < 1e-10 * (1 + std::pow(std::abs(ev[k]), 3)));
  }
  CHECK(inv.consistency < 1e-12);
}

TEST_CASE("genus 1 round trip from the elliptic field") {
  for (const auto& t : fixtures::kTriples) {
    elliptic::EllipticCurve ec(t.l2, t.l3, t.m0);
    for (double x : {-1.0, 0.2, 1.3}) {
      auto q = ec.solution(x, 0.1), qx = ec.solution_dx(x, 0.1), qxx = ec.solution_dxx(x, 0.1);
      FieldJet jet{{Vec2C(q[0], q[1]), Vec2C(qx[0], qx[1]), Vec2C(qxx[0], qxx[1])}};
      for (const auto& inv : {lambda_genus1(jet), lambda_from_field(jet, 2)}) {
        CHECK(std::abs(inv.lambda[0] - t.l2) < 1e-8 * std::abs(t.l2));
        CHECK(std::abs(inv.lambda[1] - t.l3) < 1e-8 * t.l3);
        CHECK(std::abs(inv.mu[0] - I * t.m0) < 1e-8 * t.m0);
      }
    }
  }
}

TEST_CASE("genus 3 round trip from the theta field") {
  const auto& run = fixtures::genus3();
  auto sp = run.params(vec({0.1, -0.2, 0.05}));
  for (double x : {-1.0, 0.0, 0.8}) {
    auto inv = lambda_from_field(jet_of(solution_derivs(sp, run.ctx, x, 0.3)), 3);
    REQUIRE(inv.lambda.size() == 3);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(inv.lambda[k] - 1.0) < 1e-8);
    CHECK(std::abs(inv.mu[0] - cplx(0, 0.5)) < 1e-8);
    CHECK(std::abs(inv.mu[1] - cplx(0, 0.25)) < 1e-8);
    CHECK(inv.consistency < 1e-8);
  }
}

TEST_CASE("orders beyond the integral-free range are refused") {
  FieldJet jet{{Vec2C(1.0, 0.0), Vec2C(0.0, 0.0), Vec2C(0.0, 0.0)}};
  CHECK_THROWS_AS(recursion_coeffs(jet, 5), OrderTooHigh);
  CHECK_THROWS_AS(lambda_from_field(jet, 4), OrderTooHigh);
  FieldJet short_jet{{Vec2C(1.0, 0.0)}};
  CHECK_THROWS_AS(recursion_coeffs(short_jet, 3), OrderTooHigh);
}
