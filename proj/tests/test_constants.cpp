#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "manakov/elliptic.hpp"
#include "manakov/errors.hpp"

using namespace manakov;

TEST_CASE("constants agree with the asymptotics of the assembled integrals") {
  for (const fixtures::Run* run : {&fixtures::genus1(), &fixtures::genus3()}) {
    auto rep = verify_constants_by_asymptotics(run->curve, run->pd(), run->ctx, run->b);
    CHECK(rep.omega1_error < 1e-6);
    CHECK(rep.omega2_error < 1e-6);
    CHECK(rep.delta_error < 1e-6);
    CHECK(rep.pass(1e-6));
  }
}

TEST_CASE("E, N and delta are purely imaginary") {
  for (const fixtures::Run* run : {&fixtures::genus1(), &fixtures::genus3()}) {
    const auto& b = run->b;
    CHECK(b.purity() < 1e-7);
    for (cplx x : {b.E1, b.E2, b.N1, b.N2, b.delta2, b.delta3}) CHECK(std::abs(x.real()) < 1e-7 * (1 + std::abs(x)));
    CHECK(b.ch.odd());
  }
}

TEST_CASE("genus 1: constants against the closed elliptic forms") {
  const auto& run = fixtures::genus1();
  const auto& b = run.b;
  elliptic::EllipticCurve ec(1, 2, 0.5);
  const auto& k = ec.constants();
  CHECK(std::abs(b.E1 + b.E2) < 1e-10);
  CHECK(std::abs(b.N1) < 1e-10);
  CHECK(std::abs(b.N2) < 1e-10);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(run.pd().Vi[i][0] - k.Vi[i]) < 1e-10);
    CHECK(std::abs(run.pd().Wi[i][0] - k.Wi[i]) < 1e-10);
    CHECK(std::abs(run.pd().Zi[i][0] - k.Zi[i]) < 1e-10);
    CHECK(std::abs(b.c1[i] - k.c1[i]) < 1e-10);
    CHECK(std::abs(b.c2[i] - k.c2[i]) < 1e-10);
  }
  // E at the pipeline's r, in the Weierstrass zeta form
  const auto& w = ec.weierstrass();
  const cplx r = run.pd().r2[0];
  CHECK(std::abs(b.E1 - (-0.5) * (w.zeta(2 * w.omega() * r) - 2 * w.eta() * r)) < 1e-8);
}

TEST_CASE("genus 3: frozen constants") {
  // frozen from the run that passes the asymptotic cross-check
  const auto& b = fixtures::genus3().b;
  CHECK(b.ch.str() == "[1/2 0 0; 1/2 0 0]");
  CHECK(std::abs(b.E1 - cplx(0, -1.29608)) < 1e-5);
  CHECK(std::abs(b.E2 - cplx(0, -1.73671)) < 1e-5);
  CHECK(std::abs(b.N1 - cplx(0, 0.23740)) < 1e-5);
  CHECK(std::abs(b.N2 - cplx(0, -0.97541)) < 1e-5);
  CHECK(std::abs(b.delta2 - cplx(0, -0.18356)) < 1e-5);
  CHECK(std::abs(b.delta3 - cplx(0, -0.041293)) < 1e-6);
}

TEST_CASE("second-kind integrals near their pole") {
  const auto& run = fixtures::genus3();
  CHECK_THROWS_AS(omega1_i(run.pd(), run.ctx, run.b.ch, 1, VecC::Zero(3)), NearPole);
}

TEST_CASE("Abel map from infinity: near infinity it follows the local expansion") {
  const auto& run = fixtures::genus3();
  const auto& pd = run.pd();
  // the remainder after three terms is at least fourth order in 1/z
  auto remainder = [&](int s, double scale) {
    const cplx z(scale * run.curve.radius(), 0.0);
    const VecC v = abel_from_infinity(run.curve, pd, s, z, s);
    const cplx xi = 1.0 / z;
    return (v - (pd.Vi[s - 1] * xi + pd.Wi[s - 1] * xi * xi + pd.Zi[s - 1] * xi * xi * xi)).norm();
  };
  for (int s = 1; s <= 3; ++s) {
    const double r1 = remainder(s, 20.0), r2 = remainder(s, 40.0);
    CHECK(r2 < 1e-8);
    CHECK(r1 / r2 > 12.0);
  }
}
