#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "manakov/elliptic.hpp"
#include "manakov/errors.hpp"
#include "manakov/parallel.hpp"

using namespace manakov;
using fixtures::vec;

TEST_CASE("genus 1 residual, analytic and finite difference") {
  for (const auto& t : fixtures::kTriples) {
    auto run = fixtures::make_run(fixtures::genus1_curve(t));
    auto sp = run->params(vec({0.1}));
    const Grid g{-5, 5, 51, 0, 1, 6};
    auto a = residual(sp, run->ctx, g, ResidualMode::analytic);
    auto f = residual(sp, run->ctx, g, ResidualMode::fd);
    CHECK(a.max() < 1e-10);
    CHECK(f.max() < 1e-7);
    CHECK(a.flagged_poles == 0);
    CHECK(a.points == 51 * 6);
  }
}

TEST_CASE("genus 3 residual on the default curve") {
  const auto& run = fixtures::genus3();
  for (const VecR& D : {vec({0, 0, 0}), vec({0.2, -0.1, 0.35})}) {
    auto sp = run.params(D);
    const Grid g{-2, 2, 21, 0, 0.5, 5};
    CHECK(residual(sp, run.ctx, g, ResidualMode::analytic).max() < 1e-8);
    CHECK(residual(sp, run.ctx, g, ResidualMode::fd).max() < 1e-5);
  }
}

TEST_CASE("rescaled pair equals the raw pair times sqrt(alpha)") {
  const auto& run = fixtures::genus3();
  auto sp = run.params(vec({0.1, 0.2, 0.3}));
  for (double x : {-1.0, 0.3, 2.0}) {
    auto raw = q_raw(sp, run.ctx, x, 0.4);
    auto q = solution(sp, run.ctx, x, 0.4);
    CHECK(std::abs(q[0] - std::sqrt(sp.alpha1) * raw[0]) < 1e-12 * std::abs(q[0]));
    CHECK(std::abs(q[1] - std::sqrt(sp.alpha2) * raw[1]) < 1e-12 * std::abs(q[1]));
    CHECK(rescale(sp, raw)[0] == q[0]);
  }
}

TEST_CASE("genus 1 intensity is time independent") {
  const auto& run = fixtures::genus1();
  auto sp = run.params(vec({0.1}));
  for (double x : {-1.0, 0.0, 0.7}) {
    auto a = solution(sp, run.ctx, x, 0.0), b = solution(sp, run.ctx, x, 3.0);
    CHECK(std::abs(std::norm(a[0]) - std::norm(b[0])) < 1e-10);
    CHECK(std::abs(std::norm(a[1]) - std::norm(b[1])) < 1e-10);
  }
}

TEST_CASE("genus 1: theta route and Weierstrass route give the same field up to a constant factor") {
  for (const auto& t : fixtures::kTriples) {
    auto run = fixtures::make_run(fixtures::genus1_curve(t));
    elliptic::EllipticCurve ec(t.l2, t.l3, t.m0);
    const double D = 0.1;
    auto sp = run->params(vec({D}));
    std::array<cplx, 2> ratio0{};
    for (int k = 0; k <= 10; ++k) {
      const double x = -1.0 + 0.25 * k;
      auto g = solution(sp, run->ctx, x, 0.0);
      auto e = ec.solution(x, D);
      for (int j = 0; j < 2; ++j) {
        const cplx r = g[j] / e[j];
        if (k == 0) ratio0[j] = r;
        CHECK(std::abs(std::abs(r) - 1.0) < 1e-9);
        CHECK(std::abs(r - ratio0[j]) < 1e-9);
      }
    }
  }
}

TEST_CASE("field derivatives against finite differences") {
  const auto& run = fixtures::genus3();
  auto sp = run.params(vec({0, 0, 0}));
  const double x = 0.37, t = 0.21, h = 1e-3;
  auto d = solution_derivs(sp, run.ctx, x, t);
  auto q = [&](double xx, double tt) { return solution(sp, run.ctx, xx, tt); };
  for (int j = 0; j < 2; ++j) {
    const cplx qx = (q(x - 2 * h, t)[j] - 8.0 * q(x - h, t)[j] + 8.0 * q(x + h, t)[j] - q(x + 2 * h, t)[j]) / (12 * h);
    const cplx qt = (q(x, t - 2 * h)[j] - 8.0 * q(x, t - h)[j] + 8.0 * q(x, t + h)[j] - q(x, t + 2 * h)[j]) / (12 * h);
    CHECK(std::abs(d.q[j] - q(x, t)[j]) < 1e-13 * std::abs(d.q[j]));
    CHECK(std::abs(d.qx[j] - qx) < 1e-8 * (1 + std::abs(qx)));
    CHECK(std::abs(d.qt[j] - qt) < 1e-8 * (1 + std::abs(qt)));
  }
}

TEST_CASE("vector soliton passes the harness") {
  auto q = manakov_soliton(0.3, 0.5, 0.6, 0.8);
  auto rep = residual_fd(q, Grid{-5, 5, 101, 0, 1, 11});
  CHECK(rep.max() < 1e-9);
  auto q0 = q(0.0, 0.0);
  CHECK(std::abs(std::sqrt(std::norm(q0[0]) + std::norm(q0[1])) - 1.0) < 1e-15);
  CHECK_THROWS_AS(manakov_soliton(0.3, 0.5, 1.0, 1.0), InvalidCurve);
}

TEST_CASE("harness detects a non-solution") {
  auto q = manakov_soliton(0.3, 0.5, 0.6, 0.8);
  FieldFn bad = [&](double x, double t) {
    auto v = q(x, t);
    return Pair{1.01 * v[0], 1.01 * v[1]};
  };
  CHECK(residual_fd(bad, Grid{-3, 3, 31, 0, 0.5, 3}).max() > 1e-3);
}

TEST_CASE("grid evaluation is independent of the worker count") {
  const auto& run = fixtures::genus3();
  auto sp = run.params(vec({0, 0, 0}));
  const Grid g{0, 1, 9, 0, 0.2, 3};
  const int before = thread_count();
  set_thread_count(1);
  auto a = sample_grid(sp, run.ctx, g);
  auto ra = residual(sp, run.ctx, g, ResidualMode::analytic);
  set_thread_count(4);
  auto b = sample_grid(sp, run.ctx, g);
  auto rb = residual(sp, run.ctx, g, ResidualMode::analytic);
  set_thread_count(before);
  REQUIRE(a.size() == b.size());
  CHECK(a.size() == 27);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].q[0] == b[i].q[0]);
    CHECK(a[i].q[1] == b[i].q[1]);
  }
  CHECK(ra.max_residual_q1 == rb.max_residual_q1);
}

TEST_CASE("winding vectors and divisor are real") {
  const auto& run = fixtures::genus3();
  auto sp = run.params(vec({0, 0, 0}));
  CHECK(sp.V.imag().norm() < 1e-10);
  CHECK(sp.W.imag().norm() < 1e-10);
  CHECK(std::abs(sp.theta_D) > 0);
  CHECK(sp.alpha1 > 0);
  CHECK(sp.alpha2 > 0);
}
