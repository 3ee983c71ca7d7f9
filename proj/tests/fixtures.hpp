#pragma once

#include <memory>

#include "manakov/abelian_constants.hpp"
#include "manakov/periods.hpp"
#include "manakov/solution.hpp"
#include "manakov/theta.hpp"

namespace fixtures {

using namespace manakov;

struct Triple {
  double l2, l3, m0;
};
inline const Triple kGenus1{1, 2, 0.5};
inline const std::vector<Triple> kTriples{{1, 2, 0.5}, {0.5, 3, 0.3}, {-1, 2.5, 1.0}};

inline TrigonalCurve default_curve() { return TrigonalCurve::make(3, {1, 1, 1}, {0.5, 0.25}); }
inline TrigonalCurve genus1_curve(const Triple& t = kGenus1) {
  return TrigonalCurve::make(2, {t.l2, t.l3}, {t.m0});
}

struct Run {
  SpectralCurve curve;
  SurfaceData surf;
  ThetaContext ctx;
  ConstantsBundle b;
  const PeriodData& pd() const { return surf.periods; }
  SolutionParams params(const VecR& D) const { return SolutionParams::build(pd(), b, ctx, D); }
};

inline std::unique_ptr<Run> make_run(const TrigonalCurve& c) {
  SpectralCurve sc(c);
  auto sd = compute_surface(sc, false);
  ThetaContext ctx(sd.periods.tau);
  auto ch = select_characteristic(ctx, sd.periods);
  auto b = compute_constants(sd.periods, ctx, ch);
  return std::make_unique<Run>(Run{std::move(sc), std::move(sd), std::move(ctx), std::move(b)});
}

// computed once per test binary
inline const Run& genus3() {
  static auto r = make_run(default_curve());
  return *r;
}
inline const Run& genus1() {
  static auto r = make_run(genus1_curve());
  return *r;
}

inline VecR vec(std::initializer_list<double> xs) {
  VecR v(int(xs.size()));
  int k = 0;
  for (double x : xs) v[k++] = x;
  return v;
}

}  // namespace fixtures
