#pragma once

#include <vector>

#include "manakov/types.hpp"

namespace manakov::series {

// Truncated power series in one variable, coefficient k of t^k.
using Series = std::vector<cplx>;

inline Series mul(const Series& a, const Series& b, int order) {
  Series r(order + 1, cplx{});
  for (int i = 0; i < int(a.size()) && i <= order; ++i) {
    if (a[i] == cplx{}) continue;
    for (int j = 0; j < int(b.size()) && i + j <= order; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

inline Series add(const Series& a, const Series& b, int order) {
  Series r(order + 1, cplx{});
  for (int i = 0; i <= order; ++i) {
    if (i < int(a.size())) r[i] += a[i];
    if (i < int(b.size())) r[i] += b[i];
  }
  return r;
}

inline Series scale(const Series& a, cplx s) {
  Series r(a);
  for (auto& x : r) x *= s;
  return r;
}

/// Multiply by t^k.
inline Series shift(const Series& a, int k, int order) {
  Series r(order + 1, cplx{});
  for (int i = 0; i < int(a.size()) && i + k <= order; ++i) r[i + k] = a[i];
  return r;
}

/// 1/a, requires a[0] != 0.
inline Series reciprocal(const Series& a, int order) {
  Series r(order + 1, cplx{});
  r[0] = 1.0 / a[0];
  for (int k = 1; k <= order; ++k) {
    cplx s{};
    for (int j = 1; j <= k && j < int(a.size()); ++j) s += a[j] * r[k - j];
    r[k] = -s * r[0];
  }
  return r;
}

inline cplx eval(const Series& a, cplx t) {
  cplx s{};
  for (int k = int(a.size()) - 1; k >= 0; --k) s = s * t + a[k];
  return s;
}

}  // namespace manakov::series
