#pragma once

#include <functional>
#include <vector>

#include "manakov/spectral_curve.hpp"

namespace manakov {

struct TrackOptions {
  double step_fraction = 0.5;  // h <= step_fraction * distance to nearest branch point
  double gap_ratio = 4.0;      // second-closest / closest root distance from the prediction
  double rel_tol = 1e-13;      // per-step Gauss-Kronrod tolerance
  long max_steps = 4'000'000;
};

/// out[0..dim) receives the integrand (coefficient of dz) at (z, u).
using Integrand = std::function<void(cplx z, cplx u, cplx* out)>;

struct TrackResult {
  cplx u_end{};
  VecC integral;
  double error_estimate = 0.0;
  long steps = 0;
};

/// Follow the root u0 of the fiber cubic along a polyline, optionally
/// integrating a vector of differentials with adaptive Gauss-Kronrod (7,15)
/// steps. Root matching: Newton from a second-order Taylor prediction, accepted
/// only when the other two roots are at least gap_ratio times farther away.
/// Throws AmbiguousContinuation or QuadratureFailure.
TrackResult track_path(const SpectralCurve& curve, const std::vector<cplx>& path, cplx u0,
                       int dim, const Integrand& f, const TrackOptions& opt = {});

/// Root-only continuation.
cplx track_root(const SpectralCurve& curve, const std::vector<cplx>& path, cplx u0,
                const TrackOptions& opt = {});

/// Newton polish of a u-root at z from a prediction; returns false when the
/// match is not unambiguous.
bool root_near(const SpectralCurve& curve, cplx z, cplx pred, double gap_ratio, cplx& u);

}  // namespace manakov
