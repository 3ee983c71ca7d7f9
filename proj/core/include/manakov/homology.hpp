#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "manakov/spectral_curve.hpp"
#include "manakov/tracking.hpp"

namespace manakov {

/// Vertical cut joining the conjugate pair (e_{2k-1}, e_{2k}); crossing it
/// swaps the two slit-plane sheet labels in `sheets`.
struct Cut {
  std::array<int, 2> pair{};    // 1-based branch point indices
  std::array<int, 2> sheets{};  // sheets joined across the cut, ascending
};

/// Piece of a closed loop; `sheet` is the slit-plane label of the lifted
/// point at path.front().
struct PathSegment {
  std::vector<cplx> path;
  int sheet = 1;
};

struct CyclePath {
  std::vector<PathSegment> segments;
};

/// Cycles as integer combinations of closed loops: a-cycle k is
/// sum_l a(k, l) loops[l], likewise for b.
struct HomologyBasis {
  std::vector<CyclePath> loops;
  Eigen::MatrixXi a, b;
  int genus() const { return int(a.rows()); }
  /// One loop per cycle, a-loops first.
  static HomologyBasis from_loops(std::vector<CyclePath> a_loops, std::vector<CyclePath> b_loops);
};

/// Cuts with their sheet pairs plus the layout used to draw cycles.
struct SurfaceGeometry {
  BranchSet branch;
  std::vector<Cut> cuts;
  std::vector<double> x;          // real part of each cut
  std::vector<double> halfwidth;  // horizontal clearance used next to each cut
  double top = 1.0;               // level above every branch point
  std::vector<int> tree;          // spanning tree of the sheet/cut graph (cut indices)
  std::vector<int> cotree;        // remaining cuts, one per a-cycle
};

/// Permutation of sheet labels produced by crossing cut k along the real
/// axis from left to right.
std::array<int, 3> crossing_permutation(const SpectralCurve& curve, const SurfaceGeometry& geo, int k);

SurfaceGeometry surface_geometry(const SpectralCurve& curve);

/// Sheet pairs of the cuts in order, e.g. "13 23 12".
std::string cut_pattern(const SurfaceGeometry& geo);

/// Waists around every non-tree cut and the matching fundamental loops of the
/// sheet/cut graph, recombined by the template stored for the cut pattern
/// when there is one. Supported for n = 2, 3.
HomologyBasis default_basis(const SpectralCurve& curve, const SurfaceGeometry& geo);
HomologyBasis default_basis(const SpectralCurve& curve);

/// Image under (z, w) -> (conj z, -conj w); segment labels re-identified on the fiber.
CyclePath apply_antiinvolution(const SpectralCurve& curve, const CyclePath& path);

/// Walk the cycle, optionally integrating; throws ValidatorFailure when a
/// segment does not land on the next segment's lifted start.
TrackResult trace_cycle(const SpectralCurve& curve, const CyclePath& path, int dim, const Integrand& f,
                        const TrackOptions& opt = {});

/// Closed polyline on one sheet (no cut crossings implied).
CyclePath single_sheet_loop(std::vector<cplx> vertices, int sheet);

/// Reverse orientation.
CyclePath reversed(const SpectralCurve& curve, const CyclePath& path);

/// Label of the lifted point (z, w), by comparison with the labelled fiber.
int identify_sheet(const SpectralCurve& curve, cplx z, cplx w);

}  // namespace manakov
