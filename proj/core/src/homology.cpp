#include "manakov/homology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "manakov/errors.hpp"

namespace manakov {

int identify_sheet(const SpectralCurve& c, cplx z, cplx w) {
  const cplx u = w - c.s(z);
  double best = 1e300, second = 1e300;
  int lab = 0;
  for (int k = 1; k <= 3; ++k) {
    double d = std::abs(c.label_root(z, k) - u);
    if (d < best) {
      second = best;
      best = d;
      lab = k;
    } else if (d < second) {
      second = d;
    }
  }
  if (!(second > 4.0 * best)) throw AmbiguousContinuation("sheet label is ambiguous");
  return lab;
}

SurfaceGeometry surface_geometry(const SpectralCurve& c) {
  SurfaceGeometry geo;
  geo.branch = c.branch_points();
  const std::size_t m = geo.branch.pairs();
  geo.top = c.top_y();
  for (std::size_t k = 0; k < m; ++k) geo.x.push_back(geo.branch.lower(k).real());
  for (std::size_t k = 0; k < m; ++k) {
    double gap = 1.0 + c.radius();
    for (std::size_t j = 0; j < m; ++j)
      if (j != k) gap = std::min(gap, std::abs(geo.x[k] - geo.x[j]));
    if (gap < 1e-6 * (1.0 + c.radius()))
      throw ValidatorFailure("two cuts share the same real part; vertical cut layout needs distinct Re e");
    geo.halfwidth.push_back(0.3 * gap);
  }
  geo.cuts.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    auto p = crossing_permutation(c, geo, int(k));
    std::vector<int> moved;
    for (int s = 0; s < 3; ++s)
      if (p[s] != s + 1) moved.push_back(s + 1);
    if (moved.size() != 2) throw ValidatorFailure("crossing a cut is not a transposition of two sheets");
    geo.cuts[k].pair = {int(2 * k + 1), int(2 * k + 2)};
    geo.cuts[k].sheets = {moved[0], moved[1]};
  }
  // spanning tree by union-find in cut order
  std::array<int, 4> parent{0, 1, 2, 3};
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a];
    return a;
  };
  for (std::size_t k = 0; k < m; ++k) {
    int a = find(geo.cuts[k].sheets[0]), b = find(geo.cuts[k].sheets[1]);
    if (a != b) {
      parent[a] = b;
      geo.tree.push_back(int(k));
    } else {
      geo.cotree.push_back(int(k));
    }
  }
  if (geo.tree.size() != 2) throw ValidatorFailure("the sheets are not connected through the cuts");
  return geo;
}

std::array<int, 3> crossing_permutation(const SpectralCurve& c, const SurfaceGeometry& geo, int k) {
  const double xl = geo.x[k] - geo.halfwidth[k], xr = geo.x[k] + geo.halfwidth[k];
  std::array<int, 3> perm{};
  for (int s = 1; s <= 3; ++s) {
    cplx u = c.label_root(cplx(xl, 0.0), s);
    cplx ue = track_root(c, {cplx(xl, 0.0), cplx(xr, 0.0)}, u);
    perm[s - 1] = identify_sheet(c, cplx(xr, 0.0), ue + c.s(cplx(xr, 0.0)));
  }
  return perm;
}

CyclePath single_sheet_loop(std::vector<cplx> vertices, int sheet) {
  CyclePath p;
  p.segments.push_back({std::move(vertices), sheet});
  return p;
}

namespace {

int other_sheet(const Cut& cut, int s) {
  if (s == cut.sheets[0]) return cut.sheets[1];
  if (s == cut.sheets[1]) return cut.sheets[0];
  return s;
}

CyclePath waist(const SurfaceGeometry& geo, int k, int sheet) {
  const double x = geo.x[k], d = geo.halfwidth[k], H = geo.top;
  const double Y = std::abs(geo.branch.lower(k).imag()) + d;
  return single_sheet_loop({cplx(x + d, H), cplx(x - d, H), cplx(x - d, -Y), cplx(x + d, -Y), cplx(x + d, H)},
                           sheet);
}

// Fundamental loop of cotree cut k: cross k, then return through tree cuts.
CyclePath graph_loop(const SurfaceGeometry& geo, int k) {
  const int s0 = geo.cuts[k].sheets[0], t0 = geo.cuts[k].sheets[1];
  // tree path from t0 to s0 (at most two edges on three vertices)
  std::vector<int> route;
  std::vector<int> prev_cut(4, -1), prev_v(4, -1);
  std::vector<bool> seen(4, false);
  std::vector<int> queue{t0};
  seen[t0] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (int j : geo.tree) {
      const Cut& cut = geo.cuts[j];
      if (cut.sheets[0] != v && cut.sheets[1] != v) continue;
      int w = other_sheet(cut, v);
      if (seen[w]) continue;
      seen[w] = true;
      prev_cut[w] = j;
      prev_v[w] = v;
      queue.push_back(w);
    }
  }
  for (int v = s0; v != t0; v = prev_v[v]) route.push_back(prev_cut[v]);
  std::reverse(route.begin(), route.end());
  std::vector<int> seq{k};
  seq.insert(seq.end(), route.begin(), route.end());

  const double H = geo.top;
  CyclePath p;
  int sheet = s0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const int j = seq[i];
    const double xa = geo.x[j] - geo.halfwidth[j], xb = geo.x[j] + geo.halfwidth[j];
    p.segments.push_back({{cplx(xa, H), cplx(xa, 0.0), cplx(xb, 0.0), cplx(xb, H)}, sheet});
    sheet = other_sheet(geo.cuts[j], sheet);
    const int nj = seq[(i + 1) % seq.size()];
    const double xn = geo.x[nj] - geo.halfwidth[nj];
    p.segments.push_back({{cplx(xb, H), cplx(xn, H)}, sheet});
  }
  if (sheet != s0) throw ValidatorFailure("graph loop does not close");
  return p;
}

}  // namespace

HomologyBasis HomologyBasis::from_loops(std::vector<CyclePath> a_loops, std::vector<CyclePath> b_loops) {
  const int g = int(a_loops.size());
  HomologyBasis hb;
  hb.loops = std::move(a_loops);
  for (auto& l : b_loops) hb.loops.push_back(std::move(l));
  hb.a = Eigen::MatrixXi::Zero(g, 2 * g);
  hb.b = Eigen::MatrixXi::Zero(g, 2 * g);
  for (int k = 0; k < g; ++k) {
    hb.a(k, k) = 1;
    hb.b(k, g + k) = 1;
  }
  return hb;
}

std::string cut_pattern(const SurfaceGeometry& geo) {
  std::string s;
  for (const auto& cut : geo.cuts) {
    if (!s.empty()) s += ' ';
    s += std::to_string(cut.sheets[0]) + std::to_string(cut.sheets[1]);
  }
  return s;
}

namespace {

// Rows over [waists..., graph loops...] in cotree order.
struct Template {
  const char* pattern;
  int g;
  std::vector<int> a, b;
};

const std::vector<Template>& templates() {
  static const std::vector<Template> t{
      {"13 23 12", 1, {1, 0}, {1, 1}},
      {"23 12 12", 1, {1, 0}, {1, 1}},
      {"12 23 13 23 12", 3,
       {1, -1, 0, 0, 0, 0,  //
        0, 1, -1, 0, 0, 0,  //
        0, -1, 0, 0, 0, 0},
       {1, -1, -1, 1, 0, 0,  //
        0, 0, -1, 0, 0, -1,  //
        0, -1, 0, -1, -1, -1}},
  };
  return t;
}

}  // namespace

HomologyBasis default_basis(const SpectralCurve& c, const SurfaceGeometry& geo) {
  if (c.n() > 3)
    throw UnsupportedGenus("no default cycle template for n = " + std::to_string(c.n()) +
                           "; supply a basis file");
  std::vector<CyclePath> as, bs;
  for (int k : geo.cotree) {
    as.push_back(waist(geo, k, geo.cuts[k].sheets[0]));
    bs.push_back(graph_loop(geo, k));
  }
  HomologyBasis hb = HomologyBasis::from_loops(std::move(as), std::move(bs));
  const std::string pat = cut_pattern(geo);
  for (const auto& t : templates()) {
    if (pat != t.pattern) continue;
    for (int i = 0; i < t.g; ++i)
      for (int j = 0; j < 2 * t.g; ++j) {
        hb.a(i, j) = t.a[i * 2 * t.g + j];
        hb.b(i, j) = t.b[i * 2 * t.g + j];
      }
  }
  return hb;
}

HomologyBasis default_basis(const SpectralCurve& c) {
  if (c.n() > 3)
    throw UnsupportedGenus("no default cycle template for n = " + std::to_string(c.n()) +
                           "; supply a basis file");
  return default_basis(c, surface_geometry(c));
}

CyclePath apply_antiinvolution(const SpectralCurve& c, const CyclePath& path) {
  CyclePath out;
  for (const auto& seg : path.segments) {
    PathSegment s;
    for (cplx z : seg.path) s.path.push_back(std::conj(z));
    const cplx z0 = seg.path.front();
    const cplx w0 = c.label_root(z0, seg.sheet) + c.s(z0);
    s.sheet = identify_sheet(c, std::conj(z0), -std::conj(w0));
    out.segments.push_back(std::move(s));
  }
  return out;
}

CyclePath reversed(const SpectralCurve& c, const CyclePath& path) {
  // walk once to learn the label at each segment end
  CyclePath out;
  const auto& segs = path.segments;
  for (std::size_t i = segs.size(); i-- > 0;) {
    PathSegment s;
    s.path.assign(segs[i].path.rbegin(), segs[i].path.rend());
    const int next = segs[(i + 1) % segs.size()].sheet;
    s.sheet = next;  // end of segment i coincides with start of the next one
    out.segments.push_back(std::move(s));
  }
  (void)c;
  return out;
}

TrackResult trace_cycle(const SpectralCurve& c, const CyclePath& path, int dim, const Integrand& f,
                        const TrackOptions& opt) {
  TrackResult total;
  total.integral = VecC::Zero(dim);
  const auto& segs = path.segments;
  if (segs.empty()) return total;
  cplx first_u = c.label_root(segs.front().path.front(), segs.front().sheet);
  cplx u = first_u;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& seg = segs[i];
    if (i > 0) {
      cplx lab = c.label_root(seg.path.front(), seg.sheet);
      if (std::abs(lab - u) > 1e-7 * (1.0 + std::abs(u)))
        throw ValidatorFailure("cycle segment " + std::to_string(i) + " does not start on sheet " +
                               std::to_string(seg.sheet));
      u = lab;
    }
    auto r = track_path(c, seg.path, u, dim, f, opt);
    if (dim > 0) total.integral += r.integral;
    total.error_estimate += r.error_estimate;
    total.steps += r.steps;
    u = r.u_end;
  }
  const cplx zend = segs.back().path.back();
  if (std::abs(zend - segs.front().path.front()) > 1e-12 * (1.0 + std::abs(zend)) ||
      std::abs(u - first_u) > 1e-7 * (1.0 + std::abs(u)))
    throw ValidatorFailure("cycle does not close on its starting sheet");
  total.u_end = u;
  return total;
}

}  // namespace manakov
