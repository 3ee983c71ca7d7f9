#include "manakov/periods.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "manakov/errors.hpp"
#include "manakov/parallel.hpp"

namespace manakov {

using series::Series;

HolomorphicBasis::HolomorphicBasis(const SpectralCurve& curve) : c_(&curve) {
  const int n = curve.n();
  for (int j = 1; j <= n - 2; ++j) d_.push_back({1, j - 1});
  for (int j = n - 1; j <= 2 * n - 3; ++j) d_.push_back({2, 2 * n - 3 - j});
}

void HolomorphicBasis::eval(cplx z, cplx u, cplx* out) const {
  const cplx fw = c_->g_u(z, u);
  for (std::size_t j = 0; j < d_.size(); ++j) {
    const cplx zp = d_[j].power == 0 ? cplx(1.0) : std::pow(z, d_[j].power);
    out[j] = (d_[j].family == 1 ? I * zp : zp * u) / fw;
  }
}

VecC HolomorphicBasis::eval(cplx z, cplx u) const {
  VecC r(size());
  eval(z, u, r.data());
  return r;
}

std::vector<Series> HolomorphicBasis::at_infinity(int sheet, int order) const {
  const int n = c_->n();
  const int K = order + 2 * n + 4;
  auto S = c_->infinity_series(sheet, K);
  const Series& v = S.v;
  Series pt(n, cplx{});
  for (int e = 0; e <= n - 1; ++e) pt[n - 1 - e] = c_->P()[e];
  const cplx c2n = I * std::ldexp(1.0, n);
  std::vector<Series> out;
  if (sheet == 1) {
    Series T = series::add(series::shift(v, n + 1, K), {-c2n}, K);
    Series D = series::add(series::mul(T, T, K),
                           series::add(series::scale(series::shift(series::mul(v, T, K), n + 1, K), 2.0),
                                       series::shift(pt, n + 1, K), K),
                           K);
    Series inv = series::reciprocal(D, K);
    for (const auto& d : d_) {
      Series phi = d.family == 1 ? series::scale(series::shift(inv, 2 * n - 2 - d.power, K), -I)
                                 : series::scale(series::shift(series::mul(T, inv, K), n - 2 - d.power, K), -1.0);
      phi.resize(order + 1);
      out.push_back(phi);
    }
  } else {
    Series D = series::add(series::add(series::scale(series::shift(series::mul(v, v, K), n + 1, K), 3.0),
                                       series::scale(v, 2.0 * c2n), K),
                           pt, K);
    Series inv = series::reciprocal(D, K);
    for (const auto& d : d_) {
      Series phi = d.family == 1 ? series::scale(series::shift(inv, n - 3 - d.power, K), -I)
                                 : series::scale(series::shift(series::mul(v, inv, K), n - 2 - d.power, K), -1.0);
      phi.resize(order + 1);
      out.push_back(phi);
    }
  }
  return out;
}

VecC HolomorphicBasis::tail(int sheet, cplx xi, int order) const {
  auto c = at_infinity(sheet, order);
  VecC r = VecC::Zero(size());
  for (int j = 0; j < size(); ++j) {
    cplx s{};
    for (int k = order; k >= 0; --k) s = s * xi + c[j][k] / double(k + 1);
    r[j] = s * xi;
  }
  return r;
}

std::string PeriodValidation::first_failure() const {
  if (!A_real()) return "A real (max|Im A|/max|Re A| < 1e-8)";
  if (!symmetric()) return "tau symmetric";
  if (!positive()) return "Im tau positive definite";
  if (!involution()) return "tau reality: conj(tau) + tau = tau0";
  return {};
}

VecC PeriodData::between(int i, int j) const {
  auto r = [&](int k) -> VecC {
    if (k == 1) return VecC::Zero(g);
    return k == 2 ? r2 : r3;
  };
  return r(j) - r(i);
}

VecC integrate_differential(const SpectralCurve& c, const HolomorphicBasis& hb, const CyclePath& path,
                            double* err) {
  auto r = trace_cycle(c, path, hb.size(), [&](cplx z, cplx u, cplx* out) { hb.eval(z, u, out); });
  if (err) *err = r.error_estimate;
  return r.integral;
}

MatC tau0(int g) {
  MatC t = MatC::Constant(g, g, 1.0);
  for (int i = 0; i < g; ++i) t(i, i) = 2.0;
  return t;
}

PeriodData period_matrices(const SpectralCurve& c, const HomologyBasis& basis, bool strict) {
  const int g = c.genus();
  const int L = int(basis.loops.size());
  if (basis.a.rows() != g || basis.b.rows() != g || basis.a.cols() != L || basis.b.cols() != L)
    throw ValidatorFailure("basis does not describe g a- and b-cycles");
  HolomorphicBasis hb(c);
  PeriodData pd;
  pd.g = g;
  MatC loop_periods(g, L);
  parallel_for(std::size_t(L), [&](std::size_t k) {
    loop_periods.col(Eigen::Index(k)) = integrate_differential(c, hb, basis.loops[k]);
  });
  pd.A = loop_periods * basis.a.transpose().cast<cplx>();
  pd.B = loop_periods * basis.b.transpose().cast<cplx>();
  Eigen::JacobiSVD<MatC> svd(pd.A);
  const auto& sv = svd.singularValues();
  if (sv(g - 1) <= 1e-12 * sv(0)) throw SingularA("a-period matrix is numerically singular");
  pd.C = pd.A.inverse();
  pd.tau = pd.C * pd.B;

  auto& v = pd.check;
  v.A_imag_ratio = pd.A.imag().cwiseAbs().maxCoeff() / pd.A.real().cwiseAbs().maxCoeff();
  v.symmetry = (pd.tau - pd.tau.transpose()).cwiseAbs().maxCoeff();
  MatR im = 0.5 * (pd.tau.imag() + pd.tau.imag().transpose());
  Eigen::SelfAdjointEigenSolver<MatR> es(im);
  v.min_imag_eig = es.eigenvalues().minCoeff();
  v.tau_reality = (pd.tau.conjugate() + pd.tau - tau0(g)).cwiseAbs().maxCoeff();
  if (strict) {
    auto f = v.first_failure();
    if (!f.empty()) throw ValidatorFailure(f);
  }
  return pd;
}

void winding_vectors(const SpectralCurve& c, PeriodData& pd) {
  HolomorphicBasis hb(c);
  const int g = pd.g;
  for (int i = 1; i <= 3; ++i) {
    auto s = hb.at_infinity(i, 3);
    VecC c0(g), c1(g), c2(g);
    for (int j = 0; j < g; ++j) {
      c0[j] = s[j][0];
      c1[j] = s[j][1] / 2.0;
      c2[j] = s[j][2] / 3.0;
    }
    pd.Vi[i - 1] = pd.C * c0;
    pd.Wi[i - 1] = pd.C * c1;
    pd.Zi[i - 1] = pd.C * c2;
  }
  pd.V = I * (pd.Vi[0] - pd.Vi[1] - pd.Vi[2]);
  pd.W = 4.0 * I * (pd.Wi[0] - pd.Wi[1] - pd.Wi[2]);
  pd.check.V_imag = pd.V.imag().cwiseAbs().maxCoeff();
  pd.check.W_imag = pd.W.imag().cwiseAbs().maxCoeff();
}

std::vector<cplx> sheet_transfer_path(const SpectralCurve& c, const SurfaceGeometry& geo, int target) {
  // cuts along the tree from sheet 1 to target
  std::vector<int> prev_cut(4, -1), prev_v(4, -1);
  std::vector<bool> seen(4, false);
  std::vector<int> q{1};
  seen[1] = true;
  for (std::size_t i = 0; i < q.size(); ++i) {
    int v = q[i];
    for (int j : geo.tree) {
      const auto& s = geo.cuts[j].sheets;
      int w = s[0] == v ? s[1] : (s[1] == v ? s[0] : 0);
      if (w == 0 || seen[w]) continue;
      seen[w] = true;
      prev_cut[w] = j;
      prev_v[w] = v;
      q.push_back(w);
    }
  }
  std::vector<int> route;
  for (int v = target; v != 1; v = prev_v[v]) route.push_back(prev_cut[v]);
  std::reverse(route.begin(), route.end());

  const double R = c.base_x(), H = geo.top;
  std::vector<cplx> path{cplx(R, 0.0), cplx(R, -H)};
  for (int k : route) {
    const cplx e = geo.branch.lower(k);
    const double rho = std::min(0.5 * std::abs(e.imag()), geo.halfwidth[k]);
    const cplx bottom = e - I * rho;
    path.push_back(cplx(bottom.real(), -H));
    path.push_back(bottom);
    const int N = 32;
    for (int m = 1; m <= N; ++m) path.push_back(e + rho * std::exp(I * (-0.5 * PI + 2.0 * PI * m / N)));
    path.push_back(cplx(bottom.real(), -H));
  }
  path.push_back(cplx(R, -H));
  path.push_back(cplx(R, 0.0));
  return path;
}

void r_vectors(const SpectralCurve& c, const SurfaceGeometry& geo, PeriodData& pd) {
  HolomorphicBasis hb(c);
  const double R = c.base_x();
  const cplx xi = 1.0 / R;
  const VecC t1 = hb.tail(1, xi);
  std::array<VecC, 2> out;
  parallel_for(2, [&](std::size_t idx) {
    const int target = int(idx) + 2;
    auto path = sheet_transfer_path(c, geo, target);
    cplx u0 = c.label_root(R, 1);
    auto res = track_path(c, path, u0, hb.size(), [&](cplx z, cplx u, cplx* o) { hb.eval(z, u, o); });
    cplx want = c.label_root(R, target);
    if (std::abs(res.u_end - want) > 1e-7 * (1.0 + std::abs(want)))
      throw ValidatorFailure("transfer path does not reach sheet " + std::to_string(target));
    out[idx] = pd.C * (t1 + res.integral - hb.tail(target, xi));
  });
  pd.r2 = out[0];
  pd.r3 = out[1];
  if (pd.g == 1) {
    // w - s has its only zeros at infinity_2,3, so r_2 + r_3 lies in the lattice
    const cplx sum = pd.r2[0] + pd.r3[0];
    const double m = std::round(sum.imag() / pd.tau(0, 0).imag());
    const cplx rest = sum - m * pd.tau(0, 0);
    if (std::abs(rest - std::round(rest.real())) > 1e-8)
      throw ValidatorFailure("genus 1: r_2 + r_3 is not a lattice vector");
    pd.r3 = -pd.r2;
  }
  double dev = 0.0;
  for (const VecC* r : {&pd.r2, &pd.r3})
    for (int k = 0; k < pd.g; ++k) {
      cplx s = std::conj((*r)[k]) + (*r)[k];
      dev = std::max(dev, std::abs(s - std::round(s.real())));
    }
  pd.check.r_reality = dev;
}

SurfaceData compute_surface(const SpectralCurve& c, const HomologyBasis& basis, bool strict) {
  SurfaceData sd;
  sd.geo = surface_geometry(c);
  sd.basis = basis;
  sd.periods = period_matrices(c, basis, strict);
  winding_vectors(c, sd.periods);
  r_vectors(c, sd.geo, sd.periods);
  return sd;
}

SurfaceData compute_surface(const SpectralCurve& c, bool strict) {
  SurfaceGeometry geo = surface_geometry(c);
  HomologyBasis hb = default_basis(c, geo);
  SurfaceData sd;
  sd.geo = geo;
  sd.basis = hb;
  sd.periods = period_matrices(c, hb, strict);
  winding_vectors(c, sd.periods);
  r_vectors(c, geo, sd.periods);
  return sd;
}

}  // namespace manakov
