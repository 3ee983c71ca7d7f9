#include "manakov/tracking.hpp"

#include <algorithm>
#include <cmath>

#include "manakov/errors.hpp"

namespace manakov {

namespace {

// Gauss-Kronrod 7/15 nodes on [-1,1]
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Local {
  cplx z, u, du, ddu;
};

Local local_at(const SpectralCurve& c, cplx z, cplx u) {
  CubicJet j = c.jet(z, u);
  cplx du = -j.gz / j.gu;
  cplx ddu = -(j.gzz + 2.0 * j.gzu * du + j.guu * du * du) / j.gu;
  return {z, u, du, ddu};
}

cplx predict(const Local& L, cplx z) {
  cplx d = z - L.z;
  return L.u + d * (L.du + 0.5 * d * L.ddu);
}

}  // namespace

bool root_near(const SpectralCurve& c, cplx z, cplx pred, double gap_ratio, cplx& out) {
  cplx u = pred;
  const cplx a = 2.0 * c.s(z), b = c.P()(z), q = c.Q()(z);
  bool conv = false;
  for (int it = 0; it < 40; ++it) {
    cplx g = ((u + a) * u + b) * u + q;
    cplx gu = (3.0 * u + 2.0 * a) * u + b;
    if (gu == cplx{}) return false;
    cplx d = g / gu;
    u -= d;
    if (std::abs(d) <= 1e-15 * (1.0 + std::abs(u))) {
      conv = true;
      break;
    }
  }
  if (!conv) {
    cplx g = ((u + a) * u + b) * u + q;
    double sc = std::max({1.0, std::abs(u), std::abs(a), std::abs(b), std::abs(q)});
    if (std::abs(g) > 1e-12 * sc * sc * sc) return false;
  }
  // remaining pair from deflation
  cplx p1 = a + u, p0 = b + u * p1;
  cplx disc = std::sqrt(p1 * p1 - 4.0 * p0);
  cplx r1 = (std::abs(-p1 + disc) > std::abs(-p1 - disc)) ? 0.5 * (-p1 + disc) : 0.5 * (-p1 - disc);
  cplx r2 = (r1 != cplx{}) ? p0 / r1 : 0.5 * (-p1 - disc);
  double dself = std::abs(u - pred);
  double doth = std::min(std::abs(r1 - pred), std::abs(r2 - pred));
  double floor = 1e-14 * (1.0 + std::abs(u));
  if (doth <= gap_ratio * std::max(dself, floor)) return false;
  out = u;
  return true;
}

TrackResult track_path(const SpectralCurve& c, const std::vector<cplx>& path, cplx u0, int dim,
                       const Integrand& f, const TrackOptions& opt) {
  TrackResult res;
  res.integral = VecC::Zero(dim);
  cplx u = u0;
  std::vector<cplx> fv(std::max(dim, 1)), kr(std::max(dim, 1)), ga(std::max(dim, 1));
  std::array<cplx, 15> nodes_u;
  std::array<double, 15> nodes_x;
  for (int k = 0; k < 7; ++k) {
    nodes_x[2 * k] = -xgk[k];
    nodes_x[2 * k + 1] = xgk[k];
  }
  nodes_x[14] = 0.0;

  for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
    const cplx a = path[seg], b = path[seg + 1];
    const double L = std::abs(b - a);
    if (L == 0.0) continue;
    const cplx dir = (b - a) / L;
    double pos = 0.0;
    cplx z = a;
    Local loc = local_at(c, z, u);
    double h = std::min(L, opt.step_fraction * c.branch_distance(z));
    while (pos < L) {
      h = std::min({h, L - pos, opt.step_fraction * c.branch_distance(z)});
      if (h <= 1e-13 * (1.0 + std::abs(z)))
        throw AmbiguousContinuation("step size underflow near z = (" + std::to_string(z.real()) + ", " +
                                    std::to_string(z.imag()) + ")");
      if (++res.steps > opt.max_steps) throw QuadratureFailure("step budget exceeded");
      const cplx z1 = z + dir * h;
      cplx u1;
      if (!root_near(c, z1, predict(loc, z1), opt.gap_ratio, u1)) {
        h *= 0.5;
        continue;
      }
      cplx um;
      const cplx zm = z + dir * (0.5 * h);
      if (!root_near(c, zm, predict(loc, zm), opt.gap_ratio, um)) {
        h *= 0.5;
        continue;
      }
      if (dim > 0) {
        bool ok = true;
        for (int k = 0; k < 15 && ok; ++k) {
          if (k == 14) {
            nodes_u[k] = um;
            continue;
          }
          cplx zk = z + dir * (0.5 * h * (1.0 + nodes_x[k]));
          ok = root_near(c, zk, predict(loc, zk), opt.gap_ratio, nodes_u[k]);
        }
        if (!ok) {
          h *= 0.5;
          continue;
        }
        std::fill(kr.begin(), kr.end(), cplx{});
        std::fill(ga.begin(), ga.end(), cplx{});
        double fmax = 0.0;
        for (int k = 0; k < 15; ++k) {
          cplx zk = z + dir * (0.5 * h * (1.0 + nodes_x[k]));
          f(zk, nodes_u[k], fv.data());
          int kk = (k == 14) ? 7 : k / 2;
          for (int d = 0; d < dim; ++d) {
            kr[d] += wgk[kk] * fv[d];
            fmax = std::max(fmax, std::abs(fv[d]));
          }
          // Gauss nodes are the odd-indexed Kronrod abscissae (1,3,5) and the centre
          if (kk == 1 || kk == 3 || kk == 5 || kk == 7) {
            double w = (kk == 7) ? wg[3] : wg[(kk - 1) / 2];
            for (int d = 0; d < dim; ++d) ga[d] += w * fv[d];
          }
        }
        const cplx jac = dir * (0.5 * h);
        double err = 0.0;
        for (int d = 0; d < dim; ++d) err = std::max(err, std::abs(jac * (kr[d] - ga[d])));
        double tol = opt.rel_tol * h * std::max(fmax, 1e-300);
        if (err > tol && h > 1e-6 * (1.0 + std::abs(z))) {
          h *= 0.5;
          continue;
        }
        for (int d = 0; d < dim; ++d) res.integral[d] += jac * kr[d];
        res.error_estimate += err;
      }
      pos += h;
      if (L - pos <= 1e-12 * L) pos = L;
      z = (pos >= L) ? b : z1;
      u = u1;
      if (pos >= L && z != z1) {
        // snap to the exact vertex
        cplx us;
        if (root_near(c, z, u, opt.gap_ratio, us)) u = us;
      }
      loc = local_at(c, z, u);
      h *= 1.6;
    }
  }
  res.u_end = u;
  return res;
}

cplx track_root(const SpectralCurve& c, const std::vector<cplx>& path, cplx u0, const TrackOptions& opt) {
  return track_path(c, path, u0, 0, Integrand{}, opt).u_end;
}

}  // namespace manakov
