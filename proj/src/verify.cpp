#include "calabi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "calabi/error.hpp"
#include "calabi/quadrature.hpp"

namespace calabi {

namespace {

using Mat4 = std::array<std::array<double, 4>, 4>;

Mat4 inverse4(Mat4 a) {
  Mat4 inv{};
  for (int i = 0; i < 4; ++i) inv[i][i] = 1.0;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    const double s = 1.0 / a[c][c];
    for (int k = 0; k < 4; ++k) {
      a[c][k] *= s;
      inv[c][k] *= s;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == c) continue;
      const double m = a[r][c];
      if (m == 0.0) continue;
      for (int k = 0; k < 4; ++k) {
        a[r][k] -= m * a[c][k];
        inv[r][k] -= m * inv[c][k];
      }
    }
  }
  return inv;
}

double halton(std::size_t index, std::size_t base) {
  double f = 1.0, out = 0.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    out += f * static_cast<double>(index % base);
    index /= base;
  }
  return out;
}

double norm(Vec2d v) { return std::hypot(v.a, v.b); }

double rel(double x, double scale) { return std::abs(x) / std::max(1.0, std::abs(scale)); }

}  // namespace

CurvatureAt curvature_at(const PolytopeData& p, Vec2d nu, FieldPoint pt, const Detuning& detune) {
  check_point(p, pt);
  if (!(pt.r > 0.0)) throw Error(ErrorCode::InvalidInput, "curvature needs r > 0");
  const auto [h, r] = seed_jet2(pt.H, pt.r);
  const auto [f, g] = field_fg(p, nu, h, r, detune);
  const Jet2 V = det(g, f);
  if (!(V.v.v > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "V = " << V.v.v << " at (H, r) = (" << pt.H << ", " << pt.r << ")";
    throw Error(ErrorCode::NonPositiveV, os.str());
  }
  const Mat2<Jet2> W = (1.0 / V) * ((r * r) * outer(perp(g), perp(g)) + outer(perp(f), perp(f)));

  // Metric components with first and second derivatives in (H, r).
  std::array<std::array<Taylor2, 4>, 4> m{};
  m[0][0] = unpack(V);
  m[1][1] = unpack(V);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m[2 + i][2 + j] = unpack(W(i, j));

  Mat4 G{};
  std::array<Mat4, 4> dG{};
  std::array<std::array<Mat4, 4>, 4> ddG{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      G[a][b] = m[a][b].value;
      for (int k = 0; k < 2; ++k) {
        dG[k][a][b] = m[a][b].grad[k];
        for (int l = 0; l < 2; ++l) ddG[k][l][a][b] = m[a][b].hess[k][l];
      }
    }
  const Mat4 Gi = inverse4(G);
  std::array<Mat4, 4> dGi{};
  for (int k = 0; k < 2; ++k)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double s = 0.0;
        for (int c = 0; c < 4; ++c)
          for (int e = 0; e < 4; ++e) s -= Gi[a][c] * dG[k][c][e] * Gi[e][b];
        dGi[k][a][b] = s;
      }

  // Christoffel symbols of the first kind and their derivatives.
  double L[4][4][4] = {};
  double dL[4][4][4][4] = {};
  for (int d = 0; d < 4; ++d)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        L[d][b][c] = 0.5 * (dG[b][d][c] + dG[c][d][b] - dG[d][b][c]);
        for (int k = 0; k < 2; ++k)
          dL[k][d][b][c] = 0.5 * (ddG[k][b][d][c] + ddG[k][c][d][b] - ddG[k][d][b][c]);
      }
  double Gam[4][4][4] = {};
  double dGam[4][4][4][4] = {};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        double s = 0.0;
        for (int d = 0; d < 4; ++d) s += Gi[a][d] * L[d][b][c];
        Gam[a][b][c] = s;
        for (int k = 0; k < 2; ++k) {
          double t = 0.0;
          for (int d = 0; d < 4; ++d) t += dGi[k][a][d] * L[d][b][c] + Gi[a][d] * dL[k][d][b][c];
          dGam[k][a][b][c] = t;
        }
      }

  CurvatureAt out;
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) {
      double s = 0.0;
      for (int a = 0; a < 4; ++a) {
        s += dGam[a][a][b][d] - dGam[d][a][b][a];
        for (int e = 0; e < 4; ++e) s += Gam[a][a][e] * Gam[e][b][d] - Gam[a][d][e] * Gam[e][b][a];
      }
      out.ricci[b][d] = s;
      out.ricci_max = std::max(out.ricci_max, std::abs(s));
    }
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) out.scalar += Gi[b][d] * out.ricci[b][d];
  return out;
}

double scalar_curvature(const PolytopeData& p, const TaubNutParameter& nu, FieldPoint pt) {
  return curvature_at(p, nu.vec(), pt).scalar;
}

std::vector<FieldPoint> halton_points(const PolytopeData& p, std::size_t count, std::size_t skip) {
  const auto& a = p.abscissas();
  const double lo = -a.back() - 3.0;
  const double hi = -a.front() + 3.0;
  std::vector<FieldPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t k = i + skip;
    out.push_back({lo + (hi - lo) * halton(k, 2), 0.1 + 3.9 * halton(k, 3)});
  }
  return out;
}

std::vector<double> boundary_samples(const PolytopeData& p, std::size_t count) {
  const auto& a = p.abscissas();
  const double lo = -a.back() - 3.0;
  const double hi = -a.front() + 3.0;
  std::vector<double> out;
  for (std::size_t k = 1; out.size() < count; ++k) {
    const double H = lo + (hi - lo) * halton(k, 5);
    const bool clear = std::none_of(a.begin(), a.end(), [&](double ai) { return std::abs(H + ai) < 0.05; });
    if (clear) out.push_back(H);
  }
  return out;
}

void IdentityResiduals::merge(const IdentityResiduals& o) {
  const bool first = interior_points + boundary_points == 0;
  interior_points += o.interior_points;
  boundary_points += o.boundary_points;
  min_V = first ? o.min_V : std::min(min_V, o.min_V);
  det_hess = std::max(det_hess, o.det_hess);
  hess_symmetry = std::max(hess_symmetry, o.hess_symmetry);
  hess_vs_dxi = std::max(hess_vs_dxi, o.hess_vs_dxi);
  cauchy_riemann = std::max(cauchy_riemann, o.cauchy_riemann);
  derivative_vs_autodiff = std::max(derivative_vs_autodiff, o.derivative_vs_autodiff);
  dxi_vs_autodiff = std::max(dxi_vs_autodiff, o.dxi_vs_autodiff);
  laplace = std::max(laplace, o.laplace);
  trace_rMr2 = std::max(trace_rMr2, o.trace_rMr2);
  trace_MH_rMr = std::max(trace_MH_rMr, o.trace_MH_rMr);
  trace_MH_drMr = std::max(trace_MH_drMr, o.trace_MH_drMr);
}

IdentityResiduals check_identities(const PolytopeData& p, const TaubNutParameter& nu,
                                   const std::vector<FieldPoint>& interior, const std::vector<double>& boundary,
                                   Exec exec) {
  auto interior_one = [&](std::size_t idx) {
    const FieldPoint pt = interior[idx];
    const FieldEval e = eval_fields(p, nu, pt);
    IdentityResiduals res;
    res.interior_points = 1;
    res.min_V = e.V;
    const Mat2d& hs = *e.hess_u;
    const Mat2d& dxi = *e.Dxi;
    res.det_hess = std::abs(determinant(hs) * pt.r * pt.r - 1.0);
    res.hess_symmetry = std::abs(hs(0, 1) - hs(1, 0)) / std::max(1.0, max_abs(hs));
    res.hess_vs_dxi = max_abs(hs - (1.0 / e.V) * (dxi * transpose(dxi))) / std::max(1.0, max_abs(hs));

    const Dual2 h = seed<double, 2>(pt.H, 0);
    const Dual2 r = seed<double, 2>(pt.r, 1);
    const auto [f, g] = field_fg(p, nu.vec(), h, r, Detuning{});
    const Vec2d fH{f.a.d[0], f.b.d[0]}, fr{f.a.d[1], f.b.d[1]};
    const Vec2d gH{g.a.d[0], g.b.d[0]}, gr{g.a.d[1], g.b.d[1]};
    const double scale = std::max({1.0, norm(fH), norm(fr), norm(gH), norm(gr)});
    res.cauchy_riemann = std::max(norm(fH - pt.r * gr), norm(fr + pt.r * gH)) / scale;
    res.derivative_vs_autodiff =
        std::max({norm(fH - e.f_H), norm(fr - e.f_r), norm(gH - e.g_H), norm(gr - e.g_r)}) / scale;

    const Vec2<Dual2> xi = xi_value(p, nu.vec(), h, r);
    Mat2d dxi_ad;
    dxi_ad.m = {xi.a.d[0], xi.a.d[1], xi.b.d[0], xi.b.d[1]};
    res.dxi_vs_autodiff = max_abs(dxi_ad - dxi) / std::max(1.0, max_abs(dxi));

    const Vec2d lap = laplace_residual(p, nu, pt);
    res.laplace = norm(lap);
    return res;
  };
  auto boundary_one = [&](std::size_t idx) {
    const FieldPoint pt{boundary[idx], 0.0};
    const MatrixEval m = eval_matrices(p, nu, pt);
    const FieldEval e = eval_fields(p, nu, pt);
    IdentityResiduals res;
    res.boundary_points = 1;
    res.min_V = e.V;
    res.trace_rMr2 = std::abs(trace(m.rMr * m.rMr) - 4.0) / 4.0;
    const double expect = 2.0 * det(e.g_H, e.f) / e.V;
    res.trace_MH_rMr = rel(trace(m.M_H * m.rMr) - expect, expect);
    res.trace_MH_drMr = std::abs(trace(m.M_H * m.drMr_dH)) / std::max(1.0, max_abs(m.M_H) * max_abs(m.drMr_dH));
    return res;
  };

  const auto in = map_indexed<IdentityResiduals>(interior.size(), interior_one, exec);
  const auto bd = map_indexed<IdentityResiduals>(boundary.size(), boundary_one, exec);
  IdentityResiduals out;
  for (const auto& x : in) out.merge(x);
  for (const auto& x : bd) out.merge(x);
  return out;
}

double fit_exponent(const std::vector<double>& radii, const std::vector<double>& values) {
  if (radii.size() != values.size() || radii.size() < 2)
    throw Error(ErrorCode::InvalidInput, "need at least two (radius, value) pairs");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double x = std::log(radii[i]);
    const double y = std::log(std::max(std::abs(values[i]), 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

DecayFit decay_profile(const PolytopeData& p, const TaubNutParameter& nu, DecayQuantity which,
                       std::vector<double> radii, Exec exec) {
  double floor = 0.0;
  for (double ai : p.abscissas()) floor = std::max(floor, std::abs(ai));
  floor += 1.0;
  std::sort(radii.begin(), radii.end());
  for (double R : radii) {
    if (!(R > floor)) {
      std::ostringstream os;
      os << "decay radius " << R << " must exceed max|a_i| + 1 = " << floor;
      throw Error(ErrorCode::InvalidInput, os.str());
    }
  }
  constexpr std::size_t kArcSamples = 256;
  auto value_at = [&](std::size_t idx) {
    const double R = radii[idx];
    if (which == DecayQuantity::V_H_over_V2) {
      const FieldCore<double> c = field_core(p, nu.vec(), R, 0.0);
      return det(c.g_H, c.f) / (c.V * c.V);
    }
    double sup = 0.0;
    for (std::size_t k = 0; k < kArcSamples; ++k) {
      const double phi = std::numbers::pi * (static_cast<double>(k) + 0.5) / kArcSamples;
      const FieldPoint pt{R * std::cos(phi), R * std::sin(phi)};
      const OneForm w = which == DecayQuantity::c1_arc_integrand_sup ? c1_form(p, nu, pt) : t_form(p, nu, pt);
      const double v = w.on(-std::sin(phi), std::cos(phi));
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "non-finite arc sample at R = " << R << ", phi = " << phi;
        throw Error(ErrorCode::QuadratureFailure, os.str());
      }
      sup = std::max(sup, std::abs(v));
    }
    return sup;
  };

  DecayFit fit;
  fit.radii = radii;
  fit.values = map_indexed<double>(radii.size(), value_at, exec);
  double peak = 0.0;
  for (double v : fit.values) peak = std::max(peak, std::abs(v));
  if (peak <= 1e-12 || radii.size() < 2) {
    fit.skipped = true;
    fit.fitted_exponent = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  fit.fitted_exponent = fit_exponent(fit.radii, fit.values);
  return fit;
}

std::vector<ReconstructedEdge> reconstruct_polygon(const PolytopeData& p, const TaubNutParameter& nu) {
  const auto& a = p.abscissas();
  std::vector<ReconstructedEdge> out;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    ReconstructedEdge e;
    e.index = i + 1;
    e.normal = p.normal(i + 1);
    const double lo = -a[i + 1];
    const double hi = -a[i];
    auto component = [&](int which) {
      return integrate(
                 [&](double H) {
                   const Vec2d fp = perp(field_core(p, nu.vec(), H, 0.0).f);
                   return which == 0 ? fp.a : fp.b;
                 },
                 lo, hi)
          .value;
    };
    e.vector = {component(0), component(1)};
    e.closed_form = (a[i + 1] - a[i]) * perp(e.normal);
    e.deviation = norm(e.vector - e.closed_form);
    out.push_back(e);
  }
  return out;
}

}  // namespace calabi
