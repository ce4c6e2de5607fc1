#include "calabi/fields.hpp"

#include <cmath>
#include <sstream>

namespace calabi {

namespace {

void require_positive_v(double v, FieldPoint pt) {
  if (!(v > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "V = " << v << " at (H, r) = (" << pt.H << ", " << pt.r << ")";
    throw Error(ErrorCode::NonPositiveV, os.str());
  }
}

Mat2d values(const Mat2<Dual2>& x) {
  Mat2d out;
  for (std::size_t i = 0; i < 4; ++i) out.m[i] = x.m[i].v;
  return out;
}

Mat2d partial(const Mat2<Dual2>& x, int dir) {
  Mat2d out;
  for (std::size_t i = 0; i < 4; ++i) out.m[i] = x.m[i].d[static_cast<std::size_t>(dir)];
  return out;
}

}  // namespace

void check_point(const PolytopeData& p, FieldPoint pt) {
  if (!std::isfinite(pt.H) || !std::isfinite(pt.r) || pt.r < 0.0) {
    std::ostringstream os;
    os << "(H, r) = (" << pt.H << ", " << pt.r << ") is not in the closed half-plane";
    throw Error(ErrorCode::InvalidInput, os.str());
  }
  const auto& a = p.abscissas();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::hypot(pt.H + a[i], pt.r) < kSingularRadius) {
      std::ostringstream os;
      os.precision(17);
      os << "(H, r) = (" << pt.H << ", " << pt.r << ") coincides with (-a_" << i + 1 << ", 0)";
      throw Error(ErrorCode::SingularPoint, os.str());
    }
  }
}

FieldEval eval_fields(const PolytopeData& p, const TaubNutParameter& nu, FieldPoint pt) {
  check_point(p, pt);
  const FieldCore<double> c = field_core(p, nu.vec(), pt.H, pt.r);
  require_positive_v(c.V, pt);

  FieldEval e;
  e.pt = pt;
  e.f = c.f;
  e.g = c.g;
  e.g_H = c.g_H;
  e.g_r = pt.r * c.k;
  e.f_H = (pt.r * pt.r) * c.k;
  e.f_r = (-pt.r) * c.g_H;
  e.V = c.V;
  for (double ai : p.abscissas()) e.rho.push_back(std::hypot(pt.H + ai, pt.r));

  if (pt.r > 0.0) {
    e.xi = xi_value(p, nu.vec(), pt.H, pt.r);
    Mat2d dxi;
    dxi.m = {c.g.a, c.f.a / pt.r, c.g.b, c.f.b / pt.r};
    e.Dxi = dxi;
    const double inv_r2 = 1.0 / (pt.r * pt.r);
    e.hess_u = (1.0 / c.V) * (outer(c.g, c.g) + inv_r2 * outer(c.f, c.f));
  }
  return e;
}

MatrixEval eval_matrices(const PolytopeData& p, const TaubNutParameter& nu, FieldPoint pt) {
  check_point(p, pt);
  const Dual2 h = seed<double, 2>(pt.H, 0);
  const Dual2 r = seed<double, 2>(pt.r, 1);
  const FieldCore<Dual2> c = field_core(p, nu.vec(), h, r);
  require_positive_v(c.V.v, pt);
  const ConnectionBlocks<Dual2> blocks = connection_blocks(c, r);

  MatrixEval m;
  m.M_H = values(blocks.M_H);
  m.rMr = values(blocks.rMr);
  m.dM_H_dH = partial(blocks.M_H, 0);
  m.dM_H_dr = partial(blocks.M_H, 1);
  m.drMr_dH = partial(blocks.rMr, 0);
  m.drMr_dr = partial(blocks.rMr, 1);
  return m;
}

OneForm c1_form(const PolytopeData& p, const TaubNutParameter& nu, FieldPoint pt) {
  check_point(p, pt);
  const FieldCore<double> c = field_core(p, nu.vec(), pt.H, pt.r);
  require_positive_v(c.V, pt);
  const Vec2d g_r = pt.r * c.k;
  const double inv_v2 = 1.0 / (c.V * c.V);
  return {det(c.g_H, c.g) * inv_v2, det(g_r, c.g) * inv_v2};
}

OneForm t_form(const PolytopeData& p, const TaubNutParameter& nu, FieldPoint pt) {
  check_point(p, pt);
  const FieldCore<double> c = field_core(p, nu.vec(), pt.H, pt.r);
  require_positive_v(c.V, pt);
  const MatrixEval m = eval_matrices(p, nu, pt);

  const double r = pt.r;
  const Vec2d& f = c.f;
  const Vec2d& g = c.g;
  const double V = c.V;
  const double tr_pp = trace(m.M_H * m.M_H);
  const double tr_qp = trace(m.rMr * m.M_H);
  const double tr_qq = trace(m.rMr * m.rMr);

  auto component = [&](const Vec2d& df, const Vec2d& dg, const Mat2d& dP, const Mat2d& dQ) {
    const double algebraic =
        tr_pp * det(df, f) - tr_qp * (det(dg, f) + det(df, g)) + tr_qq * det(dg, g);
    const double transgression = trace(m.rMr * dP) - trace(m.M_H * dQ);
    return algebraic / (V * V) + transgression / V;
  };

  const Vec2d f_H = (r * r) * c.k;
  const Vec2d f_r = (-r) * c.g_H;
  const Vec2d g_r = r * c.k;
  return {component(f_H, c.g_H, m.dM_H_dH, m.drMr_dH), component(f_r, g_r, m.dM_H_dr, m.drMr_dr)};
}

Vec2d laplace_residual(const PolytopeData& p, const TaubNutParameter& nu, FieldPoint pt,
                       const Detuning& detune) {
  check_point(p, pt);
  if (!(pt.r > 0.0)) throw Error(ErrorCode::InvalidInput, "laplace_residual needs r > 0");
  const auto [h, r] = seed_jet2(pt.H, pt.r);
  const Vec2<Jet2> xi = xi_value(p, nu.vec(), h, r, detune);
  auto lap = [&](const Jet2& x) {
    const Taylor2 t = unpack(x);
    return t.hess[0][0] + t.hess[1][1] + t.grad[1] / pt.r;
  };
  return {lap(xi.a), lap(xi.b)};
}

}  // namespace calabi
