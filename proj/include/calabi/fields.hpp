#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "calabi/dual.hpp"
#include "calabi/error.hpp"
#include "calabi/linalg.hpp"
#include "calabi/polytope.hpp"

namespace calabi {

/// Isothermal coordinates on the closed upper half-plane.
struct FieldPoint {
  double H = 0.0;
  double r = 0.0;
};

/// Points closer than this to some (-a_i, 0) are rejected.
inline constexpr double kSingularRadius = 1e-12;

/// Deliberate perturbations used only by negative controls.
struct Detuning {
  Vec2d g_offset{};                    // added to g, f untouched
  double g_jump_scale = 1.0;           // scales the non-constant part of g, f untouched
  double xi_first_log_scale = 1.0;     // coefficient of the i = 1 log term of xi
  double xi_first_rho_scale = 1.0;     // log(H_1 + rho_1) -> log(H_1 + s rho_1)
};

/// Throws SingularPoint / InvalidInput for points outside the evaluation domain.
void check_point(const PolytopeData& p, FieldPoint pt);

/// f, g and the regular derivative data at one point. With
/// k = -1/2 sum (nu_{i+1} - nu_i) / rho_i^3 the remaining first derivatives are
/// g_r = r k, f_H = r^2 k, f_r = -r g_H, so nothing here divides by r.
template <class T>
struct FieldCore {
  Vec2<T> f;
  Vec2<T> g;
  Vec2<T> g_H;
  Vec2<T> k;
  T V;
};

template <class T>
FieldCore<T> field_core(const PolytopeData& p, Vec2d nu, const T& H, const T& r) {
  using std::sqrt;
  FieldCore<T> c;
  c.f = lift<T>(p.first_normal());
  c.g = lift<T>(nu);
  const auto& a = p.abscissas();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Vec2<T> jump = lift<T>(p.jump(i));
    const T hi = H + a[i];
    const T rho = sqrt(r * r + hi * hi);
    const T inv = 1.0 / rho;
    const T inv3 = inv * inv * inv;
    c.f += (0.5 * (1.0 - hi * inv)) * jump;
    c.g += (0.5 * inv) * jump;
    c.g_H += (-0.5 * hi * inv3) * jump;
    c.k += (-0.5 * inv3) * jump;
  }
  c.V = det(c.g, c.f);
  return c;
}

/// f and g only, optionally de-tuned.
template <class T>
std::pair<Vec2<T>, Vec2<T>> field_fg(const PolytopeData& p, Vec2d nu, const T& H, const T& r,
                                     const Detuning& detune) {
  using std::sqrt;
  Vec2<T> f = lift<T>(p.first_normal());
  Vec2<T> sum{};
  const auto& a = p.abscissas();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Vec2<T> jump = lift<T>(p.jump(i));
    const T hi = H + a[i];
    const T rho = sqrt(r * r + hi * hi);
    f += (0.5 * (1.0 - hi / rho)) * jump;
    sum += (0.5 / rho) * jump;
  }
  Vec2<T> g = lift<T>(nu + detune.g_offset) + detune.g_jump_scale * sum;
  return {f, g};
}

/// xi = nu_1 log r + 1/2 sum (nu_{i+1} - nu_i) log(H_i + rho_i) + nu H, r > 0.
template <class T>
Vec2<T> xi_value(const PolytopeData& p, Vec2d nu, const T& H, const T& r,
                 const Detuning& detune = {}) {
  using std::log;
  using std::sqrt;
  Vec2<T> xi = log(r) * lift<T>(p.first_normal());
  xi += H * lift<T>(nu);
  const auto& a = p.abscissas();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const T hi = H + a[i];
    const T rho = sqrt(r * r + hi * hi);
    const double s = i == 0 ? detune.xi_first_rho_scale : 1.0;
    // H_i + rho_i = r^2 / (rho_i - H_i) avoids cancellation for H_i < 0.
    const T term = s != 1.0 ? log(hi + s * rho) : value_of(hi) < 0.0 ? log(r * r / (rho - hi)) : log(hi + rho);
    const double scale = i == 0 ? 0.5 * detune.xi_first_log_scale : 0.5;
    xi += (scale * term) * lift<T>(p.jump(i));
  }
  return xi;
}

/// Connection blocks M_H = d_H(Hess u) Hess^{-1} u and rM_r = r d_r(Hess u) Hess^{-1} u,
/// written in regular form so that r = 0 needs no special casing.
template <class T>
struct ConnectionBlocks {
  Mat2<T> M_H;
  Mat2<T> rMr;
};

template <class T>
ConnectionBlocks<T> connection_blocks(const FieldCore<T>& c, const T& r) {
  const auto& f = c.f;
  const auto& g = c.g;
  const auto& gH = c.g_H;
  const auto& k = c.k;
  const T& V = c.V;
  const T r2 = r * r;
  const T inv_v2 = 1.0 / (V * V);
  const Vec2<T> fp = perp(f);
  const Vec2<T> gp = perp(g);

  const T det_gH_f = det(gH, f);
  const T det_gH_g = det(gH, g);
  const T det_k_f = det(k, f);
  const T det_g_k = det(g, k);

  const T v_H = det_gH_f + r2 * det_g_k;
  Mat2<T> mh = V * outer(gH, fp) + (r2 * det_gH_g) * outer(g, gp) + det_gH_f * outer(g, fp) -
               (r2 * V) * outer(k, gp) - (r2 * det_g_k) * outer(f, gp) + det_k_f * outer(f, fp);
  mh = inv_v2 * mh - (v_H / V) * Mat2<T>::identity();

  Mat2<T> rm = (r2 * V) * outer(k, fp) - (r2 * r2 * det_g_k) * outer(g, gp) +
               (r2 * det_k_f) * outer(g, fp) + (r2 * V) * outer(gH, gp) -
               (r2 * det_gH_g) * outer(f, gp) - det_gH_f * outer(f, fp) + (2.0 * V) * outer(f, gp);
  rm = inv_v2 * rm - (r2 * (det_k_f + det_gH_g) / V) * Mat2<T>::identity();
  return {mh, rm};
}

/// Pointwise metric-level data. Dxi, hess_u and xi exist only for r > 0.
struct FieldEval {
  FieldPoint pt;
  std::optional<Vec2d> xi;
  Vec2d f, g;
  Vec2d f_H, f_r, g_H, g_r;
  double V = 0.0;
  std::vector<double> rho;
  std::optional<Mat2d> Dxi;
  std::optional<Mat2d> hess_u;
};

FieldEval eval_fields(const PolytopeData& p, const TaubNutParameter& nu, FieldPoint pt);

struct MatrixEval {
  Mat2d M_H, rMr;
  Mat2d dM_H_dH, dM_H_dr;
  Mat2d drMr_dH, drMr_dr;
};

MatrixEval eval_matrices(const PolytopeData& p, const TaubNutParameter& nu, FieldPoint pt);

/// Coefficients of a 1-form c_H dH + c_r dr on the half-plane.
struct OneForm {
  double dH = 0.0;
  double dr = 0.0;

  /// Value on the vector (tH, tr).
  double on(double tH, double tr) const { return dH * tH + dr * tr; }
};

/// Det(dg, g) / V^2, whose boundary integral gives the c_1^2 integral.
OneForm c1_form(const PolytopeData& p, const TaubNutParameter& nu, FieldPoint pt);

/// The boundary 1-form T whose integral over the half-disk boundary gives the
/// Pontryagin integral, assembled from the connection blocks.
OneForm t_form(const PolytopeData& p, const TaubNutParameter& nu, FieldPoint pt);

/// Axisymmetric Laplacian xi_HH + xi_rr + xi_r / r, r > 0.
Vec2d laplace_residual(const PolytopeData& p, const TaubNutParameter& nu, FieldPoint pt,
                       const Detuning& detune = {});

}  // namespace calabi
