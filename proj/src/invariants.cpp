#include "calabi/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "calabi/error.hpp"

namespace calabi {

BoundaryProfile::BoundaryProfile(const PolytopeData& p, const TaubNutParameter& nu)
    : a_(p.abscissas()) {
  const Vec2d v = nu.vec();
  const Vec2d n1 = p.first_normal();
  const std::size_t m = a_.size();
  for (auto it = a_.rbegin(); it != a_.rend(); ++it) breakpoints_.push_back(-*it);
  det_nu_nu1_ = det(v, n1);
  det_jump_.resize(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    det_nu_jump_.push_back(det(v, p.jump(i)));
    det_nu1_jump_.push_back(det(n1, p.jump(i)));
    for (std::size_t j = 0; j < m; ++j) det_jump_[i * m + j] = det(p.jump(i), p.jump(j));
  }
}

BoundaryProfile::Signs BoundaryProfile::signs(double H) const {
  Signs out;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    const double hi = H + a_[i];
    if (!(std::abs(hi) >= kSingularRadius)) {
      std::ostringstream os;
      os.precision(17);
      os << "H = " << H << " coincides with -a_" << i + 1;
      throw Error(ErrorCode::SingularPoint, os.str());
    }
    out.s.push_back(hi > 0.0 ? 1.0 : -1.0);
    out.absh.push_back(std::abs(hi));
  }
  return out;
}

double BoundaryProfile::V(double H) const {
  const Signs sg = signs(H);
  const std::size_t m = a_.size();
  double v = det_nu_nu1_;
  for (std::size_t i = 0; i < m; ++i) {
    v += 0.5 * (1.0 - sg.s[i]) * det_nu_jump_[i];
    v -= 0.5 * det_nu1_jump_[i] / sg.absh[i];
    for (std::size_t j = 0; j < m; ++j) v += 0.25 * (1.0 - sg.s[j]) / sg.absh[i] * det_jump_[i * m + j];
  }
  return v;
}

double BoundaryProfile::V_H(double H) const {
  const Signs sg = signs(H);
  const std::size_t m = a_.size();
  double v = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double wi = (H + a_[i]) / (sg.absh[i] * sg.absh[i] * sg.absh[i]);
    v += 0.5 * wi * det_nu1_jump_[i];
    for (std::size_t j = 0; j < m; ++j) v += 0.25 * wi * (1.0 - sg.s[j]) * det_jump_[j * m + i];
  }
  return v;
}

double BoundaryProfile::V_HH(double H) const {
  const Signs sg = signs(H);
  const std::size_t m = a_.size();
  double v = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double ci = 1.0 / (sg.absh[i] * sg.absh[i] * sg.absh[i]);
    v -= ci * det_nu1_jump_[i];
    for (std::size_t j = 0; j < m; ++j) v -= 0.5 * ci * (1.0 - sg.s[j]) * det_jump_[j * m + i];
  }
  return v;
}

double BoundaryProfile::G(double H) const {
  const Signs sg = signs(H);
  const std::size_t m = a_.size();
  double v = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double wi = (H + a_[i]) / (sg.absh[i] * sg.absh[i] * sg.absh[i]);
    v += 0.5 * wi * det_nu_jump_[i];
    for (std::size_t j = 0; j < m; ++j) v += 0.25 * wi / sg.absh[j] * det_jump_[j * m + i];
  }
  return v;
}

double BoundaryProfile::G_over_V2(double H) const {
  const double v = V(H);
  return G(H) / (v * v);
}

double BoundaryProfile::VH_over_V2(double H) const {
  const double v = V(H);
  return V_H(H) / (v * v);
}

EdgeLimits edge_limits(const PolytopeData& p, const TaubNutParameter& nu) {
  EdgeLimits out;
  const auto& a = p.abscissas();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Vec2d jump = p.jump(i);
    EdgeLimit e;
    e.index = i + 1;
    e.point = -a[i];
    e.left = 2.0 / det(jump, p.normal(i + 1));
    e.right = -2.0 / det(jump, p.normal(i));
    out.breakpoints.push_back(e);
  }
  if (nu.is_zero()) {
    const double d = det(p.last_normal() - p.first_normal(), p.first_normal());
    out.plus_infinity = -2.0 / d;
    out.minus_infinity = 2.0 / d;
  }
  return out;
}

CurvatureReport compute_invariants(const PolytopeData& p, const TaubNutParameter& nu, double tol, Exec exec) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidInput, "tol must be positive");
  const BoundaryProfile profile(p, nu);
  const std::size_t d = p.edge_count();

  CurvatureReport rep;
  rep.edge_limits = edge_limits(p, nu);
  const auto& lim = rep.edge_limits;

  // Interval i (1-based) is (-a_i, -a_{i-1}); its upper end is approached from below.
  for (std::size_t i = 1; i <= d; ++i) {
    const double upper = i == 1 ? lim.plus_infinity : lim.breakpoints[i - 2].left;
    const double lower = i == d ? lim.minus_infinity : lim.breakpoints[i - 1].right;
    rep.boundary_terms.push_back(2.0 * (upper - lower));
  }

  QuadratureOptions opts;
  opts.tol = tol;
  const auto pieces = integrate_intervals([&](double H) { return profile.G_over_V2(H); },
                                          profile.breakpoints(), opts, exec);
  int panels = 0;
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
    rep.interval_integrals.push_back(it->value);
    rep.quadrature_error += it->abs_error_estimate;
    panels += it->panels;
  }

  double c1 = 0.0, comp = 0.0;
  for (double x : rep.interval_integrals) {
    const double t = c1 + x;
    comp += std::abs(c1) >= std::abs(x) ? (c1 - t) + x : (x - t) + c1;
    c1 = t;
  }
  c1 += comp;
  double boundary = 0.0;
  for (double x : rep.boundary_terms) boundary += x;

  rep.c1_squared = c1;
  rep.pontryagin = boundary + 4.0 * c1;
  rep.calabi_energy = rep.pontryagin - rep.c1_squared;
  rep.c2 = (rep.c1_squared - rep.pontryagin) / 2.0;

  rep.diagnostics["assembly_residual"] = std::abs(rep.calabi_energy - (boundary + 3.0 * c1));
  rep.diagnostics["quadrature_panels"] = panels;

  // G against Det(g_H, g) from the field evaluator at sample points on r = 0.
  std::vector<double> probes;
  const auto& bp = profile.breakpoints();
  probes.push_back(bp.empty() ? -1.0 : bp.front() - 1.0);
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) probes.push_back(0.5 * (bp[i] + bp[i + 1]));
  probes.push_back(bp.empty() ? 1.0 : bp.back() + 1.0);
  double g_dev = 0.0;
  for (double H : probes) {
    const FieldCore<double> c = field_core(p, nu.vec(), H, 0.0);
    g_dev = std::max(g_dev, std::abs(profile.G(H) - det(c.g_H, c.g)));
  }
  rep.diagnostics["G_vs_det_gH_g"] = g_dev;
  return rep;
}

ClosedForm cyclic_closed_form(int d, Vec2d nu) {
  const PolytopeData p = cyclic_resolution(d);
  const TaubNutParameter param = validate_parameter(p, nu);
  const double base = 8.0 * (d - 1);
  ClosedForm out;
  if (param.is_zero()) {
    out.pontryagin = base - 8.0 / (d - 1);
    out.calabi_energy = out.pontryagin;
    return out;
  }
  const double alpha = nu.a;
  const double s = nu.a + nu.b;
  const double x = s * (1.0 / (alpha - s * (d - 1)) - 1.0 / alpha);
  out.c1_squared = x;
  out.pontryagin = base + 4.0 * x;
  out.calabi_energy = base + 3.0 * x;
  return out;
}

double line_integrand_T(const BoundaryProfile& profile, double H) {
  const double v = profile.V(H);
  const double vh = profile.V_H(H);
  const double v2 = v * v;
  return 4.0 * profile.G(H) / v2 + 2.0 * (profile.V_HH(H) / v2 - 2.0 * vh * vh / (v2 * v));
}

double line_integrand_T(const PolytopeData& p, const TaubNutParameter& nu, double H, LineMode mode) {
  if (mode == LineMode::assembled) return t_form(p, nu, {H, 0.0}).dH;
  return line_integrand_T(BoundaryProfile(p, nu), H);
}

namespace {

double arc_floor(const PolytopeData& p) {
  double m = 0.0;
  for (double ai : p.abscissas()) m = std::max(m, std::abs(ai));
  return m + 1.0;
}

}  // namespace

QuadratureResult arc_integral(const PolytopeData& p, const TaubNutParameter& nu, double R, ArcForm which,
                              double tol) {
  if (!(R > arc_floor(p))) {
    std::ostringstream os;
    os << "arc radius " << R << " must exceed max|a_i| + 1 = " << arc_floor(p);
    throw Error(ErrorCode::InvalidInput, os.str());
  }
  auto integrand = [&](double phi) {
    const FieldPoint pt{R * std::cos(phi), R * std::sin(phi)};
    const OneForm w = which == ArcForm::c1 ? c1_form(p, nu, pt) : t_form(p, nu, pt);
    return w.on(-R * std::sin(phi), R * std::cos(phi));
  };
  QuadratureOptions opts;
  opts.tol = tol;
  return integrate(integrand, 0.0, std::numbers::pi, opts);
}

PipelineCheck pipeline_cross_check(const PolytopeData& p, const TaubNutParameter& nu, double tol,
                                   std::vector<double> radii, Exec exec) {
  PipelineCheck out;
  out.assembly = compute_invariants(p, nu, tol, exec).pontryagin;

  const BoundaryProfile profile(p, nu);
  const QuadratureResult line = integrate_line(
      [&](double H) { return line_integrand_T(p, nu, H, LineMode::assembled); }, profile.breakpoints(), tol, exec);
  out.line_integral = line.value;
  out.line_error = line.abs_error_estimate;

  std::sort(radii.begin(), radii.end());
  out.radii = radii;
  out.arc_values = map_indexed<double>(
      radii.size(), [&](std::size_t i) { return arc_integral(p, nu, radii[i], ArcForm::T, tol).value; }, exec);
  out.arc_limit = richardson_extrapolate(out.arc_values).value;

  out.direct = out.line_integral + out.arc_limit;
  out.relative_difference = std::abs(out.direct - out.assembly) / std::max(1.0, std::abs(out.assembly));
  return out;
}

}  // namespace calabi
