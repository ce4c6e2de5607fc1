#pragma once

#include <map>
#include <string>
#include <vector>

#include "calabi/fields.hpp"
#include "calabi/parallel.hpp"
#include "calabi/polytope.hpp"
#include "calabi/quadrature.hpp"

namespace calabi {

/// Closed-form restrictions of V, V_H, V_HH and G = Det(g_H, g) to the
/// boundary line r = 0. Every sum is piecewise rational in H with poles only
/// at the breakpoints -a_i, where the evaluators throw SingularPoint.
class BoundaryProfile {
 public:
  BoundaryProfile(const PolytopeData& p, const TaubNutParameter& nu);

  double V(double H) const;
  double V_H(double H) const;
  double V_HH(double H) const;
  double G(double H) const;

  double G_over_V2(double H) const;
  double VH_over_V2(double H) const;

  /// Breakpoints -a_{d-1} < ... < -a_1, ascending.
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  struct Signs {
    std::vector<double> s;     // sign(H_i)
    std::vector<double> absh;  // |H_i|
  };
  Signs signs(double H) const;

  std::vector<double> a_;
  std::vector<double> breakpoints_;
  double det_nu_nu1_;
  std::vector<double> det_nu_jump_;   // Det(nu, J_i)
  std::vector<double> det_nu1_jump_;  // Det(nu_1, J_i)
  std::vector<double> det_jump_;      // Det(J_i, J_j), row-major
};

struct EdgeLimit {
  std::size_t index = 0;  // i, 1-based
  double point = 0.0;     // -a_i
  double left = 0.0;      // lim V_H/V^2 as H -> -a_i from below
  double right = 0.0;     // ... from above

  friend bool operator==(const EdgeLimit&, const EdgeLimit&) = default;
};

struct EdgeLimits {
  std::vector<EdgeLimit> breakpoints;  // i = 1 .. d-1
  double minus_infinity = 0.0;
  double plus_infinity = 0.0;

  friend bool operator==(const EdgeLimits&, const EdgeLimits&) = default;
};

/// Closed-form one-sided limits of V_H / V^2: +2 / Det(J_i, nu_{i+1}) from the
/// left of -a_i, -2 / Det(J_i, nu_i) from the right; at the infinite ends 0
/// when nu != 0 and -+2 / Det(nu_d - nu_1, nu_1) (at +inf / -inf) when nu = 0.
EdgeLimits edge_limits(const PolytopeData& p, const TaubNutParameter& nu);

struct CurvatureReport {
  double c1_squared = 0.0;
  double pontryagin = 0.0;
  double c2 = 0.0;
  double calabi_energy = 0.0;
  /// Interval i = (-a_i, -a_{i-1}) for i = 1..d with -a_0 = +inf, -a_d = -inf.
  std::vector<double> boundary_terms;      // [2 V_H / V^2] over interval i
  std::vector<double> interval_integrals;  // integral of G / V^2 over interval i
  EdgeLimits edge_limits;
  double quadrature_error = 0.0;
  std::map<std::string, double> diagnostics;

  friend bool operator==(const CurvatureReport&, const CurvatureReport&) = default;
};

CurvatureReport compute_invariants(const PolytopeData& p, const TaubNutParameter& nu, double tol = 1e-10,
                                   Exec exec = Exec::parallel);

struct ClosedForm {
  double c1_squared = 0.0;
  double pontryagin = 0.0;
  double calabi_energy = 0.0;
};

/// Exact values for the cyclic family with normals (k-1, -(k-2)).
ClosedForm cyclic_closed_form(int d, Vec2d nu);

enum class LineMode { simplified, assembled };

/// dH-coefficient of T on r = 0: simplified is
/// 4 G / V^2 + 2 (V_HH / V^2 - 2 V_H^2 / V^3); assembled evaluates the full
/// 1-form from the connection blocks.
double line_integrand_T(const PolytopeData& p, const TaubNutParameter& nu, double H,
                        LineMode mode = LineMode::simplified);
double line_integrand_T(const BoundaryProfile& profile, double H);

enum class ArcForm { c1, T };

/// Integral of the chosen 1-form over the half circle H = R cos(phi),
/// r = R sin(phi), phi from 0 to pi. Needs R > max|a_i| + 1.
QuadratureResult arc_integral(const PolytopeData& p, const TaubNutParameter& nu, double R, ArcForm which,
                              double tol = 1e-10);

/// Independent route to the Pontryagin integral: quadrature of the assembled
/// line integrand over the whole boundary line plus the large-radius limit of
/// the arc integral of T, compared with the edge-limit assembly.
struct PipelineCheck {
  double assembly = 0.0;
  double line_integral = 0.0;
  double line_error = 0.0;
  std::vector<double> radii;
  std::vector<double> arc_values;
  double arc_limit = 0.0;
  double direct = 0.0;
  double relative_difference = 0.0;
};

PipelineCheck pipeline_cross_check(const PolytopeData& p, const TaubNutParameter& nu, double tol = 1e-10,
                                   std::vector<double> radii = {25.0, 50.0, 100.0, 200.0, 400.0},
                                   Exec exec = Exec::parallel);

}  // namespace calabi
