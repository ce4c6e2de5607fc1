#pragma once

#include <array>
#include <vector>

#include "calabi/fields.hpp"
#include "calabi/parallel.hpp"
#include "calabi/polytope.hpp"

namespace calabi {

/// Curvature of the 4-metric diag(V, V, Hess^{-1} u) in coordinates (H, r, theta_1, theta_2).
struct CurvatureAt {
  double scalar = 0.0;
  std::array<std::array<double, 4>, 4> ricci{};
  double ricci_max = 0.0;
};

CurvatureAt curvature_at(const PolytopeData& p, Vec2d nu, FieldPoint pt, const Detuning& detune = {});

/// Scalar curvature at an interior point (r > 0).
double scalar_curvature(const PolytopeData& p, const TaubNutParameter& nu, FieldPoint pt);

/// Deterministic quasi-random interior points: Halton bases 2 and 3 mapped to
/// H in [-a_{d-1} - 3, -a_1 + 3] and r in [0.1, 4].
std::vector<FieldPoint> halton_points(const PolytopeData& p, std::size_t count, std::size_t skip = 1);

/// H values on r = 0 spread over [-a_{d-1} - 3, -a_1 + 3], at least 0.05 away from every -a_i.
std::vector<double> boundary_samples(const PolytopeData& p, std::size_t count);

/// Worst-case residuals of the pointwise identities over a sample.
struct IdentityResiduals {
  std::size_t interior_points = 0;
  std::size_t boundary_points = 0;
  double min_V = 0.0;
  double det_hess = 0.0;            // |det(Hess u) r^2 - 1|
  double hess_symmetry = 0.0;
  double hess_vs_dxi = 0.0;         // |Hess u - Dxi Dxi^T / V|
  double cauchy_riemann = 0.0;      // f_H - r g_r and f_r + r g_H, from autodiff of f, g
  double derivative_vs_autodiff = 0.0;
  double dxi_vs_autodiff = 0.0;
  double laplace = 0.0;
  double trace_rMr2 = 0.0;          // |Tr(rM_r^2) - 4| at r = 0
  double trace_MH_rMr = 0.0;        // |Tr(M_H rM_r) - 2 Det(g_H, f) / V| at r = 0
  double trace_MH_drMr = 0.0;       // |Tr(M_H d_H(rM_r))| at r = 0

  void merge(const IdentityResiduals& other);
};

IdentityResiduals check_identities(const PolytopeData& p, const TaubNutParameter& nu,
                                   const std::vector<FieldPoint>& interior, const std::vector<double>& boundary,
                                   Exec exec = Exec::parallel);

/// Least-squares slope of log|value| against log R.
double fit_exponent(const std::vector<double>& radii, const std::vector<double>& values);

enum class DecayQuantity { c1_arc_integrand_sup, T_arc_integrand_sup, V_H_over_V2 };

struct DecayFit {
  std::vector<double> radii;
  std::vector<double> values;
  double fitted_exponent = 0.0;
  bool skipped = false;  // every value below 1e-12
};

/// Sup over 256 arc samples of the 1-form on the unit tangent of C_R, or
/// V_H / V^2 at (R, 0); least-squares slope of log|value| against log R.
DecayFit decay_profile(const PolytopeData& p, const TaubNutParameter& nu, DecayQuantity which,
                       std::vector<double> radii, Exec exec = Exec::parallel);

struct ReconstructedEdge {
  std::size_t index = 0;  // bounded interval (-a_{index+1}, -a_index), 1-based
  Vec2d normal;
  Vec2d vector;       // integral of perp(f) along r = 0
  Vec2d closed_form;  // (a_{index+1} - a_index) perp(nu_{index+1})
  double deviation = 0.0;
};

std::vector<ReconstructedEdge> reconstruct_polygon(const PolytopeData& p, const TaubNutParameter& nu);

}  // namespace calabi
