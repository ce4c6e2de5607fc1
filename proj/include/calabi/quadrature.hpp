#pragma once

#include <functional>
#include <span>
#include <vector>

#include "calabi/parallel.hpp"

namespace calabi {

using Integrand = std::function<double(double)>;

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int panels = 0;
};

struct QuadratureOptions {
  double tol = 1e-10;  // absolute
  int panel_budget = 10000;
};

/// One 7-15 Gauss-Kronrod rule on [lo, hi]; the error estimate uses the
/// QUADPACK scaling of |K15 - G7|.
QuadratureResult gauss_kronrod15(const Integrand& f, double lo, double hi);

/// Adaptive integral over (lo, hi); either end may be +-infinity. Infinite ends
/// are mapped by H = b +- 1/t onto t in (0, 1] with a unit bounded panel next
/// to b. Throws QuadratureFailure when the estimate exceeds tol after the panel
/// budget, NonFiniteSample when f returns a non-finite value.
QuadratureResult integrate(const Integrand& f, double lo, double hi, const QuadratureOptions& opts = {});

/// Integrals over the n+1 open intervals of the real line cut at the sorted
/// breakpoints, left to right. Each interval gets tol / (n+1).
std::vector<QuadratureResult> integrate_intervals(const Integrand& f, std::span<const double> breakpoints,
                                                  const QuadratureOptions& opts = {},
                                                  Exec exec = Exec::parallel);

/// Integral over the real line; the integrand is never sampled at a breakpoint.
QuadratureResult integrate_line(const Integrand& f, std::span<const double> breakpoints,
                                double tol = 1e-10, Exec exec = Exec::parallel);

enum class Side { left, right };

struct LimitOptions {
  double eps0 = 1e-2;
  int levels = 11;
  double tol = 1e-8;  // relative to max(1, |limit|)
};

struct LimitResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Richardson extrapolation of a sequence sampled at steps h0 2^-k, assuming
/// an expansion in integer powers of h. Returns the extrapolant with the
/// smallest error estimate.
LimitResult richardson_extrapolate(std::span<const double> samples);

/// Richardson extrapolation of f(point -+ eps_k), eps_k = eps0 2^-k.
/// Throws NoConvergence when the extrapolants do not settle within tol.
LimitResult one_sided_limit_ext(const Integrand& f, double point, Side side, const LimitOptions& opts = {});

inline double one_sided_limit(const Integrand& f, double point, Side side, const LimitOptions& opts = {}) {
  return one_sided_limit_ext(f, point, side, opts).value;
}

/// Limit of f(H) as H -> +inf (sign > 0) or -inf (sign < 0), via t = 1/|H|.
LimitResult limit_at_infinity(const Integrand& f, int sign, const LimitOptions& opts = {});

}  // namespace calabi
