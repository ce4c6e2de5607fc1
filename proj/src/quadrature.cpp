#include "calabi/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "calabi/error.hpp"

#if defined(CALABI_HAVE_OPENMP)
#include <omp.h>
#endif

namespace calabi {

namespace {

// Kronrod abscissae on [0, 1]; odd indices (and the centre) are the Gauss points.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

double sample(const Integrand& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream os;
    os.precision(17);
    os << "integrand returned " << y << " at " << x;
    throw Error(ErrorCode::NonFiniteSample, os.str());
  }
  return y;
}

// A piece of the integration domain in its own variable: either H itself, or
// t in (0, 1] with H = base + sign / t.
struct Piece {
  double lo;
  double hi;
  bool tail = false;
  double base = 0.0;
  double sign = 1.0;
};

double piece_integrand(const Integrand& f, const Piece& piece, double x) {
  if (!piece.tail) return sample(f, x);
  const double h = piece.base + piece.sign / x;
  return sample(f, h) / (x * x);
}

std::vector<Piece> pieces_for(double lo, double hi) {
  const bool lo_inf = std::isinf(lo);
  const bool hi_inf = std::isinf(hi);
  if (lo_inf && hi_inf) {
    return {{0.0, 1.0, true, 0.0, -1.0}, {-1.0, 1.0}, {0.0, 1.0, true, 0.0, 1.0}};
  }
  if (hi_inf) return {{lo, lo + 1.0}, {0.0, 1.0, true, lo, 1.0}};
  if (lo_inf) return {{0.0, 1.0, true, hi, -1.0}, {hi - 1.0, hi}};
  return {{lo, hi}};
}

struct Panel {
  std::size_t piece;
  double lo;
  double hi;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    if (x.piece != y.piece) return x.piece > y.piece;
    return x.lo > y.lo;
  }
};

// Neumaier-compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

int parallel_threads() {
#if defined(CALABI_HAVE_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

QuadratureResult gauss_kronrod15(const Integrand& f, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = sample(f, centre);
  double res_g = fc * kWg[3];
  double res_k = fc * kWgk[7];
  double res_abs = std::fabs(res_k);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = sample(f, centre - dx);
    f2[j] = sample(f, centre + dx);
    const double pair = f1[j] + f2[j];
    res_k += kWgk[j] * pair;
    res_abs += kWgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
    if (j % 2 == 1) res_g += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * res_k;
  double res_asc = kWgk[7] * std::fabs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    res_asc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
  }
  const double scale = std::fabs(half);
  res_abs *= scale;
  res_asc *= scale;
  double err = std::fabs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  if (res_abs > tiny / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
  return {res_k * half, err, 1};
}

QuadratureResult integrate(const Integrand& f, double lo, double hi, const QuadratureOptions& opts) {
  if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
    throw Error(ErrorCode::InvalidInput, "integration bounds must satisfy lo < hi");
  }
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::InvalidInput, "tolerance must be positive");
  const std::vector<Piece> pieces = pieces_for(lo, hi);

  auto evaluate = [&](std::size_t index, double a, double b) {
    const Piece& piece = pieces[index];
    const QuadratureResult r =
        gauss_kronrod15([&](double x) { return piece_integrand(f, piece, x); }, a, b);
    return Panel{index, a, b, r.value, r.abs_error_estimate};
  };

  std::priority_queue<Panel, std::vector<Panel>, ByError> active;
  std::vector<Panel> settled;  // too narrow to bisect further
  double total_error = 0.0;
  int panels = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Panel p = evaluate(i, pieces[i].lo, pieces[i].hi);
    total_error += p.error;
    ++panels;
    active.push(p);
  }

  while (total_error > opts.tol && panels < opts.panel_budget && !active.empty()) {
    const Panel worst = active.top();
    active.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi) ||
        (worst.hi - worst.lo) < 64.0 * std::numeric_limits<double>::epsilon() *
                                    std::max(std::fabs(worst.lo), std::fabs(worst.hi))) {
      settled.push_back(worst);
      continue;
    }
    const Panel left = evaluate(worst.piece, worst.lo, mid);
    const Panel right = evaluate(worst.piece, mid, worst.hi);
    ++panels;
    total_error += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
  }

  std::vector<Panel> all = std::move(settled);
  while (!active.empty()) {
    all.push_back(active.top());
    active.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) {
    return x.piece != y.piece ? x.piece < y.piece : x.lo < y.lo;
  });
  CompensatedSum value;
  CompensatedSum error;
  for (const Panel& p : all) {
    value.add(p.value);
    error.add(p.error);
  }
  QuadratureResult out{value.value(), error.value(), static_cast<int>(all.size())};
  if (!(out.abs_error_estimate <= opts.tol)) {
    std::ostringstream os;
    os.precision(3);
    os << "error estimate " << out.abs_error_estimate << " exceeds tol " << opts.tol << " after "
       << out.panels << " panels";
    throw Error(ErrorCode::QuadratureFailure, os.str());
  }
  return out;
}

std::vector<QuadratureResult> integrate_intervals(const Integrand& f, std::span<const double> breakpoints,
                                                  const QuadratureOptions& opts, Exec exec) {
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1])) {
      throw Error(ErrorCode::InvalidInput, "breakpoints must be strictly increasing");
    }
  }
  const std::size_t n = breakpoints.size() + 1;
  QuadratureOptions local = opts;
  local.tol = opts.tol / static_cast<double>(n);
  constexpr double inf = std::numeric_limits<double>::infinity();
  return map_indexed<QuadratureResult>(
      n,
      [&](std::size_t i) {
        const double lo = i == 0 ? -inf : breakpoints[i - 1];
        const double hi = i + 1 == n ? inf : breakpoints[i];
        return integrate(f, lo, hi, local);
      },
      exec);
}

QuadratureResult integrate_line(const Integrand& f, std::span<const double> breakpoints, double tol,
                                Exec exec) {
  QuadratureOptions opts;
  opts.tol = tol;
  const auto parts = integrate_intervals(f, breakpoints, opts, exec);
  CompensatedSum value;
  QuadratureResult out;
  for (const auto& p : parts) {
    value.add(p.value);
    out.abs_error_estimate += p.abs_error_estimate;
    out.panels += p.panels;
  }
  out.value = value.value();
  return out;
}

LimitResult richardson_extrapolate(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw Error(ErrorCode::InvalidInput, "need at least two samples to extrapolate");
  // table[k][j]: j-fold extrapolant built from samples k-j .. k.
  std::vector<std::vector<double>> table(n);
  double best = std::numeric_limits<double>::quiet_NaN();
  double best_err = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    auto& row = table[k];
    row.push_back(samples[k]);
    if (k == 0) continue;
    const auto& prev = table[k - 1];
    double factor = 1.0;
    for (std::size_t j = 1; j <= k; ++j) {
      factor *= 2.0;
      const double next = row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1.0);
      row.push_back(next);
      const double err = std::max(std::fabs(next - row[j - 1]), std::fabs(next - prev[j - 1]));
      if (err <= best_err) {
        best_err = err;
        best = next;
      }
    }
  }
  return {best, best_err};
}

LimitResult one_sided_limit_ext(const Integrand& f, double point, Side side, const LimitOptions& opts) {
  if (opts.levels < 2) throw Error(ErrorCode::InvalidInput, "need at least two extrapolation levels");
  const double dir = side == Side::left ? -1.0 : 1.0;
  std::vector<double> samples;
  double eps = opts.eps0;
  for (int k = 0; k < opts.levels; ++k, eps *= 0.5) samples.push_back(sample(f, point + dir * eps));
  const LimitResult out = richardson_extrapolate(samples);
  if (!std::isfinite(out.value) || out.error_estimate > opts.tol * std::max(1.0, std::fabs(out.value))) {
    std::ostringstream os;
    os.precision(3);
    os << "extrapolants did not settle (best error " << out.error_estimate << ")";
    throw Error(ErrorCode::NoConvergence, os.str());
  }
  return out;
}

LimitResult limit_at_infinity(const Integrand& f, int sign, const LimitOptions& opts) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  return one_sided_limit_ext([&](double t) { return f(s / t); }, 0.0, Side::right, opts);
}

}  // namespace calabi
