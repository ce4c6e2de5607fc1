#include <doctest.h>

#include <cmath>

#include "calabi/error.hpp"
#include "calabi/verify.hpp"
#include "fleet.hpp"

using namespace calabi;
using calabi::testing::fleet;

TEST_CASE("scalar curvature examples") {
  const PolytopeData two = calabi::testing::two_edge();
  CHECK(std::abs(scalar_curvature(two, validate_parameter(two, {0, 0}), {0.3, 0.8})) <= 1e-8);
  const CurvatureAt flat = curvature_at(two, {0, 0}, {0.3, 0.8});
  CHECK(flat.ricci_max <= 1e-8);

  const PolytopeData p = cyclic_resolution(3);
  const TaubNutParameter nu = validate_parameter(p, {1, -0.9});
  CHECK(std::abs(scalar_curvature(p, nu, {0.0, 1.0})) <= 1e-8);
  CHECK_THROWS_AS(scalar_curvature(p, nu, {0.0, 0.0}), Error);
}

TEST_CASE("scalar curvature de-tuning") {
  const PolytopeData p = cyclic_resolution(3);
  // Adding a constant to g is a shift of nu: still scalar-flat.
  Detuning shift;
  shift.g_offset = {0.1, 0.0};
  CHECK(std::abs(curvature_at(p, {1, -0.9}, {0.0, 1.0}, shift).scalar) <= 1e-8);

  Detuning scaled;
  scaled.g_jump_scale = 1.1;
  CHECK(std::abs(curvature_at(p, {1, -0.9}, {0.0, 1.0}, scaled).scalar) > 1e-3);
}

TEST_CASE("scalar flatness across the fleet") {
  for (const auto& m : fleet()) {
    CAPTURE(m.name);
    double worst = 0.0;
    for (FieldPoint pt : halton_points(m.polytope, 50))
      worst = std::max(worst, std::abs(scalar_curvature(m.polytope, m.nu, pt)));
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("Ricci-flat line has vanishing Ricci tensor") {
  for (int d = 2; d <= 5; ++d) {
    const PolytopeData p = cyclic_resolution(d);
    for (FieldPoint pt : halton_points(p, 10)) CHECK(curvature_at(p, {1, -1}, pt).ricci_max <= 1e-8);
  }
}

TEST_CASE("pointwise identities across the fleet") {
  IdentityResiduals all;
  for (const auto& m : fleet()) {
    const IdentityResiduals r =
        check_identities(m.polytope, m.nu, halton_points(m.polytope, 200), boundary_samples(m.polytope, 100));
    all.merge(r);
  }
  CHECK(all.min_V > 0.0);
  CHECK(all.det_hess <= 1e-10);
  CHECK(all.hess_symmetry <= 1e-12);
  CHECK(all.hess_vs_dxi <= 1e-12);
  CHECK(all.cauchy_riemann <= 1e-12);
  CHECK(all.derivative_vs_autodiff <= 1e-12);
  CHECK(all.dxi_vs_autodiff <= 1e-12);
  CHECK(all.laplace <= 1e-10);
  CHECK(all.trace_rMr2 <= 1e-10);
  CHECK(all.trace_MH_rMr <= 1e-10);
  CHECK(all.trace_MH_drMr <= 1e-10);
}

TEST_CASE("sample generators") {
  const PolytopeData p = cyclic_resolution(4);
  const auto pts = halton_points(p, 100);
  CHECK(pts.size() == 100);
  for (const auto& pt : pts) {
    CHECK(pt.r >= 0.1);
    CHECK(pt.r <= 4.0);
  }
  for (double H : boundary_samples(p, 100))
    for (double ai : p.abscissas()) CHECK(std::abs(H + ai) >= 0.05);
}

TEST_CASE("decay profiles") {
  const std::vector<double> radii{25, 50, 100, 200, 400};
  // The T sup reaches its R^-2 regime later than the c1 integrand.
  const std::vector<double> tail_radii{100, 200, 400, 800, 1600};
  const PolytopeData p = cyclic_resolution(3);
  const DecayFit c1 = decay_profile(p, validate_parameter(p, {1, -0.9}), DecayQuantity::c1_arc_integrand_sup, radii);
  CHECK_FALSE(c1.skipped);
  CHECK(c1.fitted_exponent <= -1.9);

  const PolytopeData two = calabi::testing::two_edge();
  const DecayFit t = decay_profile(two, validate_parameter(two, {0, 0}), DecayQuantity::T_arc_integrand_sup, radii);
  CHECK(t.skipped);
  for (double v : t.values) CHECK(v <= 1e-12);

  const DecayFit vh = decay_profile(p, validate_parameter(p, {0, 0}), DecayQuantity::V_H_over_V2, radii);
  CHECK(std::abs(vh.values.back() + 1.0) < std::abs(vh.values.front() + 1.0));
  CHECK(std::abs(vh.values.back() + 1.0) < 1e-2);

  for (const auto& m : fleet()) {
    if (m.nu.is_zero()) continue;
    CAPTURE(m.name);
    const DecayFit tf = decay_profile(m.polytope, m.nu, DecayQuantity::T_arc_integrand_sup, tail_radii);
    CHECK((tf.skipped || tf.fitted_exponent <= -1.9));
  }
  CHECK_THROWS_AS(decay_profile(p, validate_parameter(p, {0, 0}), DecayQuantity::V_H_over_V2, {2.0}), Error);
}

TEST_CASE("polygon reconstruction") {
  const PolytopeData p = cyclic_resolution(3);
  const auto edges = reconstruct_polygon(p, validate_parameter(p, {1, -0.9}));
  REQUIRE(edges.size() == 1);
  CHECK(std::abs(edges[0].vector.a) < 1e-10);
  CHECK(std::abs(edges[0].vector.b + 1.0) < 1e-10);

  const PolytopeData two = calabi::testing::two_edge();
  CHECK(reconstruct_polygon(two, validate_parameter(two, {0, 0})).empty());

  for (const auto& m : fleet()) {
    for (const auto& e : reconstruct_polygon(m.polytope, m.nu)) {
      CHECK(std::abs(dot(e.vector, e.normal)) < 1e-10);
      CHECK(e.deviation < 1e-10);
    }
  }

  const PolytopeData wide = build_polytope({{0, 1}, {1, 0}, {3, -1}}, {1, 3});
  const auto a = reconstruct_polygon(calabi::testing::non_cyclic(),
                                     validate_parameter(calabi::testing::non_cyclic(), {1, -0.5}));
  const auto b = reconstruct_polygon(wide, validate_parameter(wide, {1, -0.5}));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(b[i].vector.a - 2.0 * a[i].vector.a) < 1e-10);
    CHECK(std::abs(b[i].vector.b - 2.0 * a[i].vector.b) < 1e-10);
  }
}

TEST_CASE("serial and parallel identity checks agree") {
  const PolytopeData p = cyclic_resolution(4);
  const TaubNutParameter nu = validate_parameter(p, {1, -1.2});
  const auto pts = halton_points(p, 64);
  const auto hs = boundary_samples(p, 32);
  const IdentityResiduals a = check_identities(p, nu, pts, hs, Exec::serial);
  const IdentityResiduals b = check_identities(p, nu, pts, hs, Exec::parallel);
  CHECK(a.det_hess == b.det_hess);
  CHECK(a.laplace == b.laplace);
  CHECK(a.trace_MH_rMr == b.trace_MH_rMr);
}
