#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "calabi/linalg.hpp"

namespace calabi {

struct IntVec2 {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend bool operator==(const IntVec2&, const IntVec2&) = default;
  Vec2d to_real() const { return {static_cast<double>(a), static_cast<double>(b)}; }
};

inline std::int64_t det(const IntVec2& u, const IntVec2& v) { return u.a * v.b - u.b * v.a; }

/// Validated moment-polygon data: edge normals nu_1..nu_d (ordered) and the
/// abscissas a_1 < ... < a_{d-1} of the points (-a_i, 0) where consecutive
/// edges meet on the boundary of the half-plane.
class PolytopeData {
 public:
  /// Validates and throws calabi::Error on any violated invariant.
  PolytopeData(std::vector<IntVec2> normals, std::vector<double> a);

  std::size_t edge_count() const { return normals_.size(); }
  const std::vector<IntVec2>& normals() const { return normals_; }
  const std::vector<double>& abscissas() const { return a_; }

  Vec2d normal(std::size_t i) const { return normals_[i].to_real(); }
  /// nu_{i+1} - nu_i for i in [0, d-1).
  Vec2d jump(std::size_t i) const { return jumps_[i]; }
  std::span<const Vec2d> jumps() const { return jumps_; }

  Vec2d first_normal() const { return normals_.front().to_real(); }
  Vec2d last_normal() const { return normals_.back().to_real(); }

  /// Same polygon with every a_i shifted by `shift`.
  PolytopeData translated(double shift) const;

  friend bool operator==(const PolytopeData& x, const PolytopeData& y) {
    return x.normals_ == y.normals_ && x.a_ == y.a_;
  }

 private:
  std::vector<IntVec2> normals_;
  std::vector<double> a_;
  std::vector<Vec2d> jumps_;
};

inline PolytopeData build_polytope(std::vector<IntVec2> normals, std::vector<double> a) {
  return PolytopeData(std::move(normals), std::move(a));
}

/// Minimal resolution of the cyclic A_{d-1} singularity:
/// nu_k = (k-1, -(k-2)), a_i = i * spacing.
PolytopeData cyclic_resolution(int d, double spacing = 1.0);

enum class MetricBranch { ALE, TaubNut };

class TaubNutParameter {
 public:
  double alpha() const { return nu_.a; }
  double beta() const { return nu_.b; }
  Vec2d vec() const { return nu_; }
  MetricBranch branch() const { return branch_; }
  bool is_zero() const { return branch_ == MetricBranch::ALE; }

  /// Unchecked; only for deliberately de-tuned test fields.
  static TaubNutParameter unchecked(Vec2d nu) {
    return TaubNutParameter(nu, (nu.a == 0.0 && nu.b == 0.0) ? MetricBranch::ALE : MetricBranch::TaubNut);
  }

 private:
  friend TaubNutParameter validate_parameter(const PolytopeData& p, Vec2d nu);
  TaubNutParameter(Vec2d nu, MetricBranch branch) : nu_(nu), branch_(branch) {}

  Vec2d nu_;
  MetricBranch branch_;
};

/// nu = 0 is the ALE branch; otherwise Det(nu, nu_1) > 0 and Det(nu, nu_d) > 0.
TaubNutParameter validate_parameter(const PolytopeData& p, Vec2d nu);

}  // namespace calabi
