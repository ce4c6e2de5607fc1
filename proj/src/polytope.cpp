#include "calabi/polytope.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "calabi/error.hpp"

namespace calabi {

namespace {

std::string show(const IntVec2& v) {
  std::ostringstream os;
  os << "(" << v.a << "," << v.b << ")";
  return os.str();
}

}  // namespace

PolytopeData::PolytopeData(std::vector<IntVec2> normals, std::vector<double> a)
    : normals_(std::move(normals)), a_(std::move(a)) {
  const std::size_t d = normals_.size();
  if (d < 2) {
    throw Error(ErrorCode::TooFewEdges, "need at least 2 edge normals, got " + std::to_string(d));
  }
  for (std::size_t i = 0; i < d; ++i) {
    const auto& n = normals_[i];
    if (std::gcd(n.a, n.b) != 1) {
      throw Error(ErrorCode::NonPrimitiveNormal, "normal " + std::to_string(i + 1) + " = " + show(n));
    }
  }
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!std::isfinite(a_[i])) {
      throw Error(ErrorCode::InvalidInput, "abscissa " + std::to_string(i + 1) + " is not finite");
    }
    if (i > 0 && !(a_[i] > a_[i - 1])) {
      throw Error(ErrorCode::NonIncreasingAbscissas,
                  "a_" + std::to_string(i + 1) + " <= a_" + std::to_string(i));
    }
  }
  if (det(normals_.front(), normals_.back()) == 0) {
    throw Error(ErrorCode::ParallelUnboundedEdges,
                "Det(nu_1, nu_d) = 0 for " + show(normals_.front()) + ", " + show(normals_.back()));
  }
  int sign = 0;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    if (normals_[i] == normals_[i + 1]) {
      throw Error(ErrorCode::NonConvexOrdering, "nu_" + std::to_string(i + 2) + " repeats nu_" +
                                                    std::to_string(i + 1));
    }
    const std::int64_t c = det(normals_[i], normals_[i + 1]);
    const int s = (c > 0) - (c < 0);
    if (s == 0 || (sign != 0 && s != sign)) {
      throw Error(ErrorCode::NonConvexOrdering,
                  "Det(nu_" + std::to_string(i + 1) + ", nu_" + std::to_string(i + 2) + ") = " +
                      std::to_string(c) + " breaks the common sign of consecutive determinants");
    }
    sign = s;
  }
  if (a_.size() != d - 1) {
    throw Error(ErrorCode::InvalidInput, "expected " + std::to_string(d - 1) + " abscissas, got " +
                                             std::to_string(a_.size()));
  }
  jumps_.reserve(d - 1);
  for (std::size_t i = 0; i + 1 < d; ++i) jumps_.push_back(normal(i + 1) - normal(i));
}

PolytopeData PolytopeData::translated(double shift) const {
  std::vector<double> a = a_;
  for (double& x : a) x += shift;
  return PolytopeData(normals_, std::move(a));
}

PolytopeData cyclic_resolution(int d, double spacing) {
  if (d < 2) throw Error(ErrorCode::TooFewEdges, "cyclic resolution needs d >= 2, got " + std::to_string(d));
  if (!(spacing > 0.0)) throw Error(ErrorCode::InvalidInput, "spacing must be positive");
  std::vector<IntVec2> normals;
  std::vector<double> a;
  for (int k = 1; k <= d; ++k) normals.push_back({k - 1, -(k - 2)});
  for (int i = 1; i < d; ++i) a.push_back(i * spacing);
  return PolytopeData(std::move(normals), std::move(a));
}

TaubNutParameter validate_parameter(const PolytopeData& p, Vec2d nu) {
  if (!std::isfinite(nu.a) || !std::isfinite(nu.b)) {
    throw Error(ErrorCode::InvalidInput, "parameter must be finite");
  }
  if (nu.a == 0.0 && nu.b == 0.0) return TaubNutParameter(nu, MetricBranch::ALE);
  const double first = det(nu, p.first_normal());
  const double last = det(nu, p.last_normal());
  if (!(first > 0.0)) {
    throw Error(ErrorCode::NotAdmissible, "Det(nu, nu_1) = " + std::to_string(first) + " is not > 0");
  }
  if (!(last > 0.0)) {
    throw Error(ErrorCode::NotAdmissible, "Det(nu, nu_d) = " + std::to_string(last) + " is not > 0");
  }
  return TaubNutParameter(nu, MetricBranch::TaubNut);
}

}  // namespace calabi
