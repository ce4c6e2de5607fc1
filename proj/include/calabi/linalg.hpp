#pragma once

#include <array>
#include <cmath>

namespace calabi {

template <class T>
struct Vec2 {
  T a{};
  T b{};
};

using Vec2d = Vec2<double>;

template <class T, class U>
Vec2<T> lift(const Vec2<U>& v) {
  return {T(v.a), T(v.b)};
}

template <class T>
Vec2<T> operator+(const Vec2<T>& u, const Vec2<T>& v) {
  return {u.a + v.a, u.b + v.b};
}
template <class T>
Vec2<T> operator-(const Vec2<T>& u, const Vec2<T>& v) {
  return {u.a - v.a, u.b - v.b};
}
template <class T, class S>
Vec2<T> operator*(const S& s, const Vec2<T>& v) {
  return {v.a * s, v.b * s};
}
template <class T>
Vec2<T>& operator+=(Vec2<T>& u, const Vec2<T>& v) {
  u.a = u.a + v.a;
  u.b = u.b + v.b;
  return u;
}

/// Det(u, v) = u_a v_b - u_b v_a.
template <class T>
T det(const Vec2<T>& u, const Vec2<T>& v) {
  return u.a * v.b - u.b * v.a;
}

/// v^perp = (v_b, -v_a); u . v^perp = Det(u, v).
template <class T>
Vec2<T> perp(const Vec2<T>& v) {
  return {v.b, -v.a};
}

template <class T>
T dot(const Vec2<T>& u, const Vec2<T>& v) {
  return u.a * v.a + u.b * v.b;
}

// Row-major 2x2.
template <class T>
struct Mat2 {
  std::array<T, 4> m{};

  T& operator()(int i, int j) { return m[static_cast<std::size_t>(2 * i + j)]; }
  const T& operator()(int i, int j) const { return m[static_cast<std::size_t>(2 * i + j)]; }

  static Mat2 identity() {
    Mat2 out;
    out.m = {T(1.0), T(0.0), T(0.0), T(1.0)};
    return out;
  }
};

using Mat2d = Mat2<double>;

/// u v^T
template <class T>
Mat2<T> outer(const Vec2<T>& u, const Vec2<T>& v) {
  Mat2<T> out;
  out.m = {u.a * v.a, u.a * v.b, u.b * v.a, u.b * v.b};
  return out;
}

template <class T>
Mat2<T> operator+(const Mat2<T>& x, const Mat2<T>& y) {
  Mat2<T> out;
  for (std::size_t i = 0; i < 4; ++i) out.m[i] = x.m[i] + y.m[i];
  return out;
}
template <class T>
Mat2<T> operator-(const Mat2<T>& x, const Mat2<T>& y) {
  Mat2<T> out;
  for (std::size_t i = 0; i < 4; ++i) out.m[i] = x.m[i] - y.m[i];
  return out;
}
template <class T, class S>
Mat2<T> operator*(const S& s, const Mat2<T>& x) {
  Mat2<T> out;
  for (std::size_t i = 0; i < 4; ++i) out.m[i] = x.m[i] * s;
  return out;
}
template <class T>
Mat2<T> operator*(const Mat2<T>& x, const Mat2<T>& y) {
  Mat2<T> out;
  out(0, 0) = x(0, 0) * y(0, 0) + x(0, 1) * y(1, 0);
  out(0, 1) = x(0, 0) * y(0, 1) + x(0, 1) * y(1, 1);
  out(1, 0) = x(1, 0) * y(0, 0) + x(1, 1) * y(1, 0);
  out(1, 1) = x(1, 0) * y(0, 1) + x(1, 1) * y(1, 1);
  return out;
}

template <class T>
T trace(const Mat2<T>& x) {
  return x(0, 0) + x(1, 1);
}

template <class T>
T determinant(const Mat2<T>& x) {
  return x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0);
}

template <class T>
Mat2<T> inverse(const Mat2<T>& x) {
  const T inv = T(1.0) / determinant(x);
  Mat2<T> out;
  out.m = {x(1, 1) * inv, -x(0, 1) * inv, -x(1, 0) * inv, x(0, 0) * inv};
  return out;
}

template <class T>
Mat2<T> transpose(const Mat2<T>& x) {
  Mat2<T> out;
  out.m = {x(0, 0), x(1, 0), x(0, 1), x(1, 1)};
  return out;
}

inline double max_abs(const Mat2d& x) {
  double out = 0.0;
  for (double e : x.m) out = std::fmax(out, std::fabs(e));
  return out;
}

}  // namespace calabi
