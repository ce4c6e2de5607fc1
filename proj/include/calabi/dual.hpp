#pragma once

// Forward-mode dual numbers over N seed directions. Nesting
// Dual<Dual<double, N>, N> yields second derivatives.

#include <array>
#include <cmath>
#include <concepts>
#include <type_traits>

namespace calabi {

template <class T, int N>
struct Dual {
  T v{};
  std::array<T, N> d{};

  constexpr Dual() = default;
  constexpr Dual(const T& value) : v(value) {}
  template <class S>
    requires std::is_arithmetic_v<S> && (!std::is_same_v<T, S>)
  constexpr Dual(S value) : v(T(value)) {}
};

template <class T>
struct is_dual : std::false_type {};
template <class T, int N>
struct is_dual<Dual<T, N>> : std::true_type {};

template <class T>
concept Arithmetic = std::is_arithmetic_v<T>;

/// Innermost real value of a (possibly nested) dual.
constexpr double value_of(double x) { return x; }
template <class T, int N>
constexpr double value_of(const Dual<T, N>& x) {
  return value_of(x.v);
}

/// Independent variable: value x, unit derivative along direction i.
template <class T, int N>
constexpr Dual<T, N> seed(const T& x, int i) {
  Dual<T, N> out(x);
  out.d[static_cast<std::size_t>(i)] = T(1.0);
  return out;
}

template <class T, int N>
constexpr Dual<T, N> operator-(const Dual<T, N>& x) {
  Dual<T, N> out(-x.v);
  for (int i = 0; i < N; ++i) out.d[i] = -x.d[i];
  return out;
}

template <class T, int N>
constexpr Dual<T, N> operator+(const Dual<T, N>& x, const Dual<T, N>& y) {
  Dual<T, N> out(x.v + y.v);
  for (int i = 0; i < N; ++i) out.d[i] = x.d[i] + y.d[i];
  return out;
}

template <class T, int N>
constexpr Dual<T, N> operator-(const Dual<T, N>& x, const Dual<T, N>& y) {
  Dual<T, N> out(x.v - y.v);
  for (int i = 0; i < N; ++i) out.d[i] = x.d[i] - y.d[i];
  return out;
}

template <class T, int N>
constexpr Dual<T, N> operator*(const Dual<T, N>& x, const Dual<T, N>& y) {
  Dual<T, N> out(x.v * y.v);
  for (int i = 0; i < N; ++i) out.d[i] = x.d[i] * y.v + x.v * y.d[i];
  return out;
}

template <class T, int N>
constexpr Dual<T, N> operator/(const Dual<T, N>& x, const Dual<T, N>& y) {
  const T inv = T(1.0) / y.v;
  const T q = x.v * inv;
  Dual<T, N> out(q);
  for (int i = 0; i < N; ++i) out.d[i] = (x.d[i] - q * y.d[i]) * inv;
  return out;
}

template <class T, int N, Arithmetic S>
constexpr Dual<T, N> operator+(const Dual<T, N>& x, S s) {
  Dual<T, N> out = x;
  out.v = out.v + s;
  return out;
}
template <class T, int N, Arithmetic S>
constexpr Dual<T, N> operator+(S s, const Dual<T, N>& x) {
  return x + s;
}
template <class T, int N, Arithmetic S>
constexpr Dual<T, N> operator-(const Dual<T, N>& x, S s) {
  Dual<T, N> out = x;
  out.v = out.v - s;
  return out;
}
template <class T, int N, Arithmetic S>
constexpr Dual<T, N> operator-(S s, const Dual<T, N>& x) {
  return -x + s;
}
template <class T, int N, Arithmetic S>
constexpr Dual<T, N> operator*(const Dual<T, N>& x, S s) {
  Dual<T, N> out(x.v * s);
  for (int i = 0; i < N; ++i) out.d[i] = x.d[i] * s;
  return out;
}
template <class T, int N, Arithmetic S>
constexpr Dual<T, N> operator*(S s, const Dual<T, N>& x) {
  return x * s;
}
template <class T, int N, Arithmetic S>
constexpr Dual<T, N> operator/(const Dual<T, N>& x, S s) {
  return x * (1.0 / static_cast<double>(s));
}
template <class T, int N, Arithmetic S>
constexpr Dual<T, N> operator/(S s, const Dual<T, N>& x) {
  return Dual<T, N>(T(static_cast<double>(s))) / x;
}

template <class T, int N, class U>
constexpr Dual<T, N>& operator+=(Dual<T, N>& x, const U& y) {
  return x = x + y;
}
template <class T, int N, class U>
constexpr Dual<T, N>& operator-=(Dual<T, N>& x, const U& y) {
  return x = x - y;
}
template <class T, int N, class U>
constexpr Dual<T, N>& operator*=(Dual<T, N>& x, const U& y) {
  return x = x * y;
}
template <class T, int N, class U>
constexpr Dual<T, N>& operator/=(Dual<T, N>& x, const U& y) {
  return x = x / y;
}

template <class T, int N>
Dual<T, N> sqrt(const Dual<T, N>& x) {
  using std::sqrt;
  const T s = sqrt(x.v);
  const T half_inv = T(0.5) / s;
  Dual<T, N> out(s);
  for (int i = 0; i < N; ++i) out.d[i] = x.d[i] * half_inv;
  return out;
}

template <class T, int N>
Dual<T, N> log(const Dual<T, N>& x) {
  using std::log;
  Dual<T, N> out(log(x.v));
  const T inv = T(1.0) / x.v;
  for (int i = 0; i < N; ++i) out.d[i] = x.d[i] * inv;
  return out;
}

using Dual2 = Dual<double, 2>;
using Jet2 = Dual<Dual2, 2>;

/// Value, gradient and Hessian of a scalar jet in two variables.
struct Taylor2 {
  double value;
  std::array<double, 2> grad;
  std::array<std::array<double, 2>, 2> hess;
};

inline Taylor2 unpack(const Jet2& x) {
  return {x.v.v,
          {x.v.d[0], x.v.d[1]},
          {{{x.d[0].d[0], x.d[0].d[1]}, {x.d[1].d[0], x.d[1].d[1]}}}};
}

/// Seed (h, r) as the two independent variables of a second-order jet.
inline std::array<Jet2, 2> seed_jet2(double h, double r) {
  Jet2 jh(seed<double, 2>(h, 0));
  jh.d[0] = Dual2(1.0);
  Jet2 jr(seed<double, 2>(r, 1));
  jr.d[1] = Dual2(1.0);
  return {jh, jr};
}

}  // namespace calabi
