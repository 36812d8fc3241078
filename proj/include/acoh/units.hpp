#pragma once

// Compile-time SI dimensions. Exponents of kg, m and s are stored in sixths
// so that chirp quantities such as s^{5/3} and s^{-11/6} stay typed.

#include <cmath>

namespace acoh::units {

template <int M6, int L6, int T6>
struct Quantity {
  double value = 0.0;

  constexpr Quantity() = default;
  constexpr explicit Quantity(double v) : value(v) {}

  constexpr Quantity operator+(Quantity o) const { return Quantity(value + o.value); }
  constexpr Quantity operator-(Quantity o) const { return Quantity(value - o.value); }
  constexpr Quantity operator*(double s) const { return Quantity(value * s); }
  constexpr Quantity operator/(double s) const { return Quantity(value / s); }
  constexpr bool operator<(Quantity o) const { return value < o.value; }
  constexpr bool operator>(Quantity o) const { return value > o.value; }
};

template <int M6, int L6, int T6>
constexpr Quantity<M6, L6, T6> operator*(double s, Quantity<M6, L6, T6> q) {
  return Quantity<M6, L6, T6>(s * q.value);
}

template <int M1, int L1, int T1, int M2, int L2, int T2>
constexpr Quantity<M1 + M2, L1 + L2, T1 + T2> operator*(Quantity<M1, L1, T1> a, Quantity<M2, L2, T2> b) {
  return Quantity<M1 + M2, L1 + L2, T1 + T2>(a.value * b.value);
}

template <int M1, int L1, int T1, int M2, int L2, int T2>
constexpr Quantity<M1 - M2, L1 - L2, T1 - T2> operator/(Quantity<M1, L1, T1> a, Quantity<M2, L2, T2> b) {
  return Quantity<M1 - M2, L1 - L2, T1 - T2>(a.value / b.value);
}

template <int M6, int L6, int T6>
constexpr Quantity<-M6, -L6, -T6> operator/(double s, Quantity<M6, L6, T6> q) {
  return Quantity<-M6, -L6, -T6>(s / q.value);
}

/// q^(N/D); every resulting exponent must be a whole number of sixths.
template <int N, int D, int M6, int L6, int T6>
Quantity<M6 * N / D, L6 * N / D, T6 * N / D> pow(Quantity<M6, L6, T6> q) {
  static_assert(D != 0);
  static_assert((M6 * N) % D == 0 && (L6 * N) % D == 0 && (T6 * N) % D == 0,
                "fractional power leaves the sixths lattice");
  return Quantity<M6 * N / D, L6 * N / D, T6 * N / D>(std::pow(q.value, static_cast<double>(N) / D));
}

template <int M6, int L6, int T6>
auto sqrt(Quantity<M6, L6, T6> q) {
  return pow<1, 2>(q);
}

using Dimensionless = Quantity<0, 0, 0>;
using Mass = Quantity<6, 0, 0>;
using Length = Quantity<0, 6, 0>;
using Time = Quantity<0, 0, 6>;
using Rate = Quantity<0, 0, -6>;          ///< 1/s, also rad/s and Hz
using Velocity = Quantity<0, 6, -6>;
using Action = Quantity<6, 12, -6>;        ///< J s
using GravConstant = Quantity<-6, 18, -12>;
using EnergyFlux = Quantity<6, 0, -18>;    ///< W/m^2
using ChirpK = Quantity<0, 0, 10>;         ///< s^{5/3}

template <class Q>
constexpr bool same_dimension_v = false;
template <int M6, int L6, int T6>
constexpr bool same_dimension_v<Quantity<M6, L6, T6>> = true;

inline constexpr Mass kilograms(double v) { return Mass(v); }
inline constexpr Length meters(double v) { return Length(v); }
inline constexpr Time seconds(double v) { return Time(v); }
inline constexpr Rate per_second(double v) { return Rate(v); }
inline constexpr Rate hertz(double v) { return Rate(v); }

}  // namespace acoh::units
