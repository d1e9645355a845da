#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "hquat/error.hpp"

namespace hquat {

/// Quaternion p = x + y*i + z*j + u*k with Hamilton multiplication.
///
/// Component naming follows the Cayley-Dickson split p = a + b*j with
/// a = x + y*i and b = z + u*i. All library operations treat values as
/// immutable; every function here is pure. Stored components are expected
/// to be finite; operations that can produce non-finite values guard for it.
struct Quaternion {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double u = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double re) : x(re) {}  // NOLINT: implicit like complex
  constexpr Quaternion(double x_, double y_, double z_, double u_)
      : x(x_), y(y_), z(z_), u(u_) {}

  constexpr double re() const { return x; }
  constexpr Quaternion unreal() const { return {0.0, y, z, u}; }
  /// v = sqrt(y^2 + z^2 + u^2), the slice coordinate in p = x + v*I.
  double unreal_norm() const { return std::sqrt(y * y + z * z + u * u); }

  constexpr bool operator==(const Quaternion&) const = default;

  constexpr Quaternion& operator+=(const Quaternion& r) {
    x += r.x; y += r.y; z += r.z; u += r.u;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& r) {
    x -= r.x; y -= r.y; z -= r.z; u -= r.u;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    x *= s; y *= s; z *= s; u *= s;
    return *this;
  }
  constexpr Quaternion& operator/=(double s) {
    x /= s; y /= s; z /= s; u /= s;
    return *this;
  }

  friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
  friend constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
  friend constexpr Quaternion operator/(Quaternion a, double s) { return a /= s; }
  friend constexpr Quaternion operator-(const Quaternion& a) { return {-a.x, -a.y, -a.z, -a.u}; }

  // Hamilton product.
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.x * b.x - a.y * b.y - a.z * b.z - a.u * b.u,
            a.x * b.y + a.y * b.x + a.z * b.u - a.u * b.z,
            a.x * b.z - a.y * b.u + a.z * b.x + a.u * b.y,
            a.x * b.u + a.y * b.z - a.z * b.y + a.u * b.x};
  }
  constexpr Quaternion& operator*=(const Quaternion& r) { return *this = *this * r; }
};

/// Quaternion-valued function of a quaternion. Callables passed to the
/// numerical routines must be pure (safe to invoke concurrently).
using QFunc = std::function<Quaternion(const Quaternion&)>;

inline constexpr Quaternion mul(const Quaternion& a, const Quaternion& b) { return a * b; }

inline constexpr Quaternion conj(const Quaternion& q) { return {q.x, -q.y, -q.z, -q.u}; }

inline constexpr double norm_sq(const Quaternion& q) {
  return q.x * q.x + q.y * q.y + q.z * q.z + q.u * q.u;
}

inline double norm(const Quaternion& q) { return std::sqrt(norm_sq(q)); }

inline bool is_finite(const Quaternion& q) {
  return std::isfinite(q.x) && std::isfinite(q.y) && std::isfinite(q.z) && std::isfinite(q.u);
}

inline Quaternion inverse(const Quaternion& q) {
  const double n2 = norm_sq(q);
  if (n2 == 0.0)
    throw Error(errc::divide_by_zero, "inverse of the zero quaternion");
  return conj(q) / n2;
}

/// Cayley-Dickson doubling form p = a + b*j with complex a, b.
struct DoublingForm {
  std::complex<double> a;
  std::complex<double> b;
};

inline DoublingForm doubling(const Quaternion& q) { return {{q.x, q.y}, {q.z, q.u}}; }

inline Quaternion from_doubling(const DoublingForm& d) {
  return {d.a.real(), d.a.imag(), d.b.real(), d.b.imag()};
}

/// Product in doubling form: (a1 + b1*j)(a2 + b2*j)
///   = (a1*a2 - b1*conj(b2)) + (a1*b2 + b1*conj(a2))*j.
inline DoublingForm mul(const DoublingForm& p, const DoublingForm& q) {
  return {p.a * q.a - p.b * std::conj(q.b), p.a * q.b + p.b * std::conj(q.a)};
}

/// Default floor under which a point counts as lying on the real axis.
inline constexpr double v_min_default = 1e-12;

/// The unit I = (y*i + z*j + u*k) / v with v = sqrt(y^2+z^2+u^2).
/// Satisfies I*I = -1 and |I| = 1. Undefined on the real axis.
inline Quaternion imaginary_unit(const Quaternion& p, double v_min = v_min_default) {
  const double v = p.unreal_norm();
  if (v <= v_min)
    throw Error(errc::on_real_axis, "imaginary unit undefined on the real axis");
  return p.unreal() / v;
}

inline bool is_unit_imaginary(const Quaternion& q, double tol = 1e-9) {
  return std::abs(q.x) <= tol && std::abs(norm(q) - 1.0) <= tol;
}

/// Polar decomposition p = m (cos theta + axis sin theta), theta in [0, pi].
/// On the real axis there is no preferred axis; `axis_arbitrary` marks that
/// the stored axis is a placeholder, not data.
struct PolarForm {
  double m = 0.0;
  double theta = 0.0;
  Quaternion axis{0.0, 1.0, 0.0, 0.0};
  bool axis_arbitrary = false;
};

inline PolarForm polar(const Quaternion& p, double v_min = v_min_default) {
  const double m = norm(p);
  if (m == 0.0)
    throw Error(errc::zero_quaternion, "polar form of the zero quaternion");
  const double v = p.unreal_norm();
  PolarForm out;
  out.m = m;
  out.theta = std::atan2(v, p.x);
  if (v > v_min) {
    out.axis = p.unreal() / v;
  } else {
    out.axis_arbitrary = true;
    out.theta = p.x >= 0.0 ? 0.0 : std::atan2(0.0, -1.0);  // 0 or pi
  }
  return out;
}

/// x + v*axis for a unit pure-imaginary axis.
inline Quaternion embed(double x, double v, const Quaternion& axis) {
  if (!is_unit_imaginary(axis))
    throw Error(errc::invalid_argument, "embed requires a unit pure-imaginary axis");
  return Quaternion(x) + v * axis;
}

inline Quaternion embed(const PolarForm& f) {
  return Quaternion(f.m * std::cos(f.theta)) + (f.m * std::sin(f.theta)) * f.axis;
}

/// e^{axis*t} = cos t + axis sin t on the {1, axis} slice.
inline Quaternion slice_exp(const Quaternion& axis, double t) {
  return Quaternion(std::cos(t)) + std::sin(t) * axis;
}

/// Map a complex slice value alpha + beta*i to alpha + beta*axis.
inline Quaternion from_slice(const std::complex<double>& c, const Quaternion& axis) {
  return Quaternion(c.real()) + c.imag() * axis;
}

// ---------------------------------------------------------------------------
// Textual literal format: `x+yi-zj+uk` with any subset of terms.
// ---------------------------------------------------------------------------

/// Parse a quaternion literal such as "1+2i-0.5j", "j", "-3" or "2.5e-3k".
inline Quaternion parse_quaternion(std::string_view s) {
  Quaternion out;
  std::size_t i = 0;
  const auto skip_ws = [&] {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  };
  skip_ws();
  if (i == s.size())
    throw Error(errc::syntax, "empty quaternion literal", i);
  bool first = true;
  while (true) {
    skip_ws();
    if (i == s.size()) break;
    double sign = 1.0;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1.0 : 1.0;
      ++i;
      skip_ws();
    } else if (!first) {
      throw Error(errc::syntax, "expected '+' or '-' between terms", i);
    }
    double coeff = 1.0;
    bool have_number = false;
    {
      double v = 0.0;
      const char* begin = s.data() + i;
      const char* end = s.data() + s.size();
      auto [ptr, ec] = std::from_chars(begin, end, v);
      if (ec == std::errc() && ptr != begin) {
        coeff = v;
        i += static_cast<std::size_t>(ptr - begin);
        have_number = true;
      }
    }
    double* slot = &out.x;
    bool have_unit = false;
    if (i < s.size() && (s[i] == 'i' || s[i] == 'j' || s[i] == 'k')) {
      slot = s[i] == 'i' ? &out.y : s[i] == 'j' ? &out.z : &out.u;
      have_unit = true;
      ++i;
    }
    if (!have_number && !have_unit)
      throw Error(errc::syntax, "expected a number or unit (i, j, k)", i);
    *slot += sign * coeff;
    first = false;
  }
  if (!is_finite(out))
    throw Error(errc::syntax, "quaternion literal overflows double", 0);
  return out;
}

/// Render in the literal format with `digits` significant digits.
inline std::string to_string(const Quaternion& q, int digits = 12) {
  char buf[64];
  std::string out;
  const char* units[4] = {"", "i", "j", "k"};
  const double comps[4] = {q.x, q.y, q.z, q.u};
  for (int c = 0; c < 4; ++c) {
    const double v = comps[c];
    if (v == 0.0) continue;
    if (!out.empty() && v >= 0.0) out += '+';
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    out += buf;
    out += units[c];
  }
  if (out.empty()) out = "0";
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << to_string(q);
}

}  // namespace hquat
