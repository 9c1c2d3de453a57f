#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

namespace zx {

namespace mp = boost::multiprecision;

// Fixed precision rungs. Requested digit counts are rounded up to the next
// rung so results are never weaker than asked for.
using mp30 = mp::number<mp::mpfr_float_backend<30>, mp::et_off>;
using mp50 = mp::number<mp::mpfr_float_backend<50>, mp::et_off>;

enum class Rung { f64, mp30, mp50 };

constexpr int kMinDigits = 15;
constexpr int kMaxDigits = 50;

inline Rung rung_for_digits(int digits) {
  if (digits <= 15) return Rung::f64;
  if (digits <= 30) return Rung::mp30;
  return Rung::mp50;
}

template <class R> struct digits_of;
template <> struct digits_of<double> { static constexpr int value = 16; };
template <> struct digits_of<mp30>   { static constexpr int value = 30; };
template <> struct digits_of<mp50>   { static constexpr int value = 50; };

template <class R> inline R pi_const() { return boost::math::constants::pi<R>(); }

enum class Err {
  ok = 0,
  invalid_argument,
  domain,
  pole_at_one,
  pole_or_zero_of_chi,
  sieve_limit_exceeded,
  unsupported_kind,
  unsupported_index,
  out_of_coverage,
  parse_error,
  monotonicity_violation,
  audit_failure,
  missed_zero,
  refinement_failure,
  zero_too_close,
  no_convergence,
  unknown_claim,
  insufficient_grid,
  io_error,
  internal,
};

class Error : public std::runtime_error {
public:
  Error(Err code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  Err code() const { return code_; }
private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

// Minimal complex-over-R. std::complex is only specified for builtin floats,
// so the multiprecision rungs need their own.
template <class R>
struct Cx {
  R re{}, im{};

  Cx() = default;
  Cx(R r) : re(std::move(r)) {}
  Cx(R r, R i) : re(std::move(r)), im(std::move(i)) {}

  Cx operator-() const { return {-re, -im}; }
  Cx& operator+=(const Cx& o) { re += o.re; im += o.im; return *this; }
  Cx& operator-=(const Cx& o) { re -= o.re; im -= o.im; return *this; }
  Cx& operator*=(const Cx& o) { *this = *this * o; return *this; }

  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cx operator*(const Cx& a, const R& s) { return {a.re * s, a.im * s}; }
  friend Cx operator*(const R& s, const Cx& a) { return {a.re * s, a.im * s}; }
  friend Cx operator/(const Cx& a, const R& s) { return {a.re / s, a.im / s}; }
  friend Cx operator/(const Cx& a, const Cx& b) {
    // Smith's algorithm; keeps intermediate magnitudes sane.
    using std::abs;
    if (abs(b.re) >= abs(b.im)) {
      R r = b.im / b.re, d = b.re + b.im * r;
      return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
    }
    R r = b.re / b.im, d = b.re * r + b.im;
    return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
  }
};

template <class R> inline Cx<R> conj(const Cx<R>& z) { return {z.re, -z.im}; }
template <class R> inline R norm_sq(const Cx<R>& z) { return z.re * z.re + z.im * z.im; }

template <class R> inline R abs_cx(const Cx<R>& z) {
  using std::hypot;
  if constexpr (std::is_same_v<R, double>) return hypot(z.re, z.im);
  else { using std::sqrt; return sqrt(norm_sq(z)); }
}

template <class R> inline R arg_cx(const Cx<R>& z) {
  using std::atan2;
  return atan2(z.im, z.re);
}

template <class R> inline Cx<R> cis(const R& t) {
  using std::sin; using std::cos;
  return {cos(t), sin(t)};
}

template <class R> inline Cx<R> exp_cx(const Cx<R>& z) {
  using std::exp;
  R m = exp(z.re);
  Cx<R> u = cis(z.im);
  return {m * u.re, m * u.im};
}

// Principal branch.
template <class R> inline Cx<R> log_cx(const Cx<R>& z) {
  using std::log;
  return {log(abs_cx(z)), arg_cx(z)};
}

template <class R> inline Cx<R> sqrt_cx(const Cx<R>& z) {
  using std::sqrt; using std::abs;
  R m = abs_cx(z);
  if (m == R(0)) return {R(0), R(0)};
  R u = sqrt((m + abs(z.re)) / 2);
  R v = abs_cx(Cx<R>{z.im, R(0)}) / (2 * u);
  if (z.re >= R(0)) return {u, z.im < R(0) ? -v : v};
  return {v, z.im < R(0) ? -u : u};
}

using C64 = Cx<double>;

inline C64 to_c64(const Cx<mp30>& z) { return {static_cast<double>(z.re), static_cast<double>(z.im)}; }
inline C64 to_c64(const Cx<mp50>& z) { return {static_cast<double>(z.re), static_cast<double>(z.im)}; }
inline C64 to_c64(const C64& z) { return z; }

}  // namespace zx
