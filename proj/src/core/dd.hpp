#pragma once

// Double-double helpers for the f64 rung. Only what the phase pipeline needs:
// exact sums/products of doubles and argument reduction mod 2*pi. Oscillatory
// phases like gamma*log(x) reach ~1e7 radians at full scale and must keep
// ~1e-13 absolute accuracy, which plain doubles cannot carry through the
// product; a hi/lo pair can.

#include <cmath>

namespace zx {

struct DD {
  double hi = 0, lo = 0;
};

inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DD quick_two_sum(double a, double b) {  // requires |a| >= |b|
  double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_add(const DD& a, const DD& b) {
  DD s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD dd_add(const DD& a, double b) {
  DD s = two_sum(a.hi, b);
  s.lo += a.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD dd_sub(const DD& a, const DD& b) { return dd_add(a, DD{-b.hi, -b.lo}); }

inline DD dd_mul(const DD& a, const DD& b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul(const DD& a, double b) {
  DD p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline double dd_to_double(const DD& a) { return a.hi + a.lo; }

// 2*pi to ~32 digits as hi+lo (lo is the exact residual of the double value).
DD two_pi_dd();
DD log_dd(unsigned long n);   // log n, cached table
DD half_log_dd(double x);     // 0.5*log(x) on demand (not cached)

// (a*b) mod 2*pi, result in roughly [-pi, pi]. |a*b| must stay below ~4e15.
inline double phase_mod_2pi(const DD& a, const DD& b) {
  DD p = dd_mul(a, b);
  const DD tp = two_pi_dd();
  double k = std::nearbyint(p.hi / tp.hi);
  DD r = dd_sub(p, dd_mul(tp, k));
  // one correction round in case of boundary rounding
  if (r.hi > tp.hi / 2) r = dd_sub(r, tp);
  else if (r.hi < -tp.hi / 2) r = dd_add(r, tp);
  return dd_to_double(r);
}

inline double phase_mod_2pi(const DD& p) {
  const DD tp = two_pi_dd();
  double k = std::nearbyint(p.hi / tp.hi);
  DD r = dd_sub(p, dd_mul(tp, k));
  if (r.hi > tp.hi / 2) r = dd_sub(r, tp);
  else if (r.hi < -tp.hi / 2) r = dd_add(r, tp);
  return dd_to_double(r);
}

}  // namespace zx
