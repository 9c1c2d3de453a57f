#pragma once

// Truncated Taylor ("jet") arithmetic in a nilpotent epsilon, used to get
// zeta and its first few derivatives from one Euler-Maclaurin pass. Order is
// small (<= 7 coefficients) so everything is stack arrays.

#include <array>

#include "types.hpp"

namespace zx {

constexpr int kMaxJet = 8;  // coefficients 0..7 -> derivatives up to nu=7

template <class R>
struct Jet {
  std::array<Cx<R>, kMaxJet> a{};
  int n = 1;  // number of active coefficients

  static Jet constant(const Cx<R>& c, int n) {
    Jet j; j.n = n; j.a[0] = c; return j;
  }
  // value c + eps
  static Jet variable(const Cx<R>& c, int n) {
    Jet j; j.n = n; j.a[0] = c;
    if (n > 1) j.a[1] = Cx<R>{R(1), R(0)};
    return j;
  }
};

template <class R>
Jet<R> operator+(const Jet<R>& x, const Jet<R>& y) {
  Jet<R> r; r.n = x.n;
  for (int i = 0; i < x.n; ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

template <class R>
Jet<R> operator-(const Jet<R>& x, const Jet<R>& y) {
  Jet<R> r; r.n = x.n;
  for (int i = 0; i < x.n; ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

template <class R>
Jet<R> operator*(const Jet<R>& x, const Jet<R>& y) {
  Jet<R> r; r.n = x.n;
  for (int i = 0; i < x.n; ++i) {
    Cx<R> s{};
    for (int j = 0; j <= i; ++j) s += x.a[j] * y.a[i - j];
    r.a[i] = s;
  }
  return r;
}

template <class R>
Jet<R> operator*(const Jet<R>& x, const Cx<R>& c) {
  Jet<R> r; r.n = x.n;
  for (int i = 0; i < x.n; ++i) r.a[i] = x.a[i] * c;
  return r;
}

template <class R>
Jet<R> operator*(const Jet<R>& x, const R& c) {
  Jet<R> r; r.n = x.n;
  for (int i = 0; i < x.n; ++i) r.a[i] = x.a[i] * c;
  return r;
}

// multiply by the affine jet (c + eps); cheaper than general mul
template <class R>
Jet<R> mul_affine(const Jet<R>& x, const Cx<R>& c) {
  Jet<R> r; r.n = x.n;
  r.a[0] = x.a[0] * c;
  for (int i = 1; i < x.n; ++i) r.a[i] = x.a[i] * c + x.a[i - 1];
  return r;
}

template <class R>
Jet<R> recip(const Jet<R>& x) {
  Jet<R> r; r.n = x.n;
  Cx<R> inv0 = Cx<R>{R(1), R(0)} / x.a[0];
  r.a[0] = inv0;
  for (int i = 1; i < x.n; ++i) {
    Cx<R> s{};
    for (int j = 1; j <= i; ++j) s += x.a[j] * r.a[i - j];
    r.a[i] = -(s * inv0);
  }
  return r;
}

// jet of exp(w*eps): coefficients w^k/k!
template <class R>
Jet<R> exp_eps(const Cx<R>& w, int n) {
  Jet<R> r; r.n = n;
  r.a[0] = Cx<R>{R(1), R(0)};
  for (int i = 1; i < n; ++i) r.a[i] = r.a[i - 1] * w / R(i);
  return r;
}

}  // namespace zx
