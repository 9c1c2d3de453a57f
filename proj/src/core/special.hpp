#pragma once

// Complex special functions on the critical strip: zeta and derivatives via
// Euler-Maclaurin, the functional-equation factor chi and its Stirling form,
// Riemann-Siegel theta, Hardy Z, Stieltjes constants.
//
// Everything is templated over the working real type (double / mp30 / mp50).
// The double instantiation routes oscillatory phases through double-double
// so that t*log(n) keeps ~1e-13 absolute accuracy up to t ~ 1e5.

#include <memory>
#include <vector>

#include "bernoulli.hpp"
#include "dd.hpp"
#include "jet.hpp"
#include "types.hpp"

namespace zx::special {

inline constexpr int kMaxNu = 6;

// ---- cached per-rung tables of log n (and n^{-1/2}) -------------------

struct F64Tables {
  std::vector<double> ln_hi, ln_lo, inv_sqrt;  // index n, valid n >= 1
};
std::shared_ptr<const F64Tables> f64_tables(size_t n);

template <class R>
struct MpTables {
  std::vector<R> ln, inv_sqrt;
};
template <class R>
std::shared_ptr<const MpTables<R>> mp_tables(size_t n);

// ---- log-gamma / digamma (principal branch) ---------------------------

template <class R> Cx<R> lgamma_cx(Cx<R> z);
template <class R> Cx<R> digamma_cx(Cx<R> z);

// ---- zeta --------------------------------------------------------------

// out[j] = zeta^{(j)}(s) for j = 0..nu_max (nu_max <= kMaxNu).
template <class R> void zeta_derivs(const Cx<R>& s, int nu_max, Cx<R>* out);
void zeta_derivs_f64(double sigma, const DD& t, int nu_max, C64* out);

template <class R> Cx<R> zeta(const Cx<R>& s);
template <class R> Cx<R> zeta_deriv(const Cx<R>& s, int nu);

// ---- chi family ---------------------------------------------------------

template <class R> Cx<R> chi(const Cx<R>& s);
template <class R> Cx<R> chi_stirling(const Cx<R>& s);
template <class R> Cx<R> chi_log_deriv(const Cx<R>& s);

// ---- theta / Hardy Z ----------------------------------------------------

template <class R> R theta(const R& t);
template <class R> Cx<R> hardy_z_full(const R& t);  // e^{i theta} zeta(1/2+it)
template <class R> R hardy_z(const R& t);

// log(t / 2pi)
template <class R> R ell(const R& t) {
  using std::log;
  return log(t / (2 * pi_const<R>()));
}

// Asymptotic theta for the zero scan; |error| < 2e-10 for t >= 20.
double theta_fast(double t);
// theta(t) mod 2pi computed at mp30, for double-double t. Used where the
// scan-grade series is not accurate enough (zero refinement).
double theta_mod_2pi(const DD& t);

// Riemann-Siegel Z with the leading correction term; absolute error
// O((t/2pi)^{-3/4}). Scan-grade only. Requires t >= 30.
double rs_z(double t);
// Magnitude below which an rs_z sign cannot be trusted.
double rs_z_margin(double t);

// Hardy Z and dZ/dt at double-double t (phases in double-double, values in
// double; absolute error ~1e-13 for t <= 1e5). Used by the zero finder.
void hardy_z_dd(const DD& t, double* z, double* dz);

// ---- Stieltjes constants ------------------------------------------------

// gamma_n for n in {0,1,2}, computed once at 50 digits from the Laurent
// expansion of zeta at s=1 (circle quadrature), then cached.
mp50 stieltjes_mp(int n);
double stieltjes_d(int n);

}  // namespace zx::special

// ---- template implementation -------------------------------------------

namespace zx::special::detail {

template <class R>
inline bool near_nonpositive_int(const Cx<R>& z, double tol = 1e-12) {
  using std::abs; using std::floor;
  if (static_cast<double>(z.re) > 0.5) return false;
  if (static_cast<double>(abs(z.im)) > tol) return false;
  R r = floor(z.re + R(0.5));
  return static_cast<double>(abs(z.re - r)) <= tol && static_cast<double>(r) <= 0.0;
}

// Stirling series for log Gamma, |z| large enough; caller shifts first.
template <class R>
Cx<R> lgamma_stirling(const Cx<R>& z) {
  using std::log;
  constexpr int digits = digits_of<R>::value;
  const R half(0.5);
  Cx<R> lz = log_cx(z);
  Cx<R> acc = (z - Cx<R>{half, R(0)}) * lz - z;
  acc.re += log(2 * pi_const<R>()) / 2;
  // sum B_2k / (2k(2k-1) z^(2k-1))
  const int m_max = 6 + static_cast<int>(3.3 * digits);
  const auto& b = bernoulli_even<R>(m_max);
  Cx<R> inv_z = Cx<R>{R(1), R(0)} / z;
  Cx<R> inv_z2 = inv_z * inv_z;
  Cx<R> zpow = inv_z;
  R target = R(1);
  for (int i = 0; i < digits + 2; ++i) target /= 10;
  R prev_mag(0);
  for (int k = 1; k <= m_max; ++k) {
    Cx<R> term = zpow * (b[k - 1] / R((2 * k) * (2 * k - 1)));
    R mag = abs_cx(term);
    if (k > 2 && mag > prev_mag) break;  // asymptotic tail turned
    acc += term;
    if (mag < target) break;
    prev_mag = mag;
    zpow = zpow * inv_z2;
  }
  return acc;
}

template <class R>
inline double stirling_radius() {
  return std::max(8.0, 0.37 * digits_of<R>::value + 3.0);
}

}  // namespace zx::special::detail

namespace zx::special {

template <class R>
Cx<R> lgamma_cx(Cx<R> z) {
  using std::abs; using std::sqrt;
  if (detail::near_nonpositive_int(z))
    fail(Err::domain, "lgamma: pole at nonpositive integer");
  const double z0 = detail::stirling_radius<R>();
  double re = static_cast<double>(z.re), im = static_cast<double>(z.im);
  int m = 0;
  if (std::hypot(re, im) < z0) {
    double need = std::abs(im) < z0 ? std::sqrt(z0 * z0 - im * im) : 0.0;
    m = std::max(0, (int)std::ceil(need - re));
  }
  Cx<R> shift_log{};  // sum of log(z+k), k = 0..m-1
  for (int k = 0; k < m; ++k) {
    shift_log += log_cx(z);
    z.re += 1;
  }
  return detail::lgamma_stirling(z) - shift_log;
}

template <class R>
Cx<R> digamma_cx(Cx<R> z) {
  if (detail::near_nonpositive_int(z))
    fail(Err::domain, "digamma: pole at nonpositive integer");
  const double z0 = detail::stirling_radius<R>();
  double re = static_cast<double>(z.re), im = static_cast<double>(z.im);
  int m = 0;
  if (std::hypot(re, im) < z0) {
    double need = std::abs(im) < z0 ? std::sqrt(z0 * z0 - im * im) : 0.0;
    m = std::max(0, (int)std::ceil(need - re));
  }
  Cx<R> shift{};  // sum 1/(z+k)
  for (int k = 0; k < m; ++k) {
    shift += Cx<R>{R(1), R(0)} / z;
    z.re += 1;
  }
  // psi(z) = log z - 1/(2z) - sum B_2k / (2k z^2k)
  constexpr int digits = digits_of<R>::value;
  Cx<R> lz = log_cx(z);
  Cx<R> inv_z = Cx<R>{R(1), R(0)} / z;
  Cx<R> acc = lz - inv_z * R(0.5);
  const int m_max = 6 + static_cast<int>(3.3 * digits);
  const auto& b = bernoulli_even<R>(m_max);
  Cx<R> inv_z2 = inv_z * inv_z;
  Cx<R> zpow = inv_z2;
  R target = R(1);
  for (int i = 0; i < digits + 2; ++i) target /= 10;
  R prev_mag(0);
  for (int k = 1; k <= m_max; ++k) {
    Cx<R> term = zpow * (b[k - 1] / R(2 * k));
    R mag = abs_cx(term);
    if (k > 2 && mag > prev_mag) break;
    acc -= term;
    if (mag < target) break;
    prev_mag = mag;
    zpow = zpow * inv_z2;
  }
  return acc - shift;
}

namespace detail {

struct EmPlan {
  long n;  // main sum runs n = 1 .. N-1
  int m;   // Bernoulli terms B_2 .. B_2M
};

// Remainder after M Bernoulli terms, crude log-scale estimate:
// |B_{2M+2}/(2M+2)!| * prod_{j=0..2M+1} |s+j| * N^{-sigma-2M-1}.
inline double em_remainder_log10(double sigma, double t, long n, int m) {
  double lp = 0;
  for (int j = 0; j <= 2 * m + 1; ++j)
    lp += 0.5 * std::log(t * t + (sigma + j) * (sigma + j));
  double l2pi = std::log(2 * M_PI);
  double lb = std::log(2.0) - (2 * m + 2) * l2pi;  // log |B/(2M+2)!|
  double lr = lb + lp - (sigma + 2 * m + 1) * std::log((double)n);
  return lr / std::log(10.0);
}

inline EmPlan em_plan(double sigma, double t, int digits) {
  EmPlan p;
  p.m = digits <= 16 ? 10 : (int)std::ceil(0.85 * digits) + 2;
  t = std::abs(t);
  p.n = std::max<long>(20, (long)std::ceil(2.0 * t / M_PI));
  while (em_remainder_log10(sigma, t, p.n, p.m) > -(digits + 1) &&
         p.n < (1L << 26))
    p.n = p.n + p.n / 4 + 8;
  return p;
}

// Euler-Maclaurin tail as a jet in eps around s: everything after the main
// sum, i.e. N^{1-S}/(S-1) + N^{-S}/2 + sum_k B_2k/(2k)! (S)_{2k-1} N^{-S-2k+1}
// with S = s + eps.
template <class R>
Jet<R> em_tail_jet(const Cx<R>& s, long n, int m, int order) {
  using std::log; using std::exp;
  R ln_n = log(R(n));
  Cx<R> npow_ms = exp_cx(Cx<R>{-s.re * ln_n, -s.im * ln_n});  // N^{-s}
  R npow_1(1);  // N^{1} factor applied via division below

  Jet<R> tail = Jet<R>::constant(Cx<R>{}, order);
  // N^{1-s} / (s-1+eps)
  {
    Jet<R> den = Jet<R>::variable(s - Cx<R>{R(1), R(0)}, order);
    Jet<R> term = recip(den) * (npow_ms * R(n));
    tail = tail + term;
  }
  tail.a[0] += npow_ms * R(0.5);

  const auto& b = bernoulli_even<R>(m);
  // running = (S)_{2k-1} * N^{-s-2k+1} built incrementally (jet in eps),
  // fact = (2k)!
  Jet<R> running = Jet<R>::variable(s, order);  // (S)_1 = S
  R inv_n2 = R(1) / (R(n) * R(n));
  running = running * (npow_ms * R(n) * inv_n2);  // N^{-s-1}
  R fact(2);
  R mag_guard(0);
  (void)npow_1; (void)mag_guard;
  for (int k = 1; k <= m; ++k) {
    tail = tail + running * (b[k - 1] / fact);
    if (k < m) {
      Cx<R> f1 = s + Cx<R>{R(2 * k - 1), R(0)};
      Cx<R> f2 = s + Cx<R>{R(2 * k), R(0)};
      running = mul_affine(mul_affine(running, f1), f2) * inv_n2;
      fact *= R(2 * k + 1) * R(2 * k + 2);
    }
  }
  // common factor N^{-eps}
  return tail * exp_eps<R>(Cx<R>{-ln_n, R(0)}, order);
}

}  // namespace detail

// Generic (multiprecision) Euler-Maclaurin.
template <class R>
void zeta_derivs(const Cx<R>& s, int nu_max, Cx<R>* out) {
  using std::abs; using std::sin; using std::cos; using std::exp;
  using std::fmod; using std::sqrt; using std::log;
  if constexpr (std::is_same_v<R, double>) {
    zeta_derivs_f64(s.re, DD{s.im, 0.0}, nu_max, out);
    return;
  } else {
  if (nu_max < 0 || nu_max > kMaxNu) fail(Err::invalid_argument, "zeta: nu out of range");
  double sig = static_cast<double>(s.re), t = static_cast<double>(s.im);
  if (std::abs(t) > 2e5 || sig < -6 || sig > 8)
    fail(Err::domain, "zeta: s outside supported strip");
  if (std::abs(sig - 1) < 1e-13 && std::abs(t) < 1e-13) {
    R d = abs_cx(s - Cx<R>{R(1), R(0)});
    if (d < R(1e-30)) fail(Err::pole_at_one, "zeta: pole at s=1");
  }

  constexpr int digits = digits_of<R>::value;
  auto plan = detail::em_plan(sig, t, digits);
  const long n_terms = plan.n;
  auto tables = mp_tables<R>((size_t)n_terms);

  const bool sigma_half = sig == 0.5 && s.re == R(0.5);
  const R two_pi = 2 * pi_const<R>();
  const int order = nu_max + 1;

  Cx<R> acc[kMaxJet];
  acc[0] = Cx<R>{R(1), R(0)};  // n = 1 term
  for (long n = 2; n < n_terms; ++n) {
    const R& ln = tables->ln[n];
    R amp = sigma_half ? tables->inv_sqrt[n] : exp(-s.re * ln);
    R ph = fmod(s.im * ln, two_pi);
    Cx<R> term{amp * cos(ph), -amp * sin(ph)};
    acc[0] += term;
    Cx<R> p = term;
    for (int j = 1; j <= nu_max; ++j) {
      p = p * (-ln);
      acc[j] += p;
    }
  }

  Jet<R> tail = detail::em_tail_jet<R>(s, n_terms, plan.m, order);
  R fact(1);
  for (int j = 0; j <= nu_max; ++j) {
    if (j > 0) fact *= R(j);
    out[j] = acc[j] + tail.a[j] * fact;
  }
  }
}

template <class R>
Cx<R> zeta(const Cx<R>& s) {
  Cx<R> out[1];
  zeta_derivs(s, 0, out);
  return out[0];
}

template <class R>
Cx<R> zeta_deriv(const Cx<R>& s, int nu) {
  if (nu < 1 || nu > kMaxNu) fail(Err::invalid_argument, "zeta_deriv: nu must be 1..6");
  Cx<R> out[kMaxJet];
  zeta_derivs(s, nu, out);
  return out[nu];
}

// chi(s) = pi^(s-1/2) Gamma((1-s)/2) / Gamma(s/2); equivalent to the
// 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) form but stays evaluable next to the
// real axis where sine zeros cancel gamma poles pairwise.
template <class R>
Cx<R> chi(const Cx<R>& s) {
  using std::log;
  Cx<R> w1 = (Cx<R>{R(1), R(0)} - s) * R(0.5);
  Cx<R> w2 = s * R(0.5);
  if (detail::near_nonpositive_int(w1))
    fail(Err::pole_or_zero_of_chi, "chi: pole (s an odd integer >= 1)");
  if (detail::near_nonpositive_int(w2))
    fail(Err::pole_or_zero_of_chi, "chi: zero (s an even integer <= 0)");
  Cx<R> log_chi = (s - Cx<R>{R(0.5), R(0)}) * Cx<R>{log(pi_const<R>()), R(0)}
                  + lgamma_cx(w1) - lgamma_cx(w2);
  return exp_cx(log_chi);
}

// Stirling main term (t/2pi)^(1/2-sigma-it) e^(i(t+pi/4)), t >= 1.
template <class R>
Cx<R> chi_stirling(const Cx<R>& s) {
  if (static_cast<double>(s.im) < 1.0)
    fail(Err::domain, "chi_stirling: needs Im s >= 1");
  R lt = ell(s.im);
  Cx<R> expo = Cx<R>{R(0.5) - s.re, -s.im} * Cx<R>{lt, R(0)};
  expo.im += s.im + pi_const<R>() / 4;
  return exp_cx(expo);
}

// chi'/chi = log pi - psi((1-s)/2)/2 - psi(s/2)/2
template <class R>
Cx<R> chi_log_deriv(const Cx<R>& s) {
  using std::log; using std::abs;
  if (static_cast<double>(abs(s.re)) > 2.0 + 1e-9 || static_cast<double>(s.im) <= 1.0)
    fail(Err::domain, "chi_log_deriv: needs |Re s| <= 2, Im s > 1");
  Cx<R> w1 = (Cx<R>{R(1), R(0)} - s) * R(0.5);
  Cx<R> w2 = s * R(0.5);
  Cx<R> r = digamma_cx(w1) * R(-0.5) - digamma_cx(w2) * R(0.5);
  r.re += log(pi_const<R>());
  return r;
}

template <class R>
R theta(const R& t) {
  using std::log;
  Cx<R> z{R(0.25), t * R(0.5)};
  Cx<R> lg = lgamma_cx(z);
  return lg.im - t * R(0.5) * log(pi_const<R>());
}

template <class R>
Cx<R> hardy_z_full(const R& t) {
  Cx<R> z = zeta(Cx<R>{R(0.5), t});
  return cis(theta(t)) * z;
}

template <class R>
R hardy_z(const R& t) {
  return hardy_z_full(t).re;
}

}  // namespace zx::special

namespace zx::special {
// Declared extern here, instantiated in special.cpp, so client TUs do not
// re-instantiate the heavy templates.
#define ZX_SPECIAL_EXTERN(R) \
  extern template Cx<R> lgamma_cx<R>(Cx<R>); \
  extern template Cx<R> digamma_cx<R>(Cx<R>); \
  extern template void zeta_derivs<R>(const Cx<R>&, int, Cx<R>*); \
  extern template Cx<R> zeta<R>(const Cx<R>&); \
  extern template Cx<R> zeta_deriv<R>(const Cx<R>&, int); \
  extern template Cx<R> chi<R>(const Cx<R>&); \
  extern template Cx<R> chi_stirling<R>(const Cx<R>&); \
  extern template Cx<R> chi_log_deriv<R>(const Cx<R>&); \
  extern template R theta<R>(const R&); \
  extern template Cx<R> hardy_z_full<R>(const R&); \
  extern template R hardy_z<R>(const R&);
ZX_SPECIAL_EXTERN(double)
ZX_SPECIAL_EXTERN(zx::mp30)
ZX_SPECIAL_EXTERN(zx::mp50)
#undef ZX_SPECIAL_EXTERN
}  // namespace zx::special
