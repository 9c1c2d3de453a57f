#include "special.hpp"

#include <mutex>

namespace zx {

namespace {
std::once_flag two_pi_once;
DD two_pi_val;
}  // namespace

DD two_pi_dd() {
  std::call_once(two_pi_once, [] {
    mp50 tp = 2 * pi_const<mp50>();
    double hi = static_cast<double>(tp);
    double lo = static_cast<double>(tp - mp50(hi));
    two_pi_val = {hi, lo};
  });
  return two_pi_val;
}

DD log_dd(unsigned long n) {
  auto t = special::f64_tables(n + 1);
  return {t->ln_hi[n], t->ln_lo[n]};
}

DD half_log_dd(double x) {
  mp50 l = log(mp50(x)) / 2;
  double hi = static_cast<double>(l);
  return {hi, static_cast<double>(l - mp50(hi))};
}

}  // namespace zx

namespace zx::special {

// ---------------- cached log tables ----------------

namespace {

struct F64Cache {
  std::mutex mu;
  std::shared_ptr<const F64Tables> tab = std::make_shared<F64Tables>();
};
F64Cache& f64_cache() { static F64Cache c; return c; }

template <class R>
struct MpCache {
  std::mutex mu;
  std::shared_ptr<const MpTables<R>> tab = std::make_shared<MpTables<R>>();
};
template <class R> MpCache<R>& mp_cache() { static MpCache<R> c; return c; }

}  // namespace

std::shared_ptr<const F64Tables> f64_tables(size_t n) {
  auto& c = f64_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  if (c.tab->ln_hi.size() >= n + 1) return c.tab;
  size_t m = std::max<size_t>(n + 1, c.tab->ln_hi.size() * 3 / 2 + 64);
  auto t = std::make_shared<F64Tables>(*c.tab);
  t->ln_hi.resize(m); t->ln_lo.resize(m); t->inv_sqrt.resize(m);
  for (size_t k = std::max<size_t>(1, c.tab->ln_hi.size()); k < m; ++k) {
    mp50 l = log(mp50((unsigned long)k));
    double hi = static_cast<double>(l);
    t->ln_hi[k] = hi;
    t->ln_lo[k] = static_cast<double>(l - mp50(hi));
    t->inv_sqrt[k] = 1.0 / std::sqrt((double)k);
  }
  c.tab = t;
  return c.tab;
}

template <class R>
std::shared_ptr<const MpTables<R>> mp_tables(size_t n) {
  auto& c = mp_cache<R>();
  std::lock_guard<std::mutex> lock(c.mu);
  if (c.tab->ln.size() >= n + 1) return c.tab;
  size_t m = std::max<size_t>(n + 1, c.tab->ln.size() * 3 / 2 + 64);
  auto t = std::make_shared<MpTables<R>>(*c.tab);
  t->ln.resize(m); t->inv_sqrt.resize(m);
  using std::log; using std::sqrt;
  for (size_t k = std::max<size_t>(1, c.tab->ln.size()); k < m; ++k) {
    t->ln[k] = log(R((unsigned long)k));
    t->inv_sqrt[k] = 1 / sqrt(R((unsigned long)k));
  }
  c.tab = t;
  return c.tab;
}

template std::shared_ptr<const MpTables<mp30>> mp_tables<mp30>(size_t);
template std::shared_ptr<const MpTables<mp50>> mp_tables<mp50>(size_t);

// ---------------- f64 Euler-Maclaurin with double-double phases ---------

namespace {

struct Neum {
  double s = 0, c = 0;
  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x)) c += (s - t) + x;
    else c += (x - t) + s;
    s = t;
  }
  double get() const { return s + c; }
};

}  // namespace

void zeta_derivs_f64(double sigma, const DD& t, int nu_max, C64* out) {
  if (nu_max < 0 || nu_max > kMaxNu)
    fail(Err::invalid_argument, "zeta: nu out of range");
  double ta = std::abs(t.hi);
  if (ta > 2e5 || sigma < -6 || sigma > 8)
    fail(Err::domain, "zeta: s outside supported strip");
  if (std::abs(sigma - 1) < 1e-30 && ta < 1e-30)
    fail(Err::pole_at_one, "zeta: pole at s=1");

  auto plan = detail::em_plan(sigma, t.hi, 16);
  const long n_terms = plan.n;
  auto tables = f64_tables((size_t)n_terms);
  const bool sigma_half = sigma == 0.5;

  Neum acc_re[kMaxJet], acc_im[kMaxJet];
  acc_re[0].add(1.0);
  for (long n = 2; n < n_terms; ++n) {
    DD ln{tables->ln_hi[n], tables->ln_lo[n]};
    double amp = sigma_half ? tables->inv_sqrt[n] : std::exp(-sigma * ln.hi);
    double ph = phase_mod_2pi(t, ln);
    double cre = amp * std::cos(ph), cim = -amp * std::sin(ph);
    acc_re[0].add(cre); acc_im[0].add(cim);
    for (int j = 1; j <= nu_max; ++j) {
      double m = -ln.hi;
      cre *= m; cim *= m;
      acc_re[j].add(cre); acc_im[j].add(cim);
    }
  }

  Cx<double> s{sigma, dd_to_double(t)};
  Jet<double> tail = detail::em_tail_jet<double>(s, n_terms, plan.m, nu_max + 1);
  double fact = 1;
  for (int j = 0; j <= nu_max; ++j) {
    if (j > 0) fact *= j;
    out[j] = C64{acc_re[j].get() + tail.a[j].re * fact,
                 acc_im[j].get() + tail.a[j].im * fact};
  }
}

// ---------------- theta helpers / Riemann-Siegel -------------------------

double theta_fast(double t) {
  double lt = std::log(t / (2 * M_PI));
  return 0.5 * t * lt - 0.5 * t - M_PI / 8 + 1.0 / (48 * t) + 7.0 / (5760 * t * t * t);
}

double theta_mod_2pi(const DD& t) {
  mp30 tr = mp30(t.hi) + mp30(t.lo);
  mp30 th = theta<mp30>(tr);
  mp30 tp = 2 * pi_const<mp30>();
  return static_cast<double>(fmod(th, tp));
}

namespace {

// C0(p) = cos(2pi(p^2-p-1/16))/cos(2pi p), removable 0/0 at p=1/4, 3/4.
double rs_c0(double p) {
  double u = 2 * M_PI * (p * p - p - 0.0625);
  double den = std::cos(2 * M_PI * p);
  if (std::abs(den) > 0.01) return std::cos(u) / den;
  double p0 = p < 0.5 ? 0.25 : 0.75;
  double d = p - p0;
  double u0 = 2 * M_PI * (p0 * p0 - p0 - 0.0625);
  double up = 2 * M_PI * (2 * p0 - 1), upp = 4 * M_PI;
  double su = std::sin(u0), cu = std::cos(u0);
  double f1 = -su * up;
  double f2 = -cu * up * up - su * upp;
  double f3 = su * up * up * up - 3 * cu * up * upp;
  double sg = std::sin(2 * M_PI * p0), cg = std::cos(2 * M_PI * p0);
  double g1 = -2 * M_PI * sg;
  double g2 = -4 * M_PI * M_PI * cg;
  double g3 = 8 * M_PI * M_PI * M_PI * sg;
  double num = f1 + f2 * d / 2 + f3 * d * d / 6;
  double dnm = g1 + g2 * d / 2 + g3 * d * d / 6;
  return num / dnm;
}

}  // namespace

double rs_z(double t) {
  if (t < 30) fail(Err::domain, "rs_z: needs t >= 30");
  double tau = t / (2 * M_PI);
  double sq = std::sqrt(tau);
  long m = (long)std::floor(sq);
  double p = sq - m;
  auto tables = f64_tables((size_t)m + 1);
  DD td{t, 0.0};
  double th = std::remainder(theta_fast(t), 2 * M_PI);
  double acc = 0;
  for (long n = 1; n <= m; ++n) {
    double ph = th - phase_mod_2pi(td, DD{tables->ln_hi[n], tables->ln_lo[n]});
    acc += tables->inv_sqrt[n] * std::cos(ph);
  }
  double corr = rs_c0(p) * std::pow(tau, -0.25);
  return 2 * acc + (m % 2 == 0 ? -corr : corr);
}

double rs_z_margin(double t) {
  return 5.0 * std::pow(t / (2 * M_PI), -0.75);
}

void hardy_z_dd(const DD& t, double* z, double* dz) {
  C64 zd[2];
  zeta_derivs_f64(0.5, t, 1, zd);
  double th = theta_mod_2pi(t);
  C64 e{std::cos(th), std::sin(th)};
  C64 a = e * zd[0];
  *z = a.re;
  if (dz) {
    double thp = 0.5 * std::log(t.hi / (2 * M_PI));
    C64 w = e * (C64{thp * zd[0].re, thp * zd[0].im} + zd[1]);
    *dz = -w.im;
  }
}

// ---------------- Stieltjes constants ------------------------------------

namespace {

struct StieltjesCache {
  std::once_flag once;
  mp50 g[3];
};
StieltjesCache& st_cache() { static StieltjesCache c; return c; }

void compute_stieltjes(mp50* g) {
  // gamma_n = (-1)^n n! a_n where a_n are Taylor coefficients at s=1 of
  // zeta(s) - 1/(s-1) (entire), extracted by trapezoid quadrature on the
  // circle |s-1| = 1/2.
  const int K = 64;
  const mp50 r("0.5");
  const mp50 two_pi = 2 * pi_const<mp50>();
  std::vector<Cx<mp50>> gv(K);
  for (int j = 0; j < K; ++j) {
    mp50 th = two_pi * j / K;
    Cx<mp50> e = cis(th);
    Cx<mp50> s{1 + r * e.re, r * e.im};
    Cx<mp50> val = zeta<mp50>(s) - Cx<mp50>{mp50(1), mp50(0)} / (Cx<mp50>{r * e.re, r * e.im});
    gv[j] = val;
  }
  mp50 fact(1);
  for (int n = 0; n <= 2; ++n) {
    Cx<mp50> a{};
    for (int j = 0; j < K; ++j) {
      mp50 th = two_pi * j * n / K;
      a += gv[j] * cis(-th);
    }
    mp50 rn(1);
    for (int i = 0; i < n; ++i) rn *= r;
    if (n > 0) fact *= n;
    mp50 coeff = a.re / (K * rn) * fact;
    g[n] = (n % 2 == 0) ? coeff : -coeff;
  }
}

}  // namespace

mp50 stieltjes_mp(int n) {
  if (n < 0 || n > 2) fail(Err::unsupported_index, "stieltjes: n must be 0, 1 or 2");
  auto& c = st_cache();
  std::call_once(c.once, [&] { compute_stieltjes(c.g); });
  return c.g[n];
}

double stieltjes_d(int n) { return static_cast<double>(stieltjes_mp(n)); }

// ---------------- explicit instantiations --------------------------------

#define ZX_SPECIAL_INST(R) \
  template Cx<R> lgamma_cx<R>(Cx<R>); \
  template Cx<R> digamma_cx<R>(Cx<R>); \
  template void zeta_derivs<R>(const Cx<R>&, int, Cx<R>*); \
  template Cx<R> zeta<R>(const Cx<R>&); \
  template Cx<R> zeta_deriv<R>(const Cx<R>&, int); \
  template Cx<R> chi<R>(const Cx<R>&); \
  template Cx<R> chi_stirling<R>(const Cx<R>&); \
  template Cx<R> chi_log_deriv<R>(const Cx<R>&); \
  template R theta<R>(const R&); \
  template Cx<R> hardy_z_full<R>(const R&); \
  template R hardy_z<R>(const R&);
ZX_SPECIAL_INST(double)
ZX_SPECIAL_INST(zx::mp30)
ZX_SPECIAL_INST(zx::mp50)
#undef ZX_SPECIAL_INST

}  // namespace zx::special
