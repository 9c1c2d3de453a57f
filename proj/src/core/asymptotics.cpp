#include "asymptotics.hpp"

#include <cmath>

#include "arith.hpp"
#include "dd.hpp"
#include "special.hpp"

namespace zx::asymptotics {

namespace {

double sqr(double x) { return x * x; }

// (a, b) open interval of integers with a relative fuzz for endpoints that
// are integers up to double rounding.
NRange open_range(double a, double b) {
  NRange r;
  double fuzz_a = 1e-9 * std::max(1.0, std::abs(a));
  double fuzz_b = 1e-9 * std::max(1.0, std::abs(b));
  double ra = std::nearbyint(a), rb = std::nearbyint(b);
  if (std::abs(a - ra) <= fuzz_a) r.lo = (uint64_t)std::max(1.0, ra + 1);
  else r.lo = (uint64_t)std::max(1.0, std::floor(a) + 1);
  if (std::abs(b - rb) <= fuzz_b) r.hi = rb < 1 ? 0 : (uint64_t)(rb - 1);
  else r.hi = b < 1 ? 0 : (uint64_t)std::floor(b);
  return r;
}

}  // namespace

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::below_band: return "below-band";
    case Regime::in_band: return "in-band";
    case Regime::above_band: return "above-band";
  }
  return "?";
}

Regime classify_regime(double x, double t) {
  if (!(x >= 1) || !(t > 1)) fail(Err::invalid_argument, "classify_regime: needs X >= 1, T > 1");
  if (x <= t / (2 * M_PI)) return Regime::below_band;
  if (x <= t / M_PI) return Regime::in_band;
  return Regime::above_band;
}

NRange below_band_n_range(double x, double t) {
  return open_range(t / (2 * M_PI * x), t / (M_PI * x));
}

NRange above_band_n_range(double x, double t) {
  return open_range(M_PI * x / t, 2 * M_PI * x / t);
}

C64 e2pi(double y) {
  DD r{y, 0.0};
  double k = std::nearbyint(y);
  DD f = dd_add(r, -k);
  double ph = 2 * M_PI * dd_to_double(f);
  return {std::cos(ph), std::sin(ph)};
}

Prediction error_budget_S(double x, double t) {
  if (!(x >= 1) || !(t > 1)) fail(Err::invalid_argument, "error_budget_S: needs X >= 1, T > 1");
  double lt = std::log(t), st = std::sqrt(t);
  Prediction p;
  p.terms.push_back({"horizontal-T", st * sqr(lt)});
  p.terms.push_back({"horizontal-X", std::pow(x, 1 + 1 / lt) * sqr(lt) / st});
  p.terms.push_back({"resonance-2piX", std::pow(t, 1.5) * lt / (std::abs(t - 2 * M_PI * x) + st)});
  p.terms.push_back({"resonance-piX", std::pow(t, 1.5) * lt / (std::abs(t - M_PI * x) + st)});
  for (const auto& b : p.terms) p.budget += b.value;
  return p;
}

Prediction predict_S(const Context& ctx, double x, double t) {
  Prediction p = error_budget_S(x, t);
  Regime reg = classify_regime(x, t);
  if (reg == Regime::in_band) {
    // X log X e^{2 pi i X}
    C64 ph = e2pi(x);
    double m = x * std::log(x);
    p.main = {m * ph.re, m * ph.im};
    return p;
  }
  auto sv = ctx.sieve();
  if (reg == Regime::below_band) {
    NRange r = below_band_n_range(x, t);
    if (!r.empty() && !sv->covers(r.hi))
      fail(Err::sieve_limit_exceeded, "predict_S: below-band range needs Lambda(n) to n=" +
           std::to_string(r.hi));
    C64 acc{};
    DD xd{x, 0.0};
    for (uint64_t n = r.lo; !r.empty() && n <= r.hi; ++n) {
      uint32_t pr = sv->prime(n);
      if (!pr) continue;
      double lam = std::log((double)pr);
      // phase 2 pi X n
      DD prod = dd_mul(xd, (double)n);
      double k = std::nearbyint(prod.hi);
      double ph = 2 * M_PI * dd_to_double(dd_add(prod, -k));
      acc += C64{lam * std::cos(ph), lam * std::sin(ph)};
    }
    p.main = {-x * acc.re, -x * acc.im};
    return p;
  }
  // above band
  NRange r = above_band_n_range(x, t);
  if (!r.empty() && !sv->covers(r.hi))
    fail(Err::sieve_limit_exceeded, "predict_S: above-band range needs Lambda(n) to n=" +
         std::to_string(r.hi));
  C64 acc{};
  for (uint64_t n = r.lo; !r.empty() && n <= r.hi; ++n) {
    uint32_t pr = sv->prime(n);
    if (!pr) continue;
    double lam = std::log((double)pr) / (double)n;
    // phase 2 pi X / n in double-double
    double q0 = x / (double)n;
    double q1 = std::fma(-q0, (double)n, x) / (double)n;
    DD q{q0, q1};
    double k = std::nearbyint(q.hi);
    double ph = 2 * M_PI * dd_to_double(dd_add(q, -k));
    acc += C64{lam * std::cos(ph), lam * std::sin(ph)};
  }
  p.main = {-x * acc.re, -x * acc.im};
  return p;
}

Prediction predict_landau_gonek(double x, double t, int sign) {
  if (!(x > 1) || !(t > 1))
    fail(Err::invalid_argument, "predict_landau_gonek: needs X > 1, T > 1");
  if (sign != 1 && sign != -1)
    fail(Err::invalid_argument, "predict_landau_gonek: sign must be +-1");
  double lam = arith::von_mangoldt_real(x);
  double gap = arith::nearest_prime_power_distance(x);
  double lx = std::log(x);
  Prediction p;
  if (sign > 0) {
    p.main = {-t / (2 * M_PI) * lam, 0};
    p.terms.push_back({"x-log", x * std::log(2 * x * t) * std::log(std::log(3 * x))});
    p.terms.push_back({"gap", lx * std::min(t, x / gap)});
    p.terms.push_back({"logx-pole", std::log(2 * t) * std::min(t, lx > 0 ? 1 / lx : t)});
  } else {
    p.main = {-t / (2 * M_PI) * lam / x, 0};
    p.terms.push_back({"x-log", std::log(2 * x * t) * std::log(std::log(3 * x))});
    p.terms.push_back({"gap", lx * std::min(t / x, 1 / gap)});
    p.terms.push_back({"logx-pole", std::log(2 * t) * std::min(t / x, lx > 0 ? 1 / (x * lx) : t / x)});
  }
  for (const auto& b : p.terms) p.budget += b.value;
  return p;
}

namespace {

double shanks_main(double t) {
  double l = special::ell(t);
  double g0 = special::stieltjes_d(0), g1 = special::stieltjes_d(1);
  double u = t / (2 * M_PI);
  return 0.5 * u * l * l + (g0 - 1) * u * l + (1 - g0 - g0 * g0 - 3 * g1) * u;
}

double shanks_unconditional(double t) { return t * std::exp(-std::sqrt(std::log(t))); }
double shanks_rh_shape(double t) { return std::sqrt(t) * std::pow(std::log(t), 3.25); }

}  // namespace

Prediction predict_shanks(double t) {
  if (!(t >= 10)) fail(Err::invalid_argument, "predict_shanks: needs T >= 10");
  Prediction p;
  p.main = {shanks_main(t), 0};
  p.terms.push_back({"unconditional", shanks_unconditional(t)});
  p.extra.push_back({"rh", shanks_rh_shape(t)});
  p.budget = p.terms[0].value;
  return p;
}

Prediction predict_shanks_rh(double t) {
  if (!(t >= 10)) fail(Err::invalid_argument, "predict_shanks: needs T >= 10");
  Prediction p;
  p.main = {shanks_main(t), 0};
  p.terms.push_back({"rh", shanks_rh_shape(t)});
  p.extra.push_back({"unconditional", shanks_unconditional(t)});
  p.budget = p.terms[0].value;
  return p;
}

Prediction predict_deriv_sum(int nu, double t) {
  if (nu < 1 || nu > 8) fail(Err::invalid_argument, "predict_deriv_sum: nu must be 1..8");
  if (!(t >= 10)) fail(Err::invalid_argument, "predict_deriv_sum: needs T >= 10");
  double l = special::ell(t);
  double m = t / (2 * M_PI) / (nu + 1);
  for (int j = 0; j < nu + 1; ++j) m *= l;
  if (nu % 2 == 0) m = -m;  // (-1)^(nu+1)
  Prediction p;
  p.main = {m, 0};
  p.terms.push_back({"t-log-nu", t * std::pow(std::log(t), nu)});
  p.budget = p.terms[0].value;
  return p;
}

Prediction predict_J(double sigma, double r, double t) {
  if (!(sigma >= -1 && sigma <= 2))
    fail(Err::invalid_argument, "predict_J: needs -1 <= sigma <= 2");
  if (!(r > 0) || !(t >= 10)) fail(Err::invalid_argument, "predict_J: needs r > 0, T >= 10");
  Prediction p;
  double tpr = 2 * M_PI * r;
  if (t < tpr && tpr <= 2 * t) {
    double m = 2 * M_PI * std::pow(r, 1 - sigma);
    C64 ph = e2pi(r);
    p.main = {m * ph.re, m * ph.im};
  }
  double st = std::sqrt(t);
  p.terms.push_back({"flat", std::pow(t, 0.5 - sigma)});
  p.terms.push_back({"resonance-T", std::pow(t, 1.5 - sigma) / (std::abs(t - tpr) + st)});
  p.terms.push_back({"resonance-2T", std::pow(t, 1.5 - sigma) / (std::abs(2 * t - tpr) + st)});
  for (const auto& b : p.terms) p.budget += b.value;
  return p;
}

Prediction predict_corollary_integer(const Context& ctx, uint64_t x, double t) {
  (void)ctx;
  if (x < 1) fail(Err::invalid_argument, "predict_corollary_integer: needs X >= 1");
  if (!(t > 10)) fail(Err::invalid_argument, "predict_corollary_integer: needs T > 10");
  if ((double)x > t / (2 * M_PI * std::log(t)))
    fail(Err::invalid_argument,
         "predict_corollary_integer: X too large for the X = o(T) regime "
         "(enforced X <= T/(2 pi log T))");
  Prediction p;
  p.main = {-t / (2 * M_PI), 0};
  double xlx = x == 1 ? 0.0 : (double)x * std::log((double)x);
  p.terms.push_back({"x-log-x", xlx});
  p.terms.push_back({"psi-tail", std::min(shanks_unconditional(t), std::sqrt(t) * sqr(std::log(t)))});
  p.extra.push_back({"unconditional", shanks_unconditional(t)});
  p.extra.push_back({"rh", std::sqrt(t) * sqr(std::log(t))});
  for (const auto& b : p.terms) p.budget += b.value;
  return p;
}

}  // namespace zx::asymptotics
