#include "arith.hpp"

#include <cmath>
#include <cstring>

#include "special.hpp"

namespace zx {

std::shared_ptr<const arith::LambdaSieve> Context::sieve() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!sieve_) sieve_ = arith::make_sieve(sieve_limit_);
  return sieve_;
}

}  // namespace zx

namespace zx::arith {

std::shared_ptr<const LambdaSieve> make_sieve(uint64_t limit) {
  auto sv = std::make_shared<LambdaSieve>();
  sv->limit = limit;
  sv->prime_of.assign(limit + 1, 0);
  std::vector<uint8_t> comp(limit + 1, 0);
  for (uint64_t p = 2; p <= limit; ++p) {
    if (comp[p]) continue;
    sv->prime_of[p] = (uint32_t)p;
    if (p * p <= limit)
      for (uint64_t q = p * p; q <= limit; q += p) comp[q] = 1;
    // mark proper prime powers
    for (uint64_t q = p * p; q <= limit; q *= p) {
      sv->prime_of[q] = (uint32_t)p;
      if (q > limit / p) break;
    }
  }
  return sv;
}

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return (uint64_t)((__uint128_t)a * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) { d >>= 1; ++r; }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i < r - 1; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

// exact integer k-th root check around a floating guess
bool exact_power(uint64_t n, uint64_t base, int k) {
  __uint128_t v = 1;
  for (int i = 0; i < k; ++i) {
    v *= base;
    if (v > n) return false;
  }
  return v == n;
}

}  // namespace

bool is_prime_power(uint64_t n, uint64_t* p_out) {
  if (n < 2) return false;
  if (is_prime_u64(n)) { if (p_out) *p_out = n; return true; }
  for (int k = 2; k < 64; ++k) {
    if ((n >> k) == 0 && k > 1 && (1ull << k) > n) break;
    double r = std::pow((double)n, 1.0 / k);
    for (int64_t cand = (int64_t)r - 1; cand <= (int64_t)r + 1; ++cand) {
      if (cand < 2) continue;
      if (exact_power(n, (uint64_t)cand, k) && is_prime_u64((uint64_t)cand)) {
        if (p_out) *p_out = (uint64_t)cand;
        return true;
      }
    }
  }
  return false;
}

double von_mangoldt(uint64_t n) {
  uint64_t p;
  if (n >= 2 && is_prime_power(n, &p)) return std::log((double)p);
  return 0.0;
}

double von_mangoldt_real(double x) {
  if (x < 1.5) return 0.0;
  double r = std::nearbyint(x);
  if (std::abs(x - r) > 1e-9) return 0.0;
  return von_mangoldt((uint64_t)r);
}

double nearest_prime_power_distance(double x) {
  if (!(x > 1.0)) fail(Err::invalid_argument, "nearest_prime_power_distance: needs X > 1");
  double r = std::nearbyint(x);
  uint64_t excluded = (std::abs(x - r) < 1e-9 && r >= 2.0) ? (uint64_t)r : 0;

  double best = std::numeric_limits<double>::infinity();
  for (uint64_t m = (uint64_t)std::floor(x); m >= 2; --m) {
    if (m != excluded && is_prime_power(m, nullptr)) { best = x - (double)m; break; }
    if (m == 2) break;
  }
  for (uint64_t m = (uint64_t)std::ceil(x); ; ++m) {
    if (m >= 2 && m != excluded && is_prime_power(m, nullptr)) {
      best = std::min(best, (double)m - x);
      break;
    }
  }
  return best;
}

// ---------------- partial sums -------------------------------------------

const char* partial_sum_kind_name(PartialSumKind k) {
  switch (k) {
    case PartialSumKind::recip_sum: return "recip-sum";
    case PartialSumKind::log_over_n: return "log-over-n";
    case PartialSumKind::lambda_log_over_n: return "lambda-log-over-n";
    case PartialSumKind::pow_log: return "pow-log";
    case PartialSumKind::pow_lambda_log: return "pow-lambda-log";
    case PartialSumKind::lambda_log_nu_over_n: return "lambda-log-nu-over-n";
    case PartialSumKind::pow_lambda_log_nu: return "pow-lambda-log-nu";
    case PartialSumKind::log_nu_over_n: return "log-nu-over-n";
    case PartialSumKind::pow_log_nu: return "pow-log-nu";
  }
  return "?";
}

bool partial_sum_kind_from_name(const std::string& s, PartialSumKind* out) {
  for (int i = 0; i < kNumPartialSumKinds; ++i) {
    auto k = (PartialSumKind)i;
    if (s == partial_sum_kind_name(k)) { *out = k; return true; }
  }
  return false;
}

namespace {

bool kind_uses_lambda(PartialSumKind k) {
  return k == PartialSumKind::lambda_log_over_n || k == PartialSumKind::pow_lambda_log ||
         k == PartialSumKind::lambda_log_nu_over_n || k == PartialSumKind::pow_lambda_log_nu;
}

bool kind_uses_pow(PartialSumKind k) {
  return k == PartialSumKind::pow_log || k == PartialSumKind::pow_lambda_log ||
         k == PartialSumKind::pow_lambda_log_nu || k == PartialSumKind::pow_log_nu;
}

bool kind_uses_nu(PartialSumKind k) {
  return k == PartialSumKind::lambda_log_nu_over_n || k == PartialSumKind::pow_lambda_log_nu ||
         k == PartialSumKind::log_nu_over_n || k == PartialSumKind::pow_log_nu;
}

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

double ipow(double b, int e) {
  double r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

double partial_sum_direct(const Context& ctx, PartialSumKind kind, double x,
                          int nu, double c) {
  if (!(x >= 2)) fail(Err::invalid_argument, "partial_sum_direct: needs x >= 2");
  if (kind_uses_nu(kind) && (nu < 0 || nu > 12))
    fail(Err::invalid_argument, "partial_sum_direct: nu out of range");
  if (kind_uses_pow(kind) && !(c > -1))
    fail(Err::invalid_argument, "partial_sum_direct: needs C > -1");

  uint64_t nmax = (uint64_t)std::floor(x);
  std::shared_ptr<const LambdaSieve> sv;
  if (kind_uses_lambda(kind)) {
    sv = ctx.sieve();
    if (!sv->covers(nmax))
      fail(Err::sieve_limit_exceeded, "partial_sum_direct: sieve limit " +
           std::to_string(sv->limit) + " < " + std::to_string(nmax));
  }

  Neum acc;
  for (uint64_t n = 1; n <= nmax; ++n) {
    double ln = std::log((double)n);
    double lam = 0;
    if (kind_uses_lambda(kind)) {
      uint32_t p = sv->prime(n);
      if (!p) continue;
      lam = std::log((double)p);
    }
    double term = 0;
    switch (kind) {
      case PartialSumKind::recip_sum:            term = 1.0 / n; break;
      case PartialSumKind::log_over_n:           term = ln / n; break;
      case PartialSumKind::lambda_log_over_n:    term = lam * ln / n; break;
      case PartialSumKind::pow_log:              term = std::pow((double)n, c) * ln; break;
      case PartialSumKind::pow_lambda_log:       term = lam * std::pow((double)n, c) * ln; break;
      case PartialSumKind::lambda_log_nu_over_n: term = lam * ipow(ln, nu) / n; break;
      case PartialSumKind::pow_lambda_log_nu:    term = lam * std::pow((double)n, c) * ipow(ln, nu); break;
      case PartialSumKind::log_nu_over_n:        term = ipow(ln, nu) / n; break;
      case PartialSumKind::pow_log_nu:           term = std::pow((double)n, c) * ipow(ln, nu); break;
    }
    acc.add(term);
  }
  return acc.get();
}

void partial_sum_predicted(PartialSumKind kind, double x, int nu, double c,
                           double* main, double* budget) {
  if (!(x >= 2)) fail(Err::invalid_argument, "partial_sum_predicted: needs x >= 2");
  if (kind_uses_nu(kind) && (nu < 0 || nu > 12))
    fail(Err::invalid_argument, "partial_sum_predicted: nu out of range");
  if (kind_uses_pow(kind) && !(c > -1))
    fail(Err::invalid_argument, "partial_sum_predicted: needs C > -1");

  double lx = std::log(x);
  double g0 = special::stieltjes_d(0), g1 = special::stieltjes_d(1);
  double xc1 = kind_uses_pow(kind) ? std::pow(x, c + 1) : 0;
  switch (kind) {
    case PartialSumKind::recip_sum:
      *main = lx + g0; *budget = 1.0 / x; return;
    case PartialSumKind::log_over_n:
      *main = 0.5 * lx * lx + g1; *budget = lx / x; return;
    case PartialSumKind::lambda_log_over_n:
      *main = 0.5 * lx * lx - (g0 * g0 + 2 * g1);
      *budget = std::exp(-std::sqrt(lx)); return;
    case PartialSumKind::pow_log:
      *main = xc1 * lx / (c + 1) - xc1 / ((c + 1) * (c + 1));
      *budget = std::pow(x, c) * lx; return;
    case PartialSumKind::pow_lambda_log:
      *main = xc1 * lx / (c + 1) - xc1 / ((c + 1) * (c + 1));
      *budget = xc1 * std::exp(-std::sqrt(lx)); return;
    case PartialSumKind::lambda_log_nu_over_n:
      *main = ipow(lx, nu + 1) / (nu + 1); *budget = ipow(lx, nu); return;
    case PartialSumKind::pow_lambda_log_nu:
      *main = xc1 * ipow(lx, nu) / (c + 1);
      *budget = xc1 * (nu >= 1 ? ipow(lx, nu - 1) : 1.0 / lx); return;
    case PartialSumKind::log_nu_over_n:
      *main = ipow(lx, nu + 1) / (nu + 1); *budget = ipow(lx, nu); return;
    case PartialSumKind::pow_log_nu:
      *main = xc1 * ipow(lx, nu) / (c + 1);
      *budget = xc1 * (nu >= 1 ? ipow(lx, nu - 1) : 1.0 / lx); return;
  }
  fail(Err::unsupported_kind, "partial_sum_predicted: unknown kind");
}

void binomial_alpha_identity(int nu, double alpha, double* lhs, double* rhs) {
  if (nu < 0 || nu > 40) fail(Err::invalid_argument, "binomial identity: nu out of range");
  if (!(alpha > 0 && alpha < 1)) fail(Err::invalid_argument, "binomial identity: needs 0 < alpha < 1");
  double om = 1 - alpha;
  double binom = 1;  // C(nu, j)
  double ompow = om; // (1-alpha)^(j+1)
  double acc = 0;
  for (int j = 0; j <= nu; ++j) {
    double term = binom * ompow / (j + 1);
    acc += (j % 2 == 0) ? term : -term;
    binom = binom * (nu - j) / (j + 1);
    ompow *= om;
  }
  *lhs = acc;
  *rhs = (1 - std::pow(alpha, nu + 1)) / (nu + 1);
}

}  // namespace zx::arith
