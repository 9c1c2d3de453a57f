#pragma once

// Elementary arithmetic: the von Mangoldt sieve, prime-power distance, the
// partial sums backing the predictor lemmas, and the binomial identity used
// in the generalised Shanks derivation.

#include <cstdint>
#include <memory>
#include <vector>

#include "context.hpp"
#include "types.hpp"

namespace zx::arith {

// Lambda(n) stored as the prime base: prime_of[n] = p if n = p^k, else 0.
// Lambda(n) = log(prime_of[n]) recovered on demand, so the table stays exact
// at any working precision.
struct LambdaSieve {
  uint64_t limit = 0;
  std::vector<uint32_t> prime_of;

  bool covers(uint64_t n) const { return n <= limit; }
  uint32_t prime(uint64_t n) const { return prime_of[n]; }
  double lambda(uint64_t n) const {
    return prime_of[n] ? std::log((double)prime_of[n]) : 0.0;
  }
};

std::shared_ptr<const LambdaSieve> make_sieve(uint64_t limit);

bool is_prime_u64(uint64_t n);
// If n = p^k (k >= 1, p prime) sets *p_out = p and returns true.
bool is_prime_power(uint64_t n, uint64_t* p_out);

// Lambda(n) without a sieve (Miller-Rabin + perfect-power test).
double von_mangoldt(uint64_t n);

// Lambda extended to real arguments: nonzero only within 1e-9 of an integer
// prime power.
double von_mangoldt_real(double x);

// <X> = min over prime powers q != X of |X - q|, X > 1. An integer within
// 1e-9 of X is excluded from the minimum.
double nearest_prime_power_distance(double x);

enum class PartialSumKind {
  recip_sum,            // sum 1/n
  log_over_n,           // sum log n / n
  lambda_log_over_n,    // sum Lambda(n) log n / n
  pow_log,              // sum n^C log n
  pow_lambda_log,       // sum Lambda(n) n^C log n
  lambda_log_nu_over_n, // sum Lambda(n) (log n)^nu / n
  pow_lambda_log_nu,    // sum Lambda(n) n^C (log n)^nu
  log_nu_over_n,        // sum (log n)^nu / n
  pow_log_nu,           // sum n^C (log n)^nu
};

constexpr int kNumPartialSumKinds = 9;
const char* partial_sum_kind_name(PartialSumKind k);
bool partial_sum_kind_from_name(const std::string& s, PartialSumKind* out);

double partial_sum_direct(const Context& ctx, PartialSumKind kind, double x,
                          int nu, double c);
void partial_sum_predicted(PartialSumKind kind, double x, int nu, double c,
                           double* main, double* budget);

void binomial_alpha_identity(int nu, double alpha, double* lhs, double* rhs);

}  // namespace zx::arith
