#pragma once

#include <cstdint>
#include <memory>
#include <mutex>

#include "types.hpp"

namespace zx {

namespace arith { struct LambdaSieve; }

// Runtime configuration. Precision is an explicit parameter carried by the
// context, not ambient state; the sieve is built lazily, once, then frozen.
class Context {
public:
  Context() = default;
  Context(int digits, uint64_t sieve_limit) { set_precision(digits); set_sieve_limit(sieve_limit); }

  void set_precision(int digits) {
    if (digits < kMinDigits || digits > kMaxDigits)
      fail(Err::invalid_argument, "precision_digits must be in [15, 50]");
    digits_ = digits;
  }
  void set_sieve_limit(uint64_t limit) {
    if (limit < 100 || limit > 200000000)
      fail(Err::invalid_argument, "sieve_limit must be in [1e2, 2e8]");
    std::lock_guard<std::mutex> lock(mu_);
    if (limit != sieve_limit_) sieve_.reset();
    sieve_limit_ = limit;
  }

  int precision_digits() const { return digits_; }
  Rung rung() const { return rung_for_digits(digits_); }
  uint64_t sieve_limit() const { return sieve_limit_; }

  std::shared_ptr<const arith::LambdaSieve> sieve() const;

private:
  int digits_ = 30;
  uint64_t sieve_limit_ = 10000000;
  mutable std::mutex mu_;
  mutable std::shared_ptr<const arith::LambdaSieve> sieve_;
};

}  // namespace zx
