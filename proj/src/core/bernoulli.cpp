#include "bernoulli.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <mutex>

namespace zx {

namespace {

using BigInt = boost::multiprecision::cpp_int;

// Tangent numbers T_1..T_n (Brent-Harvey recurrence, exact integers):
// tan x = sum T_k x^(2k-1)/(2k-1)!.
std::vector<BigInt> tangent_numbers(int n) {
  std::vector<BigInt> t(n + 1);
  t[1] = 1;
  for (int k = 2; k <= n; ++k) t[k] = t[k - 1] * (k - 1);
  for (int k = 2; k <= n; ++k)
    for (int j = k; j <= n; ++j)
      t[j] = t[j - 1] * (j - k) + t[j] * (j - k + 2);
  return t;
}

// B_{2k} = (-1)^(k-1) * T_k * 2k / (2^(2k) * (2^(2k) - 1))
template <class R>
std::vector<R> make_table(int count) {
  auto t = tangent_numbers(count);
  std::vector<R> out(count);
  BigInt four_k = 4;  // 2^(2k)
  for (int k = 1; k <= count; ++k) {
    BigInt num = t[k] * (2 * k);
    BigInt den = four_k * (four_k - 1);
    mp50 v = mp50(num) / mp50(den);
    out[k - 1] = static_cast<R>(k % 2 == 1 ? v : mp50(-v));
    four_k *= 4;
  }
  return out;
}

template <class R>
struct Cache {
  std::mutex mu;
  std::vector<R> table;
};

template <class R> Cache<R>& cache() { static Cache<R> c; return c; }

}  // namespace

template <class R>
const std::vector<R>& bernoulli_even(int count) {
  auto& c = cache<R>();
  std::lock_guard<std::mutex> lock(c.mu);
  if ((int)c.table.size() < count) c.table = make_table<R>(count + 8);
  return c.table;
}

template const std::vector<double>& bernoulli_even<double>(int);
template const std::vector<mp30>& bernoulli_even<mp30>(int);
template const std::vector<mp50>& bernoulli_even<mp50>(int);

}  // namespace zx
