#pragma once

// Direct sums over zero ordinates. Terms are evaluated at the context's
// working precision and accumulated in compensated double precision with a
// fixed block structure, so serial and parallel runs agree bit-for-bit.

#include <cstdint>
#include <vector>

#include "context.hpp"
#include "types.hpp"
#include "zeros.hpp"

namespace zx::zerosums {

// S-type sum: sum over the window of chi(rho) X^rho, rho = 1/2 + i gamma.
// On the critical line chi(1/2+it) = e^{-2 i theta(t)} exactly, which is how
// the terms are evaluated (the closed form, not the Stirling approximation).
C64 sum_chi_x_rho(const Context& ctx, const zeros::Window& w, double x);

// sum of X^{rho} (sign=+1) or X^{-rho} (sign=-1).
C64 sum_x_rho(const Context& ctx, const zeros::Window& w, double x, int sign);

// sum of zeta^{(nu)}(rho).
C64 sum_zeta_deriv(const Context& ctx, const zeros::Window& w, int nu);

// sum of chi(rho) n^rho (log(gamma/2pi))^k.
C64 sum_chi_weighted(const Context& ctx, const zeros::Window& w, uint64_t n, int k);

// Cumulative variants: value of the sum over (0, cut_j] for each cut, in one
// pass over the table. Cuts must be ascending and within coverage.
std::vector<C64> cumulative_chi_x_rho(const Context& ctx, const zeros::ZeroTable& t,
                                      const std::vector<double>& cuts, double x);
std::vector<C64> cumulative_x_rho(const Context& ctx, const zeros::ZeroTable& t,
                                  const std::vector<double>& cuts, double x, int sign);
// out[j][cut] for j = 1..nu_max (index 0 unused).
std::vector<std::vector<C64>> cumulative_zeta_derivs(const Context& ctx,
                                                     const zeros::ZeroTable& t,
                                                     const std::vector<double>& cuts,
                                                     int nu_max);

// Prefix sums of chi(rho) X^rho at every zero index (for the figure).
std::vector<C64> per_zero_prefix_chi_x_rho(const Context& ctx,
                                           const zeros::ZeroTable& t,
                                           size_t i0, size_t i1, double x);

}  // namespace zx::zerosums
