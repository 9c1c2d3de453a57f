#pragma once

// Direct numerical evaluation of the paper-facing integrals: the oscillatory
// J(sigma, r, T), the rectangle contour representation of the zero sum, and
// the approximate-functional-equation residual.

#include <cstdint>
#include <functional>

#include "context.hpp"
#include "types.hpp"
#include "zeros.hpp"

namespace zx::quadrature {

struct QuadResult {
  C64 value{};
  double est_error = 0;
  uint64_t evaluations = 0;
  bool converged = true;
};

// Adaptive Gauss-Kronrod 7/15 over [a, b] with caller-provided seed points.
QuadResult integrate(const std::function<C64(double)>& f, double a, double b,
                     double tol, const std::vector<double>& seeds,
                     uint64_t max_evals = 4000000);

// J(sigma, r, T) = int_T^{2T} chi(sigma+it) r^{it} dt, panels sized by the
// phase derivative log(t/(2 pi r)).
QuadResult integrate_J(const Context& ctx, double sigma, double r, double t,
                       double tol);

struct ContourResult {
  QuadResult q;
  double t1 = 0, t2 = 0;  // nudged endpoints actually used
};

// (1/2 pi i) times the rectangle integral of (zeta'/zeta) chi X^s, vertices
// c + iT1, c + iT2, 1-c + iT2, 1-c + iT1 with c = 1 + 1/log T2. Equals the
// direct zero sum over (T1, T2].
ContourResult contour_sum(const Context& ctx, const zeros::ZeroTable& table,
                          double x, double t1, double t2, double tol);

// zeta^{(nu)}(s) minus the two AFE sums (no error terms); nu >= 1.
C64 afe_residual(const Context& ctx, const C64& s, double alpha, int nu);

// The AFE error-shape t^{-alpha/2} (log t)^{nu+1} + t^{-(1-alpha)/2} (log t)^{nu+1}.
double afe_budget(double t, double alpha, int nu);

}  // namespace zx::quadrature
