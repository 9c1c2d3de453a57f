#pragma once

// Predicted main terms and error budgets: the three-regime asymptotic for
// S(X,T), its corollaries, Landau-Gonek, Shanks/Fujii, the generalised
// derivative sums, and the oscillatory integral J. All O-constants are 1;
// calibration happens in the report layer.

#include <cstdint>
#include <string>
#include <vector>

#include "context.hpp"
#include "types.hpp"

namespace zx::asymptotics {

enum class Regime { below_band, in_band, above_band };

const char* regime_name(Regime r);

// Boundary ties follow the theorem as printed: X = T/2pi is below-band,
// X = T/pi is in-band.
Regime classify_regime(double x, double t);

struct BudgetTerm {
  std::string name;
  double value = 0;
};

struct Prediction {
  C64 main{};
  double budget = 0;                // = sum of terms
  std::vector<BudgetTerm> terms;    // named contributions
  std::vector<BudgetTerm> extra;    // alternative shapes, not in the budget
};

// Integer ranges of the regime n-sums. Both resonance endpoints (where
// 2 pi X n or 2 pi X / n meets the window edge 2T) are open, so both ranges
// are empty exactly at the jumps X = T/2pi and X = T/pi.
struct NRange {
  uint64_t lo = 1, hi = 0;  // inclusive; lo > hi means empty
  bool empty() const { return lo > hi; }
};
NRange below_band_n_range(double x, double t);  // T/(2 pi X) < n < T/(pi X)
NRange above_band_n_range(double x, double t);  // pi X / T < n < 2 pi X / T

Prediction predict_S(const Context& ctx, double x, double t);
Prediction error_budget_S(double x, double t);
Prediction predict_landau_gonek(double x, double t, int sign);
Prediction predict_shanks(double t);      // budget: unconditional shape
Prediction predict_shanks_rh(double t);   // budget: RH shape
Prediction predict_deriv_sum(int nu, double t);
Prediction predict_J(double sigma, double r, double t);
Prediction predict_corollary_integer(const Context& ctx, uint64_t x, double t);

// e^{2 pi i y} with the fractional part taken in double-double.
C64 e2pi(double y);

}  // namespace zx::asymptotics
