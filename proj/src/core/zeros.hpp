#pragma once

// Zero ordinates: in-house computation via Hardy Z sign changes, ingestion of
// published tables, persistence, windowed access, and the argument-principle
// count audit that backs all of it.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "context.hpp"
#include "dd.hpp"
#include "types.hpp"

namespace zx::zeros {

struct ZeroTable {
  enum class Source { computed, imported };

  std::vector<double> hi, lo;   // double-double ordinates, strictly increasing
  std::vector<double> gamma;    // hi+lo, for searching/iteration
  double tol = 1e-10;           // absolute error bound per ordinate
  Source source = Source::computed;
  double t_max = 0;             // coverage bound
  int text_decimals = 12;       // width used by the plain-text exporter

  size_t size() const { return gamma.size(); }
  DD at(size_t i) const { return {hi[i], lo[i]}; }
  size_t count_leq(double t) const;
};

using TablePtr = std::shared_ptr<const ZeroTable>;

// Half-open window (lo, hi] after boundary nudging.
struct Window {
  const ZeroTable* table = nullptr;
  size_t i0 = 0, i1 = 0;  // zero indices [i0, i1)
  double lo = 0, hi = 0;  // nudged bounds
  size_t count() const { return i1 - i0; }
};

// Endpoints within 1e-6 of an ordinate are moved 1e-6 away from it, on the
// side they came from.
double nudge(const ZeroTable& t, double x);
Window window(const ZeroTable& t, double lo, double hi);

TablePtr find_zeros(const Context& ctx, double t_max, double tol);

TablePtr import_zero_table(const Context& ctx, const std::string& path);
void export_plain_text(const ZeroTable& t, const std::string& path);

// "ZTBL" little-endian binary cache (see docs/formats.md).
void save_cache(const ZeroTable& t, const std::string& path);
TablePtr load_cache(const Context& ctx, const std::string& path);

// Exact count of zeros with 0 < gamma <= T, cross-validated against the
// argument-principle formula; throws audit_failure on mismatch.
uint64_t count_zeros(const Context& ctx, const ZeroTable& t, double T);

// S(T) = (1/pi) arg zeta(1/2+iT), by continuation from sigma=2 along the
// horizontal segment. T must not be an ordinate.
double s_of_t(double T);
// theta(T)/pi + 1 + S(T); throws audit_failure if not near an integer.
uint64_t n_of_t_formula(double T);

}  // namespace zx::zeros
