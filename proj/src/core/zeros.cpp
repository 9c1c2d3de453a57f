#include "zeros.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <future>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include "arith.hpp"

#include "special.hpp"

namespace zx::zeros {

namespace {

constexpr double kScanStart = 14.0;
constexpr double kScanStep = 0.05;
constexpr double kNudgeEps = 1e-6;

// Z with trustworthy sign: Riemann-Siegel when its error margin allows,
// Euler-Maclaurin otherwise (small t or |Z| below the RS margin).
double scan_z(double t) {
  if (t >= 40.0) {
    double z = special::rs_z(t);
    if (std::abs(z) >= special::rs_z_margin(t)) return z;
  }
  double z, *dz = nullptr;
  (void)dz;
  special::hardy_z_dd(DD{t, 0.0}, &z, nullptr);
  return z;
}

struct Refined {
  DD g;
  double resid, slope;
};

// Safeguarded Newton inside an EM-verified bracket.
bool refine_zero(double a, double b, double tol, Refined* out) {
  double za, zb;
  special::hardy_z_dd(DD{a, 0.0}, &za, nullptr);
  special::hardy_z_dd(DD{b, 0.0}, &zb, nullptr);
  if (za == 0) { out->g = DD{a, 0}; out->resid = 0; out->slope = 1; return true; }
  if (zb == 0) { out->g = DD{b, 0}; out->resid = 0; out->slope = 1; return true; }
  if ((za > 0) == (zb > 0)) return false;

  DD g{0.5 * (a + b), 0.0};
  double z = 0, dz = 1;
  for (int it = 0; it < 60; ++it) {
    special::hardy_z_dd(g, &z, &dz);
    double gd = dd_to_double(g);
    // shrink the bracket with the fresh sign
    if ((z > 0) == (za > 0)) a = gd; else b = gd;
    double step = dz != 0 ? z / dz : 0.0;
    double cand = gd - step;
    if (dz == 0 || cand <= a || cand >= b) {
      // fall back to bisection
      g = DD{0.5 * (a + b), 0.0};
      if (b - a < tol * 0.01) break;
      continue;
    }
    g = dd_add(g, -step);
    if (std::abs(step) < 0.02 * tol) break;
  }
  special::hardy_z_dd(g, &z, &dz);
  out->g = g;
  out->resid = std::abs(z);
  out->slope = std::abs(dz);
  return out->resid <= tol * std::max(out->slope, 1e-3);
}

// One grid scan over [t0, t1]; returns sign-change brackets.
std::vector<std::pair<double, double>> scan_brackets(double t0, double t1, double h) {
  long n = (long)std::ceil((t1 - t0) / h);
  std::vector<std::pair<double, double>> br;
  std::vector<double> zs((size_t)n + 1);

  unsigned workers = std::min(std::thread::hardware_concurrency(), 8u);
  if (workers < 1) workers = 1;
  long chunk = (n + 1 + workers - 1) / workers;
  std::vector<std::future<void>> fs;
  for (unsigned w = 0; w < workers; ++w) {
    long i0 = w * chunk, i1 = std::min<long>(n + 1, i0 + chunk);
    if (i0 >= i1) break;
    fs.push_back(std::async(std::launch::async, [&, i0, i1] {
      for (long i = i0; i < i1; ++i) {
        double t = std::min(t0 + i * h, t1);
        zs[(size_t)i] = scan_z(t);
      }
    }));
  }
  for (auto& f : fs) f.get();

  for (long i = 0; i < n; ++i) {
    double ta = std::min(t0 + i * h, t1), tb = std::min(t0 + (i + 1) * h, t1);
    if (ta >= tb) continue;
    double za = zs[(size_t)i], zb = zs[(size_t)(i + 1)];
    if (za == 0) za = -zb;  // exact grid hit: treat as boundary of change
    if ((za > 0) != (zb > 0)) br.emplace_back(ta, tb);
  }
  return br;
}

std::vector<Refined> refine_all(const std::vector<std::pair<double, double>>& br,
                                double tol) {
  std::vector<Refined> out(br.size());
  std::vector<uint8_t> ok(br.size(), 0);
  unsigned workers = std::min(std::thread::hardware_concurrency(), 8u);
  if (workers < 1) workers = 1;
  size_t chunk = (br.size() + workers - 1) / workers;
  std::vector<std::future<void>> fs;
  for (unsigned w = 0; w < workers; ++w) {
    size_t i0 = w * chunk, i1 = std::min(br.size(), i0 + chunk);
    if (i0 >= i1) break;
    fs.push_back(std::async(std::launch::async, [&, i0, i1] {
      for (size_t i = i0; i < i1; ++i) {
        // narrow with the scan evaluator first (cheap), then polish
        double a = br[i].first, b = br[i].second;
        double za = scan_z(a);
        while (b - a > 2e-3) {
          double m = 0.5 * (a + b);
          double zm = scan_z(m);
          if ((zm > 0) == (za > 0)) { a = m; za = zm; } else b = m;
        }
        ok[i] = refine_zero(a, b, tol, &out[i]) ? 1 : 0;
      }
    }));
  }
  for (auto& f : fs) f.get();
  for (size_t i = 0; i < br.size(); ++i)
    if (!ok[i])
      fail(Err::refinement_failure,
           "zero refinement failed near t=" + std::to_string(br[i].first));
  return out;
}

}  // namespace

size_t ZeroTable::count_leq(double t) const {
  return std::upper_bound(gamma.begin(), gamma.end(), t) - gamma.begin();
}

double nudge(const ZeroTable& t, double x) {
  auto it = std::lower_bound(t.gamma.begin(), t.gamma.end(), x - kNudgeEps);
  if (it != t.gamma.end() && std::abs(*it - x) < kNudgeEps)
    return x >= *it ? *it + kNudgeEps : *it - kNudgeEps;
  if (it != t.gamma.begin() && std::abs(*(it - 1) - x) < kNudgeEps) {
    double g = *(it - 1);
    return x >= g ? g + kNudgeEps : g - kNudgeEps;
  }
  return x;
}

Window window(const ZeroTable& t, double lo, double hi) {
  if (!(lo <= hi)) fail(Err::invalid_argument, "window: needs lo <= hi");
  if (hi > t.t_max + 1e-9)
    fail(Err::out_of_coverage, "window: hi=" + std::to_string(hi) +
         " beyond table coverage t_max=" + std::to_string(t.t_max));
  Window w;
  w.table = &t;
  w.lo = nudge(t, lo);
  w.hi = nudge(t, hi);
  w.i0 = t.count_leq(w.lo);
  w.i1 = t.count_leq(w.hi);
  return w;
}

// ---------------- S(T) and the count formula ------------------------------

double s_of_t(double T) {
  // Start at sigma=2 where log zeta has an absolutely convergent Dirichlet
  // series: log zeta(s) = sum Lambda(n)/(log n) n^{-s}. Tail < 1.3/K.
  const long K = 4000;
  static std::shared_ptr<const arith::LambdaSieve> sv = arith::make_sieve(K);
  auto ln_tabs = special::f64_tables((size_t)K + 1);
  DD t{T, 0.0};
  double arg_acc = 0;
  for (long n = 2; n <= K; ++n) {
    uint32_t p = sv->prime((uint64_t)n);
    if (!p) continue;
    double ln = ln_tabs->ln_hi[(size_t)n];
    double coef = std::log((double)p) / (ln * (double)n * (double)n);
    double ph = phase_mod_2pi(t, DD{ln_tabs->ln_hi[(size_t)n], ln_tabs->ln_lo[(size_t)n]});
    arg_acc += -coef * std::sin(ph);  // Im of coef * e^{-i T log n}
  }

  // Continue the argument from sigma=2 down to 1/2 through nonzero territory.
  C64 out[1];
  special::zeta_derivs_f64(2.0, t, 0, out);
  C64 prev = out[0];
  double sigma = 2.0, step = 0.25;
  while (sigma > 0.5) {
    double next = std::max(0.5, sigma - step);
    special::zeta_derivs_f64(next, t, 0, out);
    C64 cur = out[0];
    C64 ratio = cur / prev;
    double dphi = std::atan2(ratio.im, ratio.re);
    if (std::abs(dphi) > 1.2 && step > 1e-3) { step /= 2; continue; }
    arg_acc += dphi;
    prev = cur;
    sigma = next;
    step = std::min(step * 1.5, 0.25);
  }
  return arg_acc / M_PI;
}

uint64_t n_of_t_formula(double T) {
  mp30 th = special::theta<mp30>(mp30(T));
  double v = static_cast<double>(th) / M_PI + 1.0 + s_of_t(T);
  double r = std::nearbyint(v);
  if (std::abs(v - r) > 0.3)
    fail(Err::audit_failure,
         "count formula not near an integer at T=" + std::to_string(T) +
         " (value " + std::to_string(v) + ")");
  return (uint64_t)r;
}

// ---------------- finder ---------------------------------------------------

TablePtr find_zeros(const Context& ctx, double t_max, double tol) {
  (void)ctx;
  if (!(t_max >= 14 && t_max <= 1e5))
    fail(Err::invalid_argument, "find_zeros: t_max must be in [14, 1e5]");
  if (!(tol >= 1e-12 && tol <= 1e-3))
    fail(Err::invalid_argument, "find_zeros: tol must be in [1e-12, 1e-3]");

  auto table = std::make_shared<ZeroTable>();
  table->tol = tol;
  table->source = ZeroTable::Source::computed;
  table->t_max = t_max;

  double block_len = std::max(200.0, t_max / 64.0);
  double lo = kScanStart;
  uint64_t count_before = 0;  // audited count below current block
  double audit_lo = 0;        // formula count at block start (0 zeros below 14)

  while (lo < t_max) {
    double hi = std::min(lo + block_len, t_max);
    double h = kScanStep;
    std::vector<Refined> zs;
    double cp = hi;
    for (int attempt = 0;; ++attempt) {
      // Scan one unit past the block so the audit checkpoint can sit in
      // zero-charted territory just beyond it.
      auto br = scan_brackets(lo, hi + 1.0, h);
      zs = refine_all(br, tol);
      cp = hi;
      bool moved = true;
      while (moved) {
        moved = false;
        for (const auto& z : zs) {
          double g = dd_to_double(z.g);
          if (std::abs(g - cp) < 0.02) { cp = g + 0.021; moved = true; }
        }
      }
      if (cp > hi + 0.95)
        fail(Err::internal, "no audit checkpoint found near t=" + std::to_string(hi));
      uint64_t want = n_of_t_formula(cp);
      uint64_t got = count_before;
      for (const auto& z : zs) {
        double g = dd_to_double(z.g);
        if (g > lo && g <= cp) ++got;
      }
      if (got == want) break;
      if (attempt >= 2)
        fail(Err::missed_zero,
             "count audit mismatch in [" + std::to_string(lo) + ", " +
             std::to_string(hi) + "]: found " + std::to_string(got) +
             ", argument principle says " + std::to_string(want));
      h /= 8;  // rescan finer
    }
    for (const auto& z : zs) {
      double g = dd_to_double(z.g);
      if (g <= lo || g > cp || g > t_max) continue;  // outside this block's slice
      table->hi.push_back(z.g.hi);
      table->lo.push_back(z.g.lo);
      table->gamma.push_back(g);
    }
    count_before = table->gamma.size();
    lo = cp;
  }
  (void)audit_lo;

  for (size_t i = 1; i < table->gamma.size(); ++i)
    if (!(table->gamma[i] > table->gamma[i - 1]))
      fail(Err::internal, "finder produced non-monotone ordinates");
  return table;
}

// ---------------- import / export -----------------------------------------

TablePtr import_zero_table(const Context& ctx, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::io_error, "cannot open " + path);
  auto table = std::make_shared<ZeroTable>();
  table->source = ZeroTable::Source::imported;

  std::string line;
  long lineno = 0;
  int min_decimals = 99;
  double prev = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    std::string tok = line.substr(b, e - b + 1);
    size_t dot = tok.find('.');
    if (dot == std::string::npos || tok.find_first_not_of("0123456789.", 0) != std::string::npos)
      fail(Err::parse_error, "line " + std::to_string(lineno) + ": not a decimal ordinate");
    int decimals = (int)(tok.size() - dot - 1);
    if (decimals < 9)
      fail(Err::parse_error, "line " + std::to_string(lineno) +
           ": fewer than 9 decimal places");
    min_decimals = std::min(min_decimals, decimals);
    mp50 v;
    try { v = mp50(tok); } catch (...) {
      fail(Err::parse_error, "line " + std::to_string(lineno) + ": unparseable ordinate");
    }
    double hi = static_cast<double>(v);
    double lo = static_cast<double>(v - mp50(hi));
    double g = hi + lo;
    if (g <= 13.0)
      fail(Err::parse_error, "line " + std::to_string(lineno) + ": ordinate <= 13");
    if (!table->gamma.empty() && g <= prev)
      fail(Err::monotonicity_violation, "line " + std::to_string(lineno) +
           ": ordinates must be strictly increasing");
    table->hi.push_back(hi);
    table->lo.push_back(lo);
    table->gamma.push_back(g);
    prev = g;
  }
  if (table->gamma.empty()) fail(Err::parse_error, "empty zero table");
  table->text_decimals = min_decimals;
  table->tol = 0.5 * std::pow(10.0, -min_decimals);
  table->t_max = table->gamma.back();

  // spot-audit: 5 deterministic pseudo-random prefixes
  const double audit_cap = 8e5;
  size_t n = table->gamma.size();
  size_t max_idx = n - 1;
  while (max_idx > 0 && table->gamma[max_idx] > audit_cap) --max_idx;
  if (max_idx >= 1) {
    std::mt19937 rng(20250810u);
    for (int k = 0; k < 5; ++k) {
      size_t i = std::uniform_int_distribution<size_t>(0, max_idx - 1)(rng);
      double mid = 0.5 * (table->gamma[i] + table->gamma[i + 1]);
      uint64_t want = n_of_t_formula(mid);
      if (want != i + 1)
        fail(Err::audit_failure, "imported table disagrees with the zero count at T=" +
             std::to_string(mid) + ": table says " + std::to_string(i + 1) +
             ", argument principle says " + std::to_string(want));
    }
  }
  (void)ctx;
  return table;
}

void export_plain_text(const ZeroTable& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Err::io_error, "cannot open " + path + " for writing");
  for (size_t i = 0; i < t.size(); ++i) {
    mp50 v = mp50(t.hi[i]) + mp50(t.lo[i]);
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(t.text_decimals) << v;
    out << ss.str() << "\n";
  }
  if (!out) fail(Err::io_error, "write failed: " + path);
}

// ---------------- ZTBL cache ------------------------------------------------

namespace {

template <class T>
void put(std::string& buf, const T& v) {
  char tmp[sizeof(T)];
  std::memcpy(tmp, &v, sizeof(T));
  buf.append(tmp, sizeof(T));
}

template <class T>
T get(const std::string& buf, size_t& off) {
  if (off + sizeof(T) > buf.size()) fail(Err::parse_error, "ZTBL: truncated file");
  T v;
  std::memcpy(&v, buf.data() + off, sizeof(T));
  off += sizeof(T);
  return v;
}

}  // namespace

void save_cache(const ZeroTable& t, const std::string& path) {
  std::string buf;
  buf.reserve(32 + 16 * t.size());
  buf.append("ZTBL", 4);
  put<uint32_t>(buf, 2);
  put<uint64_t>(buf, t.size());
  put<double>(buf, t.t_max);
  put<double>(buf, t.tol);
  put<uint32_t>(buf, t.source == ZeroTable::Source::computed ? 0u : 1u);
  put<uint32_t>(buf, 0);
  for (size_t i = 0; i < t.size(); ++i) {
    put<double>(buf, t.hi[i]);
    put<double>(buf, t.lo[i]);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::io_error, "cannot open " + path + " for writing");
  out.write(buf.data(), (std::streamsize)buf.size());
  if (!out) fail(Err::io_error, "write failed: " + path);
}

TablePtr load_cache(const Context& ctx, const std::string& path) {
  (void)ctx;
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::io_error, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string buf = ss.str();
  if (buf.size() < 8 || buf.compare(0, 4, "ZTBL") != 0)
    fail(Err::parse_error, "ZTBL: bad magic");
  size_t off = 4;
  uint32_t version = get<uint32_t>(buf, off);
  if (version != 2) fail(Err::parse_error, "ZTBL: unsupported version");
  uint64_t count = get<uint64_t>(buf, off);
  auto table = std::make_shared<ZeroTable>();
  table->t_max = get<double>(buf, off);
  table->tol = get<double>(buf, off);
  uint32_t src = get<uint32_t>(buf, off);
  get<uint32_t>(buf, off);
  table->source = src == 0 ? ZeroTable::Source::computed : ZeroTable::Source::imported;
  table->hi.reserve(count);
  table->lo.reserve(count);
  table->gamma.reserve(count);
  double prev = 0;
  for (uint64_t i = 0; i < count; ++i) {
    double hi = get<double>(buf, off);
    double lo = get<double>(buf, off);
    double g = hi + lo;
    if (g <= 13.0 || g <= prev) fail(Err::parse_error, "ZTBL: ordinates not valid");
    table->hi.push_back(hi);
    table->lo.push_back(lo);
    table->gamma.push_back(g);
    prev = g;
  }
  return table;
}

// ---------------- audited count --------------------------------------------

uint64_t count_zeros(const Context& ctx, const ZeroTable& t, double T) {
  (void)ctx;
  if (!(T >= 14)) fail(Err::invalid_argument, "count_zeros: needs T >= 14");
  if (T > t.t_max + 1e-9)
    fail(Err::out_of_coverage, "count_zeros: T beyond table coverage");
  double tn = nudge(t, T);
  uint64_t found = t.count_leq(tn);
  uint64_t want = n_of_t_formula(tn);
  if (found != want)
    fail(Err::audit_failure, "count_zeros: table count " + std::to_string(found) +
         " != argument-principle count " + std::to_string(want) +
         " at T=" + std::to_string(tn));
  return found;
}

}  // namespace zx::zeros
