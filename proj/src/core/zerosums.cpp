#include "zerosums.hpp"

#include <algorithm>
#include <future>
#include <thread>

#include "special.hpp"

namespace zx::zerosums {

namespace {

constexpr size_t kBlock = 4096;

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

struct Acc {
  Neum re, im;
  void add(const C64& z) { re.add(z.re); im.add(z.im); }
  C64 get() const { return {re.get(), im.get()}; }
};

// Evaluate term(i) for i in [i0, i1) with fixed blocks; deterministic
// regardless of worker count.
template <class TermFn>
C64 sum_range(size_t i0, size_t i1, const TermFn& term) {
  if (i0 >= i1) return {};
  size_t nblocks = (i1 - i0 + kBlock - 1) / kBlock;
  std::vector<C64> block(nblocks);
  unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), 8);
  if (workers < 1) workers = 1;
  if (nblocks == 1) workers = 1;
  std::atomic<size_t> next{0};
  auto run = [&] {
    for (;;) {
      size_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      size_t lo = i0 + b * kBlock, hi = std::min(i1, lo + kBlock);
      Acc acc;
      for (size_t i = lo; i < hi; ++i) acc.add(term(i));
      block[b] = acc.get();
    }
  };
  std::vector<std::future<void>> fs;
  for (unsigned w = 1; w < workers; ++w) fs.push_back(std::async(std::launch::async, run));
  run();
  for (auto& f : fs) f.get();
  Acc total;
  for (const auto& b : block) total.add(b);
  return total.get();
}

// Cumulative values at ascending cuts: one serial walk with snapshots.
template <class TermFn>
std::vector<C64> cumulative(const zeros::ZeroTable& t, const std::vector<double>& cuts,
                            const TermFn& term) {
  for (size_t j = 1; j < cuts.size(); ++j)
    if (!(cuts[j] >= cuts[j - 1]))
      fail(Err::invalid_argument, "cumulative sums: cuts must be ascending");
  if (!cuts.empty() && cuts.back() > t.t_max + 1e-9)
    fail(Err::out_of_coverage, "cumulative sums: cut beyond table coverage");

  std::vector<C64> out(cuts.size());
  Acc acc;
  size_t i = 0;
  for (size_t j = 0; j < cuts.size(); ++j) {
    size_t upto = t.count_leq(zeros::nudge(t, cuts[j]));
    for (; i < upto; ++i) acc.add(term(i));
    out[j] = acc.get();
  }
  return out;
}

// ---- term functors -------------------------------------------------------

// chi(1/2+i g) X^{1/2+i g} (log(g/2pi))^k with chi = e^{-2 i theta}.
template <class R>
struct ChiTerm {
  const zeros::ZeroTable* t;
  R log_x, sqrt_x, two_pi;
  int k = 0;
  ChiTerm(const zeros::ZeroTable* tab, double x, int k_) : t(tab), k(k_) {
    using std::log; using std::sqrt;
    log_x = log(R(x));
    sqrt_x = sqrt(R(x));
    two_pi = 2 * pi_const<R>();
  }
  C64 operator()(size_t i) const {
    using std::fmod; using std::log;
    R g = R(t->hi[i]) + R(t->lo[i]);
    R th = special::theta<R>(g);
    R ph = fmod(g * log_x - 2 * th, two_pi);
    Cx<R> v = cis(ph) * sqrt_x;
    if (k > 0) {
      R l = log(g / two_pi), w = l;
      for (int j = 1; j < k; ++j) w *= l;
      v = v * w;
    }
    return to_c64(v);
  }
};

template <>
struct ChiTerm<double> {
  const zeros::ZeroTable* t;
  DD log_x;
  double sqrt_x;
  int k = 0;
  ChiTerm(const zeros::ZeroTable* tab, double x, int k_)
      : t(tab), sqrt_x(std::sqrt(x)), k(k_) {
    DD h = half_log_dd(x);
    log_x = dd_add(h, h);
  }
  C64 operator()(size_t i) const {
    DD g = t->at(i);
    double ph1 = phase_mod_2pi(g, log_x);
    double th = std::remainder(special::theta_fast(g.hi), 2 * M_PI);
    double ph = ph1 - 2 * th;
    C64 v = C64{sqrt_x * std::cos(ph), sqrt_x * std::sin(ph)};
    if (k > 0) {
      double l = std::log(dd_to_double(g) / (2 * M_PI)), w = l;
      for (int j = 1; j < k; ++j) w *= l;
      v = v * w;
    }
    return v;
  }
};

template <class R>
struct XRhoTerm {
  const zeros::ZeroTable* t;
  R log_x, amp, two_pi;
  int sign;
  XRhoTerm(const zeros::ZeroTable* tab, double x, int sg) : t(tab), sign(sg) {
    using std::log; using std::sqrt;
    log_x = log(R(x));
    amp = sg > 0 ? sqrt(R(x)) : 1 / sqrt(R(x));
    two_pi = 2 * pi_const<R>();
  }
  C64 operator()(size_t i) const {
    using std::fmod;
    R g = R(t->hi[i]) + R(t->lo[i]);
    R ph = fmod(g * log_x, two_pi);
    if (sign < 0) ph = -ph;
    return to_c64(Cx<R>(cis(ph) * amp));
  }
};

template <>
struct XRhoTerm<double> {
  const zeros::ZeroTable* t;
  DD log_x;
  double amp;
  int sign;
  XRhoTerm(const zeros::ZeroTable* tab, double x, int sg)
      : t(tab), amp(sg > 0 ? std::sqrt(x) : 1 / std::sqrt(x)), sign(sg) {
    DD h = half_log_dd(x);
    log_x = dd_add(h, h);
  }
  C64 operator()(size_t i) const {
    double ph = phase_mod_2pi(t->at(i), log_x);
    if (sign < 0) ph = -ph;
    return {amp * std::cos(ph), amp * std::sin(ph)};
  }
};

template <class R>
struct ZetaDerivTerm {
  const zeros::ZeroTable* t;
  int nu;
  ZetaDerivTerm(const zeros::ZeroTable* tab, int nu_) : t(tab), nu(nu_) {}
  C64 operator()(size_t i) const {
    if constexpr (std::is_same_v<R, double>) {
      C64 out[special::kMaxNu + 1];
      special::zeta_derivs_f64(0.5, t->at(i), nu, out);
      return out[nu];
    } else {
      Cx<R> out[special::kMaxNu + 1];
      R g = R(t->hi[i]) + R(t->lo[i]);
      special::zeta_derivs<R>(Cx<R>{R(0.5), g}, nu, out);
      return to_c64(out[nu]);
    }
  }
};

template <class F>
auto with_rung(Rung r, F&& f) {
  switch (r) {
    case Rung::f64:  return f(double{});
    case Rung::mp30: return f(mp30{});
    default:         return f(mp50{});
  }
}

void check_window(const zeros::Window& w) {
  if (!w.table) fail(Err::invalid_argument, "zero sum: empty window handle");
}

}  // namespace

C64 sum_chi_x_rho(const Context& ctx, const zeros::Window& w, double x) {
  check_window(w);
  if (!(x >= 1)) fail(Err::invalid_argument, "sum_chi_x_rho: needs X >= 1");
  return with_rung(ctx.rung(), [&](auto tag) {
    using R = decltype(tag);
    ChiTerm<R> term(w.table, x, 0);
    return sum_range(w.i0, w.i1, term);
  });
}

C64 sum_x_rho(const Context& ctx, const zeros::Window& w, double x, int sign) {
  check_window(w);
  if (!(x > 0)) fail(Err::invalid_argument, "sum_x_rho: needs X > 0");
  if (sign != 1 && sign != -1) fail(Err::invalid_argument, "sum_x_rho: sign must be +-1");
  return with_rung(ctx.rung(), [&](auto tag) {
    using R = decltype(tag);
    XRhoTerm<R> term(w.table, x, sign);
    return sum_range(w.i0, w.i1, term);
  });
}

C64 sum_zeta_deriv(const Context& ctx, const zeros::Window& w, int nu) {
  check_window(w);
  if (nu < 1 || nu > special::kMaxNu)
    fail(Err::invalid_argument, "sum_zeta_deriv: nu must be 1..6");
  return with_rung(ctx.rung(), [&](auto tag) {
    using R = decltype(tag);
    ZetaDerivTerm<R> term(w.table, nu);
    return sum_range(w.i0, w.i1, term);
  });
}

C64 sum_chi_weighted(const Context& ctx, const zeros::Window& w, uint64_t n, int k) {
  check_window(w);
  if (n < 1) fail(Err::invalid_argument, "sum_chi_weighted: needs n >= 1");
  if (k < 0 || k > special::kMaxNu)
    fail(Err::invalid_argument, "sum_chi_weighted: k must be 0..6");
  return with_rung(ctx.rung(), [&](auto tag) {
    using R = decltype(tag);
    ChiTerm<R> term(w.table, (double)n, k);
    return sum_range(w.i0, w.i1, term);
  });
}

std::vector<C64> cumulative_chi_x_rho(const Context& ctx, const zeros::ZeroTable& t,
                                      const std::vector<double>& cuts, double x) {
  if (!(x >= 1)) fail(Err::invalid_argument, "sum_chi_x_rho: needs X >= 1");
  return with_rung(ctx.rung(), [&](auto tag) {
    using R = decltype(tag);
    ChiTerm<R> term(&t, x, 0);
    return cumulative(t, cuts, term);
  });
}

std::vector<C64> cumulative_x_rho(const Context& ctx, const zeros::ZeroTable& t,
                                  const std::vector<double>& cuts, double x, int sign) {
  if (!(x > 0)) fail(Err::invalid_argument, "sum_x_rho: needs X > 0");
  return with_rung(ctx.rung(), [&](auto tag) {
    using R = decltype(tag);
    XRhoTerm<R> term(&t, x, sign);
    return cumulative(t, cuts, term);
  });
}

std::vector<std::vector<C64>> cumulative_zeta_derivs(const Context& ctx,
                                                     const zeros::ZeroTable& t,
                                                     const std::vector<double>& cuts,
                                                     int nu_max) {
  if (nu_max < 1 || nu_max > special::kMaxNu)
    fail(Err::invalid_argument, "sum_zeta_deriv: nu must be 1..6");
  std::vector<std::vector<C64>> out(nu_max + 1);
  // One pass per nu would repeat the expensive zeta evaluation; instead run
  // the cumulative engine once per nu over cached per-zero jets.
  size_t last = cuts.empty() ? 0 : t.count_leq(zeros::nudge(t, cuts.back()));
  std::vector<std::vector<C64>> jets(last);
  {
    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), 8);
    if (workers < 1) workers = 1;
    std::atomic<size_t> next{0};
    auto run = [&] {
      for (;;) {
        size_t b = next.fetch_add(1);
        if (b * kBlock >= last) return;
        size_t lo = b * kBlock, hi = std::min(last, lo + kBlock);
        for (size_t i = lo; i < hi; ++i) {
          jets[i].resize(nu_max + 1);
          with_rung(ctx.rung(), [&](auto tag) {
            using R = decltype(tag);
            if constexpr (std::is_same_v<R, double>) {
              C64 o[special::kMaxNu + 1];
              special::zeta_derivs_f64(0.5, t.at(i), nu_max, o);
              for (int j = 0; j <= nu_max; ++j) jets[i][j] = o[j];
            } else {
              Cx<R> o[special::kMaxNu + 1];
              R g = R(t.hi[i]) + R(t.lo[i]);
              special::zeta_derivs<R>(Cx<R>{R(0.5), g}, nu_max, o);
              for (int j = 0; j <= nu_max; ++j) jets[i][j] = to_c64(o[j]);
            }
            return C64{};
          });
        }
      }
    };
    std::vector<std::future<void>> fs;
    for (unsigned w = 1; w < workers; ++w) fs.push_back(std::async(std::launch::async, run));
    run();
    for (auto& f : fs) f.get();
  }
  for (int j = 1; j <= nu_max; ++j)
    out[j] = cumulative(t, cuts, [&](size_t i) { return jets[i][j]; });
  return out;
}

std::vector<C64> per_zero_prefix_chi_x_rho(const Context& ctx, const zeros::ZeroTable& t,
                                           size_t i0, size_t i1, double x) {
  if (!(x >= 1)) fail(Err::invalid_argument, "sum_chi_x_rho: needs X >= 1");
  if (i1 > t.size() || i0 > i1) fail(Err::invalid_argument, "prefix: bad index range");
  return with_rung(ctx.rung(), [&](auto tag) {
    using R = decltype(tag);
    ChiTerm<R> term(&t, x, 0);
    std::vector<C64> out(i1 - i0);
    Acc acc;
    for (size_t i = i0; i < i1; ++i) {
      acc.add(term(i));
      out[i - i0] = acc.get();
    }
    return out;
  });
}

}  // namespace zx::zerosums
