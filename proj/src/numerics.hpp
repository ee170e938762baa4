// SPDX-License-Identifier: Apache-2.0
#pragma once

// Private numerical helpers shared by the library modules.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dcesta/errors.hpp"

namespace dcesta::detail {

struct RootOptions {
  double x_tol = 1e-15;  // relative to max(1, |x|)
  int max_iter = 200;
};

// Root of a strictly increasing function inside [lo, hi]. `fdf(x)` returns
// (f, f'). Newton steps are accepted only when they stay inside the current
// bracket, otherwise the step bisects.
template <class FDF>
double solve_increasing(FDF&& fdf, double lo, double hi, const RootOptions& opt = {},
                        const char* what = "root") {
  auto [flo, dlo] = fdf(lo);
  auto [fhi, dhi] = fdf(hi);
  (void)dlo;
  (void)dhi;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo > 0.0 || fhi < 0.0) {
    throw BracketError(std::string(what) + ": no sign change in [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < opt.max_iter; ++it) {
    auto [f, df] = fdf(x);
    if (f == 0.0) return x;
    if (f < 0.0)
      lo = x;
    else
      hi = x;
    const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    if (hi - lo <= opt.x_tol * scale) return 0.5 * (lo + hi);
    double next = (df > 0.0 && std::isfinite(df)) ? x - f / df : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    if (step <= 0.25 * opt.x_tol * scale) return x;
  }
  throw ConvergenceError(std::string(what) + ": iteration budget exhausted");
}

struct QuadOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-12;
  unsigned max_depth = 20;
  double noise = 1e-12;  // relative evaluation noise of the integrand
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

// Globally adaptive Gauss-Kronrod over [a, b], split at every breakpoint
// strictly inside the interval. The panel with the largest error is bisected
// until the summed error meets max(abs_tol, rel_tol |I|). A panel whose
// Kronrod-Gauss gap is within the evaluation noise of its |f| integral cannot improve
// and is charged that roundoff instead; when only such panels remain the
// result is accepted at the roundoff floor.
template <class F>
QuadResult integrate(F&& f, double a, double b, std::span<const double> breaks,
                     const QuadOptions& opt = {}) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  const double roundoff = std::max(opt.noise, 50.0 * std::numeric_limits<double>::epsilon());

  struct Panel {
    double a, b, value, gap, floor;
    unsigned depth;
    double err() const { return std::max(gap, floor); }
    bool open(unsigned max_depth) const { return gap > floor && depth < max_depth; }
  };
  // 15-point Kronrod with its embedded 7-point Gauss rule; the Gauss nodes
  // sit at the even Kronrod abscissae.
  const auto& kx = Rule::abscissa();
  const auto& kw = Rule::weights();
  const auto& gw = boost::math::quadrature::gauss<double, 7>::weights();
  auto make = [&](double lo, double hi, unsigned depth) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double f0 = f(mid);
    double k = kw[0] * f0;
    double g = gw[0] * f0;
    double l1 = kw[0] * std::abs(f0);
    for (std::size_t i = 1; i < kx.size(); ++i) {
      const double fp = f(mid + half * kx[i]);
      const double fm = f(mid - half * kx[i]);
      k += kw[i] * (fp + fm);
      l1 += kw[i] * (std::abs(fp) + std::abs(fm));
      if (i % 2 == 0) g += gw[i / 2] * (fp + fm);
    }
    return Panel{lo, hi, half * k, half * std::abs(k - g), roundoff * half * l1, depth};
  };

  std::vector<double> nodes{a};
  for (double x : breaks)
    if (x > a && x < b) nodes.push_back(x);
  nodes.push_back(b);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  auto by_error = [](const Panel& x, const Panel& y) { return x.err() < y.err(); };
  std::vector<Panel> heap;
  std::vector<Panel> closed;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (nodes[i + 1] > nodes[i]) heap.push_back(make(nodes[i], nodes[i + 1], 0));
  std::erase_if(heap, [&](const Panel& p) {
    if (p.open(opt.max_depth)) return false;
    closed.push_back(p);
    return true;
  });
  std::make_heap(heap.begin(), heap.end(), by_error);

  auto totals = [&] {
    QuadResult r;
    double floor = 0.0;
    for (const auto* set : {&heap, &closed})
      for (const auto& p : *set) {
        r.value += p.value;
        r.error += p.err();
        floor += p.floor;
      }
    return std::pair{r, floor};
  };

  constexpr std::size_t kMaxPanels = 1u << 16;
  while (!heap.empty() && heap.size() + closed.size() < kMaxPanels) {
    auto [r, floor] = totals();
    if (r.error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(r.value))) break;
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel p = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (p.a + p.b);
    for (const Panel& child : {make(p.a, mid, p.depth + 1), make(mid, p.b, p.depth + 1)}) {
      if (child.open(opt.max_depth)) {
        heap.push_back(child);
        std::push_heap(heap.begin(), heap.end(), by_error);
      } else {
        closed.push_back(child);
      }
    }
  }

  auto [out, floor] = totals();
  const double target = std::max({opt.abs_tol, opt.rel_tol * std::abs(out.value), 2.0 * floor});
  if (!std::isfinite(out.value) || out.error > target) {
    throw QuadratureError("quadrature over [" + std::to_string(a) + ", " + std::to_string(b) +
                          "] missed tolerance (error estimate " + std::to_string(out.error) + ")");
  }
  return out;
}

// Runs body(i) for i in [0, n) on a small pool of threads. Results must be
// written to per-index slots so the output does not depend on scheduling.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace dcesta::detail
