// Copyright 2026 The NLK Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Scalar minimization, parameter grids, and an order-preserving parallel map.

#ifndef NLK_OPTIMIZE_HPP
#define NLK_OPTIMIZE_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "nlk/error.hpp"

namespace nlk {

struct ScalarMin {
  double x;
  double fx;
  int evaluations;
};

// Golden-section search for a minimum of f on [lo, hi].
inline ScalarMin golden_section(const std::function<double(double)>& f, double lo,
                                double hi, double tol = 1e-8) {
  require(lo <= hi && tol > 0.0, ErrorCode::kInvalidArgument,
          "golden section needs lo <= hi and tol > 0");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evals = 2;
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  ScalarMin best{c, fc, evals};
  if (fd < best.fx) best = {d, fd, evals};
  // Endpoints matter when the minimum sits on the boundary.
  for (double x : {lo, hi}) {
    const double fx = f(x);
    ++best.evaluations;
    if (fx < best.fx) best = {x, fx, best.evaluations};
  }
  return best;
}

// Minimizes f on [lo, inf) for f unimodal there: doubles the step until f
// rises, then refines with golden section.
inline ScalarMin bracket_and_minimize(const std::function<double(double)>& f, double lo,
                                      double initial_step = 0.1, double tol = 1e-8,
                                      int max_doublings = 60) {
  double prev = lo;
  double fprev = f(lo);
  double step = initial_step;
  double cur = lo + step;
  double fcur = f(cur);
  double before = lo;
  int n = 0;
  while (fcur < fprev) {
    if (++n > max_doublings)
      throw NonConvergenceError("minimum not bracketed; objective keeps decreasing",
                                {cur}, {fcur});
    before = prev;
    prev = cur;
    fprev = fcur;
    step *= 2.0;
    cur = prev + step;
    fcur = f(cur);
  }
  return golden_section(f, before, cur, tol);
}

// Inclusive grid lo, lo + step, ..., hi.
struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  double step = 0.05;

  void validate() const {
    require(std::isfinite(lo) && std::isfinite(hi) && std::isfinite(step),
            ErrorCode::kNonFinite, "grid bounds must be finite");
    require(lo <= hi && step > 0.0, ErrorCode::kInvalidArgument,
            "grid needs lo <= hi and step > 0");
  }

  std::vector<double> points() const {
    validate();
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
    if (hi - out.back() > 1e-9 * std::max(1.0, std::abs(hi))) out.push_back(hi);
    out.back() = std::min(out.back(), hi);
    return out;
  }
};

// Grid pass, then golden-section refinement around the best grid point.
inline ScalarMin grid_then_golden(const std::function<double(double)>& f,
                                  const GridSpec& grid, double tol) {
  const auto pts = grid.points();
  std::size_t best = 0;
  std::vector<double> vals;
  for (double x : pts) vals.push_back(f(x));
  for (std::size_t i = 1; i < vals.size(); ++i)
    if (vals[i] < vals[best]) best = i;
  const double lo = std::max(grid.lo, pts[best] - grid.step);
  const double hi = std::min(grid.hi, pts[best] + grid.step);
  ScalarMin refined = golden_section(f, lo, hi, tol);
  refined.evaluations += static_cast<int>(pts.size());
  if (vals[best] < refined.fx) return {pts[best], vals[best], refined.evaluations};
  return refined;
}

// Applies fn to every input on a small thread pool; output order matches
// input order regardless of scheduling. An exception from any call is rethrown.
template <typename T, typename Fn>
auto parallel_map(const std::vector<T>& inputs, Fn fn, unsigned threads = 0)
    -> std::vector<decltype(fn(inputs.front()))> {
  using R = decltype(fn(inputs.front()));
  std::vector<R> out(inputs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(inputs.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < inputs.size(); i = next++) {
      try {
        out[i] = fn(inputs[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace nlk

#endif  // NLK_OPTIMIZE_HPP
