/*
 * Copyright 2026 The pdse Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file quadrature.hpp
 * @brief One-dimensional integrators: Gauss-Legendre panels, adaptive
 *        Simpson, adaptive Gauss-Kronrod (7/15) and composite Simpson.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace pdse::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
  bool converged = true;
};

struct GaussLegendre {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

/// n-point rule, built once per n from the Legendre zeros.
const GaussLegendre& gauss_legendre(int n);

/// Flat node/weight list assembled from Gauss-Legendre panels.
struct NodeSet {
  std::vector<double> x;
  std::vector<double> w;
  void add_panel(double a, double b, const GaussLegendre& rule);
  void clear() {
    x.clear();
    w.clear();
  }
};

namespace detail {

template <class F>
double simpson_step(F& f, double a, double fa, double b, double fb, double m, double fm, double whole, double tol,
                    int depth, Result& r) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  r.evaluations += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) {
    r.converged = false;
    r.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  if (std::abs(delta) <= 15.0 * tol) {
    r.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, r) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, r);
}

// Kronrod nodes are stored centre first; the Gauss nodes are the even entries.
template <class F>
void gk15(F& f, double a, double b, double& value, double& err) {
  using K = boost::math::quadrature::gauss_kronrod<double, 15>;
  using G = boost::math::quadrature::gauss<double, 7>;
  static const auto& xk = K::abscissa();
  static const auto& wk = K::weights();
  static const auto& wg = G::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * wk[0];
  double resg = fc * wg[0];
  for (std::size_t k = 1; k < xk.size(); ++k) {
    const double dx = h * xk[k];
    const double s = f(c - dx) + f(c + dx);
    resk += wk[k] * s;
    if (k % 2 == 0) resg += wg[k / 2] * s;
  }
  value = resk * h;
  err = std::abs((resk - resg) * h);
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction; tolerance is the larger of
/// abs_tol and rel_tol times a coarse estimate of the integral magnitude.
template <class F>
Result adaptive_simpson(F&& f, double a, double b, double rel_tol, double abs_tol, int max_depth = 48) {
  Result r;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  r.evaluations = 3;
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = std::max(abs_tol, rel_tol * std::abs(whole));
  r.value = detail::simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth, r);
  return r;
}

/// Globally adaptive G7/K15 over an initial partition given by breakpoints
/// (sorted, first = a, last = b). Bisects the worst interval until the summed
/// error estimate drops below max(abs_tol, rel_tol * |value|).
template <class F>
Result adaptive_gauss_kronrod(F&& f, const std::vector<double>& breakpoints, double rel_tol, double abs_tol,
                             long max_intervals = 200000) {
  struct Piece {
    double a, b, value, error;
    bool operator<(const Piece& o) const { return error < o.error; }
  };
  Result r;
  std::priority_queue<Piece> heap;
  double total = 0.0, total_err = 0.0;
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    const double a = breakpoints[k], b = breakpoints[k + 1];
    if (!(b > a)) continue;
    Piece p{a, b, 0.0, 0.0};
    detail::gk15(f, a, b, p.value, p.error);
    r.evaluations += 15;
    total += p.value;
    total_err += p.error;
    heap.push(p);
  }
  long intervals = static_cast<long>(heap.size());
  while (!heap.empty() && total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (intervals >= max_intervals) {
      r.converged = false;
      break;
    }
    const Piece p = heap.top();
    // Give up on pieces that no longer shrink in floating point.
    const double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) {
      r.converged = false;
      break;
    }
    heap.pop();
    Piece l{p.a, m, 0.0, 0.0}, rr{m, p.b, 0.0, 0.0};
    detail::gk15(f, l.a, l.b, l.value, l.error);
    detail::gk15(f, rr.a, rr.b, rr.value, rr.error);
    r.evaluations += 30;
    total += l.value + rr.value - p.value;
    total_err += l.error + rr.error - p.error;
    heap.push(l);
    heap.push(rr);
    ++intervals;
  }
  // Re-sum from the leaves to shed the drift of the running update.
  total = 0.0;
  total_err = 0.0;
  std::vector<Piece> leaves;
  leaves.reserve(heap.size());
  while (!heap.empty()) {
    leaves.push_back(heap.top());
    heap.pop();
  }
  std::sort(leaves.begin(), leaves.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
  for (const auto& p : leaves) {
    total += p.value;
    total_err += p.error;
  }
  r.value = total;
  r.error = total_err;
  return r;
}

/// Composite Simpson with n (even) uniform intervals.
template <class F>
double composite_simpson(F&& f, double a, double b, long n) {
  if (n % 2) ++n;
  const double h = (b - a) / static_cast<double>(n);
  double s = f(a) + f(b);
  for (long k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(k));
  return s * h / 3.0;
}

}  // namespace pdse::quad
