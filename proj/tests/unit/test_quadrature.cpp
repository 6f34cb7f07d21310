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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "quadrature.hpp"

using namespace pdse;

TEST_CASE("Gauss-Legendre is exact through degree 2n-1") {
  for (int n : {1, 2, 3, 4, 7, 8, 10, 16}) {
    const auto& r = quad::gauss_legendre(n);
    REQUIRE(static_cast<int>(r.x.size()) == n);
    for (int k = 1; k < n; ++k) CHECK(r.x[k] > r.x[k - 1]);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += r.w[k] * std::pow(r.x[k], d);
      const double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("panel node sets integrate across panels") {
  quad::NodeSet ns;
  const auto& r = quad::gauss_legendre(8);
  for (int k = 0; k < 4; ++k) ns.add_panel(k * 0.25 * std::numbers::pi, (k + 1) * 0.25 * std::numbers::pi, r);
  double s = 0.0;
  for (std::size_t q = 0; q < ns.x.size(); ++q) s += ns.w[q] * std::sin(ns.x[q]);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("adaptive Gauss-Kronrod") {
  const auto r = quad::adaptive_gauss_kronrod([](double x) { return std::exp(x); }, {0.0, 1.0}, 1e-13, 0.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
  // Peaked integrand: Lorentzian of width 1e-3, integral atan(1/w)*2*w over [-1,1].
  const double w = 1e-3;
  const auto p = quad::adaptive_gauss_kronrod([&](double x) { return 1.0 / (1.0 + (x / w) * (x / w)); },
                                              {-1.0, 0.0, 1.0}, 1e-12, 0.0);
  CHECK(p.value == doctest::Approx(2.0 * w * std::atan(1.0 / w)).epsilon(1e-11));
}

TEST_CASE("adaptive Simpson") {
  const auto r = quad::adaptive_simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12, 0.0);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(r.converged);
}

TEST_CASE("composite Simpson is exact for cubics") {
  const double v = quad::composite_simpson([](double x) { return x * x * x - 2 * x + 1; }, -1.0, 3.0, 8);
  CHECK(v == doctest::Approx(20.0 - 8.0 + 4.0).epsilon(1e-14));
}
