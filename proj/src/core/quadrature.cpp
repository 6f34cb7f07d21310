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

#include "quadrature.hpp"

#include <map>
#include <mutex>

#include <boost/math/special_functions/legendre.hpp>

namespace pdse::quad {
namespace {

GaussLegendre build_rule(int n) {
  // legendre_p_zeros returns the non-negative zeros in ascending order.
  const auto zeros = boost::math::legendre_p_zeros<double>(n);
  GaussLegendre g;
  g.x.resize(n);
  g.w.resize(n);
  const int m = static_cast<int>(zeros.size());
  for (int k = 0; k < m; ++k) {
    const double z = zeros[k];
    const double d = boost::math::legendre_p_prime<double>(n, z);
    // For odd n the zero at the centre lands on the same slot twice.
    g.x[n - m + k] = z;
    g.x[m - 1 - k] = -z;
    g.w[n - m + k] = g.w[m - 1 - k] = 2.0 / ((1.0 - z * z) * d * d);
  }
  return g;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> rules;
  std::lock_guard<std::mutex> lock(mu);
  auto it = rules.find(n);
  if (it == rules.end()) it = rules.emplace(n, build_rule(n)).first;
  return it->second;
}

void NodeSet::add_panel(double a, double b, const GaussLegendre& rule) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (std::size_t k = 0; k < rule.x.size(); ++k) {
    x.push_back(c + h * rule.x[k]);
    w.push_back(h * rule.w[k]);
  }
}

}  // namespace pdse::quad
