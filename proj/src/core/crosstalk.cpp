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

#include "crosstalk.hpp"

#include <algorithm>
#include <complex>
#include <numbers>
#include <sstream>

#include "errors.hpp"
#include "quadrature.hpp"

namespace pdse {
namespace {

constexpr double kTailMargin = 40.0;
constexpr int kPanelOrder = 8;
constexpr int kTailOrder = 16;
constexpr double kPi = std::numbers::pi;

inline double sinc2(double f) {
  const double x = kPi * f;
  if (std::abs(x) < 1e-4) {
    const double s = 1.0 - x * x / 6.0;
    return s * s;
  }
  const double s = std::sin(x) / x;
  return s * s;
}

struct ChannelFrame {
  std::vector<double> offsets;  // d_kj for k = 1..N (index k-1)
  double lo = 0.0, hi = 0.0;    // integer bounds of the exact region
  std::vector<double> sorted_centres;
};

ChannelFrame make_frame(const LinkGeometry& g, int j, DetuneMode mode) {
  ChannelFrame fr;
  fr.offsets.resize(g.n_lambda);
  fr.sorted_centres.resize(g.n_lambda);
  double cmin = 0.0, cmax = 0.0;
  for (int k = 1; k <= g.n_lambda; ++k) {
    const double d = g.normalized_detuning(k, j, mode);
    fr.offsets[k - 1] = d;
    fr.sorted_centres[k - 1] = -d;
    cmin = std::min(cmin, -d);
    cmax = std::max(cmax, -d);
  }
  std::sort(fr.sorted_centres.begin(), fr.sorted_centres.end());
  fr.lo = std::floor(cmin - kTailMargin);
  fr.hi = std::ceil(cmax + kTailMargin);
  return fr;
}

// Tail nodes: F = bound / s on s in (0,1], with sinc^2 replaced by 1/(2 pi^2 F^2).
void add_tail_nodes(double bound, std::vector<double>& x, std::vector<double>& w) {
  const auto& rule = quad::gauss_legendre(kTailOrder);
  const double scale = 1.0 / (2.0 * kPi * kPi * std::abs(bound));
  const double edges[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int p = 0; p < 4; ++p) {
    const double c = 0.5 * (edges[p] + edges[p + 1]), h = 0.5 * (edges[p + 1] - edges[p]);
    for (std::size_t k = 0; k < rule.x.size(); ++k) {
      const double s = c + h * rule.x[k];
      x.push_back(bound / s);
      w.push_back(scale * h * rule.w[k]);
    }
  }
}

// Shared-panel node set for one channel: exact region weights already carry sinc^2.
void build_channel_nodes(const ChannelFrame& fr, double xi, std::vector<double>& x, std::vector<double>& sw) {
  x.clear();
  sw.clear();
  const auto& rule = quad::gauss_legendre(kPanelOrder);
  quad::NodeSet ns;
  const auto& c = fr.sorted_centres;
  double f = fr.lo;
  while (f < fr.hi) {
    auto it = std::lower_bound(c.begin(), c.end(), f);
    double dist = INFINITY;
    if (it != c.end()) dist = *it - f;
    if (it != c.begin()) dist = std::min(dist, f - *(it - 1));
    double width = std::min(1.0, std::max(xi, 0.5 * dist));
    if (f + width > fr.hi - 1e-12) width = fr.hi - f;
    ns.add_panel(f, f + width, rule);
    f += width;
  }
  x = std::move(ns.x);
  sw.resize(x.size());
  for (std::size_t q = 0; q < x.size(); ++q) sw[q] = ns.w[q] * sinc2(x[q]);
  add_tail_nodes(fr.hi, x, sw);
  add_tail_nodes(fr.lo, x, sw);
}

bool in_cascade(int k, int j, DetuneMode mode) { return mode == DetuneMode::kFilter || k != j; }

void check_fraction(double v, int i, int j, const LinkGeometry& g) {
  if (!std::isfinite(v) || v < -1e-15 || v > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "crosstalk fraction out of range: G(" << i << "," << j << ") = " << v << " at N=" << g.n_lambda
       << ", baud=" << g.baud_hz / kGiga << " Gbaud";
    throw NumericalError(os.str());
  }
}

}  // namespace

std::string_view to_string(DetuneMode m) {
  switch (m) {
    case DetuneMode::kFilter: return "filter";
    case DetuneMode::kActiveMr: return "active_mr";
    case DetuneMode::kInactiveMr: return "inactive_mr";
  }
  return "?";
}

LinkGeometry LinkGeometry::make(int n_lambda, double baud_gbaud, const PnocProfile& profile, double v_si) {
  LinkGeometry g;
  g.n_lambda = n_lambda;
  g.baud_hz = baud_gbaud * kGiga;
  g.fsr_m = profile.fsr_nm * kNano;
  g.base_wavelength_m = profile.base_wavelength_nm * kNano;
  g.v_si = v_si;
  g.validate();
  return g;
}

void LinkGeometry::validate() const {
  if (n_lambda < 1 || n_lambda > 128 || (n_lambda & (n_lambda - 1)) != 0)
    throw DomainError("n_lambda must be a power of two in [1, 128]");
  if (!(baud_hz > 0.0)) throw DomainError("baud rate must be positive");
  if (!(fsr_m > 0.0) || !(base_wavelength_m > 0.0) || !(v_si > 0.0)) throw DomainError("invalid channel grid");
}

double LinkGeometry::normalized_detuning(int i, int j, DetuneMode mode) const {
  const double offset = mode == DetuneMode::kInactiveMr ? 0.5 : 0.0;
  const double li = wavelength_m(i);
  const double lj = li + (j - i + offset) * channel_spacing_m();
  return (v_si / li - v_si / lj) / baud_hz;
}

double LinkGeometry::adjacent_spacing_hz() const {
  const double centre = base_wavelength_m + 0.5 * (n_lambda + 1) * channel_spacing_m();
  const double half = 0.5 * channel_spacing_m();
  return v_si / (centre - half) - v_si / (centre + half);
}

double normalized_xi(double fwhm_hz, double baud_hz, XiConvention conv) {
  if (!(fwhm_hz > 0.0)) throw DomainError("fwhm must be positive");
  if (!(baud_hz > 0.0)) throw DomainError("baud rate must be positive");
  return conv == XiConvention::kHalfWidth ? fwhm_hz / (2.0 * baud_hz) : fwhm_hz / baud_hz;
}

double single_ring_overlap_closed_form(double shift, double xi) {
  const double c = 2.0 * kPi * xi;
  const std::complex<double> z(c, -2.0 * kPi * shift);
  const std::complex<double> v = 1.0 / z - (1.0 - std::exp(-z)) / (z * z);
  return c * v.real();
}

double crosstalk_fraction(int i, int j, const LinkGeometry& g, double fwhm_hz, DetuneMode mode, XiConvention xiconv,
                          const ElementOptions& opts) {
  g.validate();
  if (i < 1 || j < 1 || i > g.n_lambda || j > g.n_lambda) throw DomainError("channel index out of range");
  if (i == j) throw DomainError("crosstalk fraction needs i != j");
  const double xi = normalized_xi(fwhm_hz, g.baud_hz, xiconv);
  const double inv_xi = 1.0 / xi;
  const ChannelFrame fr = make_frame(g, j, mode);

  // Without sinc^2; the core integrand multiplies it in.
  auto envelope = [&](double f) {
    double prod = 1.0;
    for (int k = 1; k < i; ++k) {
      if (!in_cascade(k, j, mode)) continue;
      const double x = (f + fr.offsets[k - 1]) * inv_xi;
      prod *= x * x / (1.0 + x * x);
    }
    const double x = (f + fr.offsets[i - 1]) * inv_xi;
    return prod / (1.0 + x * x);
  };
  auto integrand = [&](double f) { return sinc2(f) * envelope(f); };

  double core = 0.0;
  bool ok = true;
  std::vector<double> bp;
  for (double f = fr.lo; f <= fr.hi; f += 1.0) bp.push_back(f);
  for (double c : fr.sorted_centres) bp.push_back(c);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

  switch (opts.integrator) {
    case Integrator::kAdaptiveGaussKronrod: {
      const auto r = quad::adaptive_gauss_kronrod(integrand, bp, opts.rel_tol, opts.abs_tol);
      core = r.value;
      ok = r.converged;
      break;
    }
    case Integrator::kAdaptiveSimpson: {
      for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
        const auto r = quad::adaptive_simpson(integrand, bp[k], bp[k + 1], opts.rel_tol, opts.abs_tol);
        core += r.value;
        ok = ok && r.converged;
      }
      break;
    }
    case Integrator::kCompositeSimpson: {
      const long n = static_cast<long>(std::ceil((fr.hi - fr.lo) / opts.simpson_step));
      core = quad::composite_simpson(integrand, fr.lo, fr.hi, n);
      break;
    }
  }
  if (!ok) {
    std::ostringstream os;
    os << "quadrature did not converge for G(" << i << "," << j << ") at N=" << g.n_lambda
       << ", baud=" << g.baud_hz / kGiga << " Gbaud, xi=" << xi;
    throw NumericalError(os.str());
  }
  std::vector<double> tx, tw;
  add_tail_nodes(fr.hi, tx, tw);
  add_tail_nodes(fr.lo, tx, tw);
  double tail = 0.0;
  for (std::size_t q = 0; q < tx.size(); ++q) tail += tw[q] * envelope(tx[q]);
  const double v = core + tail;
  check_fraction(v, i, j, g);
  return v;
}

double BankCrosstalk::max_filter_sum() const {
  return filter_sums.empty() ? 0.0 : *std::max_element(filter_sums.begin(), filter_sums.end());
}
int BankCrosstalk::worst_filter() const {
  if (filter_sums.empty()) return 0;
  return static_cast<int>(std::max_element(filter_sums.begin(), filter_sums.end()) - filter_sums.begin()) + 1;
}
double BankCrosstalk::max_channel_sum() const {
  return channel_sums.empty() ? 0.0 : *std::max_element(channel_sums.begin(), channel_sums.end());
}
int BankCrosstalk::worst_channel() const {
  if (channel_sums.empty()) return 0;
  return static_cast<int>(std::max_element(channel_sums.begin(), channel_sums.end()) - channel_sums.begin()) + 1;
}

BankCrosstalk evaluate_bank(const LinkGeometry& g, double fwhm_hz, DetuneMode mode, XiConvention xiconv,
                            bool keep_matrix) {
  g.validate();
  const int n = g.n_lambda;
  const double xi = normalized_xi(fwhm_hz, g.baud_hz, xiconv);
  const double inv_xi = 1.0 / xi;
  BankCrosstalk bank;
  bank.n_lambda = n;
  bank.mode = mode;
  bank.filter_sums.assign(n, 0.0);
  bank.channel_sums.assign(n, 0.0);
  if (keep_matrix) bank.matrix.assign(static_cast<std::size_t>(n) * n, 0.0);
  if (n == 1) return bank;

  std::vector<double> x, sw, prod;
  for (int j = 1; j <= n; ++j) {
    const ChannelFrame fr = make_frame(g, j, mode);
    build_channel_nodes(fr, xi, x, sw);
    const std::size_t q_count = x.size();
    bank.nodes += static_cast<long>(q_count);
    prod.assign(q_count, 1.0);
    const double* xp = x.data();
    const double* sp = sw.data();
    double* pp = prod.data();
    for (int i = 1; i <= n; ++i) {
      if (!in_cascade(i, j, mode)) continue;
      const double d = fr.offsets[i - 1];
      double acc = 0.0;
#pragma omp simd reduction(+ : acc)
      for (std::size_t q = 0; q < q_count; ++q) {
        const double u = (xp[q] + d) * inv_xi;
        const double lor = 1.0 / (1.0 + u * u);
        acc += sp[q] * lor * pp[q];
        pp[q] *= (1.0 - lor);
      }
      if (i == j) continue;  // own drop filter: signal, not crosstalk
      check_fraction(acc, i, j, g);
      bank.filter_sums[i - 1] += acc;
      bank.channel_sums[j - 1] += acc;
      if (keep_matrix) bank.matrix[static_cast<std::size_t>((i - 1) * n + (j - 1))] = acc;
    }
  }
  return bank;
}

std::shared_ptr<const BankCrosstalk> BankCache::get(const LinkGeometry& g, double fwhm_hz, DetuneMode mode,
                                                    XiConvention xi) {
  const Key key{g.n_lambda, g.baud_hz, fwhm_hz, g.fsr_m, g.base_wavelength_m, g.v_si, static_cast<int>(mode),
                static_cast<int>(xi)};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = banks_.find(key);
    if (it != banks_.end()) return it->second;
  }
  auto bank = std::make_shared<const BankCrosstalk>(evaluate_bank(g, fwhm_hz, mode, xi, false));
  std::lock_guard<std::mutex> lock(mu_);
  return banks_.emplace(key, std::move(bank)).first->second;
}

std::size_t BankCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return banks_.size();
}

void BankCache::clear() {
  std::lock_guard<std::mutex> lock(mu_);
  banks_.clear();
}

}  // namespace pdse
