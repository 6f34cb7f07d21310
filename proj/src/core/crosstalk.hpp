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
 * @file crosstalk.hpp
 * @brief Channel grid and the crosstalk fractions of a cascaded microring bank.
 *
 * For channel j and ring i the dropped fraction is
 *
 *   G_ij = integral of sinc^2(F) L(F + d_ij) prod_{k<i} [1 - L(F + d_kj)] dF,
 *   L(x) = 1 / (1 + (x / xi)^2),
 *
 * with F the signal frequency normalized to the baud rate and d_ij the
 * normalized offset between ring i and channel j. The three detune modes
 * differ in d_ij (filters sit on the channel grid, inactive modulators are
 * parked half a channel away) and in whether the channel's own ring enters
 * the cascade.
 *
 * Integration domain: the integrand is integrated exactly (to quadrature
 * accuracy) on [lo, hi], which extends kTailMargin beyond the outermost
 * ring. Outside it sinc^2 is replaced by its period average 1/(2 pi^2 F^2);
 * with integer end points the dropped oscillating remainder is of order
 * g'(hi) / (8 pi^2 hi^2), below 1e-6 of the smallest element. Both
 * integrators share this tail so they compute the same quantity.
 */

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "params.hpp"

namespace pdse {

enum class DetuneMode { kFilter, kActiveMr, kInactiveMr };
std::string_view to_string(DetuneMode m);

struct LinkGeometry {
  int n_lambda = 1;
  double baud_hz = 10e9;
  double fsr_m = 20e-9;
  double base_wavelength_m = 1550e-9;
  double v_si = 8.6e7;

  static LinkGeometry make(int n_lambda, double baud_gbaud, const PnocProfile& profile, double v_si);

  /// Throws DomainError unless n_lambda is a power of two in [1, 128] and baud > 0.
  void validate() const;
  double channel_spacing_m() const { return fsr_m / (n_lambda + 1); }
  /// i is 1-based.
  double wavelength_m(int i) const { return base_wavelength_m + i * channel_spacing_m(); }
  double frequency_hz(int i) const { return v_si / wavelength_m(i); }
  /// (j - i + offset) F_delta: offset 0 for filters and active rings, 0.5 for inactive rings.
  double normalized_detuning(int i, int j, DetuneMode mode) const;
  /// Adjacent-channel frequency spacing at the band centre.
  double adjacent_spacing_hz() const;
};

/// Lorentzian width parameter normalized to the baud rate.
double normalized_xi(double fwhm_hz, double baud_hz, XiConvention conv);

enum class Integrator { kAdaptiveGaussKronrod, kAdaptiveSimpson, kCompositeSimpson };

struct ElementOptions {
  Integrator integrator = Integrator::kAdaptiveGaussKronrod;
  double rel_tol = 1e-11;
  double abs_tol = 1e-17;
  double simpson_step = 0.01;  // composite Simpson step (normalized frequency)
};

/// Single element G_ij (1-based, i != j), integrated on its own.
double crosstalk_fraction(int i, int j, const LinkGeometry& g, double fwhm_hz, DetuneMode mode, XiConvention xi,
                          const ElementOptions& opts = {});

/// Overlap of sinc^2 with one Lorentzian over the whole real line, from its
/// Fourier representation: 2 pi xi int_0^1 (1-t) e^{-2 pi xi t} cos(2 pi a t) dt.
double single_ring_overlap_closed_form(double shift, double xi);

struct BankCrosstalk {
  int n_lambda = 0;
  DetuneMode mode = DetuneMode::kFilter;
  std::vector<double> filter_sums;   // per ring i: sum over channels j != i
  std::vector<double> channel_sums;  // per channel j: sum over rings i != j
  std::vector<double> matrix;        // row-major [i-1][j-1], only when requested
  long nodes = 0;                    // quadrature nodes per channel, summed

  double max_filter_sum() const;
  int worst_filter() const;  // 1-based, 0 when empty
  double max_channel_sum() const;
  int worst_channel() const;
  double element(int i, int j) const { return matrix.at(static_cast<std::size_t>((i - 1) * n_lambda + (j - 1))); }
};

/// Whole bank on shared Gauss-Legendre panels with a running cascade product.
BankCrosstalk evaluate_bank(const LinkGeometry& g, double fwhm_hz, DetuneMode mode, XiConvention xi,
                            bool keep_matrix = false);

/// Thread-safe memo of bank sums, shared across ER values, goals and profiles.
class BankCache {
 public:
  std::shared_ptr<const BankCrosstalk> get(const LinkGeometry& g, double fwhm_hz, DetuneMode mode, XiConvention xi);
  std::size_t size() const;
  void clear();

 private:
  using Key = std::tuple<int, double, double, double, double, double, int, int>;
  mutable std::mutex mu_;
  std::map<Key, std::shared_ptr<const BankCrosstalk>> banks_;
};

}  // namespace pdse
