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

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "crosstalk.hpp"

namespace pdse {

/// M-level PAM symbol error expression; M = 2 and 4 reduce to the usual
/// 0.5 erfc(sqrt(SNR)/sqrt2) and 0.5 erfc(sqrt(SNR)/(3 sqrt2)).
double ber_from_snr(double snr, int levels_m);

/// 1 / max_i sum_j G_ij over the filter bank; +inf when there is no crosstalk.
double worst_case_snr(const BankCrosstalk& filter_bank);

/// 1 / (packet_bits * 72/64). Throws DomainError unless packet_bits % 64 == 0.
double fec_threshold(int packet_bits);

struct BerReport {
  double worst_snr = 0.0;
  double ber = 0.0;
  int levels_m = 2;
  double fec_threshold = 0.0;
  bool passes_fec = false;
  double crosstalk_sum = 0.0;
  int worst_filter = 0;
};

BerReport evaluate_ber(const BankCrosstalk& filter_bank, int levels_m, int packet_bits);

namespace secded {

constexpr int kDataBits = 64;
constexpr int kCodewordBits = 72;

/// Systematic layout: bits 0..63 payload, check byte bits 0..6 are the
/// Hamming parities p1,p2,p4,...,p64 and bit 7 is overall parity. Payload
/// bit b sits at Hamming position data_position(b), the b-th position in
/// 3..71 that is not a power of two.
struct Codeword {
  std::uint64_t data = 0;
  std::uint8_t check = 0;
  /// Wire bit p in [0,72): 0..63 payload, 64..71 check byte.
  bool bit(int p) const;
  void flip(int p);
  bool operator==(const Codeword&) const = default;
};

enum class Status { kClean, kCorrected, kUncorrectable };

struct Decoded {
  std::uint64_t data = 0;
  Status status = Status::kClean;
  int corrected_bit = -1;  // wire position, when corrected
};

int data_position(int b);
Codeword encode(std::uint64_t word);
Decoded decode(const Codeword& cw);
std::vector<Codeword> encode_packet(std::span<const std::uint64_t> words);
/// Coded size of a packet: bits * 72 / 64.
int coded_bits(int packet_bits);

}  // namespace secded
}  // namespace pdse
