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

#include "reliability.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace pdse {

double ber_from_snr(double snr, int levels_m) {
  if (!(snr >= 0.0)) throw DomainError("snr must be non-negative");
  if (levels_m < 2 || (levels_m & (levels_m - 1)) != 0) throw DomainError("levels_M must be a power of two >= 2");
  if (std::isinf(snr)) return 0.0;
  const double m = levels_m;
  const double lg = std::log2(m);
  const double prefactor = (2.0 * (m - 1.0) - lg) / (m * lg);
  return prefactor * std::erfc(std::sqrt(snr) / ((m - 1.0) * std::sqrt(2.0)));
}

double worst_case_snr(const BankCrosstalk& filter_bank) {
  const double s = filter_bank.max_filter_sum();
  if (!(s > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / s;
}

double fec_threshold(int packet_bits) {
  if (packet_bits <= 0 || packet_bits % 64 != 0) throw DomainError("packet size must be a positive multiple of 64");
  return 1.0 / (static_cast<double>(packet_bits) * 72.0 / 64.0);
}

BerReport evaluate_ber(const BankCrosstalk& filter_bank, int levels_m, int packet_bits) {
  BerReport r;
  r.levels_m = levels_m;
  r.crosstalk_sum = filter_bank.max_filter_sum();
  r.worst_filter = filter_bank.worst_filter();
  r.worst_snr = worst_case_snr(filter_bank);
  r.ber = ber_from_snr(r.worst_snr, levels_m);
  r.fec_threshold = fec_threshold(packet_bits);
  r.passes_fec = r.ber < r.fec_threshold;
  return r;
}

namespace secded {
namespace {

struct Tables {
  std::array<int, 64> position{};         // payload bit -> Hamming position
  std::array<int, 72> data_at_position{};  // Hamming position -> payload bit or -1
  // Per byte lane: the 7 Hamming parities contributed by that byte value.
  std::array<std::array<std::uint8_t, 256>, 8> lane{};

  Tables() {
    data_at_position.fill(-1);
    int b = 0;
    for (int pos = 3; pos < 72 && b < 64; ++pos) {
      if (std::has_single_bit(static_cast<unsigned>(pos))) continue;
      position[b] = pos;
      data_at_position[pos] = b;
      ++b;
    }
    for (int l = 0; l < 8; ++l) {
      for (int v = 0; v < 256; ++v) {
        std::uint8_t syn = 0;
        for (int k = 0; k < 8; ++k) {
          if ((v >> k) & 1) syn ^= static_cast<std::uint8_t>(position[l * 8 + k]);
        }
        lane[l][v] = syn;
      }
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

std::uint8_t hamming_parities(std::uint64_t w) {
  const auto& t = tables();
  std::uint8_t s = 0;
  for (int l = 0; l < 8; ++l) s ^= t.lane[l][(w >> (8 * l)) & 0xFF];
  return s;
}

}  // namespace

bool Codeword::bit(int p) const {
  if (p < 0 || p >= kCodewordBits) throw DomainError("codeword bit out of range");
  return p < 64 ? ((data >> p) & 1u) : ((check >> (p - 64)) & 1u);
}

void Codeword::flip(int p) {
  if (p < 0 || p >= kCodewordBits) throw DomainError("codeword bit out of range");
  if (p < 64) data ^= (std::uint64_t{1} << p);
  else check ^= static_cast<std::uint8_t>(1u << (p - 64));
}

int data_position(int b) { return tables().position.at(static_cast<std::size_t>(b)); }

Codeword encode(std::uint64_t word) {
  Codeword cw;
  cw.data = word;
  const std::uint8_t h = hamming_parities(word);
  const int overall = (std::popcount(word) + std::popcount(static_cast<unsigned>(h))) & 1;
  cw.check = static_cast<std::uint8_t>(h | (overall << 7));
  return cw;
}

Decoded decode(const Codeword& cw) {
  const auto& t = tables();
  Decoded d;
  d.data = cw.data;
  const std::uint8_t syndrome = static_cast<std::uint8_t>((hamming_parities(cw.data) ^ cw.check) & 0x7F);
  const int parity = (std::popcount(cw.data) + std::popcount(static_cast<unsigned>(cw.check))) & 1;
  if (syndrome == 0 && parity == 0) return d;
  if (parity == 0) {
    d.status = Status::kUncorrectable;
    return d;
  }
  d.status = Status::kCorrected;
  if (syndrome == 0) {
    d.corrected_bit = 71;  // overall parity bit itself
    return d;
  }
  if (std::has_single_bit(static_cast<unsigned>(syndrome))) {
    d.corrected_bit = 64 + std::countr_zero(static_cast<unsigned>(syndrome));
    return d;
  }
  if (syndrome >= 72 || t.data_at_position[syndrome] < 0) {
    d.status = Status::kUncorrectable;
    return d;
  }
  const int b = t.data_at_position[syndrome];
  d.data ^= (std::uint64_t{1} << b);
  d.corrected_bit = b;
  return d;
}

std::vector<Codeword> encode_packet(std::span<const std::uint64_t> words) {
  std::vector<Codeword> out;
  out.reserve(words.size());
  for (auto w : words) out.push_back(encode(w));
  return out;
}

int coded_bits(int packet_bits) {
  if (packet_bits <= 0 || packet_bits % 64 != 0) throw DomainError("packet size must be a positive multiple of 64");
  return packet_bits / 64 * 72;
}

}  // namespace secded
}  // namespace pdse
