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
#include <random>

#include "crosstalk.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "reliability.hpp"

using namespace pdse;
namespace sd = pdse::secded;

TEST_CASE("BER from SNR") {
  // 0.5 erfc(6/sqrt 2) and 0.5 erfc(2/sqrt 2), mpmath at 30 digits.
  CHECK(ber_from_snr(36.0, 2) == doctest::Approx(9.865876450376981407e-10).epsilon(1e-12));
  CHECK(ber_from_snr(36.0, 4) == doctest::Approx(0.0227501319481792072).epsilon(1e-12));
  CHECK(ber_from_snr(INFINITY, 2) == 0.0);
  CHECK(ber_from_snr(1e4, 2) < 1e-300);
  double prev = 1.0;
  for (double snr = 1; snr < 200; snr *= 1.5) {
    const double b = ber_from_snr(snr, 4);
    CHECK(b <= prev);
    prev = b;
  }
  CHECK_THROWS_AS(ber_from_snr(-1, 2), DomainError);
  CHECK_THROWS_AS(ber_from_snr(1, 3), DomainError);
}

TEST_CASE("FEC threshold") {
  CHECK(fec_threshold(512) == 1.0 / 576.0);
  CHECK(fec_threshold(64) == 1.0 / 72.0);
  CHECK(fec_threshold(1024) == 1.0 / 1152.0);
  CHECK(fec_threshold(512) == doctest::Approx(1.736e-3).epsilon(1e-3));
  CHECK_THROWS_AS(fec_threshold(100), DomainError);
  CHECK(sd::coded_bits(512) == 576);
}

TEST_CASE("worst-case SNR") {
  BankCrosstalk b;
  b.n_lambda = 2;
  b.filter_sums = {0.004, 0.01};
  CHECK(worst_case_snr(b) == doctest::Approx(100.0).epsilon(1e-14));
  BankCrosstalk one;
  one.n_lambda = 1;
  one.filter_sums = {0.0};
  CHECK(std::isinf(worst_case_snr(one)));
  const auto r = evaluate_ber(one, 2, 512);
  CHECK(r.ber == 0.0);
  CHECK(r.passes_fec);
}

TEST_CASE("BER from a bank matches term-by-term summation") {
  const auto g = LinkGeometry::make(8, 10, default_profile(Architecture::kClos), 8.6e7);
  const auto bank = evaluate_bank(g, 30e9, DetuneMode::kFilter, XiConvention::kHalfWidth);
  double worst = 0.0;
  int worst_i = 0;
  for (int i = 1; i <= 8; ++i) {
    double s = 0.0;
    for (int j = 1; j <= 8; ++j)
      if (j != i) s += crosstalk_fraction(i, j, g, 30e9, DetuneMode::kFilter, XiConvention::kHalfWidth);
    if (s > worst) {
      worst = s;
      worst_i = i;
    }
  }
  const auto r = evaluate_ber(bank, 2, 512);
  CHECK(r.crosstalk_sum == doctest::Approx(worst).epsilon(1e-6));
  CHECK(r.worst_filter == worst_i);
  CHECK(r.worst_snr == doctest::Approx(1.0 / worst).epsilon(1e-6));
  CHECK(r.ber == doctest::Approx(0.5 * std::erfc(std::sqrt(1.0 / worst) / std::sqrt(2.0))).epsilon(1e-5));
}

TEST_CASE("SECDED layout") {
  // Data positions are 3,5,6,7,9,... skipping powers of two.
  CHECK(sd::data_position(0) == 3);
  CHECK(sd::data_position(1) == 5);
  CHECK(sd::data_position(3) == 7);
  CHECK(sd::data_position(4) == 9);
  CHECK(sd::data_position(63) == 71);
  CHECK(sd::encode(0) == sd::Codeword{0, 0});
}

TEST_CASE("SECDED is linear") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const std::uint64_t a = rng(), b = rng();
    const auto ea = sd::encode(a), eb = sd::encode(b), ex = sd::encode(a ^ b);
    CHECK((ea.data ^ eb.data) == ex.data);
    CHECK((ea.check ^ eb.check) == ex.check);
  }
}

TEST_CASE("SECDED corrects every single flip and flags double flips") {
  std::mt19937_64 rng(2026);
  for (int k = 0; k < 200; ++k) {
    const std::uint64_t w = rng();
    const auto cw = sd::encode(w);
    const auto clean = sd::decode(cw);
    CHECK(clean.status == sd::Status::kClean);
    CHECK(clean.data == w);
    for (int p = 0; p < sd::kCodewordBits; ++p) {
      auto bad = cw;
      bad.flip(p);
      const auto d = sd::decode(bad);
      CHECK(d.status == sd::Status::kCorrected);
      CHECK(d.data == w);
      CHECK(d.corrected_bit == p);
    }
    for (int q = 0; q < 20; ++q) {
      const int p1 = static_cast<int>(rng() % 72);
      int p2 = static_cast<int>(rng() % 71);
      if (p2 >= p1) ++p2;
      auto bad = cw;
      bad.flip(p1);
      bad.flip(p2);
      CHECK(sd::decode(bad).status == sd::Status::kUncorrectable);
    }
  }
}

TEST_CASE("every double flip of one word is detected") {
  const auto cw = sd::encode(0xDEADBEEFCAFEF00DULL);
  int missed = 0;
  for (int a = 0; a < 72; ++a)
    for (int b = a + 1; b < 72; ++b) {
      auto bad = cw;
      bad.flip(a);
      bad.flip(b);
      missed += sd::decode(bad).status != sd::Status::kUncorrectable;
    }
  CHECK(missed == 0);
}

TEST_CASE("packet encoding") {
  const std::uint64_t words[8] = {1, 2, 3, 4, 5, 6, 7, 8};
  const auto cws = sd::encode_packet(words);
  REQUIRE(cws.size() == 8);
  for (int k = 0; k < 8; ++k) CHECK(sd::decode(cws[k]).data == words[k]);
}
