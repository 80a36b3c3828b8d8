// Copyright 2026 The dcloss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "doctest.h"
#include "dcloss/confidence.hpp"
#include "support.hpp"

using namespace dcloss;

namespace {

// 1 x 12 strip whose pixel 0 carries `fw0`; the backward field is `bw` everywhere.
Grid2 strip(Vec2 fw0) {
  std::vector<Vec2> v(12);
  v[0] = fw0;
  return Grid2(1, 12, std::move(v));
}

}  // namespace

TEST_CASE("error confidence") {
  testing::Rng rng(10);
  const Grid2 gt = testing::random_flow(rng, 3, 4, -5.0, 5.0);
  const BinaryMask all = make_mask(gt.shape(), true);
  const ConfidenceMap same = confidence_db_flow(gt, gt, all);
  for (std::size_t i = 0; i < gt.size(); ++i) CHECK(same[i] == 1.0);

  const Grid2 zero(1, 3);
  const Grid2 err(1, 3, std::vector<Vec2>{{1, 0}, {3, 4}, {10, 0}});
  const ConfidenceMap m = confidence_db_flow(zero, err, make_mask({1, 3}, true));
  CHECK(m[0] == doctest::Approx(0.36787944117144233).epsilon(1e-15));
  CHECK(m[1] == doctest::Approx(1.3887943864964021e-11).epsilon(1e-12));
  CHECK(m[2] >= 0.0);
  CHECK(m[2] < 1e-40);

  const BinaryMask partial(1, 3, std::vector<std::uint8_t>{1, 0, 1});
  CHECK(confidence_db_flow(zero, zero, partial)[1] == 0.0);

  const Grid1 d(1, 3, std::vector<double>{0, 1, 10});
  const ConfidenceMap ms = confidence_db_stereo(Grid1(1, 3, 0.0), d, make_mask({1, 3}, true));
  CHECK(ms[0] == 1.0);
  CHECK(ms[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(ms[2] == doctest::Approx(std::exp(-100.0)).epsilon(1e-12));
}

TEST_CASE("cycle terms, hand examples") {
  const CycleParams p;
  {
    std::vector<Vec2> bw(12);
    bw[2] = {-2.0, 0.0};
    const CycleTerms t = cycle_terms(strip({2.0, 0.0}), Grid2(1, 12, std::move(bw)), p);
    CHECK(t.numerator[0] == 0.0);
    CHECK(t.denominator[0] == doctest::Approx(0.58).epsilon(1e-15));
  }
  {
    const CycleTerms t = cycle_terms(strip({5.0, 0.0}), Grid2(1, 12), p);
    CHECK(t.numerator[0] == 25.0);
    CHECK(t.denominator[0] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(occlusion_mask(strip({5.0, 0.0}), Grid2(1, 12), p)[0] == 0);
    CHECK(confidence_oa(strip({5.0, 0.0}), Grid2(1, 12), p)[0] ==
          doctest::Approx(std::exp(-25.0 / 0.75)).epsilon(1e-12));
  }
  {
    const CycleTerms t = cycle_terms(Grid2(2, 2), Grid2(2, 2), p);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(t.numerator[i] == 0.0);
      CHECK(t.denominator[i] == 0.5);
    }
  }
}

TEST_CASE("occlusion mask and cycle confidence") {
  const CycleParams p;
  const Grid2 zero(3, 3);
  CHECK(count_true(occlusion_mask(zero, zero, p)) == 9);
  const ConfidenceMap ones = confidence_oa(zero, zero, p);
  for (std::size_t i = 0; i < 9; ++i) CHECK(ones[i] == 1.0);

  // off-frame target: unmatched and zero confidence even with a perfect backward field
  const Grid2 off = strip({20.0, 0.0});
  CHECK(occlusion_mask(off, Grid2(1, 12), p)[0] == 0);
  CHECK(confidence_oa(off, Grid2(1, 12), p)[0] == 0.0);

  // strictness: numerator equal to denominator is not matched
  const CycleParams exact{0.0, 1.0};
  CHECK(occlusion_mask(strip({1.0, 0.0}), Grid2(1, 12), exact)[0] == 0);
  CHECK(occlusion_mask(strip({0.999, 0.0}), Grid2(1, 12), exact)[0] == 1);
  // numerator equal to denominator gives exp(-1)
  CHECK(confidence_oa(strip({1.0, 0.0}), Grid2(1, 12), exact)[0] ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("cycle quantities match the brute-force oracle") {
  testing::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int h = testing::uniform_int(rng, 1, 8);
    const int w = testing::uniform_int(rng, 1, 8);
    const Grid2 fw = testing::random_flow(rng, h, w, -2.5, 2.5);
    const Grid2 bw = testing::mix_flow(rng, Grid2(h, w, std::vector<Vec2>(fw.size(), -fw[0])), 0.5, 1.5);
    const CycleParams p{testing::uniform(rng, 0.0, 0.05), testing::uniform(rng, 0.1, 1.0)};
    const auto of = testing::to_field(fw);
    const auto ob = testing::to_field(bw);
    CHECK(testing::to_ints(occlusion_mask(fw, bw, p)) == oracle::matched(of, ob, p.gamma1, p.gamma2));
    const auto want = oracle::cycle_confidence(of, ob, p.gamma1, p.gamma2);
    const ConfidenceMap got = confidence_oa(fw, bw, p);
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-12);
  }
}

TEST_CASE("stereo cycle confidence") {
  const CycleParams p;
  const Grid1 c(3, 8, 2.0);
  const ConfidenceMap m = confidence_oa_stereo(c, c, p);
  const BinaryMask h = occlusion_mask_stereo(c, c, p);
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 8; ++x) {
      // left pixel x matches right pixel x - 2; the first two columns leave the frame
      CHECK(m(y, x) == (x >= 2 ? 1.0 : 0.0));
      CHECK(h(y, x) == (x >= 2 ? 1 : 0));
    }
  }
  const ConfidenceMap z = confidence_oa_stereo(Grid1(2, 2, 0.0), Grid1(2, 2, 0.0), p);
  for (std::size_t i = 0; i < 4; ++i) CHECK(z[i] == 1.0);

  std::vector<double> lr(12, 0.0);
  lr[6] = 5.0;
  const ConfidenceMap bad = confidence_oa_stereo(Grid1(1, 12, lr), Grid1(1, 12, 0.0), p);
  CHECK(bad(0, 6) == doctest::Approx(std::exp(-25.0 / 0.75)).epsilon(1e-12));

  testing::Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int hh = testing::uniform_int(rng, 1, 8);
    const int ww = testing::uniform_int(rng, 1, 8);
    const Grid1 dl = testing::random_scalar(rng, hh, ww, 0.0, 3.0);
    const Grid1 dr = testing::random_scalar(rng, hh, ww, 0.0, 3.0);
    const auto fw = oracle::disparity_flow(testing::to_field(dl), -1.0);
    const auto bw = oracle::disparity_flow(testing::to_field(dr), +1.0);
    CHECK(testing::to_ints(occlusion_mask_stereo(dl, dr, p)) == oracle::matched(fw, bw));
    const auto want = oracle::cycle_confidence(fw, bw);
    const ConfidenceMap got = confidence_oa_stereo(dl, dr, p);
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-12);
  }
}

TEST_CASE("confidence maps stay in the unit interval") {
  testing::Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Grid2 a = testing::random_flow(rng, 6, 6, -50.0, 50.0);
    const Grid2 b = testing::random_flow(rng, 6, 6, -50.0, 50.0);
    for (const ConfidenceMap& m : {confidence_db_flow(a, b, make_mask(a.shape(), true)),
                                   confidence_oa(a, b, CycleParams{})}) {
      for (std::size_t i = 0; i < m.values().size(); ++i) {
        CHECK(m[i] >= 0.0);
        CHECK(m[i] <= 1.0);
      }
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(CycleParams({-0.1, 0.5}).validate(), Error);
  CHECK_THROWS_AS(CycleParams({0.01, 0.0}).validate(), Error);
  CHECK_THROWS_AS(ConfidenceMap(Grid1(1, 1, 1.5)), Error);
  CHECK_THROWS_AS(cycle_terms(Grid2(2, 2), Grid2(2, 3), CycleParams{}), Error);
}
