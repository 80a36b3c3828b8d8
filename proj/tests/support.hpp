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

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dcloss/fields.hpp"
#include "oracle.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline dcloss::Grid2 random_flow(Rng& rng, int h, int w, double lo, double hi) {
  std::vector<dcloss::Vec2> v(static_cast<std::size_t>(h * w));
  for (auto& x : v) x = {uniform(rng, lo, hi), uniform(rng, lo, hi)};
  return dcloss::Grid2(h, w, std::move(v));
}

inline dcloss::Grid1 random_scalar(Rng& rng, int h, int w, double lo, double hi) {
  std::vector<double> v(static_cast<std::size_t>(h * w));
  for (auto& x : v) x = uniform(rng, lo, hi);
  return dcloss::Grid1(h, w, std::move(v));
}

// Values exactly representable in single precision, as stored by .flo and PFM.
inline dcloss::Grid2 random_float_flow(Rng& rng, int h, int w, double lo, double hi) {
  std::vector<dcloss::Vec2> v(static_cast<std::size_t>(h * w));
  for (auto& x : v) {
    const float u = static_cast<float>(uniform(rng, lo, hi));
    const float y = static_cast<float>(uniform(rng, lo, hi));
    x = {u, y};
  }
  return dcloss::Grid2(h, w, std::move(v));
}

inline dcloss::Grid1 random_float_scalar(Rng& rng, int h, int w, double lo, double hi) {
  std::vector<double> v(static_cast<std::size_t>(h * w));
  for (auto& x : v) x = static_cast<float>(uniform(rng, lo, hi));
  return dcloss::Grid1(h, w, std::move(v));
}

inline dcloss::BinaryMask random_mask(Rng& rng, int h, int w, double p_true) {
  std::vector<std::uint8_t> v(static_cast<std::size_t>(h * w));
  for (auto& x : v) x = uniform(rng, 0.0, 1.0) < p_true ? 1 : 0;
  return dcloss::BinaryMask(h, w, std::move(v));
}

// Perturbs a random subset of pixels of `base` so that some pixels are
// consistent and others are not.
inline dcloss::Grid2 mix_flow(Rng& rng, const dcloss::Grid2& base, double p_keep, double spread) {
  std::vector<dcloss::Vec2> v = base.to_vector();
  for (auto& x : v) {
    if (uniform(rng, 0.0, 1.0) >= p_keep) x = x + dcloss::Vec2{uniform(rng, -spread, spread), uniform(rng, -spread, spread)};
  }
  return dcloss::Grid2(base.shape(), std::move(v));
}

inline oracle::Field to_field(const dcloss::Grid2& g) {
  oracle::Field f = oracle::zeros(g.height(), g.width(), 2);
  for (std::size_t i = 0; i < g.size(); ++i) {
    f.v[2 * i] = g[i].u;
    f.v[2 * i + 1] = g[i].v;
  }
  return f;
}

inline oracle::Field to_field(const dcloss::Grid1& g) {
  oracle::Field f = oracle::zeros(g.height(), g.width(), 1);
  for (std::size_t i = 0; i < g.size(); ++i) f.v[i] = g[i];
  return f;
}

inline std::vector<int> to_ints(const dcloss::BinaryMask& m) {
  std::vector<int> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = m[i] ? 1 : 0;
  return out;
}

inline dcloss::Grid1 grid_of(dcloss::Shape shape, const std::vector<double>& v) {
  return dcloss::Grid1(shape, v);
}

}  // namespace testing
