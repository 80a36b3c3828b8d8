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

#include "dcloss/fields.hpp"

#include <algorithm>

namespace dcloss {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::dimension_mismatch: return "dimension mismatch";
    case ErrorCode::non_finite: return "non-finite value";
    case ErrorCode::no_valid_pixels: return "no valid pixels";
    case ErrorCode::io: return "i/o error";
    case ErrorCode::bad_magic: return "bad magic";
    case ErrorCode::truncated: return "truncated input";
    case ErrorCode::bad_dimensions: return "bad dimensions";
    case ErrorCode::bad_header: return "bad header";
    case ErrorCode::unsupported_format: return "unsupported format";
    case ErrorCode::diverged: return "training diverged";
    case ErrorCode::config: return "invalid configuration";
  }
  return "unknown error";
}

std::string to_string(Shape shape) {
  return std::to_string(shape.height) + "x" + std::to_string(shape.width);
}

BinaryMask make_mask(Shape shape, bool fill) {
  return BinaryMask(shape.height, shape.width, static_cast<std::uint8_t>(fill ? 1 : 0));
}

std::size_t count_true(const BinaryMask& mask) {
  return static_cast<std::size_t>(
      std::count_if(mask.data().begin(), mask.data().end(), [](std::uint8_t b) { return b != 0; }));
}

void require_same_shape(Shape a, Shape b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(what) + ": shapes " + to_string(a) + " and " + to_string(b) + " differ");
  }
}

template <typename T>
Sample<T> bilinear_sample(const Grid<T>& field, double x, double y) {
  const double max_x = field.width() - 1;
  const double max_y = field.height() - 1;
  // Written so that NaN coordinates also land here.
  if (!(x >= 0.0 && x <= max_x && y >= 0.0 && y <= max_y)) {
    return {};
  }
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, field.width() - 1);
  const int y1 = std::min(y0 + 1, field.height() - 1);
  const double fx = x - x0;
  const double fy = y - y0;

  const T top = (1.0 - fx) * field(y0, x0) + fx * field(y0, x1);
  const T bottom = (1.0 - fx) * field(y1, x0) + fx * field(y1, x1);
  return {(1.0 - fy) * top + fy * bottom, true};
}

template Sample<double> bilinear_sample(const Grid1&, double, double);
template Sample<Vec2> bilinear_sample(const Grid2&, double, double);

template <typename T>
Warped<T> backward_warp(const Grid<T>& field, const Grid2& flow) {
  require_same_shape(field.shape(), flow.shape(), "backward_warp");
  std::vector<T> out(field.size());
  std::vector<std::uint8_t> valid(field.size());
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      const Vec2 f = flow(y, x);
      const Sample<T> s = bilinear_sample(field, x + f.u, y + f.v);
      const std::size_t i = static_cast<std::size_t>(y) * field.width() + x;
      out[i] = s.value;
      valid[i] = s.in_bounds ? 1 : 0;
    }
  }
  return {Grid<T>(field.shape(), std::move(out)), BinaryMask(field.shape(), std::move(valid))};
}

template Warped<double> backward_warp(const Grid1&, const Grid2&);
template Warped<Vec2> backward_warp(const Grid2&, const Grid2&);

template <typename T>
Grid<T> hflip(const Grid<T>& field) {
  std::vector<T> out(field.size());
  const int w = field.width();
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < w; ++x) {
      out[static_cast<std::size_t>(y) * w + x] = field(y, w - 1 - x);
    }
  }
  return Grid<T>(field.shape(), std::move(out));
}

template Grid1 hflip(const Grid1&);
template Grid2 hflip(const Grid2&);
template BinaryMask hflip(const BinaryMask&);

Grid1 reverse_disparity_restore(const Grid1& flipped_estimate) {
  std::vector<double> out = hflip(flipped_estimate).to_vector();
  for (double& d : out) d = -d;
  return Grid1(flipped_estimate.shape(), std::move(out));
}

Grid2 disparity_to_flow(const Grid1& disparity, StereoDirection direction) {
  const double sign = direction == StereoDirection::left_to_right ? -1.0 : 1.0;
  std::vector<Vec2> out(disparity.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = {sign * disparity[i], 0.0};
  }
  return Grid2(disparity.shape(), std::move(out));
}

std::size_t count_negative(const Grid1& values) {
  return static_cast<std::size_t>(
      std::count_if(values.data().begin(), values.data().end(), [](double d) { return d < 0.0; }));
}

}  // namespace dcloss
