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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dcloss/error.hpp"

namespace dcloss {

/// Displacement in pixels; u is horizontal (column), v is vertical (row).
struct Vec2 {
  double u = 0.0;
  double v = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.u + b.u, a.v + b.v}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.u - b.u, a.v - b.v}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.u, s * a.v}; }
  friend Vec2 operator-(Vec2 a) { return {-a.u, -a.v}; }
};

inline double squared_norm(Vec2 a) { return a.u * a.u + a.v * a.v; }

struct Shape {
  int height = 0;
  int width = 0;

  std::size_t size() const {
    return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  }
  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(Shape shape);

namespace detail {
inline bool is_finite_value(double x) { return std::isfinite(x); }
inline bool is_finite_value(Vec2 x) { return std::isfinite(x.u) && std::isfinite(x.v); }
inline bool is_finite_value(std::uint8_t) { return true; }
}  // namespace detail

/// Immutable row-major H x W grid. Construction rejects non-positive
/// dimensions, wrong data length and non-finite entries; a default-constructed
/// grid is empty and only useful as a placeholder.
template <typename T>
class Grid {
 public:
  using value_type = T;

  Grid() = default;

  Grid(int height, int width, T fill = T{})
      : Grid(height, width, std::vector<T>(checked_size(height, width), fill)) {}

  Grid(int height, int width, std::vector<T> data)
      : shape_{height, width}, data_(std::move(data)) {
    if (data_.size() != checked_size(height, width)) {
      throw Error(ErrorCode::dimension_mismatch,
                  "grid data length " + std::to_string(data_.size()) + " does not match " +
                      to_string(shape_));
    }
    for (const T& value : data_) {
      if (!detail::is_finite_value(value)) {
        throw Error(ErrorCode::non_finite, "grid entries must be finite");
      }
    }
  }

  Grid(Shape shape, std::vector<T> data) : Grid(shape.height, shape.width, std::move(data)) {}

  int height() const { return shape_.height; }
  int width() const { return shape_.width; }
  Shape shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  const T& operator()(int y, int x) const {
    return data_[static_cast<std::size_t>(y) * static_cast<std::size_t>(shape_.width) +
                 static_cast<std::size_t>(x)];
  }
  const T& operator[](std::size_t index) const { return data_[index]; }

  std::span<const T> data() const { return data_; }
  std::vector<T> to_vector() const { return data_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  static std::size_t checked_size(int height, int width) {
    if (height <= 0 || width <= 0) {
      throw Error(ErrorCode::bad_dimensions, "grid dimensions must be positive, got " +
                                                 std::to_string(height) + "x" +
                                                 std::to_string(width));
    }
    return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  }

  Shape shape_;
  std::vector<T> data_;
};

using Grid1 = Grid<double>;
using Grid2 = Grid<Vec2>;
/// Entries are 0 or 1; 1 means valid / matched.
using BinaryMask = Grid<std::uint8_t>;

BinaryMask make_mask(Shape shape, bool fill);
std::size_t count_true(const BinaryMask& mask);

/// Throws dimension_mismatch naming `what` when the shapes differ.
void require_same_shape(Shape a, Shape b, const char* what);

template <typename T>
struct Sample {
  T value{};
  bool in_bounds = false;
};

/// Bilinear interpolation at column x, row y. Points outside
/// [0, width-1] x [0, height-1] yield a zero value with in_bounds = false.
template <typename T>
Sample<T> bilinear_sample(const Grid<T>& field, double x, double y);

extern template Sample<double> bilinear_sample(const Grid1&, double, double);
extern template Sample<Vec2> bilinear_sample(const Grid2&, double, double);

template <typename T>
struct Warped {
  Grid<T> field;
  BinaryMask valid;
};

/// warped(x) = field(x + flow(x)).
template <typename T>
Warped<T> backward_warp(const Grid<T>& field, const Grid2& flow);

extern template Warped<double> backward_warp(const Grid1&, const Grid2&);
extern template Warped<Vec2> backward_warp(const Grid2&, const Grid2&);

/// Mirrors columns. Vector components are copied unchanged.
template <typename T>
Grid<T> hflip(const Grid<T>& field);

extern template Grid1 hflip(const Grid1&);
extern template Grid2 hflip(const Grid2&);
extern template BinaryMask hflip(const BinaryMask&);

/// Turns a disparity estimated on the swapped, mirrored stereo pair back into
/// a right-to-left disparity of the original pair: mirror, then negate.
Grid1 reverse_disparity_restore(const Grid1& flipped_estimate);

enum class StereoDirection { left_to_right, right_to_left };

/// Embeds a non-negative disparity as a horizontal flow. A left pixel (x, y)
/// matches right pixel (x - d, y), so left_to_right gives (-d, 0) and
/// right_to_left gives (+d, 0).
Grid2 disparity_to_flow(const Grid1& disparity, StereoDirection direction);

std::size_t count_negative(const Grid1& values);

}  // namespace dcloss
