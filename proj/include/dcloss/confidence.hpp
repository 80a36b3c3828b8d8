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

#include "dcloss/fields.hpp"

namespace dcloss {

/// Thresholds of the forward-backward consistency test
///   |f(x) + b(x + f(x))|^2 < gamma1 * (|f(x)|^2 + |b(x + f(x))|^2) + gamma2
struct CycleParams {
  double gamma1 = 0.01;
  double gamma2 = 0.5;  // pixels^2

  void validate() const;
};

/// Per-pixel reliability in [0, 1].
class ConfidenceMap {
 public:
  ConfidenceMap() = default;
  /// Throws invalid_argument if any entry lies outside [0, 1].
  explicit ConfidenceMap(Grid1 values);

  const Grid1& values() const { return values_; }
  Shape shape() const { return values_.shape(); }
  double operator()(int y, int x) const { return values_(y, x); }
  double operator[](std::size_t i) const { return values_[i]; }

  static ConfidenceMap constant(Shape shape, double value);

 private:
  Grid1 values_;
};

/// exp(-|gt - pred|^2); invalid pixels get 0.
ConfidenceMap confidence_db_flow(const Grid2& pred, const Grid2& gt, const BinaryMask& valid);
ConfidenceMap confidence_db_stereo(const Grid1& pred, const Grid1& gt, const BinaryMask& valid);

struct CycleTerms {
  Grid1 numerator;
  Grid1 denominator;
  BinaryMask target_valid;
};

/// Residual and tolerance of the consistency test, with the backward field
/// sampled bilinearly at x + forward(x).
CycleTerms cycle_terms(const Grid2& forward, const Grid2& backward, const CycleParams& params);

/// True where the pixel passes the consistency test (matched) and its warp
/// target is inside the frame.
BinaryMask occlusion_mask(const Grid2& forward, const Grid2& backward, const CycleParams& params);

/// exp(-numerator / denominator); 0 where the warp target leaves the frame.
ConfidenceMap confidence_oa(const Grid2& forward, const Grid2& backward, const CycleParams& params);

/// Stereo variants. `right_to_left` must already be restored to the original
/// orientation (see reverse_disparity_restore).
ConfidenceMap confidence_oa_stereo(const Grid1& left_to_right, const Grid1& right_to_left,
                                   const CycleParams& params);
BinaryMask occlusion_mask_stereo(const Grid1& left_to_right, const Grid1& right_to_left,
                                 const CycleParams& params);

}  // namespace dcloss
