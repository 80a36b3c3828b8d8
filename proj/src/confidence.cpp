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

#include "dcloss/confidence.hpp"

#include <algorithm>
#include <cmath>

namespace dcloss {

void CycleParams::validate() const {
  if (!(gamma1 >= 0.0) || !std::isfinite(gamma1)) {
    throw Error(ErrorCode::invalid_argument, "gamma1 must be finite and >= 0");
  }
  if (!(gamma2 > 0.0) || !std::isfinite(gamma2)) {
    throw Error(ErrorCode::invalid_argument, "gamma2 must be finite and > 0");
  }
}

ConfidenceMap::ConfidenceMap(Grid1 values) : values_(std::move(values)) {
  for (double m : values_.data()) {
    if (!(m >= 0.0 && m <= 1.0)) {
      throw Error(ErrorCode::invalid_argument, "confidence values must lie in [0, 1]");
    }
  }
}

ConfidenceMap ConfidenceMap::constant(Shape shape, double value) {
  return ConfidenceMap(Grid1(shape.height, shape.width, value));
}

namespace {

double unit_clamp(double m) { return std::clamp(m, 0.0, 1.0); }

template <typename T, typename SquaredError>
ConfidenceMap error_confidence(const Grid<T>& pred, const Grid<T>& gt, const BinaryMask& valid,
                               SquaredError squared_error, const char* what) {
  require_same_shape(pred.shape(), gt.shape(), what);
  require_same_shape(pred.shape(), valid.shape(), what);
  std::vector<double> out(pred.size(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (valid[i]) out[i] = unit_clamp(std::exp(-squared_error(gt[i], pred[i])));
  }
  return ConfidenceMap(Grid1(pred.shape(), std::move(out)));
}

}  // namespace

ConfidenceMap confidence_db_flow(const Grid2& pred, const Grid2& gt, const BinaryMask& valid) {
  return error_confidence(
      pred, gt, valid, [](Vec2 a, Vec2 b) { return squared_norm(a - b); }, "confidence_db_flow");
}

ConfidenceMap confidence_db_stereo(const Grid1& pred, const Grid1& gt, const BinaryMask& valid) {
  return error_confidence(
      pred, gt, valid, [](double a, double b) { return (a - b) * (a - b); },
      "confidence_db_stereo");
}

CycleTerms cycle_terms(const Grid2& forward, const Grid2& backward, const CycleParams& params) {
  params.validate();
  require_same_shape(forward.shape(), backward.shape(), "cycle_terms");
  const Warped<Vec2> warped = backward_warp(backward, forward);
  std::vector<double> numerator(forward.size());
  std::vector<double> denominator(forward.size());
  for (std::size_t i = 0; i < forward.size(); ++i) {
    const Vec2 f = forward[i];
    const Vec2 b = warped.field[i];
    numerator[i] = squared_norm(f + b);
    denominator[i] = params.gamma1 * (squared_norm(f) + squared_norm(b)) + params.gamma2;
  }
  return {Grid1(forward.shape(), std::move(numerator)),
          Grid1(forward.shape(), std::move(denominator)), warped.valid};
}

BinaryMask occlusion_mask(const Grid2& forward, const Grid2& backward, const CycleParams& params) {
  const CycleTerms terms = cycle_terms(forward, backward, params);
  std::vector<std::uint8_t> out(forward.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = terms.target_valid[i] && terms.numerator[i] < terms.denominator[i] ? 1 : 0;
  }
  return BinaryMask(forward.shape(), std::move(out));
}

ConfidenceMap confidence_oa(const Grid2& forward, const Grid2& backward, const CycleParams& params) {
  const CycleTerms terms = cycle_terms(forward, backward, params);
  std::vector<double> out(forward.size(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (terms.target_valid[i]) {
      out[i] = unit_clamp(std::exp(-terms.numerator[i] / terms.denominator[i]));
    }
  }
  return ConfidenceMap(Grid1(forward.shape(), std::move(out)));
}

ConfidenceMap confidence_oa_stereo(const Grid1& left_to_right, const Grid1& right_to_left,
                                   const CycleParams& params) {
  require_same_shape(left_to_right.shape(), right_to_left.shape(), "confidence_oa_stereo");
  return confidence_oa(disparity_to_flow(left_to_right, StereoDirection::left_to_right),
                       disparity_to_flow(right_to_left, StereoDirection::right_to_left), params);
}

BinaryMask occlusion_mask_stereo(const Grid1& left_to_right, const Grid1& right_to_left,
                                 const CycleParams& params) {
  require_same_shape(left_to_right.shape(), right_to_left.shape(), "occlusion_mask_stereo");
  return occlusion_mask(disparity_to_flow(left_to_right, StereoDirection::left_to_right),
                        disparity_to_flow(right_to_left, StereoDirection::right_to_left), params);
}

}  // namespace dcloss
