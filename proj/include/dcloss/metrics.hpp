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

#include <array>
#include <cstddef>
#include <optional>

#include "dcloss/fields.hpp"
#include "dcloss/losses.hpp"

namespace dcloss {

/// A metric value, or nullopt when the pixel set it averages over is empty.
using Metric = std::optional<double>;

/// Euclidean end-point error per pixel.
Grid1 epe_map(const Grid2& pred, const Grid2& gt);
/// Absolute disparity error per pixel.
Grid1 epe_map(const Grid1& pred, const Grid1& gt);

Grid1 magnitude(const Grid2& field);
Grid1 magnitude(const Grid1& field);

/// Mean of `e` over valid pixels, optionally restricted to `region`.
Metric aggregate_epe(const Grid1& e, const BinaryMask& valid, const BinaryMask* region = nullptr);

/// Percentage of selected pixels with e > threshold (strict).
Metric outlier_rate(const Grid1& e, const BinaryMask& valid, double threshold,
                    const BinaryMask* region = nullptr);

/// Percentage of selected pixels with e > 3 and e > 0.05 * |gt|.
Metric fl_all(const Grid1& e, const Grid1& gt_mag, const BinaryMask& valid,
              const BinaryMask* region = nullptr);

/// Mean error in the ground-truth magnitude bins [0, 10), [10, 40], (40, inf).
struct SpeedBins {
  Metric s0_10;
  Metric s10_40;
  Metric s40_plus;

  friend bool operator==(const SpeedBins&, const SpeedBins&) = default;
};
SpeedBins speed_binned_epe(const Grid1& e, const Grid1& gt_mag, const BinaryMask& valid);

inline constexpr std::array<double, 4> kBadThresholds{0.5, 1.0, 2.0, 3.0};
inline constexpr std::array<double, 3> kOutlierThresholds{1.0, 3.0, 5.0};

struct StereoMetrics {
  std::array<Metric, kBadThresholds.size()> bad;  ///< indexed like kBadThresholds
  Metric avg_err;
};
/// `e` is the absolute disparity error; `gt` is only shape-checked.
StereoMetrics stereo_metrics(const Grid1& e, const Grid1& gt, const BinaryMask& valid);

/// Every column reported by the evaluation tables. "region" splits use the
/// optional region mask (typically the matched/non-occluded mask); the
/// complement is reported as "unmatched".
struct MetricReport {
  Task task = Task::flow;
  std::size_t valid_pixels = 0;
  std::optional<std::size_t> matched_pixels;
  std::optional<std::size_t> unmatched_pixels;
  Metric epe;
  std::array<Metric, kOutlierThresholds.size()> outlier;  ///< 1px, 3px, 5px
  Metric fl_all;
  Metric fl_matched;
  Metric fl_unmatched;
  SpeedBins speed;
  Metric matched_epe;
  Metric unmatched_epe;
  Metric avg_err;
  std::array<Metric, kBadThresholds.size()> bad;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

MetricReport evaluate_flow(const Grid2& pred, const Grid2& gt, const BinaryMask& valid,
                           const BinaryMask* region = nullptr);
MetricReport evaluate_stereo(const Grid1& pred, const Grid1& gt, const BinaryMask& valid,
                             const BinaryMask* region = nullptr);

}  // namespace dcloss
