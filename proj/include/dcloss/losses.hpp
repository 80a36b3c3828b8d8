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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dcloss/confidence.hpp"
#include "dcloss/fields.hpp"

namespace dcloss {

enum class Task { flow, stereo };

/// How the per-pixel L1 residual is weighted.
///   plain_l1        w = 1
///   db              w = 1 + a1 (1 - Mdb)^b1          (hard pixels weigh more)
///   oa              w = 1 + a2 Moa^b2                (consistent pixels weigh more)
///   sum             w = 1 + a1 (1 - Mdb)^b1 + a2 Moa^b2
///   multiplication  w = 1 + a1 (1 - Mdb)^b1 * a2 Moa^b2
///   masking         w = 1 + H a1 (1 - Mdb)^b1
///   mask_sum        w = 1 + H a1 (1 - Mdb)^b1 + a2 Moa^b2
/// where H is the matched mask from occlusion_mask().
enum class LossMode { plain_l1, db, oa, sum, multiplication, masking, mask_sum };

std::string_view to_string(LossMode mode);
std::optional<LossMode> parse_loss_mode(std::string_view name);
std::string_view to_string(Task task);
std::optional<Task> parse_task(std::string_view name);

/// Loss configuration. (alpha1, beta1) drive the error-confidence term and
/// (alpha2, beta2) the cycle-confidence term; `db` uses only the former and
/// `oa` only the latter.
struct WeightSpec {
  LossMode mode = LossMode::plain_l1;
  double alpha1 = 2.0;
  double beta1 = 0.5;
  double alpha2 = 2.0;
  double beta2 = 1.0;
  CycleParams cycle;

  /// Per-task defaults: error term (2.0, 0.5) for flow and (2.0, 1.0) for
  /// stereo, cycle term (2.0, 1.0) for flow and (1.0, 1.0) for stereo.
  static WeightSpec defaults(LossMode mode, Task task);

  void validate() const;
  bool uses_error_confidence() const;
  bool uses_cycle_confidence() const;
  bool uses_hard_mask() const;
};

Grid1 weight_db(const ConfidenceMap& m, double alpha, double beta);
Grid1 weight_oa(const ConfidenceMap& m, double alpha, double beta);
/// Only the four combination modes are accepted.
Grid1 weight_combine(const ConfidenceMap& m_db, const ConfidenceMap& m_oa, const BinaryMask& matched,
                     const WeightSpec& spec);

/// The maps a WeightSpec consumes. Unused entries may be left empty.
struct WeightInputs {
  std::optional<ConfidenceMap> error_confidence;
  std::optional<ConfidenceMap> cycle_confidence;
  std::optional<BinaryMask> matched;
};

/// Dispatches on spec.mode. Throws invalid_argument if a required input is
/// missing.
Grid1 weight_map(const WeightSpec& spec, Shape shape, const WeightInputs& inputs);

/// Builds the inputs `spec` needs from predictions. `backward` is required
/// only when the mode reads the cycle confidence.
WeightInputs flow_weight_inputs(const WeightSpec& spec, const Grid2& forward, const Grid2* backward,
                                const Grid2& gt, const BinaryMask& valid);
/// `right_to_left` is the restored reverse disparity.
WeightInputs stereo_weight_inputs(const WeightSpec& spec, const Grid1& left_to_right,
                                  const Grid1* right_to_left, const Grid1& gt,
                                  const BinaryMask& valid);

template <typename T>
struct LossResult {
  double scalar = 0.0;  ///< mean of loss_map over valid pixels
  std::size_t valid_count = 0;
  Grid1 weight_map;
  Grid1 loss_map;  ///< 0 on invalid pixels
  /// Derivative of the summed per-pixel loss w.r.t. the prediction, weights
  /// held constant. Divide by valid_count for the gradient of `scalar`.
  Grid<T> grad;
};

/// loss(x) = w(x) * sum_c |gt_c(x) - pred_c(x)|. Throws no_valid_pixels when
/// the mask is empty.
LossResult<Vec2> weighted_l1(const Grid2& pred, const Grid2& gt, const Grid1& weights,
                             const BinaryMask& valid);
LossResult<double> weighted_l1(const Grid1& pred, const Grid1& gt, const Grid1& weights,
                               const BinaryMask& valid);

struct SequenceParams {
  double gamma_seq = 0.8;

  void validate() const;
};

/// sum_i gamma^(N - i) * scalars[i - 1]; the last entry gets weight 1.
double sequence_total(std::span<const double> scalars, const SequenceParams& params);

struct FlowPrediction {
  Grid2 forward;
  std::optional<Grid2> backward;
};

struct StereoPrediction {
  Grid1 left_to_right;
  std::optional<Grid1> right_to_left;  ///< restored orientation
};

template <typename T>
struct SequenceLoss {
  double total = 0.0;
  std::vector<LossResult<T>> iterations;
};

/// Predictions are ordered earliest first. Confidence maps are rebuilt per
/// iteration from that iteration's predictions.
SequenceLoss<Vec2> sequence_loss_flow(std::span<const FlowPrediction> predictions, const Grid2& gt,
                                      const BinaryMask& valid, const WeightSpec& spec,
                                      const SequenceParams& params);
SequenceLoss<double> sequence_loss_stereo(std::span<const StereoPrediction> predictions,
                                          const Grid1& gt, const BinaryMask& valid,
                                          const WeightSpec& spec, const SequenceParams& params);

}  // namespace dcloss
