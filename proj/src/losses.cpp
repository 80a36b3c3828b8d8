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

#include "dcloss/losses.hpp"

#include <array>
#include <cmath>
#include <string>

namespace dcloss {

namespace {

constexpr std::array<std::pair<LossMode, std::string_view>, 7> kModeNames{{
    {LossMode::plain_l1, "plain_l1"},
    {LossMode::db, "db"},
    {LossMode::oa, "oa"},
    {LossMode::sum, "sum"},
    {LossMode::multiplication, "multiplication"},
    {LossMode::masking, "masking"},
    {LossMode::mask_sum, "mask_sum"},
}};

void require_alpha_beta(double alpha, double beta, const char* which) {
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw Error(ErrorCode::invalid_argument, std::string(which) + ": alpha must be finite and >= 0");
  }
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw Error(ErrorCode::invalid_argument, std::string(which) + ": beta must be finite and > 0");
  }
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

double error_term(double m_db, double alpha, double beta) {
  return alpha * std::pow(1.0 - m_db, beta);
}

double cycle_term(double m_oa, double alpha, double beta) { return alpha * std::pow(m_oa, beta); }

// Per-channel L1 pieces for flow and disparity.
double l1(Vec2 r) { return std::abs(r.u) + std::abs(r.v); }
double l1(double r) { return std::abs(r); }
Vec2 scaled_l1_grad(Vec2 residual, double w) { return {-w * sign(residual.u), -w * sign(residual.v)}; }
double scaled_l1_grad(double residual, double w) { return -w * sign(residual); }

template <typename T>
LossResult<T> weighted_l1_impl(const Grid<T>& pred, const Grid<T>& gt, const Grid1& weights,
                               const BinaryMask& valid) {
  require_same_shape(pred.shape(), gt.shape(), "weighted_l1 (prediction vs ground truth)");
  require_same_shape(pred.shape(), weights.shape(), "weighted_l1 (weights)");
  require_same_shape(pred.shape(), valid.shape(), "weighted_l1 (validity)");

  std::vector<double> loss(pred.size(), 0.0);
  std::vector<T> grad(pred.size(), T{});
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (!valid[i]) continue;
    const T residual = gt[i] - pred[i];
    loss[i] = weights[i] * l1(residual);
    grad[i] = scaled_l1_grad(residual, weights[i]);
    total += loss[i];
    ++count;
  }
  if (count == 0) {
    throw Error(ErrorCode::no_valid_pixels, "weighted_l1: validity mask selects no pixels");
  }
  return {total / static_cast<double>(count), count, weights, Grid1(pred.shape(), std::move(loss)),
          Grid<T>(pred.shape(), std::move(grad))};
}

const ConfidenceMap& require_input(const std::optional<ConfidenceMap>& map, const char* name,
                                   Shape shape) {
  if (!map) throw Error(ErrorCode::invalid_argument, std::string("missing ") + name);
  require_same_shape(map->shape(), shape, name);
  return *map;
}

}  // namespace

std::string_view to_string(LossMode mode) {
  for (const auto& [m, name] : kModeNames) {
    if (m == mode) return name;
  }
  return "unknown";
}

std::optional<LossMode> parse_loss_mode(std::string_view name) {
  for (const auto& [m, n] : kModeNames) {
    if (n == name) return m;
  }
  return std::nullopt;
}

std::string_view to_string(Task task) { return task == Task::flow ? "flow" : "stereo"; }

std::optional<Task> parse_task(std::string_view name) {
  if (name == "flow") return Task::flow;
  if (name == "stereo") return Task::stereo;
  return std::nullopt;
}

WeightSpec WeightSpec::defaults(LossMode mode, Task task) {
  WeightSpec spec;
  spec.mode = mode;
  if (task == Task::flow) {
    spec.alpha1 = 2.0;
    spec.beta1 = 0.5;
    spec.alpha2 = 2.0;
    spec.beta2 = 1.0;
  } else {
    spec.alpha1 = 2.0;
    spec.beta1 = 1.0;
    spec.alpha2 = 1.0;
    spec.beta2 = 1.0;
  }
  return spec;
}

void WeightSpec::validate() const {
  if (uses_error_confidence()) require_alpha_beta(alpha1, beta1, "error-confidence term");
  if (uses_cycle_confidence()) {
    require_alpha_beta(alpha2, beta2, "cycle-confidence term");
    cycle.validate();
  }
}

bool WeightSpec::uses_error_confidence() const {
  return mode != LossMode::plain_l1 && mode != LossMode::oa;
}

bool WeightSpec::uses_cycle_confidence() const {
  return mode != LossMode::plain_l1 && mode != LossMode::db;
}

bool WeightSpec::uses_hard_mask() const {
  return mode == LossMode::masking || mode == LossMode::mask_sum;
}

Grid1 weight_db(const ConfidenceMap& m, double alpha, double beta) {
  require_alpha_beta(alpha, beta, "weight_db");
  std::vector<double> w(m.values().size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 + error_term(m[i], alpha, beta);
  return Grid1(m.shape(), std::move(w));
}

Grid1 weight_oa(const ConfidenceMap& m, double alpha, double beta) {
  require_alpha_beta(alpha, beta, "weight_oa");
  std::vector<double> w(m.values().size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 + cycle_term(m[i], alpha, beta);
  return Grid1(m.shape(), std::move(w));
}

Grid1 weight_combine(const ConfidenceMap& m_db, const ConfidenceMap& m_oa, const BinaryMask& matched,
                     const WeightSpec& spec) {
  if (spec.mode == LossMode::plain_l1 || spec.mode == LossMode::db || spec.mode == LossMode::oa) {
    throw Error(ErrorCode::invalid_argument,
                "weight_combine: mode " + std::string(to_string(spec.mode)) +
                    " is not a combination mode");
  }
  spec.validate();
  require_same_shape(m_db.shape(), m_oa.shape(), "weight_combine");
  require_same_shape(m_db.shape(), matched.shape(), "weight_combine");

  std::vector<double> w(m_db.values().size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double t1 = error_term(m_db[i], spec.alpha1, spec.beta1);
    const double t2 = cycle_term(m_oa[i], spec.alpha2, spec.beta2);
    const double h = matched[i] ? 1.0 : 0.0;
    switch (spec.mode) {
      case LossMode::sum: w[i] = 1.0 + t1 + t2; break;
      case LossMode::multiplication: w[i] = 1.0 + t1 * t2; break;
      case LossMode::masking: w[i] = 1.0 + h * t1; break;
      case LossMode::mask_sum: w[i] = 1.0 + h * t1 + t2; break;
      default: break;
    }
  }
  return Grid1(m_db.shape(), std::move(w));
}

Grid1 weight_map(const WeightSpec& spec, Shape shape, const WeightInputs& inputs) {
  spec.validate();
  switch (spec.mode) {
    case LossMode::plain_l1:
      return Grid1(shape.height, shape.width, 1.0);
    case LossMode::db:
      return weight_db(require_input(inputs.error_confidence, "error confidence", shape),
                       spec.alpha1, spec.beta1);
    case LossMode::oa:
      return weight_oa(require_input(inputs.cycle_confidence, "cycle confidence", shape),
                       spec.alpha2, spec.beta2);
    default:
      break;
  }
  const ConfidenceMap& m_db = require_input(inputs.error_confidence, "error confidence", shape);
  const ConfidenceMap& m_oa = require_input(inputs.cycle_confidence, "cycle confidence", shape);
  if (spec.uses_hard_mask()) {
    if (!inputs.matched) throw Error(ErrorCode::invalid_argument, "missing matched mask");
    return weight_combine(m_db, m_oa, *inputs.matched, spec);
  }
  // sum and multiplication ignore H.
  return weight_combine(m_db, m_oa, make_mask(shape, true), spec);
}

WeightInputs flow_weight_inputs(const WeightSpec& spec, const Grid2& forward, const Grid2* backward,
                                const Grid2& gt, const BinaryMask& valid) {
  WeightInputs inputs;
  if (spec.uses_error_confidence()) inputs.error_confidence = confidence_db_flow(forward, gt, valid);
  if (spec.uses_cycle_confidence()) {
    if (backward == nullptr) {
      throw Error(ErrorCode::invalid_argument,
                  "loss mode " + std::string(to_string(spec.mode)) + " needs a backward prediction");
    }
    inputs.cycle_confidence = confidence_oa(forward, *backward, spec.cycle);
    if (spec.uses_hard_mask()) inputs.matched = occlusion_mask(forward, *backward, spec.cycle);
  }
  return inputs;
}

WeightInputs stereo_weight_inputs(const WeightSpec& spec, const Grid1& left_to_right,
                                  const Grid1* right_to_left, const Grid1& gt,
                                  const BinaryMask& valid) {
  WeightInputs inputs;
  if (spec.uses_error_confidence()) {
    inputs.error_confidence = confidence_db_stereo(left_to_right, gt, valid);
  }
  if (spec.uses_cycle_confidence()) {
    if (right_to_left == nullptr) {
      throw Error(ErrorCode::invalid_argument, "loss mode " + std::string(to_string(spec.mode)) +
                                                   " needs a right-to-left disparity");
    }
    inputs.cycle_confidence = confidence_oa_stereo(left_to_right, *right_to_left, spec.cycle);
    if (spec.uses_hard_mask()) {
      inputs.matched = occlusion_mask_stereo(left_to_right, *right_to_left, spec.cycle);
    }
  }
  return inputs;
}

LossResult<Vec2> weighted_l1(const Grid2& pred, const Grid2& gt, const Grid1& weights,
                             const BinaryMask& valid) {
  return weighted_l1_impl(pred, gt, weights, valid);
}

LossResult<double> weighted_l1(const Grid1& pred, const Grid1& gt, const Grid1& weights,
                               const BinaryMask& valid) {
  return weighted_l1_impl(pred, gt, weights, valid);
}

void SequenceParams::validate() const {
  if (!(gamma_seq > 0.0 && gamma_seq <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "gamma_seq must lie in (0, 1]");
  }
}

double sequence_total(std::span<const double> scalars, const SequenceParams& params) {
  params.validate();
  if (scalars.empty()) throw Error(ErrorCode::invalid_argument, "empty prediction sequence");
  const std::size_t n = scalars.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += std::pow(params.gamma_seq, static_cast<double>(n - 1 - i)) * scalars[i];
  }
  return total;
}

namespace {

template <typename T, typename Prediction, typename Weigh>
SequenceLoss<T> sequence_loss_impl(std::span<const Prediction> predictions, const Grid<T>& gt,
                                   const BinaryMask& valid, const WeightSpec& spec,
                                   const SequenceParams& params, Weigh weigh) {
  params.validate();
  spec.validate();
  if (predictions.empty()) throw Error(ErrorCode::invalid_argument, "empty prediction sequence");
  SequenceLoss<T> out;
  std::vector<double> scalars;
  for (const Prediction& p : predictions) {
    auto [pred, weights] = weigh(p);
    out.iterations.push_back(weighted_l1(pred, gt, weights, valid));
    scalars.push_back(out.iterations.back().scalar);
  }
  out.total = sequence_total(scalars, params);
  return out;
}

}  // namespace

SequenceLoss<Vec2> sequence_loss_flow(std::span<const FlowPrediction> predictions, const Grid2& gt,
                                      const BinaryMask& valid, const WeightSpec& spec,
                                      const SequenceParams& params) {
  return sequence_loss_impl<Vec2>(predictions, gt, valid, spec, params, [&](const FlowPrediction& p) {
    const Grid2* backward = p.backward ? &*p.backward : nullptr;
    const WeightInputs inputs = flow_weight_inputs(spec, p.forward, backward, gt, valid);
    return std::pair<const Grid2&, Grid1>(p.forward, weight_map(spec, gt.shape(), inputs));
  });
}

SequenceLoss<double> sequence_loss_stereo(std::span<const StereoPrediction> predictions,
                                          const Grid1& gt, const BinaryMask& valid,
                                          const WeightSpec& spec, const SequenceParams& params) {
  return sequence_loss_impl<double>(
      predictions, gt, valid, spec, params, [&](const StereoPrediction& p) {
        const Grid1* rl = p.right_to_left ? &*p.right_to_left : nullptr;
        const WeightInputs inputs = stereo_weight_inputs(spec, p.left_to_right, rl, gt, valid);
        return std::pair<const Grid1&, Grid1>(p.left_to_right, weight_map(spec, gt.shape(), inputs));
      });
}

}  // namespace dcloss
