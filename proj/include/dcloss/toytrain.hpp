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
#include <cstdint>
#include <filesystem>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dcloss/confidence.hpp"
#include "dcloss/fields.hpp"
#include "dcloss/losses.hpp"
#include "dcloss/metrics.hpp"

namespace dcloss::toy {

/// An untextured two-layer scene: one square sliding over a translating
/// background. The square's frame-1 position is drawn from `seed` so that it
/// stays inside the frame in both frames.
struct SceneSpec {
  int height = 64;
  int width = 64;
  int square_size = 24;
  Vec2 square_motion{6.0, 0.0};
  Vec2 background_motion{0.0, 0.0};
  double noise_sigma = 3.0;  ///< label noise std on occluded pixels, in pixels
  std::uint64_t seed = 0;

  void validate() const;
};

struct Scene {
  Grid2 gt_forward;
  Grid2 gt_backward;
  BinaryMask occlusion;           ///< frame-1 pixels covered in frame 2
  BinaryMask occlusion_backward;  ///< frame-2 pixels uncovered from frame 1
  Grid2 train_labels;             ///< gt_forward + noise on occluded pixels
  Grid2 train_labels_backward;
  BinaryMask valid;
  int square_x = 0;  ///< frame-1 top-left corner of the square
  int square_y = 0;
};

Scene synth_scene(const SceneSpec& spec);

/// Flow field parameterised by one 2-vector per block_size x block_size
/// block, bilinearly upsampled from block centres to full resolution.
class BlockFlowModel {
 public:
  BlockFlowModel(Shape shape, int block_size = 8);

  Shape shape() const { return shape_; }
  int block_size() const { return block_size_; }
  Shape coarse_shape() const { return coarse_; }

  std::span<const Vec2> parameters() const { return params_; }
  void set_parameters(std::vector<Vec2> params);

  Grid2 predict() const;
  /// Pulls a per-pixel gradient back to the coarse parameters.
  std::vector<Vec2> backpropagate(const Grid2& pixel_grad) const;

 private:
  struct Tap {
    std::uint32_t index;
    double weight;
  };

  Shape shape_;
  int block_size_;
  Shape coarse_;
  std::vector<Vec2> params_;
  std::vector<std::array<Tap, 4>> taps_;  // per pixel
};

struct TrainConfig {
  int steps = 500;
  double learning_rate = 0.05;
  WeightSpec loss_spec;
  std::vector<std::uint64_t> seeds{0};
  int recompute_confidence_every = 1;
  int snapshot_every = 0;  ///< 0 disables confidence snapshots

  void validate() const;
};

/// Called every `snapshot_every` steps with the current confidence maps of
/// the forward model for each scene.
using SnapshotSink =
    std::function<void(int step, std::size_t scene, const ConfidenceMap& error_confidence,
                       const ConfidenceMap& cycle_confidence)>;

struct TrainReport {
  LossMode mode = LossMode::plain_l1;
  std::vector<double> loss_trajectory;  ///< per step: forward + backward loss, averaged over scenes
  std::vector<MetricReport> metrics;    ///< per scene, forward model vs clean ground truth
  std::vector<Vec2> forward_parameters;
  std::vector<Vec2> backward_parameters;
};

/// Full-batch gradient descent on the weighted L1 loss of two independent
/// models (forward and backward), each supervised by its noisy labels.
/// Confidence maps are rebuilt from the current predictions every
/// `recompute_confidence_every` steps and treated as constants. The update is
///   theta -= decay * learning_rate * (sum_x grad(x) * tap_k(x)) / (block_size^2 * scenes)
/// with decay = 1 - step / steps, i.e. gradient descent on the mean loss with
/// the step measured per block and the learning rate annealed linearly to 0. Metrics are split by the analytic occlusion mask: "matched" is the
/// non-occluded region.
TrainReport train(std::span<const Scene> scenes, const BlockFlowModel& init,
                  const TrainConfig& config, const SnapshotSink& snapshots = {});

struct RunSummary {
  std::uint64_t seed = 0;
  Metric epe_matched;
  Metric epe_unmatched;  ///< empty when the scene has no occlusion
  double epe = 0.0;
  double outlier_3px = 0.0;
};

struct ComparisonRow {
  std::string label;
  WeightSpec spec;
  std::vector<RunSummary> runs;  ///< one per seed
  std::vector<TrainReport> reports;
  Metric epe_matched;
  Metric epe_unmatched;
  Metric epe;
  Metric outlier_3px;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
};

/// Trains every config on one scene per seed (the scene spec with its seed
/// replaced) and averages the region metrics over seeds. Configs must differ
/// only in loss_spec.
using SnapshotFactory = std::function<SnapshotSink(std::size_t config_index, std::uint64_t seed)>;

ComparisonTable compare_runs(std::span<const TrainConfig> configs, const SceneSpec& scene,
                             int block_size = 8, const SnapshotFactory& snapshots = {});

void write_comparison_csv(const ComparisonTable& table, std::ostream& out);

/// A toy experiment as described by a `key = value` config file.
struct Experiment {
  SceneSpec scene;
  int block_size = 8;
  std::vector<TrainConfig> configs;  ///< one per listed loss mode
};

/// Parses the config text. Unknown keys and bad values throw Error(config)
/// with the key name in the message.
Experiment parse_experiment(std::string_view text);

/// Keys accepted by parse_experiment, with their default values.
std::string experiment_defaults();

/// Runs the experiment and writes comparison.csv plus per-run metrics and
/// loss trajectories (and PGM snapshots when enabled) under `output_dir`.
ComparisonTable run_experiment(const Experiment& experiment,
                               const std::filesystem::path& output_dir);

}  // namespace dcloss::toy
