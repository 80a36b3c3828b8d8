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

#include "dcloss/toytrain.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "dcloss/io.hpp"

namespace dcloss::toy {

namespace {

struct Rect {
  double x0;
  double y0;
  double size;

  bool contains(double x, double y) const {
    return x >= x0 && x < x0 + size && y >= y0 && y < y0 + size;
  }
};

// Range of integer corner positions keeping [p, p + size) inside [0, extent)
// before and after moving by `motion`.
std::pair<long long, long long> corner_range(int extent, int size, double motion) {
  const auto lo = static_cast<long long>(std::ceil(std::max(0.0, -motion)));
  const auto hi = static_cast<long long>(std::floor(std::min<double>(extent - size, extent - size - motion)));
  return {lo, hi};
}

bool finite(Vec2 v) { return std::isfinite(v.u) && std::isfinite(v.v); }

Grid2 add_noise(const Grid2& gt, const BinaryMask& where, double sigma, std::mt19937_64& rng) {
  if (sigma == 0.0) return gt;
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<Vec2> out = gt.to_vector();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!where[i]) continue;
    const double du = noise(rng);
    const double dv = noise(rng);
    out[i] = out[i] + Vec2{du, dv};
  }
  return Grid2(gt.shape(), std::move(out));
}

Metric mean_of(const std::vector<Metric>& values) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const Metric& m : values) {
    if (!m) continue;
    sum += *m;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace

void SceneSpec::validate() const {
  if (height <= 0 || width <= 0) throw Error(ErrorCode::invalid_argument, "scene dimensions must be positive");
  if (square_size <= 0) throw Error(ErrorCode::invalid_argument, "square_size must be positive");
  if (!finite(square_motion) || !finite(background_motion)) {
    throw Error(ErrorCode::invalid_argument, "scene motions must be finite");
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw Error(ErrorCode::invalid_argument, "noise_sigma must be finite and >= 0");
  }
  const auto [x_lo, x_hi] = corner_range(width, square_size, square_motion.u);
  const auto [y_lo, y_hi] = corner_range(height, square_size, square_motion.v);
  if (x_lo > x_hi || y_lo > y_hi) {
    throw Error(ErrorCode::invalid_argument,
                "square does not fit inside the frame before and after its motion");
  }
}

Scene synth_scene(const SceneSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  const auto pick = [&rng](std::pair<long long, long long> range) {
    const auto span = static_cast<std::uint64_t>(range.second - range.first + 1);
    return static_cast<int>(range.first + static_cast<long long>(rng() % span));
  };
  Scene scene;
  scene.square_x = pick(corner_range(spec.width, spec.square_size, spec.square_motion.u));
  scene.square_y = pick(corner_range(spec.height, spec.square_size, spec.square_motion.v));

  const Vec2 sq = spec.square_motion;
  const Vec2 bg = spec.background_motion;
  const Rect before{static_cast<double>(scene.square_x), static_cast<double>(scene.square_y),
                    static_cast<double>(spec.square_size)};
  const Rect after{before.x0 + sq.u, before.y0 + sq.v, before.size};

  const std::size_t n = static_cast<std::size_t>(spec.height) * spec.width;
  std::vector<Vec2> forward(n);
  std::vector<Vec2> backward(n);
  std::vector<std::uint8_t> occluded(n);
  std::vector<std::uint8_t> occluded_backward(n);
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * spec.width + x;
      const bool on_square = before.contains(x, y);
      forward[i] = on_square ? sq : bg;
      occluded[i] = !on_square && after.contains(x + bg.u, y + bg.v);

      const bool on_square_after = after.contains(x, y);
      backward[i] = on_square_after ? -sq : -bg;
      occluded_backward[i] = !on_square_after && before.contains(x - bg.u, y - bg.v);
    }
  }
  scene.gt_forward = Grid2(spec.height, spec.width, std::move(forward));
  scene.gt_backward = Grid2(spec.height, spec.width, std::move(backward));
  scene.occlusion = BinaryMask(spec.height, spec.width, std::move(occluded));
  scene.occlusion_backward = BinaryMask(spec.height, spec.width, std::move(occluded_backward));
  scene.train_labels = add_noise(scene.gt_forward, scene.occlusion, spec.noise_sigma, rng);
  scene.train_labels_backward =
      add_noise(scene.gt_backward, scene.occlusion_backward, spec.noise_sigma, rng);
  scene.valid = make_mask(scene.gt_forward.shape(), true);
  return scene;
}

BlockFlowModel::BlockFlowModel(Shape shape, int block_size) : shape_(shape), block_size_(block_size) {
  if (shape.height <= 0 || shape.width <= 0) {
    throw Error(ErrorCode::bad_dimensions, "model shape must be positive");
  }
  if (block_size < 2) throw Error(ErrorCode::invalid_argument, "block_size must be >= 2");
  if (shape.height % block_size != 0 || shape.width % block_size != 0) {
    throw Error(ErrorCode::invalid_argument,
                "shape " + to_string(shape) + " is not divisible by block_size " +
                    std::to_string(block_size));
  }
  coarse_ = {shape.height / block_size, shape.width / block_size};
  params_.assign(coarse_.size(), Vec2{});

  // Node k sits at the centre of block k: pixel coordinate (k + 0.5) * b - 0.5.
  const auto axis = [block_size](int pixel, int nodes) {
    const double c = std::clamp((pixel + 0.5) / block_size - 0.5, 0.0, nodes - 1.0);
    const int k0 = std::min(static_cast<int>(std::floor(c)), nodes - 1);
    const int k1 = std::min(k0 + 1, nodes - 1);
    return std::tuple{k0, k1, c - k0};
  };
  taps_.resize(shape.size());
  for (int y = 0; y < shape.height; ++y) {
    const auto [r0, r1, fy] = axis(y, coarse_.height);
    for (int x = 0; x < shape.width; ++x) {
      const auto [c0, c1, fx] = axis(x, coarse_.width);
      const auto idx = [this](int r, int c) {
        return static_cast<std::uint32_t>(r * coarse_.width + c);
      };
      taps_[static_cast<std::size_t>(y) * shape.width + x] = {{
          {idx(r0, c0), (1.0 - fy) * (1.0 - fx)},
          {idx(r0, c1), (1.0 - fy) * fx},
          {idx(r1, c0), fy * (1.0 - fx)},
          {idx(r1, c1), fy * fx},
      }};
    }
  }
}

void BlockFlowModel::set_parameters(std::vector<Vec2> params) {
  if (params.size() != params_.size()) {
    throw Error(ErrorCode::dimension_mismatch, "parameter count does not match the coarse grid");
  }
  params_ = std::move(params);
}

Grid2 BlockFlowModel::predict() const {
  std::vector<Vec2> out(taps_.size());
  for (std::size_t i = 0; i < taps_.size(); ++i) {
    Vec2 v;
    for (const Tap& t : taps_[i]) v = v + t.weight * params_[t.index];
    out[i] = v;
  }
  return Grid2(shape_, std::move(out));
}

std::vector<Vec2> BlockFlowModel::backpropagate(const Grid2& pixel_grad) const {
  require_same_shape(pixel_grad.shape(), shape_, "BlockFlowModel::backpropagate");
  std::vector<Vec2> grad(params_.size());
  for (std::size_t i = 0; i < taps_.size(); ++i) {
    for (const Tap& t : taps_[i]) grad[t.index] = grad[t.index] + t.weight * pixel_grad[i];
  }
  return grad;
}

void TrainConfig::validate() const {
  if (steps < 1) throw Error(ErrorCode::invalid_argument, "steps must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorCode::invalid_argument, "learning_rate must be finite and > 0");
  }
  if (recompute_confidence_every < 1) {
    throw Error(ErrorCode::invalid_argument, "recompute_confidence_every must be >= 1");
  }
  if (snapshot_every < 0) throw Error(ErrorCode::invalid_argument, "snapshot_every must be >= 0");
  if (seeds.empty()) throw Error(ErrorCode::invalid_argument, "at least one seed is required");
  loss_spec.validate();
}

TrainReport train(std::span<const Scene> scenes, const BlockFlowModel& init,
                  const TrainConfig& config, const SnapshotSink& snapshots) {
  config.validate();
  if (scenes.empty()) throw Error(ErrorCode::invalid_argument, "train: no scenes");
  for (const Scene& s : scenes) {
    require_same_shape(s.gt_forward.shape(), init.shape(), "train (scene vs model)");
  }
  const WeightSpec& spec = config.loss_spec;
  BlockFlowModel forward = init;
  BlockFlowModel backward = init;
  const double pixels = static_cast<double>(init.shape().size());
  const double step_scale =
      config.learning_rate / (init.block_size() * init.block_size() * static_cast<double>(scenes.size()));

  std::vector<Grid1> weights_fw(scenes.size());
  std::vector<Grid1> weights_bw(scenes.size());
  TrainReport report;
  report.mode = spec.mode;
  report.loss_trajectory.reserve(static_cast<std::size_t>(config.steps));

  for (int step = 0; step < config.steps; ++step) {
    const Grid2 pf = forward.predict();
    const Grid2 pb = backward.predict();
    for (std::size_t s = 0; s < scenes.size(); ++s) {
      const Scene& scene = scenes[s];
      if (step % config.recompute_confidence_every == 0) {
        weights_fw[s] = weight_map(
            spec, pf.shape(), flow_weight_inputs(spec, pf, &pb, scene.train_labels, scene.valid));
        weights_bw[s] = weight_map(
            spec, pb.shape(),
            flow_weight_inputs(spec, pb, &pf, scene.train_labels_backward, scene.valid));
      }
      if (snapshots && config.snapshot_every > 0 && step % config.snapshot_every == 0) {
        snapshots(step, s, confidence_db_flow(pf, scene.train_labels, scene.valid),
                  confidence_oa(pf, pb, spec.cycle));
      }
    }

    double loss = 0.0;
    std::vector<Vec2> grad_fw(forward.parameters().size());
    std::vector<Vec2> grad_bw(backward.parameters().size());
    const auto accumulate = [pixels](std::vector<Vec2>& acc, const std::vector<Vec2>& g,
                                     std::size_t valid_count) {
      const double scale = pixels / static_cast<double>(valid_count);
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] = acc[k] + scale * g[k];
    };
    for (std::size_t s = 0; s < scenes.size(); ++s) {
      const Scene& scene = scenes[s];
      const LossResult<Vec2> rf = weighted_l1(pf, scene.train_labels, weights_fw[s], scene.valid);
      const LossResult<Vec2> rb =
          weighted_l1(pb, scene.train_labels_backward, weights_bw[s], scene.valid);
      loss += rf.scalar + rb.scalar;
      accumulate(grad_fw, forward.backpropagate(rf.grad), rf.valid_count);
      accumulate(grad_bw, backward.backpropagate(rb.grad), rb.valid_count);
    }
    loss /= static_cast<double>(scenes.size());
    if (!std::isfinite(loss)) {
      throw Error(ErrorCode::diverged, "loss became non-finite at step " + std::to_string(step));
    }
    report.loss_trajectory.push_back(loss);

    // Linear decay to zero over the run.
    const double decay = 1.0 - static_cast<double>(step) / config.steps;
    const auto descend = [step_scale, decay](BlockFlowModel& model, const std::vector<Vec2>& grad) {
      std::vector<Vec2> p(model.parameters().begin(), model.parameters().end());
      for (std::size_t k = 0; k < p.size(); ++k) p[k] = p[k] - decay * step_scale * grad[k];
      model.set_parameters(std::move(p));
    };
    descend(forward, grad_fw);
    descend(backward, grad_bw);
  }

  const Grid2 final_forward = forward.predict();
  for (const Scene& scene : scenes) {
    std::vector<std::uint8_t> matched(scene.occlusion.size());
    for (std::size_t i = 0; i < matched.size(); ++i) matched[i] = scene.occlusion[i] ? 0 : 1;
    const BinaryMask region(scene.occlusion.shape(), std::move(matched));
    report.metrics.push_back(evaluate_flow(final_forward, scene.gt_forward, scene.valid, &region));
  }
  report.forward_parameters.assign(forward.parameters().begin(), forward.parameters().end());
  report.backward_parameters.assign(backward.parameters().begin(), backward.parameters().end());
  return report;
}

ComparisonTable compare_runs(std::span<const TrainConfig> configs, const SceneSpec& scene_spec,
                             int block_size, const SnapshotFactory& snapshots) {
  if (configs.empty()) throw Error(ErrorCode::invalid_argument, "compare_runs: no configs");
  for (const TrainConfig& c : configs) {
    c.validate();
    const TrainConfig& first = configs.front();
    if (c.steps != first.steps || c.learning_rate != first.learning_rate || c.seeds != first.seeds ||
        c.recompute_confidence_every != first.recompute_confidence_every ||
        c.snapshot_every != first.snapshot_every) {
      throw Error(ErrorCode::invalid_argument, "compare_runs: configs may differ only in loss_spec");
    }
  }

  std::map<std::uint64_t, Scene> scenes;
  for (std::uint64_t seed : configs.front().seeds) {
    SceneSpec spec = scene_spec;
    spec.seed = seed;
    scenes.emplace(seed, synth_scene(spec));
  }
  const BlockFlowModel init({scene_spec.height, scene_spec.width}, block_size);

  ComparisonTable table;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const TrainConfig& config = configs[c];
    ComparisonRow row;
    row.label = std::string(to_string(config.loss_spec.mode));
    row.spec = config.loss_spec;
    std::vector<Metric> matched, unmatched, epe, px3;
    for (std::uint64_t seed : config.seeds) {
      const Scene& scene = scenes.at(seed);
      const SnapshotSink sink = snapshots ? snapshots(c, seed) : SnapshotSink{};
      TrainReport report = train(std::span<const Scene>(&scene, 1), init, config, sink);
      const MetricReport& m = report.metrics.front();
      RunSummary run{seed, m.matched_epe, m.unmatched_epe, m.epe.value_or(0.0),
                     m.outlier[1].value_or(0.0)};
      matched.push_back(run.epe_matched);
      unmatched.push_back(run.epe_unmatched);
      epe.push_back(run.epe);
      px3.push_back(run.outlier_3px);
      row.runs.push_back(run);
      row.reports.push_back(std::move(report));
    }
    row.epe_matched = mean_of(matched);
    row.epe_unmatched = mean_of(unmatched);
    row.epe = mean_of(epe);
    row.outlier_3px = mean_of(px3);
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_comparison_csv(const ComparisonTable& table, std::ostream& out) {
  out << "mode,alpha1,beta1,alpha2,beta2,seeds,epe_matched,epe_unmatched,epe,3px\n";
  for (const ComparisonRow& row : table.rows) {
    const WeightSpec& s = row.spec;
    out << row.label << ',' << io::format_metric(s.alpha1) << ',' << io::format_metric(s.beta1)
        << ',' << io::format_metric(s.alpha2) << ',' << io::format_metric(s.beta2) << ','
        << row.runs.size() << ',' << io::format_metric(row.epe_matched) << ','
        << io::format_metric(row.epe_unmatched) << ',' << io::format_metric(row.epe) << ','
        << io::format_metric(row.outlier_3px) << '\n';
  }
  if (!out) throw Error(ErrorCode::io, "comparison csv: stream write failed");
}

// ---------------------------------------------------------------------------
// Experiment config files

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* why) {
  throw Error(ErrorCode::config,
              "config key '" + std::string(key) + "': " + why + " (got '" + std::string(value) + "')");
}

template <typename Number>
Number parse_value(std::string_view key, std::string_view value) {
  Number out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc() || ptr != end) bad_value(key, value, "not a number");
  if constexpr (std::is_floating_point_v<Number>) {
    if (!std::isfinite(out)) bad_value(key, value, "must be finite");
  }
  return out;
}

Vec2 parse_vec2(std::string_view key, std::string_view value) {
  const auto parts = split_list(value);
  if (parts.size() != 2) bad_value(key, value, "expected 'u, v'");
  return {parse_value<double>(key, parts[0]), parse_value<double>(key, parts[1])};
}

const std::vector<std::pair<std::string, std::string>>& default_entries() {
  static const std::vector<std::pair<std::string, std::string>> entries{
      {"height", "64"},
      {"width", "64"},
      {"square_size", "24"},
      {"square_motion", "6, 0"},
      {"background_motion", "0, 0"},
      {"noise_sigma", "3"},
      {"block_size", "8"},
      {"steps", "500"},
      {"learning_rate", "0.05"},
      {"seeds", "0, 1, 2, 3, 4, 5, 6, 7, 8, 9"},
      {"modes", "plain_l1, db, oa, sum, multiplication, masking, mask_sum"},
      {"alpha1", "2.0"},
      {"beta1", "0.5"},
      {"alpha2", "2.0"},
      {"beta2", "1.0"},
      {"gamma1", "0.01"},
      {"gamma2", "0.5"},
      {"recompute_confidence_every", "1"},
      {"snapshot_every", "0"},
  };
  return entries;
}

}  // namespace

std::string experiment_defaults() {
  std::string out;
  for (const auto& [key, value] : default_entries()) out += key + " = " + value + "\n";
  return out;
}

Experiment parse_experiment(std::string_view text) {
  std::map<std::string, std::string, std::less<>> values;
  std::set<std::string, std::less<>> known;
  for (const auto& [key, value] : default_entries()) known.insert(key);

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::config, "config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!known.contains(key)) throw Error(ErrorCode::config, "unknown config key '" + std::string(key) + "'");
    if (!values.emplace(std::string(key), std::string(value)).second) {
      throw Error(ErrorCode::config, "config key '" + std::string(key) + "' given twice");
    }
  }
  const bool user_alpha_beta = values.contains("alpha1") || values.contains("beta1") ||
                               values.contains("alpha2") || values.contains("beta2");
  for (const auto& [key, value] : default_entries()) values.emplace(key, value);
  const auto get = [&values](std::string_view key) -> std::string_view { return values.find(key)->second; };

  Experiment ex;
  const auto positive_int = [&](std::string_view key) {
    const int v = parse_value<int>(key, get(key));
    if (v < 1) bad_value(key, get(key), "must be >= 1");
    return v;
  };
  const auto real = [&](std::string_view key) { return parse_value<double>(key, get(key)); };

  ex.scene.height = positive_int("height");
  ex.scene.width = positive_int("width");
  ex.scene.square_size = positive_int("square_size");
  ex.scene.square_motion = parse_vec2("square_motion", get("square_motion"));
  ex.scene.background_motion = parse_vec2("background_motion", get("background_motion"));
  ex.scene.noise_sigma = real("noise_sigma");
  if (ex.scene.noise_sigma < 0.0) bad_value("noise_sigma", get("noise_sigma"), "must be >= 0");
  ex.block_size = positive_int("block_size");
  if (ex.block_size < 2 || ex.scene.height % ex.block_size != 0 || ex.scene.width % ex.block_size != 0) {
    bad_value("block_size", get("block_size"), "must be >= 2 and divide height and width");
  }
  try {
    ex.scene.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::config, std::string("config key 'square_size': ") + e.what());
  }

  TrainConfig base;
  base.steps = positive_int("steps");
  base.learning_rate = real("learning_rate");
  if (base.learning_rate <= 0.0) bad_value("learning_rate", get("learning_rate"), "must be > 0");
  base.recompute_confidence_every = positive_int("recompute_confidence_every");
  base.snapshot_every = parse_value<int>("snapshot_every", get("snapshot_every"));
  if (base.snapshot_every < 0) bad_value("snapshot_every", get("snapshot_every"), "must be >= 0");
  base.seeds.clear();
  for (std::string_view s : split_list(get("seeds"))) {
    base.seeds.push_back(parse_value<std::uint64_t>("seeds", s));
  }

  CycleParams cycle{real("gamma1"), real("gamma2")};
  if (cycle.gamma1 < 0.0) bad_value("gamma1", get("gamma1"), "must be >= 0");
  if (cycle.gamma2 <= 0.0) bad_value("gamma2", get("gamma2"), "must be > 0");
  const double alpha1 = real("alpha1"), beta1 = real("beta1");
  const double alpha2 = real("alpha2"), beta2 = real("beta2");
  if (alpha1 < 0.0) bad_value("alpha1", get("alpha1"), "must be >= 0");
  if (alpha2 < 0.0) bad_value("alpha2", get("alpha2"), "must be >= 0");
  if (beta1 <= 0.0) bad_value("beta1", get("beta1"), "must be > 0");
  if (beta2 <= 0.0) bad_value("beta2", get("beta2"), "must be > 0");

  for (std::string_view name : split_list(get("modes"))) {
    const auto mode = parse_loss_mode(name);
    if (!mode) bad_value("modes", name, "unknown loss mode");
    TrainConfig config = base;
    config.loss_spec = WeightSpec::defaults(*mode, Task::flow);
    if (user_alpha_beta) {
      config.loss_spec.alpha1 = alpha1;
      config.loss_spec.beta1 = beta1;
      config.loss_spec.alpha2 = alpha2;
      config.loss_spec.beta2 = beta2;
    }
    config.loss_spec.cycle = cycle;
    ex.configs.push_back(std::move(config));
  }
  return ex;
}

ComparisonTable run_experiment(const Experiment& ex, const std::filesystem::path& output_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(output_dir / "runs", ec);
  if (ec) throw Error(ErrorCode::io, "cannot create " + (output_dir / "runs").string());

  const auto run_name = [&ex](std::size_t c, std::uint64_t seed) {
    return std::to_string(c) + "_" + std::string(to_string(ex.configs[c].loss_spec.mode)) + "_seed" +
           std::to_string(seed);
  };
  SnapshotFactory factory;
  if (!ex.configs.empty() && ex.configs.front().snapshot_every > 0) {
    fs::create_directories(output_dir / "snapshots", ec);
    if (ec) throw Error(ErrorCode::io, "cannot create " + (output_dir / "snapshots").string());
    factory = [&](std::size_t c, std::uint64_t seed) -> SnapshotSink {
      const fs::path prefix = output_dir / "snapshots" / run_name(c, seed);
      return [prefix](int step, std::size_t, const ConfidenceMap& db, const ConfidenceMap& oa) {
        const std::string tag = "_step" + std::to_string(step);
        io::write_file(prefix.string() + tag + "_db.pgm", io::write_pgm(db).bytes);
        io::write_file(prefix.string() + tag + "_oa.pgm", io::write_pgm(oa).bytes);
      };
    };
  }

  ComparisonTable table = compare_runs(ex.configs, ex.scene, ex.block_size, factory);

  for (std::size_t c = 0; c < table.rows.size(); ++c) {
    const ComparisonRow& row = table.rows[c];
    for (std::size_t r = 0; r < row.runs.size(); ++r) {
      const fs::path base = output_dir / "runs" / run_name(c, row.runs[r].seed);
      std::ofstream metrics(base.string() + "_metrics.csv", std::ios::binary);
      io::write_metrics_csv(row.reports[r].metrics.front(), metrics);
      std::ofstream loss(base.string() + "_loss.csv", std::ios::binary);
      loss << "step,loss\n";
      char buf[64];
      const auto& trajectory = row.reports[r].loss_trajectory;
      for (std::size_t s = 0; s < trajectory.size(); ++s) {
        std::snprintf(buf, sizeof buf, "%.17g", trajectory[s]);
        loss << s << ',' << buf << '\n';
      }
      if (!metrics || !loss) throw Error(ErrorCode::io, "cannot write run files under " + output_dir.string());
    }
  }
  std::ofstream csv(output_dir / "comparison.csv", std::ios::binary);
  write_comparison_csv(table, csv);
  return table;
}

}  // namespace dcloss::toy
