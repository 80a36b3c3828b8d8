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

#include "dcloss/metrics.hpp"

#include <cmath>

namespace dcloss {

namespace {

template <typename Select, typename Value>
Metric masked_mean(std::size_t n, Select select, Value value) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!select(i)) continue;
    sum += value(i);
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

auto selector(const BinaryMask& valid, const BinaryMask* region, bool inside = true) {
  return [&valid, region, inside](std::size_t i) {
    return valid[i] != 0 && (region == nullptr || (((*region)[i] != 0) == inside));
  };
}

void check_region(const Grid1& e, const BinaryMask& valid, const BinaryMask* region,
                  const char* what) {
  require_same_shape(e.shape(), valid.shape(), what);
  if (region != nullptr) require_same_shape(e.shape(), region->shape(), what);
}

Metric fl_rate(const Grid1& e, const Grid1& gt_mag, const BinaryMask& valid, const BinaryMask* region,
               bool inside) {
  return masked_mean(e.size(), selector(valid, region, inside), [&](std::size_t i) {
    return (e[i] > 3.0 && e[i] > 0.05 * gt_mag[i]) ? 100.0 : 0.0;
  });
}

template <typename T>
MetricReport evaluate(const Grid<T>& pred, const Grid<T>& gt, const BinaryMask& valid,
                      const BinaryMask* region, Task task) {
  require_same_shape(pred.shape(), gt.shape(), "evaluate (prediction vs ground truth)");
  require_same_shape(pred.shape(), valid.shape(), "evaluate (validity)");
  if (region != nullptr) require_same_shape(pred.shape(), region->shape(), "evaluate (region)");

  const Grid1 e = epe_map(pred, gt);
  const Grid1 mag = magnitude(gt);

  MetricReport r;
  r.task = task;
  r.valid_pixels = count_true(valid);
  r.epe = aggregate_epe(e, valid);
  for (std::size_t k = 0; k < kOutlierThresholds.size(); ++k) {
    r.outlier[k] = outlier_rate(e, valid, kOutlierThresholds[k]);
  }
  r.fl_all = fl_all(e, mag, valid);
  r.speed = speed_binned_epe(e, mag, valid);
  const StereoMetrics s = stereo_metrics(e, mag, valid);
  r.bad = s.bad;
  r.avg_err = s.avg_err;
  if (region != nullptr) {
    std::size_t matched = 0;
    std::size_t unmatched = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!valid[i]) continue;
      ((*region)[i] ? matched : unmatched) += 1;
    }
    r.matched_pixels = matched;
    r.unmatched_pixels = unmatched;
    r.matched_epe = masked_mean(e.size(), selector(valid, region, true), [&](std::size_t i) { return e[i]; });
    r.unmatched_epe =
        masked_mean(e.size(), selector(valid, region, false), [&](std::size_t i) { return e[i]; });
    r.fl_matched = fl_rate(e, mag, valid, region, true);
    r.fl_unmatched = fl_rate(e, mag, valid, region, false);
  }
  return r;
}

}  // namespace

Grid1 epe_map(const Grid2& pred, const Grid2& gt) {
  require_same_shape(pred.shape(), gt.shape(), "epe_map");
  std::vector<double> e(pred.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::sqrt(squared_norm(pred[i] - gt[i]));
  return Grid1(pred.shape(), std::move(e));
}

Grid1 epe_map(const Grid1& pred, const Grid1& gt) {
  require_same_shape(pred.shape(), gt.shape(), "epe_map");
  std::vector<double> e(pred.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::abs(pred[i] - gt[i]);
  return Grid1(pred.shape(), std::move(e));
}

Grid1 magnitude(const Grid2& field) {
  std::vector<double> m(field.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::sqrt(squared_norm(field[i]));
  return Grid1(field.shape(), std::move(m));
}

Grid1 magnitude(const Grid1& field) {
  std::vector<double> m(field.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::abs(field[i]);
  return Grid1(field.shape(), std::move(m));
}

Metric aggregate_epe(const Grid1& e, const BinaryMask& valid, const BinaryMask* region) {
  check_region(e, valid, region, "aggregate_epe");
  return masked_mean(e.size(), selector(valid, region), [&](std::size_t i) { return e[i]; });
}

Metric outlier_rate(const Grid1& e, const BinaryMask& valid, double threshold,
                    const BinaryMask* region) {
  if (!(threshold > 0.0)) throw Error(ErrorCode::invalid_argument, "threshold must be > 0");
  check_region(e, valid, region, "outlier_rate");
  return masked_mean(e.size(), selector(valid, region),
                     [&](std::size_t i) { return e[i] > threshold ? 100.0 : 0.0; });
}

Metric fl_all(const Grid1& e, const Grid1& gt_mag, const BinaryMask& valid,
              const BinaryMask* region) {
  check_region(e, valid, region, "fl_all");
  require_same_shape(e.shape(), gt_mag.shape(), "fl_all");
  return fl_rate(e, gt_mag, valid, region, true);
}

SpeedBins speed_binned_epe(const Grid1& e, const Grid1& gt_mag, const BinaryMask& valid) {
  check_region(e, valid, nullptr, "speed_binned_epe");
  require_same_shape(e.shape(), gt_mag.shape(), "speed_binned_epe");
  auto bin = [&](auto in_bin) {
    return masked_mean(e.size(), [&](std::size_t i) { return valid[i] && in_bin(gt_mag[i]); },
                       [&](std::size_t i) { return e[i]; });
  };
  return {bin([](double m) { return m < 10.0; }),
          bin([](double m) { return m >= 10.0 && m <= 40.0; }),
          bin([](double m) { return m > 40.0; })};
}

StereoMetrics stereo_metrics(const Grid1& e, const Grid1& gt, const BinaryMask& valid) {
  check_region(e, valid, nullptr, "stereo_metrics");
  require_same_shape(e.shape(), gt.shape(), "stereo_metrics");
  StereoMetrics m;
  for (std::size_t k = 0; k < kBadThresholds.size(); ++k) {
    m.bad[k] = outlier_rate(e, valid, kBadThresholds[k]);
  }
  m.avg_err = masked_mean(e.size(), selector(valid, nullptr),
                          [&](std::size_t i) { return std::abs(e[i]); });
  return m;
}

MetricReport evaluate_flow(const Grid2& pred, const Grid2& gt, const BinaryMask& valid,
                           const BinaryMask* region) {
  return evaluate(pred, gt, valid, region, Task::flow);
}

MetricReport evaluate_stereo(const Grid1& pred, const Grid1& gt, const BinaryMask& valid,
                             const BinaryMask* region) {
  return evaluate(pred, gt, valid, region, Task::stereo);
}

}  // namespace dcloss
