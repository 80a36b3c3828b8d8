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

#include "dcloss/dcloss.h"

#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "dcloss/confidence.hpp"
#include "dcloss/fields.hpp"
#include "dcloss/io.hpp"
#include "dcloss/losses.hpp"
#include "dcloss/metrics.hpp"
#include "dcloss/toytrain.hpp"

struct dcl_flow {
  dcloss::Grid2 grid;
};
struct dcl_scalar {
  dcloss::Grid1 grid;
};
struct dcl_mask {
  dcloss::BinaryMask grid;
};
struct dcl_report {
  dcloss::MetricReport report;
};

namespace {

using dcloss::ErrorCode;

thread_local std::string g_last_error;

// Any exception escaping the body becomes a status code plus message.
template <typename Body>
dcl_status guarded(Body&& body) noexcept {
  try {
    body();
    g_last_error.clear();
    return DCL_OK;
  } catch (const dcloss::Error& e) {
    g_last_error = e.what();
    return static_cast<dcl_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DCL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DCL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return DCL_ERR_INTERNAL;
  }
}

template <typename T>
const T& need(const T* p, const char* name) {
  if (p == nullptr) {
    throw dcloss::Error(ErrorCode::invalid_argument, std::string(name) + " must not be NULL");
  }
  return *p;
}

template <typename T>
T** need_out(T** p, const char* name) {
  if (p == nullptr) {
    throw dcloss::Error(ErrorCode::invalid_argument, std::string(name) + " must not be NULL");
  }
  return p;
}

std::string need_str(const char* p, const char* name) {
  if (p == nullptr) {
    throw dcloss::Error(ErrorCode::invalid_argument, std::string(name) + " must not be NULL");
  }
  return p;
}

dcloss::BinaryMask valid_or_all(const dcl_mask* valid, dcloss::Shape shape) {
  return valid != nullptr ? valid->grid : dcloss::make_mask(shape, true);
}

dcloss::CycleParams cycle_from(const dcl_cycle_params* params) {
  if (params == nullptr) return {};
  return {params->gamma1, params->gamma2};
}

dcloss::LossMode mode_from(dcl_loss_mode mode) {
  if (mode < DCL_LOSS_PLAIN_L1 || mode > DCL_LOSS_MASK_SUM) {
    throw dcloss::Error(ErrorCode::invalid_argument, "unknown loss mode");
  }
  return static_cast<dcloss::LossMode>(mode);
}

dcloss::WeightSpec spec_from(const dcl_weight_spec* spec) {
  const dcl_weight_spec& s = need(spec, "spec");
  dcloss::WeightSpec out;
  out.mode = mode_from(s.mode);
  out.alpha1 = s.alpha1;
  out.beta1 = s.beta1;
  out.alpha2 = s.alpha2;
  out.beta2 = s.beta2;
  out.cycle = {s.cycle.gamma1, s.cycle.gamma2};
  out.validate();
  return out;
}

template <typename Handle, typename Grid>
void emit(Handle** out, Grid grid) {
  *out = new Handle{std::move(grid)};
}

template <typename T>
void copy_out(const dcloss::Grid<T>& grid, T* dst, std::size_t count) {
  if (dst == nullptr || count < grid.size()) {
    throw dcloss::Error(ErrorCode::invalid_argument, "output buffer too small");
  }
  std::copy(grid.data().begin(), grid.data().end(), dst);
}

dcl_status copy_text(const std::string& text, char* buffer, std::size_t capacity, std::size_t* length) {
  return guarded([&] {
    if (length != nullptr) *length = text.size();
    if (buffer != nullptr && capacity > 0) {
      const std::size_t n = std::min(capacity - 1, text.size());
      std::memcpy(buffer, text.data(), n);
      buffer[n] = '\0';
    }
  });
}


template <typename T>
void publish_sequence(const dcloss::SequenceLoss<T>& loss, double* total, double* scalars,
                      dcl_scalar** weight_map, dcl_scalar** loss_map) {
  if (total != nullptr) *total = loss.total;
  if (scalars != nullptr) {
    for (std::size_t i = 0; i < loss.iterations.size(); ++i) scalars[i] = loss.iterations[i].scalar;
  }
  if (weight_map != nullptr) emit(weight_map, loss.iterations.back().weight_map);
  if (loss_map != nullptr) emit(loss_map, loss.iterations.back().loss_map);
}

}  // namespace

extern "C" {

const char* dcl_version(void) { return "1.0.0"; }

const char* dcl_status_name(dcl_status status) {
  if (status == DCL_OK) return "ok";
  if (status == DCL_ERR_INTERNAL) return "internal error";
  return dcloss::to_string(static_cast<ErrorCode>(status));
}

const char* dcl_last_error(void) { return g_last_error.c_str(); }

// ---- grids ----

dcl_status dcl_flow_create(int height, int width, const double* uv, dcl_flow** out) {
  return guarded([&] {
    need_out(out, "out");
    need(uv, "uv");
    const dcloss::Shape shape{height, width};
    if (height <= 0 || width <= 0) dcloss::Grid2(height, width);  // throws bad_dimensions
    std::vector<dcloss::Vec2> data(shape.size());
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = {uv[2 * i], uv[2 * i + 1]};
    emit(out, dcloss::Grid2(shape, std::move(data)));
  });
}

void dcl_flow_destroy(dcl_flow* flow) { delete flow; }
int dcl_flow_height(const dcl_flow* flow) { return flow ? flow->grid.height() : 0; }
int dcl_flow_width(const dcl_flow* flow) { return flow ? flow->grid.width() : 0; }

dcl_status dcl_flow_copy_data(const dcl_flow* flow, double* uv, size_t count) {
  return guarded([&] {
    const dcloss::Grid2& g = need(flow, "flow").grid;
    if (uv == nullptr || count < 2 * g.size()) {
      throw dcloss::Error(ErrorCode::invalid_argument, "output buffer too small");
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
      uv[2 * i] = g[i].u;
      uv[2 * i + 1] = g[i].v;
    }
  });
}

dcl_status dcl_scalar_create(int height, int width, const double* values, dcl_scalar** out) {
  return guarded([&] {
    need_out(out, "out");
    need(values, "values");
    if (height <= 0 || width <= 0) dcloss::Grid1(height, width);
    const dcloss::Shape shape{height, width};
    emit(out, dcloss::Grid1(shape, std::vector<double>(values, values + shape.size())));
  });
}

void dcl_scalar_destroy(dcl_scalar* scalar) { delete scalar; }
int dcl_scalar_height(const dcl_scalar* s) { return s ? s->grid.height() : 0; }
int dcl_scalar_width(const dcl_scalar* s) { return s ? s->grid.width() : 0; }

dcl_status dcl_scalar_copy_data(const dcl_scalar* scalar, double* values, size_t count) {
  return guarded([&] { copy_out(need(scalar, "scalar").grid, values, count); });
}

dcl_status dcl_mask_create(int height, int width, const uint8_t* values, dcl_mask** out) {
  return guarded([&] {
    need_out(out, "out");
    need(values, "values");
    if (height <= 0 || width <= 0) dcloss::BinaryMask(height, width);
    const dcloss::Shape shape{height, width};
    std::vector<std::uint8_t> data(shape.size());
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = values[i] != 0 ? 1 : 0;
    emit(out, dcloss::BinaryMask(shape, std::move(data)));
  });
}

void dcl_mask_destroy(dcl_mask* mask) { delete mask; }
int dcl_mask_height(const dcl_mask* m) { return m ? m->grid.height() : 0; }
int dcl_mask_width(const dcl_mask* m) { return m ? m->grid.width() : 0; }

dcl_status dcl_mask_copy_data(const dcl_mask* mask, uint8_t* values, size_t count) {
  return guarded([&] { copy_out(need(mask, "mask").grid, values, count); });
}

dcl_status dcl_mask_and(const dcl_mask* a, const dcl_mask* b, dcl_mask** out) {
  return guarded([&] {
    need_out(out, "out");
    const dcloss::BinaryMask& ma = need(a, "a").grid;
    if (b == nullptr) return emit(out, ma);
    dcloss::require_same_shape(ma.shape(), b->grid.shape(), "dcl_mask_and");
    std::vector<std::uint8_t> data(ma.size());
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = ma[i] && b->grid[i] ? 1 : 0;
    emit(out, dcloss::BinaryMask(ma.shape(), std::move(data)));
  });
}

// ---- geometry ----

dcl_status dcl_flow_hflip(const dcl_flow* flow, dcl_flow** out) {
  return guarded([&] { emit(need_out(out, "out"), dcloss::hflip(need(flow, "flow").grid)); });
}

dcl_status dcl_scalar_hflip(const dcl_scalar* scalar, dcl_scalar** out) {
  return guarded([&] { emit(need_out(out, "out"), dcloss::hflip(need(scalar, "scalar").grid)); });
}

dcl_status dcl_reverse_disparity_restore(const dcl_scalar* flipped_estimate, dcl_scalar** out) {
  return guarded([&] {
    emit(need_out(out, "out"),
         dcloss::reverse_disparity_restore(need(flipped_estimate, "flipped_estimate").grid));
  });
}

dcl_status dcl_disparity_to_flow(const dcl_scalar* disparity, dcl_stereo_direction direction,
                                 dcl_flow** out) {
  return guarded([&] {
    const auto dir = direction == DCL_RIGHT_TO_LEFT ? dcloss::StereoDirection::right_to_left
                                                    : dcloss::StereoDirection::left_to_right;
    emit(need_out(out, "out"), dcloss::disparity_to_flow(need(disparity, "disparity").grid, dir));
  });
}

size_t dcl_scalar_count_negative(const dcl_scalar* scalar) {
  return scalar ? dcloss::count_negative(scalar->grid) : 0;
}

// ---- confidence ----

dcl_cycle_params dcl_cycle_params_default(void) {
  const dcloss::CycleParams p;
  return {p.gamma1, p.gamma2};
}

dcl_status dcl_confidence_db_flow(const dcl_flow* pred, const dcl_flow* gt, const dcl_mask* valid,
                                  dcl_scalar** out) {
  return guarded([&] {
    const auto& p = need(pred, "pred").grid;
    const auto m = dcloss::confidence_db_flow(p, need(gt, "gt").grid, valid_or_all(valid, p.shape()));
    emit(need_out(out, "out"), m.values());
  });
}

dcl_status dcl_confidence_db_stereo(const dcl_scalar* pred, const dcl_scalar* gt,
                                    const dcl_mask* valid, dcl_scalar** out) {
  return guarded([&] {
    const auto& p = need(pred, "pred").grid;
    const auto m =
        dcloss::confidence_db_stereo(p, need(gt, "gt").grid, valid_or_all(valid, p.shape()));
    emit(need_out(out, "out"), m.values());
  });
}

dcl_status dcl_confidence_oa_flow(const dcl_flow* forward, const dcl_flow* backward,
                                  const dcl_cycle_params* params, dcl_scalar** out) {
  return guarded([&] {
    const auto m = dcloss::confidence_oa(need(forward, "forward").grid,
                                         need(backward, "backward").grid, cycle_from(params));
    emit(need_out(out, "out"), m.values());
  });
}

dcl_status dcl_confidence_oa_stereo(const dcl_scalar* left_to_right,
                                    const dcl_scalar* right_to_left,
                                    const dcl_cycle_params* params, dcl_scalar** out) {
  return guarded([&] {
    const auto m = dcloss::confidence_oa_stereo(need(left_to_right, "left_to_right").grid,
                                                need(right_to_left, "right_to_left").grid,
                                                cycle_from(params));
    emit(need_out(out, "out"), m.values());
  });
}

dcl_status dcl_occlusion_mask_flow(const dcl_flow* forward, const dcl_flow* backward,
                                   const dcl_cycle_params* params, dcl_mask** out) {
  return guarded([&] {
    emit(need_out(out, "out"),
         dcloss::occlusion_mask(need(forward, "forward").grid, need(backward, "backward").grid,
                                cycle_from(params)));
  });
}

dcl_status dcl_occlusion_mask_stereo(const dcl_scalar* left_to_right,
                                     const dcl_scalar* right_to_left,
                                     const dcl_cycle_params* params, dcl_mask** out) {
  return guarded([&] {
    emit(need_out(out, "out"),
         dcloss::occlusion_mask_stereo(need(left_to_right, "left_to_right").grid,
                                       need(right_to_left, "right_to_left").grid,
                                       cycle_from(params)));
  });
}

// ---- losses ----

dcl_weight_spec dcl_weight_spec_default(dcl_loss_mode mode, dcl_task task) {
  const auto m = (mode >= DCL_LOSS_PLAIN_L1 && mode <= DCL_LOSS_MASK_SUM)
                     ? static_cast<dcloss::LossMode>(mode)
                     : dcloss::LossMode::plain_l1;
  const auto s = dcloss::WeightSpec::defaults(
      m, task == DCL_TASK_STEREO ? dcloss::Task::stereo : dcloss::Task::flow);
  return {static_cast<dcl_loss_mode>(s.mode), s.alpha1, s.beta1, s.alpha2, s.beta2,
          {s.cycle.gamma1, s.cycle.gamma2}};
}

const char* dcl_loss_mode_name(dcl_loss_mode mode) {
  if (mode < DCL_LOSS_PLAIN_L1 || mode > DCL_LOSS_MASK_SUM) return "unknown";
  // Names are string literals, so the view is NUL-terminated.
  return dcloss::to_string(static_cast<dcloss::LossMode>(mode)).data();
}

dcl_status dcl_loss_mode_parse(const char* name, dcl_loss_mode* out) {
  return guarded([&] {
    const std::string text = need_str(name, "name");
    if (out == nullptr) throw dcloss::Error(ErrorCode::invalid_argument, "out must not be NULL");
    const auto mode = dcloss::parse_loss_mode(text);
    if (!mode) throw dcloss::Error(ErrorCode::invalid_argument, "unknown loss mode " + text);
    *out = static_cast<dcl_loss_mode>(*mode);
  });
}

dcl_status dcl_weighted_l1_flow(const dcl_flow* pred, const dcl_flow* gt, const dcl_scalar* weights,
                                const dcl_mask* valid, double* scalar, dcl_flow** grad) {
  return guarded([&] {
    const auto& p = need(pred, "pred").grid;
    auto r = dcloss::weighted_l1(p, need(gt, "gt").grid, need(weights, "weights").grid,
                                 valid_or_all(valid, p.shape()));
    if (scalar != nullptr) *scalar = r.scalar;
    if (grad != nullptr) emit(grad, std::move(r.grad));
  });
}

dcl_status dcl_weighted_l1_stereo(const dcl_scalar* pred, const dcl_scalar* gt,
                                  const dcl_scalar* weights, const dcl_mask* valid, double* scalar,
                                  dcl_scalar** grad) {
  return guarded([&] {
    const auto& p = need(pred, "pred").grid;
    auto r = dcloss::weighted_l1(p, need(gt, "gt").grid, need(weights, "weights").grid,
                                 valid_or_all(valid, p.shape()));
    if (scalar != nullptr) *scalar = r.scalar;
    if (grad != nullptr) emit(grad, std::move(r.grad));
  });
}

dcl_status dcl_weight_map_flow(const dcl_weight_spec* spec, const dcl_flow* forward,
                               const dcl_flow* backward, const dcl_flow* gt, const dcl_mask* valid,
                               dcl_scalar** out) {
  return guarded([&] {
    const dcloss::WeightSpec s = spec_from(spec);
    const auto& f = need(forward, "forward").grid;
    const auto inputs = dcloss::flow_weight_inputs(s, f, backward ? &backward->grid : nullptr,
                                                   need(gt, "gt").grid, valid_or_all(valid, f.shape()));
    emit(need_out(out, "out"), dcloss::weight_map(s, f.shape(), inputs));
  });
}

dcl_status dcl_weight_map_stereo(const dcl_weight_spec* spec, const dcl_scalar* left_to_right,
                                 const dcl_scalar* right_to_left, const dcl_scalar* gt,
                                 const dcl_mask* valid, dcl_scalar** out) {
  return guarded([&] {
    const dcloss::WeightSpec s = spec_from(spec);
    const auto& d = need(left_to_right, "left_to_right").grid;
    const auto inputs = dcloss::stereo_weight_inputs(
        s, d, right_to_left ? &right_to_left->grid : nullptr, need(gt, "gt").grid,
        valid_or_all(valid, d.shape()));
    emit(need_out(out, "out"), dcloss::weight_map(s, d.shape(), inputs));
  });
}


dcl_status dcl_sequence_loss_flow(const dcl_flow* const* forward, const dcl_flow* const* backward,
                                  size_t count, const dcl_flow* gt, const dcl_mask* valid,
                                  const dcl_weight_spec* spec, double gamma_seq, double* total,
                                  double* scalars, dcl_scalar** weight_map, dcl_scalar** loss_map) {
  return guarded([&] {
    if (count == 0) throw dcloss::Error(ErrorCode::invalid_argument, "empty prediction sequence");
    need(forward, "forward");
    const auto& g = need(gt, "gt").grid;
    std::vector<dcloss::FlowPrediction> preds;
    for (std::size_t i = 0; i < count; ++i) {
      dcloss::FlowPrediction p{need(forward[i], "forward[i]").grid, std::nullopt};
      if (backward != nullptr && backward[i] != nullptr) p.backward = backward[i]->grid;
      preds.push_back(std::move(p));
    }
    const auto loss = dcloss::sequence_loss_flow(preds, g, valid_or_all(valid, g.shape()),
                                                 spec_from(spec), {gamma_seq});
    publish_sequence(loss, total, scalars, weight_map, loss_map);
  });
}

dcl_status dcl_sequence_loss_stereo(const dcl_scalar* const* left_to_right,
                                    const dcl_scalar* const* right_to_left, size_t count,
                                    const dcl_scalar* gt, const dcl_mask* valid,
                                    const dcl_weight_spec* spec, double gamma_seq, double* total,
                                    double* scalars, dcl_scalar** weight_map,
                                    dcl_scalar** loss_map) {
  return guarded([&] {
    if (count == 0) throw dcloss::Error(ErrorCode::invalid_argument, "empty prediction sequence");
    need(left_to_right, "left_to_right");
    const auto& g = need(gt, "gt").grid;
    std::vector<dcloss::StereoPrediction> preds;
    for (std::size_t i = 0; i < count; ++i) {
      dcloss::StereoPrediction p{need(left_to_right[i], "left_to_right[i]").grid, std::nullopt};
      if (right_to_left != nullptr && right_to_left[i] != nullptr) {
        p.right_to_left = right_to_left[i]->grid;
      }
      preds.push_back(std::move(p));
    }
    const auto loss = dcloss::sequence_loss_stereo(preds, g, valid_or_all(valid, g.shape()),
                                                   spec_from(spec), {gamma_seq});
    publish_sequence(loss, total, scalars, weight_map, loss_map);
  });
}

// ---- metrics ----

dcl_status dcl_evaluate_flow(const dcl_flow* pred, const dcl_flow* gt, const dcl_mask* valid,
                             const dcl_mask* region, dcl_report** out) {
  return guarded([&] {
    const auto& p = need(pred, "pred").grid;
    emit(need_out(out, "out"),
         dcloss::evaluate_flow(p, need(gt, "gt").grid, valid_or_all(valid, p.shape()),
                               region ? &region->grid : nullptr));
  });
}

dcl_status dcl_evaluate_stereo(const dcl_scalar* pred, const dcl_scalar* gt, const dcl_mask* valid,
                               const dcl_mask* region, dcl_report** out) {
  return guarded([&] {
    const auto& p = need(pred, "pred").grid;
    emit(need_out(out, "out"),
         dcloss::evaluate_stereo(p, need(gt, "gt").grid, valid_or_all(valid, p.shape()),
                                 region ? &region->grid : nullptr));
  });
}

void dcl_report_destroy(dcl_report* report) { delete report; }

dcl_status dcl_report_get(const dcl_report* report, const char* column, double* value,
                          int* available) {
  return guarded([&] {
    const auto& r = need(report, "report").report;
    const std::string name = need_str(column, "column");
    for (const auto& [key, metric] : dcloss::io::metric_values(r)) {
      if (key != name) continue;
      if (available != nullptr) *available = metric.has_value() ? 1 : 0;
      if (value != nullptr) *value = metric.value_or(0.0);
      return;
    }
    throw dcloss::Error(ErrorCode::invalid_argument, "unknown metric column " + name);
  });
}

dcl_status dcl_report_csv(const dcl_report* report, char* buffer, size_t capacity, size_t* length) {
  std::string text;
  const dcl_status st = guarded([&] {
    std::ostringstream out;
    dcloss::io::write_metrics_csv(need(report, "report").report, out);
    text = out.str();
  });
  if (st != DCL_OK) return st;
  return copy_text(text, buffer, capacity, length);
}

// ---- files ----

dcl_status dcl_read_flo(const char* path, dcl_flow** flow, dcl_mask** valid) {
  return guarded([&] {
    need_out(flow, "flow");
    const std::string p = need_str(path, "path");
    auto file = dcloss::io::read_flo(dcloss::io::read_file(p));
    auto mask = std::make_unique<dcl_mask>(dcl_mask{std::move(file.valid)});
    emit(flow, std::move(file.flow));
    if (valid != nullptr) *valid = mask.release();
  });
}

dcl_status dcl_write_flo(const char* path, const dcl_flow* flow, const dcl_mask* valid) {
  return guarded([&] {
    const std::string p = need_str(path, "path");
    dcloss::io::write_file(p, dcloss::io::write_flo(need(flow, "flow").grid,
                                                     valid ? &valid->grid : nullptr));
  });
}

dcl_status dcl_read_pfm(const char* path, dcl_scalar** values, dcl_mask** valid) {
  return guarded([&] {
    need_out(values, "values");
    const std::string p = need_str(path, "path");
    auto file = dcloss::io::read_pfm(dcloss::io::read_file(p));
    auto mask = std::make_unique<dcl_mask>(dcl_mask{std::move(file.valid)});
    emit(values, std::move(file.values));
    if (valid != nullptr) *valid = mask.release();
  });
}

dcl_status dcl_write_pfm(const char* path, const dcl_scalar* values, const dcl_mask* valid) {
  return guarded([&] {
    const std::string p = need_str(path, "path");
    dcloss::io::write_file(p, dcloss::io::write_pfm(need(values, "values").grid,
                                                     valid ? &valid->grid : nullptr));
  });
}

dcl_status dcl_write_pgm(const char* path, const dcl_scalar* values, const double* range,
                         int* degenerate) {
  return guarded([&] {
    const std::string p = need_str(path, "path");
    std::optional<std::pair<double, double>> r;
    if (range != nullptr) r = std::pair{range[0], range[1]};
    const auto image = dcloss::io::write_pgm(need(values, "values").grid, r);
    dcloss::io::write_file(p, image.bytes);
    if (degenerate != nullptr) *degenerate = image.degenerate_range ? 1 : 0;
  });
}

dcl_status dcl_write_mask_pgm(const char* path, const dcl_mask* mask) {
  return guarded([&] {
    const std::string p = need_str(path, "path");
    dcloss::io::write_file(p, dcloss::io::write_pgm(need(mask, "mask").grid).bytes);
  });
}

dcl_status dcl_read_mask_pgm(const char* path, dcl_mask** out) {
  return guarded([&] {
    need_out(out, "out");
    const std::string p = need_str(path, "path");
    emit(out, dcloss::io::read_mask_pgm(dcloss::io::read_file(p)));
  });
}

dcl_status dcl_write_report_csv(const char* path, const dcl_report* report) {
  return guarded([&] {
    const std::string p = need_str(path, "path");
    std::ostringstream out;
    dcloss::io::write_metrics_csv(need(report, "report").report, out);
    const std::string text = out.str();
    dcloss::io::write_file(p, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  });
}

// ---- toy training ----

dcl_status dcl_toytrain_run(const char* config_path, const char* output_dir) {
  return guarded([&] {
    const std::string p = need_str(config_path, "config_path");
    const std::string dir = need_str(output_dir, "output_dir");
    const auto bytes = dcloss::io::read_file(p);
    const auto experiment = dcloss::toy::parse_experiment(
        std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
    dcloss::toy::run_experiment(experiment, dir);
  });
}

dcl_status dcl_toytrain_defaults(char* buffer, size_t capacity, size_t* length) {
  return copy_text(dcloss::toy::experiment_defaults(), buffer, capacity, length);
}

}  // extern "C"
