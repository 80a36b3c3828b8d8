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

// dcloss command-line front end. Every subcommand goes through the C API.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dcloss/dcloss.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;
constexpr double kDefaultGammaSeq = 0.8;

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FlowDel {
  void operator()(dcl_flow* p) const { dcl_flow_destroy(p); }
};
struct ScalarDel {
  void operator()(dcl_scalar* p) const { dcl_scalar_destroy(p); }
};
struct MaskDel {
  void operator()(dcl_mask* p) const { dcl_mask_destroy(p); }
};
struct ReportDel {
  void operator()(dcl_report* p) const { dcl_report_destroy(p); }
};
using Flow = std::unique_ptr<dcl_flow, FlowDel>;
using Scalar = std::unique_ptr<dcl_scalar, ScalarDel>;
using Mask = std::unique_ptr<dcl_mask, MaskDel>;
using Report = std::unique_ptr<dcl_report, ReportDel>;

void check(dcl_status status, const std::string& context) {
  if (status == DCL_OK) return;
  std::string msg = context + ": " + dcl_last_error();
  if (status == DCL_ERR_INVALID_ARGUMENT) throw UsageError(msg);
  throw DataError(msg);
}

std::string dims(int h, int w) { return std::to_string(h) + "x" + std::to_string(w); }

// A field read from disk together with its validity mask.
template <typename Handle>
struct Loaded {
  std::string path;
  Handle data;
  Mask valid;
};

Loaded<Flow> load_flow(const std::string& path) {
  dcl_flow* f = nullptr;
  dcl_mask* m = nullptr;
  check(dcl_read_flo(path.c_str(), &f, &m), "cannot read flow file '" + path + "'");
  return {path, Flow(f), Mask(m)};
}

Loaded<Scalar> load_scalar(const std::string& path) {
  dcl_scalar* s = nullptr;
  dcl_mask* m = nullptr;
  check(dcl_read_pfm(path.c_str(), &s, &m), "cannot read PFM file '" + path + "'");
  return {path, Scalar(s), Mask(m)};
}

Mask load_mask(const std::string& path) {
  dcl_mask* m = nullptr;
  check(dcl_read_mask_pgm(path.c_str(), &m), "cannot read mask file '" + path + "'");
  return Mask(m);
}

int height_of(const dcl_flow* f) { return dcl_flow_height(f); }
int width_of(const dcl_flow* f) { return dcl_flow_width(f); }
int height_of(const dcl_scalar* s) { return dcl_scalar_height(s); }
int width_of(const dcl_scalar* s) { return dcl_scalar_width(s); }
int height_of(const dcl_mask* m) { return dcl_mask_height(m); }
int width_of(const dcl_mask* m) { return dcl_mask_width(m); }

template <typename A, typename B>
void same_dims(const A* a, const std::string& a_name, const B* b, const std::string& b_name) {
  if (height_of(a) != height_of(b) || width_of(a) != width_of(b)) {
    throw DataError("dimension mismatch: '" + a_name + "' is " + dims(height_of(a), width_of(a)) +
                    " but '" + b_name + "' is " + dims(height_of(b), width_of(b)));
  }
}

Mask mask_and(const dcl_mask* a, const dcl_mask* b) {
  dcl_mask* out = nullptr;
  check(dcl_mask_and(a, b, &out), "combining validity masks");
  return Mask(out);
}

// Intersection of the validity masks of every input plus the optional
// --valid mask file.
template <typename Handle>
Mask combined_valid(const std::vector<const Loaded<Handle>*>& inputs, const std::string& mask_path) {
  Mask acc = mask_and(inputs.front()->valid.get(), nullptr);
  for (std::size_t i = 1; i < inputs.size(); ++i) acc = mask_and(acc.get(), inputs[i]->valid.get());
  if (!mask_path.empty()) {
    Mask extra = load_mask(mask_path);
    same_dims(extra.get(), mask_path, inputs.front()->data.get(), inputs.front()->path);
    acc = mask_and(acc.get(), extra.get());
  }
  return acc;
}

void warn_negative(const Loaded<Scalar>& d) {
  const std::size_t n = dcl_scalar_count_negative(d.data.get());
  if (n > 0) {
    std::cerr << "warning: '" << d.path << "' holds " << n
              << " negative disparities; left-to-right disparities are expected to be >= 0\n";
  }
}

Scalar restore(const Loaded<Scalar>& flipped) {
  dcl_scalar* out = nullptr;
  check(dcl_reverse_disparity_restore(flipped.data.get(), &out), "restoring '" + flipped.path + "'");
  return Scalar(out);
}

void write_pfm(const std::string& path, const dcl_scalar* values) {
  check(dcl_write_pfm(path.c_str(), values, nullptr), "cannot write '" + path + "'");
}

void write_pgm(const std::string& path, const dcl_scalar* values, const double* range) {
  int degenerate = 0;
  check(dcl_write_pgm(path.c_str(), values, range, &degenerate), "cannot write '" + path + "'");
  if (degenerate != 0) {
    std::cerr << "note: '" << path << "' has a constant value range; written as uniform gray\n";
  }
}

dcl_task parse_task(const std::string& name) {
  return name == "stereo" ? DCL_TASK_STEREO : DCL_TASK_FLOW;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

// ---- shared options ----

struct CycleOpts {
  double gamma1;
  double gamma2;

  void add(CLI::App* cmd) {
    const dcl_cycle_params d = dcl_cycle_params_default();
    gamma1 = d.gamma1;
    gamma2 = d.gamma2;
    cmd->add_option("--gamma1", gamma1, "cycle check scale on squared magnitudes")->capture_default_str();
    cmd->add_option("--gamma2", gamma2, "cycle check constant tolerance")->capture_default_str();
  }
  dcl_cycle_params params() const {
    require(std::isfinite(gamma1) && gamma1 >= 0.0, "--gamma1 must be finite and >= 0");
    require(std::isfinite(gamma2) && gamma2 > 0.0, "--gamma2 must be finite and > 0");
    return {gamma1, gamma2};
  }
};

// Second input of a cycle check: explicit backward flow or right-to-left
// disparity, optionally given as a flipped estimate.
struct ConfmapOpts {
  std::string mode = "db";
  std::string task = "flow";
  std::string pred, gt, forward, backward, valid, output;
  bool restore_backward = false;
  CycleOpts cycle;
};

int run_confmap(const ConfmapOpts& o) {
  const bool stereo = parse_task(o.task) == DCL_TASK_STEREO;
  dcl_scalar* raw = nullptr;
  if (o.mode == "db") {
    require(!o.pred.empty() && !o.gt.empty(), "confmap --mode db needs --pred and --gt");
    if (stereo) {
      auto pred = load_scalar(o.pred);
      auto gt = load_scalar(o.gt);
      same_dims(pred.data.get(), pred.path, gt.data.get(), gt.path);
      warn_negative(pred);
      Mask valid = combined_valid<Scalar>({&pred, &gt}, o.valid);
      check(dcl_confidence_db_stereo(pred.data.get(), gt.data.get(), valid.get(), &raw), "confmap");
    } else {
      auto pred = load_flow(o.pred);
      auto gt = load_flow(o.gt);
      same_dims(pred.data.get(), pred.path, gt.data.get(), gt.path);
      Mask valid = combined_valid<Flow>({&pred, &gt}, o.valid);
      check(dcl_confidence_db_flow(pred.data.get(), gt.data.get(), valid.get(), &raw), "confmap");
    }
  } else {
    require(!o.forward.empty() && !o.backward.empty(),
            "confmap --mode oa needs --forward and --backward");
    const dcl_cycle_params params = o.cycle.params();
    if (stereo) {
      auto fw = load_scalar(o.forward);
      auto bw = load_scalar(o.backward);
      same_dims(fw.data.get(), fw.path, bw.data.get(), bw.path);
      warn_negative(fw);
      Scalar bw_restored = o.restore_backward ? restore(bw) : std::move(bw.data);
      check(dcl_confidence_oa_stereo(fw.data.get(), bw_restored.get(), &params, &raw), "confmap");
    } else {
      auto fw = load_flow(o.forward);
      auto bw = load_flow(o.backward);
      same_dims(fw.data.get(), fw.path, bw.data.get(), bw.path);
      check(dcl_confidence_oa_flow(fw.data.get(), bw.data.get(), &params, &raw), "confmap");
    }
  }
  Scalar map(raw);
  const double unit[2] = {0.0, 1.0};
  write_pfm(o.output + ".pfm", map.get());
  write_pgm(o.output + ".pgm", map.get(), unit);
  return kExitOk;
}

struct OccmaskOpts {
  std::string task = "flow";
  std::string forward, backward, output;
  bool restore_backward = false;
  CycleOpts cycle;
};

int run_occmask(const OccmaskOpts& o) {
  const dcl_cycle_params params = o.cycle.params();
  dcl_mask* raw = nullptr;
  if (parse_task(o.task) == DCL_TASK_STEREO) {
    auto fw = load_scalar(o.forward);
    auto bw = load_scalar(o.backward);
    same_dims(fw.data.get(), fw.path, bw.data.get(), bw.path);
    warn_negative(fw);
    Scalar bw_restored = o.restore_backward ? restore(bw) : std::move(bw.data);
    check(dcl_occlusion_mask_stereo(fw.data.get(), bw_restored.get(), &params, &raw), "occmask");
  } else {
    auto fw = load_flow(o.forward);
    auto bw = load_flow(o.backward);
    same_dims(fw.data.get(), fw.path, bw.data.get(), bw.path);
    check(dcl_occlusion_mask_flow(fw.data.get(), bw.data.get(), &params, &raw), "occmask");
  }
  Mask mask(raw);
  const std::string path = o.output + ".pgm";
  check(dcl_write_mask_pgm(path.c_str(), mask.get()), "cannot write '" + path + "'");
  return kExitOk;
}

struct LossOpts {
  std::string task = "flow";
  std::string mode = "plain_l1";
  std::vector<std::string> preds, backwards;
  std::string gt, valid, output;
  bool restore_backward = false;
  std::optional<double> alpha1, beta1, alpha2, beta2;
  double gamma_seq = kDefaultGammaSeq;
  CycleOpts cycle;
};

dcl_weight_spec build_spec(const LossOpts& o) {
  dcl_loss_mode mode;
  if (dcl_loss_mode_parse(o.mode.c_str(), &mode) != DCL_OK) {
    throw UsageError("unknown loss mode '" + o.mode + "'");
  }
  dcl_weight_spec spec = dcl_weight_spec_default(mode, parse_task(o.task));
  if (o.alpha1) spec.alpha1 = *o.alpha1;
  if (o.beta1) spec.beta1 = *o.beta1;
  if (o.alpha2) spec.alpha2 = *o.alpha2;
  if (o.beta2) spec.beta2 = *o.beta2;
  spec.cycle = o.cycle.params();
  for (double a : {spec.alpha1, spec.alpha2}) require(std::isfinite(a) && a >= 0.0, "alpha must be finite and >= 0");
  for (double b : {spec.beta1, spec.beta2}) require(std::isfinite(b) && b > 0.0, "beta must be finite and > 0");
  return spec;
}

void write_loss_csv(const std::string& path, const std::vector<double>& scalars, double total) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (f == nullptr) throw DataError("cannot write '" + path + "'");
  std::fprintf(f, "iteration,loss\n");
  for (std::size_t i = 0; i < scalars.size(); ++i) std::fprintf(f, "%zu,%.17g\n", i + 1, scalars[i]);
  std::fprintf(f, "total,%.17g\n", total);
  if (std::fclose(f) != 0) throw DataError("cannot write '" + path + "'");
}

int run_loss(const LossOpts& o) {
  require(!o.preds.empty(), "loss needs at least one --pred");
  require(o.backwards.empty() || o.backwards.size() == o.preds.size(),
          "loss needs one --backward per --pred when --backward is given");
  require(o.gamma_seq > 0.0 && o.gamma_seq <= 1.0, "--gamma-seq must lie in (0, 1]");
  const dcl_weight_spec spec = build_spec(o);
  const bool needs_backward = spec.mode != DCL_LOSS_PLAIN_L1 && spec.mode != DCL_LOSS_DB;
  require(!needs_backward || !o.backwards.empty(),
          std::string("loss mode ") + dcl_loss_mode_name(spec.mode) + " needs --backward");

  const std::size_t n = o.preds.size();
  std::vector<double> scalars(n);
  double total = 0.0;
  dcl_scalar* weight_raw = nullptr;
  dcl_scalar* loss_raw = nullptr;
  Report report;

  if (parse_task(o.task) == DCL_TASK_STEREO) {
    auto gt = load_scalar(o.gt);
    std::vector<Loaded<Scalar>> preds, bws;
    std::vector<Scalar> restored;
    std::vector<const dcl_scalar*> fw_ptrs, bw_ptrs;
    for (const auto& p : o.preds) {
      preds.push_back(load_scalar(p));
      same_dims(preds.back().data.get(), p, gt.data.get(), gt.path);
      warn_negative(preds.back());
      fw_ptrs.push_back(preds.back().data.get());
    }
    for (const auto& p : o.backwards) {
      bws.push_back(load_scalar(p));
      same_dims(bws.back().data.get(), p, gt.data.get(), gt.path);
      restored.push_back(o.restore_backward ? restore(bws.back()) : std::move(bws.back().data));
      bw_ptrs.push_back(restored.back().get());
    }
    Mask valid = combined_valid<Scalar>({&gt}, o.valid);
    check(dcl_sequence_loss_stereo(fw_ptrs.data(), bw_ptrs.empty() ? nullptr : bw_ptrs.data(), n,
                                   gt.data.get(), valid.get(), &spec, o.gamma_seq, &total,
                                   scalars.data(), &weight_raw, &loss_raw),
          "loss");
    dcl_report* r = nullptr;
    check(dcl_evaluate_stereo(fw_ptrs.back(), gt.data.get(), valid.get(), nullptr, &r), "loss");
    report.reset(r);
  } else {
    auto gt = load_flow(o.gt);
    std::vector<Loaded<Flow>> preds, bws;
    std::vector<const dcl_flow*> fw_ptrs, bw_ptrs;
    for (const auto& p : o.preds) {
      preds.push_back(load_flow(p));
      same_dims(preds.back().data.get(), p, gt.data.get(), gt.path);
      fw_ptrs.push_back(preds.back().data.get());
    }
    for (const auto& p : o.backwards) {
      bws.push_back(load_flow(p));
      same_dims(bws.back().data.get(), p, gt.data.get(), gt.path);
      bw_ptrs.push_back(bws.back().data.get());
    }
    Mask valid = combined_valid<Flow>({&gt}, o.valid);
    check(dcl_sequence_loss_flow(fw_ptrs.data(), bw_ptrs.empty() ? nullptr : bw_ptrs.data(), n,
                                 gt.data.get(), valid.get(), &spec, o.gamma_seq, &total,
                                 scalars.data(), &weight_raw, &loss_raw),
          "loss");
    dcl_report* r = nullptr;
    check(dcl_evaluate_flow(fw_ptrs.back(), gt.data.get(), valid.get(), nullptr, &r), "loss");
    report.reset(r);
  }
  Scalar weight(weight_raw);
  Scalar loss(loss_raw);

  std::printf("%.17g\n", total);
  if (!o.output.empty()) {
    write_pfm(o.output + "_loss.pfm", loss.get());
    write_pfm(o.output + "_weight.pfm", weight.get());
    write_loss_csv(o.output + "_loss.csv", scalars, total);
    const std::string metrics = o.output + "_metrics.csv";
    check(dcl_write_report_csv(metrics.c_str(), report.get()), "cannot write '" + metrics + "'");
  }
  return kExitOk;
}

struct EvalOpts {
  std::string task = "flow";
  std::string pred, gt, valid, region, output;
};

int run_eval(const EvalOpts& o) {
  dcl_report* raw = nullptr;
  if (parse_task(o.task) == DCL_TASK_STEREO) {
    auto pred = load_scalar(o.pred);
    auto gt = load_scalar(o.gt);
    same_dims(pred.data.get(), pred.path, gt.data.get(), gt.path);
    warn_negative(pred);
    Mask valid = combined_valid<Scalar>({&gt}, o.valid);
    Mask region = o.region.empty() ? Mask() : load_mask(o.region);
    if (region) same_dims(region.get(), o.region, gt.data.get(), gt.path);
    check(dcl_evaluate_stereo(pred.data.get(), gt.data.get(), valid.get(), region.get(), &raw), "eval");
  } else {
    auto pred = load_flow(o.pred);
    auto gt = load_flow(o.gt);
    same_dims(pred.data.get(), pred.path, gt.data.get(), gt.path);
    Mask valid = combined_valid<Flow>({&gt}, o.valid);
    Mask region = o.region.empty() ? Mask() : load_mask(o.region);
    if (region) same_dims(region.get(), o.region, gt.data.get(), gt.path);
    check(dcl_evaluate_flow(pred.data.get(), gt.data.get(), valid.get(), region.get(), &raw), "eval");
  }
  Report report(raw);
  if (!o.output.empty()) {
    check(dcl_write_report_csv(o.output.c_str(), report.get()), "cannot write '" + o.output + "'");
    return kExitOk;
  }
  std::size_t len = 0;
  check(dcl_report_csv(report.get(), nullptr, 0, &len), "eval");
  std::string text(len + 1, '\0');
  check(dcl_report_csv(report.get(), text.data(), text.size(), &len), "eval");
  text.resize(len);
  std::fwrite(text.data(), 1, text.size(), stdout);
  return kExitOk;
}

int run_reverse_disparity(const std::string& input, const std::string& output) {
  auto flipped = load_scalar(input);
  Scalar restored = restore(flipped);
  check(dcl_write_pfm(output.c_str(), restored.get(), flipped.valid.get()),
        "cannot write '" + output + "'");
  return kExitOk;
}

int run_toytrain(const std::string& config, const std::string& outdir) {
  const dcl_status st = dcl_toytrain_run(config.c_str(), outdir.c_str());
  if (st == DCL_ERR_CONFIG) throw UsageError(std::string("config '") + config + "': " + dcl_last_error());
  check(st, "toytrain");
  return kExitOk;
}

void show_defaults() {
  std::printf("# loss weighting defaults (alpha, beta)\n");
  for (dcl_task task : {DCL_TASK_FLOW, DCL_TASK_STEREO}) {
    const char* name = task == DCL_TASK_FLOW ? "flow" : "stereo";
    const dcl_weight_spec s = dcl_weight_spec_default(DCL_LOSS_SUM, task);
    std::printf("%s.db = %g, %g\n", name, s.alpha1, s.beta1);
    std::printf("%s.oa = %g, %g\n", name, s.alpha2, s.beta2);
  }
  const dcl_cycle_params c = dcl_cycle_params_default();
  std::printf("gamma1 = %g\ngamma2 = %g\ngamma_seq = %g\n", c.gamma1, c.gamma2, kDefaultGammaSeq);
  std::size_t len = 0;
  dcl_toytrain_defaults(nullptr, 0, &len);
  std::string text(len + 1, '\0');
  dcl_toytrain_defaults(text.data(), text.size(), &len);
  text.resize(len);
  std::printf("\n# toytrain config defaults\n%s", text.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confidence-weighted correspondence losses, metrics and a toy trainer"};
  app.set_version_flag("--version", std::string(dcl_version()));
  bool defaults = false;
  app.add_flag("--show-defaults", defaults, "print every default parameter and exit");
  app.require_subcommand(0, 1);

  const std::vector<std::string> tasks{"flow", "stereo"};

  ConfmapOpts cm;
  auto* confmap = app.add_subcommand("confmap", "write a confidence map as PFM plus PGM");
  confmap->add_option("--mode", cm.mode, "db (error-based) or oa (cycle-based)")
      ->check(CLI::IsMember({"db", "oa"}))
      ->capture_default_str();
  confmap->add_option("--task", cm.task)->check(CLI::IsMember(tasks))->capture_default_str();
  confmap->add_option("--pred", cm.pred, "prediction (.flo or .pfm), db mode");
  confmap->add_option("--gt", cm.gt, "ground truth, db mode");
  confmap->add_option("--valid", cm.valid, "extra validity mask (P5 PGM)");
  confmap->add_option("--forward", cm.forward, "forward flow or left-to-right disparity, oa mode");
  confmap->add_option("--backward", cm.backward, "backward flow or right-to-left disparity, oa mode");
  confmap->add_flag("--restore-backward", cm.restore_backward,
                    "the stereo backward input is a flipped estimate to restore first");
  confmap->add_option("-o,--output", cm.output, "output prefix")->required();
  cm.cycle.add(confmap);

  OccmaskOpts om;
  auto* occmask = app.add_subcommand("occmask", "write the cycle-check matched mask as PGM");
  occmask->add_option("--task", om.task)->check(CLI::IsMember(tasks))->capture_default_str();
  occmask->add_option("--forward", om.forward)->required();
  occmask->add_option("--backward", om.backward)->required();
  occmask->add_flag("--restore-backward", om.restore_backward);
  occmask->add_option("-o,--output", om.output, "output prefix")->required();
  om.cycle.add(occmask);

  LossOpts lo;
  auto* loss = app.add_subcommand("loss", "confidence-weighted L1 loss of one or more predictions");
  loss->add_option("--task", lo.task)->check(CLI::IsMember(tasks))->capture_default_str();
  loss->add_option("--mode", lo.mode,
                   "plain_l1, db, oa, sum, multiplication, masking or mask_sum")
      ->capture_default_str();
  loss->add_option("--pred", lo.preds, "predictions, earliest first (repeatable)")->required();
  loss->add_option("--backward", lo.backwards, "backward predictions, one per --pred");
  loss->add_flag("--restore-backward", lo.restore_backward);
  loss->add_option("--gt", lo.gt)->required();
  loss->add_option("--valid", lo.valid);
  loss->add_option("--alpha1", lo.alpha1, "error-confidence alpha (task default)");
  loss->add_option("--beta1", lo.beta1, "error-confidence beta (task default)");
  loss->add_option("--alpha2", lo.alpha2, "cycle-confidence alpha (task default)");
  loss->add_option("--beta2", lo.beta2, "cycle-confidence beta (task default)");
  loss->add_option("--gamma-seq", lo.gamma_seq, "sequence decay")->capture_default_str();
  loss->add_option("-o,--output", lo.output, "output prefix for maps and CSVs");
  lo.cycle.add(loss);

  EvalOpts ev;
  auto* eval = app.add_subcommand("eval", "evaluation metrics as CSV");
  eval->add_option("--task", ev.task)->check(CLI::IsMember(tasks))->capture_default_str();
  eval->add_option("--pred", ev.pred)->required();
  eval->add_option("--gt", ev.gt)->required();
  eval->add_option("--valid", ev.valid);
  eval->add_option("--region", ev.region, "matched-region mask (P5 PGM)");
  eval->add_option("-o,--output", ev.output, "CSV path (default: stdout)");

  std::string rd_in, rd_out;
  auto* revd = app.add_subcommand("reverse-disparity", "flip and negate a flipped-pair estimate");
  revd->add_option("input", rd_in)->required();
  revd->add_option("output", rd_out)->required();

  std::string tt_config, tt_out;
  auto* toytrain = app.add_subcommand("toytrain", "run the synthetic loss comparison");
  toytrain->add_option("--config", tt_config, "key = value config file")->required();
  toytrain->add_option("--output-dir", tt_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (defaults) {
      show_defaults();
      return kExitOk;
    }
    if (confmap->parsed()) return run_confmap(cm);
    if (occmask->parsed()) return run_occmask(om);
    if (loss->parsed()) return run_loss(lo);
    if (eval->parsed()) return run_eval(ev);
    if (revd->parsed()) return run_reverse_disparity(rd_in, rd_out);
    if (toytrain->parsed()) return run_toytrain(tt_config, tt_out);
    std::cerr << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
