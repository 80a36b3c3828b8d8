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

// Brute-force reference implementations. Deliberately naive and free of any
// dependency on the library: per-pixel loops over raw vectors, interpolation
// as a sum of tent kernels over the whole grid.

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

// Row-major H x W field with C interleaved channels.
struct Field {
  int h = 0;
  int w = 0;
  int c = 1;
  std::vector<double> v;

  double at(int y, int x, int k = 0) const { return v[(y * w + x) * c + k]; }
  double& at(int y, int x, int k = 0) { return v[(y * w + x) * c + k]; }
};

inline Field zeros(int h, int w, int c) { return {h, w, c, std::vector<double>(h * w * c, 0.0)}; }

// Tent-kernel interpolation summed over every lattice point.
inline std::optional<std::vector<double>> sample(const Field& f, double x, double y) {
  if (!(x >= 0.0 && x <= f.w - 1.0 && y >= 0.0 && y <= f.h - 1.0)) return std::nullopt;
  std::vector<double> out(f.c, 0.0);
  for (int i = 0; i < f.h; ++i) {
    for (int j = 0; j < f.w; ++j) {
      const double k = std::max(0.0, 1.0 - std::abs(x - j)) * std::max(0.0, 1.0 - std::abs(y - i));
      if (k == 0.0) continue;
      for (int ch = 0; ch < f.c; ++ch) out[ch] += k * f.at(i, j, ch);
    }
  }
  return out;
}

struct CycleTerm {
  double num = 0.0;
  double den = 0.0;
  bool in_bounds = false;
};

inline std::vector<CycleTerm> cycle(const Field& fw, const Field& bw, double g1, double g2) {
  std::vector<CycleTerm> out;
  for (int y = 0; y < fw.h; ++y) {
    for (int x = 0; x < fw.w; ++x) {
      const double u = fw.at(y, x, 0);
      const double v = fw.at(y, x, 1);
      const auto b = sample(bw, x + u, y + v);
      CycleTerm t;
      const double bu = b ? (*b)[0] : 0.0;
      const double bv = b ? (*b)[1] : 0.0;
      t.in_bounds = b.has_value();
      t.num = (u + bu) * (u + bu) + (v + bv) * (v + bv);
      t.den = g1 * (u * u + v * v + bu * bu + bv * bv) + g2;
      out.push_back(t);
    }
  }
  return out;
}

inline std::vector<int> matched(const Field& fw, const Field& bw, double g1 = 0.01, double g2 = 0.5) {
  std::vector<int> out;
  for (const CycleTerm& t : cycle(fw, bw, g1, g2)) out.push_back(t.in_bounds && t.num < t.den ? 1 : 0);
  return out;
}

inline std::vector<double> cycle_confidence(const Field& fw, const Field& bw, double g1 = 0.01,
                                            double g2 = 0.5) {
  std::vector<double> out;
  for (const CycleTerm& t : cycle(fw, bw, g1, g2)) out.push_back(t.in_bounds ? std::exp(-t.num / t.den) : 0.0);
  return out;
}

inline std::vector<double> error_confidence(const Field& pred, const Field& gt, const std::vector<int>& valid) {
  std::vector<double> out(pred.h * pred.w, 0.0);
  for (int p = 0; p < pred.h * pred.w; ++p) {
    if (!valid[p]) continue;
    double sq = 0.0;
    for (int k = 0; k < pred.c; ++k) {
      const double d = gt.v[p * pred.c + k] - pred.v[p * pred.c + k];
      sq += d * d;
    }
    out[p] = std::exp(-sq);
  }
  return out;
}

// Disparity d as a flow: left-to-right moves by (-d, 0), right-to-left by (+d, 0).
inline Field disparity_flow(const Field& d, double sign) {
  Field f = zeros(d.h, d.w, 2);
  for (int y = 0; y < d.h; ++y) {
    for (int x = 0; x < d.w; ++x) f.at(y, x, 0) = sign * d.at(y, x);
  }
  return f;
}

inline double weight(const std::string& mode, double m_db, double m_oa, int h, double a1, double b1,
                     double a2, double b2) {
  const double t_db = a1 * std::pow(1.0 - m_db, b1);
  const double t_oa = a2 * std::pow(m_oa, b2);
  if (mode == "plain_l1") return 1.0;
  if (mode == "db") return 1.0 + t_db;
  if (mode == "oa") return 1.0 + t_oa;
  if (mode == "sum") return 1.0 + t_db + t_oa;
  if (mode == "multiplication") return 1.0 + t_db * t_oa;
  if (mode == "masking") return 1.0 + h * t_db;
  if (mode == "mask_sum") return 1.0 + h * t_db + t_oa;
  return std::nan("");
}

// Mean over valid pixels of w * sum_k |gt - pred|.
inline double weighted_l1(const Field& pred, const Field& gt, const std::vector<double>& w,
                          const std::vector<int>& valid) {
  double total = 0.0;
  int n = 0;
  for (int p = 0; p < pred.h * pred.w; ++p) {
    if (!valid[p]) continue;
    double s = 0.0;
    for (int k = 0; k < pred.c; ++k) s += std::abs(gt.v[p * pred.c + k] - pred.v[p * pred.c + k]);
    total += w[p] * s;
    ++n;
  }
  return total / n;
}

inline std::vector<double> errors(const Field& pred, const Field& gt) {
  std::vector<double> e(pred.h * pred.w);
  for (int p = 0; p < pred.h * pred.w; ++p) {
    double sq = 0.0;
    for (int k = 0; k < pred.c; ++k) sq += std::pow(pred.v[p * pred.c + k] - gt.v[p * pred.c + k], 2);
    e[p] = std::sqrt(sq);
  }
  return e;
}

inline std::vector<double> magnitudes(const Field& f) {
  std::vector<double> m(f.h * f.w);
  for (int p = 0; p < f.h * f.w; ++p) {
    double sq = 0.0;
    for (int k = 0; k < f.c; ++k) sq += f.v[p * f.c + k] * f.v[p * f.c + k];
    m[p] = std::sqrt(sq);
  }
  return m;
}

// Mean of value(p) over pixels with keep(p); empty selection gives nullopt.
template <typename Keep, typename Value>
std::optional<double> mean(std::size_t n, Keep keep, Value value) {
  double s = 0.0;
  int c = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (keep(p)) {
      s += value(p);
      ++c;
    }
  }
  if (c == 0) return std::nullopt;
  return s / c;
}

struct Report {
  std::optional<double> epe, px1, px3, px5, fl, s0_10, s10_40, s40_plus, avg_err;
  std::optional<double> bad05, bad1, bad2, bad3;
  std::optional<double> epe_matched, epe_unmatched, fl_matched, fl_unmatched;
  int valid_pixels = 0;
  int matched_pixels = 0;
  int unmatched_pixels = 0;
};

inline Report evaluate(const Field& pred, const Field& gt, const std::vector<int>& valid,
                       const std::vector<int>* region) {
  const auto e = errors(pred, gt);
  const auto m = magnitudes(gt);
  const std::size_t n = e.size();
  auto is_valid = [&](std::size_t p) { return valid[p] != 0; };
  auto pct = [&](auto pred_fn) { return [pred_fn](std::size_t p) { return pred_fn(p) ? 100.0 : 0.0; }; };
  auto err = [&](std::size_t p) { return e[p]; };
  auto fl = [&](std::size_t p) { return e[p] > 3.0 && e[p] > 0.05 * m[p]; };
  Report r;
  for (std::size_t p = 0; p < n; ++p) r.valid_pixels += valid[p] ? 1 : 0;
  r.epe = mean(n, is_valid, err);
  r.avg_err = r.epe;
  r.px1 = mean(n, is_valid, pct([&](std::size_t p) { return e[p] > 1.0; }));
  r.px3 = mean(n, is_valid, pct([&](std::size_t p) { return e[p] > 3.0; }));
  r.px5 = mean(n, is_valid, pct([&](std::size_t p) { return e[p] > 5.0; }));
  r.bad05 = mean(n, is_valid, pct([&](std::size_t p) { return e[p] > 0.5; }));
  r.bad1 = r.px1;
  r.bad2 = mean(n, is_valid, pct([&](std::size_t p) { return e[p] > 2.0; }));
  r.bad3 = r.px3;
  r.fl = mean(n, is_valid, pct(fl));
  r.s0_10 = mean(n, [&](std::size_t p) { return valid[p] && m[p] < 10.0; }, err);
  r.s10_40 = mean(n, [&](std::size_t p) { return valid[p] && m[p] >= 10.0 && m[p] <= 40.0; }, err);
  r.s40_plus = mean(n, [&](std::size_t p) { return valid[p] && m[p] > 40.0; }, err);
  if (region != nullptr) {
    auto in = [&](std::size_t p) { return valid[p] && (*region)[p]; };
    auto out = [&](std::size_t p) { return valid[p] && !(*region)[p]; };
    for (std::size_t p = 0; p < n; ++p) {
      r.matched_pixels += in(p) ? 1 : 0;
      r.unmatched_pixels += out(p) ? 1 : 0;
    }
    r.epe_matched = mean(n, in, err);
    r.epe_unmatched = mean(n, out, err);
    r.fl_matched = mean(n, in, pct(fl));
    r.fl_unmatched = mean(n, out, pct(fl));
  }
  return r;
}

}  // namespace oracle
