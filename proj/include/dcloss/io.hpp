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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dcloss/confidence.hpp"
#include "dcloss/fields.hpp"
#include "dcloss/metrics.hpp"

namespace dcloss::io {

using Bytes = std::vector<std::uint8_t>;

enum class FileKind { flo, pfm, pgm, mask_pgm, metrics_csv };

/// Guesses the kind from the extension (.flo, .pfm, .pgm, .csv). PGM files
/// are reported as `pgm`; callers reading masks ask for mask_pgm explicitly.
std::optional<FileKind> kind_from_path(const std::filesystem::path& path);

/// Middlebury .flo: "PIEH" magic (202021.25f little-endian), int32 width,
/// int32 height, then interleaved little-endian float32 (u, v) pairs.
inline constexpr float kFloMagic = 202021.25f;
/// Components above this magnitude (or NaN) mark unknown flow.
inline constexpr float kFloUnknownThreshold = 1e9f;

struct FlowFile {
  Grid2 flow;        ///< unknown pixels hold (0, 0)
  BinaryMask valid;  ///< false where the file stores an unknown-flow sentinel
};

FlowFile read_flo(std::span<const std::uint8_t> bytes);
/// Pixels with valid == false are written as NaN.
Bytes write_flo(const Grid2& flow, const BinaryMask* valid = nullptr);

/// Grayscale PFM ("Pf"). Negative scale means little-endian; rows run bottom
/// to top. Non-finite samples come back as invalid pixels holding 0.
struct ScalarFile {
  Grid1 values;
  BinaryMask valid;
};

ScalarFile read_pfm(std::span<const std::uint8_t> bytes);
/// Little-endian, scale -1.0. Pixels with valid == false are written as +inf.
Bytes write_pfm(const Grid1& values, const BinaryMask* valid = nullptr);

struct PgmImage {
  Bytes bytes;
  bool degenerate_range = false;  ///< lo == hi; image is uniform 128
};

/// 8-bit binary PGM. Values map affinely from [lo, hi] to [0, 255] with
/// round-half-up and clamping. Without a range, grids use their min/max.
PgmImage write_pgm(const Grid1& values, std::optional<std::pair<double, double>> range = {});
/// Confidence maps default to the range (0, 1).
PgmImage write_pgm(const ConfidenceMap& map, std::optional<std::pair<double, double>> range = {});
/// false -> 0, true -> 255.
PgmImage write_pgm(const BinaryMask& mask);

/// Reads a binary (P5) PGM as a mask: nonzero samples are true.
BinaryMask read_mask_pgm(std::span<const std::uint8_t> bytes);

/// Column order of write_metrics_csv.
std::vector<std::string> metrics_csv_columns();
/// Every numeric column of the CSV (all but "task") in column order; pixel
/// counts are converted to double.
std::vector<std::pair<std::string, Metric>> metric_values(const MetricReport& report);
/// Header row plus one data row. Values use 4 decimals; unavailable metrics
/// are written as NA.
void write_metrics_csv(const MetricReport& report, std::ostream& out);
std::string format_metric(const Metric& value);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace dcloss::io
