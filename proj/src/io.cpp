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

#include "dcloss/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <string_view>

namespace dcloss::io {

namespace {

std::uint32_t load_u32(std::span<const std::uint8_t> b, std::size_t at, bool little) {
  const std::uint32_t b0 = b[at], b1 = b[at + 1], b2 = b[at + 2], b3 = b[at + 3];
  return little ? (b0 | (b1 << 8) | (b2 << 16) | (b3 << 24))
                : (b3 | (b2 << 8) | (b1 << 16) | (b0 << 24));
}

void store_u32_le(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

float load_f32(std::span<const std::uint8_t> b, std::size_t at, bool little) {
  return std::bit_cast<float>(load_u32(b, at, little));
}

void store_f32_le(Bytes& out, float v) { store_u32_le(out, std::bit_cast<std::uint32_t>(v)); }

void append(Bytes& out, std::string_view text) { out.insert(out.end(), text.begin(), text.end()); }

// Minimal tokenizer for the ASCII headers of PFM and PGM.
class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::string_view token(bool allow_comments) {
    skip_space(allow_comments);
    const std::size_t begin = pos_;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_])) ++pos_;
    return {reinterpret_cast<const char*>(bytes_.data()) + begin, pos_ - begin};
  }

  // Exactly one whitespace byte separates the header from the payload.
  bool consume_single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) return false;
    ++pos_;
    return true;
  }

  std::size_t position() const { return pos_; }

 private:
  void skip_space(bool allow_comments) {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (allow_comments && bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

template <typename Number>
std::optional<Number> parse_number(std::string_view text) {
  Number value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

int parse_dimension(std::string_view text, const char* format) {
  const auto value = parse_number<long long>(text);
  if (!value) throw Error(ErrorCode::bad_header, std::string(format) + ": unreadable dimension");
  if (*value <= 0 || *value > std::numeric_limits<int>::max()) {
    throw Error(ErrorCode::bad_dimensions,
                std::string(format) + ": dimensions must be positive, got " + std::string(text));
  }
  return static_cast<int>(*value);
}

// Checks that exactly `expected` payload bytes follow the header.
void require_payload(std::size_t available, std::uint64_t expected, const char* format) {
  if (available < expected) {
    throw Error(ErrorCode::truncated, std::string(format) + ": payload has " +
                                          std::to_string(available) + " bytes, expected " +
                                          std::to_string(expected));
  }
  if (available > expected) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(format) + ": " + std::to_string(available - expected) +
                    " bytes beyond the declared dimensions");
  }
}

std::uint8_t to_gray(double value, double lo, double hi) {
  const double scaled = std::floor((value - lo) / (hi - lo) * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

Bytes pgm_header(Shape shape) {
  Bytes out;
  append(out, "P5\n" + std::to_string(shape.width) + " " + std::to_string(shape.height) + "\n255\n");
  return out;
}

}  // namespace

std::optional<FileKind> kind_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".flo") return FileKind::flo;
  if (ext == ".pfm") return FileKind::pfm;
  if (ext == ".pgm") return FileKind::pgm;
  if (ext == ".csv") return FileKind::metrics_csv;
  return std::nullopt;
}

FlowFile read_flo(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || load_f32(bytes, 0, true) != kFloMagic) {
    throw Error(ErrorCode::bad_magic, "flo: missing PIEH magic");
  }
  if (bytes.size() < 12) throw Error(ErrorCode::truncated, "flo: header shorter than 12 bytes");
  const auto width = static_cast<std::int32_t>(load_u32(bytes, 4, true));
  const auto height = static_cast<std::int32_t>(load_u32(bytes, 8, true));
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::bad_dimensions, "flo: dimensions must be positive, got " +
                                               std::to_string(width) + "x" + std::to_string(height));
  }
  const std::uint64_t count = static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height);
  require_payload(bytes.size() - 12, count * 8, "flo");

  std::vector<Vec2> flow(count);
  std::vector<std::uint8_t> valid(count, 1);
  for (std::size_t i = 0; i < count; ++i) {
    const float u = load_f32(bytes, 12 + 8 * i, true);
    const float v = load_f32(bytes, 16 + 8 * i, true);
    const bool unknown = !(std::abs(u) <= kFloUnknownThreshold && std::abs(v) <= kFloUnknownThreshold);
    if (unknown) {
      valid[i] = 0;
    } else {
      flow[i] = {u, v};
    }
  }
  return {Grid2(height, width, std::move(flow)), BinaryMask(height, width, std::move(valid))};
}

Bytes write_flo(const Grid2& flow, const BinaryMask* valid) {
  if (valid != nullptr) require_same_shape(flow.shape(), valid->shape(), "write_flo");
  Bytes out;
  out.reserve(12 + flow.size() * 8);
  store_f32_le(out, kFloMagic);
  store_u32_le(out, static_cast<std::uint32_t>(flow.width()));
  store_u32_le(out, static_cast<std::uint32_t>(flow.height()));
  const float nan = std::numeric_limits<float>::quiet_NaN();
  for (std::size_t i = 0; i < flow.size(); ++i) {
    const bool ok = valid == nullptr || (*valid)[i] != 0;
    store_f32_le(out, ok ? static_cast<float>(flow[i].u) : nan);
    store_f32_le(out, ok ? static_cast<float>(flow[i].v) : nan);
  }
  return out;
}

ScalarFile read_pfm(std::span<const std::uint8_t> bytes) {
  HeaderReader header(bytes);
  const std::string_view magic = header.token(false);
  if (magic == "PF") throw Error(ErrorCode::unsupported_format, "pfm: colour PF files are not supported");
  if (magic != "Pf") throw Error(ErrorCode::bad_magic, "pfm: expected Pf header");
  const std::string_view w = header.token(false);
  const std::string_view h = header.token(false);
  const std::string_view s = header.token(false);
  if (w.empty() || h.empty() || s.empty()) throw Error(ErrorCode::truncated, "pfm: incomplete header");
  const int width = parse_dimension(w, "pfm");
  const int height = parse_dimension(h, "pfm");
  const auto scale = parse_number<double>(s);
  if (!scale || *scale == 0.0 || !std::isfinite(*scale)) {
    throw Error(ErrorCode::bad_header, "pfm: scale must be a nonzero number");
  }
  if (!header.consume_single_space()) throw Error(ErrorCode::truncated, "pfm: header not terminated");
  const bool little = *scale < 0.0;

  const std::size_t start = header.position();
  const std::uint64_t count = static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height);
  require_payload(bytes.size() - start, count * 4, "pfm");

  std::vector<double> values(count, 0.0);
  std::vector<std::uint8_t> valid(count, 1);
  for (int row = 0; row < height; ++row) {
    // File rows are stored bottom-to-top.
    const std::size_t file_row = static_cast<std::size_t>(height - 1 - row);
    for (int col = 0; col < width; ++col) {
      const std::size_t i = static_cast<std::size_t>(row) * width + col;
      const float v = load_f32(bytes, start + 4 * (file_row * width + col), little);
      if (std::isfinite(v)) {
        values[i] = v;
      } else {
        valid[i] = 0;
      }
    }
  }
  return {Grid1(height, width, std::move(values)), BinaryMask(height, width, std::move(valid))};
}

Bytes write_pfm(const Grid1& values, const BinaryMask* valid) {
  if (valid != nullptr) require_same_shape(values.shape(), valid->shape(), "write_pfm");
  Bytes out;
  append(out, "Pf\n" + std::to_string(values.width()) + " " + std::to_string(values.height()) +
                  "\n-1.0\n");
  out.reserve(out.size() + values.size() * 4);
  const float inf = std::numeric_limits<float>::infinity();
  for (int row = values.height() - 1; row >= 0; --row) {
    for (int col = 0; col < values.width(); ++col) {
      const std::size_t i = static_cast<std::size_t>(row) * values.width() + col;
      const bool ok = valid == nullptr || (*valid)[i] != 0;
      store_f32_le(out, ok ? static_cast<float>(values[i]) : inf);
    }
  }
  return out;
}

PgmImage write_pgm(const Grid1& values, std::optional<std::pair<double, double>> range) {
  if (!range) {
    const auto [lo, hi] = std::minmax_element(values.data().begin(), values.data().end());
    range = std::pair{*lo, *hi};
  }
  PgmImage image{pgm_header(values.shape()), false};
  const auto [lo, hi] = *range;
  image.degenerate_range = !(hi != lo);
  for (double v : values.data()) {
    image.bytes.push_back(image.degenerate_range ? std::uint8_t{128} : to_gray(v, lo, hi));
  }
  return image;
}

PgmImage write_pgm(const ConfidenceMap& map, std::optional<std::pair<double, double>> range) {
  return write_pgm(map.values(), range.value_or(std::pair{0.0, 1.0}));
}

PgmImage write_pgm(const BinaryMask& mask) {
  PgmImage image{pgm_header(mask.shape()), false};
  for (std::uint8_t b : mask.data()) image.bytes.push_back(b ? 255 : 0);
  return image;
}

BinaryMask read_mask_pgm(std::span<const std::uint8_t> bytes) {
  HeaderReader header(bytes);
  const std::string_view magic = header.token(true);
  if (magic == "P2") throw Error(ErrorCode::unsupported_format, "pgm: ASCII P2 is not supported");
  if (magic != "P5") throw Error(ErrorCode::bad_magic, "pgm: expected P5 header");
  const std::string_view w = header.token(true);
  const std::string_view h = header.token(true);
  const std::string_view m = header.token(true);
  if (w.empty() || h.empty() || m.empty()) throw Error(ErrorCode::truncated, "pgm: incomplete header");
  const int width = parse_dimension(w, "pgm");
  const int height = parse_dimension(h, "pgm");
  const auto maxval = parse_number<int>(m);
  if (!maxval || *maxval <= 0) throw Error(ErrorCode::bad_header, "pgm: bad maxval");
  if (*maxval > 255) throw Error(ErrorCode::unsupported_format, "pgm: 16-bit samples are not supported");
  if (!header.consume_single_space()) throw Error(ErrorCode::truncated, "pgm: header not terminated");

  const std::size_t start = header.position();
  const std::uint64_t count = static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height);
  require_payload(bytes.size() - start, count, "pgm");
  std::vector<std::uint8_t> mask(count);
  for (std::size_t i = 0; i < count; ++i) mask[i] = bytes[start + i] != 0 ? 1 : 0;
  return BinaryMask(height, width, std::move(mask));
}

std::vector<std::string> metrics_csv_columns() {
  return {"task",        "valid_pixels", "matched_pixels", "unmatched_pixels", "epe",
          "1px",         "3px",          "5px",            "fl_all",           "fl_matched",
          "fl_unmatched", "s0_10",       "s10_40",         "s40_plus",         "epe_matched",
          "epe_unmatched", "avg_err",    "bad_0.5",        "bad_1.0",          "bad_2.0",
          "bad_3.0"};
}

std::string format_metric(const Metric& value) {
  if (!value) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", *value);
  return buf;
}

std::vector<std::pair<std::string, Metric>> metric_values(const MetricReport& r) {
  const auto count = [](const std::optional<std::size_t>& n) -> Metric {
    if (!n) return std::nullopt;
    return static_cast<double>(*n);
  };
  std::vector<Metric> cells{static_cast<double>(r.valid_pixels), count(r.matched_pixels),
                            count(r.unmatched_pixels), r.epe};
  cells.insert(cells.end(), r.outlier.begin(), r.outlier.end());
  for (const Metric& m : {r.fl_all, r.fl_matched, r.fl_unmatched, r.speed.s0_10, r.speed.s10_40,
                          r.speed.s40_plus, r.matched_epe, r.unmatched_epe, r.avg_err}) {
    cells.push_back(m);
  }
  cells.insert(cells.end(), r.bad.begin(), r.bad.end());

  const std::vector<std::string> names = metrics_csv_columns();
  std::vector<std::pair<std::string, Metric>> out;
  for (std::size_t i = 0; i < cells.size(); ++i) out.emplace_back(names[i + 1], cells[i]);
  return out;
}

void write_metrics_csv(const MetricReport& r, std::ostream& out) {
  std::vector<std::string> row{std::string(to_string(r.task))};
  for (const auto& [name, value] : metric_values(r)) {
    const bool is_count = name.ends_with("_pixels");
    row.push_back(is_count && value ? std::to_string(static_cast<std::size_t>(*value))
                                    : format_metric(value));
  }
  const auto write_row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  write_row(metrics_csv_columns());
  write_row(row);
  if (!out) throw Error(ErrorCode::io, "metrics csv: stream write failed");
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::io, "read failed: " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::io, "write failed: " + path.string());
}

}  // namespace dcloss::io
