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

#include <bit>
#include <cmath>
#include <cstring>
#include <sstream>

#include "doctest.h"
#include "dcloss/io.hpp"
#include "support.hpp"

using namespace dcloss;
using namespace dcloss::io;

namespace {

// Float-representable values so that float32 storage is lossless.
Grid2 float_flow(testing::Rng& rng, int h, int w) {
  std::vector<Vec2> v(static_cast<std::size_t>(h * w));
  for (auto& x : v) {
    x = {static_cast<float>(testing::uniform(rng, -100.0, 100.0)),
         static_cast<float>(testing::uniform(rng, -100.0, 100.0))};
  }
  return Grid2(h, w, std::move(v));
}

Grid1 float_scalar(testing::Rng& rng, int h, int w) {
  std::vector<double> v(static_cast<std::size_t>(h * w));
  for (auto& x : v) x = static_cast<float>(testing::uniform(rng, -1e4, 1e4));
  return Grid1(h, w, std::move(v));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected dcloss::Error");
  return ErrorCode::invalid_argument;
}

void put_f32(Bytes& b, std::size_t at, float v) {
  const auto u = std::bit_cast<std::uint32_t>(v);
  for (int k = 0; k < 4; ++k) b[at + k] = static_cast<std::uint8_t>(u >> (8 * k));
}

Bytes text(std::string_view s) { return Bytes(s.begin(), s.end()); }

}  // namespace

TEST_CASE(".flo round trip and header") {
  testing::Rng rng(40);
  const Grid2 f = float_flow(rng, 5, 4);
  const Bytes b = write_flo(f);
  CHECK(std::string(b.begin(), b.begin() + 4) == "PIEH");
  CHECK(b.size() == 12 + 5 * 4 * 8);
  const FlowFile back = read_flo(b);
  CHECK(back.flow == f);
  CHECK(count_true(back.valid) == 20);

  for (int trial = 0; trial < 100; ++trial) {
    const Grid2 g = float_flow(rng, testing::uniform_int(rng, 1, 9), testing::uniform_int(rng, 1, 9));
    CHECK(read_flo(write_flo(g)).flow == g);
  }
}

TEST_CASE(".flo unknown flow and malformed input") {
  const Grid2 f(1, 2, std::vector<Vec2>{{1, 2}, {3, 4}});
  const BinaryMask valid(1, 2, std::vector<std::uint8_t>{1, 0});
  const FlowFile back = read_flo(write_flo(f, &valid));
  CHECK(back.valid == valid);
  CHECK(back.flow(0, 1) == Vec2{});

  Bytes big = write_flo(f);
  put_f32(big, 12, 2e9f);
  CHECK(read_flo(big).valid[0] == 0);

  Bytes b = write_flo(f);
  CHECK(code_of([&] { read_flo(std::span(b).first(b.size() - 3)); }) == ErrorCode::truncated);
  CHECK(code_of([&] { read_flo(std::span(b).first(6)); }) == ErrorCode::truncated);
  Bytes extra = b;
  extra.push_back(0);
  CHECK(code_of([&] { read_flo(extra); }) == ErrorCode::dimension_mismatch);
  Bytes magic = b;
  magic[0] = 'X';
  CHECK(code_of([&] { read_flo(magic); }) == ErrorCode::bad_magic);
  Bytes dims = b;
  dims[4] = 0;
  CHECK(code_of([&] { read_flo(dims); }) == ErrorCode::bad_dimensions);
}

TEST_CASE("PFM round trip, endianness and orientation") {
  testing::Rng rng(41);
  const Grid1 g = float_scalar(rng, 6, 3);
  const Bytes b = write_pfm(g);
  CHECK(std::string(b.begin(), b.begin() + 3) == "Pf\n");
  CHECK(read_pfm(b).values == g);

  for (int trial = 0; trial < 100; ++trial) {
    const Grid1 s = float_scalar(rng, testing::uniform_int(rng, 1, 9), testing::uniform_int(rng, 1, 9));
    CHECK(read_pfm(write_pfm(s)).values == s);
  }

  // big-endian twin: positive scale and byte-swapped samples
  const std::string le_header = "Pf\n3 6\n-1.0\n";
  REQUIRE(std::string(b.begin(), b.begin() + static_cast<long>(le_header.size())) == le_header);
  Bytes be = text("Pf\n3 6\n1.0\n");
  for (std::size_t i = le_header.size(); i < b.size(); i += 4) {
    for (int k = 3; k >= 0; --k) be.push_back(b[i + k]);
  }
  CHECK(read_pfm(be).values == g);

  // rows are stored bottom to top
  const Grid1 two(2, 1, std::vector<double>{1.0, 2.0});
  const Bytes t = write_pfm(two);
  float first = 0.0f;
  std::memcpy(&first, t.data() + t.size() - 8, 4);
  CHECK(first == 2.0f);
}

TEST_CASE("PFM invalid pixels and malformed input") {
  const Grid1 g(1, 2, std::vector<double>{1.0, 2.0});
  const BinaryMask valid(1, 2, std::vector<std::uint8_t>{0, 1});
  const ScalarFile back = read_pfm(write_pfm(g, &valid));
  CHECK(back.valid == valid);
  CHECK(back.values(0, 0) == 0.0);

  CHECK(code_of([] { read_pfm(text("PF\n1 1\n-1.0\n000000000000")); }) == ErrorCode::unsupported_format);
  CHECK(code_of([] { read_pfm(text("P5\n1 1\n-1.0\n0000")); }) == ErrorCode::bad_magic);
  CHECK(code_of([] { read_pfm(text("Pf\nx 1\n-1.0\n0000")); }) == ErrorCode::bad_header);
  CHECK(code_of([] { read_pfm(text("Pf\n1 1\n0.0\n0000")); }) == ErrorCode::bad_header);
  CHECK(code_of([] { read_pfm(text("Pf\n2 1\n-1.0\n0000")); }) == ErrorCode::truncated);
  CHECK(code_of([] { read_pfm(text("Pf\n1 1\n-1.0\n00000")); }) == ErrorCode::dimension_mismatch);
}

TEST_CASE("PGM visualisation") {
  const ConfidenceMap ones = ConfidenceMap::constant({2, 2}, 1.0);
  const PgmImage all = write_pgm(ones);
  const std::string header = "P5\n2 2\n255\n";
  CHECK(std::string(all.bytes.begin(), all.bytes.begin() + static_cast<long>(header.size())) == header);
  for (std::size_t i = header.size(); i < all.bytes.size(); ++i) CHECK(all.bytes[i] == 255);

  const PgmImage half = write_pgm(ConfidenceMap::constant({1, 1}, 0.5));
  CHECK(half.bytes.back() == 128);

  const BinaryMask m(1, 2, std::vector<std::uint8_t>{1, 0});
  const PgmImage bilevel = write_pgm(m);
  CHECK(bilevel.bytes[bilevel.bytes.size() - 2] == 255);
  CHECK(bilevel.bytes.back() == 0);
  CHECK(read_mask_pgm(bilevel.bytes) == m);

  const PgmImage flat = write_pgm(Grid1(1, 3, 7.0));
  CHECK(flat.degenerate_range);
  CHECK(flat.bytes.back() == 128);

  const PgmImage stretched = write_pgm(Grid1(1, 2, std::vector<double>{-1.0, 3.0}));
  CHECK(stretched.bytes[stretched.bytes.size() - 2] == 0);
  CHECK(stretched.bytes.back() == 255);
}

TEST_CASE("mask PGM reader") {
  CHECK(read_mask_pgm(text(std::string_view("P5\n# comment\n2 1\n255\n\x01\x00", 23))).to_vector() ==
        std::vector<std::uint8_t>{1, 0});
  CHECK(code_of([] { read_mask_pgm(text("P2\n1 1\n255\n1")); }) == ErrorCode::unsupported_format);
  CHECK(code_of([] { read_mask_pgm(text("P5\n1 1\n65535\n11")); }) == ErrorCode::unsupported_format);
  CHECK(code_of([] { read_mask_pgm(text("P5\n2 2\n255\n1")); }) == ErrorCode::truncated);
}

TEST_CASE("metrics CSV") {
  MetricReport r;
  r.valid_pixels = 4;
  r.epe = 1.5;
  r.matched_pixels = 4;
  r.unmatched_pixels = 0;
  std::ostringstream a;
  write_metrics_csv(r, a);
  const std::string csv = a.str();
  CHECK(csv.find("1.5000") != std::string::npos);
  const auto nl = csv.find('\n');
  CHECK(csv.substr(0, nl).starts_with("task,valid_pixels,matched_pixels,unmatched_pixels,epe,"));
  CHECK(csv.substr(nl + 1).starts_with("flow,4,4,0,1.5000,NA,"));
  std::ostringstream b;
  write_metrics_csv(r, b);
  CHECK(a.str() == b.str());
  CHECK(format_metric(std::nullopt) == "NA");
  CHECK(format_metric(2.0 / 3.0) == "0.6667");
  CHECK(metric_values(r).size() + 1 == metrics_csv_columns().size());
}

TEST_CASE("fuzzed inputs never crash the readers") {
  testing::Rng rng(42);
  const Bytes seeds[] = {write_flo(float_flow(rng, 3, 4)), write_pfm(float_scalar(rng, 4, 2)),
                         write_pgm(make_mask({3, 3}, true)).bytes};
  int rejected = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    Bytes b = seeds[trial % 3];
    const int edits = testing::uniform_int(rng, 1, 6);
    for (int e = 0; e < edits; ++e) {
      const int kind = testing::uniform_int(rng, 0, 2);
      if (kind == 0 && !b.empty()) {
        b[static_cast<std::size_t>(testing::uniform_int(rng, 0, static_cast<int>(b.size()) - 1))] =
            static_cast<std::uint8_t>(testing::uniform_int(rng, 0, 255));
      } else if (kind == 1 && !b.empty()) {
        b.resize(static_cast<std::size_t>(testing::uniform_int(rng, 0, static_cast<int>(b.size()) - 1)));
      } else {
        b.push_back(static_cast<std::uint8_t>(testing::uniform_int(rng, 0, 255)));
      }
    }
    for (auto reader : {+[](const Bytes& x) { (void)read_flo(x); }, +[](const Bytes& x) { (void)read_pfm(x); },
                        +[](const Bytes& x) { (void)read_mask_pgm(x); }}) {
      try {
        reader(b);
      } catch (const Error&) {
        ++rejected;
      }
    }
  }
  CHECK(rejected > 0);
}

TEST_CASE("file kinds") {
  CHECK(kind_from_path("a/b.flo") == FileKind::flo);
  CHECK(kind_from_path("x.PFM") == FileKind::pfm);
  CHECK(kind_from_path("m.pgm") == FileKind::pgm);
  CHECK(kind_from_path("r.csv") == FileKind::metrics_csv);
  CHECK_FALSE(kind_from_path("r.png").has_value());
  CHECK_THROWS_AS(read_file("/nonexistent/dir/file.flo"), Error);
}
