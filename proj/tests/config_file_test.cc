// Copyright 2026 The UNS Codec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "uns/config_file.h"

namespace uns {
namespace {

void Write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

TEST_SUITE("config_file") {

TEST_CASE("defaults") {
  const CodecConfig c;
  CHECK(c.window.frame_len == 1024);
  CHECK(c.window.overlap_len == 256);
  CHECK(c.sample_rate_hz == 12800);
  CHECK(c.layout.upper_edges == std::vector<std::size_t>{40, 90, 140, 200, 260, 330, 410, 512});
  CHECK(c.budget.kbps12 == std::vector<int>{45, 34, 30, 23, 19, 16, 16, 16});
  CHECK(c.budget.kbps16 == std::vector<int>{67, 50, 45, 34, 29, 23, 23, 23});
  CHECK(c.lpc_order == 16);
  CHECK(c.fdns_weight == 0.98);
  CHECK(c.ctns_weight == 0.9);
  CHECK(c.ctns_threshold_db == -4.5);
  CHECK(c.fer_threshold == 0.125);
  CHECK(c.ctns_enabled);
  CHECK_FALSE(c.bypass);
  CHECK(c.num_bins() == 513);
  CHECK_NOTHROW(c.Validate());
}

TEST_CASE("formatted configuration parses back to itself") {
  CodecConfig c;
  c.mode = BitrateMode::k16kbps;
  c.ctns_threshold_db = -3.25;
  c.ctns_enabled = false;
  c.fdns_weight = 0.1 + 0.2;
  const std::string text = FormatConfig(c);
  const CodecConfig back = ParseConfig(text, "mem");
  CHECK(FormatConfig(back) == text);
  CHECK(back.mode == BitrateMode::k16kbps);
  CHECK(back.fdns_weight == c.fdns_weight);
  CHECK(back.table.thresholds == c.table.thresholds);
  CHECK(back.table.levels == c.table.levels);
  CHECK_FALSE(back.ctns_enabled);
}

TEST_CASE("comments, blanks and partial files") {
  const CodecConfig c = ParseConfig("# header\n\n  ctns_threshold_db = 20 # inline\n", "mem");
  CHECK(c.ctns_threshold_db == 20.0);
  CHECK(c.lpc_order == 16);
}

TEST_CASE("errors carry the origin and line") {
  auto expect = [](const std::string& text, const std::string& needle) {
    try {
      ParseConfig(text, "cfg");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect("\nbogus = 1\n", "cfg:2: unknown key 'bogus'");
  expect("lpc_order\n", "cfg:1: expected key = value");
  expect("lpc_order = 16x\n", "bad value for 'lpc_order'");
  expect("mode = 24k\n", "bad value for 'mode'");
  expect("phase_cells_high = 1, 2\n", "needs 8 values");
  expect("frame_len = 1000\n", "cfg:");
}

TEST_CASE("includes resolve relative to the including file") {
  const auto dir = std::filesystem::temp_directory_path() / "uns_cfg_test";
  std::filesystem::create_directories(dir / "sub");
  CodecConfig t;
  t.table.design_rate = 2.5;
  Write(dir / "sub" / "table.cfg", FormatEcupqTable(t.table));
  Write(dir / "main.cfg", "lpc_order = 12\ninclude sub/table.cfg\n");
  const CodecConfig c = LoadConfig((dir / "main.cfg").string());
  CHECK(c.lpc_order == 12);
  CHECK(c.table.design_rate == 2.5);
  CHECK(FormatConfig(c, "sub/table.cfg").find("include sub/table.cfg\n") != std::string::npos);

  Write(dir / "loop.cfg", "include loop.cfg\n");
  CHECK_THROWS_WITH_AS(LoadConfig((dir / "loop.cfg").string()),
                       doctest::Contains("nested too deeply"), ConfigError);
  Write(dir / "missing.cfg", "include nope.cfg\n");
  CHECK_THROWS_WITH_AS(LoadConfig((dir / "missing.cfg").string()),
                       doctest::Contains("cannot open include"), ConfigError);
  CHECK_THROWS_AS(LoadConfig((dir / "absent.cfg").string()), ConfigError);
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE

}  // namespace
}  // namespace uns
