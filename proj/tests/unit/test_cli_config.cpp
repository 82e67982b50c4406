// Copyright 2026 The nullwave Authors
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

#include <string>

#include "doctest.h"
#include "json.hpp"
#include "nullwave/cli/config.hpp"

using namespace nullwave;
using cli::ConfigError;

namespace {

const char* kBase = R"({
  "experiment": "picard",
  "system": {
    "p": 2,
    "speeds": [1, -1],
    "coupling": [[1, 1, 2, -0.5], [1, 2, 1, -0.5], [2, 1, 2, -0.5], [2, 2, 1, -0.5]]
  },
  "data": [
    [[0, 0], [0.5, 0.25], [1, 0]],
    [[0, 0], [0.5, 0.25], [1, 0]]
  ],
  "grid": {"dx": 0.001, "dt": 0.001},
  "seed": 42
})";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

ConfigError error_of(const std::string& text) {
  try {
    (void)cli::parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("config was accepted");
  return ConfigError(0, "", "");
}

}  // namespace

TEST_SUITE("cli_config") {
  TEST_CASE("reference config parses") {
    const auto cfg = cli::parse_config(kBase);
    CHECK(cfg.experiment == "picard");
    CHECK(cfg.system.p() == 2);
    CHECK(cfg.system.coupling(0, 0, 1) == -0.5);
    CHECK(cfg.data.size() == 2);
    CHECK(cfg.grid.dx == 0.001);
    CHECK_FALSE(cfg.grid.horizon);
    CHECK(cfg.seed == 42);
    CHECK(cfg.tolerances.max_iter == 60);
  }

  TEST_CASE("overrides") {
    cli::Overrides ov;
    ov.experiment = "stability";
    ov.dx = 0.01;
    ov.seed = 7;
    const auto cfg = cli::parse_config(kBase, ov);
    CHECK(cfg.experiment == "stability");
    CHECK(cfg.grid.dx == 0.01);
    CHECK(cfg.grid.dt == 0.001);
    CHECK(cfg.seed == 7);
    REQUIRE(cfg.perturbation);
    CHECK(cfg.perturbation->l1 == 1e-3);
  }

  TEST_CASE("diagnostics name line and field") {
    auto e = error_of(replace(kBase, "\"dx\": 0.001", "\"dx\": -1"));
    CHECK(e.field() == "/grid/dx");
    CHECK(e.line() == 12);

    e = error_of(replace(kBase, "[1, 1, 2, -0.5]", "[1, 1, 3, -0.5]"));
    CHECK(e.field() == "/system/coupling/0/2");
    CHECK(e.line() == 6);

    e = error_of(replace(kBase, "[2, 2, 1, -0.5]", "[2, 2, 1, -0.4]"));
    CHECK(e.field() == "/system/coupling");

    e = error_of(replace(kBase, "\"seed\": 42", "\"seed\": 42,\n  \"grdi\": {}"));
    CHECK(e.field() == "/grdi");
    CHECK(e.line() == 14);

    e = error_of(replace(kBase, "[0.5, 0.25], [1, 0]]\n  ]", "[0.5, 0.25], [1, 0.1]]\n  ]"));
    CHECK(e.field() == "/data/1");

    e = error_of(replace(kBase, "\"picard\"", "\"nonsense\""));
    CHECK(e.field() == "/experiment");

    e = error_of(replace(kBase, "\"p\": 2", "\"p\": 3"));
    CHECK(e.field() == "/system/p");

    e = error_of(replace(kBase, "\"seed\": 42\n}", "\"seed\": 42,\n}"));
    CHECK(e.line() == 14);
    CHECK(std::string(e.what()).find("invalid JSON") != std::string::npos);
  }

  TEST_CASE("resolved config carries every default and round-trips") {
    const auto cfg = cli::parse_config(kBase);
    const auto text = cli::resolved_config_json(cfg);
    const auto doc = nlohmann::json::parse(text);
    CHECK(doc["tolerances"]["picard"] == 1e-10);
    CHECK(doc["tolerances"]["quadrature"] == 1e-3);
    CHECK(doc["system"]["coupling"][0] == nlohmann::json({1, 1, 2, -0.5}));
    // Nulls are unset optionals; drop them and the document parses again.
    auto cleaned = doc;
    cleaned["grid"].erase("horizon");
    cleaned["estimates"].erase("support");
    cleaned["wave_bridge"].erase("control");
    cleaned["blowup"] = nlohmann::json::object();
    cleaned["output"].erase("field_stride");
    const auto again = cli::parse_config(cleaned.dump());
    CHECK(cli::resolved_config_json(again) == text);
  }
}
