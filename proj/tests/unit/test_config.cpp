// Copyright 2026 The ghawkes Authors
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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ghawkes/config.hpp"
#include "ghawkes/csv.hpp"
#include "ghawkes/errors.hpp"

using namespace ghawkes;

namespace {

const char* kMinimal = R"({
  "kernel": {"type": "constant", "c": 1.0},
  "response": {"type": "linear", "mu": 1.0},
  "memory": {"type": "exponential", "alpha": 2.0},
  "drive": {"eta_inf": 0.0}
})";

// kMinimal with `key` replaced or added at the top level.
std::string with(const std::string& key, const nlohmann::json& value) {
  auto doc = nlohmann::json::parse(kMinimal);
  doc[key] = value;
  return doc.dump();
}

}  // namespace

TEST_CASE("minimal config takes the documented defaults") {
  const auto c = parse_config(kMinimal);
  CHECK(c.sizes == std::vector<std::size_t>{250, 500, 1000, 2000});
  CHECK(c.rho.at(1000) == 1.0);
  CHECK(c.tau == 0.25);
  CHECK(c.eps == 0.25);
  CHECK(c.replicas == 1);
  CHECK(c.grid == 512);
  CHECK(c.alpha() == 2.0);
  CHECK(c.resolved_dt() == doctest::Approx(5e-4));
  CHECK(c.resolved_observe_dt() == doctest::Approx(0.05));
  CHECK(c.threads == 1);
}

TEST_CASE("every preset parses and matches its file under configs/") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const auto c = preset(name);
    CHECK(c.name == name);
    CHECK(resolve_config(name).name == name);
    const auto path = std::filesystem::path(GHAWKES_CONFIG_DIR) / (name + ".json");
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(nlohmann::json::parse(ss.str()) == nlohmann::json::parse(preset_json(name)));
    CHECK(load_config(path).name == name);
  }
  CHECK(preset_names().size() >= 5);
  CHECK_THROWS_AS(preset("nope"), ConfigError);
}

TEST_CASE("power-law dilution") {
  const auto c = parse_config(with("rho", {{"rule", "power"}, {"exponent", 0.25}}));
  CHECK(c.rho.at(10000) == doctest::Approx(0.1));
}

TEST_CASE("function forms") {
  const auto dir = std::filesystem::temp_directory_path() / "ghawkes_config_test";
  std::filesystem::create_directories(dir);
  write_text_file(dir / "g.csv", "x,g\n0,0\n1,1\n");
  auto doc = nlohmann::json::parse(kMinimal);
  doc["kernel"] = {{"type", "edd"},
                   {"f", {{"table", {{"grid", {0.0, 1.0}}, {"values", {1.0, 0.5}}}}}},
                   {"g", {{"csv", "g.csv"}}}};
  doc["drive"] = {{"eta_inf", {0.0, 1.0}}, {"eta_zero", {{"polynomial", {1.0, 1.0}}}}, {"beta", 2.0}};
  const auto c = parse_config(doc.dump(), dir);
  CHECK(c.kernel(0.0, 0.5) == doctest::Approx(0.5));
  CHECK(c.kernel(1.0, 0.5) == doctest::Approx(0.25));
  CHECK(c.drive(0.0, 0.5) == doctest::Approx(1.5));
  CHECK(c.drive.beta() == 2.0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("tabulated memory") {
  auto doc = nlohmann::json::parse(kMinimal);
  doc["memory"] = {{"type", "tabulated"}, {"step", 0.01}, {"from_exponential", 2.0}, {"horizon", 10.0}};
  const auto c = parse_config(doc.dump());
  CHECK(c.memory.l1_norm() == doctest::Approx(0.5).epsilon(1e-4));
  CHECK_THROWS_AS(c.alpha(), ConfigError);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(with("colour", "blue")), ConfigError);
  CHECK_THROWS_AS(parse_config(with("phase", {{"bogus", 1}})), ConfigError);
  CHECK_THROWS_AS(parse_config(with("eps", 0.0)), ConfigError);
  CHECK_THROWS_AS(parse_config(with("replicas", 0)), ConfigError);
  CHECK_THROWS_AS(parse_config(with("sizes", {8})), ConfigError);
  CHECK_THROWS_AS(parse_config(with("tau", 0.5)), ConfigError);
  CHECK_THROWS_AS(parse_config(with("rho", 0.0)), ConfigError);
  CHECK_THROWS_AS(parse_config(with("kernel", {{"type", "mystery"}})), ConfigError);
  CHECK_THROWS_AS(parse_config(with("kernel", {{"type", "constant"}, {"c", 2.0}})), ConfigError);
  CHECK_THROWS_AS(parse_config(with("response", {{"type", "sigmoid"}, {"lambda_max", 1.0}})), ConfigError);
  CHECK_THROWS_AS(parse_config(with("drive", {{"eta_inf", 0.0}, {"beta", 1.0}})), ConfigError);
  CHECK_THROWS_AS(parse_config(with("grid", 1)), ConfigError);
  auto big = nlohmann::json::parse(kMinimal);
  big["kernel"] = {{"type", "edd"}, {"f", {0.0, 2.0}}, {"g", 1.0}};
  CHECK_THROWS_AS(parse_config(big.dump()), ConfigError);
  big["rho"] = 0.5;
  CHECK_NOTHROW(parse_config(big.dump()));
  auto missing = nlohmann::json::parse(kMinimal);
  missing.erase("drive");
  CHECK_THROWS_AS(parse_config(missing.dump()), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  CHECK_THROWS_AS(resolve_config("/nonexistent/config.json"), ConfigError);
}
