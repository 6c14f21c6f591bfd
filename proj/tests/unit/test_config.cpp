// SPDX-License-Identifier: Apache-2.0
//
// hris-mmimo: link-level simulator for self-configuring hybrid RISs in massive MIMO
// Copyright (C) 2026 The hris-mmimo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include <catch2/catch_amalgamated.hpp>

#include "hris/config.hpp"
#include "hris/orchestrator.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

using namespace hris;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace
{

std::filesystem::path write_temp(const std::string &name, const std::string &text)
{
    const auto path = std::filesystem::temp_directory_path() / ("hris_config_" + name + ".json");
    std::ofstream(path) << text;
    return path;
}

std::string error_of(const nlohmann::json &overrides)
{
    try
    {
        apply_overrides({}, overrides);
    }
    catch (const ConfigError &e)
    {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("load_config - empty file gives the reference parameter set")
{
    const SimulationConfig cfg = load_config(write_temp("empty", "  \n"));
    CHECK(cfg.M == 64);
    CHECK(cfg.K == 16);
    CHECK(cfg.N() == 32);
    CHECK(cfg.N_x == 8);
    CHECK(cfg.N_z == 4);
    CHECK(cfg.eta == 0.8);
    CHECK(cfg.rho_dbm == 10.0);
    CHECK(cfg.sigma_b_dbm == -94.0);
    CHECK(cfg.sigma_hris_dbm == -94.0);
    CHECK(cfg.beta_los == 2.0);
    CHECK(cfg.beta_nlos == 4.0);
    CHECK(cfg.carrier_hz == 28e9);
    CHECK(cfg.L == 128);
    CHECK(cfg.coherence_samples() == 2 * 128 * 16);
    CHECK(cfg == SimulationConfig{});

    CHECK(load_config(write_temp("braces", "{}")) == SimulationConfig{});
}

TEST_CASE("load_config - merge semantics")
{
    const SimulationConfig cfg = load_config(write_temp("merge", R"({"L": 16, "C_values": [0, 4, 8, 16]})"));
    CHECK(cfg.L == 16);
    CHECK(cfg.C_values == std::vector<arma::uword>{0, 4, 8, 16});
    CHECK(cfg.M == 64);
    CHECK(cfg.eta == 0.8);
}

TEST_CASE("load_config - validation messages")
{
    CHECK_THAT(error_of({{"eta", 1.5}}), ContainsSubstring("eta must lie in [0,1]"));
    CHECK_THAT(error_of({{"eta", -0.1}}), ContainsSubstring("eta must lie in [0,1]"));
    CHECK_THAT(error_of({{"L", 16}, {"C_values", {0, 32}}}), ContainsSubstring("C <= L"));
    CHECK_THAT(error_of({{"D_el", 3}, {"C_values", {0, 4}}}), ContainsSubstring("multiple of D_el"));
    CHECK_THAT(error_of({{"target_pfa", 0.0}}), ContainsSubstring("target_pfa"));
    CHECK_THAT(error_of({{"beta_los", 5.0}}), ContainsSubstring("beta_los"));
    CHECK_THAT(error_of({{"trials", 0}}), ContainsSubstring("trials"));
    CHECK_THAT(error_of({{"tau_c", 10}}), ContainsSubstring("tau_c"));
    CHECK_THAT(error_of({{"M", -3}}), ContainsSubstring("M must be a non-negative integer"));
    CHECK_THAT(error_of({{"eta", "high"}}), ContainsSubstring("eta must be a number"));
    CHECK_THAT(error_of({{"hardware", {"quantum"}}}), ContainsSubstring("unknown hardware"));
    CHECK_THAT(error_of({{"mse_reference", "other"}}), ContainsSubstring("mse_reference"));
    CHECK_THAT(error_of(nlohmann::json::array({1, 2})), ContainsSubstring("flat JSON object"));
}

TEST_CASE("load_config - unknown key lists the valid keys")
{
    const std::string msg = error_of({{"antennas", 4}});
    CHECK_THAT(msg, ContainsSubstring("unknown configuration key 'antennas'"));
    for (const auto &key : config_keys())
        CHECK_THAT(msg, ContainsSubstring(key));
}

TEST_CASE("load_config - unreadable or malformed input")
{
    CHECK_THROWS_AS(load_config("/nonexistent/dir/config.json"), ConfigError);
    CHECK_THROWS_AS(load_config(write_temp("broken", "{\"L\": ")), ConfigError);
}

TEST_CASE("SimulationConfig - lossless JSON round trip")
{
    CHECK(apply_overrides({}, nlohmann::json::parse(to_json(SimulationConfig{}).dump())) == SimulationConfig{});

    SimulationConfig cfg = desk_preset();
    cfg.eta = 0.123456789012345678;
    cfg.rho_dbm = -3.3333333333333335;
    cfg.sigma_b_dbm = -std::numeric_limits<double>::infinity();
    cfg.los_decay_m = std::numeric_limits<double>::infinity();
    cfg.hardware = {Hardware::power};
    cfg.codebook = CodebookConvention::printed;
    cfg.D_el = 2;
    cfg.C_values = {0, 2, 8};
    cfg.mse_reference = MseReference::ideal;
    cfg.seed = 0xFFFFFFFFFFFFull;
    cfg.output_dir = "some/where";
    cfg.fixed_scenario = true;
    const SimulationConfig back = apply_overrides({}, nlohmann::json::parse(to_json(cfg).dump()));
    CHECK(back == cfg);

    // Every key is emitted.
    const auto j = to_json(cfg);
    CHECK(j.size() == config_keys().size());
}

TEST_CASE("desk_preset and unit conversion")
{
    const SimulationConfig desk = desk_preset();
    CHECK(desk.M == 8);
    CHECK(desk.N() == 16);
    CHECK(desk.K == 4);
    CHECK(desk.L == 16);
    CHECK_NOTHROW(desk.validate());

    const SystemParams p = SystemParams::from_config(SimulationConfig{});
    CHECK(p.rho == Approx(10.0).epsilon(1e-14));
    CHECK(p.noise_bs == Approx(std::pow(10.0, -9.4)).epsilon(1e-14));
    CHECK(p.noise_hris == Approx(std::pow(10.0, -9.4)).epsilon(1e-14));
    CHECK(p.lambda == Approx(299792458.0 / 28e9));
    CHECK(p.N() == 32);
    CHECK(p.frame(64).tau_c == 4096);
    CHECK(p.frame(64).tau_u() == 2048);

    SimulationConfig off;
    off.hris_enabled = false;
    CHECK(SystemParams::from_config(off).eta == 0.0);
    CHECK(SweepPlan::from_config(off).hardware == std::vector<Hardware>{Hardware::none});
}
