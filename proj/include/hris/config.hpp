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

#pragma once

#include "hris/common.hpp"
#include "hris/probe.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace hris
{

// Which reflection configuration the distortion term of the analytic MSE is measured against.
enum class MseReference
{
    achieved,
    ideal
};

std::string_view to_string(MseReference r);
MseReference mse_reference_from_string(std::string_view name);

// Flat run configuration. Physical powers are in dBm here and converted to linear
// milliwatts once, when the run parameters are derived.
struct SimulationConfig
{
    // System
    arma::uword M = 64;
    arma::uword K = 16;
    arma::uword N_x = 8;
    arma::uword N_z = 4;
    double eta = 0.8;
    double rho_dbm = 10.0;
    double sigma_b_dbm = -94.0;
    double sigma_hris_dbm = -94.0;
    double carrier_hz = 28e9;

    // Propagation
    double beta_los = 2.0;
    double beta_nlos = 4.0;
    double gamma0 = 1.0;
    double d0 = 1.0;
    double shadow_std_db = 0.0;
    double los_decay_m = 30.0;
    bool shadow_reflected = false;
    bool hris_links_los = true;

    // Scenario
    double area_side = 100.0;
    double bs_height = 0.0;
    double hris_height = 0.0;
    double ue_height = 0.0;
    bool fixed_scenario = false;

    // Frame
    arma::uword L = 128;
    arma::uword tau_c = 0; // 0 selects 2 * L * tau_p

    // HRIS operation
    bool hris_enabled = true;
    double target_pfa = 1e-3;
    arma::uword D_el = 1;
    CodebookConvention codebook = CodebookConvention::spherical;
    bool weight_by_gain = false;
    MseReference mse_reference = MseReference::achieved;

    // Sweep
    std::vector<arma::uword> C_values{0, 16, 32, 64, 128};
    std::vector<Hardware> hardware{Hardware::signal, Hardware::power};
    arma::uword trials = 50;
    std::uint64_t seed = 1;
    unsigned threads = 0; // 0 selects the hardware concurrency

    // Output
    std::string output_dir = "results";
    bool trace_channel = false;

    bool operator==(const SimulationConfig &) const = default;

    arma::uword N() const { return N_x * N_z; }
    arma::uword tau_p() const { return K; }
    arma::uword coherence_samples() const { return tau_c == 0 ? 2 * L * tau_p() : tau_c; }

    // Throws ConfigError naming the violated constraint.
    void validate() const;
};

struct ConfigError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

// Desk-scale preset: M = 8, N = 4 x 4, K = 4, L = 16.
SimulationConfig desk_preset();

std::vector<std::string> config_keys();

nlohmann::ordered_json to_json(const SimulationConfig &cfg);

// Merges `overrides` into `base`. Unknown keys and type mismatches raise ConfigError.
// The result is validated.
SimulationConfig apply_overrides(SimulationConfig base, const nlohmann::json &overrides);

// Reads a flat JSON document; an empty file yields the defaults.
SimulationConfig load_config(const std::filesystem::path &path, const SimulationConfig &base = {});

} // namespace hris
