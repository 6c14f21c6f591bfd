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

#include "hris/config.hpp"
#include "hris/mmimo.hpp"
#include "hris/probe.hpp"
#include "hris/reflect.hpp"

#include <optional>
#include <vector>

namespace hris
{

// Run parameters in linear units, derived once from a SimulationConfig.
struct SystemParams
{
    arma::uword M = 64;
    arma::uword N_x = 8;
    arma::uword N_z = 4;
    arma::uword K = 16;
    arma::uword L = 128;
    arma::uword tau_c = 0; // 0 selects 2 * L * K
    double eta = 0.8;
    double rho = 10.0;        // mW
    double noise_bs = 0.0;    // sigma_b^2, mW
    double noise_hris = 0.0;  // sigma_hris^2, mW
    double lambda = wavelength(28e9);
    PathlossModel pathloss;
    ChannelOptions channel_options;
    double area_side = 100.0;
    double bs_height = 0.0;
    double hris_height = 0.0;
    double ue_height = 0.0;
    double target_pfa = 1e-3;
    arma::uword D_el = 1;
    CodebookConvention codebook = CodebookConvention::spherical;
    bool weight_by_gain = false;
    MseReference mse_reference = MseReference::achieved;

    arma::uword N() const { return N_x * N_z; }
    FrameDesign frame(arma::uword C) const;

    static SystemParams from_config(const SimulationConfig &cfg);
};

struct Scenario
{
    double area_side = 0.0;
    Vec3 bs_position{arma::fill::zeros};
    Vec3 hris_position{arma::fill::zeros};
    arma::mat ue_positions; // 3 x K
    std::uint64_t seed = 0;
};

// BS at the west-edge midpoint, HRIS at the south-edge midpoint, UEs uniform over the
// east half of the square. UEs closer than one meter to either array are redrawn.
Scenario generate_scenario(const SystemParams &params, double area_side, arma::uword K, Rng &rng);

struct SweepPlan
{
    std::vector<arma::uword> C_values;
    std::vector<Hardware> hardware;
    arma::uword trials = 1;
    std::uint64_t base_seed = 1;
    bool fixed_scenario = false;
    unsigned threads = 1;
    bool trace = false;

    static SweepPlan from_config(const SimulationConfig &cfg);
};

struct UeRecord
{
    arma::uword ue = 0;
    double mse_analytic = 0.0;
    double mse_empirical = 0.0;
    double nmse = 0.0;
    double sinr_db = 0.0;
    double se = 0.0;
    double uatf_se = 0.0;
    arma::uword best_direction = 0;
    arma::uword true_direction = 0;
    double alpha_best = 0.0;
    bool detected = false;
    double statistic = 0.0;
    double analytic_pd = 0.0;
};

struct TrialRecord
{
    arma::uword trial = 0;
    Hardware hardware = Hardware::signal;
    FrameDesign frame;
    arma::uword detected_count = 0;
    double frobenius_gap = 0.0;
    bool optimized = false;
    double threshold = 0.0;
    double analytic_pfa = 0.0;
    std::vector<UeRecord> ues;
    arma::mat trace; // L x K, filled on request

    double c_over_l() const { return static_cast<double>(frame.C) / static_cast<double>(frame.L); }
};

struct TrialOptions
{
    bool trace = false;
};

// Full frame for one (scenario, hardware, C): channels, probe, detect, reflect, pilot
// blocks, LS estimate, MSE and MRC metrics. Randomness comes from streams derived from
// `seed`, so every hardware and C sees the same channels.
TrialRecord run_trial(const Scenario &scenario, const FrameDesign &frame, Hardware hardware,
                      const SystemParams &params, std::uint64_t seed, const TrialOptions &options = {});

// Records ordered by trial, then hardware, then C, independent of the thread count.
std::vector<TrialRecord> run_sweep(const SweepPlan &plan, const SystemParams &params);

struct AggregateRow
{
    Hardware hardware = Hardware::signal;
    double c_over_l = 0.0;
    std::string metric;
    double mean = 0.0;
    double std = 0.0;
    arma::uword trials = 0;
};

// Per-trial UE averages, then mean and sample standard deviation across trials for every
// (hardware, C/L) group. Metrics: detection_rate, config_gap, mse_analytic, mse_empirical,
// nmse, sinr_db, se, uatf_se.
std::vector<AggregateRow> aggregate(const std::vector<TrialRecord> &records);

} // namespace hris
