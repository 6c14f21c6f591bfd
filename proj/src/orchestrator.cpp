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

#include "hris/orchestrator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

namespace hris
{

FrameDesign SystemParams::frame(arma::uword C) const
{
    FrameDesign f{K, L, C, tau_c == 0 ? 2 * L * K : tau_c};
    f.validate();
    return f;
}

SystemParams SystemParams::from_config(const SimulationConfig &cfg)
{
    cfg.validate();
    SystemParams p;
    p.M = cfg.M;
    p.N_x = cfg.N_x;
    p.N_z = cfg.N_z;
    p.K = cfg.K;
    p.L = cfg.L;
    p.tau_c = cfg.tau_c;
    p.eta = cfg.hris_enabled ? cfg.eta : 0.0;
    p.rho = dbm_to_mw(cfg.rho_dbm);
    p.noise_bs = dbm_to_mw(cfg.sigma_b_dbm);
    p.noise_hris = dbm_to_mw(cfg.sigma_hris_dbm);
    p.lambda = wavelength(cfg.carrier_hz);
    p.pathloss = {cfg.gamma0, cfg.d0, cfg.beta_los, cfg.beta_nlos, cfg.shadow_std_db, cfg.los_decay_m};
    p.pathloss.validate();
    p.channel_options = {cfg.shadow_reflected, cfg.hris_links_los};
    p.area_side = cfg.area_side;
    p.bs_height = cfg.bs_height;
    p.hris_height = cfg.hris_height;
    p.ue_height = cfg.ue_height;
    p.target_pfa = cfg.target_pfa;
    p.D_el = cfg.D_el;
    p.codebook = cfg.codebook;
    p.weight_by_gain = cfg.weight_by_gain;
    p.mse_reference = cfg.mse_reference;
    return p;
}

Scenario generate_scenario(const SystemParams &params, double area_side, arma::uword K, Rng &rng)
{
    if (!(area_side > 0.0))
        throw std::invalid_argument("generate_scenario: area_side must be positive");
    Scenario s;
    s.area_side = area_side;
    s.bs_position = {0.0, area_side / 2.0, params.bs_height};
    s.hris_position = {area_side / 2.0, 0.0, params.hris_height};
    s.ue_positions.set_size(3, K);

    std::uniform_real_distribution<double> ux(area_side / 2.0, area_side);
    std::uniform_real_distribution<double> uy(0.0, area_side);
    constexpr double min_distance = 1.0;
    for (arma::uword k = 0; k < K; ++k)
    {
        Vec3 p;
        do
        {
            const double x = ux(rng);
            const double y = uy(rng);
            p = {x, y, params.ue_height};
        } while (arma::norm(p - s.hris_position) < min_distance || arma::norm(p - s.bs_position) < min_distance);
        s.ue_positions.col(k) = p;
    }
    return s;
}

SweepPlan SweepPlan::from_config(const SimulationConfig &cfg)
{
    SweepPlan plan;
    plan.C_values = cfg.C_values;
    plan.hardware = cfg.hris_enabled ? cfg.hardware : std::vector<Hardware>{Hardware::none};
    plan.trials = cfg.trials;
    plan.base_seed = cfg.seed;
    plan.fixed_scenario = cfg.fixed_scenario;
    plan.threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
    plan.trace = cfg.trace_channel;
    return plan;
}

namespace
{

struct ProbeStage
{
    std::vector<HrisConfig> pilot_configs; // configuration seen by the BS during each probe subblock
    std::optional<DirectionCodebook> codebook;
    std::optional<ProbeObservation> observation;
    ProbeOutcome outcome;
};

ProbeStage run_probe(const ChannelSet &cs, const ArrayGeometry &hris, const SystemParams &params, Hardware hardware,
                     arma::uword C, Rng &rng)
{
    ProbeStage stage;
    const arma::uword K = cs.num_ues();
    stage.outcome.detected.assign(K, false);
    stage.outcome.statistic.zeros(K);
    stage.outcome.analytic_pd.zeros(K);
    if (hardware == Hardware::none || C == 0)
        return stage;

    if (C % params.D_el != 0)
        throw std::invalid_argument("C must be a multiple of D_el");
    stage.codebook = build_codebook(params.D_el, C / params.D_el, hris, params.lambda, params.codebook);
    const ProbeParams probe{params.eta, params.rho, params.noise_hris};
    const double threshold = threshold_from_pfa(hardware, params.target_pfa, cs.num_elements(), params.noise_hris);

    if (hardware == Hardware::signal)
    {
        stage.observation = signal_probe(cs, *stage.codebook, probe, C, rng);
        stage.outcome = detect_signal(*stage.observation, *stage.codebook, C, params.noise_hris, threshold);
        stage.pilot_configs.assign(C, HrisConfig::identity(cs.num_elements()));
    }
    else
    {
        stage.observation = power_probe(cs, *stage.codebook, probe, C, rng);
        stage.outcome = detect_power(*stage.observation, *stage.codebook, params.noise_hris, threshold);
        for (arma::uword t = 0; t < C; ++t)
            stage.pilot_configs.push_back(stage.codebook->probe_config(t));
    }
    return stage;
}

} // namespace

TrialRecord run_trial(const Scenario &scenario, const FrameDesign &frame, Hardware hardware,
                      const SystemParams &params, std::uint64_t seed, const TrialOptions &options)
{
    frame.validate();
    const arma::uword K = scenario.ue_positions.n_cols;
    if (K == 0)
        throw std::invalid_argument("run_trial: scenario has no UEs");
    if (frame.tau_p != K)
        throw std::invalid_argument("run_trial: tau_p must equal the number of UEs");

    const ArrayGeometry bs = make_ula(scenario.bs_position, params.M, params.lambda / 2.0, Axis::y);
    const ArrayGeometry hris = make_upa(scenario.hris_position, params.N_x, params.N_z, params.lambda / 2.0);
    const double eta = hardware == Hardware::none ? 0.0 : params.eta;

    Rng link_rng = make_stream(seed, stream::links);
    const ChannelSet cs =
        build_channels(bs, hris, scenario.ue_positions, params.lambda, eta, params.pathloss, params.channel_options,
                       link_rng);

    // Probing and detection.
    Rng hris_rng = make_stream(seed, stream::hris_noise);
    ProbeStage probe = run_probe(cs, hris, params, hardware, frame.C, hris_rng);

    // Reflection.
    const HrisConfig theta_b = bs_csi(cs);
    std::vector<HrisConfig> detected_csi;
    std::vector<double> weights;
    for (const auto &u : probe.outcome.csi)
    {
        detected_csi.push_back(u.config);
        weights.push_back(u.gain);
    }
    const Reflection achieved =
        reflection_config(theta_b, detected_csi, params.weight_by_gain ? std::span<const double>(weights)
                                                                       : std::span<const double>());

    HrisConfig ideal = HrisConfig::identity(cs.num_elements());
    arma::uvec true_dirs(K, arma::fill::zeros);
    if (probe.codebook)
    {
        true_dirs = true_best_directions(cs, *probe.codebook);
        std::vector<HrisConfig> all_csi;
        for (arma::uword k = 0; k < K; ++k)
            all_csi.push_back(probe.codebook->direction_csi(true_dirs(k)));
        ideal = ideal_config(theta_b, all_csi);
    }

    // Channel estimation over L pilot subblocks.
    const PilotCodebook pilots = PilotCodebook::canonical(frame.tau_p);
    Rng bs_rng = make_stream(seed, stream::bs_noise);
    std::vector<arma::cx_mat> blocks;
    blocks.reserve(frame.L);
    for (arma::uword t = 0; t < frame.L; ++t)
    {
        const HrisConfig &theta = t < probe.pilot_configs.size() ? probe.pilot_configs[t] : achieved.config;
        blocks.push_back(synth_pilot_block(cs, theta, pilots, params.rho, params.noise_bs, bs_rng));
    }
    const LsEstimate est = ls_estimate(blocks, pilots, params.rho, params.noise_bs);

    const arma::cx_mat h_star = equivalent_channels(cs, achieved.config);
    const arma::cx_mat h_bar = averaged_channel(cs, probe.pilot_configs, achieved.config, frame.L);
    const HrisConfig &mse_target = params.mse_reference == MseReference::achieved ? achieved.config : ideal;
    const arma::vec mse = mse_analytic(cs, probe.pilot_configs, mse_target, params.rho, params.noise_bs, frame.L);
    const CommMetrics comm = communication_metrics(est, h_bar, h_star, frame, params.rho, params.noise_bs);

    TrialRecord rec;
    rec.hardware = hardware;
    rec.frame = frame;
    rec.detected_count = probe.outcome.detected_count();
    rec.frobenius_gap = config_gap(achieved.config, ideal);
    rec.optimized = achieved.optimized;
    rec.threshold = probe.outcome.threshold;
    rec.analytic_pfa = probe.outcome.analytic_pfa;
    rec.ues.resize(K);
    for (arma::uword k = 0; k < K; ++k)
    {
        UeRecord &u = rec.ues[k];
        u.ue = k;
        const double err = std::pow(arma::norm(est.h_hat.col(k) - h_star.col(k)), 2);
        // Normalized by the reflected part only; undefined without a reflected path.
        const double ref = eta > 0.0 ? std::pow(arma::norm(reflected_channel(cs, achieved.config, k)), 2)
                                     : std::numeric_limits<double>::quiet_NaN();
        u.mse_analytic = mse(k);
        u.mse_empirical = err;
        u.nmse = err / ref;
        u.sinr_db = linear_to_db(comm.sinr(k));
        u.se = comm.se(k);
        u.uatf_se = comm.uatf_se(k);
        u.true_direction = true_dirs(k);
        u.detected = probe.outcome.detected[k];
        u.statistic = probe.outcome.statistic(k);
        u.analytic_pd = probe.outcome.analytic_pd(k);
        if (probe.observation)
        {
            u.best_direction = probe.observation->best_direction(k);
            u.alpha_best = probe.observation->alpha(k, u.best_direction);
        }
    }
    if (options.trace)
        rec.trace = channel_trace(cs, probe.pilot_configs, achieved.config, frame.L);
    return rec;
}

std::vector<TrialRecord> run_sweep(const SweepPlan &plan, const SystemParams &params)
{
    if (plan.trials == 0)
        throw std::invalid_argument("run_sweep: trials must be at least 1");
    if (plan.C_values.empty() || plan.hardware.empty())
        throw std::invalid_argument("run_sweep: empty C or hardware list");

    std::vector<FrameDesign> frames;
    for (auto C : plan.C_values)
        frames.push_back(params.frame(C));

    const std::size_t per_trial = plan.hardware.size() * frames.size();
    std::vector<TrialRecord> records(plan.trials * per_trial);

    auto run_one = [&](arma::uword trial) {
        const std::uint64_t seed = plan.base_seed + trial;
        Rng scenario_rng = make_stream(plan.fixed_scenario ? plan.base_seed : seed, stream::scenario);
        const Scenario scenario = generate_scenario(params, params.area_side, params.K, scenario_rng);
        std::size_t slot = trial * per_trial;
        for (auto hw : plan.hardware)
            for (const auto &frame : frames)
            {
                TrialOptions opts;
                opts.trace = plan.trace && trial == 0;
                TrialRecord rec = run_trial(scenario, frame, hw, params, seed, opts);
                rec.trial = trial;
                records[slot++] = std::move(rec);
            }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(plan.threads, static_cast<unsigned>(plan.trials)));
    std::atomic<arma::uword> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (arma::uword trial = next++; trial < plan.trials; trial = next++)
        {
            try
            {
                run_one(trial);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = plan.trials;
            }
        }
    };

    if (workers == 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);
    return records;
}

namespace
{

double ue_mean(const TrialRecord &r, double UeRecord::*field)
{
    double sum = 0.0;
    for (const auto &u : r.ues)
        sum += u.*field;
    return sum / static_cast<double>(r.ues.size());
}

} // namespace

std::vector<AggregateRow> aggregate(const std::vector<TrialRecord> &records)
{
    struct Metric
    {
        const char *name;
        double (*value)(const TrialRecord &);
    };
    static const Metric metrics[] = {
        {"detection_rate",
         [](const TrialRecord &r) { return static_cast<double>(r.detected_count) / static_cast<double>(r.ues.size()); }},
        {"config_gap", [](const TrialRecord &r) { return r.frobenius_gap; }},
        {"mse_analytic", [](const TrialRecord &r) { return ue_mean(r, &UeRecord::mse_analytic); }},
        {"mse_empirical", [](const TrialRecord &r) { return ue_mean(r, &UeRecord::mse_empirical); }},
        {"nmse", [](const TrialRecord &r) { return ue_mean(r, &UeRecord::nmse); }},
        {"sinr_db", [](const TrialRecord &r) { return ue_mean(r, &UeRecord::sinr_db); }},
        {"se", [](const TrialRecord &r) { return ue_mean(r, &UeRecord::se); }},
        {"uatf_se", [](const TrialRecord &r) { return ue_mean(r, &UeRecord::uatf_se); }},
    };

    // Groups keyed by (hardware, C, L); members sorted by trial index so the result does
    // not depend on record order.
    using Key = std::tuple<int, arma::uword, arma::uword>;
    std::map<Key, std::vector<const TrialRecord *>> groups;
    for (const auto &r : records)
        groups[{static_cast<int>(r.hardware), r.frame.C, r.frame.L}].push_back(&r);

    std::vector<AggregateRow> rows;
    for (auto &[key, members] : groups)
    {
        std::stable_sort(members.begin(), members.end(),
                         [](const TrialRecord *a, const TrialRecord *b) { return a->trial < b->trial; });
        for (const auto &m : metrics)
        {
            arma::vec v(members.size());
            for (std::size_t i = 0; i < members.size(); ++i)
                v(i) = m.value(*members[i]);
            AggregateRow row;
            row.hardware = members.front()->hardware;
            row.c_over_l = members.front()->c_over_l();
            row.metric = m.name;
            row.mean = arma::mean(v);
            row.std = v.n_elem > 1 ? arma::stddev(v) : 0.0;
            row.trials = v.n_elem;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace hris
