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

// hris_sim: sweep driver writing results, aggregate, probe, reflection and trace CSVs.

#include "hris/config.hpp"
#include "hris/csv_io.hpp"
#include "hris/orchestrator.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

namespace
{

std::vector<arma::uword> parse_sweep(const std::string &text)
{
    const std::string prefix = "C=";
    if (text.rfind(prefix, 0) != 0)
        throw hris::ConfigError("--sweep expects C=a,b,c");
    std::vector<arma::uword> values;
    std::stringstream ss(text.substr(prefix.size()));
    std::string item;
    while (std::getline(ss, item, ','))
    {
        std::size_t used = 0;
        unsigned long long v = 0;
        try
        {
            v = std::stoull(item, &used);
        }
        catch (const std::exception &)
        {
            used = 0;
        }
        if (used == 0 || used != item.size() || item.front() == '-')
            throw hris::ConfigError("--sweep: '" + item + "' is not a non-negative integer");
        values.push_back(static_cast<arma::uword>(v));
    }
    if (values.empty())
        throw hris::ConfigError("--sweep: no C values given");
    return values;
}

nlohmann::json parse_set(const std::string &assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw hris::ConfigError("--set expects KEY=VALUE");
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    nlohmann::json value;
    try
    {
        value = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error &)
    {
        value = text; // bare strings such as --set codebook=printed
    }
    return {{key, value}};
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Monte Carlo sweep of a self-configuring HRIS alongside a massive MIMO uplink"};

    std::string config_path;
    std::string sweep;
    std::string hardware;
    std::vector<std::string> sets;
    arma::uword trials = 0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out_dir;
    bool no_hris = false;
    bool trace = false;
    bool desk = false;

    app.add_option("--config", config_path, "JSON configuration file (flat keys)")->check(CLI::ExistingFile);
    app.add_option("--sweep", sweep, "Probe lengths to sweep, e.g. C=0,16,32");
    app.add_option("--hardware", hardware, "HRIS hardware: signal, power or both")
        ->check(CLI::IsMember({"signal", "power", "both"}));
    auto *trials_opt = app.add_option("--trials", trials, "Monte Carlo trials per point");
    auto *seed_opt = app.add_option("--seed", seed, "Base seed; trial i uses seed + i");
    auto *threads_opt = app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--set", sets, "Override one configuration key, KEY=JSON (repeatable)");
    app.add_flag("--no-hris", no_hris, "Disable the HRIS (direct channels only)");
    app.add_flag("--trace-channel", trace, "Write the per-subblock |h_k| trace of the first trial");
    app.add_flag("--desk", desk, "Desk-scale preset: M=8, N=4x4, K=4, L=16");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        std::cerr << "hris_sim: error: " << e.what() << '\n';
        return 2;
    }

    try
    {
        hris::SimulationConfig cfg = desk ? hris::desk_preset() : hris::SimulationConfig{};
        if (!config_path.empty())
            cfg = hris::load_config(config_path, cfg);

        nlohmann::json overrides = nlohmann::json::object();
        for (const auto &s : sets)
            overrides.update(parse_set(s));
        if (!sweep.empty())
            overrides["C_values"] = parse_sweep(sweep);
        if (hardware == "both")
            overrides["hardware"] = {"signal", "power"};
        else if (!hardware.empty())
            overrides["hardware"] = {hardware};
        if (trials_opt->count() > 0)
            overrides["trials"] = trials;
        if (seed_opt->count() > 0)
            overrides["seed"] = seed;
        if (threads_opt->count() > 0)
            overrides["threads"] = threads;
        if (!out_dir.empty())
            overrides["output_dir"] = out_dir;
        if (no_hris)
            overrides["hris_enabled"] = false;
        if (trace)
            overrides["trace_channel"] = true;
        cfg = hris::apply_overrides(cfg, overrides);

        const hris::SystemParams params = hris::SystemParams::from_config(cfg);
        const hris::SweepPlan plan = hris::SweepPlan::from_config(cfg);
        const auto records = hris::run_sweep(plan, params);

        const std::filesystem::path dir(cfg.output_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw hris::IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

        hris::write_text(dir / "config.json", hris::to_json(cfg).dump(2) + "\n");
        hris::emit_results(records, dir / "results.csv");
        hris::emit_aggregate(hris::aggregate(records), dir / "aggregate.csv");
        hris::emit_probe(records, dir / "probe.csv");
        hris::emit_reflection(records, dir / "reflection.csv");
        if (cfg.trace_channel)
        {
            // First trial, power-based hardware when swept, largest C.
            const hris::TrialRecord *chosen = nullptr;
            auto rank = [](const hris::TrialRecord &r) { return r.hardware == hris::Hardware::power ? 1 : 0; };
            for (const auto &r : records)
            {
                if (r.trial != 0 || r.trace.is_empty())
                    continue;
                if (!chosen || rank(r) > rank(*chosen) || (rank(r) == rank(*chosen) && r.frame.C > chosen->frame.C))
                    chosen = &r;
            }
            if (chosen)
                hris::emit_trace(chosen->trace, dir / "trace.csv");
        }
        std::cout << "wrote " << records.size() << " trial records to " << dir.string() << '\n';
    }
    catch (const std::exception &e)
    {
        std::cerr << "hris_sim: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
