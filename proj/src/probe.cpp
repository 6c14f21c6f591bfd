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

#include "hris/probe.hpp"

#include "hris/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hris
{

std::string_view to_string(CodebookConvention c)
{
    return c == CodebookConvention::spherical ? "spherical" : "printed";
}

CodebookConvention codebook_convention_from_string(std::string_view name)
{
    if (name == "spherical")
        return CodebookConvention::spherical;
    if (name == "printed")
        return CodebookConvention::printed;
    throw std::invalid_argument("unknown codebook convention '" + std::string(name) +
                                "' (expected spherical or printed)");
}

HrisConfig DirectionCodebook::probe_config(arma::uword d) const
{
    const double n = static_cast<double>(num_elements());
    return HrisConfig::from_diagonal(n * combiner.col(d));
}

HrisConfig DirectionCodebook::direction_csi(arma::uword d) const
{
    HrisConfig cfg;
    cfg.phases = -arma::arg(combiner.col(d));
    cfg.gains.ones(num_elements());
    return cfg;
}

DirectionCodebook build_codebook(arma::uword el_count, arma::uword az_count, const ArrayGeometry &hris,
                                 double lambda, CodebookConvention convention)
{
    if (el_count == 0 || az_count == 0)
        throw std::domain_error("build_codebook: direction counts must be positive");
    if (!(lambda > 0.0))
        throw std::domain_error("build_codebook: wavelength must be positive");

    const arma::uword D = el_count * az_count;
    const arma::uword N = hris.size();
    const double pi = std::numbers::pi;

    DirectionCodebook cb;
    cb.el_count = el_count;
    cb.az_count = az_count;
    cb.psi_el.set_size(D);
    cb.psi_az.set_size(D);
    cb.directions.set_size(3, D);
    cb.combiner.set_size(N, D);

    for (arma::uword d = 0; d < D; ++d)
    {
        const arma::uword el_idx = d % el_count;
        const double el = pi / static_cast<double>(el_count) * (static_cast<double>(el_idx) + 0.5);
        const double az = pi / static_cast<double>(az_count) *
                          (static_cast<double>((d - el_idx) / el_count) + 0.5);
        cb.psi_el(d) = el;
        cb.psi_az(d) = az;

        Vec3 p;
        if (convention == CodebookConvention::spherical)
            p = {std::sin(el) * std::cos(az), std::sin(el) * std::sin(az), std::cos(el)};
        else
            p = {std::sin(el) * std::cos(az), std::sin(el) * std::cos(az), std::cos(el)};

        const double len = arma::norm(p);
        if (len < 1e-12)
            throw std::domain_error("build_codebook: direction " + std::to_string(d) + " is undefined");
        cb.directions.col(d) = p / len;

        const Vec3 k = (2.0 * pi / lambda) * cb.directions.col(d);
        cb.combiner.col(d) = response_to_wave_vector(hris, k) / static_cast<double>(N);
    }
    return cb;
}

arma::uvec best_directions(const arma::mat &alpha)
{
    arma::uvec best(alpha.n_rows, arma::fill::zeros);
    for (arma::uword k = 0; k < alpha.n_rows; ++k)
    {
        double top = -std::numeric_limits<double>::infinity();
        for (arma::uword d = 0; d < alpha.n_cols; ++d)
            if (alpha(k, d) > top)
            {
                top = alpha(k, d);
                best(k) = d;
            }
    }
    return best;
}

arma::uvec true_best_directions(const ChannelSet &cs, const DirectionCodebook &codebook)
{
    const arma::mat gain = arma::square(arma::abs(cs.r.st() * arma::conj(codebook.combiner)));
    return best_directions(gain);
}

namespace
{

void check_sizes(const ChannelSet &cs, const DirectionCodebook &codebook)
{
    if (codebook.num_elements() != cs.num_elements())
        throw std::invalid_argument("probe: codebook size does not match the surface");
}

} // namespace

ProbeObservation signal_probe(const ChannelSet &cs, const DirectionCodebook &codebook, const ProbeParams &params,
                              arma::uword subblocks, Rng &rng)
{
    check_sizes(cs, codebook);
    if (subblocks == 0)
        throw std::invalid_argument("signal_probe: at least one subblock is required");

    const arma::uword N = cs.num_elements();
    const arma::uword K = cs.num_ues();
    const double amplitude = std::sqrt((1.0 - params.eta) * params.rho * static_cast<double>(K));

    // Each subblock observes sqrt(1-eta) sqrt(rho) sqrt(tau_p) R + W_c under Theta_c = I.
    arma::cx_mat received_sum(N, K, arma::fill::zeros);
    arma::cx_mat noise(N, K);
    for (arma::uword c = 0; c < subblocks; ++c)
    {
        fill_complex_normal(noise, params.noise_power, rng);
        received_sum += amplitude * cs.r + noise;
    }
    const arma::cx_mat averaged = codebook.combiner.t() * (received_sum / static_cast<double>(subblocks));

    ProbeObservation obs;
    obs.hardware = Hardware::signal;
    obs.subblocks = subblocks;
    obs.alpha = arma::square(arma::abs(averaged)).t();
    obs.best_direction = best_directions(obs.alpha);
    return obs;
}

ProbeObservation power_probe(const ChannelSet &cs, const DirectionCodebook &codebook, const ProbeParams &params,
                             arma::uword subblocks, Rng &rng)
{
    check_sizes(cs, codebook);
    if (subblocks != codebook.size())
        throw std::invalid_argument("power_probe: the number of subblocks must equal the number of directions (C = D)");

    const arma::uword N = cs.num_elements();
    const arma::uword K = cs.num_ues();
    const arma::uword D = codebook.size();
    const double amplitude = std::sqrt((1.0 - params.eta) * params.rho * static_cast<double>(K));

    // theta_d^H r_k for every (k, d); theta_d = N v_d.
    const arma::cx_mat projected = cs.r.st() * arma::conj(codebook.combiner) * static_cast<double>(N);

    ProbeObservation obs;
    obs.hardware = Hardware::power;
    obs.subblocks = subblocks;
    obs.alpha.set_size(K, D);
    arma::cx_mat noise(K, 1);
    for (arma::uword d = 0; d < D; ++d)
    {
        fill_complex_normal(noise, static_cast<double>(N) * params.noise_power, rng);
        for (arma::uword k = 0; k < K; ++k)
            obs.alpha(k, d) = std::norm(amplitude * projected(k, d) + noise(k));
    }
    obs.best_direction = best_directions(obs.alpha);
    return obs;
}

double threshold_from_pfa(Hardware hw, double target_pfa, arma::uword num_elements, double noise_power)
{
    if (!(target_pfa > 0.0 && target_pfa <= 1.0))
        throw std::domain_error("threshold_from_pfa: target false-alarm probability must lie in (0, 1]");
    switch (hw)
    {
    case Hardware::signal:
        // P_FA = exp(-eps/2)
        return -2.0 * std::log(target_pfa);
    case Hardware::power:
        // alpha | H0 ~ Exp with mean N sigma^2, P_FA = exp(-eps' / (N sigma^2))
        return -static_cast<double>(num_elements) * noise_power * std::log(target_pfa);
    case Hardware::none:
        break;
    }
    throw std::invalid_argument("threshold_from_pfa: no detector for this hardware");
}

namespace
{

ProbeOutcome collect_outcome(const ProbeObservation &obs, const DirectionCodebook &codebook, arma::vec statistic,
                             double threshold)
{
    const arma::uword K = obs.alpha.n_rows;
    ProbeOutcome out;
    out.threshold = threshold;
    out.statistic = std::move(statistic);
    out.detected.assign(K, false);
    out.analytic_pd.zeros(K);
    for (arma::uword k = 0; k < K; ++k)
    {
        if (!(out.statistic(k) > threshold))
            continue;
        out.detected[k] = true;
        const arma::uword d = obs.best_direction(k);
        out.csi.push_back({k, d, codebook.direction_csi(d), obs.alpha(k, d)});
    }
    return out;
}

arma::vec best_alpha(const ProbeObservation &obs)
{
    arma::vec out(obs.alpha.n_rows);
    for (arma::uword k = 0; k < obs.alpha.n_rows; ++k)
        out(k) = obs.alpha(k, obs.best_direction(k));
    return out;
}

} // namespace

ProbeOutcome detect_signal(const ProbeObservation &obs, const DirectionCodebook &codebook, arma::uword subblocks,
                           double noise_power, double threshold)
{
    if (obs.hardware != Hardware::signal)
        throw std::invalid_argument("detect_signal: observation was not produced by signal-based probing");

    const double N = static_cast<double>(codebook.num_elements());
    const arma::vec alpha = best_alpha(obs);
    arma::vec lambda(alpha.n_elem);
    for (arma::uword k = 0; k < alpha.n_elem; ++k)
    {
        if (noise_power > 0.0)
            lambda(k) = 2.0 * N * static_cast<double>(subblocks) / noise_power * alpha(k);
        else
            lambda(k) = alpha(k) > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }

    ProbeOutcome out = collect_outcome(obs, codebook, lambda, threshold);
    out.analytic_pfa = chi2_2dof_survival(threshold);
    for (arma::uword k = 0; k < lambda.n_elem; ++k)
        out.analytic_pd(k) = ncx2_2dof_survival(threshold, lambda(k));
    return out;
}

ProbeOutcome detect_power(const ProbeObservation &obs, const DirectionCodebook &codebook, double noise_power,
                          double threshold)
{
    if (obs.hardware != Hardware::power)
        throw std::invalid_argument("detect_power: observation was not produced by power-based probing");

    const double floor = static_cast<double>(codebook.num_elements()) * noise_power;
    const arma::vec alpha = best_alpha(obs);

    ProbeOutcome out = collect_outcome(obs, codebook, alpha, threshold);
    if (floor > 0.0)
    {
        out.analytic_pfa = std::exp(-threshold / floor);
        for (arma::uword k = 0; k < alpha.n_elem; ++k)
            out.analytic_pd(k) = std::min(1.0, std::exp(-(threshold - alpha(k)) / floor));
    }
    else
    {
        out.analytic_pfa = threshold > 0.0 ? 0.0 : 1.0;
        for (arma::uword k = 0; k < alpha.n_elem; ++k)
            out.analytic_pd(k) = alpha(k) >= threshold ? 1.0 : 0.0;
    }
    return out;
}

} // namespace hris
