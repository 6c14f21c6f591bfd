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

#include "hris/mmimo.hpp"

#include <cmath>
#include <limits>

namespace hris
{

void FrameDesign::validate() const
{
    if (tau_p == 0)
        throw std::invalid_argument("tau_p must be positive");
    if (L == 0)
        throw std::invalid_argument("L must be positive");
    if (C > L)
        throw std::invalid_argument("C must not exceed L");
    if (tau_chest() > tau_c)
        throw std::invalid_argument("tau_c must cover the L * tau_p estimation samples");
}

FrameDesign FrameDesign::with_default_coherence(arma::uword tau_p, arma::uword L, arma::uword C)
{
    FrameDesign f{tau_p, L, C, 2 * L * tau_p};
    f.validate();
    return f;
}

PilotCodebook PilotCodebook::canonical(arma::uword tau_p)
{
    return {std::sqrt(static_cast<double>(tau_p)) * arma::mat(tau_p, tau_p, arma::fill::eye)};
}

arma::cx_mat synth_pilot_block(const ChannelSet &cs, const HrisConfig &theta, const PilotCodebook &pilots, double rho,
                               double noise_power, Rng &rng)
{
    const arma::uword K = cs.num_ues();
    if (K == 0 || pilots.length() < K)
        throw std::invalid_argument("synth_pilot_block: one pilot per UE is required");
    const arma::cx_mat H = equivalent_channels(cs, theta);
    // UE k sends pilot k; any remaining pilots are unassigned.
    arma::cx_mat Y = std::sqrt(rho) * (H * arma::conv_to<arma::cx_mat>::from(pilots.phi.rows(0, K - 1)));
    arma::cx_mat noise(Y.n_rows, Y.n_cols);
    fill_complex_normal(noise, noise_power, rng);
    return Y + noise;
}

LsEstimate ls_estimate(std::span<const arma::cx_mat> blocks, const PilotCodebook &pilots, double rho,
                       double noise_power)
{
    if (blocks.empty())
        throw std::invalid_argument("ls_estimate: no pilot blocks");
    const arma::uword M = blocks.front().n_rows;
    const arma::uword tau_p = pilots.length();
    const double L = static_cast<double>(blocks.size());

    arma::cx_mat sum(M, tau_p, arma::fill::zeros);
    for (const auto &Y : blocks)
    {
        if (Y.n_rows != M || Y.n_cols != tau_p)
            throw std::invalid_argument("ls_estimate: inconsistent block dimensions");
        sum += Y;
    }
    // ybar_k = (1/L) Y p_k^*, i.e. the averaged block correlated with phi_k^*.
    const arma::cx_mat correlated = (sum / L) * arma::conv_to<arma::cx_mat>::from(pilots.phi.t());

    LsEstimate est;
    est.h_hat = correlated / (std::sqrt(rho) * static_cast<double>(tau_p));
    est.var_per_entry = noise_power / (L * static_cast<double>(tau_p) * rho);
    est.var_total = static_cast<double>(M) * est.var_per_entry;
    return est;
}

arma::cx_mat averaged_channel(const ChannelSet &cs, std::span<const HrisConfig> probe_configs,
                              const HrisConfig &reflection, arma::uword L)
{
    const arma::uword C = probe_configs.size();
    if (C > L)
        throw std::invalid_argument("averaged_channel: more probe subblocks than pilot subblocks");
    arma::cx_mat sum = static_cast<double>(L - C) * equivalent_channels(cs, reflection);
    for (const auto &theta : probe_configs)
        sum += equivalent_channels(cs, theta);
    return sum / static_cast<double>(L);
}

arma::vec mse_analytic(const ChannelSet &cs, std::span<const HrisConfig> probe_configs, const HrisConfig &target,
                       double rho, double noise_power, arma::uword L)
{
    const arma::uword M = cs.num_bs_antennas();
    const arma::uword K = cs.num_ues();
    const arma::uword C = probe_configs.size();
    const double Ld = static_cast<double>(L);

    const double estimation = static_cast<double>(M) / (Ld * static_cast<double>(K)) * noise_power / rho;

    arma::cx_vec diff = -static_cast<double>(C) * target.diagonal();
    for (const auto &theta : probe_configs)
        diff += theta.diagonal();

    arma::vec out(K);
    for (arma::uword k = 0; k < K; ++k)
    {
        const double distortion = std::pow(arma::norm(cs.G * (diff % cs.r.col(k))), 2);
        out(k) = estimation + cs.eta / (Ld * Ld) * distortion;
    }
    return out;
}

arma::mat channel_trace(const ChannelSet &cs, std::span<const HrisConfig> probe_configs,
                        const HrisConfig &reflection, arma::uword L)
{
    const arma::uword K = cs.num_ues();
    arma::mat trace(L, K);
    const arma::cx_mat reflecting = equivalent_channels(cs, reflection);
    for (arma::uword t = 0; t < L; ++t)
    {
        const arma::cx_mat H = t < probe_configs.size() ? equivalent_channels(cs, probe_configs[t]) : reflecting;
        for (arma::uword k = 0; k < K; ++k)
            trace(t, k) = arma::norm(H.col(k));
    }
    return trace;
}

arma::vec mrc_sinr(const arma::cx_mat &h_hat, const arma::cx_mat &h_star, double rho, double noise_power)
{
    const arma::uword K = h_hat.n_cols;
    const arma::mat gains = arma::square(arma::abs(h_hat.t() * h_star)); // (k, i) = |hhat_k^H h_i|^2
    arma::vec sinr(K);
    for (arma::uword k = 0; k < K; ++k)
    {
        const double desired = rho * gains(k, k);
        const double interference = rho * (arma::accu(gains.row(k)) - gains(k, k));
        const double noise = noise_power * std::pow(arma::norm(h_hat.col(k)), 2);
        const double denom = interference + noise;
        sinr(k) = denom > 0.0 ? desired / denom : std::numeric_limits<double>::infinity();
    }
    return sinr;
}

arma::vec mrc_sinr_per_symbol(const arma::cx_mat &h_hat, const arma::cx_mat &h_star, const arma::cx_vec &symbols,
                              const arma::cx_vec &noise)
{
    const arma::uword K = h_hat.n_cols;
    const arma::cx_mat proj = h_hat.t() * h_star;
    arma::vec sinr(K);
    for (arma::uword k = 0; k < K; ++k)
    {
        double interference = 0.0;
        for (arma::uword i = 0; i < K; ++i)
            if (i != k)
                interference += std::norm(proj(k, i) * symbols(i));
        const double noise_term = std::norm(arma::cdot(h_hat.col(k), noise));
        sinr(k) = std::norm(proj(k, k) * symbols(k)) / (interference + noise_term);
    }
    return sinr;
}

arma::vec spectral_efficiency(const arma::vec &sinr, const FrameDesign &frame)
{
    const double prelog = static_cast<double>(frame.tau_u()) / static_cast<double>(frame.tau_c);
    return prelog * arma::log2(1.0 + sinr);
}

UatfTerms uatf_bound(const arma::cx_mat &h_bar, const arma::cx_mat &h_star, double var_per_entry,
                     const FrameDesign &frame, double rho, double noise_power)
{
    const arma::uword K = h_bar.n_cols;
    const arma::mat bar_pow = arma::square(arma::abs(h_bar));  // |hbar_{mk}|^2
    const arma::mat star_pow = arma::square(arma::abs(h_star)); // |h_{mi}|^2
    const arma::cx_mat cross = h_bar.t() * h_star;              // (k, i) = hbar_k^H h_i

    UatfTerms out;
    // nu_ki = sum_m (|hbar_mk|^2 + var) |h_mi|^2
    out.nu = (bar_pow + var_per_entry).t() * star_pow;
    // xi_ki = Re sum_{m != m'} hbar*_mk hbar_m'k h_mi h*_m'i = |hbar_k^H h_i|^2 - sum_m |hbar_mk|^2 |h_mi|^2
    out.xi = arma::square(arma::abs(cross)) - bar_pow.t() * star_pow;

    out.sinr.set_size(K);
    for (arma::uword k = 0; k < K; ++k)
    {
        const double desired = rho * std::norm(cross(k, k));
        const double second_moment = std::pow(arma::norm(h_bar.col(k)), 2) +
                                     static_cast<double>(h_bar.n_rows) * var_per_entry; // E||hhat_k||^2
        const double denom =
            rho * arma::accu(out.nu.row(k) + out.xi.row(k)) - desired + noise_power * second_moment;
        out.sinr(k) = denom > 0.0 ? desired / denom : std::numeric_limits<double>::infinity();
    }
    out.se = spectral_efficiency(out.sinr, frame);
    return out;
}

CommMetrics communication_metrics(const LsEstimate &est, const arma::cx_mat &h_bar, const arma::cx_mat &h_star,
                                  const FrameDesign &frame, double rho, double noise_power)
{
    CommMetrics out;
    out.sinr = mrc_sinr(est.h_hat, h_star, rho, noise_power);
    out.se = spectral_efficiency(out.sinr, frame);
    UatfTerms bound = uatf_bound(h_bar, h_star, est.var_per_entry, frame, rho, noise_power);
    out.uatf_sinr = std::move(bound.sinr);
    out.uatf_se = std::move(bound.se);
    out.nu = std::move(bound.nu);
    out.xi = std::move(bound.xi);
    return out;
}

} // namespace hris
