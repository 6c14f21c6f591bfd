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

#include "hris/channels.hpp"

#include <span>
#include <vector>

namespace hris
{

// Coherence-block bookkeeping, in samples. The CHEST phase holds L pilot subblocks of
// tau_p samples; the HRIS probes during the first C of them. Uplink-only payload (tau_d = 0).
struct FrameDesign
{
    arma::uword tau_p = 1;
    arma::uword L = 1;
    arma::uword C = 0;
    arma::uword tau_c = 2;

    arma::uword tau_chest() const { return L * tau_p; }
    arma::uword tau_prob() const { return C * tau_p; }
    arma::uword tau_refl() const { return tau_c - C * tau_p; }
    arma::uword tau_u() const { return tau_c - tau_chest(); }

    void validate() const;

    // tau_c = 2 L tau_p: the estimation phase occupies half of the coherence block.
    static FrameDesign with_default_coherence(arma::uword tau_p, arma::uword L, arma::uword C);
};

// Canonical orthogonal pilots sqrt(tau_p) I; row t is phi_t^T.
struct PilotCodebook
{
    arma::mat phi;

    arma::uword length() const { return phi.n_rows; }
    static PilotCodebook canonical(arma::uword tau_p);
};

// Y_t = sqrt(rho) sum_k h_k(theta) phi_k^T + N_t, N_t entries CN(0, noise_power). M x tau_p.
arma::cx_mat synth_pilot_block(const ChannelSet &cs, const HrisConfig &theta, const PilotCodebook &pilots, double rho,
                               double noise_power, Rng &rng);

struct LsEstimate
{
    arma::cx_mat h_hat;        // M x K
    double var_per_entry = 0.0; // sigma_b^2 / (L K rho)
    double var_total = 0.0;     // M sigma_b^2 / (L K rho)
};

// Averages the L received copies, correlates with each pilot and scales by 1/(sqrt(rho) tau_p).
LsEstimate ls_estimate(std::span<const arma::cx_mat> blocks, const PilotCodebook &pilots, double rho,
                       double noise_power);

// hbar_k = (1/L) [ sum_{t<=C} h_k(Theta_t) + (L - C) h_k(Theta_star) ], M x K.
arma::cx_mat averaged_channel(const ChannelSet &cs, std::span<const HrisConfig> probe_configs,
                              const HrisConfig &reflection, arma::uword L);

// M/(LK) sigma_b^2/rho + eta/L^2 || G (sum_t Theta_t - C Theta_star) r_k ||^2 per UE.
arma::vec mse_analytic(const ChannelSet &cs, std::span<const HrisConfig> probe_configs, const HrisConfig &target,
                       double rho, double noise_power, arma::uword L);

// || h_k(t) || for each subblock t (rows) and UE k (columns).
arma::mat channel_trace(const ChannelSet &cs, std::span<const HrisConfig> probe_configs,
                        const HrisConfig &reflection, arma::uword L);

struct CommMetrics
{
    arma::vec sinr;      // instantaneous, deterministic-power form
    arma::vec se;        // bits/s/Hz
    arma::vec uatf_sinr;
    arma::vec uatf_se;
    arma::mat nu;        // K x K
    arma::mat xi;        // K x K
};

// rho |v_k^H h_k|^2 / (rho sum_{i != k} |v_k^H h_i|^2 + sigma^2 ||v_k||^2) with v_k = hhat_k.
arma::vec mrc_sinr(const arma::cx_mat &h_hat, const arma::cx_mat &h_star, double rho, double noise_power);

// Literal per-symbol ratio for given data symbols s (K) and receiver noise n (M). Debug only.
arma::vec mrc_sinr_per_symbol(const arma::cx_mat &h_hat, const arma::cx_mat &h_star, const arma::cx_vec &symbols,
                              const arma::cx_vec &noise);

// (tau_u / tau_c) log2(1 + sinr)
arma::vec spectral_efficiency(const arma::vec &sinr, const FrameDesign &frame);

struct UatfTerms
{
    arma::mat nu;
    arma::mat xi;
    arma::vec sinr;
    arma::vec se;
};

// Use-and-then-forget bound for hhat_k ~ CN(hbar_k, var_per_entry I).
UatfTerms uatf_bound(const arma::cx_mat &h_bar, const arma::cx_mat &h_star, double var_per_entry,
                     const FrameDesign &frame, double rho, double noise_power);

CommMetrics communication_metrics(const LsEstimate &est, const arma::cx_mat &h_bar, const arma::cx_mat &h_star,
                                  const FrameDesign &frame, double rho, double noise_power);

} // namespace hris
