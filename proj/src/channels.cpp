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

#include "hris/channels.hpp"

#include <cmath>

namespace hris
{

arma::cx_vec HrisConfig::diagonal() const
{
    if (phases.n_elem != gains.n_elem)
        throw std::invalid_argument("HrisConfig: phases and gains differ in length");
    arma::cx_vec out(phases.n_elem);
    for (arma::uword n = 0; n < phases.n_elem; ++n)
        out(n) = std::polar(1.0, phases(n)) * gains(n);
    return out;
}

HrisConfig HrisConfig::from_diagonal(const arma::cx_vec &diag)
{
    HrisConfig cfg;
    cfg.gains = arma::abs(diag);
    cfg.phases = arma::arg(diag);
    return cfg;
}

HrisConfig HrisConfig::identity(arma::uword n)
{
    return {arma::vec(n, arma::fill::zeros), arma::vec(n, arma::fill::ones)};
}

void HrisConfig::validate() const
{
    if (phases.n_elem != gains.n_elem)
        throw std::invalid_argument("HrisConfig: phases and gains differ in length");
    if (arma::any(arma::abs(gains) > 1.0 + 1e-12))
        throw std::invalid_argument("HrisConfig: element gain magnitude exceeds one");
}

ChannelSet build_channels(const ArrayGeometry &bs, const ArrayGeometry &hris, const arma::mat &ue_positions,
                          double lambda, double eta, const PathlossModel &pathloss_model,
                          const ChannelOptions &options, Rng &rng)
{
    if (ue_positions.n_rows != 3)
        throw std::invalid_argument("build_channels: UE positions must be 3 x K");
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::invalid_argument("eta must lie in [0,1]");
    pathloss_model.validate();

    const arma::uword M = bs.size();
    const arma::uword N = hris.size();
    const arma::uword K = ue_positions.n_cols;

    ChannelSet cs;
    cs.eta = eta;
    cs.h_direct.set_size(M, K);
    cs.r.set_size(N, K);
    cs.shadow.set_size(K);
    cs.los.assign(K, true);

    const double bs_hris_dist = arma::norm(bs.center - hris.center);
    if (bs_hris_dist == 0.0)
        throw std::domain_error("build_channels: BS and HRIS centers coincide");

    bool bs_hris_los = true;
    if (!options.hris_links_los)
        bs_hris_los = sample_link_state(pathloss_model, bs_hris_dist, rng).los;
    const double gamma_bs_hris = pathloss(pathloss_model, bs.center, hris.center, bs_hris_los);
    cs.a_hris_bs = array_response(hris, bs.center, lambda);
    const arma::cx_vec a_bs_hris = array_response(bs, hris.center, lambda);
    cs.G = std::sqrt(gamma_bs_hris) * a_bs_hris * cs.a_hris_bs.t();

    for (arma::uword k = 0; k < K; ++k)
    {
        const Vec3 u = ue_positions.col(k);
        const double d_direct = arma::norm(u - bs.center);
        const double d_hris = arma::norm(u - hris.center);
        if (d_direct == 0.0 || d_hris == 0.0)
            throw std::domain_error("build_channels: UE position coincides with an array center");

        const LinkState direct = sample_link_state(pathloss_model, d_direct, rng);
        bool hris_ue_los = true;
        if (!options.hris_links_los)
            hris_ue_los = sample_link_state(pathloss_model, d_hris, rng).los;

        cs.los[k] = direct.los;
        cs.shadow(k) = direct.shadow_lin;

        const double gamma_direct = pathloss(pathloss_model, bs.center, u, direct.los);
        cs.h_direct.col(k) = std::sqrt(direct.shadow_lin * gamma_direct) * array_response(bs, u, lambda);

        double gamma_hris_ue = pathloss(pathloss_model, u, hris.center, hris_ue_los);
        if (options.shadow_reflected)
            gamma_hris_ue *= direct.shadow_lin;
        cs.r.col(k) = std::sqrt(gamma_hris_ue) * array_response(hris, u, lambda);
    }
    return cs;
}

arma::cx_vec reflected_channel(const ChannelSet &cs, const HrisConfig &theta, arma::uword k)
{
    if (k >= cs.num_ues())
        throw std::out_of_range("reflected_channel: UE index out of range");
    if (theta.size() != cs.num_elements())
        throw std::invalid_argument("reflected_channel: configuration size does not match the surface");
    return std::sqrt(cs.eta) * (cs.G * (theta.diagonal() % cs.r.col(k)));
}

arma::cx_vec equivalent_channel(const ChannelSet &cs, const HrisConfig &theta, arma::uword k)
{
    return reflected_channel(cs, theta, k) + cs.h_direct.col(k);
}

arma::cx_mat equivalent_channels(const ChannelSet &cs, const HrisConfig &theta)
{
    if (theta.size() != cs.num_elements())
        throw std::invalid_argument("equivalent_channels: configuration size does not match the surface");
    const arma::cx_mat scaled = cs.r.each_col() % theta.diagonal();
    return std::sqrt(cs.eta) * (cs.G * scaled) + cs.h_direct;
}

} // namespace hris
