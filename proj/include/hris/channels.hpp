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

#include "hris/geometry.hpp"

#include <vector>

namespace hris
{

// Diagonal surface configuration Theta = diag(alpha_n e^{j theta_n}).
struct HrisConfig
{
    arma::vec phases; // radians
    arma::vec gains;  // |alpha_n| <= 1

    arma::uword size() const { return phases.n_elem; }
    arma::cx_vec diagonal() const;

    static HrisConfig from_diagonal(const arma::cx_vec &diag);
    static HrisConfig identity(arma::uword n);

    // Throws std::invalid_argument on size mismatch or a gain above one.
    void validate() const;
};

struct ChannelOptions
{
    bool shadow_reflected = false; // also scale r_k by the direct-path shadowing draw
    bool hris_links_los = true;    // BS-HRIS and HRIS-UE links forced to LoS
};

// All channels of one realized geometry. UE channels are stored column-wise.
struct ChannelSet
{
    arma::cx_mat h_direct; // M x K, column k = h_{D,k}
    arma::cx_mat r;        // N x K, column k = r_k (HRIS-UE)
    arma::cx_mat G;        // M x N (BS-HRIS)
    arma::cx_vec a_hris_bs; // a_R(b), HRIS response towards the BS
    double eta = 0.0;
    arma::vec shadow;      // xi_k, linear
    std::vector<bool> los; // direct-link LoS state per UE

    arma::uword num_bs_antennas() const { return G.n_rows; }
    arma::uword num_elements() const { return G.n_cols; }
    arma::uword num_ues() const { return h_direct.n_cols; }
};

// h_{D,k} = sqrt(xi_k gamma(b,u_k)) a_B(u_k), r_k = sqrt(gamma(u_k,s)) a_R(u_k),
// G = sqrt(gamma(b,s)) a_B(s) a_R(b)^H. Consumes link-state draws from `rng` in UE order.
ChannelSet build_channels(const ArrayGeometry &bs, const ArrayGeometry &hris, const arma::mat &ue_positions,
                          double lambda, double eta, const PathlossModel &pathloss_model,
                          const ChannelOptions &options, Rng &rng);

// sqrt(eta) G diag(theta) r_k
arma::cx_vec reflected_channel(const ChannelSet &cs, const HrisConfig &theta, arma::uword k);

// h_{R,k}(theta) + h_{D,k}
arma::cx_vec equivalent_channel(const ChannelSet &cs, const HrisConfig &theta, arma::uword k);

// All K equivalent channels as an M x K matrix.
arma::cx_mat equivalent_channels(const ChannelSet &cs, const HrisConfig &theta);

} // namespace hris
