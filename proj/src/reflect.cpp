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

#include "hris/reflect.hpp"

#include <cmath>

namespace hris
{

HrisConfig bs_csi(const ChannelSet &cs)
{
    return HrisConfig::from_diagonal(arma::conj(cs.a_hris_bs));
}

Reflection reflection_config(const HrisConfig &bs, std::span<const HrisConfig> detected_csi,
                             std::span<const double> weights)
{
    const arma::uword N = bs.size();
    if (detected_csi.empty())
        return {HrisConfig::identity(N), false};
    if (!weights.empty() && weights.size() != detected_csi.size())
        throw std::invalid_argument("reflection_config: one weight per detected UE is required");

    arma::cx_vec sum(N, arma::fill::zeros);
    double total_weight = 0.0;
    for (std::size_t i = 0; i < detected_csi.size(); ++i)
    {
        if (detected_csi[i].size() != N)
            throw std::invalid_argument("reflection_config: CSI size does not match the surface");
        const double w = weights.empty() ? 1.0 : weights[i];
        sum += w * detected_csi[i].diagonal();
        total_weight += w;
    }
    if (!(total_weight > 0.0))
        return {HrisConfig::identity(N), false};

    const arma::cx_vec diag = arma::conj(bs.diagonal()) % (sum / total_weight);
    return {HrisConfig::from_diagonal(diag), true};
}

HrisConfig ideal_config(const HrisConfig &bs, std::span<const HrisConfig> all_ue_csi)
{
    return reflection_config(bs, all_ue_csi).config;
}

double config_gap(const HrisConfig &a, const HrisConfig &b)
{
    if (a.size() != b.size())
        throw std::domain_error("config_gap: configurations differ in size");
    return arma::norm(a.diagonal() - b.diagonal(), 2);
}

} // namespace hris
