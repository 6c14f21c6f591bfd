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

// Small fixtures shared by the unit tests.

#include "hris/channels.hpp"

#include <catch2/catch_amalgamated.hpp>

namespace hris::testing
{

inline HrisConfig random_config(arma::uword n, Rng &rng, bool unit_gain = false)
{
    std::uniform_real_distribution<double> phase(-3.14159, 3.14159);
    std::uniform_real_distribution<double> gain(0.0, 1.0);
    HrisConfig cfg;
    cfg.phases.set_size(n);
    cfg.gains.set_size(n);
    for (arma::uword i = 0; i < n; ++i)
    {
        cfg.phases(i) = phase(rng);
        cfg.gains(i) = unit_gain ? 1.0 : gain(rng);
    }
    return cfg;
}

struct DeskSetup
{
    double lambda = wavelength(28e9);
    ArrayGeometry bs;
    ArrayGeometry hris;
    arma::mat ues;
    PathlossModel pathloss;
    ChannelSet cs;
};

// Desk-scale geometry (M = 8, N = 4 x 4) with K UEs uniformly placed in the east half
// of a 100 m square.
inline DeskSetup desk_setup(arma::uword K, std::uint64_t seed, double eta = 0.8, arma::uword M = 8,
                            arma::uword nx = 4, arma::uword nz = 4)
{
    DeskSetup s;
    s.bs = make_ula(Vec3{0.0, 50.0, 0.0}, M, s.lambda / 2.0);
    s.hris = make_upa(Vec3{50.0, 0.0, 0.0}, nx, nz, s.lambda / 2.0);
    Rng rng(seed);
    std::uniform_real_distribution<double> ux(51.0, 100.0), uy(1.0, 100.0);
    s.ues.set_size(3, K);
    for (arma::uword k = 0; k < K; ++k)
        s.ues.col(k) = Vec3{ux(rng), uy(rng), 0.0};
    s.cs = build_channels(s.bs, s.hris, s.ues, s.lambda, eta, s.pathloss, {}, rng);
    return s;
}

} // namespace hris::testing
