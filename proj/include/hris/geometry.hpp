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

#include "hris/common.hpp"

namespace hris
{

inline constexpr double speed_of_light = 299792458.0;

inline double wavelength(double carrier_hz) { return speed_of_light / carrier_hz; }

enum class ArrayKind
{
    ula,
    upa
};

enum class Axis
{
    x,
    y,
    z
};

// Element layout of the BS (ULA) or the HRIS (UPA in the xz-plane).
// Element positions are stored column-wise (3 x count) in meters.
struct ArrayGeometry
{
    Vec3 center{arma::fill::zeros};
    arma::mat element_positions;
    ArrayKind kind = ArrayKind::ula;
    arma::uword count_x = 0; // ULA: number of elements; UPA: N_x
    arma::uword count_z = 1; // UPA: N_z
    double element_spacing = 0.0;

    arma::uword size() const { return element_positions.n_cols; }
};

// Uniform linear array of `count` elements centered on `center`, laid out along `axis`.
ArrayGeometry make_ula(const Vec3 &center, arma::uword count, double spacing, Axis axis = Axis::y);

// Uniform planar array of nx * nz elements in the xz-plane; element n = ix + nx * iz.
ArrayGeometry make_upa(const Vec3 &center, arma::uword nx, arma::uword nz, double spacing);

// (2 pi / lambda) * (p - origin) / |p - origin|
Vec3 wave_vector(const Vec3 &p, const Vec3 &origin, double lambda);

// Entry n = exp(j <k, pos_n - center>). Shared phase-sign convention for every steering vector.
arma::cx_vec response_to_wave_vector(const ArrayGeometry &geom, const Vec3 &k);

// Array response of `geom` towards the point p.
arma::cx_vec array_response(const ArrayGeometry &geom, const Vec3 &p, double lambda);

struct PathlossModel
{
    double gamma0 = 1.0;        // linear power gain at d0
    double d0 = 1.0;            // meters
    double beta_los = 2.0;
    double beta_nlos = 4.0;
    double shadow_std_db = 0.0; // log-normal shadowing standard deviation
    double los_decay_m = 30.0;  // P(LoS) = exp(-d / los_decay_m); +inf disables blockage

    void validate() const;
};

// gamma0 * (d0 / |p - q|)^beta
double pathloss(const PathlossModel &model, const Vec3 &p, const Vec3 &q, bool los);

struct LinkState
{
    bool los = true;
    double shadow_lin = 1.0;
};

// Bernoulli(exp(-d / delta)) blockage and 10^(-x/10), x ~ N(0, shadow_std_db^2).
// Always consumes one uniform and one normal draw.
LinkState sample_link_state(const PathlossModel &model, double distance, Rng &rng);

} // namespace hris
