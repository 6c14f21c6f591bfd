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

#include "hris/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hris
{

std::string_view to_string(Hardware hw)
{
    switch (hw)
    {
    case Hardware::signal:
        return "signal";
    case Hardware::power:
        return "power";
    case Hardware::none:
        return "none";
    }
    return "unknown";
}

Hardware hardware_from_string(std::string_view name)
{
    if (name == "signal")
        return Hardware::signal;
    if (name == "power")
        return Hardware::power;
    if (name == "none")
        return Hardware::none;
    throw std::invalid_argument("unknown hardware '" + std::string(name) + "' (expected signal, power or none)");
}

ArrayGeometry make_ula(const Vec3 &center, arma::uword count, double spacing, Axis axis)
{
    if (count == 0)
        throw std::invalid_argument("make_ula: element count must be positive");
    if (!(spacing > 0.0))
        throw std::invalid_argument("make_ula: element spacing must be positive");

    ArrayGeometry geom;
    geom.center = center;
    geom.kind = ArrayKind::ula;
    geom.count_x = count;
    geom.count_z = 1;
    geom.element_spacing = spacing;
    geom.element_positions.set_size(3, count);

    const arma::uword dim = axis == Axis::x ? 0 : (axis == Axis::y ? 1 : 2);
    const double mid = 0.5 * static_cast<double>(count - 1);
    for (arma::uword m = 0; m < count; ++m)
    {
        Vec3 pos = center;
        pos(dim) += (static_cast<double>(m) - mid) * spacing;
        geom.element_positions.col(m) = pos;
    }
    return geom;
}

ArrayGeometry make_upa(const Vec3 &center, arma::uword nx, arma::uword nz, double spacing)
{
    if (nx == 0 || nz == 0)
        throw std::invalid_argument("make_upa: element counts must be positive");
    if (!(spacing > 0.0))
        throw std::invalid_argument("make_upa: element spacing must be positive");

    ArrayGeometry geom;
    geom.center = center;
    geom.kind = ArrayKind::upa;
    geom.count_x = nx;
    geom.count_z = nz;
    geom.element_spacing = spacing;
    geom.element_positions.set_size(3, nx * nz);

    const double mid_x = 0.5 * static_cast<double>(nx - 1);
    const double mid_z = 0.5 * static_cast<double>(nz - 1);
    for (arma::uword iz = 0; iz < nz; ++iz)
        for (arma::uword ix = 0; ix < nx; ++ix)
        {
            Vec3 pos = center;
            pos(0) += (static_cast<double>(ix) - mid_x) * spacing;
            pos(2) += (static_cast<double>(iz) - mid_z) * spacing;
            geom.element_positions.col(ix + nx * iz) = pos;
        }
    return geom;
}

Vec3 wave_vector(const Vec3 &p, const Vec3 &origin, double lambda)
{
    if (!(lambda > 0.0))
        throw std::domain_error("wave_vector: wavelength must be positive");
    const Vec3 diff = p - origin;
    const double dist = arma::norm(diff);
    if (dist == 0.0)
        throw std::domain_error("wave_vector: point coincides with the origin");
    return (2.0 * std::numbers::pi / lambda) * diff / dist;
}

arma::cx_vec response_to_wave_vector(const ArrayGeometry &geom, const Vec3 &k)
{
    const arma::uword n = geom.size();
    arma::cx_vec out(n);
    for (arma::uword i = 0; i < n; ++i)
    {
        const double phase = arma::dot(k, geom.element_positions.col(i) - geom.center);
        out(i) = std::polar(1.0, phase);
    }
    return out;
}

arma::cx_vec array_response(const ArrayGeometry &geom, const Vec3 &p, double lambda)
{
    return response_to_wave_vector(geom, wave_vector(p, geom.center, lambda));
}

void PathlossModel::validate() const
{
    if (!(gamma0 > 0.0))
        throw std::invalid_argument("gamma0 must be positive");
    if (!(d0 > 0.0))
        throw std::invalid_argument("d0 must be positive");
    if (!(beta_los <= beta_nlos))
        throw std::invalid_argument("beta_los must not exceed beta_nlos");
    if (!(shadow_std_db >= 0.0))
        throw std::invalid_argument("shadow_std_db must be non-negative");
    if (!(los_decay_m > 0.0))
        throw std::invalid_argument("los_decay_m must be positive");
}

double pathloss(const PathlossModel &model, const Vec3 &p, const Vec3 &q, bool los)
{
    const double dist = arma::norm(p - q);
    if (dist == 0.0)
        throw std::domain_error("pathloss: zero link distance");
    const double beta = los ? model.beta_los : model.beta_nlos;
    return model.gamma0 * std::pow(model.d0 / dist, beta);
}

LinkState sample_link_state(const PathlossModel &model, double distance, Rng &rng)
{
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double u = uniform(rng);
    const double z = normal(rng);

    const double p_los = std::isinf(model.los_decay_m) ? 1.0 : std::exp(-distance / model.los_decay_m);
    LinkState state;
    state.los = u < p_los;
    state.shadow_lin = std::pow(10.0, -(model.shadow_std_db * z) / 10.0);
    return state;
}

} // namespace hris
