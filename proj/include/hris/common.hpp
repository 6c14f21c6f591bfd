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

#include <armadillo>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hris
{

using Vec3 = arma::vec3;
using Rng = std::mt19937_64;

// Processing architecture of the surface. `none` is the "no HRIS deployed" baseline
// and is only meaningful to the orchestrator.
enum class Hardware
{
    signal,
    power,
    none
};

std::string_view to_string(Hardware hw);
Hardware hardware_from_string(std::string_view name);

// Independent stream per (seed, tag). Trials use seed = base_seed + trial index,
// stages within a trial use distinct tags so that draw counts in one stage never
// shift the draws of another.
inline Rng make_stream(std::uint64_t seed, std::uint64_t tag)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(tag >> 32)};
    return Rng(seq);
}

namespace stream
{
inline constexpr std::uint64_t scenario = 1;
inline constexpr std::uint64_t links = 2;
inline constexpr std::uint64_t hris_noise = 3;
inline constexpr std::uint64_t bs_noise = 4;
} // namespace stream

// CN(0, variance): independent real and imaginary parts, each with variance/2.
inline void fill_complex_normal(arma::cx_mat &out, double variance, Rng &rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    const double scale = std::sqrt(variance / 2.0);
    for (arma::uword i = 0; i < out.n_elem; ++i)
    {
        const double re = normal(rng);
        const double im = normal(rng);
        out(i) = {scale * re, scale * im};
    }
}

inline arma::cx_mat complex_normal(arma::uword n_rows, arma::uword n_cols, double variance, Rng &rng)
{
    arma::cx_mat out(n_rows, n_cols);
    fill_complex_normal(out, variance, rng);
    return out;
}

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

} // namespace hris
