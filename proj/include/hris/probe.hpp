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

#include <vector>

namespace hris
{

// `spherical`: p_d = [sin el cos az, sin el sin az, cos el].
// `printed`: p_d = [sin el cos az, sin el cos az, cos el], normalized before use.
enum class CodebookConvention
{
    spherical,
    printed
};

std::string_view to_string(CodebookConvention c);
CodebookConvention codebook_convention_from_string(std::string_view name);

// D = D_el * D_az uniform sectors over elevation and azimuth. Direction d (0-based)
// has elevation index d % D_el and azimuth index d / D_el.
struct DirectionCodebook
{
    arma::uword el_count = 0;
    arma::uword az_count = 0;
    arma::vec psi_el;     // D
    arma::vec psi_az;     // D
    arma::mat directions; // 3 x D unit vectors
    arma::cx_mat combiner; // N x D, [V]_{n,d} = e^{j <k_d, s_n - s>} / N

    arma::uword size() const { return combiner.n_cols; }
    arma::uword num_elements() const { return combiner.n_rows; }

    // Theta_d = N diag(V_d), the configuration loaded while sweeping direction d.
    HrisConfig probe_config(arma::uword d) const;

    // Phase-compensating configuration for direction d: conj(N V_d), unit gains.
    HrisConfig direction_csi(arma::uword d) const;
};

DirectionCodebook build_codebook(arma::uword el_count, arma::uword az_count, const ArrayGeometry &hris,
                                 double lambda, CodebookConvention convention = CodebookConvention::spherical);

struct ProbeParams
{
    double eta = 0.8;
    double rho = 10.0;        // UE transmit power, linear
    double noise_power = 0.0; // sigma_hris^2, linear
};

struct ProbeObservation
{
    arma::mat alpha;            // K x D measured powers
    arma::uvec best_direction;  // K, argmax over each row, lowest index on ties
    Hardware hardware = Hardware::signal;
    arma::uword subblocks = 0;
};

// Row-wise argmax with lowest-index tie-break.
arma::uvec best_directions(const arma::mat &alpha);

// Noiseless best direction of every UE: argmax_d |v_d^H r_k|.
arma::uvec true_best_directions(const ChannelSet &cs, const DirectionCodebook &codebook);

// Identity configuration for C subblocks, combining with V^H and averaging over subblocks.
ProbeObservation signal_probe(const ChannelSet &cs, const DirectionCodebook &codebook, const ProbeParams &params,
                              arma::uword subblocks, Rng &rng);

// One codebook configuration per subblock (requires subblocks == D), single RF chain and power detector.
ProbeObservation power_probe(const ChannelSet &cs, const DirectionCodebook &codebook, const ProbeParams &params,
                             arma::uword subblocks, Rng &rng);

// Detection threshold meeting `target_pfa` exactly under each detector's null distribution.
double threshold_from_pfa(Hardware hw, double target_pfa, arma::uword num_elements, double noise_power);

struct UeCsi
{
    arma::uword ue = 0;
    arma::uword direction = 0;
    HrisConfig config; // unit-modulus phase-compensating configuration
    double gain = 0.0; // measured power in the best direction
};

struct ProbeOutcome
{
    std::vector<bool> detected;
    arma::vec statistic;   // signal: lambda, power: alpha at the best direction
    arma::vec analytic_pd; // plug-in detection probability per UE
    double analytic_pfa = 0.0;
    double threshold = 0.0;
    std::vector<UeCsi> csi; // detected UEs, ordered by UE index

    arma::uword detected_count() const { return static_cast<arma::uword>(csi.size()); }
};

// GLRT on the best-direction sample: lambda = 2NC/sigma^2 |ybar|^2 > eps.
ProbeOutcome detect_signal(const ProbeObservation &obs, const DirectionCodebook &codebook, arma::uword subblocks,
                           double noise_power, double threshold);

// Energy test on the best-direction power: alpha > eps'. The reported P_D uses the
// approximation that drops the signal-noise cross term and is optimistic.
ProbeOutcome detect_power(const ProbeObservation &obs, const DirectionCodebook &codebook, double noise_power,
                          double threshold);

} // namespace hris
