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

namespace hris
{

// HRIS-BS CSI Theta^(b): the surface-side factor of G, diag(a_R(b)^*).
HrisConfig bs_csi(const ChannelSet &cs);

struct Reflection
{
    HrisConfig config;
    bool optimized = false; // false when no UE was detected and the surface falls back to identity
};

// conj(Theta^(b)) o (1/K') sum_k Theta_k. With non-empty `weights` the average is
// weighted (normalized weights); this is an experimental variant.
// An empty CSI set yields the identity configuration (unit gains, zero phases), not optimized.
Reflection reflection_config(const HrisConfig &bs, std::span<const HrisConfig> detected_csi,
                             std::span<const double> weights = {});

// Same combination over the CSI of all K UEs.
HrisConfig ideal_config(const HrisConfig &bs, std::span<const HrisConfig> all_ue_csi);

// || diag(a) - diag(b) ||_F
double config_gap(const HrisConfig &a, const HrisConfig &b);

struct ReflectionResult
{
    HrisConfig achieved;
    HrisConfig ideal;
    HrisConfig bs_csi;
    double frobenius_gap = 0.0;
    bool optimized = false;
};

} // namespace hris
