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

#include "hris/detection.hpp"

#include <algorithm>
#include <cmath>

namespace hris
{

double chi2_2dof_survival(double x)
{
    if (x <= 0.0)
        return 1.0;
    return std::exp(-0.5 * x);
}

// Poisson mixture: with mu = nc/2 and y = x/2,
//   P(X > x)  = sum_j Pois(j; mu) * P(Pois(y) <= j),
//   P(X <= x) = sum_j Pois(j; mu) * P(Pois(y) > j).
// The smaller of the two is summed directly (all terms positive) and the other is its
// complement, so values near 0 and near 1 both keep full absolute precision.
double ncx2_2dof_survival(double x, double noncentrality)
{
    if (x <= 0.0)
        return 1.0;
    if (noncentrality <= 0.0)
        return chi2_2dof_survival(x);
    if (std::isinf(noncentrality))
        return 1.0;

    // Tail bounds: Q1(a,b) <= exp(-(b-a)^2/2) for b > a, 1 - Q1(a,b) <= exp(-(a-b)^2/2) for a > b.
    const double a = std::sqrt(noncentrality);
    const double b = std::sqrt(x);
    const double gap = 0.5 * (a - b) * (a - b);
    if (gap > 50.0)
        return a > b ? 1.0 : 0.0;

    const double mu = 0.5 * noncentrality;
    const double y = 0.5 * x;
    const double spread_mu = 12.0 * std::sqrt(mu) + 30.0;
    const double spread_y = 12.0 * std::sqrt(y) + 30.0;
    const auto j_lo = static_cast<long>(std::max(0.0, std::floor(mu - spread_mu)));
    const auto j_hi = static_cast<long>(std::ceil(mu + spread_mu));
    const double log_mu = std::log(mu);
    const double log_y = std::log(y);
    auto log_pois = [](long j, double log_rate, double rate) {
        const double jd = static_cast<double>(j);
        return -rate + jd * log_rate - std::lgamma(jd + 1.0);
    };

    if (x >= noncentrality)
    {
        double cumulative = 0.0; // P(Pois(y) <= j)
        double total = 0.0;
        for (long j = 0; j <= j_hi; ++j)
        {
            cumulative = std::min(1.0, cumulative + std::exp(log_pois(j, log_y, y)));
            if (j >= j_lo)
                total += std::exp(log_pois(j, log_mu, mu)) * cumulative;
        }
        return std::clamp(total, 0.0, 1.0);
    }

    // Upper tails P(Pois(y) > j) by backward accumulation from beyond both supports.
    const long i_max = std::max(j_hi, static_cast<long>(std::ceil(y + spread_y))) + 1;
    double tail = 0.0; // P(Pois(y) > j), starting at j = i_max
    double total = 0.0;
    for (long j = i_max - 1; j >= 0; --j)
    {
        tail += std::exp(log_pois(j + 1, log_y, y));
        if (j >= j_lo && j <= j_hi)
            total += std::exp(log_pois(j, log_mu, mu)) * tail;
    }
    return std::clamp(1.0 - total, 0.0, 1.0);
}

double marcum_q1(double a, double b) { return ncx2_2dof_survival(b * b, a * a); }

} // namespace hris
