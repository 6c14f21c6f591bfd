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

namespace hris
{

// Right tail of a central chi-square with two degrees of freedom: exp(-x/2).
double chi2_2dof_survival(double x);

// Right tail of a non-central chi-square with two degrees of freedom,
// P(X > x) for X ~ chi2_2(noncentrality). Equals the Marcum function
// Q_1(sqrt(noncentrality), sqrt(x)). Absolute accuracy better than 1e-10.
double ncx2_2dof_survival(double x, double noncentrality);

// First-order Marcum Q function.
double marcum_q1(double a, double b);

} // namespace hris
