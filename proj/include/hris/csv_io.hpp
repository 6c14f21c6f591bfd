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

#include "hris/orchestrator.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace hris
{

struct IoError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Nine significant digits; nan and inf are spelled as such.
std::string format_double(double v);

std::string results_csv(const std::vector<TrialRecord> &records);
std::string aggregate_csv(const std::vector<AggregateRow> &rows);
std::string probe_csv(const std::vector<TrialRecord> &records);
std::string reflection_csv(const std::vector<TrialRecord> &records);
std::string trace_csv(const arma::mat &trace);

// Each writer rejects an empty table with std::invalid_argument and raises IoError when
// the file cannot be written.
void emit_results(const std::vector<TrialRecord> &records, const std::filesystem::path &path);
void emit_aggregate(const std::vector<AggregateRow> &rows, const std::filesystem::path &path);
void emit_probe(const std::vector<TrialRecord> &records, const std::filesystem::path &path);
void emit_reflection(const std::vector<TrialRecord> &records, const std::filesystem::path &path);
void emit_trace(const arma::mat &trace, const std::filesystem::path &path);

void write_text(const std::filesystem::path &path, const std::string &text);

} // namespace hris
