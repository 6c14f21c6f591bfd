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

#include "hris/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace hris
{

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace
{

class Row
{
  public:
    Row &operator<<(double v) { return add(format_double(v)); }
    Row &operator<<(arma::uword v) { return add(std::to_string(v)); }
    Row &operator<<(bool v) { return add(v ? "1" : "0"); }
    Row &operator<<(std::string_view v) { return add(std::string(v)); }
    std::string str() const { return line_ + '\n'; }

  private:
    Row &add(const std::string &field)
    {
        if (!first_)
            line_ += ',';
        line_ += field;
        first_ = false;
        return *this;
    }
    std::string line_;
    bool first_ = true;
};

template <typename T> void require_rows(const std::vector<T> &table, const char *what)
{
    if (table.empty())
        throw std::invalid_argument(std::string(what) + ": empty table");
}

} // namespace

std::string results_csv(const std::vector<TrialRecord> &records)
{
    std::string out = "trial,hardware,C_over_L,ue,mse_analytic,mse_empirical,nmse,sinr_db,se,uatf_se,detected_count\n";
    for (const auto &r : records)
        for (const auto &u : r.ues)
            out += (Row() << r.trial << to_string(r.hardware) << r.c_over_l() << u.ue << u.mse_analytic
                          << u.mse_empirical << u.nmse << u.sinr_db << u.se << u.uatf_se << r.detected_count)
                       .str();
    return out;
}

std::string aggregate_csv(const std::vector<AggregateRow> &rows)
{
    std::string out = "hardware,C_over_L,metric,mean,std,trials\n";
    for (const auto &a : rows)
        out += (Row() << to_string(a.hardware) << a.c_over_l << a.metric << a.mean << a.std << a.trials).str();
    return out;
}

std::string probe_csv(const std::vector<TrialRecord> &records)
{
    std::string out = "trial,hardware,C,ue,best_direction,alpha_best,detected,lambda_or_alpha,analytic_pd,analytic_pfa\n";
    for (const auto &r : records)
        for (const auto &u : r.ues)
            out += (Row() << r.trial << to_string(r.hardware) << r.frame.C << u.ue << u.best_direction << u.alpha_best
                          << u.detected << u.statistic << u.analytic_pd << r.analytic_pfa)
                       .str();
    return out;
}

std::string reflection_csv(const std::vector<TrialRecord> &records)
{
    std::string out = "trial,hardware,C,K_detected,frobenius_gap\n";
    for (const auto &r : records)
        out += (Row() << r.trial << to_string(r.hardware) << r.frame.C << r.detected_count << r.frobenius_gap).str();
    return out;
}

std::string trace_csv(const arma::mat &trace)
{
    std::string out = "subblock,ue,abs_h\n";
    for (arma::uword t = 0; t < trace.n_rows; ++t)
        for (arma::uword k = 0; k < trace.n_cols; ++k)
            out += (Row() << t << k << trace(t, k)).str();
    return out;
}

void write_text(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out)
        throw IoError("failed writing '" + path.string() + "'");
}

void emit_results(const std::vector<TrialRecord> &records, const std::filesystem::path &path)
{
    require_rows(records, "emit_results");
    write_text(path, results_csv(records));
}

void emit_aggregate(const std::vector<AggregateRow> &rows, const std::filesystem::path &path)
{
    require_rows(rows, "emit_aggregate");
    write_text(path, aggregate_csv(rows));
}

void emit_probe(const std::vector<TrialRecord> &records, const std::filesystem::path &path)
{
    require_rows(records, "emit_probe");
    write_text(path, probe_csv(records));
}

void emit_reflection(const std::vector<TrialRecord> &records, const std::filesystem::path &path)
{
    require_rows(records, "emit_reflection");
    write_text(path, reflection_csv(records));
}

void emit_trace(const arma::mat &trace, const std::filesystem::path &path)
{
    if (trace.is_empty())
        throw std::invalid_argument("emit_trace: empty table");
    write_text(path, trace_csv(trace));
}

} // namespace hris
