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

#include "hris/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace hris
{

using nlohmann::json;

std::string_view to_string(MseReference r) { return r == MseReference::achieved ? "achieved" : "ideal"; }

MseReference mse_reference_from_string(std::string_view name)
{
    if (name == "achieved")
        return MseReference::achieved;
    if (name == "ideal")
        return MseReference::ideal;
    throw ConfigError("mse_reference must be 'achieved' or 'ideal'");
}

void SimulationConfig::validate() const
{
    auto require = [](bool ok, const char *msg) {
        if (!ok)
            throw ConfigError(msg);
    };
    require(M >= 1, "M must be at least 1");
    require(K >= 1, "K must be at least 1");
    require(N_x >= 1 && N_z >= 1, "N_x and N_z must be at least 1");
    require(eta >= 0.0 && eta <= 1.0, "eta must lie in [0,1]");
    require(std::isfinite(rho_dbm), "rho_dbm must be finite");
    require(std::isfinite(sigma_b_dbm) || sigma_b_dbm == -std::numeric_limits<double>::infinity(),
            "sigma_b_dbm must be finite or -inf");
    require(std::isfinite(sigma_hris_dbm) || sigma_hris_dbm == -std::numeric_limits<double>::infinity(),
            "sigma_hris_dbm must be finite or -inf");
    require(carrier_hz > 0.0, "carrier_hz must be positive");
    require(gamma0 > 0.0, "gamma0 must be positive");
    require(d0 > 0.0, "d0 must be positive");
    require(beta_los <= beta_nlos, "beta_los must not exceed beta_nlos");
    require(shadow_std_db >= 0.0, "shadow_std_db must be non-negative");
    require(los_decay_m > 0.0, "los_decay_m must be positive");
    require(area_side > 0.0, "area_side must be positive");
    require(L >= 1, "L must be at least 1");
    require(tau_c == 0 || tau_c >= L * tau_p(), "tau_c must be at least L * K");
    require(target_pfa > 0.0 && target_pfa < 1.0, "target_pfa must lie in (0,1)");
    require(D_el >= 1, "D_el must be at least 1");
    require(!C_values.empty(), "C_values must not be empty");
    for (auto c : C_values)
    {
        require(c <= L, "every C value must satisfy C <= L");
        require(c % D_el == 0, "every C value must be a multiple of D_el");
    }
    require(!hardware.empty(), "hardware must not be empty");
    require(trials >= 1, "trials must be at least 1");
    require(!output_dir.empty(), "output_dir must not be empty");
}

SimulationConfig desk_preset()
{
    SimulationConfig cfg;
    cfg.M = 8;
    cfg.N_x = 4;
    cfg.N_z = 4;
    cfg.K = 4;
    cfg.L = 16;
    cfg.C_values = {0, 1, 2, 4, 8, 16};
    return cfg;
}

namespace
{

json double_to_json(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

double double_from_json(const json &j, const std::string &key)
{
    if (j.is_number())
        return j.get<double>();
    if (j.is_string())
    {
        const auto s = j.get<std::string>();
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
    }
    throw ConfigError(key + " must be a number");
}

arma::uword uint_from_json(const json &j, const std::string &key)
{
    if (j.is_number_unsigned())
        return j.get<arma::uword>();
    if (j.is_number_integer() && j.get<long long>() >= 0)
        return static_cast<arma::uword>(j.get<long long>());
    throw ConfigError(key + " must be a non-negative integer");
}

bool bool_from_json(const json &j, const std::string &key)
{
    if (!j.is_boolean())
        throw ConfigError(key + " must be a boolean");
    return j.get<bool>();
}

std::string string_from_json(const json &j, const std::string &key)
{
    if (!j.is_string())
        throw ConfigError(key + " must be a string");
    return j.get<std::string>();
}

struct Field
{
    std::function<json(const SimulationConfig &)> get;
    std::function<void(SimulationConfig &, const json &, const std::string &)> set;
};

#define HRIS_DOUBLE(name)                                                                                 \
    {                                                                                                     \
        #name, {[](const SimulationConfig &c) { return double_to_json(c.name); },                       \
                [](SimulationConfig &c, const json &j, const std::string &k) { c.name = double_from_json(j, k); } } \
    }
#define HRIS_UINT(name)                                                                                   \
    {                                                                                                     \
        #name, {[](const SimulationConfig &c) { return json(c.name); },                                  \
                [](SimulationConfig &c, const json &j, const std::string &k) { c.name = uint_from_json(j, k); } } \
    }
#define HRIS_BOOL(name)                                                                                   \
    {                                                                                                     \
        #name, {[](const SimulationConfig &c) { return json(c.name); },                                  \
                [](SimulationConfig &c, const json &j, const std::string &k) { c.name = bool_from_json(j, k); } } \
    }

const std::vector<std::pair<std::string, Field>> &fields()
{
    static const std::vector<std::pair<std::string, Field>> table = {
        HRIS_UINT(M),
        HRIS_UINT(K),
        HRIS_UINT(N_x),
        HRIS_UINT(N_z),
        HRIS_DOUBLE(eta),
        HRIS_DOUBLE(rho_dbm),
        HRIS_DOUBLE(sigma_b_dbm),
        HRIS_DOUBLE(sigma_hris_dbm),
        HRIS_DOUBLE(carrier_hz),
        HRIS_DOUBLE(beta_los),
        HRIS_DOUBLE(beta_nlos),
        HRIS_DOUBLE(gamma0),
        HRIS_DOUBLE(d0),
        HRIS_DOUBLE(shadow_std_db),
        HRIS_DOUBLE(los_decay_m),
        HRIS_BOOL(shadow_reflected),
        HRIS_BOOL(hris_links_los),
        HRIS_DOUBLE(area_side),
        HRIS_DOUBLE(bs_height),
        HRIS_DOUBLE(hris_height),
        HRIS_DOUBLE(ue_height),
        HRIS_BOOL(fixed_scenario),
        HRIS_UINT(L),
        HRIS_UINT(tau_c),
        HRIS_BOOL(hris_enabled),
        HRIS_DOUBLE(target_pfa),
        HRIS_UINT(D_el),
        {"codebook",
         {[](const SimulationConfig &c) { return json(std::string(to_string(c.codebook))); },
          [](SimulationConfig &c, const json &j, const std::string &k) {
              try
              {
                  c.codebook = codebook_convention_from_string(string_from_json(j, k));
              }
              catch (const std::invalid_argument &e)
              {
                  throw ConfigError(e.what());
              }
          }}},
        HRIS_BOOL(weight_by_gain),
        {"mse_reference",
         {[](const SimulationConfig &c) { return json(std::string(to_string(c.mse_reference))); },
          [](SimulationConfig &c, const json &j, const std::string &k) {
              c.mse_reference = mse_reference_from_string(string_from_json(j, k));
          }}},
        {"C_values",
         {[](const SimulationConfig &c) { return json(c.C_values); },
          [](SimulationConfig &c, const json &j, const std::string &k) {
              if (!j.is_array())
                  throw ConfigError(k + " must be an array of non-negative integers");
              c.C_values.clear();
              for (const auto &v : j)
                  c.C_values.push_back(uint_from_json(v, k));
          }}},
        {"hardware",
         {[](const SimulationConfig &c) {
              json out = json::array();
              for (auto hw : c.hardware)
                  out.push_back(std::string(to_string(hw)));
              return out;
          },
          [](SimulationConfig &c, const json &j, const std::string &k) {
              if (!j.is_array())
                  throw ConfigError(k + " must be an array of hardware names");
              c.hardware.clear();
              for (const auto &v : j)
              {
                  try
                  {
                      c.hardware.push_back(hardware_from_string(string_from_json(v, k)));
                  }
                  catch (const std::invalid_argument &e)
                  {
                      throw ConfigError(e.what());
                  }
              }
          }}},
        HRIS_UINT(trials),
        {"seed",
         {[](const SimulationConfig &c) { return json(c.seed); },
          [](SimulationConfig &c, const json &j, const std::string &k) { c.seed = uint_from_json(j, k); }}},
        {"threads",
         {[](const SimulationConfig &c) { return json(c.threads); },
          [](SimulationConfig &c, const json &j, const std::string &k) {
              c.threads = static_cast<unsigned>(uint_from_json(j, k));
          }}},
        {"output_dir",
         {[](const SimulationConfig &c) { return json(c.output_dir); },
          [](SimulationConfig &c, const json &j, const std::string &k) { c.output_dir = string_from_json(j, k); }}},
        HRIS_BOOL(trace_channel),
    };
    return table;
}

#undef HRIS_DOUBLE
#undef HRIS_UINT
#undef HRIS_BOOL

const Field *find_field(const std::string &key)
{
    for (const auto &[name, field] : fields())
        if (name == key)
            return &field;
    return nullptr;
}

} // namespace

std::vector<std::string> config_keys()
{
    std::vector<std::string> keys;
    for (const auto &entry : fields())
        keys.push_back(entry.first);
    return keys;
}

nlohmann::ordered_json to_json(const SimulationConfig &cfg)
{
    nlohmann::ordered_json out;
    for (const auto &[name, field] : fields())
        out[name] = field.get(cfg);
    return out;
}

SimulationConfig apply_overrides(SimulationConfig base, const json &overrides)
{
    if (overrides.is_null())
    {
        base.validate();
        return base;
    }
    if (!overrides.is_object())
        throw ConfigError("configuration must be a flat JSON object");
    for (const auto &[key, value] : overrides.items())
    {
        const Field *field = find_field(key);
        if (!field)
        {
            std::ostringstream msg;
            msg << "unknown configuration key '" << key << "'; valid keys:";
            for (const auto &k : config_keys())
                msg << ' ' << k;
            throw ConfigError(msg.str());
        }
        field->set(base, value, key);
    }
    base.validate();
    return base;
}

SimulationConfig load_config(const std::filesystem::path &path, const SimulationConfig &base)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open configuration file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        return apply_overrides(base, json());

    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError("cannot parse configuration file '" + path.string() + "': " + e.what());
    }
    return apply_overrides(base, doc);
}

} // namespace hris
