// SPDX-License-Identifier: Apache-2.0
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

#include "lis/config.hpp"

#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

namespace lis
{
    using nlohmann::json;

    namespace
    {
        std::string join(const std::string &path, const std::string &key) { return path.empty() ? key : path + "." + key; }

        void only_keys(const json &j, const std::string &path, std::initializer_list<const char *> keys)
        {
            if (!j.is_object())
                throw ConfigError(path, "expected an object");
            for (const auto &item : j.items())
            {
                bool known = false;
                for (const char *k : keys)
                    known = known || item.key() == k;
                if (!known)
                    throw ConfigError(join(path, item.key()), "unknown key");
            }
        }

        void read(const json &j, const std::string &path, const char *key, double &out)
        {
            if (!j.contains(key))
                return;
            const json &v = j.at(key);
            if (!v.is_number())
                throw ConfigError(join(path, key), "expected a number");
            out = v.get<double>();
        }

        void read(const json &j, const std::string &path, const char *key, int &out)
        {
            if (!j.contains(key))
                return;
            const json &v = j.at(key);
            if (!v.is_number_integer())
                throw ConfigError(join(path, key), "expected an integer");
            const auto x = v.get<long long>();
            if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
                throw ConfigError(join(path, key), "integer out of range");
            out = static_cast<int>(x);
        }

        void read(const json &j, const std::string &path, const char *key, bool &out)
        {
            if (!j.contains(key))
                return;
            if (!j.at(key).is_boolean())
                throw ConfigError(join(path, key), "expected true or false");
            out = j.at(key).get<bool>();
        }

        void read(const json &j, const std::string &path, const char *key, std::string &out)
        {
            if (!j.contains(key))
                return;
            if (!j.at(key).is_string())
                throw ConfigError(join(path, key), "expected a string");
            out = j.at(key).get<std::string>();
        }

        void read(const json &j, const std::string &path, const char *key, std::vector<double> &out)
        {
            if (!j.contains(key))
                return;
            const json &v = j.at(key);
            if (!v.is_array())
                throw ConfigError(join(path, key), "expected an array of numbers");
            out.clear();
            for (const auto &x : v)
            {
                if (!x.is_number())
                    throw ConfigError(join(path, key), "expected an array of numbers");
                out.push_back(x.get<double>());
            }
        }

        template <class E>
        E parse_enum(const std::string &field, const std::string &text,
                     std::initializer_list<std::pair<const char *, E>> names)
        {
            std::string allowed;
            for (const auto &[name, value] : names)
            {
                if (text == name)
                    return value;
                allowed += allowed.empty() ? name : std::string(", ") + name;
            }
            throw ConfigError(field, "must be one of " + allowed);
        }

        const char *to_string(FarFieldPolicy p)
        {
            return p == FarFieldPolicy::resample ? "resample" : p == FarFieldPolicy::warn ? "warn" : "ignore";
        }
        const char *to_string(Association a)
        {
            return a == Association::lua ? "lua" : a == Association::nearest ? "nearest" : "random";
        }
        const char *to_string(Order o) { return o == Order::oc_pc ? "oc-pc" : "pc-oc"; }
        const char *to_string(LuaObjective o) { return o == LuaObjective::sum ? "sum" : "max-min"; }

        DlisVariant variant_from_json(const json &j, const std::string &path)
        {
            only_keys(j, path, {"name", "association", "oc", "pc", "order"});
            DlisVariant v;
            read(j, path, "name", v.name);
            std::string text = to_string(v.association);
            read(j, path, "association", text);
            v.association = parse_enum<Association>(join(path, "association"), text,
                                                    {{"lua", Association::lua},
                                                     {"nearest", Association::nearest},
                                                     {"random", Association::random}});
            read(j, path, "oc", v.oc);
            read(j, path, "pc", v.pc);
            text = to_string(v.order);
            read(j, path, "order", text);
            v.order = parse_enum<Order>(join(path, "order"), text, {{"oc-pc", Order::oc_pc}, {"pc-oc", Order::pc_oc}});
            return v;
        }
    }

    ScenarioConfig config_from_json(const json &j)
    {
        ScenarioConfig c;
        only_keys(j, "", {"experiment", "seed", "drops", "scene", "algorithms", "sweep", "compare", "response"});
        read(j, "", "experiment", c.experiment);
        if (j.contains("seed"))
        {
            const json &s = j.at("seed");
            if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<long long>() < 0))
                throw ConfigError("seed", "expected a non-negative integer");
            c.seed = s.get<std::uint64_t>();
        }
        read(j, "", "drops", c.drops);

        if (j.contains("scene"))
        {
            const json &s = j.at("scene");
            only_keys(s, "scene", {"area_side", "user_height", "K", "M", "R", "unit_radius", "frequency", "rho_db",
                                   "sigma2_dbm_hz", "ricean_factor_db", "far_field"});
            read(s, "scene", "area_side", c.area_side);
            read(s, "scene", "user_height", c.user_height);
            read(s, "scene", "K", c.K);
            read(s, "scene", "M", c.M);
            read(s, "scene", "R", c.R);
            read(s, "scene", "unit_radius", c.unit_radius);
            read(s, "scene", "frequency", c.frequency);
            read(s, "scene", "rho_db", c.rho_db);
            read(s, "scene", "sigma2_dbm_hz", c.sigma2_dbm_hz);
            if (s.contains("ricean_factor_db") && !s.at("ricean_factor_db").is_null())
            {
                double g = 0.0;
                read(s, "scene", "ricean_factor_db", g);
                c.ricean_factor_db = g;
            }
            std::string policy = to_string(c.far_field);
            read(s, "scene", "far_field", policy);
            c.far_field = parse_enum<FarFieldPolicy>("scene.far_field", policy,
                                                     {{"resample", FarFieldPolicy::resample},
                                                      {"warn", FarFieldPolicy::warn},
                                                      {"ignore", FarFieldPolicy::ignore}});
        }

        if (j.contains("algorithms"))
        {
            const json &a = j.at("algorithms");
            only_keys(a, "algorithms", {"variants", "include_clis", "lua_objective", "lua_iterations", "lua_rho", "pc_eps"});
            if (a.contains("variants"))
            {
                const json &vs = a.at("variants");
                if (!vs.is_array())
                    throw ConfigError("algorithms.variants", "expected an array of objects");
                c.variants.clear();
                for (std::size_t i = 0; i < vs.size(); ++i)
                    c.variants.push_back(variant_from_json(vs[i], "algorithms.variants[" + std::to_string(i) + "]"));
            }
            read(a, "algorithms", "include_clis", c.include_clis);
            std::string objective = to_string(c.lua_objective);
            read(a, "algorithms", "lua_objective", objective);
            c.lua_objective = parse_enum<LuaObjective>("algorithms.lua_objective", objective,
                                                       {{"sum", LuaObjective::sum}, {"max-min", LuaObjective::max_min}});
            read(a, "algorithms", "lua_iterations", c.lua_iterations);
            read(a, "algorithms", "lua_rho", c.lua_rho);
            read(a, "algorithms", "pc_eps", c.pc_eps);
        }

        if (j.contains("sweep"))
        {
            const json &s = j.at("sweep");
            only_keys(s, "sweep", {"parameter", "values"});
            read(s, "sweep", "parameter", c.sweep_parameter);
            read(s, "sweep", "values", c.sweep_values);
        }

        if (j.contains("compare"))
        {
            const json &s = j.at("compare");
            only_keys(s, "compare", {"frequencies"});
            read(s, "compare", "frequencies", c.frequencies);
        }

        if (j.contains("response"))
        {
            const json &r = j.at("response");
            only_keys(r, "response", {"radii", "chi_max", "chi_steps", "r_max", "r_steps", "chi"});
            read(r, "response", "radii", c.response_radii);
            read(r, "response", "chi_max", c.response_chi_max);
            read(r, "response", "chi_steps", c.response_chi_steps);
            read(r, "response", "r_max", c.response_r_max);
            read(r, "response", "r_steps", c.response_r_steps);
            read(r, "response", "chi", c.response_chi);
        }

        c.validate();
        return c;
    }

    json config_to_json(const ScenarioConfig &c)
    {
        json variants = json::array();
        for (const auto &v : c.variants)
            variants.push_back({{"name", v.name},
                                {"association", to_string(v.association)},
                                {"oc", v.oc},
                                {"pc", v.pc},
                                {"order", to_string(v.order)}});
        json j;
        j["experiment"] = c.experiment;
        j["seed"] = c.seed;
        j["drops"] = c.drops;
        j["scene"] = {{"area_side", c.area_side},
                      {"user_height", c.user_height},
                      {"K", c.K},
                      {"M", c.M},
                      {"R", c.R},
                      {"unit_radius", c.unit_radius},
                      {"frequency", c.frequency},
                      {"rho_db", c.rho_db},
                      {"sigma2_dbm_hz", c.sigma2_dbm_hz},
                      {"ricean_factor_db", c.ricean_factor_db ? json(*c.ricean_factor_db) : json(nullptr)},
                      {"far_field", to_string(c.far_field)}};
        j["algorithms"] = {{"variants", variants},
                           {"include_clis", c.include_clis},
                           {"lua_objective", to_string(c.lua_objective)},
                           {"lua_iterations", c.lua_iterations},
                           {"lua_rho", c.lua_rho},
                           {"pc_eps", c.pc_eps}};
        j["sweep"] = {{"parameter", c.sweep_parameter}, {"values", c.sweep_values}};
        j["compare"] = {{"frequencies", c.frequencies}};
        j["response"] = {{"radii", c.response_radii},
                         {"chi_max", c.response_chi_max},
                         {"chi_steps", c.response_chi_steps},
                         {"r_max", c.response_r_max},
                         {"r_steps", c.response_r_steps},
                         {"chi", c.response_chi}};
        return j;
    }

    ScenarioConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("", "cannot read config file '" + path + "'");
        json j;
        try
        {
            j = json::parse(in);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError("", "'" + path + "' is not valid JSON: " + e.what());
        }
        return config_from_json(j);
    }
}
