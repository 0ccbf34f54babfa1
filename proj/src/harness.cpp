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

#include "lis/harness.hpp"

#include "lis/channel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numeric>
#include <thread>

namespace lis
{
    namespace
    {
        constexpr double pi = 3.14159265358979323846;
        constexpr int max_rejections = 1000;

        std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9E3779B97F4A7C15ULL;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
            return x ^ (x >> 31);
        }

        // Runs body(drop) for every drop; results are written by index, so the merge
        // order never depends on scheduling. The lowest failing drop is rethrown.
        void for_each_drop(int drops, int threads, const std::function<void(int)> &body)
        {
            std::vector<std::exception_ptr> errors(static_cast<std::size_t>(drops));
            std::atomic<int> next{0};
            auto worker = [&]
            {
                for (int d = next++; d < drops; d = next++)
                {
                    try
                    {
                        body(d);
                    }
                    catch (...)
                    {
                        errors[static_cast<std::size_t>(d)] = std::current_exception();
                    }
                }
            };
            const int n = std::clamp(threads, 1, std::max(1, drops));
            std::vector<std::thread> pool;
            for (int t = 1; t < n; ++t)
                pool.emplace_back(worker);
            worker();
            for (auto &t : pool)
                t.join();
            for (int d = 0; d < drops; ++d)
            {
                if (!errors[static_cast<std::size_t>(d)])
                    continue;
                try
                {
                    std::rethrow_exception(errors[static_cast<std::size_t>(d)]);
                }
                catch (const ConfigError &)
                {
                    throw;
                }
                catch (const DropError &)
                {
                    throw;
                }
                catch (const std::exception &e)
                {
                    throw DropError(d, e.what());
                }
            }
        }

        std::vector<User> with_budget(std::vector<User> users, const ScenarioConfig &config, const LinkBudget &budget)
        {
            const double gamma = config.ricean_factor_db ? std::pow(10.0, *config.ricean_factor_db / 10.0)
                                                         : std::numeric_limits<double>::infinity();
            for (auto &u : users)
            {
                u.power = budget.p;
                u.ricean_factor = gamma;
            }
            return users;
        }

        Surface central_surface(double radius) { return Surface{{0.0, 0.0, 0.0}, radius, 0.0}; }

        std::string format_value(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", v);
            return buf;
        }

        enum Purpose
        {
            users_stream = 0,
            units_stream = 1,
            association_stream = 2
        };
    }

    double ScenarioConfig::lambda() const { return speed_of_light / frequency; }
    double ScenarioConfig::kappa() const { return wavenumber(lambda()); }

    double ScenarioConfig::unit_radius_or_equal_area() const
    {
        return unit_radius > 0.0 ? unit_radius : R / std::sqrt(static_cast<double>(M));
    }

    LinkBudget ScenarioConfig::budget() const
    {
        // noise power spectral density in W/Hz
        return LinkBudget::from_rho_db(rho_db, std::pow(10.0, (sigma2_dbm_hz - 30.0) / 10.0));
    }

    void ScenarioConfig::validate() const
    {
        static const std::vector<std::string> experiments{"clis", "dlis", "compare", "response"};
        if (std::find(experiments.begin(), experiments.end(), experiment) == experiments.end())
            throw ConfigError("experiment", "must be one of clis, dlis, compare, response");
        if (drops < 1)
            throw ConfigError("drops", "must be at least 1");
        if (!(area_side > 0.0) || !std::isfinite(area_side))
            throw ConfigError("scene.area_side", "must be positive");
        if (!(user_height > 0.0) || !std::isfinite(user_height))
            throw ConfigError("scene.user_height", "must be positive");
        if (K < 1)
            throw ConfigError("scene.K", "must be at least 1");
        if (M < 1)
            throw ConfigError("scene.M", "must be at least 1");
        if (!(R > 0.0) || !std::isfinite(R))
            throw ConfigError("scene.R", "must be positive");
        if (!(unit_radius >= 0.0) || !std::isfinite(unit_radius))
            throw ConfigError("scene.unit_radius", "must be non-negative (0 selects the equal-area radius)");
        if (!(frequency > 0.0) || !std::isfinite(frequency))
            throw ConfigError("scene.frequency", "must be positive");
        if (!std::isfinite(rho_db))
            throw ConfigError("scene.rho_db", "must be finite");
        if (!std::isfinite(sigma2_dbm_hz))
            throw ConfigError("scene.sigma2_dbm_hz", "must be finite");
        if (ricean_factor_db && !std::isfinite(*ricean_factor_db))
            throw ConfigError("scene.ricean_factor_db", "must be finite; omit it for pure LoS");
        if ((experiment == "dlis" || experiment == "compare") && M < K)
            throw ConfigError("scene.M", "D-LIS association needs M >= K");
        if (variants.empty() && (experiment == "dlis" || experiment == "compare"))
            throw ConfigError("algorithms.variants", "needs at least one entry");
        for (std::size_t i = 0; i < variants.size(); ++i)
            if (variants[i].name.empty() || variants[i].name == "clis" ||
                variants[i].name.find_first_of("/\\ ") != std::string::npos)
                throw ConfigError("algorithms.variants[" + std::to_string(i) + "].name",
                                  "must be non-empty, not 'clis', without slashes or spaces");
        for (std::size_t i = 0; i < variants.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (variants[i].name == variants[j].name)
                    throw ConfigError("algorithms.variants[" + std::to_string(i) + "].name", "duplicate name");
        if (lua_iterations < 1)
            throw ConfigError("algorithms.lua_iterations", "must be at least 1");
        if (!(lua_rho > 0.0))
            throw ConfigError("algorithms.lua_rho", "must be positive");
        if (!(pc_eps > 0.0 && pc_eps < 1.0))
            throw ConfigError("algorithms.pc_eps", "must lie in (0, 1)");
        if (sweep_parameter != "R" && sweep_parameter != "lambda")
            throw ConfigError("sweep.parameter", "must be R or lambda");
        if (experiment == "clis" && sweep_values.empty())
            throw ConfigError("sweep.values", "needs at least one value");
        for (double v : sweep_values)
            if (!(v > 0.0) || !std::isfinite(v))
                throw ConfigError("sweep.values", "entries must be positive");
        if (experiment == "compare" && frequencies.empty())
            throw ConfigError("compare.frequencies", "needs at least one value");
        for (double f : frequencies)
            if (!(f > 0.0) || !std::isfinite(f))
                throw ConfigError("compare.frequencies", "entries must be positive");
        for (double r : response_radii)
            if (!(r > 0.0) || !std::isfinite(r))
                throw ConfigError("response.radii", "entries must be positive");
        if (!(response_chi_max >= 0.0) || !std::isfinite(response_chi_max))
            throw ConfigError("response.chi_max", "must be non-negative");
        if (response_chi_steps < 2)
            throw ConfigError("response.chi_steps", "must be at least 2");
        if (!(response_r_max > 0.0) || !std::isfinite(response_r_max))
            throw ConfigError("response.r_max", "must be positive");
        if (response_r_steps < 1)
            throw ConfigError("response.r_steps", "must be at least 1");
        if (!(response_chi >= 0.0) || !std::isfinite(response_chi))
            throw ConfigError("response.chi", "must be non-negative");
    }

    CdfSeries::CdfSeries(std::vector<double> samples) : values_(std::move(samples))
    {
        std::sort(values_.begin(), values_.end());
    }

    double CdfSeries::ordinate(std::size_t i) const
    {
        return static_cast<double>(i + 1) / static_cast<double>(values_.size());
    }

    double CdfSeries::percentile(double q) const
    {
        if (values_.empty())
            throw std::domain_error("percentile of an empty series");
        if (!(q >= 0.0 && q <= 1.0))
            throw std::invalid_argument("percentile level must lie in [0, 1]");
        const double pos = q * static_cast<double>(values_.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, values_.size() - 1);
        const double f = pos - static_cast<double>(lo);
        return values_[lo] + f * (values_[hi] - values_[lo]);
    }

    double CdfSeries::mean() const
    {
        if (values_.empty())
            throw std::domain_error("mean of an empty series");
        return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
    }

    CdfSeries Series::cdf() const
    {
        std::vector<double> all;
        for (const auto &d : per_drop)
            all.insert(all.end(), d.begin(), d.end());
        return CdfSeries(std::move(all));
    }

    double Series::mean_sum() const
    {
        if (per_drop.empty())
            throw std::domain_error("mean of an empty series");
        double s = 0.0;
        for (const auto &d : per_drop)
            s += std::accumulate(d.begin(), d.end(), 0.0);
        return s / static_cast<double>(per_drop.size());
    }

    const Series &ExperimentResult::find(const std::string &name) const
    {
        for (const auto &s : series)
            if (s.name == name)
                return s;
        throw std::out_of_range("no series named " + name);
    }

    std::mt19937_64 drop_stream(std::uint64_t seed, int drop, int purpose)
    {
        const std::uint64_t a = splitmix64(seed);
        const std::uint64_t b = splitmix64(a ^ (static_cast<std::uint64_t>(drop) * 0x100000001B3ULL));
        std::seed_seq seq{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                          static_cast<std::uint32_t>(purpose)};
        return std::mt19937_64(seq);
    }

    std::vector<User> drop_users(const ScenarioConfig &config, std::mt19937_64 &rng,
                                 const std::vector<Surface> &surfaces, double lambda, int *violations)
    {
        const double half = 0.5 * config.area_side;
        std::uniform_real_distribution<double> xy(-half, half), phase(-pi, pi);
        const bool check = !surfaces.empty() && lambda > 0.0 && config.far_field != FarFieldPolicy::ignore;
        std::vector<User> users;
        users.reserve(static_cast<std::size_t>(config.K));
        for (int k = 0; k < config.K; ++k)
        {
            User u;
            for (int attempt = 0;; ++attempt)
            {
                u.position = {xy(rng), xy(rng), config.user_height};
                u.phase = phase(rng);
                const bool far = !check || std::all_of(surfaces.begin(), surfaces.end(), [&](const Surface &s)
                                                       { return check_far_field(u, s, lambda); });
                if (far)
                    break;
                if (config.far_field == FarFieldPolicy::warn)
                {
                    if (violations)
                        ++*violations;
                    break;
                }
                if (attempt + 1 >= max_rejections)
                    throw ConfigError("scene", "no far-field user position found after " +
                                                   std::to_string(max_rejections) +
                                                   " draws; shrink the surfaces, raise the frequency or use "
                                                   "far_field = warn");
            }
            users.push_back(u);
        }
        return users;
    }

    std::vector<Surface> drop_units(const ScenarioConfig &config, std::mt19937_64 &rng, double radius)
    {
        const double half = 0.5 * config.area_side;
        std::uniform_real_distribution<double> xy(-half, half);
        std::vector<Surface> units;
        for (int m = 0; m < config.M; ++m)
        {
            const double x = xy(rng), y = xy(rng);
            units.push_back(Surface{{x, y, 0.0}, radius, 0.0});
        }
        return units;
    }

    std::vector<double> dlis_user_se(const DlisVariant &variant, const std::vector<User> &users,
                                     const std::vector<Surface> &units, double kappa, const LinkBudget &budget,
                                     const ScenarioConfig &config, std::mt19937_64 &rng,
                                     const Assignment *lua_assignment)
    {
        Assignment a;
        switch (variant.association)
        {
        case Association::lua:
            if (lua_assignment)
                a = *lua_assignment;
            else
            {
                LuaOptions opt;
                opt.objective = config.lua_objective;
                opt.max_iter = config.lua_iterations;
                opt.rho = config.lua_rho;
                a = lua(path_loss_matrix(users, units, kappa), opt).selection.to_assignment();
            }
            break;
        case Association::nearest:
            a = nearest_assignment(path_loss_matrix(users, units, kappa));
            break;
        case Association::random:
            a = random_assignment(static_cast<int>(users.size()), static_cast<int>(units.size()), rng);
            break;
        }

        std::vector<Surface> oriented = units;
        std::vector<double> tau(users.size(), 1.0);
        auto orient = [&]
        {
            if (variant.oc)
                oriented = with_orientations(units, orientation_control(a, users, units, kappa));
        };
        auto control = [&]
        {
            if (variant.pc)
                tau = max_min_power_control(a, users, oriented, kappa, budget, config.pc_eps).tau;
        };
        if (variant.order == Order::oc_pc)
            orient(), control();
        else
            control(), orient();

        std::vector<double> se(users.size());
        for (std::size_t k = 0; k < users.size(); ++k)
            se[k] = std::log2(1.0 + sinr_with_power_control(k, a, users, oriented, kappa, budget, tau));
        return se;
    }

    ExperimentResult run_clis_experiment(const ScenarioConfig &config, const RunOptions &options)
    {
        config.validate();
        const LinkBudget budget = config.budget();
        const bool ricean = config.ricean_factor_db.has_value();
        const std::size_t V = config.sweep_values.size();
        const std::size_t curves = ricean ? 3 : 2;
        const std::string param = config.sweep_parameter;

        ExperimentResult out;
        for (std::size_t v = 0; v < V; ++v)
        {
            out.series.push_back({series_name("los_" + param, config.sweep_values[v]), {}});
            out.series.push_back({series_name("upper_" + param, config.sweep_values[v]), {}});
            if (ricean)
                out.series.push_back({series_name("ricean_" + param, config.sweep_values[v]), {}});
        }
        for (auto &s : out.series)
            s.per_drop.resize(static_cast<std::size_t>(config.drops));

        // The far-field check uses the strictest point of the sweep so that every sweep
        // value sees the same users.
        double check_radius = config.R, check_lambda = config.lambda();
        if (param == "R")
            check_radius = *std::max_element(config.sweep_values.begin(), config.sweep_values.end());
        else
            check_lambda = *std::min_element(config.sweep_values.begin(), config.sweep_values.end());

        std::vector<int> violations(static_cast<std::size_t>(config.drops), 0);
        for_each_drop(config.drops, options.threads, [&](int d)
                      {
            auto rng = drop_stream(config.seed, d, users_stream);
            const auto users = with_budget(drop_users(config, rng, {central_surface(check_radius)}, check_lambda,
                                                      &violations[static_cast<std::size_t>(d)]),
                                           config, budget);
            for (std::size_t v = 0; v < V; ++v)
            {
                const double value = config.sweep_values[v];
                const Surface surface = central_surface(param == "R" ? value : config.R);
                const double kappa = param == "R" ? config.kappa() : wavenumber(value);
                auto &base = out.series;
                base[v * curves + 0].per_drop[static_cast<std::size_t>(d)] = se_clis_all(users, surface, kappa, budget).per_user;
                base[v * curves + 1].per_drop[static_cast<std::size_t>(d)] = se_upper_bound_all(users, surface, kappa, budget).per_user;
                if (ricean)
                    base[v * curves + 2].per_drop[static_cast<std::size_t>(d)] = se_ricean_all(users, surface, kappa, budget).per_user;
            } });
        out.far_field_violations = std::accumulate(violations.begin(), violations.end(), 0);
        return out;
    }

    ExperimentResult run_dlis_experiment(const ScenarioConfig &config, const RunOptions &options)
    {
        config.validate();
        if (config.M < config.K)
            throw ConfigError("scene.M", "D-LIS association needs M >= K");
        const LinkBudget budget = config.budget();
        const double kappa = config.kappa(), lambda = config.lambda(), Rd = config.unit_radius_or_equal_area();

        ExperimentResult out;
        for (const auto &v : config.variants)
            out.series.push_back({v.name, {}});
        if (config.include_clis)
            out.series.push_back({"clis", {}});
        for (auto &s : out.series)
            s.per_drop.resize(static_cast<std::size_t>(config.drops));

        const bool any_lua = std::any_of(config.variants.begin(), config.variants.end(),
                                         [](const DlisVariant &v) { return v.association == Association::lua; });
        std::vector<int> violations(static_cast<std::size_t>(config.drops), 0);
        for_each_drop(config.drops, options.threads, [&](int d)
                      {
            auto unit_rng = drop_stream(config.seed, d, units_stream);
            const auto units = drop_units(config, unit_rng, Rd);
            std::vector<Surface> checked = units;
            if (config.include_clis)
                checked.push_back(central_surface(config.R));
            auto user_rng = drop_stream(config.seed, d, users_stream);
            const auto users = with_budget(drop_users(config, user_rng, checked, lambda, &violations[static_cast<std::size_t>(d)]),
                                           config, budget);

            Assignment lua_a;
            if (any_lua)
            {
                LuaOptions opt;
                opt.objective = config.lua_objective;
                opt.max_iter = config.lua_iterations;
                opt.rho = config.lua_rho;
                lua_a = lua(path_loss_matrix(users, units, kappa), opt).selection.to_assignment();
            }
            for (std::size_t i = 0; i < config.variants.size(); ++i)
            {
                auto rng = drop_stream(config.seed, d, association_stream);
                out.series[i].per_drop[static_cast<std::size_t>(d)] =
                    dlis_user_se(config.variants[i], users, units, kappa, budget, config, rng, any_lua ? &lua_a : nullptr);
            }
            if (config.include_clis)
                out.series.back().per_drop[static_cast<std::size_t>(d)] =
                    se_clis_all(users, central_surface(config.R), kappa, budget).per_user; });
        out.far_field_violations = std::accumulate(violations.begin(), violations.end(), 0);
        return out;
    }

    ExperimentResult run_frequency_comparison(const ScenarioConfig &config, const RunOptions &options)
    {
        config.validate();
        if (config.M < config.K)
            throw ConfigError("scene.M", "D-LIS association needs M >= K");
        const LinkBudget budget = config.budget();
        const double Rd = config.unit_radius_or_equal_area();
        const DlisVariant &variant = config.variants.front();
        // strictest far-field distance, so all frequencies share one geometry
        const double check_lambda = speed_of_light / *std::max_element(config.frequencies.begin(), config.frequencies.end());

        ExperimentResult out;
        for (double f : config.frequencies)
        {
            out.series.push_back({series_name("clis_", f / 1e9) + "GHz", {}});
            out.series.push_back({series_name("dlis_", f / 1e9) + "GHz", {}});
        }
        for (auto &s : out.series)
            s.per_drop.resize(static_cast<std::size_t>(config.drops));

        std::vector<int> violations(static_cast<std::size_t>(config.drops), 0);
        for_each_drop(config.drops, options.threads, [&](int d)
                      {
            auto unit_rng = drop_stream(config.seed, d, units_stream);
            const auto units = drop_units(config, unit_rng, Rd);
            std::vector<Surface> checked = units;
            checked.push_back(central_surface(config.R));
            auto user_rng = drop_stream(config.seed, d, users_stream);
            const auto users = with_budget(drop_users(config, user_rng, checked, check_lambda, &violations[static_cast<std::size_t>(d)]),
                                           config, budget);
            for (std::size_t i = 0; i < config.frequencies.size(); ++i)
            {
                const double kappa = wavenumber(speed_of_light / config.frequencies[i]);
                out.series[2 * i].per_drop[static_cast<std::size_t>(d)] =
                    se_clis_all(users, central_surface(config.R), kappa, budget).per_user;
                auto rng = drop_stream(config.seed, d, association_stream);
                out.series[2 * i + 1].per_drop[static_cast<std::size_t>(d)] =
                    dlis_user_se(variant, users, units, kappa, budget, config, rng);
            } });
        out.far_field_violations = std::accumulate(violations.begin(), violations.end(), 0);
        return out;
    }

    Table response_chi_table(const std::vector<double> &radii, double kappa, double chi_max, int steps)
    {
        if (radii.empty() || !(kappa > 0.0) || !(chi_max >= 0.0) || steps < 2)
            throw std::invalid_argument("response table needs radii, kappa > 0, chi_max >= 0 and steps >= 2");
        Table t{{"R", "chi", "abs_sigma"}, {}};
        for (double R : radii)
            for (int i = 0; i < steps; ++i)
            {
                const double chi = chi_max * i / (steps - 1);
                t.rows.push_back({R, chi, std::abs(lis_response(R, kappa, chi).value)});
            }
        return t;
    }

    Table response_radius_table(double chi, double kappa, double r_max, int steps)
    {
        if (!(chi >= 0.0) || !(kappa > 0.0) || !(r_max > 0.0) || steps < 1)
            throw std::invalid_argument("response table needs chi >= 0, kappa > 0, r_max > 0 and steps >= 1");
        Table t{{"R", "normalized_response"}, {}};
        for (int i = 1; i <= steps; ++i)
        {
            const double R = r_max * i / steps;
            t.rows.push_back({R, normalized_response(R, kappa, chi)});
        }
        return t;
    }

    std::string series_name(const std::string &prefix, double value) { return prefix + format_value(value); }
}
