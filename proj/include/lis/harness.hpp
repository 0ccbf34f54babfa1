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

#pragma once

#include "lis/dlis.hpp"
#include "lis/scene.hpp"
#include "lis/se.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace lis
{
    /// Invalid or inconsistent scenario settings. `field` names the offending key.
    class ConfigError : public std::runtime_error
    {
      public:
        ConfigError(std::string field, const std::string &what)
            : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
        const std::string &field() const { return field_; }

      private:
        std::string field_;
    };

    /// Numeric failure inside one Monte-Carlo drop.
    class DropError : public std::runtime_error
    {
      public:
        DropError(int drop, const std::string &what)
            : std::runtime_error("drop " + std::to_string(drop) + ": " + what), drop_(drop) {}
        int drop() const { return drop_; }

      private:
        int drop_;
    };

    enum class FarFieldPolicy
    {
        resample, // redraw offending users
        warn,     // keep them and count the violations
        ignore
    };

    enum class Association
    {
        lua,
        nearest,
        random
    };

    enum class Order
    {
        oc_pc,
        pc_oc
    };

    /// One D-LIS algorithm combination.
    struct DlisVariant
    {
        std::string name = "dlis";
        Association association = Association::lua;
        bool oc = true;
        bool pc = true;
        Order order = Order::oc_pc;

        friend bool operator==(const DlisVariant &, const DlisVariant &) = default;
    };

    struct ScenarioConfig
    {
        std::string experiment = "dlis"; // clis | dlis | compare | response
        std::uint64_t seed = 1;
        int drops = 100;

        // scene
        double area_side = 1000.0;  // [m]
        double user_height = 25.0;  // [m]
        int K = 5;
        int M = 20;
        double R = 5.0;             // C-LIS radius [m]
        double unit_radius = 0.0;   // D-LIS unit radius [m]; 0 selects R / sqrt(M)
        double frequency = 2e9;     // [Hz]
        double rho_db = 110.0;      // p / sigma^2
        double sigma2_dbm_hz = -174.0;
        std::optional<double> ricean_factor_db; // unset: pure LoS
        FarFieldPolicy far_field = FarFieldPolicy::resample;

        // D-LIS
        std::vector<DlisVariant> variants{DlisVariant{}};
        bool include_clis = true;
        LuaObjective lua_objective = LuaObjective::sum;
        int lua_iterations = 20;
        double lua_rho = 1e-4;
        double pc_eps = 1e-4;

        // C-LIS sweep
        std::string sweep_parameter = "R"; // R | lambda
        std::vector<double> sweep_values{1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0};

        // frequency comparison
        std::vector<double> frequencies{2e9, 50e9};

        // response tables
        std::vector<double> response_radii{1.0, 2.0, 5.0};
        double response_chi_max = 0.2;
        int response_chi_steps = 201;
        double response_r_max = 10.0;
        int response_r_steps = 200;
        double response_chi = 0.05;

        double lambda() const;
        double kappa() const;
        double unit_radius_or_equal_area() const;
        LinkBudget budget() const;

        /// Throws ConfigError naming the first offending field.
        void validate() const;

        friend bool operator==(const ScenarioConfig &, const ScenarioConfig &) = default;
    };

    inline constexpr double speed_of_light = 299792458.0;

    /// Sorted samples with empirical CDF ordinates i / n.
    class CdfSeries
    {
      public:
        CdfSeries() = default;
        explicit CdfSeries(std::vector<double> samples);

        const std::vector<double> &values() const { return values_; }
        std::size_t size() const { return values_.size(); }
        double ordinate(std::size_t i) const;

        /// Linear interpolation at position q (n - 1) of the sorted samples.
        double percentile(double q) const;
        double median() const { return percentile(0.5); }
        /// 5th percentile.
        double likely95() const { return percentile(0.05); }
        double mean() const;

      private:
        std::vector<double> values_;
    };

    /// Per-user SE samples of one curve, indexed [drop][user].
    struct Series
    {
        std::string name;
        std::vector<std::vector<double>> per_drop;

        CdfSeries cdf() const;
        double mean_sum() const; // mean over drops of the per-drop sum
    };

    struct ExperimentResult
    {
        std::vector<Series> series;
        int far_field_violations = 0;

        const Series &find(const std::string &name) const;
    };

    struct RunOptions
    {
        int threads = 1;
    };

    /// Independent generator for one drop and purpose, derived from the master seed.
    std::mt19937_64 drop_stream(std::uint64_t seed, int drop, int purpose);

    /// K users uniform over the square at the configured height. Users violating the
    /// far-field distance to any of `surfaces` are handled per the config policy.
    /// `violations` counts kept violators under FarFieldPolicy::warn.
    std::vector<User> drop_users(const ScenarioConfig &config, std::mt19937_64 &rng,
                                 const std::vector<Surface> &surfaces = {}, double lambda = 0.0,
                                 int *violations = nullptr);

    /// M unit centers uniform over the square on the z = 0 plane.
    std::vector<Surface> drop_units(const ScenarioConfig &config, std::mt19937_64 &rng, double radius);

    /// Per-user D-LIS SE for one variant on a fixed drop.
    std::vector<double> dlis_user_se(const DlisVariant &variant, const std::vector<User> &users,
                                     const std::vector<Surface> &units, double kappa, const LinkBudget &budget,
                                     const ScenarioConfig &config, std::mt19937_64 &rng,
                                     const Assignment *lua_assignment = nullptr);

    /// LoS, upper-bound and (if configured) Ricean per-user SE over the sweep values.
    /// Series names: los_<param><value>, upper_<param><value>, ricean_<param><value>.
    ExperimentResult run_clis_experiment(const ScenarioConfig &config, const RunOptions &options = {});

    /// One series per variant, plus "clis" when include_clis is set.
    ExperimentResult run_dlis_experiment(const ScenarioConfig &config, const RunOptions &options = {});

    /// clis_<f>GHz and dlis_<f>GHz for every configured frequency on shared user drops.
    ExperimentResult run_frequency_comparison(const ScenarioConfig &config, const RunOptions &options = {});

    struct Table
    {
        std::vector<std::string> columns;
        std::vector<std::vector<double>> rows;
    };

    /// |Sigma| against chi for every radius (columns R, chi, abs_sigma).
    Table response_chi_table(const std::vector<double> &radii, double kappa, double chi_max, int steps);

    /// Normalized response against R at a fixed chi (columns R, normalized_response).
    Table response_radius_table(double chi, double kappa, double r_max, int steps);

    /// Series name with a compact value suffix, e.g. suffix("los_R", 5) == "los_R5".
    std::string series_name(const std::string &prefix, double value);
}
