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
#include "lis/harness.hpp"
#include "lis/output.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;

namespace
{
    constexpr const char *version = "1.0.0";

    enum Exit
    {
        ok = 0,
        runtime_failure = 1,
        usage_error = 2
    };

    struct RunFlags
    {
        std::string config;
        std::optional<std::uint64_t> seed;
        std::optional<int> drops;
        std::string out_dir = "out";
        std::optional<int> threads;
    };

    int resolve_threads(const std::optional<int> &flag)
    {
        if (flag)
            return *flag;
        if (const char *env = std::getenv("LIS_SIM_THREADS"))
        {
            try
            {
                const int n = std::stoi(env);
                if (n >= 1)
                    return n;
            }
            catch (const std::exception &)
            {
            }
            throw lis::ConfigError("LIS_SIM_THREADS", "must be a positive integer");
        }
        return 1;
    }

    std::string utc_timestamp()
    {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&now, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
    }

    void write_file(const fs::path &path, const std::string &text)
    {
        std::ofstream out(path, std::ios::binary);
        out << text;
        if (!out)
            throw std::runtime_error("cannot write " + path.string());
    }

    template <class F>
    std::string render(F &&f)
    {
        std::ostringstream s;
        f(s);
        return s.str();
    }

    int run_experiment(lis::ScenarioConfig config, const RunFlags &flags)
    {
        if (flags.seed)
            config.seed = *flags.seed;
        if (flags.drops)
            config.drops = *flags.drops;
        config.validate();
        lis::RunOptions options;
        options.threads = resolve_threads(flags.threads);
        if (options.threads < 1)
            throw lis::ConfigError("--threads", "must be at least 1");

        const fs::path dir(flags.out_dir);
        fs::create_directories(dir);
        std::vector<std::string> files;
        nlohmann::json summary;

        if (config.experiment == "response")
        {
            const double kappa = config.kappa();
            const auto chi = lis::response_chi_table(config.response_radii, kappa, config.response_chi_max,
                                                     config.response_chi_steps);
            const auto radius = lis::response_radius_table(config.response_chi, kappa, config.response_r_max,
                                                           config.response_r_steps);
            write_file(dir / "response_chi.csv", render([&](std::ostream &o) { lis::write_table_csv(o, chi); }));
            write_file(dir / "response_radius.csv", render([&](std::ostream &o) { lis::write_table_csv(o, radius); }));
            files = {"response_chi.csv", "response_radius.csv"};
            summary = {{"experiment", config.experiment}, {"tables", files}};
        }
        else
        {
            lis::ExperimentResult result;
            if (config.experiment == "clis")
                result = lis::run_clis_experiment(config, options);
            else if (config.experiment == "dlis")
                result = lis::run_dlis_experiment(config, options);
            else
                result = lis::run_frequency_comparison(config, options);
            for (const auto &s : result.series)
            {
                write_file(dir / lis::series_file(s), render([&](std::ostream &o) { lis::write_series_csv(o, s); }));
                files.push_back(lis::series_file(s));
            }
            summary = lis::summary_json(config, result);
            if (result.far_field_violations > 0)
                std::cerr << "warning: " << result.far_field_violations
                          << " user placements lie inside the Fraunhofer distance\n";
        }

        write_file(dir / "summary.json", summary.dump(2) + "\n");
        files.push_back("summary.json");
        files.push_back("manifest.json");
        const nlohmann::json manifest{{"artifact_version", version},
                                      {"seed", config.seed},
                                      {"timestamp", utc_timestamp()},
                                      {"config", lis::config_to_json(config)},
                                      {"outputs", files}};
        write_file(dir / "manifest.json", manifest.dump(2) + "\n");
        return ok;
    }

    void add_run_flags(CLI::App *cmd, RunFlags &flags, bool config_required)
    {
        auto *c = cmd->add_option("--config", flags.config, "Scenario JSON file");
        if (config_required)
            c->required();
        else
            c->check(CLI::ExistingFile);
        cmd->add_option("--seed", flags.seed, "Override the master seed");
        cmd->add_option("--drops", flags.drops, "Override the Monte-Carlo drop count")->check(CLI::PositiveNumber);
        cmd->add_option("--out-dir", flags.out_dir, "Output directory")->capture_default_str();
        cmd->add_option("--threads", flags.threads, "Worker threads (default: LIS_SIM_THREADS or 1)")
            ->check(CLI::PositiveNumber);
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Uplink simulator for centralized and distributed large intelligent surfaces"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);

    double r = 0.0, lambda = 0.0, chi_max = 0.0;
    int chi_steps = 201;
    std::string out = "-";
    auto *response = app.add_subcommand("response", "Table of |Sigma| against chi for one surface");
    response->add_option("--r", r, "Surface radius [m]")->required()->check(CLI::PositiveNumber);
    response->add_option("--lambda", lambda, "Wavelength [m]")->required()->check(CLI::PositiveNumber);
    response->add_option("--chi-max", chi_max, "Largest chi")->required()->check(CLI::NonNegativeNumber);
    response->add_option("--chi-steps", chi_steps, "Samples including both ends")
        ->capture_default_str()
        ->check(CLI::Range(2, 100000000));
    response->add_option("--out", out, "Output CSV path, - for standard output")->capture_default_str();

    RunFlags run_flags, clis_flags, dlis_flags, compare_flags;
    auto *run = app.add_subcommand("run", "Run the experiment named in the config");
    add_run_flags(run, run_flags, true);
    auto *clis = app.add_subcommand("clis", "C-LIS sweep (LoS, Ricean, upper bound)");
    add_run_flags(clis, clis_flags, false);
    auto *dlis = app.add_subcommand("dlis", "D-LIS algorithm combinations against C-LIS");
    add_run_flags(dlis, dlis_flags, false);
    auto *compare = app.add_subcommand("compare", "C-LIS and D-LIS across frequencies");
    add_run_flags(compare, compare_flags, false);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return usage_error;
    }

    try
    {
        if (response->parsed())
        {
            const auto table = lis::response_chi_table({r}, lis::wavenumber(lambda), chi_max, chi_steps);
            lis::Table two{{"chi", "abs_sigma"}, {}};
            for (const auto &row : table.rows)
                two.rows.push_back({row[1], row[2]});
            if (out == "-")
                lis::write_table_csv(std::cout, two);
            else
                write_file(out, render([&](std::ostream &o) { lis::write_table_csv(o, two); }));
            return ok;
        }

        auto with_experiment = [](const RunFlags &flags, const char *experiment)
        {
            lis::ScenarioConfig c = flags.config.empty() ? lis::ScenarioConfig{} : lis::load_config(flags.config);
            c.experiment = experiment;
            return c;
        };
        if (run->parsed())
            return run_experiment(lis::load_config(run_flags.config), run_flags);
        if (clis->parsed())
            return run_experiment(with_experiment(clis_flags, "clis"), clis_flags);
        if (dlis->parsed())
            return run_experiment(with_experiment(dlis_flags, "dlis"), dlis_flags);
        return run_experiment(with_experiment(compare_flags, "compare"), compare_flags);
    }
    catch (const lis::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return usage_error;
    }
    catch (const lis::DropError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return runtime_failure;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return runtime_failure;
    }
}
