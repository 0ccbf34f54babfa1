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

#include "lis/harness.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace lis
{
    /// Round-trippable decimal (%.17g).
    std::string format_number(double v);

    /// Columns drop,user,se; one row per user sample; LF line endings.
    void write_series_csv(std::ostream &out, const Series &series);

    void write_table_csv(std::ostream &out, const Table &table);

    /// Reads a file written by write_series_csv back into a Series with the given name.
    Series read_series_csv(std::istream &in, const std::string &name);

    struct SeriesSummary
    {
        double mean = 0.0;     // mean per-user SE
        double sum_mean = 0.0; // mean per-drop sum SE
        double median = 0.0;
        double likely95 = 0.0; // 5th percentile
        std::size_t samples = 0;

        static SeriesSummary of(const Series &series);
    };

    /// {experiment, seed, drops, far_field_violations, series: [{name, file, samples, mean, sum_mean, median, likely95}]}
    nlohmann::json summary_json(const ScenarioConfig &config, const ExperimentResult &result);

    /// File name used for a series, e.g. "lua.csv".
    std::string series_file(const Series &series);
}
