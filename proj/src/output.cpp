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

#include "lis/output.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lis
{
    std::string format_number(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    void write_series_csv(std::ostream &out, const Series &series)
    {
        out << "drop,user,se\n";
        for (std::size_t d = 0; d < series.per_drop.size(); ++d)
            for (std::size_t k = 0; k < series.per_drop[d].size(); ++k)
                out << d << ',' << k << ',' << format_number(series.per_drop[d][k]) << '\n';
    }

    void write_table_csv(std::ostream &out, const Table &table)
    {
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            out << (c ? "," : "") << table.columns[c];
        out << '\n';
        for (const auto &row : table.rows)
        {
            for (std::size_t c = 0; c < row.size(); ++c)
                out << (c ? "," : "") << format_number(row[c]);
            out << '\n';
        }
    }

    Series read_series_csv(std::istream &in, const std::string &name)
    {
        Series s{name, {}};
        std::string line;
        if (!std::getline(in, line) || line != "drop,user,se")
            throw std::runtime_error("series CSV header must be drop,user,se");
        while (std::getline(in, line))
        {
            std::istringstream row(line);
            std::string drop, user, se;
            if (!std::getline(row, drop, ',') || !std::getline(row, user, ',') || !std::getline(row, se))
                throw std::runtime_error("malformed series CSV row: " + line);
            const std::size_t d = std::stoul(drop), k = std::stoul(user);
            if (d >= s.per_drop.size())
                s.per_drop.resize(d + 1);
            if (k != s.per_drop[d].size())
                throw std::runtime_error("series CSV rows out of order: " + line);
            s.per_drop[d].push_back(std::stod(se));
        }
        return s;
    }

    SeriesSummary SeriesSummary::of(const Series &series)
    {
        const CdfSeries cdf = series.cdf();
        SeriesSummary out;
        out.samples = cdf.size();
        out.mean = cdf.mean();
        out.sum_mean = series.mean_sum();
        out.median = cdf.median();
        out.likely95 = cdf.likely95();
        return out;
    }

    std::string series_file(const Series &series) { return series.name + ".csv"; }

    nlohmann::json summary_json(const ScenarioConfig &config, const ExperimentResult &result)
    {
        nlohmann::json j;
        j["experiment"] = config.experiment;
        j["seed"] = config.seed;
        j["drops"] = config.drops;
        j["far_field_violations"] = result.far_field_violations;
        j["series"] = nlohmann::json::array();
        for (const auto &s : result.series)
        {
            const auto m = SeriesSummary::of(s);
            j["series"].push_back({{"name", s.name},
                                   {"file", series_file(s)},
                                   {"samples", m.samples},
                                   {"mean", m.mean},
                                   {"sum_mean", m.sum_mean},
                                   {"median", m.median},
                                   {"likely95", m.likely95}});
        }
        return j;
    }
}
