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

#include <limits>
#include <vector>

namespace lis::lp
{
    enum class RowType
    {
        less_equal,
        equal,
        greater_equal
    };

    enum class Status
    {
        optimal,
        infeasible,
        unbounded
    };

    /// maximize c'x  s.t.  rows[i] x (<=, =, >=) rhs[i],  lower <= x <= upper.
    /// Lower bounds must be finite; upper bounds may be +infinity.
    struct Problem
    {
        std::vector<double> objective;
        std::vector<double> lower, upper; // empty means 0 and +infinity
        std::vector<std::vector<double>> rows;
        std::vector<RowType> types;
        std::vector<double> rhs;

        std::size_t add_row(std::vector<double> coeffs, RowType type, double value);
    };

    struct Result
    {
        Status status = Status::infeasible;
        std::vector<double> x;
        double objective = 0.0;
        int iterations = 0;
    };

    struct Options
    {
        double tolerance = 1e-9;   // feasibility and optimality
        int max_iterations = 50000;
        int bland_after = 200;     // consecutive degenerate pivots before switching to Bland's rule
    };

    constexpr double infinity = std::numeric_limits<double>::infinity();

    /// Dense bounded-variable primal simplex (two phases).
    Result lp_solve(const Problem &problem, const Options &options = {});
}
