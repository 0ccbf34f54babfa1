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

#include "lis/scene.hpp"
#include "lis/se.hpp"

#include <vector>

namespace lis
{
    /// Lattice kappa_min + i delta_kappa (i = 0..I, last point clamped to kappa_max)
    /// times theta = -pi + l delta_theta (l = 0..L-1).
    struct SearchGrid
    {
        double kappa_min = 0.0, kappa_max = 0.0; // [rad/m]
        double delta_kappa = 1.0;                // [rad/m]
        double delta_theta = 0.0;                // [rad]

        int kappa_count() const;
        int theta_count() const;
        double kappa_at(int i) const;
        double theta_at(int l) const;

        /// Band split into `steps` intervals with 0.5 degree orientation steps.
        static SearchGrid from_band(double kappa_min, double kappa_max, int steps = 64);
    };

    struct ClisOptimum
    {
        double kappa = 0.0;
        double theta = 0.0;
        SeReport report; // per-user C-LIS SE at the optimum
    };

    /// Sum of C-LIS SE over all users at one (kappa, orientation), each B~ evaluated once per pair.
    double sum_se_clis(const std::vector<User> &users, const Surface &surface, double kappa,
                       const LinkBudget &budget);

    /// Exhaustive search of the kappa x theta lattice. Ties go to the smaller theta, then
    /// the smaller kappa. `threads` <= 1 runs serially; the result does not depend on it.
    ClisOptimum maximize_sum_se_full(const std::vector<User> &users, const Surface &surface, const SearchGrid &grid,
                                     const LinkBudget &budget, int threads = 1);

    /// Orientation-only search at fixed kappa.
    ClisOptimum maximize_sum_se_theta(const std::vector<User> &users, const Surface &surface, double kappa,
                                      double delta_theta, const LinkBudget &budget, int threads = 1);
}
