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

#include <cstddef>
#include <vector>

namespace lis
{
    /// Transmit power and receiver noise. The SE formulas read p_k from User::power;
    /// `p` is the nominal value the harness assigns to every user.
    struct LinkBudget
    {
        double p = 1.0;      // [W]
        double sigma2 = 1.0; // noise variance after matched filtering

        double rho() const { return p / sigma2; }

        /// Budget with the given noise variance and p = sigma2 * 10^(rho_db / 10).
        static LinkBudget from_rho_db(double rho_db, double sigma2);
    };

    /// Per-user spectral efficiencies [bits/s/Hz] with their sum and minimum.
    struct SeReport
    {
        std::vector<double> per_user;
        double sum = 0.0;
        double min = 0.0;

        static SeReport from(std::vector<double> per_user);
    };

    /// Injective map from user k to the index of the LIS-unit serving it.
    struct Assignment
    {
        std::vector<int> unit_of;

        std::size_t size() const { return unit_of.size(); }
    };

    /// SE from the effective channels Sigma_{kk'} directly.
    double se_general(std::size_t k, const std::vector<User> &users, const Surface &surface, double kappa,
                      const LinkBudget &budget);

    /// C-LIS SE written with the normalized response B~.
    double se_clis(std::size_t k, const std::vector<User> &users, const Surface &surface, double kappa,
                   const LinkBudget &budget);

    /// Interference-free bound log2(1 + p_k pi R^2 PL_k / sigma^2).
    double se_upper_bound(std::size_t k, const std::vector<User> &users, const Surface &surface, double kappa,
                          const LinkBudget &budget);

    /// Closed-form Ricean approximation. Every user needs a finite Ricean factor.
    double se_ricean(std::size_t k, const std::vector<User> &users, const Surface &surface, double kappa,
                     const LinkBudget &budget);

    /// SE of user k at the LIS-unit `unit`, all other users interfering.
    double se_dlis(std::size_t k, const std::vector<User> &users, const Surface &unit, double kappa,
                   const LinkBudget &budget);

    /// SINR of user k at its assigned unit with per-user power scalings tau in [0, 1].
    double sinr_with_power_control(std::size_t k, const Assignment &assignment, const std::vector<User> &users,
                                   const std::vector<Surface> &units, double kappa, const LinkBudget &budget,
                                   const std::vector<double> &tau);

    /// Convenience wrappers evaluating every user.
    SeReport se_clis_all(const std::vector<User> &users, const Surface &surface, double kappa, const LinkBudget &budget);
    SeReport se_upper_bound_all(const std::vector<User> &users, const Surface &surface, double kappa,
                                const LinkBudget &budget);
    SeReport se_ricean_all(const std::vector<User> &users, const Surface &surface, double kappa,
                           const LinkBudget &budget);
    SeReport se_assigned(const Assignment &assignment, const std::vector<User> &users,
                         const std::vector<Surface> &units, double kappa, const LinkBudget &budget,
                         const std::vector<double> &tau);
}
