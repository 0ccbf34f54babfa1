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

#include "lis/se.hpp"
#include "lis/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace lis
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        void check_inputs(std::size_t k, const std::vector<User> &users, const LinkBudget &budget)
        {
            if (users.empty())
                throw std::invalid_argument("At least one user is required.");
            if (k >= users.size())
                throw std::out_of_range("User index out of range.");
            if (!(budget.sigma2 > 0.0))
                throw std::domain_error("Noise variance must be positive.");
        }

        double user_path_loss(const User &u, const Surface &s, double kappa)
        {
            return path_loss(effective_distance(u, s), kappa);
        }
    }

    LinkBudget LinkBudget::from_rho_db(double rho_db, double sigma2)
    {
        if (!(sigma2 > 0.0))
            throw std::domain_error("Noise variance must be positive.");
        LinkBudget b;
        b.sigma2 = sigma2;
        b.p = sigma2 * std::pow(10.0, rho_db / 10.0);
        return b;
    }

    SeReport SeReport::from(std::vector<double> per_user)
    {
        SeReport r;
        r.per_user = std::move(per_user);
        r.sum = std::accumulate(r.per_user.begin(), r.per_user.end(), 0.0);
        r.min = r.per_user.empty() ? 0.0 : *std::min_element(r.per_user.begin(), r.per_user.end());
        return r;
    }

    double se_general(std::size_t k, const std::vector<User> &users, const Surface &surface, double kappa,
                      const LinkBudget &budget)
    {
        check_inputs(k, users, budget);
        const double gain = effective_channel(users[k], users[k], surface, kappa).sigma.real();
        double interference = 0.0;
        for (std::size_t j = 0; j < users.size(); ++j)
        {
            if (j == k)
                continue;
            const double s = std::abs(effective_channel(users[k], users[j], surface, kappa).sigma);
            interference += users[j].power * user_path_loss(users[j], surface, kappa) * s * s;
        }
        const double signal = users[k].power * user_path_loss(users[k], surface, kappa) * gain * gain;
        return std::log2(1.0 + signal / (gain * budget.sigma2 + interference));
    }

    double se_clis(std::size_t k, const std::vector<User> &users, const Surface &surface, double kappa,
                   const LinkBudget &budget)
    {
        return se_dlis(k, users, surface, kappa, budget);
    }

    double se_upper_bound(std::size_t k, const std::vector<User> &users, const Surface &surface, double kappa,
                          const LinkBudget &budget)
    {
        check_inputs(k, users, budget);
        const double area = pi * surface.radius * surface.radius;
        return std::log2(1.0 + users[k].power / budget.sigma2 * area * user_path_loss(users[k], surface, kappa));
    }

    double se_ricean(std::size_t k, const std::vector<User> &users, const Surface &surface, double kappa,
                     const LinkBudget &budget)
    {
        check_inputs(k, users, budget);
        const double gamma = users[k].ricean_factor;
        if (!(gamma >= 0.0) || !std::isfinite(gamma))
            throw std::domain_error("Ricean SE needs a finite non-negative Ricean factor.");
        const double area = pi * surface.radius * surface.radius;
        double interference = 0.0;
        for (std::size_t j = 0; j < users.size(); ++j)
            if (j != k)
                interference += users[j].power * user_path_loss(users[j], surface, kappa) *
                                ricean_interference(users[k], users[j], surface, kappa);
        const double scatter = 1.0 / ((1.0 + gamma) * (1.0 + gamma));
        const double signal = users[k].power * user_path_loss(users[k], surface, kappa) * area * (area + scatter);
        return std::log2(1.0 + signal / (area * budget.sigma2 + interference));
    }

    double se_dlis(std::size_t k, const std::vector<User> &users, const Surface &unit, double kappa,
                   const LinkBudget &budget)
    {
        check_inputs(k, users, budget);
        std::vector<double> tau(users.size(), 1.0);
        Assignment self;
        self.unit_of.assign(users.size(), 0);
        return std::log2(1.0 + sinr_with_power_control(k, self, users, {unit}, kappa, budget, tau));
    }

    double sinr_with_power_control(std::size_t k, const Assignment &assignment, const std::vector<User> &users,
                                   const std::vector<Surface> &units, double kappa, const LinkBudget &budget,
                                   const std::vector<double> &tau)
    {
        check_inputs(k, users, budget);
        if (assignment.size() != users.size() || tau.size() != users.size())
            throw std::invalid_argument("Assignment and tau must have one entry per user.");
        const int m = assignment.unit_of[k];
        if (m < 0 || static_cast<std::size_t>(m) >= units.size())
            throw std::out_of_range("Assigned unit index out of range.");
        const Surface &unit = units[m];

        double interference = 0.0;
        for (std::size_t j = 0; j < users.size(); ++j)
        {
            if (j == k || tau[j] == 0.0)
                continue;
            const double b = normalized_response(unit.radius, kappa, pair_coeffs(users[k], users[j], unit).chi);
            interference += tau[j] * users[j].power * user_path_loss(users[j], unit, kappa) * b * b;
        }
        const double noise = budget.sigma2 / (pi * unit.radius * unit.radius);
        return tau[k] * users[k].power * user_path_loss(users[k], unit, kappa) / (noise + interference);
    }

    SeReport se_clis_all(const std::vector<User> &users, const Surface &surface, double kappa, const LinkBudget &budget)
    {
        std::vector<double> se(users.size());
        for (std::size_t k = 0; k < users.size(); ++k)
            se[k] = se_clis(k, users, surface, kappa, budget);
        return SeReport::from(std::move(se));
    }

    SeReport se_upper_bound_all(const std::vector<User> &users, const Surface &surface, double kappa,
                                const LinkBudget &budget)
    {
        std::vector<double> se(users.size());
        for (std::size_t k = 0; k < users.size(); ++k)
            se[k] = se_upper_bound(k, users, surface, kappa, budget);
        return SeReport::from(std::move(se));
    }

    SeReport se_ricean_all(const std::vector<User> &users, const Surface &surface, double kappa,
                           const LinkBudget &budget)
    {
        std::vector<double> se(users.size());
        for (std::size_t k = 0; k < users.size(); ++k)
            se[k] = se_ricean(k, users, surface, kappa, budget);
        return SeReport::from(std::move(se));
    }

    SeReport se_assigned(const Assignment &assignment, const std::vector<User> &users,
                         const std::vector<Surface> &units, double kappa, const LinkBudget &budget,
                         const std::vector<double> &tau)
    {
        std::vector<double> se(users.size());
        for (std::size_t k = 0; k < users.size(); ++k)
            se[k] = std::log2(1.0 + sinr_with_power_control(k, assignment, users, units, kappa, budget, tau));
        return SeReport::from(std::move(se));
    }
}
