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

#include "lis/clis.hpp"
#include "lis/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace lis
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        void check_grid(const SearchGrid &g)
        {
            if (!(g.kappa_min > 0.0) || !(g.kappa_max >= g.kappa_min))
                throw std::invalid_argument("Search grid needs 0 < kappa_min <= kappa_max.");
            if (!(g.delta_kappa > 0.0) || !(g.delta_theta > 0.0) || g.delta_theta > 2.0 * pi)
                throw std::invalid_argument("Search grid steps must be positive (delta_theta <= 2 pi).");
        }

        // Runs body(i) for i in [0, n) on up to `threads` workers, striding by worker index.
        template <typename F>
        void parallel_for(int n, int threads, F body)
        {
            threads = std::max(1, std::min(threads, n));
            if (threads == 1)
            {
                for (int i = 0; i < n; ++i)
                    body(i);
                return;
            }
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t)
                pool.emplace_back([&, t]
                                  {
                                      for (int i = t; i < n; i += threads)
                                          body(i);
                                  });
            for (auto &th : pool)
                th.join();
        }
    }

    int SearchGrid::kappa_count() const
    {
        return static_cast<int>(std::ceil((kappa_max - kappa_min) / delta_kappa - 1e-9)) + 1;
    }

    int SearchGrid::theta_count() const
    {
        return std::max(1, static_cast<int>(std::round(2.0 * pi / delta_theta)));
    }

    double SearchGrid::kappa_at(int i) const
    {
        return std::min(kappa_max, kappa_min + i * delta_kappa);
    }

    double SearchGrid::theta_at(int l) const
    {
        return -pi + l * delta_theta;
    }

    SearchGrid SearchGrid::from_band(double kappa_min, double kappa_max, int steps)
    {
        if (steps < 1)
            throw std::invalid_argument("Band must be split into at least one step.");
        SearchGrid g;
        g.kappa_min = kappa_min;
        g.kappa_max = kappa_max;
        g.delta_kappa = kappa_max > kappa_min ? (kappa_max - kappa_min) / steps : 1.0;
        g.delta_theta = 2.0 * pi / 720.0;
        return g;
    }

    double sum_se_clis(const std::vector<User> &users, const Surface &surface, double kappa, const LinkBudget &budget)
    {
        const std::size_t K = users.size();
        if (K == 0)
            return 0.0;
        if (!(budget.sigma2 > 0.0))
            throw std::domain_error("Noise variance must be positive.");

        std::vector<DirectionCosines> dir(K);
        std::vector<double> rx(K);
        for (std::size_t k = 0; k < K; ++k)
        {
            dir[k] = direction_cosines(users[k], surface);
            rx[k] = users[k].power * path_loss(effective_distance(users[k], surface), kappa);
        }

        std::vector<double> interference(K, 0.0);
        for (std::size_t a = 0; a < K; ++a)
            for (std::size_t b = a + 1; b < K; ++b)
            {
                const double chi = std::hypot(dir[a].ux - dir[b].ux, dir[a].uy - dir[b].uy);
                const double bt = normalized_response(surface.radius, kappa, chi);
                interference[a] += rx[b] * bt * bt;
                interference[b] += rx[a] * bt * bt;
            }

        const double noise = budget.sigma2 / (pi * surface.radius * surface.radius);
        double sum = 0.0;
        for (std::size_t k = 0; k < K; ++k)
            sum += std::log2(1.0 + rx[k] / (noise + interference[k]));
        return sum;
    }

    ClisOptimum maximize_sum_se_full(const std::vector<User> &users, const Surface &surface, const SearchGrid &grid,
                                     const LinkBudget &budget, int threads)
    {
        check_grid(grid);
        const int I = grid.kappa_count(), L = grid.theta_count();
        std::vector<double> values(static_cast<std::size_t>(I) * L);
        parallel_for(L, threads, [&](int l)
                     {
                         Surface s = surface;
                         s.orientation = grid.theta_at(l);
                         for (int i = 0; i < I; ++i)
                             values[static_cast<std::size_t>(l) * I + i] = sum_se_clis(users, s, grid.kappa_at(i), budget);
                     });

        // theta-major order with strict improvement keeps the smallest theta, then the smallest kappa.
        std::size_t best = 0;
        for (std::size_t n = 1; n < values.size(); ++n)
            if (values[n] > values[best])
                best = n;

        ClisOptimum out;
        out.theta = grid.theta_at(static_cast<int>(best / I));
        out.kappa = grid.kappa_at(static_cast<int>(best % I));
        Surface s = surface;
        s.orientation = out.theta;
        out.report = se_clis_all(users, s, out.kappa, budget);
        return out;
    }

    ClisOptimum maximize_sum_se_theta(const std::vector<User> &users, const Surface &surface, double kappa,
                                      double delta_theta, const LinkBudget &budget, int threads)
    {
        SearchGrid g;
        g.kappa_min = g.kappa_max = kappa;
        g.delta_kappa = 1.0;
        g.delta_theta = delta_theta;
        return maximize_sum_se_full(users, surface, g, budget, threads);
    }
}
