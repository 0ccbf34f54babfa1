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

#include "lis/dlis.hpp"
#include "lis/channel.hpp"
#include "lis/lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lis
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        void check_pl(const Matrix &pl)
        {
            if (pl.empty())
                throw std::invalid_argument("Path-loss matrix has no users.");
            const std::size_t M = pl.front().size();
            if (M < pl.size())
                throw std::invalid_argument("User association needs at least as many units as users.");
            for (const auto &row : pl)
            {
                if (row.size() != M)
                    throw std::invalid_argument("Path-loss matrix rows differ in length.");
                for (double v : row)
                    if (!(v > 0.0) || !std::isfinite(v))
                        throw std::domain_error("Path losses must be positive and finite.");
            }
        }

        void check_assignment(const Assignment &a, std::size_t K, std::size_t M)
        {
            if (a.size() != K)
                throw std::invalid_argument("Assignment must have one entry per user.");
            std::vector<char> used(M, 0);
            for (int m : a.unit_of)
            {
                if (m < 0 || static_cast<std::size_t>(m) >= M)
                    throw std::out_of_range("Assigned unit index out of range.");
                if (used[m]++)
                    throw std::invalid_argument("Assignment maps two users to one unit.");
            }
        }

        // Greedy completion: fixes the strongest free (user, unit) link until every user is placed.
        void greedy_fill(const Matrix &pl, Assignment &a, std::vector<char> &taken)
        {
            const int K = static_cast<int>(pl.size()), M = static_cast<int>(pl.front().size());
            while (true)
            {
                int bk = -1, bm = -1;
                for (int k = 0; k < K; ++k)
                {
                    if (a.unit_of[k] >= 0)
                        continue;
                    for (int m = 0; m < M; ++m)
                        if (!taken[m] && (bk < 0 || pl[k][m] > pl[bk][bm]))
                            bk = k, bm = m;
                }
                if (bk < 0)
                    return;
                a.unit_of[bk] = bm;
                taken[bm] = 1;
            }
        }

        double uniform01(std::mt19937_64 &rng)
        {
            return static_cast<double>(rng() >> 11) * 0x1.0p-53;
        }
    }

    bool SelectionMatrix::valid() const
    {
        for (int k = 0; k < K; ++k)
        {
            int row = 0;
            for (int m = 0; m < M; ++m)
                row += at(k, m);
            if (row != 1)
                return false;
        }
        for (int m = 0; m < M; ++m)
        {
            int col = 0;
            for (int k = 0; k < K; ++k)
                col += at(k, m);
            if (col > 1)
                return false;
        }
        return true;
    }

    Assignment SelectionMatrix::to_assignment() const
    {
        if (!valid())
            throw std::logic_error("Selection matrix violates the association constraints.");
        Assignment a;
        a.unit_of.assign(K, -1);
        for (int k = 0; k < K; ++k)
            for (int m = 0; m < M; ++m)
                if (at(k, m))
                    a.unit_of[k] = m;
        return a;
    }

    SelectionMatrix SelectionMatrix::from_assignment(const Assignment &a, int M)
    {
        check_assignment(a, a.size(), M);
        SelectionMatrix s(static_cast<int>(a.size()), M);
        for (std::size_t k = 0; k < a.size(); ++k)
            s.at(static_cast<int>(k), a.unit_of[k]) = 1;
        return s;
    }

    LuaResult lua(const Matrix &pl, const LuaOptions &opt)
    {
        check_pl(pl);
        if (opt.max_iter < 1)
            throw std::invalid_argument("LUA needs at least one iteration.");
        if (!(opt.rho > 0.0))
            throw std::invalid_argument("LUA stability term must be positive.");
        if (!(opt.threshold > 0.0 && opt.threshold <= 1.0))
            throw std::invalid_argument("LUA rounding threshold must lie in (0, 1].");

        const int K = static_cast<int>(pl.size()), M = static_cast<int>(pl.front().size());
        const std::size_t KM = static_cast<std::size_t>(K) * M;
        const bool max_min = opt.objective == LuaObjective::max_min;

        double scale = 0.0;
        for (const auto &row : pl)
            scale = std::max(scale, *std::max_element(row.begin(), row.end()));

        LuaResult out;
        RelaxedSelection &rel = out.relaxed;
        rel.K = K;
        rel.M = M;
        rel.rho = opt.rho;
        rel.s.assign(KM, 0.0);
        rel.omega.assign(KM, 1.0);

        // Solved in y = omega * s~, which turns the weighted row and column sums into plain
        // ones and the box s~ in [0, 1] into y in [0, omega].
        const std::size_t n = KM + (max_min ? 1 : 0);
        for (int it = 1; it <= opt.max_iter; ++it)
        {
            lp::Problem p;
            p.objective.assign(n, 0.0);
            p.lower.assign(n, 0.0);
            p.upper.assign(n, lp::infinity);
            for (std::size_t j = 0; j < KM; ++j)
                p.upper[j] = rel.omega[j];
            if (max_min)
                p.objective[KM] = 1.0;
            else
                for (int k = 0; k < K; ++k)
                    for (int m = 0; m < M; ++m)
                        p.objective[static_cast<std::size_t>(k) * M + m] = pl[k][m] / scale;

            for (int k = 0; k < K; ++k)
            {
                std::vector<double> row(n, 0.0);
                for (int m = 0; m < M; ++m)
                    row[static_cast<std::size_t>(k) * M + m] = 1.0;
                p.add_row(std::move(row), lp::RowType::equal, 1.0);
            }
            for (int m = 0; m < M; ++m)
            {
                std::vector<double> col(n, 0.0);
                for (int k = 0; k < K; ++k)
                    col[static_cast<std::size_t>(k) * M + m] = 1.0;
                p.add_row(std::move(col), lp::RowType::less_equal, 1.0);
            }
            if (max_min)
                for (int k = 0; k < K; ++k)
                {
                    std::vector<double> row(n, 0.0);
                    for (int m = 0; m < M; ++m)
                        row[static_cast<std::size_t>(k) * M + m] = pl[k][m] / scale;
                    row[KM] = -1.0;
                    p.add_row(std::move(row), lp::RowType::greater_equal, 0.0);
                }

            lp::Result r;
            try
            {
                r = lp::lp_solve(p);
            }
            catch (const std::exception &e)
            {
                throw std::runtime_error("LUA iteration " + std::to_string(it) + ": " + e.what());
            }
            // Weighted rows can lose feasibility once omega < 1 (e.g. M = 1); the last iterate stands.
            if (r.status == lp::Status::infeasible && it > 1)
                break;
            if (r.status != lp::Status::optimal)
                throw std::runtime_error("LUA iteration " + std::to_string(it) + ": LP not solved to optimality.");
            out.iterations = it;

            for (std::size_t j = 0; j < KM; ++j)
                rel.s[j] = std::clamp(r.x[j] / rel.omega[j], 0.0, 1.0);
            out.history.push_back(rel.s);
            for (std::size_t j = 0; j < KM; ++j)
                rel.omega[j] = 1.0 / (rel.s[j] + opt.rho);
        }

        out.polarized = std::all_of(rel.s.begin(), rel.s.end(),
                                    [](double v) { return v <= 1e-3 || v >= 1.0 - 1e-3; });

        // Threshold, then resolve conflicts strongest link first.
        std::vector<std::pair<int, int>> winners;
        for (int k = 0; k < K; ++k)
            for (int m = 0; m < M; ++m)
                if (rel.value(k, m) >= opt.threshold)
                    winners.emplace_back(k, m);
        std::stable_sort(winners.begin(), winners.end(), [&](const auto &a, const auto &b)
                         { return pl[a.first][a.second] > pl[b.first][b.second]; });
        Assignment a;
        a.unit_of.assign(K, -1);
        std::vector<char> taken(M, 0);
        for (const auto &[k, m] : winners)
            if (a.unit_of[k] < 0 && !taken[m])
                a.unit_of[k] = m, taken[m] = 1;
        out.repaired = static_cast<int>(std::count(a.unit_of.begin(), a.unit_of.end(), -1));
        greedy_fill(pl, a, taken);

        out.selection = SelectionMatrix::from_assignment(a, M);
        return out;
    }

    double association_sum(const Matrix &pl, const Assignment &a)
    {
        double s = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k)
            s += pl[k][a.unit_of[k]];
        return s;
    }

    double association_min(const Matrix &pl, const Assignment &a)
    {
        double s = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < a.size(); ++k)
            s = std::min(s, pl[k][a.unit_of[k]]);
        return s;
    }

    Assignment exhaustive_assignment(const Matrix &pl, LuaObjective objective)
    {
        check_pl(pl);
        const int K = static_cast<int>(pl.size()), M = static_cast<int>(pl.front().size());
        Assignment current, best;
        current.unit_of.assign(K, -1);
        std::vector<char> taken(M, 0);
        double best_primary = -1.0, best_secondary = -1.0;

        std::function<void(int)> visit = [&](int k)
        {
            if (k == K)
            {
                const double sum = association_sum(pl, current);
                const double primary = objective == LuaObjective::sum ? sum : association_min(pl, current);
                if (primary > best_primary || (primary == best_primary && sum > best_secondary))
                {
                    best_primary = primary;
                    best_secondary = sum;
                    best = current;
                }
                return;
            }
            for (int m = 0; m < M; ++m)
            {
                if (taken[m])
                    continue;
                taken[m] = 1;
                current.unit_of[k] = m;
                visit(k + 1);
                taken[m] = 0;
            }
            current.unit_of[k] = -1;
        };
        visit(0);
        return best;
    }

    Assignment random_assignment(int K, int M, std::mt19937_64 &rng)
    {
        if (K < 0 || M < K)
            throw std::invalid_argument("Random association needs 0 <= K <= M.");
        std::vector<int> units(M);
        for (int m = 0; m < M; ++m)
            units[m] = m;
        for (int i = M - 1; i > 0; --i)
        {
            const int j = std::min(i, static_cast<int>(uniform01(rng) * (i + 1)));
            std::swap(units[i], units[j]);
        }
        Assignment a;
        a.unit_of.assign(units.begin(), units.begin() + K);
        return a;
    }

    Assignment nearest_assignment(const Matrix &pl)
    {
        check_pl(pl);
        Assignment a;
        a.unit_of.assign(pl.size(), -1);
        std::vector<char> taken(pl.front().size(), 0);
        greedy_fill(pl, a, taken);
        return a;
    }

    Matrix path_loss_matrix(const std::vector<User> &users, const std::vector<Surface> &units, double kappa)
    {
        Matrix pl(users.size(), std::vector<double>(units.size()));
        for (std::size_t k = 0; k < users.size(); ++k)
            for (std::size_t m = 0; m < units.size(); ++m)
                pl[k][m] = path_loss(effective_distance(users[k], units[m]), kappa);
        return pl;
    }

    std::vector<double> orientation_control(const Assignment &assignment, const std::vector<User> &users,
                                            const std::vector<Surface> &units, double kappa)
    {
        check_assignment(assignment, users.size(), units.size());
        std::vector<double> theta(units.size(), 0.0);
        for (std::size_t k = 0; k < users.size(); ++k)
        {
            Surface unit = units[assignment.unit_of[k]];
            unit.orientation = 0.0;
            std::size_t target = k;
            PairCoeffs closest;
            for (std::size_t j = 0; j < users.size(); ++j)
            {
                if (j == k)
                    continue;
                const PairCoeffs p = pair_coeffs(users[k], users[j], unit);
                if (target == k || p.chi < closest.chi)
                    target = j, closest = p;
            }
            if (target == k)
                continue;
            theta[assignment.unit_of[k]] = min_normalized_response(closest, unit.radius, kappa).theta;
        }
        return theta;
    }

    std::vector<double> orientation_control_exhaustive(const Assignment &assignment, const std::vector<User> &users,
                                                       const std::vector<Surface> &units, double kappa,
                                                       double delta_theta)
    {
        check_assignment(assignment, users.size(), units.size());
        if (!(delta_theta > 0.0) || delta_theta > 2.0 * pi)
            throw std::invalid_argument("Orientation step must lie in (0, 2 pi].");
        const int L = std::max(1, static_cast<int>(std::round(2.0 * pi / delta_theta)));
        std::vector<double> theta(units.size(), 0.0);
        for (std::size_t k = 0; k < users.size(); ++k)
        {
            Surface unit = units[assignment.unit_of[k]];
            unit.orientation = 0.0;
            std::vector<PairCoeffs> pairs;
            std::vector<double> rx;
            for (std::size_t j = 0; j < users.size(); ++j)
                if (j != k)
                {
                    pairs.push_back(pair_coeffs(users[k], users[j], unit));
                    rx.push_back(users[j].power * path_loss(effective_distance(users[j], unit), kappa));
                }
            double best = std::numeric_limits<double>::infinity(), best_theta = 0.0;
            for (int l = 0; l < L && !pairs.empty(); ++l)
            {
                const double t = -pi + l * delta_theta;
                double interference = 0.0;
                for (std::size_t i = 0; i < pairs.size(); ++i)
                {
                    const double b = normalized_response(unit.radius, kappa, chi_at(pairs[i], t));
                    interference += rx[i] * b * b;
                }
                if (interference < best)
                    best = interference, best_theta = t;
            }
            theta[assignment.unit_of[k]] = best_theta;
        }
        return theta;
    }

    std::vector<Surface> with_orientations(const std::vector<Surface> &units, const std::vector<double> &theta)
    {
        if (theta.size() != units.size())
            throw std::invalid_argument("One orientation per unit is required.");
        std::vector<Surface> out = units;
        for (std::size_t m = 0; m < out.size(); ++m)
            out[m].orientation = theta[m];
        return out;
    }

    PowerCoeffs max_min_power_control(const Assignment &assignment, const std::vector<User> &users,
                                      const std::vector<Surface> &units, double kappa, const LinkBudget &budget,
                                      double eps)
    {
        check_assignment(assignment, users.size(), units.size());
        if (!(eps > 0.0))
            throw std::invalid_argument("Bisection tolerance must be positive.");
        if (!(budget.sigma2 > 0.0))
            throw std::domain_error("Noise variance must be positive.");
        const std::size_t K = users.size();
        PowerCoeffs out;
        if (K == 0)
            return out;

        // SINR_k = tau_k a_k / (noise_k + sum_j tau_j b_kj)
        Eigen::VectorXd a(K), noise(K);
        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(K, K);
        for (std::size_t k = 0; k < K; ++k)
        {
            const Surface &unit = units[assignment.unit_of[k]];
            a(k) = users[k].power * path_loss(effective_distance(users[k], unit), kappa);
            noise(k) = budget.sigma2 / (pi * unit.radius * unit.radius);
            for (std::size_t j = 0; j < K; ++j)
            {
                if (j == k)
                    continue;
                const double bt = normalized_response(unit.radius, kappa, pair_coeffs(users[k], users[j], unit).chi);
                b(k, j) = users[j].power * path_loss(effective_distance(users[j], unit), kappa) * bt * bt;
            }
        }

        double t_max = (a.array() / noise.array()).maxCoeff(), t_min = 0.0;
        Eigen::VectorXd tau = Eigen::VectorXd::Zero(K);
        while (t_max - t_min > eps * t_max)
        {
            const double t = 0.5 * (t_max + t_min);
            Eigen::MatrixXd system = -t * b;
            system.diagonal() = a;
            const Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
            bool feasible = lu.isInvertible();
            Eigen::VectorXd candidate;
            if (feasible)
            {
                candidate = lu.solve(t * noise);
                feasible = candidate.allFinite() && candidate.minCoeff() >= 0.0 && candidate.maxCoeff() <= 1.0;
            }
            out.trace.push_back({t, feasible});
            if (feasible)
                t_min = t, tau = candidate;
            else
                t_max = t;
        }

        out.tau.assign(tau.data(), tau.data() + K);
        double t = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < K; ++k)
            t = std::min(t, sinr_with_power_control(k, assignment, users, units, kappa, budget, out.tau));
        out.t = t;
        return out;
    }
}
