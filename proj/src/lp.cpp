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

#include "lis/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lis::lp
{
    std::size_t Problem::add_row(std::vector<double> coeffs, RowType type, double value)
    {
        rows.push_back(std::move(coeffs));
        types.push_back(type);
        rhs.push_back(value);
        return rows.size() - 1;
    }

    namespace
    {
        // Tableau of B^-1 [A | slack | artificial] with basic values and reduced costs.
        class Tableau
        {
          public:
            Tableau(std::size_t m, std::size_t n) : m_(m), n_(n), t_(m * n, 0.0), beta_(m, 0.0),
                                                    basis_(m, 0), upper_(n, infinity), at_upper_(n, false), d_(n, 0.0) {}

            double &at(std::size_t i, std::size_t j) { return t_[i * n_ + j]; }
            double at(std::size_t i, std::size_t j) const { return t_[i * n_ + j]; }

            void price(const std::vector<double> &cost)
            {
                for (std::size_t j = 0; j < n_; ++j)
                {
                    double s = cost[j];
                    for (std::size_t i = 0; i < m_; ++i)
                        s -= cost[basis_[i]] * at(i, j);
                    d_[j] = s;
                }
            }

            // One pivot or bound flip. False once no column can improve the objective
            // or the entering column is unbounded (flagged).
            bool iterate(const Options &opt, bool &unbounded, bool &bland, int &degenerate, std::vector<char> &is_basic)
            {
                const double tol = opt.tolerance;
                std::size_t q = n_;
                double best = 0.0;
                for (std::size_t j = 0; j < n_; ++j)
                {
                    if (is_basic[j] || upper_[j] <= 0.0)
                        continue;
                    const double gain = at_upper_[j] ? -d_[j] : d_[j];
                    if (gain <= tol)
                        continue;
                    if (bland)
                    {
                        q = j;
                        break;
                    }
                    if (gain > best)
                        best = gain, q = j;
                }
                if (q == n_)
                    return false;

                const double dir = at_upper_[q] ? -1.0 : 1.0;
                double theta = upper_[q];
                std::size_t r = m_;
                bool to_upper = false;
                double pivot_size = 0.0;
                for (std::size_t i = 0; i < m_; ++i)
                {
                    const double alpha = dir * at(i, q);
                    double limit;
                    bool up;
                    if (alpha > 1e-11)
                        limit = std::max(0.0, beta_[i]) / alpha, up = false;
                    else if (alpha < -1e-11 && std::isfinite(upper_[basis_[i]]))
                        limit = std::max(0.0, upper_[basis_[i]] - beta_[i]) / -alpha, up = true;
                    else
                        continue;
                    const double slack = 1e-12 * (1.0 + (std::isfinite(theta) ? theta : 0.0));
                    bool take;
                    if (r == m_)
                        take = limit <= theta;
                    else if (limit < theta - slack)
                        take = true;
                    else if (limit <= theta + slack)
                        take = bland ? basis_[i] < basis_[r] : std::abs(alpha) > pivot_size;
                    else
                        take = false;
                    if (take)
                    {
                        theta = limit;
                        r = i;
                        to_upper = up;
                        pivot_size = std::abs(alpha);
                    }
                }
                if (!std::isfinite(theta))
                {
                    unbounded = true;
                    return false;
                }

                degenerate = theta <= tol ? degenerate + 1 : 0;
                if (degenerate > opt.bland_after)
                    bland = true;

                for (std::size_t i = 0; i < m_; ++i)
                    beta_[i] -= theta * dir * at(i, q);

                if (r == m_)
                {
                    at_upper_[q] = !at_upper_[q];
                    return true;
                }

                const std::size_t leaving = basis_[r];
                at_upper_[leaving] = to_upper;
                is_basic[leaving] = 0;
                const double entering_value = (at_upper_[q] ? upper_[q] : 0.0) + dir * theta;

                const double p = at(r, q);
                for (std::size_t j = 0; j < n_; ++j)
                    at(r, j) /= p;
                for (std::size_t i = 0; i < m_; ++i)
                {
                    if (i == r)
                        continue;
                    const double f = at(i, q);
                    if (f == 0.0)
                        continue;
                    for (std::size_t j = 0; j < n_; ++j)
                        at(i, j) -= f * at(r, j);
                    at(i, q) = 0.0;
                }
                const double f = d_[q];
                for (std::size_t j = 0; j < n_; ++j)
                    d_[j] -= f * at(r, j);
                d_[q] = 0.0;

                basis_[r] = q;
                beta_[r] = entering_value;
                at_upper_[q] = false;
                is_basic[q] = 1;
                return true;
            }

            std::size_t m_, n_;
            std::vector<double> t_, beta_;
            std::vector<std::size_t> basis_;
            std::vector<double> upper_;
            std::vector<char> at_upper_;
            std::vector<double> d_;
        };

        void validate(const Problem &p)
        {
            const std::size_t n = p.objective.size();
            if (n == 0)
                throw std::invalid_argument("LP needs at least one variable.");
            if (p.types.size() != p.rows.size() || p.rhs.size() != p.rows.size())
                throw std::invalid_argument("LP row, type and rhs counts differ.");
            for (const auto &row : p.rows)
                if (row.size() != n)
                    throw std::invalid_argument("LP row length differs from the variable count.");
            if ((!p.lower.empty() && p.lower.size() != n) || (!p.upper.empty() && p.upper.size() != n))
                throw std::invalid_argument("LP bound vectors must be empty or match the variable count.");
            for (std::size_t j = 0; j < n; ++j)
            {
                const double lo = p.lower.empty() ? 0.0 : p.lower[j];
                const double hi = p.upper.empty() ? infinity : p.upper[j];
                if (!std::isfinite(lo))
                    throw std::invalid_argument("LP lower bounds must be finite.");
                if (std::isnan(hi))
                    throw std::invalid_argument("LP upper bound is NaN.");
            }
        }
    }

    Result lp_solve(const Problem &problem, const Options &opt)
    {
        validate(problem);
        const std::size_t n = problem.objective.size(), m = problem.rows.size();
        Result result;

        std::vector<double> lower(n, 0.0), width(n, infinity);
        for (std::size_t j = 0; j < n; ++j)
        {
            lower[j] = problem.lower.empty() ? 0.0 : problem.lower[j];
            const double hi = problem.upper.empty() ? infinity : problem.upper[j];
            if (hi < lower[j] - opt.tolerance)
                return result; // empty box
            width[j] = std::max(0.0, hi - lower[j]);
        }

        // Shifted rhs, orientation of each row so that rhs >= 0, and the column layout.
        std::vector<double> rhs(m), sign(m, 1.0);
        std::vector<std::size_t> slack(m, 0), artificial(m, 0);
        std::vector<char> has_slack(m, 0), has_art(m, 0);
        std::size_t cols = n;
        for (std::size_t i = 0; i < m; ++i)
        {
            double r = problem.rhs[i];
            for (std::size_t j = 0; j < n; ++j)
                r -= problem.rows[i][j] * lower[j];
            rhs[i] = r;
            if (problem.types[i] != RowType::equal)
                has_slack[i] = 1, slack[i] = cols++;
        }
        for (std::size_t i = 0; i < m; ++i)
        {
            const double slack_coeff = problem.types[i] == RowType::less_equal ? 1.0 : -1.0;
            if (rhs[i] < 0.0)
                sign[i] = -1.0;
            // A slack with coefficient +1 after orientation can start basic.
            if (!(has_slack[i] && slack_coeff * sign[i] > 0.0))
                has_art[i] = 1, artificial[i] = cols++;
        }

        Tableau tab(m, cols);
        std::vector<char> is_basic(cols, 0);
        for (std::size_t j = 0; j < n; ++j)
            tab.upper_[j] = width[j];
        for (std::size_t i = 0; i < m; ++i)
        {
            for (std::size_t j = 0; j < n; ++j)
                tab.at(i, j) = sign[i] * problem.rows[i][j];
            if (has_slack[i])
                tab.at(i, slack[i]) = sign[i] * (problem.types[i] == RowType::less_equal ? 1.0 : -1.0);
            if (has_art[i])
                tab.at(i, artificial[i]) = 1.0;
            tab.beta_[i] = sign[i] * rhs[i];
            tab.basis_[i] = has_art[i] ? artificial[i] : slack[i];
            is_basic[tab.basis_[i]] = 1;
        }

        auto run_phase = [&](const std::vector<double> &cost, bool &unbounded)
        {
            tab.price(cost);
            bool bland = false;
            int degenerate = 0;
            unbounded = false;
            while (tab.iterate(opt, unbounded, bland, degenerate, is_basic))
                if (++result.iterations > opt.max_iterations)
                    throw std::runtime_error("LP iteration limit reached.");
        };

        bool unbounded = false;
        double scale = 1.0;
        for (double r : rhs)
            scale = std::max(scale, std::abs(r));
        if (std::any_of(has_art.begin(), has_art.end(), [](char c) { return c != 0; }))
        {
            std::vector<double> phase1(cols, 0.0);
            for (std::size_t i = 0; i < m; ++i)
                if (has_art[i])
                    phase1[artificial[i]] = -1.0;
            run_phase(phase1, unbounded);
            double infeasibility = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                if (phase1[tab.basis_[i]] != 0.0)
                    infeasibility += std::max(0.0, tab.beta_[i]);
            if (infeasibility > opt.tolerance * scale)
            {
                result.status = Status::infeasible;
                return result;
            }
            // Artificials are pinned at zero from here on.
            for (std::size_t i = 0; i < m; ++i)
                if (has_art[i])
                    tab.upper_[artificial[i]] = 0.0;
        }

        std::vector<double> phase2(cols, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            phase2[j] = problem.objective[j];
        run_phase(phase2, unbounded);
        if (unbounded)
        {
            result.status = Status::unbounded;
            return result;
        }

        result.x.assign(n, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            if (!is_basic[j] && tab.at_upper_[j])
                result.x[j] = width[j];
        for (std::size_t i = 0; i < m; ++i)
            if (tab.basis_[i] < n)
                result.x[tab.basis_[i]] = tab.beta_[i];
        for (std::size_t j = 0; j < n; ++j)
        {
            result.x[j] = std::clamp(result.x[j], 0.0, width[j]) + lower[j];
            result.objective += problem.objective[j] * result.x[j];
        }
        result.status = Status::optimal;
        return result;
    }
}
