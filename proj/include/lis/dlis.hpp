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

#include <cstdint>
#include <random>
#include <vector>

namespace lis
{
    using Matrix = std::vector<std::vector<double>>; // row-major, K rows

    /// Binary K x M user-to-unit selection.
    struct SelectionMatrix
    {
        int K = 0, M = 0;
        std::vector<std::uint8_t> s;

        SelectionMatrix() = default;
        SelectionMatrix(int k, int m) : K(k), M(m), s(static_cast<std::size_t>(k) * m, 0) {}

        std::uint8_t &at(int k, int m) { return s[static_cast<std::size_t>(k) * M + m]; }
        std::uint8_t at(int k, int m) const { return s[static_cast<std::size_t>(k) * M + m]; }

        /// Rows sum to 1, columns to at most 1.
        bool valid() const;
        Assignment to_assignment() const;
        static SelectionMatrix from_assignment(const Assignment &a, int M);
    };

    /// Relaxed selection with its reweighting coefficients omega = 1 / (s~ + rho).
    struct RelaxedSelection
    {
        int K = 0, M = 0;
        std::vector<double> s, omega;
        double rho = 1e-4;

        double value(int k, int m) const { return s[static_cast<std::size_t>(k) * M + m]; }
        double weight(int k, int m) const { return omega[static_cast<std::size_t>(k) * M + m]; }
    };

    enum class LuaObjective
    {
        sum,
        max_min
    };

    struct LuaOptions
    {
        LuaObjective objective = LuaObjective::sum;
        int max_iter = 20;
        double threshold = 0.5; // rounding threshold on s~
        double rho = 1e-4;      // stability term of the weights
    };

    struct LuaResult
    {
        SelectionMatrix selection;
        RelaxedSelection relaxed;               // final relaxed iterate
        std::vector<std::vector<double>> history; // s~ after every iteration
        bool polarized = false;                 // every s~ within 1e-3 of 0 or 1
        int repaired = 0;                       // users placed by the greedy repair
        int iterations = 0;                     // LPs solved; below max_iter if a reweighted LP was infeasible
    };

    /// Large-scale-fading user association by reweighted l1 relaxation.
    LuaResult lua(const Matrix &pl, const LuaOptions &options = {});

    /// Sum of selected path losses and minimum selected path loss.
    double association_sum(const Matrix &pl, const Assignment &a);
    double association_min(const Matrix &pl, const Assignment &a);

    /// Best assignment by enumerating all M! / (M - K)! injective maps.
    Assignment exhaustive_assignment(const Matrix &pl, LuaObjective objective);

    /// Baselines: uniformly random injective map, and greedy strongest-link-first.
    Assignment random_assignment(int K, int M, std::mt19937_64 &rng);
    Assignment nearest_assignment(const Matrix &pl);

    /// PL_{k,m} for every user and unit.
    Matrix path_loss_matrix(const std::vector<User> &users, const std::vector<Surface> &units, double kappa);

    /// Per-unit orientations from the closed-form interference nulling of the closest
    /// interferer (chi evaluated at orientation zero). Units without a user get 0.
    std::vector<double> orientation_control(const Assignment &assignment, const std::vector<User> &users,
                                            const std::vector<Surface> &units, double kappa);

    /// Per-unit grid search over theta = -pi + l delta_theta minimising the interference
    /// seen by the unit's user. Ties go to the smaller theta.
    std::vector<double> orientation_control_exhaustive(const Assignment &assignment, const std::vector<User> &users,
                                                       const std::vector<Surface> &units, double kappa,
                                                       double delta_theta);

    /// Copy of `units` with the given orientations.
    std::vector<Surface> with_orientations(const std::vector<Surface> &units, const std::vector<double> &theta);

    struct BisectionStep
    {
        double t = 0.0;
        bool feasible = false;
    };

    struct PowerCoeffs
    {
        std::vector<double> tau;
        double t = 0.0; // min_k SINR_k(tau)
        std::vector<BisectionStep> trace;
    };

    /// Max-min SINR power control by bisection on t with a linear solve per step.
    /// Stops once t_max - t_min <= eps * t_max. Orientations are read from `units`.
    PowerCoeffs max_min_power_control(const Assignment &assignment, const std::vector<User> &users,
                                      const std::vector<Surface> &units, double kappa, const LinkBudget &budget,
                                      double eps = 1e-4);
}
