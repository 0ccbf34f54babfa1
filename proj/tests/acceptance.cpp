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

// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "lis/channel.hpp"
#include "lis/dlis.hpp"
#include "lis/harness.hpp"
#include "lis/output.hpp"
#include "lis/scene.hpp"
#include "lis/se.hpp"
#include "lis/specfun.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace lis;
using namespace lis::specfun;

namespace
{
    constexpr double pi = 3.14159265358979323846;

    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    int failures = 0;

    void criterion(int id, const char *title, double budget_s, const std::function<Outcome()> &body)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = body();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (budget_s > 0.0 && s > budget_s)
        {
            o.pass = false;
            o.detail += " [over time budget]";
        }
        failures += !o.pass;
        std::printf("%s %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), s);
        std::fflush(stdout);
    }

    std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
    {
        char buf[256];
        std::snprintf(buf, sizeof buf, f, a, b, c, d);
        return buf;
    }

    User user_at(const Vec3 &p, double power = 1.0, double phase = 0.0)
    {
        User u;
        u.position = p;
        u.power = power;
        u.phase = phase;
        return u;
    }

    User random_far_user(std::mt19937_64 &rng, double dmin, double dmax)
    {
        std::uniform_real_distribution<double> dist(dmin, dmax), cz(0.05, 1.0), az(-pi, pi);
        const double d = dist(rng), uz = cz(rng), a = az(rng), r = std::sqrt(1.0 - uz * uz);
        return user_at({d * r * std::cos(a), d * r * std::sin(a), d * uz}, 1.0, az(rng));
    }

    ScenarioConfig figure_config(int K, int M)
    {
        ScenarioConfig c;
        c.experiment = "dlis";
        c.seed = 2024;
        c.drops = 100;
        c.K = K;
        c.M = M;
        c.R = 5.0;
        c.rho_db = 110.0;
        c.far_field = FarFieldPolicy::warn;
        return c;
    }

    const DlisVariant lua_only{"lua", Association::lua, false, false, Order::oc_pc};
    const DlisVariant random_only{"random", Association::random, false, false, Order::oc_pc};
    const DlisVariant oc_pc{"oc_pc", Association::lua, true, true, Order::oc_pc};
    const DlisVariant pc_oc{"pc_oc", Association::lua, true, true, Order::pc_oc};

    // Max-min SINR over tau in {0, 1/steps, ..., 1}^K.
    double grid_oracle(const std::vector<User> &users, const std::vector<Surface> &units, const Assignment &a,
                       double kappa, const LinkBudget &budget, int steps)
    {
        const std::size_t K = users.size();
        std::vector<int> idx(K, 0);
        std::vector<double> tau(K);
        double best = 0.0;
        while (true)
        {
            for (std::size_t k = 0; k < K; ++k)
                tau[k] = static_cast<double>(idx[k]) / steps;
            double worst = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < K && worst > best; ++k)
                worst = std::min(worst, sinr_with_power_control(k, a, users, units, kappa, budget, tau));
            best = std::max(best, worst);
            std::size_t k = 0;
            while (k < K && ++idx[k] > steps)
                idx[k++] = 0;
            if (k == K)
                break;
        }
        return best;
    }
}

int main()
{
    criterion(1, "closed-form response against 512x512 polar quadrature", 60.0, []
              {
        std::mt19937_64 rng(1001);
        std::uniform_real_distribution<double> radius(1.0, 10.0);
        double worst = 0.0;
        int pairs = 0, draws = 0;
        while (pairs < 200)
        {
            ++draws;
            const double lambda = pairs % 2 ? 0.006 : 0.15, kappa = wavenumber(lambda);
            const Surface s{{0, 0, 0}, radius(rng), 0.0};
            const double dmin = 8.0 * s.radius * s.radius / lambda * 1.01;
            const User a = random_far_user(rng, dmin, 3.0 * dmin);
            // second user in a cone around the first so that the Bessel argument stays resolvable
            const double spread = std::min(1.0, 400.0 / (s.radius * kappa));
            std::uniform_real_distribution<double> jitter(-spread, spread);
            const double d = a.position.norm();
            Vec3 dir{a.position.x / d + jitter(rng), a.position.y / d + jitter(rng), a.position.z / d + jitter(rng)};
            if (dir.z <= 0.05)
                continue;
            const double n = dir.norm(), db = dmin * (1.0 + 2.0 * std::uniform_real_distribution<double>(0, 1)(rng));
            const User b = user_at({dir.x / n * db, dir.y / n * db, dir.z / n * db}, 1.0, 0.3);
            if (s.radius * kappa * pair_coeffs(a, b, s).chi > 400.0)
                continue;
            const auto closed = effective_channel(a, b, s, kappa).sigma;
            const auto quad = quadrature_oracle(a, b, s, kappa, 512, 512);
            worst = std::max(worst, std::abs(closed - quad) / (pi * s.radius * s.radius));
            ++pairs;
        }
        return Outcome{worst < 1e-5, fmt("worst relative error %.3g over %.0f pairs (%.0f draws)", worst, pairs, draws)}; });

    criterion(2, "array gain equals the surface area", 0.0, []
              {
        double worst = 0.0;
        std::mt19937_64 rng(1002);
        for (double R : {1.0, 5.0, 10.0})
            for (int i = 0; i < 100; ++i)
            {
                const User u = random_far_user(rng, 100.0, 5000.0);
                const Surface s{{0, 0, 0}, R, 0.0};
                const auto sigma = effective_channel(u, u, s, wavenumber(0.15)).sigma;
                worst = std::max(worst, std::abs(sigma - std::complex<double>(pi * R * R, 0.0)) / (pi * R * R));
            }
        return Outcome{worst <= 4.0 * std::numeric_limits<double>::epsilon(), fmt("worst relative deviation %.3g", worst)}; });

    criterion(3, "spatial-resolution constants", 1.0, []
              {
        const double j22 = bessel_zero(2, 2);
        const double peak = 2.0 * std::abs(bessel_j(1, j22)) / j22;
        const double chi_r_over_lambda = j22 / (2.0 * pi);
        return Outcome{std::abs(peak - 0.0645) <= 0.0005 && std::abs(chi_r_over_lambda - 1.3396) <= 0.001,
                       fmt("2|J1(j22)|/j22 = %.5f, chi R / lambda = %.5f", peak, chi_r_over_lambda)}; });

    criterion(4, "orientation closed forms against a 1e4-point grid", 0.0, []
              {
        std::mt19937_64 rng(1004);
        std::uniform_real_distribution<double> radius(0.2, 5.0);
        double worst_excess = -1.0, worst_zero = 0.0;
        int zeros = 0;
        for (int i = 0; i < 1000; ++i)
        {
            const double R = radius(rng), kappa = wavenumber(i % 2 ? 0.15 : 0.006);
            const PairCoeffs p = pair_coeffs(random_far_user(rng, 100, 1000), random_far_user(rng, 100, 1000), Surface{});
            const auto m = min_normalized_response(p, R, kappa);
            double grid = std::numeric_limits<double>::infinity();
            for (int l = 0; l < 10000; ++l)
                grid = std::min(grid, std::abs(normalized_response(R, kappa, chi_at(p, -pi + 2.0 * pi * l / 10000))));
            worst_excess = std::max(worst_excess, m.value - grid);
            // independent check for a J1 zero inside [R kappa |xi|, R kappa varpi]
            const double lo = R * kappa * std::abs(p.xi), hi = R * kappa * p.varpi;
            bool zero_inside = false;
            for (int n = 1; bessel_zero(1, n) <= hi; ++n)
                zero_inside = zero_inside || bessel_zero(1, n) >= lo;
            if (zero_inside)
            {
                ++zeros;
                worst_zero = std::max(worst_zero, m.value);
            }
        }
        return Outcome{worst_excess <= 1e-8 && worst_zero < 1e-8,
                       fmt("max(value - grid) %.3g, max |B~| at reachable zeros %.3g over %.0f pairs", worst_excess, worst_zero, zeros)}; });

    criterion(5, "LoS sum SE at lambda = 0.005 m reaches the upper bound", 60.0, []
              {
        double worst_gap = 0.0;
        int violations = 0;
        for (double R : {1.0, 5.0, 10.0, 100.0})
        {
            ScenarioConfig c;
            c.experiment = "clis";
            c.seed = 1005;
            c.K = 10;
            c.rho_db = 100.0;
            c.far_field = FarFieldPolicy::warn;
            c.sweep_parameter = "lambda";
            c.sweep_values = {0.005};
            c.R = R;
            const auto r = run_clis_experiment(c);
            const double los = r.find("los_lambda0.005").mean_sum(), upper = r.find("upper_lambda0.005").mean_sum();
            worst_gap = std::max(worst_gap, (upper - los) / upper);
            violations += r.far_field_violations;
        }
        return Outcome{worst_gap < 0.01, fmt("worst relative gap %.3g over R in {1, 5, 10, 100} (%.0f placements inside Fraunhofer distance)", worst_gap, violations)}; });

    criterion(6, "Ricean sum SE below LoS on every drop", 0.0, []
              {
        ScenarioConfig c;
        c.experiment = "clis";
        c.seed = 1006;
        c.K = 10;
        c.rho_db = 100.0;
        c.ricean_factor_db = 10.0;
        c.far_field = FarFieldPolicy::warn;
        c.sweep_values = {1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0};
        const auto r = run_clis_experiment(c);
        int bad = 0, total = 0;
        for (double R : c.sweep_values)
        {
            const auto &los = r.find(series_name("los_R", R)), &ric = r.find(series_name("ricean_R", R));
            for (std::size_t d = 0; d < los.per_drop.size(); ++d)
            {
                double a = 0.0, b = 0.0;
                for (std::size_t k = 0; k < los.per_drop[d].size(); ++k)
                    a += los.per_drop[d][k], b += ric.per_drop[d][k];
                ++total;
                bad += !(b < a);
            }
        }
        return Outcome{bad == 0, fmt("%.0f of %.0f (R, drop) cases violate", bad, total)}; });

    criterion(7, "LUA against exhaustive assignment (K = 3, M = 6)", 0.0, []
              {
        std::mt19937_64 rng(1007);
        std::uniform_real_distribution<double> dist(30.0, 1000.0);
        int close = 0, valid = 0;
        for (int i = 0; i < 100; ++i)
        {
            Matrix pl(3, std::vector<double>(6));
            for (auto &row : pl)
                for (auto &v : row)
                    v = path_loss(dist(rng), wavenumber(0.15));
            const auto r = lua(pl);
            valid += r.selection.valid();
            const double got = association_sum(pl, r.selection.to_assignment());
            close += got >= 0.95 * association_sum(pl, exhaustive_assignment(pl, LuaObjective::sum));
        }
        return Outcome{close >= 95 && valid == 100, fmt("%.0f / 100 within 5%%, %.0f / 100 feasible", close, valid)}; });

    criterion(8, "max-min power control against a grid oracle", 0.0, []
              {
        std::mt19937_64 rng(1008);
        const LinkBudget budget = LinkBudget::from_rho_db(110.0, 1.0);
        const double kappa = wavenumber(0.15), eps = 1e-4;
        std::uniform_real_distribution<double> xy(-500.0, 500.0);
        ScenarioConfig c;
        double worst_ratio = std::numeric_limits<double>::infinity(), worst_spread = 0.0;
        bool tau_ok = true;
        for (int i = 0; i < 50; ++i)
        {
            c.K = 2 + i % 3;
            auto users = drop_users(c, rng);
            for (auto &u : users)
                u.power = budget.p;
            std::vector<Surface> units;
            for (int m = 0; m < 8; ++m)
                units.push_back({{xy(rng), xy(rng), 0.0}, 1.0, 0.0});
            const Assignment a = nearest_assignment(path_loss_matrix(users, units, kappa));
            units = with_orientations(units, orientation_control(a, users, units, kappa));
            const auto pc = max_min_power_control(a, users, units, kappa, budget, eps);
            for (std::size_t k = 0; k < users.size(); ++k)
            {
                tau_ok = tau_ok && pc.tau[k] >= 0.0 && pc.tau[k] <= 1.0;
                const double s = sinr_with_power_control(k, a, users, units, kappa, budget, pc.tau);
                worst_spread = std::max(worst_spread, std::abs(s - pc.t) / (eps * (1.0 + pc.t)));
            }
            const int steps = c.K == 2 ? 400 : c.K == 3 ? 60 : 24;
            worst_ratio = std::min(worst_ratio, pc.t / grid_oracle(users, units, a, kappa, budget, steps));
        }
        return Outcome{worst_ratio >= 1.0 - 1e-2 && tau_ok && worst_spread <= 1.0,
                       fmt("min t / grid %.6f, max |SINR - t| / (eps (1 + t)) %.3g, tau in [0, 1]: ", worst_ratio, worst_spread) +
                           (tau_ok ? "yes" : "no")}; });

    criterion(9, "95%-likely SE ordering of D-LIS+LUA, random association and C-LIS", 300.0, []
              {
        ScenarioConfig c5 = figure_config(5, 20);
        c5.variants = {lua_only, random_only};
        const auto r5 = run_dlis_experiment(c5);
        const double lua5 = r5.find("lua").cdf().likely95(), rnd5 = r5.find("random").cdf().likely95(),
                     clis5 = r5.find("clis").cdf().likely95();
        ScenarioConfig c20 = figure_config(20, 20);
        c20.variants = {lua_only};
        const auto r20 = run_dlis_experiment(c20);
        const double lua20 = r20.find("lua").cdf().likely95(), clis20 = r20.find("clis").cdf().likely95();
        const bool pass = lua5 > rnd5 && lua5 > clis5 && clis20 > lua20;
        return Outcome{pass, fmt("K=5: LUA %.3f, random %.3f, C-LIS %.3f", lua5, rnd5, clis5) +
                                 fmt("; K=20: C-LIS %.3f, LUA %.3f", clis20, lua20)}; });

    criterion(10, "OC before PC beats PC before OC in median SE", 0.0, []
              {
        std::string detail;
        bool pass = true;
        for (int K : {5, 20})
        {
            ScenarioConfig c = figure_config(K, 20);
            c.variants = {oc_pc, pc_oc};
            c.include_clis = false;
            const auto r = run_dlis_experiment(c);
            const double a = r.find("oc_pc").cdf().median(), b = r.find("pc_oc").cdf().median();
            pass = pass && a > b;
            detail += (detail.empty() ? "" : "; ") + fmt("K=%.0f: OC-PC %.4f, PC-OC %.4f", K, a, b);
        }
        return Outcome{pass, detail}; });

    criterion(11, "frequency crossover between D-LIS and C-LIS medians", 600.0, []
              {
        ScenarioConfig c = figure_config(5, 20);
        c.experiment = "compare";
        c.variants = {oc_pc};
        c.frequencies = {2e9, 50e9};
        const auto r = run_frequency_comparison(c);
        const double c2 = r.find("clis_2GHz").cdf().median(), d2 = r.find("dlis_2GHz").cdf().median();
        const double c50 = r.find("clis_50GHz").cdf().median(), d50 = r.find("dlis_50GHz").cdf().median();
        return Outcome{d2 > c2 && c50 > d50, fmt("2 GHz: D-LIS %.3f, C-LIS %.3f; 50 GHz: C-LIS %.3f, D-LIS %.3f", d2, c2, c50, d50)}; });

    criterion(12, "per-user SE non-increasing in the unit count at fixed area", 0.0, []
              {
        std::vector<double> mean;
        for (int M : {5, 10, 20})
        {
            ScenarioConfig c = figure_config(5, M);
            c.variants = {lua_only};
            c.include_clis = false;
            mean.push_back(run_dlis_experiment(c).find("lua").cdf().mean());
        }
        return Outcome{mean[1] <= mean[0] && mean[2] <= mean[1],
                       fmt("mean per-user SE at M = 5, 10, 20: %.3f, %.3f, %.3f", mean[0], mean[1], mean[2])}; });

    criterion(13, "byte-identical CSV output for any thread count", 0.0, []
              {
        auto csv = [](const ExperimentResult &r)
        {
            std::ostringstream s;
            for (const auto &series : r.series)
                write_series_csv(s, series);
            return s.str();
        };
        ScenarioConfig d = figure_config(5, 20);
        d.drops = 20;
        d.variants = {lua_only, random_only, oc_pc, pc_oc};
        ScenarioConfig cl = d;
        cl.experiment = "clis";
        cl.ricean_factor_db = 10.0;
        ScenarioConfig cmp = d;
        cmp.experiment = "compare";
        int same = 0;
        for (int threads : {2, 4})
        {
            same += csv(run_dlis_experiment(d, {1})) == csv(run_dlis_experiment(d, {threads}));
            same += csv(run_clis_experiment(cl, {1})) == csv(run_clis_experiment(cl, {threads}));
            same += csv(run_frequency_comparison(cmp, {1})) == csv(run_frequency_comparison(cmp, {threads}));
        }
        return Outcome{same == 6, fmt("%.0f / 6 experiment and thread-count pairs identical", same)}; });

    std::printf("%d criteria failed\n", failures);
    return failures ? 1 : 0;
}
