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

#include "lis/channel.hpp"
#include "lis/specfun.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace lis
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        // Nodes and weights of the n-point Gauss-Legendre rule on [0, 1].
        void gauss_legendre(int n, std::vector<double> &nodes, std::vector<double> &weights)
        {
            nodes.assign(n, 0.0);
            weights.assign(n, 0.0);
            for (int i = 0; i < (n + 1) / 2; ++i)
            {
                double x = std::cos(pi * (i + 0.75) / (n + 0.5));
                double dp = 1.0;
                for (int it = 0; it < 100; ++it)
                {
                    double p0 = 1.0, p1 = x;
                    for (int k = 2; k <= n; ++k)
                    {
                        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                        p0 = p1;
                        p1 = p2;
                    }
                    if (n == 1)
                        p0 = 1.0, p1 = x;
                    dp = n * (x * p1 - p0) / (x * x - 1.0);
                    const double dx = p1 / dp;
                    x -= dx;
                    if (std::abs(dx) < 1e-16)
                        break;
                }
                const double w = 2.0 / ((1.0 - x * x) * dp * dp);
                nodes[i] = 0.5 * (1.0 - x);
                nodes[n - 1 - i] = 0.5 * (1.0 + x);
                weights[i] = weights[n - 1 - i] = 0.5 * w;
            }
        }

        double checked_argument(double radius, double kappa, double chi)
        {
            if (!(radius > 0.0))
                throw std::domain_error("Surface radius must be positive.");
            if (!(kappa > 0.0))
                throw std::domain_error("Wavenumber must be positive.");
            if (!(chi >= 0.0))
                throw std::domain_error("chi must be non-negative.");
            return radius * kappa * chi;
        }
    }

    double wrap_angle(double theta)
    {
        double t = std::remainder(theta, 2.0 * pi);
        if (t < -pi)
            t += 2.0 * pi;
        return t;
    }

    double normalized_response(double radius, double kappa, double chi)
    {
        const double u = checked_argument(radius, kappa, chi);
        if (u < 1e-12)
            return 1.0;
        return 2.0 * specfun::bessel_j(1, u) / u;
    }

    LisResponse lis_response(double radius, double kappa, double chi)
    {
        LisResponse r;
        r.normalized = normalized_response(radius, kappa, chi);
        r.value = pi * radius * radius * r.normalized;
        return r;
    }

    EffectiveChannel effective_channel(const User &a, const User &b, const Surface &surface, double kappa)
    {
        EffectiveChannel ch;
        const double da = effective_distance(a, surface);
        const double db = effective_distance(b, surface);
        ch.phase = std::polar(1.0, kappa * (da - db) + a.phase - b.phase);
        ch.response = lis_response(surface.radius, kappa, pair_coeffs(a, b, surface).chi);
        ch.sigma = ch.phase * ch.response.value;
        return ch;
    }

    std::complex<double> quadrature_oracle(const User &a, const User &b, const Surface &surface, double kappa,
                                           int n_radial, int n_angular, RadialRule rule)
    {
        if (n_radial < 1 || n_angular < 1)
            throw std::invalid_argument("Quadrature resolution must be positive.");

        // Planar wave: the path from user k to surface point (x, y) is shorter than
        // the center distance by the projection of (x, y) on the arrival direction.
        const DirectionCosines ua = direction_cosines(a, surface);
        const DirectionCosines ub = direction_cosines(b, surface);
        const double R = surface.radius;

        std::vector<double> r_nodes, r_weights;
        if (rule == RadialRule::gauss_legendre)
            gauss_legendre(n_radial, r_nodes, r_weights);
        else
        {
            r_nodes.resize(n_radial);
            r_weights.assign(n_radial, 1.0 / n_radial);
            for (int i = 0; i < n_radial; ++i)
                r_nodes[i] = (i + 0.5) / n_radial;
        }

        std::vector<double> cos_t(n_angular), sin_t(n_angular);
        for (int j = 0; j < n_angular; ++j)
        {
            const double t = 2.0 * pi * (j + 0.5) / n_angular;
            cos_t[j] = std::cos(t);
            sin_t[j] = std::sin(t);
        }

        std::complex<double> total{0.0, 0.0};
        for (int i = 0; i < n_radial; ++i)
        {
            const double r = R * r_nodes[i];
            std::complex<double> ring{0.0, 0.0};
            for (int j = 0; j < n_angular; ++j)
            {
                const double x = r * cos_t[j], y = r * sin_t[j];
                // conj(h_a) * h_b with h_k = exp(-j (kappa (d_k - x ux_k - y uy_k) + phi_k))
                const double shift_a = x * ua.ux + y * ua.uy;
                const double shift_b = x * ub.ux + y * ub.uy;
                ring += std::polar(1.0, -kappa * (shift_a - shift_b));
            }
            total += ring * (r * R * r_weights[i]);
        }
        total *= 2.0 * pi / n_angular;

        const double da = effective_distance(a, surface);
        const double db = effective_distance(b, surface);
        return total * std::polar(1.0, kappa * (da - db) + a.phase - b.phase);
    }

    double eta_squared_at(const PairCoeffs &pair, double theta)
    {
        const double c = std::cos(theta), s = std::sin(theta);
        return pair.eta * pair.eta * c * c + pair.zeta * pair.zeta * s * s + 2.0 * pair.eta * pair.zeta * c * s;
    }

    double chi_at(const PairCoeffs &pair, double theta)
    {
        return std::sqrt(pair.xi * pair.xi + std::max(0.0, eta_squared_at(pair, theta)));
    }

    std::array<double, 4> stationary_orientations(const PairCoeffs &pair)
    {
        const double first = 0.5 * std::atan2(2.0 * pair.eta * pair.zeta, pair.eta * pair.eta - pair.zeta * pair.zeta);
        std::array<double, 4> out{};
        for (int n = 0; n < 4; ++n)
            out[n] = wrap_angle(first + n * 0.5 * pi);
        return out;
    }

    namespace
    {
        // Orientation placing chi^theta on target by the quadratic in v = tan(2 theta),
        // accepted only if the root reproduces the target.
        bool zero_crossing_closed_form(const PairCoeffs &p, double target, double scale, double zero, double &theta)
        {
            const double e2 = p.eta * p.eta, z2 = p.zeta * p.zeta;
            const double ez = p.eta * p.zeta;
            const double c = 2.0 * target * target - p.xi * p.xi - p.varpi * p.varpi;
            const double den = 4.0 * ez * ez - c * c;
            const double disc = (e2 + z2) * (e2 + z2) - c * c;
            if (disc < 0.0)
                return false;

            std::vector<double> roots;
            if (std::abs(den) > 1e-300)
            {
                const double root = c * std::sqrt(disc);
                roots.push_back((-2.0 * ez * (e2 - z2) + root) / den);
                roots.push_back((-2.0 * ez * (e2 - z2) - root) / den);
            }
            else if (std::abs(ez * (e2 - z2)) > 0.0)
                roots.push_back(((e2 - z2) * (e2 - z2) - c * c) / (-4.0 * ez * (e2 - z2)));

            double best = std::numeric_limits<double>::infinity();
            for (double v : roots)
            {
                if (!std::isfinite(v))
                    continue;
                const double base = 0.5 * std::atan(v);
                for (int k = 0; k < 4; ++k)
                {
                    const double candidate = wrap_angle(base + k * 0.5 * pi);
                    const double miss = std::abs(scale * chi_at(p, candidate) - zero);
                    if (miss <= 1e-8 && miss < best)
                    {
                        best = miss;
                        theta = candidate;
                    }
                }
            }
            return std::isfinite(best);
        }

        // (eta^theta)^2 = A^2 cos^2(theta - theta_max) falls monotonically from A^2 to 0
        // on [theta_max, theta_max + pi/2]; bisect there.
        double zero_crossing_bracketed(const PairCoeffs &p, double target)
        {
            const double e2_target = target * target - p.xi * p.xi;
            double lo = std::atan2(p.zeta, p.eta);
            double hi = lo + 0.5 * pi;
            for (int it = 0; it < 200 && hi - lo > 1e-16; ++it)
            {
                const double mid = 0.5 * (lo + hi);
                if (eta_squared_at(p, mid) > e2_target)
                    lo = mid;
                else
                    hi = mid;
            }
            return wrap_angle(0.5 * (lo + hi));
        }
    }

    OrientationChoice min_normalized_response(const PairCoeffs &pair, double radius, double kappa)
    {
        const double scale = checked_argument(radius, kappa, 1.0);
        OrientationChoice out;
        const double lo = std::abs(pair.xi);
        const double hi = pair.varpi;

        if (pair.eta == 0.0 && pair.zeta == 0.0)
        {
            out.theta = 0.0;
            out.value = std::abs(normalized_response(radius, kappa, lo));
            return out;
        }

        const int n = specfun::first_zero_index_at_least(1, scale * lo);
        const double zero = specfun::bessel_zero(1, n);
        if (zero <= scale * hi)
        {
            const double target = zero / scale;
            double theta = 0.0;
            out.closed_form = zero_crossing_closed_form(pair, target, scale, zero, theta);
            if (!out.closed_form)
                theta = zero_crossing_bracketed(pair, target);
            out.theta = theta;
            out.zero_reached = true;
            out.zero_index = n;
            out.value = std::abs(normalized_response(radius, kappa, chi_at(pair, theta)));
            return out;
        }

        // No zero in reach: |B~| is unimodal between consecutive zeros, so the
        // minimum sits at an end of [|xi|, varpi], i.e. at a stationary orientation.
        const bool low_end = std::abs(normalized_response(radius, kappa, lo)) <= std::abs(normalized_response(radius, kappa, hi));
        auto stationary = stationary_orientations(pair);
        std::sort(stationary.begin(), stationary.end());
        double best_theta = stationary[0];
        double best_e2 = eta_squared_at(pair, best_theta);
        for (double t : stationary)
        {
            const double e2 = eta_squared_at(pair, t);
            if (low_end ? e2 < best_e2 - 1e-15 : e2 > best_e2 + 1e-15)
            {
                best_theta = t;
                best_e2 = e2;
            }
        }
        out.theta = best_theta;
        out.value = std::abs(normalized_response(radius, kappa, chi_at(pair, best_theta)));
        return out;
    }

    double ricean_interference(const User &k, const User &other, const Surface &surface, double kappa)
    {
        const double gk = k.ricean_factor, go = other.ricean_factor;
        if (!(gk >= 0.0) || !(go >= 0.0))
            throw std::domain_error("Ricean factors must be non-negative.");
        if (!std::isfinite(gk) || !std::isfinite(go))
            throw std::domain_error("Ricean interference needs finite Ricean factors.");

        const double R = surface.radius;
        const double b_chi = lis_response(R, kappa, pair_coeffs(k, other, surface).chi).value;
        const double b_k = lis_response(R, kappa, direction_cosines(k, surface).iota).value;
        const double b_o = lis_response(R, kappa, direction_cosines(other, surface).iota).value;
        const double pr2 = pi * pi * R * R;

        const double sum = gk * go * b_chi * b_chi + gk * b_k * b_k + go * b_o * b_o +
                           std::sqrt(gk * go) * pr2 * b_chi + 0.25 * pr2 * (pr2 + 1.0);
        return sum / ((1.0 + gk) * (1.0 + go));
    }
}
