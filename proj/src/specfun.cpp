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

#include "lis/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lis::specfun
{
    namespace
    {
        constexpr double series_limit = 8.0;
        constexpr double miller_limit = 30.0;

        double series_j(int order, double x)
        {
            const double half = 0.5 * x;
            const double q = -half * half;
            double term = 1.0;
            for (int i = 1; i <= order; ++i)
                term *= half / i;
            double sum = term;
            for (int k = 0; k < 500; ++k)
            {
                term *= q / ((k + 1.0) * (k + 1.0 + order));
                sum += term;
                if (k > half && std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum)))
                    break;
            }
            return sum;
        }

        // Miller's algorithm normalised by J0 + 2 (J2 + J4 + ...) = 1.
        double miller_j(int order, double x)
        {
            int start = static_cast<int>(x) + 50;
            start += start % 2;
            double next = 0.0, cur = 1e-30, norm = 0.0, wanted = 0.0;
            for (int k = start; k >= 1; --k)
            {
                const double prev = (2.0 * k / x) * cur - next;
                next = cur;
                cur = prev;
                // cur now holds f_{k-1}
                const int m = k - 1;
                if (m == order)
                    wanted = cur;
                if (m > 0 && m % 2 == 0)
                    norm += 2.0 * cur;
                if (std::abs(cur) > 1e250)
                {
                    cur *= 1e-250;
                    next *= 1e-250;
                    norm *= 1e-250;
                    wanted *= 1e-250;
                }
            }
            norm += cur; // f_0
            return wanted / norm;
        }

        double hankel_j(int order, double x)
        {
            const double mu = 4.0 * order * order;
            double p = 1.0, q = 0.0, a = 1.0, last = 1.0;
            for (int k = 1; k < 200; ++k)
            {
                const double odd = 2.0 * k - 1.0;
                const double next = a * (mu - odd * odd) / (k * 8.0 * x);
                if (std::abs(next) > std::abs(last) && k > 2)
                    break; // asymptotic series starts diverging
                a = next;
                last = next;
                const int r = k % 4;
                if (r == 1)
                    q += a;
                else if (r == 2)
                    p -= a;
                else if (r == 3)
                    q -= a;
                else
                    p += a;
                if (std::abs(a) < 1e-17)
                    break;
            }
            const double phase = (0.5 * order + 0.25) * std::numbers::pi;
            const double cx = std::cos(x), sx = std::sin(x);
            const double cp = std::cos(phase), sp = std::sin(phase);
            const double cos_w = cx * cp + sx * sp;
            const double sin_w = sx * cp - cx * sp;
            return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_w - q * sin_w);
        }

        double mcmahon_guess(int order, int n)
        {
            const double mu = 4.0 * order * order;
            const double beta = (n + 0.5 * order - 0.25) * std::numbers::pi;
            const double e = 8.0 * beta;
            return beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e);
        }

        double newton_zero(int order, int n)
        {
            double x = mcmahon_guess(order, n);
            for (int it = 0; it < 60; ++it)
            {
                const double f = bessel_j(order, x);
                const double df = bessel_j(order - 1, x) - order / x * f;
                const double step = f / df;
                x -= step;
                if (std::abs(step) <= 1e-12 * x)
                {
                    // one polishing step; further steps only chase rounding noise
                    const double g = bessel_j(order, x);
                    return x - g / (bessel_j(order - 1, x) - order / x * g);
                }
            }
            throw std::runtime_error("bessel_zero: Newton iteration did not converge for order " +
                                     std::to_string(order) + ", n = " + std::to_string(n));
        }

        BesselZeroTable build_table(int order)
        {
            BesselZeroTable table;
            table.order = order;
            table.zeros.reserve(tabulated_zero_count);
            for (int n = 1; n <= tabulated_zero_count; ++n)
                table.zeros.push_back(newton_zero(order, n));
            return table;
        }

        void check_zero_order(int order)
        {
            if (order != 1 && order != 2)
                throw std::invalid_argument("Bessel zeros are available for orders 1 and 2 only.");
        }
    }

    double bessel_j(int order, double x)
    {
        if (order < 0 || order > 2)
            throw std::invalid_argument("bessel_j supports orders 0, 1 and 2 only.");
        if (!std::isfinite(x))
            throw std::domain_error("bessel_j argument must be finite.");

        const double sign = (x < 0.0 && order == 1) ? -1.0 : 1.0;
        const double ax = std::abs(x);
        double value;
        if (ax < series_limit)
            value = series_j(order, ax);
        else if (ax < miller_limit)
            value = miller_j(order, ax);
        else
            value = hankel_j(order, ax);
        return sign * value;
    }

    const BesselZeroTable &zero_table(int order)
    {
        check_zero_order(order);
        static const BesselZeroTable first = build_table(1);
        static const BesselZeroTable second = build_table(2);
        return order == 1 ? first : second;
    }

    double bessel_zero(int order, int n)
    {
        check_zero_order(order);
        if (n < 1)
            throw std::invalid_argument("bessel_zero index must be >= 1.");
        const auto &table = zero_table(order);
        if (n <= static_cast<int>(table.zeros.size()))
            return table.zeros[n - 1];
        return newton_zero(order, n);
    }

    int first_zero_index_at_least(int order, double x)
    {
        check_zero_order(order);
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::domain_error("first_zero_index_at_least needs a finite x >= 0.");
        // j_{order,n} ~ (n + order/2 - 1/4) pi; step back one to absorb the estimate error.
        int n = static_cast<int>(std::floor(x / std::numbers::pi - 0.5 * order + 0.25)) - 1;
        n = std::max(n, 1);
        while (n > 1 && bessel_zero(order, n) >= x)
            --n;
        while (bessel_zero(order, n) < x)
            ++n;
        return n;
    }
}
