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

#include <vector>

namespace lis::specfun
{
    /// Positive zeros j_{order,1} < j_{order,2} < ... of J_order.
    struct BesselZeroTable
    {
        int order = 1;
        std::vector<double> zeros; // zeros[n-1] = j_{order,n}
    };

    /// Number of zeros tabulated per order at first use.
    inline constexpr int tabulated_zero_count = 64;

    /// Bessel function of the first kind J_order(x), order in {0, 1, 2}.
    ///
    /// Ascending power series for |x| < 12, Miller backward recurrence up to
    /// |x| < 30 and the Hankel asymptotic expansion beyond. Absolute error is
    /// below 1e-12 for |x| <= 1e4. Throws std::domain_error for non-finite x
    /// and std::invalid_argument for an unsupported order.
    double bessel_j(int order, double x);

    /// n-th positive zero j_{order,n} (order in {1, 2}, n >= 1).
    ///
    /// Served from the startup table for n <= 64, otherwise computed by Newton
    /// iteration from the McMahon expansion. Throws std::runtime_error if the
    /// iteration fails to converge.
    double bessel_zero(int order, int n);

    /// Smallest n with j_{order,n} >= x (x >= 0).
    int first_zero_index_at_least(int order, double x);

    /// The tabulated zeros of J_order, built once and shared read-only.
    const BesselZeroTable &zero_table(int order);
}
