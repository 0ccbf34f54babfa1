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

#include <array>
#include <complex>

namespace lis
{
    /// Matched-filter response of a circular surface to a pair separated by chi.
    struct LisResponse
    {
        double value = 0.0;      // B(R, kappa, chi) [m^2]
        double normalized = 0.0; // B / (pi R^2), equals 1 at chi = 0
    };

    /// Effective channel Sigma_{kk'} = A_{kk'} * B between two users.
    struct EffectiveChannel
    {
        std::complex<double> phase{1.0, 0.0}; // A_{kk'}, unit modulus
        LisResponse response;
        std::complex<double> sigma{0.0, 0.0}; // [m^2]
    };

    /// Result of minimising |B~| over the surface orientation.
    struct OrientationChoice
    {
        double theta = 0.0;       // minimising orientation [rad], within [-pi, pi]
        double value = 0.0;       // |B~| at theta
        bool zero_reached = false; // true if theta places chi on a zero of J1
        int zero_index = 0;        // n of the targeted j_{1,n}, 0 if none
        bool closed_form = false;  // zero located by the quadratic solution (vs. bracketing)
    };

    enum class RadialRule
    {
        gauss_legendre,
        midpoint
    };

    /// B~ = 2 J1(R kappa chi) / (R kappa chi), continuous at chi = 0.
    double normalized_response(double radius, double kappa, double chi);

    LisResponse lis_response(double radius, double kappa, double chi);

    /// Closed-form effective channel; chi is taken in the surface's rotated frame.
    EffectiveChannel effective_channel(const User &a, const User &b, const Surface &surface, double kappa);

    /// Direct polar-coordinate integration of h_a^*(x, y) h_b(x, y) over the disc under the
    /// planar-wave phase model. Angular rule is the periodic midpoint rule.
    std::complex<double> quadrature_oracle(const User &a, const User &b, const Surface &surface, double kappa,
                                           int n_radial, int n_angular,
                                           RadialRule rule = RadialRule::gauss_legendre);

    /// (eta^theta)^2 = eta^2 cos^2 + zeta^2 sin^2 + 2 eta zeta cos sin.
    double eta_squared_at(const PairCoeffs &pair, double theta);

    /// chi^theta for a pair whose coefficients were taken at orientation zero.
    double chi_at(const PairCoeffs &pair, double theta);

    /// The four stationary orientations of (eta^theta)^2, spaced pi/2 apart, wrapped into [-pi, pi].
    std::array<double, 4> stationary_orientations(const PairCoeffs &pair);

    /// Orientation minimising |B~(R, kappa, chi^theta)| over theta in [-pi, pi].
    OrientationChoice min_normalized_response(const PairCoeffs &pair, double radius, double kappa);

    /// Ricean interference term I_{kk'} of the closed-form Ricean SE approximation.
    double ricean_interference(const User &k, const User &other, const Surface &surface, double kappa);

    /// Wraps an angle into [-pi, pi].
    double wrap_angle(double theta);
}
