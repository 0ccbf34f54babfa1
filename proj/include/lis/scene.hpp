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

#include <cmath>
#include <limits>

namespace lis
{
    struct Vec3
    {
        double x = 0.0, y = 0.0, z = 0.0;

        double norm() const { return std::sqrt(x * x + y * y + z * z); }
        friend Vec3 operator-(const Vec3 &a, const Vec3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
        friend bool operator==(const Vec3 &, const Vec3 &) = default;
    };

    /// One single-antenna uplink terminal.
    struct User
    {
        Vec3 position;      // [m]
        double power = 1.0; // transmit power p_k [W]
        double phase = 0.0; // original phase in [-pi, pi]
        // LoS-to-scatter power ratio; +infinity means pure LoS.
        double ricean_factor = std::numeric_limits<double>::infinity();
    };

    /// A circular surface (whole LIS or one LIS-unit) lying in the z = 0 plane
    /// of its local frame, tilted about its local y-axis by `orientation`.
    struct Surface
    {
        Vec3 center;
        double radius = 1.0;      // [m]
        double orientation = 0.0; // [rad], within [-pi, pi]
    };

    /// Unit direction from a surface center towards a user, in the surface frame.
    struct DirectionCosines
    {
        double ux = 0.0, uy = 0.0, uz = 0.0;
        double iota = 0.0; // length of the projection onto the surface plane
    };

    /// Direction-cosine differences of a user pair seen from one surface.
    struct PairCoeffs
    {
        double eta = 0.0;   // x difference
        double xi = 0.0;    // y difference
        double zeta = 0.0;  // z difference
        double chi = 0.0;   // hypot(eta, xi)
        double varpi = 0.0; // hypot(eta, xi, zeta)
    };

    double effective_distance(const User &user, const Surface &surface);

    /// Free-space far-field path loss (1 / (2 kappa d))^2.
    double path_loss(double distance, double kappa);

    /// True iff the user lies strictly beyond the Fraunhofer distance 8 R^2 / lambda.
    bool check_far_field(const User &user, const Surface &surface, double lambda);

    /// User position translated to the surface center and rotated by the surface orientation.
    Vec3 rotate_into_surface(const User &user, const Surface &surface);

    DirectionCosines direction_cosines(const User &user, const Surface &surface);

    PairCoeffs pair_coeffs(const User &a, const User &b, const Surface &surface);

    /// True iff the user sits in the half-space the surface faces (local z > 0).
    bool faces_surface(const User &user, const Surface &surface);

    double wavenumber(double lambda);
    double wavelength(double kappa);
}
