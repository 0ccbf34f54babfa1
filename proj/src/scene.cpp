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

#include "lis/scene.hpp"

#include <numbers>
#include <stdexcept>

namespace lis
{
    double effective_distance(const User &user, const Surface &surface)
    {
        const double d = (user.position - surface.center).norm();
        if (!(d > 0.0))
            throw std::domain_error("User coincides with the surface center.");
        return d;
    }

    double path_loss(double distance, double kappa)
    {
        if (!(distance > 0.0))
            throw std::domain_error("Path loss needs a positive distance.");
        if (!(kappa > 0.0))
            throw std::domain_error("Path loss needs a positive wavenumber.");
        const double a = 1.0 / (2.0 * kappa * distance);
        return a * a;
    }

    bool check_far_field(const User &user, const Surface &surface, double lambda)
    {
        if (!(lambda > 0.0))
            throw std::domain_error("Wavelength must be positive.");
        const double d = (user.position - surface.center).norm();
        return d > 8.0 * surface.radius * surface.radius / lambda;
    }

    Vec3 rotate_into_surface(const User &user, const Surface &surface)
    {
        // Planar rotation about y; equals the tan-based form wherever that is defined.
        const Vec3 p = user.position - surface.center;
        const double c = std::cos(surface.orientation);
        const double s = std::sin(surface.orientation);
        return {p.x * c + p.z * s, p.y, p.z * c - p.x * s};
    }

    DirectionCosines direction_cosines(const User &user, const Surface &surface)
    {
        const Vec3 p = rotate_into_surface(user, surface);
        const double d = effective_distance(user, surface);
        DirectionCosines u;
        u.ux = p.x / d;
        u.uy = p.y / d;
        u.uz = p.z / d;
        u.iota = std::hypot(p.x, p.y) / d;
        return u;
    }

    PairCoeffs pair_coeffs(const User &a, const User &b, const Surface &surface)
    {
        const DirectionCosines ua = direction_cosines(a, surface);
        const DirectionCosines ub = direction_cosines(b, surface);
        PairCoeffs c;
        c.eta = ua.ux - ub.ux;
        c.xi = ua.uy - ub.uy;
        c.zeta = ua.uz - ub.uz;
        c.chi = std::hypot(c.eta, c.xi);
        c.varpi = std::hypot(c.chi, c.zeta);
        return c;
    }

    bool faces_surface(const User &user, const Surface &surface)
    {
        return rotate_into_surface(user, surface).z > 0.0;
    }

    double wavenumber(double lambda)
    {
        if (!(lambda > 0.0))
            throw std::domain_error("Wavelength must be positive.");
        return 2.0 * std::numbers::pi / lambda;
    }

    double wavelength(double kappa)
    {
        if (!(kappa > 0.0))
            throw std::domain_error("Wavenumber must be positive.");
        return 2.0 * std::numbers::pi / kappa;
    }
}
