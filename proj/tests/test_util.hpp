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

#include <random>
#include <vector>

namespace lis::testing
{
    inline User make_user(double x, double y, double z, double power = 1.0, double phase = 0.0)
    {
        User u;
        u.position = {x, y, z};
        u.power = power;
        u.phase = phase;
        return u;
    }

    /// User at a random direction in the upper half-space, beyond `min_distance`.
    inline User random_far_user(std::mt19937_64 &rng, double min_distance, double max_distance)
    {
        std::uniform_real_distribution<double> dist(min_distance, max_distance), cz(0.05, 1.0),
            az(-M_PI, M_PI), ph(-M_PI, M_PI);
        const double d = dist(rng), uz = cz(rng), a = az(rng);
        const double rho = std::sqrt(1.0 - uz * uz);
        return make_user(d * rho * std::cos(a), d * rho * std::sin(a), d * uz, 1.0, ph(rng));
    }

    /// Users uniform over a square at a fixed height above a surface at the origin.
    inline std::vector<User> random_drop(std::mt19937_64 &rng, int count, double side = 1000.0, double height = 25.0)
    {
        std::uniform_real_distribution<double> xy(-0.5 * side, 0.5 * side), ph(-M_PI, M_PI);
        std::vector<User> users;
        for (int k = 0; k < count; ++k)
        {
            const double x = xy(rng), y = xy(rng);
            users.push_back(make_user(x, y, height, 1.0, ph(rng)));
        }
        return users;
    }
}
