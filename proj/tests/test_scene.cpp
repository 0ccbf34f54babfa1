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

#include <catch_amalgamated.hpp>

#include "lis/channel.hpp"
#include "lis/scene.hpp"

#include <cmath>
#include <random>

using namespace lis;

namespace
{
    User at(double x, double y, double z)
    {
        User u;
        u.position = {x, y, z};
        return u;
    }

    User random_user(std::mt19937_64 &rng)
    {
        std::uniform_real_distribution<double> xy(-500.0, 500.0), z(1.0, 300.0);
        return at(xy(rng), xy(rng), z(rng));
    }
}

TEST_CASE("effective_distance")
{
    const Surface s;
    CHECK(effective_distance(at(3, 4, 0), s) == 5.0);
    CHECK(effective_distance(at(0, 0, 7.5), s) == 7.5);
    CHECK(effective_distance(at(1, 1, 1), s) == Catch::Approx(std::sqrt(3.0)).epsilon(1e-15));

    Surface shifted;
    shifted.center = {10, 0, 0};
    CHECK(effective_distance(at(13, 4, 0), shifted) == 5.0);

    CHECK_THROWS_AS(effective_distance(at(0, 0, 0), s), std::domain_error);
}

TEST_CASE("path_loss")
{
    const double kappa = 3.0;
    CHECK(path_loss(1.0 / (2.0 * kappa), kappa) == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(path_loss(20.0, kappa) == Catch::Approx(path_loss(10.0, kappa) / 4.0).epsilon(1e-15));

    // 2 GHz-ish carrier at 100 m: (lambda / (4 pi d))^2
    const double lambda = 0.15;
    const double expected = std::pow(lambda / (4.0 * M_PI * 100.0), 2);
    CHECK(path_loss(100.0, wavenumber(lambda)) == Catch::Approx(expected).epsilon(1e-14));
    CHECK(expected == Catch::Approx(1.4248e-8).epsilon(1e-4));

    CHECK_THROWS_AS(path_loss(0.0, kappa), std::domain_error);
    CHECK_THROWS_AS(path_loss(-1.0, kappa), std::domain_error);
    CHECK_THROWS_AS(path_loss(1.0, 0.0), std::domain_error);
}

TEST_CASE("check_far_field")
{
    Surface s;
    s.radius = 5.0;
    // threshold 8 * 25 / 0.15 = 1333.33 m
    CHECK(check_far_field(at(0, 0, 1400), s, 0.15));
    CHECK_FALSE(check_far_field(at(0, 0, 1300), s, 0.15));

    // exactly on the Fraunhofer distance is not far field
    s.radius = 1.0;
    CHECK_FALSE(check_far_field(at(0, 0, 8.0), s, 1.0));

    s.radius = 1e-9;
    CHECK(check_far_field(at(0, 0, 1e-3), s, 0.15));
    CHECK_THROWS_AS(check_far_field(at(0, 0, 1), s, 0.0), std::domain_error);
}

TEST_CASE("rotate_into_surface")
{
    Surface s;
    const User u = at(1.5, -2.0, 7.0);
    const Vec3 same = rotate_into_surface(u, s);
    CHECK(same.x == 1.5);
    CHECK(same.y == -2.0);
    CHECK(same.z == 7.0);

    s.orientation = M_PI / 2;
    const Vec3 q = rotate_into_surface(at(0, 0, 4.0), s);
    CHECK(q.x == Catch::Approx(4.0).epsilon(1e-15));
    CHECK(q.y == 0.0);
    CHECK(q.z == Catch::Approx(0.0).margin(1e-15));

    std::mt19937_64 rng(3);
    s.orientation = 0.3;
    s.center = {5, -7, 2};
    for (int i = 0; i < 100; ++i)
    {
        const User r = random_user(rng);
        CHECK(rotate_into_surface(r, s).norm() == Catch::Approx((r.position - s.center).norm()).epsilon(1e-13));
    }
}

TEST_CASE("rotate_into_surface - matches the tan-based coordinate form")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> angle(-1.5, 1.5);
    for (int i = 0; i < 200; ++i)
    {
        const User u = random_user(rng);
        Surface s;
        s.orientation = angle(rng);
        const double t = s.orientation;
        const double x = u.position.x, y = u.position.y, z = u.position.z;
        const double xt = x / std::cos(t) + std::sin(t) * (z - x * std::tan(t));
        const double zt = std::cos(t) * (z - x * std::tan(t));
        const Vec3 p = rotate_into_surface(u, s);
        CHECK(p.x == Catch::Approx(xt).margin(1e-9));
        CHECK(p.y == y);
        CHECK(p.z == Catch::Approx(zt).margin(1e-9));
    }
}

TEST_CASE("direction_cosines - unit vector invariants")
{
    std::mt19937_64 rng(5);
    Surface s;
    s.orientation = -0.7;
    for (int i = 0; i < 200; ++i)
    {
        const auto d = direction_cosines(random_user(rng), s);
        CHECK(std::abs(d.ux * d.ux + d.uy * d.uy + d.uz * d.uz - 1.0) < 1e-12);
        CHECK(std::abs(d.iota * d.iota + d.uz * d.uz - 1.0) < 1e-12);
    }
}

TEST_CASE("pair_coeffs - worked examples")
{
    const Surface s;
    const User a = at(10, 20, 30);
    const PairCoeffs same = pair_coeffs(a, a, s);
    CHECK(same.eta == 0.0);
    CHECK(same.xi == 0.0);
    CHECK(same.zeta == 0.0);
    CHECK(same.chi == 0.0);
    CHECK(same.varpi == 0.0);

    const PairCoeffs collinear = pair_coeffs(at(0, 0, 50), at(0, 0, 100), s);
    CHECK(collinear.chi == 0.0);
    CHECK(collinear.varpi == 0.0);

    const double d = 40.0;
    const PairCoeffs mirrored = pair_coeffs(at(d, 0, d), at(-d, 0, d), s);
    CHECK(mirrored.eta == Catch::Approx(2.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(mirrored.xi == 0.0);
    CHECK(mirrored.zeta == Catch::Approx(0.0).margin(1e-15));
    CHECK(mirrored.chi == Catch::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("pair_coeffs - norm identities and bounds")
{
    std::mt19937_64 rng(6);
    Surface s;
    s.center = {100, -50, 0};
    for (int i = 0; i < 500; ++i)
    {
        const PairCoeffs p = pair_coeffs(random_user(rng), random_user(rng), s);
        CHECK(std::abs(p.chi * p.chi - p.eta * p.eta - p.xi * p.xi) < 1e-12);
        CHECK(std::abs(p.varpi * p.varpi - p.eta * p.eta - p.xi * p.xi - p.zeta * p.zeta) < 1e-12);
        CHECK(p.chi <= p.varpi);
        CHECK(std::abs(p.xi) <= p.chi);
    }
}

TEST_CASE("pair_coeffs - orientation keeps chi within [|xi|, varpi]")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i)
    {
        const User a = random_user(rng), b = random_user(rng);
        const PairCoeffs base = pair_coeffs(a, b, Surface{});
        Surface s;
        for (int l = 0; l < 10000; ++l)
        {
            s.orientation = -M_PI + 2.0 * M_PI * l / 9999.0;
            const double chi = pair_coeffs(a, b, s).chi;
            REQUIRE(chi >= std::abs(base.xi) - 1e-9);
            REQUIRE(chi <= base.varpi + 1e-9);
        }
    }
}

TEST_CASE("pair_coeffs - rotated frame equals the closed rotation formula")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    for (int i = 0; i < 300; ++i)
    {
        const User a = random_user(rng), b = random_user(rng);
        const PairCoeffs base = pair_coeffs(a, b, Surface{});
        Surface s;
        s.orientation = angle(rng);
        const PairCoeffs rotated = pair_coeffs(a, b, s);
        CHECK(std::abs(rotated.eta * rotated.eta - eta_squared_at(base, s.orientation)) < 1e-10);
        CHECK(std::abs(rotated.xi - base.xi) < 1e-12);
        CHECK(std::abs(rotated.chi - chi_at(base, s.orientation)) < 1e-10);
    }
}

TEST_CASE("faces_surface")
{
    Surface s;
    CHECK(faces_surface(at(1, 2, 3), s));
    CHECK_FALSE(faces_surface(at(1, 2, -3), s));
    s.orientation = M_PI;
    CHECK(faces_surface(at(1, 2, -3), s));
}
