// SPDX-License-Identifier: Apache-2.0
//
// vlcpath - visible light path loss modelling for vehicular links
// Copyright (C) 2026 The vlcpath Authors
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

#include "catch_amalgamated.hpp"

#include "vlcpath/errors.hpp"
#include "vlcpath/model_core.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace vlcpath;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// Covered tests:
// - Lambertian order, incidence angle and the Lambertian link budget
// - Log-domain aligned and pass-by models, near-field correction
// - Regime classification and the two-branch model
// - Analytic peak distance against a brute-force grid search
// - Parameter constructors and consistency checks

namespace
{
constexpr double pi = std::numbers::pi;

// Brute-force argmax of the pass-by model on a uniform grid in (w, d_max].
double grid_argmax(const ChannelParams &p, double w, double d_max, double step)
{
    double best_d = 0.0;
    double best = -INFINITY;
    for (double d = w + step; d <= d_max; d += step)
    {
        const double v = p.k_db - p.gamma * 10.0 * std::log10(d) +
                         5.0 * (p.lambertian_order + 1.0) * std::log10(1.0 - (w * w) / (d * d));
        if (v > best)
        {
            best = v;
            best_d = d;
        }
    }
    return best_d;
}
} // namespace

TEST_CASE("Lambertian order")
{
    CHECK_THAT(lambertian_order(pi / 3.0), WithinAbs(1.0, 1e-12));
    // 30 deg, 30-digit reference evaluation
    CHECK_THAT(lambertian_order(pi / 6.0), WithinAbs(4.818841679306418, 1e-12));
    // n -> 0+ as the half angle approaches pi/2 (logarithmically slowly)
    CHECK(lambertian_order(pi / 2.0 - 1e-9) < 0.034);
    CHECK(lambertian_order(pi / 2.0 - 1e-9) > 0.0);
    CHECK(lambertian_order(pi / 2.0 - 1e-9) < lambertian_order(pi / 2.0 - 1e-6));

    double prev = INFINITY;
    for (double a = 0.05; a < pi / 2.0; a += 0.05)
    {
        const double n = lambertian_order(a);
        CHECK(n > 0.0);
        CHECK(n < prev);
        prev = n;
    }

    CHECK_THROWS_AS(lambertian_order(0.0), DomainError);
    CHECK_THROWS_AS(lambertian_order(pi / 2.0), DomainError);
    CHECK_THROWS_AS(lambertian_order(-0.1), DomainError);

    for (double n : {0.3, 1.0, 2.5, 10.0})
        CHECK_THAT(lambertian_order(half_angle_from_order(n)), WithinRel(n, 1e-12));
}

TEST_CASE("Incidence angle")
{
    CHECK(incidence_angle(0.0, 10.0) == 0.0);
    CHECK_THAT(incidence_angle(5.0, 5.0), WithinAbs(pi / 4.0, 1e-15));
    CHECK_THAT(incidence_angle(1.0, std::sqrt(3.0)), WithinAbs(pi / 6.0, 1e-15));
    CHECK_THROWS_AS(incidence_angle(0.0, 0.0), GeometryError);

    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    for (int i = 0; i < 200; ++i)
    {
        const double w = u(gen);
        const double r = u(gen) + 1e-3;
        CHECK_THAT(std::cos(incidence_angle(w, r)), WithinAbs(r / std::sqrt(r * r + w * w), 1e-12));
    }
}

TEST_CASE("Lambertian received power")
{
    // (n + 1) * 2 pi / (2 pi * 1^2) = 2 W
    const LambertianSource src{2.0 * pi, 1.0, pi / 3.0};
    CHECK_THAT(received_power_lambertian(src, 2.0, 1.0, 0.0, 0.0), WithinRel(2.0, 1e-14));

    const double p1 = received_power_lambertian(src, 2.0, 3.0, 0.2, 0.2);
    const double p2 = received_power_lambertian(src, 2.0, 6.0, 0.2, 0.2);
    CHECK_THAT(p2 / p1, WithinRel(0.25, 1e-14));

    CHECK_THROWS_AS(received_power_lambertian(src, 2.0, 1.0, 0.1, pi / 3.0), FieldOfViewError);
    CHECK_THROWS_AS(received_power_lambertian(src, 2.0, 0.0, 0.1, 0.1), DomainError);
    CHECK_THROWS_AS(received_power_lambertian(LambertianSource{0.0, 1.0, 0.5}, 2.0, 1.0, 0.1, 0.1), DomainError);
}

TEST_CASE("Aligned log-domain model")
{
    const ChannelParams night = presets::night();
    CHECK_THAT(received_power_aligned(night, 10.0, 0.0), WithinAbs(-44.9750, 1e-9));
    CHECK(received_power_aligned(night, 1.0, 0.0) == night.k_db);
    CHECK_THROWS_AS(received_power_aligned(night, 10.0, pi / 2.0), DomainError);

    // Aligned dB form against 10 log10 of K D^-gamma cos^(n+1)
    const double d = 7.3;
    const double th = 0.4;
    const double linear = from_db(night.k_db) * std::pow(d, -night.gamma) * std::pow(std::cos(th), 2.0);
    CHECK_THAT(received_power_aligned(night, d, th), WithinAbs(to_db(linear), 1e-9));

    // Same geometry through the Lambertian path with theta = phi
    const LambertianSource src{20.0, 10e-6, pi / 4.0};
    const ChannelParams p = ChannelParams::from_source(src, 1.7);
    const double lin = received_power_lambertian(src, 1.7, d, 0.3, 0.3);
    CHECK_THAT(received_power_aligned(p, d, 0.3), WithinAbs(to_db(lin), 1e-9));
}

TEST_CASE("Near-field correction")
{
    const ChannelParams p = ChannelParams::from_order(0.0, 1.0, 1.0);
    CHECK(near_field_correction(p, 0.0, 3.0) == 0.0);
    CHECK_THAT(near_field_correction(p, 1.0, std::sqrt(2.0)), WithinAbs(-3.010299956639812, 1e-12));
    CHECK_THAT(near_field_correction(p, 1.0, 10.0), WithinAbs(-0.04364805402450088, 1e-12));
    CHECK_THROWS_AS(near_field_correction(p, 2.0, 2.0), DomainError);
    CHECK_THROWS_AS(near_field_correction(p, 3.0, 2.0), DomainError);
    CHECK(near_field_correction(p, 1.0, 1.0 + 1e-12) < -100.0);

    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.01, 20.0);
    for (int i = 0; i < 500; ++i)
    {
        const double w = u(gen);
        const double d = w + u(gen);
        CHECK(near_field_correction(p, w, d) < 0.0);
    }

    // Magnitude at the far boundary w^2/D^2 = eps
    for (double eps : {0.001, 0.01, 0.1})
    {
        const double w = 2.0;
        const double d = w / std::sqrt(eps);
        CHECK_THAT(near_field_correction(p, w, d), WithinAbs(5.0 * 2.0 * std::log10(1.0 - eps), 1e-12));
    }
}

TEST_CASE("Pass-by model")
{
    const ChannelParams night = presets::night();
    CHECK(received_power_passby(night, 0.0, 12.0) == received_power_far(night, 12.0));
    // -35.2680 - 0.9707 * 10log10(20) + 10 log10(0.99), 30-digit reference evaluation
    CHECK_THAT(received_power_passby(night, 2.0, 20.0), WithinAbs(-47.94074622193477, 1e-9));

    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.1, 30.0);
    for (int i = 0; i < 300; ++i)
    {
        const double w = u(gen);
        const double r = u(gen);
        const double d = distance_from_range(w, r);
        CHECK_THAT(received_power_passby(night, w, d),
                   WithinAbs(received_power_aligned(night, d, incidence_angle(w, r)), 1e-9));
    }

    // Monotonicity: decreasing with w = 0, rising then falling with w > 0
    double prev = INFINITY;
    for (double d = 0.5; d < 100.0; d *= 1.1)
    {
        const double v = received_power_passby(night, 0.0, d);
        CHECK(v < prev);
        prev = v;
    }
    const double w = 2.0;
    const double d_star = peak_distance(night, w);
    prev = -INFINITY;
    for (double d = w * 1.001; d < d_star; d += 0.01)
    {
        const double v = received_power_passby(night, w, d);
        CHECK(v > prev);
        prev = v;
    }
    prev = INFINITY;
    for (double d = d_star; d < 80.0; d += 0.05)
    {
        const double v = received_power_passby(night, w, d);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("Regime classification")
{
    CHECK(classify_regime(1.0, 100.0, 0.01) == Regime::Far);
    CHECK(classify_regime(5.0, 10.0, 0.01) == Regime::Near);
    // 0.25 is exactly representable: w^2/D^2 == eps
    CHECK(classify_regime(1.0, 2.0, 0.25) == Regime::Far);
    CHECK_THROWS_AS(classify_regime(1.0, 2.0, 1.0), DomainError);
    CHECK_THROWS_AS(classify_regime(1.0, 0.0, 0.5), DomainError);

    // Partition: Far for D >= w/sqrt(eps), Near below
    const double w = 3.0;
    const double eps = 0.04;
    const double boundary = w / std::sqrt(eps);
    for (double d = 3.01; d < 60.0; d += 0.37)
        CHECK((classify_regime(w, d, eps) == Regime::Far) == (d >= boundary));

    const ChannelParams night = presets::night();
    CHECK(received_power_two_regime(night, w, 40.0) == received_power_far(night, 40.0));
    CHECK(received_power_two_regime(night, w, 10.0) == received_power_passby(night, w, 10.0));
}

TEST_CASE("Peak distance")
{
    const ChannelParams unit = ChannelParams::from_order(0.0, 1.0, 1.0);
    CHECK_THAT(peak_distance(unit, 1.0), WithinAbs(std::sqrt(3.0), 1e-15));
    CHECK_THAT(grid_argmax(unit, 1.0, 10.0, 1e-5), WithinAbs(std::sqrt(3.0), 1e-5));

    CHECK_THAT(peak_distance(unit, 2.0), WithinRel(2.0 * peak_distance(unit, 1.0), 1e-15));

    const ChannelParams night = presets::night();
    // 2 sqrt(1 + 2/0.9707), 30-digit reference
    CHECK_THAT(peak_distance(night, 2.0), WithinAbs(3.498781962921540, 1e-12));
    CHECK_THAT(grid_argmax(night, 2.0, 20.0, 1e-5), WithinAbs(3.498781962921540, 1e-5));

    const double d = peak_distance(night, 2.0);
    CHECK_THAT(peak_range(night, 2.0), WithinRel(std::sqrt(d * d - 4.0), 1e-12));

    CHECK_THROWS_AS(peak_distance(presets::daylight_alt(), 2.0), UndefinedPeakError);
    CHECK_THROWS_AS(peak_distance(ChannelParams::from_order(0.0, 0.0, 1.0), 2.0), UndefinedPeakError);
    CHECK_THROWS_AS(peak_distance(night, 0.0), DomainError);
}

TEST_CASE("Channel parameter constructors")
{
    const ChannelParams a = ChannelParams::from_half_angle(-30.0, 2.0, pi / 6.0);
    CHECK(a.is_consistent());
    const ChannelParams b = ChannelParams::from_order(-30.0, 2.0, 4.0);
    CHECK(b.is_consistent());

    ChannelParams edited = b;
    edited.lambertian_order = 4.0 + 1e-6;
    CHECK_FALSE(edited.is_consistent());
    CHECK(edited.order_mismatch() > 1e-9);

    const LambertianSource src{20.0, 10e-6, pi / 3.0};
    const ChannelParams from_src = ChannelParams::from_source(src, 1.0);
    // (1 + 1) * 1e-5 * 20 / 2 pi
    CHECK_THAT(from_src.k_db, WithinAbs(10.0 * std::log10(4e-4 / (2.0 * pi)), 1e-12));
    CHECK(k_db_mismatch(from_src, src) < 1e-12);
    CHECK(k_db_mismatch(presets::night(), src) > 1.0);

    // gamma <= 0 is representable
    CHECK_NOTHROW(presets::daylight_alt());
    CHECK(presets::daylight_alt().gamma < 0.0);
    CHECK(presets::by_name("night").k_db == -35.2680);
    CHECK(presets::by_name("daylight").gamma == 0.0175);
    CHECK(presets::by_name("night-alt").gamma == 1.173);
    CHECK_THROWS_AS(presets::by_name("dusk"), ConfigError);
}

TEST_CASE("dB round trip")
{
    for (double x = 1e-12; x <= 1e3; x *= 1.7)
        CHECK_THAT(from_db(to_db(x)), WithinRel(x, 1e-12));
}
