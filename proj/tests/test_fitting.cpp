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

#include "acceptance/ols_oracle.hpp"
#include "vlcpath/errors.hpp"
#include "vlcpath/fitting.hpp"
#include "vlcpath/simulator.hpp"

#include <cmath>
#include <random>

using namespace vlcpath;
using Catch::Matchers::WithinAbs;

namespace
{
DistanceTrace model_trace(const ChannelParams &p, double w, double d_lo, double d_hi, std::size_t count,
                          double sigma = 0.0, std::uint64_t seed = 0)
{
    GaussianRng rng(seed);
    DistanceTrace t;
    t.geometry.lateral_offset_m = w;
    for (std::size_t i = 0; i < count; ++i)
    {
        const double d = d_lo + (d_hi - d_lo) * static_cast<double>(i) / static_cast<double>(count - 1);
        const double noise = sigma > 0.0 ? sigma * rng.standard_normal() : 0.0;
        t.points.push_back({std::sqrt((d - w) * (d + w)), d, received_power_passby(p, w, d) + noise});
    }
    return t;
}

FitConfig loose(std::size_t min_points = 2)
{
    FitConfig c;
    c.min_points = min_points;
    return c;
}
} // namespace

TEST_CASE("Exact line through two points")
{
    DistanceTrace t;
    t.points = {{10.0, 10.0, -45.0}, {100.0, 100.0, -55.0}};
    const FitReport r = fit_log_linear(t, loose());
    CHECK_THAT(r.gamma_hat, WithinAbs(1.0, 1e-12));
    CHECK_THAT(r.k_db_hat, WithinAbs(-35.0, 1e-12));
    CHECK(r.n_used == 2);
    CHECK(r.rmse_db <= 1e-12);
}

TEST_CASE("Noiseless far-field recovery")
{
    const ChannelParams night = presets::night();
    const DistanceTrace t = model_trace(night, 0.0, 5.0, 90.0, 500);
    const FitReport r = fit_log_linear(t, FitConfig{});
    CHECK_THAT(r.k_db_hat, WithinAbs(night.k_db, 1e-6));
    CHECK_THAT(r.gamma_hat, WithinAbs(night.gamma, 1e-6));
    CHECK(r.rmse_db <= 1e-9);
    CHECK(r.r_squared > 0.999999);
    CHECK(r.regime_boundary_m == 0.0);
}

TEST_CASE("Noisy far-field recovery matches the textbook oracle")
{
    const ChannelParams night = presets::night();
    const DistanceTrace t = model_trace(night, 0.0, 10.0, 89.0, 800, 1.0, 20260214);
    const FitReport r = fit_log_linear(t, FitConfig{});
    CHECK(r.n_used == 800);
    CHECK(std::abs(r.gamma_hat - 0.9707) <= 0.05);
    CHECK(std::abs(r.k_db_hat + 35.2680) <= 0.5);

    std::vector<double> x, y;
    for (const auto &p : t.points)
    {
        x.push_back(10.0 * std::log10(p.distance_m));
        y.push_back(p.power_dbw);
    }
    const auto oracle = testing::textbook_ols(x, y);
    CHECK_THAT(r.k_db_hat, WithinAbs(oracle.intercept, 1e-9));
    CHECK_THAT(r.gamma_hat, WithinAbs(-oracle.slope, 1e-9));
}

TEST_CASE("Near-field corrected fit")
{
    const ChannelParams night = presets::night();
    const double w = 2.0;
    const DistanceTrace full = model_trace(night, w, 1.2 * w, 60.0, 600);

    FitConfig cfg;
    const FitReport corrected = fit_with_correction(full, cfg);
    CHECK(corrected.config.use_correction);
    CHECK(corrected.n_used == 600);
    CHECK_THAT(corrected.k_db_hat, WithinAbs(night.k_db, 1e-6));
    CHECK_THAT(corrected.gamma_hat, WithinAbs(night.gamma, 1e-6));
    REQUIRE(corrected.sensitivity.size() == 2);
    CHECK(corrected.sensitivity[0].assumed_order_n == 0.5);
    CHECK(corrected.sensitivity[1].assumed_order_n == 1.5);
    CHECK(std::abs(corrected.sensitivity[1].delta_gamma) > 0.0);

    FitConfig all = cfg;
    all.include_near = true;
    const FitReport plain = fit_log_linear(full, all);
    CHECK(std::abs(plain.gamma_hat - night.gamma) > std::abs(corrected.gamma_hat - night.gamma));

    // w = 0: correction is identically zero
    const DistanceTrace on_axis = model_trace(night, 0.0, 3.0, 60.0, 300, 0.7, 4);
    const FitReport a = fit_log_linear(on_axis, cfg);
    const FitReport b = fit_with_correction(on_axis, cfg);
    CHECK_THAT(a.k_db_hat, WithinAbs(b.k_db_hat, 1e-12));
    CHECK_THAT(a.gamma_hat, WithinAbs(b.gamma_hat, 1e-12));
    CHECK_THAT(a.rmse_db, WithinAbs(b.rmse_db, 1e-12));
    CHECK(a.n_used == b.n_used);

    // correct n: adding near points never degrades noiseless recovery
    const DistanceTrace far_only = model_trace(night, w, 20.0, 60.0, 300);
    const FitReport far_fit = fit_with_correction(far_only, cfg);
    CHECK(std::abs(corrected.gamma_hat - night.gamma) <= std::abs(far_fit.gamma_hat - night.gamma) + 1e-9);
}

TEST_CASE("Regime filtering and errors")
{
    const ChannelParams night = presets::night();
    const double w = 3.0;
    const DistanceTrace t = model_trace(night, w, 3.6, 60.0, 400);

    const FitReport r = fit_log_linear(t, FitConfig{});
    CHECK_THAT(r.regime_boundary_m, WithinAbs(30.0, 1e-12));
    CHECK(r.n_used + r.n_dropped_near == 400);
    CHECK(r.min_distance_used_m >= 30.0);

    FitConfig by_distance;
    by_distance.min_distance_m = 10.0;
    const FitReport rd = fit_log_linear(t, by_distance);
    CHECK(rd.min_distance_used_m >= 10.0);
    CHECK(rd.n_used > r.n_used);

    // plain fit: near points strictly increase noiseless RMSE
    FitConfig all;
    all.include_near = true;
    CHECK(fit_log_linear(t, all).rmse_db > rd.rmse_db);
    CHECK(rd.rmse_db > r.rmse_db);

    FitConfig strict;
    strict.min_points = 1000;
    CHECK_THROWS_AS(fit_log_linear(t, strict), InsufficientPointsError);

    DistanceTrace same_d;
    for (int i = 0; i < 12; ++i)
        same_d.points.push_back({10.0, 10.0, -45.0 + 0.1 * i});
    CHECK_THROWS_AS(fit_log_linear(same_d, FitConfig{}), DegenerateDesignError);

    FitConfig bad;
    bad.epsilon = 1.0;
    CHECK_THROWS_AS(fit_log_linear(t, bad), ConfigError);
    bad = FitConfig{};
    bad.min_points = 1;
    CHECK_THROWS_AS(fit_log_linear(t, bad), ConfigError);
}

TEST_CASE("OLS properties")
{
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> ud(1.0, 100.0);
    std::normal_distribution<double> noise(0.0, 2.0);

    for (int trial = 0; trial < 20; ++trial)
    {
        DistanceTrace t;
        for (int i = 0; i < 50; ++i)
        {
            const double d = ud(gen);
            t.points.push_back({d, d, -30.0 - 1.5 * 10.0 * std::log10(d) + noise(gen)});
        }
        const FitReport base = fit_log_linear(t, loose());

        // residuals orthogonal to the intercept and to D_dB
        std::vector<double> x, y;
        for (const auto &p : t.points)
        {
            x.push_back(10.0 * std::log10(p.distance_m));
            y.push_back(p.power_dbw);
        }
        const LineFit line = ordinary_least_squares(x, y);
        double sum = 0.0, cov = 0.0, x_mean = 0.0;
        for (double xi : x)
            x_mean += xi / static_cast<double>(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            sum += line.residuals[i];
            cov += line.residuals[i] * (x[i] - x_mean);
        }
        CHECK(std::abs(sum) <= 1e-9);
        CHECK(std::abs(cov) <= 1e-9);

        // adding c dB shifts K only
        DistanceTrace shifted = t;
        for (auto &p : shifted.points)
            p.power_dbw += 4.25;
        const FitReport s = fit_log_linear(shifted, loose());
        CHECK_THAT(s.k_db_hat, WithinAbs(base.k_db_hat + 4.25, 1e-12));
        CHECK_THAT(s.gamma_hat, WithinAbs(base.gamma_hat, 1e-12));

        // scaling distance by s shifts K by gamma 10log10(s)
        DistanceTrace scaled = t;
        for (auto &p : scaled.points)
        {
            p.distance_m *= 3.28084;
            p.range_m *= 3.28084;
        }
        const FitReport u = fit_log_linear(scaled, loose());
        CHECK_THAT(u.gamma_hat, WithinAbs(base.gamma_hat, 1e-12));
        CHECK_THAT(u.k_db_hat, WithinAbs(base.k_db_hat + base.gamma_hat * 10.0 * std::log10(3.28084), 1e-9));
    }
}

TEST_CASE("Evaluate fit")
{
    const ChannelParams night = presets::night();
    const double w = 2.0;
    const DistanceTrace t = model_trace(night, w, 2.5, 80.0, 300);
    const FitReport r = fit_with_correction(t, FitConfig{});
    const FitEvaluation self = evaluate_fit(r.model(), t);
    CHECK(self.residuals_db.size() == 300);
    CHECK(self.max_abs_residual_db <= 1e-9);

    DistanceTrace offset = t;
    for (auto &p : offset.points)
        p.power_dbw += 3.0;
    const FitEvaluation off = evaluate_fit(r.model(), offset);
    CHECK_THAT(off.mean_residual_db, WithinAbs(3.0, 1e-9));

    const FitEvaluation vs_night = evaluate_fit({night, true}, t);
    const FitEvaluation vs_day = evaluate_fit({presets::daylight(), true}, t);
    CHECK(vs_day.rmse_db > vs_night.rmse_db);

    CHECK(evaluate_fit({night, false}, DistanceTrace{}).residuals_db.empty());
}
