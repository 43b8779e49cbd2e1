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

#include "vlcpath/fitting.hpp"

#include "vlcpath/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace vlcpath
{

void FitConfig::validate() const
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ConfigError("fit: epsilon must lie in (0, 1)");
    if (min_points < 2)
        throw ConfigError("fit: min_points must be >= 2");
    if (!(assumed_order_n >= 0.0) || !std::isfinite(assumed_order_n))
        throw ConfigError("fit: assumed Lambertian order must be >= 0");
    if (min_distance_m && !(*min_distance_m > 0.0))
        throw ConfigError("fit: min distance must be > 0");
}

FittedModel FitReport::model() const
{
    ChannelParams p;
    p.k_db = k_db_hat;
    p.gamma = gamma_hat;
    p.lambertian_order = config.assumed_order_n;
    p.half_angle_rad = config.assumed_order_n > 0.0 ? half_angle_from_order(config.assumed_order_n) : 0.0;
    return {p, config.use_correction};
}

LineFit ordinary_least_squares(const std::vector<double> &x, const std::vector<double> &y)
{
    if (x.size() != y.size())
        throw DomainError("ordinary_least_squares: x and y differ in length");
    const std::size_t n = x.size();
    if (n < 2)
        throw InsufficientPointsError("ordinary_least_squares: need at least two points");

    double x_mean = 0.0;
    double y_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        x_mean += x[i];
        y_mean += y[i];
    }
    x_mean /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double dx = x[i] - x_mean;
        const double dy = y[i] - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0))
        throw DegenerateDesignError("ordinary_least_squares: all abscissae are equal");

    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = y_mean - fit.slope * x_mean;
    fit.residuals.resize(n);
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        fit.residuals[i] = y[i] - (fit.intercept + fit.slope * x[i]);
        ssr += fit.residuals[i] * fit.residuals[i];
    }
    fit.rmse = std::sqrt(ssr / static_cast<double>(n));
    fit.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
    return fit;
}

namespace
{

struct Design
{
    std::vector<double> x;
    std::vector<double> y;
    std::size_t dropped_near = 0;
    std::size_t dropped_degenerate = 0;
    double d_min = 0.0;
    double d_max = 0.0;
};

Design build_design(const DistanceTrace &trace, const FitConfig &config, bool corrected)
{
    const double w = trace.geometry.lateral_offset_m;
    if (!(w >= 0.0))
        throw DomainError("fit: lateral offset must be >= 0");

    ChannelParams shape;
    shape.lambertian_order = config.assumed_order_n;

    Design d;
    d.d_min = std::numeric_limits<double>::infinity();
    d.d_max = -std::numeric_limits<double>::infinity();
    for (const auto &p : trace.points)
    {
        if (!(p.distance_m > 0.0))
        {
            ++d.dropped_degenerate;
            continue;
        }
        const double ratio = w / p.distance_m;
        if (ratio * ratio >= kDegenerateRatio)
        {
            ++d.dropped_degenerate;
            continue;
        }

        bool keep = true;
        if (config.min_distance_m)
            keep = p.distance_m >= *config.min_distance_m;
        else if (!corrected && !config.include_near)
            keep = classify_regime(w, p.distance_m, config.epsilon) == Regime::Far;
        if (!keep)
        {
            ++d.dropped_near;
            continue;
        }

        double y = p.power_dbw;
        if (corrected)
            y -= near_field_correction(shape, w, p.distance_m);
        d.x.push_back(10.0 * std::log10(p.distance_m));
        d.y.push_back(y);
        d.d_min = std::min(d.d_min, p.distance_m);
        d.d_max = std::max(d.d_max, p.distance_m);
    }
    return d;
}

FitReport run_fit(const DistanceTrace &trace, const FitConfig &config)
{
    config.validate();
    const Design design = build_design(trace, config, config.use_correction);
    if (design.x.size() < config.min_points)
        throw InsufficientPointsError("fit: " + std::to_string(design.x.size()) +
                                      " points left after regime filtering, need at least " +
                                      std::to_string(config.min_points));

    const LineFit line = ordinary_least_squares(design.x, design.y);

    FitReport report;
    report.k_db_hat = line.intercept;
    report.gamma_hat = -line.slope;
    report.rmse_db = line.rmse;
    report.r_squared = line.r_squared;
    report.n_used = design.x.size();
    report.n_dropped_near = design.dropped_near;
    report.n_dropped_degenerate = design.dropped_degenerate;
    report.lateral_offset_m = trace.geometry.lateral_offset_m;
    report.regime_boundary_m = trace.geometry.lateral_offset_m / std::sqrt(config.epsilon);
    report.min_distance_used_m = design.d_min;
    report.max_distance_used_m = design.d_max;
    report.config = config;
    return report;
}

} // namespace

FitReport fit_log_linear(const DistanceTrace &trace, FitConfig config)
{
    config.use_correction = false;
    return run_fit(trace, config);
}

FitReport fit_with_correction(const DistanceTrace &trace, FitConfig config)
{
    config.use_correction = true;
    FitReport report = run_fit(trace, config);

    for (const double delta : {-0.5, 0.5})
    {
        FitConfig shifted = config;
        shifted.assumed_order_n = std::max(0.0, config.assumed_order_n + delta);
        const FitReport alt = run_fit(trace, shifted);
        report.sensitivity.push_back({shifted.assumed_order_n, alt.k_db_hat, alt.gamma_hat,
                                      alt.k_db_hat - report.k_db_hat, alt.gamma_hat - report.gamma_hat});
    }
    return report;
}

FitReport fit_trace(const DistanceTrace &trace, const FitConfig &config)
{
    return config.use_correction ? fit_with_correction(trace, config) : fit_log_linear(trace, config);
}

double predict_power_dbw(const FittedModel &model, double w, double distance_m)
{
    if (model.use_correction)
        return received_power_passby(model.params, w, distance_m);
    return received_power_far(model.params, distance_m);
}

FitEvaluation evaluate_fit(const FittedModel &model, const DistanceTrace &trace)
{
    FitEvaluation ev;
    if (trace.points.empty())
        return ev;

    const double w = trace.geometry.lateral_offset_m;
    double observed_mean = 0.0;
    for (const auto &p : trace.points)
        observed_mean += p.power_dbw;
    observed_mean /= static_cast<double>(trace.points.size());

    double sum = 0.0;
    double ssr = 0.0;
    double sst = 0.0;
    for (const auto &p : trace.points)
    {
        const double r = p.power_dbw - predict_power_dbw(model, w, p.distance_m);
        ev.residuals_db.push_back(r);
        sum += r;
        ssr += r * r;
        sst += (p.power_dbw - observed_mean) * (p.power_dbw - observed_mean);
        ev.max_abs_residual_db = std::max(ev.max_abs_residual_db, std::abs(r));
    }
    const auto n = static_cast<double>(trace.points.size());
    ev.mean_residual_db = sum / n;
    ev.rmse_db = std::sqrt(ssr / n);
    ev.r_squared = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
    return ev;
}

} // namespace vlcpath
