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

#pragma once

#include "vlcpath/model_core.hpp"
#include "vlcpath/trace.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace vlcpath
{

struct FitConfig
{
    double epsilon = kDefaultFarEpsilon;
    bool use_correction = false;
    std::size_t min_points = 10;
    double assumed_order_n = 1.0;
    // When set, points with D >= min_distance_m are used instead of the epsilon rule.
    std::optional<double> min_distance_m;
    // Plain fit only: regress over every non-degenerate point, ignoring the regime filter.
    bool include_near = false;

    void validate() const;
};

// Re-fit at a perturbed Lambertian order.
struct OrderSensitivity
{
    double assumed_order_n = 0.0;
    double k_db_hat = 0.0;
    double gamma_hat = 0.0;
    double delta_k_db = 0.0;
    double delta_gamma = 0.0;
};

struct FittedModel
{
    ChannelParams params;
    bool use_correction = false;
};

struct FitReport
{
    double k_db_hat = 0.0;
    double gamma_hat = 0.0;
    double rmse_db = 0.0;
    double r_squared = 0.0;
    std::size_t n_used = 0;
    std::size_t n_dropped_near = 0;
    std::size_t n_dropped_degenerate = 0;
    double regime_boundary_m = 0.0; // w / sqrt(epsilon)
    double lateral_offset_m = 0.0;
    double min_distance_used_m = 0.0;
    double max_distance_used_m = 0.0;
    FitConfig config;
    std::vector<OrderSensitivity> sensitivity; // only with use_correction

    FittedModel model() const;
};

// Ordinary least squares y = intercept + slope x.
struct LineFit
{
    double intercept = 0.0;
    double slope = 0.0;
    double rmse = 0.0;
    double r_squared = 0.0;
    std::vector<double> residuals;
};

LineFit ordinary_least_squares(const std::vector<double> &x, const std::vector<double> &y);

// Regression of power on 10log10(D) over far-regime points.
FitReport fit_log_linear(const DistanceTrace &trace, FitConfig config);

// Regression of (power - G_dB) on 10log10(D) over all non-degenerate points.
FitReport fit_with_correction(const DistanceTrace &trace, FitConfig config);

// Dispatches on config.use_correction.
FitReport fit_trace(const DistanceTrace &trace, const FitConfig &config);

struct FitEvaluation
{
    std::vector<double> residuals_db; // observed - predicted, one per trace point
    double mean_residual_db = 0.0;
    double rmse_db = 0.0;
    double max_abs_residual_db = 0.0;
    double r_squared = 0.0;
};

// Residuals against the full pass-by model when `model.use_correction` is set, against
// the far line otherwise.
FitEvaluation evaluate_fit(const FittedModel &model, const DistanceTrace &trace);

double predict_power_dbw(const FittedModel &model, double lateral_offset_m, double distance_m);

} // namespace vlcpath
