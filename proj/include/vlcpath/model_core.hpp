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

#include <numbers>
#include <string_view>

namespace vlcpath
{

// Generalized-Lambertian transmitter as seen by a photodetector of area A_R.
struct LambertianSource
{
    double tx_power_w = 0.0;       // optical power P_t
    double detector_area_m2 = 0.0; // A_R
    double half_angle_rad = std::numbers::pi / 3.0;

    void validate() const;
};

// Path loss model parameters in log-domain form.
//
// `lambertian_order` and `half_angle_rad` are stored together; constructors keep them
// consistent and `order_mismatch()` reports how far an externally edited pair has drifted.
struct ChannelParams
{
    double k_db = 0.0;
    double gamma = 0.0;
    double lambertian_order = 1.0;
    double half_angle_rad = std::numbers::pi / 3.0;

    static ChannelParams from_half_angle(double k_db, double gamma, double half_angle_rad);
    static ChannelParams from_order(double k_db, double gamma, double lambertian_order);

    // K_dB built from transmitter power, detector area and the source pattern.
    static ChannelParams from_source(const LambertianSource &src, double gamma);

    // |n - order(half_angle)|
    double order_mismatch() const;

    // True when order_mismatch() <= 1e-9.
    bool is_consistent() const;
};

inline constexpr double kOrderConsistencyTolerance = 1e-9;

// Pass-by kinematics: constant speed along a straight path at lateral offset w.
struct PassGeometry
{
    double lateral_offset_m = 0.0;
    double speed_mps = 1.0;
    double peak_range_m = 0.0;
    double peak_time_s = 0.0;

    void validate() const;
};

enum class Regime
{
    Far,
    Near
};

std::string_view to_string(Regime r);

inline constexpr double kDefaultFarEpsilon = 0.01;

// n = -ln 2 / ln cos(half_angle), half_angle in (0, pi/2).
double lambertian_order(double half_angle_rad);

// Inverse of lambertian_order(), n > 0.
double half_angle_from_order(double lambertian_order);

// 10 log10((n + 1) A_R P_t / 2 pi)
double k_db_from_source(const LambertianSource &src);

// Absolute difference between the K_dB of `params` and that built from `src`.
double k_db_mismatch(const ChannelParams &params, const LambertianSource &src);

// theta = atan2(w, R).
double incidence_angle(double lateral_offset_m, double range_m);

// Euclidean separation sqrt(R^2 + w^2).
double distance_from_range(double lateral_offset_m, double range_m);

// Linear-domain Lambertian link budget in watts.
double received_power_lambertian(const LambertianSource &src, double gamma, double distance_m,
                                 double irradiance_rad, double incidence_rad);

// K_dB - gamma 10log10(D) + 10 (n + 1) log10(cos theta), in dBW, for aligned Tx/Rx (phi = theta).
double received_power_aligned(const ChannelParams &params, double distance_m, double incidence_rad);

// 5 (n + 1) log10(1 - w^2 / D^2), always <= 0.
double near_field_correction(const ChannelParams &params, double lateral_offset_m, double distance_m);

// Full log-domain pass-by model: far line plus the near-field correction.
double received_power_passby(const ChannelParams &params, double lateral_offset_m, double distance_m);

// Far-branch log-linear line K_dB - gamma 10log10(D).
double received_power_far(const ChannelParams &params, double distance_m);

// Far iff w^2/D^2 <= epsilon. The boundary is closed.
Regime classify_regime(double lateral_offset_m, double distance_m, double epsilon = kDefaultFarEpsilon);

// Two-branch piecewise model: the far line where classify_regime() says Far, the full
// pass-by model otherwise.
double received_power_two_regime(const ChannelParams &params, double lateral_offset_m, double distance_m,
                                 double epsilon = kDefaultFarEpsilon);

// D* = w sqrt(1 + (n + 1) / gamma), the maximizer of received_power_passby() over D > w.
double peak_distance(const ChannelParams &params, double lateral_offset_m);

// R* = sqrt(D*^2 - w^2) = w sqrt((n + 1) / gamma).
double peak_range(const ChannelParams &params, double lateral_offset_m);

double to_db(double linear);
double from_db(double db);

// Named parameter sets fitted from field data. Lambertian order is not part of the
// published fits; every preset assumes n = 1 (60 degree half angle).
namespace presets
{
ChannelParams night();         // K_dB = -35.2680, gamma = 0.9707
ChannelParams daylight();      // K_dB = -32.6335, gamma = 0.0175
ChannelParams night_alt();    // K_dB = -32.84,   gamma = 1.173
ChannelParams daylight_alt(); // K_dB = -32.63,   gamma = -0.01793

// Accepts "night", "daylight", "night-alt", "daylight-alt". Throws ConfigError otherwise.
ChannelParams by_name(std::string_view name);
} // namespace presets

inline constexpr double kReferenceSpeedMps = 8.9408; // 20 mph

} // namespace vlcpath
