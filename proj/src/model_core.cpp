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

#include "vlcpath/model_core.hpp"

#include "vlcpath/errors.hpp"

#include <cmath>
#include <string>

namespace vlcpath
{

namespace
{
constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_finite(double v, const char *what)
{
    if (!std::isfinite(v))
        throw DomainError(std::string(what) + " must be finite");
}
} // namespace

void LambertianSource::validate() const
{
    if (!(tx_power_w > 0.0) || !std::isfinite(tx_power_w))
        throw DomainError("LambertianSource: tx_power_w must be > 0");
    if (!(detector_area_m2 > 0.0) || !std::isfinite(detector_area_m2))
        throw DomainError("LambertianSource: detector_area_m2 must be > 0");
    if (!(half_angle_rad > 0.0 && half_angle_rad < kHalfPi))
        throw DomainError("LambertianSource: half_angle_rad must lie in (0, pi/2)");
}

ChannelParams ChannelParams::from_half_angle(double k_db, double gamma, double half_angle_rad)
{
    require_finite(k_db, "k_db");
    require_finite(gamma, "gamma");
    return ChannelParams{k_db, gamma, vlcpath::lambertian_order(half_angle_rad), half_angle_rad};
}

ChannelParams ChannelParams::from_order(double k_db, double gamma, double order)
{
    require_finite(k_db, "k_db");
    require_finite(gamma, "gamma");
    return ChannelParams{k_db, gamma, order, half_angle_from_order(order)};
}

ChannelParams ChannelParams::from_source(const LambertianSource &src, double gamma)
{
    src.validate();
    require_finite(gamma, "gamma");
    return ChannelParams{k_db_from_source(src), gamma, vlcpath::lambertian_order(src.half_angle_rad), src.half_angle_rad};
}

double ChannelParams::order_mismatch() const
{
    return std::abs(lambertian_order - vlcpath::lambertian_order(half_angle_rad));
}

bool ChannelParams::is_consistent() const
{
    return order_mismatch() <= kOrderConsistencyTolerance;
}

void PassGeometry::validate() const
{
    if (!(lateral_offset_m >= 0.0) || !std::isfinite(lateral_offset_m))
        throw DomainError("PassGeometry: lateral offset must be >= 0");
    if (!(speed_mps > 0.0) || !std::isfinite(speed_mps))
        throw DomainError("PassGeometry: speed must be > 0");
    if (!(peak_range_m >= 0.0) || !std::isfinite(peak_range_m))
        throw DomainError("PassGeometry: peak range must be >= 0");
    require_finite(peak_time_s, "PassGeometry: peak time");
}

std::string_view to_string(Regime r)
{
    return r == Regime::Far ? "far" : "near";
}

double lambertian_order(double half_angle_rad)
{
    if (!(half_angle_rad > 0.0 && half_angle_rad < kHalfPi))
        throw DomainError("lambertian_order: half angle must lie in (0, pi/2)");
    return -std::log(2.0) / std::log(std::cos(half_angle_rad));
}

double half_angle_from_order(double order)
{
    if (!(order > 0.0) || !std::isfinite(order))
        throw DomainError("half_angle_from_order: order must be > 0");
    // cos(phi) = 2^(-1/n)
    return std::acos(std::exp2(-1.0 / order));
}

double k_db_from_source(const LambertianSource &src)
{
    src.validate();
    const double n = lambertian_order(src.half_angle_rad);
    return to_db((n + 1.0) * src.detector_area_m2 * src.tx_power_w / (2.0 * std::numbers::pi));
}

double k_db_mismatch(const ChannelParams &params, const LambertianSource &src)
{
    return std::abs(params.k_db - k_db_from_source(src));
}

double incidence_angle(double w, double range_m)
{
    if (!(w >= 0.0) || !(range_m >= 0.0))
        throw DomainError("incidence_angle: offset and range must be >= 0");
    if (w == 0.0 && range_m == 0.0)
        throw GeometryError("incidence_angle: transmitter and receiver coincide");
    return std::atan2(w, range_m);
}

double distance_from_range(double w, double range_m)
{
    return std::hypot(range_m, w);
}

double received_power_lambertian(const LambertianSource &src, double gamma, double distance_m,
                                 double irradiance_rad, double incidence_rad)
{
    src.validate();
    if (!(distance_m > 0.0))
        throw DomainError("received_power_lambertian: distance must be > 0");
    if (!(irradiance_rad >= 0.0 && irradiance_rad < kHalfPi))
        throw DomainError("received_power_lambertian: irradiance angle must lie in [0, pi/2)");
    if (!(incidence_rad >= 0.0))
        throw DomainError("received_power_lambertian: incidence angle must be >= 0");
    if (incidence_rad >= src.half_angle_rad)
        throw FieldOfViewError("received_power_lambertian: incidence angle outside the half-power semi-angle");

    const double n = lambertian_order(src.half_angle_rad);
    const double k = (n + 1.0) * src.detector_area_m2 * src.tx_power_w / (2.0 * std::numbers::pi);
    return k / std::pow(distance_m, gamma) * std::pow(std::cos(irradiance_rad), n) * std::cos(incidence_rad);
}

double received_power_far(const ChannelParams &params, double distance_m)
{
    if (!(distance_m > 0.0))
        throw DomainError("distance must be > 0");
    return params.k_db - params.gamma * 10.0 * std::log10(distance_m);
}

double received_power_aligned(const ChannelParams &params, double distance_m, double incidence_rad)
{
    if (!(incidence_rad >= 0.0 && incidence_rad < kHalfPi))
        throw DomainError("received_power_aligned: incidence angle must lie in [0, pi/2)");
    return received_power_far(params, distance_m) +
           10.0 * (params.lambertian_order + 1.0) * std::log10(std::cos(incidence_rad));
}

double near_field_correction(const ChannelParams &params, double w, double distance_m)
{
    if (!(w >= 0.0) || !(w < distance_m))
        throw DomainError("near_field_correction: requires 0 <= w < distance");
    if (w == 0.0)
        return 0.0;
    const double ratio = w / distance_m;
    // log1p keeps the far tail accurate where w^2/D^2 is tiny
    return 5.0 * (params.lambertian_order + 1.0) * std::log1p(-ratio * ratio) / std::numbers::ln10;
}

double received_power_passby(const ChannelParams &params, double w, double distance_m)
{
    const double g_db = near_field_correction(params, w, distance_m);
    return received_power_far(params, distance_m) + g_db;
}

Regime classify_regime(double w, double distance_m, double epsilon)
{
    if (!(distance_m > 0.0))
        throw DomainError("classify_regime: distance must be > 0");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw DomainError("classify_regime: epsilon must lie in (0, 1)");
    if (!(w >= 0.0))
        throw DomainError("classify_regime: offset must be >= 0");
    const double ratio = w / distance_m;
    return ratio * ratio <= epsilon ? Regime::Far : Regime::Near;
}

double received_power_two_regime(const ChannelParams &params, double w, double distance_m, double epsilon)
{
    if (classify_regime(w, distance_m, epsilon) == Regime::Far)
        return received_power_far(params, distance_m);
    return received_power_passby(params, w, distance_m);
}

double peak_distance(const ChannelParams &params, double w)
{
    if (!(w > 0.0) || !std::isfinite(w))
        throw DomainError("peak_distance: lateral offset must be > 0");
    if (!(params.gamma > 0.0))
        throw UndefinedPeakError("peak_distance: received power is monotone in distance when gamma <= 0");
    return w * std::sqrt(1.0 + (params.lambertian_order + 1.0) / params.gamma);
}

double peak_range(const ChannelParams &params, double w)
{
    if (!(w > 0.0) || !std::isfinite(w))
        throw DomainError("peak_range: lateral offset must be > 0");
    if (!(params.gamma > 0.0))
        throw UndefinedPeakError("peak_range: received power is monotone in distance when gamma <= 0");
    return w * std::sqrt((params.lambertian_order + 1.0) / params.gamma);
}

double to_db(double linear)
{
    return 10.0 * std::log10(linear);
}

double from_db(double db)
{
    return std::pow(10.0, db / 10.0);
}

namespace presets
{
ChannelParams night()
{
    return ChannelParams::from_order(-35.2680, 0.9707, 1.0);
}

ChannelParams daylight()
{
    return ChannelParams::from_order(-32.6335, 0.0175, 1.0);
}

ChannelParams night_alt()
{
    return ChannelParams::from_order(-32.84, 1.173, 1.0);
}

ChannelParams daylight_alt()
{
    return ChannelParams::from_order(-32.63, -0.01793, 1.0);
}

ChannelParams by_name(std::string_view name)
{
    if (name == "night")
        return night();
    if (name == "daylight")
        return daylight();
    if (name == "night-alt")
        return night_alt();
    if (name == "daylight-alt")
        return daylight_alt();
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}
} // namespace presets

} // namespace vlcpath
