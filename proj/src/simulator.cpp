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

#include "vlcpath/simulator.hpp"

#include "vlcpath/errors.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <string>

namespace vlcpath
{

double GaussianRng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianRng::standard_normal()
{
    if (spare_)
    {
        const double z = *spare_;
        spare_.reset();
        return z;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    return radius * std::cos(angle);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream)
{
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void ScenarioConfig::validate() const
{
    if (!std::isfinite(params.k_db) || !std::isfinite(params.gamma))
        throw ConfigError("scenario: channel parameters must be finite");
    if (!(params.lambertian_order >= 0.0))
        throw ConfigError("scenario: Lambertian order must be >= 0");
    if (!(lateral_offset_m >= 0.0) || !std::isfinite(lateral_offset_m))
        throw ConfigError("scenario: lateral offset must be >= 0");
    if (!(speed_mps > 0.0) || !std::isfinite(speed_mps))
        throw ConfigError("scenario: speed must be > 0");
    if (!(duration_s > 0.0) || !std::isfinite(duration_s))
        throw ConfigError("scenario: duration must be > 0");
    if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz))
        throw ConfigError("scenario: sample rate must be > 0");
    if (!(noise_sigma_db >= 0.0))
        throw ConfigError("scenario: noise sigma must be >= 0");
    if (!(ambient_sigma_w >= 0.0))
        throw ConfigError("scenario: ambient sigma must be >= 0");
    if (ambient_power_dbw && !std::isfinite(*ambient_power_dbw))
        throw ConfigError("scenario: ambient power must be finite");
    if (sample_count() < 2)
        throw ConfigError("scenario: duration * sample rate must give at least two samples");
    if (emit == TraceUnit::Voltage)
        detector.validate();
}

std::size_t ScenarioConfig::sample_count() const
{
    return static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
}

double approach_range(const ScenarioConfig &config, std::size_t index)
{
    const double t = static_cast<double>(index) / config.sample_rate_hz;
    return config.speed_mps * (config.duration_s - t);
}

SimulatedPassby synthesize_passby(const ScenarioConfig &config)
{
    config.validate();
    const std::size_t n = config.sample_count();
    const double w = config.lateral_offset_m;

    GaussianRng signal_noise(config.seed);
    GaussianRng ambient_noise(derive_seed(config.seed, 1));

    std::vector<Sample> samples;
    samples.reserve(n);
    std::size_t peak_index = 0;
    double peak_power = -std::numeric_limits<double>::infinity();
    std::size_t saturated = 0;

    for (std::size_t i = 0; i < n; ++i)
    {
        const double t = static_cast<double>(i) / config.sample_rate_hz;
        const double range = approach_range(config, i);
        const double model_dbw = received_power_passby(config.params, w, distance_from_range(w, range));
        if (model_dbw > peak_power)
        {
            peak_power = model_dbw;
            peak_index = i;
        }

        double p_dbw = model_dbw;
        if (config.noise_sigma_db > 0.0)
            p_dbw += config.noise_sigma_db * signal_noise.standard_normal();
        if (config.ambient_power_dbw)
        {
            double p_w = from_db(p_dbw) + from_db(*config.ambient_power_dbw);
            if (config.ambient_sigma_w > 0.0)
                p_w += config.ambient_sigma_w * ambient_noise.standard_normal();
            p_dbw = to_db(std::max(p_w, kMinPowerW));
        }

        double value = p_dbw;
        if (config.emit == TraceUnit::Voltage)
        {
            const VoltageReading v = power_to_voltage(config.detector, from_db(p_dbw));
            saturated += v.saturated ? 1 : 0;
            value = config.adc_effects ? quantize(config.detector, v.volts) : v.volts;
        }
        samples.push_back({t, value});
    }

    RawTrace::Metadata meta{
        {"generator", std::string(GaussianRng::kName)},
        {"seed", std::to_string(config.seed)},
        {"source", "synthesize_passby"},
    };

    SimulatedPassby out{RawTrace(config.emit, config.sample_rate_hz, std::move(samples), std::move(meta)), {}, 0, 0.0,
                        0};
    out.truth.lateral_offset_m = w;
    out.truth.speed_mps = config.speed_mps;
    out.truth.peak_range_m = approach_range(config, peak_index);
    out.truth.peak_time_s = static_cast<double>(peak_index) / config.sample_rate_hz;
    out.truth_peak_index = peak_index;
    out.truth_peak_power_dbw = peak_power;
    out.saturated_count = saturated;
    return out;
}

std::vector<StaticRun> synthesize_static(const ChannelParams &params, const std::vector<double> &distances_m,
                                         std::size_t samples_per_point, double noise_sigma_db, std::uint64_t seed,
                                         double w, double sample_rate_hz)
{
    if (distances_m.empty())
        throw ConfigError("static scenario: no distances");
    if (samples_per_point == 0)
        throw ConfigError("static scenario: samples_per_point must be >= 1");
    if (!(noise_sigma_db >= 0.0))
        throw ConfigError("static scenario: noise sigma must be >= 0");
    if (!(w >= 0.0))
        throw ConfigError("static scenario: lateral offset must be >= 0");
    if (!(sample_rate_hz > 0.0))
        throw ConfigError("static scenario: sample rate must be > 0");

    GaussianRng rng(seed);
    std::vector<StaticRun> runs;
    for (const double d : distances_m)
    {
        if (!(d > w))
            throw ConfigError("static scenario: every distance must exceed the lateral offset");
        const double model_dbw = received_power_passby(params, w, d);
        std::vector<Sample> samples;
        samples.reserve(samples_per_point);
        for (std::size_t i = 0; i < samples_per_point; ++i)
        {
            double p = model_dbw;
            if (noise_sigma_db > 0.0)
                p += noise_sigma_db * rng.standard_normal();
            samples.push_back({static_cast<double>(i) / sample_rate_hz, p});
        }
        RawTrace::Metadata meta{{"generator", std::string(GaussianRng::kName)},
                                {"seed", std::to_string(seed)},
                                {"source", "synthesize_static"}};
        runs.push_back({d, RawTrace(TraceUnit::PowerDbw, sample_rate_hz, std::move(samples), std::move(meta))});
    }
    return runs;
}

std::vector<AmbientStudyRow> ambient_floor_study(const AmbientStudyConfig &config)
{
    if (config.ambient_relative_db.empty())
        throw ConfigError("ambient study: empty grid");
    if (config.base.emit != TraceUnit::PowerDbw)
        throw ConfigError("ambient study: base scenario must emit power_dbw");

    ScenarioConfig reference = config.base;
    reference.ambient_power_dbw.reset();
    reference.noise_sigma_db = 0.0;
    const SimulatedPassby clean = synthesize_passby(reference);

    auto run_cell = [&](double relative_db) {
        ScenarioConfig cell = config.base;
        AmbientStudyRow row;
        row.ambient_relative_db = relative_db;
        if (std::isfinite(relative_db))
        {
            cell.ambient_power_dbw = clean.truth_peak_power_dbw + relative_db;
            row.ambient_dbw = cell.ambient_power_dbw;
        }
        else if (relative_db > 0.0)
        {
            throw ConfigError("ambient study: +infinity is not a valid ambient level");
        }
        else
        {
            cell.ambient_power_dbw.reset();
        }
        const SimulatedPassby sim = synthesize_passby(cell);
        const TransformResult tr = transform_to_distance(sim.trace, clean.truth, config.smooth_window);
        const FitReport fit = fit_trace(tr.trace, config.fit);
        row.k_db_hat = fit.k_db_hat;
        row.gamma_hat = fit.gamma_hat;
        row.rmse_db = fit.rmse_db;
        return row;
    };

    std::vector<std::future<AmbientStudyRow>> pending;
    pending.reserve(config.ambient_relative_db.size());
    for (const double level : config.ambient_relative_db)
        pending.push_back(std::async(std::launch::async, run_cell, level));

    std::vector<AmbientStudyRow> rows;
    rows.reserve(pending.size());
    for (auto &f : pending)
        rows.push_back(f.get());
    return rows;
}

} // namespace vlcpath
