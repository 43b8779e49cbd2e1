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

#include "vlcpath/fitting.hpp"
#include "vlcpath/model_core.hpp"
#include "vlcpath/radiometry.hpp"
#include "vlcpath/trace.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

namespace vlcpath
{

// Portable Gaussian source: 64-bit Mersenne Twister feeding a Box-Muller transform.
// Unlike std::normal_distribution the output sequence is fixed across standard libraries.
class GaussianRng
{
  public:
    static constexpr std::string_view kName = "mt19937_64+box-muller";

    explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    double standard_normal();
    double normal(double mean, double sigma) { return mean + sigma * standard_normal(); }

  private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

// SplitMix64 step, used to derive independent sub-stream seeds.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

struct ScenarioConfig
{
    ChannelParams params = presets::night();
    double lateral_offset_m = 2.0;
    double speed_mps = kReferenceSpeedMps;
    double duration_s = 10.0;
    double sample_rate_hz = 100.0;
    double noise_sigma_db = 0.0;
    std::optional<double> ambient_power_dbw;
    double ambient_sigma_w = 0.0;
    std::uint64_t seed = 0;
    TraceUnit emit = TraceUnit::PowerDbw;
    // Saturation and quantization of emitted voltages.
    bool adc_effects = true;
    DetectorProfile detector;

    void validate() const;
    std::size_t sample_count() const;
};

inline constexpr double kNightNoiseSigmaDb = 0.5;
inline constexpr double kDaylightNoiseSigmaDb = 2.0;

// Floor applied when ambient fluctuation drives the total linear power to <= 0.
inline constexpr double kMinPowerW = 1e-30;

struct SimulatedPassby
{
    RawTrace trace;
    // Peak range/time of the noiseless signal samples (the reference a field crew records).
    PassGeometry truth;
    std::size_t truth_peak_index = 0;
    double truth_peak_power_dbw = 0.0;
    std::size_t saturated_count = 0;
};

// The vehicle approaches at constant speed and reaches the detector plane (R = 0) at
// t = duration_s; sample i is taken at t_i = i / sample_rate_hz.
SimulatedPassby synthesize_passby(const ScenarioConfig &config);

// Range of sample i under the approach kinematics of synthesize_passby().
double approach_range(const ScenarioConfig &config, std::size_t index);

std::vector<StaticRun> synthesize_static(const ChannelParams &params, const std::vector<double> &distances_m,
                                         std::size_t samples_per_point, double noise_sigma_db, std::uint64_t seed,
                                         double lateral_offset_m = 0.0, double sample_rate_hz = 100.0);

struct AmbientStudyConfig
{
    ScenarioConfig base;
    // Ambient level relative to the noiseless peak signal power, dB. -infinity means no ambient.
    std::vector<double> ambient_relative_db;
    FitConfig fit;
    std::size_t smooth_window = kDefaultSmoothWindow;
};

struct AmbientStudyRow
{
    double ambient_relative_db = 0.0;
    std::optional<double> ambient_dbw;
    double k_db_hat = 0.0;
    double gamma_hat = 0.0;
    double rmse_db = 0.0;
};

// Every cell reuses the base seed so rows differ only by the ambient level.
std::vector<AmbientStudyRow> ambient_floor_study(const AmbientStudyConfig &config);

} // namespace vlcpath
