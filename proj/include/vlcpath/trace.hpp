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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace vlcpath
{

enum class TraceUnit
{
    Voltage,  // column `voltage_v`
    PowerDbw, // column `power_dbw`
};

std::string_view column_name(TraceUnit unit);

struct Sample
{
    double time_s = 0.0;
    double value = 0.0;
};

// Uniformly sampled time series. Timestamps are strictly increasing and sit on a common
// grid t0 + k / sample_rate (within 1e-9 s); gaps left by dropped samples are allowed.
class RawTrace
{
  public:
    using Metadata = std::map<std::string, std::string>;

    RawTrace(TraceUnit unit, double sample_rate_hz, std::vector<Sample> samples, Metadata metadata = {});

    // Sample rate inferred from the smallest timestamp step. Needs at least two samples.
    static RawTrace from_samples(TraceUnit unit, std::vector<Sample> samples, Metadata metadata = {});

    TraceUnit unit() const noexcept { return unit_; }
    double sample_rate_hz() const noexcept { return sample_rate_hz_; }
    const std::vector<Sample> &samples() const noexcept { return samples_; }
    const Metadata &metadata() const noexcept { return metadata_; }
    std::size_t size() const noexcept { return samples_.size(); }

  private:
    TraceUnit unit_;
    double sample_rate_hz_;
    std::vector<Sample> samples_;
    Metadata metadata_;
};

inline constexpr double kTimestampTolerance = 1e-9;

struct DistancePoint
{
    double range_m = 0.0;
    double distance_m = 0.0;
    double power_dbw = 0.0;
};

struct DistanceTrace
{
    std::vector<DistancePoint> points; // increasing distance
    PassGeometry geometry;
};

struct StaticPoint
{
    double distance_m = 0.0;
    double mean_power_dbw = 0.0;
    std::size_t sample_count = 0;
};

struct StaticPointSet
{
    std::vector<StaticPoint> points;
};

struct PeakLocation
{
    double time_s = 0.0;
    std::size_t index = 0;
};

struct TransformSummary
{
    PeakLocation peak;
    std::size_t n_input = 0;
    std::size_t n_kept = 0;
    std::size_t n_dropped_behind = 0;     // R < 0: vehicle already past the detector
    std::size_t n_dropped_degenerate = 0; // w^2/D^2 >= 1 - 1e-12
};

struct TransformResult
{
    DistanceTrace trace;
    TransformSummary summary;
};

inline constexpr std::size_t kDefaultSmoothWindow = 9;
inline constexpr double kDegenerateRatio = 1.0 - 1e-12;

RawTrace load_trace_csv(const std::filesystem::path &path);
RawTrace parse_trace_csv(std::istream &in);
void write_trace_csv(std::ostream &out, const RawTrace &trace);
void write_trace_csv(const std::filesystem::path &path, const RawTrace &trace);

DistanceTrace load_distance_csv(const std::filesystem::path &path);
DistanceTrace parse_distance_csv(std::istream &in);
void write_distance_csv(std::ostream &out, const DistanceTrace &trace);
void write_distance_csv(const std::filesystem::path &path, const DistanceTrace &trace);

// Centered moving average; the window shrinks at both ends of the sequence.
std::vector<double> moving_average(const std::vector<double> &values, std::size_t window);

// Argmax of the smoothed sequence, earliest index on ties.
PeakLocation detect_peak(const RawTrace &trace, std::size_t smooth_window = kDefaultSmoothWindow);

// R_i = R_peak + V (T_peak - t_i)
double time_to_range(const PassGeometry &geometry, double t_s);

// Aligns the detected peak with geometry.peak_range_m and maps every sample to
// (R, D, power). The returned geometry carries the detected peak time.
TransformResult transform_to_distance(const RawTrace &trace, const PassGeometry &geometry,
                                      std::size_t smooth_window = kDefaultSmoothWindow);

// As above, but with the peak time supplied instead of detected.
TransformResult transform_with_peak(const RawTrace &trace, const PassGeometry &geometry, PeakLocation peak);

enum class AveragingDomain
{
    Linear, // mean of watts, then dB
    Db,     // mean of dB values
};

struct StaticRun
{
    double distance_m = 0.0;
    RawTrace trace;
};

StaticPointSet average_static_points(const std::vector<StaticRun> &runs,
                                     AveragingDomain domain = AveragingDomain::Linear);

// Static points as a distance trace at lateral offset w (R = sqrt(D^2 - w^2)).
DistanceTrace to_distance_trace(const StaticPointSet &points, double lateral_offset_m = 0.0);

} // namespace vlcpath
