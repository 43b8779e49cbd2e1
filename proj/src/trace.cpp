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

#include "vlcpath/trace.hpp"

#include "vlcpath/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace vlcpath
{

std::string_view column_name(TraceUnit unit)
{
    return unit == TraceUnit::Voltage ? "voltage_v" : "power_dbw";
}

RawTrace::RawTrace(TraceUnit unit, double sample_rate_hz, std::vector<Sample> samples, Metadata metadata)
    : unit_(unit), sample_rate_hz_(sample_rate_hz), samples_(std::move(samples)), metadata_(std::move(metadata))
{
    if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_))
        throw DomainError("RawTrace: sample rate must be > 0");
    if (samples_.empty())
        throw EmptyTraceError("RawTrace: no samples");

    const double period = 1.0 / sample_rate_hz_;
    const double t0 = samples_.front().time_s;
    for (std::size_t i = 0; i < samples_.size(); ++i)
    {
        const Sample &s = samples_[i];
        if (!std::isfinite(s.time_s) || !std::isfinite(s.value))
            throw DomainError("RawTrace: non-finite sample at index " + std::to_string(i));
        if (i > 0 && !(s.time_s > samples_[i - 1].time_s))
            throw NonUniformTimestampsError("RawTrace: timestamps not strictly increasing at index " +
                                            std::to_string(i));
        const double steps = (s.time_s - t0) / period;
        if (std::abs(steps - std::round(steps)) * period > kTimestampTolerance)
            throw NonUniformTimestampsError("RawTrace: timestamp off the sampling grid at index " +
                                            std::to_string(i));
    }
}

RawTrace RawTrace::from_samples(TraceUnit unit, std::vector<Sample> samples, Metadata metadata)
{
    if (samples.size() < 2)
        throw EmptyTraceError("RawTrace: at least two samples are needed to infer the sample rate");
    double step = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < samples.size(); ++i)
    {
        const double dt = samples[i].time_s - samples[i - 1].time_s;
        if (!(dt > 0.0))
            throw NonUniformTimestampsError("RawTrace: timestamps not strictly increasing at index " +
                                            std::to_string(i));
        step = std::min(step, dt);
    }
    return RawTrace(unit, 1.0 / step, std::move(samples), std::move(metadata));
}

// ---- CSV ------------------------------------------------------------------

namespace
{

std::string strip(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_number(std::string_view field, std::size_t line_no)
{
    const std::string text = strip(field);
    double v = 0.0;
    const char *first = text.data();
    const char *last = text.data() + text.size();
    if (!text.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc() || ptr != last)
        throw ParseError("invalid number '" + text + "'", line_no);
    return v;
}

template <std::size_t N>
std::array<double, N> parse_row(const std::string &line, std::size_t line_no)
{
    std::array<double, N> out{};
    std::size_t start = 0;
    for (std::size_t k = 0; k < N; ++k)
    {
        const auto comma = line.find(',', start);
        const bool last = (k + 1 == N);
        if (last != (comma == std::string::npos))
            throw ParseError("expected " + std::to_string(N) + " comma-separated fields", line_no);
        const auto end = last ? line.size() : comma;
        out[k] = parse_number(std::string_view(line).substr(start, end - start), line_no);
        start = end + 1;
    }
    return out;
}

void put_number(std::ostream &out, double v)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.write(buf.data(), ptr - buf.data());
}

std::ifstream open_input(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open '" + path.string() + "'");
    return in;
}

std::ofstream open_output(const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write '" + path.string() + "'");
    return out;
}

} // namespace

RawTrace parse_trace_csv(std::istream &in)
{
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line))
        throw ParseError("missing header", 1);
    ++line_no;

    const std::string header = strip(line);
    TraceUnit unit{};
    if (header == "time_s,voltage_v")
        unit = TraceUnit::Voltage;
    else if (header == "time_s,power_dbw")
        unit = TraceUnit::PowerDbw;
    else if (header.rfind("time_s,", 0) == 0)
        throw UnitMismatchError("line 1: unsupported value column '" + header.substr(7) + "'");
    else
        throw ParseError("missing header 'time_s,voltage_v' or 'time_s,power_dbw'", line_no);

    std::vector<Sample> samples;
    while (std::getline(in, line))
    {
        ++line_no;
        if (strip(line).empty())
            continue;
        const auto row = parse_row<2>(line, line_no);
        samples.push_back({row[0], row[1]});
    }
    if (samples.empty())
        throw EmptyTraceError("trace has no data rows");
    if (samples.size() < 2)
        throw ParseError("at least two samples are required", line_no);
    return RawTrace::from_samples(unit, std::move(samples));
}

RawTrace load_trace_csv(const std::filesystem::path &path)
{
    auto in = open_input(path);
    return parse_trace_csv(in);
}

void write_trace_csv(std::ostream &out, const RawTrace &trace)
{
    out << "time_s," << column_name(trace.unit()) << '\n';
    for (const Sample &s : trace.samples())
    {
        put_number(out, s.time_s);
        out << ',';
        put_number(out, s.value);
        out << '\n';
    }
}

void write_trace_csv(const std::filesystem::path &path, const RawTrace &trace)
{
    auto out = open_output(path);
    write_trace_csv(out, trace);
}

DistanceTrace parse_distance_csv(std::istream &in)
{
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line) || strip(line) != "range_m,distance_m,power_dbw")
        throw ParseError("missing header 'range_m,distance_m,power_dbw'", 1);
    ++line_no;

    DistanceTrace trace;
    while (std::getline(in, line))
    {
        ++line_no;
        if (strip(line).empty())
            continue;
        const auto row = parse_row<3>(line, line_no);
        if (!(row[0] >= 0.0) || !(row[1] > 0.0) || row[1] < row[0])
            throw ParseError("inconsistent range/distance pair", line_no);
        trace.points.push_back({row[0], row[1], row[2]});
    }
    if (trace.points.empty())
        throw EmptyTraceError("distance trace has no data rows");

    // Only the lateral offset can be recovered from the file.
    std::vector<double> offsets;
    offsets.reserve(trace.points.size());
    for (const auto &p : trace.points)
        offsets.push_back(std::sqrt((p.distance_m - p.range_m) * (p.distance_m + p.range_m)));
    std::nth_element(offsets.begin(), offsets.begin() + offsets.size() / 2, offsets.end());
    const double w = offsets[offsets.size() / 2];
    for (std::size_t i = 0; i < trace.points.size(); ++i)
    {
        const auto &p = trace.points[i];
        if (std::abs(std::hypot(p.range_m, w) - p.distance_m) > 1e-6)
            throw ParseError("points do not share one lateral offset", i + 2);
    }
    trace.geometry.lateral_offset_m = w;
    return trace;
}

DistanceTrace load_distance_csv(const std::filesystem::path &path)
{
    auto in = open_input(path);
    return parse_distance_csv(in);
}

void write_distance_csv(std::ostream &out, const DistanceTrace &trace)
{
    out << "range_m,distance_m,power_dbw\n";
    for (const auto &p : trace.points)
    {
        put_number(out, p.range_m);
        out << ',';
        put_number(out, p.distance_m);
        out << ',';
        put_number(out, p.power_dbw);
        out << '\n';
    }
}

void write_distance_csv(const std::filesystem::path &path, const DistanceTrace &trace)
{
    auto out = open_output(path);
    write_distance_csv(out, trace);
}

// ---- peak alignment ---------------------------------------------------------

std::vector<double> moving_average(const std::vector<double> &values, std::size_t window)
{
    if (window == 0 || window % 2 == 0)
        throw DomainError("moving_average: window must be odd and >= 1");
    const std::size_t half = window / 2;
    const std::size_t n = values.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n - 1, i + half);
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j)
            sum += values[j];
        out[i] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

PeakLocation detect_peak(const RawTrace &trace, std::size_t smooth_window)
{
    const auto &samples = trace.samples();
    if (samples.empty())
        throw EmptyTraceError("detect_peak: empty trace");
    if (smooth_window == 0 || smooth_window % 2 == 0 || smooth_window > samples.size())
        throw DomainError("detect_peak: window must be odd and within [1, trace length]");

    std::vector<double> values;
    values.reserve(samples.size());
    for (const auto &s : samples)
        values.push_back(s.value);
    const auto smoothed = moving_average(values, smooth_window);

    // Averages of equal values can differ in the last ulp depending on the window size
    // at the edges; treat those as ties.
    const double best = *std::max_element(smoothed.begin(), smoothed.end());
    const double tie = 1e-12 * std::max(1.0, std::abs(best));
    std::size_t index = 0;
    while (smoothed[index] < best - tie)
        ++index;
    return {samples[index].time_s, index};
}

double time_to_range(const PassGeometry &geometry, double t_s)
{
    return geometry.peak_range_m + geometry.speed_mps * (geometry.peak_time_s - t_s);
}

TransformResult transform_with_peak(const RawTrace &trace, const PassGeometry &geometry, PeakLocation peak)
{
    if (trace.unit() != TraceUnit::PowerDbw)
        throw UnitMismatchError("transform: trace must be in power_dbw; convert voltages first");
    PassGeometry aligned = geometry;
    aligned.peak_time_s = peak.time_s;
    aligned.validate();

    const double w = aligned.lateral_offset_m;
    TransformResult result;
    result.summary.peak = peak;
    result.summary.n_input = trace.size();
    result.trace.geometry = aligned;

    for (const Sample &s : trace.samples())
    {
        const double range = time_to_range(aligned, s.time_s);
        if (range < 0.0)
        {
            ++result.summary.n_dropped_behind;
            continue;
        }
        const double distance = distance_from_range(w, range);
        const double ratio = distance > 0.0 ? w / distance : 1.0;
        if (distance == 0.0 || ratio * ratio >= kDegenerateRatio)
        {
            ++result.summary.n_dropped_degenerate;
            continue;
        }
        result.trace.points.push_back({range, distance, s.value});
    }
    if (result.trace.points.empty())
        throw EmptyTraceError("transform: every sample was dropped");

    std::stable_sort(result.trace.points.begin(), result.trace.points.end(),
                     [](const DistancePoint &a, const DistancePoint &b) { return a.distance_m < b.distance_m; });
    result.summary.n_kept = result.trace.points.size();
    return result;
}

TransformResult transform_to_distance(const RawTrace &trace, const PassGeometry &geometry, std::size_t smooth_window)
{
    return transform_with_peak(trace, geometry, detect_peak(trace, smooth_window));
}

// ---- static scenario --------------------------------------------------------

StaticPointSet average_static_points(const std::vector<StaticRun> &runs, AveragingDomain domain)
{
    StaticPointSet set;
    std::set<double> seen;
    for (const auto &run : runs)
    {
        if (run.trace.unit() != TraceUnit::PowerDbw)
            throw UnitMismatchError("average_static_points: traces must be in power_dbw");
        if (!(run.distance_m > 0.0))
            throw DomainError("average_static_points: distance must be > 0");
        if (!seen.insert(run.distance_m).second)
            throw ConfigError("average_static_points: duplicate distance " + std::to_string(run.distance_m));

        double acc = 0.0;
        for (const auto &s : run.trace.samples())
            acc += domain == AveragingDomain::Linear ? from_db(s.value) : s.value;
        const auto count = run.trace.size();
        const double mean = acc / static_cast<double>(count);
        set.points.push_back({run.distance_m, domain == AveragingDomain::Linear ? to_db(mean) : mean, count});
    }
    std::sort(set.points.begin(), set.points.end(),
              [](const StaticPoint &a, const StaticPoint &b) { return a.distance_m < b.distance_m; });
    return set;
}

DistanceTrace to_distance_trace(const StaticPointSet &points, double w)
{
    if (!(w >= 0.0))
        throw DomainError("to_distance_trace: lateral offset must be >= 0");
    DistanceTrace trace;
    trace.geometry.lateral_offset_m = w;
    for (const auto &p : points.points)
    {
        if (!(p.distance_m > w))
            throw DomainError("to_distance_trace: distance must exceed the lateral offset");
        trace.points.push_back({std::sqrt((p.distance_m - w) * (p.distance_m + w)), p.distance_m, p.mean_power_dbw});
    }
    return trace;
}

} // namespace vlcpath
