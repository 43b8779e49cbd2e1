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

#include "vlcpath/radiometry.hpp"

#include "vlcpath/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

namespace vlcpath
{

void DetectorProfile::validate() const
{
    if (!(responsivity_a_per_w > 0.0))
        throw ConfigError("detector profile: responsivity must be > 0");
    if (!(base_transimpedance_v_per_a > 0.0))
        throw ConfigError("detector profile: base transimpedance must be > 0");
    if (!(gain_setting_db >= 0.0 && gain_setting_db <= kMaxGainSettingDb))
        throw ConfigError("detector profile: gain setting must lie in [0, 70] dB");
    if (!(adc_lsb_v > 0.0))
        throw ConfigError("detector profile: ADC LSB must be > 0");
    if (!(adc_max_v > 0.0))
        throw ConfigError("detector profile: ADC full scale must be > 0");
    if (!(signal_max_v > signal_min_v))
        throw ConfigError("detector profile: empty signal range");
}

double transimpedance_gain(const DetectorProfile &profile)
{
    profile.validate();
    return profile.base_transimpedance_v_per_a * std::pow(10.0, profile.gain_setting_db / 20.0);
}

double voltage_to_power_w(const DetectorProfile &profile, double v_out)
{
    if (!(v_out >= 0.0))
        throw DomainError("voltage_to_power_w: negative output voltage");
    return 2.0 * v_out / (profile.responsivity_a_per_w * transimpedance_gain(profile));
}

double voltage_to_power_dbw(const DetectorProfile &profile, double v_out)
{
    profile.validate();
    if (!(v_out > 0.0))
        throw DomainError("voltage_to_power_dbw: output voltage must be > 0");
    return 10.0 * std::log10(v_out) - 0.5 * profile.gain_setting_db - kDbConversionOffset;
}

double voltage_to_power_dbw_exact(const DetectorProfile &profile, double v_out)
{
    if (!(v_out > 0.0))
        throw DomainError("voltage_to_power_dbw_exact: output voltage must be > 0");
    return 10.0 * std::log10(voltage_to_power_w(profile, v_out));
}

VoltageReading power_to_voltage(const DetectorProfile &profile, double p_in_w)
{
    if (!(p_in_w >= 0.0))
        throw DomainError("power_to_voltage: negative optical power");
    const double v = p_in_w * profile.responsivity_a_per_w * transimpedance_gain(profile) / 2.0;
    const double ceiling = std::min(profile.signal_max_v, profile.adc_max_v);
    if (v > ceiling)
        return {ceiling, true};
    return {v, false};
}

double quantize(const DetectorProfile &profile, double v)
{
    profile.validate();
    const double clamped = std::clamp(v, 0.0, profile.adc_max_v);
    return std::round(clamped / profile.adc_lsb_v) * profile.adc_lsb_v;
}

namespace
{
std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}
} // namespace

DetectorProfile load_detector_profile(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open detector profile '" + path.string() + "'");

    DetectorProfile profile;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw))
    {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value'", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string text = trim(line.substr(eq + 1));

        double value = 0.0;
        try
        {
            std::size_t used = 0;
            value = std::stod(text, &used);
            if (used != text.size())
                throw ParseError("trailing characters after number for '" + key + "'", line_no);
        }
        catch (const std::logic_error &)
        {
            throw ParseError("invalid number for '" + key + "'", line_no);
        }

        if (key == "responsivity_a_per_w")
            profile.responsivity_a_per_w = value;
        else if (key == "base_transimpedance_v_per_a")
            profile.base_transimpedance_v_per_a = value;
        else if (key == "gain_setting_db")
            profile.gain_setting_db = value;
        else if (key == "adc_lsb_v")
            profile.adc_lsb_v = value;
        else if (key == "adc_max_v")
            profile.adc_max_v = value;
        else if (key == "signal_min_v")
            profile.signal_min_v = value;
        else if (key == "signal_max_v")
            profile.signal_max_v = value;
        else
            throw ParseError("unknown key '" + key + "'", line_no);
    }
    profile.validate();
    return profile;
}

} // namespace vlcpath
