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

#include <filesystem>

namespace vlcpath
{

// Amplified photodiode followed by an ADC. Defaults describe a switchable-gain
// silicon detector terminated into 50 Ohm, read at 610 nm.
struct DetectorProfile
{
    double responsivity_a_per_w = 0.4;
    // Transimpedance at the 0 dB setting. 750 V/A is the value that reproduces the
    // rounded -21.76 dB constant of the dB conversion: 10log10(2 / (0.4 * 750)) = -21.7609.
    double base_transimpedance_v_per_a = 750.0;
    double gain_setting_db = 0.0;
    double adc_lsb_v = 366e-6;
    double adc_max_v = 12.0;
    double signal_min_v = 0.0;
    double signal_max_v = 5.0;

    void validate() const;
};

inline constexpr double kMaxGainSettingDb = 70.0;

// Constant of the rounded dB conversion.
inline constexpr double kDbConversionOffset = 21.76;

struct VoltageReading
{
    double volts = 0.0;
    bool saturated = false;
};

// G_0 * 10^(G_amp / 20), in V/A.
double transimpedance_gain(const DetectorProfile &profile);

// P_in = 2 V_out / (R(lambda) G). Exact path.
double voltage_to_power_w(const DetectorProfile &profile, double v_out);

// 10log10(V_out) - 0.5 G_amp - 21.76. Rounded-constant path, within 0.005 dB of the exact one.
double voltage_to_power_dbw(const DetectorProfile &profile, double v_out);

// Exact dB path: 10log10 of voltage_to_power_w().
double voltage_to_power_dbw_exact(const DetectorProfile &profile, double v_out);

// Inverse of voltage_to_power_w(). Output above the detector's signal range is clamped
// and flagged.
VoltageReading power_to_voltage(const DetectorProfile &profile, double p_in_w);

// Rounds to the nearest ADC code. Idempotent.
double quantize(const DetectorProfile &profile, double v);

// Reads `key = value` lines ('#' starts a comment). Unknown keys are rejected; missing
// keys keep their defaults.
DetectorProfile load_detector_profile(const std::filesystem::path &path);

} // namespace vlcpath
