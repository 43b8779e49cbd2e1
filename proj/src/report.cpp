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

#include "vlcpath/report.hpp"

#include "vlcpath/errors.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>

namespace vlcpath
{

json to_json(const FitConfig &config)
{
    json j;
    j["epsilon"] = config.epsilon;
    j["use_correction"] = config.use_correction;
    j["min_points"] = config.min_points;
    j["assumed_order_n"] = config.assumed_order_n;
    j["min_distance_m"] = config.min_distance_m ? json(*config.min_distance_m) : json(nullptr);
    j["include_near"] = config.include_near;
    return j;
}

json to_json(const FitReport &report)
{
    json j;
    j["k_db_hat"] = report.k_db_hat;
    j["gamma_hat"] = report.gamma_hat;
    j["rmse_db"] = report.rmse_db;
    j["r_squared"] = report.r_squared;
    j["n_used"] = report.n_used;
    j["n_dropped_near"] = report.n_dropped_near;
    j["n_dropped_degenerate"] = report.n_dropped_degenerate;
    j["regime_boundary_m"] = report.regime_boundary_m;
    j["lateral_offset_m"] = report.lateral_offset_m;
    j["min_distance_used_m"] = report.min_distance_used_m;
    j["max_distance_used_m"] = report.max_distance_used_m;
    j["config"] = to_json(report.config);
    json sens = json::array();
    for (const auto &s : report.sensitivity)
    {
        sens.push_back({{"assumed_order_n", s.assumed_order_n},
                        {"k_db_hat", s.k_db_hat},
                        {"gamma_hat", s.gamma_hat},
                        {"delta_k_db", s.delta_k_db},
                        {"delta_gamma", s.delta_gamma}});
    }
    j["sensitivity"] = sens;
    return j;
}

json to_json(const TransformSummary &summary)
{
    return {{"peak_time_s", summary.peak.time_s},
            {"peak_index", summary.peak.index},
            {"n_input", summary.n_input},
            {"n_kept", summary.n_kept},
            {"n_dropped_behind", summary.n_dropped_behind},
            {"n_dropped_degenerate", summary.n_dropped_degenerate}};
}

json to_json(const FitEvaluation &evaluation, bool include_residuals)
{
    json j{{"n_points", evaluation.residuals_db.size()},
           {"mean_residual_db", evaluation.mean_residual_db},
           {"rmse_db", evaluation.rmse_db},
           {"max_abs_residual_db", evaluation.max_abs_residual_db},
           {"r_squared", evaluation.r_squared}};
    if (include_residuals)
        j["residuals_db"] = evaluation.residuals_db;
    return j;
}

json to_json(const ChannelParams &params)
{
    return {{"k_db", params.k_db},
            {"gamma", params.gamma},
            {"lambertian_order", params.lambertian_order},
            {"half_angle_rad", params.half_angle_rad}};
}

namespace
{
template <typename T>
T field(const json &doc, const char *key)
{
    if (!doc.contains(key))
        throw Error(std::string("malformed fit report: missing '") + key + "'");
    try
    {
        return doc.at(key).get<T>();
    }
    catch (const json::exception &)
    {
        throw Error(std::string("malformed fit report: bad type for '") + key + "'");
    }
}
} // namespace

FitReport fit_report_from_json(const json &doc)
{
    if (!doc.is_object())
        throw Error("malformed fit report: not a JSON object");
    FitReport r;
    r.k_db_hat = field<double>(doc, "k_db_hat");
    r.gamma_hat = field<double>(doc, "gamma_hat");
    r.rmse_db = field<double>(doc, "rmse_db");
    r.r_squared = field<double>(doc, "r_squared");
    r.n_used = field<std::size_t>(doc, "n_used");
    r.n_dropped_near = field<std::size_t>(doc, "n_dropped_near");
    r.n_dropped_degenerate = field<std::size_t>(doc, "n_dropped_degenerate");
    r.regime_boundary_m = field<double>(doc, "regime_boundary_m");
    r.lateral_offset_m = doc.value("lateral_offset_m", 0.0);
    r.min_distance_used_m = doc.value("min_distance_used_m", 0.0);
    r.max_distance_used_m = doc.value("max_distance_used_m", 0.0);

    const json cfg = field<json>(doc, "config");
    if (!cfg.is_object())
        throw Error("malformed fit report: 'config' is not an object");
    r.config.epsilon = field<double>(cfg, "epsilon");
    r.config.use_correction = field<bool>(cfg, "use_correction");
    r.config.min_points = field<std::size_t>(cfg, "min_points");
    r.config.assumed_order_n = field<double>(cfg, "assumed_order_n");
    if (cfg.contains("min_distance_m") && !cfg.at("min_distance_m").is_null())
        r.config.min_distance_m = field<double>(cfg, "min_distance_m");
    r.config.include_near = cfg.value("include_near", false);

    if (doc.contains("sensitivity") && doc.at("sensitivity").is_array())
    {
        for (const auto &s : doc.at("sensitivity"))
        {
            r.sensitivity.push_back({field<double>(s, "assumed_order_n"), field<double>(s, "k_db_hat"),
                                     field<double>(s, "gamma_hat"), field<double>(s, "delta_k_db"),
                                     field<double>(s, "delta_gamma")});
        }
    }
    return r;
}

FitReport load_fit_report(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open '" + path.string() + "'");
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded())
        throw Error("malformed fit report: '" + path.string() + "' is not valid JSON");
    return fit_report_from_json(doc);
}

json simulation_sidecar(const ScenarioConfig &config, const SimulatedPassby &sim)
{
    json scenario{{"lateral_offset_m", config.lateral_offset_m},
                  {"speed_mps", config.speed_mps},
                  {"duration_s", config.duration_s},
                  {"sample_rate_hz", config.sample_rate_hz},
                  {"noise_sigma_db", config.noise_sigma_db},
                  {"ambient_power_dbw", config.ambient_power_dbw ? json(*config.ambient_power_dbw) : json(nullptr)},
                  {"ambient_sigma_w", config.ambient_sigma_w},
                  {"emit", std::string(column_name(config.emit))},
                  {"adc_effects", config.adc_effects}};
    if (config.emit == TraceUnit::Voltage)
    {
        scenario["detector"] = {{"responsivity_a_per_w", config.detector.responsivity_a_per_w},
                                {"base_transimpedance_v_per_a", config.detector.base_transimpedance_v_per_a},
                                {"gain_setting_db", config.detector.gain_setting_db},
                                {"adc_lsb_v", config.detector.adc_lsb_v},
                                {"adc_max_v", config.detector.adc_max_v},
                                {"signal_min_v", config.detector.signal_min_v},
                                {"signal_max_v", config.detector.signal_max_v}};
    }

    json truth = to_json(config.params);
    truth["peak_range_m"] = sim.truth.peak_range_m;
    truth["peak_time_s"] = sim.truth.peak_time_s;
    truth["peak_index"] = sim.truth_peak_index;
    truth["peak_power_dbw"] = sim.truth_peak_power_dbw;
    if (config.lateral_offset_m > 0.0 && config.params.gamma > 0.0)
        truth["analytic_peak_distance_m"] = peak_distance(config.params, config.lateral_offset_m);

    return {{"generator", std::string(GaussianRng::kName)},
            {"seed", config.seed},
            {"sample_count", sim.trace.size()},
            {"saturated_count", sim.saturated_count},
            {"scenario", scenario},
            {"ground_truth", truth}};
}

std::string sha256_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path.string() + "'");

    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        throw Error("sha256: digest initialisation failed");

    std::array<char, 1 << 14> buf{};
    while (in)
    {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0)
            EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);

    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex;
    hex.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i)
    {
        hex.push_back(kHex[md[i] >> 4]);
        hex.push_back(kHex[md[i] & 0xF]);
    }
    return hex;
}

void write_json(const std::filesystem::path &path, const json &doc)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write '" + path.string() + "'");
    out << doc.dump(2) << '\n';
}

} // namespace vlcpath
