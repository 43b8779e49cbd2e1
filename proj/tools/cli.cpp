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

#include "cli.hpp"

#include "vlcpath/errors.hpp"
#include "vlcpath/fitting.hpp"
#include "vlcpath/model_core.hpp"
#include "vlcpath/radiometry.hpp"
#include "vlcpath/report.hpp"
#include "vlcpath/simulator.hpp"
#include "vlcpath/trace.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace vlcpath::cli
{

namespace
{

namespace fs = std::filesystem;

class UsageError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct Run
{
    json inputs = json::array();
    json outputs = json::array();
    json warnings = json::array();
    json result = json::object();

    void input(const fs::path &p) { inputs.push_back({{"path", p.string()}, {"sha256", sha256_file(p)}}); }
    void output(const fs::path &p) { outputs.push_back({{"path", p.string()}, {"sha256", sha256_file(p)}}); }
    void warn(const std::string &w) { warnings.push_back(w); }
};

// ---- simulate ----------------------------------------------------------------

struct SimulateOpts
{
    std::optional<std::string> preset;
    std::optional<double> k_db;
    std::optional<double> gamma;
    std::optional<double> order;
    double w = 0.0;
    double speed = 0.0;
    double duration = 0.0;
    double rate = 0.0;
    std::uint64_t seed = 0;
    std::optional<double> noise_db;
    std::optional<double> ambient_dbw;
    double ambient_sigma_w = 0.0;
    std::string emit = "power";
    std::optional<double> gain_db;
    std::optional<std::string> profile;
    bool no_adc = false;
    std::string out;
    std::optional<std::string> meta;
};

void cmd_simulate(const SimulateOpts &o, Run &run)
{
    ScenarioConfig cfg;
    if (o.preset)
    {
        if (o.k_db || o.gamma)
            throw UsageError("--preset cannot be combined with --k-db or --gamma");
        cfg.params = presets::by_name(*o.preset);
        if (o.order)
            cfg.params = ChannelParams::from_order(cfg.params.k_db, cfg.params.gamma, *o.order);
        const bool daylight = o.preset->rfind("daylight", 0) == 0;
        cfg.noise_sigma_db = o.noise_db.value_or(daylight ? kDaylightNoiseSigmaDb : kNightNoiseSigmaDb);
    }
    else
    {
        if (!o.k_db || !o.gamma || !o.order)
            throw UsageError("--k-db, --gamma and --n are required unless --preset is given");
        cfg.params = ChannelParams::from_order(*o.k_db, *o.gamma, *o.order);
        cfg.noise_sigma_db = o.noise_db.value_or(0.0);
    }
    cfg.lateral_offset_m = o.w;
    cfg.speed_mps = o.speed;
    cfg.duration_s = o.duration;
    cfg.sample_rate_hz = o.rate;
    cfg.seed = o.seed;
    cfg.ambient_power_dbw = o.ambient_dbw;
    cfg.ambient_sigma_w = o.ambient_sigma_w;
    cfg.emit = o.emit == "voltage" ? TraceUnit::Voltage : TraceUnit::PowerDbw;
    cfg.adc_effects = !o.no_adc;
    if (o.profile)
    {
        run.input(*o.profile);
        cfg.detector = load_detector_profile(*o.profile);
    }
    if (o.gain_db)
        cfg.detector.gain_setting_db = *o.gain_db;

    const SimulatedPassby sim = synthesize_passby(cfg);
    const fs::path out_path = o.out;
    const fs::path meta_path = o.meta ? fs::path(*o.meta) : fs::path(o.out + ".meta.json");
    write_trace_csv(out_path, sim.trace);
    const json sidecar = simulation_sidecar(cfg, sim);
    write_json(meta_path, sidecar);
    run.output(out_path);
    run.output(meta_path);

    if (sim.saturated_count > 0)
        run.warn(std::to_string(sim.saturated_count) + " samples saturated the detector output range");
    run.result = sidecar;
}

// ---- convert -----------------------------------------------------------------

struct ConvertOpts
{
    std::string in;
    std::string out;
    std::optional<double> gain_db;
    std::optional<std::string> profile;
};

void cmd_convert(const ConvertOpts &o, Run &run)
{
    if (!o.gain_db && !o.profile)
        throw UsageError("--gain-db is required (or a --profile that sets gain_setting_db)");
    DetectorProfile profile;
    if (o.profile)
    {
        run.input(*o.profile);
        profile = load_detector_profile(*o.profile);
    }
    if (o.gain_db)
        profile.gain_setting_db = *o.gain_db;
    profile.validate();

    run.input(o.in);
    const RawTrace in = load_trace_csv(o.in);
    if (in.unit() != TraceUnit::Voltage)
        throw UnitMismatchError("convert expects a 'time_s,voltage_v' trace");

    std::vector<Sample> converted;
    std::size_t dropped = 0;
    for (const Sample &s : in.samples())
    {
        if (s.value > 0.0)
            converted.push_back({s.time_s, voltage_to_power_dbw(profile, s.value)});
        else
            ++dropped;
    }
    if (dropped > 0)
        run.warn(std::to_string(dropped) + " non-positive voltage samples dropped");
    const RawTrace out = RawTrace::from_samples(TraceUnit::PowerDbw, std::move(converted));
    write_trace_csv(fs::path(o.out), out);
    run.output(o.out);
    run.result = {{"n_input", in.size()},
                  {"n_written", out.size()},
                  {"n_dropped_nonpositive", dropped},
                  {"gain_setting_db", profile.gain_setting_db}};
}

// ---- transform ---------------------------------------------------------------

struct TransformOpts
{
    std::string in;
    std::string out;
    double speed = 0.0;
    double w = 0.0;
    double r_peak = 0.0;
    std::size_t smooth_window = kDefaultSmoothWindow;
};

void cmd_transform(const TransformOpts &o, Run &run)
{
    run.input(o.in);
    const RawTrace in = load_trace_csv(o.in);
    PassGeometry geometry;
    geometry.lateral_offset_m = o.w;
    geometry.speed_mps = o.speed;
    geometry.peak_range_m = o.r_peak;
    const TransformResult tr = transform_to_distance(in, geometry, o.smooth_window);
    write_distance_csv(fs::path(o.out), tr.trace);
    run.output(o.out);

    const auto &s = tr.summary;
    if (s.n_dropped_behind > 0)
        run.warn(std::to_string(s.n_dropped_behind) + " samples behind the detector dropped");
    if (s.n_dropped_degenerate > 0)
        run.warn(std::to_string(s.n_dropped_degenerate) + " degenerate samples dropped");
    run.result = to_json(s);
    run.result["geometry"] = {{"lateral_offset_m", o.w},
                              {"speed_mps", o.speed},
                              {"peak_range_m", o.r_peak},
                              {"peak_time_s", tr.trace.geometry.peak_time_s}};
}

// ---- fit ---------------------------------------------------------------------

struct FitOpts
{
    std::string in;
    std::string out;
    std::optional<std::string> line_out;
    bool correction = false;
    std::optional<double> w;
    double order = 1.0;
    std::optional<double> epsilon;
    std::optional<double> min_distance;
    std::size_t min_points = 10;
    bool all_points = false;
};

void write_fitted_line(const fs::path &path, const FitReport &report)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write '" + path.string() + "'");
    const FittedModel model = report.model();
    constexpr int kPoints = 200;
    const double lo = std::log10(report.min_distance_used_m);
    const double hi = std::log10(report.max_distance_used_m);
    out.precision(17);
    out << "distance_m,predicted_dbw\n";
    for (int i = 0; i < kPoints; ++i)
    {
        const double d = std::pow(10.0, lo + (hi - lo) * i / (kPoints - 1));
        out << d << ',' << predict_power_dbw(model, report.lateral_offset_m, d) << '\n';
    }
}

void cmd_fit(const FitOpts &o, Run &run)
{
    if (o.correction && !o.w)
        throw UsageError("--w is required with --correction");
    run.input(o.in);
    DistanceTrace trace = load_distance_csv(o.in);
    if (o.w)
        trace.geometry.lateral_offset_m = *o.w;

    FitConfig cfg;
    cfg.use_correction = o.correction;
    cfg.assumed_order_n = o.order;
    cfg.min_points = o.min_points;
    cfg.include_near = o.all_points;
    if (o.epsilon)
        cfg.epsilon = *o.epsilon;
    cfg.min_distance_m = o.min_distance;

    const FitReport report = fit_trace(trace, cfg);
    const json doc = to_json(report);
    write_json(o.out, doc);
    run.output(o.out);
    if (o.line_out)
    {
        write_fitted_line(*o.line_out, report);
        run.output(*o.line_out);
    }
    run.result = doc;
}

// ---- eval --------------------------------------------------------------------

struct EvalOpts
{
    std::optional<std::string> params;
    std::optional<std::string> preset;
    std::optional<double> at;
    std::optional<std::string> trace;
    double w = 0.0;
    bool correction = false;
    bool residuals = false;
};

void cmd_eval(const EvalOpts &o, Run &run)
{
    FittedModel model;
    if (o.params)
    {
        run.input(*o.params);
        model = load_fit_report(*o.params).model();
    }
    else
    {
        model.params = presets::by_name(*o.preset);
        model.use_correction = o.correction;
    }
    run.result["model"] = to_json(model.params);
    run.result["model"]["use_correction"] = model.use_correction;

    if (o.at)
    {
        const double predicted = received_power_passby(model.params, o.w, *o.at);
        run.result["distance_m"] = *o.at;
        run.result["lateral_offset_m"] = o.w;
        run.result["predicted_dbw"] = predicted;
    }
    else
    {
        run.input(*o.trace);
        const DistanceTrace trace = load_distance_csv(*o.trace);
        run.result["residuals"] = to_json(evaluate_fit(model, trace), o.residuals);
    }
}

json command_echo(int argc, const char *const *argv)
{
    json cmd = json::array();
    for (int i = 0; i < argc; ++i)
        cmd.push_back(argv[i]);
    return cmd;
}

void emit_report(const json &report, const std::optional<std::string> &path, std::ostream &out)
{
    if (path)
        write_json(*path, report);
    else
        out << report.dump(2) << '\n';
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Visible light path loss toolkit for vehicular pass-by measurements", "vlcpath"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    std::optional<std::string> report_path;
    const auto add_report = [&](CLI::App *sub) {
        sub->add_option("--report", report_path, "Write the run report here instead of stdout");
    };

    SimulateOpts sim;
    auto *simulate = app.add_subcommand("simulate", "Synthesize a constant-speed pass-by trace");
    auto *preset_opt = simulate->add_option("--preset", sim.preset, "Named parameter set")
                           ->check(CLI::IsMember({"night", "daylight", "night-alt", "daylight-alt"}));
    simulate->add_option("--k-db", sim.k_db, "Model constant K_dB (dB)")->excludes(preset_opt);
    simulate->add_option("--gamma", sim.gamma, "Path loss exponent")->excludes(preset_opt);
    simulate->add_option("--n", sim.order, "Lambertian order")->check(CLI::PositiveNumber);
    simulate->add_option("--w", sim.w, "Lateral offset (m)")->required()->check(CLI::NonNegativeNumber);
    simulate->add_option("--speed", sim.speed, "Vehicle speed (m/s)")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--duration", sim.duration, "Trace length (s)")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--rate", sim.rate, "Sample rate (Hz)")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed, "Noise seed")->required();
    simulate->add_option("--noise-db", sim.noise_db, "Gaussian noise sigma in dB")->check(CLI::NonNegativeNumber);
    simulate->add_option("--ambient-dbw", sim.ambient_dbw, "Constant ambient optical power (dBW)");
    simulate->add_option("--ambient-sigma-w", sim.ambient_sigma_w, "Ambient fluctuation sigma (W)")
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--emit", sim.emit, "Output quantity")->check(CLI::IsMember({"power", "voltage"}));
    simulate->add_option("--gain-db", sim.gain_db, "Amplifier gain setting (dB) for voltage output")
        ->check(CLI::Range(0.0, kMaxGainSettingDb));
    simulate->add_option("--profile", sim.profile, "Detector profile file")->check(CLI::ExistingFile);
    simulate->add_flag("--no-adc", sim.no_adc, "Disable ADC saturation and quantization");
    simulate->add_option("--out", sim.out, "Trace CSV path")->required();
    simulate->add_option("--meta", sim.meta, "Sidecar path (default <out>.meta.json)");
    add_report(simulate);

    ConvertOpts conv;
    auto *convert = app.add_subcommand("convert", "Convert a voltage trace to received power (dBW)");
    convert->add_option("--in", conv.in, "Voltage trace CSV")->required()->check(CLI::ExistingFile);
    convert->add_option("--out", conv.out, "Power trace CSV")->required();
    convert->add_option("--gain-db", conv.gain_db, "Amplifier gain setting (dB)")
        ->check(CLI::Range(0.0, kMaxGainSettingDb));
    convert->add_option("--profile", conv.profile, "Detector profile file")->check(CLI::ExistingFile);
    add_report(convert);

    TransformOpts tf;
    auto *transform = app.add_subcommand("transform", "Map a pass-by power trace onto distance");
    transform->add_option("--in", tf.in, "Power trace CSV")->required()->check(CLI::ExistingFile);
    transform->add_option("--out", tf.out, "Distance trace CSV")->required();
    transform->add_option("--speed", tf.speed, "Vehicle speed (m/s)")->required()->check(CLI::PositiveNumber);
    transform->add_option("--w", tf.w, "Lateral offset (m)")->required()->check(CLI::NonNegativeNumber);
    transform->add_option("--r-peak", tf.r_peak, "Range at the received power peak (m)")
        ->required()
        ->check(CLI::NonNegativeNumber);
    transform->add_option("--smooth-window", tf.smooth_window, "Moving-average window for peak detection (odd)")
        ->check(CLI::PositiveNumber);
    add_report(transform);

    FitOpts fo;
    auto *fit = app.add_subcommand("fit", "Estimate K_dB and gamma from a distance trace");
    fit->add_option("--in", fo.in, "Distance trace CSV")->required()->check(CLI::ExistingFile);
    fit->add_option("--out", fo.out, "Fit report JSON")->required();
    fit->add_option("--line-out", fo.line_out, "Fitted line CSV for plotting");
    fit->add_flag("--correction", fo.correction, "Subtract the near-field term before regressing");
    fit->add_option("--w", fo.w, "Lateral offset (m)")->check(CLI::NonNegativeNumber);
    fit->add_option("--n", fo.order, "Assumed Lambertian order")->check(CLI::NonNegativeNumber);
    auto *eps_opt = fit->add_option("--epsilon", fo.epsilon, "Far-regime threshold on w^2/D^2")
                        ->check(CLI::Range(0.0, 1.0));
    fit->add_option("--min-distance", fo.min_distance, "Use points with D >= this distance (m)")
        ->check(CLI::PositiveNumber)
        ->excludes(eps_opt);
    fit->add_option("--min-points", fo.min_points, "Minimum points required")->check(CLI::Range(2, 1000000000));
    fit->add_flag("--all-points", fo.all_points, "Plain fit over every point, ignoring the regime filter");
    add_report(fit);

    EvalOpts eo;
    auto *eval = app.add_subcommand("eval", "Predict power or score a model against a distance trace");
    auto *params_opt = eval->add_option("--params", eo.params, "Fit report JSON")->check(CLI::ExistingFile);
    auto *epreset_opt = eval->add_option("--preset", eo.preset, "Named parameter set")
                            ->check(CLI::IsMember({"night", "daylight", "night-alt", "daylight-alt"}));
    params_opt->excludes(epreset_opt);
    auto *at_opt = eval->add_option("--at", eo.at, "Distance (m)")->check(CLI::PositiveNumber);
    auto *trace_opt = eval->add_option("--trace", eo.trace, "Distance trace CSV")->check(CLI::ExistingFile);
    at_opt->excludes(trace_opt);
    eval->add_option("--w", eo.w, "Lateral offset for --at (m)")->check(CLI::NonNegativeNumber);
    eval->add_flag("--correction", eo.correction, "Score a preset against the full pass-by model");
    eval->add_flag("--residuals", eo.residuals, "Include every residual in the report");
    add_report(eval);

    json report{{"tool", "vlcpath"}, {"version", std::string(kToolVersion)}, {"command", command_echo(argc, argv)}};
    const auto fail = [&](int code, const std::string &message) {
        err << "error: " << message << '\n';
        report["error"] = message;
        report["exit_code"] = code;
        try
        {
            emit_report(report, report_path, out);
        }
        catch (const std::exception &)
        {
            out << report.dump(2) << '\n';
        }
        return code;
    };

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError &e)
    {
        err << app.help();
        return fail(2, e.what());
    }

    Run run;
    try
    {
        if (*simulate)
            cmd_simulate(sim, run);
        else if (*convert)
            cmd_convert(conv, run);
        else if (*transform)
        {
            if (tf.smooth_window % 2 == 0)
                throw UsageError("--smooth-window must be odd");
            cmd_transform(tf, run);
        }
        else if (*fit)
            cmd_fit(fo, run);
        else if (*eval)
        {
            if (!eo.params && !eo.preset)
                throw UsageError("eval needs --params or --preset");
            if (!eo.at && !eo.trace)
                throw UsageError("eval needs --at or --trace");
            cmd_eval(eo, run);
        }
    }
    catch (const UsageError &e)
    {
        return fail(2, e.what());
    }
    catch (const std::exception &e)
    {
        return fail(1, e.what());
    }

    report["inputs"] = run.inputs;
    report["outputs"] = run.outputs;
    report["result"] = run.result;
    report["warnings"] = run.warnings;
    report["exit_code"] = 0;
    try
    {
        emit_report(report, report_path, out);
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    for (const auto &w : run.warnings)
        err << "warning: " << w.get<std::string>() << '\n';
    return 0;
}

} // namespace vlcpath::cli
