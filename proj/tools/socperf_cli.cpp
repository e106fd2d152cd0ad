//
// Copyright (C) 2026 The socperf Authors.
// SPDX-License-Identifier: Apache-2.0
//

// socperf: roofline analysis, co-execution simulation, calibration and
// reference tables for heterogeneous mobile SoCs.
//
// Exit status: 0 success, 1 validation error, 2 I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "socperf/coexec.hpp"
#include "socperf/error.hpp"
#include "socperf/profile_store.hpp"
#include "socperf/report.hpp"
#include "socperf/roofline.hpp"

using namespace socperf;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    for (char c : text) {
        if (c == sep) {
            if (!item.empty()) out.push_back(item);
            item.clear();
        } else if (c != ' ') {
            item += c;
        }
    }
    if (!item.empty()) out.push_back(item);
    return out;
}

// "a=0.5,b=0.25" -> {a: 0.5, b: 0.25}
std::map<std::string, double> parse_pairs(const std::string& text, const char* flag) {
    std::map<std::string, double> out;
    for (const auto& item : split(text, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw Error(ErrorCode::InvalidScenario, std::string(flag) + " expects id=value, got '" + item + "'");
        char* end = nullptr;
        const std::string number = item.substr(eq + 1);
        const double value = std::strtod(number.c_str(), &end);
        if (number.empty() || *end != '\0')
            throw Error(ErrorCode::InvalidScenario, std::string(flag) + ": '" + number + "' is not a number");
        out[item.substr(0, eq)] = value;
    }
    return out;
}

struct Common {
    std::string data_dir;
    std::string format;
    std::string out;
};

const Dataset& dataset(const Common& common) {
    static std::optional<Dataset> loaded;
    std::string dir = common.data_dir;
    if (dir.empty())
        if (const char* env = std::getenv("SOCPERF_DATA")) dir = env;
    if (dir.empty()) return builtin_dataset();
    if (!loaded) loaded = load_dataset_dir(dir);
    return *loaded;
}

void write_output(const std::string& bytes, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
    out << bytes;
    if (!out) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

struct ScenarioFlags {
    std::string scenario_file;
    std::string platform;
    std::string network;
    std::string components;
    std::optional<std::int64_t> frames;
    std::optional<double> overhead;
    std::string contention;
    std::optional<double> host_penalty;
    std::optional<std::uint64_t> seed;
    std::optional<double> cv;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--scenario", scenario_file, "Scenario JSON file");
        cmd->add_option("--platform", platform, "Platform id");
        cmd->add_option("--network", network, "Network id");
        cmd->add_option("--components", components, "Engaged components, comma separated");
        cmd->add_option("--frames", frames, "Frame count");
        cmd->add_option("--overhead", overhead, "Dispatch overhead per frame in seconds");
        cmd->add_option("--contention", contention, "Availability factors, id=factor list");
        cmd->add_option("--host-penalty", host_penalty, "Host availability per engaged accelerator (1 disables)");
        cmd->add_option("--seed", seed, "Jitter seed");
        cmd->add_option("--cv", cv, "Jitter coefficient of variation");
    }

    Scenario build() const {
        Scenario s;
        if (!scenario_file.empty()) s = load_scenario(read_file(scenario_file));
        if (!platform.empty()) s.platform_id = platform;
        if (!network.empty()) s.network_id = network;
        if (!components.empty()) s.engaged = split(components, ',');
        if (frames) s.frame_count = *frames;
        if (overhead) s.dispatch_overhead_s = *overhead;
        for (const auto& [id, f] : parse_pairs(contention, "--contention")) s.contention[id] = f;
        if (host_penalty) s.host_penalty = *host_penalty;
        if (seed || cv) {
            Jitter j = s.jitter.value_or(Jitter{});
            if (seed) j.seed = *seed;
            if (cv) j.cv = *cv;
            s.jitter = j;
        }
        if (s.platform_id.empty()) throw Error(ErrorCode::InvalidScenario, "no platform given (--platform or --scenario)");
        if (s.network_id.empty()) throw Error(ErrorCode::InvalidScenario, "no network given (--network or --scenario)");
        if (s.engaged.empty()) throw Error(ErrorCode::EmptyEngagement, "no components given");
        return s;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Roofline and co-execution analysis for heterogeneous mobile SoCs"};
    app.require_subcommand(1);

    Common common;
    app.add_option("--data", common.data_dir, "Dataset directory (default: $SOCPERF_DATA or the bundled data)");

    // roofline
    auto* roofline = app.add_subcommand("roofline", "Roofline series for one component");
    std::string rl_platform, rl_component, rl_kind = "theoretical";
    std::vector<std::string> rl_networks, rl_traces;
    double oi_min = 0.1, oi_max = 1000.0;
    int oi_points = 61;
    bool per_layer = false;
    int quantize_bits = 0;
    roofline->add_option("--platform", rl_platform, "Platform id")->required();
    roofline->add_option("--component", rl_component, "Component id")->required();
    roofline->add_option("--network", rl_networks, "Network(s) to place on the plot");
    roofline->add_option("--trace", rl_traces, "Counter trace JSON file(s)");
    roofline->add_option("--oi", rl_kind, "theoretical, empirical or both")->capture_default_str();
    roofline->add_flag("--layers", per_layer, "One point per layer instead of per network");
    roofline->add_option("--quantize", quantize_bits, "Quantize networks to 16 or 8 bits first");
    roofline->add_option("--oi-min", oi_min, "Lowest OI on the grid")->capture_default_str();
    roofline->add_option("--oi-max", oi_max, "Highest OI on the grid")->capture_default_str();
    roofline->add_option("--oi-points", oi_points, "Grid points")->capture_default_str();

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "Simulate co-execution of one network");
    ScenarioFlags sim_flags;
    sim_flags.add_to(simulate_cmd);

    // calibrate
    auto* calibrate_cmd = app.add_subcommand("calibrate", "Fit overhead/availability to an observed run");
    ScenarioFlags cal_flags;
    cal_flags.add_to(calibrate_cmd);
    double target_ips = 0.0;
    std::string target_composition, fit_contention;
    bool no_overhead = false;
    calibrate_cmd->add_option("--target-throughput", target_ips, "Observed images/s")->required();
    calibrate_cmd->add_option("--target-composition", target_composition, "Observed shares in percent, id=pct list");
    calibrate_cmd->add_option("--fit-contention", fit_contention, "Components whose availability is fitted");
    calibrate_cmd->add_flag("--no-overhead", no_overhead, "Keep the dispatch overhead fixed");

    // tables
    auto* tables = app.add_subcommand("tables", "Reference tables from the bundled dataset");
    int which = 1;
    std::optional<std::int64_t> table_frames;
    tables->add_option("--which", which, "1, 2 or 3")->capture_default_str();
    tables->add_option("--frames", table_frames, "Frames per simulated run");

    for (auto* cmd : {roofline, simulate_cmd, calibrate_cmd, tables}) {
        cmd->add_option("--format", common.format, "csv, json or svg");
        cmd->add_option("--out", common.out, "Output file (default: stdout)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        std::string bytes;
        if (roofline->parsed()) {
            const auto format = parse_format(common.format.empty() ? "csv" : common.format);
            const auto& data = dataset(common);
            const auto& spec = data.platform(rl_platform).component(rl_component);
            const auto model = RooflineModel::for_component(spec);
            std::vector<OiKind> kinds;
            if (rl_kind == "theoretical" || rl_kind == "both") kinds.push_back(OiKind::Theoretical);
            if (rl_kind == "empirical" || rl_kind == "both") kinds.push_back(OiKind::Empirical);
            if (kinds.empty()) throw Error(ErrorCode::UnsupportedFormat, "--oi must be theoretical, empirical or both");

            std::vector<CounterTrace> traces = data.traces;
            for (const auto& path : rl_traces) traces.push_back(load_trace(read_file(path)));

            std::vector<RooflinePoint> points;
            for (const auto& id : rl_networks) {
                NetworkProfile net = data.network(id);
                for (const auto& t : traces)
                    if (t.component_id == rl_component && (t.network_id.empty() || t.network_id == id))
                        net = attach_trace(net, t);
                if (quantize_bits != 0) net = quantize_profile(net, net.bits, quantize_bits);
                for (auto kind : kinds) {
                    if (per_layer) {
                        for (const auto& layer : net.layers) {
                            if (kind == OiKind::Empirical && !layer.dram_access_bytes) continue;
                            const double oi = kind == OiKind::Theoretical ? theoretical_oi(layer) : empirical_oi(layer);
                            points.push_back(
                                {net.id + "/" + layer.name, oi, attainable(model, oi), classify(model, oi), kind});
                        }
                    } else {
                        points.push_back(network_point(model, net, kind));
                    }
                }
            }
            bytes = emit(roofline_series(model, points, log_space(oi_min, oi_max, oi_points)), model, format);
        } else if (simulate_cmd->parsed()) {
            const auto format = parse_format(common.format.empty() ? "json" : common.format);
            if (format == Format::Svg) throw Error(ErrorCode::UnsupportedFormat, "simulate emits csv or json");
            bytes = emit(simulate(dataset(common), sim_flags.build()), format);
        } else if (calibrate_cmd->parsed()) {
            const auto format = parse_format(common.format.empty() ? "json" : common.format);
            if (format == Format::Svg) throw Error(ErrorCode::UnsupportedFormat, "calibrate emits csv or json");
            const auto scenario = cal_flags.build();
            CalibrationTarget target;
            target.throughput_ips = target_ips;
            for (const auto& [id, pct] : parse_pairs(target_composition, "--target-composition"))
                target.composition[id] = pct / 100.0;
            CalibrationOptions options;
            options.fit_overhead = !no_overhead;
            options.fit_contention = split(fit_contention, ',');
            const auto& data = dataset(common);
            bytes = emit(calibrate(data.platform(scenario.platform_id), data.network(scenario.network_id), scenario,
                                   target, options),
                         format);
        } else if (tables->parsed()) {
            const auto format = parse_format(common.format.empty() ? "csv" : common.format);
            const auto& data = dataset(common);
            Table table;
            if (which == 1) table = throughput_table(data, table_frames.value_or(1000));
            else table = coexec_table(data, which, table_frames.value_or(10000));
            bytes = emit(table, format);
        }
        write_output(bytes, common.out);
    } catch (const Error& e) {
        std::cerr << "socperf: " << e.what() << "\n";
        return e.code() == ErrorCode::Io ? kExitIo : kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "socperf: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
