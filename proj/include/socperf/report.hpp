//
// Copyright (C) 2026 The socperf Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Report emission (CSV / JSON / SVG), scenario documents and the reference
// table reproductions used by the command-line front end.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "socperf/coexec.hpp"
#include "socperf/profile_store.hpp"
#include "socperf/roofline.hpp"

namespace socperf {

enum class Format { Csv, Json, Svg };

std::string_view to_string(Format format);
// Throws UnsupportedFormat.
Format parse_format(std::string_view text);

// Fixed decimal notation at 4 significant digits: 12 -> "12.00",
// 0.000123456 -> "0.0001235", 98765 -> "98770".
std::string format_sig4(double value);
double round_sig4(double value);

using Cell = std::variant<std::string, double, std::int64_t>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

std::string emit(const Table& table, Format format);
// CSV, JSON or SVG.
std::string emit(const std::vector<SeriesRow>& series, const RooflineModel& model, Format format);
// CSV or JSON; SVG throws UnsupportedFormat.
std::string emit(const SimResult& result, Format format);
std::string emit(const CalibrationResult& result, Format format);

// Scenario documents: {platform, network, components[], frames,
// dispatch_overhead_s, contention{}, host_penalty, jitter{seed, cv}}.
Scenario load_scenario(std::string_view document);
std::string to_json(const Scenario& scenario);

// Scenario reproducing one published co-execution measurement.
Scenario scenario_for(const CoexecObservation& observation, std::int64_t frames);

// CPU+GPU observations fit one dispatch overhead; observations with a
// frame composition fit one availability factor per engaged component at
// zero overhead.
CalibrationResult calibrate_observation(const Dataset& dataset, const CoexecObservation& observation,
                                        std::int64_t frames);

// Per-component single-run throughput for every network, with unsupported
// pairs spelled "Not Supported".
Table throughput_table(const Dataset& dataset, std::int64_t frames = 1000);
// Calibrated co-execution against the published values. Rows are fitted
// concurrently; output order follows the dataset.
Table coexec_table(const Dataset& dataset, int which, std::int64_t frames = 10000);

}  // namespace socperf
