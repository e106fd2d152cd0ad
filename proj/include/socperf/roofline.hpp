//
// Copyright (C) 2026 The socperf Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Roofline analysis: theoretical and empirical operational intensity,
// attainable performance, bound classification and plot series.
//
// Units: operations in giga-ops, traffic in bytes, so OI comes out in
// ops/byte and attainable performance in GOPS/s.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "socperf/profile_store.hpp"

namespace socperf {

enum class Bound { Memory, Compute };
enum class OiKind { Theoretical, Empirical };

std::string_view to_string(Bound bound);
std::string_view to_string(OiKind kind);

struct RooflineModel {
    std::string component_id;
    double roof_bandwidth_gbs = 0.0;  // slope of the memory roof
    double ceiling_gops = 0.0;        // flat compute ceiling

    // Throws NonPositiveValue unless both limits are > 0.
    RooflineModel(std::string component, double bandwidth_gbs, double ceiling);

    static RooflineModel for_component(const ComponentSpec& component);
};

struct RooflinePoint {
    std::string workload;
    double oi = 0.0;
    double performance_gops = 0.0;
    Bound bound = Bound::Memory;
    OiKind oi_kind = OiKind::Theoretical;
};

double theoretical_oi(const LayerProfile& layer);
// Throws MissingTrace when the layer has no DRAM measurement.
double empirical_oi(const LayerProfile& layer);

// Whole-network OI: summed ops over summed bytes.
double network_theoretical_oi(const NetworkProfile& profile);
double network_empirical_oi(const NetworkProfile& profile);

double attainable(const RooflineModel& model, double oi);
double ridge_point(const RooflineModel& model);
// Ties at the ridge are compute-bound.
Bound classify(const RooflineModel& model, double oi);

// One point per layer, placed on the roofline at the chosen OI.
std::vector<RooflinePoint> layer_points(const RooflineModel& model, const NetworkProfile& profile, OiKind kind);

// Whole-network point. Theoretical points sit on the roofline; empirical
// points use achieved performance (network ops x measured images/s) when the
// network has a measured rate on the model's component.
RooflinePoint network_point(const RooflineModel& model, const NetworkProfile& profile, OiKind kind);

// Logarithmically spaced, strictly increasing OI grid. count >= 2.
std::vector<double> log_space(double lo, double hi, int count);

struct SeriesRow {
    double oi = 0.0;
    double roofline_gops = 0.0;
    std::optional<std::string> point_label;
    std::optional<double> point_oi;
    std::optional<double> point_gops;
    std::optional<OiKind> point_kind;
    Bound bound = Bound::Memory;
};

// Plot table: one row per grid OI (plus the ridge when inside the range),
// then one row per point, all sorted by OI. Throws EmptyRange for an empty
// grid and NonPositiveValue for a non-increasing or non-positive one.
std::vector<SeriesRow> roofline_series(const RooflineModel& model, const std::vector<RooflinePoint>& points,
                                       const std::vector<double>& oi_grid);

// Scales every layer's ops and bytes by to_bits/from_bits, leaving OI_t
// unchanged. Throws UnsupportedBitWidth unless both widths are 32, 16 or 8
// and to_bits <= from_bits.
NetworkProfile quantize_profile(const NetworkProfile& profile, int from_bits, int to_bits);

}  // namespace socperf
