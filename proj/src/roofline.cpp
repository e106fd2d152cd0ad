//
// Copyright (C) 2026 The socperf Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "socperf/roofline.hpp"

#include <algorithm>
#include <cmath>

#include "socperf/error.hpp"

namespace socperf {

namespace {
constexpr double kGiga = 1e9;
}

std::string_view to_string(Bound bound) { return bound == Bound::Memory ? "memory" : "compute"; }

std::string_view to_string(OiKind kind) { return kind == OiKind::Theoretical ? "theoretical" : "empirical"; }

RooflineModel::RooflineModel(std::string component, double bandwidth_gbs, double ceiling)
    : component_id(std::move(component)), roof_bandwidth_gbs(bandwidth_gbs), ceiling_gops(ceiling) {
    if (!(roof_bandwidth_gbs > 0.0) || !(ceiling_gops > 0.0))
        throw Error(ErrorCode::NonPositiveValue, "roofline '" + component_id + "' needs positive roof and ceiling");
}

RooflineModel RooflineModel::for_component(const ComponentSpec& component) {
    return RooflineModel(component.id, component.sustainable_bandwidth_gbs, component.peak_compute_gops);
}

double theoretical_oi(const LayerProfile& layer) { return layer.gops * kGiga / layer.mem_access_bytes; }

double empirical_oi(const LayerProfile& layer) {
    if (!layer.dram_access_bytes)
        throw Error(ErrorCode::MissingTrace, "layer '" + layer.name + "' has no DRAM measurement");
    return layer.gops * kGiga / *layer.dram_access_bytes;
}

double network_theoretical_oi(const NetworkProfile& profile) {
    return profile.total_gops() * kGiga / profile.total_mem_access_bytes();
}

double network_empirical_oi(const NetworkProfile& profile) {
    const auto dram = profile.total_dram_access_bytes();
    if (!dram) throw Error(ErrorCode::MissingTrace, "network '" + profile.id + "' is not fully traced");
    return profile.total_gops() * kGiga / *dram;
}

double attainable(const RooflineModel& model, double oi) {
    return std::min(model.ceiling_gops, oi * model.roof_bandwidth_gbs);
}

double ridge_point(const RooflineModel& model) { return model.ceiling_gops / model.roof_bandwidth_gbs; }

Bound classify(const RooflineModel& model, double oi) {
    return oi < ridge_point(model) ? Bound::Memory : Bound::Compute;
}

std::vector<RooflinePoint> layer_points(const RooflineModel& model, const NetworkProfile& profile, OiKind kind) {
    std::vector<RooflinePoint> points;
    points.reserve(profile.layers.size());
    for (const auto& layer : profile.layers) {
        const double oi = kind == OiKind::Theoretical ? theoretical_oi(layer) : empirical_oi(layer);
        points.push_back({profile.id + "/" + layer.name, oi, attainable(model, oi), classify(model, oi), kind});
    }
    return points;
}

RooflinePoint network_point(const RooflineModel& model, const NetworkProfile& profile, OiKind kind) {
    const double oi = kind == OiKind::Theoretical ? network_theoretical_oi(profile) : network_empirical_oi(profile);
    double performance = attainable(model, oi);
    if (kind == OiKind::Empirical && profile.supports(model.component_id))
        performance = profile.total_gops() * profile.measured_rate(model.component_id);
    return {profile.id, oi, performance, classify(model, oi), kind};
}

std::vector<double> log_space(double lo, double hi, int count) {
    if (count < 2 || !(lo > 0.0) || !(hi > lo))
        throw Error(ErrorCode::EmptyRange, "log_space needs 0 < lo < hi and count >= 2");
    std::vector<double> grid(static_cast<std::size_t>(count));
    const double step = (std::log10(hi) - std::log10(lo)) / (count - 1);
    for (int i = 0; i < count; ++i) grid[static_cast<std::size_t>(i)] = std::pow(10.0, std::log10(lo) + step * i);
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::vector<SeriesRow> roofline_series(const RooflineModel& model, const std::vector<RooflinePoint>& points,
                                       const std::vector<double>& oi_grid) {
    if (oi_grid.empty()) throw Error(ErrorCode::EmptyRange, "OI range is empty");
    for (std::size_t i = 0; i < oi_grid.size(); ++i) {
        if (!(oi_grid[i] > 0.0)) throw Error(ErrorCode::NonPositiveValue, "OI range must be positive");
        if (i > 0 && !(oi_grid[i] > oi_grid[i - 1]))
            throw Error(ErrorCode::NonPositiveValue, "OI range must be strictly increasing");
    }

    std::vector<double> grid = oi_grid;
    const double ridge = ridge_point(model);
    if (ridge > grid.front() && ridge < grid.back() && std::find(grid.begin(), grid.end(), ridge) == grid.end()) {
        grid.insert(std::upper_bound(grid.begin(), grid.end(), ridge), ridge);
    }

    std::vector<SeriesRow> rows;
    rows.reserve(grid.size() + points.size());
    for (double oi : grid) {
        SeriesRow row;
        row.oi = oi;
        row.roofline_gops = attainable(model, oi);
        row.bound = classify(model, oi);
        rows.push_back(row);
    }
    for (const auto& p : points) {
        SeriesRow row;
        row.oi = p.oi;
        row.roofline_gops = attainable(model, p.oi);
        row.point_label = p.workload;
        row.point_oi = p.oi;
        row.point_gops = p.performance_gops;
        row.point_kind = p.oi_kind;
        row.bound = classify(model, p.oi);
        rows.push_back(row);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SeriesRow& a, const SeriesRow& b) { return a.oi < b.oi; });
    return rows;
}

NetworkProfile quantize_profile(const NetworkProfile& profile, int from_bits, int to_bits) {
    auto valid = [](int bits) { return bits == 32 || bits == 16 || bits == 8; };
    if (!valid(from_bits) || !valid(to_bits) || to_bits > from_bits)
        throw Error(ErrorCode::UnsupportedBitWidth,
                    "cannot quantize from " + std::to_string(from_bits) + " to " + std::to_string(to_bits) + " bits");
    if (from_bits != profile.bits)
        throw Error(ErrorCode::UnsupportedBitWidth, "network '" + profile.id + "' is stored at " +
                                                        std::to_string(profile.bits) + " bits, not " +
                                                        std::to_string(from_bits));
    if (to_bits == from_bits) return profile;

    // Power-of-two ratio, so the scaling below is exact in binary floating point.
    const double scale = static_cast<double>(to_bits) / static_cast<double>(from_bits);
    NetworkProfile out = profile;
    for (auto& layer : out.layers) {
        layer.gops *= scale;
        layer.mem_access_bytes *= scale;
        if (layer.dram_access_bytes) *layer.dram_access_bytes *= scale;
    }
    out.bits = to_bits;
    out.op_cost_scale = profile.op_cost_scale * scale;
    out.quantized = true;
    return out;
}

}  // namespace socperf
