//
// Copyright (C) 2026 The socperf Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Data model for SoC platforms, network profiles, counter traces and the
// published co-execution observations, plus JSON loading/serialization.
// Every loader runs the same validation, including the built-in dataset.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace socperf {

enum class ComponentKind { BigCpu, SmallCpu, Gpu, Npu };

std::string_view to_string(ComponentKind kind);
ComponentKind parse_component_kind(std::string_view text);

inline bool is_cpu(ComponentKind kind) {
    return kind == ComponentKind::BigCpu || kind == ComponentKind::SmallCpu;
}

// NEON issues four FP32 operations per cycle per core.
inline constexpr double kCpuOpsPerCycle = 4.0;
inline constexpr std::uint64_t kDefaultCacheLineBytes = 64;

// Peak FP32 compute of a CPU cluster in GOPS/s.
inline double cpu_cluster_peak_gops(int cores, double frequency_ghz) {
    return static_cast<double>(cores) * frequency_ghz * kCpuOpsPerCycle;
}

struct ComponentSpec {
    std::string id;
    ComponentKind kind = ComponentKind::BigCpu;
    double peak_compute_gops = 0.0;          // GOPS/s
    double sustainable_bandwidth_gbs = 0.0;  // GB/s
    double active_power_w = 0.0;             // W
    std::optional<double> frequency_ghz;
    std::optional<int> cores;
    std::optional<std::string> host_cluster;
    std::string precision = "fp32";
    // Names of fields holding estimated rather than measured values.
    std::vector<std::string> estimated_fields;

    bool operator==(const ComponentSpec&) const = default;
};

struct Platform {
    std::string id;
    double bus_peak_bandwidth_gbs = 0.0;
    std::vector<ComponentSpec> components;
    std::vector<std::string> estimated_fields;

    const ComponentSpec* find(std::string_view component_id) const;
    // Throws UnknownComponent.
    const ComponentSpec& component(std::string_view component_id) const;

    bool operator==(const Platform&) const = default;
};

enum class LayerKind { Conv, Fc, Other };

std::string_view to_string(LayerKind kind);
LayerKind parse_layer_kind(std::string_view text);

struct LayerProfile {
    std::string name;
    LayerKind kind = LayerKind::Other;
    double gops = 0.0;                 // giga-operations per inference
    double mem_access_bytes = 0.0;     // all data touched by the computation
    std::optional<double> dram_access_bytes;  // measured DRAM traffic

    bool operator==(const LayerProfile&) const = default;
};

struct NetworkProfile {
    std::string id;
    std::vector<LayerProfile> layers;
    // Measured images/s per component at peak frequency.
    std::map<std::string, double> throughput;
    // Components that cannot run this network at all.
    std::set<std::string> unsupported;
    int ops_per_mac = 2;
    int bits = 32;
    double op_cost_scale = 1.0;
    bool quantized = false;
    bool layers_are_estimates = false;

    double total_gops() const;
    double total_mem_access_bytes() const;
    // Present only when every layer carries a DRAM measurement.
    std::optional<double> total_dram_access_bytes() const;

    bool supports(std::string_view component_id) const;
    bool knows(std::string_view component_id) const;
    // Throws UnsupportedPair for flagged pairs, UnknownComponent otherwise.
    double measured_rate(std::string_view component_id) const;

    bool operator==(const NetworkProfile&) const = default;
};

struct TraceRecord {
    std::string layer;
    std::optional<std::uint64_t> refill_lines;
    std::optional<std::uint64_t> ext_read_bytes;
    std::optional<std::uint64_t> ext_write_bytes;

    bool operator==(const TraceRecord&) const = default;
};

// Per-layer counter readings for one component. CPU traces count L2 refill
// lines; GPU traces count external read/write bytes.
struct CounterTrace {
    std::string component_id;
    std::string network_id;  // optional; names the profile the trace belongs to
    std::uint64_t cache_line_bytes = kDefaultCacheLineBytes;
    std::vector<TraceRecord> layers;

    bool operator==(const CounterTrace&) const = default;
};

// DRAM bytes implied by one trace record.
double dram_bytes(const TraceRecord& record, std::uint64_t cache_line_bytes);

// A published co-execution measurement used as a calibration target.
struct CoexecObservation {
    int table = 0;
    std::string platform;
    std::string network;
    std::vector<std::string> engaged;
    std::string baseline;
    double baseline_ips = 0.0;
    double coexec_ips = 0.0;
    double gain_pct = 0.0;
    std::map<std::string, double> composition_pct;

    bool operator==(const CoexecObservation&) const = default;
};

struct Dataset {
    std::vector<Platform> platforms;
    std::vector<NetworkProfile> networks;
    std::vector<CoexecObservation> observations;
    std::vector<CounterTrace> traces;

    const Platform* find_platform(std::string_view id) const;
    const NetworkProfile* find_network(std::string_view id) const;
    const Platform& platform(std::string_view id) const;
    const NetworkProfile& network(std::string_view id) const;
    // Platform that owns the given component, if any.
    const Platform* platform_of(std::string_view component_id) const;
};

void validate(const Platform& platform);
void validate(const NetworkProfile& profile);
void validate(const CounterTrace& trace);

Platform load_platform(std::string_view document);
NetworkProfile load_network_profile(std::string_view document);
CounterTrace load_trace(std::string_view document);
std::vector<CoexecObservation> load_observations(std::string_view document);

std::string to_json(const Platform& platform);
std::string to_json(const NetworkProfile& profile);
std::string to_json(const CounterTrace& trace);

// Reads a whole file; throws Error(Io) when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

// Loads <dir>/platforms/*.json, <dir>/networks/*.json and, when present,
// <dir>/observations.json and <dir>/traces/*.json.
Dataset load_dataset_dir(const std::filesystem::path& dir);

// Both bundled platforms, all five networks and the co-execution
// observations. Parsed once; immutable afterwards.
const Dataset& builtin_dataset();

// Fills dram_access_bytes for every traced layer. An empty trace returns the
// profile unchanged.
NetworkProfile attach_trace(const NetworkProfile& profile, const CounterTrace& trace);

}  // namespace socperf
