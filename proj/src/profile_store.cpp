//
// Copyright (C) 2026 The socperf Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "socperf/profile_store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "socperf/error.hpp"
#include "bundled_data.hpp"

namespace socperf {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedDocument: return "MalformedDocument";
        case ErrorCode::DuplicateComponent: return "DuplicateComponent";
        case ErrorCode::DanglingHostCluster: return "DanglingHostCluster";
        case ErrorCode::BandwidthExceedsBus: return "BandwidthExceedsBus";
        case ErrorCode::NonPositiveValue: return "NonPositiveValue";
        case ErrorCode::CacheTrafficInflated: return "CacheTrafficInflated";
        case ErrorCode::LayerMismatch: return "LayerMismatch";
        case ErrorCode::UnknownComponent: return "UnknownComponent";
        case ErrorCode::UnknownPlatform: return "UnknownPlatform";
        case ErrorCode::UnknownNetwork: return "UnknownNetwork";
        case ErrorCode::MissingTrace: return "MissingTrace";
        case ErrorCode::UnsupportedBitWidth: return "UnsupportedBitWidth";
        case ErrorCode::UnsupportedPair: return "UnsupportedPair";
        case ErrorCode::EmptyEngagement: return "EmptyEngagement";
        case ErrorCode::InvalidScenario: return "InvalidScenario";
        case ErrorCode::InfeasibleTarget: return "InfeasibleTarget";
        case ErrorCode::EmptyRange: return "EmptyRange";
        case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
        case ErrorCode::MissingPower: return "MissingPower";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

std::string_view to_string(ComponentKind kind) {
    switch (kind) {
        case ComponentKind::BigCpu: return "big-cpu";
        case ComponentKind::SmallCpu: return "small-cpu";
        case ComponentKind::Gpu: return "gpu";
        case ComponentKind::Npu: return "npu";
    }
    return "?";
}

ComponentKind parse_component_kind(std::string_view text) {
    if (text == "big-cpu") return ComponentKind::BigCpu;
    if (text == "small-cpu") return ComponentKind::SmallCpu;
    if (text == "gpu") return ComponentKind::Gpu;
    if (text == "npu") return ComponentKind::Npu;
    throw Error(ErrorCode::MalformedDocument, "unknown component kind '" + std::string(text) + "'");
}

std::string_view to_string(LayerKind kind) {
    switch (kind) {
        case LayerKind::Conv: return "conv";
        case LayerKind::Fc: return "fc";
        case LayerKind::Other: return "other";
    }
    return "?";
}

LayerKind parse_layer_kind(std::string_view text) {
    if (text == "conv") return LayerKind::Conv;
    if (text == "fc") return LayerKind::Fc;
    if (text == "other") return LayerKind::Other;
    throw Error(ErrorCode::MalformedDocument, "unknown layer kind '" + std::string(text) + "'");
}

const ComponentSpec* Platform::find(std::string_view component_id) const {
    auto it = std::find_if(components.begin(), components.end(),
                           [&](const ComponentSpec& c) { return c.id == component_id; });
    return it == components.end() ? nullptr : &*it;
}

const ComponentSpec& Platform::component(std::string_view component_id) const {
    if (const auto* c = find(component_id)) return *c;
    throw Error(ErrorCode::UnknownComponent,
                "platform '" + id + "' has no component '" + std::string(component_id) + "'");
}

double NetworkProfile::total_gops() const {
    double sum = 0.0;
    for (const auto& l : layers) sum += l.gops;
    return sum;
}

double NetworkProfile::total_mem_access_bytes() const {
    double sum = 0.0;
    for (const auto& l : layers) sum += l.mem_access_bytes;
    return sum;
}

std::optional<double> NetworkProfile::total_dram_access_bytes() const {
    double sum = 0.0;
    for (const auto& l : layers) {
        if (!l.dram_access_bytes) return std::nullopt;
        sum += *l.dram_access_bytes;
    }
    return sum;
}

bool NetworkProfile::supports(std::string_view component_id) const {
    return throughput.find(std::string(component_id)) != throughput.end();
}

bool NetworkProfile::knows(std::string_view component_id) const {
    return supports(component_id) || unsupported.count(std::string(component_id)) != 0;
}

double NetworkProfile::measured_rate(std::string_view component_id) const {
    auto it = throughput.find(std::string(component_id));
    if (it != throughput.end()) return it->second;
    if (unsupported.count(std::string(component_id)) != 0)
        throw Error(ErrorCode::UnsupportedPair,
                    "network '" + id + "' is not supported on '" + std::string(component_id) + "'");
    throw Error(ErrorCode::UnknownComponent,
                "network '" + id + "' has no throughput for '" + std::string(component_id) + "'");
}

double dram_bytes(const TraceRecord& record, std::uint64_t cache_line_bytes) {
    if (record.refill_lines)
        return static_cast<double>(*record.refill_lines) * static_cast<double>(cache_line_bytes);
    return static_cast<double>(record.ext_read_bytes.value_or(0)) +
           static_cast<double>(record.ext_write_bytes.value_or(0));
}

const Platform* Dataset::find_platform(std::string_view id) const {
    auto it = std::find_if(platforms.begin(), platforms.end(),
                           [&](const Platform& p) { return p.id == id; });
    return it == platforms.end() ? nullptr : &*it;
}

const NetworkProfile* Dataset::find_network(std::string_view id) const {
    auto it = std::find_if(networks.begin(), networks.end(),
                           [&](const NetworkProfile& n) { return n.id == id; });
    return it == networks.end() ? nullptr : &*it;
}

const Platform& Dataset::platform(std::string_view id) const {
    if (const auto* p = find_platform(id)) return *p;
    throw Error(ErrorCode::UnknownPlatform, "no platform '" + std::string(id) + "'");
}

const NetworkProfile& Dataset::network(std::string_view id) const {
    if (const auto* n = find_network(id)) return *n;
    throw Error(ErrorCode::UnknownNetwork, "no network '" + std::string(id) + "'");
}

const Platform* Dataset::platform_of(std::string_view component_id) const {
    for (const auto& p : platforms)
        if (p.find(component_id)) return &p;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void require_positive(double value, const std::string& what) {
    if (!(value > 0.0)) throw Error(ErrorCode::NonPositiveValue, what + " must be > 0");
}

}  // namespace

void validate(const Platform& platform) {
    if (platform.id.empty()) throw Error(ErrorCode::MalformedDocument, "platform id is empty");
    require_positive(platform.bus_peak_bandwidth_gbs, "platform '" + platform.id + "' bus bandwidth");
    std::set<std::string> seen;
    for (const auto& c : platform.components) {
        if (c.id.empty()) throw Error(ErrorCode::MalformedDocument, "component id is empty");
        if (!seen.insert(c.id).second)
            throw Error(ErrorCode::DuplicateComponent, "component '" + c.id + "' declared twice");
        require_positive(c.peak_compute_gops, c.id + ".peak_compute_gops");
        require_positive(c.sustainable_bandwidth_gbs, c.id + ".sustainable_bandwidth_gbs");
        require_positive(c.active_power_w, c.id + ".active_power_w");
        if (c.frequency_ghz) require_positive(*c.frequency_ghz, c.id + ".frequency_ghz");
        if (c.cores && *c.cores <= 0) throw Error(ErrorCode::NonPositiveValue, c.id + ".cores must be > 0");
    }
    for (const auto& c : platform.components) {
        if (c.host_cluster) {
            const auto* host = platform.find(*c.host_cluster);
            if (host == nullptr || !is_cpu(host->kind))
                throw Error(ErrorCode::DanglingHostCluster,
                            c.id + ".host_cluster '" + *c.host_cluster + "' is not a CPU cluster on '" +
                                platform.id + "'");
        }
        if (c.sustainable_bandwidth_gbs > platform.bus_peak_bandwidth_gbs)
            throw Error(ErrorCode::BandwidthExceedsBus,
                        c.id + " sustains " + std::to_string(c.sustainable_bandwidth_gbs) +
                            " GB/s, above the bus peak of " + std::to_string(platform.bus_peak_bandwidth_gbs));
    }
}

void validate(const NetworkProfile& profile) {
    if (profile.id.empty()) throw Error(ErrorCode::MalformedDocument, "network id is empty");
    if (profile.layers.empty())
        throw Error(ErrorCode::MalformedDocument, "network '" + profile.id + "' has no layers");
    std::set<std::string> names;
    for (const auto& l : profile.layers) {
        if (!names.insert(l.name).second)
            throw Error(ErrorCode::MalformedDocument, "layer '" + l.name + "' declared twice");
        require_positive(l.gops, l.name + ".gops");
        require_positive(l.mem_access_bytes, l.name + ".mem_access_bytes");
        if (l.dram_access_bytes) {
            require_positive(*l.dram_access_bytes, l.name + ".dram_access_bytes");
            if (*l.dram_access_bytes > l.mem_access_bytes)
                throw Error(ErrorCode::CacheTrafficInflated,
                            l.name + " DRAM traffic exceeds the bytes it touches");
        }
    }
    for (const auto& [id, rate] : profile.throughput) {
        require_positive(rate, profile.id + ".throughput." + id);
        if (profile.unsupported.count(id) != 0)
            throw Error(ErrorCode::MalformedDocument, id + " is both supported and unsupported");
    }
    if (profile.ops_per_mac != 1 && profile.ops_per_mac != 2)
        throw Error(ErrorCode::MalformedDocument, "ops_per_mac must be 1 or 2");
    if (profile.bits != 32 && profile.bits != 16 && profile.bits != 8)
        throw Error(ErrorCode::UnsupportedBitWidth, "bits must be 32, 16 or 8");
    require_positive(profile.op_cost_scale, profile.id + ".op_cost_scale");
}

void validate(const CounterTrace& trace) {
    if (trace.component_id.empty()) throw Error(ErrorCode::MalformedDocument, "trace component_id is empty");
    if (trace.cache_line_bytes == 0)
        throw Error(ErrorCode::NonPositiveValue, "cache_line_bytes must be > 0");
    for (const auto& r : trace.layers) {
        const bool refill = r.refill_lines.has_value();
        const bool external = r.ext_read_bytes.has_value() || r.ext_write_bytes.has_value();
        if (refill == external)
            throw Error(ErrorCode::MalformedDocument,
                        "trace record '" + r.layer + "' needs either refill_lines or external byte counts");
    }
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json parse_document(std::string_view document) {
    try {
        return json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedDocument, e.what());
    }
}

const json& member(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key))
        throw Error(ErrorCode::MalformedDocument, std::string("missing key '") + key + "'");
    return obj.at(key);
}

double number(const json& obj, const char* key) {
    const auto& v = member(obj, key);
    if (!v.is_number()) throw Error(ErrorCode::MalformedDocument, std::string("'") + key + "' must be a number");
    return v.get<double>();
}

std::optional<double> optional_number(const json& obj, const char* key) {
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    return number(obj, key);
}

std::string text(const json& obj, const char* key) {
    const auto& v = member(obj, key);
    if (!v.is_string()) throw Error(ErrorCode::MalformedDocument, std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

std::optional<std::uint64_t> optional_count(const json& obj, const char* key) {
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    const auto& v = obj.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer())
        throw Error(ErrorCode::NonPositiveValue, std::string("'") + key + "' must be >= 0");
    throw Error(ErrorCode::MalformedDocument, std::string("'") + key + "' must be an integer count");
}

std::vector<std::string> string_list(const json& obj, const char* key) {
    std::vector<std::string> out;
    if (!obj.contains(key)) return out;
    const auto& v = obj.at(key);
    if (!v.is_array()) throw Error(ErrorCode::MalformedDocument, std::string("'") + key + "' must be a list");
    for (const auto& s : v) {
        if (!s.is_string()) throw Error(ErrorCode::MalformedDocument, std::string("'") + key + "' holds a non-string");
        out.push_back(s.get<std::string>());
    }
    return out;
}

const json& array_member(const json& obj, const char* key) {
    const auto& v = member(obj, key);
    if (!v.is_array()) throw Error(ErrorCode::MalformedDocument, std::string("'") + key + "' must be a list");
    return v;
}

ComponentSpec parse_component(const json& j) {
    ComponentSpec c;
    c.id = text(j, "id");
    c.kind = parse_component_kind(text(j, "kind"));
    c.sustainable_bandwidth_gbs = number(j, "sustainable_bandwidth_gbs");
    c.active_power_w = number(j, "active_power_w");
    c.frequency_ghz = optional_number(j, "frequency_ghz");
    if (j.contains("cores")) {
        const auto& v = j.at("cores");
        if (!v.is_number_integer()) throw Error(ErrorCode::MalformedDocument, c.id + ".cores must be an integer");
        c.cores = v.get<int>();
    }
    if (j.contains("host_cluster") && !j.at("host_cluster").is_null()) c.host_cluster = text(j, "host_cluster");
    if (j.contains("precision")) c.precision = text(j, "precision");
    c.estimated_fields = string_list(j, "estimated_fields");

    if (auto peak = optional_number(j, "peak_compute_gops")) {
        c.peak_compute_gops = *peak;
    } else if (is_cpu(c.kind) && c.cores && c.frequency_ghz) {
        c.peak_compute_gops = cpu_cluster_peak_gops(*c.cores, *c.frequency_ghz);
    } else {
        throw Error(ErrorCode::MalformedDocument,
                    c.id + " omits peak_compute_gops and it cannot be derived from cores and frequency");
    }
    return c;
}

}  // namespace

Platform load_platform(std::string_view document) {
    const json root = parse_document(document);
    const json& j = member(root, "platform");
    Platform p;
    try {
        p.id = text(j, "id");
        p.bus_peak_bandwidth_gbs = number(j, "bus_peak_bandwidth_gbs");
        p.estimated_fields = string_list(j, "estimated_fields");
        for (const auto& c : array_member(j, "components")) p.components.push_back(parse_component(c));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedDocument, e.what());
    }
    validate(p);
    return p;
}

NetworkProfile load_network_profile(std::string_view document) {
    const json root = parse_document(document);
    const json& j = member(root, "network");
    NetworkProfile n;
    try {
        n.id = text(j, "id");
        for (const auto& lj : array_member(j, "layers")) {
            LayerProfile l;
            l.name = text(lj, "name");
            l.kind = parse_layer_kind(text(lj, "kind"));
            l.gops = number(lj, "gops");
            l.mem_access_bytes = number(lj, "mem_access_bytes");
            l.dram_access_bytes = optional_number(lj, "dram_access_bytes");
            n.layers.push_back(std::move(l));
        }
        const json& tp = member(j, "throughput");
        if (!tp.is_object()) throw Error(ErrorCode::MalformedDocument, "'throughput' must be an object");
        for (const auto& [id, v] : tp.items()) {
            if (v.is_string() && v.get<std::string>() == "unsupported") {
                n.unsupported.insert(id);
            } else if (v.is_number()) {
                n.throughput[id] = v.get<double>();
            } else {
                throw Error(ErrorCode::MalformedDocument,
                            "throughput for '" + id + "' must be a number or \"unsupported\"");
            }
        }
        if (j.contains("ops_per_mac")) n.ops_per_mac = j.at("ops_per_mac").get<int>();
        if (j.contains("bits")) n.bits = j.at("bits").get<int>();
        if (j.contains("op_cost_scale")) n.op_cost_scale = number(j, "op_cost_scale");
        if (j.contains("quantized")) n.quantized = j.at("quantized").get<bool>();
        if (j.contains("layers_are_estimates")) n.layers_are_estimates = j.at("layers_are_estimates").get<bool>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedDocument, e.what());
    }
    validate(n);
    return n;
}

CounterTrace load_trace(std::string_view document) {
    const json root = parse_document(document);
    const json& j = member(root, "trace");
    CounterTrace t;
    try {
        t.component_id = text(j, "component_id");
        if (j.contains("network")) t.network_id = text(j, "network");
        if (auto line = optional_count(j, "cache_line_bytes")) t.cache_line_bytes = *line;
        for (const auto& rj : array_member(j, "layers")) {
            TraceRecord r;
            r.layer = text(rj, "name");
            r.refill_lines = optional_count(rj, "refill_lines");
            r.ext_read_bytes = optional_count(rj, "ext_read_bytes");
            r.ext_write_bytes = optional_count(rj, "ext_write_bytes");
            t.layers.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedDocument, e.what());
    }
    validate(t);
    return t;
}

std::vector<CoexecObservation> load_observations(std::string_view document) {
    const json root = parse_document(document);
    std::vector<CoexecObservation> out;
    try {
        for (const auto& oj : array_member(root, "observations")) {
            CoexecObservation o;
            o.table = member(oj, "table").get<int>();
            o.platform = text(oj, "platform");
            o.network = text(oj, "network");
            o.engaged = string_list(oj, "engaged");
            o.baseline = text(oj, "baseline");
            o.baseline_ips = number(oj, "baseline_ips");
            o.coexec_ips = number(oj, "coexec_ips");
            o.gain_pct = number(oj, "gain_pct");
            if (oj.contains("composition_pct"))
                for (const auto& [id, v] : oj.at("composition_pct").items()) o.composition_pct[id] = v.get<double>();
            if (o.engaged.empty()) throw Error(ErrorCode::MalformedDocument, "observation without engaged components");
            out.push_back(std::move(o));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedDocument, e.what());
    }
    return out;
}

std::string to_json(const Platform& platform) {
    ordered_json p;
    p["id"] = platform.id;
    p["bus_peak_bandwidth_gbs"] = platform.bus_peak_bandwidth_gbs;
    if (!platform.estimated_fields.empty()) p["estimated_fields"] = platform.estimated_fields;
    p["components"] = ordered_json::array();
    for (const auto& c : platform.components) {
        ordered_json cj;
        cj["id"] = c.id;
        cj["kind"] = std::string(to_string(c.kind));
        cj["peak_compute_gops"] = c.peak_compute_gops;
        cj["sustainable_bandwidth_gbs"] = c.sustainable_bandwidth_gbs;
        cj["active_power_w"] = c.active_power_w;
        if (c.frequency_ghz) cj["frequency_ghz"] = *c.frequency_ghz;
        if (c.cores) cj["cores"] = *c.cores;
        if (c.host_cluster) cj["host_cluster"] = *c.host_cluster;
        if (c.precision != "fp32") cj["precision"] = c.precision;
        if (!c.estimated_fields.empty()) cj["estimated_fields"] = c.estimated_fields;
        p["components"].push_back(std::move(cj));
    }
    ordered_json root;
    root["platform"] = std::move(p);
    return root.dump(2);
}

std::string to_json(const NetworkProfile& profile) {
    ordered_json n;
    n["id"] = profile.id;
    n["ops_per_mac"] = profile.ops_per_mac;
    n["bits"] = profile.bits;
    if (profile.quantized) {
        n["quantized"] = true;
        n["op_cost_scale"] = profile.op_cost_scale;
    }
    n["layers_are_estimates"] = profile.layers_are_estimates;
    n["layers"] = ordered_json::array();
    for (const auto& l : profile.layers) {
        ordered_json lj;
        lj["name"] = l.name;
        lj["kind"] = std::string(to_string(l.kind));
        lj["gops"] = l.gops;
        lj["mem_access_bytes"] = l.mem_access_bytes;
        if (l.dram_access_bytes) lj["dram_access_bytes"] = *l.dram_access_bytes;
        n["layers"].push_back(std::move(lj));
    }
    ordered_json tp = ordered_json::object();
    for (const auto& [id, rate] : profile.throughput) tp[id] = rate;
    for (const auto& id : profile.unsupported) tp[id] = "unsupported";
    n["throughput"] = std::move(tp);
    ordered_json root;
    root["network"] = std::move(n);
    return root.dump(2);
}

std::string to_json(const CounterTrace& trace) {
    ordered_json t;
    t["component_id"] = trace.component_id;
    if (!trace.network_id.empty()) t["network"] = trace.network_id;
    t["cache_line_bytes"] = trace.cache_line_bytes;
    t["layers"] = ordered_json::array();
    for (const auto& r : trace.layers) {
        ordered_json rj;
        rj["name"] = r.layer;
        if (r.refill_lines) rj["refill_lines"] = *r.refill_lines;
        if (r.ext_read_bytes) rj["ext_read_bytes"] = *r.ext_read_bytes;
        if (r.ext_write_bytes) rj["ext_write_bytes"] = *r.ext_write_bytes;
        t["layers"].push_back(std::move(rj));
    }
    ordered_json root;
    root["trace"] = std::move(t);
    return root.dump(2);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::Io, "cannot read '" + path.string() + "'");
    return ss.str();
}

namespace {

std::vector<std::filesystem::path> json_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) return files;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

void check_unique(const Dataset& d) {
    std::set<std::string> ids;
    for (const auto& p : d.platforms)
        if (!ids.insert(p.id).second) throw Error(ErrorCode::MalformedDocument, "platform '" + p.id + "' loaded twice");
    ids.clear();
    for (const auto& n : d.networks)
        if (!ids.insert(n.id).second) throw Error(ErrorCode::MalformedDocument, "network '" + n.id + "' loaded twice");
}

}  // namespace

Dataset load_dataset_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec))
        throw Error(ErrorCode::Io, "dataset directory '" + dir.string() + "' does not exist");
    Dataset d;
    for (const auto& f : json_files(dir / "platforms")) d.platforms.push_back(load_platform(read_file(f)));
    for (const auto& f : json_files(dir / "networks")) d.networks.push_back(load_network_profile(read_file(f)));
    if (std::filesystem::exists(dir / "observations.json", ec))
        d.observations = load_observations(read_file(dir / "observations.json"));
    for (const auto& f : json_files(dir / "traces")) d.traces.push_back(load_trace(read_file(f)));
    check_unique(d);
    return d;
}

const Dataset& builtin_dataset() {
    static const Dataset dataset = [] {
        Dataset d;
        for (const auto& doc : detail::bundled_documents()) {
            if (doc.path.rfind("platforms/", 0) == 0) {
                d.platforms.push_back(load_platform(doc.text));
            } else if (doc.path.rfind("networks/", 0) == 0) {
                d.networks.push_back(load_network_profile(doc.text));
            } else if (doc.path == "observations.json") {
                d.observations = load_observations(doc.text);
            } else if (doc.path.rfind("traces/", 0) == 0) {
                d.traces.push_back(load_trace(doc.text));
            }
        }
        check_unique(d);
        return d;
    }();
    return dataset;
}

NetworkProfile attach_trace(const NetworkProfile& profile, const CounterTrace& trace) {
    validate(trace);
    if (!profile.knows(trace.component_id))
        throw Error(ErrorCode::UnknownComponent,
                    "trace component '" + trace.component_id + "' is unknown to network '" + profile.id + "'");
    NetworkProfile out = profile;
    for (const auto& record : trace.layers) {
        auto it = std::find_if(out.layers.begin(), out.layers.end(),
                               [&](const LayerProfile& l) { return l.name == record.layer; });
        if (it == out.layers.end())
            throw Error(ErrorCode::LayerMismatch,
                        "trace layer '" + record.layer + "' is not in network '" + profile.id + "'");
        const double bytes = dram_bytes(record, trace.cache_line_bytes);
        if (!(bytes > 0.0))
            throw Error(ErrorCode::NonPositiveValue, "trace layer '" + record.layer + "' reports no DRAM traffic");
        if (bytes > it->mem_access_bytes)
            throw Error(ErrorCode::CacheTrafficInflated,
                        "trace layer '" + record.layer + "' reports more DRAM traffic than the layer touches");
        it->dram_access_bytes = bytes;
    }
    return out;
}

}  // namespace socperf
