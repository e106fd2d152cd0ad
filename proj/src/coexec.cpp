//
// Copyright (C) 2026 The socperf Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "socperf/coexec.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#include "socperf/error.hpp"

namespace socperf {

void validate(const Scenario& scenario, const Platform& platform, const NetworkProfile& profile) {
    if (scenario.engaged.empty()) throw Error(ErrorCode::EmptyEngagement, "no components engaged");
    if (scenario.frame_count <= 0) throw Error(ErrorCode::InvalidScenario, "frame_count must be > 0");
    if (!(scenario.dispatch_overhead_s >= 0.0) || !std::isfinite(scenario.dispatch_overhead_s))
        throw Error(ErrorCode::InvalidScenario, "dispatch_overhead_s must be >= 0");
    if (!(scenario.host_penalty > 0.0 && scenario.host_penalty <= 1.0))
        throw Error(ErrorCode::InvalidScenario, "host_penalty must lie in (0, 1]");
    if (!scenario.platform_id.empty() && scenario.platform_id != platform.id)
        throw Error(ErrorCode::InvalidScenario,
                    "scenario targets platform '" + scenario.platform_id + "', got '" + platform.id + "'");
    if (!scenario.network_id.empty() && scenario.network_id != profile.id)
        throw Error(ErrorCode::InvalidScenario,
                    "scenario targets network '" + scenario.network_id + "', got '" + profile.id + "'");
    std::set<std::string> seen;
    for (const auto& id : scenario.engaged) {
        if (!seen.insert(id).second) throw Error(ErrorCode::InvalidScenario, "component '" + id + "' engaged twice");
        platform.component(id);
        profile.measured_rate(id);
    }
    for (const auto& [id, factor] : scenario.contention) {
        platform.component(id);
        if (!(factor > 0.0 && factor <= 1.0))
            throw Error(ErrorCode::InvalidScenario, "availability of '" + id + "' must lie in (0, 1]");
    }
    if (scenario.jitter && !(scenario.jitter->cv >= 0.0 && std::isfinite(scenario.jitter->cv)))
        throw Error(ErrorCode::InvalidScenario, "jitter cv must be >= 0");
}

std::vector<std::int64_t> ReorderBuffer::complete(std::int64_t frame) {
    if (frame < next_ || !held_.insert(frame).second)
        throw Error(ErrorCode::InvalidScenario, "frame " + std::to_string(frame) + " completed twice");
    std::vector<std::int64_t> released;
    while (!held_.empty() && *held_.begin() == next_) {
        released.push_back(next_);
        held_.erase(held_.begin());
        ++next_;
    }
    high_water_ = std::max(high_water_, held_.size());
    return released;
}

double availability(const ComponentSpec& component, const Scenario& scenario, const Platform& platform) {
    if (auto it = scenario.contention.find(component.id); it != scenario.contention.end()) return it->second;
    if (!is_cpu(component.kind) || scenario.host_penalty == 1.0) return 1.0;
    double factor = 1.0;
    for (const auto& id : scenario.engaged) {
        const auto& other = platform.component(id);
        if (other.host_cluster && *other.host_cluster == component.id) factor *= scenario.host_penalty;
    }
    return factor;
}

double effective_rate(const ComponentSpec& component, const NetworkProfile& profile, const Scenario& scenario,
                      const Platform& platform) {
    return profile.measured_rate(component.id) * availability(component, scenario, platform);
}

double service_time(const ComponentSpec& component, const NetworkProfile& profile, const Scenario& scenario,
                    const Platform& platform) {
    return 1.0 / effective_rate(component, profile, scenario, platform) + scenario.dispatch_overhead_s;
}

double rate_sum(const Platform& platform, const NetworkProfile& profile, const Scenario& scenario) {
    double sum = 0.0;
    for (const auto& id : scenario.engaged) sum += effective_rate(platform.component(id), profile, scenario, platform);
    return sum;
}

namespace {

struct Completion {
    double time;
    std::size_t component;
};

// Earliest completion first; simultaneous completions in component order.
struct Later {
    bool operator()(const Completion& a, const Completion& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.component > b.component;
    }
};

}  // namespace

SimResult simulate(const Platform& platform, const NetworkProfile& profile, const Scenario& scenario,
                   const SimOptions& options) {
    validate(scenario, platform, profile);

    std::vector<std::string> ids = scenario.engaged;
    std::sort(ids.begin(), ids.end());
    const std::size_t n = ids.size();

    std::vector<double> compute_time(n);
    SimResult result;
    result.frame_count = scenario.frame_count;
    for (std::size_t c = 0; c < n; ++c) {
        const auto& spec = platform.component(ids[c]);
        const double rate = effective_rate(spec, profile, scenario, platform);
        compute_time[c] = 1.0 / rate;
        result.effective_rate_ips[ids[c]] = 1.0 / (compute_time[c] + scenario.dispatch_overhead_s);
    }

    std::optional<std::mt19937_64> rng;
    double sigma = 0.0;
    if (scenario.jitter && scenario.jitter->cv > 0.0) {
        rng.emplace(scenario.jitter->seed);
        sigma = std::sqrt(std::log1p(scenario.jitter->cv * scenario.jitter->cv));
    }
    // Lognormal with mean equal to the nominal compute time.
    auto draw = [&](std::size_t c) {
        if (!rng) return compute_time[c];
        std::lognormal_distribution<double> dist(std::log(compute_time[c]) - 0.5 * sigma * sigma, sigma);
        return dist(*rng);
    };

    std::vector<std::int64_t> in_flight(n, -1);
    std::vector<double> claimed_at(n, 0.0);
    std::vector<double> busy(n, 0.0);
    std::vector<std::int64_t> frames(n, 0);
    std::priority_queue<Completion, std::vector<Completion>, Later> pending;
    std::int64_t next_frame = 0;

    auto claim = [&](std::size_t c, double now) {
        if (next_frame >= scenario.frame_count) return;
        const double duration = draw(c) + scenario.dispatch_overhead_s;
        in_flight[c] = next_frame++;
        claimed_at[c] = now;
        busy[c] += duration;
        ++frames[c];
        pending.push({now + duration, c});
    };

    for (std::size_t c = 0; c < n; ++c) claim(c, 0.0);

    ReorderBuffer reorder;
    if (options.record_events) {
        result.events.reserve(static_cast<std::size_t>(scenario.frame_count));
        result.release_order.reserve(static_cast<std::size_t>(scenario.frame_count));
    }
    while (!pending.empty()) {
        const Completion done = pending.top();
        pending.pop();
        const std::int64_t frame = in_flight[done.component];
        in_flight[done.component] = -1;
        auto released = reorder.complete(frame);
        if (options.record_events) {
            result.events.push_back({frame, ids[done.component], claimed_at[done.component], done.time});
            result.release_order.insert(result.release_order.end(), released.begin(), released.end());
        }
        result.makespan_s = done.time;
        claim(done.component, done.time);
    }

    result.throughput_ips = static_cast<double>(scenario.frame_count) / result.makespan_s;
    result.reorder_high_water = reorder.high_water();
    for (std::size_t c = 0; c < n; ++c) {
        result.frames_per_component[ids[c]] = frames[c];
        result.busy_time_s[ids[c]] = busy[c];
    }
    result.composition = composition(result);

    const auto energy = energy_and_efficiency(result.busy_time_s, scenario.frame_count, platform);
    result.energy_j = energy.energy_j;
    result.energy_efficiency_ipj = energy.images_per_joule;
    result.energy_per_component_j = energy.per_component_j;
    return result;
}

SimResult simulate(const Dataset& dataset, const Scenario& scenario, const SimOptions& options) {
    return simulate(dataset.platform(scenario.platform_id), dataset.network(scenario.network_id), scenario, options);
}

std::map<std::string, double> composition(const SimResult& result) {
    std::map<std::string, double> shares;
    for (const auto& [id, count] : result.frames_per_component)
        shares[id] = static_cast<double>(count) / static_cast<double>(result.frame_count);
    return shares;
}

EnergyAccount energy_and_efficiency(const std::map<std::string, double>& busy_time_s, std::int64_t frame_count,
                                    const Platform& platform) {
    EnergyAccount account;
    for (const auto& [id, seconds] : busy_time_s) {
        const auto* spec = platform.find(id);
        if (spec == nullptr || !(spec->active_power_w > 0.0))
            throw Error(ErrorCode::MissingPower, "no active power for '" + id + "' on '" + platform.id + "'");
        const double joules = spec->active_power_w * seconds;
        account.per_component_j[id] = joules;
        account.energy_j += joules;
    }
    account.images_per_joule = account.energy_j > 0.0 ? static_cast<double>(frame_count) / account.energy_j : 0.0;
    return account;
}

double gain_pct(double coexec_ips, double best_single_ips) {
    if (!(best_single_ips > 0.0)) throw Error(ErrorCode::NonPositiveValue, "best single throughput must be > 0");
    return 100.0 * (coexec_ips - best_single_ips) / best_single_ips;
}

double best_single_rate(const NetworkProfile& profile, const Scenario& scenario) {
    if (scenario.engaged.empty()) throw Error(ErrorCode::EmptyEngagement, "no components engaged");
    double best = 0.0;
    for (const auto& id : scenario.engaged) best = std::max(best, profile.measured_rate(id));
    return best;
}

double gain_vs_best_single(const Platform& platform, const NetworkProfile& profile, const Scenario& scenario) {
    const auto result = simulate(platform, profile, scenario);
    return gain_pct(result.throughput_ips, best_single_rate(profile, scenario));
}

}  // namespace socperf
