//
// Copyright (C) 2026 The socperf Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Shared helpers for the unit and acceptance tests: synthetic instances and
// an independent brute-force reference for the frame scheduler.

#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "socperf/coexec.hpp"
#include "socperf/error.hpp"

namespace socperf::test {

template <class F>
std::optional<ErrorCode> try_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

template <class F>
ErrorCode code_of(F&& f) {
    auto code = try_code(std::forward<F>(f));
    if (!code) throw std::logic_error("expected an error");
    return *code;
}

struct Instance {
    Platform platform;
    NetworkProfile profile;
    Scenario scenario;
};

// Components c0, c1, ... with the given rates on a one-layer network.
inline Instance synthetic(const std::vector<double>& rates, std::int64_t frames, double overhead) {
    Instance inst;
    inst.platform.id = "synthetic";
    inst.platform.bus_peak_bandwidth_gbs = 100;
    inst.profile.id = "net";
    inst.profile.layers = {{"l", LayerKind::Conv, 1.0, 1e6, std::nullopt}};
    inst.scenario.platform_id = "synthetic";
    inst.scenario.network_id = "net";
    inst.scenario.frame_count = frames;
    inst.scenario.dispatch_overhead_s = overhead;
    for (std::size_t c = 0; c < rates.size(); ++c) {
        const std::string id = "c" + std::to_string(c);
        inst.platform.components.push_back({id, ComponentKind::Gpu, 10, 1, 1.0 + static_cast<double>(c)});
        inst.profile.throughput[id] = rates[c];
        inst.scenario.engaged.push_back(id);
    }
    return inst;
}

struct Schedule {
    std::vector<std::size_t> owner;  // frame -> component index
    std::vector<double> claim;       // frame -> claim time
    double makespan = 0.0;
};

// Every assignment of n frames to k components, kept when it is the schedule
// an idle-claims-lowest-frame policy would produce: claims happen in frame
// order (simultaneous claims in component order) and no component sits idle
// while a later frame is still unclaimed.
inline std::vector<Schedule> enumerate_greedy(const std::vector<double>& service, int n) {
    const std::size_t k = service.size();
    std::vector<Schedule> valid;
    std::vector<std::size_t> owner(static_cast<std::size_t>(n), 0);
    for (;;) {
        Schedule s;
        s.owner = owner;
        s.claim.resize(owner.size());
        std::vector<double> free_at(k, 0.0);
        for (std::size_t j = 0; j < owner.size(); ++j) {
            s.claim[j] = free_at[owner[j]];
            free_at[owner[j]] = s.claim[j] + service[owner[j]];
            s.makespan = std::max(s.makespan, free_at[owner[j]]);
        }
        bool ok = true;
        for (std::size_t j = 1; j < owner.size() && ok; ++j)
            ok = std::tie(s.claim[j - 1], owner[j - 1]) < std::tie(s.claim[j], owner[j]);
        for (std::size_t c = 0; c < k && ok; ++c)
            for (std::size_t j = 0; j < owner.size() && ok; ++j)
                if (owner[j] != c) ok = !(std::tie(free_at[c], c) < std::tie(s.claim[j], owner[j]));
        if (ok) valid.push_back(std::move(s));

        std::size_t pos = 0;
        while (pos < owner.size() && ++owner[pos] == k) owner[pos++] = 0;
        if (pos == owner.size()) break;
    }
    return valid;
}

// Empty when the event log shows in-order release, back-to-back service on
// every component, and no component idle while frames were still unclaimed.
inline std::string check_event_log(const SimResult& r, const Scenario& scenario) {
    std::ostringstream why;
    const auto n = static_cast<std::size_t>(scenario.frame_count);
    if (r.events.size() != n) why << "event count " << r.events.size() << " != " << n << "; ";
    for (std::size_t i = 0; i < r.release_order.size(); ++i)
        if (r.release_order[i] != static_cast<std::int64_t>(i)) {
            why << "release " << i << " is frame " << r.release_order[i] << "; ";
            break;
        }
    if (r.release_order.size() != n) why << "released " << r.release_order.size() << " frames; ";

    std::vector<double> claim(n, -1.0);
    std::map<std::string, std::vector<FrameEvent>> by_component;
    for (const auto& e : r.events) {
        if (e.frame < 0 || static_cast<std::size_t>(e.frame) >= n || claim[static_cast<std::size_t>(e.frame)] >= 0) {
            why << "frame " << e.frame << " bad or repeated; ";
            continue;
        }
        claim[static_cast<std::size_t>(e.frame)] = e.claim_time;
        if (!(e.completion_time > e.claim_time)) why << "frame " << e.frame << " has no service time; ";
        by_component[e.component].push_back(e);
    }
    for (std::size_t j = 1; j < n; ++j)
        if (claim[j] < claim[j - 1]) {
            why << "frame " << j << " claimed before frame " << j - 1 << "; ";
            break;
        }
    const double last_claim = n ? *std::max_element(claim.begin(), claim.end()) : 0.0;
    for (const auto& id : scenario.engaged) {
        auto it = by_component.find(id);
        if (it == by_component.end()) {
            if (n >= scenario.engaged.size()) why << id << " never worked; ";
            continue;
        }
        auto& evs = it->second;
        std::sort(evs.begin(), evs.end(), [](const auto& a, const auto& b) { return a.claim_time < b.claim_time; });
        if (evs.front().claim_time != 0.0) why << id << " idle at start; ";
        for (std::size_t i = 1; i < evs.size(); ++i)
            if (evs[i].claim_time != evs[i - 1].completion_time) {
                why << id << " idle between frames " << evs[i - 1].frame << " and " << evs[i].frame << "; ";
                break;
            }
        if (evs.back().completion_time < last_claim) why << id << " went idle with frames unclaimed; ";
        if (static_cast<std::int64_t>(evs.size()) != r.frames_per_component.at(id)) why << id << " frame count; ";
    }
    return why.str();
}

}  // namespace socperf::test
