//
// Copyright (C) 2026 The socperf Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Discrete-event simulation of multi-component co-execution over a single
// frame stream. Idle components claim the lowest-numbered unclaimed frame
// from a shared queue (work stealing with one producer), completions pass
// through a reorder buffer, and the run is accounted for throughput, frame
// composition and active energy.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "socperf/profile_store.hpp"

namespace socperf {

// Availability multiplier a CPU cluster takes for each engaged accelerator it
// hosts, when a scenario opts into the implicit host model.
inline constexpr double kDefaultHostPenalty = 0.5;

struct Jitter {
    std::uint64_t seed = 0;
    double cv = 0.0;  // coefficient of variation of the lognormal service time

    bool operator==(const Jitter&) const = default;
};

struct Scenario {
    std::string platform_id;
    std::string network_id;
    std::vector<std::string> engaged;
    std::int64_t frame_count = 10000;
    double dispatch_overhead_s = 0.0;
    // Explicit availability factors in (0, 1]; override the host model.
    std::map<std::string, double> contention;
    // 1.0 disables the implicit host model; kDefaultHostPenalty enables it.
    double host_penalty = 1.0;
    std::optional<Jitter> jitter;

    bool operator==(const Scenario&) const = default;
};

// Throws EmptyEngagement, UnsupportedPair, UnknownComponent or InvalidScenario.
void validate(const Scenario& scenario, const Platform& platform, const NetworkProfile& profile);

// Holds out-of-order completions and releases frames 0, 1, 2, ... in order.
class ReorderBuffer {
public:
    // Records a completed frame and returns every frame it unblocks, in
    // release order. Throws InvalidScenario on a repeated frame.
    std::vector<std::int64_t> complete(std::int64_t frame);

    std::int64_t next_expected() const { return next_; }
    std::size_t occupancy() const { return held_.size(); }
    std::size_t high_water() const { return high_water_; }

private:
    std::int64_t next_ = 0;
    std::set<std::int64_t> held_;
    std::size_t high_water_ = 0;
};

struct FrameEvent {
    std::int64_t frame = 0;
    std::string component;
    double claim_time = 0.0;
    double completion_time = 0.0;

    bool operator==(const FrameEvent&) const = default;
};

struct SimResult {
    std::int64_t frame_count = 0;
    double makespan_s = 0.0;
    double throughput_ips = 0.0;
    std::map<std::string, std::int64_t> frames_per_component;
    std::map<std::string, double> composition;
    std::map<std::string, double> busy_time_s;
    std::map<std::string, double> effective_rate_ips;
    std::map<std::string, double> energy_per_component_j;
    double energy_j = 0.0;
    double energy_efficiency_ipj = 0.0;
    std::size_t reorder_high_water = 0;
    // Only filled when SimOptions::record_events is set.
    std::vector<FrameEvent> events;
    std::vector<std::int64_t> release_order;

    bool operator==(const SimResult&) const = default;
};

struct SimOptions {
    bool record_events = false;
};

// Availability factor in (0, 1] applied to a component's measured rate.
double availability(const ComponentSpec& component, const Scenario& scenario, const Platform& platform);

// Measured images/s scaled by availability. Throws UnsupportedPair.
double effective_rate(const ComponentSpec& component, const NetworkProfile& profile, const Scenario& scenario,
                      const Platform& platform);

// Seconds one frame occupies the component: 1/rate + dispatch overhead.
double service_time(const ComponentSpec& component, const NetworkProfile& profile, const Scenario& scenario,
                    const Platform& platform);

SimResult simulate(const Platform& platform, const NetworkProfile& profile, const Scenario& scenario,
                   const SimOptions& options = {});
SimResult simulate(const Dataset& dataset, const Scenario& scenario, const SimOptions& options = {});

std::map<std::string, double> composition(const SimResult& result);

struct EnergyAccount {
    double energy_j = 0.0;
    double images_per_joule = 0.0;
    std::map<std::string, double> per_component_j;
};

// Active energy only: sum of power x busy time. Throws MissingPower when a
// busy component is absent from the platform.
EnergyAccount energy_and_efficiency(const std::map<std::string, double>& busy_time_s, std::int64_t frame_count,
                                    const Platform& platform);

// 100 x (coexec - best) / best.
double gain_pct(double coexec_ips, double best_single_ips);

// Highest measured rate among the engaged components.
double best_single_rate(const NetworkProfile& profile, const Scenario& scenario);

// Simulates the scenario and compares it with its best engaged component.
double gain_vs_best_single(const Platform& platform, const NetworkProfile& profile, const Scenario& scenario);

// Sum of engaged effective rates; the steady-state throughput at zero overhead.
double rate_sum(const Platform& platform, const NetworkProfile& profile, const Scenario& scenario);

// ---------------------------------------------------------------------------
// Calibration

struct CalibrationTarget {
    double throughput_ips = 0.0;
    // Fractions in [0, 1]; may be empty.
    std::map<std::string, double> composition;
};

struct CalibrationOptions {
    bool fit_overhead = true;
    // Components whose availability factor is searched.
    std::vector<std::string> fit_contention;
    // Residuals are normalized by these before entering the loss.
    double throughput_tolerance = 0.02;   // relative
    double composition_tolerance = 0.03;  // absolute share
    // Exponent of the loss sum |r|^p. Larger values approach minimax.
    int loss_exponent = 8;
    int max_iterations = 4000;
};

struct CalibrationResult {
    Scenario scenario;  // the base scenario with fitted parameters applied
    double dispatch_overhead_s = 0.0;
    std::map<std::string, double> contention;
    double throughput_rel_error = 0.0;
    std::map<std::string, double> composition_error_pp;
    double loss = 0.0;
    int evaluations = 0;
    SimResult fitted;
};

// Fits dispatch overhead and/or availability factors so the simulated run
// reproduces an observed throughput (and composition). Coordinate pattern
// search, first on the closed-form steady-state model, then refined under
// simulate(). Throws InfeasibleTarget when the target exceeds the
// zero-overhead rate sum of the engaged components.
CalibrationResult calibrate(const Platform& platform, const NetworkProfile& profile, const Scenario& base,
                            const CalibrationTarget& target, const CalibrationOptions& options = {});

}  // namespace socperf
