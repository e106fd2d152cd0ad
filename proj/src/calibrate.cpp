//
// Copyright (C) 2026 The socperf Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <functional>

#include "socperf/coexec.hpp"
#include "socperf/error.hpp"

namespace socperf {

namespace {

constexpr double kMinFactor = 1e-3;

struct Parameter {
    std::optional<std::string> factor_of;  // empty = dispatch overhead
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

using Loss = std::function<double(const std::vector<Parameter>&)>;

// Compass search: probe +/- step along each coordinate, take the first
// improvement, halve every step when a full sweep fails to improve.
double pattern_search(std::vector<Parameter>& params, std::vector<double> steps, const std::vector<double>& min_steps,
                      const Loss& loss, int max_iterations, int& evaluations) {
    double best = loss(params);
    ++evaluations;
    for (int iter = 0; iter < max_iterations; ++iter) {
        bool improved = false;
        for (std::size_t i = 0; i < params.size(); ++i) {
            for (double dir : {1.0, -1.0}) {
                auto trial = params;
                trial[i].value = std::clamp(params[i].value + dir * steps[i], params[i].lo, params[i].hi);
                if (trial[i].value == params[i].value) continue;
                const double value = loss(trial);
                ++evaluations;
                if (value < best) {
                    best = value;
                    params = std::move(trial);
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) {
            bool converged = true;
            for (std::size_t i = 0; i < steps.size(); ++i) {
                steps[i] *= 0.5;
                if (steps[i] >= min_steps[i]) converged = false;
            }
            if (converged) break;
        }
    }
    return best;
}

Scenario with_params(const Scenario& base, const std::vector<Parameter>& params) {
    Scenario s = base;
    for (const auto& p : params) {
        if (p.factor_of) s.contention[*p.factor_of] = p.value;
        else s.dispatch_overhead_s = p.value;
    }
    return s;
}

struct Residuals {
    double throughput_rel = 0.0;
    std::map<std::string, double> share_error;
};

double loss_of(const Residuals& r, const CalibrationOptions& options) {
    const double p = static_cast<double>(options.loss_exponent);
    double sum = std::pow(std::abs(r.throughput_rel) / options.throughput_tolerance, p);
    for (const auto& [id, e] : r.share_error) sum += std::pow(std::abs(e) / options.composition_tolerance, p);
    return sum;
}

Residuals residuals(double throughput, const std::map<std::string, double>& shares, const CalibrationTarget& target) {
    Residuals r;
    r.throughput_rel = (throughput - target.throughput_ips) / target.throughput_ips;
    for (const auto& [id, want] : target.composition) {
        auto it = shares.find(id);
        r.share_error[id] = (it == shares.end() ? 0.0 : it->second) - want;
    }
    return r;
}

// Closed-form steady state: every component runs back to back, so rates add.
Residuals steady_state(const Platform& platform, const NetworkProfile& profile, const Scenario& scenario,
                       const CalibrationTarget& target) {
    std::map<std::string, double> rates;
    double total = 0.0;
    for (const auto& id : scenario.engaged) {
        const double rate = 1.0 / service_time(platform.component(id), profile, scenario, platform);
        rates[id] = rate;
        total += rate;
    }
    for (auto& [id, rate] : rates) rate /= total;
    return residuals(total, rates, target);
}

// Overhead d at which the steady-state rate sum equals target (0 if even d=0
// falls short).
double solve_overhead(const Platform& platform, const NetworkProfile& profile, const Scenario& scenario,
                      double target_ips) {
    auto sum_at = [&](double d) {
        Scenario s = scenario;
        s.dispatch_overhead_s = d;
        double total = 0.0;
        for (const auto& id : s.engaged) total += 1.0 / service_time(platform.component(id), profile, s, platform);
        return total;
    };
    if (sum_at(0.0) <= target_ips) return 0.0;
    double lo = 0.0;
    double hi = 1.0;
    while (sum_at(hi) > target_ips) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (sum_at(mid) > target_ips ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

CalibrationResult calibrate(const Platform& platform, const NetworkProfile& profile, const Scenario& base,
                            const CalibrationTarget& target, const CalibrationOptions& options) {
    validate(base, platform, profile);
    if (!(target.throughput_ips > 0.0))
        throw Error(ErrorCode::NonPositiveValue, "target throughput must be > 0");
    if (!(options.throughput_tolerance > 0.0) || !(options.composition_tolerance > 0.0) || options.loss_exponent < 1)
        throw Error(ErrorCode::InvalidScenario, "calibration tolerances and loss exponent must be positive");
    for (const auto& [id, share] : target.composition) {
        if (std::find(base.engaged.begin(), base.engaged.end(), id) == base.engaged.end())
            throw Error(ErrorCode::InvalidScenario, "target composition names unengaged component '" + id + "'");
        if (!(share >= 0.0 && share <= 1.0))
            throw Error(ErrorCode::InvalidScenario, "target share of '" + id + "' must lie in [0, 1]");
    }
    for (const auto& id : options.fit_contention)
        if (std::find(base.engaged.begin(), base.engaged.end(), id) == base.engaged.end())
            throw Error(ErrorCode::InvalidScenario, "cannot fit contention of unengaged component '" + id + "'");

    // Upper bound: zero overhead, fitted factors at 1.
    Scenario bound = base;
    bound.dispatch_overhead_s = 0.0;
    for (const auto& id : options.fit_contention) bound.contention[id] = 1.0;
    const double ceiling = rate_sum(platform, profile, bound);
    if (target.throughput_ips > ceiling * (1.0 + 1e-9))
        throw Error(ErrorCode::InfeasibleTarget,
                    "target " + std::to_string(target.throughput_ips) + " img/s exceeds the zero-overhead bound of " +
                        std::to_string(ceiling) + " img/s");

    // Initial guess from the closed-form model.
    std::vector<Parameter> params;
    for (const auto& id : options.fit_contention) {
        const auto& spec = platform.component(id);
        double guess = availability(spec, base, platform);
        if (auto it = target.composition.find(id); it != target.composition.end())
            guess = it->second * target.throughput_ips / profile.measured_rate(id);
        params.push_back({id, std::clamp(guess, kMinFactor, 1.0), kMinFactor, 1.0});
    }
    if (options.fit_overhead) {
        const double d = solve_overhead(platform, profile, with_params(base, params), target.throughput_ips);
        double slowest = 0.0;
        for (const auto& id : base.engaged)
            slowest = std::max(slowest, service_time(platform.component(id), profile, bound, platform));
        params.push_back({std::nullopt, d, 0.0, std::max(10.0 * slowest, 2.0 * d)});
    }

    CalibrationResult result;
    if (!params.empty()) {
        std::vector<double> steps;
        std::vector<double> min_steps;
        for (const auto& p : params) {
            if (p.factor_of) {
                steps.push_back(0.05);
                min_steps.push_back(1e-7);
            } else {
                steps.push_back(std::max(0.25 * p.value, 1e-3 / target.throughput_ips));
                min_steps.push_back(1e-10);
            }
        }

        const Loss closed_form = [&](const std::vector<Parameter>& ps) {
            return loss_of(steady_state(platform, profile, with_params(base, ps), target), options);
        };
        pattern_search(params, steps, min_steps, closed_form, options.max_iterations, result.evaluations);

        // Refine under the discrete simulation, which adds start-up and tail effects.
        for (std::size_t i = 0; i < params.size(); ++i)
            steps[i] = params[i].factor_of ? 0.002 : std::max(0.02 * params[i].value, 1e-5 / target.throughput_ips);
        const Loss simulated = [&](const std::vector<Parameter>& ps) {
            const auto run = simulate(platform, profile, with_params(base, ps));
            return loss_of(residuals(run.throughput_ips, run.composition, target), options);
        };
        pattern_search(params, steps, min_steps, simulated, options.max_iterations, result.evaluations);
    }

    result.scenario = with_params(base, params);
    result.dispatch_overhead_s = result.scenario.dispatch_overhead_s;
    for (const auto& id : options.fit_contention) result.contention[id] = result.scenario.contention.at(id);
    result.fitted = simulate(platform, profile, result.scenario);
    const auto r = residuals(result.fitted.throughput_ips, result.fitted.composition, target);
    result.throughput_rel_error = r.throughput_rel;
    for (const auto& [id, e] : r.share_error) result.composition_error_pp[id] = 100.0 * e;
    result.loss = loss_of(r, options);
    return result;
}

}  // namespace socperf
