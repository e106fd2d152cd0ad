//
// Copyright (C) 2026 The socperf Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "socperf/coexec.hpp"
#include "socperf/error.hpp"
#include "socperf/profile_store.hpp"
#include "socperf/report.hpp"
#include "socperf/roofline.hpp"

namespace py = pybind11;
using namespace socperf;

namespace {

Scenario make_scenario(const std::string& platform, const std::string& network, std::vector<std::string> components,
                       std::int64_t frames, double overhead, std::map<std::string, double> contention,
                       double host_penalty, std::optional<std::uint64_t> seed, double cv) {
    Scenario s;
    s.platform_id = platform;
    s.network_id = network;
    s.engaged = std::move(components);
    s.frame_count = frames;
    s.dispatch_overhead_s = overhead;
    s.contention = std::move(contention);
    s.host_penalty = host_penalty;
    if (seed || cv > 0.0) s.jitter = Jitter{seed.value_or(0), cv};
    return s;
}

py::dict result_dict(const SimResult& r) {
    py::dict d;
    d["frame_count"] = r.frame_count;
    d["makespan_s"] = r.makespan_s;
    d["throughput_ips"] = r.throughput_ips;
    d["frames_per_component"] = r.frames_per_component;
    d["composition"] = r.composition;
    d["busy_time_s"] = r.busy_time_s;
    d["energy_j"] = r.energy_j;
    d["energy_efficiency_ipj"] = r.energy_efficiency_ipj;
    d["reorder_high_water"] = r.reorder_high_water;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Roofline and co-execution models of heterogeneous mobile SoCs.";

    auto error = py::register_exception<Error>(m, "SocperfError", PyExc_ValueError);
    (void)error;

    m.def("platforms", [] {
        std::vector<std::string> ids;
        for (const auto& p : builtin_dataset().platforms) ids.push_back(p.id);
        return ids;
    });
    m.def("networks", [] {
        std::vector<std::string> ids;
        for (const auto& n : builtin_dataset().networks) ids.push_back(n.id);
        return ids;
    });
    m.def("measured_rate", [](const std::string& network, const std::string& component) {
        return builtin_dataset().network(network).measured_rate(component);
    }, py::arg("network"), py::arg("component"));

    m.def("ridge_point", [](const std::string& platform, const std::string& component) {
        return ridge_point(RooflineModel::for_component(builtin_dataset().platform(platform).component(component)));
    }, py::arg("platform"), py::arg("component"));
    m.def("attainable", [](double bandwidth_gbs, double ceiling_gops, double oi) {
        return attainable(RooflineModel("model", bandwidth_gbs, ceiling_gops), oi);
    }, py::arg("bandwidth_gbs"), py::arg("ceiling_gops"), py::arg("oi"));
    m.def("network_oi", [](const std::string& network) {
        return network_theoretical_oi(builtin_dataset().network(network));
    }, py::arg("network"));
    m.def("roofline", [](const std::string& platform, const std::string& component,
                         const std::vector<std::string>& networks, const std::string& format, double oi_min,
                         double oi_max, int points) {
        const auto& d = builtin_dataset();
        const auto model = RooflineModel::for_component(d.platform(platform).component(component));
        std::vector<RooflinePoint> marks;
        for (const auto& n : networks) marks.push_back(network_point(model, d.network(n), OiKind::Theoretical));
        return emit(roofline_series(model, marks, log_space(oi_min, oi_max, points)), model, parse_format(format));
    }, py::arg("platform"), py::arg("component"), py::arg("networks") = std::vector<std::string>{},
       py::arg("format") = "csv", py::arg("oi_min") = 0.1, py::arg("oi_max") = 1000.0, py::arg("points") = 61);

    m.def("simulate", [](const std::string& platform, const std::string& network,
                         std::vector<std::string> components, std::int64_t frames, double overhead,
                         std::map<std::string, double> contention, double host_penalty,
                         std::optional<std::uint64_t> seed, double cv) {
        const auto s = make_scenario(platform, network, std::move(components), frames, overhead,
                                     std::move(contention), host_penalty, seed, cv);
        SimResult r;
        {
            py::gil_scoped_release release;
            r = simulate(builtin_dataset(), s);
        }
        return result_dict(r);
    }, py::arg("platform"), py::arg("network"), py::arg("components"), py::arg("frames") = 10000,
       py::arg("overhead") = 0.0, py::arg("contention") = std::map<std::string, double>{},
       py::arg("host_penalty") = 1.0, py::arg("seed") = py::none(), py::arg("cv") = 0.0);

    m.def("calibrate", [](const std::string& platform, const std::string& network,
                          std::vector<std::string> components, double target_throughput,
                          std::map<std::string, double> target_composition, std::vector<std::string> fit_contention,
                          bool fit_overhead, std::int64_t frames) {
        const auto& d = builtin_dataset();
        const auto s = make_scenario(platform, network, std::move(components), frames, 0.0, {}, 1.0, std::nullopt, 0.0);
        CalibrationOptions options;
        options.fit_overhead = fit_overhead;
        options.fit_contention = std::move(fit_contention);
        CalibrationResult r;
        {
            py::gil_scoped_release release;
            r = calibrate(d.platform(platform), d.network(network), s, {target_throughput, target_composition}, options);
        }
        py::dict out;
        out["dispatch_overhead_s"] = r.dispatch_overhead_s;
        out["contention"] = r.contention;
        out["throughput_rel_error"] = r.throughput_rel_error;
        out["composition_error_pp"] = r.composition_error_pp;
        out["result"] = result_dict(r.fitted);
        return out;
    }, py::arg("platform"), py::arg("network"), py::arg("components"), py::arg("target_throughput"),
       py::arg("target_composition") = std::map<std::string, double>{},
       py::arg("fit_contention") = std::vector<std::string>{}, py::arg("fit_overhead") = true,
       py::arg("frames") = 10000);

    m.def("table", [](int which, const std::string& format) {
        const auto& d = builtin_dataset();
        std::string out;
        {
            py::gil_scoped_release release;
            out = emit(which == 1 ? throughput_table(d) : coexec_table(d, which), parse_format(format));
        }
        return out;
    }, py::arg("which"), py::arg("format") = "csv");

    m.def("format_sig4", &format_sig4, py::arg("value"));
}
