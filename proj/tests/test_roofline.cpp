//
// Copyright (C) 2026 The socperf Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <cmath>
#include <random>

#include "socperf/error.hpp"
#include "socperf/roofline.hpp"

using namespace socperf;

namespace {

LayerProfile layer(double gops, double bytes, std::optional<double> dram = std::nullopt) {
    return {"l", LayerKind::Conv, gops, bytes, dram};
}

const ComponentSpec& spec(const char* platform, const char* id) {
    return builtin_dataset().platform(platform).component(id);
}

}  // namespace

TEST_CASE("operational intensity") {
    CHECK(theoretical_oi(layer(2.0, 1e9)) == 2.0);
    CHECK(theoretical_oi(layer(1.0, 1e9)) == 1.0);
    CHECK(empirical_oi(layer(2.0, 1e9, 1e8)) == doctest::Approx(20.0));
    CHECK(empirical_oi(layer(3.0, 7e8, 7e8)) == theoretical_oi(layer(3.0, 7e8)));
    CHECK_THROWS_AS(empirical_oi(layer(1.0, 1.0)), Error);

    // fc6: 9216 x 4096 MACs, 4-byte weights/bias/activations.
    const double macs = 9216.0 * 4096.0;
    const double bytes = 4.0 * (macs + 4096 + 9216 + 4096);
    const auto& fc6 = builtin_dataset().network("alexnet").layers.at(5);
    CHECK(fc6.name == "fc6");
    CHECK(theoretical_oi(fc6) == doctest::Approx(2.0 * macs / bytes));
    CHECK(theoretical_oi(fc6) == doctest::Approx(0.497).epsilon(0.01));
}

TEST_CASE("attainable performance and ridge") {
    const auto t628 = RooflineModel::for_component(spec("exynos5422", "t628"));
    const auto a15 = RooflineModel::for_component(spec("exynos5422", "a15"));
    const auto a7 = RooflineModel::for_component(spec("exynos5422", "a7"));
    CHECK(attainable(t628, 2.0) == doctest::Approx(12.3));
    CHECK(attainable(t628, 1e9) == t628.ceiling_gops);
    CHECK(attainable(a7, 10.0) == doctest::Approx(4.9));
    CHECK(ridge_point(t628) == doctest::Approx(9.37).epsilon(0.001));
    CHECK(ridge_point(a15) == doctest::Approx(9.30).epsilon(0.001));
    CHECK(ridge_point(a7) == doctest::Approx(45.7).epsilon(0.001));
    CHECK(ridge_point(RooflineModel("x", 3.0, 3.0)) == 1.0);
    CHECK_THROWS_AS(RooflineModel("x", 0.0, 1.0), Error);
    CHECK_THROWS_AS(RooflineModel("x", 1.0, -1.0), Error);
}

TEST_CASE("classification") {
    const auto a15 = RooflineModel::for_component(spec("exynos5422", "a15"));
    CHECK(classify(a15, ridge_point(a15)) == Bound::Compute);
    CHECK(classify(a15, std::nextafter(ridge_point(a15), 0.0)) == Bound::Memory);

    const auto& alexnet = builtin_dataset().network("alexnet");
    for (const auto& l : alexnet.layers)
        if (l.kind == LayerKind::Fc) CHECK(classify(a15, theoretical_oi(l)) == Bound::Memory);
}

TEST_CASE("attainable is min(ceiling, oi x bandwidth) for random models") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> log_u(-3.0, 4.0);
    for (int i = 0; i < 2000; ++i) {
        const double bw = std::pow(10.0, log_u(rng) / 2);
        const double ceiling = std::pow(10.0, log_u(rng) / 2 + 1);
        const double oi = std::pow(10.0, log_u(rng));
        const RooflineModel m("r", bw, ceiling);
        const double want = oi * bw < ceiling ? oi * bw : ceiling;
        CHECK(attainable(m, oi) == want);
        CHECK(attainable(m, oi) <= ceiling);
        CHECK((classify(m, oi) == Bound::Memory) == (oi < ceiling / bw));
    }
}

TEST_CASE("network points") {
    const auto& d = builtin_dataset();
    const auto model = RooflineModel::for_component(spec("exynos5422", "t628"));
    const auto& alexnet = d.network("alexnet");
    const auto p = network_point(model, alexnet, OiKind::Theoretical);
    CHECK(p.oi == doctest::Approx(alexnet.total_gops() * 1e9 / alexnet.total_mem_access_bytes()));
    CHECK(p.performance_gops == attainable(model, p.oi));
    CHECK_THROWS_AS(network_point(model, alexnet, OiKind::Empirical), Error);

    for (const auto& t : d.traces) {
        const auto traced = attach_trace(alexnet, t);
        const auto m = RooflineModel::for_component(spec("exynos5422", t.component_id.c_str()));
        const auto e = network_point(m, traced, OiKind::Empirical);
        CHECK(e.oi >= network_theoretical_oi(traced));
        CHECK(e.performance_gops == doctest::Approx(alexnet.total_gops() * alexnet.measured_rate(t.component_id)));
        CHECK(e.performance_gops <= attainable(m, e.oi));
        for (const auto& l : traced.layers) CHECK(empirical_oi(l) >= theoretical_oi(l));
    }
}

TEST_CASE("achieved network performance stays under every roofline") {
    const auto& d = builtin_dataset();
    for (const auto& platform : d.platforms)
        for (const auto& c : platform.components) {
            const auto m = RooflineModel::for_component(c);
            for (const auto& n : d.networks) {
                if (!n.supports(c.id)) continue;
                CAPTURE(c.id);
                CAPTURE(n.id);
                CHECK(n.total_gops() * n.measured_rate(c.id) <= attainable(m, network_theoretical_oi(n)) * 1.0001);
            }
        }
}

TEST_CASE("log_space") {
    const auto g = log_space(0.1, 100.0, 4);
    REQUIRE(g.size() == 4);
    CHECK(g[0] == 0.1);
    CHECK(g[1] == doctest::Approx(1.0));
    CHECK(g[2] == doctest::Approx(10.0));
    CHECK(g[3] == 100.0);
    CHECK_THROWS_AS(log_space(1.0, 1.0, 5), Error);
    CHECK_THROWS_AS(log_space(1.0, 10.0, 1), Error);
    CHECK_THROWS_AS(log_space(0.0, 10.0, 5), Error);
}

TEST_CASE("roofline series") {
    const auto model = RooflineModel::for_component(spec("exynos5422", "t628"));
    const auto grid = log_space(0.1, 100.0, 31);

    SUBCASE("roofline only, knee at the ridge") {
        const auto rows = roofline_series(model, {}, grid);
        CHECK(rows.size() == grid.size() + 1);
        const auto knee = std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r.oi == ridge_point(model); });
        REQUIRE(knee != rows.end());
        CHECK(knee->oi == doctest::Approx(9.37).epsilon(0.001));
        for (std::size_t i = 1; i < rows.size(); ++i) {
            CHECK(rows[i].oi > rows[i - 1].oi);
            CHECK(rows[i].roofline_gops >= rows[i - 1].roofline_gops);
        }
        // Two straight segments: slope 1 in log-log below the knee, flat above.
        for (const auto& r : rows) {
            if (r.oi < knee->oi) CHECK(r.roofline_gops == doctest::Approx(r.oi * model.roof_bandwidth_gbs));
            else CHECK(r.roofline_gops == model.ceiling_gops);
        }
    }

    SUBCASE("whole-network point appears once") {
        const auto p = network_point(model, builtin_dataset().network("alexnet"), OiKind::Theoretical);
        const auto rows = roofline_series(model, {p}, grid);
        CHECK(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.point_label.has_value(); }) == 1);
        for (const auto& r : rows)
            if (r.point_label) CHECK(r.point_kind == OiKind::Theoretical);
    }

    SUBCASE("bad ranges") {
        CHECK_THROWS_AS(roofline_series(model, {}, {}), Error);
        CHECK_THROWS_AS(roofline_series(model, {}, {1.0, 1.0}), Error);
        CHECK_THROWS_AS(roofline_series(model, {}, {-1.0, 1.0}), Error);
    }
}

TEST_CASE("quantization") {
    const auto& alexnet = builtin_dataset().network("alexnet");
    CHECK(quantize_profile(alexnet, 32, 32) == alexnet);

    const auto q8 = quantize_profile(alexnet, 32, 8);
    CHECK(q8.bits == 8);
    CHECK(q8.quantized);
    for (std::size_t i = 0; i < alexnet.layers.size(); ++i) {
        CHECK(q8.layers[i].mem_access_bytes == alexnet.layers[i].mem_access_bytes * 0.25);
        CHECK(theoretical_oi(q8.layers[i]) == doctest::Approx(theoretical_oi(alexnet.layers[i])).epsilon(1e-12));
    }

    NetworkProfile one;
    one.id = "one";
    one.layers = {layer(2.0, 1e9)};
    const auto q16 = quantize_profile(one, 32, 16);
    CHECK(q16.layers[0].mem_access_bytes == 0.5e9);
    CHECK(theoretical_oi(q16.layers[0]) == 2.0);

    CHECK_THROWS_AS(quantize_profile(alexnet, 32, 4), Error);
    CHECK_THROWS_AS(quantize_profile(alexnet, 8, 16), Error);
    CHECK_THROWS_AS(quantize_profile(alexnet, 16, 8), Error);
}
