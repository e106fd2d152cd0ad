import pytest

import socperf


def test_dataset():
    assert socperf.platforms() == ["exynos5422", "kirin970"]
    assert "squeezenet" in socperf.networks()
    assert socperf.measured_rate("squeezenet", "npu") == 49.3


def test_roofline():
    assert socperf.ridge_point("exynos5422", "t628") == pytest.approx(9.366, abs=1e-3)
    assert socperf.attainable(6.15, 57.6, 2.0) == pytest.approx(12.3)
    csv = socperf.roofline("exynos5422", "t628", ["alexnet"])
    assert csv.startswith("oi_flops_per_byte,roofline_gops,")
    assert ",alexnet," in csv


def test_simulate():
    r = socperf.simulate("exynos5422", "alexnet", ["a7", "a15", "t628"])
    assert r["throughput_ips"] == pytest.approx(12.0, rel=1e-3)
    assert r["composition"]["t628"] == pytest.approx(0.65, abs=0.01)
    assert socperf.simulate("exynos5422", "alexnet", ["a7", "a15", "t628"]) == r


def test_calibrate():
    fit = socperf.calibrate("exynos5422", "alexnet", ["a7", "a15", "t628"], 10.3)
    assert fit["dispatch_overhead_s"] > 0
    assert abs(fit["throughput_rel_error"]) < 0.02


def test_errors():
    with pytest.raises(socperf.SocperfError, match="UnsupportedPair"):
        socperf.simulate("kirin970", "mobilenet", ["npu"])
    with pytest.raises(socperf.SocperfError, match="InfeasibleTarget"):
        socperf.calibrate("exynos5422", "alexnet", ["a7", "a15", "t628"], 20.0)
    with pytest.raises(socperf.SocperfError, match="UnsupportedFormat"):
        socperf.table(1, "svg")


def test_table():
    assert "Not Supported" in socperf.table(1)
    assert socperf.format_sig4(98765.0) == "98770"
