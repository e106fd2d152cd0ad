"""Roofline and co-execution models of heterogeneous mobile SoCs."""

from ._core import (
    SocperfError,
    attainable,
    calibrate,
    format_sig4,
    measured_rate,
    network_oi,
    networks,
    platforms,
    ridge_point,
    roofline,
    simulate,
    table,
)

__all__ = [
    "SocperfError",
    "attainable",
    "calibrate",
    "format_sig4",
    "measured_rate",
    "network_oi",
    "networks",
    "platforms",
    "ridge_point",
    "roofline",
    "simulate",
    "table",
]
