"""Tiny dependency-free SVG line plots.

Just axes, ticks, polylines and a legend; anyone needing styled figures
should plot from the CSV output instead.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Sequence

__all__ = ["line_plot_svg"]

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]

_W, _H = 720, 480
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 20, 40, 50


def _ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    if hi == lo:
        return [lo]
    span = hi - lo
    return [lo + span * i / (count - 1) for i in range(count)]


def line_plot_svg(
    series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
) -> str:
    """Render ``[(label, xs, ys), ...]`` to an SVG document string."""
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys]
    if not xs_all:
        raise ValueError("nothing to plot")
    x_lo, x_hi = min(xs_all), max(xs_all)
    y_lo, y_hi = min(ys_all), max(ys_all)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    # a little headroom so curves do not sit on the frame
    y_pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - y_pad, y_hi + y_pad

    def px(x: float) -> float:
        return _MARGIN_L + (x - x_lo) / (x_hi - x_lo) * (_W - _MARGIN_L - _MARGIN_R)

    def py(y: float) -> float:
        return _H - _MARGIN_B - (y - y_lo) / (y_hi - y_lo) * (_H - _MARGIN_T - _MARGIN_B)

    root = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(_W),
        height=str(_H),
        viewBox=f"0 0 {_W} {_H}",
    )
    ET.SubElement(root, "rect", x="0", y="0", width=str(_W), height=str(_H), fill="white")

    axis_style = {"stroke": "black", "stroke-width": "1"}
    ET.SubElement(root, "line", x1=str(_MARGIN_L), y1=str(_H - _MARGIN_B),
                  x2=str(_W - _MARGIN_R), y2=str(_H - _MARGIN_B), **axis_style)
    ET.SubElement(root, "line", x1=str(_MARGIN_L), y1=str(_MARGIN_T),
                  x2=str(_MARGIN_L), y2=str(_H - _MARGIN_B), **axis_style)

    def text(x, y, s, anchor="middle", size=12):
        el = ET.SubElement(root, "text", x=f"{x:.1f}", y=f"{y:.1f}",
                           fill="black", **{"text-anchor": anchor, "font-size": str(size),
                                            "font-family": "sans-serif"})
        el.text = s
        return el

    for tx in _ticks(x_lo, x_hi):
        ET.SubElement(root, "line", x1=f"{px(tx):.1f}", y1=str(_H - _MARGIN_B),
                      x2=f"{px(tx):.1f}", y2=str(_H - _MARGIN_B + 5), **axis_style)
        text(px(tx), _H - _MARGIN_B + 18, f"{tx:.4g}")
    for ty in _ticks(y_lo, y_hi):
        ET.SubElement(root, "line", x1=str(_MARGIN_L - 5), y1=f"{py(ty):.1f}",
                      x2=str(_MARGIN_L), y2=f"{py(ty):.1f}", **axis_style)
        text(_MARGIN_L - 8, py(ty) + 4, f"{ty:.4g}", anchor="end")

    if title:
        text(_W / 2, _MARGIN_T - 15, title, size=15)
    if xlabel:
        text((_MARGIN_L + _W - _MARGIN_R) / 2, _H - 12, xlabel)
    if ylabel:
        el = text(18, (_MARGIN_T + _H - _MARGIN_B) / 2, ylabel)
        el.set("transform", f"rotate(-90 18 {(_MARGIN_T + _H - _MARGIN_B) / 2:.1f})")

    for i, (label, xs, ys) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        ET.SubElement(root, "polyline", points=pts, fill="none",
                      stroke=color, **{"stroke-width": "1.5"})
        ly = _MARGIN_T + 8 + 16 * i
        ET.SubElement(root, "line", x1=str(_W - _MARGIN_R - 150), y1=str(ly),
                      x2=str(_W - _MARGIN_R - 125), y2=str(ly),
                      stroke=color, **{"stroke-width": "1.5"})
        text(_W - _MARGIN_R - 120, ly + 4, label, anchor="start", size=11)

    return ET.tostring(root, encoding="unicode")
