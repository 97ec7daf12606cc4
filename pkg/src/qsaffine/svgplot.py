"""Minimal deterministic SVG emitters for curves and construction bands.

Self-contained static markup, no scripting, fixed-precision coordinates:
identical inputs produce byte-identical documents.
"""

from __future__ import annotations

WIDTH = 900
HEIGHT = 560
MARGIN = 50


def _fc(v: float) -> str:
    """Fixed-precision coordinate."""
    return f"{v:.3f}"


def _header(width: int, height: int) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]


def curve_svg(
    samples: list[tuple[float, float, float]],
    y_ticks: tuple[float, ...],
    label: str,
    width: int = WIDTH,
    height: int = HEIGHT,
) -> str:
    """Polyline over ``(x, f, err)`` samples with horizontal guides at ``y_ticks``."""
    ys = [f for _, f, _ in samples]
    y_lo = min(min(ys), min(y_ticks))
    y_hi = max(max(ys), max(y_ticks))
    pad = 0.05 * (y_hi - y_lo or 1.0)
    y_lo -= pad
    y_hi += pad
    iw = width - 2 * MARGIN
    ih = height - 2 * MARGIN

    def px(x: float) -> float:
        return MARGIN + x * iw

    def py(y: float) -> float:
        return MARGIN + (y_hi - y) / (y_hi - y_lo) * ih

    parts = _header(width, height)
    seen: set[str] = set()
    for tick in y_ticks:
        ty = _fc(py(tick))
        if ty in seen:
            continue
        seen.add(ty)
        parts.append(
            f'<line x1="{_fc(px(0.0))}" y1="{ty}" x2="{_fc(px(1.0))}" y2="{ty}" '
            'stroke="#bbbbbb" stroke-width="1" stroke-dasharray="4,4"/>'
        )
        parts.append(
            f'<text x="{_fc(MARGIN - 6)}" y="{ty}" font-size="12" text-anchor="end" '
            f'dominant-baseline="middle" fill="#444444">{tick:.6g}</text>'
        )
    for tick in (0.0, 1.0):
        tx = _fc(px(tick))
        parts.append(
            f'<line x1="{tx}" y1="{_fc(py(y_lo))}" x2="{tx}" y2="{_fc(py(y_hi))}" '
            'stroke="#bbbbbb" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{tx}" y="{_fc(height - MARGIN + 16)}" font-size="12" '
            f'text-anchor="middle" fill="#444444">{tick:g}</text>'
        )
    points = " ".join(f"{_fc(px(x))},{_fc(py(f))}" for x, f, _ in samples)
    parts.append(
        f'<polyline points="{points}" fill="none" stroke="#1b4f9c" stroke-width="1"/>'
    )
    parts.append(
        f'<text x="{_fc(width / 2)}" y="{_fc(MARGIN - 16)}" font-size="14" '
        f'text-anchor="middle" fill="#000000">{label}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def bands_svg(
    stages: list[list[tuple[float, float]]],
    label: str,
    width: int = WIDTH,
    row_height: int = 34,
) -> str:
    """Stacked rows of intervals, one row per construction stage."""
    height = 2 * MARGIN + row_height * len(stages)
    iw = width - 2 * MARGIN
    parts = _header(width, height)
    for t, intervals in enumerate(stages):
        y = MARGIN + t * row_height
        parts.append(
            f'<text x="{_fc(MARGIN - 8)}" y="{_fc(y + row_height / 2)}" font-size="12" '
            f'text-anchor="end" dominant-baseline="middle" fill="#444444">{t + 1}</text>'
        )
        for lo, hi in intervals:
            parts.append(
                f'<rect x="{_fc(MARGIN + lo * iw)}" y="{_fc(y + 4)}" '
                f'width="{_fc(max(hi - lo, 0.0) * iw)}" height="{row_height - 12}" '
                'fill="#1b4f9c"/>'
            )
    parts.append(
        f'<text x="{_fc(width / 2)}" y="{_fc(MARGIN - 16)}" font-size="14" '
        f'text-anchor="middle" fill="#000000">{label}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
