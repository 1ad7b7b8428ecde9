"""Minimal hand-emitted SVG line charts (no rendering dependency)."""

from __future__ import annotations

from collections.abc import Sequence

_WIDTH, _HEIGHT = 640, 440
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 60, 20, 30, 50


def line_chart(
    xs: Sequence[float],
    ys: Sequence[float],
    title: str = "",
    x_label: str = "",
    y_label: str = "",
) -> str:
    """SVG document for a single polyline with axes and min/max tick labels."""
    if len(xs) != len(ys):
        raise ValueError(f"length mismatch: {len(xs)} xs vs {len(ys)} ys")
    if not xs:
        raise ValueError("at least one point is required")

    x_min, x_max = min(xs), max(xs)
    y_min, y_max = min(ys), max(ys)
    x_span = (x_max - x_min) or 1.0
    y_span = (y_max - y_min) or 1.0
    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def sx(x: float) -> float:
        return _MARGIN_L + (x - x_min) / x_span * plot_w

    def sy(y: float) -> float:
        return _HEIGHT - _MARGIN_B - (y - y_min) / y_span * plot_h

    points = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
    x0, y0 = _MARGIN_L, _HEIGHT - _MARGIN_B
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{_WIDTH - _MARGIN_R}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{_MARGIN_T}" stroke="black"/>',
        f'<polyline points="{points}" fill="none" stroke="#1f6fb2" stroke-width="2"/>',
        f'<text x="{x0}" y="{y0 + 20}" font-size="12" text-anchor="middle">{x_min:g}</text>',
        f'<text x="{_WIDTH - _MARGIN_R}" y="{y0 + 20}" font-size="12" '
        f'text-anchor="middle">{x_max:g}</text>',
        f'<text x="{x0 - 8}" y="{y0 + 4}" font-size="12" text-anchor="end">{y_min:.4g}</text>',
        f'<text x="{x0 - 8}" y="{_MARGIN_T + 4}" font-size="12" text-anchor="end">{y_max:.4g}</text>',
    ]
    if title:
        parts.append(
            f'<text x="{_WIDTH / 2:.0f}" y="18" font-size="14" text-anchor="middle">{title}</text>'
        )
    if x_label:
        parts.append(
            f'<text x="{_WIDTH / 2:.0f}" y="{_HEIGHT - 12}" font-size="12" '
            f'text-anchor="middle">{x_label}</text>'
        )
    if y_label:
        parts.append(
            f'<text x="16" y="{_HEIGHT / 2:.0f}" font-size="12" text-anchor="middle" '
            f'transform="rotate(-90 16 {_HEIGHT / 2:.0f})">{y_label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)
