"""Minimal deterministic SVG line charts."""
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 440
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 40, 55
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


@dataclass
class Series:
    label: str
    x: list
    y: list
    style: str = "line"  # "line", "dashed" or "markers"
    color: str = ""


@dataclass
class Chart:
    title: str
    xlabel: str
    ylabel: str
    series: list = field(default_factory=list)


def _fmt(v):
    return f"{v:.2f}"


def _ticks(lo, hi, n=5):
    return [lo + (hi - lo) * i / n for i in range(n + 1)]


def render(chart):
    """Return the SVG document for ``chart`` as a string."""
    xs = [v for s in chart.series for v in s.x]
    ys = [v for s in chart.series for v in s.y]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    pad = 0.05 * (y_hi - y_lo) or 0.5
    y_lo, y_hi = y_lo - pad, y_hi + pad
    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def px(x):
        return MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y):
        return MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="22" text-anchor="middle" font-size="14">{escape(chart.title)}</text>',
        f'<g class="axes" stroke="black" fill="none">'
        f'<line x1="{MARGIN_L}" y1="{MARGIN_T + plot_h}" x2="{MARGIN_L + plot_w}" y2="{MARGIN_T + plot_h}"/>'
        f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" y2="{MARGIN_T + plot_h}"/></g>',
    ]
    for t in _ticks(x_lo, x_hi):
        out.append(
            f'<text x="{_fmt(px(t))}" y="{MARGIN_T + plot_h + 18}" text-anchor="middle">{t:.3g}</text>'
        )
    for t in _ticks(y_lo, y_hi):
        out.append(f'<text x="{MARGIN_L - 6}" y="{_fmt(py(t) + 4)}" text-anchor="end">{t:.4g}</text>')
    out.append(
        f'<text x="{MARGIN_L + plot_w / 2}" y="{HEIGHT - 12}" text-anchor="middle">{escape(chart.xlabel)}</text>'
    )
    out.append(
        f'<text x="16" y="{MARGIN_T + plot_h / 2}" text-anchor="middle" '
        f'transform="rotate(-90 16 {MARGIN_T + plot_h / 2})">{escape(chart.ylabel)}</text>'
    )

    for i, s in enumerate(chart.series):
        color = s.color or COLORS[i % len(COLORS)]
        label = escape(s.label)
        if s.style == "markers":
            out.append(f'<g class="markers" data-label="{label}" fill="none" stroke="{color}">')
            out.extend(f'<circle cx="{_fmt(px(x))}" cy="{_fmt(py(y))}" r="3.5"/>' for x, y in zip(s.x, s.y))
            out.append("</g>")
        else:
            dash = ' stroke-dasharray="6 4"' if s.style == "dashed" else ""
            pts = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(s.x, s.y))
            out.append(
                f'<polyline data-label="{label}" fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{pts}"/>'
            )
        ly = MARGIN_T + 14 + 16 * i
        out.append(f'<text x="{MARGIN_L + 12}" y="{ly}" fill="{color}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
