"""Minimal deterministic SVG line plots for CSV tables.

No plotting library: identical input bytes must yield identical output
bytes, so everything (tick placement, coordinate rounding, colors) is
fixed here.  Polylines break wherever a series leaves the finite range,
and each such break is marked with a dashed vertical rule so branch jumps
and flagged sweep points stay visible.
"""

import math

WIDTH, HEIGHT = 640.0, 440.0
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70.0, 20.0, 20.0, 50.0
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def parse_csv(text):
    """Header list + rows of string cells from strict comma/newline CSV."""
    lines = [ln for ln in text.split("\n") if ln != ""]
    if not lines:
        raise ValueError("empty CSV document")
    header = lines[0].split(",")
    return header, [ln.split(",") for ln in lines[1:]]


def _to_float(cell):
    try:
        return float(cell)
    except ValueError:
        return math.nan


def _nice_ticks(lo, hi, target=5):
    """Round tick positions covering [lo, hi]."""
    if not (math.isfinite(lo) and math.isfinite(hi)):
        lo, hi = 0.0, 1.0
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


def render_plot(csv_text, x_column, y_columns, title=""):
    """Render one polyline per y column against x_column; returns SVG text."""
    header, rows = parse_csv(csv_text)
    for name in [x_column, *y_columns]:
        if name not in header:
            raise KeyError(f"column {name!r} not in CSV header {header}")
    xi = header.index(x_column)
    yis = [header.index(name) for name in y_columns]
    xs = [_to_float(r[xi]) if xi < len(r) else math.nan for r in rows]
    series = [[_to_float(r[yi]) if yi < len(r) else math.nan for r in rows] for yi in yis]

    finite_x = [x for x in xs if math.isfinite(x)]
    finite_y = [y for ys in series for y in ys if math.isfinite(y)]
    x_lo, x_hi = (min(finite_x), max(finite_x)) if finite_x else (0.0, 1.0)
    y_lo, y_hi = (min(finite_y), max(finite_y)) if finite_y else (0.0, 1.0)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    def px(x):
        return MARGIN_L + (x - x_lo) / (x_hi - x_lo) * (WIDTH - MARGIN_L - MARGIN_R)

    def py(y):
        return HEIGHT - MARGIN_B - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - MARGIN_T - MARGIN_B)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0f}" height="{HEIGHT:.0f}" '
        f'viewBox="0 0 {WIDTH:.0f} {HEIGHT:.0f}">',
        f'<rect x="0" y="0" width="{WIDTH:.0f}" height="{HEIGHT:.0f}" fill="white"/>',
        f'<line x1="{MARGIN_L:.2f}" y1="{HEIGHT - MARGIN_B:.2f}" x2="{WIDTH - MARGIN_R:.2f}" '
        f'y2="{HEIGHT - MARGIN_B:.2f}" stroke="black" stroke-width="1"/>',
        f'<line x1="{MARGIN_L:.2f}" y1="{MARGIN_T:.2f}" x2="{MARGIN_L:.2f}" '
        f'y2="{HEIGHT - MARGIN_B:.2f}" stroke="black" stroke-width="1"/>',
    ]
    if title:
        parts.append(f'<text x="{WIDTH / 2:.2f}" y="{MARGIN_T - 6:.2f}" font-size="13" '
                     f'text-anchor="middle">{title}</text>')
    for t in _nice_ticks(x_lo, x_hi):
        parts.append(f'<line x1="{px(t):.2f}" y1="{HEIGHT - MARGIN_B:.2f}" x2="{px(t):.2f}" '
                     f'y2="{HEIGHT - MARGIN_B + 4:.2f}" stroke="black" stroke-width="1"/>')
        parts.append(f'<text x="{px(t):.2f}" y="{HEIGHT - MARGIN_B + 16:.2f}" font-size="10" '
                     f'text-anchor="middle">{t:.6g}</text>')
    for t in _nice_ticks(y_lo, y_hi):
        parts.append(f'<line x1="{MARGIN_L - 4:.2f}" y1="{py(t):.2f}" x2="{MARGIN_L:.2f}" '
                     f'y2="{py(t):.2f}" stroke="black" stroke-width="1"/>')
        parts.append(f'<text x="{MARGIN_L - 7:.2f}" y="{py(t) + 3:.2f}" font-size="10" '
                     f'text-anchor="end">{t:.6g}</text>')
    parts.append(f'<text x="{WIDTH / 2:.2f}" y="{HEIGHT - 10:.2f}" font-size="11" '
                 f'text-anchor="middle">{x_column}</text>')

    gaps = set()
    for si, ys in enumerate(series):
        color = PALETTE[si % len(PALETTE)]
        run = []
        prev_ok = None
        for x, y in zip(xs, ys):
            ok = math.isfinite(x) and math.isfinite(y)
            if ok:
                run.append(f"{px(x):.2f},{py(y):.2f}")
                if prev_ok is False:
                    gaps.add(round(px(x), 2))
            elif run:
                parts.append(f'<polyline points="{" ".join(run)}" fill="none" '
                             f'stroke="{color}" stroke-width="1.5"/>')
                gaps.add(round(float(run[-1].split(",")[0]), 2))
                run = []
            prev_ok = ok
        if run:
            parts.append(f'<polyline points="{" ".join(run)}" fill="none" '
                         f'stroke="{color}" stroke-width="1.5"/>')
        # legend swatch
        ly = MARGIN_T + 14 + 14 * si
        parts.append(f'<line x1="{WIDTH - MARGIN_R - 110:.2f}" y1="{ly:.2f}" '
                     f'x2="{WIDTH - MARGIN_R - 90:.2f}" y2="{ly:.2f}" '
                     f'stroke="{color}" stroke-width="1.5"/>')
        parts.append(f'<text x="{WIDTH - MARGIN_R - 85:.2f}" y="{ly + 3:.2f}" '
                     f'font-size="10">{y_columns[si]}</text>')
    for gx in sorted(gaps):
        parts.append(f'<line x1="{gx:.2f}" y1="{MARGIN_T:.2f}" x2="{gx:.2f}" '
                     f'y2="{HEIGHT - MARGIN_B:.2f}" stroke="#888888" stroke-width="1" '
                     f'stroke-dasharray="4,3"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
