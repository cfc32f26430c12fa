"""Hand-emitted SVG polyline plots: one panel per data group, no plotting
dependency, deterministic output."""

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

_W, _H = 640, 320
_MARGIN = 52


def _fmt(v):
    return format(float(v), ".6g")


def _scale(values, lo_px, hi_px):
    vmin = min(values)
    vmax = max(values)
    if vmax == vmin:
        vmin -= 0.5
        vmax += 0.5
    span = vmax - vmin
    pad = 0.05 * span
    vmin -= pad
    vmax += pad

    def to_px(v):
        return lo_px + (v - vmin) / (vmax - vmin) * (hi_px - lo_px)

    return to_px, vmin, vmax


def _panel(title, series, y_offset):
    """One framed panel with labelled polylines.

    ``series`` is a list of (label, xs, ys) triples sharing one axis box.
    """
    all_x = [v for _, xs, _ in series for v in xs]
    all_y = [v for _, _, ys in series for v in ys]
    x_px, xmin, xmax = _scale(all_x, _MARGIN, _W - 16)
    y_px, ymin, ymax = _scale(all_y, _H - 36, 24)  # inverted: SVG y grows down

    parts = [f'<g transform="translate(0,{y_offset})">']
    parts.append(
        f'<rect x="{_MARGIN}" y="24" width="{_W - 16 - _MARGIN}" '
        f'height="{_H - 60}" fill="none" stroke="#888" stroke-width="1"/>'
    )
    parts.append(
        f'<text x="{_W // 2}" y="16" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{title}</text>'
    )
    for corner, value in ((_MARGIN, xmin), (_W - 16, xmax)):
        parts.append(
            f'<text x="{corner}" y="{_H - 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{_fmt(value)}</text>'
        )
    for y_pix, value in ((_H - 36, ymin), (24, ymax)):
        parts.append(
            f'<text x="{_MARGIN - 6}" y="{y_pix + 4}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{_fmt(value)}</text>'
        )
    for k, (label, xs, ys) in enumerate(series):
        color = _PALETTE[k % len(_PALETTE)]
        points = " ".join(f"{_fmt(x_px(x))},{_fmt(y_px(y))}" for x, y in zip(xs, ys))
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{points}"/>'
        )
        if label:
            parts.append(
                f'<text x="{_W - 22}" y="{36 + 14 * k}" text-anchor="end" '
                f'font-family="sans-serif" font-size="10" fill="{color}">{label}</text>'
            )
    parts.append("</g>")
    return "\n".join(parts)


def render(panels) -> str:
    """Full SVG document from a list of (title, series) panels."""
    height = _H * len(panels)
    body = "\n".join(_panel(title, series, i * _H) for i, (title, series) in enumerate(panels))
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{height}" '
        f'viewBox="0 0 {_W} {height}">\n'
        f'<rect width="{_W}" height="{height}" fill="white"/>\n'
        f"{body}\n</svg>\n"
    )
