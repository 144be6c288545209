"""Minimal self-contained SVG scatter plot."""

from __future__ import annotations

from xml.sax.saxutils import escape


def _ticks(lo, hi, count=5):
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def scatter_svg(xs, ys, *, title="", xlabel="", ylabel="", ref_y=None,
                width=640, height=420) -> str:
    xs = [float(x) for x in xs]
    ys = [float(y) for y in ys]
    left, right, top, bottom = 70, 20, 40, 50
    x0, x1 = min(xs), max(xs)
    ylo = min(ys + ([ref_y] if ref_y is not None else []))
    yhi = max(ys + ([ref_y] if ref_y is not None else []))
    pad = 0.05 * (yhi - ylo or 1.0)
    ylo, yhi = ylo - pad, yhi + pad
    if x1 == x0:
        x0, x1 = x0 - 1, x1 + 1

    def px(x):
        return left + (x - x0) / (x1 - x0) * (width - left - right)

    def py(y):
        return height - bottom - (y - ylo) / (yhi - ylo) * (height - top - bottom)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{width / 2}" y="24" text-anchor="middle" font-family="sans-serif" '
        f'font-size="15">{escape(title)}</text>',
        # axes
        f'<line x1="{left}" y1="{height - bottom}" x2="{width - right}" y2="{height - bottom}" '
        'stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{height - bottom}" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<line x1="{px(t):.2f}" y1="{height - bottom}" x2="{px(t):.2f}" '
                   f'y2="{height - bottom + 5}" stroke="black"/>')
        out.append(f'<text x="{px(t):.2f}" y="{height - bottom + 18}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="11">{t:g}</text>')
    for t in _ticks(ylo, yhi):
        out.append(f'<line x1="{left - 5}" y1="{py(t):.2f}" x2="{left}" y2="{py(t):.2f}" '
                   'stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{py(t) + 4:.2f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="11">{t:.4g}</text>')
    out.append(f'<text x="{(left + width - right) / 2}" y="{height - 12}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="13">{escape(xlabel)}</text>')
    out.append(f'<text x="16" y="{(top + height - bottom) / 2}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="13" '
               f'transform="rotate(-90 16 {(top + height - bottom) / 2})">{escape(ylabel)}</text>')
    if ref_y is not None:
        out.append(f'<line class="reference" x1="{left}" y1="{py(ref_y):.2f}" x2="{width - right}" '
                   f'y2="{py(ref_y):.2f}" stroke="gray" stroke-dasharray="6,4"/>')
    for x, y in zip(xs, ys):
        out.append(f'<circle class="point" cx="{px(x):.2f}" cy="{py(y):.2f}" r="3" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
