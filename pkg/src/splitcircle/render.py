"""Deterministic SVG drawing of chord models."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .chord import ChordModel, check_word

SIZE = 480
RADIUS = 170.0


def _pt(angle: float, r: float) -> tuple[float, float]:
    c = SIZE / 2
    return c + r * math.cos(angle), c + r * math.sin(angle)


def _angle(pos: float, total: int) -> float:
    # position 0 at the top, clockwise
    return -math.pi / 2 + 2 * math.pi * pos / total


def _f(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def _arc_runs(m: ChordModel) -> list[tuple[str, float]]:
    """(arc name, angular position in word units) for each named arc."""
    total = len(m.word)
    arcs = m.arcs or ()
    runs: dict[str, list[int]] = {}
    for i, name in enumerate(arcs):
        runs.setdefault(name, []).append(i)
    out: list[tuple[str, float]] = []
    if m.segments is None:
        for name, pos in runs.items():
            out.append((name, _circular_mid(pos, total)))
        return sorted(out, key=lambda t: t[1])
    segs = list(m.segments)
    mids: dict[str, float] = {s: _circular_mid(runs[s], total) for s in segs if s in runs}
    for idx, s in enumerate(segs):
        if s in mids:
            out.append((s, mids[s]))
            continue
        # empty arc: halfway between the neighbouring nonempty arcs
        prev = next(segs[(idx - t) % len(segs)] for t in range(1, len(segs) + 1) if segs[(idx - t) % len(segs)] in runs)
        nxt = next(segs[(idx + t) % len(segs)] for t in range(1, len(segs) + 1) if segs[(idx + t) % len(segs)] in runs)
        a = _last(runs[prev], total)
        b = _first(runs[nxt], total)
        if b <= a:
            b += total
        out.append((s, ((a + b) / 2) % total))
    return out


def _circular_mid(pos: list[int], total: int) -> float:
    first, last = _first(pos, total), _last(pos, total)
    if last < first:
        last += total
    return ((first + last) / 2) % total


def _first(pos: list[int], total: int) -> int:
    """Start of a circular run of positions."""
    s = set(pos)
    for p in sorted(pos):
        if (p - 1) % total not in s:
            return p
    return min(pos)


def _last(pos: list[int], total: int) -> int:
    s = set(pos)
    for p in sorted(pos, reverse=True):
        if (p + 1) % total not in s:
            return p
    return max(pos)


def render_svg(m: ChordModel, names: dict[int, str] | None = None) -> str:
    """Circle with 2n equally spaced endpoints in word order joined by straight chords."""
    check_word(m.word)
    total = len(m.word)
    c = SIZE / 2
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<circle cx="{_f(c)}" cy="{_f(c)}" r="{_f(RADIUS)}" fill="none" stroke="#444" stroke-width="1.5"/>',
    ]
    where: dict[int, list[int]] = {}
    for i, v in enumerate(m.word):
        where.setdefault(v, []).append(i)
    for v in sorted(where):
        i, j = where[v]
        x1, y1 = _pt(_angle(i, total), RADIUS)
        x2, y2 = _pt(_angle(j, total), RADIUS)
        lines.append(f'<line class="chord" data-vertex="{v}" x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" stroke="#1f5fa8" stroke-width="1.5"/>')
    for i, v in enumerate(m.word):
        x, y = _pt(_angle(i, total), RADIUS)
        lx, ly = _pt(_angle(i, total), RADIUS + 14)
        label = escape(names.get(v, str(v)) if names else str(v))
        lines.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="3" fill="#000"/>')
        lines.append(f'<text class="endpoint" x="{_f(lx)}" y="{_f(ly)}" font-size="11" text-anchor="middle" dominant-baseline="middle">{label}</text>')
    if m.arcs is not None:
        for name, pos in _arc_runs(m):
            ax, ay = _pt(_angle(pos, total), RADIUS + 38)
            lines.append(f'<text class="arc" x="{_f(ax)}" y="{_f(ay)}" font-size="12" fill="#a33" text-anchor="middle" dominant-baseline="middle">{escape(name)}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
