"""Two-row ASCII pictures of Brauer graphs.

Vertices are drawn as ``o`` (``.`` for singletons), upper hooks as
``\\___/`` below the upper row, lower hooks as ``/---\\`` above the lower
row, and transversals are listed between the two.  Graphs on N are drawn
on a finite window; hooks leaving it end in ``>``.
"""
from __future__ import annotations

from .diagram import Diagram
from .periodic import LO, UP

CELL = 4


def _partner_fn(d, N: int):
    if isinstance(d, Diagram):
        n = d.n

        def part(row, i):              # i is 0-based
            v = i + 1 + (n if row == LO else 0)
            w = d.partner[v]
            if not w:
                return None
            return (UP, w - 1) if w <= n else (LO, w - n - 1)
        return part, n, lambda i: str(i + 1)
    return (lambda row, i: d.partner((row, i))), N, str


def _layers(hooks: list) -> list:
    layers: list = []
    for a, b in sorted(hooks):
        for lay in layers:
            if lay[-1][1] < a:
                lay.append((a, b))
                break
        else:
            layers.append([(a, b)])
    return layers


def _hook_line(layer: list, width: int, left: str, fill: str, right: str, N: int) -> str:
    buf = [" "] * width
    for a, b in layer:
        ca = a * CELL + 1
        if b >= N:
            for x in range(ca + 1, width - 1):
                buf[x] = fill
            buf[ca], buf[width - 1] = left, ">"
            continue
        cb = b * CELL + 1
        for x in range(ca + 1, cb):
            buf[x] = fill
        buf[ca], buf[cb] = left, right
    return "".join(buf).rstrip()


def render(d, window: int = 12) -> str:
    part, N, label = _partner_fn(d, window)
    finite = isinstance(d, Diagram)
    width = N * CELL + (0 if finite else 4)
    up_hooks, lo_hooks, trans = [], [], []
    glyph = {UP: [], LO: []}
    for row in (UP, LO):
        for i in range(N):
            w = part(row, i)
            glyph[row].append("." if w is None else "o")
            if w is None:
                continue
            if w[0] == row:
                if w[1] > i:
                    (up_hooks if row == UP else lo_hooks).append((i, w[1]))
            elif row == UP:
                trans.append((i, w[1]))

    def vertex_row(row):
        s = "".join(f" {g}  " for g in glyph[row]).rstrip()
        return s + ("  ..." if not finite else "")

    def label_row(prime):
        return "".join(f" {label(i) + prime:<3}" for i in range(N)).rstrip()

    lines = [label_row(""), vertex_row(UP)]
    lines += [_hook_line(l, width, "\\", "_", "/", N) for l in _layers(up_hooks)]
    shown = [f"{label(a)}-{label(b)}'" if b < N else f"{label(a)}-{b}'" for a, b in trans]
    lines.append("T: " + (" ".join(shown) if shown else "(none)"))
    lines += [_hook_line(l, width, "/", "-", "\\", N) for l in _layers(lo_hooks)]
    lines += [vertex_row(LO), label_row("'")]
    return "\n".join(lines) + "\n"
