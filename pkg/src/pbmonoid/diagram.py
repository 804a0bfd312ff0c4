"""Finite Brauer graphs on {1..n} ∪ {1'..n'}.

Internally upper vertex ``i`` is encoded as ``i`` and lower vertex ``i'``
as ``i + n``.  ``partner[v]`` is the other end of the edge at ``v``, or 0
when ``v`` is a singleton; index 0 of the tuple is unused.

>>> a = make_diagram(2, [(1, 2)], [], [])
>>> str(params(a))
't=1 h=0 h*=0 s=1 s*=1'
>>> compose(a, star(a)) == make_diagram(2, [(1, 1)], [], [])
True
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import chain
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from .errors import (CrossingEdge, DuplicateVertex, IndexOutOfRange, NotInIX,
                     ParseError, SizeMismatch, SizeTooLarge)

ENUM_LIMIT = 6


@dataclass(frozen=True)
class Diagram:
    n: int
    partner: tuple

    def __mul__(self, other: "Diagram") -> "Diagram":
        return compose(self, other)

    def __repr__(self) -> str:
        return f"Diagram({self.n}, T={self.transversals()}, U={self.upper_hooks()}, L={self.lower_hooks()})"

    # edge listings, all in 1-based point labels
    def transversals(self) -> list:
        n, p = self.n, self.partner
        return [(i, p[i] - n) for i in range(1, n + 1) if p[i] > n]

    def upper_hooks(self) -> list:
        p = self.partner
        return [(i, p[i]) for i in range(1, self.n + 1) if i < p[i] <= self.n]

    def lower_hooks(self) -> list:
        n, p = self.n, self.partner
        return [(i - n, p[i] - n) for i in range(n + 1, 2 * n + 1) if p[i] > i]

    def upper_singletons(self) -> list:
        return [i for i in range(1, self.n + 1) if self.partner[i] == 0]

    def lower_singletons(self) -> list:
        n = self.n
        return [i - n for i in range(n + 1, 2 * n + 1) if self.partner[i] == 0]

    def edges(self) -> list:
        p = self.partner
        return [(v, p[v]) for v in range(1, 2 * self.n + 1) if p[v] > v]


class ParamProfile(NamedTuple):
    t: object
    h: object
    hstar: object
    s: object
    sstar: object
    defect: object
    codef: object
    fix: object
    shift: object
    supp: object

    def __str__(self) -> str:
        return f"t={self.t} h={self.h} h*={self.hstar} s={self.s} s*={self.sstar}"


class VertexSets(NamedTuple):
    dom: frozenset
    codom: frozenset
    defect: frozenset
    codef: frozenset
    fix: frozenset
    sh: frozenset
    supp: frozenset


@dataclass(frozen=True)
class CycleTrailDecomposition:
    cycles: tuple
    trails: tuple

    def nontrivial(self) -> list:
        return [c for c in chain(self.cycles, self.trails) if len(c) >= 2]


def _check_point(n: int, x: int) -> None:
    if not 1 <= x <= n:
        raise IndexOutOfRange(f"point {x} not in 1..{n}")


def make_diagram(n: int, transversals: Iterable = (), upper_hooks: Iterable = (),
                 lower_hooks: Iterable = ()) -> Diagram:
    """Build a diagram from transversals ``(a, b)`` meaning a -> b' and hooks."""
    p = [0] * (2 * n + 1)

    def link(u: int, v: int) -> None:
        for w in (u, v):
            if p[w]:
                raise DuplicateVertex(f"vertex {_label(n, w)} used twice")
        if u == v:
            raise DuplicateVertex(f"vertex {_label(n, u)} paired with itself")
        p[u], p[v] = v, u

    for a, b in transversals:
        _check_point(n, a)
        _check_point(n, b)
        link(a, b + n)
    for a, b in upper_hooks:
        _check_point(n, a)
        _check_point(n, b)
        link(a, b)
    for a, b in lower_hooks:
        _check_point(n, a)
        _check_point(n, b)
        link(a + n, b + n)
    return Diagram(n, tuple(p))


def _label(n: int, v: int) -> str:
    return str(v) if v <= n else f"{v - n}'"


def identity(n: int) -> Diagram:
    return make_diagram(n, [(i, i) for i in range(1, n + 1)])


def empty(n: int) -> Diagram:
    return Diagram(n, (0,) * (2 * n + 1))


def from_permutation(perm: Sequence[int]) -> Diagram:
    """``perm[i-1]`` is the image of point i."""
    n = len(perm)
    return make_diagram(n, [(i + 1, perm[i]) for i in range(n)])


def from_partial_map(n: int, mapping: dict) -> Diagram:
    return make_diagram(n, sorted(mapping.items()))


def compose(a: Diagram, b: Diagram) -> Diagram:
    """Product ab: glue a's lower row to b's upper row and follow paths."""
    if a.n != b.n:
        raise SizeMismatch(f"{a.n} != {b.n}")
    n = a.n
    pa, pb = a.partner, b.partner
    res = [0] * (2 * n + 1)

    def leave(y: int, in_b: bool) -> int:
        # walk the middle row from y; return outer vertex reached or 0
        while True:
            if in_b:
                q = pb[y]
                if q == 0:
                    return 0
                if q > n:
                    return q
                y, in_b = q, False
            else:
                q = pa[y + n]
                if q == 0:
                    return 0
                if q <= n:
                    return q
                y, in_b = q - n, True

    for x in range(1, n + 1):
        if res[x]:
            continue
        q = pa[x]
        if q == 0:
            continue
        end = q if q <= n else leave(q - n, True)
        if end:
            res[x], res[end] = end, x
    for z in range(n + 1, 2 * n + 1):
        if res[z]:
            continue
        q = pb[z]
        if q == 0:
            continue
        end = q if q > n else leave(q, False)
        if end:
            res[z], res[end] = end, z
    return Diagram(n, tuple(res))


def compose_all(ds: Iterable[Diagram]) -> Diagram:
    it = iter(ds)
    acc = next(it)
    for d in it:
        acc = compose(acc, d)
    return acc


def star(a: Diagram) -> Diagram:
    n, p = a.n, a.partner
    flip = lambda v: v + n if 0 < v <= n else (v - n if v else 0)
    res = [0] * (2 * n + 1)
    for v in range(1, 2 * n + 1):
        res[flip(v)] = flip(p[v])
    return Diagram(n, tuple(res))


def params(a: Diagram) -> ParamProfile:
    n, p = a.n, a.partner
    t = h = hs = s = ss = fix = 0
    for i in range(1, n + 1):
        q = p[i]
        if q == 0:
            s += 1
        elif q <= n:
            h += 1
        else:
            t += 1
            fix += q - n == i
        q = p[i + n]
        if q == 0:
            ss += 1
        elif q > n:
            hs += 1
    h //= 2
    hs //= 2
    defect = 2 * h + s
    shift = t - fix
    return ParamProfile(t, h, hs, s, ss, defect, 2 * hs + ss, fix, shift, defect + shift)


def apply(a: Diagram, x: int) -> Optional[int]:
    """xα if x is in the domain, else None."""
    _check_point(a.n, x)
    q = a.partner[x]
    return q - a.n if q > a.n else None


def preimage(a: Diagram, x: int) -> Optional[int]:
    _check_point(a.n, x)
    q = a.partner[x + a.n]
    return q if 0 < q <= a.n else None


def vertex_sets(a: Diagram) -> VertexSets:
    n = a.n
    X = frozenset(range(1, n + 1))
    dom = frozenset(x for x in X if a.partner[x] > n)
    codom = frozenset(a.partner[x] - n for x in dom)
    fix = frozenset(x for x in dom if a.partner[x] == x + n)
    sh = dom - fix
    return VertexSets(dom, codom, X - dom, X - codom, fix, sh, X - fix)


def is_idempotent(a: Diagram) -> bool:
    return compose(a, a) == a


def is_projection(a: Diagram) -> bool:
    return star(a) == a and is_idempotent(a)


def restrict(a: Diagram, W: Iterable[int], strict: bool = True) -> Diagram:
    """Restriction to W, relabelled in increasing order onto 1..|W|.

    An edge leaving W raises CrossingEdge; with ``strict=False`` it is cut
    and its end inside W becomes a singleton.
    """
    labels = sorted(set(W))
    for w in labels:
        _check_point(a.n, w)
    pos = {w: k + 1 for k, w in enumerate(labels)}
    n, m = a.n, len(labels)
    res = [0] * (2 * m + 1)
    for w in labels:
        for v, shift in ((w, 0), (w + n, m)):
            q = a.partner[v]
            if q == 0:
                continue
            qp = q if q <= n else q - n
            if qp not in pos:
                if not strict:
                    continue
                raise CrossingEdge(f"edge {_label(n, v)}-{_label(n, q)} leaves W")
            res[pos[w] + shift] = pos[qp] + (0 if q <= n else m)
    return Diagram(m, tuple(res))


def disjoint_union(parts: Iterable, n: Optional[int] = None) -> Diagram:
    """Union of diagrams over disjoint label sets.

    ``parts`` holds pairs ``(labels, diagram)`` where point ``k`` of the
    diagram is relabelled to ``labels[k-1]``.
    """
    parts = [(list(lbl), d) for lbl, d in parts]
    used = [x for lbl, _ in parts for x in lbl]
    if len(used) != len(set(used)):
        raise DuplicateVertex("label sets overlap")
    if n is None:
        n = max(used, default=0)
    T, U, L = [], [], []
    for lbl, d in parts:
        if len(lbl) != d.n:
            raise SizeMismatch(f"{len(lbl)} labels for a diagram on {d.n} points")
        f = lambda k: lbl[k - 1]
        T += [(f(x), f(y)) for x, y in d.transversals()]
        U += [(f(x), f(y)) for x, y in d.upper_hooks()]
        L += [(f(x), f(y)) for x, y in d.lower_hooks()]
    return make_diagram(n, T, U, L)


def cycle_trail_decompose(a: Diagram) -> CycleTrailDecomposition:
    p = params(a)
    if p.h or p.hstar:
        raise NotInIX("diagram has hooks")
    f = {x: y for x, y in a.transversals()}
    finv = {y: x for x, y in f.items()}
    seen = set()
    cycles, trails = [], []
    for x in range(1, a.n + 1):
        if x in seen or x in finv:
            continue
        trail = [x]
        while trail[-1] in f:
            trail.append(f[trail[-1]])
        seen.update(trail)
        trails.append(tuple(trail))
    for x in range(1, a.n + 1):
        if x in seen:
            continue
        cyc = [x]
        while f[cyc[-1]] != x:
            cyc.append(f[cyc[-1]])
        seen.update(cyc)
        cycles.append(tuple(cyc))
    return CycleTrailDecomposition(tuple(cycles), tuple(sorted(trails, key=min)))


def reassemble(n: int, dec: CycleTrailDecomposition) -> Diagram:
    T = []
    for c in dec.cycles:
        T += [(c[k], c[(k + 1) % len(c)]) for k in range(len(c))]
    for t in dec.trails:
        T += list(zip(t, t[1:]))
    return make_diagram(n, T)


def canonical_encode(a: Diagram) -> bytes:
    """n followed by the partner table, two bytes big-endian each."""
    return b"".join(v.to_bytes(2, "big") for v in (a.n,) + a.partner[1:])


def decode(data: bytes) -> Diagram:
    vals = [int.from_bytes(data[k:k + 2], "big") for k in range(0, len(data), 2)]
    n = vals[0]
    if len(vals) != 2 * n + 1:
        raise ParseError("encoding length does not match n")
    d = Diagram(n, (0,) + tuple(vals[1:]))
    _validate_partner(d)
    return d


def _validate_partner(d: Diagram) -> None:
    p = d.partner
    for v in range(1, 2 * d.n + 1):
        q = p[v]
        if q and (q > 2 * d.n or q == v or p[q] != v):
            raise ParseError(f"partner table not an involution at {v}")


def _matchings(verts: list) -> Iterator[list]:
    if not verts:
        yield []
        return
    v, rest = verts[0], verts[1:]
    for m in _matchings(rest):
        yield m
    for k, w in enumerate(rest):
        for m in _matchings(rest[:k] + rest[k + 1:]):
            yield [(v, w)] + m


def enumerate_all(n: int) -> list:
    """All diagrams on n points, ordered by edge count then encoding."""
    if n > ENUM_LIMIT:
        raise SizeTooLarge(f"enumeration limited to n <= {ENUM_LIMIT}")
    out = []
    for m in _matchings(list(range(1, 2 * n + 1))):
        p = [0] * (2 * n + 1)
        for u, v in m:
            p[u], p[v] = v, u
        out.append(Diagram(n, tuple(p)))
    out.sort(key=lambda d: (len(d.edges()), canonical_encode(d)))
    return out


def count_pb(n: int) -> int:
    """Σ_k C(2n,2k)(2k-1)!!, the number of partial matchings of 2n vertices."""
    from math import comb
    total = 0
    for k in range(n + 1):
        dfact = 1
        for j in range(1, 2 * k, 2):
            dfact *= j
        total += comb(2 * n, 2 * k) * dfact
    return total


def random_diagram(n: int, seed=None, edge_prob: float = 0.75) -> Diagram:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    verts = list(range(1, 2 * n + 1))
    rng.shuffle(verts)
    p = [0] * (2 * n + 1)
    for k in range(0, len(verts) - 1, 2):
        if rng.random() < edge_prob:
            u, v = verts[k], verts[k + 1]
            p[u], p[v] = v, u
    return Diagram(n, tuple(p))


def random_partial_perm(n: int, seed=None, keep: float = 0.7) -> Diagram:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    img = list(range(1, n + 1))
    rng.shuffle(img)
    return make_diagram(n, [(i + 1, img[i]) for i in range(n) if rng.random() < keep])


# .pbd text format

def to_pbd(a: Diagram) -> str:
    lines = [f"pbd 1 finite n={a.n}"]
    lines += [f"T {x} {y}" for x, y in sorted(a.transversals())]
    lines += [f"U {x} {y}" for x, y in sorted(a.upper_hooks())]
    lines += [f"L {x} {y}" for x, y in sorted(a.lower_hooks())]
    return "\n".join(lines) + "\n"


def _strip(text: str) -> list:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _header_fields(header: str) -> dict:
    fields = {}
    for tok in header.split()[3:]:
        if "=" not in tok:
            raise ParseError(f"bad header field {tok!r}")
        k, v = tok.split("=", 1)
        try:
            fields[k] = int(v)
        except ValueError:
            raise ParseError(f"bad header value {tok!r}") from None
    return fields


def parse_pbd(text: str) -> Diagram:
    lines = _strip(text)
    if not lines or lines[0].split()[:3] != ["pbd", "1", "finite"]:
        raise ParseError("expected header 'pbd 1 finite n=<N>'")
    fields = _header_fields(lines[0])
    if "n" not in fields:
        raise ParseError("header lacks n")
    T, U, L = [], [], []
    for line in lines[1:]:
        tok = line.split()
        if len(tok) != 3 or tok[0] not in "TUL":
            raise ParseError(f"bad line {line!r}")
        try:
            pair = (int(tok[1]), int(tok[2]))
        except ValueError:
            raise ParseError(f"bad line {line!r}") from None
        {"T": T, "U": U, "L": L}[tok[0]].append(pair)
    return make_diagram(fields["n"], T, U, L)
