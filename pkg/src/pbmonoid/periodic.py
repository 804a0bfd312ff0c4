"""Eventually periodic Brauer graphs on N = {0, 1, 2, ...}.

A vertex is a pair ``(row, i)`` with row 0 for the upper copy of N and row 1
for the lower copy.  A :class:`PeriodicDescriptor` lists explicit prefix
edges and, for indices ``i >= m``, one rule per row and residue ``i mod p``:

* ``("S", 0)``  singleton
* ``("T", d)``  transversal to index ``i + d`` in the other row
* ``("H", d)``  hook to index ``i + d`` in the same row

Prefix edges override the rules for the vertices they mention.  Vertices
below ``m`` that no prefix edge mentions are singletons.

:class:`LazyDiagram` wraps an arbitrary partner oracle; products of
descriptors are lazy and can be turned back into descriptors with
:func:`detect_periodicity`.
"""
from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterable, Optional, Union

from .cards import ALEPH0, Card
from .diagram import ParamProfile
from .errors import (AsymmetricRule, NegativeIndex, OverlappingEdges,
                     ParseError, UnvalidatedDescriptor)

UP, LO = 0, 1
S = ("S", 0)


def T(d: int) -> tuple:
    return ("T", d)


def H(d: int) -> tuple:
    return ("H", d)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _target(v: tuple, rule: tuple) -> Optional[tuple]:
    kind, d = rule
    if kind == "S":
        return None
    return (1 - v[0] if kind == "T" else v[0], v[1] + d)


@dataclass(frozen=True)
class PeriodicDescriptor:
    m: int
    p: int
    prefix_edges: tuple
    upper_rules: tuple
    lower_rules: tuple
    _pmap: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("period must be positive")
        if len(self.upper_rules) != self.p or len(self.lower_rules) != self.p:
            raise ValueError("need one rule per residue and row")
        pmap = {}
        for u, v in self.prefix_edges:
            for w in (u, v):
                if w in pmap:
                    raise OverlappingEdges(f"vertex {w} in two prefix edges")
            pmap[u], pmap[v] = v, u
        object.__setattr__(self, "_pmap", pmap)

    def partner(self, v: tuple) -> Optional[tuple]:
        got = self._pmap.get(v, False)
        if got is not False:
            return got
        if v[1] < self.m:
            return None
        rules = self.upper_rules if v[0] == UP else self.lower_rules
        return _target(v, rules[v[1] % self.p])

    is_descriptor = True

    def rules(self, row: int) -> tuple:
        return self.upper_rules if row == UP else self.lower_rules

    def row_period(self, row: int) -> int:
        return self.p

    @property
    def set_period(self) -> int:
        return self.p

    @property
    def set_threshold(self) -> int:
        return self.stable

    @property
    def spill(self) -> int:
        """Largest absolute rule offset."""
        return max(abs(d) for _, d in self.upper_rules + self.lower_rules)

    @property
    def boundary(self) -> int:
        """Every vertex at or above this index is governed by its rule."""
        top = max((w[1] + 1 for e in self.prefix_edges for w in e), default=0)
        return max(self.m, top)

    @property
    def stable(self) -> int:
        """Vertices at or above this index and their partners are rule-governed."""
        return self.boundary + self.spill

    def __repr__(self) -> str:
        return (f"PeriodicDescriptor(m={self.m}, p={self.p}, prefix={list(self.prefix_edges)}, "
                f"upper={list(self.upper_rules)}, lower={list(self.lower_rules)})")


class LazyDiagram:
    """A Brauer graph on N given by a partner oracle, memoised thread-safely."""

    def __init__(self, oracle: Callable, note: str = "", scan_hint: Optional[int] = None):
        self._oracle = oracle
        self.note = note
        self.scan_hint = scan_hint
        self._memo: dict = {}
        self._lock = threading.Lock()

    def partner(self, v: tuple) -> Optional[tuple]:
        with self._lock:
            if v in self._memo:
                return self._memo[v]
        w = self._oracle(v)
        with self._lock:
            self._memo[v] = w
            if w is not None:
                self._memo.setdefault(w, v)
        return w

    def __repr__(self) -> str:
        return f"LazyDiagram({self.note!r})"


BrauerN = Union[PeriodicDescriptor, LazyDiagram]


def make_descriptor(p: int, upper: Iterable, lower: Iterable, m: int = 0,
                    prefix: Iterable = ()) -> PeriodicDescriptor:
    edges = tuple(sorted(tuple(sorted(e)) for e in prefix))
    return PeriodicDescriptor(m, p, edges, tuple(upper), tuple(lower))


# validation

@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple

    def raise_if_bad(self) -> None:
        if self.ok:
            return
        code, detail = self.violations[0]
        raise {"AsymmetricRule": AsymmetricRule, "NegativeIndex": NegativeIndex,
               "OverlappingEdges": OverlappingEdges}[code](detail)


_valid_cache: dict = {}


def validate(d: PeriodicDescriptor) -> ValidationReport:
    if not isinstance(d, PeriodicDescriptor) and hasattr(d, "validate"):
        return d.validate()
    bad = []
    for row in (UP, LO):
        for r, (kind, off) in enumerate(d.rules(row)):
            if kind == "S":
                continue
            if kind == "H" and off == 0:
                bad.append(("AsymmetricRule", f"row {row} residue {r}: hook to itself"))
                continue
            orow = 1 - row if kind == "T" else row
            back = d.rules(orow)[(r + off) % d.p]
            if back != (kind, -off):
                bad.append(("AsymmetricRule",
                            f"row {row} residue {r} rule {kind} {off} not matched by {back}"))
    for e in d.prefix_edges:
        for w in e:
            if w[1] < 0:
                bad.append(("NegativeIndex", f"prefix vertex {w}"))
        if e[0] == e[1]:
            bad.append(("OverlappingEdges", f"prefix loop at {e[0]}"))
    if bad:
        return ValidationReport(False, tuple(bad))
    top = d.stable + d.p + 1
    for row in (UP, LO):
        for i in range(top):
            v = (row, i)
            w = d.partner(v)
            if w is None:
                continue
            if w[1] < 0:
                bad.append(("NegativeIndex", f"{v} -> {w}"))
            elif w == v or d.partner(w) != v:
                bad.append(("AsymmetricRule", f"{v} -> {w} -> {d.partner(w)}"))
    return ValidationReport(not bad, tuple(bad[:20]))


def is_valid(d: PeriodicDescriptor) -> bool:
    key = id(d)
    hit = _valid_cache.get(key)
    if hit is not None and hit[0] is d:
        return hit[1]
    ok = validate(d).ok
    _valid_cache[key] = (d, ok)
    return ok


def require_valid(d: PeriodicDescriptor) -> None:
    if not is_valid(d):
        raise UnvalidatedDescriptor(str(validate(d).violations[0]))


# composition

DEFAULT_HORIZON = 1 << 22


class WalkDiverged(Exception):
    pass


def _middle_walk(a: BrauerN, b: BrauerN, y: int, in_b: bool, exact: Optional[tuple],
                 horizon: int) -> Optional[tuple]:
    """Follow the middle row of the product graph from index y.

    ``exact`` is ``(threshold, modulus)`` when both factors are descriptors:
    a repeated walk state above the threshold with upward drift proves
    the path is infinite.  Otherwise the walk is cut at ``horizon``.
    """
    seen = {}
    while True:
        if in_b:
            q = b.partner((UP, y))
            if q is None:
                return None
            if q[0] == LO:
                return q
            y, in_b = q[1], False
        else:
            q = a.partner((LO, y))
            if q is None:
                return None
            if q[0] == UP:
                return q
            y, in_b = q[1], True
        if exact is not None:
            thr, mod = exact
            if y < thr:
                seen.clear()
                continue
            key = (y % mod, in_b)
            prev = seen.get(key)
            if prev is not None and y > prev:
                return None
            if prev is not None and y == prev:
                raise WalkDiverged("walk revisited a vertex")
            seen[key] = y
        elif y > horizon:
            return None


def compose_lazy(a: BrauerN, b: BrauerN, horizon: int = DEFAULT_HORIZON) -> LazyDiagram:
    """Product ab as a lazy oracle.

    Exact for two descriptors.  When a factor is itself lazy, paths whose
    middle index passes ``horizon`` are treated as infinite.
    """
    exact = None
    hint = None
    if getattr(a, "is_descriptor", False) and getattr(b, "is_descriptor", False):
        for d in (a, b):
            require_valid(d) if isinstance(d, PeriodicDescriptor) else d.require_valid()
        mod = lcm(a.row_period(LO), b.row_period(UP))
        exact = (max(a.stable, b.stable), mod)
        hint = a.boundary + b.boundary + 8 * mod + 2 * (a.spill + b.spill)

    def oracle(v):
        row, i = v
        if row == UP:
            q = a.partner((UP, i))
            if q is None or q[0] == UP:
                return q
            return _middle_walk(a, b, q[1], True, exact, horizon)
        q = b.partner((LO, i))
        if q is None or q[0] == LO:
            return q
        return _middle_walk(a, b, q[1], False, exact, horizon)

    return LazyDiagram(oracle, note="product", scan_hint=hint)


def compose_all_lazy(factors: Iterable[BrauerN], horizon: int = DEFAULT_HORIZON) -> BrauerN:
    it = iter(factors)
    acc = next(it)
    for f in it:
        acc = compose_lazy(acc, f, horizon)
    return acc


def _sig(ld: BrauerN, row: int, i: int) -> tuple:
    w = ld.partner((row, i))
    if w is None:
        return S
    return ("T" if w[0] != row else "H", w[1] - i)


def detect_periodicity(ld: BrauerN, scan_bound: Optional[int] = None,
                       max_period: Optional[int] = None) -> Optional[PeriodicDescriptor]:
    """Find a descriptor agreeing with ``ld`` below ``scan_bound``, or None.

    The periodic tail must cover at least half of the scanned window and
    at least two full periods; the returned descriptor is validated.
    """
    if isinstance(ld, PeriodicDescriptor):
        return ld
    if scan_bound is None:
        scan_bound = ld.scan_hint or 256
    W = max(scan_bound, 16)
    sig = [[_sig(ld, row, i) for i in range(W)] for row in (UP, LO)]
    if max_period is None:
        max_period = W // 4
    for p in range(1, max_period + 1):
        last = -1
        for row in (UP, LO):
            s = sig[row]
            for i in range(W - p - 1, last, -1):
                if s[i] != s[i + p]:
                    last = i
                    break
        m = last + 1
        if m > W // 2 or W - m < 2 * p:
            continue
        cand = _build_from_sig(ld, sig, m, p)
        if cand is not None and all(cand.partner((row, i)) == ld.partner((row, i))
                                    for row in (UP, LO) for i in range(W)):
            return cand
    return None


def _build_from_sig(ld: BrauerN, sig, m: int, p: int) -> Optional[PeriodicDescriptor]:
    rules = [[None] * p for _ in (UP, LO)]
    for row in (UP, LO):
        for i in range(m, m + p):
            rules[row][i % p] = sig[row][i]
    edges = set()
    for row in (UP, LO):
        for i in range(m):
            w = ld.partner((row, i))
            if w is not None:
                edges.add(tuple(sorted([(row, i), w])))
    try:
        d = make_descriptor(p, rules[UP], rules[LO], m, edges)
    except OverlappingEdges:
        return None
    return d if is_valid(d) else None


# parameters

def _explicit_counts(d: PeriodicDescriptor, top: int) -> dict:
    c = dict(t=0, hv=0, hsv=0, s=0, ss=0, fix=0, sh=0, fail=0)
    for i in range(top):
        u = d.partner((UP, i))
        lo = d.partner((LO, i))
        if u is None:
            c["s"] += 1
        elif u[0] == UP:
            c["hv"] += 1
        else:
            c["t"] += 1
            c["fix" if u[1] == i else "sh"] += 1
        if lo is None:
            c["ss"] += 1
        elif lo[0] == LO:
            c["hsv"] += 1
        if (u is None or u[0] == UP) and (lo is None or lo[0] == LO):
            c["fail"] += 1
    return c


def _residue_kinds(d: PeriodicDescriptor) -> dict:
    k = dict(t=False, hv=False, hsv=False, s=False, ss=False, fix=False, sh=False, fail=False)
    for r in range(d.p):
        (uk, ud), (lk, _) = d.upper_rules[r], d.lower_rules[r]
        k["t"] |= uk == "T"
        k["fix"] |= uk == "T" and ud == 0
        k["sh"] |= uk == "T" and ud != 0
        k["hv"] |= uk == "H"
        k["s"] |= uk == "S"
        k["hsv"] |= lk == "H"
        k["ss"] |= lk == "S"
        k["fail"] |= uk != "T" and lk != "T"
    return k


def _counts(d: PeriodicDescriptor) -> dict:
    require_valid(d)
    top = d.boundary + d.spill
    fin = _explicit_counts(d, top)
    inf = _residue_kinds(d)
    out = {}
    for key, val in fin.items():
        if inf[key]:
            out[key] = ALEPH0
        elif key in ("hv", "hsv"):
            out[key] = Card(val // 2)
        else:
            out[key] = Card(val)
    return out


def params_periodic(d: PeriodicDescriptor) -> ParamProfile:
    c = _counts(d)
    h, hs = c["hv"], c["hsv"]
    defect = 2 * h + c["s"]
    codef = 2 * hs + c["ss"]
    return ParamProfile(c["t"], h, hs, c["s"], c["ss"], defect, codef, c["fix"], c["sh"],
                        defect + c["sh"])


def fail_periodic(d: PeriodicDescriptor) -> Card:
    return _counts(d)["fail"]


# comparison, involution, builders

def window_equal(a: BrauerN, b: BrauerN, N: int) -> bool:
    return all(a.partner((row, i)) == b.partner((row, i)) for row in (UP, LO) for i in range(N))


def window_mismatches(a: BrauerN, b: BrauerN, N: int) -> list:
    return [(row, i) for row in (UP, LO) for i in range(N)
            if a.partner((row, i)) != b.partner((row, i))]


def _flip(v: tuple) -> tuple:
    return (1 - v[0], v[1])


def star_periodic(d: BrauerN) -> BrauerN:
    if hasattr(d, "star"):
        return d.star()
    if isinstance(d, LazyDiagram):
        def oracle(v):
            w = d.partner(_flip(v))
            return None if w is None else _flip(w)
        return LazyDiagram(oracle, note=f"star of {d.note}", scan_hint=d.scan_hint)
    edges = [tuple(sorted((_flip(u), _flip(v)))) for u, v in d.prefix_edges]
    return make_descriptor(d.p, d.lower_rules, d.upper_rules, d.m, edges)


def identity_n() -> PeriodicDescriptor:
    return make_descriptor(1, [T(0)], [T(0)])


def empty_n() -> PeriodicDescriptor:
    return make_descriptor(1, [S], [S])


def shift(k: int = 1) -> PeriodicDescriptor:
    """i -> (i+k)'; the lower points 0'..(k-1)' are singletons."""
    prefix = [((UP, i), (LO, i + k)) for i in range(k)]
    return make_descriptor(1, [T(k)], [T(-k)], m=k, prefix=prefix)


def coshift(k: int = 1) -> PeriodicDescriptor:
    return star_periodic(shift(k))


def block_hooks(p: int, upper: dict, lower: dict) -> PeriodicDescriptor:
    """Descriptor from per-residue rule maps; missing residues are singletons."""
    return make_descriptor(p, [upper.get(r, S) for r in range(p)],
                           [lower.get(r, S) for r in range(p)])


def paired_hooks() -> list:
    """Rules for hooks {2i, 2i+1} with period 2."""
    return [H(1), H(-1)]


def lazy_from_function(fn: Callable, note: str = "") -> LazyDiagram:
    return LazyDiagram(fn, note=note)


def restrict_window(d: BrauerN, N: int) -> list:
    """Edges with both ends below N, as sorted vertex pairs."""
    out = set()
    for row in (UP, LO):
        for i in range(N):
            w = d.partner((row, i))
            if w is not None and w[1] < N:
                out.add(tuple(sorted([(row, i), w])))
    return sorted(out)


def random_descriptor(seed=None, max_p: int = 4, max_k: int = 1, max_m: int = 4) -> PeriodicDescriptor:
    """Random validated descriptor: a random residue pairing plus a random prefix."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    p = rng.randint(1, max_p)
    slots = [(row, r) for row in (UP, LO) for r in range(p)]
    rng.shuffle(slots)
    rules = {s: S for s in slots}
    while len(slots) >= 2:
        a = slots.pop()
        if rng.random() < 0.15:
            continue
        b = slots.pop()
        # distinct slots in one row have distinct residues, so d != 0 there
        d = b[1] - a[1] + p * rng.randint(-max_k, max_k)
        kind = "T" if a[0] != b[0] else "H"
        rules[a], rules[b] = (kind, d), (kind, -d)
    for r in range(p):
        if rules[(UP, r)] == S and rules[(LO, r)] == S and rng.random() < 0.5:
            rules[(UP, r)] = rules[(LO, r)] = T(0) if rng.random() < 0.5 else S
    upper = [rules[(UP, r)] for r in range(p)]
    lower = [rules[(LO, r)] for r in range(p)]
    base = make_descriptor(p, upper, lower, m=0)
    spill = base.spill
    M = spill + rng.randint(0, max_m)
    # natural partners, with negative targets dropped to singletons
    nat = {}
    for row in (UP, LO):
        for i in range(M + 2 * spill + p):
            w = base.partner((row, i))
            if w is not None and w[1] < 0:
                w = None
            nat[(row, i)] = w
    fixed_edges, free = set(), []
    for row in (UP, LO):
        for i in range(M):
            v = (row, i)
            w = nat[v]
            if w is not None and w[1] >= M:
                fixed_edges.add(tuple(sorted([v, w])))
            else:
                free.append(v)
    rng.shuffle(free)
    edges = set(fixed_edges)
    for k in range(0, len(free) - 1, 2):
        if rng.random() < 0.6:
            edges.add(tuple(sorted([free[k], free[k + 1]])))
    d = make_descriptor(p, upper, lower, m=M, prefix=edges)
    require_valid(d)
    return d


# text format

def _tag(u: tuple, v: tuple) -> tuple:
    if u[0] == v[0]:
        return ("UU" if u[0] == UP else "LL", u[1], v[1])
    up, lo = (u, v) if u[0] == UP else (v, u)
    return ("TU", up[1], lo[1])


def to_pbd_periodic(d: PeriodicDescriptor) -> str:
    lines = [f"pbd 1 periodic m={d.m} p={d.p}"]
    for tag, a, b in sorted(_tag(u, v) for u, v in d.prefix_edges):
        lines.append(f"{tag} {a} {b}")
    for name, rules in (("upper", d.upper_rules), ("lower", d.lower_rules)):
        for r, (kind, off) in enumerate(rules):
            lines.append(f"R {name} {r} S" if kind == "S" else f"R {name} {r} {kind} {off}")
    return "\n".join(lines) + "\n"


def parse_pbd_periodic(text: str) -> PeriodicDescriptor:
    from .diagram import _header_fields, _strip
    lines = _strip(text)
    if not lines or lines[0].split()[:3] != ["pbd", "1", "periodic"]:
        raise ParseError("expected header 'pbd 1 periodic m=<M> p=<P>'")
    f = _header_fields(lines[0])
    if "m" not in f or "p" not in f:
        raise ParseError("header needs m and p")
    p = f["p"]
    if p < 1 or f["m"] < 0:
        raise ParseError("need p >= 1 and m >= 0")
    rules = {"upper": [None] * p, "lower": [None] * p}
    edges = []
    for line in lines[1:]:
        tok = line.split()
        try:
            if tok[0] == "R":
                row, r = tok[1], int(tok[2])
                rules[row][r] = S if tok[3] == "S" else (tok[3], int(tok[4]))
            elif tok[0] in ("TU", "TL", "UU", "LL"):
                a, b = int(tok[1]), int(tok[2])
                ra, rb = {"TU": (UP, LO), "TL": (LO, UP), "UU": (UP, UP), "LL": (LO, LO)}[tok[0]]
                edges.append(((ra, a), (rb, b)))
            else:
                raise ParseError(f"bad line {line!r}")
        except (IndexError, KeyError, ValueError) as exc:
            raise ParseError(f"bad line {line!r}") from exc
    if any(x is None for rs in rules.values() for x in rs):
        raise ParseError("missing rule")
    return make_descriptor(p, rules["upper"], rules["lower"], f["m"], edges)


def parse_any(text: str):
    from .diagram import _strip, parse_pbd
    lines = _strip(text)
    head = lines[0] if lines else ""
    if "scaled" in head:
        from .scaled import parse_pbd_scaled
        return parse_pbd_scaled(text)
    return parse_pbd_periodic(text) if "periodic" in head else parse_pbd(text)
