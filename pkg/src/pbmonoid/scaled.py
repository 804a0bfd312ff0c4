"""Brauer graphs on N whose two rows advance at different speeds.

A periodic descriptor has bounded offsets, so a right unit given by one
always has finite codefect.  Here the upper row is cut into blocks of
size ``p`` starting at ``m`` and the lower row into blocks of size ``pl``
starting at ``ml``; block k of one row faces block k of the other.  This
expresses maps such as i -> 3i.

Rules per position in a block:

* ``("S", 0)``          singleton
* ``("H", d)``          hook to index ``i + d`` in the same row
* ``("T", dk, pos)``    transversal to position ``pos`` of block ``k + dk``
                        of the other row
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .cards import ALEPH0, Card
from .diagram import ParamProfile
from .errors import OverlappingEdges, ParseError, UnvalidatedDescriptor
from .periodic import LO, UP, ValidationReport, lcm


def TB(dk: int, pos: int) -> tuple:
    """Transversal rule into block k + dk, position pos."""
    return ("T", dk, pos)


@dataclass(frozen=True)
class ScaledDescriptor:
    m: int
    p: int
    ml: int
    pl: int
    prefix_edges: tuple
    upper_rules: tuple
    lower_rules: tuple
    _pmap: dict = field(default=None, compare=False, hash=False, repr=False)

    is_descriptor = True

    def __post_init__(self):
        if self.p < 1 or self.pl < 1:
            raise ValueError("block sizes must be positive")
        if len(self.upper_rules) != self.p or len(self.lower_rules) != self.pl:
            raise ValueError("need one rule per block position")
        pmap = {}
        for u, v in self.prefix_edges:
            for w in (u, v):
                if w in pmap:
                    raise OverlappingEdges(f"vertex {w} in two prefix edges")
            pmap[u], pmap[v] = v, u
        object.__setattr__(self, "_pmap", pmap)

    def row_start(self, row: int) -> int:
        return self.m if row == UP else self.ml

    def row_period(self, row: int) -> int:
        return self.p if row == UP else self.pl

    def rules(self, row: int) -> tuple:
        return self.upper_rules if row == UP else self.lower_rules

    def partner(self, v: tuple) -> Optional[tuple]:
        got = self._pmap.get(v, False)
        if got is not False:
            return got
        row, i = v
        start = self.row_start(row)
        if i < start:
            return None
        k, r = divmod(i - start, self.row_period(row))
        rule = self.rules(row)[r]
        if rule[0] == "S":
            return None
        if rule[0] == "H":
            return (row, i + rule[1])
        o = 1 - row
        return (o, self.row_start(o) + (k + rule[1]) * self.row_period(o) + rule[2])

    @property
    def spill(self) -> int:
        return max([abs(r[1]) for r in self.upper_rules + self.lower_rules if r[0] == "H"], default=0)

    @property
    def max_block_shift(self) -> int:
        return max([abs(r[1]) for r in self.upper_rules + self.lower_rules if r[0] == "T"], default=0)

    @property
    def boundary(self) -> int:
        top = max((w[1] + 1 for e in self.prefix_edges for w in e), default=0)
        return max(self.m, self.ml, top)

    @property
    def stable(self) -> int:
        """At or above this index a vertex and its partner follow the rules."""
        B = self.boundary
        return B + self.spill + max(self.p, self.pl) * (2 + self.max_block_shift + B)

    @property
    def set_period(self) -> int:
        return lcm(self.p, self.pl)

    @property
    def set_threshold(self) -> int:
        """Vertex classes (including fixed points) are periodic from here on."""
        thr = self.stable
        if self.p == self.pl:
            return thr
        for r, rule in enumerate(self.upper_rules):
            if rule[0] != "T":
                continue
            c = self.ml - self.m + rule[1] * self.pl + rule[2] - r
            slope = self.pl - self.p
            if c % slope == 0 and -c // slope >= 0:
                thr = max(thr, self.m + (-c // slope) * self.p + r + 1)
        return thr

    def star(self) -> "ScaledDescriptor":
        flip = lambda w: (1 - w[0], w[1])
        edges = [tuple(sorted((flip(u), flip(v)))) for u, v in self.prefix_edges]
        return make_scaled(self.pl, self.lower_rules, self.p, self.upper_rules,
                           m=self.ml, ml=self.m, prefix=edges)

    def __repr__(self) -> str:
        return (f"ScaledDescriptor(m={self.m}, p={self.p}, ml={self.ml}, pl={self.pl}, "
                f"prefix={list(self.prefix_edges)}, upper={list(self.upper_rules)}, "
                f"lower={list(self.lower_rules)})")

    # validation hooks used by the composition engine
    def validate(self) -> ValidationReport:
        return validate_scaled(self)

    def require_valid(self) -> None:
        rep = validate_scaled(self)
        if not rep.ok:
            raise UnvalidatedDescriptor(str(rep.violations[0]))


def make_scaled(p: int, upper: Iterable, pl: int, lower: Iterable, m: int = 0, ml: int = 0,
                prefix: Iterable = ()) -> ScaledDescriptor:
    edges = tuple(sorted(tuple(sorted(e)) for e in prefix))
    return ScaledDescriptor(m, p, ml, pl, edges, tuple(upper), tuple(lower))


_valid_cache: dict = {}


def validate_scaled(d: ScaledDescriptor) -> ValidationReport:
    hit = _valid_cache.get(id(d))
    if hit is not None and hit[0] is d:
        return hit[1]
    bad = []
    for row in (UP, LO):
        P = d.row_period(row)
        for r, rule in enumerate(d.rules(row)):
            if rule[0] == "H":
                if rule[1] == 0:
                    bad.append(("AsymmetricRule", f"row {row} position {r}: hook to itself"))
                    continue
                back = d.rules(row)[(r + rule[1]) % P]
                if back != ("H", -rule[1]):
                    bad.append(("AsymmetricRule", f"row {row} position {r}: {rule} vs {back}"))
            elif rule[0] == "T":
                o = 1 - row
                if not 0 <= rule[2] < d.row_period(o):
                    bad.append(("AsymmetricRule", f"row {row} position {r}: target out of block"))
                    continue
                back = d.rules(o)[rule[2]]
                if back != ("T", -rule[1], r):
                    bad.append(("AsymmetricRule", f"row {row} position {r}: {rule} vs {back}"))
    for e in d.prefix_edges:
        for w in e:
            if w[1] < 0:
                bad.append(("NegativeIndex", f"prefix vertex {w}"))
    if not bad:
        top = d.stable + 2 * lcm(d.p, d.pl) + 1
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
    rep = ValidationReport(not bad, tuple(bad[:20]))
    _valid_cache[id(d)] = (d, rep)
    return rep


def params_scaled(d: ScaledDescriptor) -> ParamProfile:
    d.require_valid()
    return window_params(d, d.set_threshold, d.set_period)


def window_params(d, thr: int, period: int) -> ParamProfile:
    """Exact profile of a graph whose vertex classes are periodic from ``thr``."""
    fin = dict(t=0, hv=0, hsv=0, s=0, ss=0, fix=0, sh=0)
    inf = {k: False for k in fin}
    for i in range(thr + period):
        u = d.partner((UP, i))
        lo = d.partner((LO, i))
        keys = []
        if u is None:
            keys.append("s")
        elif u[0] == UP:
            keys.append("hv")
        else:
            keys += ["t", "fix" if u[1] == i else "sh"]
        if lo is None:
            keys.append("ss")
        elif lo[0] == LO:
            keys.append("hsv")
        for k in keys:
            if i < thr:
                fin[k] += 1
            else:
                inf[k] = True
    out = {}
    for k, v in fin.items():
        if inf[k]:
            out[k] = ALEPH0
        else:
            out[k] = Card(v // 2 if k in ("hv", "hsv") else v)
    h, hs = out["hv"], out["hsv"]
    defect = 2 * h + out["s"]
    codef = 2 * hs + out["ss"]
    return ParamProfile(out["t"], h, hs, out["s"], out["ss"], defect, codef, out["fix"],
                        out["sh"], defect + out["sh"])


# text format

def to_pbd_scaled(d: ScaledDescriptor) -> str:
    from .periodic import _tag
    lines = [f"pbd 1 scaled m={d.m} p={d.p} ml={d.ml} pl={d.pl}"]
    for tag, a, b in sorted(_tag(u, v) for u, v in d.prefix_edges):
        lines.append(f"{tag} {a} {b}")
    for name, rules in (("upper", d.upper_rules), ("lower", d.lower_rules)):
        for r, rule in enumerate(rules):
            lines.append(f"R {name} {r} " + " ".join(str(x) for x in (rule[:1] if rule[0] == "S" else rule)))
    return "\n".join(lines) + "\n"


def parse_pbd_scaled(text: str) -> ScaledDescriptor:
    from .diagram import _header_fields, _strip
    lines = _strip(text)
    if not lines or lines[0].split()[:3] != ["pbd", "1", "scaled"]:
        raise ParseError("expected header 'pbd 1 scaled m=<M> p=<P> ml=<ML> pl=<PL>'")
    f = _header_fields(lines[0])
    if any(k not in f for k in ("m", "p", "ml", "pl")):
        raise ParseError("header needs m, p, ml and pl")
    if min(f["p"], f["pl"]) < 1 or min(f["m"], f["ml"]) < 0:
        raise ParseError("periods must be positive and offsets non-negative")
    rules = {"upper": [None] * f["p"], "lower": [None] * f["pl"]}
    edges = []
    for line in lines[1:]:
        tok = line.split()
        try:
            if tok[0] == "R":
                kind = tok[3]
                if kind == "S":
                    rule = ("S", 0)
                elif kind == "H":
                    rule = ("H", int(tok[4]))
                elif kind == "T":
                    rule = ("T", int(tok[4]), int(tok[5]))
                else:
                    raise ParseError(f"bad rule {line!r}")
                rules[tok[1]][int(tok[2])] = rule
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
    return make_scaled(f["p"], rules["upper"], f["pl"], rules["lower"], f["m"], f["ml"], edges)


# builders

def spread(factor: int, lower_fill: str = "hooks") -> ScaledDescriptor:
    """Right unit i -> (factor*i)'; the other lower points form hooks or singletons.

    With ``lower_fill="hooks"`` and factor 3 this is i -> 3i with lower
    hooks {3i+1, 3i+2}.
    """
    lower = [TB(0, 0)]
    rest = factor - 1
    if lower_fill == "hooks":
        if rest % 2:
            raise ValueError("hooks need an even number of spare points per block")
        for j in range(rest):
            lower.append(("H", 1) if j % 2 == 0 else ("H", -1))
    else:
        lower += [("S", 0)] * rest
    return make_scaled(1, [TB(0, 0)], factor, lower)


def squeeze(factor: int, upper_fill: str = "hooks") -> ScaledDescriptor:
    """The mirror image of :func:`spread`: a left unit."""
    return spread(factor, upper_fill).star()
