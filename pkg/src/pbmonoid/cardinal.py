"""Symbolic relative ranks, Sierpinski ranks and Bergman property.

Cardinals are finite naturals, aleph_n, 2^(aleph_n) or the marker
infinity (for Sierpinski ranks that do not exist).  An aleph index is a
natural number; anything else (for instance the string ``"omega"``)
stands for an index that is not a natural number.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Union

from .classify import MonoidClass as M
from .errors import IndexUnsupported, PairNotCovered, Unsupported

Index = Union[int, str]


@dataclass(frozen=True)
class CardExpr:
    tag: str            # "finite", "aleph", "pow" or "inf"
    value: Index = 0

    def __post_init__(self):
        if self.tag not in ("finite", "aleph", "pow", "inf"):
            raise ValueError(f"bad tag {self.tag!r}")
        if self.tag == "finite" and (not isinstance(self.value, int) or self.value < 0):
            raise ValueError("finite value must be a natural number")

    @property
    def natural_index(self) -> bool:
        return isinstance(self.value, int)

    def _rank(self):
        """Sort key, or None where the order is not decided by ZFC alone."""
        if self.tag == "finite":
            return (0, self.value)
        if self.tag == "inf":
            return (3, 0)
        return None

    def __add__(self, other: "CardExpr") -> "CardExpr":
        other = _coerce(other)
        if self.tag == "finite" and other.tag == "finite":
            return Finite(self.value + other.value)
        if self.tag == "finite":
            return other
        if other.tag == "finite":
            return self
        return max(self, other)

    __radd__ = __add__

    def __mul__(self, k: int) -> "CardExpr":
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        if k == 0:
            return Finite(0)
        return Finite(self.value * k) if self.tag == "finite" else self

    __rmul__ = __mul__

    def __lt__(self, other: "CardExpr") -> bool:
        other = _coerce(other)
        if self == other:
            return False
        a, b = self._rank(), other._rank()
        if a is not None and b is not None:
            return a < b
        if self.tag == "finite" or other.tag == "inf":
            return True
        if other.tag == "finite" or self.tag == "inf":
            return False
        if not (self.natural_index and other.natural_index):
            raise Unsupported(f"cannot compare {self} and {other}")
        i, j = self.value, other.value
        if self.tag == other.tag:
            return i < j
        if self.tag == "aleph":          # aleph_i < 2^aleph_j whenever i <= j
            if i <= j:
                return True
        elif j <= i:                      # 2^aleph_i > aleph_j whenever j <= i
            return False
        raise Unsupported(f"order of {self} and {other} is not decided")

    def __le__(self, other):
        return self == _coerce(other) or self < other

    def __gt__(self, other):
        return _coerce(other) < self

    def __ge__(self, other):
        return _coerce(other) <= self

    def __str__(self) -> str:
        if self.tag == "finite":
            return str(self.value)
        if self.tag == "aleph":
            return f"aleph_{self.value}"
        if self.tag == "pow":
            return f"2^aleph_{self.value}"
        return "inf"

    def to_json(self):
        return self.value if self.tag == "finite" else str(self)


def Finite(k: int) -> CardExpr:
    return CardExpr("finite", k)


def Aleph(n: Index) -> CardExpr:
    return CardExpr("aleph", n)


def PowAleph(n: Index) -> CardExpr:
    return CardExpr("pow", n)


INFINITY = CardExpr("inf")


def _coerce(x) -> CardExpr:
    if isinstance(x, CardExpr):
        return x
    if isinstance(x, int):
        return Finite(x)
    raise TypeError(f"not a cardinal: {x!r}")


def _aleph(x) -> CardExpr:
    if isinstance(x, int):
        return Aleph(x)
    if isinstance(x, CardExpr) and x.tag == "aleph":
        return x
    raise IndexUnsupported(f"expected an infinite cardinal aleph_n, got {x!r}")


def rho(x) -> CardExpr:
    """Number of infinite cardinals not exceeding aleph_n, which is n + 1."""
    x = _aleph(x)
    if not x.natural_index:
        raise IndexUnsupported(f"aleph index {x.value!r} is not a natural number")
    return Finite(x.value + 1)


# relative ranks: (top, base) -> function of |X|
def _const(k):
    return lambda x: Finite(k)


def _affine(a, b):
    return lambda x: Finite(a) + b * rho(x)


def _power(x):
    return PowAleph(_aleph(x).value)


_RELRANK = {
    (M.PB, M.S): _const(2),
    (M.PB, M.GL): _const(1),
    (M.PB, M.E): _const(2),
    (M.PB, M.F): _const(2),
    (M.PB, M.FL): _const(1),
    (M.FL, M.F): _affine(1, 1),
    (M.FL, M.E): _power,
    (M.FL, M.GL): _affine(2, 2),
    (M.FL, M.S): _affine(3, 3),
    (M.F, M.E): _power,
    (M.F, M.S): _affine(2, 2),
    (M.GL, M.S): _affine(2, 2),
}
_DUAL = {M.GL: M.GR, M.GR: M.GL, M.FL: M.FR, M.FR: M.FL}


def _dual(c: M) -> M:
    return _DUAL.get(c, c)


for (_t, _b), _f in list(_RELRANK.items()):
    _RELRANK.setdefault((_dual(_t), _dual(_b)), _f)

RELRANK_ROWS = [
    (M.PB, M.S), (M.PB, M.GL), (M.PB, M.GR), (M.PB, M.E), (M.PB, M.F), (M.PB, M.FL), (M.PB, M.FR),
    (M.FL, M.F), (M.FL, M.E), (M.FL, M.GL), (M.FL, M.S),
    (M.FR, M.F), (M.FR, M.E), (M.FR, M.GR), (M.FR, M.S),
    (M.F, M.E), (M.F, M.S), (M.GL, M.S), (M.GR, M.S),
]


def relrank(top: M, base: M, x) -> CardExpr:
    """Relative rank of ``top`` modulo ``base`` when |X| = x (an aleph)."""
    f = _RELRANK.get((top, base))
    if f is None:
        raise PairNotCovered(f"{top.value} modulo {base.value}")
    _aleph(x)
    return f(x)


def sierpinski(m: M, x) -> CardExpr:
    """Sierpinski rank of the monoid when |X| = x (an aleph, or a finite int/Finite)."""
    if isinstance(x, int) or (isinstance(x, CardExpr) and x.tag == "finite"):
        return Finite(finite_rank(m, _coerce(x).value))
    x = _aleph(x)
    if m in (M.PB, M.S):
        return Finite(2)
    if m is M.E:
        return INFINITY
    if not x.natural_index:
        return INFINITY
    n = x.value
    if m in (M.GL, M.GR, M.F):
        return Finite(2 * n + 6)
    if m in (M.FL, M.FR):
        return Finite(3 * n + 8)
    raise Unsupported(m.value)


def bergman(m: M) -> bool:
    """Whether the monoid on an infinite set has the semigroup Bergman property."""
    if m is M.PB:
        return True
    if m in (M.E, M.GL, M.GR, M.F, M.FL, M.FR):
        return False
    raise Unsupported(f"no statement for {m.value}")


def finite_rank(m: M, k: int) -> int:
    """Rank of the monoid on a k-point set, k >= 3."""
    if k < 3:
        raise Unsupported("finite ranks are tabulated for |X| >= 3")
    if m in (M.S, M.GL, M.GR):
        return 2
    if m in (M.PB, M.F, M.FL, M.FR):
        return 4
    if m is M.E:
        return 1 + comb(k + 1, 2)
    raise Unsupported(m.value)


SR_ROWS = [M.PB, M.E, M.GL, M.GR, M.F, M.FL, M.FR]


def table_rows(n: int) -> list:
    """(kind, label, value) rows for |X| = aleph_n."""
    x = Aleph(n)
    rows = [("relrank", f"{t.value} {b.value}", str(relrank(t, b, x))) for t, b in RELRANK_ROWS]
    rows += [("SR", m.value, str(sierpinski(m, x))) for m in SR_ROWS]
    rows += [("Bergman", m.value, "yes" if bergman(m) else "no") for m in SR_ROWS]
    return rows


def render_table(n: int) -> str:
    lines = [f"|X| = aleph_{n}  rho = {rho(n)}"]
    lines += [f"{kind} {label} = {value}" for kind, label, value in table_rows(n)]
    return "\n".join(lines) + "\n"
