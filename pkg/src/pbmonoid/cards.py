"""Cardinals in N ∪ {aleph_0} with saturating arithmetic.

Plain ``int`` values are accepted wherever a :class:`Card` is, so finite
parameter profiles can stay integer-valued.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Union


@total_ordering
@dataclass(frozen=True)
class Card:
    """A finite natural number, or aleph_0 when ``finite`` is None."""

    finite: Union[int, None]

    def __post_init__(self):
        if self.finite is not None and self.finite < 0:
            raise ValueError("negative cardinal")

    @property
    def is_infinite(self) -> bool:
        return self.finite is None

    @staticmethod
    def of(x: "CardLike") -> "Card":
        if isinstance(x, Card):
            return x
        return Card(int(x))

    def __add__(self, other: "CardLike") -> "Card":
        o = Card.of(other)
        if self.finite is None or o.finite is None:
            return ALEPH0
        return Card(self.finite + o.finite)

    __radd__ = __add__

    def __mul__(self, k: "CardLike") -> "Card":
        o = Card.of(k)
        if self.finite == 0 or o.finite == 0:
            return Card(0)
        if self.finite is None or o.finite is None:
            return ALEPH0
        return Card(self.finite * o.finite)

    __rmul__ = __mul__

    def _key(self):
        return (1, 0) if self.finite is None else (0, self.finite)

    def __eq__(self, other):
        if isinstance(other, (Card, int)):
            return self._key() == Card.of(other)._key()
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, (Card, int)):
            return self._key() < Card.of(other)._key()
        return NotImplemented

    def __bool__(self) -> bool:
        return self.finite != 0

    def __hash__(self):
        return hash(self.finite) if self.finite is not None else hash("aleph0")

    def __str__(self) -> str:
        return "aleph0" if self.finite is None else str(self.finite)

    __repr__ = __str__


CardLike = Union[Card, int]
ALEPH0 = Card(None)


def card_max(*xs: CardLike) -> Card:
    return max(Card.of(x) for x in xs)


def to_json(x: CardLike):
    x = Card.of(x)
    return "aleph0" if x.is_infinite else x.finite
