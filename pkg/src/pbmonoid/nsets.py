"""Subsets of N that can be enumerated in increasing order.

:class:`PeriodicSet` is exact for sets that are eventually periodic, which
covers every vertex class of a descriptor.  :class:`ScanSet` handles an
arbitrary infinite subset by scanning with a memo.
"""
from __future__ import annotations

import threading
from bisect import bisect_left
from typing import Callable, Optional

from .cards import ALEPH0, Card
from .periodic import LO, UP


class PeriodicSet:
    """``pred`` restricted to i >= threshold must have period ``period``."""

    def __init__(self, pred: Callable[[int], bool], threshold: int, period: int):
        self.threshold, self.period = threshold, period
        self.explicit = [i for i in range(threshold) if pred(i)]
        self._explicit_set = set(self.explicit)
        self.residues = [r for r in range(period) if pred(threshold + r)]
        self._res_pos = {r: k for k, r in enumerate(self.residues)}

    @property
    def finite(self) -> bool:
        return not self.residues

    @property
    def size(self) -> Card:
        return Card(len(self.explicit)) if self.finite else ALEPH0

    def __contains__(self, i: int) -> bool:
        if i < self.threshold:
            return i in self._explicit_set
        return (i - self.threshold) % self.period in self._res_pos

    def nth(self, k: int) -> Optional[int]:
        """The k-th element (0-based), or None past the end."""
        if k < len(self.explicit):
            return self.explicit[k]
        if self.finite:
            return None
        q, r = divmod(k - len(self.explicit), len(self.residues))
        return self.threshold + q * self.period + self.residues[r]

    def index(self, i: int) -> int:
        """Position of the member i in increasing order."""
        if i < self.threshold:
            return bisect_left(self.explicit, i)
        q, r = divmod(i - self.threshold, self.period)
        return len(self.explicit) + q * len(self.residues) + self._res_pos[r]

    def take(self, k: int) -> list:
        out = []
        for j in range(k):
            x = self.nth(j)
            if x is None:
                break
            out.append(x)
        return out


class ScanSet:
    """An infinite subset of N given by a membership test."""

    def __init__(self, pred: Callable[[int], bool]):
        self._pred = pred
        self._items: list = []
        self._next = 0
        self._lock = threading.Lock()

    def _grow_to_index(self, i: int) -> None:
        while self._next <= i:
            if self._pred(self._next):
                self._items.append(self._next)
            self._next += 1

    def nth(self, k: int) -> int:
        with self._lock:
            while len(self._items) <= k:
                self._grow_to_index(self._next)
            return self._items[k]

    def index(self, i: int) -> int:
        with self._lock:
            self._grow_to_index(i)
            return bisect_left(self._items, i)


# vertex classes of a descriptor

def _kind(d, row: int, i: int) -> str:
    w = d.partner((row, i))
    if w is None:
        return "S"
    return "T" if w[0] != row else "H"


def vertex_set(d, name: str) -> PeriodicSet:
    """One of dom, codom, defect, codef, fix, sh, fail, upper_hook_min,
    lower_hook_min, upper_singleton, lower_singleton."""
    def pred(i: int) -> bool:
        if name == "dom":
            return _kind(d, UP, i) == "T"
        if name == "codom":
            return _kind(d, LO, i) == "T"
        if name == "defect":
            return _kind(d, UP, i) != "T"
        if name == "codef":
            return _kind(d, LO, i) != "T"
        if name == "fix":
            return d.partner((UP, i)) == (LO, i)
        if name == "sh":
            w = d.partner((UP, i))
            return w is not None and w[0] == LO and w[1] != i
        if name == "fail":
            return _kind(d, UP, i) != "T" and _kind(d, LO, i) != "T"
        if name in ("upper_hook_min", "lower_hook_min"):
            row = UP if name.startswith("upper") else LO
            w = d.partner((row, i))
            return w is not None and w[0] == row and w[1] > i
        if name == "upper_singleton":
            return _kind(d, UP, i) == "S"
        if name == "lower_singleton":
            return _kind(d, LO, i) == "S"
        raise ValueError(f"unknown vertex set {name!r}")

    return PeriodicSet(pred, d.set_threshold, d.set_period)
