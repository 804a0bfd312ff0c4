"""Enumeration of finitely generated submonoids of PB_n.

:func:`closure` runs a breadth-first search under right multiplication
by the generators, recording a shortest generator word per element and
the right Cayley graph.  Results can be cached on disk in a small binary
format (magic ``PBC1``).
"""
from __future__ import annotations

import os
import struct
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .diagram import (Diagram, canonical_encode, compose, decode, enumerate_all, from_permutation,
                      identity, is_idempotent, make_diagram)
from .errors import CapExceeded, CorruptCache, PBError, SizeMismatch

DEFAULT_CAP = 10 ** 6
MAGIC = b"PBC1"


@dataclass(frozen=True)
class ClosureResult:
    n: int
    gens: tuple
    include_identity: bool
    elements: tuple          # Diagrams in BFS order
    words: dict              # encoding -> tuple of generator indices
    cayley: tuple            # cayley[i][g] = index of elements[i] * gens[g]

    @property
    def encodings(self) -> frozenset:
        return frozenset(self.words)

    def index(self, a: Diagram) -> int:
        return self._index[canonical_encode(a)]

    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {canonical_encode(e): i for i, e in enumerate(self.elements)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def __contains__(self, a: Diagram) -> bool:
        return canonical_encode(a) in self.words

    def __len__(self) -> int:
        return len(self.elements)

    def evaluate(self, word: Sequence[int]) -> Diagram:
        acc = identity(self.n)
        for g in word:
            acc = compose(acc, self.gens[g])
        return acc


def _common_n(gens: Sequence[Diagram], n: Optional[int]) -> int:
    sizes = {g.n for g in gens}
    if n is not None:
        sizes.add(n)
    if len(sizes) > 1:
        raise SizeMismatch(f"generators on different ground sets {sorted(sizes)}")
    if not sizes:
        raise SizeMismatch("no generators and no n given")
    return sizes.pop()


def closure(gens: Sequence[Diagram], include_identity: bool = True, cap: int = DEFAULT_CAP,
            n: Optional[int] = None, threads: int = 1) -> ClosureResult:
    """The monoid (or semigroup, without ``include_identity``) generated by ``gens``.

    Products of a BFS layer are computed in batches, optionally on a thread
    pool; insertion happens in a fixed order so the result does not depend
    on ``threads``.
    """
    gens = tuple(gens)
    n = _common_n(gens, n)
    elements, words, rows = [], {}, []
    index = {}

    def add(d: Diagram, word: tuple) -> bool:
        key = canonical_encode(d)
        if key in index:
            return False
        if len(elements) >= cap:
            raise CapExceeded(f"more than {cap} elements")
        index[key] = len(elements)
        elements.append(d)
        words[key] = word
        return True

    if include_identity:
        add(identity(n), ())
    for k, g in enumerate(gens):
        add(g, (k,))
    frontier = list(range(len(elements)))
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        while frontier:
            def products(i):
                e = elements[i]
                return [compose(e, g) for g in gens]
            batch = list(pool.map(products, frontier)) if pool else [products(i) for i in frontier]
            nxt = []
            for i, prods in zip(frontier, batch):
                w = words[canonical_encode(elements[i])]
                for k, p in enumerate(prods):
                    if add(p, w + (k,)):
                        nxt.append(len(elements) - 1)
            frontier = nxt
    finally:
        if pool:
            pool.shutdown()
    for e in elements:
        rows.append(tuple(index[canonical_encode(compose(e, g))] for g in gens))
    res = ClosureResult(n, gens, include_identity, tuple(elements), words, tuple(rows))
    object.__setattr__(res, "_idx", index)
    return res


# generating sets

def symmetric_gens(n: int) -> list:
    """A transposition and an n-cycle (just the identity for n = 1)."""
    if n == 1:
        return [identity(1)]
    out = [from_permutation([2, 1] + list(range(3, n + 1)))]
    if n > 2:
        out.append(from_permutation(list(range(2, n + 1)) + [1]))
    return out


def symmetric_group(n: int) -> list:
    return [from_permutation(p) for p in permutations(range(1, n + 1))]


def idempotent_set(n: int) -> list:
    """All idempotents of PB_n."""
    return [a for a in enumerate_all(n) if is_idempotent(a)]


def epsilon(n: int, x: int) -> Diagram:
    """x and x' singletons, identity elsewhere."""
    return make_diagram(n, [(i, i) for i in range(1, n + 1) if i != x])


def eta(n: int, x: int, y: int) -> Diagram:
    """Hooks {x, y} and {x', y'}, identity elsewhere."""
    return make_diagram(n, [(i, i) for i in range(1, n + 1) if i not in (x, y)], [(x, y)], [(x, y)])


def small_idempotent_gens(n: int) -> list:
    """The identity, every epsilon_x and every eta_xy: 1 + C(n+1, 2) elements."""
    out = [identity(n)] + [epsilon(n, x) for x in range(1, n + 1)]
    out += [eta(n, x, y) for x, y in combinations(range(1, n + 1), 2)]
    return out


def pb_pair(n: int) -> tuple:
    """alpha with one hook in each row, beta with one singleton in each row."""
    rest = [(i, i) for i in range(3, n + 1)]
    alpha = make_diagram(n, rest, [(1, 2)], [(1, 2)])
    beta = make_diagram(n, [(i, i) for i in range(2, n + 1)])
    return alpha, beta


def _as_target(target) -> frozenset:
    if isinstance(target, ClosureResult):
        return target.encodings
    return frozenset(t if isinstance(t, bytes) else canonical_encode(t) for t in target)


def is_generating(gens: Sequence[Diagram], target, n: Optional[int] = None,
                  include_identity: bool = False) -> bool:
    """Whether ``gens`` generate exactly ``target`` (a semigroup by default)."""
    tgt = _as_target(target)
    if not gens and not include_identity:
        return not tgt
    if n is None and not gens:
        n = decode(next(iter(tgt))).n
    try:
        got = closure(gens, include_identity, cap=len(tgt), n=n)
    except CapExceeded:
        return False
    return got.encodings == tgt


def unit_orbits(elements: Iterable[Diagram], n: int) -> list:
    """Partition into S_n x S_n orbits, each sorted by encoding; orbits in order of their least element."""
    sg = symmetric_gens(n)
    pool = {canonical_encode(e): e for e in elements}
    seen, orbits = set(), []
    for key in sorted(pool):
        if key in seen:
            continue
        orb, stack = {key: pool[key]}, [pool[key]]
        while stack:
            a = stack.pop()
            for g in sg:
                for b in (compose(g, a), compose(a, g)):
                    k = canonical_encode(b)
                    if k not in orb:
                        orb[k] = b
                        stack.append(b)
        seen |= set(orb)
        orbits.append([orb[k] for k in sorted(orb)])
    return orbits


def relrank_search(target, base: Sequence[Diagram], k_max: int, n: Optional[int] = None):
    """A smallest U with <base ∪ U> = target, or None if none has size <= k_max.

    When ``base`` contains S_n every element of U may be replaced by any
    element of its S_n x S_n orbit without changing the generated monoid,
    so candidates are drawn from one representative per orbit.
    """
    tgt = _as_target(target)
    base = list(base)
    n = n or (base[0].n if base else decode(next(iter(tgt))).n)
    have = closure(base, True, n=n).encodings
    if have == tgt:
        return []
    cands = [decode(k) for k in sorted(tgt - have)]
    if set(map(canonical_encode, symmetric_group(n))) <= have:
        cands = [orb[0] for orb in unit_orbits(cands, n)]
    for k in range(1, k_max + 1):
        for U in combinations(cands, k):
            try:
                got = closure(base + list(U), True, cap=len(tgt), n=n)
            except CapExceeded:
                continue
            if got.encodings == tgt:
                return list(U)
    return None


def rank_search(target, k_max: int, n: Optional[int] = None):
    """A smallest generating set of ``target`` (as a semigroup) of size <= k_max, else None."""
    tgt = _as_target(target)
    cands = [decode(k) for k in sorted(tgt)]
    for k in range(1, k_max + 1):
        for U in combinations(cands, k):
            if is_generating(list(U), tgt, n=n):
                return list(U)
    return None


# on-disk cache

def fnv1a64(data: bytes) -> int:
    h = 0xcbf29ce484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001b3) & 0xFFFFFFFFFFFFFFFF
    return h


def cache_key(gens: Sequence[Diagram], include_identity: bool) -> str:
    blob = bytes([1 if include_identity else 0]) + b"".join(
        len(e).to_bytes(2, "big") + e for e in map(canonical_encode, gens))
    return f"{fnv1a64(blob):016x}"


def cache_dir(path=None) -> Path:
    return Path(path or os.environ.get("PBW_CACHE_DIR") or "cache")


def _pack(res: ClosureResult) -> bytes:
    out = [MAGIC, struct.pack(">HBI", len(res.gens), int(res.include_identity), len(res.elements)),
           struct.pack(">H", res.n)]
    for g in res.gens:
        e = canonical_encode(g)
        out.append(struct.pack(">H", len(e)) + e)
    for el, row in zip(res.elements, res.cayley):
        e = canonical_encode(el)
        w = res.words[e]
        out.append(struct.pack(">H", len(e)) + e)
        out.append(struct.pack(f">H{len(w)}H", len(w), *w))
        out.append(struct.pack(f">{len(row)}I", *row))
    return b"".join(out)


def _unpack(data: bytes) -> ClosureResult:
    if data[:4] != MAGIC:
        raise CorruptCache(f"bad header {data[:4]!r}")
    try:
        ng, inc, ne = struct.unpack_from(">HBI", data, 4)
        pos = 11
        (n,) = struct.unpack_from(">H", data, pos)
        pos += 2

        def blob():
            nonlocal pos
            (ln,) = struct.unpack_from(">H", data, pos)
            b = data[pos + 2:pos + 2 + ln]
            pos += 2 + ln
            return b

        gens = tuple(decode(blob()) for _ in range(ng))
        elements, words, rows = [], {}, []
        for _ in range(ne):
            e = blob()
            (wl,) = struct.unpack_from(">H", data, pos)
            w = struct.unpack_from(f">{wl}H", data, pos + 2)
            pos += 2 + 2 * wl
            row = struct.unpack_from(f">{ng}I", data, pos)
            pos += 4 * ng
            elements.append(decode(e))
            words[e] = tuple(w)
            rows.append(tuple(row))
        if pos != len(data):
            raise CorruptCache("trailing bytes")
    except (struct.error, ValueError, PBError) as exc:
        raise CorruptCache(str(exc)) from exc
    return ClosureResult(n, gens, bool(inc), tuple(elements), words, tuple(rows))


def cache_store(res: ClosureResult, directory=None) -> Path:
    d = cache_dir(directory)
    d.mkdir(parents=True, exist_ok=True)
    path = d / f"{cache_key(res.gens, res.include_identity)}.pbc"
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    with os.fdopen(fd, "wb") as fh:
        fh.write(_pack(res))
    os.replace(tmp, path)
    return path


def cache_load(gens: Sequence[Diagram], include_identity: bool = True, directory=None):
    path = cache_dir(directory) / f"{cache_key(gens, include_identity)}.pbc"
    if not path.exists():
        return None
    return load_file(path)


def load_file(path) -> ClosureResult:
    return _unpack(Path(path).read_bytes())


def save_file(res: ClosureResult, path) -> None:
    Path(path).write_bytes(_pack(res))


def cached_closure(gens: Sequence[Diagram], include_identity: bool = True, directory=None,
                   **kw) -> ClosureResult:
    hit = cache_load(gens, include_identity, directory)
    if hit is not None:
        return hit
    res = closure(gens, include_identity, **kw)
    cache_store(res, directory)
    return res
