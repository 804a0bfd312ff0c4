"""Constructive factorizations.

Finite diagrams use 1-based labels, descriptors on N use 0-based ones.
Each construction returns its factors; the tests recompose them.
"""
from __future__ import annotations

from typing import Callable, Iterable, NamedTuple, Optional, Sequence, Union

from .cards import ALEPH0
from .classify import profile
from .diagram import (Diagram, compose, cycle_trail_decompose, from_partial_map,
                      make_diagram, params, star, vertex_sets)
from .errors import (DetectionFailed, NotACycle, NotATrail, NotInF, NotInFL,
                     PreconditionViolated, SizeMismatch, UnsupportedShape, WrongAmbientSize)
from .nsets import PeriodicSet, ScanSet, vertex_set
from .periodic import (LO, UP, BrauerN, LazyDiagram, PeriodicDescriptor, compose_lazy,
                       detect_periodicity, params_periodic, require_valid,
                       star_periodic, window_equal)

Brauer = Union[Diagram, PeriodicDescriptor, LazyDiagram]


class Blocks(NamedTuple):
    """Edges of one factor, as label pairs: transversals, upper hooks, lower hooks."""
    T: list
    U: list
    L: list


def blocks_to_diagram(n: int, b: Blocks) -> Diagram:
    return make_diagram(n, b.T, b.U, b.L)


def blocks_to_pmap(b: Blocks) -> dict:
    """Vertex -> partner map with vertices as (row, label)."""
    pm = {}
    for (x, y), kinds in [(e, (UP, LO)) for e in b.T] + [(e, (UP, UP)) for e in b.U] + \
            [(e, (LO, LO)) for e in b.L]:
        u, v = (kinds[0], x), (kinds[1], y)
        pm[u], pm[v] = v, u
    return pm


# finite: units and one-sided units

def factor_unit_regular(a: Diagram):
    """a = e g with e idempotent and g a permutation (requires defect = codef)."""
    p = params(a)
    if p.defect != p.codef:
        raise NotInF(f"defect {p.defect} != codef {p.codef}")
    vs = vertex_sets(a)
    perm = {x: y for x, y in a.transversals()}
    perm.update(zip(sorted(vs.defect), sorted(vs.codef)))
    g = from_partial_map(a.n, perm)
    e = compose(a, star(g))
    return e, g


def factor_E_GL(a: Brauer, scan_bound: Optional[int] = None):
    """a = e l with e idempotent and l a left unit (requires codef <= defect)."""
    if isinstance(a, Diagram):
        return _factor_E_GL_finite(a)
    return _factor_E_GL_periodic(a, scan_bound)


def _factor_E_GL_finite(a: Diagram):
    vs = vertex_sets(a)
    codef, defect = sorted(vs.codef), sorted(vs.defect)
    if len(codef) > len(defect):
        raise NotInFL("codef exceeds defect")
    phi = dict(zip(codef, defect))
    # upper singletons left unmatched by phi stay fixed, so e = 1 for units
    spare = [y for y in defect if a.partner[y] == 0 and y not in phi.values()]
    e = make_diagram(a.n, [(x, x) for x in sorted(vs.dom) + spare], a.upper_hooks(),
                     [(phi[x], phi[y]) for x, y in a.lower_hooks()])
    l = make_diagram(a.n, a.transversals() + [(phi[x], x) for x in codef])
    return e, l


def _factor_E_GL_periodic(a: PeriodicDescriptor, scan_bound: Optional[int]):
    pa = profile(a)
    if pa.codef > pa.defect:
        raise NotInFL(f"codef {pa.codef} > defect {pa.defect}")
    dom = vertex_set(a, "dom")
    codef = vertex_set(a, "codef")
    defect = vertex_set(a, "defect")
    ncodef = len(codef.explicit) if codef.finite else None

    def phi(x):
        return defect.nth(codef.index(x))

    def phi_inv(y):
        if y not in defect:
            return None
        k = defect.index(y)
        if ncodef is not None and k >= ncodef:
            return None
        return codef.nth(k)

    def e_oracle(v):
        row, i = v
        if i in dom:
            return (1 - row, i)
        if row == UP:
            w = a.partner(v)
            if w is None and phi_inv(i) is None:
                return (LO, i)
            return w
        x = phi_inv(i)
        if x is None:
            return (UP, i) if a.partner((UP, i)) is None else None
        w = a.partner((LO, x))
        return None if w is None else (LO, phi(w[1]))

    def l_oracle(v):
        row, i = v
        if row == UP:
            if i in dom:
                return a.partner(v)
            x = phi_inv(i)
            return None if x is None else (LO, x)
        w = a.partner(v)
        if w is not None and w[0] == UP:
            return w
        return (UP, phi(i))

    scan = scan_bound or 4 * (a.stable + 8 * a.p) + 64
    e, l = LazyDiagram(e_oracle, "E part"), LazyDiagram(l_oracle, "left unit part")
    if isinstance(a, PeriodicDescriptor):
        return _detect(e, scan), _detect(l, scan)
    # two-speed inputs: factors need not be one-speed, keep them lazy
    return e, l


def conjugators(a: Diagram, b: Diagram):
    """Permutations (g, d) with b = g a d, or None when none exist."""
    if a.n != b.n:
        raise SizeMismatch(f"{a.n} != {b.n}")
    pa, pb = params(a), params(b)
    if (pa.t, pa.h, pa.hstar, pa.s, pa.sstar) != (pb.t, pb.h, pb.hstar, pb.s, pb.sstar):
        return None
    ta, tb = a.transversals(), b.transversals()
    g, d = {}, {}
    for (xa, ya), (xb, yb) in zip(ta, tb):
        g[xb], d[ya] = xa, yb
    for ha, hb in zip(a.upper_hooks(), b.upper_hooks()):
        g.update(zip(hb, ha))
    for ha, hb in zip(a.lower_hooks(), b.lower_hooks()):
        d.update(zip(ha, hb))
    g.update(zip(b.upper_singletons(), a.upper_singletons()))
    d.update(zip(a.lower_singletons(), b.lower_singletons()))
    return from_partial_map(a.n, g), from_partial_map(a.n, d)


# chains of idempotents for cycles and trails

def chain_blocks(xs: Sequence, gs: Sequence, gps: Sequence, closed: bool):
    """Three idempotents whose product maps xs[k] -> xs[k+1].

    ``gs`` and ``gps`` are the auxiliary points attached to each moved
    point; a closed chain also maps the last point back to the first.
    """
    m = len(xs)
    r = m if closed else m - 1
    if len(gs) != r or len(gps) != r:
        raise ValueError("need one pair of auxiliary points per moved point")
    beta = Blocks([(xs[k], xs[k]) for k in range(r)], [],
                  [(gs[k], gps[k]) for k in range(r)])
    gamma = Blocks([(gps[k], gps[k]) for k in range(r)],
                   [(xs[k], gs[k]) for k in range(r)],
                   [(gs[k], xs[(k + 1) % m]) for k in range(r)])
    delta = Blocks([(xs[k], xs[k]) for k in (range(m) if closed else range(1, m))],
                   [(gs[k], gps[k]) for k in range(r)], [])
    return beta, gamma, delta


def two_trail_blocks(a, b, c, d):
    """Three idempotents whose product is the pair of trails a -> c, b -> d."""
    eta = Blocks([(a, a), (b, b)], [], [(c, d)])
    sigma = Blocks([(a, a), (d, d)], [(b, c)], [(b, c)])
    pi = Blocks([(c, c), (d, d)], [(a, b)], [])
    return eta, sigma, pi


def mcycle(m: int) -> Diagram:
    """The m-cycle on points 1, 4, 7, ... inside 3m points."""
    xs = [3 * i + 1 for i in range(m)]
    return make_diagram(3 * m, [(xs[k], xs[(k + 1) % m]) for k in range(m)])


def mtrail(m: int) -> Diagram:
    """The m-trail on points 1, 4, 7, ... inside 3m - 2 points."""
    xs = [3 * i + 1 for i in range(m)]
    return make_diagram(3 * m - 2, list(zip(xs, xs[1:])))


def _single_part(a: Diagram, want_cycle: bool):
    err = NotACycle if want_cycle else NotATrail
    try:
        dec = cycle_trail_decompose(a)
    except Exception as exc:
        raise err(str(exc)) from exc
    cycles = [c for c in dec.cycles if len(c) >= 2]
    trails = [t for t in dec.trails if len(t) >= 2]
    if len(cycles) + len(trails) != 1:
        raise err(f"expected one non-trivial part, found {len(cycles) + len(trails)}")
    if bool(cycles) != want_cycle:
        raise err("the non-trivial part is a " + ("cycle" if cycles else "trail"))
    return list((cycles or trails)[0])


def factor_mcycle(a: Diagram):
    xs = _single_part(a, True)
    m = len(xs)
    if a.n != 3 * m:
        raise WrongAmbientSize(f"an {m}-cycle needs {3 * m} points, got {a.n}")
    grays = sorted(set(range(1, a.n + 1)) - set(xs))
    blocks = chain_blocks(xs, grays[0::2], grays[1::2], closed=True)
    return tuple(blocks_to_diagram(a.n, b) for b in blocks)


def factor_mtrail(a: Diagram):
    xs = _single_part(a, False)
    m = len(xs)
    if a.n != 3 * m - 2:
        raise WrongAmbientSize(f"an {m}-trail needs {3 * m - 2} points, got {a.n}")
    grays = sorted(set(range(1, a.n + 1)) - set(xs))
    blocks = chain_blocks(xs, grays[0::2], grays[1::2], closed=False)
    return tuple(blocks_to_diagram(a.n, b) for b in blocks)


def factor_two_trails(a: Diagram):
    """(eta, sigma, pi) for a diagram on 4 points made of two 2-trails."""
    if a.n != 4:
        raise WrongAmbientSize(f"need 4 points, got {a.n}")
    tr = a.transversals()
    pts = {x for e in tr for x in e}
    if len(tr) != 2 or len(pts) != 4 or a.upper_hooks() or a.lower_hooks():
        raise NotATrail("expected two disjoint 2-trails")
    (x1, y1), (x2, y2) = tr
    return tuple(blocks_to_diagram(4, b) for b in two_trail_blocks(x1, x2, y1, y2))


# infinite chains on N

CHAIN_VARIANTS = ("right", "left", "bi")


def _pmap_descriptor(pm: dict, safe: int) -> PeriodicDescriptor:
    ld = LazyDiagram(lambda v: pm.get(v), "chain layout")
    d = detect_periodicity(ld, safe)
    if d is None:
        raise DetectionFailed("chain layout not periodic on its window")
    return d


def infinite_chain(variant: str):
    """(alpha, (beta, gamma, delta)) for an infinite trail or cycle on N.

    right: x_k = 3k maps to x_{k+1}, auxiliaries at 3k+1, 3k+2.
    left:  the mirror image of ``right``.
    bi:    a two-way infinite cycle, x_k at 6k (k >= 0) and 6|k|-3 (k < 0).
    """
    K = 200
    if variant in ("right", "left"):
        xs = [3 * k for k in range(K + 1)]
        gs = [x + 1 for x in xs[:-1]]
        gps = [x + 2 for x in xs[:-1]]
        alpha_b = Blocks(list(zip(xs, xs[1:])), [], [])
        fac = chain_blocks(xs, gs, gps, closed=False)
        # keep delta's transversal at x_0 so the layout is periodic from 0
        fac = (fac[0], fac[1], fac[2]._replace(T=[(0, 0)] + fac[2].T))
        safe = 3 * K - 12
    elif variant == "bi":
        def pos(k):
            return 6 * k if k >= 0 else -6 * k - 3
        ks = list(range(-K, K + 1))
        xs = [pos(k) for k in ks]
        gs = [x + 1 for x in xs[:-1]]
        gps = [x + 2 for x in xs[:-1]]
        alpha_b = Blocks(list(zip(xs, xs[1:])), [], [])
        fac = chain_blocks(xs, gs, gps, closed=False)
        safe = 6 * K - 24
    else:
        raise ValueError(f"variant must be one of {CHAIN_VARIANTS}")
    alpha = _pmap_descriptor(blocks_to_pmap(alpha_b), safe)
    triple = tuple(_pmap_descriptor(blocks_to_pmap(b), safe) for b in fac)
    if variant == "left":
        alpha = star_periodic(alpha)
        triple = tuple(star_periodic(f) for f in reversed(triple))
    return alpha, triple


def factor_infinite_cycle_trail(variant: str, alpha: Optional[BrauerN] = None, window: int = 500):
    """Idempotent triple for the canonical infinite cycle or trail of ``variant``."""
    canon, triple = infinite_chain(variant)
    if alpha is not None and not window_equal(alpha, canon, window):
        err = NotACycle if variant == "bi" else NotATrail
        raise err(f"input is not the standard {variant} layout")
    return triple


# helpers for descriptor-valued constructions

def _detect(ld: BrauerN, scan: int) -> PeriodicDescriptor:
    d = detect_periodicity(ld, scan)
    if d is None or not window_equal(d, ld, 2 * scan):
        raise DetectionFailed(f"{getattr(ld, 'note', '')}: no period found below {scan}")
    return d


def compose_detect(factors: Iterable[BrauerN], scan: Optional[int] = None) -> BrauerN:
    """Left-to-right product, turning each partial product into a descriptor when possible."""
    it = iter(factors)
    acc = next(it)
    for f in it:
        acc = compose_lazy(acc, f)
        got = detect_periodicity(acc, scan) if scan else detect_periodicity(acc)
        if got is not None:
            acc = got
    return acc


def idempotent_on_window(d: BrauerN, window: int = 500) -> bool:
    if isinstance(d, Diagram):
        return compose(d, d) == d
    return window_equal(compose_lazy(d, d), d, window)


# sandwich constructions on N

class _Arm:
    """Index bookkeeping for a right unit with infinitely many lower hooks.

    ``a(x)`` is the lower end of the transversal from x; hooks are numbered
    by their smaller end in increasing order.
    """

    def __init__(self, d):
        self.d = d
        self.mins = vertex_set(d, "lower_hook_min")

    def a(self, x: int) -> int:
        return self.d.partner((UP, x))[1]

    def a_inv(self, u: int) -> Optional[int]:
        w = self.d.partner((LO, u))
        return w[1] if w is not None and w[0] == UP else None

    def hook(self, x: int) -> tuple:
        b1 = self.mins.nth(x)
        return b1, self.d.partner((LO, b1))[1]

    def hook_of(self, u: int) -> Optional[tuple]:
        w = self.d.partner((LO, u))
        if w is None or w[0] != LO:
            return None
        b1 = min(u, w[1])
        return self.mins.index(b1), 1 if u == b1 else 2


class _PairArm(_Arm):
    """Like :class:`_Arm`, with hooks formed by consecutive pairs of the codefect."""

    def __init__(self, d):
        self.d = d
        self.codef = vertex_set(d, "codef")

    def hook(self, x: int) -> tuple:
        return self.codef.nth(2 * x), self.codef.nth(2 * x + 1)

    def hook_of(self, u: int) -> Optional[tuple]:
        if u not in self.codef:
            return None
        k = self.codef.index(u)
        return k // 2, 1 + k % 2


def _z(base: int, n: int, tag: int) -> int:
    return 4 * ((2 * base + 1) << n) + tag


def _unz(x: int, tag: int) -> Optional[tuple]:
    if x % 4 != tag:
        return None
    N = (x - tag) // 4
    if N == 0:
        return None
    n = (N & -N).bit_length() - 1
    return ((N >> n) - 1) // 2, n


def _classify(g: BrauerN, row: int, i: int) -> tuple:
    w = g.partner((row, i))
    if w is None:
        return ("S",)
    if w[0] != row:
        return ("T", w[1])
    return ("H", min(i, w[1]), max(i, w[1]))


class _SandwichCore:
    """The partial bijection of steps (i)-(v) between alpha's lower row and beta's upper row."""

    def __init__(self, A: _Arm, B: _Arm, gamma: BrauerN):
        self.A, self.B, self.g = A, B, gamma

    def _V(self, v):
        return _classify(self.g, UP, v) == ("S",)

    def _W(self, w):
        return _classify(self.g, LO, w) == ("S",)

    def fwd(self, u: int) -> Optional[int]:
        A, B = self.A, self.B
        e = A.a_inv(u)
        if e is not None:
            k = _classify(self.g, UP, e)
            if k[0] == "T":
                return B.a(k[1])
            if k[0] == "H":
                return B.hook(8 * k[1])[0 if e == k[1] else 1]
            return B.hook(_z(e, 0, 1))[0]
        hk = A.hook_of(u)
        if hk is None:
            return None
        x, which = hk
        if x % 8 == 0:
            k = _classify(self.g, LO, x // 8)
            if k[0] == "H" and k[1] == x // 8:
                return B.a(k[which])
            return None
        zv = _unz(x, 1)
        if zv is not None and self._V(zv[0]):
            v, n = zv
            return B.hook(x)[1] if which == 1 else B.hook(_z(v, n + 1, 1))[0]
        zw = _unz(x, 3)
        if zw is not None and self._W(zw[0]):
            w, n = zw
            if which == 2:
                return B.hook(x)[0]
            return B.a(w) if n == 0 else B.hook(_z(w, n - 1, 3))[1]
        return None

    def inv(self, t: int) -> Optional[int]:
        A, B = self.A, self.B
        f = B.a_inv(t)
        if f is not None:
            k = _classify(self.g, LO, f)
            if k[0] == "T":
                return A.a(k[1])
            if k[0] == "H":
                return A.hook(8 * k[1])[0 if f == k[1] else 1]
            return A.hook(_z(f, 0, 3))[0]
        hk = B.hook_of(t)
        if hk is None:
            return None
        x, which = hk
        if x % 8 == 0:
            k = _classify(self.g, UP, x // 8)
            if k[0] == "H" and k[1] == x // 8:
                return A.a(k[which])
            return None
        zv = _unz(x, 1)
        if zv is not None and self._V(zv[0]):
            v, n = zv
            if which == 2:
                return A.hook(x)[0]
            return A.a(v) if n == 0 else A.hook(_z(v, n - 1, 1))[1]
        zw = _unz(x, 3)
        if zw is not None and self._W(zw[0]):
            w, n = zw
            return A.hook(x)[1] if which == 1 else A.hook(_z(w, n + 1, 3))[0]
        return None


def _check_sides(alpha, beta, need: str) -> None:
    from .classify import profile
    for d, name in ((alpha, "alpha"), (beta, "beta")):
        if not getattr(d, "is_descriptor", False):
            raise PreconditionViolated(f"{name} must be a descriptor")
    pa, pb = profile(alpha), profile(beta)
    if pa.defect != 0:
        raise PreconditionViolated("alpha must be a right unit (defect 0)")
    if pb.codef != 0:
        raise PreconditionViolated("beta must be a left unit (codef 0)")
    if need == "hooks" and (pa.hstar != ALEPH0 or pb.h != ALEPH0):
        raise PreconditionViolated("need infinitely many lower hooks in alpha and upper hooks in beta")
    if need == "codef" and (pa.codef != ALEPH0 or pb.defect != ALEPH0):
        raise PreconditionViolated("need codef(alpha) = defect(beta) = aleph0")


def _delta_oracle(core: _SandwichCore, fill: bool) -> Callable:
    if fill:
        c1 = ScanSet(lambda u: core.fwd(u) is None)
        c2 = ScanSet(lambda t: core.inv(t) is None)

    def oracle(v):
        row, i = v
        if row == UP:
            j = core.fwd(i)
            if j is None and fill:
                j = c2.nth(c1.index(i))
            return None if j is None else (LO, j)
        j = core.inv(i)
        if j is None and fill:
            j = c1.nth(c2.index(i))
        return None if j is None else (UP, j)

    return oracle


def sandwich_S(alpha: PeriodicDescriptor, beta: PeriodicDescriptor, gamma: BrauerN) -> LazyDiagram:
    """A permutation delta of N with alpha * delta * beta = gamma."""
    _check_sides(alpha, beta, "hooks")
    core = _SandwichCore(_Arm(alpha), _Arm(star_periodic(beta)), gamma)
    return LazyDiagram(_delta_oracle(core, fill=True), "sandwich permutation")


class SandwichE(NamedTuple):
    eps: LazyDiagram
    delta: LazyDiagram
    alpha1: PeriodicDescriptor
    beta1: PeriodicDescriptor


def _pair_hooks_identity(d: PeriodicDescriptor, lower: bool, scan: int) -> PeriodicDescriptor:
    """Identity on codom (or dom) plus consecutive pairs of the rest as hooks in both rows."""
    through = vertex_set(d, "codom" if lower else "dom")
    rest = vertex_set(d, "codef" if lower else "defect")

    def oracle(v):
        row, i = v
        if i in through:
            return (1 - row, i)
        k = rest.index(i)
        return (row, rest.nth(k ^ 1))

    return _detect(LazyDiagram(oracle, "paired hooks"), scan)


def sandwich_E(alpha, beta, gamma: BrauerN) -> SandwichE:
    """An element eps of the idempotent-generated part with alpha * eps * beta = gamma."""
    _check_sides(alpha, beta, "codef")
    scan = 4 * (alpha.set_threshold + beta.set_threshold + 8 * alpha.set_period * beta.set_period) + 64
    a1 = _pair_hooks_identity(alpha, True, scan)
    b1 = _pair_hooks_identity(beta, False, scan)
    # alpha*a1 and b1*beta are handled through their hook numbering only
    core = _SandwichCore(_PairArm(alpha), _PairArm(star_periodic(beta)), gamma)
    delta = LazyDiagram(_delta_oracle(core, fill=False), "sandwich middle")
    eps = compose_lazy(compose_lazy(a1, delta), b1)
    return SandwichE(eps, delta, a1, b1)


def full_right_unit():
    """i -> 3i with lower hooks {3i+1, 3i+2}: a right unit without singletons."""
    from .scaled import spread
    return spread(3)


def factor_GR_GL(a: BrauerN):
    """(r, l): r a right unit, l a left unit, both without singletons, r l = a."""
    alpha = full_right_unit()
    beta = star_periodic(alpha)
    delta = sandwich_S(alpha, beta, a)
    return compose_lazy(alpha, delta), beta


def has_singletons_on_window(d: BrauerN, window: int) -> bool:
    return any(d.partner((row, i)) is None for row in (UP, LO) for i in range(window))


# idempotent factorization of partial bijections on N

def _require_ix(a: PeriodicDescriptor):
    require_valid(a)
    p = params_periodic(a)
    if p.h or p.hstar:
        raise PreconditionViolated("not a partial bijection (has hooks)")
    if not (p.defect == p.codef == ALEPH0):
        raise PreconditionViolated("need defect = codef = aleph0")
    return p


def _scan_for(a: PeriodicDescriptor, top: int) -> int:
    return 2 * top + 2 * a.stable + 8 * a.p + 32


def _case1(a: PeriodicDescriptor) -> list:
    """Shift finite and at most the fail count: one chain block per cycle or trail."""
    sh = vertex_set(a, "sh")
    if not sh.finite:
        raise UnsupportedShape("infinitely many moved points")
    fail = vertex_set(a, "fail")
    if fail.finite:
        raise UnsupportedShape("fail set is finite")
    fwd = {i: a.partner((UP, i))[1] for i in sh.explicit}
    back = {j: i for i, j in fwd.items()}
    moved = sorted(fwd)
    phi = {x: fail.nth(2 * k) for k, x in enumerate(moved)}
    psi = {x: fail.nth(2 * k + 1) for k, x in enumerate(moved)}
    seen, chains = set(), []
    for x in moved:
        if x in seen:
            continue
        start = x
        while start in back and back[start] != x:
            start = back[start]
        closed = start in back
        if closed:
            start = x
        xs = [start]
        while xs[-1] in fwd and (not closed or fwd[xs[-1]] != start):
            xs.append(fwd[xs[-1]])
        if closed:
            start = min(xs)
            k = xs.index(start)
            xs = xs[k:] + xs[:k]
        seen.update(xs)
        dom_part = xs if closed else xs[:-1]
        chains.append(chain_blocks(xs, [phi[y] for y in dom_part], [psi[y] for y in dom_part], closed))
    fix = vertex_set(a, "fix")
    top = max([0] + list(phi.values()) + list(psi.values()) + [y for y in fwd.values()])
    out = []
    for j in range(3):
        pm = {}
        for ch in chains:
            pm.update(blocks_to_pmap(ch[j]))
        used = {i for ch in chains for b in ch[j] for e in b for i in e}

        def oracle(v, pm=pm, used=used):
            if v in pm:
                return pm[v]
            if v[1] in used:
                return None
            return (1 - v[0], v[1]) if v[1] in fix else None

        out.append(_detect(LazyDiagram(oracle, "chain factor"), _scan_for(a, top)))
    return out


def _split_two_trails(b: PeriodicDescriptor) -> list:
    """Idempotent triple for a partial bijection made of fixed points, 2-trails and fails."""
    A = vertex_set(b, "dom")
    B = vertex_set(b, "codom")
    P = PeriodicSet(lambda i: i in A and i not in B, b.stable, b.p)
    Q = PeriodicSet(lambda i: i in B and i not in A, b.stable, b.p)

    def block(i):
        if i in P:
            h = P.index(i) // 2
        elif i in Q:
            h = Q.index(i) // 2
        else:
            return None
        a_, b_ = P.nth(2 * h), P.nth(2 * h + 1)
        if b_ is None:
            raise UnsupportedShape("odd number of 2-trails")
        return two_trail_blocks(a_, b_, b.partner((UP, a_))[1], b.partner((UP, b_))[1])

    out = []
    for j in range(3):
        def oracle(v, j=j):
            blk = block(v[1])
            if blk is not None:
                return blocks_to_pmap(blk[j]).get(v)
            return (1 - v[0], v[1]) if v[1] in A else None

        out.append(_detect(LazyDiagram(oracle, "two-trail factor"), _scan_for(b, 8 * b.p)))
    return out


def factor_IX_idempotents(a: PeriodicDescriptor) -> list:
    """Idempotents whose product is the partial bijection ``a``.

    Supports shift <= fail with finitely many moved points, and shift > fail
    when the split into 2-trails and a bijection of the codomain lands in a
    supported shape again.
    """
    p = _require_ix(a)
    if p.shift == 0:
        return [a]
    fail = vertex_set(a, "fail")
    if p.shift <= fail.size:
        return _case1(a)
    A, B = vertex_set(a, "dom"), vertex_set(a, "codom")
    P = PeriodicSet(lambda i: i in A and i not in B, a.stable, a.p)
    Q = PeriodicSet(lambda i: i in B and i not in A, a.stable, a.p)
    if P.finite:
        raise UnsupportedShape("finitely many points leave the codomain")

    def phi(x):
        return Q.nth(P.index(x))

    def phi_inv(y):
        return P.nth(Q.index(y))

    def alpha(x):
        return a.partner((UP, x))[1]

    def b_oracle(v):
        row, i = v
        if i in A and i in B:
            return (1 - row, i)
        if row == UP:
            return (LO, phi(i)) if i in P else None
        return (UP, phi_inv(i)) if i in Q else None

    def g_oracle(v):
        row, i = v
        if row == UP:
            if i in A and i in B:
                return (LO, alpha(i))
            return (LO, alpha(phi_inv(i))) if i in Q else None
        if i not in B:
            return None
        x = a.partner((LO, i))[1]
        return (UP, x if x in B else phi(x))

    scan = _scan_for(a, 8 * a.p)
    beta = _detect(LazyDiagram(b_oracle, "2-trail part"), scan)
    gamma = _detect(LazyDiagram(g_oracle, "codomain bijection"), scan)
    sb = vertex_set(beta, "sh")
    first = _case1(beta) if sb.finite else _split_two_trails(beta)
    pg = params_periodic(gamma)
    if pg.shift == 0:
        rest = [gamma]
    elif pg.shift <= vertex_set(gamma, "fail").size and vertex_set(gamma, "sh").finite:
        rest = _case1(gamma)
    else:
        raise UnsupportedShape("codomain bijection has infinitely many moved points")
    return first + rest


# words over generators (finite)

def factor_via_words(a: Diagram, gens: Sequence[Diagram], cap: int = 10 ** 6):
    """A shortest word (tuple of generator indices) evaluating to a, or None."""
    from .closure import closure
    from .diagram import canonical_encode, identity
    if any(g.n != a.n for g in gens):
        raise SizeMismatch("generators and target live on different ground sets")
    if a == identity(a.n) and not gens:
        return []
    res = closure(list(gens), include_identity=False, cap=cap)
    return res.words.get(canonical_encode(a))
