"""Concrete generating sets modulo submonoids for X = N.

For countable X the cardinals mu range over {1, aleph0}.  Every set comes
with its defining conditions, evaluated on exact parameter profiles by
:meth:`WitnessSet.check`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Tuple

from .cards import ALEPH0, Card
from .classify import MonoidClass as M, member, profile
from .errors import DetectionFailed, UnknownWitness
from .nsets import vertex_set
from .periodic import (H, LO, S, T, UP, LazyDiagram, coshift, compose_lazy, detect_periodicity,
                       identity_n, make_descriptor, window_equal)
from .scaled import spread, squeeze

MUS = (Card(1), ALEPH0)


@dataclass
class WitnessSet:
    key: str
    description: str
    elements: List[Tuple[str, object]]
    clauses: List[Tuple[str, Callable[[], bool]]] = field(default_factory=list)

    def check(self) -> list:
        """Names of the clauses that fail (empty when all hold)."""
        return [name for name, ok in self.clauses if not ok()]

    def element(self, name: str):
        return dict(self.elements)[name]

    def __len__(self) -> int:
        return len(self.elements)


def _mu_name(mu) -> str:
    return "1" if mu == 1 else "aleph0"


# building blocks

def hook_pair_fixed() -> object:
    """Hooks {0,1} in both rows, identity elsewhere."""
    return make_descriptor(1, [T(0)], [T(0)], m=2, prefix=[((UP, 0), (UP, 1)), ((LO, 0), (LO, 1))])


def singleton_fixed() -> object:
    """0 and 0' singletons, identity elsewhere."""
    return make_descriptor(1, [T(0)], [T(0)], m=1)


def hooks_every_fourth() -> object:
    """Hooks {4k, 4k+1} in both rows, identity on 4k+2, 4k+3."""
    return make_descriptor(4, [H(1), H(-1), T(0), T(0)], [H(1), H(-1), T(0), T(0)])


def singletons_even() -> object:
    """Even points singletons in both rows, identity on odd points."""
    return make_descriptor(2, [S, T(0)], [S, T(0)])


def hooks_over_singletons() -> object:
    """Upper hooks {4k, 4k+1}, lower singletons there, identity on 4k+2, 4k+3."""
    return make_descriptor(4, [H(1), H(-1), T(0), T(0)], [S, S, T(0), T(0)])


def singletons_over_hooks() -> object:
    """Upper singletons at 4k, 4k+1, lower hooks {4k, 4k+1}, identity elsewhere."""
    return make_descriptor(4, [S, S, T(0), T(0)], [H(1), H(-1), T(0), T(0)])


def hook_then_coshift() -> object:
    """Upper hook {0,1} and i -> (i-2)' for i >= 2: a left unit."""
    return make_descriptor(1, [T(-2)], [T(2)], m=2,
                           prefix=[((UP, 0), (UP, 1)), ((UP, 2), (LO, 0)), ((UP, 3), (LO, 1))])


# condition helpers

def _p(d):
    return profile(d)


def _in(d, c) -> Callable[[], bool]:
    return lambda: member(d, c)


# sets

def omega_GL() -> WitnessSet:
    """Left units: alpha_mu with mu upper hooks, beta_mu with mu upper singletons."""
    el = [("alpha_1", hook_then_coshift()), ("beta_1", coshift()),
          ("alpha_aleph0", squeeze(3)), ("beta_aleph0", squeeze(2, "singletons"))]
    ws = WitnessSet("gl-over-s", "left units modulo the symmetric group", el)
    for mu in MUS:
        a, b = ws.element(f"alpha_{_mu_name(mu)}"), ws.element(f"beta_{_mu_name(mu)}")
        ws.clauses += [
            (f"alpha_{mu} in GL", _in(a, M.GL)), (f"beta_{mu} in GL", _in(b, M.GL)),
            (f"h(alpha_{mu}) = {mu}", lambda a=a, mu=mu: _p(a).h == mu),
            (f"s(beta_{mu}) = {mu}", lambda b=b, mu=mu: _p(b).s == mu),
            (f"s(alpha_{mu}) = 0", lambda a=a: _p(a).s == 0),
            (f"h(beta_{mu}) = 0", lambda b=b: _p(b).h == 0),
        ]
    return ws


def _f_pair_clauses(ws: WitnessSet, a, b, mu, option: str) -> None:
    ws.clauses += [
        (f"alpha_{mu} in F", _in(a, M.F)), (f"beta_{mu} in F", _in(b, M.F)),
        (f"t(alpha_{mu}) = aleph0", lambda: _p(a).t == ALEPH0),
        (f"t(beta_{mu}) = aleph0", lambda: _p(b).t == ALEPH0),
        (f"s(alpha_{mu}) < {mu} = h(alpha_{mu})", lambda: _p(a).s < mu == _p(a).h),
        (f"h(beta_{mu}) < {mu} = s(beta_{mu})", lambda: _p(b).h < mu == _p(b).s),
    ]
    if option == "starred-split":
        def both():
            pa, pb = _p(a), _p(b)
            one = pa.sstar < mu == pa.hstar and pb.hstar < mu == pb.sstar
            two = pa.hstar < mu == pa.sstar and pb.sstar < mu == pb.hstar
            return one or two
        ws.clauses.append((f"starred parameters of the {mu} pair split one way", both))
    else:
        ws.clauses.append((f"h*(alpha_{mu}) = s*(beta_{mu}) = {mu} or s*(alpha_{mu}) = h*(beta_{mu}) = {mu}",
                           lambda: (_p(a).hstar == mu == _p(b).sstar) or
                                   (_p(a).sstar == mu == _p(b).hstar)))


def omega_F() -> WitnessSet:
    """Elements of F generating F together with the symmetric group."""
    el = [("alpha_1", hook_pair_fixed()), ("beta_1", singleton_fixed()),
          ("alpha_aleph0", hooks_every_fourth()), ("beta_aleph0", singletons_even())]
    ws = WitnessSet("f-over-s", "F modulo the symmetric group", el)
    for mu in MUS:
        n = _mu_name(mu)
        _f_pair_clauses(ws, ws.element(f"alpha_{n}"), ws.element(f"beta_{n}"), mu, "starred-split")
    return ws


def omega_FL_over_F() -> WitnessSet:
    """One element per mu with codef < mu = defect."""
    el = [("gamma_1", coshift()), ("gamma_aleph0", squeeze(2, "singletons"))]
    ws = WitnessSet("fl-over-f", "FL modulo F", el)
    _fl_clauses(ws)
    return ws


def _fl_clauses(ws: WitnessSet) -> None:
    for mu in MUS:
        g = ws.element(f"gamma_{_mu_name(mu)}")
        ws.clauses += [
            (f"codef(gamma_{mu}) < {mu} = defect(gamma_{mu})",
             lambda g=g, mu=mu: _p(g).codef < mu == _p(g).defect),
            (f"gamma_{mu} in FL", _in(g, M.FL)),
            (f"gamma_{mu} not in F", lambda g=g: not member(g, M.F)),
        ]


def omega_FL_over_GL() -> WitnessSet:
    """Elements of F generating FL together with the left units."""
    el = [("alpha_1", hook_pair_fixed()), ("beta_1", singleton_fixed()),
          ("alpha_aleph0", hooks_over_singletons()), ("beta_aleph0", singletons_over_hooks())]
    ws = WitnessSet("fl-over-gl", "FL modulo the left units", el)
    for mu in MUS:
        n = _mu_name(mu)
        _f_pair_clauses(ws, ws.element(f"alpha_{n}"), ws.element(f"beta_{n}"), mu, "either")
    return ws


def omega_FL_over_S() -> WitnessSet:
    """The union of a set as in :func:`omega_FL_over_GL` and one as in :func:`omega_FL_over_F`."""
    a, b = omega_FL_over_GL(), omega_FL_over_F()
    ws = WitnessSet("fl-over-s", "FL modulo the symmetric group", a.elements + b.elements)
    ws.clauses = a.clauses + b.clauses
    return ws


def pair_PB_over_S() -> WitnessSet:
    a = spread(3)
    b = a.star()
    ws = WitnessSet("pb-over-s", "PB modulo the symmetric group", [("alpha", a), ("beta", b)])
    ws.clauses = [("alpha in GR", _in(a, M.GR)), ("beta in GL", _in(b, M.GL)),
                  ("h*(alpha) = h(beta) = aleph0", lambda: _p(a).hstar == ALEPH0 == _p(b).h)]
    return ws


def single_PB_over_GL() -> WitnessSet:
    a = spread(3)
    ws = WitnessSet("pb-over-gl", "PB modulo the left units", [("alpha", a)])
    ws.clauses = [("alpha in GR", _in(a, M.GR)), ("h*(alpha) = aleph0", lambda: _p(a).hstar == ALEPH0)]
    return ws


def pair_PB_over_E() -> WitnessSet:
    a = spread(2, "singletons")
    b = a.star()
    ws = WitnessSet("pb-over-e", "PB modulo the idempotent-generated part", [("alpha", a), ("beta", b)])
    ws.clauses = [("alpha in GR", _in(a, M.GR)), ("beta in GL", _in(b, M.GL)),
                  ("codef(alpha) = defect(beta) = aleph0",
                   lambda: _p(a).codef == ALEPH0 == _p(b).defect)]
    return ws


WITNESSES = {
    "gl-over-s": omega_GL,
    "f-over-s": omega_F,
    "fl-over-f": omega_FL_over_F,
    "fl-over-gl": omega_FL_over_GL,
    "fl-over-s": omega_FL_over_S,
    "pb-over-s": pair_PB_over_S,
    "pb-over-gl": single_PB_over_GL,
    "pb-over-e": pair_PB_over_E,
}


def witness(key: str) -> WitnessSet:
    try:
        return WITNESSES[key]()
    except KeyError:
        raise UnknownWitness(f"{key!r}; known: {', '.join(WITNESSES)}") from None


# sigma / tau products

def _detect(ld, scan: int = 256):
    d = detect_periodicity(ld, scan)
    if d is None or not window_equal(d, ld, 2 * scan):
        raise DetectionFailed("product is not periodic on the scanned window")
    return d


def _finite_permutation(pairs: dict):
    """Permutation of N sending each key to its value, completed in increasing order."""
    pts = set(pairs) | set(pairs.values())
    free_src = sorted(pts - set(pairs))
    free_dst = sorted(pts - set(pairs.values()))
    full = dict(pairs)
    full.update(zip(free_src, free_dst))
    m = max(pts) + 1
    return make_descriptor(1, [T(0)], [T(0)], m=m,
                           prefix=[((UP, x), (LO, y)) for x, y in full.items()] +
                                  [((UP, x), (LO, x)) for x in range(m) if x not in full])


def matching_permutation(d_from, d_to):
    """Permutation sending codom(d_from) onto dom(d_to) in increasing order."""
    A, B = vertex_set(d_from, "codom"), vertex_set(d_to, "dom")
    Ac, Bc = vertex_set(d_from, "codef"), vertex_set(d_to, "defect")

    def oracle(v):
        row, i = v
        if row == UP:
            return (LO, B.nth(A.index(i)) if i in A else Bc.nth(Ac.index(i)))
        return (UP, A.nth(B.index(i)) if i in B else Ac.nth(Bc.index(i)))

    return _detect(LazyDiagram(oracle, "matching permutation"))


def _product(*fs):
    acc = fs[0]
    for f in fs[1:]:
        acc = _detect(compose_lazy(acc, f))
    return acc


def build_sigma_tau(nu, omega: WitnessSet = None):
    """(sigma_nu, tau_nu) built from ``omega`` (default :func:`omega_F`) and permutations.

    sigma_nu has nu hooks in each row and no singletons; tau_nu has nu
    singletons in each row and no hooks.
    """
    omega = omega or omega_F()
    nu = Card.of(nu)
    if nu == 0:
        return identity_n(), identity_n()
    if nu.is_infinite:
        a, b = omega.element("alpha_aleph0"), omega.element("beta_aleph0")
        if _p(a).s != 0 or _p(b).h != 0:
            raise DetectionFailed("only witness sets without surplus singletons or hooks are supported")
        sigma = _product(a, matching_permutation(a, a), a)
        tau = _product(b, matching_permutation(b, b), b)
        return sigma, tau
    a1, b1 = omega.element("alpha_1"), omega.element("beta_1")
    sig, tau = build_sigma_tau(nu.finite - 1, omega)
    ca, cb = vertex_set(a1, "codef").take(2), vertex_set(b1, "codef").take(1)
    u, v = vertex_set(sig, "dom").take(2)
    w = vertex_set(tau, "dom").nth(0)
    gam = _finite_permutation({ca[0]: u, ca[1]: v})
    dlt = _finite_permutation({cb[0]: w})
    return _product(a1, gam, sig), _product(b1, dlt, tau)
