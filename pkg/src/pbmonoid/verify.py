"""Named invariant suites, run by ``pbmonoid verify``.

Every suite returns a list of violation strings; an empty list is a pass.
"""
from __future__ import annotations

import random
from typing import Callable, Dict

from .classify import MonoidClass as M, lattice_consistent, member, profile
from .closure import closure, idempotent_set, pb_pair, symmetric_gens, unit_orbits
from .diagram import (canonical_encode, compose, compose_all, decode, enumerate_all, make_diagram,
                      params, random_diagram, star)
from .factor import (conjugators, factor_GR_GL, factor_mcycle, factor_mtrail, factor_two_trails,
                     factor_unit_regular, has_singletons_on_window, infinite_chain, mcycle, mtrail,
                     sandwich_E, sandwich_S)
from .periodic import (coshift, compose_lazy, detect_periodicity, empty_n, identity_n,
                       random_descriptor, shift, star_periodic, window_equal, window_mismatches)
from .props import all_product_checks, star_identities
from .scaled import spread, squeeze

WINDOW = 500


def periodic_library() -> list:
    """(name, descriptor) pairs used by the lattice and property suites."""
    from . import witness
    lib = [("identity", identity_n()), ("empty", empty_n()), ("shift", shift()),
           ("coshift", coshift()), ("shift2", shift(2)), ("coshift2", coshift(2)),
           ("spread3", spread(3)), ("squeeze3", squeeze(3)), ("spread2s", spread(2, "singletons")),
           ("squeeze2s", squeeze(2, "singletons"))]
    for key in witness.WITNESSES:
        for name, el in witness.witness(key).elements:
            lib.append((f"{key}/{name}", el))
    for v in ("right", "left", "bi"):
        lib.append((f"chain-{v}", infinite_chain(v)[0]))
    lib += [(f"random{s}", random_descriptor(s)) for s in range(20)]
    return lib


def random_periodic_pair(rng: random.Random, scan: int = 256):
    """A pair of random descriptors whose product is detected as periodic."""
    while True:
        a = random_descriptor(rng.randrange(1 << 30))
        b = random_descriptor(rng.randrange(1 << 30))
        ld = compose_lazy(a, b)
        ab = detect_periodicity(ld, scan)
        if ab is not None and window_equal(ab, ld, 2 * scan):
            return a, b, ab


def suite_inequalities(finite_pairs: int = 10_000, periodic_pairs: int = 30, seed: int = 0) -> list:
    rng = random.Random(seed)
    bad = []
    for _ in range(finite_pairs):
        n = rng.randint(1, 8)
        a, b = random_diagram(n, rng), random_diagram(n, rng)
        for v in all_product_checks(params(a), params(b), params(compose(a, b))):
            bad.append(f"{a!r} {b!r}: {v}")
    for _ in range(periodic_pairs):
        a, b, ab = random_periodic_pair(rng)
        for v in all_product_checks(profile(a), profile(b), profile(ab)):
            bad.append(f"{a!r} {b!r}: {v}")
    return bad


def suite_star(finite_pairs: int = 2_000, periodic_pairs: int = 30, seed: int = 1) -> list:
    rng = random.Random(seed)
    bad = []
    for _ in range(finite_pairs):
        n = rng.randint(1, 8)
        a, b = random_diagram(n, rng), random_diagram(n, rng)
        bad += star_identities(a, b, compose, star, lambda x, y: x == y)
    for _ in range(periodic_pairs):
        a, b, _ = random_periodic_pair(rng)
        bad += star_identities(a, b, compose_lazy, star_periodic,
                               lambda x, y: window_equal(x, y, 200))
    return bad


def suite_orbits(n: int = 3) -> list:
    """conjugators(a, b) succeeds exactly when b lies in the unit orbit of a."""
    els = enumerate_all(n)
    orbit_of = {}
    for k, orb in enumerate(unit_orbits(els, n)):
        for e in orb:
            orbit_of[canonical_encode(e)] = k
    bad = []
    for a in els:
        ka = orbit_of[canonical_encode(a)]
        for b in els:
            got = conjugators(a, b)
            same = ka == orbit_of[canonical_encode(b)]
            if (got is not None) != same:
                bad.append(f"{a!r} {b!r}: conjugators={got is not None} orbit={same}")
            elif got is not None and compose_all([got[0], a, got[1]]) != b:
                bad.append(f"{a!r} {b!r}: g a d != b")
    return bad


def suite_factorizations(n_random: int = 50, window: int = WINDOW, seed: int = 2) -> list:
    bad = []
    for n in (3, 4):
        for a in enumerate_all(n):
            if params(a).defect != params(a).codef:
                continue
            e, g = factor_unit_regular(a)
            if compose(e, g) != a or compose(e, e) != e:
                bad.append(f"unit-regular {a!r}")
    for m in (2, 3, 4):
        for name, a, fn in (("mcycle", mcycle(m), factor_mcycle), ("mtrail", mtrail(m), factor_mtrail)):
            fs = fn(a)
            if compose_all(fs) != a or any(compose(f, f) != f for f in fs):
                bad.append(f"{name} {m}")
    two = make_diagram(4, [(1, 3), (2, 4)])
    fs = factor_two_trails(two)
    if compose_all(fs) != two:
        bad.append("two trails")
    rng = random.Random(seed)
    gammas = [random_descriptor(rng.randrange(1 << 30)) for _ in range(n_random)]
    alpha = spread(3)
    beta = alpha.star()
    for g in gammas:
        delta = sandwich_S(alpha, beta, g)
        if window_mismatches(compose_lazy(compose_lazy(alpha, delta), beta), g, window):
            bad.append(f"sandwich_S {g!r}")
    ae = spread(2, "singletons")
    for g in gammas:
        res = sandwich_E(ae, ae.star(), g)
        prod = compose_lazy(compose_lazy(ae, res.eps), ae.star())
        if window_mismatches(prod, g, window):
            bad.append(f"sandwich_E {g!r}")
    for g in gammas[:20]:
        r, l = factor_GR_GL(g)
        if window_mismatches(compose_lazy(r, l), g, window):
            bad.append(f"GR.GL product {g!r}")
        if has_singletons_on_window(r, window) or has_singletons_on_window(l, window):
            bad.append(f"GR.GL factors not full {g!r}")
    return bad


def shift_probe(N: int = 1000) -> list:
    a = shift()
    bad = []
    if not member(a, M.GR) or member(a, M.GL):
        bad.append("shift should be in GR and not in GL")
    one = identity_n()
    if not window_equal(compose_lazy(a, star_periodic(a)), one, N):
        bad.append("shift shift* != 1")
    if window_equal(compose_lazy(star_periodic(a), a), one, N):
        bad.append("shift* shift == 1")
    return bad


def suite_lattice(n: int = 4) -> list:
    bad = [f"{a!r}" for a in enumerate_all(n) if not lattice_consistent(a)]
    bad += [name for name, d in periodic_library() if not lattice_consistent(d)]
    return bad + shift_probe()


def suite_closure(max_n: int = 4) -> list:
    bad = []
    for n in range(2, max_n + 1):
        allpb = {canonical_encode(a) for a in enumerate_all(n)}
        got = closure(symmetric_gens(n) + list(pb_pair(n)))
        if got.encodings != allpb:
            bad.append(f"units plus pair do not generate PB_{n}")
        E = closure(idempotent_set(n))
        want = {k for k in allpb if member(decode(k), M.E)}
        if E.encodings != want:
            bad.append(f"idempotent closure differs from classifier at n={n}")
        for k, w in got.words.items():
            if canonical_encode(got.evaluate(w)) != k:
                bad.append(f"word mismatch n={n}")
                break
    return bad


def suite_witnesses() -> list:
    from .witness import WITNESSES, build_sigma_tau, witness
    from .cards import ALEPH0
    bad = []
    for key in WITNESSES:
        bad += [f"{key}: {c}" for c in witness(key).check()]
    for nu in (0, 1, 2, ALEPH0):
        s, t = build_sigma_tau(nu)
        ps, pt = profile(s), profile(t)
        if not (ps.h == ps.hstar == nu and ps.s == ps.sstar == 0 and ps.t == ALEPH0):
            bad.append(f"sigma_{nu}: {ps}")
        if not (pt.s == pt.sstar == nu and pt.h == pt.hstar == 0 and pt.t == ALEPH0):
            bad.append(f"tau_{nu}: {pt}")
    return bad


def suite_table() -> list:
    """Countable formula values agree with the sizes of the witness sets."""
    from .cardinal import Aleph, Finite, relrank
    from .witness import witness
    x = Aleph(0)
    pairs = {"gl-over-s": (M.GL, M.S), "f-over-s": (M.F, M.S), "fl-over-f": (M.FL, M.F),
             "fl-over-gl": (M.FL, M.GL), "fl-over-s": (M.FL, M.S), "pb-over-s": (M.PB, M.S),
             "pb-over-gl": (M.PB, M.GL), "pb-over-e": (M.PB, M.E)}
    bad = []
    for key, (top, base) in pairs.items():
        if relrank(top, base, x) != Finite(len(witness(key))):
            bad.append(f"{key}: {relrank(top, base, x)} vs {len(witness(key))}")
    return bad


SUITES: Dict[str, Callable[[], list]] = {
    "inequalities": suite_inequalities,
    "star": suite_star,
    "orbits": suite_orbits,
    "factorizations": suite_factorizations,
    "lattice": suite_lattice,
    "closure": suite_closure,
    "witnesses": suite_witnesses,
    "table": suite_table,
}


def run(names=None) -> Dict[str, list]:
    names = names or list(SUITES)
    return {name: SUITES[name]() for name in names}
