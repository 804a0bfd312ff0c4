"""Membership in the submonoids S, GL, GR, E, F, FL, FR, PB.

Every class is decided from the parameter profile alone.
"""
from __future__ import annotations

from enum import Enum
from .cards import ALEPH0, card_max
from .diagram import Diagram, ParamProfile, params
from .errors import UnvalidatedDescriptor
from .periodic import PeriodicDescriptor, params_periodic, require_valid


class MonoidClass(Enum):
    S = "S"
    GL = "GL"
    GR = "GR"
    E = "E"
    F = "F"
    FL = "FL"
    FR = "FR"
    PB = "PB"


# covering relations of the submonoid lattice (smaller, larger)
LATTICE_EDGES = [
    (MonoidClass.S, MonoidClass.GL), (MonoidClass.S, MonoidClass.GR),
    (MonoidClass.S, MonoidClass.F), (MonoidClass.E, MonoidClass.F),
    (MonoidClass.GL, MonoidClass.FL), (MonoidClass.GR, MonoidClass.FR),
    (MonoidClass.F, MonoidClass.FL), (MonoidClass.F, MonoidClass.FR),
    (MonoidClass.FL, MonoidClass.PB), (MonoidClass.FR, MonoidClass.PB),
]


def profile(a) -> ParamProfile:
    """Parameters of a finite diagram, a descriptor or a two-speed descriptor."""
    if isinstance(a, Diagram):
        return params(a)
    if isinstance(a, PeriodicDescriptor):
        require_valid(a)
        return params_periodic(a)
    if getattr(a, "is_descriptor", False):
        from .scaled import params_scaled
        return params_scaled(a)
    raise UnvalidatedDescriptor("parameters need a finite diagram or a descriptor")


def member_profile(p: ParamProfile, c: MonoidClass, finite: bool) -> bool:
    d, cd = p.defect, p.codef
    if c is MonoidClass.PB:
        return True
    if c is MonoidClass.S:
        return d == 0 and cd == 0
    if c is MonoidClass.GL:
        return cd == 0
    if c is MonoidClass.GR:
        return d == 0
    if c is MonoidClass.F:
        return d == cd
    if c is MonoidClass.FL:
        return cd <= d
    if c is MonoidClass.FR:
        return d <= cd
    # idempotent-generated
    if d <= 1 and p.shift == 0:
        return True
    if finite:
        return d >= 2
    if d >= 2 and p.supp < ALEPH0:
        return True
    return d == cd and d >= card_max(ALEPH0, p.shift)


def member(a, c: MonoidClass) -> bool:
    return member_profile(profile(a), c, isinstance(a, Diagram))


def memberships(a) -> dict:
    p = profile(a)
    fin = isinstance(a, Diagram)
    return {c: member_profile(p, c, fin) for c in MonoidClass}


def lattice_consistent(a) -> bool:
    m = memberships(a)
    return m[MonoidClass.PB] and all(m[big] for small, big in LATTICE_EDGES if m[small])
