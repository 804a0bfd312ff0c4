"""Parameter inequalities for products and the involution identities.

Each check returns a list of human-readable violations; an empty list
means the statement holds for the given pair.
"""
from __future__ import annotations

from .cards import ALEPH0, Card
from .diagram import ParamProfile


def _c(x) -> Card:
    return Card.of(x)


def _minus(mu: Card, nu: Card) -> Card:
    """mu - nu for nu < mu (mu itself when mu is infinite)."""
    return mu if mu.is_infinite else Card(mu.finite - nu.finite)


def product_bounds(pa: ParamProfile, pb: ParamProfile, pab: ParamProfile) -> list:
    """Monotonicity and subadditivity of the parameters of a product ab."""
    a = {k: _c(v) for k, v in pa._asdict().items()}
    b = {k: _c(v) for k, v in pb._asdict().items()}
    ab = {k: _c(v) for k, v in pab._asdict().items()}
    bad = []

    def need(ok: bool, what: str):
        if not ok:
            bad.append(what)

    need(a["s"] <= ab["s"], "s(a) <= s(ab)")
    need(b["sstar"] <= ab["sstar"], "s*(b) <= s*(ab)")
    need(a["h"] <= ab["h"] <= a["h"] + b["h"], "h(a) <= h(ab) <= h(a)+h(b)")
    need(b["hstar"] <= ab["hstar"] <= a["hstar"] + b["hstar"], "h*(b) <= h*(ab) <= h*(a)+h*(b)")
    need(a["defect"] <= ab["defect"] <= a["defect"] + b["defect"],
         "defect(a) <= defect(ab) <= defect(a)+defect(b)")
    need(b["codef"] <= ab["codef"] <= a["codef"] + b["codef"],
         "codef(b) <= codef(ab) <= codef(a)+codef(b)")
    need(ab["t"] <= a["t"] and ab["t"] <= b["t"], "t(ab) <= t(a), t(b)")
    return bad


def left_unit_product(pa: ParamProfile, pb: ParamProfile, pab: ParamProfile) -> list:
    """When codef(a) = 0 the parameters of ab are determined by those of a and b."""
    a = {k: _c(v) for k, v in pa._asdict().items()}
    if a["codef"] != 0:
        return []
    b = {k: _c(v) for k, v in pb._asdict().items()}
    ab = {k: _c(v) for k, v in pab._asdict().items()}
    bad = []
    for key, want in (("s", a["s"] + b["s"]), ("sstar", b["sstar"]), ("h", a["h"] + b["h"]),
                      ("hstar", b["hstar"]), ("defect", a["defect"] + b["defect"]),
                      ("codef", b["codef"]), ("t", b["t"])):
        if ab[key] != want:
            bad.append(f"codef(a)=0 but {key}(ab)={ab[key]} != {want}")
    return bad


def defect_carry(pa: ParamProfile, pb: ParamProfile, pab: ParamProfile) -> list:
    """codef(a) <= defect(a) forces defect(b) <= defect(ab)."""
    if _c(pa.codef) <= _c(pa.defect) and not _c(pb.defect) <= _c(pab.defect):
        return ["codef(a) <= defect(a) but defect(b) > defect(ab)"]
    return []


def excess_bounds(pa: ParamProfile, pb: ParamProfile, pab: ParamProfile) -> list:
    """Lower bounds on s(ab), h(ab), defect(ab) when b exceeds codef(a)."""
    k = _c(pa.codef)
    bad = []
    for key in ("s", "h"):
        vb = _c(getattr(pb, key))
        if vb > k and not _c(getattr(pab, key)) >= _c(getattr(pa, key)) + _minus(vb, k):
            bad.append(f"{key}(b) > codef(a) but {key}(ab) too small")
    db = _c(pb.defect)
    if (db == 1 or db >= ALEPH0) and db > k and not _c(pab.defect) >= db:
        bad.append("defect(b) > codef(a) but defect(ab) < defect(b)")
    return bad


PRODUCT_CHECKS = (product_bounds, left_unit_product, defect_carry, excess_bounds)


def all_product_checks(pa, pb, pab) -> list:
    out = []
    for chk in PRODUCT_CHECKS:
        out += chk(pa, pb, pab)
    return out


def star_identities(a, b, mul, star, equal) -> list:
    """(a*)* = a, a a* a = a and (ab)* = b* a*."""
    bad = []
    if not equal(star(star(a)), a):
        bad.append("(a*)* != a")
    if not equal(mul(mul(a, star(a)), a), a):
        bad.append("a a* a != a")
    if not equal(star(mul(a, b)), mul(star(b), star(a))):
        bad.append("(ab)* != b* a*")
    return bad
