"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 usage error.  Errors are printed
to stderr as ``error: <Code>: <detail>``.
"""
from __future__ import annotations

import argparse
import inspect
import json
import os
import sys
from pathlib import Path

from . import __version__
from .cards import to_json
from .classify import MonoidClass, memberships, profile
from .diagram import Diagram, compose, enumerate_all, to_pbd
from .errors import DetectionFailed, PBError, SizeMismatch
from .periodic import (PeriodicDescriptor, compose_lazy, detect_periodicity, parse_any,
                       to_pbd_periodic, window_equal)

DEFAULT_SCAN = 256
WINDOW = 500


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# input / output

def load(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_any(text)


def to_text(d, window: int = WINDOW) -> str:
    """Serialise a finite diagram or descriptor; lazy graphs are detected or windowed."""
    if isinstance(d, Diagram):
        return to_pbd(d)
    if isinstance(d, PeriodicDescriptor):
        return to_pbd_periodic(d)
    if hasattr(d, "star") and getattr(d, "is_descriptor", False):
        from .scaled import to_pbd_scaled
        return to_pbd_scaled(d)
    found = detect_periodicity(d, DEFAULT_SCAN)
    if found is not None and window_equal(found, d, 2 * DEFAULT_SCAN):
        return to_pbd_periodic(found)
    return to_pbd_window(d, window)


def to_pbd_window(d, N: int) -> str:
    """Edges of a graph on N with both ends below N (not a complete description)."""
    from .periodic import _tag, restrict_window
    lines = ["# window of a graph on N without a finite description", f"pbd 1 window N={N}"]
    lines += [f"{t} {a} {b}" for t, a, b in sorted(_tag(u, v) for u, v in restrict_window(d, N))]
    return "\n".join(lines) + "\n"


def _emit(args, payload_text: str, payload_json) -> None:
    if args.json:
        print(json.dumps(payload_json, indent=2, sort_keys=True))
    else:
        sys.stdout.write(payload_text if payload_text.endswith("\n") else payload_text + "\n")


def _profile_json(p) -> dict:
    return {k: to_json(v) for k, v in p._asdict().items()}


def _write_factors(args, factors, names=None) -> None:
    names = names or [f"factor_{k + 1}" for k in range(len(factors))]
    texts = [to_text(f) for f in factors]
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        for name, t in zip(names, texts):
            (out / f"{name}.pbd").write_text(t)
    if args.json:
        print(json.dumps({"factors": [{"name": n, "pbd": t} for n, t in zip(names, texts)]},
                         indent=2))
    elif not args.output:
        for name, t in zip(names, texts):
            sys.stdout.write(f"# {name}\n{t}\n")
    else:
        print(f"wrote {len(texts)} factors to {args.output}")


# subcommands

def cmd_compose(args) -> int:
    a, b = load(args.a), load(args.b)
    if isinstance(a, Diagram) != isinstance(b, Diagram):
        raise SizeMismatch("cannot compose a finite diagram with a graph on N")
    if isinstance(a, Diagram):
        c = compose(a, b)
    else:
        lazy = compose_lazy(a, b)
        c = detect_periodicity(lazy, args.scan)
        if c is None or not window_equal(c, lazy, 2 * args.scan):
            raise DetectionFailed(f"no period found below {args.scan}")
    text = to_text(c)
    if args.output:
        Path(args.output).write_text(text)
        if not args.json:
            return 0
    _emit(args, text, {"pbd": text})
    return 0


def cmd_params(args) -> int:
    p = profile(load(args.a))
    _emit(args, str(p), _profile_json(p))
    return 0


_ORDER = [MonoidClass.S, MonoidClass.GL, MonoidClass.GR, MonoidClass.E, MonoidClass.F,
          MonoidClass.FL, MonoidClass.FR, MonoidClass.PB]


def cmd_classify(args) -> int:
    m = memberships(load(args.a))
    text = "\n".join(f"{c.value}: {'yes' if m[c] else 'no'}" for c in _ORDER)
    _emit(args, text, {c.value: m[c] for c in _ORDER})
    return 0


def _gens_from_dir(path) -> list:
    files = sorted(Path(path).glob("*.pbd"))
    if not files:
        raise UsageError(f"no .pbd files in {path}")
    return [load(f) for f in files]


def cmd_factor(args) -> int:
    from . import factor as F
    a = load(args.a)
    m = args.method
    if m == "unit-regular":
        fs, names = F.factor_unit_regular(a), ["idempotent", "unit"]
    elif m == "e-gl":
        fs, names = F.factor_E_GL(a), ["idempotent", "left_unit"]
    elif m == "gr-gl":
        r, l = F.factor_GR_GL(a)
        fs, names = (r, l), ["right_unit", "left_unit"]
    elif m == "mcycle":
        fs, names = F.factor_mcycle(a), None
    elif m == "mtrail":
        fs, names = F.factor_mtrail(a), None
    elif m == "two-trails":
        fs, names = F.factor_two_trails(a), None
    elif m == "ix":
        fs, names = F.factor_IX_idempotents(a), None
    else:
        from .closure import idempotent_set
        gens = _gens_from_dir(args.gens) if args.gens else idempotent_set(a.n)
        word = F.factor_via_words(a, gens)
        if word is None:
            _emit(args, "no word over the generators", {"word": None})
            return 1
        fs, names = [gens[k] for k in word], None
        if not args.json:
            print("word: " + " ".join(str(k) for k in word))
    _write_factors(args, list(fs), names)
    return 0


def cmd_closure(args) -> int:
    from .closure import cached_closure, closure, save_file
    gens = _gens_from_dir(args.gens)
    kw = dict(cap=args.cap, threads=args.threads)
    if os.environ.get("PBW_CACHE_DIR"):
        res = cached_closure(gens, not args.no_identity, **kw)
    else:
        res = closure(gens, not args.no_identity, **kw)
    if args.output:
        save_file(res, args.output)
    _emit(args, f"elements: {len(res)}", {"elements": len(res), "generators": len(gens)})
    return 0


def _target(name: str, n: int) -> list:
    from .closure import closure, idempotent_set, symmetric_group
    if name == "pb":
        return enumerate_all(n)
    if name == "e":
        return list(closure(idempotent_set(n)).elements)
    return symmetric_group(n)


def cmd_rank(args) -> int:
    from .closure import rank_search, relrank_search
    target = _target(args.target, args.n)
    if args.base == "none":
        found = rank_search(target, args.max, n=args.n)
    else:
        found = relrank_search(target, _target(args.base, args.n), args.max, n=args.n)
    what = "rank" if args.base == "none" else f"relrank over {args.base}"
    if found is None:
        _emit(args, f"{what} > {args.max}", {"value": None, "bound": args.max})
        return 0
    lines = [f"{what} = {len(found)}"] + [repr(g) for g in found]
    _emit(args, "\n".join(lines), {"value": len(found), "generators": [to_pbd(g) for g in found]})
    return 0


def cmd_witness(args) -> int:
    from .witness import witness
    ws = witness(args.key)
    failed = ws.check()
    lines = [f"{ws.key}: {ws.description} ({len(ws)} elements)"]
    lines += [f"  {name}: {profile(el)}" for name, el in ws.elements]
    lines += [f"  {'FAIL' if name in failed else 'ok'}  {name}" for name, _ in ws.clauses]
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        for name, el in ws.elements:
            (out / f"{name}.pbd").write_text(to_text(el))
    _emit(args, "\n".join(lines), {
        "key": ws.key, "size": len(ws),
        "elements": {name: _profile_json(profile(el)) for name, el in ws.elements},
        "failed": failed})
    return 1 if failed else 0


def cmd_table(args) -> int:
    from .cardinal import render_table, rho, table_rows
    rows = table_rows(args.aleph)
    _emit(args, render_table(args.aleph), {
        "aleph": args.aleph, "rho": rho(args.aleph).value,
        "rows": [{"kind": k, "label": l, "value": v} for k, l, v in rows]})
    return 0


def cmd_verify(args) -> int:
    from .verify import SUITES
    names = [args.suite] if args.suite else list(SUITES)
    for name in names:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    results = {}
    for name in names:
        fn = SUITES[name]
        kw = {"seed": args.seed} if args.seed is not None and "seed" in inspect.signature(fn).parameters else {}
        results[name] = fn(**kw)
    lines = []
    for name, bad in results.items():
        lines.append(f"PASS {name}" if not bad else f"FAIL {name}: {len(bad)} violations")
        lines += [f"    {b}" for b in bad[:5]]
    _emit(args, "\n".join(lines), {k: v for k, v in results.items()})
    return 0 if not any(results.values()) else 1


def cmd_render(args) -> int:
    from .render import render
    text = render(load(args.a), args.window)
    _emit(args, text, {"render": text})
    return 0


def build_parser() -> argparse.ArgumentParser:
    # the flags are accepted before or after the subcommand; the subcommand
    # copies default to SUPPRESS so they never overwrite a global setting
    def flags(**kw):
        parent = _Parser(add_help=False, **kw)
        parent.add_argument("--json", action="store_true", help="structured output")
        parent.add_argument("--seed", type=int, help="seed for randomised suites")
        return parent

    p = _Parser(prog="pbmonoid", description="Partial Brauer monoid toolkit", parents=[flags()])
    common = flags(argument_default=argparse.SUPPRESS)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("compose", parents=[common], help="compose two .pbd files")
    s.add_argument("a"), s.add_argument("b")
    s.add_argument("-o", "--output")
    s.add_argument("--scan", type=int, default=DEFAULT_SCAN)
    s.set_defaults(fn=cmd_compose)

    s = sub.add_parser("params", parents=[common], help="parameter profile")
    s.add_argument("a")
    s.set_defaults(fn=cmd_params)

    s = sub.add_parser("classify", parents=[common], help="submonoid memberships")
    s.add_argument("a")
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("factor", parents=[common], help="constructive factorisations")
    s.add_argument("a")
    s.add_argument("--method", required=True,
                   choices=["unit-regular", "e-gl", "gr-gl", "mcycle", "mtrail", "two-trails", "ix",
                            "words"])
    s.add_argument("--gens", help="directory of generator .pbd files (method words)")
    s.add_argument("-o", "--output", help="directory for factor files")
    s.set_defaults(fn=cmd_factor)

    s = sub.add_parser("closure", parents=[common], help="enumerate a generated submonoid")
    s.add_argument("gens", help="directory of generator .pbd files")
    s.add_argument("-o", "--output")
    s.add_argument("--no-identity", action="store_true", help="semigroup instead of monoid")
    s.add_argument("--cap", type=int, default=10 ** 6)
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(fn=cmd_closure)

    s = sub.add_parser("rank", parents=[common], help="exhaustive rank / relative rank search")
    s.add_argument("--target", choices=["pb", "e", "s"], required=True)
    s.add_argument("--base", choices=["none", "pb", "e", "s"], default="none")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--max", type=int, required=True)
    s.set_defaults(fn=cmd_rank)

    s = sub.add_parser("witness", parents=[common], help="generating sets on N")
    s.add_argument("key")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_witness)

    s = sub.add_parser("table", parents=[common], help="relative ranks, Sierpinski ranks, Bergman")
    s.add_argument("--aleph", type=int, required=True)
    s.set_defaults(fn=cmd_table)

    s = sub.add_parser("verify", parents=[common], help="run invariant suites")
    s.add_argument("--suite")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("render", parents=[common], help="two-row ASCII picture")
    s.add_argument("a")
    s.add_argument("--window", type=int, default=12)
    s.set_defaults(fn=cmd_render)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        print(f"error: UsageError: {exc}", file=sys.stderr)
        return 2
    except PBError as exc:
        print(f"error: {exc.code}: {exc.detail}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
