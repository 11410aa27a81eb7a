"""Command-line interface.

Exit codes: 0 success, 1 conformance failure, 2 usage error, 3 cross-engine disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import conformance, quiver, rep
from .ext1 import DEFAULT_CAP, EngineDisagreement, SizeCapExceeded, ext1
from .gf import is_prime
from .midheight import classify_height_pm1, midheight_modules
from .witt import Character, centralizer, classify_restricted, height, representative

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise UsageError(f"not an integer: {text!r}") from None
    if p < 5 or not is_prime(p):
        raise UsageError(f"p must be a prime >= 5, got {p}")
    return p


def _chi(args, p: int) -> Character | None:
    if getattr(args, "chi", None) is None:
        return None
    try:
        vals = json.loads(args.chi)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--chi must be a JSON array: {exc}") from None
    if not isinstance(vals, list) or len(vals) != p or not all(isinstance(v, int) for v in vals):
        raise UsageError(f"--chi must be a JSON array of {p} integers (e_-1 ... e_{p - 2})")
    chi = Character(tuple(vals), p)
    if args.height is not None and height(chi) != args.height:
        raise UsageError(f"--chi has height {height(chi)}, but --height {args.height} was given")
    return chi


def _write(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_quiver(args) -> int:
    p = _prime(args.p)
    chi = _chi(args, p)
    h = args.height if chi is None else None
    if chi is None and h is None:
        raise UsageError("give --height or --chi")
    try:
        q = quiver.build_quiver(p, h, args.family, args.engine, chi=chi, cap=args.cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(args, quiver.emit(q, args.format))
    return EXIT_OK


def cmd_verify(args) -> int:
    primes = [_prime(t) for t in args.p.split(",") if t]
    which = [t for t in args.which.split(",") if t]
    unknown = [t for t in which if t not in conformance.TOPICS]
    if unknown:
        raise UsageError(f"unknown checks {unknown}; choose from {', '.join(conformance.TOPICS)}")
    checks = conformance.run(primes, which, args.engine, args.seed)
    text = "\n".join(c.line() for c in checks) + "\n"
    failed = sum(not c.ok for c in checks)
    text += f"{len(checks) - failed}/{len(checks)} checks passed\n"
    _write(args, text)
    return EXIT_FAIL if failed else EXIT_OK


def _module_for_label(p: int, r: int, label: str, chi: Character | None):
    if 1 < r < p - 1:
        if label != "L":
            raise UsageError("at middle heights the only simple module is 'L'")
        return midheight_modules(chi or representative(p, r)).L
    try:
        return rep.build_module(p, r, label)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _family_and_lam(label: str):
    return ("verma" if label.startswith("Z") else "simple"), int(label[1:])


def cmd_ext(args) -> int:
    p = _prime(args.p)
    chi = _chi(args, p)
    r = height(chi) if chi is not None else args.height
    if r is None:
        raise UsageError("give --height or --chi")
    if r == p - 1:
        raise UsageError("height p-1 modules are not constructed; use 'classify'")
    S = _module_for_label(p, r, args.source, chi)
    T = _module_for_label(p, r, args.target, chi)
    vals = {}
    if args.engine in ("derivation", "both") and r in (-1, 0, 1):
        (fs, mu), (ft, lam) = _family_and_lam(args.source), _family_and_lam(args.target)
        if fs != ft:
            raise UsageError("source and target must both be Verma (Z) or both simple (L)")
        d = quiver.derivation_ext(p, r, fs, mu, lam)
        if d is not None:
            vals["derivation"] = d
    if args.engine in ("cocycle", "both") or not vals:
        vals["cocycle"] = ext1(S, T, cap=args.cap).dim
    if len(set(vals.values())) > 1:
        raise EngineDisagreement((args.source, args.target), vals)
    dim = next(iter(vals.values()))
    if args.format == "json":
        rec = {"p": p, "chi": list((chi or representative(p, r)).values), "height": r, "source": args.source,
               "target": args.target, "ext_dim": dim, "engine": "+".join(sorted(vals))}
        _write(args, json.dumps(rec, sort_keys=True) + "\n")
    else:
        _write(args, f"{dim}\n")
    return EXIT_OK


def cmd_classify(args) -> int:
    p = _prime(args.p)
    chi = _chi(args, p)
    if chi is None:
        raise UsageError("classify needs --chi")
    r = height(chi)
    C = centralizer(chi)
    cls = classify_restricted(p, C)
    rec = {"p": p, "chi": list(chi.values), "height": r, "centralizer_dim": int(C.shape[0]),
           "centralizer": [[int(v) for v in row] for row in C], "class": cls.verdict,
           "diagnostic": cls.diagnostic}
    if r == p - 1:
        rec["ext_LL"] = classify_height_pm1(p, chi).loop_multiplicity
    if args.format == "json":
        _write(args, json.dumps(rec, sort_keys=True) + "\n")
    else:
        lines = [f"height: {r}", f"centralizer dim: {rec['centralizer_dim']}", f"centralizer class: {cls.verdict}"]
        if "ext_LL" in rec:
            lines.append(f"Ext^1(L, L) on the distinguished simple: {rec['ext_LL']}")
        _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_dump(args) -> int:
    p = _prime(args.p)
    chi = _chi(args, p)
    r = height(chi) if chi is not None else args.height
    if r is None:
        raise UsageError("give --height or --chi")
    M = _module_for_label(p, r, args.module, chi)
    _write(args, json.dumps(M.to_dict(), sort_keys=True) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wittquiver", description="Ext^1-quivers for reduced enveloping algebras of W(1,1)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(sp, need_height=True):
        sp.add_argument("--p", required=True, help="prime >= 5")
        if need_height:
            sp.add_argument("--height", type=int, default=None)
        sp.add_argument("--chi", default=None, help="JSON array of chi(e_-1) ... chi(e_{p-2})")
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum cocycle unknowns")
        sp.add_argument("--output", default=None)

    q = sub.add_parser("quiver", help="compute an Ext^1-quiver")
    common(q)
    q.add_argument("--family", choices=quiver.FAMILIES, default="simple")
    q.add_argument("--engine", choices=quiver.ENGINES, default="cocycle")
    q.add_argument("--format", choices=("dot", "json", "text"), default="dot")
    q.set_defaults(fn=cmd_quiver)

    v = sub.add_parser("verify", help="run conformance checks")
    v.add_argument("--p", required=True, help="comma-separated primes")
    v.add_argument("--which", default="verma,simple,polys", help=",".join(conformance.TOPICS))
    v.add_argument("--engine", choices=quiver.ENGINES, default="both")
    v.add_argument("--seed", type=int, default=0, help="seed for randomized cocycle trials")
    v.add_argument("--output", default=None)
    v.set_defaults(fn=cmd_verify)

    e = sub.add_parser("ext", help="dim Ext^1 between two modules")
    common(e)
    e.add_argument("source")
    e.add_argument("target")
    e.add_argument("--engine", choices=quiver.ENGINES, default="cocycle")
    e.add_argument("--format", choices=("text", "json"), default="text")
    e.set_defaults(fn=cmd_ext)

    c = sub.add_parser("classify", help="height and centralizer class of a character")
    common(c, need_height=False)
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.set_defaults(fn=cmd_classify, height=None)

    d = sub.add_parser("dump", help="print a module as JSON")
    common(d)
    d.add_argument("--module", required=True, help="Z<lam>, L<lam> or L")
    d.set_defaults(fn=cmd_dump)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EngineDisagreement as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_DISAGREE


if __name__ == "__main__":
    sys.exit(main())

