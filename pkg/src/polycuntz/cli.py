"""Command-line front end: ``polycuntz <command> ...``.

Exit status is 0 whenever a verdict was computed (negative verdicts included),
1 on parse or validation errors and 2 when a search budget ran out.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .clopen import CylinderUnion
from .dynamics import EpPoint, ad_point_map, classify_ad_fixed, corner_dimension, fixed_set_approx
from .errors import BudgetExceededError, CuntzError
from .fileformat import parse_unitary, parse_word, render_unitary, render_word
from .gamma import NotAutomorphism, decide_diagonal, to_dot, vertex_str
from .invertibility import Inconclusive, Invertible, NotInvertible, decide_invertible
from .poly import PolyMap, adjoint, canonical_form, check_unitary, compose
from .randomgen import random_unitary
from .stabilize import AllStabilized, StabilizedAt, check_all_level, stabilize_projection

SCHEMA = "1"
EXIT_OK, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2


def _emit(payload: dict) -> None:
    print(json.dumps({"schema": SCHEMA, **payload}, sort_keys=False))


def _load(path: str):
    return parse_unitary(Path(path).read_text())


def _words(c: CylinderUnion) -> list[str]:
    return [render_word(w, c.n) for w in c.words]


def _pairs(u: PolyMap) -> list[list[str]]:
    return [[render_word(a, u.n), render_word(b, u.n)] for a, b in u.pairs()]


def _write_unitary(u: PolyMap, out: str | None, comment: str) -> None:
    text = render_unitary(u, comment)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    u = _load(args.file)
    _emit({"verdict": "valid", "n": u.n, "pairs": _pairs(u), "ell": u.ell, "ell_prime": u.ell_prime})
    return EXIT_OK


def cmd_diag(args) -> int:
    u = _load(args.file)
    res = decide_diagonal(u)
    g = res.graph
    if args.dot:
        Path(args.dot).write_text(to_dot(g))
    payload = {"verdict": res.verdict}
    if isinstance(res, NotAutomorphism):
        payload["cycle"] = res.cycle.as_json()
    payload["vertices"] = len(g.vertices)
    payload["edges"] = g.edge_count()
    if args.json:
        _emit(payload)
    else:
        print(f"{res.verdict}: {len(g.vertices)} vertices, {g.edge_count()} edges")
        if isinstance(res, NotAutomorphism):
            c = res.cycle
            steps = [f"{vertex_str(v)} -({lab})->" for v, lab in zip(c.vertices, c.labels)]
            print("cycle: " + " ".join(steps) + f" {vertex_str(c.vertices[0])}")
    return EXIT_OK


def cmd_stabilize(args) -> int:
    u = _load(args.file)
    res = stabilize_projection(u, parse_word(args.word, u.n, 0), args.max_k)
    if isinstance(res, StabilizedAt):
        _emit({"verdict": "stabilized", "k": res.k, "limit": _words(res.limit), "k_max": args.max_k})
        return EXIT_OK
    _emit({"verdict": "budget_exceeded", "k_max": res.k_max, "trace": list(res.max_word_length_trace)})
    return EXIT_BUDGET


def cmd_check_level(args) -> int:
    u = _load(args.file)
    res = check_all_level(u, args.max_k)
    per_word = {
        render_word(g, u.n): (r.k if r.stabilized else None) for g, r in res.results.items()
    }
    if isinstance(res, AllStabilized):
        _emit({"verdict": "all_stabilized", "max_k": res.max_k, "k": per_word, "k_max": args.max_k})
        return EXIT_OK
    _emit({
        "verdict": "budget_exceeded",
        "failures": [render_word(g, u.n) for g in res.words],
        "k": per_word,
        "k_max": args.max_k,
    })
    return EXIT_BUDGET


def _certificates_json(u, certs: dict) -> list:
    out = []
    for (a, a2), yes in certs.items():
        c = yes.certificate
        out.append({
            "alpha": render_word(a, u.n),
            "alpha_prime": render_word(a2, u.n),
            "depth": yes.depth,
            "cover": [render_word(w, u.n) for w in c.cover.words],
        })
    return out


def cmd_invert(args) -> int:
    u = _load(args.file)
    res = decide_invertible(u, depth=args.depth, k_max=args.max_k)
    payload: dict = {"verdict": res.verdict, "depth": args.depth, "k_max": args.max_k}
    if isinstance(res, Invertible):
        ev = res.evidence
        payload["gauge"] = _pairs(ev["gauge"])
        if "template" in ev:
            payload["template"] = ev["template"]
            payload["skipped"] = ev["skipped"]
        else:
            payload["k"] = ev["delta"].k
            if "z" in ev:
                payload["degree_one_word"] = _pairs(ev["z"])
            payload["certificates"] = _certificates_json(u, ev["certificates"])
        _emit(payload)
        return EXIT_OK
    if isinstance(res, NotInvertible):
        payload["reason"] = res.reason
        if res.reason == "diagonal":
            payload["cycle"] = res.detail.as_json()
        _emit(payload)
        return EXIT_OK
    assert isinstance(res, Inconclusive)
    payload["stage"] = res.stage
    if res.detail is not None:
        payload["detail"] = [render_word(w, u.n) for w in res.detail]
    _emit(payload)
    return EXIT_BUDGET


def cmd_compose(args) -> int:
    u, w = _load(args.file1), _load(args.file2)
    if u.n != w.n:
        raise CuntzError(f"alphabet mismatch: n={u.n} vs n={w.n}")
    _write_unitary(canonical_form(compose(u, w)), args.output, f"lambda_u(w) u for u={args.file1}, w={args.file2}")
    return EXIT_OK


def cmd_adjoint(args) -> int:
    u = _load(args.file)
    _write_unitary(check_unitary(adjoint(u)), args.output, f"adjoint of {args.file}")
    return EXIT_OK


def cmd_fixed_points(args) -> int:
    u = _load(args.file)
    payload: dict = {"depth": args.depth}
    diag = decide_diagonal(u)
    payload["diagonal"] = diag.verdict
    payload["fixed_set"] = _words(fixed_set_approx(u, args.depth)) if diag.verdict == "automorphism" else None
    if args.ad_classify:
        rep = classify_ad_fixed(u)
        payload["clopen_part"] = _words(rep.clopen_part)
        payload["isolated"] = [
            {"point": [render_word(p.preperiod, u.n), render_word(p.period, u.n)], "kind": kind}
            for p, kind in rep.isolated
        ]
    _emit(payload)
    return EXIT_OK


def _parse_point(text: str, n: int) -> EpPoint:
    if text.count(":") != 1:
        raise CuntzError("point must be SIGMA:TAU")
    s, t = text.split(":")
    return EpPoint(parse_word(s, n, 0), parse_word(t, n, 0))


def cmd_orbit(args) -> int:
    u = _load(args.file)
    x = _parse_point(args.point, u.n)
    orbit = [x]
    for _ in range(args.steps):
        orbit.append(ad_point_map(u, orbit[-1]))
    _emit({"orbit": [[render_word(p.preperiod, u.n), render_word(p.period, u.n)] for p in orbit]})
    return EXIT_OK


def cmd_dim(args) -> int:
    u = _load(args.file)
    g = parse_word(args.corner, u.n, 0)
    _emit({"corner": render_word(g, u.n), "level": args.level, "dimension": corner_dimension(u, g, args.level)})
    return EXIT_OK


def cmd_random(args) -> int:
    u = random_unitary(args.n, args.pairs, args.max_len, args.seed)
    _write_unitary(u, args.output, f"random n={args.n} pairs={args.pairs} max_len={args.max_len} seed={args.seed}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polycuntz", description="Polynomial endomorphisms of Cuntz algebras.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="parse and validate a unitary file")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("diag", help="decide whether lambda_u is an automorphism of the diagonal")
    s.add_argument("file")
    s.add_argument("--dot", metavar="PATH")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_diag)

    s = sub.add_parser("stabilize", help="run the stabilization oracle on one projection")
    s.add_argument("file")
    s.add_argument("--word", required=True)
    s.add_argument("--max-k", type=int, default=50)
    s.set_defaults(func=cmd_stabilize)

    s = sub.add_parser("check-level", help="run the oracle on every word of length ell'")
    s.add_argument("file")
    s.add_argument("--max-k", type=int, default=50)
    s.set_defaults(func=cmd_check_level)

    s = sub.add_parser("invert", help="decide whether lambda_u is an automorphism")
    s.add_argument("file")
    s.add_argument("--depth", type=int, default=12)
    s.add_argument("--max-k", type=int, default=50)
    s.set_defaults(func=cmd_invert)

    s = sub.add_parser("compose", help="write lambda_u(w) u")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("adjoint", help="write u*")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_adjoint)

    s = sub.add_parser("fixed-points", help="depth-d approximation of the fixed set")
    s.add_argument("file")
    s.add_argument("--depth", type=int, default=8)
    s.add_argument("--ad-classify", action="store_true")
    s.set_defaults(func=cmd_fixed_points)

    s = sub.add_parser("orbit", help="iterate Ad(u) on an eventually periodic point")
    s.add_argument("file")
    s.add_argument("--point", required=True, metavar="SIGMA:TAU")
    s.add_argument("--steps", type=int, default=20)
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("dim", help="dimension of a corner of lambda_u(D_n^k)")
    s.add_argument("file")
    s.add_argument("--corner", required=True)
    s.add_argument("--level", type=int, required=True)
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("random", help="write a seeded random unitary")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--pairs", type=int, default=3)
    s.add_argument("--max-len", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_random)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"polycuntz: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CuntzError, OSError) as exc:
        print(f"polycuntz: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
