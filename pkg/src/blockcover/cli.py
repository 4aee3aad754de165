"""Command-line front end.

Exit codes: 0 all asserted properties hold, 1 verification refuted,
2 input or precondition error, 3 resource guard hit.  Every flag may also be
set through an environment variable ``BLOCKCOVER_<FLAG>`` (e.g.
``BLOCKCOVER_BOUND``); explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import blocking as bl
from . import groupcover as gc
from .errors import BlockcoverError, ResourceGuardError
from .fqlin import parse_vector
from .gf import GF
from .projgeom import DEFAULT_BOUND, ProjSpace

ENV_PREFIX = "BLOCKCOVER_"


class InputError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    enumeration_bound: int = DEFAULT_BOUND
    parallel_workers: int = 1
    output_format: str = "json"

    def __post_init__(self):
        if self.enumeration_bound < 2:
            raise InputError("--bound must be >= 2")
        if self.parallel_workers < 1:
            raise InputError("--workers must be >= 1")
        if self.output_format not in ("json", "text"):
            raise InputError("--format must be json or text")


def _env(name: str, default=None):
    return os.environ.get(ENV_PREFIX + name.upper(), default)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: top-level JSON value must be an object")
    return data


def _kind(data: dict) -> str:
    if data.get("kind") == "hyperplane_cover":
        return "hyperplane_cover"
    if "points" in data:
        return "blocking"
    if "group" in data and "members" in data:
        return "cover"
    raise InputError("cannot tell input kind: expected 'points', 'group'+'members' or a hyperplane_cover")


def _parse(path: str, data: dict, kind: str, cfg: Config):
    try:
        if kind == "blocking":
            return bl.BlockingSet.from_json(data, cfg.enumeration_bound)
        if kind == "hyperplane_cover":
            return bl.HyperplaneCover.from_json(data)
        return gc.GroupCover.from_json(data)
    except ResourceGuardError:
        raise
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: missing or malformed field {exc}") from None
    except (ValueError, BlockcoverError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _text_report(report: dict) -> str:
    lines = []
    for k, v in report.items():
        if k == "witnesses" and isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append("witnesses:")
            lines += [f"  {w['point']}  tangent {w['hyperplane']}" for w in v]
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def _render(obj: dict, cfg: Config) -> str:
    return _dump(obj) if cfg.output_format == "json" else _text_report(obj)


def _vector_cover_report(C: bl.HyperplaneCover) -> dict:
    chk = bl.check_vector_cover(C)
    return {
        "is_cover": chk.is_cover,
        "irredundant": chk.irredundant,
        "private": [None if v is None else ";".join(C.field.format(x) for x in v) for v in chk.private],
    }


# -- subcommands -----------------------------------------------------------------


def cmd_verify(args, cfg: Config) -> int:
    data = _load(args.input)
    kind = _kind(data)
    obj = _parse(args.input, data, kind, cfg)
    if kind == "blocking":
        report = bl.verification_report(obj)
        ok = report["blocking"] and report["minimal"]
    elif kind == "hyperplane_cover":
        report = _vector_cover_report(obj)
        ok = report["is_cover"] and report["irredundant"]
    else:
        report = gc.verify_cover(obj).to_json()
        ok = report["is_cover"] and report["irredundant"]
    _emit(_render(report, cfg), args.output)
    return 0 if ok else 1


def cmd_compose(args, cfg: Config) -> int:
    d1, d2 = _load(args.inputs[0]), _load(args.inputs[1])
    if args.kind == "blocking":
        B1 = _parse(args.inputs[0], d1, "blocking", cfg)
        B2 = _parse(args.inputs[1], d2, "blocking", cfg)
        if B1.space.field != B2.space.field:
            raise InputError(f"field mismatch: {B1.space.field!r} vs {B2.space.field!r}")
        F = B1.space.field
        try:
            a = parse_vector(F, args.a) if args.a else None
            b = parse_vector(F, args.b) if args.b else None
        except BlockcoverError as exc:
            raise InputError(f"--a/--b: {exc}") from None
        out = bl.compose_blocking_sets(B1, B2, args.i1, args.i2, a, b, verify=False)
        report = bl.verification_report(out)
        result = out.to_json()
        ok = report["blocking"] and report["minimal"] and len(out) == len(B1) + len(B2) - 1
    else:
        C1 = _parse(args.inputs[0], d1, "cover", cfg)
        C2 = _parse(args.inputs[1], d2, "cover", cfg)
        a = int(args.a) if args.a else None
        b = int(args.b) if args.b else None
        out = gc.compose_covers(C1, C2, args.i1, args.i2, a, b)
        verdict = gc.verify_cover(out)
        report = verdict.to_json()
        result = out.to_json({"product": [d1["group"], d2["group"]]})
        ok = verdict.is_cover and verdict.irredundant and len(out) == len(C1) + len(C2) - 1
    _emit(_render({"result": result, "verification": report}, cfg), args.output)
    return 0 if ok else 1


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(t) for t in text.replace("-", ",").split(","))
    except ValueError:
        raise InputError(f"--range expects 'kmin,kmax', got {text!r}") from None
    if not 1 <= lo <= hi:
        raise InputError("--range needs 1 <= kmin <= kmax")
    return lo, hi


def _space(args, cfg: Config) -> ProjSpace:
    if args.n is None or args.q is None:
        raise InputError("--n and --q are required")
    try:
        mod = [int(t) for t in args.modulus.split(",")] if args.modulus else None
        return ProjSpace(int(args.n), GF(int(args.q), mod), cfg.enumeration_bound)
    except (ValueError, BlockcoverError) as exc:
        raise InputError(str(exc)) from None


def cmd_search(args, cfg: Config) -> int:
    S = _space(args, cfg)
    lo, hi = _parse_range(args.range or f"1,{S.size}")
    res = bl.search_minimal(S, lo, hi, cfg.parallel_workers)
    pts = S.points

    def fmt(idx):
        return [S.format_point(pts[i]) for i in idx]

    if cfg.output_format == "text":
        lines = [f"{S!r} minimal blocking sets, sizes {lo}..{hi}"]
        lines += [f"  size {k}: {sc.count}   first {' '.join(fmt(sc.first))}" for k, sc in res.items()]
        _emit("\n".join(lines) + "\n", args.output)
        return 0
    spectrum = {}
    for k, sc in res.items():
        entry = {"count": sc.count, "first": fmt(sc.first)}
        if sc.listing is not None:
            entry["sets"] = [fmt(s) for s in sc.listing]
        spectrum[str(k)] = entry
    out = {"n": S.n, "q": S.q, "modulus": list(S.field.modulus), "range": [lo, hi], "spectrum": spectrum}
    _emit(_dump(out), args.output)
    return 0


def cmd_dualize(args, cfg: Config) -> int:
    data = _load(args.input)
    kind = _kind(data)
    if kind == "cover":
        raise InputError("dualize takes a blocking set or a hyperplane cover, not a group cover")
    obj = _parse(args.input, data, kind, cfg)
    if kind == "blocking":
        result = bl.dualize(obj)
        verdict = _vector_cover_report(result)
        ok = verdict["is_cover"] and verdict["irredundant"]
    else:
        result = bl.undualize(obj, cfg.enumeration_bound)
        verdict = bl.verification_report(result)
        ok = verdict["blocking"] and verdict["minimal"]
    _emit(_dump(result.to_json()), args.output)
    rep = _render(verdict, cfg)
    if args.report:
        Path(args.report).write_text(rep)
    else:
        sys.stderr.write(rep)
    return 0 if ok else 1


def cmd_enumerate(args, cfg: Config) -> int:
    S = _space(args, cfg)
    pts = [S.format_point(p) for p in S.points]
    if cfg.output_format == "text":
        _emit("\n".join(pts) + "\n", args.output)
    else:
        _emit(_dump({"n": S.n, "q": S.q, "modulus": list(S.field.modulus), "points": pts}), args.output)
    return 0


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=int(_env("workers", 1)))
    common.add_argument("--bound", type=int, default=int(_env("bound", DEFAULT_BOUND)))
    common.add_argument("--format", choices=("json", "text"), default=_env("format", "json"))
    common.add_argument("-o", "--output", default=_env("output"))

    space = argparse.ArgumentParser(add_help=False)
    space.add_argument("--n", type=int, default=_env("n"))
    space.add_argument("--q", type=int, default=_env("q"))
    space.add_argument("--modulus", default=_env("modulus"), help="coefficients, constant term first")

    parser = argparse.ArgumentParser(prog="blockcover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="verify a blocking set or group cover")
    p.add_argument("input")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compose", parents=[common], help="compose two blocking sets or covers")
    p.add_argument("kind", choices=("blocking", "cover"))
    p.add_argument("inputs", nargs=2)
    p.add_argument("--i1", type=int, default=int(_env("i1", 0)))
    p.add_argument("--i2", type=int, default=int(_env("i2", 0)))
    p.add_argument("--a", default=_env("a"), help="vector 'c;c;..' (blocking) or element index (cover)")
    p.add_argument("--b", default=_env("b"))
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("search", parents=[common, space], help="exhaustive minimal blocking set search")
    p.add_argument("--range", default=_env("range"), help="kmin,kmax")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("dualize", parents=[common], help="blocking set <-> hyperplane cover")
    p.add_argument("input")
    p.add_argument("--report", default=_env("report"), help="write the verdict here instead of stderr")
    p.set_defaults(func=cmd_dualize)

    p = sub.add_parser("enumerate", parents=[common, space], help="list the points of PG(n,q)")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except ValueError as exc:  # malformed numeric environment override
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        cfg = Config(args.bound, args.workers, args.format)
        return args.func(args, cfg)
    except ResourceGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (InputError, BlockcoverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
