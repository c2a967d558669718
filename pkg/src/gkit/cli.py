"""``gkit`` command line.

Exit codes: 0 success or verdict true, 1 verdict false or validation
failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .actions import GroupoidAction, validate_action
from .bisets import Biset, two_sided_translation, validate_biset
from .cosets import coset_action_consistent, coset_space
from .dsl import CheckDecl, Environment, load
from .errors import GkitError, MalformedParams, MiddleGroupoidMismatch, ParseError, UnresolvedReference
from .generate import RandomConfig, instance_to_dict, random_instance
from .groupoid import FiniteGroupoid, Subgroupoid, subgroupoid_check, validate_groupoid
from .mackey import MackeyInstance, verify_mackey
from .report import Report, emit_report, mackey_result, orbits_result, plot_mackey, plot_random, to_result
from .tensor import tensor_product, tensor_well_defined

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gkit", description="Finite groupoid toolkit and Mackey formula checker.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmts=("json",)):
        g = sp.add_mutually_exclusive_group()
        for f in fmts:
            g.add_argument(f"--{f}", dest="fmt", action="store_const", const=f, help=f"{f} output")
        sp.set_defaults(fmt="text")
        sp.add_argument("--timings", action="store_true", help="record wall-clock timings in the report")
        sp.add_argument("-o", "--output", help="write the report here instead of stdout")

    sp = sub.add_parser("validate", help="validate every declaration and run check directives")
    sp.add_argument("file")
    common(sp)

    sp = sub.add_parser("orbits", help="orbits and stabilizers of an action, or double orbits of a biset")
    sp.add_argument("file")
    sp.add_argument("--name", required=True)
    common(sp, ("json", "dot"))

    sp = sub.add_parser("cosets", help="coset space of a subgroupoid")
    sp.add_argument("file")
    sp.add_argument("--groupoid", required=True)
    sp.add_argument("--sub", required=True)
    sp.add_argument("--side", choices=("left", "right"), required=True)
    common(sp)

    sp = sub.add_parser("tensor", help="tensor product of two bisets")
    sp.add_argument("file")
    sp.add_argument("--left", required=True)
    sp.add_argument("--over", required=True)
    sp.add_argument("--right", required=True)
    common(sp)

    sp = sub.add_parser("mackey", help="verify the Mackey formula for one instance")
    sp.add_argument("file")
    for n in ("k", "h", "g", "m", "l"):
        sp.add_argument(f"--{n}", required=True)
    sp.add_argument("--plot", metavar="PNG", help="also draw a summand size chart")
    common(sp)

    sp = sub.add_parser("random", help="verify the Mackey formula on seeded random instances")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-objects", type=int, default=3)
    sp.add_argument("--max-group-order", type=int, default=4)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    sp.add_argument("--json", dest="json_out", metavar="OUT", help="write the JSON report to OUT ('-' for stdout)")
    sp.add_argument("--plot", metavar="PNG", help="also draw a size scatter plot")
    sp.add_argument("--timings", action="store_true")
    return p


# ---------------------------------------------------------------------------
# helpers


def _read(path: str) -> Environment:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return load(text)


def _write(data: bytes, out: str | None):
    if out and out != "-":
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _emit(report: Report, args) -> int:
    fmt = args.fmt
    _write(emit_report(report, fmt), args.output)
    return EXIT_OK if report.verdict in (None, True) else EXIT_FALSE


def _ms(t0: float) -> float:
    return round((time.perf_counter() - t0) * 1000, 3)


def validate_entity(obj):
    if isinstance(obj, FiniteGroupoid):
        return "groupoid", validate_groupoid(obj)
    if isinstance(obj, Subgroupoid):
        return "subgroupoid", subgroupoid_check(obj)
    if isinstance(obj, GroupoidAction):
        return "action", validate_action(obj)
    return "biset", validate_biset(obj)


def run_check(env: Environment, c: CheckDecl) -> dict:
    a = c.args
    if c.kind == "validate":
        kind, rep = validate_entity(env[a[0]])
        return {"ok": rep.ok, "result": rep.to_dict()}
    if c.kind == "orbits":
        return {"ok": True, "result": orbits_result(env[a[0]])}
    if c.kind == "cosets":
        sp = coset_space(env.groupoid(a[0]), env.subgroupoid(a[1]), a[2])
        return {"ok": coset_action_consistent(sp), "result": to_result(sp)}
    if c.kind == "tensor":
        _check_over(env.biset(a[0]), env.groupoid(a[1]), env.biset(a[2]))
        tp = tensor_product(env.biset(a[0]), env.biset(a[2]))
        return {"ok": tensor_well_defined(tp), "result": to_result(tp)}
    inst = MackeyInstance(*(env[x] for x in a), name=" ".join(a))
    r = verify_mackey(inst)
    return {"ok": r.verdict, "result": mackey_result(r, detail=False)}


def _check_over(X: Biset, G: FiniteGroupoid, Y: Biset):
    if X.right_groupoid is not G or Y.left_groupoid is not G:
        raise MiddleGroupoidMismatch(f"both bisets must meet at {G.name!r}")


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    t0 = time.perf_counter()
    env = _read(args.file)
    entities = []
    for name in env.spec.names():
        kind, rep = validate_entity(env.objects[name])
        entities.append({"name": name, "kind": kind, **rep.to_dict()})
    checks = []
    for c in env.spec.checks:
        try:
            res = run_check(env, c)
        except GkitError as exc:
            res = {"ok": False, "error": f"{type(exc).__name__}: {exc}"}
        checks.append({"check": f"{c.kind} {' '.join(c.args)}", **res})
    verdict = all(e["ok"] for e in entities) and all(c["ok"] for c in checks)
    timings = {"total": _ms(t0)} if args.timings else {}
    return _emit(Report("validate", {"file": args.file}, {"entities": entities, "checks": checks},
                        verdict=verdict, timings_ms=timings), args)


def cmd_orbits(args) -> int:
    t0 = time.perf_counter()
    env = _read(args.file)
    obj = env[args.name]
    if not isinstance(obj, (GroupoidAction, Biset)):
        raise UnresolvedReference(f"{args.name!r} is not an action or a biset")
    if args.fmt == "dot":
        if isinstance(obj, Biset):
            obj = two_sided_translation(obj)
        _write(emit_report(obj, "dot"), args.output)
        return EXIT_OK
    timings = {"total": _ms(t0)} if args.timings else {}
    return _emit(Report("orbits", {"file": args.file, "name": args.name}, orbits_result(obj),
                        timings_ms=timings), args)


def cmd_cosets(args) -> int:
    t0 = time.perf_counter()
    env = _read(args.file)
    sp = coset_space(env.groupoid(args.groupoid), env.subgroupoid(args.sub), args.side)
    ok = coset_action_consistent(sp)
    timings = {"total": _ms(t0)} if args.timings else {}
    inputs = {"file": args.file, "groupoid": args.groupoid, "sub": args.sub, "side": args.side}
    return _emit(Report("cosets", inputs, sp, verdict=ok, timings_ms=timings), args)


def cmd_tensor(args) -> int:
    t0 = time.perf_counter()
    env = _read(args.file)
    X, G, Y = env.biset(args.left), env.groupoid(args.over), env.biset(args.right)
    _check_over(X, G, Y)
    tp = tensor_product(X, Y)
    ok = tensor_well_defined(tp) and validate_biset(tp.result).ok
    timings = {"total": _ms(t0)} if args.timings else {}
    inputs = {"file": args.file, "left": args.left, "over": args.over, "right": args.right}
    return _emit(Report("tensor", inputs, tp, verdict=ok, timings_ms=timings), args)


def cmd_mackey(args) -> int:
    t0 = time.perf_counter()
    env = _read(args.file)
    names = (args.k, args.h, args.g, args.m, args.l)
    inst = MackeyInstance(env.groupoid(args.k), env.groupoid(args.h), env.groupoid(args.g),
                          env.subgroupoid(args.m), env.subgroupoid(args.l), name=" ".join(names))
    r = verify_mackey(inst)
    timings = {"total": _ms(t0)} if args.timings else {}
    inputs = {"file": args.file, **dict(zip("KHGML", names))}
    if args.plot:
        plot_mackey(r, args.plot)
    return _emit(Report("mackey", inputs, r, verdict=r.verdict, timings_ms=timings), args)


def _random_row(cfg: RandomConfig, index: int, timings: bool) -> dict:
    t0 = time.perf_counter()
    inst = random_instance(cfg, index)
    r = verify_mackey(inst)
    row = {"index": index, "instance": instance_to_dict(inst), **mackey_result(r, detail=False)}
    if timings:
        row["ms"] = _ms(t0)
    return row


def random_report(cfg: RandomConfig, jobs: int = 1, timings: bool = False) -> Report:
    """Verify ``cfg.count`` instances; rows are ordered by instance index."""
    t0 = time.perf_counter()
    idx = range(cfg.count)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(_random_row, [cfg] * cfg.count, idx, [timings] * cfg.count))
    else:
        rows = [_random_row(cfg, i, timings) for i in idx]
    row_ms = {f"instance_{r['index']}": r.pop("ms") for r in rows if "ms" in r}
    verdict = all(r["verdict"] for r in rows)
    passed = sum(r["verdict"] for r in rows)
    inputs = {"max_objects": cfg.max_objects, "max_group_order": cfg.max_group_order, "count": cfg.count}
    tm = {"total": _ms(t0), **row_ms} if timings else {}
    return Report("random", inputs, {"passed": passed, "failed": cfg.count - passed, "instances": rows},
                  seed=cfg.seed, verdict=verdict, timings_ms=tm)


def cmd_random(args) -> int:
    seed = args.seed
    env_seed = os.environ.get("GKIT_SEED")
    if env_seed is not None and env_seed.strip():
        try:
            seed = int(env_seed, 0)
        except ValueError:
            raise GkitError(f"GKIT_SEED must be an integer, not {env_seed!r}") from None
    cfg = RandomConfig(seed, args.max_objects, args.max_group_order, args.count)
    rep = random_report(cfg, max(1, args.jobs), args.timings)
    if args.plot:
        plot_random(rep.result["instances"], args.plot)
    if args.json_out:
        _write(emit_report(rep, "json"), args.json_out)
    if args.json_out != "-":
        res = rep.result
        for row in res["instances"]:
            print(f"{row['index']:4d}  lhs={row['lhs_size']:<6d} summands={len(row['summands']):<3d} "
                  f"verdict={'true' if row['verdict'] else 'false'}")
        print(f"seed {cfg.seed}: {res['passed']}/{cfg.count} verdict true")
    return EXIT_OK if rep.verdict else EXIT_FALSE


COMMANDS = {
    "validate": cmd_validate,
    "orbits": cmd_orbits,
    "cosets": cmd_cosets,
    "tensor": cmd_tensor,
    "mackey": cmd_mackey,
    "random": cmd_random,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        where = getattr(args, "file", "<input>")
        print(f"gkit: {where}:{exc}" if exc.line else f"gkit: {where}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, MalformedParams, UnresolvedReference) as exc:
        print(f"gkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GkitError as exc:
        print(f"gkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FALSE


if __name__ == "__main__":
    sys.exit(main())
