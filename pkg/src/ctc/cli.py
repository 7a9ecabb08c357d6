"""Command-line runner: load bundled or local data files, run checks,
emit reports whose JSON form is byte-identical across runs and -j levels."""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import data_path
from .algebra import (
    AlgebraError,
    algebra_dim_with_twist,
    check_algebra,
    compute_index,
    frobenius_identity_check,
    load_algebra,
)
from .category import (
    Mor,
    Obj,
    associator,
    braiding,
    compose,
    load_category,
    tensor_mor,
    verify_hexagon,
    verify_pentagon,
    verify_triangle,
    verify_zigzag,
)
from .fields import ParseError, Scalar, scalar_literal
from .ledger import load_ledger, solution_report
from .modules import check_module, condense, is_local, load_module, run_suite_manifest
from .report import Report

_KIND_DIRS = {
    "check-category": "categories",
    "check-algebra": "algebras",
    "check-module": "modules",
    "condense": "categories",
    "suite": "suites",
    "ledger": "ledger",
}


def _resolve(arg: str, subdir: str) -> Path:
    p = Path(arg)
    if p.exists():
        return p
    name = arg if arg.endswith(".json") else arg + ".json"
    cand = Path(data_path("%s/%s" % (subdir, name)))
    if cand.exists():
        return cand
    raise FileNotFoundError("no such file and no bundled %s named %r" % (subdir, arg))


def _rand_scalar(rng, field) -> Scalar:
    if field.kind == "rational":
        return Scalar.from_fraction(field, Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
    if field.kind == "prime":
        return Scalar.from_int(field, rng.randrange(field.p))
    acc = Scalar.zero(field)
    for k in range(min(field.degree, 3)):
        c = rng.randint(-3, 3)
        if c:
            acc = acc + Scalar.zeta(field, k).scale(c)
    return acc


def _rand_endo(rng, x: Obj) -> Mor:
    field = x.spec.field
    blocks = {
        lab: [[_rand_scalar(rng, field) for _ in range(x.m(lab))] for _ in range(x.m(lab))]
        for lab in x.labels_present()
    }
    return Mor(x, x, blocks)


def _naturality_probe(spec, seed: int, trials: int = 3) -> Report:
    """Seeded spot checks that braiding and the associator are natural
    against random endomorphisms of random small objects."""
    report = Report()
    rng = random.Random(seed)
    labels = list(spec.labels)
    for k in range(trials):
        x = Obj(spec, {rng.choice(labels): 1, rng.choice(labels): 1})
        y = Obj(spec, {rng.choice(labels): 1})
        z = Obj(spec, {rng.choice(labels): 1})
        f, g, h = _rand_endo(rng, x), _rand_endo(rng, y), _rand_endo(rng, z)
        lhs = compose(braiding(x, y), tensor_mor(f, g))
        rhs = compose(tensor_mor(g, f), braiding(x, y))
        report.append(
            "braid-natural:%d" % k,
            "pass" if lhs == rhs else "fail",
            witness=None if lhs == rhs else (lhs - rhs).to_json(),
        )
        fgh = tensor_mor(tensor_mor(f, g), h)
        gfh = tensor_mor(f, tensor_mor(g, h))
        lhs = compose(associator(x, y, z), fgh)
        rhs = compose(gfh, associator(x, y, z))
        report.append(
            "assoc-natural:%d" % k,
            "pass" if lhs == rhs else "fail",
            witness=None if lhs == rhs else (lhs - rhs).to_json(),
        )
    return report


def _namespace(report: Report, prefix: str, summary: str) -> Report:
    """Collapse a clean sub-report to one pass line; namespace failures."""
    out = Report()
    if report.ok and not report.failing():
        out.append("%s/%s" % (prefix, summary), "pass")
        return out
    for item in report.items:
        out.append("%s/%s" % (prefix, item.check), item.status, witness=item.witness)
    return out


def _run_check_category(path: Path, seed: int) -> Report:
    spec = load_category(path)
    out = Report()
    stem = path.stem
    out.extend(_namespace(verify_pentagon(spec), stem, "pentagon"))
    out.extend(_namespace(verify_hexagon(spec), stem, "hexagon"))
    out.extend(_namespace(verify_triangle(spec), stem, "triangle"))
    out.extend(_namespace(verify_zigzag(spec), stem, "zigzag"))
    probe = _naturality_probe(spec, seed)
    out.extend(_namespace(probe, stem, "naturality-probe"))
    return out


def _run_check_algebra(path: Path, seed: int) -> Report:
    alg = load_algebra(path)
    out = Report()
    stem = path.stem
    for item in check_algebra(alg).items:
        out.append("%s/%s" % (stem, item.check), item.status, witness=item.witness)
    try:
        for item in frobenius_identity_check(alg).items:
            out.append("%s/%s" % (stem, item.check), item.status, witness=item.witness)
        index = compute_index(alg)
        out.append("%s/index" % stem, "pass", witness=scalar_literal(index))
        twisted = algebra_dim_with_twist(alg)
        out.append("%s/twisted-dim" % stem, "pass", witness=scalar_literal(twisted))
    except AlgebraError as exc:
        out.append("%s/frobenius" % stem, "error", witness=str(exc))
    return out


def _run_check_module(path: Path, seed: int) -> Report:
    mod = load_module(path)
    out = Report()
    stem = path.stem
    for item in check_module(mod).items:
        out.append("%s/%s" % (stem, item.check), item.status, witness=item.witness)
    local_flag, _ = is_local(mod)
    out.append("%s/is-local" % stem, "pass", witness=local_flag)
    return out


def _run_condense(category_path: Path, algebra_path: Path, seed: int) -> Report:
    spec = load_category(category_path)
    alg = load_algebra(algebra_path)
    out = Report()
    stem = algebra_path.stem
    if alg.spec.name != spec.name:
        out.append(
            "%s/category-match" % stem,
            "error",
            witness="algebra lives in %r, not %r" % (alg.spec.name, spec.name),
        )
        return out
    try:
        index = compute_index(alg)
        out.append("%s/index" % stem, "pass", witness=scalar_literal(index))
        twisted = algebra_dim_with_twist(alg)
        out.append("%s/twisted-dim" % stem, "pass", witness=scalar_literal(twisted))
    except AlgebraError as exc:
        out.append("%s/index" % stem, "error", witness=str(exc))
        return out
    table = condense(alg)
    for item in table.to_report().items:
        out.append("%s/%s" % (stem, item.check), item.status, witness=item.witness)
    return out


def _run_suite(path: Path, seed: int) -> Report:
    raw = json.loads(path.read_text())
    sub = run_suite_manifest(raw)
    out = Report()
    prefix = raw.get("name", path.stem)
    for item in sub.items:
        out.append("%s/%s" % (prefix, item.check), item.status, witness=item.witness)
    return out


def _run_ledger(path: Path, seed: int) -> Report:
    return solution_report(load_ledger(path))


def _job(command: str, arg: str, algebra: str | None, seed: int) -> Report:
    try:
        path = _resolve(arg, _KIND_DIRS[command])
        if command == "check-category":
            return _run_check_category(path, seed)
        if command == "check-algebra":
            return _run_check_algebra(path, seed)
        if command == "check-module":
            return _run_check_module(path, seed)
        if command == "condense":
            apath = _resolve(algebra, "algebras")
            return _run_condense(path, apath, seed)
        if command == "suite":
            return _run_suite(path, seed)
        return _run_ledger(path, seed)
    except (FileNotFoundError, ParseError, json.JSONDecodeError) as exc:
        bad = Report()
        bad.append("load:%s" % arg, "error", witness=str(exc))
        return bad


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctc",
        description="exact checks for braided categories, algebra objects, and their modules",
    )
    parser.add_argument(
        "command",
        choices=sorted(_KIND_DIRS),
        help="what to run; file arguments may be paths or bundled names",
    )
    parser.add_argument("inputs", nargs="+", help="input files or bundled names")
    parser.add_argument("--algebra", help="algebra file for condense", default=None)
    parser.add_argument("--report", choices=("text", "json"), default="text")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("--jobs must be at least 1", file=sys.stderr)
        return 2
    if args.command == "condense" and args.algebra is None:
        print("condense needs --algebra", file=sys.stderr)
        return 2
    jobs = [(args.command, arg, args.algebra, args.seed) for arg in args.inputs]
    if args.jobs == 1 or len(jobs) == 1:
        partials = [_job(*j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            partials = list(pool.map(lambda j: _job(*j), jobs))
    report = Report()
    for part in partials:
        report.extend(part)
    if args.report == "json":
        sys.stdout.buffer.write(report.to_json_bytes())
        sys.stdout.buffer.write(b"\n")
    else:
        print(report.to_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
