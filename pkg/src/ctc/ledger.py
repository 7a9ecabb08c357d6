"""Dimension bookkeeping on a free abelian group of object symbols.

Dimensions are additive across exact sequences, so composition-series
data turns into linear relations between the dimensions of the symbols
involved.  A problem lists symbols, relations (a left-hand symbol equals
an integer combination of others), known values, and symbols declared
projective, whose dimension is forced to zero.  Solving is incremental
Gaussian elimination, so an inconsistency is reported against the first
input line that produces it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .fields import FieldSpec, ParseError, Scalar, parse_scalar, scalar_literal

__all__ = [
    "LedgerError",
    "Inconsistent",
    "Underdetermined",
    "LedgerProblem",
    "solve_dims",
    "load_ledger",
    "ledger_from_json",
]


class LedgerError(Exception):
    pass


class Inconsistent(LedgerError):
    def __init__(self, source: str):
        super().__init__("relations are inconsistent at %s" % source)
        self.source = source


class Underdetermined(LedgerError):
    def __init__(self, free: list):
        super().__init__("free symbols remain: %s" % ", ".join(free))
        self.free = list(free)


@dataclass
class LedgerProblem:
    name: str
    symbols: list
    relations: list  # (lhs, {symbol: int_coeff}, source_tag)
    knowns: dict  # symbol -> Scalar
    projectives: list
    field: FieldSpec = dc_field(default_factory=FieldSpec.rational)

    def __post_init__(self):
        index = {s: i for i, s in enumerate(self.symbols)}
        if len(index) != len(self.symbols):
            raise ParseError("duplicate ledger symbols")
        for lhs, rhs, _src in self.relations:
            for sym in [lhs, *rhs]:
                if sym not in index:
                    raise ParseError("relation uses unknown symbol %r" % (sym,))
        for sym in list(self.knowns) + list(self.projectives):
            if sym not in index:
                raise ParseError("unknown symbol %r" % (sym,))


def solve_dims(problem: LedgerProblem) -> dict:
    """Exact values for every symbol, or a typed failure.

    Equations are consumed in input order: each relation, then each
    known, then each projective-is-zero rule.  A row that reduces to
    0 = c with c nonzero raises Inconsistent naming its source; leftover
    freedom raises Underdetermined listing the free symbols.
    """
    field = problem.field
    index = {s: i for i, s in enumerate(problem.symbols)}
    n = len(problem.symbols)
    zero, one = Scalar.zero(field), Scalar.one(field)

    rows = []  # (pivot_col, coeffs, rhs) with coeffs[pivot] == 1

    def reduce_and_insert(coeffs, rhs, source):
        for pivot, pcoeffs, prhs in rows:
            c = coeffs[pivot]
            if c.is_zero():
                continue
            coeffs = [a - c * b for a, b in zip(coeffs, pcoeffs)]
            rhs = rhs - c * prhs
        lead = next((j for j in range(n) if not coeffs[j].is_zero()), None)
        if lead is None:
            if not rhs.is_zero():
                raise Inconsistent(source)
            return
        inv = coeffs[lead].inverse()
        coeffs = [a * inv for a in coeffs]
        rhs = rhs * inv
        for k, (pivot, pcoeffs, prhs) in enumerate(rows):
            c = pcoeffs[lead]
            if not c.is_zero():
                rows[k] = (
                    pivot,
                    [a - c * b for a, b in zip(pcoeffs, coeffs)],
                    prhs - c * rhs,
                )
        rows.append((lead, coeffs, rhs))

    for lhs, rhs_terms, source in problem.relations:
        coeffs = [zero] * n
        coeffs[index[lhs]] = one
        for sym, k in rhs_terms.items():
            coeffs[index[sym]] = coeffs[index[sym]] - Scalar.from_int(field, k)
        reduce_and_insert(coeffs, zero, source)
    for sym, value in problem.knowns.items():
        coeffs = [zero] * n
        coeffs[index[sym]] = one
        reduce_and_insert(coeffs, value, "known %s" % sym)
    for sym in problem.projectives:
        coeffs = [zero] * n
        coeffs[index[sym]] = one
        reduce_and_insert(coeffs, zero, "projective %s" % sym)

    pivots = {pivot for pivot, _c, _r in rows}
    free = [s for s in problem.symbols if index[s] not in pivots]
    if free:
        raise Underdetermined(free)
    # insertion keeps earlier rows reduced, so each row is just pivot = rhs
    values = [zero] * n
    for pivot, _coeffs, rhs in rows:
        values[pivot] = rhs
    return {s: values[index[s]] for s in problem.symbols}


def ledger_from_json(raw: dict, name: str = "anonymous") -> LedgerProblem:
    try:
        symbols = list(raw["symbols"])
        raw_relations = raw["relations"]
    except KeyError as exc:
        raise ParseError("missing ledger key %s" % (exc,)) from None
    field = FieldSpec.rational()
    relations = []
    for k, rel in enumerate(raw_relations):
        try:
            lhs = rel["lhs"]
            rhs = {sym: int(c) for sym, c in rel["rhs"].items()}
        except (KeyError, TypeError, ValueError):
            raise ParseError("relation %d needs lhs and integer rhs terms" % k) from None
        relations.append((lhs, rhs, "relation %d (%s = ...)" % (k, lhs)))
    knowns = {
        sym: parse_scalar(lit, field) for sym, lit in raw.get("knowns", {}).items()
    }
    projectives = list(raw.get("projectives", []))
    return LedgerProblem(
        raw.get("name", name), symbols, relations, knowns, projectives, field
    )


def load_ledger(path) -> LedgerProblem:
    path = Path(path).resolve()
    return ledger_from_json(json.loads(path.read_text()), name=path.stem)


def solution_report(problem: LedgerProblem):
    """Solve and phrase the outcome as report items; used by the runner."""
    from .report import Report

    report = Report()
    try:
        values = solve_dims(problem)
    except Inconsistent as exc:
        report.append("ledger:%s" % problem.name, "fail", witness=exc.source)
        return report
    except Underdetermined as exc:
        report.append("ledger:%s" % problem.name, "fail", witness={"free": exc.free})
        return report
    for sym in problem.symbols:
        report.append(
            "dim:%s" % sym, "pass", witness=scalar_literal(values[sym])
        )
    return report
