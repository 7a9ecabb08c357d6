"""Algebra objects inside a category: axioms, counits, pairings, index.

An algebra here is a carrier object together with a unit map from the
tensor unit and a multiplication map from the tensor square, both given
as exact block morphisms.  Everything downstream (module theory,
averaging, condensation) consumes this structure; nothing in this module
assumes the algebra is honest, the checks exist precisely to find out.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import linalg as la
from .category import (
    CategorySpec,
    Mor,
    Obj,
    associator,
    associator_inv,
    braiding,
    compose,
    load_category,
    pair_channels,
    proportionality_scalar,
    tensor_mor,
    tensor_obj,
    twist_mor,
)
from .fields import ParseError, Scalar, parse_scalar
from .report import Report

__all__ = [
    "AlgebraError",
    "UnitMultiplicityNotOne",
    "NotRigidSelfDual",
    "NonUniqueCoevaluation",
    "NotScalarMultiple",
    "InvalidGroupTable",
    "NotIsotropic",
    "AlgebraObject",
    "check_algebra",
    "make_counit",
    "solve_coevaluation",
    "compute_index",
    "frobenius_identity_check",
    "algebra_dim_with_twist",
    "Group",
    "load_group",
    "group_algebra",
    "subgroup_algebra",
    "load_algebra",
    "algebra_from_json",
]


class AlgebraError(Exception):
    pass


class UnitMultiplicityNotOne(AlgebraError):
    """The carrier meets the tensor unit in a way with no canonical counit."""


class NotRigidSelfDual(AlgebraError):
    """The multiplication pairing admits no two-sided coevaluation."""


class NonUniqueCoevaluation(AlgebraError):
    def __init__(self, freedom: int):
        super().__init__("coevaluation underdetermined, %d free parameters" % freedom)
        self.freedom = freedom


class NotScalarMultiple(AlgebraError):
    """mult after coevaluation is not a scalar multiple of the unit map."""


class InvalidGroupTable(AlgebraError):
    pass


class NotIsotropic(AlgebraError):
    """The chosen labels carry twists or mutual monodromy and cannot condense."""


class AlgebraObject:
    """Carrier object plus unit and multiplication morphisms."""

    __slots__ = ("name", "carrier", "unit_map", "mult_map", "counit")

    def __init__(self, name: str, carrier: Obj, unit_map: Mor, mult_map: Mor, counit: Mor | None = None):
        aa = tensor_obj(carrier, carrier)
        if unit_map.dom != Obj.unit(carrier.spec) or unit_map.cod != carrier:
            raise AlgebraError("unit map must go from the tensor unit to the carrier")
        if mult_map.dom != aa or mult_map.cod != carrier:
            raise AlgebraError("multiplication must go from the tensor square to the carrier")
        if counit is not None:
            one = Obj.unit(carrier.spec)
            if counit.dom != carrier or counit.cod != one:
                raise AlgebraError("counit must go from the carrier to the tensor unit")
            if compose(counit, unit_map) != Mor.identity(one):
                raise AlgebraError("counit does not send the unit to 1")
        self.name = name
        self.carrier = carrier
        self.unit_map = unit_map
        self.mult_map = mult_map
        self.counit = counit

    @property
    def spec(self) -> CategorySpec:
        return self.carrier.spec

    def with_structure(self, unit_map: Mor | None = None, mult_map: Mor | None = None, name: str | None = None):
        # a replaced unit map invalidates a stored counit, so drop it then
        return AlgebraObject(
            name or self.name + "*",
            self.carrier,
            unit_map if unit_map is not None else self.unit_map,
            mult_map if mult_map is not None else self.mult_map,
            self.counit if unit_map is None else None,
        )

    def __repr__(self):
        return "AlgebraObject(%s on %r)" % (self.name, self.carrier)


def check_algebra(alg: AlgebraObject) -> Report:
    """Unit, associativity and commutativity of the multiplication."""
    report = Report()
    A = alg.carrier
    ident = Mor.identity(A)
    left = compose(alg.mult_map, tensor_mor(alg.unit_map, ident))
    _item(report, "unit-left", left, ident)
    right = compose(alg.mult_map, tensor_mor(ident, alg.unit_map))
    _item(report, "unit-right", right, ident)
    lhs = compose(alg.mult_map, tensor_mor(alg.mult_map, ident))
    rhs = compose(alg.mult_map, compose(tensor_mor(ident, alg.mult_map), associator(A, A, A)))
    _item(report, "associative", lhs, rhs)
    braided = compose(alg.mult_map, braiding(A, A))
    _item(report, "commutative", braided, alg.mult_map)
    return report


def _item(report: Report, name: str, got: Mor, want: Mor):
    if got == want:
        report.append(name, "pass")
    else:
        report.append(name, "fail", witness=(got - want).to_json())


def make_counit(alg: AlgebraObject) -> Mor:
    """The coordinate dual to the unit map, scaled so counit(unit) = 1.

    Requires the unit map to hit a single summand of the carrier on the
    unit label; multiplicity above one with a spread-out unit map has no
    canonical choice and raises.  An explicitly stored counit wins over
    the coordinate rule.
    """
    if alg.counit is not None:
        return alg.counit
    spec = alg.spec
    A = alg.carrier
    n = A.m(spec.unit)
    if n == 0:
        raise UnitMultiplicityNotOne("carrier misses the tensor unit label")
    col = [alg.unit_map.block(spec.unit)[i][0] for i in range(n)]
    hits = [i for i, v in enumerate(col) if not v.is_zero()]
    if len(hits) != 1:
        raise UnitMultiplicityNotOne(
            "unit map touches %d unit summands, no canonical counit" % len(hits)
        )
    i = hits[0]
    row = [Scalar.zero(spec.field)] * n
    row[i] = col[i].inverse()
    return Mor(A, Obj.unit(spec), {spec.unit: [row]})


def _pairing(alg: AlgebraObject, counit: Mor) -> Mor:
    return compose(counit, alg.mult_map)


def solve_coevaluation(alg: AlgebraObject, counit: Mor | None = None) -> Mor:
    """The copairing making both bent-line identities for the algebra exact.

    Solves the linear system in the unit components of the tensor square;
    no solution means the pairing is degenerate and the carrier is not
    self-dual through it.
    """
    if counit is None:
        counit = make_counit(alg)
    spec = alg.spec
    field = spec.field
    A = alg.carrier
    aa = tensor_obj(A, A)
    unit_o = Obj.unit(spec)
    pairing = _pairing(alg, counit)
    slots = pair_channels(A, A).get(spec.unit, [])
    n_unknowns = len(slots)
    if n_unknowns == 0:
        raise NotRigidSelfDual("tensor square misses the unit label")
    ident = Mor.identity(A)
    assoc = associator(A, A, A)
    assoc_inv = associator_inv(A, A, A)

    def basis_coev(t: int) -> Mor:
        col = [[Scalar.one(field) if i == t else Scalar.zero(field)] for i in range(n_unknowns)]
        return Mor(unit_o, aa, {spec.unit: col})

    def snake1(k: Mor) -> Mor:
        return compose(tensor_mor(ident, pairing), compose(assoc, tensor_mor(k, ident)))

    def snake2(k: Mor) -> Mor:
        return compose(tensor_mor(pairing, ident), compose(assoc_inv, tensor_mor(ident, k)))

    def flatten(m: Mor) -> list:
        out = []
        for lab in A.labels_present():
            for row in m.block(lab):
                out.extend(row)
        return out

    columns = []
    for t in range(n_unknowns):
        k = basis_coev(t)
        columns.append(flatten(snake1(k)) + flatten(snake2(k)))
    rows = len(columns[0])
    mat = [[columns[t][r] for t in range(n_unknowns)] for r in range(rows)]
    target = flatten(ident) + flatten(ident)
    rhs = [[v] for v in target]
    sol = la.solve(mat, rhs, field, rows, n_unknowns, 1)
    if sol is None:
        raise NotRigidSelfDual("bent-line conditions are inconsistent")
    freedom = len(la.nullspace(mat, field, rows, n_unknowns))
    if freedom:
        raise NonUniqueCoevaluation(freedom)
    col = [[sol[t][0]] for t in range(n_unknowns)]
    return Mor(unit_o, aa, {spec.unit: col})


def compute_index(alg: AlgebraObject, counit: Mor | None = None, coev: Mor | None = None) -> Scalar:
    """The scalar [A:1] with mult after copairing = [A:1] * unit map.

    Cross-checked against the closed loop through the counit; a mismatch
    means the structure maps are inconsistent and raises.
    """
    if counit is None:
        counit = make_counit(alg)
    if coev is None:
        coev = solve_coevaluation(alg, counit)
    loop = compose(alg.mult_map, coev)
    index = proportionality_scalar(loop, alg.unit_map)
    if index is None:
        raise NotScalarMultiple("mult after copairing is not proportional to the unit map")
    closed = compose(counit, loop).block(alg.spec.unit)[0][0]
    if closed != index:
        raise NotScalarMultiple("closed-loop value disagrees with the proportionality scalar")
    return index


def frobenius_identity_check(alg: AlgebraObject, counit: Mor | None = None, coev: Mor | None = None) -> Report:
    """Compatibility of the copairing with multiplication on both sides."""
    if counit is None:
        counit = make_counit(alg)
    if coev is None:
        coev = solve_coevaluation(alg, counit)
    report = Report()
    A = alg.carrier
    ident = Mor.identity(A)
    # the two ways of splitting one copairing leg into a comultiplication
    left = compose(
        tensor_mor(alg.mult_map, ident),
        compose(associator_inv(A, A, A), tensor_mor(ident, coev)),
    )
    right = compose(
        tensor_mor(ident, alg.mult_map),
        compose(associator(A, A, A), tensor_mor(coev, ident)),
    )
    _item(report, "coproduct-left-right", left, right)
    pairing = _pairing(alg, counit)
    _item(report, "pairing-commutes", compose(pairing, braiding(A, A)), pairing)
    snake = compose(
        tensor_mor(ident, pairing),
        compose(associator(A, A, A), tensor_mor(coev, ident)),
    )
    _item(report, "bent-line", snake, ident)
    return report


def algebra_dim_with_twist(alg: AlgebraObject, counit: Mor | None = None, coev: Mor | None = None) -> Scalar:
    """Closed loop through the twist and the braiding.

    Equals the index exactly when the carrier is twist-transparent, so
    the comparison with the plain index is a locality probe for the
    algebra itself.
    """
    if counit is None:
        counit = make_counit(alg)
    if coev is None:
        coev = solve_coevaluation(alg, counit)
    A = alg.carrier
    chain = compose(
        compose(counit, alg.mult_map),
        compose(braiding(A, A), compose(tensor_mor(twist_mor(A), Mor.identity(A)), coev)),
    )
    return chain.block(alg.spec.unit)[0][0]


# ---------------------------------------------------------------------------
# groups and group-style constructions


class Group:
    __slots__ = ("name", "elements", "table", "identity", "_index")

    def __init__(self, name, elements, table):
        self.name = name
        self.elements = list(elements)
        n = len(self.elements)
        if len(set(self.elements)) != n or n == 0:
            raise InvalidGroupTable("elements must be distinct and nonempty")
        self._index = {g: k for k, g in enumerate(self.elements)}
        if len(table) != n or any(len(row) != n for row in table):
            raise InvalidGroupTable("table must be %dx%d" % (n, n))
        for row in table:
            for g in row:
                if g not in self._index:
                    raise InvalidGroupTable("table entry %r is not an element" % (g,))
        self.table = [list(row) for row in table]
        ident = None
        for g in self.elements:
            if all(self.mul(g, h) == h and self.mul(h, g) == h for h in self.elements):
                ident = g
                break
        if ident is None:
            raise InvalidGroupTable("no identity element")
        self.identity = ident
        for row in self.table:
            if sorted(row) != sorted(self.elements):
                raise InvalidGroupTable("rows must be permutations")
        for j in range(n):
            if sorted(self.table[i][j] for i in range(n)) != sorted(self.elements):
                raise InvalidGroupTable("columns must be permutations")
        for a in self.elements:
            for b in self.elements:
                for c in self.elements:
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        raise InvalidGroupTable("table is not associative")
        for g in self.elements:
            if not any(self.mul(g, h) == self.identity for h in self.elements):
                raise InvalidGroupTable("%r has no inverse" % (g,))

    def mul(self, a, b):
        return self.table[self._index[a]][self._index[b]]

    def inverse(self, g):
        for h in self.elements:
            if self.mul(g, h) == self.identity:
                return h
        raise InvalidGroupTable("%r has no inverse" % (g,))

    def index_of(self, g) -> int:
        return self._index[g]

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return "Group(%s, order %d)" % (self.name, len(self))


def load_group(path) -> Group:
    path = Path(path)
    raw = json.loads(path.read_text())
    try:
        return Group(raw.get("name", path.stem), raw["elements"], raw["table"])
    except KeyError as exc:
        raise ParseError("missing group key %s" % (exc,)) from None


def group_algebra(group: Group, spec: CategorySpec) -> AlgebraObject:
    """The function algebra on a finite group, carried by copies of the unit.

    Only meaningful in a single-label category, where the tensor square
    block is an honest Kronecker square of the carrier.
    """
    if len(spec.labels) != 1:
        raise AlgebraError("group algebra needs a single-label category")
    lab = spec.unit
    n = len(group)
    carrier = Obj(spec, {lab: n})
    field = spec.field
    unit_blk = [[Scalar.one(field) if g == group.identity else Scalar.zero(field)] for g in group.elements]
    mult_blk = la.zeros(field, n, n * n)
    for i, g in enumerate(group.elements):
        for j, h in enumerate(group.elements):
            k = group.index_of(group.mul(g, h))
            mult_blk[k][i * n + j] = Scalar.one(field)
    return AlgebraObject(
        "group_algebra(%s)" % group.name,
        carrier,
        Mor(Obj.unit(spec), carrier, {lab: unit_blk}),
        Mor(tensor_obj(carrier, carrier), carrier, {lab: mult_blk}),
    )


def subgroup_algebra(labels: list, spec: CategorySpec) -> AlgebraObject:
    """Sum of invertible labels closed under fusion, with unit coefficients.

    The labels must form a group under fusion, carry trivial twists, and
    braid with trivial mutual monodromy; otherwise no commutative algebra
    structure exists on the sum and this raises.
    """
    labels = list(labels)
    if len(set(labels)) != len(labels):
        raise AlgebraError("repeated labels")
    if spec.unit not in labels:
        raise AlgebraError("the unit label must be included")
    one = Scalar.one(spec.field)
    prod = {}
    for a in labels:
        for b in labels:
            chans = spec.channels(a, b)
            if len(chans) != 1 or chans[0] not in labels:
                raise AlgebraError("labels are not closed under fusion at (%s, %s)" % (a, b))
            prod[(a, b)] = chans[0]
    for h in labels:
        if spec.twist[h] != one:
            raise NotIsotropic("label %s carries a twist" % h)
        for k in labels:
            mono = spec.r_symbol(h, k, prod[(h, k)]) * spec.r_symbol(k, h, prod[(h, k)])
            if mono != one:
                raise NotIsotropic("labels %s and %s have nontrivial monodromy" % (h, k))
    carrier = Obj(spec, {lab: 1 for lab in labels})
    aa_pairs = pair_channels(carrier, carrier)
    blocks = {}
    for c in carrier.labels_present():
        cols = aa_pairs.get(c, [])
        blk = la.zeros(spec.field, 1, len(cols))
        for t, (a, _, b, _) in enumerate(cols):
            if prod[(a, b)] == c:
                blk[0][t] = one
        blocks[c] = blk
    unit_map = Mor(Obj.unit(spec), carrier, {spec.unit: [[one]]})
    mult_map = Mor(tensor_obj(carrier, carrier), carrier, blocks)
    return AlgebraObject("subgroup(%s)" % "+".join(labels), carrier, unit_map, mult_map)


# ---------------------------------------------------------------------------
# loading


def load_algebra(path) -> AlgebraObject:
    path = Path(path).resolve()
    raw = json.loads(path.read_text())
    return algebra_from_json(raw, base_dir=path.parent, name=raw.get("name", path.stem))


def algebra_from_json(raw: dict, base_dir=None, name: str = "anonymous") -> AlgebraObject:
    try:
        cat_ref = raw["category"]
        carrier_mult = dict(raw["object"])
        unit_blocks = raw["iota"]
        mult_blocks = raw["mu"]
    except KeyError as exc:
        raise ParseError("missing algebra key %s" % (exc,)) from None
    spec = resolve_category(cat_ref, base_dir)
    carrier = Obj(spec, carrier_mult)

    def parse_blocks(data):
        return {
            lab: [[parse_scalar(x, spec.field) for x in row] for row in mat]
            for lab, mat in data.items()
        }

    unit_map = Mor(Obj.unit(spec), carrier, parse_blocks(unit_blocks))
    mult_map = Mor(tensor_obj(carrier, carrier), carrier, parse_blocks(mult_blocks))
    counit = None
    if "counit" in raw:
        counit = Mor(carrier, Obj.unit(spec), parse_blocks(raw["counit"]))
    return AlgebraObject(name, carrier, unit_map, mult_map, counit)


def resolve_category(ref: str, base_dir=None) -> CategorySpec:
    """A category reference is a bundled name or a path to a JSON file."""
    from . import data_path

    if "/" not in ref and not ref.endswith(".json"):
        return load_category(data_path("categories/%s.json" % ref))
    p = Path(ref)
    if not p.is_absolute() and base_dir is not None and (Path(base_dir) / p).exists():
        p = Path(base_dir) / p
    return load_category(p)
