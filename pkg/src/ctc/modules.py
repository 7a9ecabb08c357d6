"""Modules over an algebra object: axioms, averaging, locality, condensation.

A module is a carrier object with an action morphism from the algebra
tensor the carrier.  The central constructions are the averaged section
(splitting any surjection of modules when the algebra index is
invertible), the monodromy projector (cutting out the part of a module
that braids trivially past the algebra), and the condensation table
(inducing from every simple label and sorting the results into
isomorphism classes).

Semisimplicity is decided through the matrix algebra generated by the
action components together with the grading projectors: carriers are
graded by labels, and a subspace is a submodule exactly when it is
invariant under both.  The module is semisimple exactly when that
algebra has zero radical, which is decided by the trace form in
characteristic zero or large characteristic, and by exhaustive
enumeration over small prime fields.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from . import linalg as la
from .algebra import (
    AlgebraObject,
    NotIsotropic,
    check_algebra,
    compute_index,
    group_algebra,
    load_algebra,
    load_group,
    make_counit,
    resolve_category,
    solve_coevaluation,
    subgroup_algebra,
)
from .category import (
    Mor,
    Obj,
    associator,
    associator_inv,
    braiding,
    compose,
    dual_obj,
    ev_coev,
    mor_right_inverse,
    pair_channels,
    tensor_mor,
    tensor_obj,
)
from .fields import ParseError, Scalar, parse_scalar, scalar_literal
from .report import Report

__all__ = [
    "ModuleError",
    "AlgebraMismatch",
    "IndexZero",
    "NotASection",
    "NotALift",
    "NotAlgebraAutomorphism",
    "SectionPostconditionFailed",
    "RadicalAlgorithmUnavailable",
    "AModule",
    "check_module",
    "induce",
    "regular_module",
    "trivial_module",
    "module_direct_sum",
    "hom_A",
    "is_local",
    "is_twisted_local",
    "maschke_section",
    "projector_pi",
    "local_projection",
    "split_with_rigid_target",
    "ActionAlgebra",
    "action_algebra",
    "algebra_radical",
    "is_semisimple_module",
    "is_simple_module",
    "modules_isomorphic",
    "Condensation",
    "condense",
    "theorem_suite",
    "run_suite_manifest",
    "load_module",
    "module_from_json",
]

RADICAL_ENUMERATION_CAP = 1_000_000


class ModuleError(Exception):
    pass


class AlgebraMismatch(ModuleError):
    """Both modules must share one algebra instance."""


class IndexZero(ModuleError):
    """Averaging needs to divide by the algebra index and cannot."""


class NotASection(ModuleError):
    """The supplied right inverse does not invert on the right."""


class NotALift(ModuleError):
    """The bent lift does not sit over the coevaluation."""


class NotAlgebraAutomorphism(ModuleError):
    """The supplied twist does not preserve the algebra structure."""


class SectionPostconditionFailed(ModuleError):
    """The averaged map failed an exact postcondition; inputs were inconsistent."""


class RadicalAlgorithmUnavailable(ModuleError):
    """No exact radical method applies at this characteristic and size."""


class AModule:
    """Carrier object with an action of a fixed algebra object."""

    __slots__ = ("name", "alg", "carrier", "action")

    def __init__(self, name: str, alg: AlgebraObject, carrier: Obj, action: Mor):
        ax = tensor_obj(alg.carrier, carrier)
        if action.dom != ax or action.cod != carrier:
            raise ModuleError("action must go from algebra (x) carrier to the carrier")
        self.name = name
        self.alg = alg
        self.carrier = carrier
        self.action = action

    @property
    def spec(self):
        return self.carrier.spec

    def with_action(self, action: Mor, name: str | None = None) -> "AModule":
        return AModule(name or self.name + "*", self.alg, self.carrier, action)

    def __repr__(self):
        return "AModule(%s on %r)" % (self.name, self.carrier)


def check_module(mod: AModule) -> Report:
    """Unit and mixed associativity of the action."""
    report = Report()
    A = mod.alg.carrier
    X = mod.carrier
    ident = Mor.identity(X)
    unit_act = compose(mod.action, tensor_mor(mod.alg.unit_map, ident))
    if unit_act == ident:
        report.append("action-unit", "pass")
    else:
        report.append("action-unit", "fail", witness=(unit_act - ident).to_json())
    lhs = compose(mod.action, tensor_mor(mod.alg.mult_map, ident))
    rhs = compose(
        mod.action,
        compose(tensor_mor(Mor.identity(A), mod.action), associator(A, A, X)),
    )
    if lhs == rhs:
        report.append("action-associative", "pass")
    else:
        report.append("action-associative", "fail", witness=(lhs - rhs).to_json())
    return report


def induce(alg: AlgebraObject, x: Obj) -> AModule:
    """The free module on x: algebra tensor x with action by multiplication."""
    A = alg.carrier
    carrier = tensor_obj(A, x)
    action = compose(
        tensor_mor(alg.mult_map, Mor.identity(x)),
        associator_inv(A, A, x),
    )
    return AModule("induced(%r)" % (x,), alg, carrier, action)


def regular_module(alg: AlgebraObject) -> AModule:
    return AModule("regular", alg, alg.carrier, alg.mult_map)


def trivial_module(alg: AlgebraObject) -> AModule:
    """The unit object with every algebra coordinate acting as 1.

    Only defined in a single-label category, where summing coordinates
    is an algebra map onto the unit.
    """
    spec = alg.spec
    if len(spec.labels) != 1:
        raise ModuleError("trivial module needs a single-label category")
    unit_o = Obj.unit(spec)
    n = alg.carrier.m(spec.unit)
    row = [[Scalar.one(spec.field)] * n]
    action = Mor(tensor_obj(alg.carrier, unit_o), unit_o, {spec.unit: row})
    mod = AModule("trivial", alg, unit_o, action)
    rep = check_module(mod)
    if not rep.ok:
        raise ModuleError("coordinate-sum action is not a module structure here")
    return mod


def module_direct_sum(m1: AModule, m2: AModule):
    """Direct sum with the four structure maps; left summand slots first."""
    if m1.alg is not m2.alg:
        raise AlgebraMismatch("modules over different algebra instances")
    A = m1.alg.carrier
    total, (i1, i2), (p1, p2) = _sum_maps(m1.carrier, m2.carrier)
    ia = Mor.identity(A)
    action = compose(i1, compose(m1.action, tensor_mor(ia, p1))) + compose(
        i2, compose(m2.action, tensor_mor(ia, p2))
    )
    out = AModule("(%s + %s)" % (m1.name, m2.name), m1.alg, total, action)
    return out, (i1, i2), (p1, p2)


def _sum_maps(x1: Obj, x2: Obj):
    from .category import direct_sum_with_maps

    return direct_sum_with_maps(x1, x2)


def hom_A(m1: AModule, m2: AModule) -> list[Mor]:
    """Deterministic basis of the space of action-intertwining morphisms."""
    if m1.alg is not m2.alg:
        raise AlgebraMismatch("modules over different algebra instances")
    spec = m1.spec
    field = spec.field
    X1, X2 = m1.carrier, m2.carrier
    A = m1.alg.carrier
    ia = Mor.identity(A)
    var_index = []
    for lab in spec.labels:
        for r in range(X2.m(lab)):
            for c in range(X1.m(lab)):
                var_index.append((lab, r, c))
    if not var_index:
        return []

    def basis_mor(t):
        lab, r, c = var_index[t]
        blk = la.zeros(field, X2.m(lab), X1.m(lab))
        blk[r][c] = Scalar.one(field)
        return Mor(X1, X2, {lab: blk})

    def defect(f: Mor) -> list:
        d = compose(f, m1.action) - compose(m2.action, tensor_mor(ia, f))
        out = []
        dom = d.dom
        for lab in spec.labels:
            if dom.m(lab) and d.cod.m(lab):
                for row in d.block(lab):
                    out.extend(row)
        return out

    columns = [defect(basis_mor(t)) for t in range(len(var_index))]
    rows = len(columns[0]) if columns else 0
    if rows == 0:
        return [basis_mor(t) for t in range(len(var_index))]
    mat = [[columns[t][r] for t in range(len(var_index))] for r in range(rows)]
    kernel = la.nullspace(mat, field, rows, len(var_index))
    out = []
    for vec in kernel:
        blocks = {}
        for t, (lab, r, c) in enumerate(var_index):
            if vec[t].is_zero():
                continue
            blk = blocks.setdefault(lab, la.zeros(field, X2.m(lab), X1.m(lab)))
            blk[r][c] = vec[t]
        out.append(Mor(X1, X2, blocks))
    return out


def _monodromy(a: Obj, x: Obj) -> Mor:
    return compose(braiding(x, a), braiding(a, x))


def is_local(mod: AModule):
    """Whether acting after the double braiding equals acting directly."""
    A = mod.alg.carrier
    twisted = compose(mod.action, _monodromy(A, mod.carrier))
    if twisted == mod.action:
        return True, None
    return False, (twisted - mod.action).to_json()


def is_twisted_local(mod: AModule, g: Mor):
    """Locality up to a supplied algebra automorphism inserted on the leg."""
    A = mod.alg.carrier
    if g.dom != A or g.cod != A:
        raise NotAlgebraAutomorphism("twist must be an endomorphism of the algebra carrier")
    mu = mod.alg.mult_map
    if compose(g, mod.alg.unit_map) != mod.alg.unit_map or compose(g, mu) != compose(
        mu, tensor_mor(g, g)
    ):
        raise NotAlgebraAutomorphism("twist is not an algebra map")
    if mor_right_inverse(g) is None:
        raise NotAlgebraAutomorphism("twist is not invertible")
    twisted = compose(
        mod.action,
        compose(tensor_mor(g, Mor.identity(mod.carrier)), _monodromy(A, mod.carrier)),
    )
    if twisted == mod.action:
        return True, None
    return False, (twisted - mod.action).to_json()


def _frobenius_kit(alg: AlgebraObject):
    eps = make_counit(alg)
    coev = solve_coevaluation(alg, eps)
    index = compute_index(alg, eps, coev)
    return eps, coev, index


def maschke_section(f: Mor, m1: AModule, m2: AModule, sigma: Mor | None = None) -> Mor:
    """Average a plain section of a module surjection into a module map.

    f goes from the carrier of m1 onto the carrier of m2 and must
    intertwine the actions; sigma is any section of f in the underlying
    category, solved for by elimination when omitted.  The result is a
    section that also intertwines, obtained by pushing sigma through the
    copairing and dividing by the index.  Both properties are rechecked
    exactly before returning.
    """
    if m1.alg is not m2.alg:
        raise AlgebraMismatch("modules over different algebra instances")
    if f.dom != m1.carrier or f.cod != m2.carrier:
        raise ModuleError("f must run between the module carriers")
    if sigma is None:
        sigma = mor_right_inverse(f)
        if sigma is None:
            raise NotASection("f has no right inverse, nothing to average")
    if sigma.dom != m2.carrier or sigma.cod != m1.carrier:
        raise ModuleError("sigma must run opposite to f")
    X2 = m2.carrier
    if compose(f, sigma) != Mor.identity(X2):
        raise NotASection("sigma composed with f is not the identity")
    alg = m1.alg
    A = alg.carrier
    _, coev, index = _frobenius_kit(alg)
    if index.is_zero():
        raise IndexZero("algebra index vanishes in this field")
    ia = Mor.identity(A)
    core = compose(
        m1.action,
        compose(
            tensor_mor(ia, sigma),
            compose(
                tensor_mor(ia, m2.action),
                compose(associator(A, A, X2), tensor_mor(coev, Mor.identity(X2))),
            ),
        ),
    )
    s = core.scale(index.inverse())
    if compose(f, s) != Mor.identity(X2):
        raise SectionPostconditionFailed("averaged map is not a section; f was not equivariant")
    if compose(s, m2.action) != compose(m1.action, tensor_mor(ia, s)):
        raise SectionPostconditionFailed("averaged section does not intertwine the actions")
    return s


def projector_pi(mod: AModule) -> Mor:
    """The averaged monodromy endomorphism of a module.

    Acts as the identity exactly on the part of the carrier that braids
    trivially past the algebra and kills the rest; it is an idempotent
    module endomorphism whenever the algebra is commutative with
    invertible index.
    """
    alg = mod.alg
    A = alg.carrier
    X = mod.carrier
    _, coev, index = _frobenius_kit(alg)
    if index.is_zero():
        raise IndexZero("algebra index vanishes in this field")
    ia = Mor.identity(A)
    core = compose(
        mod.action,
        compose(
            tensor_mor(ia, mod.action),
            compose(
                tensor_mor(ia, _monodromy(A, X)),
                compose(associator(A, A, X), tensor_mor(coev, Mor.identity(X))),
            ),
        ),
    )
    return core.scale(index.inverse())


def local_projection(mod: AModule):
    """Split the monodromy projector through its image.

    Returns the local part as a module, with the inclusion and the
    projection morphisms; projection after inclusion is the identity.
    """
    spec = mod.spec
    field = spec.field
    pi = projector_pi(mod)
    X = mod.carrier
    inc_blocks, prj_blocks, img_mult = {}, {}, {}
    for lab in X.labels_present():
        n = X.m(lab)
        U, P = la.image_factorization(pi.block(lab), field, n, n)
        r = len(P)
        img_mult[lab] = r
        if r:
            inc_blocks[lab] = U
            prj_blocks[lab] = P
    img = Obj(spec, img_mult)
    inc = Mor(img, X, inc_blocks)
    prj = Mor(X, img, prj_blocks)
    # U P = pi by construction; P U = Id is equivalent to pi being idempotent
    if compose(prj, inc) != Mor.identity(img):
        raise ModuleError("projector is not idempotent; no local part here")
    A = mod.alg.carrier
    action = compose(prj, compose(mod.action, tensor_mor(Mor.identity(A), inc)))
    out = AModule("local(%s)" % mod.name, mod.alg, img, action)
    rep = check_module(out)
    if not rep.ok:
        raise ModuleError("restricted action on the local part is not a module")
    return out, inc, prj


def split_with_rigid_target(f: Mor, sigma_tilde: Mor) -> Mor:
    """Right inverse of f built from a bent lift through the dual of its target.

    sigma_tilde goes from the unit into dom(f) tensor the dual of
    cod(f), and must reproduce the coevaluation of the target once its
    first leg is closed with f.  Bending the dual leg back down with
    the evaluation then gives a section of f, rechecked exactly.
    """
    w1, w2 = f.dom, f.cod
    w2d = dual_obj(w2)
    ev, coev = ev_coev(w2)
    if sigma_tilde.dom != Obj.unit(w1.spec) or sigma_tilde.cod != tensor_obj(w1, w2d):
        raise ModuleError("lift must go from the unit into dom (x) dual cod")
    if compose(tensor_mor(f, Mor.identity(w2d)), sigma_tilde) != coev:
        raise NotALift("closing the lift with f misses the coevaluation")
    section = compose(
        tensor_mor(Mor.identity(w1), ev),
        compose(associator(w1, w2d, w2), tensor_mor(sigma_tilde, Mor.identity(w2))),
    )
    if compose(f, section) != Mor.identity(w2):
        raise SectionPostconditionFailed("bent section does not invert f on the right")
    return section


# ---------------------------------------------------------------------------
# semisimplicity through the action matrix algebra


def _flat_slots(x: Obj):
    return x.slots()


def _action_operators(mod: AModule):
    """One matrix on the flattened carrier per algebra slot, plus gradings."""
    spec = mod.spec
    field = spec.field
    A = mod.alg.carrier
    X = mod.carrier
    xslots = _flat_slots(X)
    xpos = {sl: k for k, sl in enumerate(xslots)}
    n = len(xslots)
    pairs = pair_channels(A, X)
    ops = []
    for a, i in _flat_slots(A):
        g = la.zeros(field, n, n)
        for t in X.labels_present():
            cols = pairs.get(t, [])
            blk = mod.action.block(t)
            for cidx, (a2, i2, s, kx) in enumerate(cols):
                if a2 != a or i2 != i:
                    continue
                for r in range(X.m(t)):
                    v = blk[r][cidx]
                    if not v.is_zero():
                        g[xpos[(t, r)]][xpos[(s, kx)]] = v
        ops.append(g)
    gradings = []
    for t in X.labels_present():
        p = la.zeros(field, n, n)
        for r in range(X.m(t)):
            p[xpos[(t, r)]][xpos[(t, r)]] = Scalar.one(field)
        gradings.append(p)
    return ops, gradings, n


@dataclass
class ActionAlgebra:
    """Matrix algebra generated by the action on the flattened carrier.

    A subspace of the carrier is a submodule exactly when the slot
    operators and the label gradings both preserve it, so the module is
    semisimple exactly when the radical acts as zero, and the radical
    consists of matrices here, so that means it is empty.
    """

    module: AModule
    generators: list
    basis: list
    radical: list
    size: int

    @property
    def dimension(self) -> int:
        return len(self.basis)


def action_algebra(mod: AModule) -> ActionAlgebra:
    """Close action components and gradings into a unital matrix algebra."""
    spec = mod.spec
    field = spec.field
    ops, gradings, n = _action_operators(mod)
    if n == 0:
        return ActionAlgebra(mod, [], [], [], 0)

    def vec(m):
        return [m[i][j] for i in range(n) for j in range(n)]

    basis = []
    basis_vecs = []

    def admit(m):
        # reduce against current span; keep if independent
        v = vec(m)
        if all(x.is_zero() for x in v):
            return False
        cand = basis_vecs + [v]
        r = la.rank([list(row) for row in cand], field)
        if r > len(basis_vecs):
            basis.append(m)
            basis_vecs.append(v)
            return True
        return False

    admit(la.identity(field, n))
    for m in ops + gradings:
        admit(m)
    changed = True
    while changed:
        changed = False
        snapshot = list(basis)
        for x in snapshot:
            for y in snapshot:
                prod = la.mat_mul(x, y, field, n, n, n)
                if admit(prod):
                    changed = True
    radical = algebra_radical(basis, n, field)
    return ActionAlgebra(mod, ops + gradings, basis, radical, n)


def _trace(m, field, n) -> Scalar:
    t = Scalar.zero(field)
    for i in range(n):
        t = t + m[i][i]
    return t


def _is_nilpotent(m, field, n) -> bool:
    p = m
    for _ in range(n):
        if la.mat_is_zero(p):
            return True
        p = la.mat_mul(p, m, field, n, n, n)
    return la.mat_is_zero(p)


def algebra_radical(basis, n, field):
    """Radical of a unital matrix algebra given by a spanning basis.

    Uses the trace-form kernel when the characteristic is zero or larger
    than the matrix size; otherwise enumerates the finite algebra, which
    is exact but only viable for small prime fields and dimensions.
    """
    if not basis:
        return []
    d = len(basis)
    p = field.char
    if p == 0 or p > n:
        gram = [[_trace(la.mat_mul(basis[i], basis[j], field, n, n, n), field, n) for j in range(d)] for i in range(d)]
        kernel = la.nullspace(gram, field, d, d)
        out = []
        for v in kernel:
            m = la.zeros(field, n, n)
            for t in range(d):
                if not v[t].is_zero():
                    m = la.mat_add(m, la.mat_scale(basis[t], v[t]))
            out.append(m)
        return out
    if p ** (2 * d) > RADICAL_ENUMERATION_CAP:
        raise RadicalAlgorithmUnavailable(
            "characteristic %d with dimension %d exceeds the enumeration budget" % (p, d)
        )
    elements = []
    for coeffs in itertools.product(range(p), repeat=d):
        m = la.zeros(field, n, n)
        for t, c in enumerate(coeffs):
            if c:
                m = la.mat_add(m, la.mat_scale(basis[t], Scalar.from_int(field, c)))
        elements.append(m)
    nilpotents = [m for m in elements if _is_nilpotent(m, field, n)]
    radical = []
    vecs = []
    for x in nilpotents:
        if la.mat_is_zero(x):
            continue
        if all(_is_nilpotent(la.mat_mul(y, x, field, n, n, n), field, n) for y in elements):
            v = [x[i][j] for i in range(n) for j in range(n)]
            if la.rank([list(r) for r in vecs] + [v], field) > len(vecs):
                radical.append(x)
                vecs.append(v)
    return radical


def is_semisimple_module(mod: AModule):
    """Whether every submodule is a direct summand.

    The certificate on failure is a nonzero radical element written out
    as a matrix of literals; on success it is the dimension summary of
    the radical-free action algebra.
    """
    aa = action_algebra(mod)
    if not aa.radical:
        return True, {"algebra_dim": aa.dimension, "radical_dim": 0}
    w = aa.radical[0]
    return False, [[scalar_literal(x) for x in row] for row in w]


def is_simple_module(mod: AModule) -> bool:
    """Nonzero, semisimple, and with a one-dimensional self-hom space.

    Over a field that does not split the endomorphism ring this is
    stricter than having no proper submodule; for the bundled data the
    two notions agree.
    """
    if mod.carrier.is_zero():
        return False
    ok, _ = is_semisimple_module(mod)
    if not ok:
        return False
    return len(hom_A(mod, mod)) == 1


def modules_isomorphic(m1: AModule, m2: AModule) -> Mor | None:
    """An invertible intertwiner if one appears in the hom basis, else None."""
    if m1.carrier.mult != m2.carrier.mult:
        return None
    basis = hom_A(m1, m2)
    field = m1.spec.field
    for b in basis:
        try:
            inv_blocks = {
                lab: la.inverse(b.block(lab), field, m1.carrier.m(lab))
                for lab in m1.carrier.labels_present()
            }
        except la.SingularMatrix:
            continue
        Mor(m2.carrier, m1.carrier, inv_blocks)
        return b
    return None


# ---------------------------------------------------------------------------
# condensation


@dataclass
class CondenseRow:
    source: str
    module: AModule
    local: bool
    simple: bool
    projector_rank: int
    iso_class: int


@dataclass
class Condensation:
    algebra: AlgebraObject
    rows: list[CondenseRow] = dc_field(default_factory=list)
    classes: list[AModule] = dc_field(default_factory=list)
    class_local: list[bool] = dc_field(default_factory=list)

    def simple_class_count(self) -> int:
        return len(self.classes)

    def local_class_count(self) -> int:
        return sum(1 for b in self.class_local if b)

    def to_report(self) -> Report:
        report = Report()
        for row in self.rows:
            report.append(
                "induce:%s" % row.source,
                "pass",
                witness={
                    "carrier": row.module.carrier.to_json(),
                    "local": row.local,
                    "simple": row.simple,
                    "projector_rank": row.projector_rank,
                    "iso_class": row.iso_class,
                },
            )
        report.append(
            "classes",
            "pass",
            witness=[
                {"carrier": m.carrier.to_json(), "local": loc}
                for m, loc in zip(self.classes, self.class_local)
            ],
        )
        return report


def condense(alg: AlgebraObject) -> Condensation:
    """Induce from every simple label and classify the results.

    Each induced module is tested for locality and simplicity, the
    monodromy projector rank is recorded, and simple modules are sorted
    into isomorphism classes.  The classes flagged local are the simple
    objects seen by the condensed theory.
    """
    rep = check_algebra(alg)
    if not rep.ok:
        raise ModuleError("cannot condense, algebra axioms fail: %s" % [i.check for i in rep.failing()])
    spec = alg.spec
    out = Condensation(alg)
    for s in spec.labels:
        mod = induce(alg, Obj.simple(spec, s))
        pi = projector_pi(mod)
        rank = sum(la.rank(pi.block(lab), spec.field) for lab in pi.blocks)
        local_flag, _ = is_local(mod)
        simple_flag = is_simple_module(mod)
        cls = -1
        if simple_flag:
            for k, rep_mod in enumerate(out.classes):
                if modules_isomorphic(rep_mod, mod) is not None:
                    cls = k
                    break
            if cls < 0:
                out.classes.append(mod)
                out.class_local.append(local_flag)
                cls = len(out.classes) - 1
        out.rows.append(CondenseRow(s, mod, local_flag, simple_flag, rank, cls))
    return out


# ---------------------------------------------------------------------------
# bundled verification suites


def theorem_suite(name: str) -> Report:
    """Run one of the bundled suites by manifest name."""
    from . import data_path

    path = data_path("suites/%s.json" % name)
    return run_suite_manifest(json.loads(Path(path).read_text()))


def run_suite_manifest(raw: dict) -> Report:
    kind = raw.get("kind")
    if kind == "maschke":
        return _run_maschke_suite(raw)
    if kind == "local":
        return _run_local_suite(raw)
    if kind == "counterexamples":
        return _run_counterexample_suite(raw)
    raise ParseError("unknown suite kind %r" % (kind,))


def _case_algebra(case) -> AlgebraObject:
    from . import data_path

    if "group" in case:
        spec = resolve_category(case["category"])
        return group_algebra(load_group(data_path("groups/%s.json" % case["group"])), spec)
    if "algebra" in case:
        return load_algebra(data_path("algebras/%s.json" % case["algebra"]))
    if "labels" in case:
        spec = resolve_category(case["category"])
        return subgroup_algebra(case["labels"], spec)
    raise ParseError("suite case needs a group, algebra, or labels key")


def _case_tag(case) -> str:
    for key in ("algebra", "group", "labels"):
        if key in case:
            v = case[key]
            return "+".join(v) if isinstance(v, list) else str(v)
    return "?"


def _run_maschke_suite(raw) -> Report:
    report = Report()
    for case in raw["cases"]:
        tag = _case_tag(case)
        alg = _case_algebra(case)
        A = alg.carrier
        free = induce(alg, A)
        reg = regular_module(alg)
        mult = alg.mult_map
        sigma = tensor_mor(Mor.identity(A), alg.unit_map)
        try:
            maschke_section(mult, free, reg, sigma)
            report.append("mult-splits:%s" % tag, "pass")
        except ModuleError as exc:
            report.append("mult-splits:%s" % tag, "fail", witness=str(exc))
            continue
        ss, cert = is_semisimple_module(reg)
        report.append("regular-semisimple:%s" % tag, "pass" if ss else "fail", witness=cert)
        if "group" in case:
            triv = trivial_module(alg)
            aug = _augmentation(alg)
            s2 = maschke_section(aug, reg, triv, alg.unit_map)
            ok = compose(aug, s2) == Mor.identity(triv.carrier)
            report.append("augmentation-splits:%s" % tag, "pass" if ok else "fail")
            ss2, cert2 = is_semisimple_module(triv)
            report.append("trivial-semisimple:%s" % tag, "pass" if ss2 else "fail", witness=cert2)
    return report


def _augmentation(alg: AlgebraObject) -> Mor:
    spec = alg.spec
    n = alg.carrier.m(spec.unit)
    return Mor(alg.carrier, Obj.unit(spec), {spec.unit: [[Scalar.one(spec.field)] * n]})


def _run_local_suite(raw) -> Report:
    report = Report()
    for case in raw["cases"]:
        tag = _case_tag(case)
        alg = _case_algebra(case)
        table = condense(alg)
        expect_classes = case.get("simple_classes")
        if expect_classes is not None:
            ok = table.simple_class_count() == expect_classes
            report.append(
                "class-count:%s" % tag,
                "pass" if ok else "fail",
                witness={"got": table.simple_class_count(), "want": expect_classes},
            )
        expect_local = case.get("local_classes")
        if expect_local is not None:
            ok = table.local_class_count() == expect_local
            report.append(
                "local-count:%s" % tag,
                "pass" if ok else "fail",
                witness={"got": table.local_class_count(), "want": expect_local},
            )
        locals_expected = set(case.get("local_sources", []))
        for row in table.rows:
            mod = row.module
            pi = projector_pi(mod)
            idem = compose(pi, pi) == pi
            report.append("projector-idempotent:%s:%s" % (tag, row.source), "pass" if idem else "fail")
            inter = compose(pi, mod.action) == compose(
                mod.action, tensor_mor(Mor.identity(alg.carrier), pi)
            )
            report.append("projector-intertwines:%s:%s" % (tag, row.source), "pass" if inter else "fail")
            loc_mod, inc, prj = local_projection(mod)
            loc_ok, _ = is_local(loc_mod) if not loc_mod.carrier.is_zero() else (True, None)
            report.append("image-local:%s:%s" % (tag, row.source), "pass" if loc_ok else "fail")
            if row.local:
                ss, cert = is_semisimple_module(mod)
                report.append(
                    "local-semisimple:%s:%s" % (tag, row.source),
                    "pass" if ss else "fail",
                    witness=cert,
                )
            if locals_expected:
                want = row.source in locals_expected
                report.append(
                    "local-flag:%s:%s" % (tag, row.source),
                    "pass" if row.local == want else "fail",
                    witness={"got": row.local, "want": want},
                )
    return report


def _run_counterexample_suite(raw) -> Report:
    report = Report()
    for case in raw["cases"]:
        tag = _case_tag(case)
        expect = case["expect"]
        if expect == "index-zero":
            alg = _case_algebra(case)
            reg = regular_module(alg)
            free = induce(alg, alg.carrier)
            sigma = tensor_mor(Mor.identity(alg.carrier), alg.unit_map)
            try:
                maschke_section(alg.mult_map, free, reg, sigma)
                report.append("averaging-fails:%s" % tag, "fail", witness="section was produced")
            except IndexZero as exc:
                report.append("averaging-fails:%s" % tag, "pass", witness=str(exc))
            ss, witness = is_semisimple_module(reg)
            report.append(
                "regular-not-semisimple:%s" % tag,
                "pass" if not ss else "fail",
                witness=witness,
            )
            aug = _augmentation(alg)
            triv = trivial_module(alg)
            sec = _equivariant_section_exists(aug, reg, triv)
            report.append("no-equivariant-section:%s" % tag, "pass" if not sec else "fail")
        elif expect == "not-commutative":
            alg = _case_algebra(case)
            st = {i.check: i.status for i in check_algebra(alg).items}
            report.append(
                "not-commutative:%s" % tag,
                "pass" if st.get("commutative") == "fail" else "fail",
            )
        elif expect == "not-isotropic":
            try:
                _case_algebra(case)
                report.append("not-isotropic:%s" % tag, "fail", witness="construction succeeded")
            except NotIsotropic as exc:
                report.append("not-isotropic:%s" % tag, "pass", witness=str(exc))
        else:
            raise ParseError("unknown counterexample expectation %r" % (expect,))
    return report


def _equivariant_section_exists(f: Mor, m_dom: AModule, m_cod: AModule) -> bool:
    """Whether any intertwiner is a section of f; searched over the hom basis."""
    basis = hom_A(m_cod, m_dom)
    field = m_dom.spec.field
    ident = Mor.identity(m_cod.carrier)
    # f after a combination of basis elements is linear in the coefficients
    flat_targets = []
    for b in basis:
        fb = compose(f, b)
        flat_targets.append(_flatten_mor(fb))
    want = _flatten_mor(ident)
    if not flat_targets:
        return all(x.is_zero() for x in want)
    rows = len(want)
    mat = [[flat_targets[t][r] for t in range(len(basis))] for r in range(rows)]
    rhs = [[v] for v in want]
    return la.solve(mat, rhs, field, rows, len(basis), 1) is not None


def _flatten_mor(m: Mor) -> list:
    out = []
    for lab in m.dom.spec.labels:
        if m.dom.m(lab) and m.cod.m(lab):
            for row in m.block(lab):
                out.extend(row)
    return out


# ---------------------------------------------------------------------------
# loading


def load_module(path) -> AModule:
    path = Path(path).resolve()
    raw = json.loads(path.read_text())
    return module_from_json(raw, base_dir=path.parent, name=raw.get("name", path.stem))


def module_from_json(raw: dict, base_dir=None, name: str = "anonymous") -> AModule:
    from . import data_path

    try:
        alg_ref = raw["algebra"]
        carrier_mult = dict(raw["object"])
        action_blocks = raw["muX"]
    except KeyError as exc:
        raise ParseError("missing module key %s" % (exc,)) from None
    if "/" not in alg_ref and not alg_ref.endswith(".json"):
        alg = load_algebra(data_path("algebras/%s.json" % alg_ref))
    else:
        p = Path(alg_ref)
        if not p.is_absolute() and base_dir is not None and (Path(base_dir) / p).exists():
            p = Path(base_dir) / p
        alg = load_algebra(p)
    spec = alg.spec
    carrier = Obj(spec, carrier_mult)
    blocks = {
        lab: [[parse_scalar(x, spec.field) for x in row] for row in mat]
        for lab, mat in action_blocks.items()
    }
    action = Mor(tensor_obj(alg.carrier, carrier), carrier, blocks)
    return AModule(name, alg, carrier, action)
