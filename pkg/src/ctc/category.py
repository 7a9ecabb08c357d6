"""Skeletal category engine: objects, morphism blocks, structural maps.

A category is described by multiplicity-free fusion data: a finite label
set with unit and duals, fusion triples (a, b, c) meaning c appears in
a x b exactly once, F and R coefficient tables, twists, and pivots.
Fusion multiplicities above one cannot be represented and any attempt to
load them is a hard error.

Objects are multiplicity vectors over the labels; the zero object is
allowed.  A morphism stores one exact matrix per label, shaped
cod.mult(s) x dom.mult(s).  Tensor products of objects are identified
with their direct-sum decomposition through a fixed enumeration: the
summands of X (x) Y isotypic to c are the triples (x-slot, y-slot, c),
ordered by x-slot, then y-slot (slots in label order, copies in order),
then c in label order.  Every structural morphism below (associator,
braiding, unit maps, evaluation and coevaluation) is a matrix written in
exactly these bases, so composing the matrices composes the diagrams.

The unit is strict for this engine: F entries touching the unit label
must be 1 (enforced at validation), which makes both unit isomorphisms
identity matrices and keeps the triangle identity automatic.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import linalg as la
from .fields import FieldSpec, ParseError, Scalar, parse_scalar, scalar_literal
from .report import Report

__all__ = [
    "CategoryError",
    "CategoryMismatch",
    "DomainMismatch",
    "FusionDataError",
    "CategorySpec",
    "Obj",
    "Mor",
    "tensor_obj",
    "tensor_mor",
    "compose",
    "associator",
    "associator_inv",
    "unitor",
    "braiding",
    "ev_coev",
    "twist_mor",
    "categorical_dim",
    "dual_obj",
    "direct_sum_with_maps",
    "mor_right_inverse",
    "proportionality_scalar",
    "verify_pentagon",
    "verify_hexagon",
    "verify_triangle",
    "verify_zigzag",
    "load_category",
]


class CategoryError(Exception):
    pass


class CategoryMismatch(CategoryError):
    pass


class DomainMismatch(CategoryError):
    pass


class FusionDataError(CategoryError):
    pass


class CategorySpec:
    """Immutable fusion data plus derived lookup tables and caches."""

    def __init__(self, name, field, labels, unit, dual, fusion, F=None, R=None, twist=None, pivot=None):
        self.name = name
        self.field = field
        self.labels = tuple(labels)
        self.unit = unit
        self.dual = dict(dual)
        self.fusion = frozenset(tuple(t) for t in fusion)
        self.F = dict(F or {})
        self.R = dict(R or {})
        one = Scalar.one(field)
        self.twist = {lab: one for lab in self.labels}
        self.twist.update(twist or {})
        self.pivot = {lab: one for lab in self.labels}
        self.pivot.update(pivot or {})
        self._index = {lab: k for k, lab in enumerate(self.labels)}
        self._channels = {}
        for a, b, c in self.fusion:
            self._channels.setdefault((a, b), []).append(c)
        for key in self._channels:
            self._channels[key].sort(key=self._index.__getitem__)
        self._pair_cache = {}
        self._assoc_cache = {}
        self._assoc_inv_cache = {}
        self._fmat_inv_cache = {}
        self._dual_scale_cache = None
        self._dim_cache = {}
        self._validate()

    # -- data access --------------------------------------------------

    def admissible(self, a, b, c) -> bool:
        return (a, b, c) in self.fusion

    def channels(self, a, b):
        return self._channels.get((a, b), ())

    def f_symbol(self, a, b, c, d, e, f) -> Scalar:
        return self.F.get((a, b, c, d, e, f), Scalar.one(self.field))

    def r_symbol(self, a, b, c) -> Scalar:
        return self.R.get((a, b, c), Scalar.one(self.field))

    def label_order(self, lab) -> int:
        return self._index[lab]

    def mutated(self, F=None, R=None, twist=None, name=None) -> "CategorySpec":
        """Copy with individual coefficient entries replaced; for probing checks."""
        newF = dict(self.F)
        newF.update(F or {})
        newR = dict(self.R)
        newR.update(R or {})
        newt = dict(self.twist)
        newt.update(twist or {})
        return CategorySpec(
            name or self.name + "*",
            self.field,
            self.labels,
            self.unit,
            self.dual,
            self.fusion,
            newF,
            newR,
            newt,
            dict(self.pivot),
        )

    # -- validation ----------------------------------------------------

    def _validate(self):
        if len(set(self.labels)) != len(self.labels):
            raise FusionDataError("duplicate labels")
        if self.unit not in self._index:
            raise FusionDataError("unit %r is not a label" % (self.unit,))
        for lab in self.labels:
            d = self.dual.get(lab)
            if d not in self._index:
                raise FusionDataError("missing or unknown dual for %r" % (lab,))
            if self.dual.get(d) != lab:
                raise FusionDataError("dual map is not an involution at %r" % (lab,))
        for a, b, c in self.fusion:
            for lab in (a, b, c):
                if lab not in self._index:
                    raise FusionDataError("fusion rule uses unknown label %r" % (lab,))
        for lab in self.labels:
            if self.channels(self.unit, lab) != [lab] or self.channels(lab, self.unit) != [lab]:
                raise FusionDataError("unit does not fuse strictly with %r" % (lab,))
            if not self.admissible(lab, self.dual[lab], self.unit):
                raise FusionDataError("missing dual channel for %r" % (lab,))
            for b in self.labels:
                if self.admissible(lab, b, self.unit) and b != self.dual[lab]:
                    raise FusionDataError("unit channel of %r with non-dual %r" % (lab, b))
        unit = self.unit
        for key, val in self.F.items():
            a, b, c, d, e, f = key
            if not (
                self.admissible(a, b, e)
                and self.admissible(e, c, d)
                and self.admissible(b, c, f)
                and self.admissible(a, f, d)
            ):
                raise FusionDataError("F entry on non-admissible index %r" % (key,))
            if val.field != self.field:
                raise FusionDataError("F entry %r in wrong field" % (key,))
            if val.is_zero():
                raise FusionDataError("zero F entry at %r" % (key,))
            if unit in (a, b, c) and not val.is_one():
                raise FusionDataError("unit F entry at %r must be 1" % (key,))
        for key, val in self.R.items():
            if not self.admissible(*key):
                raise FusionDataError("R entry on non-admissible index %r" % (key,))
            if val.field != self.field:
                raise FusionDataError("R entry %r in wrong field" % (key,))
            if val.is_zero():
                raise FusionDataError("zero R entry at %r" % (key,))
        one = Scalar.one(self.field)
        if self.twist[unit] != one or self.pivot[unit] != one:
            raise FusionDataError("twist and pivot must be 1 on the unit")
        for table in (self.twist, self.pivot):
            for lab, val in table.items():
                if lab not in self._index:
                    raise FusionDataError("coefficient for unknown label %r" % (lab,))
                if val.field != self.field or val.is_zero():
                    raise FusionDataError("bad coefficient on %r" % (lab,))

    def __repr__(self):
        return "CategorySpec(%s)" % self.name


class Obj:
    """A multiplicity vector over the labels of one category."""

    __slots__ = ("spec", "mult")

    def __init__(self, spec: CategorySpec, mult: dict):
        self.spec = spec
        clean = {}
        for lab, m in mult.items():
            if lab not in spec._index:
                raise CategoryError("unknown label %r" % (lab,))
            if m < 0:
                raise CategoryError("negative multiplicity for %r" % (lab,))
            if m:
                clean[lab] = int(m)
        self.mult = clean

    @staticmethod
    def simple(spec, label) -> "Obj":
        return Obj(spec, {label: 1})

    @staticmethod
    def unit(spec) -> "Obj":
        return Obj(spec, {spec.unit: 1})

    @staticmethod
    def zero(spec) -> "Obj":
        return Obj(spec, {})

    def m(self, label) -> int:
        return self.mult.get(label, 0)

    def key(self):
        return tuple((lab, self.mult[lab]) for lab in self.spec.labels if lab in self.mult)

    def slots(self):
        return [(lab, i) for lab in self.spec.labels for i in range(self.m(lab))]

    def total(self) -> int:
        return sum(self.mult.values())

    def labels_present(self):
        return [lab for lab in self.spec.labels if lab in self.mult]

    def is_zero(self) -> bool:
        return not self.mult

    def __add__(self, other: "Obj") -> "Obj":
        _same_spec(self, other)
        out = dict(self.mult)
        for lab, m in other.mult.items():
            out[lab] = out.get(lab, 0) + m
        return Obj(self.spec, out)

    def __eq__(self, other):
        if not isinstance(other, Obj):
            return NotImplemented
        return self.spec is other.spec and self.mult == other.mult

    def __hash__(self):
        return hash((id(self.spec), self.key()))

    def to_json(self) -> dict:
        return {lab: self.mult[lab] for lab in self.labels_present()}

    def __repr__(self):
        if not self.mult:
            return "Obj(0)"
        parts = []
        for lab in self.labels_present():
            m = self.mult[lab]
            parts.append(lab if m == 1 else "%d*%s" % (m, lab))
        return "Obj(%s)" % " + ".join(parts)


def _same_spec(x, y):
    if x.spec is not y.spec:
        raise CategoryMismatch("objects from different categories")


class Mor:
    """Exact label-blocked morphism between two objects of one category.

    Blocks exist for every label carried by both endpoint objects and are
    implicitly zero elsewhere.  Instances are treated as immutable.
    """

    __slots__ = ("dom", "cod", "blocks")

    def __init__(self, dom: Obj, cod: Obj, blocks: dict):
        _same_spec(dom, cod)
        self.dom = dom
        self.cod = cod
        field = dom.spec.field
        clean = {}
        for lab in dom.spec.labels:
            dm, cm = dom.m(lab), cod.m(lab)
            if dm == 0 or cm == 0:
                continue
            blk = blocks.get(lab)
            if blk is None:
                blk = la.zeros(field, cm, dm)
            else:
                if len(blk) != cm or any(len(row) != dm for row in blk):
                    raise DomainMismatch(
                        "block %r has shape %dx%d, expected %dx%d"
                        % (lab, len(blk), len(blk[0]) if blk else 0, cm, dm)
                    )
                blk = [list(row) for row in blk]
            clean[lab] = blk
        self.blocks = clean

    @staticmethod
    def identity(x: Obj) -> "Mor":
        field = x.spec.field
        return Mor(x, x, {lab: la.identity(field, x.m(lab)) for lab in x.labels_present()})

    @staticmethod
    def zero(dom: Obj, cod: Obj) -> "Mor":
        return Mor(dom, cod, {})

    def block(self, lab):
        blk = self.blocks.get(lab)
        if blk is None:
            return la.zeros(self.dom.spec.field, self.cod.m(lab), self.dom.m(lab))
        return blk

    def is_zero(self) -> bool:
        return all(la.mat_is_zero(b) for b in self.blocks.values())

    def scale(self, s: Scalar) -> "Mor":
        return Mor(self.dom, self.cod, {lab: la.mat_scale(b, s) for lab, b in self.blocks.items()})

    def __add__(self, other: "Mor") -> "Mor":
        self._align(other)
        return Mor(
            self.dom,
            self.cod,
            {lab: la.mat_add(self.block(lab), other.block(lab)) for lab in self.blocks},
        )

    def __sub__(self, other: "Mor") -> "Mor":
        self._align(other)
        return Mor(
            self.dom,
            self.cod,
            {lab: la.mat_sub(self.block(lab), other.block(lab)) for lab in self.blocks},
        )

    def __neg__(self):
        return self.scale(Scalar.from_int(self.dom.spec.field, -1))

    def _align(self, other: "Mor"):
        if not isinstance(other, Mor):
            raise TypeError("expected Mor")
        if self.dom != other.dom or self.cod != other.cod:
            raise DomainMismatch("morphism endpoints differ")

    def __matmul__(self, other: "Mor") -> "Mor":
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, Mor):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.blocks == other.blocks

    __hash__ = None

    def spec_of(self) -> CategorySpec:
        return self.dom.spec

    def inverse(self) -> "Mor":
        """Blockwise exact inverse; raises SingularMatrix if not invertible."""
        if {lab: self.dom.m(lab) for lab in self.dom.labels_present()} != {
            lab: self.cod.m(lab) for lab in self.cod.labels_present()
        }:
            raise DomainMismatch("only square morphisms can be inverted")
        field = self.dom.spec.field
        return Mor(
            self.cod,
            self.dom,
            {lab: la.inverse(self.block(lab), field, self.dom.m(lab)) for lab in self.blocks},
        )

    def to_json(self) -> dict:
        return {
            "dom": self.dom.to_json(),
            "cod": self.cod.to_json(),
            "blocks": {
                lab: [[scalar_literal(x) for x in row] for row in blk]
                for lab, blk in self.blocks.items()
            },
        }

    def __repr__(self):
        return "Mor(%r -> %r)" % (self.dom, self.cod)


def compose(g: Mor, f: Mor) -> Mor:
    """g after f."""
    if f.spec_of() is not g.spec_of():
        raise CategoryMismatch("morphisms from different categories")
    if f.cod != g.dom:
        raise DomainMismatch("cannot compose %r after %r" % (g, f))
    field = f.dom.spec.field
    mid = f.cod
    blocks = {}
    for lab in f.dom.spec.labels:
        dm, mm, cm = f.dom.m(lab), mid.m(lab), g.cod.m(lab)
        if dm == 0 or cm == 0:
            continue
        if mm == 0:
            blocks[lab] = la.zeros(field, cm, dm)
        else:
            blocks[lab] = la.mat_mul(g.block(lab), f.block(lab), field, cm, mm, dm)
    return Mor(f.dom, g.cod, blocks)


# ---------------------------------------------------------------------------
# tensor structure


def pair_channels(x: Obj, y: Obj):
    """Summand enumeration of x (x) y: label -> ordered list of (a, i, b, j)."""
    _same_spec(x, y)
    spec = x.spec
    cache_key = (x.key(), y.key())
    hit = spec._pair_cache.get(cache_key)
    if hit is not None:
        return hit
    table = {lab: [] for lab in spec.labels}
    for a, i in x.slots():
        for b, j in y.slots():
            for c in spec.channels(a, b):
                table[c].append((a, i, b, j))
    table = {lab: rows for lab, rows in table.items() if rows}
    spec._pair_cache[cache_key] = table
    return table


def tensor_obj(x: Obj, y: Obj) -> Obj:
    table = pair_channels(x, y)
    return Obj(x.spec, {lab: len(rows) for lab, rows in table.items()})


def tensor_mor(f: Mor, g: Mor) -> Mor:
    """f (x) g in the fixed summand bases of the endpoint tensor products."""
    if f.spec_of() is not g.spec_of():
        raise CategoryMismatch("morphisms from different categories")
    spec = f.dom.spec
    dom = tensor_obj(f.dom, g.dom)
    cod = tensor_obj(f.cod, g.cod)
    dom_pairs = pair_channels(f.dom, g.dom)
    cod_pairs = pair_channels(f.cod, g.cod)
    blocks = {}
    for lab, cols in dom_pairs.items():
        rows = cod_pairs.get(lab)
        if not rows:
            continue
        blk = la.zeros(spec.field, len(rows), len(cols))
        for cidx, (a, i, b, j) in enumerate(cols):
            fa = f.blocks.get(a)
            gb = g.blocks.get(b)
            if fa is None or gb is None:
                continue
            for ridx, (a2, i2, b2, j2) in enumerate(rows):
                if a2 != a or b2 != b:
                    continue
                left = fa[i2][i]
                if left.is_zero():
                    continue
                right = gb[j2][j]
                if right.is_zero():
                    continue
                blk[ridx][cidx] = left * right
        blocks[lab] = blk
    return Mor(dom, cod, blocks)


def _f_matrix_inverse(spec: CategorySpec, a, b, c, d):
    """Inverse of the (e, f) recoupling matrix for fixed outer labels."""
    key = (a, b, c, d)
    hit = spec._fmat_inv_cache.get(key)
    if hit is not None:
        return hit
    e_list = [e for e in spec.channels(a, b) if spec.admissible(e, c, d)]
    f_list = [f for f in spec.channels(b, c) if spec.admissible(a, f, d)]
    if len(e_list) != len(f_list):
        raise FusionDataError("recoupling matrix for %r is not square" % (key,))
    m = [[spec.f_symbol(a, b, c, d, e, f) for f in f_list] for e in e_list]
    inv = la.inverse(m, spec.field, len(e_list)) if e_list else []
    result = (e_list, f_list, inv)
    spec._fmat_inv_cache[key] = result
    return result


def associator(x: Obj, y: Obj, z: Obj) -> Mor:
    """The isomorphism (x (x) y) (x) z -> x (x) (y (x) z)."""
    _same_spec(x, y)
    _same_spec(y, z)
    spec = x.spec
    cache_key = (x.key(), y.key(), z.key())
    hit = spec._assoc_cache.get(cache_key)
    if hit is not None:
        return hit
    xy = tensor_obj(x, y)
    yz = tensor_obj(y, z)
    dom = tensor_obj(xy, z)
    cod = tensor_obj(x, yz)
    xy_pairs = pair_channels(x, y)
    yz_pairs = pair_channels(y, z)
    dom_pairs = pair_channels(xy, z)
    cod_pairs = pair_channels(x, yz)
    blocks = {}
    for d, cols in dom_pairs.items():
        rows = cod_pairs.get(d)
        if not rows:
            continue
        row_index = {}
        for ridx, (a, i, fch, k) in enumerate(rows):
            b, j, c, l = yz_pairs[fch][k]
            row_index[(a, i, b, j, c, l, fch)] = ridx
        blk = la.zeros(spec.field, len(rows), len(cols))
        for cidx, (ech, k, c, l) in enumerate(cols):
            a, i, b, j = xy_pairs[ech][k]
            for fch in spec.channels(b, c):
                if not spec.admissible(a, fch, d):
                    continue
                ridx = row_index[(a, i, b, j, c, l, fch)]
                blk[ridx][cidx] = spec.f_symbol(a, b, c, d, ech, fch)
        blocks[d] = blk
    out = Mor(dom, cod, blocks)
    spec._assoc_cache[cache_key] = out
    return out


def associator_inv(x: Obj, y: Obj, z: Obj) -> Mor:
    """The isomorphism x (x) (y (x) z) -> (x (x) y) (x) z.

    Assembled from per-quadruple inverse recoupling matrices rather than
    by inverting the assembled block matrix.
    """
    _same_spec(x, y)
    _same_spec(y, z)
    spec = x.spec
    cache_key = (x.key(), y.key(), z.key())
    hit = spec._assoc_inv_cache.get(cache_key)
    if hit is not None:
        return hit
    xy = tensor_obj(x, y)
    yz = tensor_obj(y, z)
    dom = tensor_obj(x, yz)
    cod = tensor_obj(xy, z)
    xy_pairs = pair_channels(x, y)
    yz_pairs = pair_channels(y, z)
    dom_pairs = pair_channels(x, yz)
    cod_pairs = pair_channels(xy, z)
    blocks = {}
    for d, cols in dom_pairs.items():
        rows = cod_pairs.get(d)
        if not rows:
            continue
        row_index = {}
        for ridx, (ech, k, c, l) in enumerate(rows):
            a, i, b, j = xy_pairs[ech][k]
            row_index[(a, i, b, j, c, l, ech)] = ridx
        blk = la.zeros(spec.field, len(rows), len(cols))
        for cidx, (a, i, fch, k) in enumerate(cols):
            b, j, c, l = yz_pairs[fch][k]
            e_list, f_list, inv = _f_matrix_inverse(spec, a, b, c, d)
            fpos = f_list.index(fch)
            for epos, ech in enumerate(e_list):
                val = inv[fpos][epos]
                if val.is_zero():
                    continue
                ridx = row_index[(a, i, b, j, c, l, ech)]
                blk[ridx][cidx] = val
        blocks[d] = blk
    out = Mor(dom, cod, blocks)
    spec._assoc_inv_cache[cache_key] = out
    return out


def unitor(side: str, x: Obj) -> Mor:
    """Unit isomorphism 1 (x) x -> x (left) or x (x) 1 -> x (right).

    With the strict unit normalization both are identity matrices; the
    endpoint objects are literally equal as multiplicity vectors.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    return Mor.identity(x)


def braiding(x: Obj, y: Obj) -> Mor:
    """The braiding isomorphism x (x) y -> y (x) x."""
    _same_spec(x, y)
    spec = x.spec
    dom_pairs = pair_channels(x, y)
    cod_pairs = pair_channels(y, x)
    dom = tensor_obj(x, y)
    cod = tensor_obj(y, x)
    blocks = {}
    for c, cols in dom_pairs.items():
        rows = cod_pairs.get(c)
        if not rows:
            continue
        row_index = {key: ridx for ridx, key in enumerate(rows)}
        blk = la.zeros(spec.field, len(rows), len(cols))
        for cidx, (a, i, b, j) in enumerate(cols):
            ridx = row_index[(b, j, a, i)]
            blk[ridx][cidx] = spec.r_symbol(a, b, c)
        blocks[c] = blk
    return Mor(dom, cod, blocks)


def dual_obj(x: Obj) -> Obj:
    return Obj(x.spec, {x.spec.dual[lab]: m for lab, m in x.mult.items()})


def _dual_scales(spec: CategorySpec):
    """Per-label coevaluation normalizations making both bent-line moves exact.

    For each simple s the raw maps with coefficient 1 are composed around
    the first bent line; the resulting scalar K is inverted into the
    evaluation coefficient.  The second bent line is then checked by
    verify_zigzag rather than assumed.
    """
    if spec._dual_scale_cache is not None:
        return spec._dual_scale_cache
    scales = {}
    for s in spec.labels:
        sd = spec.dual[s]
        S = Obj.simple(spec, s)
        Sd = Obj.simple(spec, sd)
        i_raw = Mor(
            Obj.unit(spec),
            tensor_obj(S, Sd),
            {spec.unit: [[Scalar.one(spec.field)]]},
        )
        e_raw = Mor(
            tensor_obj(Sd, S),
            Obj.unit(spec),
            {spec.unit: [[Scalar.one(spec.field)]]},
        )
        z1 = compose(
            tensor_mor(Mor.identity(S), e_raw),
            compose(associator(S, Sd, S), tensor_mor(i_raw, Mor.identity(S))),
        )
        k = z1.block(s)[0][0]
        scales[s] = k.inverse()
    spec._dual_scale_cache = scales
    return scales


def ev_coev(x: Obj):
    """Evaluation x* (x) x -> 1 and coevaluation 1 -> x (x) x*.

    Slots pair up by equal copy index; coefficients are the per-simple
    normalizations from the bent-line condition, so both duality moves
    compose to the identity exactly.
    """
    spec = x.spec
    scales = _dual_scales(spec)
    xd = dual_obj(x)
    unit_o = Obj.unit(spec)
    ev_pairs = pair_channels(xd, x).get(spec.unit, [])
    ev_row = []
    for t, i, s, j in ev_pairs:
        ev_row.append(scales[s] if i == j else Scalar.zero(spec.field))
    ev = Mor(tensor_obj(xd, x), unit_o, {spec.unit: [ev_row]} if ev_pairs else {})
    coev_pairs = pair_channels(x, xd).get(spec.unit, [])
    coev_col = []
    for s, i, t, j in coev_pairs:
        coev_col.append(Scalar.one(spec.field) if i == j else Scalar.zero(spec.field))
    coev = Mor(unit_o, tensor_obj(x, xd), {spec.unit: [[v] for v in coev_col]} if coev_pairs else {})
    return ev, coev


def twist_mor(x: Obj) -> Mor:
    spec = x.spec
    blocks = {}
    for lab in x.labels_present():
        theta = spec.twist[lab]
        blocks[lab] = la.mat_scale(la.identity(spec.field, x.m(lab)), theta)
    return Mor(x, x, blocks)


def _simple_dim(spec: CategorySpec, s) -> Scalar:
    hit = spec._dim_cache.get(s)
    if hit is not None:
        return hit
    sd = spec.dual[s]
    _, coev_s = ev_coev(Obj.simple(spec, s))
    ev_sd, _ = ev_coev(Obj.simple(spec, sd))
    pivoted = tensor_mor(
        Mor.identity(Obj.simple(spec, s)).scale(spec.pivot[s]),
        Mor.identity(Obj.simple(spec, sd)),
    )
    loop = compose(ev_sd, compose(pivoted, coev_s))
    d = loop.block(spec.unit)[0][0]
    spec._dim_cache[s] = d
    return d


def categorical_dim(x: Obj) -> Scalar:
    """Sum of pivotal dimensions over the summands of x."""
    spec = x.spec
    total = Scalar.zero(spec.field)
    for lab, m in x.mult.items():
        total = total + _simple_dim(spec, lab).scale(m)
    return total


def direct_sum_with_maps(x1: Obj, x2: Obj):
    """x1 (+) x2 together with (inclusions, projections); x1 copies first."""
    _same_spec(x1, x2)
    spec = x1.spec
    field = spec.field
    total = x1 + x2
    inc1, inc2, pr1, pr2 = {}, {}, {}, {}
    for lab in total.labels_present():
        n1, n2 = x1.m(lab), x2.m(lab)
        n = n1 + n2
        if n1:
            blk = la.zeros(field, n, n1)
            for i in range(n1):
                blk[i][i] = Scalar.one(field)
            inc1[lab] = blk
            pr1[lab] = la.transpose(blk, n, n1, field)
        if n2:
            blk = la.zeros(field, n, n2)
            for i in range(n2):
                blk[n1 + i][i] = Scalar.one(field)
            inc2[lab] = blk
            pr2[lab] = la.transpose(blk, n, n2, field)
    return (
        total,
        (Mor(x1, total, inc1), Mor(x2, total, inc2)),
        (Mor(total, x1, pr1), Mor(total, x2, pr2)),
    )


def mor_right_inverse(f: Mor) -> Mor | None:
    """A section of f solved blockwise by elimination, or None if f is not surjective."""
    field = f.dom.spec.field
    blocks = {}
    for lab in f.cod.labels_present():
        cm = f.cod.m(lab)
        dm = f.dom.m(lab)
        if dm == 0:
            return None
        sol = la.solve(f.block(lab), la.identity(field, cm), field, cm, dm, cm)
        if sol is None:
            return None
        blocks[lab] = sol
    return Mor(f.cod, f.dom, blocks)


def proportionality_scalar(f: Mor, base: Mor) -> Scalar | None:
    """The scalar c with f = c * base, or None if no such scalar exists."""
    f._align(base)
    field = f.dom.spec.field
    c = None
    for lab in f.blocks:
        fb, bb = f.block(lab), base.block(lab)
        for frow, brow in zip(fb, bb):
            for x, y in zip(frow, brow):
                if y.is_zero():
                    if not x.is_zero():
                        return None
                    continue
                ratio = x / y
                if c is None:
                    c = ratio
                elif c != ratio:
                    return None
    if c is None:
        c = Scalar.zero(field)
    return c


# ---------------------------------------------------------------------------
# coherence checks


def verify_pentagon(spec: CategorySpec) -> Report:
    """Compare the two five-term recoupling composites on all label 4-tuples."""
    report = Report()
    simples = {lab: Obj.simple(spec, lab) for lab in spec.labels}
    for a in spec.labels:
        for b in spec.labels:
            for c in spec.labels:
                for d in spec.labels:
                    X, Y, Z, W = simples[a], simples[b], simples[c], simples[d]
                    lhs = compose(associator(X, Y, tensor_obj(Z, W)), associator(tensor_obj(X, Y), Z, W))
                    rhs = compose(
                        tensor_mor(Mor.identity(X), associator(Y, Z, W)),
                        compose(
                            associator(X, tensor_obj(Y, Z), W),
                            tensor_mor(associator(X, Y, Z), Mor.identity(W)),
                        ),
                    )
                    if lhs != rhs:
                        report.append(
                            "pentagon:%s,%s,%s,%s" % (a, b, c, d),
                            "fail",
                            witness=[a, b, c, d],
                        )
    return report


def verify_hexagon(spec: CategorySpec) -> Report:
    """Both hexagon families on all label triples, plus ribbon balancing."""
    report = Report()
    simples = {lab: Obj.simple(spec, lab) for lab in spec.labels}
    for a in spec.labels:
        for b in spec.labels:
            for c in spec.labels:
                X, Y, Z = simples[a], simples[b], simples[c]
                lhs = compose(
                    associator(Y, Z, X),
                    compose(braiding(X, tensor_obj(Y, Z)), associator(X, Y, Z)),
                )
                rhs = compose(
                    tensor_mor(Mor.identity(Y), braiding(X, Z)),
                    compose(associator(Y, X, Z), tensor_mor(braiding(X, Y), Mor.identity(Z))),
                )
                if lhs != rhs:
                    report.append("hexagon-1:%s,%s,%s" % (a, b, c), "fail", witness=[a, b, c])
                lhs2 = compose(
                    associator_inv(Z, X, Y),
                    compose(braiding(tensor_obj(X, Y), Z), associator_inv(X, Y, Z)),
                )
                rhs2 = compose(
                    tensor_mor(braiding(X, Z), Mor.identity(Y)),
                    compose(associator_inv(X, Z, Y), tensor_mor(Mor.identity(X), braiding(Y, Z))),
                )
                if lhs2 != rhs2:
                    report.append("hexagon-2:%s,%s,%s" % (a, b, c), "fail", witness=[a, b, c])
    for a, b, c in sorted(spec.fusion, key=lambda t: tuple(spec.label_order(x) for x in t)):
        lhs = spec.r_symbol(a, b, c) * spec.r_symbol(b, a, c)
        rhs = spec.twist[c] * (spec.twist[a] * spec.twist[b]).inverse()
        if lhs != rhs:
            report.append(
                "balancing:%s,%s,%s" % (a, b, c),
                "fail",
                witness={
                    "triple": [a, b, c],
                    "monodromy": scalar_literal(lhs),
                    "twist_ratio": scalar_literal(rhs),
                },
            )
    return report


def verify_triangle(spec: CategorySpec) -> Report:
    """Unit compatibility: the associator across the unit must be the identity."""
    report = Report()
    for a in spec.labels:
        for b in spec.labels:
            A, B = Obj.simple(spec, a), Obj.simple(spec, b)
            mid = associator(A, Obj.unit(spec), B)
            if mid != Mor.identity(tensor_obj(A, B)):
                report.append("triangle:%s,%s" % (a, b), "fail", witness=[a, b])
    return report


def verify_zigzag(spec: CategorySpec) -> Report:
    """Both duality moves on every simple label must compose to the identity."""
    report = Report()
    for s in spec.labels:
        S = Obj.simple(spec, s)
        Sd = dual_obj(S)
        ev, coev = ev_coev(S)
        z1 = compose(
            tensor_mor(Mor.identity(S), ev),
            compose(associator(S, Sd, S), tensor_mor(coev, Mor.identity(S))),
        )
        if z1 != Mor.identity(S):
            report.append("zigzag-1:%s" % s, "fail", witness=z1.to_json())
        z2 = compose(
            tensor_mor(ev, Mor.identity(Sd)),
            compose(associator_inv(Sd, S, Sd), tensor_mor(Mor.identity(Sd), coev)),
        )
        if z2 != Mor.identity(Sd):
            report.append("zigzag-2:%s" % s, "fail", witness=z2.to_json())
    return report


# ---------------------------------------------------------------------------
# loading


_CATEGORY_CACHE: dict[Path, CategorySpec] = {}


def load_category(path, use_cache: bool = True) -> CategorySpec:
    """Load a category description from JSON; repeated loads share the instance."""
    path = Path(path).resolve()
    if use_cache and path in _CATEGORY_CACHE:
        return _CATEGORY_CACHE[path]
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc)) from None
    except json.JSONDecodeError as exc:
        raise ParseError("bad JSON in %s: %s" % (path, exc)) from None
    spec = category_from_json(raw, name=raw.get("name", path.stem))
    if use_cache:
        _CATEGORY_CACHE[path] = spec
    return spec


def category_from_json(raw: dict, name: str = "anonymous") -> CategorySpec:
    try:
        field = FieldSpec.from_json(raw["field"])
        labels = list(raw["labels"])
        unit = raw["unit"]
        dual = dict(raw["dual"])
        fusion_list = [tuple(t) for t in raw["fusion"]]
    except KeyError as exc:
        raise ParseError("missing category key %s" % (exc,)) from None
    if len(set(fusion_list)) != len(fusion_list):
        raise FusionDataError("fusion multiplicity above one is not supported")
    for t in fusion_list:
        if len(t) != 3:
            raise ParseError("fusion entries must be triples, got %r" % (t,))

    def parse_table(key, arity):
        table = {}
        for k, lit in (raw.get(key) or {}).items():
            parts = tuple(k.split(","))
            if len(parts) != arity:
                raise ParseError("%s key %r must have %d labels" % (key, k, arity))
            table[parts] = parse_scalar(lit, field)
        return table

    F = parse_table("F", 6)
    R = parse_table("R", 3)
    twist = {lab: parse_scalar(lit, field) for lab, lit in (raw.get("twist") or {}).items()}
    pivot = {lab: parse_scalar(lit, field) for lab, lit in (raw.get("pivot") or {}).items()}
    return CategorySpec(name, field, labels, unit, dual, fusion_list, F, R, twist, pivot)
