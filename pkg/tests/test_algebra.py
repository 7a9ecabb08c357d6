"""Algebra-object tests: axioms, counit, copairing, index, constructions.

Expected index values are frozen from the group orders; the engine must
reproduce them through the snake solve, not the other way round.
"""

import pytest

from ctc import data_path
from ctc.algebra import (
    AlgebraError,
    AlgebraObject,
    Group,
    NotScalarMultiple,
    InvalidGroupTable,
    NonUniqueCoevaluation,
    NotIsotropic,
    NotRigidSelfDual,
    UnitMultiplicityNotOne,
    algebra_dim_with_twist,
    algebra_from_json,
    check_algebra,
    compute_index,
    frobenius_identity_check,
    group_algebra,
    load_algebra,
    load_group,
    make_counit,
    solve_coevaluation,
    subgroup_algebra,
)
from ctc.category import Mor, Obj, categorical_dim, compose, load_category, tensor_obj
from ctc.fields import ParseError, Scalar, parse_scalar


def cat(name):
    return load_category(data_path("categories/%s.json" % name))


def grp(name):
    return load_group(data_path("groups/%s.json" % name))


def statuses(report):
    return {i.check: i.status for i in report.items}


# --- groups ----------------------------------------------------------------


def test_group_loading():
    g = grp("s3")
    assert len(g) == 6
    assert g.identity == "e"
    assert g.mul("r", "r2") == "e"
    assert g.inverse("sr") == "sr"
    assert g.mul("s", "r") != g.mul("r", "s")


def test_group_rejects_bad_entry():
    with pytest.raises(InvalidGroupTable):
        Group("bad", ["a", "b"], [["a", "b"], ["b", "x"]])


def test_group_rejects_broken_rows():
    with pytest.raises(InvalidGroupTable):
        Group("bad", ["a", "b"], [["a", "a"], ["b", "b"]])


def test_group_rejects_non_associative_loop():
    # smallest non-associative loop: Latin square with identity, not a group
    els = ["e", "1", "2", "3", "4"]
    table = [
        ["e", "1", "2", "3", "4"],
        ["1", "e", "3", "4", "2"],
        ["2", "4", "e", "1", "3"],
        ["3", "2", "4", "e", "1"],
        ["4", "3", "1", "2", "e"],
    ]
    with pytest.raises(InvalidGroupTable):
        Group("loop5", els, table)


def test_group_rejects_missing_identity():
    # Latin square with no row acting as the identity on both sides
    els = ["0", "1", "2"]
    table = [["1", "0", "2"], ["0", "2", "1"], ["2", "1", "0"]]
    with pytest.raises(InvalidGroupTable):
        Group("bad", els, table)


# --- group algebras in one-label categories --------------------------------


def test_group_algebra_z3_axioms():
    alg = group_algebra(grp("z3"), cat("vec_q"))
    rep = check_algebra(alg)
    assert statuses(rep) == {
        "unit-left": "pass",
        "unit-right": "pass",
        "associative": "pass",
        "commutative": "pass",
    }


def test_group_algebra_matches_bundled_file():
    alg = group_algebra(grp("z3"), cat("vec_q"))
    bundled = load_algebra(data_path("algebras/alg_qz3.json"))
    assert bundled.carrier == alg.carrier
    assert bundled.unit_map == alg.unit_map
    assert bundled.mult_map == alg.mult_map


def test_group_algebra_counit_and_index():
    spec = cat("vec_q")
    alg = group_algebra(grp("z3"), spec)
    eps = make_counit(alg)
    assert compose(eps, alg.unit_map).block("1")[0][0].is_one()
    coev = solve_coevaluation(alg, eps)
    assert solve_coevaluation(alg) == coev
    assert compute_index(alg, eps, coev) == Scalar.from_int(spec.field, 3)
    assert frobenius_identity_check(alg, eps, coev).ok
    assert algebra_dim_with_twist(alg, eps, coev) == Scalar.from_int(spec.field, 3)
    assert categorical_dim(alg.carrier) == Scalar.from_int(spec.field, 3)


def test_group_algebra_s3_not_commutative():
    alg = group_algebra(grp("s3"), cat("vec_q"))
    st = statuses(check_algebra(alg))
    assert st["unit-left"] == "pass"
    assert st["associative"] == "pass"
    assert st["commutative"] == "fail"


def test_group_algebra_z2_char_two_index_vanishes():
    spec = cat("vec_f2")
    alg = group_algebra(grp("z2"), spec)
    assert check_algebra(alg).ok
    idx = compute_index(alg)
    assert idx.is_zero()


def test_group_algebra_z3_char_three_index_vanishes():
    spec = cat("vec_f3")
    alg = group_algebra(grp("z3"), spec)
    assert compute_index(alg).is_zero()


def test_group_algebra_needs_single_label():
    with pytest.raises(AlgebraError):
        group_algebra(grp("z2"), cat("toric_code"))


# --- label-sum algebras in pointed categories ------------------------------


def test_subgroup_algebra_h02():
    spec = cat("pointed_z4")
    alg = subgroup_algebra(["0", "2"], spec)
    bundled = load_algebra(data_path("algebras/alg_h02.json"))
    assert bundled.carrier == alg.carrier
    assert bundled.mult_map == alg.mult_map
    assert check_algebra(alg).ok
    assert compute_index(alg) == Scalar.from_int(spec.field, 2)


def test_subgroup_algebra_toric_1e():
    spec = cat("toric_code")
    alg = subgroup_algebra(["1", "e"], spec)
    assert check_algebra(alg).ok
    eps = make_counit(alg)
    coev = solve_coevaluation(alg, eps)
    assert compute_index(alg, eps, coev) == Scalar.from_int(spec.field, 2)
    assert algebra_dim_with_twist(alg, eps, coev) == Scalar.from_int(spec.field, 2)
    assert frobenius_identity_check(alg, eps, coev).ok


def test_subgroup_algebra_rejects_twisted_label():
    with pytest.raises(NotIsotropic):
        subgroup_algebra(["1", "f"], cat("toric_code"))


def test_subgroup_algebra_rejects_full_z4():
    with pytest.raises(NotIsotropic):
        subgroup_algebra(["0", "1", "2", "3"], cat("pointed_z4"))


def test_subgroup_algebra_rejects_monodromy():
    # e and m are untwisted but braid with monodromy -1
    with pytest.raises(NotIsotropic):
        subgroup_algebra(["1", "e", "m", "f"], cat("toric_code"))


def test_subgroup_algebra_rejects_non_closed():
    with pytest.raises(AlgebraError):
        subgroup_algebra(["0", "1"], cat("pointed_z4"))


def test_subgroup_algebra_requires_unit():
    with pytest.raises(AlgebraError):
        subgroup_algebra(["2"], cat("pointed_z4"))


# --- counit and copairing edge cases ---------------------------------------


def split_pair_algebra(spec):
    """The split algebra on two unit summands, componentwise product."""
    field = spec.field
    one, zero = Scalar.one(field), Scalar.zero(field)
    carrier = Obj(spec, {"1": 2})
    unit_map = Mor(Obj.unit(spec), carrier, {"1": [[one], [one]]})
    # pair columns in slot order: (0,0) (0,1) (1,0) (1,1)
    mult_map = Mor(
        tensor_obj(carrier, carrier),
        carrier,
        {"1": [[one, zero, zero, zero], [zero, zero, zero, one]]},
    )
    return AlgebraObject("split_pair", carrier, unit_map, mult_map)


def test_split_pair_is_algebra_without_canonical_counit():
    alg = split_pair_algebra(cat("vec_q"))
    assert check_algebra(alg).ok
    with pytest.raises(UnitMultiplicityNotOne):
        make_counit(alg)


def test_structure_map_endpoints_validated():
    spec = cat("toric_code")
    carrier = Obj(spec, {"e": 1})
    with pytest.raises(AlgebraError):
        AlgebraObject(
            "bad",
            carrier,
            Mor.zero(Obj.unit(spec), Obj.unit(spec)),  # wrong codomain
            Mor.zero(tensor_obj(carrier, carrier), carrier),
        )


def test_counit_requires_unit_label():
    spec = cat("toric_code")
    carrier = Obj(spec, {"e": 1})
    alg = AlgebraObject(
        "unitless",
        carrier,
        Mor.zero(Obj.unit(spec), carrier),
        Mor.zero(tensor_obj(carrier, carrier), carrier),
    )
    with pytest.raises(UnitMultiplicityNotOne):
        make_counit(alg)


def test_index_undefined_for_skew_counit():
    spec = cat("vec_q")
    alg = split_pair_algebra(spec)
    one = Scalar.one(spec.field)
    two = Scalar.from_int(spec.field, 2)
    eps = Mor(alg.carrier, Obj.unit(spec), {"1": [[two, one]]})
    coev = solve_coevaluation(alg, eps)
    with pytest.raises(NotScalarMultiple):
        compute_index(alg, eps, coev)


def test_dual_numbers_not_rigid():
    # basis (1, x) with x*x = 0; the coordinate counit pairs degenerately
    spec = cat("vec_q")
    field = spec.field
    one, zero = Scalar.one(field), Scalar.zero(field)
    carrier = Obj(spec, {"1": 2})
    unit_map = Mor(Obj.unit(spec), carrier, {"1": [[one], [zero]]})
    mult_map = Mor(
        tensor_obj(carrier, carrier),
        carrier,
        {"1": [[one, zero, zero, zero], [zero, one, one, zero]]},
    )
    alg = AlgebraObject("dual_numbers", carrier, unit_map, mult_map)
    assert check_algebra(alg).ok
    eps = make_counit(alg)
    with pytest.raises(NotRigidSelfDual):
        solve_coevaluation(alg, eps)


def test_mutated_mult_breaks_associativity():
    spec = cat("vec_q")
    alg = group_algebra(grp("z3"), spec)
    blk = [row[:] for row in alg.mult_map.block("1")]
    blk[2][4] = blk[2][4] + Scalar.one(spec.field)  # perturb g1*g1 component
    bad = alg.with_structure(
        mult_map=Mor(alg.mult_map.dom, alg.mult_map.cod, {"1": blk})
    )
    st = statuses(check_algebra(bad))
    assert st["associative"] == "fail"
    assert st["unit-left"] == "pass"


# --- loading ---------------------------------------------------------------


def test_bundled_algebras_load_and_pass():
    for name in ("alg_h02", "alg_toric_1e", "alg_qz3"):
        alg = load_algebra(data_path("algebras/%s.json" % name))
        assert check_algebra(alg).ok, name


def test_algebra_from_json_missing_key():
    with pytest.raises(ParseError):
        algebra_from_json({"category": "vec_q"})


def test_algebra_from_json_inline():
    raw = {
        "category": "vec_q",
        "object": {"1": 1},
        "iota": {"1": [["1"]]},
        "mu": {"1": [["1"]]},
    }
    alg = algebra_from_json(raw, name="unit_algebra")
    assert check_algebra(alg).ok
    assert compute_index(alg).is_one()


def test_algebra_from_json_explicit_counit():
    raw = {
        "category": "vec_q",
        "object": {"1": 2},
        "iota": {"1": [["1"], ["0"]]},
        "mu": {"1": [["1", "0", "0", "0"], ["0", "1", "1", "0"]]},
        "counit": {"1": [["1", "0"]]},
    }
    alg = algebra_from_json(raw, name="dual_numbers")
    assert alg.counit is not None
    assert make_counit(alg) == alg.counit
    bad = dict(raw, counit={"1": [["0", "1"]]})
    with pytest.raises(AlgebraError):
        algebra_from_json(bad, name="bad_counit")
