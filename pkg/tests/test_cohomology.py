import random
from fractions import Fraction

import pytest

from sheafcalc.cellsheaf import (
    CellularSheaf, covering_pairs, global_section_space, validate_sheaf)
from sheafcalc.cohomology import (
    BayesModel, bayes_build, bayes_check, coboundary, cochain_complex,
    cohomology_dims)
from sheafcalc.complexes import homology_dims, validate_complex
from sheafcalc.rationals import RationalMatrix, block_assemble, decompose

from util import (
    constant_sheaf, base_complex, random_complex, random_valid_sheaf,
    running_sheaf, sprinkler, union_find_components, zero_sheaf)


# ----------------------------------------------------------- coboundaries

def test_two_vertex_coboundary_signs():
    # deleting the i-th vertex contributes (-1)^i, so the first vertex
    # block enters negated and the second one plain
    c = validate_complex([("u", "v")])
    a = RationalMatrix.from_rows([[1, 2], [3, 4]])
    b = RationalMatrix.from_rows([[1, 0, 1], [0, 1, 0]])
    s = CellularSheaf(
        c, {("u",): 2, ("v",): 3, ("u", "v"): 2},
        {(("u",), ("u", "v")): a, (("v",), ("u", "v")): b})
    delta0 = coboundary(s, 0)
    expected = block_assemble(
        {(0, 0): a.scale(-1), (0, 1): b}, (2,), (2, 3))
    assert delta0 == expected


def test_coboundary_shapes_on_running_sheaf():
    s = running_sheaf()
    assert coboundary(s, 0).rows == 15 and coboundary(s, 0).cols == 14
    assert coboundary(s, 1).rows == 1 and coboundary(s, 1).cols == 15
    top = coboundary(s, 2)
    assert (top.rows, top.cols) == (0, 1)


def test_coboundary_rejects_cosheaves():
    s = running_sheaf()
    dual = CellularSheaf(
        s.base, s.stalk_dim,
        {p: m.transpose() for p, m in s.restriction.items()}, "cosheaf")
    with pytest.raises(AssertionError):
        coboundary(dual, 0)


def test_cochain_complex_of_running_sheaf():
    s = running_sheaf()
    cc = cochain_complex(s)
    assert cc.dims == (14, 15, 1)
    assert cc.layout[0] == tuple(s.base.k_faces(0))
    assert cc.layout[2] == (("c", "d", "e"),)
    assert (cc.deltas[1] @ cc.deltas[0]).is_zero()


def test_cochain_complex_propagates_validation_failure():
    s = running_sheaf()
    maps = dict(s.restriction)
    maps[(("c", "e"), ("c", "d", "e"))] = RationalMatrix.from_rows([[0, 1]])
    with pytest.raises(ValueError, match="invalid sheaf: path-independence"):
        cochain_complex(CellularSheaf(s.base, s.stalk_dim, maps))


def test_delta_squared_vanishes_on_random_sheaves():
    rng = random.Random(23)
    for _ in range(25):
        s = random_valid_sheaf(rng, random_complex(rng))
        cc = cochain_complex(s)
        for k in range(len(cc.deltas) - 1):
            assert (cc.deltas[k + 1] @ cc.deltas[k]).is_zero()


# ------------------------------------------------------- cohomology dims

def test_running_sheaf_cohomology_regression():
    assert cohomology_dims(running_sheaf()) == (2, 2, 0)


def test_degree_zero_matches_global_sections():
    s = running_sheaf()
    assert cohomology_dims(s)[0] == global_section_space(s).dimension
    rng = random.Random(5)
    for _ in range(15):
        t = random_valid_sheaf(rng, random_complex(rng))
        assert cohomology_dims(t)[0] == global_section_space(t).dimension


def test_zero_sheaf_has_zero_cohomology():
    dims = cohomology_dims(zero_sheaf(base_complex()))
    assert dims == (0, 0, 0)


def test_constant_sheaf_on_edge_complex():
    c = validate_complex([("a", "b")])
    assert cohomology_dims(constant_sheaf(c, 1)) == (1, 0)
    assert homology_dims(c) == [1, 0]


def test_constant_sheaf_matches_homology():
    c = base_complex()
    assert cohomology_dims(constant_sheaf(c, 1)) == (1, 3, 0)
    assert homology_dims(c) == [1, 3, 0]


def test_constant_sheaf_matches_homology_randomly():
    rng = random.Random(41)
    for _ in range(30):
        c = random_complex(rng)
        sheaf_dims = cohomology_dims(constant_sheaf(c, 1))
        cycle_dims = homology_dims(c)
        assert list(sheaf_dims) == cycle_dims
        assert sheaf_dims[0] == union_find_components(c)


def test_euler_characteristic_is_chain_level():
    rng = random.Random(9)
    for _ in range(15):
        s = random_valid_sheaf(rng, random_complex(rng))
        cc = cochain_complex(s)
        chains = sum((-1) ** k * d for k, d in enumerate(cc.dims))
        homs = sum((-1) ** k * h
                   for k, h in enumerate(cohomology_dims(s)))
        assert chains == homs


# ------------------------------------------------------------ bayes nets

def test_model_validation_errors():
    m = sprinkler()
    with pytest.raises(ValueError, match="cycle"):
        bayes_build(BayesModel(
            ("A", "B"), {"A": ("0", "1"), "B": ("0", "1")},
            {"A": ("B",), "B": ("A",)},
            {"A": ((Fraction(1, 2), Fraction(1, 2)),) * 2,
             "B": ((Fraction(1, 2), Fraction(1, 2)),) * 2}))
    with pytest.raises(ValueError, match="does not sum to 1"):
        bad = dict(m.cpt)
        bad["R"] = ((Fraction(1, 5), Fraction(1, 2)),)
        bayes_build(BayesModel(m.variables, m.outcomes, m.parents, bad))
    with pytest.raises(ValueError, match="unknown parent"):
        bayes_build(BayesModel(
            m.variables, m.outcomes,
            {"W": ("S", "R"), "S": ("Z",), "R": ()}, m.cpt))
    with pytest.raises(ValueError, match="needs 4 rows"):
        bad = dict(m.cpt)
        bad["W"] = bad["W"][:2]
        bayes_build(BayesModel(m.variables, m.outcomes, m.parents, bad))


def test_outcome_space_guard():
    names = tuple(f"V{i}" for i in range(13))
    with pytest.raises(ValueError, match="too large"):
        bayes_build(BayesModel(
            names, {n: ("0", "1") for n in names},
            {n: () for n in names},
            {n: ((Fraction(1, 2), Fraction(1, 2)),) for n in names}))


def test_marginalization_matrices_are_pinned():
    a = bayes_build(sprinkler())
    drop_w = a.cosheaf.restriction[(("S", "R"), ("W", "S", "R"))]
    assert drop_w.row_lists() == [
        [1, 0, 0, 0, 1, 0, 0, 0],
        [0, 1, 0, 0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 0, 1, 0],
        [0, 0, 0, 1, 0, 0, 0, 1]]
    drop_r = a.cosheaf.restriction[(("W", "S"), ("W", "S", "R"))]
    assert drop_r.row_lists() == [
        [1, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 1, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 1]]
    drop_s = a.cosheaf.restriction[(("W", "R"), ("W", "S", "R"))]
    assert drop_s.row_lists() == [
        [1, 0, 1, 0, 0, 0, 0, 0],
        [0, 1, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 1, 0],
        [0, 0, 0, 0, 0, 1, 0, 1]]
    assert a.cosheaf.restriction[(("R",), ("S", "R"))].row_lists() == [
        [1, 0, 1, 0], [0, 1, 0, 1]]
    assert a.cosheaf.restriction[(("S",), ("S", "R"))].row_lists() == [
        [1, 1, 0, 0], [0, 0, 1, 1]]


def test_cosheaf_is_total_and_path_independent():
    a = bayes_build(sprinkler())
    assert a.cosheaf.variance == "cosheaf"
    assert set(a.cosheaf.restriction) == set(covering_pairs(a.cosheaf.base))
    assert validate_sheaf(a.cosheaf).ok


def test_conditional_chain_follows_the_dag():
    a = bayes_build(sprinkler())
    assert a.chain == (("R",), ("S", "R"), ("W", "S", "R"))
    assert set(a.sheaf.restriction) == {
        (("R",), ("S", "R")), (("S", "R"), ("W", "S", "R"))}
    assert validate_sheaf(a.sheaf, require_complete=False).ok
    assert validate_sheaf(a.sheaf).kind == "missing-map"
    # multiplying by P(S | R) : rows run over (S, R), columns over R
    grow_s = a.sheaf.restriction[(("R",), ("S", "R"))]
    assert grow_s.row_lists() == [
        [Fraction(1, 100), 0],
        [0, Fraction(2, 5)],
        [Fraction(99, 100), 0],
        [0, Fraction(3, 5)]]


def test_joint_is_the_cpt_product():
    a = bayes_build(sprinkler())
    assert sum(a.joint) == 1
    # (w, s, r) is the first index in the w-slowest layout
    assert a.joint[0] == Fraction(99, 50000)
    # (~w, ~s, ~r) is the last one: 4/5 * 3/5 * 1
    assert a.joint[-1] == Fraction(12, 25)


def test_sprinkler_passes_both_axes():
    report = bayes_check(sprinkler())
    assert report.ok
    assert report.violations == ()


def test_perturbed_joint_fails_only_the_conditionals():
    m = sprinkler()
    vec = list(bayes_build(m).joint)
    vec[0] += Fraction(1, 7)
    total = sum(vec)
    vec = [x / total for x in vec]
    report = bayes_check(m, joint=vec)
    assert not report.ok
    assert report.violations
    assert all(kind == "conditional-component"
               for kind, _ in report.violations)


def test_joint_override_length_is_checked():
    with pytest.raises(ValueError, match="wrong length"):
        bayes_check(sprinkler(), joint=[1])


def test_deterministic_chain_model():
    f = Fraction
    m = BayesModel(
        variables=("X", "Y"),
        outcomes={"X": ("x0", "x1"), "Y": ("y0", "y1")},
        parents={"X": (), "Y": ("X",)},
        cpt={"X": ((f(1, 2), f(1, 2)),),
             "Y": ((f(0), f(1)), (f(1), f(0)))})
    a = bayes_build(m)
    assert a.joint == (0, f(1, 2), f(1, 2), 0)
    assert bayes_check(m).ok
