import itertools
import random

import pytest

from superjacobi.errors import DataError
from superjacobi.factories import (
    CocycleData,
    LieAlgebroidData,
    algebroid_bracket_weights,
    jacobi_algebroid_loday_display,
    jacobi_algebroid_odd_bracket_display,
    jacobi_identity_defect,
    lie_algebroid_structure,
    make_jacobi_algebroid,
    make_lie_algebroid,
    make_odd_contact,
    match_odd_contact,
    sample_weight_homogeneous,
    solvable_2d_data,
    su2_data,
)
from superjacobi.identities import Sampler
from superjacobi.lodaypoisson import derived_product, loday_bracket
from superjacobi.oddjacobi import check_structure, odd_jacobi_bracket
from superjacobi.superpoly import Chart, grade_info

POINT = Chart([])


def homological(d):
    return check_structure(lie_algebroid_structure(d)).homological.passed


def test_su2_is_homological():
    d = su2_data()
    assert not jacobi_identity_defect(d)
    assert homological(d)


def test_su2_chart_and_weights():
    chart, Q = make_lie_algebroid(su2_data())
    assert chart.names == ("xi1", "xi2", "xi3")
    assert all(c.weight == 1 for c in chart)
    assert all(grade_info(c)[1] == 2 for c in Q.components)


@pytest.mark.parametrize("key", [(0, 1, 0), (0, 1, 1), (1, 2, 1)])
def test_off_diagonal_perturbations_break_homologicity(key):
    d = su2_data()
    s = dict(d.structure)
    s[key] = s.get(key, 0) + 1
    assert not homological(LieAlgebroidData(POINT, (0, 0, 0), structure=s))


def test_homological_iff_jacobi_small_algebras():
    keys = [(0, 1, 0), (0, 1, 1), (0, 2, 0), (0, 2, 2), (1, 2, 1), (1, 2, 2)]
    rng = random.Random(3)
    for _ in range(60):
        s = {k: rng.choice((-1, 0, 0, 1)) for k in keys}
        d = LieAlgebroidData(POINT, (0, 0, 0), structure=s)
        assert homological(d) == (not jacobi_identity_defect(d))
    for vals in itertools.product((-1, 0, 1), repeat=2):
        d = LieAlgebroidData(POINT, (0, 0), structure={(0, 1, 0): vals[0], (0, 1, 1): vals[1]})
        assert homological(d)


def test_solvable_cocycles():
    d = solvable_2d_data()
    assert check_structure(make_jacobi_algebroid(d, CocycleData({0: 1}))).passed
    assert check_structure(make_jacobi_algebroid(d, CocycleData({}))).passed
    bad = check_structure(make_jacobi_algebroid(d, CocycleData({1: 1})))
    assert not bad.invariance.passed


def test_zero_cocycle_loday_is_trivial():
    J = make_jacobi_algebroid(solvable_2d_data(), CocycleData({}))
    s = Sampler()
    for t in range(40):
        rng = random.Random(t)
        f, g = s.draw(J.base, rng), s.draw(J.base, rng)
        assert loday_bracket(J, f, g).is_zero()


def test_weight_drops():
    d, c = solvable_2d_data(), CocycleData({0: 1})
    J = make_jacobi_algebroid(d, c)
    chk = algebroid_bracket_weights(J, samples=60, data=d, cocycle=c)
    assert chk.passed and chk.trials == 60
    assert chk.display_mismatches.get("odd_bracket", 0) == 0
    assert chk.display_mismatches.get("loday_bracket", 0) == 0
    # the quoted sign only differs on even X, so a mismatch shows up in 60 samples
    assert chk.display_mismatches.get("loday_bracket_quoted", 0) > 0


def test_weight_examples():
    J0 = make_jacobi_algebroid(solvable_2d_data(), CocycleData({}))
    b = J0.base
    e1, e2 = b.var("eta1"), b.var("eta2")
    # the Lie bracket [e1, e2] = e2, weight 1 + 1 - 1
    assert odd_jacobi_bracket(J0, e1, e2) == e2
    J = make_jacobi_algebroid(solvable_2d_data(), CocycleData({0: 1}))
    # with the cocycle the Q-term cancels it: eta2 - Q(eta1 eta2)
    assert odd_jacobi_bracket(J, e1, e2).is_zero()
    assert odd_jacobi_bracket(J, b.one(), e1) == 1
    assert derived_product(J, b.const(3), e1 * e2).is_zero()
    lb = loday_bracket(J, e1 * e2, e1 * e2)
    assert lb.is_zero() or grade_info(lb)[1] == 2


def test_displays_match_definitions():
    d, c = solvable_2d_data(), CocycleData({0: 1})
    J = make_jacobi_algebroid(d, c)
    rng = random.Random(11)
    for _ in range(40):
        X = sample_weight_homogeneous(J.base, rng)
        Y = sample_weight_homogeneous(J.base, rng)
        assert jacobi_algebroid_odd_bracket_display(d, c, J, X, Y) == odd_jacobi_bracket(J, X, Y)
        assert jacobi_algebroid_loday_display(d, c, J, X, Y) == loday_bracket(J, X, Y)


def test_sample_weight_homogeneous():
    chart = Chart([("x", 0, 0), ("eta", 1, 1), ("y", 0, 2)])
    rng = random.Random(0)
    for _ in range(30):
        p = sample_weight_homogeneous(chart, rng)
        assert p and grade_info(p)[1] is not None
        assert len(p.weight_parts()) == 1 and len(p.parity_parts()) == 1


def test_data_errors():
    with pytest.raises(DataError):
        LieAlgebroidData(POINT, (0, 0), structure={(0, 0, 1): 1}).structure_tensor()
    with pytest.raises(DataError):
        LieAlgebroidData(POINT, (0, 0), structure={(0, 3, 1): 1}).structure_tensor()
    with pytest.raises(DataError):
        LieAlgebroidData(POINT, (0, 0), structure={(0, 1, 0): 1, (1, 0, 0): 1}).structure_tensor()
    with pytest.raises(DataError):
        make_jacobi_algebroid(solvable_2d_data(), CocycleData({5: 1}))
    with pytest.raises(DataError):
        make_lie_algebroid(LieAlgebroidData(Chart([("x", 0, 1)]), (0,)))


def test_anchor_algebroid():
    # tangent bundle of the line: anchor the identity, no brackets
    base = Chart([("x", 0, 0)])
    d = LieAlgebroidData(base, (0,), anchor={(0, "x"): 1})
    J = lie_algebroid_structure(d)
    assert check_structure(J).passed
    assert J.Q.components[0] == J.base.var("xi1")


def test_match_odd_contact(contact1, derham2):
    assert match_odd_contact(contact1) == 1
    assert match_odd_contact(make_odd_contact(3)) == 3
    assert match_odd_contact(derham2) is None
    with pytest.raises(ValueError):
        make_odd_contact(0)
