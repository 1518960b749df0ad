import random

import pytest
from hypothesis import given

from superjacobi.errors import ChartError, StructureError
from superjacobi.factories import make_q_manifold, make_schouten
from superjacobi.identities import IdentityId, Sampler, verify_identity
from superjacobi.oddjacobi import (
    OddJacobiStructure,
    check_structure,
    derivation_defect,
    hamiltonian_X,
    is_jacobi_field,
    odd_jacobi_bracket,
    odd_jacobi_bracket_coords,
)
from superjacobi.phasespace import VectorField, apply, commutator, lift
from superjacobi.superpoly import Chart, Parity

from conftest import draw, draw_many, seeds

LINE = Chart([("x", 0), ("theta", 1)])


def test_odd_contact_is_valid(contact1, contact2):
    for J in (contact1, contact2):
        rep = check_structure(J)
        assert rep.passed, [r.name for r in rep if not r.passed]


def test_de_rham_is_valid(derham2):
    assert check_structure(derham2).passed


def test_non_homological_q_reports_residual():
    Q = VectorField(LINE, 1, {"x": LINE.var("theta"), "theta": 1})
    rep = check_structure(make_q_manifold(LINE, Q))
    assert not rep.homological.passed
    assert rep.invariance.passed and rep.compatibility.passed


def test_schouten_needs_closed_s():
    ps = lift(LINE)
    L = ps.lifted
    J = make_schouten(ps, L.var("p_x") * L.var("p_theta"))
    assert check_structure(J).passed
    trivial = make_schouten(ps, L.zero())
    assert check_structure(trivial).passed
    assert odd_jacobi_bracket(trivial, LINE.var("x"), LINE.var("theta")).is_zero()


def test_structure_type_errors():
    ps = lift(LINE)
    L = ps.lifted
    zero_q = VectorField.zero(LINE, Parity.ODD)
    with pytest.raises(StructureError):
        OddJacobiStructure(ps, L.var("p_x") * L.var("p_x"), zero_q)
    with pytest.raises(StructureError):
        OddJacobiStructure(ps, L.var("p_theta"), zero_q)
    with pytest.raises(StructureError):
        OddJacobiStructure(ps, L.zero(), VectorField.partial(LINE, "x"))


def test_bracket_with_unit_is_q(contact1, derham2):
    for J in (contact1, derham2):
        for seed in range(20):
            g = draw(J.base, seed)
            assert odd_jacobi_bracket(J, J.one(), g) == apply(J.Q, g)


def test_contact_coordinate_brackets(contact2):
    b = contact2.base
    for a in (1, 2):
        for c in (1, 2):
            val = odd_jacobi_bracket(contact2, b.var(f"x_{a}"), b.var(f"xs_{c}"))
            assert val == (-1 if a == c else 0)


def test_q_manifold_bracket_is_q_of_product(derham2):
    for seed in range(30):
        f, g = draw_many(derham2.base, seed, 2)
        sign = -1 if int(f.parity) else 1
        assert odd_jacobi_bracket(derham2, f, g) == apply(derham2.Q, f * g).scale(sign)


@given(seeds)
def test_bracket_parity(contact1, seed):
    f, g = draw_many(contact1.base, seed, 2)
    br = odd_jacobi_bracket(contact1, f, g)
    if br:
        assert br.parity == f.parity + g.parity + Parity.ODD


def test_coordinate_form_agrees(contact2, derham2):
    for J in (contact2, derham2):
        for seed in range(100):
            f, g = draw_many(J.base, seed, 2)
            assert odd_jacobi_bracket_coords(J, f, g) == odd_jacobi_bracket(J, f, g)


def test_bracket_chart_check(contact1):
    with pytest.raises(ChartError):
        odd_jacobi_bracket(contact1, LINE.var("x"), contact1.one())


def test_x_of_unit_is_q(contact1, derham2):
    for J in (contact1, derham2):
        assert hamiltonian_X(J, J.one()) == J.Q


def test_x_on_q_manifold(derham2):
    for seed in range(20):
        f = draw(derham2.base, seed)
        sign = -1 if int(f.parity) else 1
        assert hamiltonian_X(derham2, f) == derham2.Q.times(f).scale(sign)


def test_x_of_coordinate_on_contact(contact2):
    b = contact2.base
    for a in (1, 2):
        X = hamiltonian_X(contact2, b.var(f"x_{a}"))
        assert X.parity == Parity.ODD
        for c in (1, 2):
            # X_f(g) = [[f,g]] - Q(f) g and Q(x_a) = 0
            assert apply(X, b.var(f"xs_{c}")) == (-1 if a == c else 0)
        assert apply(X, b.var("tau")) == -b.var(f"x_{a}")


@given(seeds)
def test_x_definition(contact1, seed):
    f, g = draw_many(contact1.base, seed, 2)
    sign = -1 if int(f.parity) else 1
    lhs = apply(hamiltonian_X(contact1, f), g)
    assert lhs == odd_jacobi_bracket(contact1, f, g).scale(sign) - apply(contact1.Q, f) * g


def test_jacobi_fields(contact1):
    assert is_jacobi_field(contact1, contact1.Q).passed
    assert is_jacobi_field(contact1, VectorField.zero(contact1.base)).passed
    tau = contact1.base.var("tau")
    # Q(tau) = -1 is nonzero, and X_tau fails to preserve S
    rep = is_jacobi_field(contact1, hamiltonian_X(contact1, tau))
    assert not rep.passed


@given(seeds)
def test_q_is_a_derivation_of_the_bracket(contact1, seed):
    f, g = draw_many(contact1.base, seed, 2)
    for fp in f.parity_parts().values():
        assert derivation_defect(contact1, contact1.Q, fp, g).is_zero()


@given(seeds)
def test_x_commutator_of_q(contact1, seed):
    f = draw(contact1.base, seed)
    ps = contact1.ps
    lhs = commutator(contact1.Q, hamiltonian_X(contact1, f), ps)
    assert lhs == -hamiltonian_X(contact1, apply(contact1.Q, f))


@pytest.mark.parametrize("ident", [IdentityId.ODD_JACOBI_AXIOMS, IdentityId.X_MORPHISM, IdentityId.X_PRODUCT])
def test_catalog_axioms(contact1, derham2, ident):
    for J in (contact1, derham2):
        rep = verify_identity(J, ident, trials=40, sampler=Sampler(max_degree=2))
        assert rep.status == "pass", rep.witnesses


def test_random_rng_independence(contact1):
    # the bracket is deterministic and does not depend on hidden state
    rng = random.Random(5)
    f = Sampler().draw(contact1.base, rng)
    g = Sampler().draw(contact1.base, rng)
    assert odd_jacobi_bracket(contact1, f, g) == odd_jacobi_bracket(contact1, f, g)
