"""Seeded, exact verification of the identity catalog.

Each catalog entry samples parity-homogeneous polynomials, evaluates the
defect of an identity exactly and reports pass only if every defect is the
zero polynomial (or zero vector field). Trial ``t`` of identity ``ID`` under
seed ``s`` always draws from ``random.Random(f"{s}/{ID}/{t}")``, so reports
are reproducible and independent of evaluation order.

Two entries check a corrected form of an identity whose commonly quoted
sign is off (SYMMETRIZATION, GEN_LEIBNIZ). The quoted form is evaluated as
well, and its failures are attached to the report as notes.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .errors import UsageError
from .factories import (
    match_odd_contact,
    odd_contact_bracket_display,
    odd_contact_loday_display,
)
from .lodaypoisson import (
    derived_product,
    hamiltonian_Y,
    loday_bracket,
    loday_bracket_coords,
    star_commutator,
)
from .oddjacobi import (
    OddJacobiStructure,
    derivation_defect,
    hamiltonian_X,
    is_jacobi_field,
    odd_jacobi_bracket,
    odd_jacobi_bracket_coords,
)
from .phasespace import VectorField, apply, commutator
from .superpoly import MIXED, Chart, Parity, SuperPolynomial, grade_info

Defect = Union[SuperPolynomial, VectorField, str]


class IdentityId(str, enum.Enum):
    JACOBI_LODAY = "JACOBI_LODAY"
    LEFT_LEIBNIZ = "LEFT_LEIBNIZ"
    SYMMETRIZATION = "SYMMETRIZATION"
    SKEWSYMMETRY_PROBE = "SKEWSYMMETRY_PROBE"
    CENTRE_TRIVIALITY = "CENTRE_TRIVIALITY"
    ODD_JACOBI_AXIOMS = "ODD_JACOBI_AXIOMS"
    BIHAMILTONIAN = "BIHAMILTONIAN"
    MASTER_EQUATION = "MASTER_EQUATION"
    Q_Y_COMMUTE = "Q_Y_COMMUTE"
    Y_IS_JACOBI = "Y_IS_JACOBI"
    Y_MORPHISM = "Y_MORPHISM"
    MIXED_COMM = "MIXED_COMM"
    Y_OF_ODD_BRACKET = "Y_OF_ODD_BRACKET"
    NESTED_COROLLARY = "NESTED_COROLLARY"
    Y_PRODUCT = "Y_PRODUCT"
    RIGHT_LEIBNIZ_DEFECT = "RIGHT_LEIBNIZ_DEFECT"
    CARTAN_TABLE = "CARTAN_TABLE"
    STAR_ASSOCIATIVE = "STAR_ASSOCIATIVE"
    STAR_COMM_IS_BRACKET = "STAR_COMM_IS_BRACKET"
    GEN_LEIBNIZ = "GEN_LEIBNIZ"
    DERIVED_LEIBNIZ = "DERIVED_LEIBNIZ"
    STAR_HAM = "STAR_HAM"
    SCHOUTEN_TRIVIAL = "SCHOUTEN_TRIVIAL"
    # additions beyond the core list
    X_MORPHISM = "X_MORPHISM"
    X_PRODUCT = "X_PRODUCT"
    JACOBI_FIELD_EQUIV = "JACOBI_FIELD_EQUIV"
    Q_COHOMOLOGY = "Q_COHOMOLOGY"
    COORDS_CROSSCHECK = "COORDS_CROSSCHECK"
    ALGEBROID_WEIGHTS = "ALGEBROID_WEIGHTS"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, name: str) -> "IdentityId":
        try:
            return cls(name.strip().upper())
        except ValueError:
            raise UsageError(f"unknown identity id {name!r}") from None


PASS = "pass"
FAIL = "fail"
EXPECTED_FAIL = "expected-fail-confirmed"
NOT_APPLICABLE = "not-applicable"
SKIPPED = "skipped"

OK_STATUSES = frozenset({PASS, EXPECTED_FAIL, NOT_APPLICABLE})


@dataclass
class Witness:
    trial: int
    inputs: Tuple[SuperPolynomial, ...]
    defects: Dict[str, Defect]

    def size(self) -> int:
        return sum(max(p.total_degree(), 0) for p in self.inputs)


@dataclass
class CheckReport:
    identity: IdentityId
    trials: int
    status: str
    witnesses: List[Witness] = field(default_factory=list)
    seed: int = 0
    failures: int = 0
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status in OK_STATUSES


@dataclass(frozen=True)
class Sampler:
    """Random parity-homogeneous polynomials of bounded degree and small integer coefficients."""

    max_degree: int = 3
    max_coeff: int = 5
    max_terms: int = 3

    def monomial(self, chart: Chart, rng: random.Random) -> Tuple[int, ...]:
        mono = [0] * len(chart)
        for _ in range(rng.randint(0, self.max_degree)):
            i = rng.randrange(len(chart))
            if chart.parities[i] and mono[i]:
                continue
            mono[i] += 1
        return tuple(mono)

    def draw(self, chart: Chart, rng: random.Random, parity: Optional[int] = None,
             weight_homogeneous: bool = False, allow_zero: bool = False) -> SuperPolynomial:
        if not len(chart):
            c = rng.randint(1, self.max_coeff) * rng.choice((1, -1))
            return chart.const(c)
        if parity is None:
            parity = rng.randint(0, 1)
        coeffs = [c for c in range(-self.max_coeff, self.max_coeff + 1) if c]
        for _ in range(100):
            nterms = rng.randint(1, self.max_terms)
            terms = []
            weight = None
            for _ in range(20 * nterms):
                if len(terms) == nterms:
                    break
                mono = self.monomial(chart, rng)
                if sum(mono[i] for i in chart.odd_indices) % 2 != parity:
                    continue
                if weight_homogeneous:
                    w = sum(e * wt for e, wt in zip(mono, chart.weights))
                    if weight is None:
                        weight = w
                    elif w != weight:
                        continue
                terms.append((mono, rng.choice(coeffs)))
            poly = SuperPolynomial.from_terms(chart, terms)
            if poly or allow_zero:
                return poly
            if not chart.even_indices and parity == 0 and not terms:
                break
        # parity unreachable with this degree bound: fall back to the other one
        if parity == 1 and not chart.odd_indices:
            return self.draw(chart, rng, 0, weight_homogeneous, allow_zero)
        return chart.const(rng.choice(coeffs)) if parity == 0 else chart.var(chart.odd_indices[0])


def _sg(k: int) -> int:
    return -1 if k & 1 else 1


def _par(p: SuperPolynomial) -> int:
    return int(p.parity) if p else 0


class _Ctx:
    """Shorthand operations bound to one structure."""

    def __init__(self, J: OddJacobiStructure):
        self.J = J
        self.base = J.base
        self.one = J.base.one()
        self.Qv = J.Q

    def ob(self, f, g):
        return odd_jacobi_bracket(self.J, f, g)

    def lb(self, f, g):
        return loday_bracket(self.J, f, g)

    def Q(self, f):
        return self.J.Qf(f)

    def X(self, f):
        return hamiltonian_X(self.J, f)

    def Y(self, f):
        return hamiltonian_Y(self.J, f)

    def com(self, A, B):
        return commutator(A, B, self.J.ps)

    def st(self, f, g):
        return derived_product(self.J, f, g)


# --- identity bodies --------------------------------------------------------------
# Each takes (ctx, f, g, h, ...) and returns {label: defect}.

def _jacobi_loday(c, f, g, h):
    F, G = _par(f), _par(g)
    return {"jacobi_loday": c.lb(f, c.lb(g, h)) - c.lb(c.lb(f, g), h) - c.lb(g, c.lb(f, h)).scale(_sg(F * G))}


def _left_leibniz(c, f, g, h):
    F, G = _par(f), _par(g)
    return {"left_leibniz": c.lb(f, g * h) - c.lb(f, g) * h - (g * c.lb(f, h)).scale(_sg(F * G))}


def _symmetrization(c, f, g):
    F, G = _par(f), _par(g)
    rhs = c.Q(c.ob(f, g)).scale(_sg(F + 1))
    return {"symmetrization": c.lb(f, g) + c.lb(g, f).scale(_sg(F * G)) - rhs}


def _symmetrization_quoted(c, f, g):
    F, G = _par(f), _par(g)
    rhs = c.Q(c.ob(f, g)).scale(_sg(F + 1))
    return {"symmetrization_quoted": c.lb(f, g) - c.lb(g, f).scale(_sg(F * G)) - rhs}


def _skew(c, f, g):
    F, G = _par(f), _par(g)
    return {"skew_defect": c.lb(f, g) + c.lb(g, f).scale(_sg(F * G))}


def _centre(c, f, g):
    return {"bracket_of_closed": c.lb(f, g)}


def _odd_axioms(c, f, g, h):
    F, G, H = _par(f), _par(g), _par(h)
    fg = c.ob(f, g)
    out = {}
    pf = grade_info(fg)[0]
    out["grading"] = "" if not fg or (pf is not MIXED and int(pf) == (F + G + 1) % 2) else f"parity {pf}"
    out["skew"] = fg + c.ob(g, f).scale(_sg((F + 1) * (G + 1)))
    s = lambda u, v: _sg((u + 1) * (v + 1))  # noqa: E731
    out["jacobi"] = (c.ob(f, c.ob(g, h)).scale(s(F, H)) + c.ob(g, c.ob(h, f)).scale(s(G, F))
                     + c.ob(h, fg).scale(s(H, G)))
    out["modified_leibniz"] = (c.ob(f, g * h) - fg * h - (g * c.ob(f, h)).scale(_sg((F + 1) * G))
                               + c.ob(f, c.one) * g * h)
    out["bracket_with_unit"] = c.ob(f, c.one) - c.Q(f).scale(_sg(F))
    out["unit_bracket_is_Q"] = c.ob(c.one, g) - c.Q(g)
    return out


def _bihamiltonian(c, f, g):
    Yf = c.Y(f)
    return {
        "Y_f - X_Q(f)": Yf - c.X(c.Q(f)),
        "Y_f + [Q, X_f]": Yf + c.com(c.Qv, c.X(f)),
    }


def _master(c, f, g):
    lbff = c.lb(f, f)
    return {
        "{f,f}": lbff,
        "[[Q(f),f]]": c.ob(c.Q(f), f),
        "{f,Q(f)}": c.lb(f, c.Q(f)),
    }


def _q_y(c, f):
    return {"[Q, Y_f]": c.com(c.Qv, c.Y(f))}


def _y_is_jacobi(c, f):
    rep = is_jacobi_field(c.J, c.Y(f))
    return {"{chi,S}": rep.s_residual, "{chi,Qs}": rep.q_residual}


def _y_morphism(c, f, g):
    return {"[Y_f,Y_g] - Y_{f,g}": c.com(c.Y(f), c.Y(g)) - c.Y(c.lb(f, g))}


def _mixed_comm(c, f, g):
    F = _par(f)
    return {"[Y_f,X_g] - (-1)^f X_{f,g}": c.com(c.Y(f), c.X(g)) - c.X(c.lb(f, g)).scale(_sg(F))}


def _y_odd(c, f, g):
    F, G = _par(f), _par(g)
    lhs = c.Y(c.ob(f, g)).scale(_sg(F + 1))
    return {"defect": lhs - c.X(c.lb(f, g)) - c.X(c.lb(g, f)).scale(_sg(F * G))}


def _nested(c, f, g):
    fg = c.lb(f, g)
    Yfg = c.Y(fg)
    return {
        "[Q,X_{f,g}] + [Y_f,Y_g]": c.com(c.Qv, c.X(fg)) + c.com(c.Y(f), c.Y(g)),
        "[Q,X_{f,g}] + Y_{f,g}": c.com(c.Qv, c.X(fg)) + Yfg,
        "[Q,Y_[[f,g]]]": c.com(c.Qv, c.Y(c.ob(f, g))),
    }


def _y_product(c, f, g):
    F, G = _par(f), _par(g)
    X, Y, Q, Qv = c.X, c.Y, c.Q, c.Qv
    rhs = (Y(g).times(f) + Y(f).times(g).scale(_sg(F * G))
           + (X(g) - Qv.times(g).scale(_sg(G))).times(Q(f)).scale(_sg(F + 1))
           + (X(f) - Qv.times(f).scale(_sg(F))).times(Q(g)).scale(_sg(F * G + G + 1)))
    return {
        "Y_fg expansion": Y(f * g) - rhs,
        "Y_(1 g) - Y_g": Y(c.one * g) - Y(g),
        "Y_(f 1) - Y_f": Y(f * c.one) - Y(f),
    }


def _right_leibniz(c, f, g, h):
    F, G, H = _par(f), _par(g), _par(h)
    Q, ob, lb = c.Q, c.ob, c.lb
    rhs = (f * lb(g, h) + (lb(f, h) * g).scale(_sg(G * H))
           + (Q(f) * (ob(g, h).scale(_sg(G)) - Q(g * h))).scale(_sg(F + 1))
           + (Q(g) * (ob(f, h).scale(_sg(F)) - Q(f * h))).scale(_sg(F * G + G + 1)))
    return {"{fg,h} expansion": lb(f * g, h) - rhs}


def _cartan(c, f, g):
    F = _par(f)
    Xf, Xg, Yf, Yg = c.X(f), c.X(g), c.Y(f), c.Y(g)
    xf_on_g = c.ob(f, g).scale(_sg(F)) - c.Q(f) * g
    return {
        "X_f(g) = (-1)^f [[f,g]] - Q(f)g": apply(Xf, g) - xf_on_g,
        "Y_f = -[Q,X_f]": Yf + c.com(c.Qv, Xf),
        "[Q,Y_f] = 0": c.com(c.Qv, Yf),
        "[X_f,X_g] = -X_[[f,g]]": c.com(Xf, Xg) + c.X(c.ob(f, g)),
        "[Y_f,X_g] = (-1)^f X_{f,g}": c.com(Yf, Xg) - c.X(c.lb(f, g)).scale(_sg(F)),
        "[Y_f,Y_g] = Y_{f,g}": c.com(Yf, Yg) - c.Y(c.lb(f, g)),
    }


def _star_assoc(c, f, g, h):
    return {"(f*g)*h - f*(g*h)": c.st(c.st(f, g), h) - c.st(f, c.st(g, h))}


def _star_comm(c, f, g):
    F = _par(f)
    bracket_q = c.Q(f * g).scale(_sg(F))
    return {
        "[f,g]_* + [[f,g]]_Q": star_commutator(c.J, f, g) + bracket_q,
        "1 * f": c.st(c.one, f),
        "f * 1 - (-1)^(f+1) Q(f)": c.st(f, c.one) - c.Q(f).scale(_sg(F + 1)),
    }


def _gen_leibniz_rhs(c, f, g, h, triple_sign):
    F, G = _par(f), _par(g)
    st, ob = c.st, c.ob
    return (st(ob(f, g), h) + st(g, ob(f, h)).scale(_sg((F + 1) * (G + 1)))
            + st(st(f, g), h).scale(triple_sign) + (c.lb(f, g) * h).scale(_sg(G)))


def _gen_leibniz(c, f, g, h):
    return {"[[f,g*h]] expansion": c.ob(f, c.st(g, h)) - _gen_leibniz_rhs(c, f, g, h, 1)}


def _gen_leibniz_quoted(c, f, g, h):
    F, G = _par(f), _par(g)
    return {"quoted expansion": c.ob(f, c.st(g, h)) - _gen_leibniz_rhs(c, f, g, h, _sg(F + G))}


def _derived_leibniz(c, f, g, h):
    F, G = _par(f), _par(g)
    return {"{f,g*h} expansion": c.lb(f, c.st(g, h)) - c.st(c.lb(f, g), h)
            - c.st(g, c.lb(f, h)).scale(_sg(F * (G + 1)))}


def _star_ham(c, f, g):
    F, G = _par(f), _par(g)
    st, X, Y, Qv = c.st, c.X, c.Y, c.Qv
    f1, g1 = st(f, c.one), st(g, c.one)
    fg = st(f, g)
    x_rhs = (X(g).times(f1).scale(_sg(F + 1)) + X(f1).times(g).scale(_sg(F * G))
             + Qv.times(fg).scale(_sg(F + G)))
    y_rhs = Y(g).times(f1) + Y(f).times(g1).scale(_sg((F + 1) * (G + 1))) - Qv.times(st(fg, c.one))
    return {"X_(f*g) expansion": X(fg) - x_rhs, "Y_(f*g) expansion": Y(fg) - y_rhs}


def _schouten_trivial(c, f, g):
    return {"{f,g}": c.lb(f, g)}


def _x_morphism(c, f, g):
    return {"[X_f,X_g] + X_[[f,g]]": c.com(c.X(f), c.X(g)) + c.X(c.ob(f, g))}


def _x_product(c, f, g):
    F, G = _par(f), _par(g)
    X, Qv = c.X, c.Qv
    rhs = (X(g).times(f).scale(_sg(F)) + X(f).times(g).scale(_sg(G * (F + 1)))
           + Qv.times(f * g).scale(_sg(F + G + 1)))
    return {"X_fg expansion": X(f * g) - rhs}


def _q_cohomology(c, f, g):
    return {"Y_(f+Q(g)) - Y_f": c.Y(f + c.Q(g)) - c.Y(f)} if _par(f) != _par(g) else {}


def _coords(c, f, g):
    return {
        "odd bracket coords": c.ob(f, g) - odd_jacobi_bracket_coords(c.J, f, g),
        "loday bracket coords": c.lb(f, g) - loday_bracket_coords(c.J, f, g),
    }


# --- special samplers -----------------------------------------------------------------

def _closed_function(c: _Ctx, rng, sampler: Sampler) -> SuperPolynomial:
    """A Q-closed homogeneous function, nonzero when one can be found."""
    base = c.base
    kind = rng.randrange(4)
    for _ in range(50):
        if kind == 0:
            cand = c.Q(sampler.draw(base, rng))
        elif kind == 1:
            cand = c.Q(sampler.draw(base, rng)) * c.Q(sampler.draw(base, rng))
        elif kind == 2:
            cand = sampler.draw(base, rng)
            if c.Q(cand):
                cand = base.zero()
        else:
            cand = base.const(rng.randint(1, sampler.max_coeff))
        if cand and grade_info(cand)[0] is not MIXED:
            return cand
        kind = rng.randrange(4)
    return base.one()


def _master_function(c: _Ctx, rng, sampler: Sampler) -> Optional[SuperPolynomial]:
    """An even nonconstant solution of [[f,f]] = 0, or None."""
    base = c.base
    n = len(base)
    for attempt in range(200):
        if attempt % 2 == 0 or n == 0:
            sub = base
            cand = sampler.draw(base, rng, parity=0)
        else:
            keep = [i for i in range(n) if rng.random() < 0.5]
            sub_terms = []
            for _ in range(rng.randint(1, sampler.max_terms)):
                mono = list(sampler.monomial(base, rng))
                for i in range(n):
                    if i not in keep:
                        mono[i] = 0
                sub_terms.append((mono, rng.choice((1, 2, 3, -1, -2))))
            cand = SuperPolynomial.from_terms(base, sub_terms)
            parts = cand.parity_parts()
            cand = parts.get(Parity.EVEN, base.zero())
        if not cand or cand.total_degree() == 0:
            continue
        if not c.ob(cand, cand):
            return cand
    return None


# --- catalog --------------------------------------------------------------------------

@dataclass(frozen=True)
class _Entry:
    statement: str
    arity: int
    body: Callable
    quoted: Optional[Callable] = None
    quoted_statement: str = ""


CATALOG: Dict[IdentityId, _Entry] = {
    IdentityId.JACOBI_LODAY: _Entry("{f,{g,h}} = {{f,g},h} + (-1)^(fg) {g,{f,h}}", 3, _jacobi_loday),
    IdentityId.LEFT_LEIBNIZ: _Entry("{f,gh} = {f,g}h + (-1)^(fg) g{f,h}", 3, _left_leibniz),
    IdentityId.SYMMETRIZATION: _Entry(
        "{f,g} + (-1)^(fg) {g,f} = (-1)^(f+1) Q([[f,g]])", 2, _symmetrization,
        _symmetrization_quoted, "{f,g} - (-1)^(fg) {g,f} = (-1)^(f+1) Q([[f,g]])"),
    IdentityId.SKEWSYMMETRY_PROBE: _Entry("{f,g} = -(-1)^(fg) {g,f}", 2, _skew),
    IdentityId.CENTRE_TRIVIALITY: _Entry("{f,g} = 0 whenever Q(f) = 0", 2, _centre),
    IdentityId.ODD_JACOBI_AXIOMS: _Entry("odd Jacobi algebra axioms with modified Leibniz rule", 3, _odd_axioms),
    IdentityId.BIHAMILTONIAN: _Entry("Y_f = X_Q(f) = -[Q, X_f]", 2, _bihamiltonian),
    IdentityId.MASTER_EQUATION: _Entry(
        "[[f,f]] = 0, f even => {f,f} = [[Q(f),f]] = {f,Q(f)} = 0", 2, _master),
    IdentityId.Q_Y_COMMUTE: _Entry("[Q, Y_f] = 0", 1, _q_y),
    IdentityId.Y_IS_JACOBI: _Entry("{chi(Y_f), S} = {chi(Y_f), Qs} = 0", 1, _y_is_jacobi),
    IdentityId.Y_MORPHISM: _Entry("[Y_f, Y_g] = Y_{f,g}", 2, _y_morphism),
    IdentityId.MIXED_COMM: _Entry("[Y_f, X_g] = (-1)^f X_{f,g}", 2, _mixed_comm),
    IdentityId.Y_OF_ODD_BRACKET: _Entry(
        "(-1)^(f+1) Y_[[f,g]] = X_{f,g} + (-1)^(fg) X_{g,f}", 2, _y_odd),
    IdentityId.NESTED_COROLLARY: _Entry(
        "[Q, X_{f,g}] = -[Y_f, Y_g] = -Y_{f,g}, [Q, Y_[[f,g]]] = 0", 2, _nested),
    IdentityId.Y_PRODUCT: _Entry("four-term expansion of Y_fg; Y_(1g) = Y_g, Y_(f1) = Y_f", 2, _y_product),
    IdentityId.RIGHT_LEIBNIZ_DEFECT: _Entry("expansion of {fg,h} with two Q-defect terms", 3, _right_leibniz),
    IdentityId.CARTAN_TABLE: _Entry("Hamiltonian-field analogues of the Cartan identities", 2, _cartan),
    IdentityId.STAR_ASSOCIATIVE: _Entry("(f*g)*h = f*(g*h)", 3, _star_assoc),
    IdentityId.STAR_COMM_IS_BRACKET: _Entry("[f,g]_* = -[[f,g]]_Q; 1*f = 0; f*1 = (-1)^(f+1) Q(f)", 2, _star_comm),
    IdentityId.GEN_LEIBNIZ: _Entry(
        "[[f,g*h]] = [[f,g]]*h + (-1)^((f+1)(g+1)) g*[[f,h]] + f*g*h + (-1)^g {f,g}h", 3, _gen_leibniz,
        _gen_leibniz_quoted, "same with (-1)^(f+g) f*g*h"),
    IdentityId.DERIVED_LEIBNIZ: _Entry("{f,g*h} = {f,g}*h + (-1)^(f(g+1)) g*{f,h}", 3, _derived_leibniz),
    IdentityId.STAR_HAM: _Entry("expansions of X_(f*g) and Y_(f*g)", 2, _star_ham),
    IdentityId.SCHOUTEN_TRIVIAL: _Entry("{f,g} = 0 when Q = 0", 2, _schouten_trivial),
    IdentityId.X_MORPHISM: _Entry("[X_f, X_g] = -X_[[f,g]]", 2, _x_morphism),
    IdentityId.X_PRODUCT: _Entry(
        "X_fg = (-1)^f f X_g + (-1)^(g(f+1)) g X_f + (-1)^(f+g+1) fg Q", 2, _x_product),
    IdentityId.JACOBI_FIELD_EQUIV: _Entry(
        "Jacobi field <=> derivation of [[,]] <=> [X,X_f] = (-1)^X X_X(f); Q(f) = 0 => X_f Jacobi <=> Y_f = 0", 2, None),
    IdentityId.Q_COHOMOLOGY: _Entry("Y_f = Y_(f + Q(g))", 2, _q_cohomology),
    IdentityId.COORDS_CROSSCHECK: _Entry("coordinate formulas agree with the nested-bracket definitions", 2, _coords),
    IdentityId.ALGEBROID_WEIGHTS: _Entry(
        "w([[X,Y]]) = w(X)+w(Y)+k, w({X,Y}) = w(X)+w(Y)+2k for S, Q of weight k (k = -1 on Jacobi algebroids)",
        2, None),
}

CORE_IDS: Tuple[IdentityId, ...] = tuple(CATALOG)


def _draw_inputs(identity: IdentityId, c: _Ctx, rng, sampler: Sampler):
    base = c.base
    arity = CATALOG[identity].arity
    if identity is IdentityId.CENTRE_TRIVIALITY:
        return (_closed_function(c, rng, sampler), sampler.draw(base, rng))
    if identity is IdentityId.MASTER_EQUATION:
        f = _master_function(c, rng, sampler)
        return None if f is None else (f, base.zero())
    return tuple(sampler.draw(base, rng) for _ in range(arity))


def _is_zero(d: Defect) -> bool:
    if isinstance(d, str):
        return d == ""
    return d.is_zero()


def _jacobi_field_equiv(c: _Ctx, rng, sampler: Sampler, f, g) -> Dict[str, Defect]:
    """Checks that the three characterisations of a Jacobi field agree on one field."""
    base = c.base
    kind = rng.randrange(5)
    if kind == 0:
        X = c.Qv
    elif kind == 1:
        X = c.Y(f)
    elif kind == 2:
        X = c.X(c.Q(g))
    elif kind == 3:
        X = c.X(f)
    else:
        par = rng.randint(0, 1)
        X = VectorField(base, par, [sampler.draw(base, rng, parity=(par + base.parities[i]) % 2)
                                    if rng.random() < 0.7 else base.zero() for i in range(len(base))])
    if not X:
        return {}
    jac = is_jacobi_field(c.J, X).passed
    # the derivation defect is first order in each slot, so constants and
    # coordinates decide it exactly
    probes = [base.one()] + [base.var(i) for i in range(len(base))]
    deriv = all(not derivation_defect(c.J, X, u, v) for u in probes for v in probes)
    sampled = not derivation_defect(c.J, X, f, g)
    xs = int(X.parity)
    # the Hamiltonian fields here are the odd-bracket ones, X_u
    yrel = all(not (c.com(X, c.X(u)) - c.X(apply(X, u)).scale(_sg(xs))) for u in (f, g))
    out: Dict[str, Defect] = {}
    if jac != deriv:
        out["equivalence"] = f"Jacobi field={jac} but derivation={deriv}"
    if jac and not (sampled and yrel):
        out["sampled relations"] = f"derivation on sample={sampled}, field relation={yrel}"
    closed = not c.Q(f)
    xf_jac = is_jacobi_field(c.J, c.X(f)).passed
    if closed and not xf_jac:
        out["Q(f)=0 => X_f Jacobi"] = "X_f is not a Jacobi field"
    if xf_jac != c.Y(f).is_zero():
        out["X_f Jacobi <=> Y_f = 0"] = f"X_f Jacobi={xf_jac}"
    if xf_jac and not closed:
        # only possible when Q(f) Q vanishes, i.e. on degenerate structures
        out["note"] = "converse"
    return out


def _format_defect(d: Defect) -> str:
    if isinstance(d, str):
        return d
    if isinstance(d, VectorField):
        from .exprcli.printer import print_field

        return print_field(d)
    from .exprcli.printer import print_expr

    return print_expr(d)


def verify_identity(J: OddJacobiStructure, identity, trials: int = 100, sampler: Optional[Sampler] = None,
                    seed: int = 0, max_witnesses: int = 3) -> CheckReport:
    """Evaluate one catalog identity on ``trials`` seeded samples."""
    if not isinstance(identity, IdentityId):
        identity = IdentityId.parse(str(identity))
    sampler = sampler or Sampler()
    entry = CATALOG[identity]
    c = _Ctx(J)
    report = CheckReport(identity, 0, PASS, seed=seed)

    if identity is IdentityId.SCHOUTEN_TRIVIAL and J.Q:
        report.status = NOT_APPLICABLE
        report.notes.append("structure has Q != 0")
        return report
    if identity is IdentityId.ALGEBROID_WEIGHTS:
        return _verify_weights(J, report, trials, sampler, seed, max_witnesses)

    witnesses: List[Witness] = []
    quoted_failures = 0
    quoted_first: Optional[Witness] = None
    unsampled = 0
    converse_hits = 0
    for t in range(trials):
        rng = random.Random(f"{seed}/{identity.value}/{t}")
        inputs = _draw_inputs(identity, c, rng, sampler)
        if inputs is None:
            unsampled += 1
            continue
        if identity is IdentityId.JACOBI_FIELD_EQUIV:
            defects = _jacobi_field_equiv(c, rng, sampler, *inputs)
        else:
            defects = entry.body(c, *inputs)
        report.trials += 1
        if defects.pop("note", None):
            converse_hits += 1
        bad = {k: v for k, v in defects.items() if not _is_zero(v)}
        if bad:
            report.failures += 1
            witnesses.append(Witness(t, inputs, bad))
        if entry.quoted is not None:
            qbad = {k: v for k, v in entry.quoted(c, *inputs).items() if not _is_zero(v)}
            if qbad:
                quoted_failures += 1
                if quoted_first is None:
                    quoted_first = Witness(t, inputs, qbad)

    witnesses.sort(key=lambda w: (w.size(), w.trial))
    report.witnesses = witnesses[:max_witnesses]

    if identity is IdentityId.SKEWSYMMETRY_PROBE:
        if report.failures:
            # skewness is only asserted for Q-manifolds
            report.status = FAIL if not J.S else EXPECTED_FAIL
        else:
            report.status = PASS
    else:
        report.status = FAIL if report.failures else PASS
    if unsampled:
        report.notes.append(f"{unsampled} trial(s) found no admissible input")
        if not report.trials:
            report.status = NOT_APPLICABLE
    if entry.quoted is not None and quoted_failures:
        ins = ", ".join(_format_defect_input(p) for p in quoted_first.inputs)
        report.notes.append(
            f"FLAG quoted form '{entry.quoted_statement}' fails on {quoted_failures}/{report.trials} "
            f"trials (first at trial {quoted_first.trial}, inputs {ins}); corrected form checked"
        )
    if converse_hits:
        report.notes.append(
            f"FLAG 'X_f Jacobi => Q(f) = 0' fails on {converse_hits}/{report.trials} trials: "
            "X_f is Jacobi exactly when X_Q(f) = 0, which does not force Q(f) = 0 here"
        )
    if identity is IdentityId.COORDS_CROSSCHECK:
        report.notes.extend(display_notes(J))
    return report


def _format_defect_input(p: SuperPolynomial) -> str:
    from .exprcli.printer import print_expr

    return print_expr(p)


def structure_weight(J: OddJacobiStructure) -> Optional[int]:
    """Common weight k of S and the symbol of Q, or None when there is none."""
    if not any(J.base.weights):
        return None
    ws = set()
    for p in (J.S, J.Qsym):
        if p:
            w = grade_info(p)[1]
            if w is MIXED:
                return None
            ws.add(w)
    return ws.pop() if len(ws) == 1 else None


def _verify_weights(J, report, trials, sampler, seed, max_witnesses):
    k = structure_weight(J)
    if k is None:
        report.status = NOT_APPLICABLE
        if any(J.base.weights):
            report.notes.append("S and Q are not homogeneous of one common weight")
        else:
            report.notes.append("chart carries no weights")
        return report
    report.notes.append(f"structure weight {k}")
    chart = J.base
    witnesses = []
    for t in range(trials):
        rng = random.Random(f"{seed}/{report.identity.value}/{t}")
        X = sampler.draw(chart, rng, weight_homogeneous=True)
        Y = sampler.draw(chart, rng, weight_homogeneous=True)
        wx, wy = grade_info(X)[1], grade_info(Y)[1]
        defects = {}
        for label, value, want in (("odd bracket weight", odd_jacobi_bracket(J, X, Y), wx + wy + k),
                                   ("loday bracket weight", loday_bracket(J, X, Y), wx + wy + 2 * k)):
            if value and grade_info(value)[1] != want:
                defects[label] = f"weight {grade_info(value)[1]}, expected {want}"
        report.trials += 1
        if defects:
            report.failures += 1
            witnesses.append(Witness(t, (X, Y), defects))
    witnesses.sort(key=lambda w: (w.size(), w.trial))
    report.witnesses = witnesses[:max_witnesses]
    report.status = FAIL if report.failures else PASS
    return report


def display_notes(J: OddJacobiStructure, samples: int = 40, seed: int = 0) -> List[str]:
    """Compare the quoted odd contact coordinate formulas with the normative brackets.

    Returns human-readable FLAG lines; empty when J is not an odd contact structure.
    """
    if match_odd_contact(J) is None:
        return []
    from .exprcli.printer import print_expr

    sampler = Sampler()
    c = _Ctx(J)
    notes = []
    one = J.base.one()
    tau = J.base.var("tau")
    for label, quoted, normative in (
        ("odd Jacobi bracket", odd_contact_bracket_display, c.ob),
        ("Loday-Poisson bracket", odd_contact_loday_display, c.lb),
    ):
        bad = 0
        for t in range(samples):
            rng = random.Random(f"{seed}/display/{label}/{t}")
            f, g = sampler.draw(J.base, rng), sampler.draw(J.base, rng)
            if quoted(J, f, g) != normative(f, g):
                bad += 1
        if bad:
            notes.append(f"FLAG quoted odd contact {label} display disagrees with the definition "
                         f"on {bad}/{samples} samples")
    g = J.base.var("tau") * J.base.var(0)
    notes.append(f"FLAG [[1,g]]: definition gives Q(g) = {print_expr(c.ob(one, g))} for g = {print_expr(g)}, "
                 f"quoted display gives {print_expr(odd_contact_bracket_display(J, one, g))}")
    notes.append(f"FLAG {{tau,tau}}: definition gives {print_expr(c.lb(tau, tau))}, "
                 f"quoted display gives {print_expr(odd_contact_loday_display(J, tau, tau))}")
    return notes
