"""Odd Jacobi structures (S, Q), their bracket and Hamiltonian vector fields."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import ChartError, DegreeError, InternalError, ParityError, StructureError
from .phasespace import (
    PhaseSpace,
    VectorField,
    apply,
    canonical_poisson,
    field_from_symbol,
    symbol,
)
from .superpoly import Parity, SuperPolynomial, left_partial


@dataclass(frozen=True, eq=False)
class OddJacobiStructure:
    """The pair (S, Q) on a phase space, with the symbol of Q cached.

    ``S`` is an odd function on the lifted chart, quadratic in the momenta;
    ``Q`` is an odd vector field on the base. Only these type-level
    requirements are enforced here; the three structure conditions are
    reported by :func:`check_structure`.
    """

    ps: PhaseSpace
    S: SuperPolynomial
    Q: VectorField
    name: str = ""
    Qsym: SuperPolynomial = field(init=False, repr=False)

    def __post_init__(self):
        ps = self.ps
        S = self.S
        if S.chart != ps.lifted:
            if S.chart == ps.base:
                S = ps.embed(S)
                object.__setattr__(self, "S", S)
            else:
                raise StructureError("S must live on the lifted chart")
        if S:
            if S.parity_parts().keys() != {Parity.ODD}:
                raise StructureError("S must be odd")
            try:
                deg = ps.fiber_degree(S)
            except DegreeError as exc:
                raise StructureError(str(exc)) from None
            if deg != 2:
                raise StructureError(f"S must be quadratic in the momenta, found degree {deg}")
        if self.Q.chart != ps.base:
            raise StructureError("Q must be a vector field on the base chart")
        if self.Q and self.Q.parity != Parity.ODD:
            raise StructureError("Q must be odd")
        for i, comp in enumerate(self.Q.components):
            for par in comp.parity_parts():
                if par != Parity.of(1 + ps.base.parities[i]):
                    raise StructureError(f"component of Q along {ps.base.coordinates[i].name} has wrong parity")
        object.__setattr__(self, "Qsym", symbol(self.Q, ps))

    @property
    def base(self):
        return self.ps.base

    def poisson(self, F, G) -> SuperPolynomial:
        return canonical_poisson(F, G, self.ps)

    def Qf(self, f: SuperPolynomial) -> SuperPolynomial:
        return apply(self.Q, f)

    def one(self) -> SuperPolynomial:
        return self.base.one()


@dataclass(frozen=True)
class Residual:
    name: str
    residual: SuperPolynomial

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()


@dataclass(frozen=True)
class StructureReport:
    homological: Residual
    invariance: Residual
    compatibility: Residual

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self)

    def __iter__(self):
        return iter((self.homological, self.invariance, self.compatibility))


def check_structure(J: OddJacobiStructure) -> StructureReport:
    """Exact defects {Qs,Qs}, {Qs,S} and {S,S} + 2 Qs S, where Qs is the symbol of Q."""
    P = J.poisson
    Qs, S = J.Qsym, J.S
    return StructureReport(
        homological=Residual("homological", P(Qs, Qs)),
        invariance=Residual("invariance", P(Qs, S)),
        compatibility=Residual("compatibility", P(S, S) + (Qs * S).scale(2)),
    )


def _check_base(J: OddJacobiStructure, *polys: SuperPolynomial) -> None:
    for p in polys:
        if p.chart != J.base:
            raise ChartError("function is not over the structure's base chart")


def _bilinear(op, J, f, g):
    """Extend a bracket defined on homogeneous f to arbitrary f by linearity."""
    _check_base(J, f, g)
    if not f or not g:
        return J.base.zero()
    parts = f.parity_parts()
    if len(parts) == 1:
        (par, fp), = parts.items()
        return op(J, fp, int(par), g)
    out = J.base.zero()
    for par, fp in parts.items():
        out = out + op(J, fp, int(par), g)
    return out


def _ojb(J, f, fpar, g):
    ps = J.ps
    F, G = ps.embed(f), ps.embed(g)
    nested = J.poisson(J.poisson(J.S, F), G)
    q_term = J.poisson(J.Qsym, F * G)
    res = nested - q_term
    if not fpar:
        res = -res
    return ps.restrict(res)


def odd_jacobi_bracket(J: OddJacobiStructure, f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """[[f,g]] = (-1)^(f+1) {{S,f},g} - (-1)^(f+1) {Qs, fg}."""
    return _bilinear(_ojb, J, f, g)


def s_matrix(J: OddJacobiStructure):
    """S^{BA} = d/dp_B d/dp_A S, as a dict {(B, A): base polynomial} of nonzero entries."""
    ps = J.ps
    n = len(ps.base)
    out = {}
    for a in range(n):
        dA = left_partial(J.S, n + a)
        if not dA:
            continue
        for b in range(n):
            dBA = left_partial(dA, n + b)
            if dBA:
                out[(b, a)] = ps.restrict(dBA)
    return out


def _ojb_coords(J, f, fpar, g, smat=None):
    base = J.base
    smat = s_matrix(J) if smat is None else smat
    out = base.zero()
    df = {}
    dg = {}
    for (b, a), sba in smat.items():
        if a not in df:
            df[a] = left_partial(f, a)
        if b not in dg:
            dg[b] = left_partial(g, b)
        if not df[a] or not dg[b]:
            continue
        sign = -1 if ((base.parities[b] + 1) * fpar + 1) & 1 else 1
        out = out + (sba * df[a] * dg[b]).scale(sign)
    Qf = J.Qf(f)
    out = out + (Qf * g if not fpar else -(Qf * g)) + f * J.Qf(g)
    return out


def odd_jacobi_bracket_coords(J: OddJacobiStructure, f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """Coordinate form (-1)^((B+1)f+1) S^{BA} d_A f d_B g + (-1)^f Q(f) g + f Q(g).

    Independent evaluation used to cross-check :func:`odd_jacobi_bracket`.
    """
    smat = s_matrix(J)
    return _bilinear(lambda J_, f_, p_, g_: _ojb_coords(J_, f_, p_, g_, smat), J, f, g)


def hamiltonian_X(J: OddJacobiStructure, f: SuperPolynomial) -> VectorField:
    """X_f with X_f(g) = (-1)^f [[f,g]] - Q(f) g; parity f+1.

    Components come from evaluating the defining expression on the
    coordinates. The result is compared against the closed form
    ``-field({S,f}) + (-1)^f f Q``; disagreement means the bracket is not
    realised by a derivation and raises InternalError.
    """
    _check_base(J, f)
    base = J.base
    if not f:
        return VectorField.zero(base, Parity.ODD)
    fpar = int(f.parity)
    Qf = J.Qf(f)
    comps = []
    for i in range(len(base)):
        xi = base.var(i)
        br = odd_jacobi_bracket(J, f, xi)
        comps.append((-br if fpar else br) - Qf * xi)
    X = VectorField(base, Parity.of(fpar + 1), comps, check=False)
    closed = -field_from_symbol(J.poisson(J.S, J.ps.embed(f)), J.ps, parity=Parity.of(fpar + 1))
    fQ = J.Q.times(f)
    closed = closed + (fQ if not fpar else -fQ)
    if closed != X:
        raise InternalError("Hamiltonian vector field does not act as a derivation")
    return X


@dataclass(frozen=True)
class JacobiFieldReport:
    s_residual: SuperPolynomial
    q_residual: SuperPolynomial

    @property
    def passed(self) -> bool:
        return self.s_residual.is_zero() and self.q_residual.is_zero()


def is_jacobi_field(J: OddJacobiStructure, X: VectorField) -> JacobiFieldReport:
    """Residuals {chi, S} and {chi, Qs} with chi the symbol of X."""
    chi = symbol(X, J.ps)
    return JacobiFieldReport(J.poisson(chi, J.S), J.poisson(chi, J.Qsym))


def derivation_defect(J: OddJacobiStructure, X: VectorField, f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """X([[f,g]]) - [[X f, g]] - (-1)^(X (f+1)) [[f, X g]] for homogeneous f."""
    ob = lambda a, b: odd_jacobi_bracket(J, a, b)  # noqa: E731
    sign = -1 if (int(X.parity) * (int(f.parity) + 1)) & 1 else 1
    return apply(X, ob(f, g)) - ob(apply(X, f), g) - ob(f, apply(X, g)).scale(sign)
