"""Cotangent lift, canonical Poisson bracket, principal symbols and vector fields.

Momentum ``p_A`` has the parity of ``x^A`` and weight ``-w(x^A)``, so the
canonical bracket and the symbol map are weight preserving. The symbol of a
vector field is fixed by the requirement ``{symbol(X), f} = X(f)`` on base
functions; with the bracket below and left derivatives this works out to
``symbol(X) = X^A p_A`` (component on the left). The commutator of vector
fields is *defined* by transporting the canonical bracket of symbols back,
which agrees with ``X o Y - (-1)^(|X||Y|) Y o X``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Sequence, Tuple, Union

from .errors import ChartError, DegreeError, ParityError
from .superpoly import (
    Chart,
    Parity,
    SuperPolynomial,
    left_partial,
    linear_combine,
)


@dataclass(frozen=True, eq=False)
class PhaseSpace:
    base: Chart
    lifted: Chart

    @property
    def dim(self) -> int:
        return len(self.base)

    def momentum_index(self, coord) -> int:
        return len(self.base) + self.base.index(coord)

    def momentum(self, coord) -> SuperPolynomial:
        return self.lifted.var(self.momentum_index(coord))

    @property
    def momentum_indices(self) -> Tuple[int, ...]:
        n = len(self.base)
        return tuple(range(n, 2 * n))

    def embed(self, f: SuperPolynomial) -> SuperPolynomial:
        """Pull a base function back to the cotangent bundle."""
        if f.chart == self.lifted:
            return f
        if f.chart != self.base:
            raise ChartError("function is not over the base chart")
        return f.extend(self.lifted)

    def restrict(self, F: SuperPolynomial) -> SuperPolynomial:
        """Momentum-free fiber function back to the base chart."""
        if F.chart == self.base:
            return F
        return F.restrict(self.base)

    def fiber_degree(self, F: SuperPolynomial) -> int:
        """Total momentum degree; -1 for zero, raises DegreeError if not fiber-homogeneous."""
        degs = F.degrees_in(self.momentum_indices)
        if not degs:
            return -1
        if len(degs) > 1:
            raise DegreeError(f"fiber function mixes momentum degrees {sorted(degs)}")
        return degs.pop()

    def __eq__(self, other):
        return isinstance(other, PhaseSpace) and self.lifted == other.lifted and self.base == other.base

    def __hash__(self):
        return hash(self.lifted)


def lift(base: Chart, prefix: str = "p_") -> PhaseSpace:
    """Cotangent lift: momenta ``<prefix><name>`` appended after the base coordinates."""
    specs = [(c.name, c.parity, c.weight) for c in base]
    for c in base:
        name = prefix + c.name
        if name in base:
            raise ChartError(f"momentum name {name!r} collides with a base coordinate")
        specs.append((name, c.parity, -c.weight))
    return PhaseSpace(base, Chart(specs))


def lift_named(base: Chart, momentum_names: Sequence[str]) -> PhaseSpace:
    """Cotangent lift with explicitly chosen momentum names."""
    if len(momentum_names) != len(base):
        raise ChartError("need exactly one momentum name per base coordinate")
    specs = [(c.name, c.parity, c.weight) for c in base]
    specs += [(name, c.parity, -c.weight) for name, c in zip(momentum_names, base)]
    return PhaseSpace(base, Chart(specs))


def _bracket_homogeneous(ps: PhaseSpace, F: SuperPolynomial, fpar: int, G: SuperPolynomial) -> SuperPolynomial:
    n = len(ps.base)
    chart = ps.lifted
    pieces = []
    coeffs = []
    for a in range(n):
        apar = chart.parities[a]
        dFp = left_partial(F, n + a)
        if dFp:
            dGx = left_partial(G, a)
            if dGx:
                coeffs.append(-1 if (apar * fpar + apar) & 1 else 1)
                pieces.append(dFp * dGx)
        dFx = left_partial(F, a)
        if dFx:
            dGp = left_partial(G, n + a)
            if dGp:
                coeffs.append(1 if (apar * fpar) & 1 else -1)
                pieces.append(dFx * dGp)
    if not pieces:
        return chart.zero()
    return linear_combine(coeffs, pieces)


def canonical_poisson(F: SuperPolynomial, G: SuperPolynomial, ps: PhaseSpace) -> SuperPolynomial:
    """Canonical even Poisson bracket on the cotangent bundle, {p_A, x^A} = 1.

    ``{F,G} = (-1)^(AF+A) dF/dp_A dG/dx^A - (-1)^(AF) dF/dx^A dG/dp_A`` with
    left derivatives; inhomogeneous F is split by parity.
    """
    F = ps.embed(F)
    G = ps.embed(G)
    if not F or not G:
        return ps.lifted.zero()
    parts = F.parity_parts()
    out = ps.lifted.zero()
    for par, Fp in parts.items():
        out = out + _bracket_homogeneous(ps, Fp, int(par), G)
    return out


class VectorField:
    """Derivation ``X = X^A d/dx^A`` on a base chart; components are base polynomials.

    ``parity`` is the declared parity of the field. Homogeneity (component
    parity equal to field parity plus coordinate parity) is checked on
    construction unless ``check=False``.
    """

    __slots__ = ("chart", "parity", "components")

    def __init__(self, chart: Chart, parity, components: Union[Mapping, Sequence], check: bool = True):
        self.chart = chart
        self.parity = Parity.of(parity)
        comps = [chart.zero()] * len(chart)
        items = components.items() if isinstance(components, Mapping) else enumerate(components)
        for key, value in items:
            i = chart.index(key)
            if not isinstance(value, SuperPolynomial):
                value = chart.const(value)
            if value.chart != chart:
                raise ChartError("vector field component lives on a different chart")
            comps[i] = value
        self.components: Tuple[SuperPolynomial, ...] = tuple(comps)
        if check:
            for i, comp in enumerate(self.components):
                want = Parity.of(self.parity + chart.parities[i])
                for par in comp.parity_parts():
                    if par != want:
                        raise ParityError(
                            f"component for {chart.coordinates[i].name} has parity {par.name}, "
                            f"expected {want.name}"
                        )

    @classmethod
    def zero(cls, chart: Chart, parity=Parity.EVEN) -> "VectorField":
        return cls(chart, parity, {}, check=False)

    @classmethod
    def partial(cls, chart: Chart, coord) -> "VectorField":
        i = chart.index(coord)
        return cls(chart, chart.parities[i], {i: chart.one()})

    def is_zero(self) -> bool:
        return not any(self.components)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        if self.chart != other.chart:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.parity == other.parity and self.components == other.components

    def __hash__(self):
        return hash((self.chart, self.components))

    def __repr__(self):
        body = " + ".join(
            f"({c}) d/d{self.chart.coordinates[i].name}" for i, c in enumerate(self.components) if c
        )
        return f"VectorField[{self.parity.name}]({body or '0'})"

    def _check_compatible(self, other: "VectorField") -> Parity:
        if other.chart != self.chart:
            raise ChartError("vector fields on different charts")
        if self.is_zero():
            return other.parity
        if other.is_zero() or other.parity == self.parity:
            return self.parity
        raise ParityError("cannot add vector fields of different parity")

    def __add__(self, other: "VectorField") -> "VectorField":
        par = self._check_compatible(other)
        comps = [a + b for a, b in zip(self.components, other.components)]
        return VectorField(self.chart, par, comps, check=False)

    def __sub__(self, other: "VectorField") -> "VectorField":
        par = self._check_compatible(other)
        comps = [a - b for a, b in zip(self.components, other.components)]
        return VectorField(self.chart, par, comps, check=False)

    def __neg__(self):
        return VectorField(self.chart, self.parity, [-c for c in self.components], check=False)

    def scale(self, c) -> "VectorField":
        return VectorField(self.chart, self.parity, [x.scale(c) for x in self.components], check=False)

    def times(self, f: SuperPolynomial) -> "VectorField":
        """Left multiplication by a homogeneous function: (f X)(g) = f X(g)."""
        if f.chart != self.chart:
            raise ChartError("function and vector field on different charts")
        if not f:
            return VectorField.zero(self.chart, self.parity)
        par = Parity.of(self.parity + f.parity)
        return VectorField(self.chart, par, [f * c for c in self.components], check=False)

    def __rmul__(self, other):
        if isinstance(other, SuperPolynomial):
            return self.times(other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __call__(self, f: SuperPolynomial) -> SuperPolynomial:
        return apply(self, f)


def apply(X: VectorField, f: SuperPolynomial) -> SuperPolynomial:
    """X(f) = sum_A X^A df/dx^A with left derivatives."""
    if f.chart != X.chart:
        raise ChartError("function and vector field on different charts")
    coeffs = []
    pieces = []
    for i, comp in enumerate(X.components):
        if not comp:
            continue
        d = left_partial(f, i)
        if d:
            coeffs.append(1)
            pieces.append(comp * d)
    if not pieces:
        return f.chart.zero()
    return linear_combine(coeffs, pieces)


def symbol(X: VectorField, ps: PhaseSpace) -> SuperPolynomial:
    """Fiber-linear function with {symbol(X), f} = X(f) for every base function f."""
    if X.chart != ps.base:
        raise ChartError("vector field is not over the phase-space base")
    coeffs = []
    pieces = []
    for i, comp in enumerate(X.components):
        if comp:
            coeffs.append(1)
            pieces.append(ps.embed(comp) * ps.lifted.var(len(ps.base) + i))
    if not pieces:
        return ps.lifted.zero()
    return linear_combine(coeffs, pieces)


def field_from_symbol(F: SuperPolynomial, ps: PhaseSpace, parity=None) -> VectorField:
    """Inverse of :func:`symbol`: the component along x^A is {F, x^A}."""
    F = ps.embed(F)
    if not F:
        return VectorField.zero(ps.base, parity if parity is not None else Parity.EVEN)
    if ps.fiber_degree(F) != 1:
        raise DegreeError("field_from_symbol needs a fiber-linear function")
    if parity is None:
        parity = F.parity
    comps = [ps.restrict(canonical_poisson(F, ps.lifted.var(a), ps)) for a in range(len(ps.base))]
    return VectorField(ps.base, parity, comps, check=False)


def commutator(X: VectorField, Y: VectorField, ps: PhaseSpace) -> VectorField:
    """[X, Y] transported from the canonical bracket of symbols."""
    par = Parity.of(X.parity + Y.parity)
    bracket = canonical_poisson(symbol(X, ps), symbol(Y, ps), ps)
    return field_from_symbol(bracket, ps, parity=par)


def compose_commutator(X: VectorField, Y: VectorField) -> VectorField:
    """[X, Y] from X o Y - (-1)^(|X||Y|) Y o X evaluated on coordinates.

    Independent of the symbol route; used to cross-check :func:`commutator`.
    """
    chart = X.chart
    sign = -1 if (X.parity * Y.parity) & 1 else 1
    comps = []
    for i in range(len(chart)):
        xi = chart.var(i)
        comps.append(apply(X, apply(Y, xi)) - apply(Y, apply(X, xi)).scale(sign))
    return VectorField(chart, Parity.of(X.parity + Y.parity), comps, check=False)
