"""Constructors for the standard example structures.

Schouten manifolds (Q = 0), Q-manifolds (S = 0), the odd contact structure
on ``Pi T*R^n x R^{0|1}``, Lie algebroids as weight-one homological fields on
``Pi E`` and Jacobi algebroids as weight minus one odd Jacobi structures on
``Pi E*``. The module also carries literal transcriptions of a few
coordinate formulas for these examples (``*_display`` functions) so that
the normative brackets can be compared against them term by term.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .errors import DataError, StructureError
from .lodaypoisson import derived_product, loday_bracket
from .oddjacobi import OddJacobiStructure, odd_jacobi_bracket
from .phasespace import PhaseSpace, VectorField, field_from_symbol, lift
from .superpoly import MIXED, Chart, Parity, SuperPolynomial, grade_info, left_partial


def _sg(k: int) -> int:
    return -1 if k & 1 else 1


# --- Schouten and Q-manifolds ---------------------------------------------

def make_schouten(ps: PhaseSpace, S: SuperPolynomial, name: str = "schouten") -> OddJacobiStructure:
    """(S, 0); valid exactly when {S, S} = 0, which check_structure reports."""
    return OddJacobiStructure(ps, ps.embed(S), VectorField.zero(ps.base, Parity.ODD), name=name)


def make_q_manifold(chart: Chart, Q: VectorField, name: str = "q-manifold") -> OddJacobiStructure:
    """(0, Q); valid exactly when Q is homological."""
    if Q.chart != chart:
        raise StructureError("Q is not a vector field on the given chart")
    ps = lift(chart)
    return OddJacobiStructure(ps, ps.lifted.zero(), Q, name=name)


def de_rham_chart(n: int) -> Chart:
    """``R^{n|n}`` with even x1..xn followed by odd th1..thn."""
    return Chart([(f"x{i}", 0, 0) for i in range(1, n + 1)] + [(f"th{i}", 1, 0) for i in range(1, n + 1)])


def make_de_rham(n: int) -> OddJacobiStructure:
    """Q-manifold ``(R^{n|n}, th^i d/dx^i)``: the de Rham differential on ``Pi T R^n``."""
    chart = de_rham_chart(n)
    Q = VectorField(chart, Parity.ODD, {f"x{i}": chart.var(f"th{i}") for i in range(1, n + 1)})
    return make_q_manifold(chart, Q, name=f"de-rham-{n}")


# --- odd contact -------------------------------------------------------------

def odd_contact_chart(n: int) -> Chart:
    if n == 1:
        specs = [("x", 0, 0), ("xs", 1, 0)]
    else:
        specs = [(f"x_{a}", 0, 0) for a in range(1, n + 1)] + [(f"xs_{a}", 1, 0) for a in range(1, n + 1)]
    return Chart(specs + [("tau", 1, 0)])


def make_odd_contact(n: int) -> OddJacobiStructure:
    """S = p_xs^a (p_x_a + xs_a p_tau), Q = -d/dtau on coordinates (x^a, xs_a, tau)."""
    if n < 1:
        raise ValueError("n must be positive")
    base = odd_contact_chart(n)
    ps = lift(base)
    L = ps.lifted
    pi = ps.momentum("tau")
    S = L.zero()
    for a in range(n):
        x, xs = base.coordinates[a].name, base.coordinates[n + a].name
        S = S + ps.momentum(xs) * (ps.momentum(x) + L.var(xs) * pi)
    Q = VectorField(base, Parity.ODD, {"tau": base.const(-1)})
    return OddJacobiStructure(ps, S, Q, name=f"odd-contact-{n}")


def match_odd_contact(J: OddJacobiStructure) -> Optional[int]:
    """n when J is literally ``make_odd_contact(n)``, else None."""
    n, rem = divmod(len(J.base) - 1, 2)
    if rem or n < 1:
        return None
    ref = make_odd_contact(n)
    if J.base != ref.base or J.S != ref.S or J.Q != ref.Q:
        return None
    return n


def _contact_indices(n: int):
    return list(range(n)), list(range(n, 2 * n)), 2 * n


def odd_contact_bracket_display(J: OddJacobiStructure, f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """Commonly quoted coordinate form of the odd contact odd Jacobi bracket (homogeneous f).

    Its Q-terms correspond to Q = +d/dtau; compare with the normative bracket.
    """
    n = match_odd_contact(J)
    xs_, xss, tau = _contact_indices(n)
    F = int(f.parity)
    d = left_partial
    out = J.base.zero()
    for a in range(n):
        x, xs = xs_[a], xss[a]
        xsv = J.base.var(xs)
        out = out + (d(f, xs) * d(g, x)).scale(_sg(F + 1)) - d(f, x) * d(g, xs)
        out = out + xsv * d(f, xs) * d(g, tau) - (d(f, tau) * xsv * d(g, xs)).scale(_sg(F + 1))
    out = out + f * d(g, tau) - (d(f, tau) * g).scale(_sg(F + 1))
    return out


def odd_contact_loday_display(J: OddJacobiStructure, f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """Commonly quoted coordinate form of the odd contact Loday-Poisson bracket (homogeneous f)."""
    n = match_odd_contact(J)
    xs_, xss, tau = _contact_indices(n)
    F = int(f.parity)
    d = left_partial
    out = J.base.zero()
    for a in range(n):
        x, xs = xs_[a], xss[a]
        xsv = J.base.var(xs)
        out = out + d(d(f, tau), xs) * d(g, x) - (d(d(f, tau), x) * d(g, xs)).scale(_sg(F))
        out = out + (xsv * d(d(f, tau), xs) * d(g, tau)).scale(_sg(F))
    out = out + (d(f, tau) * d(g, tau)).scale(_sg(F))
    return out


# --- Lie algebroids ------------------------------------------------------------

@dataclass
class LieAlgebroidData:
    """Anchor and structure functions of a Lie algebroid ``E -> M``.

    ``structure`` maps ``(beta, alpha, gamma)`` to ``Q^gamma_{beta alpha}``
    (0-based fiber indices, values base polynomials or rationals). Only one of
    each pair ``(beta, alpha)`` / ``(alpha, beta)`` needs to be given; the
    other is generated from
    ``Q^g_{ba} = (-1)^((a+1)(b+1)) Q^g_{ab}``, the graded symmetry of
    ``xi^a xi^b``, which for even fiber labels is plain antisymmetry.
    ``anchor`` maps ``(alpha, A)`` to ``Q^A_alpha``.
    """

    base: Chart
    fiber_parities: Sequence[int]
    anchor: Mapping[Tuple[int, int], object] = field(default_factory=dict)
    structure: Mapping[Tuple[int, int, int], object] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.fiber_parities)

    def _poly(self, value) -> SuperPolynomial:
        if isinstance(value, SuperPolynomial):
            if value.chart != self.base:
                raise DataError("structure function is not over the base chart")
            return value
        return self.base.const(value)

    def anchor_matrix(self) -> Dict[Tuple[int, int], SuperPolynomial]:
        out = {}
        for (alpha, A), v in self.anchor.items():
            if not 0 <= alpha < self.rank:
                raise DataError(f"fiber index {alpha} out of range")
            self.base.index(A)
            p = self._poly(v)
            if p:
                out[(alpha, self.base.index(A))] = p
        return out

    def structure_tensor(self) -> Dict[Tuple[int, int, int], SuperPolynomial]:
        """Full ``{(beta, alpha, gamma): Q^gamma_{beta alpha}}`` after symmetry completion."""
        par = [int(p) % 2 for p in self.fiber_parities]
        full: Dict[Tuple[int, int, int], SuperPolynomial] = {}
        for (b, a, g), v in self.structure.items():
            for i in (b, a, g):
                if not 0 <= i < self.rank:
                    raise DataError(f"fiber index {i} out of range")
            p = self._poly(v)
            sym = p.scale(_sg((par[a] + 1) * (par[b] + 1)))
            if b == a and sym != p:
                raise DataError(f"Q^{g}_({b}{a}) must vanish by symmetry")
            for key, val in (((b, a, g), p), ((a, b, g), sym)):
                if key in full and full[key] != val:
                    raise DataError(f"structure functions violate the graded symmetry at {key}")
                full[key] = val
        return {k: v for k, v in full.items() if v}


class LieAlgebroidQ(NamedTuple):
    chart: Chart
    Q: VectorField


def _fiber_chart(d: LieAlgebroidData, prefix: str, weight: int) -> Chart:
    specs = [(c.name, c.parity, 0) for c in d.base]
    if any(c.weight for c in d.base):
        raise DataError("base coordinates must carry weight zero")
    specs += [(f"{prefix}{a + 1}", (int(p) + 1) % 2, weight) for a, p in enumerate(d.fiber_parities)]
    return Chart(specs)


def make_lie_algebroid(d: LieAlgebroidData, prefix: str = "xi") -> LieAlgebroidQ:
    """Q = xi^a Q^A_a d/dx^A + 1/2 xi^a xi^b Q^g_{ba} d/dxi^g on Pi E (w(x)=0, w(xi)=1)."""
    chart = _fiber_chart(d, prefix, 1)
    n = len(d.base)
    anchor = {k: v.extend(chart) for k, v in d.anchor_matrix().items()}
    struct = {k: v.extend(chart) for k, v in d.structure_tensor().items()}
    xi = [chart.var(n + a) for a in range(d.rank)]
    comps = [chart.zero() for _ in range(len(chart))]
    for (a, A), q in anchor.items():
        comps[A] = comps[A] + xi[a] * q
    half = Fraction(1, 2)
    for (b, a, g), q in struct.items():
        comps[n + g] = comps[n + g] + (xi[a] * xi[b] * q).scale(half)
    Q = VectorField(chart, Parity.ODD, comps)
    for coord, c in zip(chart.coordinates, Q.components):
        if c and grade_info(c)[1] != coord.weight + 1:
            raise DataError("assembled Q is not of weight one")
    return LieAlgebroidQ(chart, Q)


def lie_algebroid_structure(d: LieAlgebroidData, name: str = "lie-algebroid") -> OddJacobiStructure:
    """The Lie algebroid viewed as the Q-manifold (Pi E, Q)."""
    chart, Q = make_lie_algebroid(d)
    return make_q_manifold(chart, Q, name=name)


def su2_data() -> LieAlgebroidData:
    """su(2) over a point: Q^c_{ba} = eps_{bac}; stored on the slots b < a."""
    base = Chart([])
    return LieAlgebroidData(base, (0, 0, 0), structure={(0, 1, 2): 1, (1, 2, 0): 1, (0, 2, 1): -1})


def jacobi_identity_defect(d: LieAlgebroidData) -> Dict[Tuple[int, int, int, int], SuperPolynomial]:
    """Cyclic Jacobi sums of a Lie algebra over a point (even labels only), keyed (a, b, c, e)."""
    C = d.structure_tensor()
    r = d.rank
    zero = d.base.zero()

    def br(i, j, k):
        return C.get((i, j, k), zero)

    out = {}
    for a in range(r):
        for b in range(r):
            for c in range(r):
                for e in range(r):
                    s = zero
                    for m in range(r):
                        s = s + br(b, c, m) * br(a, m, e) + br(c, a, m) * br(b, m, e) + br(a, b, m) * br(c, m, e)
                    if s:
                        out[(a, b, c, e)] = s
    return out


# --- Jacobi algebroids -----------------------------------------------------------

@dataclass
class CocycleData:
    """Components ``Q_alpha(x)`` of the 1-cocycle, keyed by fiber index."""

    components: Mapping[int, object] = field(default_factory=dict)


def make_jacobi_algebroid(d: LieAlgebroidData, c: CocycleData, name: str = "jacobi-algebroid") -> OddJacobiStructure:
    """Weight minus one odd Jacobi structure on Pi E*.

    Coordinates (x^A, eta_a) with w(eta) = +1, momenta (p_A, pi^a) with
    w(p) = 0, w(pi) = -1.
    S = (-1)^a pi^a Q^A_a p_A + (-1)^(a+b) 1/2 pi^a pi^b Q^g_{ba} eta_g,
    Qs = pi^a Q_a(x), and Q is recovered from Qs through the symbol map.
    """
    base = _fiber_chart(d, "eta", 1)
    ps = lift(base)
    L = ps.lifted
    n = len(d.base)
    par = [int(p) % 2 for p in d.fiber_parities]
    pi = [ps.momentum(n + a) for a in range(d.rank)]
    eta = [L.var(n + a) for a in range(d.rank)]
    S = L.zero()
    for (a, A), q in d.anchor_matrix().items():
        S = S + (pi[a] * q.extend(L) * ps.momentum(A)).scale(_sg(par[a]))
    for (b, a, g), q in d.structure_tensor().items():
        S = S + (pi[a] * pi[b] * q.extend(L) * eta[g]).scale(Fraction(_sg(par[a] + par[b]), 2))
    Qs = L.zero()
    for a, v in c.components.items():
        if not 0 <= a < d.rank:
            raise DataError(f"cocycle index {a} out of range")
        q = d._poly(v)
        Qs = Qs + pi[a] * q.extend(L)
    Q = field_from_symbol(Qs, ps, parity=Parity.ODD)
    return OddJacobiStructure(ps, S, Q, name=name)


def solvable_2d_data() -> LieAlgebroidData:
    """The non-abelian 2-dimensional Lie algebra [e1, e2] = e2 over a point."""
    return LieAlgebroidData(Chart([]), (0, 0), structure={(0, 1, 1): 1})


def jacobi_algebroid_odd_bracket_display(d: LieAlgebroidData, c: CocycleData, J: OddJacobiStructure,
                                         X: SuperPolynomial, Y: SuperPolynomial) -> SuperPolynomial:
    """Coordinate formula for the weight minus one odd Jacobi bracket on Pi E* (homogeneous X)."""
    base = J.base
    n = len(d.base)
    par = [int(p) % 2 for p in d.fiber_parities]
    Xp = int(X.parity)
    D = left_partial
    out = base.zero()
    for (a, A), q in d.anchor_matrix().items():
        q = q.extend(base)
        Ap = d.base.parities[A]
        out = out + (q * D(X, n + a) * D(Y, A)).scale(_sg((Xp + par[a] + 1) * (Ap + 1)))
        out = out - (q * D(X, A) * D(Y, n + a)).scale(_sg((Xp + 1) * par[a]))
    for (a, b, g), q in d.structure_tensor().items():
        q = q.extend(base)
        out = out - (q * base.var(n + g) * D(X, n + b) * D(Y, n + a)).scale(_sg((Xp + 1) * par[a] + par[b]))
    for a, v in c.components.items():
        qa = d._poly(v).extend(base)
        out = out + (qa * D(X, n + a) * Y).scale(_sg(Xp)) + X * qa * D(Y, n + a)
    return out


def jacobi_algebroid_loday_display(d: LieAlgebroidData, c: CocycleData, J: OddJacobiStructure,
                                   X: SuperPolynomial, Y: SuperPolynomial, quoted: bool = False) -> SuperPolynomial:
    """Coordinate formula for the weight minus two Loday-Poisson bracket on Pi E* (homogeneous X).

    The final term is ``(-1)^((a+1)(X+1)) Q_a Q_b dX/deta_b dY/deta_a``. With
    ``quoted=True`` the commonly quoted sign ``(-1)^(a(X+1))`` is used instead,
    which disagrees with the bracket whenever X is even.
    """
    base = J.base
    n = len(d.base)
    par = [int(p) % 2 for p in d.fiber_parities]
    Xp = int(X.parity)
    D = left_partial
    coc = {a: d._poly(v).extend(base) for a, v in c.components.items()}
    out = base.zero()
    for (a, A), q in d.anchor_matrix().items():
        q = q.extend(base)
        Ap = d.base.parities[A]
        for dl, qd in coc.items():
            out = out + (q * qd * D(D(X, n + a), n + dl) * D(Y, A)).scale(_sg(Ap * (Xp + par[a])))
            out = out + (q * D(qd, A) * D(X, n + dl) * D(Y, n + a)).scale(_sg(Xp * (par[a] + 1)))
            out = out + (q * qd * D(D(X, A), n + dl) * D(Y, n + a)).scale(_sg(Xp * (par[a] + 1) + Ap))
    for (a, b, g), q in d.structure_tensor().items():
        q = q.extend(base)
        for dl, qd in coc.items():
            out = out - (q * base.var(n + g) * qd * D(D(X, n + b), n + dl) * D(Y, n + a)).scale(_sg(Xp * (par[a] + 1)))
    for a, qa in coc.items():
        for b, qb in coc.items():
            sign = _sg(par[a] * (Xp + 1)) if quoted else _sg((par[a] + 1) * (Xp + 1))
            out = out + (qa * qb * D(X, n + b) * D(Y, n + a)).scale(sign)
    return out


# --- weight bookkeeping --------------------------------------------------------

def sample_weight_homogeneous(chart: Chart, rng: random.Random, max_degree: int = 3, max_coeff: int = 5,
                              max_terms: int = 3) -> SuperPolynomial:
    """Random nonzero polynomial homogeneous in both parity and weight."""
    from .identities import Sampler

    sampler = Sampler(max_degree=max_degree, max_coeff=max_coeff, max_terms=max_terms)
    return sampler.draw(chart, rng, weight_homogeneous=True)


@dataclass
class WeightCheck:
    trials: int = 0
    odd_failures: List[tuple] = field(default_factory=list)
    loday_failures: List[tuple] = field(default_factory=list)
    display_mismatches: Dict[str, int] = field(default_factory=dict)
    star_base_nonzero: int = 0

    @property
    def passed(self) -> bool:
        return not self.odd_failures and not self.loday_failures and not self.star_base_nonzero


def _weight(p: SuperPolynomial):
    return grade_info(p)[1]


def algebroid_bracket_weights(J: OddJacobiStructure, samples: int = 50, seed: int = 0,
                              data: Optional[LieAlgebroidData] = None,
                              cocycle: Optional[CocycleData] = None) -> WeightCheck:
    """Weight drops of the two brackets on weight-homogeneous samples.

    Asserts w([[X,Y]]) = w(X)+w(Y)-1 and w({X,Y}) = w(X)+w(Y)-2 whenever the
    result is nonzero, and f * X = 0 for base functions f. When the algebroid
    data is supplied the coordinate formulas are compared too; mismatches are
    counted per formula, not treated as failures.
    """
    from .identities import Sampler

    sampler = Sampler()
    out = WeightCheck()
    base_chart = J.base
    n_base = len(data.base) if data is not None else sum(1 for c in base_chart if c.weight == 0)
    base_only = Chart([(c.name, c.parity, c.weight) for c in list(base_chart)[:n_base]])
    for t in range(samples):
        rng = random.Random(f"{seed}/weights/{t}")
        X = sampler.draw(base_chart, rng, weight_homogeneous=True)
        Y = sampler.draw(base_chart, rng, weight_homogeneous=True)
        wx, wy = _weight(X), _weight(Y)
        ob = odd_jacobi_bracket(J, X, Y)
        if ob:
            w = _weight(ob)
            if w is MIXED or w != wx + wy - 1:
                out.odd_failures.append((X, Y, ob))
        lb = loday_bracket(J, X, Y)
        if lb:
            w = _weight(lb)
            if w is MIXED or w != wx + wy - 2:
                out.loday_failures.append((X, Y, lb))
        if len(base_only):
            f = sampler.draw(base_only, rng).extend(base_chart)
        else:
            f = base_chart.const(rng.randint(1, 5))
        if derived_product(J, f, X):
            out.star_base_nonzero += 1
        if data is not None and cocycle is not None:
            if jacobi_algebroid_odd_bracket_display(data, cocycle, J, X, Y) != ob:
                out.display_mismatches["odd_bracket"] = out.display_mismatches.get("odd_bracket", 0) + 1
            if jacobi_algebroid_loday_display(data, cocycle, J, X, Y) != lb:
                out.display_mismatches["loday_bracket"] = out.display_mismatches.get("loday_bracket", 0) + 1
            if jacobi_algebroid_loday_display(data, cocycle, J, X, Y, quoted=True) != lb:
                out.display_mismatches["loday_bracket_quoted"] = (
                    out.display_mismatches.get("loday_bracket_quoted", 0) + 1)
        out.trials += 1
    return out
