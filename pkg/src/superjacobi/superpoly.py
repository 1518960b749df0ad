"""Exact polynomials in graded (even/odd, weighted) coordinates.

A monomial is stored as a tuple of exponents, one slot per chart coordinate.
Odd slots only ever hold 0 or 1, so ``theta**2 = 0`` cannot be represented.
The odd factors of a monomial are understood to be written in chart order;
every product re-establishes that order and picks up the Koszul sign of the
sort. With that convention two polynomials are equal exactly when their term
dictionaries are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from .errors import ChartError, ParityError

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


class Parity(IntEnum):
    EVEN = 0
    ODD = 1

    def __add__(self, other):
        return Parity((int(self) + int(other)) % 2)

    __radd__ = __add__

    @classmethod
    def of(cls, value) -> "Parity":
        if isinstance(value, str):
            key = value.strip().lower()
            if key == "even":
                return cls.EVEN
            if key == "odd":
                return cls.ODD
            raise ValueError(f"unknown parity {value!r}")
        return cls(int(value) % 2)

    def sign(self) -> int:
        """(-1)**parity"""
        return -1 if self else 1


class _Mixed:
    """Marker returned by :func:`grade_info` for inhomogeneous polynomials."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "MIXED"


MIXED = _Mixed()


@dataclass(frozen=True)
class Coordinate:
    name: str
    parity: Parity
    weight: int
    index: int


class Chart:
    """Ordered coordinate declaration.

    The declaration order is the monomial order: odd factors inside a stored
    monomial are always read left to right in this order.
    """

    def __init__(self, specs: Iterable[Tuple[str, object, int]] = ()):
        coords = []
        names = {}
        for i, spec in enumerate(specs):
            if isinstance(spec, Coordinate):
                name, parity, weight = spec.name, spec.parity, spec.weight
            else:
                name, parity, weight = (tuple(spec) + (0,))[:3]
            if name in names:
                raise ChartError(f"duplicate coordinate name {name!r}")
            names[name] = i
            coords.append(Coordinate(name, Parity.of(parity), int(weight), i))
        self.coordinates: Tuple[Coordinate, ...] = tuple(coords)
        self._names = names
        self._key = tuple((c.name, int(c.parity), c.weight) for c in coords)
        self._hash = hash(self._key)
        self.odd_indices: Tuple[int, ...] = tuple(c.index for c in coords if c.parity)
        self.even_indices: Tuple[int, ...] = tuple(c.index for c in coords if not c.parity)
        self.parities: Tuple[int, ...] = tuple(int(c.parity) for c in coords)
        self.weights: Tuple[int, ...] = tuple(c.weight for c in coords)
        self._mask_memo: Dict[Monomial, int] = {}

    def __len__(self):
        return len(self.coordinates)

    def __iter__(self):
        return iter(self.coordinates)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Chart) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{c.name}:{'odd' if c.parity else 'even'}/{c.weight}" for c in self.coordinates)
        return f"Chart({body})"

    def index(self, coord: Union[str, int, Coordinate]) -> int:
        if isinstance(coord, Coordinate):
            if coord.index < len(self) and self.coordinates[coord.index] == coord:
                return coord.index
            raise ChartError(f"coordinate {coord.name!r} is not in {self!r}")
        if isinstance(coord, int):
            if 0 <= coord < len(self):
                return coord
            raise ChartError(f"coordinate index {coord} out of range")
        try:
            return self._names[coord]
        except KeyError:
            raise ChartError(f"unknown coordinate {coord!r}") from None

    def __contains__(self, name):
        return name in self._names

    def __getitem__(self, key) -> Coordinate:
        return self.coordinates[self.index(key)]

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(c.name for c in self.coordinates)

    def odd_mask(self, mono: Monomial) -> int:
        mask = self._mask_memo.get(mono)
        if mask is None:
            mask = 0
            for i in self.odd_indices:
                if mono[i]:
                    mask |= 1 << i
            self._mask_memo[mono] = mask
        return mask

    def unit_monomial(self) -> Monomial:
        return (0,) * len(self.coordinates)

    # convenience constructors
    def var(self, coord) -> "SuperPolynomial":
        i = self.index(coord)
        mono = [0] * len(self)
        mono[i] = 1
        return SuperPolynomial(self, {tuple(mono): Fraction(1)})

    def const(self, value: Scalar) -> "SuperPolynomial":
        return SuperPolynomial.constant(self, value)

    def zero(self) -> "SuperPolynomial":
        return SuperPolynomial(self, {})

    def one(self) -> "SuperPolynomial":
        return SuperPolynomial.constant(self, 1)

    def extends(self, other: "Chart") -> bool:
        """True when ``other`` is a prefix of this chart."""
        return len(other) <= len(self) and self._key[: len(other)] == other._key


def _swap_parity(mask_a: int, mask_b: int) -> int:
    """Parity of the number of transpositions needed to sort a*b into chart order."""
    n = 0
    while mask_b:
        low = mask_b & -mask_b
        j = low.bit_length() - 1
        n += (mask_a >> (j + 1)).bit_count()
        mask_b ^= low
    return n & 1


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class SuperPolynomial:
    """Normal-form polynomial with exact rational coefficients over a chart.

    Instances are treated as immutable values.
    """

    __slots__ = ("chart", "terms", "_hash")

    def __init__(self, chart: Chart, terms: Mapping[Monomial, Fraction]):
        self.chart = chart
        self.terms: Dict[Monomial, Fraction] = dict(terms)
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def constant(cls, chart: Chart, value: Scalar) -> "SuperPolynomial":
        value = _as_fraction(value)
        if not value:
            return cls(chart, {})
        return cls(chart, {chart.unit_monomial(): value})

    @classmethod
    def from_terms(cls, chart: Chart, terms: Iterable[Tuple[Sequence[int], Scalar]]) -> "SuperPolynomial":
        """Build from (exponent vector, coefficient) pairs already in chart order."""
        out: Dict[Monomial, Fraction] = {}
        for mono, c in terms:
            mono = tuple(int(e) for e in mono)
            if len(mono) != len(chart):
                raise ChartError("exponent vector length does not match chart")
            if any(e < 0 for e in mono) or any(mono[i] > 1 for i in chart.odd_indices):
                # odd square
                continue
            _accumulate(out, mono, _as_fraction(c))
        return cls(chart, out)

    # basic protocol ---------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, SuperPolynomial):
            return self.chart == other.chart and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {self.chart.unit_monomial(): Fraction(other)}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.chart, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        from .exprcli.printer import print_expr

        return f"SuperPolynomial({print_expr(self)!r})"

    def __str__(self):
        from .exprcli.printer import print_expr

        return print_expr(self)

    def _coerce(self, other) -> "SuperPolynomial":
        if isinstance(other, SuperPolynomial):
            if other.chart != self.chart:
                raise ChartError(f"chart mismatch: {self.chart!r} vs {other.chart!r}")
            return other
        return SuperPolynomial.constant(self.chart, other)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, c)
        return SuperPolynomial(self.chart, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperPolynomial(self.chart, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, -c)
        return SuperPolynomial(self.chart, out)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c: Scalar) -> "SuperPolynomial":
        c = _as_fraction(c)
        if not c:
            return SuperPolynomial(self.chart, {})
        return SuperPolynomial(self.chart, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SuperPolynomial):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.chart.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # grading ----------------------------------------------------------
    def monomial_parity(self, mono: Monomial) -> int:
        return self.chart.odd_mask(mono).bit_count() & 1

    def monomial_weight(self, mono: Monomial) -> int:
        return sum(e * w for e, w in zip(mono, self.chart.weights))

    @property
    def parity(self) -> Parity:
        """Parity of a homogeneous polynomial; raises ParityError on mixed input."""
        p = grade_info(self)[0]
        if p is MIXED:
            raise ParityError("polynomial is not parity-homogeneous")
        return p

    def parity_parts(self) -> Dict[Parity, "SuperPolynomial"]:
        """Split into parity-homogeneous pieces (only nonzero pieces returned)."""
        parts: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            parts.setdefault(self.monomial_parity(m), {})[m] = c
        return {Parity(p): SuperPolynomial(self.chart, t) for p, t in parts.items()}

    def weight_parts(self) -> Dict[int, "SuperPolynomial"]:
        parts: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            parts.setdefault(self.monomial_weight(m), {})[m] = c
        return {w: SuperPolynomial(self.chart, t) for w, t in parts.items()}

    def degree_in(self, indices: Iterable[int]) -> int:
        """Maximal total degree in the given coordinates (-1 for the zero polynomial)."""
        idx = tuple(indices)
        if not self.terms:
            return -1
        return max(sum(m[i] for i in idx) for m in self.terms)

    def degrees_in(self, indices: Iterable[int]) -> set:
        idx = tuple(indices)
        return {sum(m[i] for i in idx) for m in self.terms}

    def total_degree(self) -> int:
        return self.degree_in(range(len(self.chart)))

    def free_of(self, indices: Iterable[int]) -> bool:
        idx = tuple(indices)
        return all(not m[i] for m in self.terms for i in idx)

    def constant_term(self) -> Fraction:
        return self.terms.get(self.chart.unit_monomial(), Fraction(0))

    # calculus ---------------------------------------------------------
    def diff(self, coord) -> "SuperPolynomial":
        return left_partial(self, coord)

    # chart changes ----------------------------------------------------
    def extend(self, chart: Chart) -> "SuperPolynomial":
        """Pull back to a chart that has this polynomial's chart as a prefix."""
        if chart == self.chart:
            return self
        if not chart.extends(self.chart):
            raise ChartError("target chart does not extend the source chart")
        pad = (0,) * (len(chart) - len(self.chart))
        return SuperPolynomial(chart, {m + pad: c for m, c in self.terms.items()})

    def restrict(self, chart: Chart) -> "SuperPolynomial":
        """Inverse of :meth:`extend`; the dropped coordinates must not occur."""
        if chart == self.chart:
            return self
        if not self.chart.extends(chart):
            raise ChartError("source chart does not extend the target chart")
        n = len(chart)
        out = {}
        for m, c in self.terms.items():
            if any(m[n:]):
                raise ChartError("polynomial depends on coordinates outside the target chart")
            out[m[:n]] = c
        return SuperPolynomial(chart, out)


def _accumulate(out: Dict[Monomial, Fraction], mono: Monomial, c: Fraction) -> None:
    v = out.get(mono)
    if v is None:
        if c:
            out[mono] = c
        return
    v = v + c
    if v:
        out[mono] = v
    else:
        del out[mono]


def _check_same_chart(polys: Sequence[SuperPolynomial]) -> Chart:
    chart = polys[0].chart
    for p in polys[1:]:
        if p.chart != chart:
            raise ChartError(f"chart mismatch: {chart!r} vs {p.chart!r}")
    return chart


def linear_combine(coeffs: Sequence[Scalar], polys: Sequence[SuperPolynomial]) -> SuperPolynomial:
    if len(coeffs) != len(polys):
        raise ValueError("coeffs and polys must have equal length")
    if not polys:
        raise ValueError("need at least one polynomial to fix the chart")
    chart = _check_same_chart(polys)
    out: Dict[Monomial, Fraction] = {}
    for c, p in zip(coeffs, polys):
        c = _as_fraction(c)
        if not c:
            continue
        for m, v in p.terms.items():
            _accumulate(out, m, c * v)
    return SuperPolynomial(chart, out)


def mul(f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    chart = _check_same_chart((f, g))
    out: Dict[Monomial, Fraction] = {}
    odd_mask = chart.odd_mask
    g_items = [(m, c, odd_mask(m)) for m, c in g.terms.items()]
    for ma, ca in f.terms.items():
        mask_a = odd_mask(ma)
        for mb, cb, mask_b in g_items:
            if mask_a & mask_b:
                continue
            m = tuple([x + y for x, y in zip(ma, mb)])
            v = ca * cb
            if mask_a and mask_b and _swap_parity(mask_a, mask_b):
                v = -v
            _accumulate(out, m, v)
    return SuperPolynomial(chart, out)


def left_partial(f: SuperPolynomial, coord) -> SuperPolynomial:
    """Left derivative: the coordinate is moved to the front before it is removed."""
    chart = f.chart
    i = chart.index(coord)
    odd = chart.parities[i]
    below = (1 << i) - 1
    out: Dict[Monomial, Fraction] = {}
    for m, c in f.terms.items():
        e = m[i]
        if not e:
            continue
        new = m[:i] + (e - 1,) + m[i + 1:]
        if odd:
            if (chart.odd_mask(m) & below).bit_count() & 1:
                c = -c
        else:
            c = c * e
        _accumulate(out, new, c)
    return SuperPolynomial(chart, out)


def grade_info(f: SuperPolynomial):
    """(parity, weight) shared by all terms, with MIXED where they disagree.

    The zero polynomial is graded (EVEN, 0).
    """
    if not f.terms:
        return Parity.EVEN, 0
    parities = {f.monomial_parity(m) for m in f.terms}
    weights = {f.monomial_weight(m) for m in f.terms}
    parity = Parity(parities.pop()) if len(parities) == 1 else MIXED
    weight = weights.pop() if len(weights) == 1 else MIXED
    return parity, weight
