"""Canonical text rendering of polynomials, readable back by the parser."""

from fractions import Fraction

from ..superpoly import SuperPolynomial


def _monomial_key(mono):
    # graded lex: higher total degree first, then larger leading exponents first
    return (-sum(mono), tuple(-e for e in mono))


def _format_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _format_monomial(chart, mono):
    factors = []
    for coord, e in zip(chart.coordinates, mono):
        if e == 1:
            factors.append(coord.name)
        elif e > 1:
            factors.append(f"{coord.name}^{e}")
    return factors


def print_expr(f: SuperPolynomial) -> str:
    """Render ``f`` as ``c * a * b^2 + ...`` with odd factors in chart order.

    Every non-constant term carries its coefficient explicitly, so ``-theta1*theta2``
    comes out as ``-1 * theta1 * theta2``. The zero polynomial prints as ``0``.
    """
    if not f.terms:
        return "0"
    pieces = []
    for mono in sorted(f.terms, key=_monomial_key):
        c = f.terms[mono]
        factors = _format_monomial(f.chart, mono)
        if pieces:
            sep = " - " if c < 0 else " + "
            body = " * ".join([_format_coeff(abs(c))] + factors)
            pieces.append(sep + body)
        else:
            pieces.append(" * ".join([_format_coeff(c)] + factors))
    return "".join(pieces)


def print_field(X) -> str:
    """Render a vector field as ``(X^A) d/dx^A + ...``, skipping zero components."""
    parts = [f"({print_expr(c)}) d/d{coord.name}"
             for coord, c in zip(X.chart.coordinates, X.components) if c]
    return " + ".join(parts) if parts else "0"
