"""Sparse multivariate polynomials over the rationals.

Just enough algebra to replay the nonexistence derivations symbolically:
ring operations, substitution, and a sign test on shifted coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

Number = Union[int, Fraction]
Monomial = tuple  # sorted tuple of (variable, exponent) pairs


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    powers = dict(m1)
    for var, exp in m2:
        powers[var] = powers.get(var, 0) + exp
    return tuple(sorted(powers.items()))


class Poly:
    """A polynomial stored as ``{monomial: coefficient}`` with no zero terms."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            if coeff:
                self.terms[mono] = Fraction(coeff)

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, value: Number) -> "Poly":
        return cls({(): value})

    @staticmethod
    def lift(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = Poly.lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            out[mono] = out.get(mono, 0) + coeff
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = Poly.lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return Poly.lift(other) - self

    def __mul__(self, other):
        other = Poly.lift(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                out[mono] = out.get(mono, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (int, Fraction)) or other == 0:
            return NotImplemented
        return Poly({m: c / other for m, c in self.terms.items()})

    def __pow__(self, exp: int):
        if not isinstance(exp, int) or exp < 0:
            return NotImplemented
        out = Poly.const(1)
        for _ in range(exp):
            out = out * self
        return out

    def __eq__(self, other):
        other = Poly.lift(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def variables(self) -> set[str]:
        return {var for mono in self.terms for var, _ in mono}

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def subs(self, values: Mapping[str, "Poly | Number"]) -> "Poly":
        out = Poly()
        for mono, coeff in self.terms.items():
            term = Poly.const(coeff)
            for var, exp in mono:
                base = Poly.lift(values[var]) if var in values else Poly.var(var)
                term = term * base**exp
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        result = self.subs(values)
        if result.variables:
            raise ValueError(f"unbound variables: {sorted(result.variables)}")
        return result.constant()

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        # higher total degree first, then lexicographic on variables
        order = sorted(
            self.terms.items(),
            key=lambda item: (-sum(e for _, e in item[0]), item[0]),
        )
        pieces = []
        for mono, coeff in order:
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            factors = [v if e == 1 else f"{v}^{e}" for v, e in mono]
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


def shifted_nonnegative(poly: Poly, lower: Mapping[str, int], strict: bool) -> tuple[bool, Poly]:
    """Sufficient test that ``poly`` is >= 0 (or > 0) on the box ``var >= lower[var]``.

    Every variable of ``poly`` must appear in ``lower``.  After the change of
    variables ``var -> var + lower[var]`` all variables range over the
    nonnegative reals, so nonnegative coefficients prove nonnegativity and a
    positive constant term then proves strict positivity.
    """
    missing = poly.variables - set(lower)
    if missing:
        raise ValueError(f"no lower bound for {sorted(missing)}")
    shifted = poly.subs({v: Poly.var(v) + lo for v, lo in lower.items()})
    ok = all(c >= 0 for c in shifted.terms.values())
    if strict:
        ok = ok and shifted.constant() > 0
    return ok, shifted
