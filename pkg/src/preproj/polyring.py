"""Exact sparse multivariate polynomials over the rationals in t1..t9.

A polynomial is a mapping from exponent vectors (length-9 tuples of
non-negative ints, one slot per indeterminate t1..t9) to nonzero Fraction
coefficients.  All arithmetic is exact; there is no floating point anywhere.
Degree-0 polynomials embed rationals losslessly.

Only ring arithmetic, substitution, evaluation and zero-testing are
provided.  No factorization, no GCDs, no Groebner machinery.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

NVARS = 9
VAR_NAMES = tuple(f"t{i}" for i in range(1, NVARS + 1))

Exponent = tuple  # length-9 tuple of non-negative ints
Scalar = Union[int, Fraction]

_ZERO_EXP = (0,) * NVARS


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


def monomial_key(exp: Exponent) -> tuple:
    """Sort key for the fixed degree-lexicographic monomial order."""
    return (sum(exp), exp)


class Poly:
    """Immutable sparse polynomial in t1..t9 with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None):
        clean = {}
        if terms:
            for exp, coeff in terms.items():
                c = _as_fraction(coeff)
                if c:
                    if len(exp) != NVARS:
                        raise ValueError(f"exponent vector must have length {NVARS}")
                    clean[tuple(exp)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def const(value: Scalar) -> "Poly":
        c = _as_fraction(value)
        return Poly({_ZERO_EXP: c}) if c else Poly()

    @staticmethod
    def var(index: int) -> "Poly":
        """The indeterminate t<index>, 1-based."""
        if not 1 <= index <= NVARS:
            raise ValueError(f"indeterminate index must be in 1..{NVARS}")
        exp = [0] * NVARS
        exp[index - 1] = 1
        return Poly({tuple(exp): Fraction(1)})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(e == _ZERO_EXP for e in self.terms)

    def as_rational(self) -> Fraction:
        """The embedded rational value; raises if the degree is positive."""
        if not self.terms:
            return Fraction(0)
        if self.is_rational():
            return self.terms[_ZERO_EXP]
        raise ValueError(f"polynomial {self} is not a rational constant")

    def is_integral(self) -> bool:
        """Whether every coefficient is an integer."""
        return all(c.denominator == 1 for c in self.terms.values())

    def degree(self) -> int:
        """Total degree; zero polynomial has degree 0 by convention here."""
        return max((sum(e) for e in self.terms), default=0)

    def variables(self) -> set[int]:
        """1-based indices of indeterminates actually occurring."""
        occ = set()
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    occ.add(i + 1)
        return occ

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: monomial_key(kv[0]))

    # -- ring arithmetic ----------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            acc = out.get(exp, Fraction(0)) + coeff
            if acc:
                out[exp] = acc
            else:
                out.pop(exp, None)
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                acc = out.get(exp, Fraction(0)) + ca * cb
                if acc:
                    out[exp] = acc
                else:
                    out.pop(exp, None)
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- substitution and evaluation ----------------------------------------

    def substitute(self, bindings: Mapping[int, "Poly"]) -> "Poly":
        """Simultaneously replace indeterminates by polynomials.

        ``bindings`` maps 1-based indices to replacement polynomials;
        unbound indeterminates stay as themselves.
        """
        cache = {i: Poly.var(i) for i in range(1, NVARS + 1)}
        cache.update({i: p for i, p in bindings.items()})
        result = Poly.zero()
        for exp, coeff in self.terms.items():
            term = Poly.const(coeff)
            for i, e in enumerate(exp):
                if e:
                    term = term * cache[i + 1] ** e
            result = result + term
        return result

    def evaluate(self, assignment: Mapping[int, Scalar]) -> Fraction:
        """Exact value at a rational point.

        ``assignment`` maps 1-based indices to rationals and must cover
        every indeterminate occurring in the polynomial.
        """
        total = Fraction(0)
        for exp, coeff in self.terms.items():
            term = coeff
            for i, e in enumerate(exp):
                if e:
                    if i + 1 not in assignment:
                        raise KeyError(f"no value bound for indeterminate t{i + 1}")
                    term *= _as_fraction(assignment[i + 1]) ** e
            total += term
        return total

    def evaluate_mod(self, assignment: Mapping[int, int], p: int) -> int:
        """Value in the prime field GF(p); coefficients must be p-invertible."""
        total = 0
        for exp, coeff in self.terms.items():
            if coeff.denominator % p == 0:
                raise ZeroDivisionError(
                    f"coefficient {coeff} has denominator divisible by {p}"
                )
            term = coeff.numerator * pow(coeff.denominator, -1, p) % p
            for i, e in enumerate(exp):
                if e:
                    if i + 1 not in assignment:
                        raise KeyError(f"no value bound for indeterminate t{i + 1}")
                    term = term * pow(assignment[i + 1] % p, e, p) % p
            total = (total + term) % p
        return total

    # -- printing ------------------------------------------------------------

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, coeff in self.sorted_terms():
            factors = []
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(VAR_NAMES[i])
                elif e > 1:
                    factors.append(f"{VAR_NAMES[i]}^{e}")
            mag = abs(coeff)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if not parts:
                parts.append(f"- {body}" if coeff < 0 else body)
            else:
                parts.append(f"- {body}" if coeff < 0 else f"+ {body}")
        return " ".join(parts)


def _coerce(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.const(value)
    return NotImplemented


def tvars() -> tuple[Poly, ...]:
    """The nine indeterminates (t1, ..., t9) as polynomials."""
    return tuple(Poly.var(i) for i in range(1, NVARS + 1))
