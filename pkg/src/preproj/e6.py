"""Preprojective algebra of type E6, its deformations, and the verifications.

This module defines the two built-in algebras

    pe6:  the preprojective algebra of the double quiver of E6,
    re6:  the 12-dimensional local algebra K<x,y>/(x^2, y^3, (x+y)^3),

the family of deformation parameters theta_1..theta_9, the derived
constants, the explicit change of generators with its inverse, and the
machine verifications:

  * verify_lemma     -- the admissibility criterion for f in rad^2(re6),
  * verify_theorem   -- the seven deformed relations vanish after the
                        change of generators, over the constrained
                        7-variable polynomial ring,
  * verify_identities-- the full catalog of displayed derivation steps,
  * verify_inverse   -- the inverse change of generators (two modes),
  * verify_corner_iso-- re6 is the corner of pe6 at the exceptional vertex,
  * sample_check     -- an independent numeric pipeline over Q or GF(p).

Vertex labels follow the quiver: the exceptional vertex carrying the
deformed relation b0*a0 + b2*a2 + a3*b3 (+ f) is vertex 3, and the corner
isomorphic to re6 lives there, via x -> b0*a0, y -> b2*a2.  (The corner
at the leaf vertex 0 is 4-dimensional; see README for the labeling note.)
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .freealg import FreeElement, GeneratorMap, generators
from .polyring import Poly
from .quiver import Quiver, builtin_quiver
from .quotient import QuotientAlgebra, QuotientElement, build_quotient

EXCEPTIONAL_VERTEX = 3

# names of the rad^2 basis words carrying theta_1..theta_9, in order
THETA_MONOMIALS = (
    "xy", "yx", "yy", "xyx", "xyy", "yxy", "xyxy", "yxyy", "xyxyy",
)


# -- the two built-in algebras ------------------------------------------------


def pe6_relations(quiver: Quiver) -> list[FreeElement]:
    g = generators(quiver)
    a0, b0, a1, b1 = g["a0"], g["b0"], g["a1"], g["b1"]
    a2, b2, a3, b3 = g["a2"], g["b2"], g["a3"], g["b3"]
    a4, b4 = g["a4"], g["b4"]
    return [
        a0 * b0,
        a1 * b1,
        b1 * a1 + a2 * b2,
        b0 * a0 + b2 * a2 + a3 * b3,
        b3 * a3 + a4 * b4,
        b4 * a4,
    ]


@lru_cache(maxsize=None)
def build_pe6() -> QuotientAlgebra:
    """The preprojective algebra of type E6 (dimension computed exactly)."""
    quiver = builtin_quiver("E6")
    return build_quotient(quiver, pe6_relations(quiver), name="pe6")


@lru_cache(maxsize=None)
def build_re6() -> QuotientAlgebra:
    """The local algebra K<x,y>/(x^2, y^3, (x+y)^3); 12-dimensional."""
    quiver = builtin_quiver("L2")
    g = generators(quiver)
    x, y = g["x"], g["y"]
    return build_quotient(quiver, [x * x, y * y * y, (x + y) ** 3], name="re6")


def get_algebra(name: str) -> QuotientAlgebra:
    if name == "pe6":
        return build_pe6()
    if name == "re6":
        return build_re6()
    raise KeyError(f"unknown algebra {name!r} (expected pe6 or re6)")


def corner_embedding() -> GeneratorMap:
    """x -> b0*a0, y -> b2*a2: the two-loop quiver into loops at vertex 3."""
    e6 = builtin_quiver("E6")
    g = generators(e6)
    return GeneratorMap(
        builtin_quiver("L2"),
        e6,
        {"x": g["b0"] * g["a0"], "y": g["b2"] * g["a2"]},
        vertex_map={0: EXCEPTIONAL_VERTEX},
    )


# -- deformation parameters ---------------------------------------------------


def _coerce_scalar(value):
    if isinstance(value, (Poly, Fraction)):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"theta values must be Poly or rational, got {type(value).__name__}")


def constraint_theta2(th1, th3):
    """First admissibility constraint: theta_2 = 2*theta_3 - theta_1."""
    return 2 * th3 - th1


def constraint_theta6(th1, th3, th4, th5):
    """Second constraint: theta_6 = 2*theta_5 - 3*theta_4 - 3*(theta_3-theta_1)^2."""
    return 2 * th5 - 3 * th4 - 3 * (th3 - th1) ** 2


@dataclass(frozen=True)
class DeformationParameters:
    """Coefficients (theta_1..theta_9) of a candidate element of rad^2(re6).

    Modes:
      * ``symbolic-free``: all nine thetas are the free indeterminates t1..t9.
      * ``symbolic-constrained``: theta_2 and theta_6 are eliminated by the
        two admissibility constraints, leaving seven free indeterminates.
      * ``numeric``: all thetas are exact rationals (not necessarily
        admissible; use constraints_satisfied / is_admissible to decide).
    """

    theta: tuple
    mode: str

    @staticmethod
    def symbolic_free() -> "DeformationParameters":
        return DeformationParameters(
            tuple(Poly.var(i) for i in range(1, 10)), "symbolic-free"
        )

    @staticmethod
    def symbolic_constrained() -> "DeformationParameters":
        t = {i: Poly.var(i) for i in range(1, 10)}
        t[2] = constraint_theta2(t[1], t[3])
        t[6] = constraint_theta6(t[1], t[3], t[4], t[5])
        return DeformationParameters(
            tuple(t[i] for i in range(1, 10)), "symbolic-constrained"
        )

    @staticmethod
    def numeric(values: Sequence) -> "DeformationParameters":
        values = tuple(_coerce_scalar(v) for v in values)
        if len(values) != 9:
            raise ValueError("expected 9 theta values")
        if any(isinstance(v, Poly) for v in values):
            raise ValueError("numeric mode requires rational theta values")
        return DeformationParameters(values, "numeric")

    @staticmethod
    def zero() -> "DeformationParameters":
        return DeformationParameters.numeric([0] * 9)

    def __post_init__(self):
        if self.mode not in ("symbolic-free", "symbolic-constrained", "numeric"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if len(self.theta) != 9:
            raise ValueError("expected 9 theta values")
        if self.mode == "symbolic-constrained":
            t = self.theta
            if t[1] != constraint_theta2(t[0], t[2]) or t[5] != constraint_theta6(
                t[0], t[2], t[3], t[4]
            ):
                raise ValueError("constrained mode requires the substituted theta_2, theta_6")

    def constraint_residuals(self) -> tuple:
        """(theta1+theta2-2*theta3, theta6 - (2*theta5-3*theta4-3*(theta3-theta1)^2))."""
        t = self.theta
        return (
            t[0] + t[1] - 2 * t[2],
            t[5] - constraint_theta6(t[0], t[2], t[3], t[4]),
        )

    def constraints_satisfied(self) -> bool:
        c1, c2 = self.constraint_residuals()
        return not c1 and not c2

    @staticmethod
    def constraint_bindings() -> dict[int, Poly]:
        """Substitution eliminating t2 and t6 by the two constraints."""
        t1, t3, t4, t5 = Poly.var(1), Poly.var(3), Poly.var(4), Poly.var(5)
        return {
            2: constraint_theta2(t1, t3),
            6: constraint_theta6(t1, t3, t4, t5),
        }

    def as_free_element(self) -> FreeElement:
        """f = sum theta_i * (i-th rad^2 basis word) on the two-loop quiver."""
        quiver = builtin_quiver("L2")
        g = generators(quiver)
        x, y = g["x"], g["y"]
        words = {
            "xy": x * y, "yx": y * x, "yy": y * y,
            "xyx": x * y * x, "xyy": x * y * y, "yxy": y * x * y,
            "xyxy": x * y * x * y, "yxyy": y * x * y * y, "xyxyy": x * y * x * y * y,
        }
        total = FreeElement.zero(quiver)
        for value, word in zip(self.theta, THETA_MONOMIALS):
            total = total + words[word].scale(value)
        return total


def apply_constraints(element: FreeElement) -> FreeElement:
    """Substitute the two constraints into every polynomial coefficient."""
    bindings = DeformationParameters.constraint_bindings()
    return element.map_coefficients(lambda p: p.substitute(bindings))


# -- derived constants ---------------------------------------------------------


@dataclass(frozen=True)
class DerivedConstants:
    """The nine named coefficient expressions used by the change of generators.

    Works over any commutative scalar ring with +, -, * and integer
    multiples (Poly, Fraction, or a prime-field scalar).
    """

    alpha: object
    beta: object
    gamma: object
    delta: object
    alpha1: object
    beta1: object
    alpha2: object
    beta2: object
    alpha3: object


def derived_constants(params: DeformationParameters) -> DerivedConstants:
    if params.mode == "symbolic-free":
        raise ValueError("derived constants require constrained or numeric parameters")
    return _derived_constants_from(params.theta)


def _derived_constants_from(theta: Sequence) -> DerivedConstants:
    t1, t2, t3, t4, t5, t6, t7, t8, t9 = theta
    alpha = t4 + (t3 - t1) ** 2
    beta = t5 - 2 * t4 - 2 * (t3 - t1) ** 2
    gamma = (
        t7 - 8 * t1 * t3 ** 2 + 7 * t1 ** 2 * t3 + 2 * t3 * t4
        - 2 * t1 ** 3 - 2 * t1 * t4 + 3 * t3 ** 3
    )
    delta = (
        2 * t1 ** 4 - 6 * t1 ** 3 * t3 - 3 * t1 ** 2 * t5 + 4 * t1 ** 2 * t4
        + 6 * t1 ** 2 * t3 ** 2 + 5 * t1 * t3 * t5 - 6 * t1 * t3 * t4
        + t5 ** 2 - 3 * t5 * t4 + 2 * t4 ** 2 - 2 * t3 ** 3 * t1
        - 2 * t3 ** 2 * t5 + 2 * t3 ** 2 * t4 + 2 * t1 * t8 - 3 * t3 * t8 - t9
    )
    alpha1 = -alpha + t1 * t3 - t3 ** 2
    beta1 = -beta + t1 * t3 - t3 ** 2
    alpha2 = (
        -gamma - t3 ** 2 * (t2 - t3) + t1 * beta + t1 * alpha1 - t3 * alpha1
    )
    beta2 = -t3 ** 2 * (t1 - t3) + t3 * alpha + t3 * beta1 + t3 * beta
    alpha3 = (
        -t3 ** 2 * (
            t1 ** 2 + t2 ** 2 + 2 * t4 - 2 * t5 + t6 - t1 * t2 - t2 * t3
        )
        + alpha1 * t3 ** 2 * (t1 - t3)
        + beta * t3 ** 2 * (t2 - t3)
        + t3 * t8
        - t3 * alpha2
        - t3 * beta2
        - alpha * alpha1
        + beta * alpha1
        - beta * beta1
        - gamma * t3
    )
    return DerivedConstants(
        alpha, beta, gamma, delta, alpha1, beta1, alpha2, beta2, alpha3
    )


class GeneratorScalars:
    """All named coefficients of the change of generators, over one scalar ring."""

    def __init__(self, theta: Sequence, one):
        (self.th1, self.th2, self.th3, self.th4, self.th5,
         self.th6, self.th7, self.th8, self.th9) = theta
        self.one = one
        dc = _derived_constants_from(theta)
        self.alpha, self.beta, self.gamma, self.delta = dc.alpha, dc.beta, dc.gamma, dc.delta
        self.alpha1, self.beta1 = dc.alpha1, dc.beta1
        self.alpha2, self.beta2, self.alpha3 = dc.alpha2, dc.beta2, dc.alpha3
        # b3 / a4 / b4 correction coefficients
        self.psi = self.th4 - self.th5 - self.th1 * self.th3 + self.th1 ** 2
        self.kappa1 = (self.th1 - self.th3) * (2 * self.th3 - self.th1) - self.th4
        self.kappa2 = (
            3 * self.th1 * self.th3 ** 2 - self.th3 * self.th4 - self.th7
            - 2 * self.th1 ** 2 * self.th3 - self.th3 ** 3 + self.th1 * self.th5
        )
        # True coefficients of the inverse a3 formula, solved exactly from
        # the triangular system; the printed alpha2 / beta2 / alpha3 do not
        # invert (see README).  Differences from the printed constants:
        #   alpha2 - inv: (t3-t1)*(2*t4 + 3*t3^2 - 6*t1*t3 + 2*t1^2)
        #   beta2  - inv: -t3^2*(t3-t1)
        t1, t3, t4, t5 = self.th1, self.th3, self.th4, self.th5
        t7, t8 = self.th7, self.th8
        self.alpha2_inv = (
            -t7 + t1 * t5 + t1 * t4 - 3 * t3 * t4
            + t1 ** 3 - 7 * t1 ** 2 * t3 + 11 * t1 * t3 ** 2 - 5 * t3 ** 3
        )
        self.beta2_inv = t3 * t4 + t1 ** 2 * t3 - 3 * t1 * t3 ** 2 + 2 * t3 ** 3
        self.alpha3_inv = (
            t5 ** 2 - 5 * t4 * t5 + 7 * t4 ** 2 + t3 * t8 + 2 * t3 * t7
            - 5 * t3 ** 2 * t5 + 21 * t3 ** 2 * t4 + 9 * t1 * t3 * t5
            - 33 * t1 * t3 * t4 - 5 * t1 ** 2 * t5 + 14 * t1 ** 2 * t4
            + 18 * t3 ** 4 - 55 * t1 * t3 ** 3 + 63 * t1 ** 2 * t3 ** 2
            - 33 * t1 ** 3 * t3 + 7 * t1 ** 4
        )


def _scalars(params: DeformationParameters) -> GeneratorScalars:
    if params.mode == "symbolic-free":
        raise ValueError("the change of generators requires constrained or numeric parameters")
    one = Poly.const(1) if isinstance(params.theta[0], Poly) else Fraction(1)
    return GeneratorScalars(params.theta, one)


# The substituted generators: each arrow of {a2,b2,a3,b3,a4,b4} maps to
# itself plus corrections of strictly greater path length.  x and y stand
# for the loops b0*a0 and b2*a2 at the exceptional vertex.
_X = ("b0", "a0")
_Y = ("b2", "a2")


def primed_generator_terms(s: GeneratorScalars) -> dict[str, list]:
    """(coefficient, arrow-name tuple) terms of each substituted generator."""
    return {
        "a2": [
            (s.one, ("a2",)),
            (-s.th8, ("a2",) + _X + _Y + _Y),
        ],
        "b2": [
            (s.one, ("b2",)),
            (s.delta, _X + _Y + _X + _Y + ("b2",)),
        ],
        "a3": [
            (s.one, ("a3",)),
            (s.th1, _X + ("a3",)),
            (s.th3, _Y + ("a3",)),
            (s.alpha, _X + _Y + ("a3",)),
            (s.beta, _Y + _X + ("a3",)),
            (s.gamma, _X + _Y + _X + ("a3",)),
        ],
        "b3": [
            (s.one, ("b3",)),
            (s.th3 - s.th1, ("b3",) + _X),
            (s.psi, ("b3",) + _Y + _X),
        ],
        "a4": [
            (s.one, ("a4",)),
            (s.kappa1, ("b3",) + _X + ("a3", "a4")),
            (s.kappa2, ("b3",) + _Y + _X + ("a3", "a4")),
        ],
        "b4": [
            (s.one, ("b4",)),
            (-s.kappa1, ("b4", "b3") + _X + ("a3",)),
        ],
    }


def _element_from_terms(quiver: Quiver, terms: Iterable) -> FreeElement:
    total = FreeElement.zero(quiver)
    for coeff, names in terms:
        total = total + FreeElement.from_path(quiver.path(*names)).scale(coeff)
    return total


def substituted_generators(params: DeformationParameters) -> GeneratorMap:
    """The change of generators of pe6 attached to admissible parameters.

    In numeric mode the two admissibility constraints are checked first.
    """
    if params.mode == "numeric" and not params.constraints_satisfied():
        c1, c2 = params.constraint_residuals()
        raise ValueError(
            f"theta values violate the admissibility constraints "
            f"(residuals {c1} and {c2})"
        )
    quiver = builtin_quiver("E6")
    s = _scalars(params)
    bindings = {
        name: FreeElement.from_path(quiver.path(name)) for name in
        ("a0", "b0", "a1", "b1")
    }
    for name, terms in primed_generator_terms(s).items():
        bindings[name] = _element_from_terms(quiver, terms)
    return GeneratorMap(quiver, quiver, bindings)


def inverse_formula_terms(s: GeneratorScalars, mode: str) -> dict[str, list]:
    """Right-hand sides of the six inverse formulas.

    Each term is (coefficient, tuple of symbols); a symbol is an arrow
    name, or a primed name like ``a2'`` standing for the substituted
    generator.  ``printed`` is the verbatim form; ``corrected`` drops the
    stray ``a2'`` factor from the a4 formula, primes the lone unprimed
    ``a2`` in the a3 formula (immaterial in the quotient), and replaces
    the three constants alpha2, beta2, alpha3 of the a3 formula by the
    solved inverting coefficients (the printed ones do not invert).
    """
    p = lambda name: name + "'"  # noqa: E731 - tiny local shorthand
    xp = ("b0", "a0")
    yp = (p("b2"), p("a2"))
    a3_beta1_mid = ("a2",) if mode == "printed" else (p("a2"),)
    a4_leading = (p("a4"), p("a2")) if mode == "printed" else (p("a4"),)
    if mode == "printed":
        a3_xyx, a3_yxy, a3_xyxy = s.alpha2, s.beta2, s.alpha3
    else:
        a3_xyx, a3_yxy, a3_xyxy = s.alpha2_inv, s.beta2_inv, s.alpha3_inv
    return {
        "a2": [
            (s.one, (p("a2"),)),
            (s.th8, (p("a2"),) + xp + yp + yp),
        ],
        "b2": [
            (s.one, (p("b2"),)),
            (-s.delta, xp + yp + xp + yp + (p("b2"),)),
        ],
        "a3": [
            (s.one, (p("a3"),)),
            (-s.th1, xp + (p("a3"),)),
            (-s.th3, yp + (p("a3"),)),
            (s.alpha1, xp + yp + (p("a3"),)),
            (s.beta1, (p("b2"),) + a3_beta1_mid + xp + (p("a3"),)),
            (a3_xyx, xp + yp + xp + (p("a3"),)),
            (a3_yxy, yp + xp + yp + (p("a3"),)),
            (a3_xyxy, xp + yp + xp + yp + (p("a3"),)),
        ],
        "b3": [
            (s.one, (p("b3"),)),
            (-(s.th3 - s.th1), (p("b3"),) + xp),
            (-s.psi, (p("b3"),) + yp + xp),
            ((s.th3 - s.th1) * s.psi, (p("b3"),) + xp + yp + xp),
            (s.psi * s.psi, (p("b3"),) + yp + xp + yp + xp),
        ],
        "a4": [
            (s.one, a4_leading),
            (-s.kappa1, (p("b3"),) + xp + (p("a3"), p("a4"))),
            (-s.kappa2, (p("b3"),) + yp + xp + (p("a3"), p("a4"))),
        ],
        "b4": [
            (s.one, (p("b4"),)),
            (s.kappa1, (p("b4"), p("b3")) + xp + (p("a3"),)),
            (-s.th3 * s.kappa1, (p("b4"), p("b3")) + xp + yp + (p("a3"),)),
        ],
    }


def _element_from_symbols(
    quiver: Quiver, terms: Iterable, primed: Mapping[str, FreeElement]
) -> FreeElement:
    total = FreeElement.zero(quiver)
    for coeff, symbols in terms:
        product = None
        for sym in symbols:
            factor = (
                primed[sym[:-1]]
                if sym.endswith("'")
                else FreeElement.from_path(quiver.path(sym))
            )
            product = factor if product is None else product * factor
        total = total + product.scale(coeff)
    return total


# -- admissibility -----------------------------------------------------------------


def admissibility_residual(params: DeformationParameters) -> QuotientElement:
    """Normal form of (x + y + f)^3 in re6."""
    algebra = build_re6()
    g = generators(algebra.quiver)
    cube = (g["x"] + g["y"] + params.as_free_element()) ** 3
    return algebra.normal_form(cube)


def is_admissible(params: DeformationParameters) -> bool:
    return admissibility_residual(params).is_zero()


def lemma_coefficients() -> tuple[Poly, Poly]:
    """The two residual coefficients with all nine thetas free."""
    t = [Poly.var(i) for i in range(1, 10)]
    c1 = t[0] + t[1] - 2 * t[2]
    c2 = (
        3 * t[3] - 2 * t[4] + t[5]
        + t[0] ** 2 - t[0] * t[1] + t[1] ** 2 - t[2] ** 2
    )
    return c1, c2


# -- verification reports ------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: str | None
    ms: float


@dataclass
class VerificationReport:
    title: str
    algebra: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def counts(self) -> tuple[int, int]:
        good = sum(1 for c in self.checks if c.passed)
        return good, len(self.checks)

    def add(self, name: str, passed: bool, residual: str | None, ms: float):
        self.checks.append(CheckResult(name, passed, residual, ms))

    def run(self, name: str, fn: Callable[[], tuple[bool, str | None]]):
        start = time.perf_counter()
        passed, residual = fn()
        ms = (time.perf_counter() - start) * 1000.0
        self.add(name, passed, residual if not passed else None, ms)

    def run_zero(self, name: str, algebra: QuotientAlgebra, element: FreeElement):
        """Check that an element reduces to the zero class."""

        def check():
            nf = algebra.normal_form(element)
            return nf.is_zero(), str(nf)

        self.run(name, check)

    def run_equal_nf(
        self,
        name: str,
        algebra: QuotientAlgebra,
        element: FreeElement,
        expected: FreeElement,
    ):
        """Check that an element's normal form equals a documented one."""

        def check():
            got = algebra.normal_form(element)
            want = algebra.normal_form(expected)
            ok = got == want and not got.is_zero()
            return ok, f"got {got}; expected {want}"

        self.run(name, check)


# -- lemma -------------------------------------------------------------------------


def verify_lemma() -> VerificationReport:
    """Three checks pinning down the admissibility criterion exactly."""
    report = VerificationReport("lemma", "re6")
    algebra = build_re6()
    quiver = algebra.quiver
    g = generators(quiver)
    x, y = g["x"], g["y"]
    c1, c2 = lemma_coefficients()

    def check_free_residual():
        residual = admissibility_residual(DeformationParameters.symbolic_free())
        expected = algebra.normal_form(
            (x * y * x * y).scale(c1) + (x * y * x * y * y).scale(c2)
        )
        ok = residual == expected
        return ok, f"got {residual}"

    report.run("residual of (x+y+f)^3 equals c1*[xyxy] + c2*[xyxyy]", check_free_residual)

    def check_constrained_residual():
        residual = admissibility_residual(DeformationParameters.symbolic_constrained())
        return residual.is_zero(), str(residual)

    report.run("residual vanishes under the two constraints", check_constrained_residual)

    def check_second_coefficient_rewrite():
        bindings = {2: constraint_theta2(Poly.var(1), Poly.var(3))}
        substituted = c2.substitute(bindings)
        target = Poly.var(6) - constraint_theta6(
            Poly.var(1), Poly.var(3), Poly.var(4), Poly.var(5)
        )
        ok = substituted == target
        return ok, f"got {substituted}; expected {target}"

    report.run(
        "second coefficient rewrites to t6 - (2*t5 - 3*t4 - 3*(t3-t1)^2)",
        check_second_coefficient_rewrite,
    )
    return report


# -- deformed relations and theorem --------------------------------------------------


def deformed_relations(params: DeformationParameters) -> list[FreeElement]:
    """The seven relations presenting the deformed algebra, f expanded."""
    quiver = builtin_quiver("E6")
    g = generators(quiver)
    a0, b0, a1, b1 = g["a0"], g["b0"], g["a1"], g["b1"]
    a2, b2, a3, b3 = g["a2"], g["b2"], g["a3"], g["b3"]
    a4, b4 = g["a4"], g["b4"]
    f_on_e6 = corner_embedding()(params.as_free_element())
    return [
        a0 * b0,
        a1 * b1,
        b1 * a1 + a2 * b2,
        b3 * a3 + a4 * b4,
        b4 * a4,
        b0 * a0 + b2 * a2 + a3 * b3 + f_on_e6,
        (b0 * a0 + b2 * a2) ** 3,
    ]


DEFORMED_RELATION_NAMES = (
    "a0*b0",
    "a1*b1",
    "b1*a1 + a2*b2",
    "b3*a3 + a4*b4",
    "b4*a4",
    "b0*a0 + b2*a2 + a3*b3 + f(b0*a0, b2*a2)",
    "(b0*a0 + b2*a2)^3",
)


def theorem_residuals(
    params: DeformationParameters,
) -> list[tuple[str, FreeElement, QuotientElement]]:
    """(name, substituted relation, normal form) for the seven relations."""
    algebra = build_pe6()
    change = substituted_generators(params)
    out = []
    for name, relation in zip(DEFORMED_RELATION_NAMES, deformed_relations(params)):
        image = change(relation)
        out.append((name, image, algebra.normal_form(image)))
    return out


def verify_theorem(params: DeformationParameters | None = None) -> VerificationReport:
    """All seven deformed relations vanish after the change of generators.

    Defaults to the fully symbolic constrained parameters; also records
    whether every substituted relation has integer coefficients before
    reduction (the integer certificate).
    """
    if params is None:
        params = DeformationParameters.symbolic_constrained()
    report = VerificationReport("theorem", "pe6")
    start = time.perf_counter()
    residuals = theorem_residuals(params)
    prep_ms = (time.perf_counter() - start) * 1000.0 / len(residuals)
    integral = True
    for name, image, nf in residuals:
        integral = integral and image.has_integral_coefficients()
        report.add(name, nf.is_zero(), None if nf.is_zero() else str(nf), prep_ms)
    report.run(
        "integer certificate (substituted relations have integer coefficients)",
        lambda: (integral and _reduction_is_integral(build_pe6()), None),
    )
    return report


@lru_cache(maxsize=None)
def _reduction_is_integral(algebra: QuotientAlgebra) -> bool:
    return all(
        c.denominator == 1
        for row in algebra.reduction.values()
        for c in row.values()
    )


# -- inverse change of generators ------------------------------------------------------


INVERSE_ORDER = ("a2", "b2", "a3", "b3", "a4", "b4")


def verify_inverse(mode: str = "corrected", params: DeformationParameters | None = None) -> VerificationReport:
    """Substitute the primed definitions into the six inverse formulas.

    ``corrected`` applies the two documented corrections (the stray
    ``a2'`` factor in the a4 formula and the unprimed ``a2`` in the a3
    formula); ``printed`` uses the formulas verbatim and records the
    mismatches it finds.
    """
    if mode not in ("printed", "corrected"):
        raise ValueError(f"unknown mode {mode!r}")
    if params is None:
        params = DeformationParameters.symbolic_constrained()
    report = VerificationReport(f"inverse ({mode})", "pe6")
    algebra = build_pe6()
    quiver = algebra.quiver
    s = _scalars(params)
    primed = {
        name: _element_from_terms(quiver, terms)
        for name, terms in primed_generator_terms(s).items()
    }
    formulas = inverse_formula_terms(s, mode)
    for name in INVERSE_ORDER:
        rhs = _element_from_symbols(quiver, formulas[name], primed)
        lhs = FreeElement.from_path(quiver.path(name))
        report.run_zero(f"{name} recovered from the {mode} formula", algebra, rhs - lhs)
    return report


def printed_inverse_mismatches(params: DeformationParameters | None = None) -> list[str]:
    """Names of inverse formulas that fail verbatim (stable across runs)."""
    report = verify_inverse("printed", params)
    return [
        name for name, check in zip(INVERSE_ORDER, report.checks) if not check.passed
    ]


# -- corner isomorphism ---------------------------------------------------------------


def verify_corner_iso() -> VerificationReport:
    """re6 is the corner of pe6 at the exceptional vertex.

    The corner at the exceptional vertex 3 (where the deformed relation
    lives) is 12-dimensional and the map x -> b0*a0, y -> b2*a2 is an
    isomorphism onto it.  The corner at the leaf vertex 0 has dimension 4;
    the final informational check records that discrepancy with the
    conventional labeling of the corner statement.
    """
    report = VerificationReport("corner-iso", "pe6")
    pe6 = build_pe6()
    re6 = build_re6()
    embed = corner_embedding()
    v = EXCEPTIONAL_VERTEX

    report.run(
        f"corner dimension at exceptional vertex {v} equals dim re6 = 12",
        lambda: (
            pe6.dimension_at(v, v) == re6.dimension() == 12,
            f"dim corner = {pe6.dimension_at(v, v)}, dim re6 = {re6.dimension()}",
        ),
    )

    g = generators(re6.quiver)
    x, y = g["x"], g["y"]
    for rel, text in ((x * x, "x^2"), (y * y * y, "y^3"), ((x + y) ** 3, "(x+y)^3")):
        report.run_zero(
            f"relation image {text} vanishes under x -> b0*a0, y -> b2*a2",
            pe6,
            embed(rel),
        )

    def rank_check():
        rows = []
        for word in re6.basis:
            image = pe6.normal_form(embed(FreeElement.from_path(word)))
            rows.append(
                {pe6.basis_index[p]: c.as_rational() for p, c in image.coords.items()}
            )
        rank = _rational_rank(rows)
        ok = rank == 12 == pe6.dimension_at(v, v)
        return ok, f"rank = {rank}"

    report.run("images of the 12 basis words have rank 12 (isomorphism)", rank_check)

    report.run(
        "labeling note: corner at leaf vertex 0 has dimension 4, not 12",
        lambda: (
            pe6.dimension_at(0, 0) == 4,
            f"dim corner at 0 = {pe6.dimension_at(0, 0)}",
        ),
    )
    return report


def _rational_rank(rows: list[dict]) -> int:
    pivots: dict = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            lead = max(row)
            if lead in pivots:
                factor = row.pop(lead)
                for k, c in pivots[lead].items():
                    acc = row.get(k, Fraction(0)) - factor * c
                    if acc:
                        row[k] = acc
                    else:
                        row.pop(k, None)
            else:
                factor = row.pop(lead)
                pivots[lead] = {k: c / factor for k, c in row.items()}
                rank += 1
                break
    return rank


# -- identity catalog (delegates to the derivation module) ------------------------------


def verify_identities(params: DeformationParameters | None = None) -> VerificationReport:
    from .derivation import run_derivation_catalog

    if params is None:
        params = DeformationParameters.symbolic_constrained()
    return run_derivation_catalog(params)


def verify_all() -> list[VerificationReport]:
    return [
        verify_lemma(),
        verify_theorem(),
        verify_identities(),
        verify_corner_iso(),
        verify_inverse("corrected"),
    ]


# -- independent numeric pipeline -------------------------------------------------------


class RationalScalars:
    """Exact rational arithmetic for the numeric pipeline."""

    name = "rationals"

    def convert(self, value: Fraction) -> Fraction:
        return Fraction(value)

    def one(self) -> Fraction:
        return Fraction(1)

    def random_element(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


class GF:
    """A prime-field scalar with operator arithmetic."""

    __slots__ = ("p", "value")

    def __init__(self, p: int, value: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", value % p)

    def __setattr__(self, name, value):
        raise AttributeError("GF is immutable")

    def _lift(self, other):
        if isinstance(other, GF):
            if other.p != self.p:
                raise ValueError("mixed prime fields")
            return other
        if isinstance(other, int):
            return GF(self.p, other)
        if isinstance(other, Fraction):
            return GF(self.p, _fraction_mod(other, self.p))
        return None

    def __add__(self, other):
        other = self._lift(other)
        return NotImplemented if other is None else GF(self.p, self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return NotImplemented if other is None else GF(self.p, self.value - other.value)

    def __rsub__(self, other):
        other = self._lift(other)
        return NotImplemented if other is None else GF(self.p, other.value - self.value)

    def __mul__(self, other):
        other = self._lift(other)
        return NotImplemented if other is None else GF(self.p, self.value * other.value)

    __rmul__ = __mul__

    def __neg__(self):
        return GF(self.p, -self.value)

    def __pow__(self, n: int):
        return GF(self.p, pow(self.value, n, self.p))

    def __eq__(self, other):
        other = self._lift(other)
        return NotImplemented if other is None else self.value == other.value

    def __hash__(self):
        return hash((self.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def _fraction_mod(fr: Fraction, p: int) -> int:
    if fr.denominator % p == 0:
        raise ZeroDivisionError(f"denominator of {fr} is divisible by {p}")
    return fr.numerator * pow(fr.denominator, -1, p) % p


class PrimeFieldScalars:
    """GF(p) arithmetic for the numeric pipeline."""

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"

    def convert(self, value: Fraction) -> GF:
        return GF(self.p, _fraction_mod(Fraction(value), self.p))

    def one(self) -> GF:
        return GF(self.p, 1)

    def random_element(self, rng: random.Random) -> GF:
        return GF(self.p, rng.randrange(self.p))


def _vec_from_terms(algebra: QuotientAlgebra, terms, scalars) -> dict:
    """Reduce (coefficient, path) terms to basis coordinates, field-valued."""
    coords: dict = {}
    for coeff, path in terms:
        for b, c in algebra.reduce_path(path).items():
            acc = coords.get(b)
            acc = coeff * scalars.convert(c) if acc is None else acc + coeff * scalars.convert(c)
            if acc:
                coords[b] = acc
            else:
                coords.pop(b, None)
    return coords


def _vec_add(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, c in v.items():
        acc = out.get(k)
        acc = c if acc is None else acc + c
        if acc:
            out[k] = acc
        else:
            out.pop(k, None)
    return out


def _vec_mul(algebra: QuotientAlgebra, u: dict, v: dict, scalars) -> dict:
    """Product through structure constants only; no free expansion."""
    out: dict = {}
    for pu, cu in u.items():
        iu = algebra.basis_index[pu]
        for pv, cv in v.items():
            entry = algebra.structure_constant(iu, algebra.basis_index[pv])
            if not entry:
                continue
            cuv = cu * cv
            for k, c in entry:
                b = algebra.basis[k]
                term = cuv * scalars.convert(c)
                acc = out.get(b)
                acc = term if acc is None else acc + term
                if acc:
                    out[b] = acc
                else:
                    out.pop(b, None)
    return out


def _vec_pow(algebra: QuotientAlgebra, u: dict, n: int, scalars) -> dict:
    result = None
    for _ in range(n):
        result = dict(u) if result is None else _vec_mul(algebra, result, u, scalars)
    return result if result is not None else {}


def numeric_relation_residuals(
    theta: Sequence, scalars
) -> tuple[list[tuple[str, dict]], dict]:
    """The seven relation residuals through structure-constant arithmetic only.

    ``theta`` holds nine field scalars satisfying the two constraints.
    No polynomial objects and no free-algebra multiplication take part;
    this is the independent oracle for the symbolic pipeline.  Returns the
    residual vectors together with a nonzero intermediate (the coordinates
    of b2'*a2') used to cross-check the pipelines on more than zeros.
    """
    algebra = build_pe6()
    quiver = algebra.quiver
    s = GeneratorScalars(tuple(theta), scalars.one())
    gen_vec = {
        name: _vec_from_terms(
            algebra, [(scalars.one(), quiver.path(name))], scalars
        )
        for name in ("a0", "b0", "a1", "b1")
    }
    for name, terms in primed_generator_terms(s).items():
        gen_vec[name] = _vec_from_terms(
            algebra,
            [(coeff, quiver.path(*names)) for coeff, names in terms],
            scalars,
        )

    def prod(*names):
        out = None
        for n in names:
            out = gen_vec[n] if out is None else _vec_mul(algebra, out, gen_vec[n], scalars)
        return out

    x = prod("b0", "a0")
    y = prod("b2", "a2")
    theta_list = list(theta)
    word_vectors = {
        "xy": _vec_mul(algebra, x, y, scalars),
        "yx": _vec_mul(algebra, y, x, scalars),
        "yy": _vec_mul(algebra, y, y, scalars),
    }
    word_vectors["xyx"] = _vec_mul(algebra, word_vectors["xy"], x, scalars)
    word_vectors["xyy"] = _vec_mul(algebra, word_vectors["xy"], y, scalars)
    word_vectors["yxy"] = _vec_mul(algebra, word_vectors["yx"], y, scalars)
    word_vectors["xyxy"] = _vec_mul(algebra, word_vectors["xyx"], y, scalars)
    word_vectors["yxyy"] = _vec_mul(algebra, word_vectors["yxy"], y, scalars)
    word_vectors["xyxyy"] = _vec_mul(algebra, word_vectors["xyxy"], y, scalars)
    f_vec: dict = {}
    for value, word in zip(theta_list, THETA_MONOMIALS):
        f_vec = _vec_add(f_vec, {k: value * c for k, c in word_vectors[word].items()})

    residuals = [
        ("a0*b0", prod("a0", "b0")),
        ("a1*b1", prod("a1", "b1")),
        ("b1*a1 + a2*b2", _vec_add(prod("b1", "a1"), prod("a2", "b2"))),
        ("b3*a3 + a4*b4", _vec_add(prod("b3", "a3"), prod("a4", "b4"))),
        ("b4*a4", prod("b4", "a4")),
        (
            "b0*a0 + b2*a2 + a3*b3 + f(b0*a0, b2*a2)",
            _vec_add(_vec_add(x, y), _vec_add(prod("a3", "b3"), f_vec)),
        ),
        ("(b0*a0 + b2*a2)^3", _vec_pow(algebra, _vec_add(x, y), 3, scalars)),
    ]
    return residuals, {"b2'*a2'": y}


def _random_constrained_theta(rng: random.Random, scalars) -> list:
    free = {i: scalars.random_element(rng) for i in (1, 3, 4, 5, 7, 8, 9)}
    theta = [None] * 9
    for i, v in free.items():
        theta[i - 1] = v
    theta[1] = constraint_theta2(free[1], free[3])
    theta[5] = constraint_theta6(free[1], free[3], free[4], free[5])
    return theta


def _check_constraints_in_field(theta: Sequence) -> None:
    t = theta
    c1 = t[0] + t[1] - 2 * t[2]
    c2 = t[5] - constraint_theta6(t[0], t[2], t[3], t[4])
    if c1 or c2:
        raise ValueError(
            f"theta values violate the admissibility constraints (residuals {c1}, {c2})"
        )


def sample_check(
    seed: int = 0,
    trials: int = 20,
    field: int | None = None,
    theta: Sequence | None = None,
) -> VerificationReport:
    """Numeric cross-check of the theorem through the independent pipeline.

    Runs the seven relation reductions with purely numeric coefficients
    (structure constants only) and compares every residual with the
    evaluation of the symbolic residual at the same point.  ``field``
    selects GF(p) arithmetic; the default is exact rationals.  When
    ``theta`` is given it is validated and used for a single trial.
    """
    scalars = RationalScalars() if field is None else PrimeFieldScalars(field)
    report = VerificationReport(f"sample ({scalars.name})", "pe6")
    constrained = DeformationParameters.symbolic_constrained()
    symbolic = theorem_residuals(constrained)
    s = _scalars(constrained)
    quiver = builtin_quiver("E6")
    primed = {
        name: _element_from_terms(quiver, terms)
        for name, terms in primed_generator_terms(s).items()
    }
    symbolic_y = build_pe6().normal_form(primed["b2"] * primed["a2"])
    rng = random.Random(seed)

    if isinstance(theta, DeformationParameters):
        if theta.mode != "numeric":
            raise ValueError("sample_check takes numeric deformation parameters")
        theta = theta.theta
    if theta is not None:
        trials_iter = [[_coerce_theta_entry(v, scalars) for v in theta]]
    else:
        trials_iter = [_random_constrained_theta(rng, scalars) for _ in range(trials)]

    for k, th in enumerate(trials_iter):
        _check_constraints_in_field(th)
        assignment = _theta_assignment(th)

        def run_trial(th=th, assignment=assignment):
            numeric, intermediates = numeric_relation_residuals(th, scalars)
            for (name, _, sym_nf), (num_name, num_vec) in zip(symbolic, numeric):
                if num_vec:
                    return False, f"{num_name} nonzero: {_vec_str(num_vec)}"
                evaluated = _evaluate_symbolic(sym_nf, assignment, scalars)
                if evaluated != num_vec:
                    return False, f"{num_name} disagrees with evaluated symbolic residual"
            # a nonzero intermediate keeps the two pipelines honest
            evaluated_y = _evaluate_symbolic(symbolic_y, assignment, scalars)
            if evaluated_y != intermediates["b2'*a2'"]:
                return False, "b2'*a2' disagrees between the two pipelines"
            if not evaluated_y:
                return False, "b2'*a2' unexpectedly reduced to zero"
            return True, None

        report.run(f"trial {k} over {scalars.name}", run_trial)
    return report


def _coerce_theta_entry(value, scalars):
    if isinstance(value, GF):
        return value
    if isinstance(value, (int, Fraction)):
        return scalars.convert(Fraction(value))
    raise TypeError(f"cannot use {type(value).__name__} as a theta sample")


def _theta_assignment(theta: Sequence) -> dict[int, object]:
    return {i + 1: v for i, v in enumerate(theta)}


def _evaluate_symbolic(nf: QuotientElement, assignment, scalars) -> dict:
    out = {}
    for path, poly in nf.coords.items():
        if isinstance(scalars, PrimeFieldScalars):
            value = GF(
                scalars.p,
                poly.evaluate_mod(
                    {i: v.value for i, v in assignment.items()}, scalars.p
                ),
            )
        else:
            value = poly.evaluate(assignment)
        if value:
            out[path] = value
    return out


def _vec_str(vec: dict) -> str:
    parts = [f"{c}*{p}" for p, c in sorted(vec.items(), key=lambda kv: kv[0].key)]
    return " + ".join(parts)
