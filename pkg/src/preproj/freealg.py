"""Elements of the free path algebra with polynomial coefficients.

A FreeElement is a finite linear combination of paths of one quiver with
Poly coefficients.  The product extends path concatenation bilinearly;
non-composable concatenations contribute zero, which is the standard path
algebra convention and what makes sums of loops at different vertices
well-typed.

A GeneratorMap sends each arrow of a source quiver to an
endpoint-homogeneous element of a target quiver and extends to the unique
algebra homomorphism on free elements.  It is the engine behind both the
embedding x -> b0*a0, y -> b2*a2 of the two-loop quiver and the change of
generators used in the isomorphism verification.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .polyring import Poly
from .quiver import Path, Quiver, compose


def _as_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.const(value)
    raise TypeError(f"cannot use {type(value).__name__} as a coefficient")


class FreeElement:
    """Immutable linear combination of paths with Poly coefficients."""

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver: Quiver, terms: Mapping[Path, Poly] | None = None):
        clean = {}
        if terms:
            for path, coeff in terms.items():
                if path.quiver is not quiver:
                    raise ValueError("path belongs to a different quiver")
                c = _as_poly(coeff)
                if c:
                    clean[path] = c
        object.__setattr__(self, "quiver", quiver)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("FreeElement is immutable")

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(quiver: Quiver) -> "FreeElement":
        return FreeElement(quiver)

    @staticmethod
    def from_path(path: Path, coeff=1) -> "FreeElement":
        return FreeElement(path.quiver, {path: _as_poly(coeff)})

    @staticmethod
    def one(quiver: Quiver) -> "FreeElement":
        """The two-sided identity: the sum of all vertex idempotents."""
        return FreeElement(
            quiver, {quiver.idempotent(v): Poly.const(1) for v in quiver.vertices}
        )

    # -- queries ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Path, Poly]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].key)

    def max_length(self) -> int:
        return max((len(p) for p in self.terms), default=0)

    def is_endpoint_homogeneous(self) -> bool:
        ends = {(p.source, p.target) for p in self.terms}
        return len(ends) <= 1

    def endpoints(self) -> tuple[int, int]:
        ends = {(p.source, p.target) for p in self.terms}
        if len(ends) != 1:
            raise ValueError("element is zero or not endpoint-homogeneous")
        return ends.pop()

    def is_degree_homogeneous(self) -> bool:
        return len({len(p) for p in self.terms}) <= 1

    def has_rational_coefficients(self) -> bool:
        return all(c.is_rational() for c in self.terms.values())

    def has_integral_coefficients(self) -> bool:
        return all(c.is_integral() for c in self.terms.values())

    def map_coefficients(self, fn) -> "FreeElement":
        return FreeElement(self.quiver, {p: fn(c) for p, c in self.terms.items()})

    # -- arithmetic ----------------------------------------------------------------

    def _check_same_quiver(self, other: "FreeElement"):
        if self.quiver is not other.quiver:
            raise ValueError(
                f"elements live on different quivers "
                f"({self.quiver.name} vs {other.quiver.name})"
            )

    def __add__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        self._check_same_quiver(other)
        out = dict(self.terms)
        for path, coeff in other.terms.items():
            acc = out.get(path, Poly.zero()) + coeff
            if acc:
                out[path] = acc
            else:
                out.pop(path, None)
        return FreeElement(self.quiver, out)

    def __neg__(self):
        return FreeElement(self.quiver, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return self.scale(other)
        if not isinstance(other, FreeElement):
            return NotImplemented
        self._check_same_quiver(other)
        out: dict = {}
        for pa, ca in self.terms.items():
            for pb, cb in other.terms.items():
                pab = compose(pa, pb)
                if pab is None:
                    continue
                acc = out.get(pab, Poly.zero()) + ca * cb
                if acc:
                    out[pab] = acc
                else:
                    out.pop(pab, None)
        return FreeElement(self.quiver, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return self.scale(other)
        return NotImplemented

    def scale(self, coeff) -> "FreeElement":
        c = _as_poly(coeff)
        return FreeElement(self.quiver, {p: c * v for p, v in self.terms.items()})

    def __pow__(self, n: int) -> "FreeElement":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = FreeElement.one(self.quiver)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.quiver is other.quiver and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.quiver), frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        from .expr import format_element

        return format_element(self)

    def __repr__(self):
        return f"FreeElement({self})"


def generators(quiver: Quiver) -> dict[str, FreeElement]:
    """Arrow names and vertex idempotents as single-term elements."""
    gens = {a.name: FreeElement.from_path(quiver.path(a.name)) for a in quiver.arrows}
    for v in quiver.vertices:
        gens[f"e{v}"] = FreeElement.from_path(quiver.idempotent(v))
    return gens


class GeneratorMap:
    """Arrow substitution defining an algebra homomorphism between path algebras.

    Each arrow of the source quiver is bound to an endpoint-homogeneous
    element of the target quiver; vertices map per ``vertex_map`` and the
    endpoints of each image must match the mapped endpoints of its arrow.
    """

    def __init__(
        self,
        source: Quiver,
        target: Quiver,
        bindings: Mapping[str, FreeElement],
        vertex_map: Mapping[int, int] | None = None,
    ):
        self.source = source
        self.target = target
        if vertex_map is None:
            if source is not target:
                raise ValueError("a vertex map is required between distinct quivers")
            vertex_map = {v: v for v in source.vertices}
        self.vertex_map = dict(vertex_map)
        self.bindings = dict(bindings)
        for v in source.vertices:
            if v not in self.vertex_map:
                raise ValueError(f"vertex {v} is not mapped")
        for name, element in self.bindings.items():
            arrow = source.arrow(name)
            if element.quiver is not target:
                raise ValueError(f"image of {name} lives on the wrong quiver")
            if element.is_zero():
                raise ValueError(f"image of {name} is zero")
            src, tgt = element.endpoints()
            want = (self.vertex_map[arrow.source], self.vertex_map[arrow.target])
            if (src, tgt) != want:
                raise ValueError(
                    f"image of {name} runs {src} -> {tgt}, expected {want[0]} -> {want[1]}"
                )

    @staticmethod
    def identity(quiver: Quiver) -> "GeneratorMap":
        return GeneratorMap(quiver, quiver, generators_as_bindings(quiver))

    def __call__(self, element: FreeElement) -> FreeElement:
        """Apply the multiplicative extension to a free element."""
        if element.quiver is not self.source:
            raise ValueError("element does not live on the source quiver")
        out = FreeElement.zero(self.target)
        for path, coeff in element.terms.items():
            if not path.arrows:
                image = FreeElement.from_path(
                    self.target.idempotent(self.vertex_map[path.source])
                )
            else:
                image = None
                for i in path.arrows:
                    name = self.source.arrows[i].name
                    if name not in self.bindings:
                        raise KeyError(f"arrow {name!r} is not bound by the generator map")
                    factor = self.bindings[name]
                    image = factor if image is None else image * factor
            out = out + image.scale(coeff)
        return out


def generators_as_bindings(quiver: Quiver) -> dict[str, FreeElement]:
    return {a.name: FreeElement.from_path(quiver.path(a.name)) for a in quiver.arrows}
