"""Sparse differential polynomials over the rationals.

The ring has m differential indeterminates and n pairwise commuting
derivations.  A derivative is an indeterminate together with a multi-index
over the derivation axes; polynomials are finite rational combinations of
power products of derivatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple

from .ordering import Ordering

MultiIndex = tuple[int, ...]


class ConstantPolynomialError(ValueError):
    """Raised when an operation needs a leader but the polynomial has none."""


def index_order(mu: MultiIndex) -> int:
    return sum(mu)


def add_indices(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def subtract_indices(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    out = tuple(x - y for x, y in zip(a, b))
    if any(x < 0 for x in out):
        raise ValueError(f"{a} does not dominate {b}")
    return out


def join_indices(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(max(x, y) for x, y in zip(a, b))


def dominates(a: MultiIndex, b: MultiIndex) -> bool:
    """True when a >= b componentwise, i.e. the derivative a derives from b."""
    return all(x >= y for x, y in zip(a, b))


def iter_indices(n: int, max_order: int) -> Iterator[MultiIndex]:
    """All multi-indices of length n with total order at most max_order."""
    if n == 0:
        yield ()
        return
    for head in range(max_order + 1):
        for tail in iter_indices(n - 1, max_order - head):
            yield (head,) + tail


@dataclass(frozen=True)
class RingSpec:
    """Names of the derivation axes and the differential indeterminates."""

    derivation_names: tuple[str, ...]
    indeterminate_names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "derivation_names", tuple(self.derivation_names))
        object.__setattr__(self, "indeterminate_names", tuple(self.indeterminate_names))
        if not self.derivation_names or not self.indeterminate_names:
            raise ValueError("a ring needs at least one derivation and one indeterminate")
        if len(set(self.derivation_names)) != len(self.derivation_names):
            raise ValueError("derivation names must be distinct")
        if len(set(self.indeterminate_names)) != len(self.indeterminate_names):
            raise ValueError("indeterminate names must be distinct")

    @property
    def num_derivations(self) -> int:
        return len(self.derivation_names)

    @property
    def num_indeterminates(self) -> int:
        return len(self.indeterminate_names)


class Derivative(NamedTuple):
    indeterminate: int
    index: MultiIndex

    @property
    def order(self) -> int:
        return sum(self.index)


_DERIVATIVE_CACHE: dict[tuple[int, MultiIndex], Derivative] = {}


def make_derivative(indeterminate: int, index: Iterable[int]) -> Derivative:
    """Interned constructor; repeated derivatives share one tuple."""
    key = (indeterminate, tuple(index))
    got = _DERIVATIVE_CACHE.get(key)
    if got is None:
        if key[0] < 0 or any(e < 0 for e in key[1]):
            raise ValueError(f"invalid derivative {key}")
        got = _DERIVATIVE_CACHE[key] = Derivative(*key)
    return got


def shift_derivative(d: Derivative, axis: int) -> Derivative:
    if axis < 0 or axis >= len(d.index):
        raise IndexError(f"derivation axis {axis} out of range for {d}")
    bumped = d.index[:axis] + (d.index[axis] + 1,) + d.index[axis + 1 :]
    return make_derivative(d.indeterminate, bumped)


def derivative_text(d: Derivative, names: tuple[str, ...] | None = None) -> str:
    name = names[d.indeterminate] if names else f"x{d.indeterminate}"
    return name + "[" + ",".join(str(e) for e in d.index) + "]"


# A monomial is a sorted tuple of (Derivative, exponent) pairs, exponents > 0.
Monomial = tuple[tuple[Derivative, int], ...]


def _monomial(powers: Mapping[Derivative, int]) -> Monomial:
    return tuple(sorted((d, e) for d, e in powers.items() if e != 0))


class DiffPoly:
    """Differential polynomial as a map from monomials to nonzero Fractions.

    The zero polynomial has an empty term map, and the constant monomial is
    the empty tuple, so structural equality of the maps is equality of
    polynomials.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction | int] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    clean[mono] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("DiffPoly is immutable")

    @classmethod
    def zero(cls) -> "DiffPoly":
        return cls()

    @classmethod
    def constant(cls, value) -> "DiffPoly":
        return cls({(): Fraction(value)})

    @classmethod
    def variable(cls, d: Derivative) -> "DiffPoly":
        return cls({((d, 1),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not mono for mono in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((), Fraction(0))

    def derivatives(self) -> set[Derivative]:
        out: set[Derivative] = set()
        for mono in self.terms:
            for d, _ in mono:
                out.add(d)
        return out

    def total_degree(self) -> int:
        return max((sum(e for _, e in mono) for mono in self.terms), default=0)

    @staticmethod
    def _coerce(value) -> "DiffPoly | None":
        if isinstance(value, DiffPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return DiffPoly.constant(value)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc[mono] = acc.get(mono, Fraction(0)) + coeff
        return DiffPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly({mono: -coeff for mono, coeff in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                powers = dict(m1)
                for d, e in m2:
                    powers[d] = powers.get(d, 0) + e
                key = _monomial(powers)
                acc[key] = acc.get(key, Fraction(0)) + c1 * c2
        return DiffPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = DiffPoly.constant(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"DiffPoly<{poly_text(self)}>"

    def degree_in(self, d: Derivative) -> int:
        best = 0
        for mono in self.terms:
            for d2, e in mono:
                if d2 == d and e > best:
                    best = e
        return best

    def as_univariate(self, d: Derivative) -> dict[int, "DiffPoly"]:
        """Coefficients of the powers of d, themselves polynomials free of d."""
        buckets: dict[int, dict[Monomial, Fraction]] = {}
        for mono, coeff in self.terms.items():
            e = 0
            rest = []
            for d2, e2 in mono:
                if d2 == d:
                    e = e2
                else:
                    rest.append((d2, e2))
            buckets.setdefault(e, {})[tuple(rest)] = coeff
        return {e: DiffPoly(t) for e, t in buckets.items()}

    def partial(self, d: Derivative) -> "DiffPoly":
        """Formal partial derivative with respect to one derivative symbol."""
        acc: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            powers = dict(mono)
            e = powers.get(d)
            if not e:
                continue
            if e == 1:
                del powers[d]
            else:
                powers[d] = e - 1
            key = _monomial(powers)
            acc[key] = acc.get(key, Fraction(0)) + coeff * e
        return DiffPoly(acc)

    def derive(self, axis: int) -> "DiffPoly":
        """Apply the derivation along one axis, by the Leibniz rule."""
        acc: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            for d, e in mono:
                powers = dict(mono)
                if e == 1:
                    del powers[d]
                else:
                    powers[d] = e - 1
                bumped = shift_derivative(d, axis)
                powers[bumped] = powers.get(bumped, 0) + 1
                key = _monomial(powers)
                acc[key] = acc.get(key, Fraction(0)) + coeff * e
        return DiffPoly(acc)

    def derive_multi(self, mu: MultiIndex) -> "DiffPoly":
        out = self
        for axis, times in enumerate(mu):
            for _ in range(times):
                out = out.derive(axis)
        return out


def poly_text(p: DiffPoly, names: tuple[str, ...] | None = None) -> str:
    """Canonical text form, parseable by the system-file grammar."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for mono in sorted(p.terms, reverse=True):
        coeff = p.terms[mono]
        factors = []
        for d, e in mono:
            text = derivative_text(d, names)
            factors.append(text if e == 1 else f"{text}^{e}")
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(body if coeff > 0 else "-" + body)
        else:
            parts.append(("+ " if coeff > 0 else "- ") + body)
    return " ".join(parts)


@dataclass(frozen=True)
class Ranking:
    """Orderly ranking of derivatives.

    Lower total order ranks lower.  Order ties go to the indeterminate that
    appears earlier in the tiebreak order; remaining ties on one
    indeterminate are broken reverse-lexicographically, so the axis listed
    first in the ring dominates.
    """

    ring: RingSpec
    indeterminate_order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indeterminate_order", tuple(self.indeterminate_order))
        if sorted(self.indeterminate_order) != list(range(self.ring.num_indeterminates)):
            raise ValueError("tiebreak order must be a permutation of the indeterminates")

    @classmethod
    def orderly(cls, ring: RingSpec, tiebreak: Iterable[int] | None = None) -> "Ranking":
        if tiebreak is None:
            tiebreak = range(ring.num_indeterminates)
        return cls(ring, tuple(tiebreak))

    def key(self, d: Derivative):
        return (
            d.order,
            self.indeterminate_order.index(d.indeterminate),
            tuple(-e for e in reversed(d.index)),
        )

    def compare(self, d1: Derivative, d2: Derivative) -> Ordering:
        return Ordering.of(self.key(d1), self.key(d2))

    def leader(self, p: DiffPoly) -> Derivative:
        """Highest-ranking derivative occurring in p."""
        found = p.derivatives()
        if not found:
            raise ConstantPolynomialError("constant polynomial has no leader")
        return max(found, key=self.key)

    def initial(self, p: DiffPoly) -> DiffPoly:
        x = self.leader(p)
        return p.as_univariate(x)[p.degree_in(x)]

    def separant(self, p: DiffPoly) -> DiffPoly:
        return p.partial(self.leader(p))


def rank_cmp(d1: Derivative, d2: Derivative, ranking: Ranking) -> Ordering:
    return ranking.compare(d1, d2)
