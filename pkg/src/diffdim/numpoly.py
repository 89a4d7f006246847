"""Integer-valued polynomials written in the binomial coefficient basis.

A polynomial is stored as integer coefficients a_0, ..., a_k of the basis
functions C(l+i, i).  Every polynomial that takes integer values at all
sufficiently large integers has a unique such expansion, and the combinatorial
counting formulas used elsewhere in this package land in this basis directly.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .ordering import Ordering

MINUS = "−"


def binomial_value(x: int, k: int) -> int:
    """Value at an arbitrary integer x of the degree-k polynomial C(x+k, k)."""
    if x >= 0:
        return math.comb(x + k, k)
    if x >= -k:
        return 0
    return (-1) ** k * math.comb(-x - 1, k)


class NumericalPolynomial:
    """Polynomial a_0*C(l,0) + a_1*C(l+1,1) + ... + a_k*C(l+k,k), a_i integers."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            coeffs = (0,)
        for c in coeffs:
            if not isinstance(c, int):
                raise TypeError(f"binomial-basis coefficients must be int, got {c!r}")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("NumericalPolynomial is immutable")

    @classmethod
    def zero(cls, n_max: int = 0) -> "NumericalPolynomial":
        return cls((0,) * (n_max + 1))

    @classmethod
    def from_values(cls, values) -> "NumericalPolynomial":
        """Interpolate from exact values at l = 0, 1, ..., len(values)-1.

        The backward difference p(l) - p(l-1) shifts the basis index down by
        one, so the difference triangle of the values gives the numbers
        D_k = (diff^k p)(k) = sum_{i >= k} C(i, k) a_i, a triangular integer
        system solved here by back substitution.
        """
        vals = [int(v) for v in values]
        if not vals:
            raise ValueError("need at least one value")
        firsts = [vals[0]]
        row = vals
        while len(row) > 1:
            row = [row[j + 1] - row[j] for j in range(len(row) - 1)]
            firsts.append(row[0])
        top = len(firsts) - 1
        coeffs = [0] * (top + 1)
        for k in range(top, -1, -1):
            coeffs[k] = firsts[k] - sum(
                math.comb(i, k) * coeffs[i] for i in range(k + 1, top + 1)
            )
        return cls(coeffs)

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        """Largest basis index with nonzero coefficient, -1 for the zero polynomial."""
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i] != 0:
                return i
        return -1

    def eval(self, point: int) -> int:
        if point < 0:
            raise ValueError("numerical polynomials are evaluated at l >= 0")
        return sum(a * math.comb(point + i, i) for i, a in enumerate(self.coeffs))

    def _padded(self, other: "NumericalPolynomial") -> tuple[tuple[int, ...], tuple[int, ...]]:
        width = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (width - len(self.coeffs))
        b = other.coeffs + (0,) * (width - len(other.coeffs))
        return a, b

    def __add__(self, other):
        if not isinstance(other, NumericalPolynomial):
            return NotImplemented
        a, b = self._padded(other)
        return NumericalPolynomial(x + y for x, y in zip(a, b))

    def __sub__(self, other):
        if not isinstance(other, NumericalPolynomial):
            return NotImplemented
        a, b = self._padded(other)
        return NumericalPolynomial(x - y for x, y in zip(a, b))

    def __eq__(self, other):
        if not isinstance(other, NumericalPolynomial):
            return NotImplemented
        a, b = self._padded(other)
        return a == b

    def __hash__(self):
        coeffs = self.coeffs
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        return hash(coeffs)

    def __repr__(self):
        return f"NumericalPolynomial({list(self.coeffs)!r})"

    def compare(self, other: "NumericalPolynomial") -> Ordering:
        """Total order: decided by the highest differing basis coefficient.

        For integer-valued polynomials this is exactly eventual pointwise
        comparison: the polynomial with the larger top coefficient dominates
        for all large arguments.
        """
        a, b = self._padded(other)
        for i in range(len(a) - 1, -1, -1):
            if a[i] != b[i]:
                return Ordering.LESS if a[i] < b[i] else Ordering.GREATER
        return Ordering.EQUAL

    def to_standard_basis(self) -> tuple[Fraction, ...]:
        """Rational coefficients c_0, ..., c_{n_max} of the powers l^0, ..., l^{n_max}."""
        out = [Fraction(0)] * len(self.coeffs)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            # C(l+i, i) = (l+1)(l+2)...(l+i) / i!
            expanded = [Fraction(1)]
            for k in range(1, i + 1):
                bumped = [Fraction(0)] * (len(expanded) + 1)
                for t, c in enumerate(expanded):
                    bumped[t + 1] += c
                    bumped[t] += k * c
                expanded = bumped
            scale = Fraction(a, math.factorial(i))
            for t, c in enumerate(expanded):
                out[t] += scale * c
        for point in range(len(self.coeffs)):
            total = sum(c * point**k for k, c in enumerate(out))
            assert total == self.eval(point), "basis conversion lost exactness"
        return tuple(out)

    def to_json_dict(self) -> dict:
        return {
            "binomial_coeffs": list(self.coeffs),
            "standard_coeffs": [str(c) for c in self.to_standard_basis()],
            "degree": self.degree,
        }


def cmp(p: NumericalPolynomial, q: NumericalPolynomial) -> Ordering:
    return p.compare(q)


def _coeff_prefix(c, unit_blank: bool, sep: str) -> str:
    if unit_blank and abs(c) == 1:
        return ""
    mag = abs(c)
    if isinstance(mag, Fraction) and mag.denominator != 1:
        return f"({mag}){sep}" if sep else f"({mag})"
    return f"{mag}{sep}"


def standard_text(p: NumericalPolynomial, var: str = "ℓ") -> str:
    """Render in falling powers, e.g. '2l + 1'."""
    coeffs = p.to_standard_basis()
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = _coeff_prefix(c, unit_blank=True, sep="") + power
        if not parts:
            parts.append(body if c > 0 else MINUS + body)
        else:
            parts.append(("+ " if c > 0 else MINUS + " ") + body)
    if not parts:
        return "0"
    return " ".join(parts)


def binomial_text(p: NumericalPolynomial, var: str = "ℓ") -> str:
    """Render in the binomial basis, e.g. '2·C(l+1,1) − 1'."""
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        a = p.coeffs[i]
        if a == 0:
            continue
        if i == 0:
            body = str(abs(a))
        else:
            body = _coeff_prefix(a, unit_blank=True, sep="·") + f"C({var}+{i},{i})"
        if not parts:
            parts.append(body if a > 0 else MINUS + body)
        else:
            parts.append(("+ " if a > 0 else MINUS + " ") + body)
    if not parts:
        return "0"
    return " ".join(parts)
