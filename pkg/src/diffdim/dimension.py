"""Dimension polynomial of a chain from the geometry of its leader cones.

Once a chain validates, its dimension polynomial depends only on the set of
leaders: for each order bound the polynomial counts the derivatives that are
not derivatives of any leader.  Two closed forms are implemented, one by
inclusion-exclusion over the leader cones and one by Janet completion into
disjoint cones, plus a brute-force lattice-point oracle they are checked
against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .chains import DiffChain, InvalidChainError
from .diffpoly import (
    MultiIndex,
    dominates,
    index_order,
    iter_indices,
    join_indices,
)
from .numpoly import NumericalPolynomial, binomial_value

DEFAULT_SUBSET_LIMIT = 20


class SubsetBlowupError(RuntimeError):
    """Too many cone generators for subset enumeration; use the Janet route."""


class InternalDisagreementError(RuntimeError):
    """The two closed-form algorithms disagreed; this indicates a bug."""


def minimalize(indices) -> tuple[MultiIndex, ...]:
    """Antichain of the given multi-indices: drop everything dominated."""
    unique = sorted(set(tuple(mu) for mu in indices))
    out = [mu for mu in unique if not any(mu != g and dominates(mu, g) for g in unique)]
    return tuple(out)


class LeaderSpec:
    """Leader cones of a chain, one antichain of multi-indices per indeterminate."""

    __slots__ = ("num_derivations", "num_indeterminates", "generators")

    def __init__(self, num_derivations: int, num_indeterminates: int, generators=None):
        if num_derivations < 1 or num_indeterminates < 1:
            raise ValueError("need at least one derivation and one indeterminate")
        groups: list[tuple[MultiIndex, ...]] = [()] * num_indeterminates
        if generators:
            items = (
                generators.items() if hasattr(generators, "items") else enumerate(generators)
            )
            for j, gens in items:
                gens = tuple(tuple(mu) for mu in gens)
                for mu in gens:
                    if len(mu) != num_derivations or any(e < 0 for e in mu):
                        raise ValueError(f"bad multi-index {mu}")
                groups[j] = minimalize(gens)
        object.__setattr__(self, "num_derivations", num_derivations)
        object.__setattr__(self, "num_indeterminates", num_indeterminates)
        object.__setattr__(self, "generators", tuple(groups))

    def __setattr__(self, name, value):
        raise AttributeError("LeaderSpec is immutable")

    def __eq__(self, other):
        if not isinstance(other, LeaderSpec):
            return NotImplemented
        return (
            self.num_derivations == other.num_derivations
            and self.generators == other.generators
        )

    def __repr__(self):
        return (
            f"LeaderSpec(n={self.num_derivations}, m={self.num_indeterminates}, "
            f"generators={self.generators!r})"
        )


def normalize_leaders(chain: DiffChain) -> LeaderSpec:
    """Group the chain's leaders by indeterminate.

    Weak triangularity already makes each group an antichain, which the
    minimalization pass double-checks.
    """
    report = chain.validation_report()
    if not report.accepted:
        raise InvalidChainError("; ".join(report.messages))
    ring = chain.ring
    groups: dict[int, list[MultiIndex]] = {}
    for ld in chain.leaders:
        groups.setdefault(ld.indeterminate, []).append(ld.index)
    spec = LeaderSpec(ring.num_derivations, ring.num_indeterminates, groups)
    kept = sum(len(g) for g in spec.generators)
    assert kept == len(chain.leaders), "triangular chain produced a dominated leader"
    return spec


def count_derivatives(spec: LeaderSpec, max_order: int) -> int:
    """Lattice points of total order <= max_order inside the union of leader cones.

    Pure enumeration, kept deliberately independent of both closed forms.
    """
    total = 0
    for gens in spec.generators:
        if not gens:
            continue
        for mu in iter_indices(spec.num_derivations, max_order):
            if any(dominates(mu, g) for g in gens):
                total += 1
    return total


def krull_oracle(spec: LeaderSpec, max_order: int) -> int:
    """Number of derivatives of order <= max_order free of every leader cone."""
    n = spec.num_derivations
    whole = spec.num_indeterminates * math.comb(max_order + n, n)
    return whole - count_derivatives(spec, max_order)


@dataclass
class OmegaResult:
    """Dimension polynomial plus the bound after which it counts exactly."""

    omega: NumericalPolynomial
    stabilization_bound: int
    janet_cones: tuple["JanetCone", ...] | None = None

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self.omega.coeffs

    @property
    def degree(self) -> int:
        return self.omega.degree

    @property
    def differential_dimension(self) -> int:
        return self.omega.coeffs[-1]

    def to_json_dict(self, ring=None) -> dict:
        out = self.omega.to_json_dict()
        out["differential_dimension"] = self.differential_dimension
        out["stabilization_bound"] = self.stabilization_bound
        cones = []
        for cone in self.janet_cones or ():
            if ring is not None:
                indet = ring.indeterminate_names[cone.indeterminate]
                axes = [ring.derivation_names[i] for i in sorted(cone.multiplicative)]
            else:
                indet = str(cone.indeterminate)
                axes = [str(i) for i in sorted(cone.multiplicative)]
            cones.append(
                {
                    "generator": list(cone.generator),
                    "indeterminate": indet,
                    "multiplicative": axes,
                }
            )
        out["janet_cones"] = cones
        return out


def omega_incl_excl(
    spec: LeaderSpec, subset_limit: int = DEFAULT_SUBSET_LIMIT
) -> OmegaResult:
    """Dimension polynomial by inclusion-exclusion over cone intersections.

    The cone above a join q of generators holds C(l - |q| + n, n) points of
    order <= l, exactly once l >= |q| - 1, so the polynomial identity
    stabilizes at the largest join order.
    """
    n = spec.num_derivations
    for gens in spec.generators:
        if len(gens) > subset_limit:
            raise SubsetBlowupError(
                f"{len(gens)} cone generators exceed the subset enumeration "
                f"limit {subset_limit}"
            )
    joins: list[tuple[int, int]] = []  # (sign, join order)
    bound = 0
    for gens in spec.generators:
        for mask in range(1, 1 << len(gens)):
            join = None
            for t in range(len(gens)):
                if mask >> t & 1:
                    join = gens[t] if join is None else join_indices(join, gens[t])
            sign = -1 if bin(mask).count("1") % 2 == 0 else 1
            order = index_order(join)
            joins.append((sign, order))
            bound = max(bound, order)
    values = []
    for point in range(n + 1):
        free = spec.num_indeterminates * math.comb(point + n, n)
        free -= sum(sign * binomial_value(point - order, n) for sign, order in joins)
        values.append(free)
    return OmegaResult(NumericalPolynomial.from_values(values), bound)


@dataclass(frozen=True)
class JanetCone:
    generator: MultiIndex
    indeterminate: int
    multiplicative: frozenset[int]


def _janet_multiplicative(gens: list[MultiIndex], n: int) -> dict[MultiIndex, frozenset[int]]:
    """Janet's axis assignment: axis i is multiplicative for u when u attains
    the maximal i-th exponent among generators sharing its first i-1 exponents."""
    out = {}
    for u in gens:
        axes = set()
        for i in range(n):
            peak = max(v[i] for v in gens if v[:i] == u[:i])
            if u[i] == peak:
                axes.add(i)
        out[u] = frozenset(axes)
    return out


def janet_complete(generators, num_derivations: int, indeterminate: int = 0) -> list[JanetCone]:
    """Complete an antichain until the Janet cones cover every prolongation.

    Any uncovered non-multiplicative prolongation u + e_i is inserted and the
    axis assignment recomputed; Dickson's lemma bounds the insertions.  The
    resulting cones are pairwise disjoint and cover exactly the union of the
    ordinary cones of the input.
    """
    n = num_derivations
    work = sorted(set(tuple(mu) for mu in generators))
    if not work:
        return []
    while True:
        mult = _janet_multiplicative(work, n)
        inserted = None
        for u in work:
            for i in range(n):
                if i in mult[u]:
                    continue
                v = u[:i] + (u[i] + 1,) + u[i + 1 :]
                covered = any(
                    dominates(v, w)
                    and all(e == 0 or k in mult[w] for k, e in enumerate(subtract_indices_safe(v, w)))
                    for w in work
                )
                if not covered:
                    inserted = v
                    break
            if inserted:
                break
        if inserted is None:
            return [JanetCone(u, indeterminate, mult[u]) for u in work]
        work = sorted(set(work) | {inserted})


def subtract_indices_safe(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x - y for x, y in zip(a, b))


def cone_contains(cone: JanetCone, mu: MultiIndex) -> bool:
    if not dominates(mu, cone.generator):
        return False
    gap = subtract_indices_safe(mu, cone.generator)
    return all(e == 0 or i in cone.multiplicative for i, e in enumerate(gap))


def omega_janet(spec: LeaderSpec) -> OmegaResult:
    """Dimension polynomial from disjoint Janet cones.

    With z multiplicative axes on a cone rooted at order q, the cone holds
    C(z + l - q, z) points of order <= l, so

        omega(l) = m*C(n+l, n) - sum over cones of C(z + l - q, z)

    exact once l reaches the largest completed generator order.
    """
    n = spec.num_derivations
    cones: list[JanetCone] = []
    for j, gens in enumerate(spec.generators):
        cones.extend(janet_complete(gens, n, indeterminate=j))
    bound = max((index_order(c.generator) for c in cones), default=0)
    values = []
    for point in range(n + 1):
        free = spec.num_indeterminates * math.comb(point + n, n)
        for cone in cones:
            z = len(cone.multiplicative)
            free -= binomial_value(point - index_order(cone.generator), z)
        values.append(free)
    return OmegaResult(NumericalPolynomial.from_values(values), bound, tuple(cones))


def omega(chain: DiffChain, subset_limit: int = DEFAULT_SUBSET_LIMIT) -> OmegaResult:
    """Dimension polynomial of a validated chain.

    The Janet route always runs; when every generator group is small enough
    the inclusion-exclusion route runs as well and the two polynomials must
    agree coefficientwise.
    """
    spec = normalize_leaders(chain)
    janet_result = omega_janet(spec)
    if all(len(gens) <= subset_limit for gens in spec.generators):
        other = omega_incl_excl(spec, subset_limit)
        if other.omega != janet_result.omega:
            raise InternalDisagreementError(
                f"inclusion-exclusion gave {other.omega!r}, "
                f"Janet cones gave {janet_result.omega!r}"
            )
    return janet_result
