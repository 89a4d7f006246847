"""Differential chains: triangularity, coherence, reduction, prolongation."""

from __future__ import annotations

from dataclasses import dataclass, field

from .diffpoly import (
    ConstantPolynomialError,
    Derivative,
    DiffPoly,
    MultiIndex,
    Ranking,
    RingSpec,
    derivative_text,
    dominates,
    iter_indices,
    join_indices,
    make_derivative,
    poly_text,
    subtract_indices,
)

REGULARITY_TAG = "unverified-assumed"


class NotTriangularError(ValueError):
    """Reduction was asked to run against a chain that is not weakly triangular."""


class InvalidChainError(ValueError):
    """The chain failed validation and cannot feed the dimension machinery."""


class DiffChain:
    """Ordered finite family of non-constant differential polynomials."""

    __slots__ = ("elements", "ranking", "leaders", "_report")

    def __init__(self, elements, ranking: Ranking):
        elements = tuple(elements)
        for p in elements:
            if not isinstance(p, DiffPoly) or p.is_constant():
                raise ConstantPolynomialError(
                    "chain elements must be non-constant differential polynomials"
                )
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "ranking", ranking)
        object.__setattr__(self, "leaders", tuple(ranking.leader(p) for p in elements))
        object.__setattr__(self, "_report", None)

    def __setattr__(self, name, value):
        raise AttributeError("DiffChain is immutable")

    @property
    def ring(self) -> RingSpec:
        return self.ranking.ring

    def __len__(self):
        return len(self.elements)

    def validation_report(self) -> "ValidationReport":
        if self._report is None:
            object.__setattr__(self, "_report", validate(self))
        return self._report


@dataclass
class ReductionTrace:
    """Outcome of full pseudo-reduction.

    multipliers lists the initial/separant factors, kept factored as
    (polynomial, exponent) pairs.  combination, when tracked, lists triples
    (coefficient, mu, element index) such that

        prod(factor**e) * p  ==  remainder + sum(coeff * elem.derive_multi(mu))

    which is the membership certificate checked by the tests.
    """

    remainder: DiffPoly
    multipliers: tuple[tuple[DiffPoly, int], ...]
    combination: tuple[tuple[DiffPoly, MultiIndex, int], ...] | None = None

    def multiplier_product(self) -> DiffPoly:
        out = DiffPoly.constant(1)
        for factor, e in self.multipliers:
            out = out * factor**e
        return out

    def to_json_dict(self, names=None) -> dict:
        return {
            "remainder": poly_text(self.remainder, names),
            "multipliers": [
                {"factor": poly_text(f, names), "exponent": e} for f, e in self.multipliers
            ],
            "reduced_to_zero": self.remainder.is_zero(),
        }


@dataclass
class DeltaCheck:
    """Coherence evidence for one pair of chain elements."""

    first: int
    second: int
    delta: DiffPoly
    trace: ReductionTrace


@dataclass
class ValidationReport:
    triangular: bool
    coherent: bool
    messages: list[str] = field(default_factory=list)
    delta_checks: list[DeltaCheck] = field(default_factory=list)
    regularity_of_initials_and_separants: str = REGULARITY_TAG

    @property
    def accepted(self) -> bool:
        return self.triangular and self.coherent

    def to_json_dict(self) -> dict:
        return {
            "triangular": self.triangular,
            "coherent": self.coherent,
            "regularity_of_initials_and_separants": self.regularity_of_initials_and_separants,
            "messages": list(self.messages),
        }


def _triangularity_failures(chain: DiffChain) -> list[str]:
    names = chain.ring.indeterminate_names
    out = []
    for i, x in enumerate(chain.leaders):
        for j, y in enumerate(chain.leaders):
            if i == j:
                continue
            if x.indeterminate == y.indeterminate and dominates(x.index, y.index):
                out.append(
                    f"leader {derivative_text(x, names)} of element {i} is a "
                    f"derivative of leader {derivative_text(y, names)} of element {j}"
                )
    return out


def delta_polynomial(p: DiffPoly, q: DiffPoly, ranking: Ranking) -> DiffPoly | None:
    """Cross-derivation obstruction sep(q)*d^(t-mu) p - sep(p)*d^(t-nu) q.

    t is the componentwise max of the two leader multi-indices.  Returns
    None when the leaders live on distinct indeterminates, where no common
    derivative exists.
    """
    x, y = ranking.leader(p), ranking.leader(q)
    if x.indeterminate != y.indeterminate:
        return None
    theta = join_indices(x.index, y.index)
    lift_p = p.derive_multi(subtract_indices(theta, x.index))
    lift_q = q.derive_multi(subtract_indices(theta, y.index))
    return ranking.separant(q) * lift_p - ranking.separant(p) * lift_q


def _reducer(chain: DiffChain, x: Derivative) -> tuple[int, MultiIndex] | None:
    """Chain element whose leader divides x: ranking-minimal leader, then lowest index."""
    ranking = chain.ranking
    best = None
    for idx, ld in enumerate(chain.leaders):
        if ld.indeterminate == x.indeterminate and dominates(x.index, ld.index):
            key = (ranking.key(ld), idx)
            if best is None or key < best[0]:
                best = (key, idx, ld)
    if best is None:
        return None
    _, idx, ld = best
    return idx, subtract_indices(x.index, ld.index)


def full_pseudo_reduce(
    p: DiffPoly, chain: DiffChain, track_combination: bool = False
) -> ReductionTrace:
    """Ritt full pseudo-reduction of p by the chain.

    Repeatedly takes the highest-ranking derivative x of the remainder that
    is still reducible.  When x is a proper derivative of some leader, the
    matching prolonged element is linear in x with the separant as leading
    coefficient and x is eliminated outright; when x is itself a leader, the
    degree in x is pushed below the chain element's by ordinary
    pseudo-division, multiplying through by the initial.  No derivative
    ranked >= x is ever reintroduced, so the procedure terminates.
    """
    failures = _triangularity_failures(chain)
    if failures:
        raise NotTriangularError("; ".join(failures))
    ranking = chain.ranking
    r = p
    multipliers: list[list] = []
    combination: list[tuple[DiffPoly, MultiIndex, int]] | None = (
        [] if track_combination else None
    )
    while True:
        target = None
        for x in sorted(r.derivatives(), key=ranking.key, reverse=True):
            found = _reducer(chain, x)
            if found is None:
                continue
            idx, sigma = found
            if any(sigma) or r.degree_in(x) >= chain.elements[idx].degree_in(x):
                target = (x, idx, sigma)
                break
        if target is None:
            break
        x, idx, sigma = target
        elem = chain.elements[idx]
        if any(sigma):
            g = elem.derive_multi(sigma)
            lead = ranking.separant(elem)
            g_degree = 1
            threshold = 1
        else:
            g = elem
            lead = ranking.initial(elem)
            g_degree = elem.degree_in(x)
            threshold = g_degree
        while (d := r.degree_in(x)) >= threshold:
            top = r.as_univariate(x)[d]
            shift = DiffPoly.variable(x) ** (d - g_degree)
            r = lead * r - top * shift * g
            if multipliers and multipliers[-1][0] == lead:
                multipliers[-1][1] += 1
            else:
                multipliers.append([lead, 1])
            if combination is not None:
                combination = [(c * lead, s, i) for c, s, i in combination]
                combination.append((top * shift, sigma, idx))
    return ReductionTrace(
        remainder=r,
        multipliers=tuple((f, e) for f, e in multipliers),
        combination=tuple(combination) if combination is not None else None,
    )


def validate(chain: DiffChain) -> ValidationReport:
    """Check weak triangularity and coherence; regularity is assumed, not checked.

    Coherence asks every cross-derivation obstruction between same-
    indeterminate leaders to pseudo-reduce to zero against the whole chain.
    """
    messages = _triangularity_failures(chain)
    if messages:
        messages.append("coherence not evaluated: chain is not triangular")
        return ValidationReport(triangular=False, coherent=False, messages=messages)
    report = ValidationReport(triangular=True, coherent=True)
    for i in range(len(chain.elements)):
        for j in range(i + 1, len(chain.elements)):
            delta = delta_polynomial(chain.elements[i], chain.elements[j], chain.ranking)
            if delta is None:
                continue
            trace = full_pseudo_reduce(delta, chain)
            report.delta_checks.append(DeltaCheck(i, j, delta, trace))
            if not trace.remainder.is_zero():
                report.coherent = False
                report.messages.append(
                    f"cross-derivation obstruction of elements {i} and {j} "
                    f"leaves the nonzero remainder "
                    f"{poly_text(trace.remainder, chain.ring.indeterminate_names)}"
                )
    report.messages.append("regularity of initials and separants assumed, not verified")
    return report


def _require_valid(chain: DiffChain) -> None:
    report = chain.validation_report()
    if not report.accepted:
        raise InvalidChainError("; ".join(report.messages))


def membership(p: DiffPoly, chain: DiffChain) -> bool:
    """Zero-remainder test for membership in the saturated differential ideal."""
    _require_valid(chain)
    return full_pseudo_reduce(p, chain).remainder.is_zero()


def prolong(chain: DiffChain, max_order: int) -> list[DiffPoly]:
    """One prolonged element per derivative of a leader with order <= max_order.

    Each derivative x of a leader picks the chain element by the same policy
    as reduction and contributes that element derived up to leader x.  The
    result is ordered by the ranking of the prolonged leaders.
    """
    _require_valid(chain)
    n = chain.ring.num_derivations
    targets: list[Derivative] = []
    seen_indets = {ld.indeterminate for ld in chain.leaders}
    for j in sorted(seen_indets):
        gens = [ld.index for ld in chain.leaders if ld.indeterminate == j]
        for mu in iter_indices(n, max_order):
            if any(dominates(mu, g) for g in gens):
                targets.append(make_derivative(j, mu))
    targets.sort(key=chain.ranking.key)
    out = []
    for x in targets:
        idx, sigma = _reducer(chain, x)
        out.append(chain.elements[idx].derive_multi(sigma))
    return out
