"""Decide how two nested saturated ideals relate from their chains.

Given chains for ideals I (smaller) and J (larger) with I contained in J,
the dimension polynomials and per-leader degrees decide equality: equal
ideals force equal polynomials, identical leader sets, and identical leader
degrees, and under containment the larger ideal can only lower degrees.
Any reading that breaks those one-way implications contradicts the claimed
containment, which is reported rather than silently repaired.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .chains import DiffChain, InvalidChainError, membership
from .diffpoly import Derivative, derivative_text
from .numpoly import NumericalPolynomial
from .ordering import Ordering
from .dimension import omega


class RankingMismatchError(ValueError):
    """The two chains do not share one ring and ranking."""


class Relation(enum.Enum):
    EQUAL = "Equal"
    PROPERLY_CONTAINED = "ProperlyContained"
    OMEGA_DISTINCT = "OmegaDistinct-ProperlyContained"
    INPUT_CONTRADICTION = "InputContradiction"
    CONTAINMENT_UNKNOWN = "ContainmentUnknown"


class Containment(enum.Enum):
    CONTAINED = "established"
    UNKNOWN = "unknown"


@dataclass
class CompareVerdict:
    relation: Relation
    omega_smaller: NumericalPolynomial
    omega_larger: NumericalPolynomial
    leader_report: dict[Derivative, tuple[int | None, int | None]]
    degree_products: tuple[int, int]
    containment: str
    assumed_relation: Relation | None = None

    @property
    def exit_code(self) -> int:
        if self.relation is Relation.EQUAL:
            return 0
        if self.relation in (Relation.PROPERLY_CONTAINED, Relation.OMEGA_DISTINCT):
            return 1
        return 2

    def to_json_dict(self, ring=None) -> dict:
        names = ring.indeterminate_names if ring is not None else None
        report = {}
        for x in sorted(self.leader_report):
            small, large = self.leader_report[x]
            report[derivative_text(x, names)] = {
                "smaller_degree": small,
                "larger_degree": large,
            }
        return {
            "relation": self.relation.value,
            "containment": self.containment,
            "omega_smaller": self.omega_smaller.to_json_dict(),
            "omega_larger": self.omega_larger.to_json_dict(),
            "leader_report": report,
            "degree_products": list(self.degree_products),
            "assumed_relation": self.assumed_relation.value if self.assumed_relation else None,
        }


def _require_valid(chain: DiffChain) -> None:
    report = chain.validation_report()
    if not report.accepted:
        raise InvalidChainError("; ".join(report.messages))


def degree_product(chain: DiffChain) -> int:
    """Product over the chain of each element's degree in its own leader.

    A chain invariant, not an ideal invariant: two chains for the same ideal
    share it, but it is only meaningful alongside the chain that produced it.
    """
    _require_valid(chain)
    out = 1
    for elem, ld in zip(chain.elements, chain.leaders):
        out *= elem.degree_in(ld)
    return out


def containment_check(smaller: DiffChain, larger: DiffChain) -> Containment:
    """Establish I(smaller) inside I(larger) by reducing every element.

    Zero remainders prove containment; a nonzero remainder proves nothing
    either way, so the answer is then Unknown rather than a refutation.
    """
    _require_valid(smaller)
    _require_valid(larger)
    if all(membership(p, larger) for p in smaller.elements):
        return Containment.CONTAINED
    return Containment.UNKNOWN


def _leader_degrees(chain: DiffChain) -> dict[Derivative, int]:
    return {ld: elem.degree_in(ld) for elem, ld in zip(chain.elements, chain.leaders)}


def _relation_under_containment(
    omega_small: NumericalPolynomial,
    omega_large: NumericalPolynomial,
    degrees_small: dict[Derivative, int],
    degrees_large: dict[Derivative, int],
) -> Relation:
    if omega_large.compare(omega_small) is Ordering.GREATER:
        # containment forces the larger ideal's polynomial to be <= the smaller's
        return Relation.INPUT_CONTRADICTION
    if omega_small != omega_large:
        return Relation.OMEGA_DISTINCT
    if set(degrees_small) != set(degrees_large):
        # equal polynomials force equal leader sets
        return Relation.INPUT_CONTRADICTION
    if any(degrees_large[x] > degrees_small[x] for x in degrees_small):
        # the larger ideal's chain can only lower leader degrees
        return Relation.INPUT_CONTRADICTION
    if all(degrees_large[x] == degrees_small[x] for x in degrees_small):
        return Relation.EQUAL
    return Relation.PROPERLY_CONTAINED


def compare_ideals(
    smaller: DiffChain, larger: DiffChain, containment_asserted: bool = False
) -> CompareVerdict:
    """Relate I(smaller) to I(larger), assuming or establishing containment first."""
    if smaller.ranking != larger.ranking:
        raise RankingMismatchError("chains must share one ring and ranking")
    _require_valid(smaller)
    _require_valid(larger)
    omega_small = omega(smaller).omega
    omega_large = omega(larger).omega
    degrees_small = _leader_degrees(smaller)
    degrees_large = _leader_degrees(larger)
    if containment_asserted:
        containment = "asserted"
    elif containment_check(smaller, larger) is Containment.CONTAINED:
        containment = "established"
    else:
        containment = "unknown"
    ladder = _relation_under_containment(
        omega_small, omega_large, degrees_small, degrees_large
    )
    if containment == "unknown":
        relation, assumed = Relation.CONTAINMENT_UNKNOWN, ladder
    else:
        relation, assumed = ladder, None
    leader_report: dict[Derivative, tuple[int | None, int | None]] = {}
    for x in set(degrees_small) | set(degrees_large):
        leader_report[x] = (degrees_small.get(x), degrees_large.get(x))
    return CompareVerdict(
        relation=relation,
        omega_smaller=omega_small,
        omega_larger=omega_large,
        leader_report=leader_report,
        degree_products=(degree_product(smaller), degree_product(larger)),
        containment=containment,
        assumed_relation=assumed,
    )
