"""Three-valued comparison outcome shared by the ranking and polynomial orders."""

import enum


class Ordering(enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"

    @staticmethod
    def of(left, right) -> "Ordering":
        """Compare two values that support < and ==."""
        if left == right:
            return Ordering.EQUAL
        return Ordering.LESS if left < right else Ordering.GREATER
