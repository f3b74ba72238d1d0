"""Ratio certificates: exact integer statements a solver proves about its output."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from .errors import CertificateViolationError


@dataclass(frozen=True)
class RatioCertificate:
    """A solver's claim about one instance, checkable in exact arithmetic.

    The certified inequality is den * tree_weight >= num * upper_bound with
    ratio = (num, den); upper_bound is a proven upper bound on the optimum.
    """

    tree_weight: int
    upper_bound: int
    ratio: tuple[int, int]
    optimum: Optional[int] = None
    algorithm: str = ""

    def holds(self) -> bool:
        num, den = self.ratio
        if den <= 0 or num < 0:
            return False
        if den * self.tree_weight < num * self.upper_bound:
            return False
        if self.optimum is not None:
            if self.optimum > self.upper_bound or self.tree_weight > self.optimum:
                return False
        return True

    def check(self) -> "RatioCertificate":
        if not self.holds():
            raise CertificateViolationError(
                f"certificate violated: w(T)={self.tree_weight}, "
                f"bound={self.upper_bound}, ratio={self.ratio[0]}/{self.ratio[1]}, "
                f"opt={self.optimum}, algorithm={self.algorithm}")
        return self

    def achieved_ratio(self) -> tuple[int, int]:
        """Achieved tree_weight / upper_bound as a reduced integer pair."""
        if self.upper_bound == 0:
            return (0, 1) if self.tree_weight == 0 else (1, 1)
        d = gcd(self.tree_weight, self.upper_bound)
        return (self.tree_weight // d, self.upper_bound // d)
