"""
delta-invariants of the germs y^2 = x^r and the fibers y^2 = prod (x - a_i)^{n_i}
of a deformation of y^2 = x^{2m}.

A deformation is admissible when its singularities carry the same total
delta-invariant, m, as the germ it deforms. Here ``r`` is always the exact
exponent: y^2 = x^{2m} has r = 2m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import InvalidInput


def delta_invariant(r: int) -> int:
    if r < 1:
        raise InvalidInput(f"germ exponent must be >= 1, got {r}")
    if r == 1:
        return 0
    return r // 2 if r % 2 == 0 else (r - 1) // 2


def genus_contribution(multiplicity_chain: list[int]) -> int:
    """Sum of m(m-1)/2 over a point and its infinitely near points."""
    if any(m < 1 for m in multiplicity_chain):
        raise InvalidInput("multiplicities must be >= 1")
    return sum(m * (m - 1) // 2 for m in multiplicity_chain)


def blowup_chain(r: int) -> list[int]:
    """Multiplicities met while resolving y^2 = x^r: each blow-up drops r by 2."""
    chain = []
    while r >= 2:
        chain.append(2)
        r -= 2
    return chain


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as non-increasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class DeformationProfile:
    parts: tuple[int, ...]
    m: int

    def __post_init__(self):
        parts = tuple(sorted(self.parts, reverse=True))
        if any(n < 1 for n in parts):
            raise InvalidInput("parts must be positive")
        if sum(parts) != 2 * self.m:
            raise InvalidInput(f"parts sum to {sum(parts)}, expected {2 * self.m}")
        object.__setattr__(self, "parts", parts)

    @property
    def total_delta(self) -> int:
        return sum(delta_invariant(n) for n in self.parts)

    @property
    def admissible(self) -> bool:
        return self.total_delta == self.m

    @property
    def all_even(self) -> bool:
        return all(n % 2 == 0 for n in self.parts)


def all_profiles(m: int) -> list[DeformationProfile]:
    if m < 1:
        raise InvalidInput(f"m must be >= 1, got {m}")
    return [DeformationProfile(parts, m) for parts in partitions(2 * m)]


def enumerate_deformations(m: int) -> list[DeformationProfile]:
    """Profiles of y^2 = x^{2m} whose total delta is conserved."""
    return [prof for prof in all_profiles(m) if prof.admissible]


@dataclass(frozen=True)
class FiberReport:
    m: int
    singularities: list  # (a_i, n_i, germ, delta)
    total_delta: int
    admissible: bool


def versal_fiber_report(F_parts: list[tuple]) -> FiberReport:
    """Singularities of y^2 = prod (x - a_i)^{n_i} and the delta balance."""
    roots = [Fraction(a) for a, _ in F_parts]
    mults = [int(n) for _, n in F_parts]
    if len(set(roots)) != len(roots):
        raise InvalidInput("root positions a_i must be pairwise distinct")
    if any(n < 1 for n in mults):
        raise InvalidInput("multiplicities must be positive")
    total = sum(mults)
    if total % 2:
        raise InvalidInput(f"sum of multiplicities {total} is odd")
    centre = sum(n * a for a, n in zip(roots, mults))
    if centre != 0:
        raise InvalidInput(f"centering violated: sum n_i a_i = {centre}")
    sing = [(a, n, f"y^2=x^{n}", delta_invariant(n)) for a, n in zip(roots, mults) if n >= 2]
    tot = sum(s[3] for s in sing)
    return FiberReport(total // 2, sing, tot, tot == total // 2)


def deformation_table(m: int) -> dict:
    profiles = all_profiles(m)
    admissible = [p for p in profiles if p.admissible]
    return {
        "m": m,
        "admissible_profiles": [list(p.parts) for p in admissible],
        "all_partitions_with_delta": [
            {"parts": list(p.parts), "delta": p.total_delta, "admissible": p.admissible}
            for p in profiles
        ],
        "theorem_check": {"all_even": all(p.all_even for p in admissible)},
    }
