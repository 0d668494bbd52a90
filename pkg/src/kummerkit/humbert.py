"""
Humbert invariants and the four-case (I-IV) classification of a discriminant,
with the curve-degree, torsion-passage and line-intersection counts that go
with each case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput

CASES = ("I", "II", "III", "IV")
K_VALUES = (4, 6, 8, 10, 12)


def euler_characteristic(self_intersection: int) -> Fraction:
    """Riemann-Roch on an abelian surface: chi(L) = L^2 / 2."""
    return Fraction(self_intersection, 2)


# chi(L0) = 1 for a principal polarization, so L0^2 = 2
L0_SELF_INTERSECTION = 2
# degree of the principal-part class on the Kummer surface
F0_SELF_INTERSECTION = 4


@dataclass(frozen=True)
class PolarizedLatticeVector:
    dot_with_L0: int
    self_int: int


def humbert_invariant(v: PolarizedLatticeVector) -> int:
    return v.dot_with_L0 ** 2 - 2 * v.self_int


def case_formula(case: str, d: int, k: int) -> int:
    if case == "I":
        return 8 * d * d + 9 - 2 * k
    if case == "II":
        return 8 * d * (d + 1) + 9 - 2 * k
    if case == "III":
        return 8 * d * d + 8 - 2 * k
    if case == "IV":
        return 8 * d * (d + 1) + 12 - 2 * k
    raise InvalidInput(f"unknown case {case!r}")


@dataclass(frozen=True, order=True)
class HumbertClass:
    delta: int
    case: str
    d: int
    k: int

    def __post_init__(self):
        if self.case not in CASES:
            raise InvalidInput(f"case must be one of {CASES}, got {self.case!r}")
        if self.d < 1:
            raise InvalidInput(f"d must be >= 1, got {self.d}")
        if self.k not in K_VALUES:
            raise InvalidInput(f"k must be one of {K_VALUES}, got {self.k}")
        if self.delta <= 0:
            raise InvalidInput(f"({self.case}, d={self.d}, k={self.k}) has non-positive invariant {self.delta}")
        if case_formula(self.case, self.d, self.k) != self.delta:
            raise InvalidInput(
                f"({self.case}, d={self.d}, k={self.k}) gives "
                f"{case_formula(self.case, self.d, self.k)}, not {self.delta}")

    @classmethod
    def of(cls, case: str, d: int, k: int) -> "HumbertClass":
        return cls(case_formula(case, d, k), case, d, k)


def classify_delta(delta: int) -> list[HumbertClass]:
    """Every (case, d, k) whose formula evaluates to ``delta``.

    The smallest value any case takes at a given d is 8d^2 - 16 (case III,
    k = 12), so d can stop once that exceeds delta.
    """
    if delta <= 0:
        raise InvalidInput(f"delta must be positive, got {delta}")
    out = []
    d = 1
    while 8 * d * d - 16 <= delta:
        for case in CASES:
            for k in K_VALUES:
                if case_formula(case, d, k) == delta:
                    out.append(HumbertClass(delta, case, d, k))
        d += 1
    out.sort(key=lambda h: (CASES.index(h.case), h.d, h.k))
    return out


def sum_bundle_exponent(h: HumbertClass) -> int:
    if h.d < 1:
        raise InvalidInput("d must be >= 1")
    return 4 * h.d + 1


def expected_degree(h: HumbertClass) -> int:
    return 2 * h.d if h.case in ("I", "III") else 2 * h.d + 1


def torsion_budget(h: HumbertClass) -> int:
    return h.k - 1 if h.case in ("I", "III") else h.k


def line_intersection_total(h: HumbertClass) -> int:
    return 12 * h.d if h.case in ("I", "III") else 12 * h.d + 6


def case_I_exponents(d: int, case: str = "I") -> tuple[tuple[int, int], tuple[int, int]]:
    """(L0, L_delta) exponents of the two lifted curves; only known in case I."""
    if case != "I":
        raise InvalidInput(f"line-bundle exponents unspecified for case {case}; only case I is determined")
    if d < 1:
        raise InvalidInput("d must be >= 1")
    return (2 * d, 1), (2 * d + 1, -1)


def lifted_degree_check(h: HumbertClass) -> bool:
    """deg(Q1 + Q2) two ways: N/2 * F0^2 = 2N against (L0^(4d+1) . L0) = 8d + 2."""
    N = sum_bundle_exponent(h)
    return Fraction(N, 2) * F0_SELF_INTERSECTION == (4 * h.d + 1) * L0_SELF_INTERSECTION


def class_to_json(h: HumbertClass) -> dict:
    out = {
        "delta": h.delta,
        "case": h.case,
        "d": h.d,
        "k": h.k,
        "N": sum_bundle_exponent(h),
        "degree": expected_degree(h),
        "torsion_budget": torsion_budget(h),
        "line_total": line_intersection_total(h),
    }
    if h.case == "I":
        out["exponents"] = [list(e) for e in case_I_exponents(h.d)]
    else:
        out["note"] = "N = 4d+1 verified for case I only"
    return out


def scaling_family(delta: int, m_max: int) -> dict[int, list[HumbertClass]]:
    if delta <= 0 or m_max < 1:
        raise InvalidInput("need delta > 0 and m_max >= 1")
    return {m: classify_delta(m * m * delta) for m in range(1, m_max + 1)}
