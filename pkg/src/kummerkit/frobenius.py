"""
Point counts and Frobenius data of genus-2 curves y^2 = f(x) over F_p.

The characteristic polynomial of Frobenius on the Jacobian is written

    T^4 - s1 T^3 + s2 T^2 - p s1 T + p^2,

so that #C(F_p) = p + 1 - s1 and #C(F_{p^2}) = p^2 + 1 - (s1^2 - 2 s2).
Counting is exhaustive over x; the inner loop is vectorised with integer
numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Optional

import numpy as np

from .errors import InvalidInput
from .exact_algebra import (
    GF,
    UniPoly,
    check_odd_prime,
    is_squarefree,
    least_nonsquare,
    parse_poly,
)

MAX_FIELD_SIZE = 10**8
_BLOCK = 1 << 20


@dataclass(frozen=True)
class Genus2Curve:
    p: int
    f: UniPoly

    def __post_init__(self):
        check_odd_prime(self.p)
        if self.f.is_zero() or any(c.p != self.p for c in self.f.coeffs):
            raise InvalidInput(f"f must be a nonzero polynomial over F_{self.p}")
        if self.f.degree not in (5, 6):
            raise InvalidInput(f"genus-2 model needs deg f in (5, 6), got {self.f.degree}")
        if not is_squarefree(self.f):
            raise InvalidInput("f is not square-free; the model is singular")

    @classmethod
    def from_text(cls, p: int, text: str) -> "Genus2Curve":
        return cls(p, parse_poly(text, p))

    @property
    def int_coeffs(self) -> list[int]:
        return [c.value for c in self.f.coeffs]

    def twist(self, c: int | None = None) -> "Genus2Curve":
        """Quadratic twist y^2 = c f(x); defaults to the least nonsquare."""
        if c is None:
            c = least_nonsquare(self.p)
        return Genus2Curve(self.p, self.f * GF(self.p)(c))


def _square_table(p: int) -> np.ndarray:
    chi = np.full(p, -1, dtype=np.int8)
    xs = np.arange(p, dtype=np.int64)
    chi[(xs * xs) % p] = 1
    chi[0] = 0
    return chi


def _count_affine_fp(coeffs, p, chi) -> int:
    total = 0
    for start in range(0, p, _BLOCK):
        xs = np.arange(start, min(p, start + _BLOCK), dtype=np.int64)
        acc = np.zeros_like(xs)
        for c in reversed(coeffs):
            acc = (acc * xs + c) % p
        total += xs.size + int(chi[acc].sum(dtype=np.int64))
    return total


def _count_affine_fp2(coeffs, p, chi) -> int:
    # F_{p^2} = F_p[t]/(t^2 - c); z = u + v t is a square iff its norm
    # u^2 - c v^2 is a square in F_p.
    c = least_nonsquare(p)
    a = np.arange(p, dtype=np.int64)
    rows = max(1, _BLOCK // p)
    total = 0
    for b0 in range(0, p, rows):
        b = np.arange(b0, min(p, b0 + rows), dtype=np.int64)[:, None]
        A = np.broadcast_to(a, (b.shape[0], p))
        B = np.broadcast_to(b, (b.shape[0], p))
        u = np.zeros(A.shape, dtype=np.int64)
        v = np.zeros(A.shape, dtype=np.int64)
        for coef in reversed(coeffs):
            u, v = ((u * A) % p + c * ((v * B) % p) + coef) % p, ((u * B) % p + (v * A) % p) % p
        norm = ((u * u) % p - c * ((v * v) % p)) % p
        total += A.size + int(chi[norm].sum(dtype=np.int64))
    return total


def count_points(C: Genus2Curve, k: int = 1) -> int:
    """#C(F_{p^k}) on the smooth projective model, k in (1, 2)."""
    if k not in (1, 2):
        raise InvalidInput("only k = 1 or k = 2 is supported")
    p = C.p
    if p ** k > MAX_FIELD_SIZE:
        raise InvalidInput(f"p^{k} = {p ** k} exceeds the desk-scale bound {MAX_FIELD_SIZE}")
    chi = _square_table(p)
    coeffs = C.int_coeffs
    if k == 1:
        affine = _count_affine_fp(coeffs, p, chi)
    else:
        affine = _count_affine_fp2(coeffs, p, chi)
    if C.f.degree == 5:
        infinity = 1
    elif k == 2:
        infinity = 2  # every element of F_p is a square in F_{p^2}
    else:
        infinity = 1 + int(chi[coeffs[-1]])
    return affine + infinity


@dataclass(frozen=True)
class RMDiscriminant:
    disc: int
    status: str  # "rm", "split" or "none"
    fundamental: Optional[int] = None
    squarefree_core: Optional[int] = None

    def to_json(self):
        if self.status == "split":
            value = "split"
        elif self.status == "none":
            value = "none"
        else:
            value = self.disc
        return {"disc": self.disc, "value": value, "status": self.status,
                "fundamental": self.fundamental, "field": self.squarefree_core}


@dataclass(frozen=True)
class FrobeniusSummary:
    p: int
    n1: int
    n2: int
    s1: int
    s2: int

    @property
    def ordinary(self) -> bool:
        return is_ordinary(self)

    @property
    def charpoly(self) -> tuple[int, ...]:
        """Ascending integer coefficients of the Frobenius polynomial."""
        p, s1, s2 = self.p, self.s1, self.s2
        return (p * p, -p * s1, s2, -s1, 1)

    def predicted_counts(self) -> tuple[int, int]:
        p, s1, s2 = self.p, self.s1, self.s2
        return p + 1 - s1, p * p + 1 - (s1 * s1 - 2 * s2)


def weil_ok(p: int, s1: int, n2: int) -> bool:
    # |s1| <= 4 sqrt(p) and |n2 - (p^2+1)| <= 4p, in integers
    return s1 * s1 <= 16 * p and abs(n2 - (p * p + 1)) <= 4 * p


def frobenius_summary(n1: int, n2: int, p: int) -> FrobeniusSummary:
    check_odd_prime(p)
    s1 = p + 1 - n1
    if not weil_ok(p, s1, n2):
        raise InvalidInput(f"counts n1={n1}, n2={n2} violate the genus-2 Weil bounds for p={p}")
    twice = n2 - p * p - 1 + s1 * s1
    if twice % 2:
        raise InvalidInput(f"counts n1={n1}, n2={n2} give a non-integral s2")
    return FrobeniusSummary(p=p, n1=n1, n2=n2, s1=s1, s2=twice // 2)


def summarize_curve(C: Genus2Curve) -> FrobeniusSummary:
    return frobenius_summary(count_points(C, 1), count_points(C, 2), C.p)


def is_ordinary(s: FrobeniusSummary) -> bool:
    return s.s2 % s.p != 0


def squarefree_part(n: int) -> int:
    """Signed square-free kernel of a nonzero integer."""
    if n == 0:
        raise InvalidInput("square-free part of 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    core, f = 1, 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        if e % 2:
            core *= f
        f += 1
    return sign * core * n


def fundamental_discriminant(n: int) -> int:
    d = squarefree_part(n)
    return d if d % 4 == 1 else 4 * d


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def rm_discriminant(s: FrobeniusSummary) -> RMDiscriminant:
    """Discriminant of T^2 - s1 T + (s2 - 2p), the min. poly of pi + p/pi."""
    disc = s.s1 * s.s1 - 4 * s.s2 + 8 * s.p
    if disc < 0:
        return RMDiscriminant(disc, "none")
    if _is_square(disc):  # includes 0: a repeated real root is still a Weil polynomial
        return RMDiscriminant(disc, "split")
    return RMDiscriminant(disc, "rm", fundamental_discriminant(disc), squarefree_part(disc))


def classify_reduction(s: FrobeniusSummary) -> tuple[str, Optional[int]]:
    """One of supersingular-candidate, split, ordinary-with-RM, non-ordinary, inconsistent.

    ``non-ordinary`` covers p | s2 with p not dividing s1 (p-rank one).
    """
    p = s.p
    if s.s1 % p == 0 and s.s2 % p == 0:
        return "supersingular-candidate", None
    rm = rm_discriminant(s)
    if rm.status == "split":
        return "split", None
    if rm.status == "none":
        return "inconsistent", None
    if is_ordinary(s):
        return "ordinary-with-RM", rm.disc
    return "non-ordinary", rm.disc
