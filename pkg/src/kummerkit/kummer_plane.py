"""
The Kummer plane over F_p: six lines tangent to the conic x1^2 = x0 x2 and
their fifteen pairwise intersection points.

Line ``L_i`` is the tangent at (1 : l_i : l_i^2), i.e.
``l_i^2 x0 - 2 l_i x1 + x2 = 0``, and ``q_ij = (1 : (l_i + l_j)/2 : l_i l_j)``.
Lines and points are indexed from 1, matching the usual L_1..L_6, q_ij labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .errors import ConsistencyError, InvalidInput
from .exact_algebra import GF, FieldElement, check_odd_prime

Point = tuple  # projective triple of FieldElements, first nonzero entry 1
Line = tuple   # coefficient triple (a, b, c) of a x0 + b x1 + c x2
PAIRS = tuple(combinations(range(1, 7), 2))


def normalize_point(P: Sequence[FieldElement]) -> Point:
    for x in P:
        if x:
            inv = 1 / x
            return tuple(y * inv for y in P)
    raise InvalidInput("(0 : 0 : 0) is not a projective point")


def on_line(P: Point, L: Line) -> bool:
    return L[0] * P[0] + L[1] * P[1] + L[2] * P[2] == 0


def conic_form(P: Point):
    """Value of x1^2 - x0 x2 at P."""
    return P[1] * P[1] - P[0] * P[2]


def line_basis(L: Line) -> tuple[Point, Point]:
    """Two distinct points spanning the line L."""
    a, b, c = L
    zero = a * 0
    one = zero + 1
    if c:
        return (one, zero, -a / c), (zero, one, -b / c)
    if b:
        return (one, -a / b, zero), (zero, zero, one)
    if a:
        return (zero, one, zero), (zero, zero, one)
    raise InvalidInput("zero linear form")


@dataclass(frozen=True)
class WeierstrassSet:
    p: int
    lambdas: tuple

    def __post_init__(self):
        check_odd_prime(self.p)
        F = GF(self.p)
        lams = tuple(F(x) for x in self.lambdas)
        if len(lams) != 6:
            raise InvalidInput(f"need six Weierstrass values, got {len(lams)}")
        if len(set(lams)) != 6:
            raise InvalidInput("Weierstrass values must be pairwise distinct")
        object.__setattr__(self, "lambdas", lams)


@dataclass(frozen=True)
class KummerPlaneConfig:
    p: int
    lambdas: tuple
    lines: dict            # i -> Line
    points: dict           # (i, j), i < j -> Point
    torsion_labels: dict   # (i, j) -> label; the pair itself stands in for the torsion point
    degeneracies: list = field(default_factory=list)

    conic = "x1^2 - x0*x2"

    def point(self, i: int, j: int) -> Point:
        return self.points[(min(i, j), max(i, j))]

    @property
    def degenerate(self) -> bool:
        return bool(self.degeneracies)


def _line(lam: FieldElement) -> Line:
    return (lam * lam, -2 * lam, lam * 0 + 1)


def _point(li: FieldElement, lj: FieldElement) -> Point:
    half = 1 / (li * 0 + 2)
    return normalize_point((li * 0 + 1, (li + lj) * half, li * lj))


def build_plane(w: WeierstrassSet) -> KummerPlaneConfig:
    lams = w.lambdas
    lines = {i + 1: _line(l) for i, l in enumerate(lams)}
    points = {(i, j): _point(lams[i - 1], lams[j - 1]) for i, j in PAIRS}
    cfg = KummerPlaneConfig(
        p=w.p,
        lambdas=lams,
        lines=lines,
        points=points,
        torsion_labels={pair: pair for pair in PAIRS},
    )
    for i in lines:
        tangency_certificate(cfg, i)
    for (i, j), P in points.items():
        if not (on_line(P, lines[i]) and on_line(P, lines[j])):
            raise ConsistencyError("incidence", f"q_{i}{j} is off L_{i} or L_{j}")
    cfg.degeneracies.extend(find_degeneracies(lines, points))
    return cfg


def find_degeneracies(lines: dict, points: dict) -> list[dict]:
    """Coincident points and extra incidences among the q_ij."""
    out = []
    seen: dict = {}
    for pair, P in points.items():
        if P in seen:
            out.append({"kind": "coincident", "pairs": [list(seen[P]), list(pair)]})
        else:
            seen[P] = pair
        extra = [k for k, L in lines.items() if k not in pair and on_line(P, L)]
        if extra:
            out.append({"kind": "extra-incidence", "pair": list(pair), "lines": extra})
    return out


def incidence_report(cfg: KummerPlaneConfig) -> dict:
    """For each q_ij, the lines through it."""
    table = {pair: [k for k, L in cfg.lines.items() if on_line(P, L)]
             for pair, P in cfg.points.items()}
    return {
        "incidences": table,
        "generic": all(len(v) == 2 for v in table.values()) and not cfg.degenerate,
        "degeneracies": list(cfg.degeneracies),
    }


def restricted_conic_discriminant(L: Line):
    """Discriminant of x1^2 - x0 x2 restricted to the line L.

    With L spanned by P, Q the restriction is A s^2 + B s t + C t^2; the line
    is tangent exactly when B^2 - 4AC vanishes.
    """
    P, Q = line_basis(L)
    A = conic_form(P)
    C = conic_form(Q)
    B = 2 * P[1] * Q[1] - P[0] * Q[2] - Q[0] * P[2]
    return B * B - 4 * A * C


def tangency_certificate(cfg: KummerPlaneConfig, i: int) -> Point:
    """Contact point (1 : l_i : l_i^2) of L_i with the conic, checked."""
    if i not in cfg.lines:
        raise InvalidInput(f"line index must be in 1..6, got {i}")
    lam = cfg.lambdas[i - 1]
    contact = (lam * 0 + 1, lam, lam * lam)
    L = cfg.lines[i]
    if restricted_conic_discriminant(L) != 0:
        raise ConsistencyError("tangency", f"L_{i} is not tangent to the conic")
    if not on_line(contact, L) or conic_form(contact) != 0:
        raise ConsistencyError("tangency", f"contact point of L_{i} is off L_{i} or the conic")
    return contact


def plane_to_json(cfg: KummerPlaneConfig) -> dict:
    ints = lambda t: [x.value for x in t]
    report = incidence_report(cfg)
    return {
        "p": cfg.p,
        "lambdas": ints(cfg.lambdas),
        "conic": cfg.conic,
        "lines": {f"L{i}": ints(L) for i, L in cfg.lines.items()},
        "points": {f"q{i}{j}": ints(P) for (i, j), P in cfg.points.items()},
        "incidences": {f"q{i}{j}": v for (i, j), v in report["incidences"].items()},
        "tangency": {f"L{i}": ints(tangency_certificate(cfg, i)) for i in cfg.lines},
        "degenerate": cfg.degenerate,
        "degeneracies": cfg.degeneracies,
    }
