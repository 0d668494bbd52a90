"""
Boundary coefficients of a rational function on an arithmetic surface whose
special fiber is Q1 + Q2 + (chain E_1..E_r).

The vertical part of div(f) is pinned down by ``(div f . D) = 0`` for every
vertical D: with S the intersection matrix of the fiber components and h the
intersections of the horizontal divisor with them, the coefficient vector x
solves ``S x = -h``. It is unique up to the fiber itself (the kernel of S,
spanned by the multiplicity vector), which we remove by setting the Q2
coefficient to zero.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    ConsistencyError,
    DegenerateGraph,
    InfeasibleGraph,
    InvalidInput,
    NoSolution,
)
from .exact_algebra import ExactMatrix, solve_exact

CHAIN_SELF_INTERSECTION = -1  # as listed for the exceptional chain


@dataclass(frozen=True)
class SpecialFiberGraph:
    labels: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    mult: tuple[int, ...]
    conflicts: tuple = field(default=(), compare=False)

    def __post_init__(self):
        n = len(self.labels)
        if n < 3:
            raise InvalidInput("need Q1, Q2 and at least one exceptional curve")
        if len(self.gram) != n or any(len(r) != n for r in self.gram):
            raise InvalidInput("gram matrix shape does not match labels")
        if len(self.mult) != n:
            raise InvalidInput("multiplicity vector length does not match labels")
        if any(m <= 0 for m in self.mult):
            raise InvalidInput("fiber multiplicities must be positive")
        for i in range(n):
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise InvalidInput(f"gram matrix not symmetric at ({i}, {j})")
                if i != j and self.gram[i][j] < 0:
                    raise InvalidInput("distinct components must meet non-negatively")
        residual = self.matrix.apply(self.mult)
        if any(residual):
            raise InfeasibleGraph(f"fiber relation S*mu = 0 fails: {[str(x) for x in residual]}")
        kdim = len(self.matrix.kernel())
        if kdim != 1:
            raise DegenerateGraph(f"kernel of the intersection matrix has dimension {kdim}")

    @property
    def matrix(self) -> ExactMatrix:
        return ExactMatrix(self.gram)

    @property
    def r(self) -> int:
        return len(self.labels) - 2

    @property
    def q12(self) -> int:
        return self.gram[0][1]

    @property
    def q1_self(self) -> int:
        return self.gram[0][0]

    def follows_bullet_pattern(self) -> bool:
        """E_r meets each Q_i once; no other chain curve meets them."""
        r = self.r
        return all(self.gram[i][2 + j] == (1 if j == r - 1 else 0)
                   for i in (0, 1) for j in range(r))

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "gram": [list(r) for r in self.gram],
                "mult": list(self.mult), "conflicts": list(self.conflicts)}


def default_labels(r: int) -> tuple[str, ...]:
    return ("Q1", "Q2") + tuple(f"E{j}" for j in range(1, r + 1))


def default_multiplicities(r: int) -> tuple[int, ...]:
    """(1, 1, 2, 4, ..., 2r): keeps E_r^2 = -1 with -2 curves before it."""
    return (1, 1) + tuple(2 * j for j in range(1, r + 1))


def _derived_diagonal(gram, mult, i):
    off = sum(gram[i][j] * mult[j] for j in range(len(mult)) if j != i)
    if off % mult[i]:
        return None
    return -off // mult[i]


def build_default_graph(r: int, q12: int, mult: Sequence[int] | None = None,
                        strict: bool = False) -> SpecialFiberGraph:
    """Fiber graph with the standard chain adjacency and derived self-intersections.

    Q1^2 and Q2^2 always come from the fiber relation. Each E_j keeps
    self-intersection -1 when that is compatible with ``mult``; otherwise the
    derived value is used and the clash is recorded in ``conflicts`` (or
    raised, with ``strict``).
    """
    if r < 1:
        raise InvalidInput("the chain needs at least one exceptional curve")
    if q12 < 0:
        raise InvalidInput("Q1.Q2 must be non-negative")
    mu = tuple(default_multiplicities(r) if mult is None else (int(m) for m in mult))
    n = r + 2
    if len(mu) != n:
        raise InvalidInput(f"multiplicity vector must have length {n}")
    if any(m <= 0 for m in mu):
        raise InvalidInput("fiber multiplicities must be positive")
    gram = [[0] * n for _ in range(n)]
    gram[0][1] = gram[1][0] = q12
    for j in range(r):
        e = 2 + j
        gram[e][e] = CHAIN_SELF_INTERSECTION
        if j + 1 < r:
            gram[e][e + 1] = gram[e + 1][e] = 1
    last = n - 1
    for i in (0, 1):
        gram[i][last] = gram[last][i] = 1

    labels = default_labels(r)
    conflicts = []
    for e in range(2, n):
        row = sum(gram[e][j] * mu[j] for j in range(n))
        if row == 0:
            continue
        derived = _derived_diagonal(gram, mu, e)
        if derived is None:
            raise InfeasibleGraph(f"no integral self-intersection for {labels[e]} with mult {mu}")
        conflicts.append({"component": labels[e], "listed": CHAIN_SELF_INTERSECTION,
                          "derived": derived})
        gram[e][e] = derived
    for i in (0, 1):
        derived = _derived_diagonal(gram, mu, i)
        if derived is None:
            raise InfeasibleGraph(f"no integral self-intersection for {labels[i]} with mult {mu}")
        gram[i][i] = derived
    if conflicts and strict:
        raise InfeasibleGraph(f"fiber relation forces {conflicts}")
    return SpecialFiberGraph(labels, tuple(map(tuple, gram)), mu, tuple(conflicts))


def graph_from_json(text: str) -> SpecialFiberGraph:
    data = json.loads(text)
    try:
        labels, gram, mult = data["labels"], data["gram"], data["mult"]
    except (KeyError, TypeError) as exc:
        raise InvalidInput("gram file needs labels, gram and mult") from exc
    return SpecialFiberGraph(tuple(labels), tuple(tuple(int(x) for x in r) for r in gram),
                             tuple(int(m) for m in mult))


def default_horizontal(g: SpecialFiberGraph) -> tuple[int, ...]:
    """Horizontal divisor meets Q1 with +1, Q2 with -1, the chain not at all."""
    return (1, -1) + (0,) * g.r


@dataclass(frozen=True)
class BoundarySolution:
    labels: tuple[str, ...]
    coeffs: tuple[Fraction, ...]
    kernel: tuple[int, ...]

    @property
    def a(self) -> Fraction:
        return self.coeffs[0]

    @property
    def b(self) -> Fraction:
        return self.coeffs[1]

    @property
    def c(self) -> tuple[Fraction, ...]:
        return self.coeffs[2:]


def normalize_gauge(coeffs: Sequence, mult: Sequence[int], at: int = 1) -> tuple[Fraction, ...]:
    """Subtract the multiple of the fiber that zeroes coefficient ``at``."""
    t = Fraction(coeffs[at]) / mult[at]
    return tuple(Fraction(x) - t * m for x, m in zip(coeffs, mult))


def solve_boundary(g: SpecialFiberGraph, h: Sequence[int] | None = None,
                   normalize_at: int = 1) -> BoundarySolution:
    if h is None:
        h = default_horizontal(g)
    h = tuple(Fraction(x) for x in h)
    if len(h) != len(g.labels):
        raise InvalidInput("horizontal data length does not match components")
    if not 0 <= normalize_at < len(g.labels):
        raise InvalidInput("normalization index out of range")
    S = g.matrix
    x, kernel = solve_exact(S, [-v for v in h])
    if x is None:
        raise NoSolution("no rational function with this horizontal divisor exists on this model")
    if len(kernel) != 1:
        raise DegenerateGraph(f"kernel dimension {len(kernel)}")
    k = kernel[0]
    ratio = next(Fraction(kv) / m for kv, m in zip(k, g.mult) if kv)
    if any(Fraction(kv) != ratio * m for kv, m in zip(k, g.mult)):
        raise ConsistencyError("kernel-is-fiber", "kernel is not spanned by the multiplicity vector")
    coeffs = normalize_gauge(x, g.mult, normalize_at)
    residual = [a + b for a, b in zip(S.apply(coeffs), h)]
    if any(residual):
        raise ConsistencyError("boundary-residual", str(residual))
    return BoundarySolution(g.labels, coeffs, g.mult)


def a_from_intersections(q12: int, q1_self: int) -> Fraction:
    """a = 2 / ((Q1.Q2) - (Q1.Q1)), from the Q1 and Q2 equations with b = 0."""
    denom = q12 - q1_self
    if denom == 0:
        raise DegenerateGraph("Q1.Q2 equals Q1.Q1; the coefficient a is not finite")
    return Fraction(2, denom)


def closed_form_a(g: SpecialFiberGraph) -> Fraction:
    return a_from_intersections(g.q12, g.q1_self)


def decomposable_boundary(valuation: int, label: str) -> dict:
    """Boundary of (D, a) for a constant a: ord_p(a) times the special fiber of D."""
    return {label: valuation} if valuation else {}


def pushforward(divisor: dict, mapping: dict) -> dict:
    out: Counter = Counter()
    for pt, m in divisor.items():
        out[mapping.get(pt, pt)] += m
    return {k: v for k, v in out.items() if v}


def verify_cocycle(terms: Sequence[tuple]) -> tuple[bool, dict]:
    """Sum the divisors of (curve, divisor) terms; True iff they cancel."""
    total: Counter = Counter()
    for _curve, divisor in terms:
        items = divisor.items() if isinstance(divisor, dict) else divisor
        for pt, m in items:
            total[pt] += m
    residue = {k: v for k, v in total.items() if v}
    return not residue, residue
