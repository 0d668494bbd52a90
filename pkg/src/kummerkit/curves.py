"""
Plane curves on the Kummer plane: linear systems through the points q_ij,
contact multiplicities with the lines L_i, the Humbert conic search and the
configuration count checks for the lifted curve.

Point conditions are linear in the curve coefficients. A point of
multiplicity mu gives mu(mu+1)/2 conditions, the vanishing of every Hasse
derivative of order < mu in an affine chart around the point (Hasse rather
than ordinary derivatives so small characteristics behave). Tangency is not
linear and is checked afterwards on the univariate restriction to a line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional, Sequence

from .errors import ConsistencyError, DegenerateConfiguration, InvalidInput
from .exact_algebra import (
    GF,
    ExactMatrix,
    FieldElement,
    UniPoly,
    poly_gcd,
    poly_powmod,
    roots_mod_p,
    sqrt_mod,
    squarefree_decomposition,
)
from .humbert import (
    HumbertClass,
    expected_degree,
    line_intersection_total,
    torsion_budget,
)
from .kummer_plane import PAIRS, KummerPlaneConfig, Line, Point, line_basis, normalize_point

MAX_DEGREE = 6
SINGULAR_SEARCH_MAX_P = 1000


def monomials(m: int) -> list[tuple[int, int, int]]:
    """Exponents of degree-m monomials in x0, x1, x2, graded-lex (x0^m first)."""
    return [(a, b, m - a - b) for a in range(m, -1, -1) for b in range(m - a, -1, -1)]


@dataclass(frozen=True)
class PlaneCurve:
    p: int
    degree: int
    coeffs: tuple

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidInput("degree must be >= 1")
        F = GF(self.p)
        cs = tuple(F(c) for c in self.coeffs)
        if len(cs) != len(monomials(self.degree)):
            raise InvalidInput(f"degree {self.degree} needs {len(monomials(self.degree))} coefficients")
        lead = next((c for c in cs if c), None)
        if lead is None:
            raise InvalidInput("the zero form is not a curve")
        inv = 1 / lead
        object.__setattr__(self, "coeffs", tuple(c * inv for c in cs))

    def terms(self):
        return [(e, c) for e, c in zip(monomials(self.degree), self.coeffs) if c]

    def __call__(self, P: Sequence) -> FieldElement:
        acc = GF(self.p).zero
        for (a, b, c), coef in self.terms():
            acc = acc + coef * (P[0] ** a) * (P[1] ** b) * (P[2] ** c)
        return acc

    def restrict(self, P: Point, Q: Point) -> UniPoly:
        """g(t) = c(P + t Q)."""
        F = GF(self.p)
        coords = [UniPoly([P[i], Q[i]]) for i in range(3)]
        one = UniPoly([F.one])
        powers = []
        for x in coords:
            pw = [one]
            for _ in range(self.degree):
                pw.append(pw[-1] * x)
            powers.append(pw)
        g = UniPoly([])
        for (a, b, c), coef in self.terms():
            g = g + powers[0][a] * powers[1][b] * powers[2][c] * coef
        return g

    def int_coeffs(self) -> list[int]:
        return [c.value for c in self.coeffs]


# ---------------------------------------------------------------------------
# Linear systems
# ---------------------------------------------------------------------------

def _local_coefficients(m: int, P: Point, order: int):
    """Rows expressing the coefficient of u^s v^t (s + t < order) of the
    curve written in the affine chart centred at P."""
    i = next(idx for idx, x in enumerate(P) if x)
    P = normalize_point(P)
    j, k = [idx for idx in range(3) if idx != i]
    rows = []
    for total in range(order):
        for s in range(total, -1, -1):
            t = total - s
            row = []
            for e in monomials(m):
                ej, ek = e[j], e[k]
                if s > ej or t > ek:
                    row.append(P[0] * 0)
                else:
                    row.append(P[j] ** (ej - s) * comb(ej, s) * (P[k] ** (ek - t)) * comb(ek, t))
            rows.append(row)
    return rows


def point_conditions(m: int, P: Point, mult: int = 1) -> list[list[FieldElement]]:
    if mult < 1:
        raise InvalidInput("multiplicity must be >= 1")
    return _local_coefficients(m, P, mult)


def curves_through(p: int, m: int, conditions: Sequence[tuple]) -> list[tuple]:
    """Basis of degree-m forms through the given (point, multiplicity) pairs."""
    if not 1 <= m <= MAX_DEGREE:
        raise InvalidInput(f"degree must be in 1..{MAX_DEGREE}")
    rows = []
    for P, mult in conditions:
        rows.extend(point_conditions(m, tuple(GF(p)(x) for x in P), mult))
    ncols = len(monomials(m))
    if not rows:
        F = GF(p)
        return [tuple(F.one if i == j else F.zero for i in range(ncols)) for j in range(ncols)]
    return [tuple(v) for v in ExactMatrix(rows, ncols).kernel()]


@dataclass(frozen=True)
class ConfigurationSpec:
    degree: int
    through: tuple = ()       # ((i, j), multiplicity) pairs
    tangent_to: tuple = ()    # line indices; applied by filtering


def linear_system_basis(spec: ConfigurationSpec, cfg: KummerPlaneConfig) -> list[tuple]:
    conds = []
    for pair, mult in spec.through:
        key = (min(pair), max(pair))
        if key not in cfg.points:
            raise InvalidInput(f"no point q_{key[0]}{key[1]} in the configuration")
        conds.append((cfg.points[key], mult))
    for j in spec.tangent_to:
        if j not in cfg.lines:
            raise InvalidInput(f"no line L_{j} in the configuration")
    return curves_through(cfg.p, spec.degree, conds)


# ---------------------------------------------------------------------------
# Contact with lines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ContactReport:
    degree: int
    rational: tuple            # ((point, multiplicity), ...) over F_p
    irrational: tuple          # multiplicities of the conjugate roots outside F_p
    split: Optional[str]       # "F_p", "F_p2" or None when the roots need a bigger field

    @property
    def multiplicities(self) -> list[int]:
        return [m for _, m in self.rational] + list(self.irrational)

    @property
    def total(self) -> int:
        return sum(self.multiplicities)

    @property
    def tangent(self) -> bool:
        return any(m >= 2 for m in self.multiplicities)


def _fp_roots(g: UniPoly) -> list[tuple[FieldElement, int]]:
    p = g.lead.p
    F = GF(p)
    x = UniPoly([F.zero, F.one])
    r = poly_gcd(g, poly_powmod(x, p, g) - x) if g.degree > 0 else UniPoly([F.one])
    if r.degree <= 0:
        return []
    if r.degree == 1:
        cands = [-r.coeffs[0]]
    elif r.degree == 2:
        c0, c1 = r.coeffs[0], r.coeffs[1]
        s = sqrt_mod(c1 * c1 - 4 * c0)
        cands = [(-c1 + s) / 2, (-c1 - s) / 2]
    else:
        return roots_mod_p(g)
    out = []
    for root in cands:
        lin = UniPoly([-root, F.one])
        h, mult = g, 0
        while True:
            q, rem = h.divmod(lin)
            if not rem.is_zero():
                break
            h, mult = q, mult + 1
        out.append((root, mult))
    return out


def line_contacts(c: PlaneCurve, line: Line) -> ContactReport:
    """Intersection of c with a line via the restriction to its parametrization."""
    P, Q = line_basis(tuple(GF(c.p)(x) for x in line))
    g = c.restrict(P, Q)
    if g.is_zero():
        raise DegenerateConfiguration("line is a component of the curve")
    F = GF(c.p)
    rational = []
    rest = g
    for t0, mult in _fp_roots(g):
        pt = normalize_point(tuple(P[i] + t0 * Q[i] for i in range(3)))
        rational.append((pt, mult))
        rest = rest // _pow_lin(t0, mult, F)
    if g.degree < c.degree:
        rational.append((normalize_point(Q), c.degree - g.degree))
    irrational = []
    split = "F_p"
    if rest.degree > 0:
        split = "F_p2"
        x = UniPoly([F.zero, F.one])
        for mult, factor in sorted(squarefree_decomposition(rest).items()):
            irrational.extend([mult] * factor.degree)
            if poly_powmod(x, c.p * c.p, factor) != x % factor:
                split = None
    return ContactReport(c.degree, tuple(rational), tuple(irrational), split)


def _pow_lin(t0, mult, F):
    out = UniPoly([F.one])
    lin = UniPoly([-t0, F.one])
    for _ in range(mult):
        out = out * lin
    return out


def is_tangent(c: PlaneCurve, line: Line) -> tuple[bool, list[int]]:
    report = line_contacts(c, line)
    return report.tangent, report.multiplicities


# ---------------------------------------------------------------------------
# Conics
# ---------------------------------------------------------------------------

def conic_matrix(c: PlaneCurve) -> ExactMatrix:
    if c.degree != 2:
        raise InvalidInput("not a conic")
    a00, a01, a02, a11, a12, a22 = c.coeffs
    half = 1 / GF(c.p)(2)
    return ExactMatrix([
        [a00, a01 * half, a02 * half],
        [a01 * half, a11, a12 * half],
        [a02 * half, a12 * half, a22],
    ])


def is_irreducible_conic(c: PlaneCurve) -> bool:
    return bool(conic_matrix(c).determinant())


def conic_through(p: int, points: Sequence[Point]) -> PlaneCurve:
    basis = curves_through(p, 2, [(P, 1) for P in points])
    if len(basis) != 1:
        raise DegenerateConfiguration(
            f"degenerate-five-points: conics through them form a space of dimension {len(basis)}")
    return PlaneCurve(p, 2, basis[0])


@dataclass(frozen=True)
class HumbertConicResult:
    pairs: tuple
    line: int
    conic: Optional[PlaneCurve]
    reason: str
    contacts: Optional[ContactReport] = None


def _check_choice(cfg, pairs, line_index):
    pairs = tuple((min(a, b), max(a, b)) for a, b in pairs)
    if len(pairs) != 5 or len(set(pairs)) != 5 or any(pr not in cfg.points for pr in pairs):
        raise InvalidInput("need five distinct points q_ij")
    if line_index not in cfg.lines:
        raise InvalidInput(f"line index must be in 1..6, got {line_index}")
    if any(line_index in pr for pr in pairs):
        raise InvalidInput(f"L_{line_index} passes through one of the chosen points")
    return pairs


def _humbert_check(cfg, pairs, line_index, conic):
    if not is_irreducible_conic(conic):
        return HumbertConicResult(pairs, line_index, None, "reducible")
    contacts = line_contacts(conic, cfg.lines[line_index])
    if not contacts.tangent:
        return HumbertConicResult(pairs, line_index, None, "not tangent", contacts)
    return HumbertConicResult(pairs, line_index, conic, "ok", contacts)


def find_humbert_conic(cfg: KummerPlaneConfig, five_points, line_index: int) -> HumbertConicResult:
    """Irreducible conic through five q_ij that is tangent to L_j, if there is one."""
    pairs = _check_choice(cfg, five_points, line_index)
    conic = conic_through(cfg.p, [cfg.points[pr] for pr in pairs])
    return _humbert_check(cfg, pairs, line_index, conic)


@dataclass
class ScanResult:
    hits: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)


def humbert_scan(cfg: KummerPlaneConfig, first_only: bool = False) -> ScanResult:
    """Every (5-subset of q_ij, line avoiding them) pair, in lexicographic order."""
    out = ScanResult(stats={"candidates": 0, "degenerate": 0, "reducible": 0,
                            "not tangent": 0, "ok": 0})
    for subset in combinations(PAIRS, 5):
        used = set().union(*subset)
        lines = [j for j in range(1, 7) if j not in used]
        if not lines:
            continue
        out.stats["candidates"] += len(lines)
        try:
            conic = conic_through(cfg.p, [cfg.points[pr] for pr in subset])
        except DegenerateConfiguration:
            out.stats["degenerate"] += len(lines)
            continue
        for j in lines:
            res = _humbert_check(cfg, subset, j, conic)
            out.stats[res.reason] += 1
            if res.conic is not None:
                out.hits.append(res)
                if first_only:
                    return out
    return out


# ---------------------------------------------------------------------------
# Rationality and configuration counts
# ---------------------------------------------------------------------------

def _local_jet(c: PlaneCurve, P: Point, order: int):
    rows = _local_coefficients(c.degree, P, order)
    out = []
    for row in rows:
        acc = GF(c.p).zero
        for a, b in zip(row, c.coeffs):
            acc = acc + a * b
        out.append(acc)
    return out


def projective_points(p: int):
    F = GF(p)
    for a in range(p):
        for b in range(p):
            yield (F.one, F(a), F(b))
    for b in range(p):
        yield (F.zero, F.one, F(b))
    yield (F.zero, F.zero, F.one)


def singular_points(c: PlaneCurve) -> list[tuple[Point, str]]:
    """F_p-rational singular points, labelled "node" or "other"."""
    out = []
    for P in projective_points(c.p):
        if c(P):
            continue
        jet = _local_jet(c, P, 3)
        if jet[1] or jet[2]:
            continue
        A, B, C = jet[3], jet[4], jet[5]
        out.append((P, "node" if B * B - 4 * A * C else "other"))
    return out


def rationality(c: PlaneCurve) -> str:
    """"rational", "reducible" or "rationality undetermined".

    Conics are decided by their determinant. Higher degrees count
    F_p-rational ordinary double points against the arithmetic genus.
    """
    if c.degree == 1:
        return "rational"
    if c.degree == 2:
        return "rational" if is_irreducible_conic(c) else "reducible"
    if c.p > SINGULAR_SEARCH_MAX_P:
        return "rationality undetermined"
    genus = (c.degree - 1) * (c.degree - 2) // 2
    sing = singular_points(c)
    if any(kind != "node" for _, kind in sing):
        return "rationality undetermined"
    if len(sing) == genus:
        return "rational"
    if len(sing) > genus:
        return "reducible"
    return "rationality undetermined"


@dataclass(frozen=True)
class BWReport:
    degree: int
    expected_degree: int
    degree_ok: bool
    torsion_points: tuple
    torsion_count: int
    torsion_budget: int
    torsion_ok: bool
    even_multiplicity_ok: bool
    line_total: int
    expected_line_total: int
    line_total_ok: bool
    bezout_ok: bool
    split: bool
    rationality: str

    @property
    def ok(self) -> bool:
        return self.degree_ok and self.torsion_ok and self.even_multiplicity_ok and self.line_total_ok

    def to_json(self) -> dict:
        return {
            "degree": self.degree, "expected_degree": self.expected_degree,
            "degree_ok": self.degree_ok,
            "torsion_points": [f"q{i}{j}" for i, j in self.torsion_points],
            "torsion_count": self.torsion_count, "torsion_budget": self.torsion_budget,
            "torsion_ok": self.torsion_ok, "even_multiplicity_ok": self.even_multiplicity_ok,
            "line_total": self.line_total, "expected_line_total": self.expected_line_total,
            "line_total_ok": self.line_total_ok, "bezout_ok": self.bezout_ok,
            "split": self.split, "rationality": self.rationality, "ok": self.ok,
        }


def verify_bw_configuration(c: PlaneCurve, h: HumbertClass, cfg: KummerPlaneConfig) -> BWReport:
    """Check a curve against the degree, torsion and line-contact counts of h.

    Non-torsion contacts are required to have even multiplicity; a contact
    outside F_p can never be a q_ij, so the parity check is complete even
    when a restriction does not split.
    """
    torsion = tuple(pr for pr in PAIRS if c(cfg.points[pr]) == 0)
    qset = {cfg.points[pr] for pr in torsion}
    total = 0
    even_ok = True
    split = True
    for i, L in cfg.lines.items():
        rep = line_contacts(c, L)
        total += rep.total
        split = split and rep.split is not None
        for pt, mult in rep.rational:
            if pt not in qset and mult % 2:
                even_ok = False
        if any(mult % 2 for mult in rep.irrational):
            even_ok = False
    if total != 6 * c.degree:
        raise ConsistencyError("bezout", f"line contacts sum to {total}, expected {6 * c.degree}")
    exp_deg = expected_degree(h)
    budget = torsion_budget(h)
    exp_total = line_intersection_total(h)
    return BWReport(
        degree=c.degree, expected_degree=exp_deg, degree_ok=c.degree == exp_deg,
        torsion_points=torsion, torsion_count=len(torsion), torsion_budget=budget,
        torsion_ok=len(torsion) == budget, even_multiplicity_ok=even_ok,
        line_total=total, expected_line_total=exp_total, line_total_ok=total == exp_total,
        bezout_ok=total == 6 * c.degree, split=split, rationality=rationality(c),
    )


def hit_to_json(res: HumbertConicResult, report: BWReport | None = None) -> dict:
    out = {
        "points": [f"q{i}{j}" for i, j in res.pairs],
        "line": res.line,
        "conic": res.conic.int_coeffs() if res.conic else None,
        "monomials": ["x0^%d*x1^%d*x2^%d" % e for e in monomials(2)],
        "reason": res.reason,
    }
    if report is not None:
        out["verification"] = report.to_json()
    return out
