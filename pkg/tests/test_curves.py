import random

import pytest

from kummerkit.curves import (
    ConfigurationSpec,
    PlaneCurve,
    conic_through,
    curves_through,
    find_humbert_conic,
    humbert_scan,
    is_tangent,
    line_contacts,
    linear_system_basis,
    monomials,
    rationality,
    singular_points,
    verify_bw_configuration,
)
from kummerkit.errors import DegenerateConfiguration, InvalidInput
from kummerkit.exact_algebra import GF, UniPoly
from kummerkit.frobenius import Genus2Curve, rm_discriminant, summarize_curve
from kummerkit.humbert import HumbertClass
from kummerkit.kummer_plane import WeierstrassSet, build_plane

from oracles import conic_eval_rows, conic_recheck, rank_mod_p

CONIC = (0, 0, -1, 1, 0, 0)   # x1^2 - x0 x2 in graded-lex order


def pts(p, *triples):
    F = GF(p)
    return [tuple(F(x) for x in t) for t in triples]


def test_monomial_order():
    assert monomials(2) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    assert len(monomials(6)) == 28


def test_line_through_two_points():
    basis = curves_through(11, 1, [(P, 1) for P in pts(11, (1, 0, 0), (0, 1, 0))])
    assert len(basis) == 1
    assert PlaneCurve(11, 1, basis[0]).int_coeffs() == [0, 0, 1]


@pytest.mark.parametrize("npoints", [5, 6])
def test_conics_through_random_points_match_rank_oracle(npoints):
    p = 101
    rng = random.Random(npoints)
    for _ in range(25):
        raw = [(1, rng.randrange(p), rng.randrange(p)) for _ in range(npoints)]
        rank = rank_mod_p(conic_eval_rows(raw, p), p)
        basis = curves_through(p, 2, [(P, 1) for P in pts(p, *raw)])
        assert len(basis) == 6 - rank
        if rank == npoints:     # general position
            assert len(basis) == (1 if npoints == 5 else 0)


def test_double_point_conditions():
    p = 13
    P = pts(p, (1, 2, 3))[0]
    basis = curves_through(p, 2, [(P, 2)])
    assert len(basis) == 3        # line pairs through P
    for v in basis:
        c = PlaneCurve(p, 2, v)
        assert c(P) == 0
        assert any(sp == P for sp, _ in singular_points(c))


def test_hasse_conditions_in_small_characteristic():
    # triple point of x1^3 at (1:0:0) over F_3 where ordinary derivatives degenerate
    p = 3
    P = pts(p, (1, 0, 0))[0]
    basis = curves_through(p, 3, [(P, 3)])
    assert len(basis) == 4       # binary cubics in x1, x2
    for v in basis:
        c = PlaneCurve(p, 3, v)
        assert all(e[0] == 0 for e, _ in c.terms())


def test_linear_system_basis_on_plane():
    cfg = build_plane(WeierstrassSet(101, (3, 17, 29, 44, 58, 90)))
    spec = ConfigurationSpec(2, through=(((1, 2), 1), ((2, 3), 1), ((3, 4), 1), ((4, 5), 1), ((1, 5), 1)),
                             tangent_to=(6,))
    basis = linear_system_basis(spec, cfg)
    assert len(basis) == 1
    with pytest.raises(InvalidInput):
        linear_system_basis(ConfigurationSpec(2, through=(((1, 7), 1),)), cfg)


def test_is_tangent_examples():
    p = 11
    c = PlaneCurve(p, 2, CONIC)
    F = GF(p)
    tangent, mults = is_tangent(c, (F(0), F(0), F(1)))
    assert tangent and mults == [2]
    tangent, mults = is_tangent(c, (F(0), F(1), F(0)))
    assert not tangent and sorted(mults) == [1, 1]


def test_component_line_raises():
    p = 11
    F = GF(p)
    c = PlaneCurve(p, 2, (0, 0, 1, 0, 0, 0))       # x0 x2
    with pytest.raises(DegenerateConfiguration):
        is_tangent(c, (F(0), F(0), F(1)))


def test_irrational_contacts_flagged():
    p = 7                                          # -1 is a nonsquare mod 7
    F = GF(p)
    c = PlaneCurve(p, 2, (1, 0, 0, 1, 0, -1))      # x0^2 + x1^2 - x2^2
    rep = line_contacts(c, (F(0), F(0), F(1)))     # x2 = 0: x0^2 + x1^2
    assert rep.rational == () and rep.irrational == (1, 1)
    assert rep.split == "F_p2" and rep.total == 2 and not rep.tangent


def test_triple_contact():
    p = 13
    F = GF(p)
    cubic = [0] * 10
    cubic[monomials(3).index((0, 3, 0))] = 1       # x1^3 - x0^2 x2
    cubic[monomials(3).index((2, 0, 1))] = -1
    rep = line_contacts(PlaneCurve(p, 3, cubic), (F(0), F(0), F(1)))
    assert rep.multiplicities == [3]


@pytest.mark.parametrize("p", [5, 11, 31])
def test_bezout_random(p):
    rng = random.Random(p)
    F = GF(p)
    for _ in range(40):
        m = rng.randint(1, 4)
        coeffs = [rng.randrange(p) for _ in monomials(m)]
        if not any(coeffs):
            continue
        c = PlaneCurve(p, m, coeffs)
        line = tuple(F(rng.randrange(p)) for _ in range(3))
        if not any(line):
            continue
        try:
            rep = line_contacts(c, line)
        except DegenerateConfiguration:
            continue
        assert rep.total == m
        rational_total = sum(mult for _, mult in rep.rational)
        assert (rep.split == "F_p") == (rational_total == m)


def collinear_three_choice():
    return ((1, 2), (1, 3), (1, 4), (2, 3), (4, 5))


def test_humbert_reducible_with_three_collinear():
    cfg = build_plane(WeierstrassSet(101, (3, 17, 29, 44, 58, 90)))
    res = find_humbert_conic(cfg, collinear_three_choice(), 6)
    assert res.conic is None and res.reason == "reducible"


def test_humbert_degenerate_four_collinear():
    cfg = build_plane(WeierstrassSet(101, (3, 17, 29, 44, 58, 90)))
    with pytest.raises(DegenerateConfiguration):
        find_humbert_conic(cfg, ((1, 2), (1, 3), (1, 4), (1, 5), (2, 3)), 6)


def test_humbert_rejects_bad_choice():
    cfg = build_plane(WeierstrassSet(101, (3, 17, 29, 44, 58, 90)))
    with pytest.raises(InvalidInput):
        find_humbert_conic(cfg, ((1, 2), (2, 3), (3, 4), (4, 5), (1, 5)), 5)
    with pytest.raises(InvalidInput):
        find_humbert_conic(cfg, ((1, 2), (1, 2), (3, 4), (4, 5), (1, 5)), 6)


def test_humbert_not_tangent_generic_agrees_with_oracle():
    p = 101
    rng = random.Random(7)
    cycle = ((1, 2), (2, 3), (3, 4), (4, 5), (1, 5))
    seen = 0
    for _ in range(10):
        cfg = build_plane(WeierstrassSet(p, tuple(rng.sample(range(p), 6))))
        res = find_humbert_conic(cfg, cycle, 6)
        conic = conic_through(p, [cfg.points[pr] for pr in cycle])
        raw_pts = [tuple(x.value for x in cfg.points[pr]) for pr in cycle]
        incid, tangent, irreducible = conic_recheck(
            p, conic.int_coeffs(), raw_pts, [x.value for x in cfg.lines[6]])
        assert incid and irreducible
        assert (res.reason == "ok") == tangent
        seen += res.reason == "not tangent"
    assert seen > 0


def test_conic_stable_under_rescaling():
    p = 101
    rng = random.Random(3)
    cfg = build_plane(WeierstrassSet(p, (3, 17, 29, 44, 58, 90)))
    cycle = ((1, 2), (2, 3), (3, 4), (4, 5), (1, 5))
    base = conic_through(p, [cfg.points[pr] for pr in cycle])
    F = GF(p)
    scaled = [tuple(F(s) * x for x in cfg.points[pr])
              for pr, s in zip(cycle, [rng.randrange(1, p) for _ in cycle])]
    assert conic_through(p, scaled) == base


@pytest.fixture(scope="module")
def scan31():
    cfg = build_plane(WeierstrassSet(31, (0, 1, 2, 3, 4, 5)))
    return cfg, humbert_scan(cfg)


def test_scan_hits_recheck_independently(scan31):
    cfg, res = scan31
    assert res.hits
    assert res.stats["candidates"] == 1512
    assert sum(v for k, v in res.stats.items() if k != "candidates") == 1512
    for hit in res.hits:
        raw_pts = [tuple(x.value for x in cfg.points[pr]) for pr in hit.pairs]
        checks = conic_recheck(31, hit.conic.int_coeffs(), raw_pts,
                               [x.value for x in cfg.lines[hit.line]])
        assert checks == (True, True, True)


def test_scan_is_lexicographic_and_first_only(scan31):
    cfg, res = scan31
    keys = [(h.pairs, h.line) for h in res.hits]
    assert keys == sorted(keys)
    first = humbert_scan(cfg, first_only=True)
    assert len(first.hits) == 1 and first.hits[0].pairs == res.hits[0].pairs


def test_bw_report_on_humbert_conic(scan31):
    cfg, res = scan31
    h = HumbertClass.of("I", 1, 6)
    for hit in res.hits:
        rep = verify_bw_configuration(hit.conic, h, cfg)
        assert rep.degree_ok and rep.torsion_count == 5 == rep.torsion_budget
        assert rep.line_total == 12 == rep.expected_line_total
        assert rep.even_multiplicity_ok and rep.bezout_ok
        assert rep.rationality == "rational"


def test_bw_degree_mismatch(scan31):
    cfg, _ = scan31
    cubic = PlaneCurve(31, 3, [1] + [0] * 8 + [1])   # x0^3 + x2^3
    rep = verify_bw_configuration(cubic, HumbertClass.of("I", 1, 6), cfg)
    assert not rep.degree_ok
    assert rep.line_total == 18 == 6 * cubic.degree


def test_rationality_nodal_cubic():
    p = 13
    nodal = [0] * 10                              # x1^2 x2 - x0^2 (x0 + x2)
    mons = monomials(3)
    nodal[mons.index((0, 2, 1))] = 1
    nodal[mons.index((3, 0, 0))] = -1
    nodal[mons.index((2, 0, 1))] = -1
    assert rationality(PlaneCurve(p, 3, nodal)) == "rational"
    smooth = [0] * 10                             # x0^3 + x1^3 + x2^3
    for e in ((3, 0, 0), (0, 3, 0), (0, 0, 3)):
        smooth[mons.index(e)] = 1
    assert rationality(PlaneCurve(p, 3, smooth)) == "rationality undetermined"
    assert rationality(PlaneCurve(p, 2, (0, 0, 1, 0, 0, 0))) == "reducible"


def _split_curve(p, lams):
    f = UniPoly.over(p, [1])
    for r in lams:
        f = f * UniPoly.over(p, [-r, 1])
    return Genus2Curve(p, f)


@pytest.mark.parametrize("p,lams", [
    (31, (0, 1, 2, 3, 4, 5)),
    (31, (0, 28, 26, 12, 13, 19)),
    (41, (35, 16, 2, 4, 5, 1)),
])
def test_humbert_conics_come_with_sqrt5(p, lams):
    # a Humbert conic forces an order of discriminant 5 inside the endomorphisms:
    # either RM by Q(sqrt 5) or a split Jacobian
    cfg = build_plane(WeierstrassSet(p, lams))
    assert humbert_scan(cfg, first_only=True).hits
    rm = rm_discriminant(summarize_curve(_split_curve(p, lams)))
    assert rm.status == "split" or (rm.status == "rm" and rm.squarefree_core == 5)
