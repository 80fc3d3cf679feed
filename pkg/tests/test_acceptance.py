"""Acceptance criteria, one test each.  Every test prints a PASS/FAIL line
with its wall time against the budget; run with ``-s`` to see them inline."""

import random
import time
from fractions import Fraction

import pytest

from _families import invariance_failures, random_families
from test_rootsys import ALL_TYPES, brute_force_roots
from k3bubble import intlin, rootsys
from k3bubble.ak import family_from_branches, random_branch_config, run_random_suite
from k3bubble.exact import GaussianRational, Poly, parse_poly
from k3bubble.k3 import RANK, build_k3_lattice, embed_cartan, polarize, projection, unit
from k3bubble.pbt import FamilyInput, build_pbt, leading_data, odaka_rescale
from k3bubble.rootsys import ADEType, build_root_system, irreducible_components, perp_roots

Q = Fraction
GOLDEN_TEXT = ("t^2 + 1/2*t", "t^2 + t", "t^2 + 1/2*t")


@pytest.fixture
def report(capsys):
    def _report(number, title, ok, elapsed, budget):
        status = "PASS" if ok and elapsed < budget else "FAIL"
        with capsys.disabled():
            print(f"\n[acceptance {number}] {status} {title} ({elapsed:.2f}s / {budget}s)")
        assert ok, f"criterion {number} failed"
        assert elapsed < budget, f"criterion {number} exceeded {budget}s"
    return _report


def _golden():
    return FamilyInput(build_root_system("A3"), tuple(parse_poly(s) for s in GOLDEN_TEXT))


def test_1_golden_pairings_and_singularities(report):
    start = time.perf_counter()
    f = _golden()
    rs = f.system
    pairings = [rs.pair(unit_root, f.zeta) for unit_root in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    k, zeta0 = leading_data(f.zeta)
    comps = irreducible_components(perp_roots(rs, zeta0))
    root = build_pbt(f).root
    ok = (
        pairings == [parse_poly("-t^2"), parse_poly("-t"), parse_poly("-t^2")]
        and k == 1
        and zeta0 == (Q(1, 2), 1, Q(1, 2))
        and [(c.ade, c.simple_base) for c in comps]
        == [(ADEType("A", 1), ((1, 0, 0),)), (ADEType("A", 1), ((0, 0, 1),))]
        and [s.ade for s in root.singularities] == [ADEType("A", 1)] * 2
    )
    report(1, "golden A3 pairings, leading term and singularities", ok, time.perf_counter() - start, 1)


def test_2_golden_full_tree(report):
    start = time.perf_counter()
    root = build_pbt(_golden()).root
    leaves = root.children
    ok = (
        root.size() == 3
        and (root.order, root.cumulative_exponent) == (1, Q(1, 2))
        and len(leaves) == 2
        and all(
            c.is_leaf and c.subspace.ade == ADEType("A", 1)
            and c.order == 2 and c.cumulative_exponent == Q(3, 2)
            for c in leaves
        )
        and [c.subspace.simple_base for c in leaves] == [((1, 0, 0),), ((0, 0, 1),)]
    )
    report(2, "golden A3 tree has 3 nodes with the expected data", ok, time.perf_counter() - start, 1)


def test_3_pbt_dbs_equivalence(report):
    start = time.perf_counter()
    results = list(run_random_suite(200, seed=42))
    elapsed = time.perf_counter() - start
    ok = len(results) == 200 and all(b.k <= 8 and eq.isomorphic for b, eq, _ in results)
    report(3, f"PBT/DBS isomorphic in {sum(eq.isomorphic for _, eq, _ in results)}/200",
           ok, elapsed, 30)


def test_4_odaka_agreement(report):
    start = time.perf_counter()
    agree = 0
    # same seed and generator as criterion 3, so the same 200 families
    rng = random.Random(42)
    for _ in range(200):
        f = family_from_branches(random_branch_config(rng))
        _, types = odaka_rescale(f)
        agree += types == tuple(s.ade for s in build_pbt(f).root.singularities)
    report(4, f"rescaled central fiber matches PBT root in {agree}/200",
           agree == 200, time.perf_counter() - start, 30)


def test_5_root_enumeration(report):
    rootsys._CACHE.clear()  # time a cold enumeration
    start = time.perf_counter()
    ok = True
    for label in ALL_TYPES:
        ade = ADEType.parse(label)
        n = ade.rank
        expected = {"A": n * (n + 1), "D": 2 * n * (n - 1)}.get(ade.family) or {6: 72, 7: 126, 8: 240}[n]
        rs = build_root_system(ade)
        ok &= len(rs.roots) == expected
        ok &= set(rs.roots) == brute_force_roots(ade)
        ok &= all(rs.pair(r, r) == -2 for r in rs.roots)
    report(5, "root counts for A1-A8, D4-D8, E6-E8 match the brute-force oracle",
           ok, time.perf_counter() - start, 10)


def test_6_k3_lattice(report):
    start = time.perf_counter()
    L = build_k3_lattice()
    ok = intlin.det(L.gram) == -1
    for d in range(1, 51):
        pol = polarize(d)
        ok &= L.pair(pol.lam, pol.lam) == 2 * d
        ok &= abs(intlin.det(pol.gram21)) == 2 * d
    pol = polarize(1)
    hs = [
        embed_cartan([unit(0), unit(2), unit(3)], pol),
        embed_cartan([unit(8 + i) for i in range(8)], pol),
        embed_cartan([unit(9), unit(11), unit(10), unit(12)], pol),
    ]
    rng = random.Random(6)
    for _ in range(100):
        h = rng.choice(hs)
        u = [Q(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(RANK)]
        v = [Q(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(RANK)]
        pu, pv = projection(u, h), projection(v, h)
        ok &= projection(pu, h) == pu
        ok &= L.pair(pu, v) == L.pair(u, pv)
    report(6, "K3 lattice determinant, polarizations d=1..50, projection laws",
           ok, time.perf_counter() - start, 5)


def test_7_invariance_suite(report):
    start = time.perf_counter()
    rng = random.Random(77)
    failures = []
    for i, f in enumerate(random_families(100, seed=7)):
        assert f.system.rank <= 6 and f.system.ade.family in "AD"
        bad = invariance_failures(f, rng)
        if bad:
            failures.append((i, bad))
    report(7, f"scaling, reparametrization and Weyl invariance on 100 families ({len(failures)} failing)",
           not failures, time.perf_counter() - start, 60)


def _random_poly(rng):
    pool = (0, 1, -1, 2, Q(1, 2), Q(-3, 4), Q(7, 3), 10**20 + 1)
    coeffs = []
    for _ in range(rng.randint(0, 8)):
        coeffs.append(GaussianRational(rng.choice(pool), rng.choice(pool)) if rng.random() < 0.4
                      else GaussianRational(rng.choice(pool)))
    return Poly(coeffs)


def test_8_parser_round_trip(report):
    start = time.perf_counter()
    rng = random.Random(8)
    ok = True
    for _ in range(1000):
        p = _random_poly(rng)
        ok &= parse_poly(str(p)) == p
    a1, a2, a3 = (parse_poly(s) for s in GOLDEN_TEXT)
    ok &= (a1.coeff(1), a1.coeff(2), a2.coeff(1), a2.coeff(2)) == (Q(1, 2), 1, 1, 1)
    ok &= a3 == a1 and a1.coeff(0) == 0 and a1.degree == 2
    report(8, "parse/print identity on 1000 polynomials and golden literals",
           ok, time.perf_counter() - start, 2)
