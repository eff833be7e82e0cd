"""Acceptance criteria, one test per criterion, each printing a PASS line.

Run with:  pytest tests/test_acceptance.py -v -s
"""

import io
import json
import time

from tmflevels import hfpss
from tmflevels.charts import anderson_symmetry_check
from tmflevels.cli import main
from tmflevels.cohomology import UNKNOWN
from tmflevels.duality import degreecomp_solutions, duality_scan, ratio_table
from tmflevels.equivariant import FiniteAbelian, components
from tmflevels.levels import curve_invariants, divisors, dsum_f, dsum_g
from tmflevels.splitting import Base, rational_multiplicities, shift_polynomial

DUALITY_ROWS = [
    (1, 21), (2, 13), (3, 9), (4, 7), (5, 5), (6, 5), (7, 3), (8, 3),
    (11, 1), (14, 1), (15, 1), (23, -1),
]


def run_cli(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    assert code == 0
    return out.getvalue()


def test_criterion_1_duality_table():
    start = time.monotonic()
    text = run_cli(["duality", "--scan", "200", "--format", "table"])
    expected = "n   l\n" + "\n".join(f"{n:<4}{l}" for n, l in DUALITY_ROWS) + "\n"
    assert text == expected
    assert [(v.n, v.shift_l) for v in duality_scan(200)] == DUALITY_ROWS
    elapsed = time.monotonic() - start
    assert elapsed < 1.0
    print(f"\nACCEPTANCE 1 (duality table, {elapsed:.3f}s): PASS")


def test_criterion_2_tmf1_23_chart():
    text = run_cli(["chart", "--n", "23", "--range", "-10..10"])
    data = json.loads(text)
    entries = {(e["stem"], e["filtration"]): (e["rank"], e["marker"]) for e in data["entries"]}
    ranks = [1, 12, 33, 55, 77, 99]
    expected = {}
    for i, stem in enumerate((0, 2, 4, 6, 8, 10)):
        expected[(stem, 0)] = (ranks[i], "exact")
    for i, stem in enumerate((1, -1, -3, -5, -7, -9)):
        expected[(stem, 1)] = (ranks[i], "exact")
    assert entries == expected
    print("\nACCEPTANCE 2 (Tmf1(23) chart): PASS")


def test_criterion_3_degree_search():
    start = time.monotonic()
    assert set(degreecomp_solutions(144)) == {23, 32, 33, 35, 40, 42}
    for n in range(145, 10**4 + 1):
        assert dsum_f(n) > 12 * dsum_g(n), n
    elapsed = time.monotonic() - start
    assert elapsed < 2.0
    print(f"\nACCEPTANCE 3 (degree search to 10^4, {elapsed:.3f}s): PASS")


def test_criterion_4_splittings():
    assert shift_polynomial(5, Base.L2).as_list() == [1, 1, 1]
    assert shift_polynomial(5, Base.L3).as_list() == [1, 2, 2, 2, 1]
    for n in range(5, 101):
        for base in (Base.L2, Base.L3, Base.RATIONAL):
            if base is Base.L2 and n % 2 == 0:
                continue
            if base is Base.L3 and n % 3 == 0:
                continue
            q = shift_polynomial(n, base)
            if q is UNKNOWN:
                continue
            e1, e2 = base.exponents
            assert q.rank() == curve_invariants(n).deg_omega * e1 * e2, (n, base)
    r = rational_multiplicities(23)
    assert r.poly.degree() == 11
    assert r.poly.rank() == 528
    coeffs = r.poly.as_list()
    assert coeffs == coeffs[::-1]
    assert r.twist == 1
    print("\nACCEPTANCE 4 (splittings): PASS")


def test_criterion_5_ratio_table():
    from fractions import Fraction

    table = {
        (2, 1): (2, 3), (2, 2): (5, 12), (2, 3): (1, 4), (2, 4): (7, 48),
        (2, 5): (1, 12), (2, 6): (3, 64), (2, 7): (5, 192),
        (3, 1): (1, 2), (3, 2): (2, 9), (3, 3): (5, 54), (3, 4): (1, 27),
        (5, 1): (1, 3), (5, 2): (7, 75), (5, 3): (3, 125),
        (7, 1): (1, 4), (7, 2): (5, 98),
        (11, 1): (1, 6), (11, 2): (8, 363),
        (13, 1): (1, 7), (17, 1): (1, 9), (19, 1): (1, 10),
    }
    for (p, k), (num, den) in table.items():
        assert ratio_table(p, k) == Fraction(num, den), (p, k)
    print("\nACCEPTANCE 5 (ratio table): PASS")


def test_criterion_6_hfpss_suite():
    P = hfpss.presets()
    window = hfpss.Window(24, 24, 16)

    h1 = hfpss.compute_einfty(P["height1-laurent"], window, hfpss.STRATEGY_BOTH)
    assert h1.collapse_page == 4
    assert all(s <= 2 for classes in h1.entries.values() for s, g, n in classes)
    assert h1.at(1, 0) == ((1, hfpss.GROUP_Z2, 1),)

    h2 = hfpss.compute_einfty(P["height2-laurent"], window, hfpss.STRATEGY_BOTH)
    assert h2.collapse_page == 8
    assert all(s <= 6 for classes in h2.entries.values() for s, g, n in classes)
    # u^4 is a permanent cycle: full lattice at its slot
    assert any(g == hfpss.GROUP_Z for s, g, n in h2.at(8, -8))
    assert all(g != hfpss.GROUP_Z_DIV2 for s, g, n in h2.at(8, -8))
    # invariance under translation by 8 - 8*sigma
    for c in range(-24, 17):
        for d in range(-16, 25):
            if abs(c + 8) <= 24 and abs(d - 8) <= 24:
                assert h2.at(c, d) == h2.at(c + 8, d - 8), (c, d)

    assert hfpss.is_strongly_even(h1, (-8, 8))
    assert hfpss.is_strongly_even(h2, (-8, 8))
    print("\nACCEPTANCE 6 (hfpss property suite): PASS")


def test_criterion_7_anderson_symmetry():
    for n, l in DUALITY_ROWS:
        ok, violation = anderson_symmetry_check(n, l, (-30, 30))
        assert ok is True, (n, l, violation)
    for l in range(-30, 31):
        ok, _ = anderson_symmetry_check(9, l, (-30, 30))
        assert ok is False, l
    print("\nACCEPTANCE 7 (Anderson symmetry): PASS")


def test_criterion_8_equivariant():
    comps = components(FiniteAbelian.from_orders([6]))
    assert {c.label for c in comps} == {"M_ell", "M1(2)", "M1(3)", "M1(6)"}
    klein = components(FiniteAbelian.from_orders([2, 2]))
    assert sum(c.multiplicity for c in klein) == 5
    for n in range(1, 101):
        assert sum(dsum_f(k) for k in divisors(n)) == n * n
    print("\nACCEPTANCE 8 (equivariant): PASS")
