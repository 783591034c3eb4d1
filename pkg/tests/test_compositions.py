"""Tests for composition polynomials, counts, partitions, q-series, and
the identity verifier."""

import random
from fractions import Fraction

import pytest

from oracles import partition_count, triangle_counts

from compsigns.compositions import (
    CompPolyTable,
    IdentityFailure,
    _IdentityChecker,
    comp_by_parts,
    comp_counts,
    comp_polys,
    counts_csv,
    partition_counts,
    q_series,
    qseries_to_json,
    triangle_csv,
    verify_identities,
)
from compsigns.poly import IntPoly, delta_op
from compsigns.sets import HorizonError, SpecError, explicit, parse_spec


def test_anchor_123():
    table = comp_polys(parse_spec("{1,2,3}"), 4)
    assert table[0] == IntPoly((1,))
    assert table[4] == IntPoly((0, 0, 3, 3, 1))
    assert table.count(4) == 7
    assert table.by_parts(2, 4) == 3
    assert table.by_parts(3, 4) == 3
    assert table.by_parts(4, 4) == 1
    assert table.by_parts(7, 4) == 0
    assert comp_by_parts(parse_spec("{1,2,3}"), 2, 4) == 3


def test_anchor_even_part():
    table = comp_polys(parse_spec("{2}"), 5)
    assert table[5].is_zero
    assert table[4] == IntPoly((0, 0, 1))
    assert comp_counts(parse_spec("{2,3}"), 5)[5] == 2


def test_horizon_and_validation():
    with pytest.raises(HorizonError):
        comp_polys(parse_spec("{1}@10"), 11)
    with pytest.raises(ValueError):
        comp_by_parts(parse_spec("{1}"), -1, 4)


def test_counts_match_polys():
    rng = random.Random(101)
    for _ in range(10):
        spec = explicit(rng.sample(range(1, 9), rng.randint(1, 5)), horizon=40)
        table = comp_polys(spec, 30)
        counts = comp_counts(spec, 30)
        for n in range(31):
            assert counts[n] == table.count(n)
            assert all(c >= 0 for c in table[n].coeffs)
            assert table[n].degree <= n


def test_triangle_matches_brute_force():
    rng = random.Random(103)
    for _ in range(8):
        parts = sorted(rng.sample(range(1, 7), rng.randint(1, 4)))
        spec = explicit(parts)
        table = comp_polys(spec, 12)
        for n in range(13):
            tri = triangle_counts(parts, n)
            for i in range(n + 1):
                assert table.by_parts(i, n) == tri.get(i, 0)


def test_partition_counts():
    assert partition_counts(parse_spec("{1,3}"), 4)[4] == 2
    assert partition_counts(parse_spec("{1,3,5}"), 6)[6] == 4
    assert partition_counts(parse_spec("{2,5}"), 0) == [1]
    assert partition_counts(parse_spec("1..3"), 6)[6] == 7
    with pytest.raises(SpecError):
        partition_counts(parse_spec("N+"), 5)
    rng = random.Random(107)
    for _ in range(6):
        parts = sorted(rng.sample(range(1, 8), rng.randint(1, 4)))
        got = partition_counts(explicit(parts), 14)
        for n in range(15):
            assert got[n] == partition_count(parts, n)


def test_q_series_anchors():
    q = q_series(parse_spec("{1,2,3}"), 5)
    assert [q[n] for n in range(4)] == [1, -1, 0, 3]
    assert q_series(parse_spec("{1}"), 4).coeffs.coeffs == (1, 0, 0, 0, 0)
    q2 = q_series(parse_spec("{2}"), 3)
    assert q2[0] == Fraction(1, 2)
    assert all(q2[n] == 0 for n in (1, 2, 3))
    # all positive integers: f/(xf') collapses to 1 - x
    qn = q_series(parse_spec("N+@100"), 6)
    assert [qn[n] for n in range(7)] == [1, -1, 0, 0, 0, 0, 0]
    with pytest.raises(SpecError):
        q_series(parse_spec("{}"), 3)


def test_q_series_infinite_truncation_consistency():
    # a cofinite set and its explicit finite stand-in agree up to the order
    cof = q_series(parse_spec("N+\\{2,6}@50"), 20)
    members = parse_spec("N+\\{2,6}@50").members_up_to(21)
    fin = q_series(explicit(members, horizon=50), 20)
    assert cof.coeffs.coeffs == fin.coeffs.coeffs


def test_q_weighted_delta_identity():
    # D(f_n) = sum_i i * q(n-i) * f_i, coefficient by coefficient
    for text in ("{1,2,3}", "{2,3}", "{2,4}", "N+\\{1}@40"):
        spec = parse_spec(text)
        table = comp_polys(spec, 25)
        q = q_series(spec, 25)
        for n in range(26):
            lhs = [Fraction(c) for c in delta_op(table[n]).coeffs]
            rhs = [Fraction(0)] * (n + 2)
            for i in range(1, n + 1):
                for j, c in enumerate(table[i].coeffs):
                    rhs[j] += i * q[n - i] * c
            for j in range(max(len(lhs), len(rhs))):
                a = lhs[j] if j < len(lhs) else 0
                b = rhs[j] if j < len(rhs) else 0
                assert a == b, (text, n, j)


def test_qseries_json():
    got = qseries_to_json(q_series(parse_spec("{2}"), 2))
    assert got["set"] == "{2}@1000"
    assert got["order"] == 2
    assert got["coeffs"][0] == {"numerator": "1", "denominator": "2"}
    assert got["coeffs"][1] == {"numerator": "0", "denominator": "1"}


def test_verify_identities_pass():
    for text in ("{1,2,3}", "{1,3,5}", "{2,3}", "N+\\{2,6}@80", "{}",
                 "repunit(2)@80", "1..5"):
        report = verify_identities(parse_spec(text), 40)
        assert report.all_pass, (text, report.results)
        assert all(line.endswith("pass") for line in report.summary_lines())


def test_verify_methods_agree():
    rng = random.Random(109)
    for _ in range(8):
        spec = explicit(rng.sample(range(1, 12), rng.randint(1, 6)), horizon=60)
        fast = verify_identities(spec, 18, method="eval")
        slow = verify_identities(spec, 18, method="coeff")
        assert fast.all_pass and slow.all_pass
    with pytest.raises(ValueError):
        verify_identities(parse_spec("{1}"), 5, method="magic")


def test_verify_coeff_mode_reports_tampered_table():
    # coeff mode reads the cached polynomial table, so corrupt that
    spec = parse_spec("{1,2}")
    upto = 8
    polys = list(comp_polys(spec, upto).polys)
    polys[3] = polys[3] + IntPoly((0, 0, 1))
    chk = _IdentityChecker(spec, upto)
    chk._table = CompPolyTable(spec, upto, tuple(polys))
    failure = chk.check_coeff("reflection", None)
    assert isinstance(failure, IdentityFailure)
    assert 0 <= failure.n <= upto
    assert failure.coeff_index >= 0
    # the reported coefficient really differs at the reported n
    assert chk._coeff_reflection(failure.n) == failure.coeff_index


def test_verify_eval_mode_reports_wrong_odd_subset():
    # eval mode recomputes values from the member lists, so corrupt those
    spec = parse_spec("{1,2}")
    chk = _IdentityChecker(spec, 8)
    chk.odd_members = [2]
    failure = chk.check_eval("parity")
    assert isinstance(failure, IdentityFailure)
    assert failure.identity == "parity"
    assert chk._coeff_parity(failure.n) == failure.coeff_index


def test_csv_exports():
    spec = parse_spec("{1,2,3}")
    counts_text = counts_csv(spec, 4)
    assert counts_text.splitlines()[0] == "n,c_A(n)"
    assert counts_text.splitlines()[-1] == "4,7"
    tri_text = triangle_csv(comp_polys(spec, 4))
    lines = tri_text.splitlines()
    assert lines[0] == "n,i,c_A(i,n)"
    assert "4,2,3" in lines
    assert "4,4,1" in lines
    assert lines[1] == "0,0,1"
