import json
from fractions import Fraction
from importlib import resources
from itertools import product

import jsonschema
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fhseq import (
    GateExceeded,
    average_bound_check,
    bounds_report,
    correlation_profile,
    hamming_correlation,
    lempel_greenberger_bound,
    peng_fan_check,
)
from fhseq.correlation import correlation_table, resolve_gate
from _oracles import naive_H


@st.composite
def sequence_pairs(draw):
    v = draw(st.integers(1, 5))
    L = draw(st.integers(1, 40))
    seq = st.lists(st.integers(0, v - 1), min_size=L, max_size=L)
    return v, draw(seq), draw(seq)


def test_hamming_correlation_examples(ex1):
    X0, X2 = ex1.seqset[0], ex1.seqset[2]
    assert hamming_correlation(X0, X0, 0) == 85
    assert hamming_correlation(X0, X0, 5) == 29
    assert hamming_correlation(X0, X2, 0) == 0


def test_hamming_correlation_errors():
    with pytest.raises(ValueError):
        hamming_correlation([0, 1], [0, 1, 2], 0)
    with pytest.raises(ValueError):
        hamming_correlation([0, 1], [0, 1], 2)


@settings(max_examples=200)
@given(sequence_pairs())
def test_correlation_table_matches_naive(data):
    v, X, Y = data
    table = correlation_table(X, Y, v)
    assert table.tolist() == [naive_H(X, Y, tau) for tau in range(len(X))]
    assert all(hamming_correlation(X, Y, tau) == table[tau] for tau in range(len(X)))


@given(sequence_pairs())
def test_correlation_symmetry(data):
    v, X, Y = data
    L = len(X)
    for tau in range(L):
        assert hamming_correlation(X, Y, tau) == hamming_correlation(Y, X, (L - tau) % L)


@given(sequence_pairs())
def test_correlation_row_sum_is_histogram_product(data):
    v, X, Y = data
    hx = np.bincount(X, minlength=v)
    hy = np.bincount(Y, minlength=v)
    assert correlation_table(X, Y, v).sum() == int((hx * hy).sum())


def test_profile_example_aggregates(ex1):
    prof = ex1.profile
    assert prof.A_a == Fraction(473, 21)
    assert prof.A_c == Fraction(5248, 255)
    assert (prof.S_a, prof.S_c) == (7568, 10496)
    assert (prof.H_a, prof.H_c) == (29, 24)


def test_profile_matches_naive_oracle(sweep):
    seqs = sweep.seqset.sequences.tolist()
    prof = sweep.profile
    L = sweep.params.L
    for k, l in product(range(len(seqs)), repeat=2):
        assert prof.table[k, l].tolist() == [naive_H(seqs[k], seqs[l], tau) for tau in range(L)]


def test_profile_invariants(sweep):
    prof = sweep.profile
    M, L = prof.M, prof.L
    auto = prof.auto
    assert np.all(auto[:, 0] == L)
    assert prof.H_a == auto[:, 1:].max()
    assert prof.H_c == max(prof.cross(k, l).max() for k in range(M) for l in range(M) if k != l)
    assert prof.S_a == auto[:, 1:].sum()
    assert 2 * prof.S_c == sum(prof.cross(k, l).sum() for k in range(M) for l in range(M) if k != l)
    assert prof.A_a == Fraction(prof.S_a, M * (L - 1))
    assert prof.A_c == Fraction(2 * prof.S_c, L * M * (M - 1))


def test_cross_tables_depend_only_on_label_difference(sweep):
    prof = sweep.profile
    e = prof.M
    for k, l in product(range(e), repeat=2):
        if k != l:
            assert np.array_equal(prof.table[k, l], prof.table[0, (l - k) % e])


def test_cross_requires_distinct(ex1):
    with pytest.raises(ValueError):
        ex1.profile.cross(1, 1)


def test_workers_do_not_change_result(ex1):
    serial = ex1.profile
    parallel = correlation_profile(ex1.seqset, workers=4)
    assert np.array_equal(serial.table, parallel.table)
    assert (serial.A_a, serial.A_c) == (parallel.A_a, parallel.A_c)


def test_gate(ex1, monkeypatch):
    with pytest.raises(GateExceeded):
        correlation_profile(ex1.seqset, gate=84)
    correlation_profile(ex1.seqset, gate=None)
    monkeypatch.setenv("FHSEQ_GATE", "10")
    assert resolve_gate() == 10
    assert resolve_gate(99) == 99
    monkeypatch.delenv("FHSEQ_GATE")
    assert resolve_gate() == 50_000


def test_profile_csv(ex1):
    rows = ex1.profile.to_csv().splitlines()
    assert rows[0] == "kind,seq_k,seq_l,tau,value"
    assert len(rows) == 1 + 16 * 85
    assert rows[1] == "auto,0,0,0,85"
    assert "cross,0,1,17,24" in rows


@pytest.mark.parametrize("L, v, expected", [(85, 4, 21), (4, 4, 0), (7, 7, 0), (15, 2, 7)])
def test_lempel_greenberger_examples(L, v, expected):
    assert lempel_greenberger_bound(L, v) == expected


def test_lempel_greenberger_matches_exact_fraction():
    for L in range(2, 60):
        for v in range(1, 12):
            b = L % v
            frac = Fraction((L - b) * (L + b - v), v * (L - 1))
            assert lempel_greenberger_bound(L, v) == -(-frac.numerator // frac.denominator)


@settings(max_examples=200)
@given(sequence_pairs())
def test_lempel_greenberger_is_a_lower_bound(data):
    v, X, _ = data
    L = len(X)
    if L < 2:
        return
    sidelobe = max(naive_H(X, X, tau) for tau in range(1, L))
    assert sidelobe >= lempel_greenberger_bound(L, v)


def test_peng_fan_examples():
    entry = peng_fan_check(85, 4, 4, 29, 24)
    assert (entry.lhs, entry.rhs, entry.satisfied) == (34224, 28560, True)
    assert not peng_fan_check(85, 4, 4, 0, 0).satisfied
    assert peng_fan_check(85, 4, 4, 1, 1).rhs == 28560
    assert entry.I == 85


@pytest.mark.parametrize("L, M, v, Ha, Hc", [(85, 4, 4, 29, 24), (15, 2, 2, 7, 8), (91, 6, 6, 17, 16),
                                             (10, 3, 2, 9, 9), (12, 1, 3, 5, 0)])
def test_peng_fan_pareto_pairs_by_scan(L, M, v, Ha, Hc):
    entry = peng_fan_check(L, M, v, Ha, Hc)
    ok = {(a, c) for a in range(Ha + 1) for c in range(Hc + 1)
          if (L - 1) * v * a + (M - 1) * L * v * c >= (L * M - v) * L}
    minimal = {(a, c) for a, c in ok
               if not any((a2, c2) != (a, c) and a2 <= a and c2 <= c for a2, c2 in ok)}
    assert set(entry.pareto_pairs) == minimal
    assert entry.minimal_pair == ((Ha, Hc) in minimal)


def test_average_bound_examples():
    entry = average_bound_check(85, 4, 4, Fraction(473, 21), Fraction(5248, 255))
    assert entry.lhs == entry.rhs == Fraction(1, 3)
    assert entry.met_with_equality
    doubled = average_bound_check(85, 4, 4, Fraction(946, 21), Fraction(10496, 255))
    assert doubled.lhs > doubled.rhs and not doubled.met_with_equality
    assert average_bound_check(15, 2, 2, 7, Fraction(112, 15)).rhs == 1


def test_average_bound_is_a_lower_bound_for_random_sets():
    rng = np.random.default_rng(1)
    for _ in range(30):
        v = int(rng.integers(2, 5))
        M = int(rng.integers(2, 4))
        L = int(rng.integers(2, 25))
        seqs = rng.integers(0, v, (M, L))
        tables = [[correlation_table(seqs[k], seqs[l], v) for l in range(M)] for k in range(M)]
        S_a = sum(int(tables[k][k][1:].sum()) for k in range(M))
        S_c2 = sum(int(tables[k][l].sum()) for k in range(M) for l in range(M) if k != l)
        entry = average_bound_check(L, M, v, Fraction(S_a, M * (L - 1)), Fraction(S_c2, L * M * (M - 1)))
        assert entry.satisfied


def test_bounds_report_json(ex1):
    report = bounds_report(ex1.profile)
    data = json.loads(json.dumps(report.to_json_dict()))
    schema = json.loads(resources.files("fhseq").joinpath("schemas/bounds_report.schema.json").read_text())
    jsonschema.validate(data, schema)
    assert data["average_bound"]["lhs"] == {"num": 1, "den": 3}
    assert [e["achieved"] for e in data["lempel_greenberger"]] == [29] * 4
