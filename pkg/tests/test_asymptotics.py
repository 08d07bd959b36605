import random
from fractions import Fraction as F

import pytest

from harmdens.asymptotics import HSequence, eval_H, extract_H, formula_table
from harmdens.errors import IncompleteTableError, NormalizationError, UnsupportedOrderError
from harmdens.models import (TraceTable, all_monomials, catalog, make_space, product_oracle,
                             theta_tilde_series, trace_table)
from harmdens.series import TruncatedSeries as TS

TABLE = formula_table()


def test_term_counts_below_eight():
    assert [len(TABLE[nu]) for nu in range(2, 8)] == [1, 1, 3, 3, 8, 9]


def test_h8_term_count_as_transcribed():
    # The printed H_8 has 20 distinct terms; see the README on the count of 19.
    assert len(TABLE[8]) == 20
    keys = [t.monomials for t in TABLE[8]]
    assert len(set(keys)) == len(keys)


@pytest.mark.parametrize("nu", range(2, 9))
def test_weight_homogeneity(nu):
    assert all(t.weight == nu for t in TABLE[nu])


def test_examples():
    assert eval_H(trace_table(make_space("sphere", 4)), 2) == F(-1, 2)
    assert eval_H(trace_table(make_space("CP", 2)), 4) == F(2, 5)
    for s in catalog():
        assert eval_H(trace_table(s), 3) == 0


def test_unsupported_order():
    t = trace_table(make_space("CP", 2))
    for nu in (0, 1, 9):
        with pytest.raises(UnsupportedOrderError):
            eval_H(t, nu)


def test_incomplete_table():
    with pytest.raises(IncompleteTableError):
        eval_H(TraceTable({(0,): F(1)}, 4), 4)


def test_extract_examples():
    assert extract_H(TS([1, 0, -1, 0, F(2, 5)])) == (1, 0, -1, 0, F(2, 5))
    assert extract_H(TS.constant(1, 5)) == (1, 0, 0, 0, 0, 0)
    hyp = theta_tilde_series(make_space("hyperbolic", 4), 4)
    assert extract_H(hyp) == (1, 0, F(1, 2), 0, F(13, 120))
    with pytest.raises(NormalizationError):
        extract_H(TS([2, 0, 1]))


def test_hsequence():
    h = HSequence([1, 0, "1/3"])
    assert h.order == 2 and h.odd_entries_vanish()
    assert h.to_json() == ["1", "0", "1/3"]
    assert not HSequence([1, 1]).odd_entries_vanish()
    with pytest.raises(NormalizationError):
        HSequence([0, 1])


def test_formula_matches_series_on_catalog():
    for s in catalog():
        table, dens = trace_table(s), theta_tilde_series(s, 8)
        for nu in range(2, 9):
            assert eval_H(table, nu) == dens[nu], (s.name, nu)


@pytest.mark.parametrize("a,b", [("sphere", "sphere"), ("CP", "sphere"), ("CP", "CH")])
def test_formula_matches_directional_products(a, b):
    sa = make_space(a, 2) if a != "sphere" else make_space("sphere", 3)
    sb = make_space(b, 2) if b != "sphere" else make_space("sphere", 2)
    for c2 in (F(0), F(1, 5), F(1, 2), F(2, 3), F(1)):
        table, dens = product_oracle(sa, sb, c2=c2)
        for nu in range(2, 9):
            assert eval_H(table, nu) == dens[nu], (a, b, c2, nu)


def test_odd_orders_vanish_on_random_derivative_free_tables():
    rng = random.Random(3)
    for _ in range(20):
        traces = {p: F(rng.randint(-30, 30), rng.randint(1, 7)) for p in range(1, 5)}
        t = TraceTable.from_power_traces(6, traces)
        assert all(eval_H(t, nu) == 0 for nu in (3, 5, 7))


def test_scaling_law():
    # c^2 g multiplies a weight-nu expression by c^-nu
    t = trace_table(make_space("HP", 2))
    for nu in range(2, 9):
        assert eval_H(t.scaled(F(3)), nu) == eval_H(t, nu) * F(1, 3 ** nu)


def test_derivative_terms_contribute():
    entries = {w: F(0) for w in all_monomials()}
    entries[(2,)] = F(1)
    assert eval_H(TraceTable(entries, 4), 4) == F(-1, 40)
