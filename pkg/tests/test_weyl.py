import itertools
from fractions import Fraction as F

import pytest

from harmdens.errors import WeylUndefinedError
from harmdens.models import catalog, make_space, spaces_in_dimension
from harmdens.weyl import WeylSignature, odd_product_spectrum, signatures_distinct, weyl_spectrum


def as_dict(sig):
    return dict(sig.spectrum)


def test_examples():
    cp2 = weyl_spectrum(make_space("CP", 2))
    assert as_dict(cp2) == {0: 1, -1: 2, 2: 1} and cp2.counts == (2, 1, 1)
    assert as_dict(weyl_spectrum(make_space("OP2"))) == {0: 1, F(-7, 5): 8, F(8, 5): 7}
    assert weyl_spectrum(make_space("flat", 6)).is_zero
    assert weyl_spectrum(make_space("sphere", 5)).is_zero


def test_odd_product_examples():
    assert as_dict(odd_product_spectrum(make_space("CP", 2))) == {0: 2, -1: 2, 2: 1}
    assert odd_product_spectrum(make_space("flat", 4)).is_zero
    hh, hp = odd_product_spectrum(make_space("HH", 3)), odd_product_spectrum(make_space("HP", 3))
    assert as_dict(hh) == {-ev: mult for ev, mult in hp.spectrum}


def test_undefined():
    with pytest.raises(WeylUndefinedError):
        weyl_spectrum(make_space("sphere", 3))
    with pytest.raises(WeylUndefinedError):
        odd_product_spectrum(make_space("sphere", 5))


def test_invariants_on_catalog():
    for s in catalog():
        sig = weyl_spectrum(s)
        assert sig.dim == s.dim
        assert sum(ev * mult for ev, mult in sig.spectrum) == 0


def test_duals_negated():
    for fam, dual in (("CP", "CH"), ("HP", "HH"), ("OP2", "OH2")):
        for m in (8, 16):
            try:
                a, b = make_space(fam, m=m), make_space(dual, m=m)
            except Exception:
                continue
            assert as_dict(weyl_spectrum(b)) == {-ev: mult for ev, mult in weyl_spectrum(a).spectrum}


def test_signature_validation():
    with pytest.raises(ValueError):
        WeylSignature(((F(1), 1),), (0, 0, 1))
    with pytest.raises(ValueError):
        WeylSignature(((F(-1), 1), (F(1), 1)), (1, 1, 0))


def test_distinctness():
    cp4, hp2 = weyl_spectrum(make_space("CP", 4)), weyl_spectrum(make_space("HP", 2))
    assert signatures_distinct(cp4, hp2)
    assert not signatures_distinct(cp4, cp4)
    for k in (2, 3, 5):
        assert signatures_distinct(weyl_spectrum(make_space("CP", k)),
                                   weyl_spectrum(make_space("CH", k)))
    zero4, zero8 = weyl_spectrum(make_space("flat", 4)), weyl_spectrum(make_space("sphere", 8))
    assert not signatures_distinct(zero4, zero8)
    assert signatures_distinct(zero4, weyl_spectrum(make_space("CP", 2)))


def test_distinctness_is_scale_invariant():
    sig = weyl_spectrum(make_space("HP", 3))
    scaled = WeylSignature.from_pairs([(ev * 7, mult) for ev, mult in sig.spectrum])
    assert not signatures_distinct(sig, scaled)
    flipped = WeylSignature.from_pairs([(-ev, mult) for ev, mult in sig.spectrum])
    assert signatures_distinct(sig, flipped)


@pytest.mark.parametrize("m", [4, 8, 12, 16])
def test_pairwise_distinct_even(m):
    sigs = [weyl_spectrum(s) for s in spaces_in_dimension(m)]
    assert all(signatures_distinct(a, b) for a, b in itertools.combinations(sigs, 2))


@pytest.mark.parametrize("m", [5, 9, 13, 17])
def test_pairwise_distinct_odd(m):
    sigs = [odd_product_spectrum(s) for s in spaces_in_dimension(m - 1)]
    assert all(sig.dim == m for sig in sigs)
    assert all(sig.counts[1] == 2 for sig in sigs if not sig.is_zero)
    assert all(signatures_distinct(a, b) for a, b in itertools.combinations(sigs, 2))
