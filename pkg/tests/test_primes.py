import csv
import io
import json

import flint
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tlcenter import primes as pr
from tlcenter.qarith import DomainError

coeff_lists = st.lists(st.integers(-20, 20), min_size=1, max_size=6)


@given(coeff_lists, coeff_lists)
def test_resultant_matches_flint(f, g):
    f = pr._trim(f) or [0]
    g = pr._trim(g) or [0]
    if len(f) < 2 or len(g) < 2:
        return
    assert pr.resultant(f, g) == int(flint.fmpz_poly(f).resultant(flint.fmpz_poly(g)))


@given(st.integers(0, 2**64 - 1))
def test_miller_rabin_matches_flint(n):
    assert pr.is_prime_u64(n) == flint.fmpz(n).is_prime()


def test_miller_rabin_strong_pseudoprimes():
    # 3215031751 fools bases 2, 3, 5, 7; 3825123056546413051 fools 2..23
    assert not pr.is_prime_u64(3215031751)
    assert not pr.is_prime_u64(3825123056546413051)
    assert pr.is_prime_u64(2**61 - 1)


def test_smooth_factor_multiplies_back():
    n = 2**64 + 1
    fac = pr.smooth_factor(n)
    prod = fac.residue
    for p, e in fac.primes:
        prod *= p**e
    assert prod == n
    assert fac.complete


@pytest.mark.parametrize("x,p,want", [(2, 7, 3), (1, 11, 1), (3, 5, 4), (2, 65537, 32)])
def test_mult_order_examples(x, p, want):
    assert pr.mult_order(x, p) == want


def test_mult_order_rejects():
    with pytest.raises(ValueError):
        pr.mult_order(2, 9)
    with pytest.raises(ValueError):
        pr.mult_order(0, 7)


def test_integer_tower_small():
    t = pr.integer_tower(2, 2)
    assert [(e.k, e.p, e.order) for e in t] == [(1, 5, 4), (2, 17, 8)]


def test_integer_tower_invariants():
    for q in (2, 3, -5, 10):
        t = pr.integer_tower(q, 5)
        assert len(set(t.primes())) == len(t.entries)
        for e in t:
            assert (q ** (2**e.k) + 1) % e.p == 0
            assert pow(q, 2**e.k, e.p) == e.p - 1
            assert pr.mult_order(q, e.p) == 2 ** (e.k + 1)


@pytest.mark.parametrize("q", [-1, 0, 1])
def test_integer_tower_rejects_roots_of_unity(q):
    with pytest.raises(DomainError):
        pr.integer_tower(q, 3)


def test_linear_polynomial_agrees_with_integer_tower():
    a = pr.algebraic_tower([-2, 1], 4)
    b = pr.integer_tower(2, 4)
    assert a.primes() == b.primes()
    assert a.entries[0].root == (2,)


def test_golden_tower():
    t = pr.algebraic_tower("x^2 - x - 1", 6)
    assert (t.entries[0].k, t.entries[0].p, t.entries[0].d, t.entries[0].root) == (1, 5, 1, (3,))
    assert [e.p for e in t] == [5, 3, 7, 47, 2207, 1087]
    for e in t:
        R = abs(pr.resultant([-1, -1, 1], [1] + [0] * (2**e.k - 1) + [1]))
        assert R % e.p == 0
        assert e.order == 2 ** (e.k + 1)
        if e.d > 1:
            assert len(e.modulus) == e.d + 1


def test_algebraic_tower_errors():
    with pytest.raises(DomainError):
        pr.algebraic_tower("x^2 + 1", 3)
    with pytest.raises(ValueError):
        pr.algebraic_tower("x^2 - 1", 3)
    with pytest.raises(ValueError):
        pr.algebraic_tower("x^2 + x", 3)
    with pytest.raises(ValueError):
        pr.algebraic_tower([5], 3)


def test_unit_resultant_is_a_proven_miss():
    t = pr.algebraic_tower("x^2 + 2", 1)
    assert not t.entries
    assert t.misses[0].status == "provably none"


def test_serialization():
    t = pr.algebraic_tower([-1, -1, 1], 3)
    rows = list(csv.reader(io.StringIO(t.to_csv())))
    assert rows[0] == ["k", "p", "d", "root", "order"]
    assert rows[1] == ["1", "5", "1", "3", "4"]
    doc = json.loads(t.to_json())
    assert [e["p"] for e in doc["entries"]] == t.primes()
    assert set(doc["certificates"]) == {"1", "2", "3"}
