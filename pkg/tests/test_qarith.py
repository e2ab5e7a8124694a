import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tlcenter.qarith import (
    Cyclotomic,
    DomainError,
    Finite,
    GenericV,
    braiding_units,
    cyclotomic_poly,
    parse_scalar,
    qint,
    root_of_unity_domain,
)

G = GenericV()
C12 = Cyclotomic(12)
F49 = Finite(7, 2)
DOMAINS = [G, C12, root_of_unity_domain(5), F49, Finite(11)]

small = st.integers(-6, 6)


def random_element(dom, coeffs):
    """A fairly arbitrary element built from the generator."""
    gen = dom.v if isinstance(dom, GenericV) else (dom.x if isinstance(dom, Cyclotomic) else dom.q)
    out = dom.zero
    for k, c in enumerate(coeffs):
        out = out + c * gen**k
    return out


elements = st.lists(small, min_size=1, max_size=5)


@pytest.mark.parametrize("dom", DOMAINS, ids=str)
@given(a=elements, b=elements, c=elements)
def test_field_axioms(dom, a, b, c):
    x, y, z = (random_element(dom, t) for t in (a, b, c))
    assert x + y == y + x
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    if not y.is_zero():
        assert (x / y) * y == x


@pytest.mark.parametrize("dom", DOMAINS, ids=str)
def test_zero_division_raises(dom):
    with pytest.raises(DomainError):
        dom.one / dom.zero


def embed(s, N):
    """Complex value of a Cyclotomic(N) element at x = exp(2πi/N)."""
    body = str(s)[str(s).index("[") + 1 : -1]
    z = cmath.exp(2j * cmath.pi / N)
    return sum(float(Fraction(c)) * z**k for k, c in enumerate(body.split(",")))


@given(n=st.integers(1, 12), N=st.integers(3, 30))
def test_qint_matches_complex_formula(n, N):
    dom = Cyclotomic(N)
    q = cmath.exp(2j * cmath.pi / N)
    want = sum(q ** (n - 1 - 2 * i) for i in range(n))
    assert abs(embed(qint(n, dom), N) - want) < 1e-9


@given(m=st.integers(1, 8), n=st.integers(1, 8))
def test_qint_product_rule(m, n):
    # [m][n] = sum of [m+n-1-2k] for k < min(m, n)
    lhs = qint(m, G) * qint(n, G)
    rhs = G.zero
    for k in range(min(m, n)):
        rhs = rhs + qint(m + n - 1 - 2 * k, G)
    assert lhs == rhs


def test_qint_vanishes_at_root_of_unity():
    for kappa in range(3, 9):
        dom = root_of_unity_domain(kappa)
        assert qint(kappa, dom).is_zero()
        assert all(not qint(k, dom).is_zero() for k in range(1, kappa))


def test_cyclotomic_polynomials_against_known_values():
    assert cyclotomic_poly(1).coeffs() == [-1, 1]
    assert cyclotomic_poly(6).coeffs() == [1, -1, 1]
    assert cyclotomic_poly(12).coeffs() == [1, 0, -1, 0, 1]
    for n in range(1, 40):
        assert cyclotomic_poly(n).is_cyclotomic() == n


@pytest.mark.parametrize("dom", [G, C12.with_sqrt(), root_of_unity_domain(4), Finite(13, 1, [4])], ids=str)
def test_braiding_units_solve_the_quadratic(dom):
    for a in braiding_units(dom):
        assert a * a + (a * a).inverse() == qint(2, dom)


def test_unit_counts_at_special_points():
    assert len(braiding_units(G)) == 4
    assert len(braiding_units(Cyclotomic(1))) == 2
    minus = Cyclotomic(4, 2)
    assert minus.q == -1
    assert sorted(str(a * a) for a in braiding_units(minus)) == [str(minus(-1))] * 2


@pytest.mark.parametrize("dom", DOMAINS, ids=str)
@given(a=elements)
def test_parse_round_trip(dom, a):
    x = random_element(dom, a)
    assert parse_scalar(dom, str(x)) == x


def test_generic_parse_accepts_q_notation():
    assert parse_scalar(G, "q + q^-1") == qint(2, G)


def test_finite_field_rejects_composite():
    with pytest.raises(DomainError):
        Finite(9)
