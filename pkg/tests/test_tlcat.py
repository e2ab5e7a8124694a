import pytest
from hypothesis import given
from hypothesis import strategies as st

from tlcenter import diagram as dg
from tlcenter import tlcat as tl
from tlcenter.qarith import Cyclotomic, DomainError, Finite, qint, root_of_unity_domain

G = tl.generic_domain()


def random_morphism(data, dom, n, m, mode=tl.GENERIC):
    ds = dg.enumerate_diagrams(n, m)
    terms = []
    for d in data.draw(st.lists(st.sampled_from(ds), min_size=1, max_size=4)):
        terms.append((d.index, dom(data.draw(st.integers(-3, 3)))))
    return tl.Morphism.from_terms(dom, n, m, terms, mode)


@given(data=st.data())
def test_compose_associative_and_bilinear(data):
    f = random_morphism(data, G, 2, 2)
    g = random_morphism(data, G, 2, 4)
    h = random_morphism(data, G, 4, 2)
    assert tl.compose(tl.compose(f, h), g) == tl.compose(f, tl.compose(h, g))
    f2 = random_morphism(data, G, 2, 2)
    assert tl.compose(f + f2, h) == tl.compose(f, h) + tl.compose(f2, h)


@given(data=st.data())
def test_tensor_functorial(data):
    a, c = random_morphism(data, G, 1, 1), random_morphism(data, G, 1, 1)
    b, d = random_morphism(data, G, 2, 2), random_morphism(data, G, 2, 2)
    assert tl.compose(tl.tensor(a, b), tl.tensor(c, d)) == tl.tensor(tl.compose(a, c), tl.compose(b, d))


def test_loop_value_and_zigzags():
    for dom in (G, Cyclotomic(10), Finite(7)):
        circle = tl.compose(tl.cap(dom), tl.cup(dom))
        assert circle.coefficient(dg.enumerate_diagrams(0, 0)[0]) == -qint(2, dom)
    zig = tl.compose(tl.tensor(tl.identity(1, G), tl.cap(G)), tl.tensor(tl.cup(G), tl.identity(1, G)))
    assert zig == tl.identity(1, G)


def test_crystal_mode_rules():
    ident = tl.identity(1, G, tl.CRYSTAL)
    zig = tl.compose(
        tl.tensor(ident, tl.cap(G, tl.CRYSTAL)),
        tl.tensor(tl.cup(G, tl.CRYSTAL), ident),
    )
    assert zig.is_zero()
    circle = tl.compose(tl.cap(G, tl.CRYSTAL), tl.cup(G, tl.CRYSTAL))
    assert circle == tl.identity(0, G, tl.CRYSTAL)


@pytest.mark.parametrize("dom", [G, root_of_unity_domain(7), Finite(101)], ids=str)
def test_jones_wenzl_properties(dom):
    for n in range(1, 6):
        J = tl.jones_wenzl(n, dom)
        assert tl.compose(J, J) == J
        for i in range(n - 1):
            assert tl.compose(tl.cap_at(n, i, dom), J).is_zero()
            assert tl.compose(J, tl.cup_at(n, i, dom)).is_zero()
        assert J.coefficient(dg.identity(n)) == dom.one


def test_jones_wenzl_two_explicit():
    J = tl.jones_wenzl(2, G)
    e = tl.e_at(2, 0, G)
    assert J == tl.identity(2, G) + e.scale(qint(2, G).inverse())


def test_jones_wenzl_vanishing_qint():
    with pytest.raises(DomainError, match=r"\[3\]_q = 0 at κ=3"):
        tl.jones_wenzl(3, Cyclotomic(6))


def test_qtrace_both_conventions():
    for n in range(0, 7):
        J = tl.jones_wenzl(n, G)
        assert tl.qtrace(J) == (-1) ** n * qint(n + 1, G)
        assert tl.qtrace(J, tl.PLUS) == qint(n + 1, G)


def test_qtrace_matches_fiber_functor():
    for n in range(1, 5):
        J = tl.jones_wenzl(n, G)
        assert tl.fiber_trace(tl.fiber_eval(J), n, G) == tl.qtrace(J)


@given(data=st.data())
def test_fiber_functor_is_monoidal(data):
    f = random_morphism(data, G, 2, 2)
    g = random_morphism(data, G, 2, 0)
    lhs = tl.fiber_eval(tl.compose(g, f))
    F, Gm = tl.fiber_eval(f), tl.fiber_eval(g)
    prod = [[sum((Gm[i][k] * F[k][j] for k in range(4)), G.zero) for j in range(4)] for i in range(1)]
    assert lhs == prod


def test_gram_matrix_symmetric_and_generic_full_rank():
    for n in range(5):
        M = tl.gram_matrix(n, G)
        assert all(M[i][j] == M[j][i] for i in range(len(M)) for j in range(len(M)))
        rank, rad = tl.negligible_rank(n, G)
        assert rank == dg.catalan(n) and rad == []


def test_negligible_radical_at_root_of_unity():
    dom = Cyclotomic(8)  # κ = 4
    rank, rad = tl.negligible_rank(4, dom)
    assert rank == sum(c * c for c in tl.multiplicity_profile(4, 4).values())
    for f in rad:
        for g in dg.enumerate_diagrams(4, 4):
            gf = tl.compose(tl.Morphism.from_diagram(dom, g), f)
            assert tl.qtrace(gf).is_zero()


def test_multiplicity_profile():
    assert tl.multiplicity_profile(3) == {1: 2, 3: 1}
    assert tl.multiplicity_profile(3, 3) == {1: 1}
    for n in range(8):
        prof = tl.multiplicity_profile(n)
        assert sum(c * (lab + 1) for lab, c in prof.items()) == 2**n


def test_split_idempotent():
    J = tl.jones_wenzl(3, G)
    ok, g = tl.is_split(J)
    assert ok
    assert tl.compose(tl.compose(J, g), J) == J
