import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tlcenter import fusiondata as fd
from tlcenter.qarith import DomainError, root_of_unity_domain

kappas = st.integers(3, 12)


def test_generic_example():
    assert fd.fusion(2, 3) == [1, 3, 5]


def test_truncated_example():
    assert fd.fusion(1, 1, 3) == [0]
    assert fd.fusion(2, 2, 5) == [0, 2]
    with pytest.raises(ValueError):
        fd.fusion(3, 0, 4)


def mult(m, n, k, kappa):
    return fd.fusion(m, n, kappa).count(k)


@given(kappa=kappas, data=st.data())
def test_commutative_and_associative(kappa, data):
    lab = st.integers(0, kappa - 2)
    a, b, c = data.draw(lab), data.draw(lab), data.draw(lab)
    assert fd.fusion(a, b, kappa) == fd.fusion(b, a, kappa)
    left, right = {}, {}
    for x in fd.fusion(a, b, kappa):
        for y in fd.fusion(x, c, kappa):
            left[y] = left.get(y, 0) + 1
    for x in fd.fusion(b, c, kappa):
        for y in fd.fusion(a, x, kappa):
            right[y] = right.get(y, 0) + 1
    assert left == right


def test_multiplicities_cyclic_invariance():
    # with self-dual simples, m(k; i⊗j) is invariant under cycling (i, j, k)
    for kappa in (0, 5, 8):
        top = 6 if kappa == 0 else min(6, kappa - 2)
        for i, j, k in itertools.product(range(top + 1), repeat=3):
            assert mult(i, j, k, kappa) == mult(j, k, i, kappa) == mult(k, i, j, kappa)


def test_fusion_ring_tensor():
    ring = fd.fusion_ring(4)
    assert ring.labels == (0, 1, 2)
    assert ring.N[1][1] == (1, 0, 1)
    with pytest.raises(ValueError):
        fd.fusion_ring(0)


def test_modular_data_kappa_3():
    md = fd.modular_data(3)
    assert [[int(str(x) == str(md.dom(v))) for x, v in zip(row, want)] for row, want in zip(md.S, [[1, -1], [-1, -1]])] == [[1, 1], [1, 1]]


@pytest.mark.parametrize("kappa", range(3, 10))
def test_modular_data_properties(kappa):
    md = fd.modular_data(kappa)
    S = md.S
    r = len(S)
    assert all(S[i][j] == S[j][i] for i in range(r) for j in range(r))
    assert fd.check_modular(md)
    assert fd.transparent_simples(kappa) == {0}
    assert fd.transparent_by_s_matrix(md) == {0}
    assert fd.verlinde_check(md)
    # S^2 is a nonzero multiple of the identity (all simples self-dual)
    sq = [[sum((S[i][k] * S[k][j] for k in range(r)), md.dom.zero) for j in range(r)] for i in range(r)]
    assert all(sq[i][j].is_zero() for i in range(r) for j in range(r) if i != j)
    assert all(sq[i][i] == sq[0][0] for i in range(r)) and not sq[0][0].is_zero()


def test_other_braiding_units_also_modular():
    from tlcenter.qarith import braiding_units

    dom = root_of_unity_domain(5)
    for a in braiding_units(dom):
        assert fd.check_modular(fd.modular_data(5, a))


def test_bad_unit_rejected():
    dom = root_of_unity_domain(5)
    with pytest.raises(DomainError):
        fd.modular_data(5, dom.one)
