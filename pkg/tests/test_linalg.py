import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tlcenter import linalg
from tlcenter.qarith import Cyclotomic, Finite, GenericV

G = GenericV()
C9 = Cyclotomic(9)
F = Finite(5, 2)


def rand_matrix(dom, rows, cols, rank, rng):
    gens = [dom.one, dom.q, dom.q * dom.q + 1]
    A = [[rng.choice(gens) * rng.randint(-2, 2) for _ in range(rank)] for _ in range(rows)]
    B = [[rng.choice(gens) * rng.randint(-2, 2) for _ in range(cols)] for _ in range(rank)]
    return [[sum((A[i][k] * B[k][j] for k in range(rank)), dom.zero) for j in range(cols)] for i in range(rows)]


@pytest.mark.parametrize("dom", [G, C9, F], ids=str)
@given(seed=st.integers(0, 10**6), rows=st.integers(1, 6), cols=st.integers(1, 6), rank=st.integers(0, 4))
def test_certified_rank_agrees_with_exact(dom, seed, rows, cols, rank):
    M = rand_matrix(dom, rows, cols, rank, random.Random(seed))
    assert linalg.certified_rank(M, dom).rank == linalg.rank(M, dom)


@pytest.mark.parametrize("dom", [G, C9, F], ids=str)
@given(seed=st.integers(0, 10**6))
def test_certified_kernel_is_a_kernel(dom, seed):
    rng = random.Random(seed)
    M = rand_matrix(dom, 5, 6, rng.randint(0, 4), rng)
    K, method = linalg.certified_kernel(M, dom)
    assert len(K) == 6 - linalg.rank(M, dom)
    for v in K:
        assert all(sum((a * b for a, b in zip(row, v)), dom.zero).is_zero() for row in M)
    assert linalg.rank(K, dom) == len(K) if K else True


@given(seed=st.integers(0, 10**6))
def test_independent_subset(seed):
    rng = random.Random(seed)
    M = rand_matrix(C9, 6, 4, rng.randint(1, 4), rng)
    idx = linalg.independent_subset(M, C9)
    assert len(idx) == linalg.rank(M, C9)
    assert linalg.rank([M[i] for i in idx], C9) == len(idx)


def test_solve_and_nullspace():
    dom = C9
    cols = [[dom.one, dom.zero], [dom.q, dom.one]]
    x = linalg.solve(cols, [dom.q + 1, dom(2)], dom)
    assert x is not None
    assert [cols[0][i] * x[0] + cols[1][i] * x[1] for i in range(2)] == [dom.q + 1, dom(2)]
    assert linalg.solve([[dom.zero, dom.zero]], [dom.one, dom.zero], dom) is None


def test_gram_rank_certificates_record_method():
    from tlcenter.tlcat import multiplicity_profile

    cert = linalg.gram_rank_certificate(4, Cyclotomic(12))
    assert cert.rank == 14 and cert.method
    for kappa in (4, 5):
        want = sum(c * c for c in multiplicity_profile(4, kappa).values())
        assert linalg.gram_rank(4, Cyclotomic(2 * kappa)) == want
