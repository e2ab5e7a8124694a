import json

import pytest

from tlcenter import stability as st


def test_hom_dim_small_kappa_values():
    rep = st.hom_dim_profile(3, 12)
    assert [rep.values[k] for k in (3, 4, 5)] == [1, 4, 5]
    assert rep.generic == 5
    assert rep.threshold == 5
    assert rep.stable


def test_hom_dim_trivial_object():
    rep = st.hom_dim_profile(0, 10)
    assert set(rep.values.values()) == {1}
    assert rep.threshold == st.KAPPA_MIN


@pytest.mark.parametrize("n", range(8))
def test_hom_dim_threshold(n):
    rep = st.hom_dim_profile(n, 30)
    assert rep.threshold == max(n + 2, st.KAPPA_MIN)


def test_hom_dim_two_from_four():
    rep = st.hom_dim_profile(2, 20)
    assert rep.values[3] != rep.generic
    assert rep.threshold == 4


@pytest.mark.parametrize("r", range(5))
def test_fusion_threshold(r):
    rep = st.fusion_stability(r, 25)
    assert rep.stable
    assert rep.threshold == max(r + 2, st.KAPPA_MIN)


@pytest.mark.parametrize("r", range(4))
def test_center_windows(r):
    total = st.center_label_agree(r, 20)
    each = st.center_label_agree(r, 20, window="each")
    assert total.threshold == max(r + 2, st.KAPPA_MIN)
    assert each.threshold == max(2 * r + 2, st.KAPPA_MIN)
    assert total.generic == 0


def test_reports_are_finite_surrogates():
    for rep in (st.hom_dim_profile(1, 8), st.fusion_stability(1, 8), st.center_label_agree(1, 8)):
        assert rep.note == st.SURROGATE_NOTE
        assert "threshold" in rep.table()
        doc = json.loads(rep.to_json())
        assert doc["threshold"] == rep.threshold


def test_argument_checks():
    with pytest.raises(ValueError):
        st.hom_dim_profile(8)
    with pytest.raises(ValueError):
        st.fusion_stability(2, 2)
    with pytest.raises(ValueError):
        st.center_label_agree(1, 10, window="both")
