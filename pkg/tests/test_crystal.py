from hypothesis import given
from hypothesis import strategies as st

from tlcenter import crystal as cr
from tlcenter import diagram as dg
from tlcenter.tlcat import CRYSTAL, GENERIC, compose


def test_relations_and_oracle():
    rep = cr.crystal_relations_check(3)
    assert rep.ok
    assert rep.oracle_pairs > 0
    assert rep.oracle_mismatches == 0


@st.composite
def composable(draw):
    n, k, m = (draw(st.integers(0, 5)) for _ in range(3))
    k += (n + k) % 2
    m += (k + m) % 2
    lows, ups = dg.enumerate_diagrams(n, k), dg.enumerate_diagrams(k, m)
    return draw(st.sampled_from(ups)), draw(st.sampled_from(lows))


@given(composable())
def test_glue_agrees_with_word_oracle(pair):
    up, lo = pair
    r, loops, zig = dg.glue_index(up.index, lo.index, lo.n_bottom, lo.n_top, up.n_top)
    od, _ = cr.oracle_glue(up, lo, CRYSTAL)
    assert zig == (od is None)
    if od is not None:
        assert od.index == r
    gd, gc = cr.oracle_glue(up, lo, GENERIC)
    assert (gd.index, gc) == (r, loops)


@given(composable())
def test_word_reconstructs_diagram(pair):
    up, _ = pair
    word = cr.word_of(up)
    assert sum(1 for op, _ in word if op == "cap") * 2 + up.n_top == up.n_bottom + 2 * sum(1 for op, _ in word if op == "cup")


def test_fiber_eval_of_cup_and_cap():
    assert cr.crystal_fiber_eval(dg.cup()) == [[0], [0], [1], [0]]
    assert cr.crystal_fiber_eval(dg.cap()) == [[0, 0, 1, 0]]


def test_unit_has_two_half_braidings():
    rep = cr.halfbraid_solutions(0)
    assert rep.conclusion == "solutions" and rep.verified
    assert sorted(s[0] for s in rep.solutions) == ["-1", "1"]


def test_two_copies_of_unit_give_involutions():
    rep = cr.halfbraid_solutions([0, 0])
    assert rep.conclusion == "family" and rep.verified
    assert any("involution" in note for note in rep.notes)


def test_no_half_braiding_on_small_generators():
    for m in (1, 2, 3):
        rep = cr.halfbraid_solutions(m)
        assert rep.is_empty
        assert rep.groebner_basis == ["1"]


def test_low_term_idempotents_are_idempotent():
    ids = cr.low_term_idempotents(2)
    assert len(ids) == 3
    for e in ids:
        assert compose(e, e) == e
        assert not e.is_zero()


def test_evidence_report():
    ev = cr.conjecture_evidence(2)
    assert ev.ok
    assert all(s["split"] and s["fails"] for s in ev.sums.values())
    # only the through-strand-free idempotent admits a cap-square solution
    solvable = [x for x in ev.idempotents if x["criterion_solvable"]]
    assert all(not x["through_strands"] for x in solvable)
    assert ev.to_json()["ok"]
