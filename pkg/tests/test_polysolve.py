from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from tlcenter import polysolve as ps


def sympy_basis(texts, nvars, order="grevlex"):
    xs = sympy.symbols(f"x0:{nvars}")
    G = sympy.groebner([sympy.sympify(t.replace("^", "**")) for t in texts], *xs, order=order)
    out = []
    for g in G.exprs:
        poly = sympy.Poly(g, *xs)
        lc = poly.coeffs(order=order)[0]
        out.append({tuple(m): Fraction(int(sympy.fraction(c / lc)[0]), int(sympy.fraction(c / lc)[1])) for m, c in poly.terms()})
    return out


def canon(basis):
    return sorted(sorted(p.items()) for p in basis)


FIXED = [
    ["x0^2 - 1", "x0*x1 - 1", "x1^2 - 1"],
    ["x0^2+x1^2-1", "x0-x1"],
    ["x0*x1-1", "x0^2", "x1"],
    ["x0^3-2*x0*x1", "x0^2*x1-2*x1^2+x0"],
    ["x0+x1+x2", "x0*x1+x1*x2+x2*x0", "x0*x1*x2-1"],
    ["x0^2+x1*x2-1", "x1^2-x2", "x0*x2-x1^3+1/2"],
]


@pytest.mark.parametrize("texts", FIXED)
def test_reduced_basis_matches_sympy(texts):
    sys = ps.PolySystem.parse(texts)
    gb = ps.groebner(sys)
    assert canon(gb) == canon(sympy_basis(texts, sys.nvars))
    assert ps.is_groebner(gb)


term = st.tuples(st.integers(-3, 3), st.integers(0, 2), st.integers(0, 2), st.integers(0, 1))


def poly_text(terms):
    parts = [f"{c}*x0^{a}*x1^{b}*x2^{d}" for c, a, b, d in terms if c]
    return " + ".join(parts).replace("+ -", "- ") or "0"


@given(st.lists(st.lists(term, min_size=1, max_size=3), min_size=1, max_size=3))
def test_random_systems_match_sympy(systems):
    texts = [poly_text(t) for t in systems]
    texts = [t for t in texts if t != "0"]
    if not texts:
        return
    sys = ps.PolySystem.parse(texts, nvars=3)
    if not sys.generators:
        return
    gb = ps.groebner(sys)
    assert canon(gb) == canon(sympy_basis(texts, 3))


def test_lex_order():
    texts = ["x0^2+x1^2-1", "x0-x1^2"]
    sys = ps.PolySystem.parse(texts, order="lex")
    assert canon(ps.groebner(sys)) == canon(sympy_basis(texts, 2, "lex"))


def test_reduce_poly_membership():
    sys = ps.PolySystem.parse(FIXED[4])
    gb = ps.groebner(sys)
    member = ps.parse_poly("x0^3 - 1", 3)  # x0 is a root of t^3 - 1 here
    assert ps.reduce_poly(member, gb) == {}
    assert ps.reduce_poly(ps.parse_poly("x0 - 1", 3), gb) != {}


def test_variety_kinds():
    v = ps.variety(ps.PolySystem.parse(FIXED[0]))
    assert v.kind == "finite"
    assert sorted(tuple(p) for p in v.points) == [(-1, -1), (1, 1)]
    assert ps.variety(ps.PolySystem.parse(FIXED[2])).kind == "empty"
    assert ps.variety(ps.PolySystem.parse(["x0*x1"])).kind == "positive-dimensional"


def from_sympy(expr, xs):
    poly = sympy.Poly(expr, *xs)
    return {tuple(m): Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for m, c in poly.terms()}


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=3, unique_by=lambda t: t[0]))
def test_variety_recovers_planted_points(points):
    X, Y = sympy.symbols("X Y")
    gens = [
        from_sympy(sympy.expand(sympy.prod([X - a for a, _ in points])), (X, Y)),
        from_sympy(sympy.expand(Y - sympy.interpolate([(a, b) for a, b in points], X)), (X, Y)),
    ]
    sys = ps.PolySystem(2, gens)
    v = ps.variety(sys)
    assert v.kind == "finite"
    assert sorted(tuple(p) for p in v.points) == sorted((Fraction(a), Fraction(b)) for a, b in points)
    for p in v.points:
        for g in gens:
            assert ps.evaluate(g, p) == 0


def test_resource_guard():
    with pytest.raises(ps.ResourceGuard):
        ps.groebner(ps.PolySystem.parse(FIXED[5]), max_basis=1)


def test_parse_format_round_trip():
    p = ps.parse_poly("3/2*x0^2*x1 - x2 + 1", 3)
    assert ps.parse_poly(ps.format_poly(p), 3) == p
    with pytest.raises(ValueError):
        ps.parse_poly("x5", 2)
