"""The crystal Temperley-Lieb category: checks and half-braiding searches.

Crystal composition (circles give 1, any composite containing a zigzag is 0) is
computed by the fast glue in :mod:`tlcenter.diagram`.  Here it is compared with
an independent route that writes the upper diagram as a word of single caps and
cups and applies them one at a time to the lower diagram, using only the
defining relations: a cap closing an arc is a circle, a cap meeting a top arc
is a zigzag, a cap on two through strands makes a new bottom arc.

The half-braiding search turns the criterion into a polynomial system in the
coefficients of φ₁ and hands it to :mod:`tlcenter.polysolve`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import diagram as dg
from . import polysolve as ps
from .braidcenter import _to_fraction, half_braiding_matrix_check, halfbraiding_system
from .qarith import Cyclotomic, ScalarDomain
from .tlcat import CRYSTAL, GENERIC, Cut, Mode, Morphism, compose, identity

__all__ = [
    "crystal_domain",
    "word_of",
    "oracle_glue",
    "crystal_fiber_eval",
    "crystal_relations_check",
    "CrystalSearchReport",
    "halfbraid_solutions",
    "low_term_idempotents",
    "conjecture_evidence",
]

_Q = Cyclotomic(1)


def crystal_domain() -> ScalarDomain:
    """The rationals, as the one-dimensional cyclotomic field."""
    return _Q


# ---------------------------------------------------------------------------
# generator-word oracle
# ---------------------------------------------------------------------------


def word_of(d: dg.Diagram) -> list[tuple[str, int]]:
    """Layers ('cap', i) / ('cup', i) whose composite is d, in order of application.

    Bottom arcs are closed innermost first; the surviving strands become the
    through strands; top arcs are then opened outermost first.
    """
    n, m = d.n_bottom, d.n_top
    word: list[tuple[str, int]] = []
    bottom_arcs = sorted(((a, b) for a, b in enumerate(d.pairing) if a < b < n), key=lambda ab: ab[1] - ab[0])
    current = list(range(n))
    for a, b in bottom_arcs:
        i = current.index(a)
        if current[i + 1] != b:
            raise AssertionError("bottom arc not adjacent after removing inner arcs")
        word.append(("cap", i))
        del current[i : i + 2]
    top_arcs = sorted(((a - n, b - n) for a, b in enumerate(d.pairing) if n <= a < b), key=lambda ab: ab[0] - ab[1])
    present = sorted(d.pairing[a] - n for a in range(n) if d.pairing[a] >= n)
    for a, b in top_arcs:
        i = sum(1 for x in present if x < a)
        word.append(("cup", i))
        present = sorted(present + [a, b])
    return word


def oracle_glue(upper: dg.Diagram, lower: dg.Diagram, mode: Mode) -> tuple[dg.Diagram | None, int]:
    """upper∘lower by applying upper's word to lower one generator at a time.

    Returns (diagram, circles) or (None, 0) when a zigzag kills the crystal term.
    """
    if upper.n_bottom != lower.n_top:
        raise ValueError("arity mismatch")
    n = lower.n_bottom
    partner: dict[tuple[str, int], tuple[str, int]] = {}
    for a, b in enumerate(lower.pairing):
        pa = ("b", a) if a < n else ("t", a - n)
        pb = ("b", b) if b < n else ("t", b - n)
        partner[pa] = pb
    width = lower.n_top
    circles = 0
    for op, i in word_of(upper):
        if op == "cap":
            x, y = ("t", i), ("t", i + 1)
            px, py = partner.pop(x), partner.pop(y)
            if px == y:
                circles += 1
            else:
                if mode is CRYSTAL and (px[0] == "t" or py[0] == "t"):
                    return None, 0
                partner[px], partner[py] = py, px
            partner = {_shift(k, i + 1, -2): _shift(v, i + 1, -2) for k, v in partner.items()}
            width -= 2
        else:
            partner = {_shift(k, i - 1, 2): _shift(v, i - 1, 2) for k, v in partner.items()}
            partner[("t", i)] = ("t", i + 1)
            partner[("t", i + 1)] = ("t", i)
            width += 2
    m = width
    pairing = [0] * (n + m)
    for (s, j), (s2, j2) in partner.items():
        pairing[j if s == "b" else n + j] = j2 if s2 == "b" else n + j2
    return dg.intern(n, m, tuple(pairing)), circles


def _shift(pt: tuple[str, int], after: int, by: int) -> tuple[str, int]:
    s, j = pt
    if s == "t" and j > after:
        return (s, j + by)
    return pt


def crystal_fiber_eval(d: dg.Diagram) -> list[list[int]]:
    """The q → 0 shadow of the graded fiber functor: cup ↦ v⊗u, cap(v⊗u) = 1."""
    n, m = d.n_bottom, d.n_top
    arcs = [(a, b) for a, b in enumerate(d.pairing) if a < b]
    mat = [[0] * (2**n) for _ in range(2**m)]
    for row in range(2**m):
        top = [(row >> (m - 1 - j)) & 1 for j in range(m)]
        for col in range(2**n):
            bot = [(col >> (n - 1 - j)) & 1 for j in range(n)]
            ok = True
            for a, b in arcs:
                if b < n:
                    ok = (bot[a], bot[b]) == (1, 0)
                elif a >= n:
                    ok = (top[a - n], top[b - n]) == (1, 0)
                else:
                    ok = bot[a] == top[b - n]
                if not ok:
                    break
            if ok:
                mat[row][col] = 1
    return mat


def _matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


@dataclass
class RelationsReport:
    circle: bool
    zigzags: bool
    identity_law: bool
    oracle_pairs: int
    oracle_mismatches: int
    generic_mismatches: int
    fiber_mismatches: int

    @property
    def ok(self) -> bool:
        return self.circle and self.zigzags and self.identity_law and not (self.oracle_mismatches or self.generic_mismatches or self.fiber_mismatches)


def crystal_relations_check(max_arity: int = 4) -> RelationsReport:
    """Defining relations plus agreement with the word oracle on all composable pairs."""
    dom = _Q
    one = identity(1, dom, CRYSTAL)
    cup = Morphism.from_diagram(dom, dg.cup(), 1, CRYSTAL)
    cap = Morphism.from_diagram(dom, dg.cap(), 1, CRYSTAL)
    from .tlcat import tensor

    circle = compose(cap, cup) == identity(0, dom, CRYSTAL)
    z1 = compose(tensor(one, cap), tensor(cup, one)).is_zero()
    z2 = compose(tensor(cap, one), tensor(one, cup)).is_zero()
    ident = compose(cap, identity(2, dom, CRYSTAL)) == cap
    pairs = bad = bad_generic = bad_fiber = 0
    for n, k, m in itertools.product(range(max_arity + 1), repeat=3):
        if (n + k) % 2 or (k + m) % 2:
            continue
        lows = dg.enumerate_diagrams(n, k)
        ups = dg.enumerate_diagrams(k, m)
        fib_low = [crystal_fiber_eval(d) for d in lows]
        fib_up = [crystal_fiber_eval(d) for d in ups]
        for iu, u in enumerate(ups):
            for il, lo in enumerate(lows):
                pairs += 1
                r, loops, zig = dg.glue_index(u.index, lo.index, n, k, m)
                od, oc = oracle_glue(u, lo, CRYSTAL)
                if zig != (od is None) or (od is not None and od.index != r):
                    bad += 1
                gd, gc = oracle_glue(u, lo, GENERIC)
                if gd.index != r or gc != loops:
                    bad_generic += 1
                prod = _matmul(fib_up[iu], fib_low[il]) if k else [[fib_up[iu][i][0] * fib_low[il][0][j] for j in range(2**n)] for i in range(2**m)]
                want = crystal_fiber_eval(dg.enumerate_diagrams(n, m)[r]) if not zig else [[0] * (2**n) for _ in range(2**m)]
                if prod != want:
                    bad_fiber += 1
    return RelationsReport(circle, z1 and z2, ident, pairs, bad, bad_generic, bad_fiber)


# ---------------------------------------------------------------------------
# half-braiding searches
# ---------------------------------------------------------------------------


@dataclass
class CrystalSearchReport:
    object: str
    unknowns: int
    stage: str
    generators: list[str]
    groebner_basis: list[str]
    conclusion: str  # "empty" | "solutions" | "family"
    solutions: list[list[str]] = field(default_factory=list)
    verified: bool = True
    notes: list[str] = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return self.conclusion == "empty"

    def to_json(self) -> dict:
        return {
            "object": self.object,
            "unknowns": self.unknowns,
            "stage": self.stage,
            "generators": self.generators,
            "groebner_basis": self.groebner_basis,
            "conclusion": self.conclusion,
            "solutions": self.solutions,
            "verified": self.verified,
            "notes": self.notes,
        }


def _as_blocks(X, dom) -> list[Cut]:
    if isinstance(X, int):
        return [Cut.whole(X, dom, CRYSTAL)]
    if isinstance(X, Cut):
        return [X]
    out = []
    for b in X:
        out.extend(_as_blocks(b, dom))
    return out


def _describe(blocks: list[Cut]) -> str:
    parts = []
    for b in blocks:
        whole = b.e == identity(b.n, b.e.dom, b.e.mode)
        parts.append(f"{b.n}" if whole else f"({b.n}, e)")
    return " ⊕ ".join(parts)


def _constant_generator(gens: list[dict]) -> dict | None:
    for g in gens:
        if g and all(sum(mono) == 0 for mono in g):
            return g
    return None


def halfbraid_solutions(X, m_bound: int = 5, squares: tuple[str, ...] = ("cap", "cup")) -> CrystalSearchReport:
    """All φ₁ on X satisfying the criterion in the crystal category.

    X is an arity, a :class:`Cut`, or a list of those (a direct sum).  The
    two squares are tried alone first: if they already generate the unit
    ideal, adding the invertibility equations cannot change that.
    """
    dom = _Q
    blocks = _as_blocks(X, dom)
    if any(b.n > m_bound for b in blocks):
        raise ValueError(f"object exceeds the arity bound {m_bound}")
    label = _describe(blocks)
    stage1 = halfbraiding_system(blocks, with_inverse=False, squares=squares)
    V = stage1.nvars
    names = [f"x{i}" for i in range(V)]
    gens = stage1.square_equations
    gen_txt = [ps.format_poly(g, names) for g in gens]
    const = _constant_generator(gens)
    if const is not None:
        return CrystalSearchReport(
            label, V, "squares", gen_txt, ["1"], "empty",
            notes=[f"generator {ps.format_poly(const, names)} is a nonzero constant", "the invertibility equations only enlarge this ideal"],
        )
    if V <= ps.MAX_VARS:
        gb = ps.groebner(ps.PolySystem(V, gens, names))
        if len(gb) == 1 and all(sum(m) == 0 for m in gb[0]):
            return CrystalSearchReport(label, V, "squares", gen_txt, ["1"], "empty", notes=["the invertibility equations only enlarge this ideal"])
    full = halfbraiding_system(blocks, with_inverse=True, squares=squares)
    W = full.nvars
    if W > ps.MAX_VARS:
        raise ps.ResourceGuard(f"{W} unknowns with the inverse exceed the limit of {ps.MAX_VARS}")
    names = [f"x{i}" for i in range(W)]
    gens = full.square_equations + full.inverse_equations
    sys = ps.PolySystem(W, gens, names)
    var = ps.variety(sys)
    gen_txt = [ps.format_poly(g, names) for g in gens]
    gb_txt = [ps.format_poly(g, names) for g in var.basis]
    if var.kind == "empty":
        return CrystalSearchReport(label, W, "squares+inverse", gen_txt, gb_txt, "empty")
    if var.kind == "finite":
        sols, ok = [], True
        for pt in var.points:
            rep = half_braiding_matrix_check(blocks, full.phi_blocks(pt), inverse=full.inverse_blocks(pt))
            ok = ok and rep.ok
            sols.append([str(x) for x in pt])
        notes = ["algebraic points beyond the rationals present"] if var.algebraic else []
        return CrystalSearchReport(label, W, "squares+inverse", gen_txt, gb_txt, "solutions", sols, ok, notes)
    notes = []
    ok = True
    if all(b.n == 0 for b in blocks):
        from .braidcenter import grading_halfbraidings

        g = grading_halfbraidings(len(blocks), dom, CRYSTAL)
        ok = g.ideal_equals_involutions and g.samples_ok
        notes.append(g.description)
    return CrystalSearchReport(label, W, "squares+inverse", gen_txt, gb_txt, "family", [], ok, notes)


def low_term_idempotents(m: int, max_terms: int = 2) -> list[Morphism]:
    """Idempotents in crystal End(m) spanned by at most ``max_terms`` diagrams."""
    dom = _Q
    basis = [Morphism.from_diagram(dom, d, 1, CRYSTAL) for d in dg.enumerate_diagrams(m, m)]
    out: list[Morphism] = []
    seen = set()
    for k in range(1, max_terms + 1):
        for combo in itertools.combinations(range(len(basis)), k):
            # e = Σ x_t d_t; e∘e = e as polynomial equations in x
            V = k
            acc: dict[int, dict] = {}
            for a in range(k):
                for b in range(k):
                    prod = compose(basis[combo[a]], basis[combo[b]])
                    for idx, c in prod.coeffs.items():
                        mono = [0] * V
                        mono[a] += 1
                        mono[b] += 1
                        bucket = acc.setdefault(idx, {})
                        bucket[tuple(mono)] = bucket.get(tuple(mono), Fraction(0)) + _to_fraction(dom.pair(c, prod.den))
            for a in range(k):
                bucket = acc.setdefault(combo[a], {})
                mono = [0] * V
                mono[a] = 1
                bucket[tuple(mono)] = bucket.get(tuple(mono), Fraction(0)) - 1
            gens = [{mo: c for mo, c in p.items() if c} for p in acc.values()]
            gens = [g for g in gens if g]
            var = ps.variety(ps.PolySystem(V, gens))
            for pt in var.points:
                if any(x == 0 for x in pt):
                    continue
                e = Morphism.zero(dom, m, m, CRYSTAL)
                for x, t in zip(pt, combo):
                    e = e + basis[t].scale(dom(x))
                key = tuple(sorted((i, str(dom.pair(c, e.den))) for i, c in e.coeffs.items()))
                if key in seen or compose(e, e) != e:
                    continue
                seen.add(key)
                out.append(e)
    return out


@dataclass
class EvidenceReport:
    m_max: int
    single: dict[int, CrystalSearchReport]
    sums: dict[int, dict]
    idempotents: list[dict]
    note: str

    @property
    def ok(self) -> bool:
        singles = all(r.is_empty for r in self.single.values())
        sums = all(s["split"] and s["fails"] for s in self.sums.values())
        idem = all(x["consistent"] for x in self.idempotents)
        return singles and sums and idem

    def to_json(self) -> dict:
        return {
            "m_max": self.m_max,
            "single": {m: r.to_json() for m, r in self.single.items()},
            "sums": self.sums,
            "idempotents": self.idempotents,
            "note": self.note,
            "ok": self.ok,
        }


def _has_through(e: Morphism) -> bool:
    ds = e.basis()
    return any(ds[i].through_strands() > 0 for i in e.coeffs)


def conjecture_evidence(m_max: int = 3, m_bound: int = 5) -> EvidenceReport:
    """Finite evidence for the crystal conjecture up to arity m_max."""
    dom = _Q
    single = {m: halfbraid_solutions(m, m_bound) for m in range(1, m_max + 1)}
    for m in range(m_max + 1, m_max + 2):
        if m <= m_bound:
            single.setdefault(m, halfbraid_solutions(m, m_bound))
    sums = {}
    for m in range(1, m_max + 1):
        blocks = [Cut.whole(m, dom, CRYSTAL), Cut.whole(m + 1, dom, CRYSTAL)]
        off = halfbraiding_system(blocks, with_inverse=False)
        split = all(r == c for w, r, c, _ in off.unknowns)
        r1, r2 = single[m], single.get(m + 1)
        both = r1.is_empty and (r2 is not None and r2.is_empty)
        sums[m] = {"object": f"{m} ⊕ {m + 1}", "split": split, "psi_empty": r1.is_empty, "theta_empty": None if r2 is None else r2.is_empty, "fails": both}
    idem = []
    for m in range(1, m_max + 1):
        for e in low_term_idempotents(m):
            rep = halfbraid_solutions(Cut(m, e), m_bound, squares=("cap",))
            through = _has_through(e)
            idem.append({
                "m": m,
                "e": str(e),
                "through_strands": through,
                "criterion_solvable": not rep.is_empty,
                "consistent": (not through) or rep.is_empty,
            })
    note = "idempotents restricted to combinations of at most two diagrams"
    return EvidenceReport(m_max, single, sums, idem, note)
