"""The linear Temperley-Lieb category over an exact scalar domain.

Morphisms are finite linear combinations of planar diagrams.  The coefficient
vector is stored as raw ring elements with one shared denominator, which keeps
Q(v) arithmetic in integer polynomials on the hot paths.

Loops evaluate to delta = -[2]_q in generic mode and to 1 in crystal mode, where
a glued pair with a zigzag contributes nothing.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from . import diagram as dg
from .fusiondata import fusion
from .qarith import DomainError, GenericV, Scalar, ScalarDomain, qint

__all__ = [
    "Mode",
    "SphericalConvention",
    "Morphism",
    "Cut",
    "compose",
    "tensor",
    "identity",
    "cup",
    "cap",
    "cup_at",
    "cap_at",
    "e_at",
    "delta",
    "qtrace",
    "gram_loops",
    "gram_matrix",
    "negligible_rank",
    "jones_wenzl",
    "is_split",
    "multiplicity_profile",
    "fiber_eval",
    "fiber_trace",
    "generic_domain",
    "GENERIC",
    "CRYSTAL",
    "MINUS",
    "PLUS",
]


class Mode(Enum):
    GENERIC = "generic"
    CRYSTAL = "crystal"


GENERIC = Mode.GENERIC
CRYSTAL = Mode.CRYSTAL


@dataclass(frozen=True)
class SphericalConvention:
    """Which of the two spherical structures reports dimensions.

    ``sign='-'`` (default) gives dim T_n = (-1)^n [n+1]_q; ``sign='+'`` twists
    traces on End(n) by (-1)^n and gives [n+1]_q.  The loop value itself is
    never affected.
    """

    sign: str = "-"

    def __post_init__(self):
        if self.sign not in "+-" or len(self.sign) != 1:
            raise ValueError("sign must be '+' or '-'")


MINUS = SphericalConvention("-")
PLUS = SphericalConvention("+")


def delta(dom: ScalarDomain, mode: Mode = GENERIC) -> Scalar:
    return dom.one if mode is CRYSTAL else -qint(2, dom)


class Morphism:
    """An element of Hom(src, tgt); immutable by convention."""

    __slots__ = ("dom", "src", "tgt", "coeffs", "den", "mode")

    def __init__(self, dom: ScalarDomain, src: int, tgt: int, coeffs: dict, den=None, mode: Mode = GENERIC, *, normalized: bool = False):
        self.dom = dom
        self.src = src
        self.tgt = tgt
        self.mode = mode
        if den is None:
            den = dom.r_one
        if not normalized:
            if dom.is_field_repr:
                red, isz = dom.r_red, dom.r_iszero
                coeffs = {k: c for k, c in ((k, red(c)) for k, c in coeffs.items()) if not isz(c)}
            else:
                coeffs, den = dom.r_norm_vec(coeffs, den)
        self.coeffs = coeffs
        self.den = den

    # -- construction ----------------------------------------------------
    @classmethod
    def zero(cls, dom, src, tgt, mode=GENERIC) -> "Morphism":
        return cls(dom, src, tgt, {}, mode=mode, normalized=True)

    @classmethod
    def from_diagram(cls, dom, d: dg.Diagram, coeff=1, mode=GENERIC) -> "Morphism":
        s = dom(coeff)
        return cls(dom, d.n_bottom, d.n_top, {d.index: s.num}, s.den, mode)

    @classmethod
    def from_terms(cls, dom, src, tgt, terms, mode=GENERIC) -> "Morphism":
        """From an iterable of (Diagram or index, coefficient)."""
        out = cls.zero(dom, src, tgt, mode)
        for d, c in terms:
            idx = d.index if isinstance(d, dg.Diagram) else d
            out = out + cls(dom, src, tgt, {idx: dom(c).num}, dom(c).den, mode)
        return out

    # -- inspection ------------------------------------------------------
    def basis(self) -> list[dg.Diagram]:
        return dg.enumerate_diagrams(self.src, self.tgt)

    def coefficient(self, d) -> Scalar:
        idx = d.index if isinstance(d, dg.Diagram) else d
        c = self.coeffs.get(idx)
        if c is None:
            return self.dom.zero
        return self.dom.pair(c, self.den)

    def terms(self) -> list[tuple[dg.Diagram, Scalar]]:
        ds = self.basis()
        return [(ds[i], self.dom.pair(c, self.den)) for i, c in sorted(self.coeffs.items())]

    def vector(self) -> list[Scalar]:
        """Dense coefficient vector over the interned basis."""
        n = len(self.basis())
        return [self.coefficient(i) for i in range(n)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self) -> int:
        return len(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})·[{d}]" for d, c in self.terms())

    def __repr__(self) -> str:
        return f"Morphism({self.src}->{self.tgt}: {self})"

    # -- linear structure ------------------------------------------------
    def _check(self, other: "Morphism"):
        if self.dom != other.dom:
            raise DomainError("morphisms over different domains")
        if self.mode is not other.mode:
            raise ValueError("mixing generic and crystal morphisms")

    def __add__(self, other: "Morphism") -> "Morphism":
        self._check(other)
        if (self.src, self.tgt) != (other.src, other.tgt):
            raise ValueError("adding morphisms of different shapes")
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        a, b = self.den, other.den
        if a == b:
            out = dict(self.coeffs)
            for k, c in other.coeffs.items():
                out[k] = out[k] + c if k in out else c
            return Morphism(self.dom, self.src, self.tgt, out, a, self.mode)
        out = {k: c * b for k, c in self.coeffs.items()}
        for k, c in other.coeffs.items():
            out[k] = out[k] + c * a if k in out else c * a
        return Morphism(self.dom, self.src, self.tgt, out, a * b, self.mode)

    def __neg__(self) -> "Morphism":
        red = self.dom.r_red
        return Morphism(self.dom, self.src, self.tgt, {k: red(-c) for k, c in self.coeffs.items()}, self.den, self.mode, normalized=True)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def scale(self, s) -> "Morphism":
        s = self.dom(s)
        if s.is_zero():
            return Morphism.zero(self.dom, self.src, self.tgt, self.mode)
        return Morphism(self.dom, self.src, self.tgt, {k: c * s.num for k, c in self.coeffs.items()}, self.den * s.den, self.mode)

    def __rmul__(self, s) -> "Morphism":
        return self.scale(s)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        if (self.src, self.tgt, self.mode) != (other.src, other.tgt, other.mode) or self.dom != other.dom:
            return False
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    # -- categorical structure ------------------------------------------
    def __matmul__(self, other: "Morphism") -> "Morphism":
        """``f @ g`` is the composite f∘g."""
        return compose(self, other)

    def map_coefficients(self, target: ScalarDomain, fn) -> "Morphism":
        """Push coefficients through a ring map ``fn`` on raw elements."""
        den = fn(self.den)
        if target.r_iszero(den):
            raise DomainError("specialisation kills a denominator")
        inv = target.r_inv(den) if target.is_field_repr else None
        if inv is not None:
            coeffs = {k: fn(c) * inv for k, c in self.coeffs.items()}
            return Morphism(target, self.src, self.tgt, coeffs, target.r_one, self.mode)
        return Morphism(target, self.src, self.tgt, {k: fn(c) for k, c in self.coeffs.items()}, den, self.mode)


def _delta_powers(dom: ScalarDomain, mode: Mode, top: int):
    """Numerators D_l and shared denominator with delta^l = D_l / den, l <= top."""
    if mode is CRYSTAL or top == 0:
        return [dom.r_one] * (top + 1), dom.r_one
    d = delta(dom)
    if dom.is_field_repr:
        out = [dom.r_one]
        for _ in range(top):
            out.append(dom.r_red(out[-1] * d.num))
        return out, dom.r_one
    # generic: delta = N / D; delta^l = N^l D^(top-l) / D^top
    N, D = d.num, d.den
    pn = [dom.r_one]
    pd = [dom.r_one]
    for _ in range(top):
        pn.append(pn[-1] * N)
        pd.append(pd[-1] * D)
    return [pn[l] * pd[top - l] for l in range(top + 1)], pd[top]


def compose(f: Morphism, g: Morphism) -> Morphism:
    """The composite f∘g (g first)."""
    f._check(g)
    if g.tgt != f.src:
        raise ValueError(f"cannot compose Hom({f.src},{f.tgt}) after Hom({g.src},{g.tgt})")
    dom, mode = f.dom, f.mode
    n, k, m = g.src, g.tgt, f.tgt
    if not f.coeffs or not g.coeffs:
        return Morphism.zero(dom, n, m, mode)
    crystal = mode is CRYSTAL
    f_bots, f_tops = dg.half_split(k, m)
    g_bots, g_tops = dg.half_split(n, k)
    f_groups: dict[int, list] = {}
    for i, a in f.coeffs.items():
        f_groups.setdefault(f_bots[i], []).append((f_tops[i], a))
    g_groups: dict[int, list] = {}
    for j, b in g.coeffs.items():
        g_groups.setdefault(g_tops[j], []).append((g_bots[j], b))
    outer = dg.outer_table(n, m)
    acc: dict[int, object] = {}
    get = acc.get
    for tb, g_terms in g_groups.items():
        for bb, f_terms in f_groups.items():
            mid = dg.middle(k, tb, bb)
            if crystal and mid[2]:
                continue
            loops = 0 if crystal else mid[1]
            sig = mid[3] * 64 + mid[4]
            mi = mid[0]
            for ft, a in f_terms:
                for gb, b in g_terms:
                    r = outer.get((gb, mi, sig, ft))
                    if r is None:
                        r = dg.outer_index(n, m, gb, mid, ft)
                    key = (r << 6) | loops
                    prev = get(key)
                    acc[key] = a * b if prev is None else prev + a * b
    if not acc:
        return Morphism.zero(dom, n, m, mode)
    top = max(key & 63 for key in acc)
    pows, pden = _delta_powers(dom, mode, top)
    out: dict[int, object] = {}
    for key, c in acc.items():
        r, l = key >> 6, key & 63
        term = c if (l == 0 and top == 0) else c * pows[l]
        prev = out.get(r)
        out[r] = term if prev is None else prev + term
    return Morphism(dom, n, m, out, f.den * g.den * pden, mode)


def tensor(f: Morphism, g: Morphism) -> Morphism:
    """Horizontal juxtaposition f ⊗ g."""
    f._check(g)
    ti = dg.tensor_index
    out = {}
    for i, a in f.coeffs.items():
        for j, b in g.coeffs.items():
            out[ti(i, j, f.src, f.tgt, g.src, g.tgt)] = a * b
    return Morphism(f.dom, f.src + g.src, f.tgt + g.tgt, out, f.den * g.den, f.mode)


def identity(n: int, dom: ScalarDomain, mode: Mode = GENERIC) -> Morphism:
    return Morphism.from_diagram(dom, dg.identity(n), 1, mode)


def cup(dom: ScalarDomain, mode: Mode = GENERIC) -> Morphism:
    return Morphism.from_diagram(dom, dg.cup(), 1, mode)


def cap(dom: ScalarDomain, mode: Mode = GENERIC) -> Morphism:
    return Morphism.from_diagram(dom, dg.cap(), 1, mode)


def _whisker(n_left: int, d: dg.Diagram, n_right: int) -> dg.Diagram:
    return dg.tensor(dg.tensor(dg.identity(n_left), d), dg.identity(n_right))


def cap_at(n: int, i: int, dom: ScalarDomain, mode: Mode = GENERIC) -> Morphism:
    """Cap on strands i, i+1 (0-based) of n strands: Hom(n, n-2)."""
    return Morphism.from_diagram(dom, _whisker(i, dg.cap(), n - i - 2), 1, mode)


def cup_at(n: int, i: int, dom: ScalarDomain, mode: Mode = GENERIC) -> Morphism:
    """Cup creating strands i, i+1 (0-based) of n: Hom(n-2, n)."""
    return Morphism.from_diagram(dom, _whisker(i, dg.cup(), n - i - 2), 1, mode)


def e_at(n: int, i: int, dom: ScalarDomain, mode: Mode = GENERIC) -> Morphism:
    """cup∘cap on strands i, i+1 of n strands."""
    return Morphism.from_diagram(dom, _whisker(i, dg.intern(2, 2, (1, 0, 3, 2)), n - i - 2), 1, mode)


# ---------------------------------------------------------------------------
# traces, Gram matrices
# ---------------------------------------------------------------------------


def qtrace(f: Morphism, conv: SphericalConvention = MINUS) -> Scalar:
    """Right closure, sum of coeff · delta^(closed loops)."""
    if f.src != f.tgt:
        raise ValueError("trace needs an endomorphism")
    if f.mode is not GENERIC:
        raise ValueError("quantum trace is defined in generic mode")
    dom = f.dom
    ds = f.basis()
    by_loops: dict[int, object] = {}
    for i, c in f.coeffs.items():
        l = dg.trace_close(ds[i])
        by_loops[l] = by_loops[l] + c if l in by_loops else c
    d = delta(dom)
    out = dom.zero
    for l, c in by_loops.items():
        out = out + dom.pair(c, f.den) * d**l
    if conv.sign == "+" and f.src % 2:
        out = -out
    return out


@lru_cache(maxsize=None)
def gram_loops(n: int) -> tuple[tuple[int, ...], ...]:
    """L[i][j] = loops of the closure of basis_j ∘ basis_i (combinatorial)."""
    ds = dg.enumerate_diagrams(n, n)
    out = []
    for a in ds:
        row = []
        for b in ds:
            r, loops, _ = dg.glue_index(b.index, a.index, n, n, n)
            row.append(loops + dg.trace_close(ds[r]))
        out.append(tuple(row))
    return tuple(out)


def gram_matrix(n: int, dom: ScalarDomain) -> list[list[Scalar]]:
    """G[i][j] = qtrace(basis_j ∘ basis_i)."""
    d = delta(dom)
    L = gram_loops(n)
    top = max((max(r) for r in L), default=0)
    pw = [d**l for l in range(top + 1)]
    return [[pw[l] for l in row] for row in L]


def negligible_rank(n: int, dom: ScalarDomain, *, with_radical: bool = True):
    """(rank of the Gram form on End(n), basis of its radical as Morphisms).

    The radical is returned as ``None`` when ``with_radical`` is false.
    """
    from . import linalg

    rank = linalg.gram_rank(n, dom)
    if not with_radical:
        return rank, None
    size = dg.catalan(n)
    if rank == size:
        return rank, []
    vecs = linalg.nullspace(gram_matrix(n, dom), dom)
    if len(vecs) != size - rank:
        raise AssertionError("radical dimension disagrees with certified rank")
    rad = [Morphism.from_terms(dom, n, n, [(i, c) for i, c in enumerate(v) if c], GENERIC) for v in vecs]
    return rank, rad


# ---------------------------------------------------------------------------
# Jones-Wenzl
# ---------------------------------------------------------------------------

_jw_cache: dict = {}
_jw_lock = threading.Lock()


def _first_vanishing(n: int, dom: ScalarDomain) -> int | None:
    for k in range(2, n + 1):
        if qint(k, dom).is_zero():
            return k
    return None


def jones_wenzl(n: int, dom: ScalarDomain) -> Morphism:
    """JW_1 = id; JW_{k+1} = JW_k⊗1 + ([k]/[k+1]) (JW_k⊗1) e_k (JW_k⊗1).

    The plus sign is forced by delta = -[2]_q.  Raises :class:`DomainError`
    naming the first vanishing q-integer.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    bad = _first_vanishing(n, dom)
    if bad is not None:
        raise DomainError(f"[{bad}]_q = 0 at κ={bad}")
    key = (n, dom.fingerprint)
    hit = _jw_cache.get(key)
    if hit is not None:
        return hit
    if n <= 1:
        out = identity(n, dom)
    else:
        prev = jones_wenzl(n - 1, dom)
        A = tensor(prev, identity(1, dom))
        middle = compose(e_at(n, n - 2, dom), A)
        coef = qint(n - 1, dom) / qint(n, dom)
        out = A + compose(A, middle).scale(coef)
    with _jw_lock:
        _jw_cache[key] = out
    return out


# ---------------------------------------------------------------------------
# cuts, splitting, multiplicities
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Cut:
    """An idempotent-cut object (n, e)."""

    n: int
    e: Morphism

    @classmethod
    def whole(cls, n: int, dom: ScalarDomain, mode: Mode = GENERIC) -> "Cut":
        return cls(n, identity(n, dom, mode))


def is_split(f: Morphism):
    """Search g with f∘g∘f = f (linear in g).  Returns (found, g or None)."""
    from . import linalg

    dom, mode = f.dom, f.mode
    basis = dg.enumerate_diagrams(f.tgt, f.src)
    target = f.vector()
    columns = []
    for d in basis:
        g = Morphism.from_diagram(dom, d, 1, mode)
        columns.append(compose(f, compose(g, f)).vector())
    sol = linalg.solve(columns, target, dom)
    if sol is None:
        return False, None
    g = Morphism.from_terms(dom, f.tgt, f.src, [(i, c) for i, c in enumerate(sol) if c], mode)
    return True, g


def multiplicity_profile(n: int, kappa: int = 0) -> dict[int, int]:
    """Multiplicities of the simples in the n-fold power of the generator."""
    if kappa in (1, 2) or kappa < 0:
        raise ValueError("kappa must be 0 (generic) or >= 3")
    cur = {0: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for lab, c in cur.items():
            for out in fusion(lab, 1, kappa):
                nxt[out] = nxt.get(out, 0) + c
        cur = {k: v for k, v in nxt.items() if v}
    return dict(sorted(cur.items()))


# ---------------------------------------------------------------------------
# graded fiber functor
# ---------------------------------------------------------------------------


def fiber_eval(f: Morphism) -> list[list[Scalar]]:
    """Matrix of f under the graded fiber functor.

    The generator goes to span{u (degree 1), v (degree -1)}; cup ↦ -q u⊗v + v⊗u,
    cap(u⊗v) = 1, cap(v⊗u) = -q^{-1}.  Tensor states are bit strings with bit
    0 = u, 1 = v, leftmost factor most significant.  Rows index the target.
    """
    if f.mode is not GENERIC:
        raise ValueError("fiber functor is defined in generic mode")
    dom = f.dom
    n, m = f.src, f.tgt
    q = dom.q
    cup_val = {(0, 1): -q, (1, 0): dom.one}
    cap_val = {(0, 1): dom.one, (1, 0): -q.inverse()}
    mat = [[dom.zero for _ in range(2**n)] for _ in range(2**m)]
    ds = f.basis()
    for idx, c in f.coeffs.items():
        coeff = dom.pair(c, f.den)
        d = ds[idx]
        arcs = [(a, b) for a, b in enumerate(d.pairing) if a < b]
        for row in range(2**m):
            top = [(row >> (m - 1 - j)) & 1 for j in range(m)]
            for col in range(2**n):
                bot = [(col >> (n - 1 - j)) & 1 for j in range(n)]
                val = coeff
                for a, b in arcs:
                    if b < n:  # bottom turn-back: a cap
                        w = cap_val.get((bot[a], bot[b]))
                    elif a >= n:  # top turn-back: a cup
                        w = cup_val.get((top[a - n], top[b - n]))
                    else:  # through strand
                        w = dom.one if bot[a] == top[b - n] else None
                    if w is None:
                        val = None
                        break
                    val = val * w
                if val is not None:
                    mat[row][col] = mat[row][col] + val
    return mat


def fiber_trace(mat: list[list[Scalar]], n: int, dom: ScalarDomain) -> Scalar:
    """Graded trace with weights -q on u and -q^{-1} on v."""
    wu, wv = -dom.q, -dom.q.inverse()
    out = dom.zero
    for s in range(2**n):
        w = dom.one
        for j in range(n):
            w = w * (wv if (s >> j) & 1 else wu)
        out = out + mat[s][s] * w
    return out


def generic_domain() -> GenericV:
    return _GENERIC


_GENERIC = GenericV()
