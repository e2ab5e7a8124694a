"""Braidings of TL, half-braidings, and the center objects M(i,j) and W(i,j).

A crossing of two strands is σ = a·id + a^{-1}·(cup∘cap) with a one of the four
braiding units.  Half-braidings are stored through their component on the
generator, φ₁ : X⊗1 → 1⊗X.  For the objects built here that component is a
product of crossing layers on n+1 strands, times a sign, composed with the cut
idempotent; the layer list is kept so that morphisms can be pushed through one
crossing at a time instead of expanding the full braid.

The criterion used throughout: φ₁ determines a half-braiding exactly when it is
invertible on the cut and

    (cap⊗1_X)∘(1⊗φ₁)∘(φ₁⊗1) = e⊗cap,     (1⊗φ₁)∘(φ₁⊗1)∘(e⊗cup) = cup⊗e.

In a category whose associator is twisted by a 3-cocycle ω on the Z/2 grading,
the left-hand sides pick up ω(1,1,g)·ω(1,g,1)^{-1}·ω(g,1,1) for X of degree g.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import diagram as dg
from . import linalg
from .fusiondata import fusion
from .qarith import Cyclotomic, DomainError, GenericV, Scalar, ScalarDomain, braiding_units, qint
from .tlcat import (
    CRYSTAL,
    GENERIC,
    Cut,
    Mode,
    Morphism,
    cap,
    compose,
    cup,
    e_at,
    generic_domain,
    identity,
    jones_wenzl,
    tensor,
)

__all__ = [
    "crossing",
    "sigma",
    "braiding_check",
    "yang_baxter_check",
    "HalfBraidingReport",
    "half_braiding_check",
    "half_braiding_matrix_check",
    "CenterObject",
    "center_object",
    "unit_object",
    "xi_object",
    "tensor_objects",
    "center_hom_dim",
    "center_hom_space",
    "FusionTable",
    "center_fusion_verify",
    "corrected_center_fusion",
    "printed_center_fusion",
    "AbelianCocycle",
    "validate_abelian_cocycle",
    "is_bicharacter",
    "semion_cocycle",
    "main_theorem_gamma",
    "twist_half_braiding",
    "twist_compatibility_check",
    "minus_q_twist_check",
    "halfbraiding_system",
    "grading_halfbraidings",
]

Layer = tuple[int, Scalar]


# ---------------------------------------------------------------------------
# crossings and braidings
# ---------------------------------------------------------------------------


def _check_unit(a: Scalar) -> None:
    if not any(a == u for u in braiding_units(a.dom)):
        raise DomainError(f"{a} is not a braiding unit")


def crossing(n: int, p: int, a: Scalar, mode: Mode = GENERIC) -> Morphism:
    """σ(a) on strands p, p+1 of n strands."""
    dom = a.dom
    return identity(n, dom, mode).scale(a) + e_at(n, p, dom, mode).scale(a.inverse())


def _apply_after(f: Morphism, layers: list[Layer]) -> Morphism:
    """L_k∘…∘L_1∘f, where layers are listed in the order they act."""
    N = f.tgt
    for p, a in layers:
        f = f.scale(a) + compose(e_at(N, p, f.dom, f.mode), f).scale(a.inverse())
    return f


def _apply_before(g: Morphism, layers: list[Layer]) -> Morphism:
    """g∘L_k∘…∘L_1."""
    N = g.src
    for p, a in reversed(layers):
        g = g.scale(a) + compose(g, e_at(N, p, g.dom, g.mode)).scale(a.inverse())
    return g


def _sigma_layers(m: int, n: int, a: Scalar) -> list[Layer]:
    out = []
    for t in range(m - 1, -1, -1):
        for p in range(t, t + n):
            out.append((p, a))
    return out


def _inverse_layers(layers: list[Layer]) -> list[Layer]:
    return [(p, a.inverse()) for p, a in reversed(layers)]


def sigma(m: int, n: int, a: Scalar, mode: Mode = GENERIC) -> Morphism:
    """The braiding m̲⊗n̲ → n̲⊗m̲ with every crossing expanded."""
    _check_unit(a)
    return _apply_after(identity(m + n, a.dom, mode), _sigma_layers(m, n, a))


def braiding_check(m: int, n: int, a: Scalar) -> dict[str, bool]:
    """Hexagons, naturality in cup/cap, and invertibility of sigma(m, n, a)."""
    dom = a.dom
    s = sigma(m, n, a)
    out: dict[str, bool] = {}
    # inverse: σ_{n,m}(a^{-1}) undoes σ_{m,n}(a)
    inv = sigma(n, m, a.inverse())
    out["inverse"] = compose(inv, s) == identity(m + n, dom) and compose(s, inv) == identity(m + n, dom)
    # hexagons: σ_{m,n+1} = (1_n⊗σ_{m,1})∘(σ_{m,n}⊗1) and σ_{m+1,n} = (σ_{1,n}⊗1_m)∘(1⊗σ_{m,n})
    h1 = compose(tensor(identity(n, dom), sigma(m, 1, a)), tensor(s, identity(1, dom)))
    h2 = compose(tensor(sigma(1, n, a), identity(m, dom)), tensor(identity(1, dom), s))
    out["hexagon_right"] = h1 == sigma(m, n + 1, a)
    out["hexagon_left"] = h2 == sigma(m + 1, n, a)
    # naturality in the second slot against cap and cup (n >= 2 / any n)
    ok = True
    if n >= 2:
        for i in range(n - 1):
            capi = tensor(tensor(identity(i, dom), cap(dom)), identity(n - i - 2, dom))
            lhs = compose(tensor(capi, identity(m, dom)), s)
            rhs = compose(sigma(m, n - 2, a), tensor(identity(m, dom), capi))
            ok = ok and lhs == rhs
    for i in range(n + 1):
        cupi = tensor(tensor(identity(i, dom), cup(dom)), identity(n - i, dom))
        lhs = compose(sigma(m, n + 2, a), tensor(identity(m, dom), cupi))
        rhs = compose(tensor(cupi, identity(m, dom)), s)
        ok = ok and lhs == rhs
    out["natural_second"] = ok
    ok = True
    if m >= 2:
        for i in range(m - 1):
            capi = tensor(tensor(identity(i, dom), cap(dom)), identity(m - i - 2, dom))
            lhs = compose(tensor(identity(n, dom), capi), s)
            rhs = compose(sigma(m - 2, n, a), tensor(capi, identity(n, dom)))
            ok = ok and lhs == rhs
    out["natural_first"] = ok
    return out


def yang_baxter_check(a: Scalar) -> bool:
    dom = a.dom
    s = sigma(1, 1, a)
    one = identity(1, dom)
    A, B = tensor(s, one), tensor(one, s)
    return compose(A, compose(B, A)) == compose(B, compose(A, B))


# ---------------------------------------------------------------------------
# the criterion
# ---------------------------------------------------------------------------


@dataclass
class HalfBraidingReport:
    cap_ok: bool
    cup_ok: bool
    invertible: bool
    factor: str = "1"

    @property
    def ok(self) -> bool:
        return self.cap_ok and self.cup_ok and self.invertible

    def __bool__(self) -> bool:
        return self.ok


def _block_sizes(blocks: list[Cut]) -> list[int]:
    return [b.n for b in blocks]


def half_braiding_matrix_check(
    blocks: list[Cut],
    phi: list[list[Morphism | None]],
    *,
    factor: Scalar | None = None,
    inverse: list[list[Morphism | None]] | None = None,
) -> HalfBraidingReport:
    """The criterion for a direct sum ⊕ (n_t, e_t) with block matrix φ₁.

    ``phi[r][c]`` maps block c ⊗ 1 to 1 ⊗ block r (None means zero).  When no
    inverse is supplied one is searched for by exact linear algebra.
    """
    k = len(blocks)
    if not blocks:
        raise ValueError("empty object")
    dom, mode = blocks[0].e.dom, blocks[0].e.mode
    one = identity(1, dom, mode)
    c = factor if factor is not None else dom.one

    def get(M, r, cc, src, tgt):
        f = M[r][cc]
        if f is None:
            return Morphism.zero(dom, src, tgt, mode)
        if (f.src, f.tgt) != (src, tgt):
            raise ValueError(f"block ({r},{cc}) has shape {f.src}->{f.tgt}, expected {src}->{tgt}")
        return f

    ns = _block_sizes(blocks)
    P = [[get(phi, r, cc, ns[cc] + 1, ns[r] + 1) for cc in range(k)] for r in range(k)]
    cap_ok = cup_ok = True
    capm, cupm = cap(dom, mode), cup(dom, mode)
    for r in range(k):
        for cc in range(k):
            lhs_cap = Morphism.zero(dom, ns[cc] + 2, ns[r], mode)
            lhs_cup = Morphism.zero(dom, ns[cc], ns[r] + 2, mode)
            e_c = blocks[cc].e
            for j in range(k):
                if P[r][j].is_zero() or P[j][cc].is_zero():
                    continue
                two = compose(tensor(one, P[r][j]), tensor(P[j][cc], one))
                lhs_cap = lhs_cap + compose(tensor(capm, identity(ns[r], dom, mode)), two)
                lhs_cup = lhs_cup + compose(two, tensor(e_c, cupm))
            if r == cc:
                rhs_cap = tensor(e_c, capm)
                rhs_cup = tensor(cupm, e_c)
            else:
                rhs_cap = Morphism.zero(dom, ns[cc] + 2, ns[r], mode)
                rhs_cup = Morphism.zero(dom, ns[cc], ns[r] + 2, mode)
            cap_ok = cap_ok and lhs_cap.scale(c) == rhs_cap
            cup_ok = cup_ok and lhs_cup.scale(c) == rhs_cup
    invertible = _check_inverse(blocks, P, inverse)
    return HalfBraidingReport(cap_ok, cup_ok, invertible, str(c))


def _hom_size(n: int, m: int) -> int:
    return len(dg.enumerate_diagrams(n, m))


def _check_inverse(blocks: list[Cut], P, inverse) -> bool:
    k = len(blocks)
    dom, mode = blocks[0].e.dom, blocks[0].e.mode
    ns = _block_sizes(blocks)
    one = identity(1, dom, mode)
    if inverse is not None:
        Q = [[inverse[r][c] if inverse[r][c] is not None else Morphism.zero(dom, 1 + ns[c], ns[r] + 1, mode) for c in range(k)] for r in range(k)]
        for r in range(k):
            for c in range(k):
                left = Morphism.zero(dom, ns[c] + 1, ns[r] + 1, mode)
                right = Morphism.zero(dom, 1 + ns[c], 1 + ns[r], mode)
                for j in range(k):
                    left = left + compose(Q[r][j], P[j][c])
                    right = right + compose(P[r][j], Q[j][c])
                want_l = tensor(blocks[c].e, one) if r == c else Morphism.zero(dom, ns[c] + 1, ns[r] + 1, mode)
                want_r = tensor(one, blocks[c].e) if r == c else Morphism.zero(dom, 1 + ns[c], 1 + ns[r], mode)
                if left != want_l or right != want_r:
                    return False
        return True
    # linear search for a two-sided inverse, block by block of unknowns
    unknowns = []  # (r, c, diagram)
    for r in range(k):
        for c in range(k):
            for d in dg.enumerate_diagrams(1 + ns[c], ns[r] + 1):
                unknowns.append((r, c, d))
    columns = []
    for r, c, d in unknowns:
        D = Morphism.from_diagram(dom, d, 1, mode)
        col = []
        # contributions to (Qφ)[r][c'] = Σ_j Q[r][j] φ[j][c'] with j = c, and (φQ)[r'][c] = φ[r'][r] Q[r][c]
        for rr in range(k):
            for cc in range(k):
                if rr == r:
                    col.extend(compose(D, P[c][cc]).vector())
                else:
                    col.extend([dom.zero] * _hom_size(ns[cc] + 1, ns[rr] + 1))
        for rr in range(k):
            for cc in range(k):
                if cc == c:
                    col.extend(compose(P[rr][r], D).vector())
                else:
                    col.extend([dom.zero] * _hom_size(1 + ns[cc], 1 + ns[rr]))
        columns.append(col)
    target = []
    for rr in range(k):
        for cc in range(k):
            if rr == cc:
                target.extend(tensor(blocks[cc].e, one).vector())
            else:
                target.extend([dom.zero] * _hom_size(ns[cc] + 1, ns[rr] + 1))
    for rr in range(k):
        for cc in range(k):
            if rr == cc:
                target.extend(tensor(one, blocks[cc].e).vector())
            else:
                target.extend([dom.zero] * _hom_size(1 + ns[cc], 1 + ns[rr]))
    return linalg.solve(columns, target, dom) is not None


def half_braiding_check(X: Cut, phi1: Morphism, *, inverse: Morphism | None = None, factor: Scalar | None = None) -> HalfBraidingReport:
    """The criterion for a single cut object."""
    if (phi1.src, phi1.tgt) != (X.n + 1, X.n + 1):
        raise ValueError("φ₁ must lie in Hom(n+1, 1+n)")
    inv = [[inverse]] if inverse is not None else None
    return half_braiding_matrix_check([X], [[phi1]], factor=factor, inverse=inv)


# ---------------------------------------------------------------------------
# center objects
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class CenterObject:
    """A cut (n, e) with φ₁ = sign · (layer product) ∘ (e⊗1)."""

    tag: str
    n: int
    blocks: tuple[int, ...]
    e: Morphism
    layers: list[Layer]
    sign: int
    a: Scalar | None = None
    _phi1: Morphism | None = field(default=None, repr=False)

    @property
    def dom(self) -> ScalarDomain:
        return self.e.dom

    @property
    def cut(self) -> Cut:
        return Cut(self.n, self.e)

    @property
    def degree(self) -> int:
        return self.n % 2

    @property
    def layer_key(self) -> tuple:
        return (self.n, self.blocks, tuple((p, str(a)) for p, a in self.layers), self.dom.fingerprint, self.e.mode.value)

    def raw_after(self, f: Morphism) -> Morphism:
        """(layer product)∘f for f landing in n+1 strands."""
        return _apply_after(f, self.layers)

    def raw_before(self, g: Morphism) -> Morphism:
        return _apply_before(g, self.layers)

    @property
    def phi1(self) -> Morphism:
        if self._phi1 is None:
            one = identity(1, self.dom, self.e.mode)
            self._phi1 = self.raw_after(tensor(self.e, one)).scale(self.dom(self.sign))
        return self._phi1

    def inverse_candidate(self) -> Morphism:
        one = identity(1, self.dom, self.e.mode)
        start = tensor(one, self.e)
        out = _apply_after(start, _inverse_layers(self.layers))
        return out.scale(self.dom(self.sign))

    def naturality_ok(self) -> bool:
        """The layer product commutes with the cut idempotent."""
        one = identity(1, self.dom, self.e.mode)
        return self.raw_after(tensor(self.e, one)) == self.raw_before(tensor(one, self.e))

    def __str__(self) -> str:
        return self.tag


def _cut_idempotent(blocks: tuple[int, ...], dom: ScalarDomain) -> Morphism:
    e = identity(0, dom)
    for b in blocks:
        e = tensor(e, jones_wenzl(b, dom))
    return e


def center_object(kind: str, i: int, j: int, a: Scalar | None = None, dom: ScalarDomain | None = None) -> CenterObject:
    """M(i,j) or W(i,j) on the cut (i+j, JW_i⊗JW_j)."""
    if kind not in ("M", "W"):
        raise ValueError("kind must be 'M' or 'W'")
    if i < 0 or j < 0:
        raise ValueError("labels must be non-negative")
    if a is None:
        dom = dom or generic_domain()
        a = dom.v
    dom = a.dom
    _check_unit(a)
    ainv = a.inverse()
    # the new strand enters on the right: pass it under T_j with σ^{-1}, then over T_i with σ
    layers: list[Layer] = [(p, ainv) for p in range(i + j - 1, i - 1, -1)]
    layers += [(p, a) for p in range(i - 1, -1, -1)]
    blocks = tuple(b for b in (i, j))
    e = _cut_idempotent(blocks, dom)
    return CenterObject(f"{kind}({i},{j})", i + j, blocks, e, layers, 1 if kind == "M" else -1, a)


def unit_object(dom: ScalarDomain | None = None) -> CenterObject:
    return center_object("M", 0, 0, dom=dom)


def xi_object(dom: ScalarDomain | None = None) -> CenterObject:
    return center_object("W", 0, 0, dom=dom)


def tensor_objects(A: CenterObject, B: CenterObject) -> CenterObject:
    """(X⊗X', (φ⊗1)∘(1⊗φ')): move past X' first, then past X."""
    if A.dom != B.dom:
        raise DomainError("objects over different domains")
    layers = [(p + A.n, a) for p, a in B.layers] + list(A.layers)
    return CenterObject(f"{A.tag}⊗{B.tag}", A.n + B.n, A.blocks + B.blocks, tensor(A.e, B.e), layers, A.sign * B.sign, A.a)


# ---------------------------------------------------------------------------
# hom spaces in the center
# ---------------------------------------------------------------------------


def _underlying_profile(blocks: tuple[int, ...]) -> dict[int, int]:
    cur = {0: 1}
    for b in blocks:
        nxt: dict[int, int] = {}
        for lab, c in cur.items():
            for out in fusion(lab, b):
                nxt[out] = nxt.get(out, 0) + c
        cur = nxt
    return cur


def underlying_hom_dim(blocks_a: tuple[int, ...], blocks_b: tuple[int, ...]) -> int:
    pa, pb = _underlying_profile(blocks_a), _underlying_profile(blocks_b)
    return sum(c * pb.get(k, 0) for k, c in pa.items())


def _block_of(blocks: tuple[int, ...]) -> list[int]:
    out = []
    for t, b in enumerate(blocks):
        out.extend([t] * b)
    return out


def _admissible(d: dg.Diagram, bottom_blocks: tuple[int, ...], top_blocks: tuple[int, ...]) -> bool:
    n = d.n_bottom
    bb, tb = _block_of(bottom_blocks), _block_of(top_blocks)
    for x, y in enumerate(d.pairing):
        if x >= y:
            continue
        if y < n and bb[x] == bb[y]:
            return False
        if x >= n and tb[x - n] == tb[y - n]:
            return False
    return True


@lru_cache(maxsize=4096)
def _cut_hom_basis(blocks_a: tuple[int, ...], blocks_b: tuple[int, ...], fp: str) -> tuple[Morphism, ...]:
    """A basis of e_B·Hom(n_A, n_B)·e_A made of compressed admissible diagrams."""
    dom = _domains[fp]
    target = underlying_hom_dim(blocks_a, blocks_b)
    if target == 0:
        return ()
    na, nb = sum(blocks_a), sum(blocks_b)
    ea, eb = _cut_idempotent(blocks_a, dom), _cut_idempotent(blocks_b, dom)
    cands = []
    for d in dg.enumerate_diagrams(na, nb):
        if not _admissible(d, blocks_a, blocks_b):
            continue
        f = compose(eb, compose(Morphism.from_diagram(dom, d), ea))
        if not f.is_zero():
            cands.append(f)
    vecs = [f.vector() for f in cands]
    idx = linalg.independent_subset(vecs, dom)
    if len(idx) != target:
        idx = linalg.rref([list(col) for col in zip(*vecs)], dom)[1]
    if len(idx) != target:
        raise ArithmeticError(f"cut hom space has dimension {len(idx)}, expected {target}")
    return tuple(cands[i] for i in idx)


_domains: dict[str, ScalarDomain] = {}


def _register(dom: ScalarDomain) -> str:
    _domains.setdefault(dom.fingerprint, dom)
    return dom.fingerprint


_side_cache: dict = {}


def _sides(A: CenterObject, B: CenterObject):
    """For each basis f of Hom(A, B): raw_B∘(f⊗1) and (1⊗f)∘raw_A."""
    key = (A.layer_key, B.layer_key)
    hit = _side_cache.get(key)
    if hit is not None:
        return hit
    fp = _register(A.dom)
    basis = _cut_hom_basis(A.blocks, B.blocks, fp)
    one = identity(1, A.dom, A.e.mode)
    left = [B.raw_after(tensor(f, one)) for f in basis]
    right = [A.raw_before(tensor(one, f)) for f in basis]
    out = (basis, left, right)
    _side_cache[key] = out
    return out


@dataclass
class CenterHom:
    dim: int
    underlying_dim: int
    method: str
    kernel: list[Morphism]


def center_hom_space(A: CenterObject, B: CenterObject) -> CenterHom:
    """Morphisms f : A → B of cuts with φ^B₁∘(f⊗1) = (1⊗f)∘φ^A₁."""
    if A.dom != B.dom:
        raise DomainError("objects over different domains")
    basis, left, right = _sides(A, B)
    if not basis:
        return CenterHom(0, 0, "underlying hom space is zero", [])
    dom = A.dom
    sa, sb = dom(A.sign), dom(B.sign)
    cols = [(l.scale(sb) - r.scale(sa)).vector() for l, r in zip(left, right)]
    M = [list(row) for row in zip(*cols)]
    K, method = linalg.certified_kernel(M, dom)
    kernel = []
    for vec in K:
        f = Morphism.zero(dom, A.n, B.n, A.e.mode)
        for c, b in zip(vec, basis):
            if not c.is_zero():
                f = f + b.scale(c)
        kernel.append(f)
    return CenterHom(len(K), len(basis), method, kernel)


def center_hom_dim(A: CenterObject, B: CenterObject) -> int:
    return center_hom_space(A, B).dim


# ---------------------------------------------------------------------------
# center fusion
# ---------------------------------------------------------------------------


Label = tuple[str, int, int]


def _product_kind(k1: str, k2: str) -> str:
    return "M" if k1 == k2 else "W"


def corrected_center_fusion(f1: Label, f2: Label) -> dict[Label, int]:
    """M(i,j)⊗M(i',j') = ⊕ M(a,b), a ∈ T_i⊗T_i', b ∈ T_j⊗T_j'; W flips the kind."""
    (k1, i, j), (k2, i2, j2) = f1, f2
    kind = _product_kind(k1, k2)
    out: dict[Label, int] = {}
    for a in fusion(i, i2):
        for b in fusion(j, j2):
            out[(kind, a, b)] = out.get((kind, a, b), 0) + 1
    return out


def printed_center_fusion(f1: Label, f2: Label) -> dict[Label, int]:
    """The double sum with labels (i+j-2m, i'+j'-2n), taken literally."""
    (k1, i, j), (k2, i2, j2) = f1, f2
    kind = _product_kind(k1, k2)
    out: dict[Label, int] = {}
    for n in range(min(i2, j2) + 1):
        for m in range(min(i, j) + 1):
            lab = (kind, i + j - 2 * m, i2 + j2 - 2 * n)
            out[lab] = out.get(lab, 0) + 1
    return out


@dataclass
class FusionTable:
    factors: tuple[Label, Label]
    decomposition: dict[Label, int]
    expected: dict[Label, int]
    printed: dict[Label, int]
    underlying_consistent: bool
    methods: list[str] = field(default_factory=list)

    @property
    def matches_expected(self) -> bool:
        return self.decomposition == self.expected

    @property
    def matches_printed(self) -> bool:
        return self.decomposition == self.printed

    def to_json(self) -> dict:
        return {
            "factors": [f"{k}({i},{j})" for k, i, j in self.factors],
            "decomposition": [{"kind": k, "i": i, "j": j, "mult": m} for (k, i, j), m in sorted(self.decomposition.items())],
            "expected": [{"kind": k, "i": i, "j": j, "mult": m} for (k, i, j), m in sorted(self.expected.items())],
            "matches_expected": self.matches_expected,
            "matches_printed_formula": self.matches_printed,
            "underlying_consistent": self.underlying_consistent,
        }


def center_fusion_verify(i: int, j: int, i2: int, j2: int, kinds: tuple[str, str] = ("M", "M"), dom: ScalarDomain | None = None) -> FusionTable:
    """Decompose kinds[0](i,j) ⊗ kinds[1](i2,j2) by center hom dimensions."""
    if i + j + i2 + j2 > 6:
        raise ValueError("total weight above 6 is outside the supported range")
    dom = dom or generic_domain()
    A = center_object(kinds[0], i, j, dom=dom)
    B = center_object(kinds[1], i2, j2, dom=dom)
    X = tensor_objects(A, B)
    f1, f2 = (kinds[0], i, j), (kinds[1], i2, j2)
    expected = corrected_center_fusion(f1, f2)
    printed = printed_center_fusion(f1, f2)
    cands: set[tuple[int, int]] = {(a, b) for _, a, b in expected} | {(a, b) for _, a, b in printed}
    decomposition: dict[Label, int] = {}
    methods = []
    for a, b in sorted(cands):
        for kind in ("M", "W"):
            S = center_object(kind, a, b, dom=dom)
            h = center_hom_space(S, X)
            methods.append(h.method)
            if h.dim:
                decomposition[(kind, a, b)] = h.dim
    # forgetful image: Σ mult · [T_a⊗T_b] must equal [T_i⊗T_j⊗T_i'⊗T_j']
    total: dict[int, int] = {}
    for (_, a, b), m in decomposition.items():
        for k, c in _underlying_profile((a, b)).items():
            total[k] = total.get(k, 0) + m * c
    consistent = total == _underlying_profile((i, j, i2, j2))
    return FusionTable((f1, f2), decomposition, expected, printed, consistent, methods)


# ---------------------------------------------------------------------------
# cocycles and twists
# ---------------------------------------------------------------------------


@dataclass
class AbelianCocycle:
    """(ω, γ) on a product of cyclic groups Z/n_1 × … × Z/n_r."""

    orders: tuple[int, ...]
    omega: dict[tuple, Scalar]
    gamma: dict[tuple, Scalar]

    @classmethod
    def from_functions(cls, orders, omega_fn, gamma_fn) -> "AbelianCocycle":
        G = list(itertools.product(*(range(n) for n in orders)))
        omega = {(a, b, c): omega_fn(a, b, c) for a in G for b in G for c in G}
        gamma = {(a, b): gamma_fn(a, b) for a in G for b in G}
        return cls(tuple(orders), omega, gamma)

    def elements(self) -> list[tuple]:
        return list(itertools.product(*(range(n) for n in self.orders)))

    def mul(self, g, h) -> tuple:
        return tuple((x + y) % n for x, y, n in zip(g, h, self.orders))


def is_bicharacter(gamma: dict[tuple, Scalar], orders: tuple[int, ...]) -> bool:
    G = list(itertools.product(*(range(n) for n in orders)))

    def mul(g, h):
        return tuple((x + y) % n for x, y, n in zip(g, h, orders))

    for g1 in G:
        for g2 in G:
            for g3 in G:
                if gamma[(mul(g1, g2), g3)] != gamma[(g1, g3)] * gamma[(g2, g3)]:
                    return False
                if gamma[(g1, mul(g2, g3))] != gamma[(g1, g2)] * gamma[(g1, g3)]:
                    return False
    return True


def validate_abelian_cocycle(c: AbelianCocycle) -> bool:
    """The 3-cocycle identity and the two hexagon-type identities for (ω, γ)."""
    G, mul, w, y = c.elements(), c.mul, c.omega, c.gamma
    for g1, g2, g3, g4 in itertools.product(G, repeat=4):
        if w[(g1, g2, g3)] * w[(g1, mul(g2, g3), g4)] * w[(g2, g3, g4)] != w[(mul(g1, g2), g3, g4)] * w[(g1, g2, mul(g3, g4))]:
            return False
    for g1, g2, g3 in itertools.product(G, repeat=3):
        if w[(g2, g3, g1)] * y[(g1, mul(g2, g3))] * w[(g1, g2, g3)] != y[(g1, g3)] * w[(g2, g1, g3)] * y[(g1, g2)]:
            return False
        lhs = w[(g3, g1, g2)].inverse() * y[(mul(g1, g2), g3)] * w[(g1, g2, g3)].inverse()
        rhs = y[(g1, g3)] * w[(g1, g3, g2)].inverse() * y[(g2, g3)]
        if lhs != rhs:
            return False
    return True


def _sqrt_minus_one(dom: ScalarDomain) -> Scalar:
    if isinstance(dom, Cyclotomic) and dom.N % 4 == 0:
        return dom.x ** (dom.N // 4)
    raise DomainError(f"{dom} has no designated square root of -1")


def semion_cocycle(dom: ScalarDomain) -> AbelianCocycle:
    """ω = (-1)^{g1 g2 g3}, γ = i^{g1 g2} on Z/2."""
    i = _sqrt_minus_one(dom)
    return AbelianCocycle.from_functions(
        (2,),
        lambda a, b, c: dom((-1) ** (a[0] * b[0] * c[0])),
        lambda a, b: i ** (a[0] * b[0]),
    )


def main_theorem_gamma(dom: ScalarDomain) -> dict[tuple, Scalar]:
    """γ((i,j,k),(i',j',k')) = (-1)^{k(i'+j')} on (Z/2)^3."""
    G = list(itertools.product(range(2), repeat=3))
    return {(g, h): dom((-1) ** (g[2] * (h[0] + h[1]))) for g in G for h in G}


def _omega_factor(c: AbelianCocycle, g: int) -> Scalar:
    w = c.omega
    G1, Gg = (1,), (g % 2,)
    return w[(G1, G1, Gg)] * w[(G1, Gg, G1)].inverse() * w[(Gg, G1, G1)]


def twist_half_braiding(obj: CenterObject, c: AbelianCocycle) -> Morphism:
    """φ^γ₁ = γ(deg X, deg 1̲)·φ₁."""
    return obj.phi1.scale(c.gamma[((obj.degree,), (1,))])


def twist_compatibility_check(obj: CenterObject, c: AbelianCocycle) -> HalfBraidingReport:
    """The γ-twisted φ₁ against the criterion with ω-twisted associators."""
    phi = twist_half_braiding(obj, c)
    gam = c.gamma[((obj.degree,), (1,))]
    inv = obj.inverse_candidate().scale(gam.inverse())
    return half_braiding_check(obj.cut, phi, inverse=inv, factor=_omega_factor(c, obj.degree))


def minus_q_twist_check(dom: ScalarDomain | None = None) -> dict[str, bool]:
    """cup ↦ cup, cap ↦ -cap carries the relations of TL_{-q} into TL_q twisted by ω."""
    dom = dom or generic_domain()
    one = identity(1, dom)
    cp, cu = cap(dom), cup(dom)
    # loop value of TL_{-q}: -[2]_{-q} = q + q^{-1}
    q = dom.q
    loop_minus = q + q.inverse()
    omega_111 = dom(-1)
    out = {}
    out["circle"] = compose(cp.scale(dom(-1)), cu) == identity(0, dom).scale(loop_minus)
    z1 = compose(tensor(one, cp.scale(dom(-1))), tensor(cu, one)).scale(omega_111)
    z2 = compose(tensor(cp.scale(dom(-1)), one), tensor(one, cu)).scale(omega_111.inverse())
    out["zigzag_right"] = z1 == one
    out["zigzag_left"] = z2 == one
    out["circle_value"] = loop_minus == qint(2, dom)
    return out


# ---------------------------------------------------------------------------
# polynomial systems from the criterion
# ---------------------------------------------------------------------------


def _to_fraction(s: Scalar) -> Fraction:
    dom = s.dom
    if isinstance(dom, Cyclotomic):
        coeffs = s.num.coeffs()
        if len(coeffs) > 1:
            raise DomainError(f"{s} is not rational")
        if not coeffs:
            return Fraction(0)
        c = coeffs[0]
        return Fraction(int(c.p), int(c.q))
    if isinstance(dom, GenericV):
        nc, dc = s.num.coeffs(), s.den.coeffs()
        if len(nc) > 1 or len(dc) > 1:
            raise DomainError(f"{s} is not rational")
        return Fraction(int(nc[0]) if nc else 0, int(dc[0]))
    raise DomainError(f"cannot read {s} as a rational number")


@dataclass
class CriterionSystem:
    """Unknowns and polynomial equations for φ₁ (and optionally its inverse)."""

    blocks: list[Cut]
    unknowns: list[tuple[str, int, int, Morphism]]  # (which, r, c, basis morphism)
    square_equations: list[dict]
    inverse_equations: list[dict]

    @property
    def nvars(self) -> int:
        return len(self.unknowns)

    def phi_blocks(self, point) -> list[list[Morphism | None]]:
        return self._assemble("phi", point)

    def inverse_blocks(self, point) -> list[list[Morphism | None]]:
        return self._assemble("inv", point)

    def _assemble(self, which, point):
        k = len(self.blocks)
        M: list[list[Morphism | None]] = [[None] * k for _ in range(k)]
        dom = self.blocks[0].e.dom
        for idx, (w, r, c, f) in enumerate(self.unknowns):
            if w != which or idx >= len(point):
                continue
            term = f.scale(dom(Fraction(point[idx])))
            M[r][c] = term if M[r][c] is None else M[r][c] + term
        return M


def _compressed_basis(src: int, tgt: int, left: Morphism, right: Morphism) -> list[Morphism]:
    """Independent images left∘d∘right over the diagram basis of Hom(src, tgt)."""
    dom, mode = left.dom, left.mode
    cands = []
    for d in dg.enumerate_diagrams(src, tgt):
        f = compose(left, compose(Morphism.from_diagram(dom, d, 1, mode), right))
        if not f.is_zero():
            cands.append(f)
    if not cands:
        return []
    vecs = [[row for row in f.vector()] for f in cands]
    _, piv = linalg.rref([list(col) for col in zip(*vecs)], dom)
    return [cands[i] for i in piv]


def _add_products(acc: dict, coeff_morph: Morphism, mono: tuple[int, ...], sign: int = 1):
    for idx, c in coeff_morph.coeffs.items():
        val = _to_fraction(coeff_morph.dom.pair(c, coeff_morph.den)) * sign
        bucket = acc.setdefault(idx, {})
        bucket[mono] = bucket.get(mono, Fraction(0)) + val


def _finish(acc: dict, nvars: int) -> list[dict]:
    polys = []
    for idx in sorted(acc):
        p = {}
        for mono, c in acc[idx].items():
            if c == 0:
                continue
            exps = [0] * nvars
            for v in mono:
                exps[v] += 1
            key = tuple(exps)
            p[key] = p.get(key, Fraction(0)) + c
        p = {k: v for k, v in p.items() if v}
        if p:
            polys.append(p)
    return polys


def halfbraiding_system(blocks: list[Cut], *, with_inverse: bool = True, squares: tuple[str, ...] = ("cap", "cup")) -> CriterionSystem:
    """The criterion on ⊕ blocks as polynomial equations in the coefficients of φ₁.

    Coefficients must be rational (crystal mode, or generic mode when no loop
    or crossing scalars appear).
    """
    k = len(blocks)
    dom, mode = blocks[0].e.dom, blocks[0].e.mode
    one = identity(1, dom, mode)
    ns = [b.n for b in blocks]
    unknowns: list[tuple[str, int, int, Morphism]] = []
    phi_vars: dict[tuple[int, int], list[int]] = {}
    for r in range(k):
        for c in range(k):
            fs = _compressed_basis(ns[c] + 1, ns[r] + 1, tensor(one, blocks[r].e), tensor(blocks[c].e, one))
            phi_vars[(r, c)] = []
            for f in fs:
                phi_vars[(r, c)].append(len(unknowns))
                unknowns.append(("phi", r, c, f))
    inv_vars: dict[tuple[int, int], list[int]] = {}
    if with_inverse:
        for r in range(k):
            for c in range(k):
                fs = _compressed_basis(1 + ns[c], ns[r] + 1, tensor(blocks[r].e, one), tensor(one, blocks[c].e))
                inv_vars[(r, c)] = []
                for f in fs:
                    inv_vars[(r, c)].append(len(unknowns))
                    unknowns.append(("inv", r, c, f))
    V = len(unknowns)
    capm, cupm = cap(dom, mode), cup(dom, mode)
    square_eqs: list[dict] = []
    for r in range(k):
        for c in range(k):
            acc_cap: dict = {}
            acc_cup: dict = {}
            e_c = blocks[c].e
            for j in range(k):
                for x in phi_vars[(r, j)]:
                    upper = tensor(one, unknowns[x][3])
                    for y in phi_vars[(j, c)]:
                        two = compose(upper, tensor(unknowns[y][3], one))
                        _add_products(acc_cap, compose(tensor(capm, identity(ns[r], dom, mode)), two), (x, y))
                        _add_products(acc_cup, compose(two, tensor(e_c, cupm)), (x, y))
            if r == c:
                _add_products(acc_cap, tensor(e_c, capm), (), -1)
                _add_products(acc_cup, tensor(cupm, e_c), (), -1)
            if "cap" in squares:
                square_eqs += _finish(acc_cap, V)
            if "cup" in squares:
                square_eqs += _finish(acc_cup, V)
    inv_eqs: list[dict] = []
    if with_inverse:
        for r in range(k):
            for c in range(k):
                acc_l: dict = {}
                acc_r: dict = {}
                for j in range(k):
                    for x in inv_vars[(r, j)]:
                        for y in phi_vars[(j, c)]:
                            _add_products(acc_l, compose(unknowns[x][3], unknowns[y][3]), (x, y))
                    for x in phi_vars[(r, j)]:
                        for y in inv_vars[(j, c)]:
                            _add_products(acc_r, compose(unknowns[x][3], unknowns[y][3]), (x, y))
                if r == c:
                    _add_products(acc_l, tensor(blocks[c].e, one), (), -1)
                    _add_products(acc_r, tensor(one, blocks[c].e), (), -1)
                inv_eqs += _finish(acc_l, V) + _finish(acc_r, V)
    return CriterionSystem(list(blocks), unknowns, square_eqs, inv_eqs)


@dataclass
class GradingReport:
    n_copies: int
    description: str
    groebner_basis: list[str]
    ideal_equals_involutions: bool
    points: list[list[Fraction]]
    samples_ok: bool


def grading_halfbraidings(n_copies: int, dom: ScalarDomain | None = None, mode: Mode = GENERIC) -> GradingReport:
    """All half-braidings on the direct sum of n copies of the unit object."""
    from . import polysolve as ps

    if n_copies < 1:
        raise ValueError("need at least one copy")
    dom = dom or generic_domain()
    blocks = [Cut.whole(0, dom, mode) for _ in range(n_copies)]
    system = halfbraiding_system(blocks)
    V = system.nvars
    gens = system.square_equations + system.inverse_equations
    names = [f"x{t}" for t in range(V)]
    gb = ps.groebner(ps.PolySystem(V, gens, names))
    # reference ideal: Φ² = I together with Ψ = Φ
    nphi = n_copies * n_copies
    pos = {(r, c): t for t, (w, r, c, _) in enumerate(system.unknowns) if w == "phi"}
    ipos = {(r, c): t for t, (w, r, c, _) in enumerate(system.unknowns) if w == "inv"}

    def mono(*vs):
        e = [0] * V
        for v in vs:
            e[v] += 1
        return tuple(e)

    ref = []
    for r in range(n_copies):
        for c in range(n_copies):
            p = {}
            for j in range(n_copies):
                key = mono(pos[(r, j)], pos[(j, c)])
                p[key] = p.get(key, Fraction(0)) + 1
            if r == c:
                p[mono()] = p.get(mono(), Fraction(0)) - 1
            ref.append(p)
            ref.append({mono(ipos[(r, c)]): Fraction(1), mono(pos[(r, c)]): Fraction(-1)})
    ref_gb = ps.groebner(ps.PolySystem(V, ref, names))
    same = all(not ps.reduce_poly(g, gb) for g in ref) and all(not ps.reduce_poly(g, ref_gb) for g in gens)
    points: list[list[Fraction]] = []
    if nphi == 1:
        var = ps.variety(ps.PolySystem(V, gens, names))
        points = [list(p) for p in var.points]
        description = "Φ ∈ {" + ", ".join(str(p[pos[(0, 0)]]) for p in var.points) + "}"
    else:
        description = "all involutions Φ (Φ² = I), inverse Φ"
    # re-check sample solutions through the criterion itself
    samples = _sample_involutions(n_copies)
    ok = True
    for S in samples:
        point = [Fraction(0)] * V
        for (r, c), t in pos.items():
            point[t] = S[r][c]
        for (r, c), t in ipos.items():
            point[t] = S[r][c]
        rep = half_braiding_matrix_check(blocks, system.phi_blocks(point), inverse=system.inverse_blocks(point))
        ok = ok and rep.ok
    bad = [[Fraction(2) if r == c else Fraction(0) for c in range(n_copies)] for r in range(n_copies)]
    point = [Fraction(0)] * V
    for (r, c), t in pos.items():
        point[t] = bad[r][c]
    ok = ok and not half_braiding_matrix_check(blocks, system.phi_blocks(point)).ok
    return GradingReport(n_copies, description, [ps.format_poly(g, names) for g in gb], same, points, ok)


def _sample_involutions(n: int) -> list[list[list[Fraction]]]:
    I = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    out = [I, [[-x for x in row] for row in I]]
    if n >= 2:
        D = [row[:] for row in I]
        D[0][0] = Fraction(-1)
        out.append(D)
        # P·diag(1,-1,...)·P^{-1} with P = [[1,1],[0,1]] ⊕ I
        R = [row[:] for row in I]
        R[0][0], R[0][1], R[1][1] = Fraction(1), Fraction(2), Fraction(-1)
        out.append(R)
        Sw = [row[:] for row in I]
        Sw[0][0], Sw[0][1], Sw[1][0], Sw[1][1] = Fraction(0), Fraction(1), Fraction(1), Fraction(0)
        out.append(Sw)
    return out
