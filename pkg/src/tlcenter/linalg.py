"""Exact linear algebra over scalar domains, and ranks certified through F_p.

Two routes live here.  The exact route is ordinary Gauss-Jordan elimination on
:class:`~tlcenter.qarith.Scalar` entries; it is used for kernels and solutions
of small systems.  The modular route sends a matrix to a prime field through a
ring map (v ↦ v0 for Q(v), ζ ↦ ω for Q(ζ_N)) and computes ranks with flint's
``nmod_mat``.

A specialised rank is always a lower bound.  For cyclotomic matrices an upper
bound is certified by a norm argument: if every (r+1)-minor vanishes modulo
enough prime ideals, the product of their norms exceeds a Hadamard bound on the
norm of any nonzero minor, so the minors are zero.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from flint import fmpz, nmod_mat, nmod_poly

from .qarith import Cyclotomic, DomainError, Finite, GenericV, Scalar, ScalarDomain

__all__ = [
    "Unlucky",
    "RankCertificate",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "specialisations",
    "modular_rank",
    "certified_rank",
    "certified_kernel",
    "independent_subset",
    "gram_rank",
]

_BIG = 1 << 62


class Unlucky(ArithmeticError):
    """A specialisation hit a denominator."""


@dataclass
class RankCertificate:
    rank: int
    method: str
    specialisations: int = 0
    bound_bits: float = 0.0
    certified_bits: float = 0.0
    notes: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# exact elimination
# ---------------------------------------------------------------------------


def rref(M: list[list[Scalar]], dom: ScalarDomain) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [list(r) for r in M]
    if not A:
        return A, []
    rows, cols = len(A), len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if not A[i][c].is_zero()), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv if not x.is_zero() else x for x in A[r]]
        for i in range(rows):
            if i != r and not A[i][c].is_zero():
                f = A[i][c]
                A[i] = [x - f * y if not y.is_zero() else x for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M: list[list[Scalar]], dom: ScalarDomain) -> int:
    return len(rref(M, dom)[1])


def nullspace(M: list[list[Scalar]], dom: ScalarDomain) -> list[list[Scalar]]:
    """A basis of {x : M x = 0}, one vector per free column."""
    if not M:
        return []
    cols = len(M[0])
    R, pivots = rref(M, dom)
    free = [c for c in range(cols) if c not in set(pivots)]
    out = []
    for f in free:
        vec = [dom.zero] * cols
        vec[f] = dom.one
        for row, p in zip(R, pivots):
            vec[p] = -row[f]
        out.append(vec)
    return out


def solve(columns: list[list[Scalar]], target: list[Scalar], dom: ScalarDomain) -> list[Scalar] | None:
    """Some x with Σ x_j columns[j] = target, or None when inconsistent."""
    if not columns:
        return [] if all(t.is_zero() for t in target) else None
    n = len(columns)
    aug = [[col[i] for col in columns] + [target[i]] for i in range(len(target))]
    R, pivots = rref(aug, dom)
    if pivots and pivots[-1] == n:
        return None
    x = [dom.zero] * n
    for row, p in zip(R, pivots):
        x[p] = row[n]
    return x


# ---------------------------------------------------------------------------
# specialisation into prime fields
# ---------------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    return bool(fmpz(n).is_prime())


def _primes_1_mod(N: int, start: int = _BIG):
    """Primes p ≡ 1 (mod N) below ``start``, descending."""
    p = start - (start % N) + 1
    if p >= start:
        p -= N
    while p > N:
        if _is_prime(p):
            yield p
        p -= N


def _root_of_order(N: int, p: int) -> int:
    """An element of exact order N in F_p (requires N | p-1)."""
    ls = [int(l) for l, _ in fmpz(N).factor()] if N > 1 else []
    for a in range(2, p):
        w = pow(a, (p - 1) // N, p)
        if all(pow(w, N // l, p) != 1 for l in ls):
            return w
    raise AssertionError("no root of the requested order")


class _Spec:
    """A ring map from a domain's raw elements into F_p."""

    def __init__(self, p: int, raw_map, label: str):
        self.p = p
        self.raw_map = raw_map
        self.label = label

    def scalar(self, s: Scalar) -> int:
        num = self.raw_map(s.num)
        den = self.raw_map(s.den)
        if den == 0:
            raise Unlucky(self.label)
        return num * pow(den, -1, self.p) % self.p


def _poly_eval(coeffs_int: list[int], x: int, p: int) -> int:
    return int(nmod_poly(coeffs_int, p)(x))


def specialisations(dom: ScalarDomain, *, start: int = _BIG):
    """Yield ring maps dom → F_p in a fixed order.

    Q(v): v ↦ v0 for a few v0 per prime.  Q(ζ_N): ζ ↦ each primitive N-th root
    of unity of F_p, so one prime contributes φ(N) prime ideals.  F_p: identity.
    """
    if isinstance(dom, GenericV):
        for p in _primes_1_mod(2, start):
            for v0 in (3, 5, 7, 11):

                def m(x, v0=v0, p=p):
                    return int(nmod_poly(x, p)(v0))

                yield _Spec(p, m, f"v={v0} mod {p}")
    elif isinstance(dom, Cyclotomic):
        N = dom.N
        for p in _primes_1_mod(N, start):
            w = _root_of_order(N, p)
            for j in range(1, N + 1):
                if math.gcd(j, N) != 1:
                    continue
                wj = pow(w, j, p)

                def m(x, wj=wj, p=p):
                    num = int(nmod_poly(x.numer(), p)(wj))
                    den = int(x.denom()) % p
                    if den == 0:
                        raise Unlucky(f"denominator divisible by {p}")
                    return num * pow(den, -1, p) % p

                yield _Spec(p, m, f"ζ={wj} mod {p}")
    elif isinstance(dom, Finite) and dom.d == 1:
        yield _Spec(dom.p, lambda x: int(x) % dom.p, f"F_{dom.p}")
    else:
        raise DomainError(f"no prime-field specialisation for {dom}")


def modular_rank(M: list[list[Scalar]], spec: _Spec) -> int:
    rows = len(M)
    if not rows:
        return 0
    cols = len(M[0])
    flat = [spec.scalar(x) for row in M for x in row]
    return nmod_mat(rows, cols, flat, spec.p).rank()


# ---------------------------------------------------------------------------
# certified ranks
# ---------------------------------------------------------------------------


def _embedding_abs(x, N: int, j: int) -> float:
    """|σ_j(x)| for an integral cyclotomic element x (fmpz_poly coefficients)."""
    z = cmath.exp(2j * math.pi * j / N)
    total = 0j
    mag = 0.0
    for k, c in enumerate(x.coeffs()):
        c = int(c)
        if c:
            total += c * z**k
            mag += abs(c)
    return abs(total) + mag * 1e-12


def _hadamard_bits(int_rows: list[list], N: int, r: int) -> float:
    """log2 bound on |norm| of any nonzero r-minor of an integral matrix."""
    bits = 0.0
    for j in range(1, N + 1):
        if math.gcd(j, N) != 1:
            continue
        norms = []
        for row in int_rows:
            s = sum(_embedding_abs(x, N, j) ** 2 for x in row if not x.is_zero())
            norms.append(0.5 * math.log2(s) if s > 0 else -math.inf)
        norms.sort(reverse=True)
        bits += sum(max(b, 0.0) for b in norms[:r])
    return bits * (1 + 1e-9) + 1


def _integral_rows(M: list[list[Scalar]]) -> list[list]:
    """Scale each row of a cyclotomic matrix to integer polynomials."""
    out = []
    for row in M:
        den = 1
        for x in row:
            den = den * int(x.num.denom()) // math.gcd(den, int(x.num.denom()))
        out.append([(x.num * den).numer() for x in row])
    return out


def certified_rank(M: list[list[Scalar]], dom: ScalarDomain, *, max_specs: int = 20_000) -> RankCertificate:
    """Exact rank, certified without exact elimination where possible."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    full = min(rows, cols)
    if full == 0:
        return RankCertificate(0, "empty")
    if isinstance(dom, Finite):
        if dom.d == 1:
            spec = next(specialisations(dom))
            return RankCertificate(modular_rank(M, spec), "prime field", 1)
        return RankCertificate(rank(M, dom), "exact elimination")
    if isinstance(dom, GenericV):
        best, used = 0, 0
        for spec in specialisations(dom):
            used += 1
            try:
                best = max(best, modular_rank(M, spec))
            except Unlucky:
                continue
            if best == full or used >= 4:
                break
        if best == full:
            return RankCertificate(best, "specialisation (full rank)", used)
        return RankCertificate(rank(M, dom), "exact elimination", used, notes=[f"specialised lower bound {best}"])
    if not isinstance(dom, Cyclotomic):
        raise DomainError(f"unsupported domain {dom}")
    N = dom.N
    int_rows = None
    best, used, bits = 0, 0, 0.0
    need = None
    for spec in specialisations(dom):
        used += 1
        try:
            rk = modular_rank(M, spec)
        except Unlucky:
            continue
        if rk > best:
            best = rk
            need = None
        if best == full:
            return RankCertificate(best, "specialisation (full rank)", used)
        if need is None:
            if int_rows is None:
                int_rows = _integral_rows(M)
            need = _hadamard_bits(int_rows, N, best + 1)
        bits += math.log2(spec.p)
        if bits > need:
            return RankCertificate(best, "multimodular norm bound", used, need, bits)
        if used >= max_specs:
            break
    raise ArithmeticError("rank certification did not converge")


def _row_pivots(M: list[list[Scalar]], spec: _Spec) -> list[int]:
    """Indices of a maximal set of rows independent modulo the specialisation."""
    rows, cols = len(M), len(M[0])
    flat = [spec.scalar(M[r][c]) for c in range(cols) for r in range(rows)]
    R = nmod_mat(cols, rows, flat, spec.p).rref()[0]
    piv = []
    for i in range(R.nrows()):
        j = next((j for j in range(rows) if int(R[i, j]) != 0), None)
        if j is None:
            break
        piv.append(j)
    return piv


def independent_subset(vectors: list[list[Scalar]], dom: ScalarDomain, *, tries: int = 4) -> list[int]:
    """Indices of vectors that are independent under some specialisation.

    Independence modulo a prime implies independence over the domain, so the
    result is always a genuinely independent family; it is maximal unless the
    specialisation was unlucky.
    """
    if not vectors:
        return []
    best: list[int] = []
    for k, spec in enumerate(specialisations(dom)):
        if k >= tries:
            break
        try:
            piv = _row_pivots(vectors, spec)
        except Unlucky:
            continue
        if len(piv) > len(best):
            best = piv
        if len(best) == min(len(vectors), len(vectors[0])):
            break
    return sorted(best)


def certified_kernel(M: list[list[Scalar]], dom: ScalarDomain, *, tries: int = 4) -> tuple[list[list[Scalar]], str]:
    """A basis of {x : M x = 0} that is checked exactly against every row.

    A specialised rank ρ bounds the nullity above by cols - ρ.  Exact
    elimination on ρ rows independent modulo p yields cols - ρ candidate
    vectors; once each is verified on the full matrix the nullity is pinned.
    """
    if not M:
        return [], "no equations"
    cols = len(M[0])
    if cols == 0:
        return [], "no unknowns"
    if isinstance(dom, Finite) and dom.d > 1:
        return nullspace(M, dom), "exact elimination"
    for k, spec in enumerate(specialisations(dom)):
        if k >= tries:
            break
        try:
            piv = _row_pivots(M, spec)
        except Unlucky:
            continue
        if not piv:
            if all(x.is_zero() for row in M for x in row):
                basis = [[dom.one if i == j else dom.zero for i in range(cols)] for j in range(cols)]
                return basis, "zero matrix"
            continue
        K = nullspace([M[r] for r in piv], dom)
        ok = True
        for vec in K:
            support = [(c, x) for c, x in enumerate(vec) if not x.is_zero()]
            for row in M:
                acc = dom.zero
                for c, x in support:
                    if not row[c].is_zero():
                        acc = acc + row[c] * x
                if not acc.is_zero():
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return K, f"rank {len(piv)} mod {spec.p}, kernel verified exactly"
    return nullspace(M, dom), "exact elimination"


_gram_rank_cache: dict = {}


def gram_rank(n: int, dom: ScalarDomain) -> int:
    return gram_rank_certificate(n, dom).rank


def gram_rank_certificate(n: int, dom: ScalarDomain) -> RankCertificate:
    """Certified rank of the trace form on End(n).

    Entries are powers of delta, so the specialised matrix is built from the
    loop-count table without forming any Scalar matrix.
    """
    from .tlcat import delta, gram_loops

    key = (n, dom.fingerprint)
    hit = _gram_rank_cache.get(key)
    if hit is not None:
        return hit
    L = gram_loops(n)
    size = len(L)
    top = max(max(r) for r in L)
    d = delta(dom)
    if isinstance(dom, (GenericV, Cyclotomic)) or (isinstance(dom, Finite) and dom.d == 1):
        pass
    else:
        cert = RankCertificate(rank([[d**l for l in row] for row in L], dom), "exact elimination")
        _gram_rank_cache[key] = cert
        return cert
    best, used, bits, need = 0, 0, 0.0, None
    cert = None
    for spec in specialisations(dom):
        used += 1
        try:
            ds = spec.scalar(d)
        except Unlucky:
            continue
        pw = [1]
        for _ in range(top):
            pw.append(pw[-1] * ds % spec.p)
        flat = [pw[l] for row in L for l in row]
        rk = nmod_mat(size, size, flat, spec.p).rank()
        if rk > best:
            best, need = rk, None
        if best == size:
            cert = RankCertificate(best, "specialisation (full rank)", used)
            break
        if isinstance(dom, Finite):
            cert = RankCertificate(best, "prime field", used)
            break
        if isinstance(dom, GenericV):
            if used >= 4:
                exact = rank([[d**l for l in row] for row in L], dom)
                cert = RankCertificate(exact, "exact elimination", used, notes=[f"specialised lower bound {best}"])
                break
            continue
        if need is None:
            need = _gram_bound_bits(L, dom.N, best + 1, d)
        bits += math.log2(spec.p)
        if bits > need:
            cert = RankCertificate(best, "multimodular norm bound", used, need, bits)
            break
    if cert is None:
        raise ArithmeticError("rank certification did not converge")
    _gram_rank_cache[key] = cert
    return cert


def _gram_bound_bits(L: list[list[int]], N: int, r: int, d: Scalar) -> float:
    """Hadamard/norm bound for r-minors of (delta^L) over all embeddings."""
    dz = d.num.numer()
    dd = int(d.num.denom())
    bits = 0.0
    for j in range(1, N + 1):
        if math.gcd(j, N) != 1:
            continue
        a = _embedding_abs(dz, N, j) / dd
        norms = []
        for row in L:
            s = sum(a ** (2 * l) for l in row)
            norms.append(0.5 * math.log2(s) if s > 0 else 0.0)
        norms.sort(reverse=True)
        bits += sum(max(b, 0.0) for b in norms[:r])
    return bits * (1 + 1e-9) + 1
