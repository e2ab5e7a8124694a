"""Fusion rings and modular data of the root-of-unity quotients A_{κ-1}.

Labels are 0..κ-2 (or all n >= 0 when κ = 0, the generic case).  Modular data
live in Cyclotomic(4κ) with q = x^2 a primitive 2κ-th root and v = x.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .qarith import Cyclotomic, DomainError, Scalar, braiding_units, qint, root_of_unity_domain

__all__ = [
    "FusionRing",
    "ModularData",
    "fusion",
    "fusion_ring",
    "modular_data",
    "check_modular",
    "determinant",
    "transparent_simples",
    "transparent_by_s_matrix",
    "verlinde_check",
]


def _check_label(m: int, kappa: int) -> None:
    if m < 0 or (kappa and m > kappa - 2):
        raise ValueError(f"label {m} invalid for κ={kappa}")


def fusion(m: int, n: int, kappa: int = 0) -> list[int]:
    """Labels of L_m ⊗ L_n, truncated Clebsch-Gordan when κ >= 3."""
    if kappa in (1, 2) or kappa < 0:
        raise ValueError("κ must be 0 (generic) or >= 3")
    _check_label(m, kappa)
    _check_label(n, kappa)
    lo = abs(m - n)
    hi = m + n if not kappa else min(m + n, 2 * kappa - 4 - m - n)
    return list(range(lo, hi + 1, 2))


@dataclass(frozen=True)
class FusionRing:
    kappa: int
    labels: tuple[int, ...]
    N: tuple[tuple[tuple[int, ...], ...], ...]


@lru_cache(maxsize=None)
def fusion_ring(kappa: int, max_label: int | None = None) -> FusionRing:
    """Coefficient tensor N[m][n][k]; generic rings need ``max_label``."""
    if kappa:
        top = kappa - 2
    elif max_label is None:
        raise ValueError("generic fusion ring needs max_label")
    else:
        top = max_label
    labels = tuple(range(top + 1))
    N = []
    for m in labels:
        rows = []
        for n in labels:
            outs = set(fusion(m, n, kappa))
            rows.append(tuple(1 if k in outs else 0 for k in labels))
        N.append(tuple(rows))
    return FusionRing(kappa, labels, tuple(N))


@dataclass(frozen=True)
class ModularData:
    kappa: int
    a: Scalar
    S: tuple[tuple[Scalar, ...], ...]
    T: tuple[Scalar, ...]

    @property
    def dom(self):
        return self.a.dom


def _unit_ok(a: Scalar) -> bool:
    return any(a == u for u in braiding_units(a.dom))


def modular_data(kappa: int, a: Scalar | None = None) -> ModularData:
    """S and T from the closed formulas, exactly, in Cyclotomic(4κ)."""
    if kappa < 3:
        raise ValueError("modular data needs κ >= 3")
    dom = root_of_unity_domain(kappa)
    if a is None:
        a = dom.v
    if a.dom != dom or not _unit_ok(a):
        raise DomainError("a is not a braiding unit of the 2κ-th root domain")
    labels = range(kappa - 1)
    S = tuple(
        tuple((-1) ** (m + n) * qint((m + 1) * (n + 1), dom) for n in labels) for m in labels
    )
    T = tuple((-a) ** (n * (n + 2)) for n in labels)
    return ModularData(kappa, a, S, T)


def determinant(M) -> Scalar:
    """Exact determinant by Gaussian elimination over the field."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        raise ValueError("empty matrix")
    dom = A[0][0].dom
    det = dom.one
    for c in range(n):
        piv = next((r for r in range(c, n) if not A[r][c].is_zero()), None)
        if piv is None:
            return dom.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c]
        inv = A[c][c].inverse()
        for r in range(c + 1, n):
            if A[r][c].is_zero():
                continue
            f = A[r][c] * inv
            A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


def check_modular(md: ModularData) -> bool:
    return not determinant(md.S).is_zero()


def transparent_simples(kappa: int, a: Scalar | None = None) -> set[int]:
    """Labels m with θ_k = θ_m θ_n whenever L_k ⊂ L_m ⊗ L_n (twist-ratio test)."""
    md = modular_data(kappa, a)
    T = md.T
    out = set()
    for m in range(kappa - 1):
        if all(T[k] == T[m] * T[n] for n in range(kappa - 1) for k in fusion(m, n, kappa)):
            out.add(m)
    return out


def transparent_by_s_matrix(md: ModularData) -> set[int]:
    """Extra check: s_{m,n} = d_m d_n for all n (not the primary criterion)."""
    S = md.S
    d = [S[0][n] / S[0][0] for n in range(len(S))]
    return {m for m in range(len(S)) if all(S[m][n] / S[0][0] == d[m] * d[n] for n in range(len(S)))}


def verlinde_check(md: ModularData) -> bool:
    """Every column of S is a simultaneous eigenvector of all N_m."""
    kappa = md.kappa
    S = md.S
    r = kappa - 1
    for m in range(r):
        for k in range(r):
            lam = S[m][k] / S[0][k]
            for a in range(r):
                lhs = S[0][0].dom.zero
                for b in fusion(m, a, kappa):
                    lhs = lhs + S[b][k]
                if lhs != lam * S[a][k]:
                    return False
    return True
