"""Stabilization of root-of-unity data towards the generic Temperley-Lieb values.

Each check sweeps κ from 3 to ``kappa_max``, records a value per κ, and finds
the least threshold K after which every tested value agrees with the generic
one.  A limit over all κ is not something we can build, so the reports make a
finite claim only: agreement on the whole tested range from K upward.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .braidcenter import corrected_center_fusion
from .diagram import catalan
from .fusiondata import fusion
from .tlcat import multiplicity_profile

__all__ = [
    "SURROGATE_NOTE",
    "StabilizationReport",
    "hom_dim_profile",
    "fusion_stability",
    "center_label_agree",
]

KAPPA_MIN = 3

SURROGATE_NOTE = (
    "finite surrogate: agreement with the generic value for every tested κ >= K "
    "stands in for the statement about the limit over κ; no ultrafilter is built"
)


@dataclass
class StabilizationReport:
    quantity: str
    window: dict
    values: dict[int, object]
    generic: object
    threshold: int | None
    verdict: str
    note: str = SURROGATE_NOTE
    details: dict = field(default_factory=dict)

    @property
    def stable(self) -> bool:
        return self.verdict == "stable"

    def table(self) -> str:
        lines = [f"{self.quantity} {self.window}", "κ  value  agrees"]
        for k, v in self.values.items():
            lines.append(f"{k}  {v}  {'yes' if v == self.generic else 'no'}")
        lines.append(f"threshold: {self.threshold}  verdict: {self.verdict}")
        lines.append(self.note)
        return "\n".join(lines)

    def to_json(self) -> str:
        doc = asdict(self)
        doc["values"] = {str(k): v for k, v in self.values.items()}
        return json.dumps(doc, indent=2, sort_keys=True, default=list)


def _report(quantity: str, window: dict, values: dict, generic, details=None) -> StabilizationReport:
    threshold = None
    for kappa in sorted(values, reverse=True):
        if values[kappa] != generic:
            break
        threshold = kappa
    verdict = "stable" if threshold is not None else "not stable"
    return StabilizationReport(quantity, window, values, generic, threshold, verdict, details=details or {})


def _check_kappa_max(kappa_max: int) -> None:
    if kappa_max < KAPPA_MIN:
        raise ValueError(f"kappa_max must be at least {KAPPA_MIN}")


def hom_dim_profile(n: int, kappa_max: int = 40) -> StabilizationReport:
    """dim End of the n-fold generator in A_{κ-1}, against the Catalan number."""
    if not 0 <= n <= 7:
        raise ValueError("n must lie in 0..7")
    _check_kappa_max(kappa_max)
    values = {}
    for kappa in range(KAPPA_MIN, kappa_max + 1):
        prof = multiplicity_profile(n, kappa)
        values[kappa] = sum(c * c for c in prof.values())
    return _report("dim End(X^n)", {"n": n}, values, catalan(n))


def _fusion_window(r: int) -> list[tuple[int, int]]:
    return [(i, s - i) for s in range(r + 1) for i in range(s + 1)]


def fusion_stability(r: int, kappa_max: int = 40) -> StabilizationReport:
    """Truncated fusion of L_i ⊗ L_j for i + j <= r against the generic rule.

    Pairs whose labels do not exist at a given κ count as disagreement there.
    """
    if not 0 <= r <= 6:
        raise ValueError("r must lie in 0..6")
    _check_kappa_max(kappa_max)
    pairs = _fusion_window(r)
    generic = [fusion(i, j) for i, j in pairs]
    values = {}
    for kappa in range(KAPPA_MIN, kappa_max + 1):
        row = []
        for i, j in pairs:
            row.append(fusion(i, j, kappa) if max(i, j) <= kappa - 2 else None)
        values[kappa] = row
    rep = _report("fusion L_i⊗L_j", {"r": r, "pairs": pairs}, values, generic)
    return rep


def _center_window(r: int, window: str) -> list[tuple]:
    labels = [(kind, i, s - i) for kind in "MW" for s in range(r + 1) for i in range(s + 1)]
    out = []
    for a in labels:
        for b in labels:
            wa, wb = a[1] + a[2], b[1] + b[2]
            if window == "total" and wa + wb > r:
                continue
            out.append((a, b))
    return out


def _to_box_label(label: tuple, kappa: int) -> tuple[int, int]:
    kind, i, j = label
    return (i, j) if kind == "M" else (kappa - 2 - i, kappa - 2 - j)


def center_label_agree(r: int, kappa_max: int = 40, window: str = "total") -> StabilizationReport:
    """Compare ⊠-fusion in A_{κ-1}⊠A_{κ-1} with the center fusion table.

    M(i,j) sits at the box label (i, j) and W(i,j) at (κ-2-i, κ-2-j).  For
    each product in the window the expected center summands are sent to box
    labels and compared, as a multiset, with the product of the box labels
    computed from two independent truncated fusions.  The per-κ value is the
    number of disagreeing products, so the generic value is 0.

    ``window="total"`` takes products with i+j+i'+j' <= r; ``window="each"``
    takes i+j <= r and i'+j' <= r separately, whose threshold is 2r+2.
    """
    if not 0 <= r <= 4:
        raise ValueError("r must lie in 0..4")
    if window not in ("total", "each"):
        raise ValueError("window is 'total' or 'each'")
    _check_kappa_max(kappa_max)
    products = _center_window(r, window)
    values: dict[int, int] = {}
    first_bad: dict[int, list] = {}
    for kappa in range(KAPPA_MIN, kappa_max + 1):
        bad = []
        for a, b in products:
            (i, j), (i2, j2) = _to_box_label(a, kappa), _to_box_label(b, kappa)
            if min(i, j, i2, j2) < 0 or max(i, j, i2, j2) > kappa - 2:
                bad.append((a, b))
                continue
            got = sorted((x, y) for x in fusion(i, i2, kappa) for y in fusion(j, j2, kappa))
            want = []
            for lab, mult in corrected_center_fusion(a, b).items():
                want.extend([_to_box_label(lab, kappa)] * mult)
            if got != sorted(want):
                bad.append((a, b))
        values[kappa] = len(bad)
        if bad:
            first_bad[kappa] = [list(map(list, p)) for p in bad[:3]]
    return _report(
        "center fusion via box labels",
        {"r": r, "window": window, "products": len(products)},
        values,
        0,
        {"first_disagreements": {str(k): v for k, v in first_bad.items()}},
    )
