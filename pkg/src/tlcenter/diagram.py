"""Planar Temperley-Lieb diagrams and their combinatorial composition.

A diagram in Hom(n, m) is a non-crossing perfect matching of n bottom and m top
points.  Internally the points are numbered bottom ``0..n-1`` then top
``n..n+m-1``, both left to right.  For printing and planarity checks we use the
boundary labelling: bottom points ``1..n`` left to right, then top points
``n+1..n+m`` right to left, so that walking the labels in order walks the
rectangle boundary.  In that labelling ``id_2`` prints as ``1↔4, 2↔3``.

Diagrams are interned per (n, m): ``enumerate_diagrams(n, m)[i].index == i``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import NamedTuple

__all__ = [
    "Diagram",
    "GlueResult",
    "enumerate_diagrams",
    "glue",
    "tensor",
    "trace_close",
    "identity",
    "cup",
    "cap",
    "from_pairs",
    "parse_diagram",
    "catalan",
]


def catalan(n: int) -> int:
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c


@dataclass(frozen=True)
class Diagram:
    n_bottom: int
    n_top: int
    pairing: tuple[int, ...]
    index: int = field(default=-1, compare=False, hash=False)

    def __post_init__(self):
        size = self.n_bottom + self.n_top
        if size % 2 or len(self.pairing) != size:
            raise ValueError("a diagram needs an even number of boundary points")
        for a, b in enumerate(self.pairing):
            if b == a or self.pairing[b] != a:
                raise ValueError("pairing is not a fixed-point-free involution")
        if not _planar(self.n_bottom, self.n_top, self.pairing):
            raise ValueError("pairing is not planar")

    def label(self, point: int) -> int:
        """Boundary label (1-based) of an internal point."""
        if point < self.n_bottom:
            return point + 1
        return self.n_bottom + self.n_top - (point - self.n_bottom)

    def pairs(self) -> list[tuple[int, int]]:
        """Matched pairs in boundary labels, each as (smaller, larger), sorted."""
        out = {tuple(sorted((self.label(a), self.label(b)))) for a, b in enumerate(self.pairing)}
        return sorted(out)

    def through_strands(self) -> int:
        n = self.n_bottom
        return sum(1 for a in range(n) if self.pairing[a] >= n)

    def __str__(self) -> str:
        if not self.pairing:
            return "∅"
        return ", ".join(f"{a}↔{b}" for a, b in self.pairs())


def _boundary_position(n: int, m: int, point: int) -> int:
    return point if point < n else n + m - 1 - (point - n)


def _planar(n: int, m: int, pairing: tuple[int, ...]) -> bool:
    size = n + m
    pos = [_boundary_position(n, m, a) for a in range(size)]
    partner = [0] * size
    for a in range(size):
        partner[pos[a]] = pos[pairing[a]]
    stack: list[int] = []
    for i in range(size):
        j = partner[i]
        if j > i:
            stack.append(j)
        else:
            if not stack or stack.pop() != i:
                return False
    return not stack


class GlueResult(NamedTuple):
    """Outcome of stacking two diagrams.

    ``zigzag_hit`` is set when some component meets the interface three or more
    times.  For an open strand that means a zigzag; a closed loop meeting it four
    or more times also hides one (nested cups under side-by-side caps), so the
    crystal composite of such a pair is zero too.
    """

    matching: Diagram
    loops: int
    zigzag_hit: bool


_lock = threading.Lock()
_spaces: dict[tuple[int, int], tuple[list[Diagram], dict[tuple[int, ...], int]]] = {}


def _matchings(points: list[int]) -> list[list[tuple[int, int]]]:
    if not points:
        return [[]]
    out = []
    first = points[0]
    for k in range(1, len(points), 2):
        for inner in _matchings(points[1:k]):
            for outer in _matchings(points[k + 1 :]):
                out.append([(first, points[k])] + inner + outer)
    return out


def _space(n: int, m: int):
    key = (n, m)
    sp = _spaces.get(key)
    if sp is not None:
        return sp
    with _lock:
        sp = _spaces.get(key)
        if sp is not None:
            return sp
        size = n + m
        diagrams: list[Diagram] = []
        if size % 2 == 0:
            # positions on the boundary -> internal points
            point_at = [0] * size
            for a in range(size):
                point_at[_boundary_position(n, m, a)] = a
            raw = []
            for match in _matchings(list(range(size))):
                partner = [0] * size
                for a, b in match:
                    partner[a], partner[b] = b, a
                raw.append(tuple(p + 1 for p in partner))
            # decreasing lexicographic order on the boundary-label partner list
            raw.sort(reverse=True)
            for labels in raw:
                pairing = [0] * size
                for a in range(size):
                    pairing[point_at[a]] = point_at[labels[a] - 1]
                diagrams.append(Diagram(n, m, tuple(pairing), len(diagrams)))
        index = {d.pairing: d.index for d in diagrams}
        _spaces[key] = (diagrams, index)
        return _spaces[key]


def enumerate_diagrams(n: int, m: int) -> list[Diagram]:
    """All planar matchings in Hom(n, m); identity first when n == m."""
    return _space(n, m)[0]


def intern(n: int, m: int, pairing) -> Diagram:
    diagrams, index = _space(n, m)
    return diagrams[index[tuple(pairing)]]


def index_of(n: int, m: int, pairing: tuple[int, ...]) -> int:
    return _space(n, m)[1][pairing]


def _glue_raw(up: tuple[int, ...], lo: tuple[int, ...], n: int, k: int, m: int):
    """Glue ``up`` (k -> m) on top of ``lo`` (n -> k).

    Returns (outer pairing, loops, zigzag_hit).  Outer points are lower bottom
    ``0..n-1`` followed by upper top ``n..n+m-1``.
    """
    res = [-1] * (n + m)
    seen = [False] * k
    zig = False
    for start in range(n + m):
        if res[start] >= 0:
            continue
        cross = 0
        if start < n:
            p = lo[start]
            on_lower = True
        else:
            p = up[k + start - n]
            on_lower = False
        while True:
            if on_lower:
                if p < n:
                    end = p
                    break
                j = p - n
                seen[j] = True
                cross += 1
                p = up[j]
                on_lower = False
            else:
                if p >= k:
                    end = n + p - k
                    break
                seen[p] = True
                cross += 1
                p = lo[n + p]
                on_lower = True
        res[start] = end
        res[end] = start
        if cross >= 3:
            zig = True
    loops = 0
    for j in range(k):
        if seen[j]:
            continue
        loops += 1
        p = j
        cross = 0
        while not seen[p]:
            seen[p] = True
            q = up[p]
            seen[q] = True
            cross += 2
            p = lo[n + q] - n
        if cross >= 3:
            zig = True
    return tuple(res), loops, zig


# --- fast indexed gluing -----------------------------------------------------
#
# A diagram factors as (bottom half, through strands, top half).  A half on h
# points is a partner tuple with -1 marking the ends of through strands
# ("defects").  Gluing only ever looks at the top half of the lower diagram and
# the bottom half of the upper one; that middle computation yields loops, the
# zigzag flag and a small diagram D in Hom(s_lower, s_upper) telling how the
# defects are reconnected.  The outer result then depends only on
# (bottom half of lower, D, top half of upper).

_halves: dict[int, tuple[list[tuple[int, ...]], dict[tuple[int, ...], int]]] = {}
_half_data: dict[tuple[int, int], tuple[list[int], list[int]]] = {}
_mid_tables: dict[int, dict[int, tuple[int, int, bool, int, int]]] = {}
_outer_tables: dict[tuple[int, int], dict[tuple[int, int, int, int], int]] = {}


def _half_id(h: int, half: tuple[int, ...]) -> int:
    reg = _halves.get(h)
    if reg is None:
        reg = _halves.setdefault(h, ([], {}))
    hid = reg[1].get(half)
    if hid is None:
        with _lock:
            hid = reg[1].get(half)
            if hid is None:
                reg[0].append(half)
                hid = reg[1][half] = len(reg[0]) - 1
    return hid


def _halves_of(n: int, m: int) -> tuple[list[int], list[int]]:
    data = _half_data.get((n, m))
    if data is not None:
        return data
    bots, tops = [], []
    for d in _space(n, m)[0]:
        pr = d.pairing
        bots.append(_half_id(n, tuple(pr[a] if pr[a] < n else -1 for a in range(n))))
        tops.append(_half_id(m, tuple(pr[n + j] - n if pr[n + j] >= n else -1 for j in range(m))))
    _half_data[(n, m)] = (bots, tops)
    return bots, tops


def _middle(k: int, t: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, int, bool, int, int]:
    """Glue lower top-half t under upper bottom-half b (both on k points)."""
    lower_def = [j for j in range(k) if t[j] < 0]
    upper_def = [j for j in range(k) if b[j] < 0]
    lpos = {j: i for i, j in enumerate(lower_def)}
    upos = {j: i for i, j in enumerate(upper_def)}
    s2, s1 = len(lower_def), len(upper_def)
    pairing = [-1] * (s2 + s1)
    seen = [False] * k
    zig = False
    for start, going_up in [(j, True) for j in lower_def] + [(j, False) for j in upper_def]:
        here = lpos[start] if going_up else s2 + upos[start]
        if pairing[here] >= 0:
            continue
        cur, count, up = start, 1, going_up
        seen[cur] = True
        while True:
            nxt = b[cur] if up else t[cur]
            if nxt < 0:
                there = s2 + upos[cur] if up else lpos[cur]
                break
            cur = nxt
            seen[cur] = True
            count += 1
            up = not up
        pairing[here], pairing[there] = there, here
        if count >= 3:
            zig = True
    loops = 0
    for j in range(k):
        if seen[j]:
            continue
        loops += 1
        cur = j
        cross = 0
        while not seen[cur]:
            seen[cur] = True
            cur = b[cur]
            seen[cur] = True
            cur = t[cur]
            cross += 2
        if cross >= 3:
            zig = True
    return index_of(s2, s1, tuple(pairing)), loops, zig, s2, s1


def _outer(n: int, m: int, bh: tuple[int, ...], mid: Diagram, th: tuple[int, ...]) -> int:
    res = [-1] * (n + m)
    for a in range(n):
        if bh[a] >= 0:
            res[a] = bh[a]
    for j in range(m):
        if th[j] >= 0:
            res[n + j] = n + th[j]
    ld = [a for a in range(n) if bh[a] < 0]
    ud = [n + j for j in range(m) if th[j] < 0]
    s2 = mid.n_bottom
    place = ld + ud
    for p, q in enumerate(mid.pairing):
        res[place[p]] = place[q]
    return index_of(n, m, tuple(res))


def glue_index(i_up: int, i_lo: int, n: int, k: int, m: int) -> tuple[int, int, bool]:
    """Indexed glue: (result index, loops, zigzag_hit)."""
    lo_bots, lo_tops = _halves_of(n, k)
    up_bots, up_tops = _halves_of(k, m)
    tb, bb = lo_tops[i_lo], up_bots[i_up]
    mids = _mid_tables.get(k)
    if mids is None:
        mids = _mid_tables.setdefault(k, {})
    mkey = tb * 100_003 + bb
    mid = mids.get(mkey)
    if mid is None:
        reg = _halves[k][0]
        mid = mids[mkey] = _middle(k, reg[tb], reg[bb])
    mid_idx, loops, zig, s2, s1 = mid
    outer = _outer_tables.get((n, m))
    if outer is None:
        outer = _outer_tables.setdefault((n, m), {})
    okey = (lo_bots[i_lo], mid_idx, s2 * 64 + s1, up_tops[i_up])
    r = outer.get(okey)
    if r is None:
        r = outer[okey] = _outer(
            n, m, _halves[n][0][okey[0]], _space(s2, s1)[0][mid_idx], _halves[m][0][okey[3]]
        )
    return r, loops, zig


def half_split(n: int, m: int) -> tuple[list[int], list[int]]:
    """Per-diagram (bottom half id, top half id) for Hom(n, m)."""
    return _halves_of(n, m)


def middle(k: int, top_half: int, bottom_half: int) -> tuple[int, int, bool, int, int]:
    """Cached middle gluing: (D index, loops, zigzag, s_lower, s_upper)."""
    mids = _mid_tables.get(k)
    if mids is None:
        mids = _mid_tables.setdefault(k, {})
    mkey = top_half * 100_003 + bottom_half
    mid = mids.get(mkey)
    if mid is None:
        reg = _halves[k][0]
        mid = mids[mkey] = _middle(k, reg[top_half], reg[bottom_half])
    return mid


def outer_table(n: int, m: int) -> dict:
    return _outer_tables.setdefault((n, m), {})


def outer_index(n: int, m: int, bottom_half: int, mid: tuple, top_half: int) -> int:
    """Result index for (bottom half of lower, middle D, top half of upper)."""
    table = outer_table(n, m)
    key = (bottom_half, mid[0], mid[3] * 64 + mid[4], top_half)
    r = table.get(key)
    if r is None:
        r = table[key] = _outer(
            n, m, _halves[n][0][bottom_half], _space(mid[3], mid[4])[0][mid[0]], _halves[m][0][top_half]
        )
    return r


def glue_index_direct(i_up: int, i_lo: int, n: int, k: int, m: int) -> tuple[int, int, bool]:
    """Reference route for :func:`glue_index`: full traversal, no factorisation."""
    up = _space(k, m)[0][i_up].pairing
    lo = _space(n, k)[0][i_lo].pairing
    pairing, loops, zig = _glue_raw(up, lo, n, k, m)
    return _space(n, m)[1][pairing], loops, zig


def glue(upper: Diagram, lower: Diagram) -> GlueResult:
    """Stack ``upper`` on top of ``lower``."""
    if lower.n_top != upper.n_bottom:
        raise ValueError(f"arity mismatch: {lower.n_top} != {upper.n_bottom}")
    n, k, m = lower.n_bottom, lower.n_top, upper.n_top
    pairing, loops, zig = _glue_raw(upper.pairing, lower.pairing, n, k, m)
    return GlueResult(intern(n, m, pairing), loops, zig)


def _tensor_raw(a: Diagram, b: Diagram) -> tuple[int, ...]:
    n1, m1, n2, m2 = a.n_bottom, a.n_top, b.n_bottom, b.n_top
    n = n1 + n2

    def place_a(p):
        return p if p < n1 else n + (p - n1)

    def place_b(p):
        return n1 + p if p < n2 else n + m1 + (p - n2)

    out = [0] * (n + m1 + m2)
    for p, q in enumerate(a.pairing):
        out[place_a(p)] = place_a(q)
    for p, q in enumerate(b.pairing):
        out[place_b(p)] = place_b(q)
    return tuple(out)


def tensor(d1: Diagram, d2: Diagram) -> Diagram:
    """Horizontal juxtaposition, d1 on the left."""
    return intern(d1.n_bottom + d2.n_bottom, d1.n_top + d2.n_top, _tensor_raw(d1, d2))


_tensor_tables: dict[tuple[int, int, int, int], dict[int, int]] = {}


def tensor_index(i1: int, i2: int, n1: int, m1: int, n2: int, m2: int) -> int:
    table = _tensor_tables.setdefault((n1, m1, n2, m2), {})
    key = i1 * 1_000_003 + i2
    hit = table.get(key)
    if hit is None:
        d = tensor(_space(n1, m1)[0][i1], _space(n2, m2)[0][i2])
        hit = table[key] = d.index
    return hit


def trace_close(d: Diagram) -> int:
    """Loops in the closure joining bottom i to top i around the right."""
    if d.n_bottom != d.n_top:
        raise ValueError("trace closure needs a square diagram")
    n = d.n_bottom
    seen = [False] * (2 * n)
    loops = 0
    for s in range(2 * n):
        if seen[s]:
            continue
        loops += 1
        p = s
        while not seen[p]:
            seen[p] = True
            q = d.pairing[p]
            seen[q] = True
            p = q + n if q < n else q - n
    return loops


def identity(n: int) -> Diagram:
    return intern(n, n, tuple([n + i for i in range(n)] + list(range(n))))


def cup() -> Diagram:
    return intern(0, 2, (1, 0))


def cap() -> Diagram:
    return intern(2, 0, (1, 0))


def from_pairs(n: int, m: int, pairs) -> Diagram:
    """Build from boundary-label pairs such as [(1, 4), (2, 3)]."""
    size = n + m
    to_point = {}
    for p in range(size):
        to_point[p + 1 if p < n else n + m - (p - n)] = p
    pairing = [-1] * size
    for a, b in pairs:
        pa, pb = to_point[a], to_point[b]
        pairing[pa], pairing[pb] = pb, pa
    if -1 in pairing:
        raise ValueError("not a perfect matching")
    d = Diagram(n, m, tuple(pairing))
    return intern(n, m, d.pairing)


def parse_diagram(n: int, m: int, text: str) -> Diagram:
    """Inverse of ``str``: '1↔4, 2↔3' (ASCII '<->' also accepted)."""
    text = text.strip()
    if text in ("∅", ""):
        return from_pairs(n, m, [])
    pairs = []
    for chunk in text.split(","):
        a, b = chunk.replace("<->", "↔").split("↔")
        pairs.append((int(a), int(b)))
    return from_pairs(n, m, pairs)
