"""Gröbner bases over the rationals for the small systems the searches produce.

Polynomials are dicts from exponent tuples to coefficients.  Internally every
basis element is kept as a content-free integer polynomial with a positive
leading coefficient; the public basis is returned monic with
:class:`fractions.Fraction` coefficients.

Buchberger's algorithm runs with the normal selection strategy (smallest lcm
first, ties broken by pair indices) and both of Buchberger's criteria.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce as _fold

from flint import fmpq, fmpq_poly

__all__ = [
    "ResourceGuard",
    "PolySystem",
    "Variety",
    "parse_poly",
    "format_poly",
    "groebner",
    "reduce_poly",
    "variety",
    "grevlex_key",
    "lex_key",
]

MAX_VARS = 20


class ResourceGuard(RuntimeError):
    """Raised when a system exceeds the configured size limits."""


Monomial = tuple[int, ...]
Poly = dict[Monomial, Fraction]


def grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m: Monomial):
    return m


_ORDERS = {"grevlex": grevlex_key, "lex": lex_key}


@dataclass
class PolySystem:
    nvars: int
    generators: list[Poly]
    names: list[str] = field(default_factory=list)
    order: str = "grevlex"

    def __post_init__(self):
        if not self.names:
            self.names = [f"x{i}" for i in range(self.nvars)]
        if len(self.names) != self.nvars:
            raise ValueError("variable names do not match nvars")
        for g in self.generators:
            for m in g:
                if len(m) != self.nvars:
                    raise ValueError("monomial length does not match nvars")
        self.generators = [g for g in (_clean(g) for g in self.generators) if g]

    @classmethod
    def parse(cls, texts: list[str], nvars: int | None = None, order: str = "grevlex") -> "PolySystem":
        if nvars is None:
            idx = [int(v) for t in texts for v in re.findall(r"x(\d+)", t)]
            nvars = max(idx, default=-1) + 1
        return cls(nvars, [parse_poly(t, nvars) for t in texts], order=order)


# ---------------------------------------------------------------------------
# parsing and printing
# ---------------------------------------------------------------------------

_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse e.g. ``"3/2*x0^2*x1 - x2 + 1"``."""
    out: Poly = {}
    body = text.replace(" ", "")
    if not body:
        raise ValueError("empty polynomial")
    pos = 0
    for m in _TERM.finditer(body):
        if m.start() != pos:
            raise ValueError(f"cannot parse {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(sign)
        exps = [0] * nvars
        for factor in m.group(2).split("*"):
            if not factor:
                raise ValueError(f"cannot parse {text!r}")
            var = re.fullmatch(r"x(\d+)(?:\^(\d+))?", factor)
            if var:
                i = int(var.group(1))
                if i >= nvars:
                    raise ValueError(f"variable x{i} out of range")
                exps[i] += int(var.group(2) or 1)
            else:
                coeff *= Fraction(factor)
        key = tuple(exps)
        out[key] = out.get(key, Fraction(0)) + coeff
    if pos != len(body):
        raise ValueError(f"cannot parse {text!r}")
    return _clean(out)


def format_poly(p: Poly, names: list[str] | None = None, order: str = "grevlex") -> str:
    if not p:
        return "0"
    key = _ORDERS[order]
    nv = len(next(iter(p)))
    names = names or [f"x{i}" for i in range(nv)]
    parts = []
    for m in sorted(p, key=key, reverse=True):
        c = Fraction(p[m])
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        parts.append(("-" if c < 0 else "+", body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for s, b in parts[1:]:
        text += f" {s} {b}"
    return text


# ---------------------------------------------------------------------------
# integer polynomial arithmetic
# ---------------------------------------------------------------------------


def _clean(p: Poly) -> Poly:
    return {m: Fraction(c) for m, c in p.items() if c}


def _to_int(p: Poly) -> dict[Monomial, int]:
    den = _fold(lambda a, b: a * b // math.gcd(a, b), (Fraction(c).denominator for c in p.values()), 1)
    return {m: int(Fraction(c) * den) for m, c in p.items()}


def _primitive(p: dict[Monomial, int], lead: Monomial) -> dict[Monomial, int]:
    g = _fold(math.gcd, (abs(c) for c in p.values()), 0)
    if p[lead] < 0:
        g = -g
    if g in (0, 1):
        return p
    return {m: c // g for m, c in p.items()}


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class _Basis:
    def __init__(self, key):
        self.key = key
        self.polys: list[dict[Monomial, int]] = []
        self.leads: list[Monomial] = []
        self.alive: list[bool] = []

    def lead(self, p) -> Monomial:
        return max(p, key=self.key)

    def reduce(self, p: dict[Monomial, int], *, full: bool = True, skip: int = -1) -> dict[Monomial, int]:
        """Normal form of p (integer multiple) against the live basis."""
        p = dict(p)
        rem: dict[Monomial, int] = {}
        key = self.key
        while p:
            lm = max(p, key=key)
            lc = p[lm]
            for i, (g, gl) in enumerate(zip(self.polys, self.leads)):
                if i == skip or not self.alive[i] or not _divides(gl, lm):
                    continue
                glc = g[gl]
                d = math.gcd(lc, glc)
                mul_p, mul_g = glc // d, lc // d
                shift = tuple(x - y for x, y in zip(lm, gl))
                if mul_p != 1:
                    p = {m: c * mul_p for m, c in p.items()}
                    rem = {m: c * mul_p for m, c in rem.items()}
                for m, c in g.items():
                    t = tuple(x + y for x, y in zip(m, shift))
                    v = p.get(t, 0) - c * mul_g
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
            else:
                if not full:
                    rem.update(p)
                    break
                rem[lm] = lc
                del p[lm]
            if p and len(p) > 64:
                g0 = _fold(math.gcd, (abs(c) for c in p.values()), 0)
                g0 = math.gcd(g0, _fold(math.gcd, (abs(c) for c in rem.values()), 0))
                if g0 > 1:
                    p = {m: c // g0 for m, c in p.items()}
                    rem = {m: c // g0 for m, c in rem.items()}
        if not rem:
            return {}
        return _primitive(rem, self.lead(rem))

    def add(self, p: dict[Monomial, int]) -> int:
        lm = self.lead(p)
        self.polys.append(_primitive(p, lm))
        self.leads.append(lm)
        self.alive.append(True)
        return len(self.polys) - 1


def _spoly(f, fl, g, gl) -> dict[Monomial, int]:
    L = _lcm(fl, gl)
    a, b = f[fl], g[gl]
    d = math.gcd(a, b)
    mf, mg = b // d, a // d
    sf = tuple(x - y for x, y in zip(L, fl))
    sg = tuple(x - y for x, y in zip(L, gl))
    out: dict[Monomial, int] = {}
    for m, c in f.items():
        t = tuple(x + y for x, y in zip(m, sf))
        out[t] = out.get(t, 0) + c * mf
    for m, c in g.items():
        t = tuple(x + y for x, y in zip(m, sg))
        v = out.get(t, 0) - c * mg
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return {m: c for m, c in out.items() if c}


@dataclass
class GroebnerStats:
    pairs_considered: int = 0
    product_skips: int = 0
    chain_skips: int = 0
    reductions_to_zero: int = 0


def groebner(sys: PolySystem, *, max_basis: int = 5000, max_pairs: int = 2_000_000, stats: GroebnerStats | None = None) -> list[Poly]:
    """Reduced Gröbner basis (monic, Fraction coefficients) in ``sys.order``."""
    if sys.nvars > MAX_VARS:
        raise ResourceGuard(f"{sys.nvars} variables exceeds the limit of {MAX_VARS}")
    key = _ORDERS[sys.order]
    stats = stats if stats is not None else GroebnerStats()
    B = _Basis(key)
    one = tuple([0] * sys.nvars)
    for g in sys.generators:
        gi = _to_int(g)
        r = B.reduce(gi)
        if r:
            if B.lead(r) == one:
                return [{one: Fraction(1)}]
            B.add(r)
    pairs: set[tuple[int, int]] = set()
    for j in range(len(B.polys)):
        for i in range(j):
            pairs.add((i, j))
    while pairs:
        if stats.pairs_considered > max_pairs:
            raise ResourceGuard("pair limit exceeded")
        i, j = min(pairs, key=lambda ij: (key(_lcm(B.leads[ij[0]], B.leads[ij[1]])), ij[1], ij[0]))
        pairs.discard((i, j))
        stats.pairs_considered += 1
        if not (B.alive[i] and B.alive[j]):
            continue
        li, lj = B.leads[i], B.leads[j]
        if _coprime(li, lj):
            stats.product_skips += 1
            continue
        L = _lcm(li, lj)
        chain = False
        for k in range(len(B.polys)):
            if k in (i, j) or not B.alive[k]:
                continue
            if _divides(B.leads[k], L) and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                chain = True
                break
        if chain:
            stats.chain_skips += 1
            continue
        s = _spoly(B.polys[i], li, B.polys[j], lj)
        r = B.reduce(s)
        if not r:
            stats.reductions_to_zero += 1
            continue
        if B.lead(r) == one:
            return [{one: Fraction(1)}]
        new = B.add(r)
        if len(B.polys) > max_basis:
            raise ResourceGuard("basis size limit exceeded")
        for k in range(new):
            if B.alive[k]:
                pairs.add((k, new))
    return _reduced(B, key)


def _reduced(B: _Basis, key) -> list[Poly]:
    live = [i for i in range(len(B.polys)) if B.alive[i]]
    # minimal basis: drop elements whose leading monomial is divisible by another's
    minimal = []
    for i in sorted(live, key=lambda i: (key(B.leads[i]), i)):
        if any(_divides(B.leads[j], B.leads[i]) for j in minimal):
            continue
        minimal.append(i)
    R = _Basis(key)
    for i in minimal:
        R.polys.append(B.polys[i])
        R.leads.append(B.leads[i])
        R.alive.append(True)
    out = []
    for idx in range(len(R.polys)):
        p = R.reduce(R.polys[idx], skip=idx)
        R.polys[idx] = p
        lc = p[R.leads[idx]]
        out.append({m: Fraction(c, lc) for m, c in p.items()})
    out.sort(key=lambda p: key(max(p, key=key)))
    return out


def reduce_poly(p: Poly, basis: list[Poly], order: str = "grevlex") -> Poly:
    """Normal form of p (up to a nonzero rational factor) modulo basis."""
    key = _ORDERS[order]
    B = _Basis(key)
    for g in basis:
        if g:
            B.add(_to_int(g))
    r = B.reduce(_to_int(p)) if p else {}
    return {m: Fraction(c) for m, c in r.items()}


def is_groebner(basis: list[Poly], order: str = "grevlex") -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    key = _ORDERS[order]
    B = _Basis(key)
    for g in basis:
        B.add(_to_int(g))
    for j in range(len(B.polys)):
        for i in range(j):
            s = _spoly(B.polys[i], B.leads[i], B.polys[j], B.leads[j])
            if s and B.reduce(s):
                return False
    return True


# ---------------------------------------------------------------------------
# varieties
# ---------------------------------------------------------------------------


@dataclass
class Variety:
    kind: str  # "empty" | "finite" | "positive-dimensional"
    basis: list[Poly]
    points: list[tuple[Fraction, ...]] = field(default_factory=list)
    algebraic: list[list[Poly]] = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return self.kind == "empty"


def _is_one(basis: list[Poly]) -> bool:
    return len(basis) == 1 and all(sum(m) == 0 for m in basis[0])


def _zero_dimensional(basis: list[Poly], nvars: int, key) -> bool:
    leads = [max(p, key=key) for p in basis]
    for v in range(nvars):
        if not any(l[v] > 0 and sum(l) == l[v] for l in leads):
            return False
    return True


def _substitute(p: Poly, var: int, value: Fraction) -> Poly:
    out: Poly = {}
    for m, c in p.items():
        e = m[var]
        t = m[:var] + (0,) + m[var + 1 :]
        out[t] = out.get(t, Fraction(0)) + c * value**e
    return _clean(out)


def evaluate(p: Poly, point) -> Fraction:
    total = Fraction(0)
    for m, c in p.items():
        t = Fraction(c)
        for x, e in zip(point, m):
            if e:
                t *= Fraction(x) ** e
        total += t
    return total


def _rational_roots(p: Poly, var: int) -> tuple[list[Fraction], bool]:
    """Rational roots of a polynomial in one variable; flag if other factors remain."""
    deg = max(m[var] for m in p)
    coeffs = [Fraction(0)] * (deg + 1)
    for m, c in p.items():
        coeffs[m[var]] += c
    f = fmpq_poly([fmpq(c.numerator, c.denominator) for c in coeffs])
    roots = []
    leftover = False
    for fac, _mult in f.factor()[1]:
        if fac.degree() == 1:
            a, b = fac.coeffs()
            roots.append(-Fraction(int(a.p), int(a.q)) / Fraction(int(b.p), int(b.q)))
        elif fac.degree() > 1:
            leftover = True
    return sorted(set(roots)), leftover


def variety(sys: PolySystem) -> Variety:
    """Classify the solution set of a system over an algebraic closure of Q."""
    gb = groebner(sys)
    if _is_one(gb):
        return Variety("empty", gb)
    if not _zero_dimensional(gb, sys.nvars, _ORDERS[sys.order]):
        return Variety("positive-dimensional", gb)
    lex = groebner(PolySystem(sys.nvars, gb, sys.names, order="lex"))
    points: list[tuple[Fraction, ...]] = []
    algebraic: list[list[Poly]] = []

    def solve(polys: list[Poly], fixed: dict[int, Fraction], var: int):
        if var < 0:
            pt = tuple(fixed[i] for i in range(sys.nvars))
            points.append(pt)
            return
        # polynomials involving only variables >= var (others already fixed)
        cur = [p for p in polys if p]
        if any(all(sum(m) == 0 for m in p) for p in cur):
            return
        univ = [p for p in cur if all(all(e == 0 for i, e in enumerate(m) if i != var) for m in p)]
        if not univ:
            algebraic.append(cur)
            return
        g = min(univ, key=lambda p: max(m[var] for m in p))
        roots, leftover = _rational_roots(g, var)
        if leftover:
            algebraic.append(cur)
        for r in roots:
            nxt = [_substitute(p, var, r) for p in cur]
            solve([p for p in nxt if p], {**fixed, var: r}, var - 1)

    solve(lex, {}, sys.nvars - 1)
    points = sorted(set(points))
    for pt in points:
        for g in sys.generators:
            if evaluate(g, pt) != 0:
                raise AssertionError("extracted point fails re-substitution")
    return Variety("finite", gb, points, algebraic)
