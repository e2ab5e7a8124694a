"""Prime towers approximating a non-root-of-unity q by roots of unity.

For an integer q the k-th candidate number is A_k = q^(2^k) + 1; every odd
prime p dividing it has q of order exactly 2^(k+1) modulo p.  For an algebraic
q with minimal polynomial f the role of A_k is played by the resultant
R_k = |Res(f, x^(2^k) + 1)|, and the root of unity lives in a finite field
F_{p^d} with d <= deg f.

Factoring is delegated to flint's smooth-part factorization (trial division,
then rho and ECM) with a 64-bit cutoff.  Every factor below the cutoff is
re-verified here with a deterministic Miller-Rabin test; whatever is left
above the cutoff is reported as an unfactored residue and never assumed
prime.  A tower position without a qualifying prime is marked either
``"provably none"`` (the number was factored completely) or
``"not found"`` (a residue was left over).
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import asdict, dataclass, field

from flint import fmpz, nmod_poly

from .qarith import DomainError

__all__ = [
    "TowerEntry",
    "TowerMiss",
    "Tower",
    "is_prime_u64",
    "resultant",
    "smooth_factor",
    "mult_order",
    "integer_tower",
    "algebraic_tower",
]

_U64 = 1 << 64
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime_u64(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 2^64."""
    if n >= _U64:
        raise ValueError("deterministic test only covers n < 2^64")
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# resultants by subresultant remainder sequences
# ---------------------------------------------------------------------------


def _trim(f: list[int]) -> list[int]:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """lc(b)^(deg a - deg b + 1) * a  mod  b, over the integers."""
    r = list(a)
    db = len(b) - 1
    lc = b[-1]
    for _ in range(len(a) - len(b) + 1):
        if len(r) - 1 < db:
            r = [lc * c for c in r]
            continue
        top = r[-1]
        shift = len(r) - 1 - db
        r = [lc * c for c in r]
        for i, c in enumerate(b):
            r[i + shift] -= top * c
        r = _trim(r)
        if not r:
            return []
    return r


def resultant(f: list[int], g: list[int]) -> int:
    """Res(f, g) for integer polynomials given low-to-high, exactly.

    Uses the subresultant PRS, so all intermediate divisions are exact.
    """
    A, B = _trim(f), _trim(g)
    if not A or not B:
        return 0
    if len(A) == 1 and len(B) == 1:
        return 1
    sign = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) * (len(B) - 1) % 2:
            sign = -1
    g_, h = 1, 1
    while len(B) > 1:
        delta = len(A) - len(B)
        if (len(A) - 1) * (len(B) - 1) % 2:
            sign = -sign
        R = _pseudo_rem(A, B)
        if not R:
            return 0
        A = B
        den = g_ * h**delta
        B = [c // den for c in R]
        g_ = A[-1]
        # h <- g^delta / h^(delta - 1), exact
        h = g_**delta // h ** (delta - 1) if delta else h
    # B is a nonzero constant now
    dA = len(A) - 1
    if dA == 0:
        return sign
    hh = B[0] ** dA // h ** (dA - 1) if dA > 1 else B[0]
    return sign * hh


# ---------------------------------------------------------------------------
# factoring with a verified 64-bit part
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """n = prod(p^e for p, e in primes) * residue.  residue == 1 means complete."""

    n: int
    primes: tuple[tuple[int, int], ...]
    residue: int

    @property
    def complete(self) -> bool:
        return self.residue == 1


def smooth_factor(n: int) -> Factorization:
    """Split off every prime factor below 2^64 and verify each one."""
    if n < 1:
        raise ValueError("factor a positive integer")
    found: dict[int, int] = {}
    rest = n
    for p, e in fmpz(n).factor_smooth(64):
        p = int(p)
        if p >= _U64:
            continue
        if is_prime_u64(p):
            found[p] = found.get(p, 0) + e
            rest //= p**e
            continue
        # a composite leftover below the cutoff: finish it off completely
        for pp, ee in fmpz(p).factor():
            pp = int(pp)
            if not is_prime_u64(pp):
                raise AssertionError(f"flint returned a non-prime factor {pp}")
            found[pp] = found.get(pp, 0) + e * ee
            rest //= pp ** (e * ee)
    # whatever remains is a product of primes >= 2^64
    check = rest
    for p, e in found.items():
        check *= p**e
    if check != n:
        raise AssertionError("factorization does not multiply back")
    return Factorization(n, tuple(sorted(found.items())), rest)


# ---------------------------------------------------------------------------
# finite field elements and orders
# ---------------------------------------------------------------------------


def _prime_divisors(n: int) -> list[int]:
    if n == 1:
        return []
    fac = smooth_factor(n)
    if not fac.complete:
        # p^d - 1 with p < 2^64: only hit for large d; finish with flint
        extra = [int(p) for p, _ in fmpz(fac.residue).factor()]
        return sorted({p for p, _ in fac.primes} | set(extra))
    return [p for p, _ in fac.primes]


def _cyclotomic_value(e: int, p: int) -> int:
    from flint import fmpz_poly

    return int(fmpz_poly.cyclotomic(e)(p))


def _group_order_primes(p: int, d: int) -> list[int]:
    """Prime divisors of p^d - 1, factoring each cyclotomic piece separately."""
    out: set[int] = set()
    for e in range(1, d + 1):
        if d % e == 0:
            out.update(_prime_divisors(_cyclotomic_value(e, p)))
    return sorted(out)


def _as_poly(x, p: int) -> nmod_poly:
    if isinstance(x, int):
        return nmod_poly([x % p], p)
    return nmod_poly([c % p for c in x], p)


def _power(x: nmod_poly, e: int, modulus: nmod_poly | None) -> nmod_poly:
    if modulus is None:
        p = x.modulus()
        c = int(x[0]) if x.degree() >= 0 else 0
        return nmod_poly([pow(c, e, p)], p)
    return x.pow_mod(e, modulus)


def _modulus_poly(p: int, d: int, modulus) -> nmod_poly | None:
    if d == 1 and modulus is None:
        return None
    if modulus is None:
        from .qarith import least_irreducible

        modulus = least_irreducible(p, d)
    g = nmod_poly([c % p for c in modulus], p)
    if g.degree() != d:
        raise ValueError("modulus degree does not match d")
    return g


def mult_order(x, p: int, d: int = 1, modulus=None) -> int:
    """Multiplicative order of x in F_{p^d}.

    ``x`` is an integer (d = 1) or a coefficient sequence, low degree first,
    of a residue modulo ``modulus`` (default: the least monic irreducible of
    degree d, the same choice as :class:`qarith.Finite`).
    """
    if p < 2 or not fmpz(p).is_prime():
        raise ValueError(f"{p} is not prime")
    g = _modulus_poly(p, d, modulus)
    xp = _as_poly(x, p)
    if g is not None:
        xp = xp % g
    if xp.is_zero():
        raise ValueError("zero has no multiplicative order")
    order = p**d - 1
    for ell in _group_order_primes(p, d):
        while order % ell == 0 and _power(xp, order // ell, g).is_one():
            order //= ell
    return order


# ---------------------------------------------------------------------------
# towers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TowerEntry:
    k: int
    p: int
    d: int
    root: tuple[int, ...]
    modulus: tuple[int, ...]
    order: int

    def as_row(self) -> list:
        root = self.root[0] if self.d == 1 else " ".join(map(str, self.root))
        return [self.k, self.p, self.d, root, self.order]


@dataclass(frozen=True)
class TowerMiss:
    k: int
    status: str  # "provably none" or "not found"
    residue: int


@dataclass
class Tower:
    """Entries by k plus the positions where no prime was produced."""

    polynomial: tuple[int, ...]
    k_range: tuple[int, int]
    entries: list[TowerEntry] = field(default_factory=list)
    misses: list[TowerMiss] = field(default_factory=list)
    certificates: dict[int, dict] = field(default_factory=dict)

    def primes(self) -> list[int]:
        return [e.p for e in self.entries]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def to_json(self) -> str:
        doc = {
            "polynomial": list(self.polynomial),
            "k_range": list(self.k_range),
            "entries": [asdict(e) for e in self.entries],
            "misses": [asdict(m) for m in self.misses],
            "certificates": {str(k): v for k, v in self.certificates.items()},
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "p", "d", "root", "order"])
        for e in self.entries:
            w.writerow(e.as_row())
        return buf.getvalue()


def _verify_entry(f: list[int], e: TowerEntry) -> None:
    g = _modulus_poly(e.p, e.d, e.modulus if e.d > 1 else None)
    r = _as_poly(list(e.root), e.p)
    if g is not None:
        r = r % g
    # f(r) = 0 by Horner
    acc = nmod_poly([0], e.p)
    for c in reversed(f):
        acc = acc * r + c
        if g is not None:
            acc = acc % g
    if not acc.is_zero():
        raise AssertionError(f"root does not satisfy f modulo {e.p}")
    if mult_order(list(e.root), e.p, e.d, e.modulus if e.d > 1 else None) != e.order:
        raise AssertionError("recorded order is wrong")
    if e.order != 2 ** (e.k + 1):
        raise AssertionError("order is not 2^(k+1)")
    minus_one = _power(r, 2**e.k, g)
    if not (minus_one + 1).is_zero():
        raise AssertionError("q^(2^k) is not -1")


def _check_k_range(k_min: int, k_max: int) -> None:
    if k_min < 0 or k_max < k_min:
        raise ValueError("need 0 <= k_min <= k_max")


def integer_tower(q: int, k_max: int, k_min: int = 1) -> Tower:
    """Smallest new odd prime divisor of q^(2^k) + 1 for each k in range."""
    if q in (-1, 0, 1):
        raise DomainError(f"q = {q} is zero or a root of unity")
    _check_k_range(k_min, k_max)
    tower = Tower((-q, 1), (k_min, k_max))
    used: set[int] = set()
    for k in range(k_min, k_max + 1):
        A = q ** (2**k) + 1
        fac = smooth_factor(A)
        tower.certificates[k] = {
            "value": str(A),
            "primes": [[p, e] for p, e in fac.primes],
            "residue": str(fac.residue),
        }
        choice = next((p for p, _ in fac.primes if p != 2 and p not in used), None)
        if choice is None:
            status = "provably none" if fac.complete else "not found"
            tower.misses.append(TowerMiss(k, status, fac.residue))
            continue
        entry = TowerEntry(k, choice, 1, (q % choice,), (), mult_order(q, choice))
        _verify_entry([-q, 1], entry)
        used.add(choice)
        tower.entries.append(entry)
    return tower


def _normalize_poly(f) -> list[int]:
    if isinstance(f, str):
        from .polysolve import parse_poly

        # accept a bare x as well as the parser's x0
        poly = parse_poly(re.sub(r"x(?!\d)", "x0", f), 1)
        deg = max((m[0] for m in poly), default=0)
        out = [0] * (deg + 1)
        for (e,), c in poly.items():
            if c.denominator != 1:
                raise ValueError("polynomial must have integer coefficients")
            out[e] = int(c)
        return _trim(out)
    return _trim([int(c) for c in f])


def _roots_of_order(f: list[int], p: int, k: int):
    """Irreducible factors of gcd(f, x^(2^k)+1) over F_p, smallest degree first."""
    fp = nmod_poly(f, p)
    if fp.degree() < 1:
        return []
    target = nmod_poly([1] + [0] * (2**k - 1) + [1], p)
    h = fp.gcd(target)
    if h.degree() < 1:
        return []
    _, facs = h.factor()
    out = []
    for g, _ in facs:
        coeffs = tuple(int(c) for c in g.coeffs())
        out.append((g.degree(), coeffs))
    return sorted(out)


def algebraic_tower(f, k_max: int, k_min: int = 1) -> Tower:
    """Tower for a root of the integer polynomial f (low-to-high coefficients or text in x)."""
    from flint import fmpz_poly

    coeffs = _normalize_poly(f)
    if len(coeffs) < 2:
        raise ValueError("f must have positive degree")
    if coeffs[0] == 0:
        raise ValueError("f(0) = 0")
    fz = fmpz_poly(coeffs)
    _, facs = fz.factor()
    if len(facs) != 1 or facs[0][1] != 1:
        raise ValueError("f must be irreducible over the rationals")
    if fz.is_cyclotomic():
        raise DomainError("f is cyclotomic, so its roots are roots of unity")
    _check_k_range(k_min, k_max)
    tower = Tower(tuple(coeffs), (k_min, k_max))
    used: set[int] = set()
    for k in range(k_min, k_max + 1):
        R = abs(resultant(coeffs, [1] + [0] * (2**k - 1) + [1]))
        if R == 0:
            raise DomainError(f"f shares a root with x^{2**k}+1; q is a root of unity")
        fac = smooth_factor(R)
        tower.certificates[k] = {
            "resultant": str(R),
            "primes": [[p, e] for p, e in fac.primes],
            "residue": str(fac.residue),
        }
        entry = None
        for p, _ in fac.primes:
            if p == 2 or p in used:
                continue
            if R % p:
                raise AssertionError("prime does not divide the resultant")
            facs_p = _roots_of_order(coeffs, p, k)
            if not facs_p:
                continue
            d, g = facs_p[0]
            if d == 1:
                root = ((-g[0] * pow(g[1], -1, p)) % p,)
                modulus: tuple[int, ...] = ()
            else:
                root, modulus = (0, 1), g
            entry = TowerEntry(k, p, d, root, modulus, 0)
            order = mult_order(list(root), p, d, modulus if d > 1 else None)
            entry = TowerEntry(k, p, d, root, modulus, order)
            break
        if entry is None:
            status = "provably none" if fac.complete else "not found"
            tower.misses.append(TowerMiss(k, status, fac.residue))
            continue
        _verify_entry(coeffs, entry)
        used.add(entry.p)
        tower.entries.append(entry)
    return tower
