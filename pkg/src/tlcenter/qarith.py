"""Exact coefficient domains and q-combinatorics.

Three kinds of domain are provided:

* ``GenericV`` -- the rational function field Q(v) with q = v^2.  Elements are
  stored as a pair of integer polynomials in v with gcd 1.
* ``Cyclotomic(N, e)`` -- the field Q[x]/Phi_N(x) with q = x^e.  With ``e = 1``
  q is the designated primitive N-th root; ``with_sqrt`` passes to
  ``Cyclotomic(2N, 2)`` so that v = x is available.
* ``Finite(p, d)`` -- the field with p^d elements, built on the
  lexicographically least monic irreducible of degree d.

Scalars are immutable.  Every division is checked; dividing by zero raises
:class:`DomainError`.

The "raw" layer (``dom.r_*`` methods) is what the morphism code uses on its
hot paths: raw ring elements are flint polynomials (or plain ints for prime
fields) and a morphism keeps one shared denominator for all its coefficients.
"""

from __future__ import annotations

import re
import threading
from fractions import Fraction
from functools import lru_cache

import flint
from flint import fmpq, fmpq_poly, fmpz, fmpz_mod_poly_ctx, fmpz_poly, nmod_poly

__all__ = [
    "DomainError",
    "ScalarDomain",
    "GenericV",
    "Cyclotomic",
    "Finite",
    "Scalar",
    "cyclotomic_poly",
    "qint",
    "primitive_root",
    "root_of_unity_domain",
    "braiding_units",
    "parse_scalar",
]


class DomainError(ArithmeticError):
    """A non-invertible division or an impossible domain request."""


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> fmpz_poly:
    """Phi_n by exact division of x^n - 1 by Phi_d for the proper divisors d."""
    if n < 1:
        raise DomainError("cyclotomic polynomial needs n >= 1")
    f = fmpz_poly([-1] + [0] * (n - 1) + [1])
    for d in _divisors(n):
        if d < n:
            f, r = divmod(f, cyclotomic_poly(d))
            if not r.is_zero():
                raise AssertionError("inexact cyclotomic division")
    return f


def _is_prime(n: int) -> bool:
    return n >= 2 and fmpz(n).is_prime()


class ScalarDomain:
    """Common interface.  Subclasses fill in the raw arithmetic."""

    kind: str = "abstract"
    #: True when the raw ring is already a field (denominators are always 1).
    is_field_repr: bool = True

    # --- raw layer -------------------------------------------------------
    r_zero: object
    r_one: object

    def r_int(self, n: int):
        raise NotImplementedError

    def r_red(self, x):
        return x

    def r_iszero(self, x) -> bool:
        raise NotImplementedError

    def r_inv(self, x):
        raise NotImplementedError

    def r_norm_vec(self, coeffs: dict, den):
        """Bring a (numerators, shared denominator) vector to canonical form."""
        return coeffs, den

    # --- scalar layer ----------------------------------------------------
    def __call__(self, n) -> "Scalar":
        if isinstance(n, Scalar):
            if n.dom != self:
                raise DomainError(f"scalar from {n.dom} used in {self}")
            return n
        if isinstance(n, Fraction):
            return self(n.numerator) / self(n.denominator)
        return Scalar(self, self.r_red(self.r_int(int(n))), self.r_one)

    @property
    def zero(self) -> "Scalar":
        return Scalar(self, self.r_zero, self.r_one)

    @property
    def one(self) -> "Scalar":
        return Scalar(self, self.r_one, self.r_one)

    def pair(self, num, den) -> "Scalar":
        """Scalar num/den from raw ring elements."""
        if self.is_field_repr:
            if den == self.r_one:
                return Scalar(self, self.r_red(num), self.r_one)
            return Scalar(self, self.r_red(num * self.r_inv(den)), self.r_one)
        c, d = self.r_norm_vec({0: num}, den)
        return Scalar(self, c.get(0, self.r_zero), d)

    q: "Scalar"
    v: "Scalar | None"

    @property
    def fingerprint(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.fingerprint

    def __eq__(self, other) -> bool:
        return isinstance(other, ScalarDomain) and self.fingerprint == other.fingerprint

    def __hash__(self) -> int:
        return hash(self.fingerprint)

    def with_sqrt(self) -> "ScalarDomain":
        """A domain with the same q that also contains a square root v."""
        if self.v is None:
            raise DomainError(f"{self} has no square root of q")
        return self

    def format(self, s: "Scalar") -> str:
        raise NotImplementedError


class Scalar:
    """An exact element of a :class:`ScalarDomain`."""

    __slots__ = ("dom", "num", "den")

    def __init__(self, dom: ScalarDomain, num, den):
        self.dom = dom
        self.num = num
        self.den = den

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.dom is not self.dom and other.dom != self.dom:
                raise DomainError(f"mixed domains {self.dom} and {other.dom}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.dom(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.dom
        if d.is_field_repr:
            return Scalar(d, d.r_red(self.num + o.num), d.r_one)
        return d.pair(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.dom, self.dom.r_red(-self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.dom
        if d.is_field_repr:
            return Scalar(d, d.r_red(self.num * o.num), d.r_one)
        return d.pair(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        d = self.dom
        if self.is_zero():
            raise DomainError("division by zero")
        if d.is_field_repr:
            return Scalar(d, d.r_inv(self.num), d.r_one)
        return d.pair(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.dom.one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return self.dom.r_iszero(self.num)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.dom(other)
        if not isinstance(other, Scalar) or other.dom != self.dom:
            return False
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash((self.dom.fingerprint, str(self)))

    def __str__(self) -> str:
        return self.dom.format(self)

    def __repr__(self) -> str:
        return f"Scalar({self})"


# ---------------------------------------------------------------------------
# Q(v)
# ---------------------------------------------------------------------------

_V = fmpz_poly([0, 1])


def _laurent_terms(coeffs: dict[int, object], var: str) -> str:
    """Format sum c_k var^k in ascending k, e.g. 'q^-2 + 1 + q^2'."""
    parts: list[str] = []
    for k in sorted(coeffs):
        c = coeffs[k]
        if c == 0:
            continue
        neg = c < 0
        a = -c if neg else c
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts) if parts else "0"


class GenericV(ScalarDomain):
    """Q(v) with q = v^2; v is transcendental."""

    kind = "GenericV"
    is_field_repr = False

    def __init__(self):
        self.r_zero = fmpz_poly([])
        self.r_one = fmpz_poly([1])
        self.v = Scalar(self, _V, self.r_one)
        self.q = Scalar(self, _V * _V, self.r_one)

    @property
    def fingerprint(self) -> str:
        return "GenericV"

    def r_int(self, n):
        return fmpz_poly([n])

    def r_iszero(self, x):
        return x.is_zero()

    def r_norm_vec(self, coeffs, den):
        if den.is_zero():
            raise DomainError("division by zero")
        coeffs = {k: c for k, c in coeffs.items() if not c.is_zero()}
        if not coeffs:
            return {}, self.r_one
        g = den
        for c in coeffs.values():
            if g == 1:
                break
            g = g.gcd(c)
        if den.leading_coefficient() < 0:
            g = -g
        if g != 1:
            den = den // g
            coeffs = {k: c // g for k, c in coeffs.items()}
        return coeffs, den

    def format(self, s: Scalar) -> str:
        num, den = s.num, s.den
        dc = den.coeffs()
        shift = next(i for i, c in enumerate(dc) if c != 0)
        core = fmpz_poly(dc[shift:])
        nc = {i - shift: c for i, c in enumerate(num.coeffs()) if c != 0}
        if core.degree() == 0:
            c0 = core[0]
            nc = {k: Fraction(int(c), int(c0)) for k, c in nc.items()}
            return _fmt_v(nc)
        dcs = {i: int(c) for i, c in enumerate(core.coeffs()) if c != 0}
        nci = {k: int(c) for k, c in nc.items()}
        even = all(k % 2 == 0 for k in list(nci) + list(dcs))
        if even:
            return f"({_laurent_terms({k // 2: c for k, c in nci.items()}, 'q')}) / ({_laurent_terms({k // 2: c for k, c in dcs.items()}, 'q')})"
        return f"({_laurent_terms(nci, 'v')}) / ({_laurent_terms(dcs, 'v')})"

    def laurent(self, coeffs: dict[int, int]) -> Scalar:
        """The Laurent polynomial sum c_k v^k."""
        lo = min(min(coeffs, default=0), 0)
        num = fmpz_poly([coeffs.get(k, 0) for k in range(lo, max(coeffs, default=0) + 1)])
        return self.pair(num, _V ** (-lo))


def _fmt_v(coeffs: dict[int, Fraction]) -> str:
    if all(k % 2 == 0 for k in coeffs):
        return _laurent_terms({k // 2: c for k, c in coeffs.items()}, "q")
    return _laurent_terms(coeffs, "v")


# ---------------------------------------------------------------------------
# Q(zeta_N)
# ---------------------------------------------------------------------------


class Cyclotomic(ScalarDomain):
    """Q[x]/Phi_N with q = x^e (e = 1 by default)."""

    kind = "Cyclotomic"
    is_field_repr = True

    def __init__(self, N: int, q_exp: int = 1):
        if N < 1:
            raise DomainError("Cyclotomic(N) needs N >= 1")
        self.N = N
        self.q_exp = q_exp % N if N > 1 else 0
        self.modulus = fmpq_poly(cyclotomic_poly(N).coeffs())
        self.degree = self.modulus.degree()
        self.r_zero = fmpq_poly([])
        self.r_one = fmpq_poly([1])
        self.x = Scalar(self, self.r_red(fmpq_poly([0, 1])), self.r_one)
        self.q = self.x ** self.q_exp
        if self.q_exp % 2 == 0:
            self.v = self.x ** (self.q_exp // 2)
        elif N % 2 == 1:
            self.v = self.x ** ((self.q_exp * (N + 1) // 2) % N)
        else:
            self.v = None

    @property
    def fingerprint(self) -> str:
        return f"Cyclotomic({self.N})" + (f"[q=x^{self.q_exp}]" if self.q_exp != 1 else "")

    def r_int(self, n):
        return fmpq_poly([n])

    def r_red(self, x):
        if x.degree() >= self.degree:
            return x % self.modulus
        return x

    def r_iszero(self, x):
        return x.is_zero()

    def r_inv(self, x):
        if x.is_zero():
            raise DomainError("division by zero")
        g, s, _ = x.xgcd(self.modulus)
        if g != 1:
            raise DomainError("non-invertible cyclotomic element")
        return self.r_red(s)

    def with_sqrt(self) -> "Cyclotomic":
        if self.v is not None:
            return self
        return Cyclotomic(2 * self.N, 2 * self.q_exp)

    def format(self, s: Scalar) -> str:
        cs = [Fraction(int(c.p), int(c.q)) for c in (fmpq(c) for c in s.num.coeffs())]
        cs += [Fraction(0)] * (self.degree - len(cs))
        return f"cyc{self.N}[" + ",".join(str(c) for c in cs) + "]"

    def element(self, coeffs) -> Scalar:
        """The element sum c_k x^k."""
        return Scalar(self, self.r_red(fmpq_poly([fmpq(Fraction(c).numerator, Fraction(c).denominator) for c in coeffs])), self.r_one)


# ---------------------------------------------------------------------------
# F_{p^d}
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def least_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the lexicographically least monic irreducible.

    Candidates are ordered by the coefficient tuple (c_{d-1}, ..., c_0).
    """
    if d == 1:
        return (0, 1)
    import itertools

    for tail in itertools.product(range(p), repeat=d):
        coeffs = list(reversed(tail)) + [1]
        if coeffs[0] == 0:
            continue
        fac = nmod_poly(coeffs, p).factor()[1]
        if len(fac) == 1 and fac[0][1] == 1 and fac[0][0].degree() == d:
            return tuple(coeffs)
    raise AssertionError("no irreducible found")


class Finite(ScalarDomain):
    """The field F_{p^d}; q is supplied as a residue vector (default: the generator)."""

    kind = "Finite"
    is_field_repr = True

    def __init__(self, p: int, d: int = 1, q=None):
        if not _is_prime(p):
            raise DomainError(f"{p} is not prime")
        if d < 1:
            raise DomainError("extension degree must be >= 1")
        self.p, self.d = p, d
        self.modulus_coeffs = least_irreducible(p, d)
        self._prime = d == 1
        if self._prime:
            self.r_zero, self.r_one = 0, 1
        else:
            R = fmpz_mod_poly_ctx(p)
            self.ctx = flint.fq_default_ctx(p, d, modulus=R(list(self.modulus_coeffs)))
            self.r_zero, self.r_one = self.ctx(0), self.ctx(1)
        if q is None:
            q = [0, 1] if d > 1 else [2 % p]
        self.q = self.element(q)
        if self.q.is_zero():
            raise DomainError("q must be invertible")
        self.v = self._sqrt(self.q)

    def _sqrt(self, s: Scalar) -> Scalar | None:
        if self._prime:
            x = s.num % self.p
            if self.p == 2:
                return Scalar(self, x, 1)
            if pow(x, (self.p - 1) // 2, self.p) != 1:
                return None
            r = int(nmod_poly([-x, 0, 1], self.p).roots()[0][0])
            return Scalar(self, min(r, self.p - r), 1)
        if not s.num.is_square():
            return None
        return Scalar(self, s.num.sqrt(), self.r_one)

    @property
    def fingerprint(self) -> str:
        return f"Finite({self.p},{self.d})[q={self.format(self.q)}]"

    def element(self, residues) -> Scalar:
        if isinstance(residues, int):
            residues = [residues]
        if self._prime:
            return Scalar(self, int(residues[0]) % self.p if residues else 0, 1)
        return Scalar(self, self.ctx([int(r) for r in residues]), self.r_one)

    def residues(self, s: Scalar) -> list[int]:
        if self._prime:
            return [int(s.num) % self.p]
        out = [int(c) for c in s.num.to_list()]
        return out + [0] * (self.d - len(out))

    def r_int(self, n):
        return n % self.p if self._prime else self.ctx(n)

    def r_red(self, x):
        return x % self.p if self._prime else x

    def r_iszero(self, x):
        return x % self.p == 0 if self._prime else x.is_zero()

    def r_inv(self, x):
        if self.r_iszero(x):
            raise DomainError("division by zero")
        return pow(x, -1, self.p) if self._prime else x.inverse()

    def format(self, s: Scalar) -> str:
        return f"F({self.p}^{self.d})[" + ",".join(map(str, self.residues(s))) + "]"


# ---------------------------------------------------------------------------
# q-combinatorics
# ---------------------------------------------------------------------------

_qint_cache: dict = {}
_qint_lock = threading.Lock()


def qint(n: int, dom: ScalarDomain) -> Scalar:
    """[n]_q = q^{n-1} + q^{n-3} + ... + q^{1-n}, with [-n]_q = -[n]_q."""
    key = (n, dom.fingerprint)
    hit = _qint_cache.get(key)
    if hit is not None:
        return hit
    if n < 0:
        out = -qint(-n, dom)
    else:
        out = dom.zero
        for i in range(n):
            out = out + dom.q ** (n - 1 - 2 * i)
    with _qint_lock:
        _qint_cache[key] = out
    return out


def primitive_root(N: int) -> tuple[Cyclotomic, Scalar]:
    """Cyclotomic(N) together with its designated primitive N-th root x."""
    if N < 1:
        raise DomainError("primitive_root needs N >= 1")
    dom = Cyclotomic(N)
    return dom, dom.x


def root_of_unity_domain(kappa: int) -> Cyclotomic:
    """Domain with q a primitive 2*kappa-th root and v = sqrt(q) (Cyclotomic(4 kappa))."""
    if kappa < 1:
        raise DomainError("kappa must be positive")
    return Cyclotomic(4 * kappa, 2)


def braiding_units(dom: ScalarDomain) -> list[Scalar]:
    """The distinct a with a^2 + a^-2 = [2]_q, namely +-v, +-v^-1."""
    if dom.v is None:
        raise DomainError(f"{dom} has no square root of q; use with_sqrt()")
    v = dom.v
    out: list[Scalar] = []
    for a in (v, -v, v.inverse(), -v.inverse()):
        if not any(a == b for b in out):
            out.append(a)
    return out


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TERM = re.compile(r"^(?:(\d+(?:/\d+)?)\s*\*?\s*)?([qv])?(?:\^(-?\d+))?$")


def _parse_laurent(text: str) -> tuple[str | None, dict[int, Fraction]]:
    text = text.strip().replace(" ", "")
    if not text:
        raise ValueError("empty polynomial")
    terms = re.findall(r"[+-]?[^+-]+", text.replace("^-", "^~"))
    out: dict[int, Fraction] = {}
    var = None
    for t in terms:
        t = t.replace("^~", "^-")
        sign = -1 if t.startswith("-") else 1
        t = t.lstrip("+-")
        m = _TERM.match(t)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"bad term {t!r}")
        c = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        if m.group(2):
            if var and var != m.group(2):
                raise ValueError("mixed variables")
            var = m.group(2)
            k = int(m.group(3)) if m.group(3) else 1
        else:
            k = 0
        out[k] = out.get(k, 0) + sign * c
    return var, out


def parse_scalar(dom: ScalarDomain, text: str) -> Scalar:
    """Inverse of ``str(scalar)`` for every domain kind."""
    text = text.strip()
    if isinstance(dom, GenericV):
        m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", text)
        parts = [m.group(1), m.group(2)] if m else [text]
        vals = []
        for part in parts:
            var, cs = _parse_laurent(part)
            step = 2 if var == "q" else 1
            acc = dom.zero
            for k, c in cs.items():
                acc = acc + dom(c) * dom.v ** (step * k)
            vals.append(acc)
        return vals[0] if len(vals) == 1 else vals[0] / vals[1]
    m = re.fullmatch(r"(cyc\d+|F\(\d+\^\d+\))\[(.*)\]", text)
    if not m:
        raise ValueError(f"cannot parse {text!r} in {dom}")
    cs = [Fraction(c) for c in m.group(2).split(",") if c.strip()]
    if isinstance(dom, Cyclotomic):
        return dom.element(cs)
    return dom.element([int(c) for c in cs])
