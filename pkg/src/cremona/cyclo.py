"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element of conductor ``N`` is stored as an integer numerator vector over
the power basis ``1, z, ..., z^(phi(N)-1)`` together with a positive integer
denominator, where ``z = zeta_N = exp(2 pi i / N)``.  Vectors are always
reduced modulo the cyclotomic polynomial ``Phi_N`` and the fraction is in
lowest terms, so two elements of the same conductor are equal exactly when
their stored data is equal.  Elements of different conductors are compared
after embedding both into the field of the least common multiple.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache

from .kernels import mul_reduce, reduce_raw


class IncompatibleConductor(ValueError):
    pass


# -- number theory helpers ---------------------------------------------------


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def euler_phi(n: int) -> int:
    r = n
    for p, _ in factorize(n):
        r = r // p * (p - 1)
    return r


def moebius(n: int) -> int:
    fs = factorize(n)
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def lcm(*args: int) -> int:
    r = 1
    for a in args:
        r = r * a // math.gcd(r, a)
    return r


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(num, den):
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]  # den is monic
        q[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    assert not any(num), "inexact division"
    return q


@lru_cache(maxsize=None)
def _powers(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced vectors of z^e for 0 <= e < n."""
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    out = []
    for e in range(n):
        raw = [0] * max(e + 1, d)
        raw[e] = 1
        out.append(tuple(reduce_raw(raw, phi)))
    return tuple(out)


@lru_cache(maxsize=None)
def _trace_weights(n: int) -> tuple[Fraction, ...]:
    """Normalised trace Tr(z^e)/phi(n) for basis exponents e."""
    out = []
    for e in range(euler_phi(n)):
        m = n // math.gcd(e, n)
        out.append(Fraction(moebius(m), euler_phi(m)))
    return tuple(out)


@lru_cache(maxsize=None)
def _units(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, n + 1) if math.gcd(k, n) == 1) if n > 1 else (1,)


def _normalise(num, den):
    g = math.gcd(den, *num)
    if den < 0:
        g = -g
    if g != 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


# -- the element type ----------------------------------------------------------


class Cyclo:
    """Immutable element of Q(zeta_N)."""

    __slots__ = ("n", "num", "den", "_hash")

    def __init__(self, n: int, num, den: int = 1, *, _reduced: bool = False):
        if n < 1:
            raise ValueError("conductor must be positive")
        self.n = n
        if not _reduced:
            phi = cyclotomic_poly(n)
            num = reduce_raw(list(num), phi) if len(num) >= len(phi) else list(num) + [0] * (len(phi) - 1 - len(num))
            num, den = _normalise(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # constructors
    @classmethod
    def rational(cls, q, n: int = 1) -> "Cyclo":
        q = Fraction(q)
        d = euler_phi(n)
        num = [0] * d
        num[0] = q.numerator
        return cls(n, tuple(num), q.denominator, _reduced=True) if q else cls.zero(n)

    @classmethod
    def zero(cls, n: int = 1) -> "Cyclo":
        return cls(n, (0,) * euler_phi(n), 1, _reduced=True)

    @classmethod
    def one(cls, n: int = 1) -> "Cyclo":
        return cls.rational(1, n)

    @classmethod
    def zeta(cls, n: int, e: int = 1) -> "Cyclo":
        """zeta_n ** e."""
        return cls(n, _powers(n)[e % n], 1, _reduced=True)

    @classmethod
    def from_raw(cls, n: int, raw) -> "Cyclo":
        """Element from a formal sum ``sum raw[e] * zeta_n^e`` (rational coefficients)."""
        return reduce_to_basis(n, raw)

    # basic properties
    @property
    def coeffs(self) -> dict[int, Fraction]:
        return {e: Fraction(c, self.den) for e, c in enumerate(self.num) if c}

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def embed(self, m: int) -> "Cyclo":
        if m == self.n:
            return self
        if m % self.n:
            raise IncompatibleConductor(f"conductor {self.n} does not divide {m}")
        step = m // self.n
        pw = _powers(m)
        d = euler_phi(m)
        acc = [0] * d
        for e, c in enumerate(self.num):
            if c:
                v = pw[e * step]
                for i in range(d):
                    if v[i]:
                        acc[i] += c * v[i]
        num, den = _normalise(acc, self.den)
        return Cyclo(m, num, den, _reduced=True)

    def _coerce(self, other):
        if isinstance(other, Cyclo):
            if other.n == self.n:
                return self, other
            m = lcm(self.n, other.n)
            return self.embed(m), other.embed(m)
        if isinstance(other, (int, Fraction)):
            return self, Cyclo.rational(other, self.n)
        return None

    # arithmetic
    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a.den == b.den:
            num = [x + y for x, y in zip(a.num, b.num)]
            num, den = _normalise(num, a.den)
        else:
            num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
            num, den = _normalise(num, a.den * b.den)
        return Cyclo(a.n, num, den, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, tuple(-c for c in self.num), self.den, _reduced=True)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            num, den = _normalise([c * q.numerator for c in self.num], self.den * q.denominator)
            return Cyclo(self.n, num, den, _reduced=True)
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a.is_rational():
            return b * Fraction(a.num[0], a.den)
        if b.is_rational():
            return a * Fraction(b.num[0], b.den)
        num = mul_reduce(a.num, b.num, cyclotomic_poly(a.n))
        num, den = _normalise(num, a.den * b.den)
        return Cyclo(a.n, num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        return invert(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * invert(b)

    def __rtruediv__(self, other):
        return invert(self) * other

    def __pow__(self, k: int):
        if k < 0:
            return invert(self) ** (-k)
        result = Cyclo.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, k: int) -> "Cyclo":
        """Image under the automorphism zeta_N -> zeta_N^k (gcd(k, N) = 1)."""
        if math.gcd(k, self.n) != 1:
            raise ValueError("Galois exponent must be a unit")
        pw = _powers(self.n)
        d = len(self.num)
        acc = [0] * d
        for e, c in enumerate(self.num):
            if c:
                v = pw[(e * k) % self.n]
                for i in range(d):
                    if v[i]:
                        acc[i] += c * v[i]
        return Cyclo(self.n, tuple(acc), self.den, _reduced=True)

    def conjugate(self) -> "Cyclo":
        return self.galois(-1 % self.n if self.n > 1 else 1)

    def norm(self) -> Fraction:
        p = Cyclo.one(self.n)
        for k in _units(self.n):
            p = p * self.galois(k)
        return p.to_fraction()

    def trace(self) -> Fraction:
        """Normalised trace Tr/[Q(zeta_N):Q]; independent of the conductor."""
        w = _trace_weights(self.n)
        return sum((c * w[e] for e, c in enumerate(self.num) if c), Fraction(0)) / self.den

    # comparison
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, Cyclo):
            return NotImplemented
        if other.n == self.n:
            return self.den == other.den and self.num == other.num
        a, b = self._coerce(other)
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.trace())
        return self._hash

    def key(self):
        """Hashable data valid for comparisons within one conductor."""
        return (self.num, self.den)

    # numerics (oracles and display only)
    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(c * z**e for e, c in enumerate(self.num)) / self.den

    def __repr__(self):
        return f"Cyclo({self.n}, {format_cyclo(self)!r})"

    def __str__(self):
        return format_cyclo(self)


def reduce_to_basis(n: int, raw) -> Cyclo:
    """Canonical form of the formal sum ``sum raw[e] zeta_n^e``.

    ``raw`` is a sequence or a mapping from exponent to rational coefficient;
    exponents are taken modulo ``n``.
    """
    items = raw.items() if isinstance(raw, dict) else enumerate(raw)
    fr = [(e % n, Fraction(c)) for e, c in items if c]
    den = lcm(*(c.denominator for _, c in fr)) if fr else 1
    pw = _powers(n)
    d = euler_phi(n)
    acc = [0] * d
    for e, c in fr:
        k = c.numerator * (den // c.denominator)
        v = pw[e]
        for i in range(d):
            if v[i]:
                acc[i] += k * v[i]
    num, den = _normalise(acc, den)
    return Cyclo(n, num, den, _reduced=True)


def embed(a: Cyclo, m: int) -> Cyclo:
    return a.embed(m)


def multiply(a: Cyclo, b: Cyclo) -> Cyclo:
    return a * b


@lru_cache(maxsize=65536)
def _invert_cached(n, num, den):
    a = Cyclo(n, num, den, _reduced=True)
    if a.is_rational():
        return Cyclo.rational(Fraction(den, num[0]), n)
    # x^{-1} = prod_{k != 1} sigma_k(x) / N(x)
    p = Cyclo.one(n)
    for k in _units(n):
        if k % n != 1 % n:
            p = p * a.galois(k)
    nrm = (p * a).to_fraction()
    return p * (1 / nrm)


def invert(a: Cyclo) -> Cyclo:
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero cyclotomic number")
    return _invert_cached(a.n, a.num, a.den)


def root_of_unity_exponent(a: Cyclo) -> Fraction | None:
    """Return q in [0, 1) with a = exp(2 pi i q), or None if a is not a root of unity."""
    n = a.n
    m = 2 * n if n % 2 else n
    b = a.embed(m) if m != n else a
    if b.den != 1:
        return None
    pw = _powers(m)
    for e in range(m):
        if pw[e] == b.num:
            return Fraction(e, m)
    return None


def descend(a: Cyclo, m: int) -> Cyclo | None:
    """Express ``a`` with conductor ``m`` (m | a.n) if it lies in Q(zeta_m)."""
    if a.n == m:
        return a
    if a.n % m:
        raise IncompatibleConductor(f"{m} does not divide {a.n}")
    from .linalg import solve_rational

    d = euler_phi(m)
    cols = [Cyclo.zeta(m, e).embed(a.n) for e in range(d)]
    rows = [[Fraction(c.num[i], c.den) for c in cols] for i in range(euler_phi(a.n))]
    rhs = [Fraction(a.num[i], a.den) for i in range(euler_phi(a.n))]
    sol = solve_rational(rows, rhs)
    if sol is None:
        return None
    return reduce_to_basis(m, sol)


def minimal_conductor(a: Cyclo) -> Cyclo:
    """Re-express ``a`` over the smallest conductor found by prime descent."""
    changed = True
    while changed and a.n > 1:
        changed = False
        for p, _ in factorize(a.n):
            b = descend(a, a.n // p)
            if b is not None:
                a = b
                changed = True
                break
    return a


# -- text syntax ----------------------------------------------------------------

_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*(?:\*\s*z\s*(?:\^\s*(\d+))?)?|z\s*(?:\^\s*(\d+))?)\s*"
)


def parse_cyclo(text: str, n: int) -> Cyclo:
    """Parse ``expr := term (('+'|'-') term)*`` with ``z`` meaning zeta_n."""
    s = text.strip()
    if not s:
        raise ValueError("empty cyclotomic expression")
    pos = 0
    raw: dict[int, Fraction] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at offset {pos}")
        sign, coef, e1, e2 = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        if coef is None and m.group(0).strip().lstrip("+-").strip() == "":
            raise ValueError(f"dangling sign in {text!r}")
        c = Fraction(coef) if coef is not None else Fraction(1)
        has_z = "z" in m.group(0)
        e = int(e1 or e2 or 1) if has_z else 0
        if sign == "-":
            c = -c
        raw[e] = raw.get(e, Fraction(0)) + c
        pos = m.end()
        first = False
    return reduce_to_basis(n, raw)


def format_cyclo(a: Cyclo) -> str:
    """Render ``a`` in the ``z`` grammar accepted by :func:`parse_cyclo`."""
    parts = []
    for e, c in enumerate(a.num):
        if not c:
            continue
        q = Fraction(c, a.den)
        mag = abs(q)
        if e == 0:
            body = str(mag)
        elif mag == 1:
            body = "z" if e == 1 else f"z^{e}"
        else:
            body = f"{mag}*z" if e == 1 else f"{mag}*z^{e}"
        parts.append(("-" if q < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sgn, body in parts[1:]:
        out += f" {sgn} {body}"
    return out


def zeta(n: int, e: int = 1) -> Cyclo:
    return Cyclo.zeta(n, e)
