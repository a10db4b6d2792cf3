"""Exact arithmetic in small finite fields GF(q), q = p^e.

Field elements are canonical integers in [0, q).  The base-p digits of an
element are the coefficients of its residue polynomial, constant term
first: in GF(9) built on x^2 + 2x + 2 the integer 5 = 2 + 1*3 stands for
2 + x.  This encoding is stable, hashable, and is the on-disk format used
by every serializer in the package.

Multiplication, inversion, powers and quadratic-residue tests run over
log/antilog tables built once at construction (a generator of the
multiplicative group is located by checking element orders, so overriding
the defining polynomial is safe).  Addition in extension fields is
digitwise mod p and is tabulated as well.  A GF instance is immutable
after construction and can be shared freely between threads.

Default defining polynomials (Conway polynomials, coefficients low to
high) ship for every prime power q <= 49 with e >= 2; pass ``poly=`` to
override.
"""

from __future__ import annotations

import functools
from itertools import product
from typing import Sequence

import numpy as np

#: Conway polynomial coefficients, constant term first, monic.
DEFAULT_IRREDUCIBLE: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),            # x^2 + x + 1
    8: (1, 1, 0, 1),         # x^3 + x + 1
    9: (2, 2, 1),            # x^2 + 2x + 2
    16: (1, 1, 0, 0, 1),     # x^4 + x + 1
    25: (2, 4, 1),           # x^2 + 4x + 2
    27: (1, 2, 0, 1),        # x^3 + 2x + 1
    32: (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
    49: (3, 6, 1),           # x^2 + 6x + 3
}

_TABLE_LIMIT = 4096


class FieldMismatchError(ValueError):
    """Objects over two different fields were combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, p prime.  Raises ValueError otherwise."""
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    p = q
    for cand in range(2, int(q**0.5) + 1):
        if q % cand == 0:
            p = cand
            break
    e = 0
    rest = q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomial helpers over F_p; coefficient lists run low to high
# ---------------------------------------------------------------------------

def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(p: int, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_rem(p: int, a: Sequence[int], mod: Sequence[int]) -> list[int]:
    """Remainder of a modulo a monic polynomial."""
    a = list(a)
    d = len(mod) - 1
    while len(a) > d:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - d
            for i, mi in enumerate(mod):
                a[shift + i] = (a[shift + i] - lead * mi) % p
        a.pop()
    return _poly_trim(a)


def is_irreducible(p: int, poly: Sequence[int]) -> bool:
    """Trial division against every monic divisor of degree <= deg/2.

    Complete: any factorization of a degree-d polynomial contains a factor
    of degree at most d // 2.
    """
    coeffs = _poly_trim([c % p for c in poly])
    deg = len(coeffs) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for lower in product(range(p), repeat=d):
            divisor = list(lower) + [1]
            if not _poly_rem(p, coeffs, divisor):
                return False
    return True


class GF:
    """Arithmetic context for GF(q).  Elements are plain ints in [0, q).

    Scalar operations look up precomputed tables; ``np_tables`` exposes the
    same tables as numpy arrays for vectorized work.  Instances compare and
    hash by (q, defining polynomial), so two independently constructed
    GF(4) objects are interchangeable cache keys.
    """

    def __init__(self, q: int, poly: Sequence[int] | None = None):
        p, e = factor_prime_power(q)
        if q > _TABLE_LIMIT:
            raise ValueError(f"q={q} exceeds the supported table limit {_TABLE_LIMIT}")
        self.q = q
        self.p = p
        self.e = e
        if e == 1:
            if poly is not None:
                raise ValueError("prime fields take no defining polynomial")
            self.poly: tuple[int, ...] | None = None
        else:
            if poly is None:
                if q not in DEFAULT_IRREDUCIBLE:
                    raise ValueError(f"no default defining polynomial for q={q}; pass poly=")
                poly = DEFAULT_IRREDUCIBLE[q]
            poly = tuple(int(c) % p for c in poly)
            if len(poly) != e + 1 or poly[-1] != 1:
                raise ValueError(f"defining polynomial must be monic of degree {e}")
            if not is_irreducible(p, poly):
                raise ValueError(f"{list(poly)} is reducible over GF({p})")
            self.poly = poly
        self._build_tables()
        self._np_cache: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None

    # -- construction -------------------------------------------------------

    def _digits(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def _undigits(self, ds: Sequence[int]) -> int:
        out = 0
        for c in reversed(ds):
            out = out * self.p + c
        return out

    def _raw_mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        prod = _poly_mul(self.p, self._digits(a), self._digits(b))
        return self._undigits(_poly_rem(self.p, prod, self.poly))

    def _raw_pow(self, a: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            n >>= 1
        return r

    def _find_generator(self) -> int:
        n = self.q - 1
        if n == 1:
            return 1
        cofactors = [n // r for r in _prime_factors(n)]
        for g in range(2, self.q):
            if all(self._raw_pow(g, c) != 1 for c in cofactors):
                return g
        raise ValueError("no multiplicative generator found")  # unreachable

    def _build_tables(self) -> None:
        q, p, e = self.q, self.p, self.e
        if e == 1:
            self._add = [[(a + b) % p for b in range(q)] for a in range(q)]
            self._negt = [(-a) % p for a in range(q)]
        else:
            digs = [self._digits(a) for a in range(q)]
            self._add = [
                [self._undigits([(x + y) % p for x, y in zip(digs[a], digs[b])]) for b in range(q)]
                for a in range(q)
            ]
            self._negt = [self._undigits([(-x) % p for x in digs[a]]) for a in range(q)]
        g = self._find_generator()
        exp = [1] * (q - 1)
        log = [0] * q
        v = 1
        for i in range(q - 1):
            exp[i] = v
            log[v] = i
            v = self._raw_mul(v, g)
        self.generator = g
        self._exp = exp
        self._log = log
        mul = [[0] * q for _ in range(q)]
        for a in range(1, q):
            la = log[a]
            row = mul[a]
            for b in range(1, q):
                row[b] = exp[(la + log[b]) % (q - 1)]
        self._mul = mul
        self._invt = [0] * q
        for a in range(1, q):
            self._invt[a] = exp[(q - 1 - log[a]) % (q - 1)]

    # -- scalar operations ---------------------------------------------------

    def _chk(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not a canonical element of GF({self.q})")
        return a

    def add(self, a: int, b: int) -> int:
        return self._add[self._chk(a)][self._chk(b)]

    def sub(self, a: int, b: int) -> int:
        return self._add[self._chk(a)][self._negt[self._chk(b)]]

    def neg(self, a: int) -> int:
        return self._negt[self._chk(a)]

    def mul(self, a: int, b: int) -> int:
        return self._mul[self._chk(a)][self._chk(b)]

    def inv(self, a: int) -> int:
        if self._chk(a) == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.q})")
        return self._invt[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        """a^n for n >= 0, with 0^0 = 1."""
        if n < 0:
            raise ValueError("negative exponent; use inv() first")
        if self._chk(a) == 0:
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def elements(self) -> list[int]:
        """All q elements in ascending canonical encoding."""
        return list(range(self.q))

    def is_square(self, a: int) -> bool:
        """True iff a = b*b for some b.

        Every element is a square in characteristic 2; for odd q the
        nonzero squares are exactly the even powers of a generator.
        """
        if self._chk(a) == 0 or self.p == 2:
            return True
        return self._log[a] % 2 == 0

    def from_int(self, n: int) -> int:
        """Image of the ordinary integer n under Z -> GF(q) (lands in the prime subfield)."""
        return n % self.p

    def coeffs_of(self, a: int) -> tuple[int, ...]:
        """Polynomial coefficients of an element, constant term first."""
        return self._digits(self._chk(a))

    def element_from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.e:
            raise ValueError(f"at most {self.e} coefficients expected")
        ds = [c % self.p for c in coeffs] + [0] * (self.e - len(coeffs))
        return self._undigits(ds)

    # -- vectorized view ------------------------------------------------------

    def np_tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(add, mul, neg) lookup tables as read-only numpy arrays."""
        if self._np_cache is None:
            dtype = np.uint8 if self.q <= 256 else np.uint16
            add = np.array(self._add, dtype=dtype)
            mul = np.array(self._mul, dtype=dtype)
            neg = np.array(self._negt, dtype=dtype)
            for t in (add, mul, neg):
                t.setflags(write=False)
            self._np_cache = (add, mul, neg)
        return self._np_cache

    # -- identity -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and (self.q, self.poly) == (other.q, other.poly)

    def __hash__(self) -> int:
        return hash((self.q, self.poly))

    def __repr__(self) -> str:
        if self.poly is None:
            return f"GF({self.q})"
        return f"GF({self.q}, poly={list(self.poly)})"


@functools.lru_cache(maxsize=None)
def field(q: int, poly: tuple[int, ...] | None = None) -> GF:
    """Shared-instance GF constructor; poly must be hashable (tuple)."""
    return GF(q, poly)
