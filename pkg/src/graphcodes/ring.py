"""Arithmetic in R_n = GF(2)[x] / (x^n - 1) and a few number-theoretic helpers.

Ring elements are :class:`RingPoly` values whose coefficients are packed into
a Python ``int`` (bit ``k`` is the coefficient of ``x^k``).  Plain, unreduced
GF(2) polynomials, needed for gcd computations involving ``x^n - 1`` itself,
are bare non-negative ints with the same bit convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

from .errors import InvalidSpecError, ModulusMismatchError

__all__ = [
    "RingPoly",
    "poly_add",
    "poly_mul_mod",
    "poly_gcd",
    "m_n",
    "x_n_minus_1",
    "is_prime",
    "is_two_primitive",
    "multiplicative_order",
    "mod_inverse",
    "gf2_degree",
    "gf2_mul",
    "gf2_divmod",
    "gf2_mod",
    "is_irreducible",
]


@dataclass(frozen=True)
class RingPoly:
    """An element of R_n, stored as ``n`` coefficient bits."""

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"modulus must be positive, got {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"coefficients {self.bits:#x} exceed degree {self.n - 1}")

    @classmethod
    def zero(cls, n: int) -> RingPoly:
        return cls(n, 0)

    @classmethod
    def one(cls, n: int) -> RingPoly:
        return cls(n, 1)

    @classmethod
    def monomial(cls, n: int, k: int) -> RingPoly:
        """``x^k`` with the exponent taken mod ``n``."""
        return cls(n, 1 << (k % n))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> RingPoly:
        coeffs = list(coeffs)
        bits = 0
        for k, c in enumerate(coeffs):
            if c not in (0, 1):
                raise ValueError(f"coefficient {c!r} is not a bit")
            bits |= c << k
        return cls(len(coeffs), bits)

    @classmethod
    def from_exponents(cls, n: int, exponents: Iterable[int]) -> RingPoly:
        """Sum of ``x^e`` over ``exponents`` (reduced mod n, repeats cancel)."""
        bits = 0
        for e in exponents:
            bits ^= 1 << (e % n)
        return cls(n, bits)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple((self.bits >> k) & 1 for k in range(self.n))

    def __getitem__(self, k: int) -> int:
        if not 0 <= k < self.n:
            raise IndexError(k)
        return (self.bits >> k) & 1

    def __bool__(self) -> bool:
        return self.bits != 0

    def __add__(self, other: RingPoly) -> RingPoly:
        return poly_add(self, other)

    __sub__ = __add__

    def __mul__(self, other: RingPoly) -> RingPoly:
        return poly_mul_mod(self, other)

    def shift(self, k: int) -> RingPoly:
        """Multiply by ``x^k``; a cyclic rotation of the coefficients."""
        return RingPoly(self.n, _rotl(self.bits, k % self.n, self.n))

    def square(self) -> RingPoly:
        """Frobenius map: the coefficient of ``x^k`` moves to ``x^(2k mod n)``."""
        out = 0
        b = self.bits
        k = 0
        while b:
            if b & 1:
                out ^= 1 << ((2 * k) % self.n)
            b >>= 1
            k += 1
        return RingPoly(self.n, out)

    def eval_at_one(self) -> int:
        return self.bits.bit_count() & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def __repr__(self) -> str:
        terms = [("1" if k == 0 else "x" if k == 1 else f"x^{k}") for k in range(self.n) if self[k]]
        return f"RingPoly(n={self.n}, {' + '.join(terms) or '0'})"


def _check_same_ring(a: RingPoly, b: RingPoly) -> None:
    if a.n != b.n:
        raise ModulusMismatchError(f"operands live in R_{a.n} and R_{b.n}")


def _rotl(bits: int, k: int, n: int) -> int:
    if k == 0:
        return bits
    mask = (1 << n) - 1
    return ((bits << k) | (bits >> (n - k))) & mask


def poly_add(a: RingPoly, b: RingPoly) -> RingPoly:
    _check_same_ring(a, b)
    return RingPoly(a.n, a.bits ^ b.bits)


def poly_mul_mod(a: RingPoly, b: RingPoly) -> RingPoly:
    """Product in R_n by shift-and-XOR with wraparound."""
    _check_same_ring(a, b)
    n = a.n
    x, y = (a.bits, b.bits) if a.weight() >= b.weight() else (b.bits, a.bits)
    acc = 0
    k = 0
    while y:
        if y & 1:
            acc ^= _rotl(x, k, n)
        y >>= 1
        k += 1
    return RingPoly(n, acc)


# --- plain GF(2)[x] polynomials as ints --------------------------------------

PolyLike = Union[int, RingPoly]


def _as_plain(p: PolyLike) -> int:
    if isinstance(p, RingPoly):
        return p.bits
    if p < 0:
        raise ValueError("plain polynomials are non-negative ints")
    return p


def gf2_degree(p: int) -> int:
    """Degree of ``p``; -1 for the zero polynomial."""
    return p.bit_length() - 1


def gf2_mul(a: int, b: int) -> int:
    if a < b:
        a, b = b, a
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        b >>= 1
    return acc


def gf2_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = gf2_degree(b)
    q = 0
    while a and gf2_degree(a) >= db:
        s = gf2_degree(a) - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def gf2_mod(a: int, b: int) -> int:
    return gf2_divmod(a, b)[1]


def poly_gcd(a: PolyLike, b: PolyLike) -> int:
    """GCD of two plain GF(2) polynomials (every nonzero one is monic).

    A :class:`RingPoly` argument is read as its coefficient polynomial.
    """
    a, b = _as_plain(a), _as_plain(b)
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        a, b = b, gf2_mod(a, b)
    return a


def x_n_minus_1(n: int) -> int:
    """The plain polynomial ``x^n - 1`` (= ``x^n + 1`` over GF(2))."""
    return (1 << n) | 1


def is_irreducible(p: int) -> bool:
    """Rabin-style test: ``p`` has no factor of degree <= deg(p)/2.

    Uses gcd(x^(2^k) - x mod p, p) for k = 1 .. deg/2.
    """
    d = gf2_degree(p)
    if d < 1:
        return False
    h = 0b10  # x
    for _ in range(d // 2):
        h = gf2_mod(gf2_mul(h, h), p)
        if poly_gcd(h ^ 0b10, p) != 1:
            return False
    return True


# --- number theory ------------------------------------------------------------


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _require_prime(n: int) -> None:
    if not is_prime(n):
        raise InvalidSpecError(f"n must be prime, got {n}")


def m_n(n: int) -> RingPoly:
    """M_n(x) = 1 + x + ... + x^(n-1) in R_n."""
    if n < 2:
        raise InvalidSpecError(f"M_n needs n >= 2, got {n}")
    return RingPoly(n, (1 << n) - 1)


def multiplicative_order(a: int, n: int) -> int:
    a %= n
    if a == 0:
        raise ValueError(f"{a} is not a unit mod {n}")
    k, t = 1, a
    while t != 1:
        t = (t * a) % n
        k += 1
        if k > n:
            raise ValueError(f"{a} is not a unit mod {n}")
    return k


@lru_cache(maxsize=None)
def is_two_primitive(n: int) -> bool:
    """True iff 2 generates the multiplicative group of Z_n (n prime)."""
    _require_prime(n)
    if n == 2:
        return False
    return multiplicative_order(2, n) == n - 1


def mod_inverse(a: int, n: int) -> int:
    _require_prime(n)
    a %= n
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {n}")
    return pow(a, -1, n)
