"""Exact coefficient rings: arbitrary-precision rationals and odd prime fields.

Coefficient values are plain Python objects (``Fraction`` for the rationals,
canonical ``int`` representatives in ``[0, p)`` for a prime field); the ring
object supplies normalization, inversion, parsing and formatting.  Both rings
are fields in which 2 is invertible, which the rest of the library assumes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Coefficient = Union[Fraction, int]


class NotAUnitError(ZeroDivisionError):
    """Raised when inverting a non-unit coefficient or element."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class RationalField:
    """The field of arbitrary-precision rationals."""

    modulus = None
    name = "rational"

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, k: int) -> Fraction:
        return Fraction(k)

    def normalize(self, c) -> Fraction:
        return c if isinstance(c, Fraction) else Fraction(c)

    def is_unit(self, c) -> bool:
        return c != 0

    def invert(self, c) -> Fraction:
        if c == 0:
            raise NotAUnitError("0 is not invertible")
        return 1 / Fraction(c)

    def parse(self, text: str) -> Fraction:
        return Fraction(text)

    def format(self, c) -> str:
        return str(c)

    def random(self, rng) -> Fraction:
        return Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2, 3)))

    def random_nonzero(self, rng) -> Fraction:
        c = self.random(rng)
        while c == 0:
            c = self.random(rng)
        return c

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("rational-field")

    def __repr__(self) -> str:
        return "QQ"


class PrimeField:
    """The field Z/p for an odd prime p; elements are ints in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p == 2:
            raise ValueError("2 must be invertible in the coefficient ring; p = 2 is not supported")
        self.modulus = p
        self.name = f"prime:{p}"

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def from_int(self, k: int) -> int:
        return k % self.modulus

    def normalize(self, c) -> int:
        return c % self.modulus

    def is_unit(self, c) -> bool:
        return c % self.modulus != 0

    def invert(self, c) -> int:
        c %= self.modulus
        if c == 0:
            raise NotAUnitError("0 is not invertible")
        return pow(c, self.modulus - 2, self.modulus)

    def parse(self, text: str) -> int:
        if "/" in text:
            num, den = text.split("/", 1)
            return self.normalize(int(num) * self.invert(int(den)))
        return int(text) % self.modulus

    def format(self, c) -> str:
        return str(c % self.modulus)

    def random(self, rng) -> int:
        return rng.randrange(self.modulus)

    def random_nonzero(self, rng) -> int:
        return rng.randrange(1, self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("prime-field", self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.modulus})"


Ring = Union[RationalField, PrimeField]

QQ = RationalField()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def ring_from_name(text: str) -> Ring:
    """Parse a ring name: "rational", "prime:7", or a bare prime like "7"."""
    text = text.strip().lower()
    if text in ("rational", "q", "qq"):
        return QQ
    if text.startswith("prime:"):
        return GF(int(text.split(":", 1)[1]))
    if text.isdigit():
        return GF(int(text))
    raise ValueError(f"unknown coefficient ring {text!r}")


# Small exact-linear-algebra helpers over a coefficient field K.

def mat_mul(ring: Ring, a, b):
    n = len(a)
    m = len(b[0])
    k = len(b)
    out = [[ring.zero] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            s = ring.zero
            for t in range(k):
                s = s + a[i][t] * b[t][j]
            out[i][j] = ring.normalize(s)
    return out


def mat_vec(ring: Ring, a, v):
    """Matrix times a vector whose entries may live in any K-module."""
    out = []
    for i in range(len(a)):
        s = None
        for j, vj in enumerate(v):
            term = vj * a[i][j] if hasattr(vj, "terms") else a[i][j] * vj
            s = term if s is None else s + term
        out.append(s)
    return out


def mat_det(ring: Ring, a) -> Coefficient:
    """Determinant over K by fraction-free-enough Gaussian elimination (K is a field)."""
    n = len(a)
    m = [row[:] for row in a]
    det = ring.one
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return ring.zero
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = ring.normalize(-det)
        det = ring.normalize(det * m[col][col])
        inv = ring.invert(m[col][col])
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = ring.normalize(m[r][col] * inv)
                for c in range(col, n):
                    m[r][c] = ring.normalize(m[r][c] - factor * m[col][c])
    return det


def mat_inv(ring: Ring, a):
    """Inverse of an invertible matrix over K (Gauss-Jordan)."""
    n = len(a)
    m = [row[:] + [ring.one if i == j else ring.zero for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            raise NotAUnitError("matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        inv = ring.invert(m[col][col])
        m[col] = [ring.normalize(x * inv) for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [ring.normalize(x - factor * y) for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def identity_matrix(ring: Ring, n: int):
    return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
