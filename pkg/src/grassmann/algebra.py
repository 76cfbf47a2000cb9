"""Exact arithmetic in the Grassmann algebra on n anticommuting generators.

Elements are sparse maps from bitmask monomials to coefficients.  Bit ``i-1``
of a mask records the presence of the generator ``x_i``; a mask always denotes
the product of its generators in ascending index order, which fixes every sign
in the library.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, NamedTuple, Union

from .rings import Coefficient, NotAUnitError, Ring

MAX_GENERATORS = 16


class DimensionMismatchError(ValueError):
    """Operands live over different generator counts or rings."""


class Monomial(NamedTuple):
    """A basis monomial: the product of the generators in ``mask``, ascending."""

    mask: int
    n: int

    @property
    def degree(self) -> int:
        return self.mask.bit_count()

    def indices(self) -> tuple[int, ...]:
        return tuple(mask_indices(self.mask))

    def __str__(self) -> str:
        return mask_str(self.mask)


def mask_indices(mask: int) -> Iterator[int]:
    """Yield the 1-based generator indices present in a mask, ascending."""
    i = 1
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def indices_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def mask_str(mask: int) -> str:
    return "".join(f"x{i}" for i in mask_indices(mask)) if mask else "1"


def merge_swaps(a: int, b: int) -> int:
    """Number of transpositions needed to sort the concatenation of masks a, b.

    Counts pairs (i in a, j in b) with i > j; the product sign is (-1)**swaps.
    """
    swaps = 0
    while b:
        low = b & -b
        swaps += (a >> low.bit_length()).bit_count()
        b ^= low
    return swaps


class GrassmannElement:
    """An element of the rank-2^n Grassmann algebra over an exact ring.

    Immutable once constructed; ``terms`` maps masks to nonzero coefficients
    and must not be mutated.
    """

    __slots__ = ("ring", "n", "terms", "_hash")

    def __init__(self, ring: Ring, n: int, terms=None, *, _raw: bool = False):
        if not 1 <= n <= MAX_GENERATORS:
            raise ValueError(f"generator count must be in 1..{MAX_GENERATORS}, got {n}")
        self.ring = ring
        self.n = n
        if terms is None:
            terms = {}
        elif not _raw:
            clean = {}
            limit = 1 << n
            for mask, c in dict(terms).items():
                if not 0 <= mask < limit:
                    raise ValueError(f"mask {mask} out of range for n={n}")
                c = ring.normalize(c)
                if c != 0:
                    clean[mask] = c
            terms = clean
        self.terms = terms
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ring: Ring, n: int) -> "GrassmannElement":
        return GrassmannElement(ring, n, {}, _raw=True)

    @staticmethod
    def scalar(ring: Ring, n: int, c) -> "GrassmannElement":
        c = ring.normalize(c)
        return GrassmannElement(ring, n, {0: c} if c != 0 else {}, _raw=True)

    @staticmethod
    def one(ring: Ring, n: int) -> "GrassmannElement":
        return GrassmannElement(ring, n, {0: ring.one}, _raw=True)

    @staticmethod
    def generator(ring: Ring, n: int, i: int) -> "GrassmannElement":
        if not 1 <= i <= n:
            raise ValueError(f"generator index {i} out of range 1..{n}")
        return GrassmannElement(ring, n, {1 << (i - 1): ring.one}, _raw=True)

    @staticmethod
    def monomial(ring: Ring, n: int, mask: int, coeff=None) -> "GrassmannElement":
        c = ring.one if coeff is None else ring.normalize(coeff)
        return GrassmannElement(ring, n, {mask: c} if c != 0 else {}, _raw=True)

    # -- ring structure ----------------------------------------------------

    def _check_compatible(self, other: "GrassmannElement") -> None:
        if self.n != other.n or self.ring != other.ring:
            raise DimensionMismatchError(
                f"incompatible operands: n={self.n}/{other.n}, "
                f"ring={self.ring!r}/{other.ring!r}")

    def __add__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        self._check_compatible(other)
        p = self.ring.modulus
        out = dict(self.terms)
        for mask, c in other.terms.items():
            acc = out.get(mask)
            c = c if acc is None else acc + c
            if p is not None:
                c %= p
            if c == 0:
                out.pop(mask, None)
            else:
                out[mask] = c
        return GrassmannElement(self.ring, self.n, out, _raw=True)

    def __neg__(self):
        p = self.ring.modulus
        if p is None:
            out = {m: -c for m, c in self.terms.items()}
        else:
            out = {m: (-c) % p for m, c in self.terms.items()}
        return GrassmannElement(self.ring, self.n, out, _raw=True)

    def __sub__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "GrassmannElement":
        c = self.ring.normalize(c)
        if c == 0:
            return GrassmannElement.zero(self.ring, self.n)
        p = self.ring.modulus
        if p is None:
            out = {m: v * c for m, v in self.terms.items()}
        else:
            out = {}
            for m, v in self.terms.items():
                w = (v * c) % p
                if w:
                    out[m] = w
        return GrassmannElement(self.ring, self.n, out, _raw=True)

    def __mul__(self, other):
        if not isinstance(other, GrassmannElement):
            return self.scale(other)
        self._check_compatible(other)
        p = self.ring.modulus
        out: dict[int, Coefficient] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                if m1 & m2:
                    continue
                c = c1 * c2
                if merge_swaps(m1, m2) & 1:
                    c = -c
                m = m1 | m2
                acc = out.get(m)
                out[m] = c if acc is None else acc + c
        if p is None:
            out = {m: c for m, c in out.items() if c != 0}
        else:
            out = {m: cb for m, c in out.items() if (cb := c % p)}
        return GrassmannElement(self.ring, self.n, out, _raw=True)

    def __rmul__(self, other):
        # scalar * element; scalar coefficients commute with everything
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self.n == other.n and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection --------------------------------------------------------

    def coefficient(self, mask: int):
        return self.terms.get(mask, self.ring.zero)

    def constant_term(self):
        return self.terms.get(0, self.ring.zero)

    def is_constant(self) -> bool:
        return all(m == 0 for m in self.terms)

    def min_degree(self) -> int:
        """Smallest degree of a nonzero term; n+1 for the zero element."""
        if not self.terms:
            return self.n + 1
        return min(m.bit_count() for m in self.terms)

    def max_degree(self) -> int:
        if not self.terms:
            return -1
        return max(m.bit_count() for m in self.terms)

    def is_homogeneous(self, d: int) -> bool:
        return all(m.bit_count() == d for m in self.terms)

    def degrees(self) -> set[int]:
        return {m.bit_count() for m in self.terms}

    def support_avoids(self, i: int) -> bool:
        bit = 1 << (i - 1)
        return all(not (m & bit) for m in self.terms)

    def divisible_by(self, i: int) -> bool:
        bit = 1 << (i - 1)
        return all(m & bit for m in self.terms)

    def __repr__(self):
        return f"<Λ_{self.n}({self.ring!r}): {format_element(self)}>"

    def __str__(self):
        return format_element(self)


Scalar = Union[Coefficient, int]


def component(e: GrassmannElement, selector) -> GrassmannElement:
    """Project onto a graded piece: an integer degree, "even", or "odd"."""
    if selector == "even":
        keep = lambda m: m.bit_count() % 2 == 0
    elif selector == "odd":
        keep = lambda m: m.bit_count() % 2 == 1
    elif isinstance(selector, int):
        keep = lambda m: m.bit_count() == selector
    else:
        raise ValueError(f"invalid component selector {selector!r}")
    out = {m: c for m, c in e.terms.items() if keep(m)}
    return GrassmannElement(e.ring, e.n, out, _raw=True)


def even_part(e: GrassmannElement) -> GrassmannElement:
    return component(e, "even")


def odd_part(e: GrassmannElement) -> GrassmannElement:
    return component(e, "odd")


def involution(e: GrassmannElement) -> GrassmannElement:
    """The grade involution: fixes even terms, negates odd ones."""
    p = e.ring.modulus
    out = {}
    for m, c in e.terms.items():
        if m.bit_count() & 1:
            c = -c if p is None else (-c) % p
        out[m] = c
    return GrassmannElement(e.ring, e.n, out, _raw=True)


def substitute_zero(e: GrassmannElement, indices: Iterable[int]) -> GrassmannElement:
    """Set the listed generators to zero: drop every term meeting them."""
    mask = indices_mask(indices)
    out = {m: c for m, c in e.terms.items() if not (m & mask)}
    return GrassmannElement(e.ring, e.n, out, _raw=True)


def evaluate_at_zero(e: GrassmannElement):
    """The coefficient ring value e(0, ..., 0)."""
    return substitute_zero(e, range(1, e.n + 1)).constant_term()


def invert_unit(e: GrassmannElement) -> GrassmannElement:
    """Invert a unit: constant part must be a unit of K.

    Writes e = lam + m with m nilpotent (m^(n+1) = 0) and evaluates the
    geometric series lam^-1 * sum((-lam^-1 m)^k, k = 0..n).
    """
    lam = e.constant_term()
    if not e.ring.is_unit(lam):
        raise NotAUnitError(f"constant term {lam!r} is not a unit")
    lam_inv = e.ring.invert(lam)
    m = e - GrassmannElement.scalar(e.ring, e.n, lam)
    factor = m.scale(-lam_inv)
    acc = GrassmannElement.one(e.ring, e.n)
    power = GrassmannElement.one(e.ring, e.n)
    for _ in range(e.n):
        power = power * factor
        if not power:
            break
        acc = acc + power
    return acc.scale(lam_inv)


# -- text grammar --------------------------------------------------------
#
# element  := [sign] term (sign term)*
# term     := coeff ['*' monomial] | monomial
# coeff    := int | int '/' int
# monomial := ('x' digits)+             e.g.  1 - 3/2*x1x3 + x2x4

_TOKEN = re.compile(r"[+-]|(?:\d+(?:/\d+)?)|(?:(?:x\d+)+)|\*")
_MONO = re.compile(r"x(\d+)")


def parse_element(ring: Ring, n: int, text: str) -> GrassmannElement:
    compact = "".join(text.split())
    if not compact:
        raise ValueError("empty element expression")
    pos = 0
    tokens = []
    for match in _TOKEN.finditer(compact):
        if match.start() != pos:
            raise ValueError(f"cannot parse element near {compact[pos:]!r}")
        tokens.append(match.group())
        pos = match.end()
    if pos != len(compact):
        raise ValueError(f"cannot parse element near {compact[pos:]!r}")

    acc = GrassmannElement.zero(ring, n)
    i = 0
    while i < len(tokens):
        negative = False
        while i < len(tokens) and tokens[i] in "+-":
            if tokens[i] == "-":
                negative = not negative
            i += 1
        if i >= len(tokens):
            raise ValueError("dangling sign in element expression")
        coeff = ring.one
        mask = 0
        tok = tokens[i]
        if tok[0].isdigit():
            coeff = ring.parse(tok)
            i += 1
            if i < len(tokens) and tokens[i] == "*":
                i += 1
            if i < len(tokens) and tokens[i][0] == "x":
                mask = _parse_monomial(tokens[i], n)
                i += 1
        elif tok[0] == "x":
            mask = _parse_monomial(tok, n)
            i += 1
        else:
            raise ValueError(f"unexpected token {tok!r}")
        if negative:
            coeff = ring.normalize(-coeff)
        acc = acc + GrassmannElement.monomial(ring, n, mask, coeff)
    return acc


def _parse_monomial(text: str, n: int) -> int:
    mask = 0
    for m in _MONO.finditer(text):
        i = int(m.group(1))
        if not 1 <= i <= n:
            raise ValueError(f"generator x{i} out of range for n={n}")
        bit = 1 << (i - 1)
        if mask & bit:
            # a repeated generator squares to zero; reject rather than silently drop
            raise ValueError(f"repeated generator x{i} in monomial {text!r}")
        mask |= bit
    return mask


def format_element(e: GrassmannElement) -> str:
    if not e.terms:
        return "0"
    ring = e.ring
    parts = []
    for mask in sorted(e.terms, key=lambda m: (m.bit_count(), m)):
        c = e.terms[mask]
        text = ring.format(c)
        negative = text.startswith("-")
        if negative:
            text = text[1:]
        if mask == 0:
            body = text
        elif text == "1":
            body = mask_str(mask)
        else:
            body = f"{text}*{mask_str(mask)}"
        parts.append(("-" if negative else "+", body))
    sign, body = parts[0]
    out = body if sign == "+" else f"-{body}"
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def element_to_json(e: GrassmannElement) -> dict:
    return {
        "n": e.n,
        "field": e.ring.name,
        "terms": [
            {"mask": m, "monomial": mask_str(m), "coeff": e.ring.format(c)}
            for m, c in sorted(e.terms.items(), key=lambda kv: (kv[0].bit_count(), kv[0]))
        ],
    }


def element_from_json(ring: Ring, n: int, data: dict) -> GrassmannElement:
    terms = {}
    for entry in data["terms"]:
        terms[int(entry["mask"])] = ring.parse(entry["coeff"])
    return GrassmannElement(ring, n, terms)
