"""Endomorphisms of the Grassmann algebra given by generator images.

Composition follows (s*t)(x_i) = s(t(x_i)); with this convention the product
of two linear substitutions x -> Ax and x -> Bx is the substitution x -> BAx.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import (
    DimensionMismatchError,
    GrassmannElement,
    format_element,
    element_to_json,
    invert_unit,
    odd_part,
    parse_element,
)
from .rings import Ring, mat_det, mat_inv
from .skewcalc import skew_partial


class ParityError(ValueError):
    """An image has the wrong parity for the requested operation."""


class NotInvertibleError(ValueError):
    """The endomorphism is not an automorphism."""


class Endomorphism:
    """A K-algebra endomorphism, stored as the ordered list of generator images.

    Immutable; caches mask products, the Jacobian data and inverses.
    """

    __slots__ = ("ring", "n", "images", "_prods", "_jac", "_dual", "_inverses",
                 "_linear")

    def __init__(self, images, *, check: bool = True):
        images = tuple(images)
        if not images:
            raise ValueError("need at least one generator image")
        first = images[0]
        self.ring = first.ring
        self.n = first.n
        if len(images) != self.n:
            raise DimensionMismatchError(
                f"expected {self.n} images, got {len(images)}")
        for im in images:
            if im.n != self.n or im.ring != self.ring:
                raise DimensionMismatchError("images live in different algebras")
        self.images = images
        self._prods = {0: GrassmannElement.one(self.ring, self.n)}
        self._jac = None
        self._dual = None
        self._inverses = {}
        self._linear = None
        if check:
            self._check_well_defined()

    def _check_well_defined(self) -> None:
        # the images must satisfy the defining relations of the generators
        zero = GrassmannElement.zero(self.ring, self.n)
        for i, im in enumerate(self.images):
            if im * im != zero:
                raise ValueError(f"image of x{i + 1} does not square to zero")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.images[i] * self.images[j] + self.images[j] * self.images[i] != zero:
                    raise ValueError(
                        f"images of x{i + 1} and x{j + 1} do not anticommute")

    # -- application and composition ---------------------------------------

    def _product(self, mask: int) -> GrassmannElement:
        prods = self._prods
        hit = prods.get(mask)
        if hit is not None:
            return hit
        top = mask.bit_length() - 1
        rest = mask ^ (1 << top)
        value = self._product(rest) * self.images[top]
        prods[mask] = value
        return value

    def apply(self, e: GrassmannElement) -> GrassmannElement:
        if e.n != self.n or e.ring != self.ring:
            raise DimensionMismatchError("element/endomorphism dimension mismatch")
        p = self.ring.modulus
        out: dict = {}
        for mask, c in e.terms.items():
            prod = self._product(mask)
            for m2, c2 in prod.terms.items():
                acc = out.get(m2)
                v = c * c2
                out[m2] = v if acc is None else acc + v
        if p is None:
            out = {m: c for m, c in out.items() if c != 0}
        else:
            out = {m: cb for m, c in out.items() if (cb := c % p)}
        return GrassmannElement(self.ring, self.n, out, _raw=True)

    __call__ = apply

    def compose(self, other: "Endomorphism") -> "Endomorphism":
        """self after other: (self.compose(other))(x_i) = self(other(x_i))."""
        if other.n != self.n or other.ring != self.ring:
            raise DimensionMismatchError("endomorphism dimension mismatch")
        return Endomorphism([self.apply(im) for im in other.images], check=False)

    def __mul__(self, other):
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.compose(other)

    def __eq__(self, other):
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.n == other.n and self.ring == other.ring and self.images == other.images

    def __repr__(self):
        return f"<endo on {self.n} generators: {format_endomorphism(self)}>"

    # -- structure ---------------------------------------------------------

    def linear_part(self):
        """The degree-1 coefficient matrix A with images x_i -> sum_j A[i][j] x_j + ..."""
        if self._linear is None:
            self._linear = [
                [im.coefficient(1 << j) for j in range(self.n)]
                for im in self.images
            ]
        return self._linear

    def is_identity(self) -> bool:
        return all(im == GrassmannElement.generator(self.ring, self.n, i + 1)
                   for i, im in enumerate(self.images))

    def has_odd_images(self) -> bool:
        return all(im == odd_part(im) for im in self.images)

    def difference_min_degree(self) -> int:
        """min over i of the lowest degree of images[i] - x_i (n+1 if identity)."""
        best = self.n + 1
        for i, im in enumerate(self.images):
            d = (im - GrassmannElement.generator(self.ring, self.n, i + 1)).min_degree()
            best = min(best, d)
        return best

    # -- Jacobian ------------------------------------------------------------

    def jacobian(self) -> "JacobianData":
        if self._jac is None:
            if not self.has_odd_images():
                raise ParityError(
                    "Jacobian requires purely odd images (entries must be central)")
            matrix = [
                [skew_partial(j + 1, self.images[i]) for j in range(self.n)]
                for i in range(self.n)
            ]
            det = _det_central(self.ring, self.n, matrix)
            self._jac = JacobianData(matrix=matrix, det=det,
                                     valuation=_valuation(det))
        return self._jac

    def _dual_data(self):
        """Inverse Jacobian and all first minors, cached for dual derivatives."""
        if self._dual is None:
            jac = self.jacobian()
            a = self.linear_part()
            if mat_det(self.ring, a) == 0:
                raise NotInvertibleError("linear part is singular")
            det_inv = invert_unit(jac.det)
            minors = [
                [_minor_central(self.ring, self.n, jac.matrix, i, j)
                 for j in range(self.n)]
                for i in range(self.n)
            ]
            self._dual = (det_inv, minors)
        return self._dual

    def dual_skew_partial(self, i: int, e: GrassmannElement) -> GrassmannElement:
        """The skew partial derivative with respect to the new coordinate images[i-1].

        Expansion along the operator row: det_inv * sum_j (-1)**(i+j) M_ij d_j(e)
        where M_ij is the Jacobian minor with row i and column j deleted.
        """
        det_inv, minors = self._dual_data()
        acc = GrassmannElement.zero(self.ring, self.n)
        row = minors[i - 1]
        for j in range(1, self.n + 1):
            d = skew_partial(j, e)
            if not d:
                continue
            term = row[j - 1] * d
            if (i + j) & 1:
                term = -term
            acc = acc + term
        return det_inv * acc

    def dual_partial_word(self, e: GrassmannElement, mask: int) -> GrassmannElement:
        """Composite dual derivative; highest index outermost, as for plain ones."""
        i = 1
        while mask and e:
            if mask & 1:
                e = self.dual_skew_partial(i, e)
            mask >>= 1
            i += 1
        return e

    def new_coordinate_projection(self, e: GrassmannElement) -> GrassmannElement:
        """Projection onto K relative to the new coordinates sigma(x_i)."""
        for i in range(1, self.n + 1):
            if e.is_constant():
                break  # the remaining factors fix constants
            e = e - self.images[i - 1] * self.dual_skew_partial(i, e)
        return e

    # -- inversion -----------------------------------------------------------

    def inverse(self, strategy: str = "iteration") -> "Endomorphism":
        hit = self._inverses.get(strategy)
        if hit is None:
            if strategy == "iteration":
                hit = self._inverse_iteration()
            elif strategy == "formula":
                hit = self._inverse_formula()
            else:
                raise ValueError(f"unknown inversion strategy {strategy!r}")
            self._inverses[strategy] = hit
        return hit

    def _inverse_iteration(self) -> "Endomorphism":
        """Peel off the linear part, then resubstitute the tail to a fixpoint."""
        ring, n = self.ring, self.n
        a = self.linear_part()
        if mat_det(ring, a) == 0:
            raise NotInvertibleError("linear part is singular")
        a_inv = mat_inv(ring, a)
        lin_inv = linear_endo(ring, a_inv)
        tau = self.compose(lin_inv)  # tau(x_i) = x_i + higher terms
        gens = [GrassmannElement.generator(ring, n, i + 1) for i in range(n)]
        shifts = [gens[i] - tau.images[i] for i in range(n)]
        current = Endomorphism(gens, check=False)
        for _ in range(n + 1):
            nxt = [gens[i] + current.apply(shifts[i]) for i in range(n)]
            nxt_endo = Endomorphism(nxt, check=False)
            if nxt_endo == current:
                break
            current = nxt_endo
        return lin_inv.compose(current)

    def _inverse_formula(self) -> "Endomorphism":
        """Closed-form inverse from dual derivatives and the new-coordinate projection.

        Valid for parity-preserving automorphisms (all images odd, invertible
        linear part): the coefficient of each monomial in the inverse image is
        the projected composite dual derivative of the target generator.
        """
        if not self.has_odd_images():
            raise ParityError("formula inversion requires purely odd images")
        ring, n = self.ring, self.n
        images = []
        for j in range(1, n + 1):
            duals = {0: GrassmannElement.generator(ring, n, j)}
            terms = {}
            for mask in range(1, 1 << n):
                top = mask.bit_length() - 1
                rest = mask ^ (1 << top)
                base = duals.get(rest)
                if base is None or not base:
                    duals[mask] = GrassmannElement.zero(ring, n)
                    continue
                duals[mask] = self.dual_skew_partial(top + 1, base)
            for mask, d in duals.items():
                if not d:
                    continue
                # the projection onto K along the augmentation ideal is
                # coordinate-free (the images generate the same ideal), so the
                # new-coordinate projection of d is just its constant term
                coeff = d.constant_term()
                if coeff != 0:
                    terms[mask] = coeff
            images.append(GrassmannElement(ring, n, terms))
        return Endomorphism(images, check=False)


@dataclass(frozen=True)
class JacobianData:
    """Skew-derivative matrix, its determinant, and the determinant's valuation.

    The valuation is the largest even 2m with det - constant in m^(2m), capped
    at 2*floor(n/2) + 2 when det is constant.
    """

    matrix: list
    det: GrassmannElement
    valuation: int


def _valuation(det: GrassmannElement) -> int:
    cap = 2 * (det.n // 2) + 2
    tail = det - GrassmannElement.scalar(det.ring, det.n, det.constant_term())
    if not tail:
        return cap
    d = tail.min_degree()
    if d % 2:
        raise ParityError("Jacobian determinant has an odd-degree term")
    return min(d, cap)


def _det_central(ring: Ring, n: int, matrix) -> GrassmannElement:
    """Cofactor determinant of a matrix of even (central) elements."""
    size = len(matrix)
    memo: dict[int, GrassmannElement] = {}

    def rec(cols: int) -> GrassmannElement:
        hit = memo.get(cols)
        if hit is not None:
            return hit
        row = size - cols.bit_count()
        if cols == 0:
            value = GrassmannElement.one(ring, n)
        else:
            value = GrassmannElement.zero(ring, n)
            sign = 1
            rem = cols
            while rem:
                low = rem & -rem
                j = low.bit_length() - 1
                entry = matrix[row][j]
                if entry:
                    term = entry * rec(cols ^ low)
                    value = value + (term if sign > 0 else -term)
                sign = -sign
                rem ^= low
        memo[cols] = value
        return value

    return rec((1 << size) - 1)


def _minor_central(ring: Ring, n: int, matrix, skip_row: int, skip_col: int) -> GrassmannElement:
    sub = [
        [matrix[r][c] for c in range(len(matrix)) if c != skip_col]
        for r in range(len(matrix)) if r != skip_row
    ]
    if not sub:
        return GrassmannElement.one(ring, n)
    return _det_central(ring, n, sub)


# -- constructors ----------------------------------------------------------

def identity_endo(ring: Ring, n: int) -> Endomorphism:
    return Endomorphism(
        [GrassmannElement.generator(ring, n, i) for i in range(1, n + 1)],
        check=False)


def linear_endo(ring: Ring, matrix) -> Endomorphism:
    """The substitution x_i -> sum_j matrix[i][j] x_j."""
    n = len(matrix)
    images = []
    for i in range(n):
        terms = {}
        for j in range(n):
            c = ring.normalize(matrix[i][j])
            if c != 0:
                terms[1 << j] = c
        images.append(GrassmannElement(ring, n, terms, _raw=True))
    return Endomorphism(images, check=False)


def coordinate_shift(ring: Ring, n: int, i: int, b: GrassmannElement,
                     *, check: bool = True) -> Endomorphism:
    """x_i -> x_i + b, all other generators fixed."""
    images = [GrassmannElement.generator(ring, n, k) for k in range(1, n + 1)]
    images[i - 1] = images[i - 1] + b
    return Endomorphism(images, check=check)


def coordinate_scaling(ring: Ring, n: int, factors) -> Endomorphism:
    """x_i -> x_i * (1 + a_i) for even x_i-free a_i (a_i may be zero)."""
    images = []
    for i in range(1, n + 1):
        x = GrassmannElement.generator(ring, n, i)
        a = factors[i - 1]
        images.append(x if a is None or not a else x * (GrassmannElement.one(ring, n) + a))
    return Endomorphism(images, check=False)


def inner(u: GrassmannElement) -> Endomorphism:
    """Conjugation by a unit: x -> u x u^-1."""
    u_inv = invert_unit(u)
    ring, n = u.ring, u.n
    images = [u * GrassmannElement.generator(ring, n, i) * u_inv
              for i in range(1, n + 1)]
    return Endomorphism(images, check=False)


def is_automorphism(sigma: Endomorphism) -> bool:
    """True iff the determinant of the linear part is a unit of K."""
    return sigma.ring.is_unit(mat_det(sigma.ring, sigma.linear_part()))


# -- module-level aliases matching the operation names ---------------------

def apply(sigma: Endomorphism, e: GrassmannElement) -> GrassmannElement:
    return sigma.apply(e)


def compose(sigma: Endomorphism, tau: Endomorphism) -> Endomorphism:
    return sigma.compose(tau)


def jacobian(sigma: Endomorphism) -> JacobianData:
    return sigma.jacobian()


def skew_partial_prime(sigma: Endomorphism, i: int, e: GrassmannElement) -> GrassmannElement:
    return sigma.dual_skew_partial(i, e)


def inverse(sigma: Endomorphism, strategy: str = "iteration") -> Endomorphism:
    return sigma.inverse(strategy)


# -- text format ------------------------------------------------------------
#
# one mapping per generator:  x1 -> x1 + x2x3x4; x2 -> x2; ...

_ARROW = re.compile(r"^x(\d+)\s*->\s*(.+)$")


def parse_endomorphism(ring: Ring, n: int, text: str, *, check: bool = True) -> Endomorphism:
    chunks = [c.strip() for c in re.split(r"[;\n]", text) if c.strip()]
    images: dict[int, GrassmannElement] = {}
    for chunk in chunks:
        m = _ARROW.match(chunk)
        if not m:
            raise ValueError(f"cannot parse generator mapping {chunk!r}")
        i = int(m.group(1))
        if not 1 <= i <= n:
            raise ValueError(f"generator x{i} out of range for n={n}")
        if i in images:
            raise ValueError(f"duplicate mapping for x{i}")
        images[i] = parse_element(ring, n, m.group(2))
    missing = [i for i in range(1, n + 1) if i not in images]
    if missing:
        raise ValueError(f"missing mappings for generators {missing}")
    return Endomorphism([images[i] for i in range(1, n + 1)], check=check)


def format_endomorphism(sigma: Endomorphism, sep: str = "; ") -> str:
    return sep.join(
        f"x{i + 1} -> {format_element(im)}" for i, im in enumerate(sigma.images))


def endomorphism_to_json(sigma: Endomorphism) -> dict:
    return {
        "n": sigma.n,
        "field": sigma.ring.name,
        "images": [element_to_json(im)["terms"] for im in sigma.images],
    }
