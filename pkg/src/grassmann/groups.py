"""Subgroups of the automorphism group: membership, factorization, preimages.

The automorphism group on n generators factors as inner * shift * linear; the
shift part carries the Jacobian map onto the even units with constant term 1.
This module decides membership in the standard subgroups, computes the
constructive factorizations, inverts the Jacobian map where possible, and
enumerates one-parameter generator families.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import (
    GrassmannElement,
    component,
    even_part,
    element_to_json,
    indices_mask,
    invert_unit,
    mask_str,
    odd_part,
)
from .endo import (
    Endomorphism,
    coordinate_shift,
    endomorphism_to_json,
    identity_endo,
    inner,
    is_automorphism,
    linear_endo,
    NotInvertibleError,
)
from .linsolve import (
    AvoidanceTable,
    SolvabilityError,
    kernel_split,
    layer_split,
    min_avoidance,
    solve_xi_system,
)
from .rings import Ring, mat_inv, mat_vec
from .skewcalc import apply_partial_word, skew_partial


class MembershipError(ValueError):
    """Membership in the requested subgroup cannot be decided."""


class DecompositionError(ValueError):
    """The input is outside the domain of the requested factorization."""


class NoPreimageError(ValueError):
    """The requested Jacobian value has no exact preimage."""


# ---------------------------------------------------------------------------
# group identifiers

_PARAMETRIC_KINDS = {
    "omega_graded": "odd grading step s (odd, 1 <= s <= n)",
    "gamma_pow": "filtration level i >= 2",
    "gamma_asc": "even Jacobian valuation bound 2s",
    "gamma_graded": "even grading step s",
    "u_pow": "filtration level i >= 2",
    "phi_at": "coordinate index i",
    "phi_pow": "odd filtration level",
    "phi_prime_layer": "odd layer level 2s+1",
    "sigma_prime_pow": "odd filtration level",
    "g_zgraded": "grading modulus s >= 2",
}

_PLAIN_KINDS = {
    "omega", "gamma", "u", "phi", "phi_prime", "sigma", "sigma_prime",
    "sigma_double_prime", "g_even", "g_odd",
}


@dataclass(frozen=True)
class GroupId:
    """A named subgroup, optionally parameterized (filtration level etc.)."""

    kind: str
    param: Optional[int] = None

    def __post_init__(self):
        if self.kind in _PLAIN_KINDS:
            if self.param is not None:
                raise ValueError(f"group {self.kind} takes no parameter")
        elif self.kind in _PARAMETRIC_KINDS:
            if self.param is None:
                raise ValueError(
                    f"group {self.kind} needs a parameter: {_PARAMETRIC_KINDS[self.kind]}")
        else:
            raise ValueError(f"unknown group kind {self.kind!r}")

    def __str__(self):
        return self.kind if self.param is None else f"{self.kind}:{self.param}"


def parse_group_id(text: str) -> GroupId:
    text = text.strip().lower().replace("-", "_")
    if ":" in text:
        kind, param = text.split(":", 1)
        return GroupId(kind, int(param))
    return GroupId(text)


OMEGA = GroupId("omega")
GAMMA = GroupId("gamma")
U = GroupId("u")
PHI = GroupId("phi")
PHI_PRIME = GroupId("phi_prime")
SIGMA = GroupId("sigma")
SIGMA_PRIME = GroupId("sigma_prime")
SIGMA_DOUBLE_PRIME = GroupId("sigma_double_prime")
G_EVEN = GroupId("g_even")
G_ODD = GroupId("g_odd")


# ---------------------------------------------------------------------------
# membership

def _gen(ring, n, i):
    return GrassmannElement.generator(ring, n, i)


def _differences(sigma: Endomorphism):
    return [sigma.images[i] - _gen(sigma.ring, sigma.n, i + 1)
            for i in range(sigma.n)]


def _in_gamma(sigma: Endomorphism) -> bool:
    for d in _differences(sigma):
        if d and (d != odd_part(d) or d.min_degree() < 3):
            return False
    return True


def _in_u(sigma: Endomorphism) -> bool:
    return all((not d) or d.min_degree() >= 2 for d in _differences(sigma))


def _in_phi(sigma: Endomorphism) -> bool:
    return _in_gamma(sigma) and all(
        im.divisible_by(i + 1) for i, im in enumerate(sigma.images))


def omega_witness(sigma: Endomorphism) -> Optional[GrassmannElement]:
    """The odd element a with sigma = conjugation by 1 + a, or None.

    Found by solving x_i * a = -(sigma(x_i) - x_i) / 2 and reconstructing;
    the witness is normalized to zero top-monomial coefficient when the top
    monomial is central.
    """
    ring, n = sigma.ring, sigma.n
    half = ring.invert(ring.from_int(2))
    u = [d.scale(-half) for d in _differences(sigma)]
    try:
        family = solve_xi_system(u)
    except SolvabilityError:
        return None
    a = odd_part(family.particular)
    if n % 2:
        # the top monomial is central for odd n; fix the representative
        top = (1 << n) - 1
        a = a - GrassmannElement.monomial(ring, n, top, a.coefficient(top))
    if inner(GrassmannElement.one(ring, n) + a) == sigma:
        return a
    return None


def member(sigma: Endomorphism, group: GroupId, *, witness: bool = False):
    """Decide membership of an automorphism in the named subgroup.

    With witness=True returns (flag, data) where data is group-specific
    (currently: the conjugator element for the inner-automorphism groups).
    """
    flag, data = _member_witness(sigma, group)
    return (flag, data) if witness else flag


def _member_witness(sigma: Endomorphism, group: GroupId):
    ring, n = sigma.ring, sigma.n
    kind, param = group.kind, group.param

    if not is_automorphism(sigma):
        return False, None

    if kind == "u":
        return _in_u(sigma), None
    if kind == "u_pow":
        return all((not d) or d.min_degree() >= param for d in _differences(sigma)), None
    if kind == "gamma":
        return _in_gamma(sigma), None
    if kind == "gamma_pow":
        return (_in_gamma(sigma)
                and all((not d) or d.min_degree() >= param
                        for d in _differences(sigma))), None
    if kind == "gamma_graded":
        if param < 2 or param % 2:
            raise MembershipError("graded shift groups need an even step s >= 2")
        if not _in_gamma(sigma):
            return False, None
        allowed = {1 + j * param for j in range(1, n // param + 1)}
        return all(d.degrees() <= allowed for d in _differences(sigma)), None
    if kind == "phi":
        return _in_phi(sigma), None
    if kind == "phi_at":
        if not 1 <= param <= n:
            raise MembershipError(f"coordinate index {param} out of range")
        return _in_gamma(sigma) and sigma.images[param - 1].divisible_by(param), None
    if kind == "phi_prime":
        return all(im.divisible_by(i + 1) for i, im in enumerate(sigma.images)), None
    if kind == "phi_pow":
        return (_in_phi(sigma)
                and all((not d) or d.min_degree() >= param
                        for d in _differences(sigma))), None
    if kind == "phi_prime_layer":
        return _in_phi_prime_layer(sigma, param), None
    if kind == "g_even":
        return all(not odd_part(im - component(im, 1)) for im in sigma.images), None
    if kind == "g_odd":
        return sigma.has_odd_images(), None
    if kind == "g_zgraded":
        if param < 2:
            raise MembershipError("grading modulus must be >= 2")
        allowed = {d for d in range(n + 1) if d % param == 1 % param}
        return all(im.degrees() <= allowed for im in sigma.images), None
    if kind == "omega":
        a = omega_witness(sigma)
        return a is not None, a
    if kind == "omega_graded":
        if param < 1 or param % 2 == 0:
            raise MembershipError("graded inner groups need an odd step s >= 1")
        a = omega_witness(sigma)
        if a is None:
            return False, None
        allowed = {j * param for j in range(1, n // param + 1, 2)}
        proj = GrassmannElement(
            ring, n, {m: c for m, c in a.terms.items() if m.bit_count() in allowed})
        if inner(GrassmannElement.one(ring, n) + proj) == sigma:
            return True, proj
        return False, None
    if kind == "sigma":
        return (_in_gamma(sigma)
                and sigma.jacobian().det == GrassmannElement.one(ring, n)), None
    if kind == "sigma_prime":
        return (_in_phi(sigma)
                and sigma.jacobian().det == GrassmannElement.one(ring, n)), None
    if kind == "sigma_prime_pow":
        ok = (_in_phi(sigma)
              and sigma.jacobian().det == GrassmannElement.one(ring, n)
              and all((not d) or d.min_degree() >= param
                      for d in _differences(sigma)))
        return ok, None
    if kind == "gamma_asc":
        if param < 2 or param % 2:
            raise MembershipError("Jacobian ascent levels are even and >= 2")
        return _in_gamma(sigma) and sigma.jacobian().valuation >= param, None
    if kind == "sigma_double_prime":
        if not _in_gamma(sigma):
            return False, None
        if sigma.jacobian().det != GrassmannElement.one(ring, n):
            return False, None
        word = decompose_gamma(sigma)
        phi = word.phi
        ok = (member(phi, SIGMA_PRIME)
              and all((not d) or d.min_degree() >= 5 for d in _differences(phi)))
        return ok, None
    raise MembershipError(f"unsupported group {group}")


def _in_phi_prime_layer(sigma: Endomorphism, level: int) -> bool:
    """The scaling subgroup whose first layer lies in the canonical section."""
    n = sigma.n
    if level < 3 or level % 2 == 0:
        raise MembershipError("layer groups are indexed by odd levels 2s+1 >= 3")
    s = (level - 1) // 2
    if s > (n - 1) // 2:
        raise MembershipError(f"layer level {level} out of range for n={n}")
    if not _in_phi(sigma):
        return False
    if any(d and d.min_degree() < level for d in _differences(sigma)):
        return False
    full = (1 << n) - 1
    for i in range(1, n + 1):
        a_i = skew_partial(i, sigma.images[i - 1])  # x_i * a_i == image
        b_i = component(a_i, 2 * s)
        if i < n - 2 * s:
            if b_i:
                return False
            continue
        tail = indices_mask(range(i + 1, n + 1))
        for mask in b_i.terms:
            if (mask & tail) != tail or (full ^ mask).bit_length() != i:
                return False
    return True


# ---------------------------------------------------------------------------
# factorization data

@dataclass(frozen=True)
class OmegaGammaLinear:
    """sigma = (conjugation by 1+a) . (shift by b) . (linear part A)."""

    a: GrassmannElement
    b: tuple
    matrix: list

    def recompose(self, ring: Ring, n: int) -> Endomorphism:
        one = GrassmannElement.one(ring, n)
        gamma = Endomorphism(
            [_gen(ring, n, i + 1) + self.b[i] for i in range(n)], check=False)
        return inner(one + self.a).compose(gamma).compose(linear_endo(ring, self.matrix))

    def to_json(self):
        return {
            "kind": "inner-shift-linear",
            "inner": element_to_json(self.a),
            "shift": [element_to_json(b) for b in self.b],
            "matrix": [[str(c) for c in row] for row in self.matrix],
        }


@dataclass(frozen=True)
class UnipotentWord:
    """Alternating inner/shift factors by filtration level, lowest applied first."""

    factors: tuple  # of ("inner", a) / ("shift", b-tuple), level ascending
    ring: Ring
    n: int

    def recompose(self) -> Endomorphism:
        acc = identity_endo(self.ring, self.n)
        one = GrassmannElement.one(self.ring, self.n)
        for kind, data in self.factors:
            if kind == "inner":
                f = inner(one + data)
            else:
                f = Endomorphism(
                    [_gen(self.ring, self.n, i + 1) + data[i]
                     for i in range(self.n)], check=False)
            acc = f.compose(acc)
        return acc

    def to_json(self):
        out = []
        for kind, data in self.factors:
            if kind == "inner":
                out.append({"kind": "inner", "element": element_to_json(data)})
            else:
                out.append({"kind": "shift",
                            "images": [element_to_json(b) for b in data]})
        return {"kind": "unipotent-word", "factors": out}


@dataclass(frozen=True)
class GammaWord:
    """sigma = phi . xi_word, xi factors by ascending degree applied first.

    ``xis`` maps each odd degree k to the n-tuple of degree-k shifts c_i; the
    degree-k factor is the ordered product of the single-coordinate shifts
    x_i -> x_i + c_i, i ascending with i = 1 leftmost.
    """

    phi: Endomorphism
    xis: dict  # degree -> tuple of c_i

    def xi_factor(self, degree: int) -> Endomorphism:
        return _shift_product(self.phi.ring, self.phi.n, self.xis[degree])

    def recompose(self) -> Endomorphism:
        acc = identity_endo(self.phi.ring, self.phi.n)
        for degree in sorted(self.xis, reverse=True):
            acc = acc.compose(self.xi_factor(degree))
        return self.phi.compose(acc)

    def to_json(self):
        return {
            "kind": "scaling-and-shifts",
            "phi": endomorphism_to_json(self.phi),
            "shifts": {str(k): [element_to_json(c) for c in cs]
                       for k, cs in sorted(self.xis.items())},
        }


@dataclass(frozen=True)
class SigmaPrimeWord:
    """Coordinates of a Jacobian-1 scaling map in the canonical pair generators."""

    ring: Ring
    n: int
    lambdas: dict  # (s, i, support mask) -> coefficient

    def recompose(self) -> Endomorphism:
        acc = identity_endo(self.ring, self.n)
        for s in range(1, (self.n - 1) // 2 + 1):
            stage = {(i, m): c for (t, i, m), c in self.lambdas.items() if t == s}
            acc = acc.compose(rho_product(self.ring, self.n, s, stage))
        return acc

    def to_json(self):
        return {
            "kind": "pair-scaling-word",
            "coordinates": [
                {"s": s, "i": i, "support": mask_str(m),
                 "coeff": self.ring.format(c)}
                for (s, i, m), c in sorted(self.lambdas.items())
            ],
        }


@dataclass(frozen=True)
class LayerWord:
    """sigma = layer factors (ascending s, leftmost applied last) times a
    Jacobian-1 tail."""

    layers: dict  # s -> degree-2s element a(2s)
    tail: Endomorphism

    def recompose(self) -> Endomorphism:
        ring, n = self.tail.ring, self.tail.n
        acc = self.tail
        for s in sorted(self.layers, reverse=True):
            acc = layer_scaling(ring, n, s, self.layers[s]).compose(acc)
        return acc

    def to_json(self):
        return {
            "kind": "layer-word",
            "layers": {str(2 * s): element_to_json(a)
                       for s, a in sorted(self.layers.items())},
            "tail": endomorphism_to_json(self.tail),
        }


# -- canonical builders -----------------------------------------------------

def _shift_product(ring: Ring, n: int, shifts) -> Endomorphism:
    """Ordered product of x_i -> x_i + shifts[i-1], i ascending, i=1 leftmost."""
    acc = None
    for i in range(n, 0, -1):
        c = shifts[i - 1]
        if c is None or not c:
            continue
        f = coordinate_shift(ring, n, i, c, check=False)
        acc = f if acc is None else f.compose(acc)
    return acc if acc is not None else identity_endo(ring, n)


def rho_endo(ring: Ring, n: int, i: int, j: int, mask: int, lam) -> Endomorphism:
    """x_i -> x_i(1 + lam sup), x_j -> x_j(1 - lam sup), others fixed."""
    if (mask >> (i - 1)) & 1 or (mask >> (j - 1)) & 1:
        raise ValueError("pair-scaling support must avoid both coordinates")
    one = GrassmannElement.one(ring, n)
    sup = GrassmannElement.monomial(ring, n, mask, lam)
    images = [_gen(ring, n, k) for k in range(1, n + 1)]
    images[i - 1] = images[i - 1] * (one + sup)
    images[j - 1] = images[j - 1] * (one - sup)
    return Endomorphism(images, check=False)


def rho_product(ring: Ring, n: int, s: int, lambdas: dict,
                avoid: Optional[AvoidanceTable] = None) -> Endomorphism:
    """Ordered product of pair scalings; (i, mask) ascending, first factor leftmost."""
    if avoid is None:
        avoid = _avoidance(n, s)
    acc = identity_endo(ring, n)
    for i in range(1, n):
        for mask in sorted(avoid.domain[i]):
            lam = lambdas.get((i, mask))
            if lam is None or lam == 0:
                continue
            acc = acc.compose(rho_endo(ring, n, i, avoid.target(i, mask), mask, lam))
    return acc


def layer_scaling(ring: Ring, n: int, s: int, a: GrassmannElement) -> Endomorphism:
    """The scaling map built from the canonical split of a degree-2s element."""
    split = layer_split(a, s)
    one = GrassmannElement.one(ring, n)
    images = []
    for i in range(1, n + 1):
        x = _gen(ring, n, i)
        part = split.parts.get(i)
        images.append(x if part is None or not part else x * (one + part))
    return Endomorphism(images, check=False)


_avoid_cache: dict = {}


def _avoidance(n: int, s: int) -> AvoidanceTable:
    key = (n, s)
    if key not in _avoid_cache:
        _avoid_cache[key] = min_avoidance(n, s)
    return _avoid_cache[key]


# ---------------------------------------------------------------------------
# factorizations

def decompose_omega_gamma_linear(sigma: Endomorphism) -> OmegaGammaLinear:
    """Unique inner * shift * linear factorization of an automorphism."""
    ring, n = sigma.ring, sigma.n
    if not is_automorphism(sigma):
        raise NotInvertibleError("input is not an automorphism")
    a_mat = sigma.linear_part()
    a_inv = mat_inv(ring, a_mat)
    odd_images = mat_vec(ring, a_inv, [odd_part(im) for im in sigma.images])
    b = [odd_images[i] - _gen(ring, n, i + 1) for i in range(n)]
    gamma = Endomorphism([_gen(ring, n, i + 1) + b[i] for i in range(n)],
                         check=False)
    gamma_inv = gamma.inverse()
    even_images = [even_part(im) for im in sigma.images]
    primed = mat_vec(ring, a_inv, [gamma_inv.apply(e) for e in even_images])
    acc = skew_partial(1, primed[0])
    for i in range(1, n):
        prefix = (1 << i) - 1
        body = apply_partial_word(skew_partial(i + 1, primed[i]), prefix)
        acc = acc + GrassmannElement.monomial(ring, n, prefix) * body
    half = ring.invert(ring.from_int(2))
    a_raw = gamma.apply(acc).scale(-half)
    # the inner part lives in odd degrees 1..n-1
    a = odd_part(a_raw)
    if n % 2:
        top = (1 << n) - 1
        a = a - GrassmannElement.monomial(ring, n, top, a.coefficient(top))
    extra = a_raw - a
    if extra and set(extra.terms) != {(1 << n) - 1}:
        raise DecompositionError("inner part has unexpected content off the top monomial")
    result = OmegaGammaLinear(a=a, b=tuple(b), matrix=a_mat)
    if result.recompose(ring, n) != sigma:
        raise DecompositionError("factor recomposition mismatch")
    return result


def decompose_unipotent(sigma: Endomorphism) -> UnipotentWord:
    """Alternating inner/shift factorization of an identity-linear-part
    automorphism, peeled one filtration level at a time."""
    ring, n = sigma.ring, sigma.n
    if not member(sigma, U):
        raise DecompositionError("input does not fix generators modulo degree 2")
    one = GrassmannElement.one(ring, n)
    half = ring.invert(ring.from_int(2))
    factors = []
    residual = sigma
    for level in range(2, n + 1):
        if level % 2 == 0:
            # inner factor: absorb the even leading layer coordinate by coordinate
            parts = GrassmannElement.zero(ring, n)
            for i in range(1, min(level, n) + 1):
                cur = component(residual.images[i - 1] - _gen(ring, n, i), level)
                if not cur:
                    continue
                b_i = skew_partial(i, cur)
                if _gen(ring, n, i) * b_i != cur:
                    raise DecompositionError(
                        f"level-{level} layer of x{i} is not a multiple of x{i}")
                prefix = (1 << (i - 1)) - 1
                stripped = apply_partial_word(b_i, prefix)
                if GrassmannElement.monomial(ring, n, prefix) * stripped != b_i:
                    raise DecompositionError(
                        f"level-{level} layer of x{i} lacks the forced prefix")
                part = b_i.scale(-half)
                parts = parts + part
                residual = residual.compose(inner(one - part))
            # coordinates above the level bound must now be clean
            for i in range(1, n + 1):
                if component(residual.images[i - 1] - _gen(ring, n, i), level):
                    raise DecompositionError(
                        f"inner factor did not clear level {level} at x{i}")
            if parts:
                factors.append(("inner", parts))
        else:
            leading = [component(d, level) for d in _differences(residual)]
            if any(leading[i] != odd_part(leading[i]) for i in range(n)):
                raise DecompositionError(f"odd level {level} has even content")
            if any(leading):
                shift = Endomorphism(
                    [_gen(ring, n, i + 1) + leading[i] for i in range(n)],
                    check=False)
                residual = residual.compose(shift.inverse())
                factors.append(("shift", tuple(leading)))
    if not residual.is_identity():
        raise DecompositionError("filtration peeling left a nontrivial residual")
    word = UnipotentWord(factors=tuple(factors), ring=ring, n=n)
    if word.recompose() != sigma:
        raise DecompositionError("factor recomposition mismatch")
    return word


def decompose_gamma(sigma: Endomorphism) -> GammaWord:
    """Factor a shift automorphism as scaling times single-coordinate shifts.

    The degree-k shift tuple is read from the inverse: c_i is the degree-k
    part of the image of x_i under the running inverse that avoids x_i.
    """
    ring, n = sigma.ring, sigma.n
    if not member(sigma, GAMMA):
        raise DecompositionError("input is not an odd shift automorphism")
    current = sigma.inverse()
    xis = {}
    for degree in range(3, n + 1, 2):
        cs = []
        for i in range(1, n + 1):
            bit = 1 << (i - 1)
            free = GrassmannElement(
                ring, n,
                {m: c for m, c in current.images[i - 1].terms.items()
                 if not (m & bit) and m.bit_count() == degree},
                _raw=True)
            cs.append(free)
        shifts = tuple(-c for c in cs)
        if any(shifts):
            current = _shift_product(ring, n, shifts).compose(current)
        xis[degree] = shifts
    phi = current.inverse()
    if not member(phi, PHI):
        raise DecompositionError("residual is not a scaling automorphism")
    word = GammaWord(phi=phi, xis=xis)
    if word.recompose() != sigma:
        raise DecompositionError("factor recomposition mismatch")
    return word


def decompose_sigma_prime(sigma: Endomorphism) -> SigmaPrimeWord:
    """Coordinates of a Jacobian-1 scaling automorphism in pair generators."""
    ring, n = sigma.ring, sigma.n
    if not member(sigma, SIGMA_PRIME):
        raise DecompositionError("input is not a Jacobian-1 scaling automorphism")
    lambdas = {}
    residual = sigma
    for s in range(1, (n - 1) // 2 + 1):
        avoid = _avoidance(n, s)
        layer = []
        for i in range(1, n + 1):
            a_i = skew_partial(i, residual.images[i - 1])
            layer.append(component(a_i, 2 * s))
        kern, section = kernel_split(layer, s, avoid)
        if any(part for part in section.parts.values()):
            raise DecompositionError(
                "scaling residual escapes the kernel of the symbol sum; "
                "the input cannot have Jacobian 1")
        stage = {}
        for (i, mask), c in kern.items():
            lambdas[(s, i, mask)] = c
            stage[(i, mask)] = c
        if stage:
            factor = rho_product(ring, n, s, stage, avoid)
            residual = factor.inverse().compose(residual)
    if not residual.is_identity():
        raise DecompositionError("pair-scaling peeling left a nontrivial residual")
    word = SigmaPrimeWord(ring=ring, n=n, lambdas=lambdas)
    if word.recompose() != sigma:
        raise DecompositionError("factor recomposition mismatch")
    return word


def decompose_layers(sigma: Endomorphism) -> LayerWord:
    """Factor a shift automorphism into Jacobian layer factors and a
    Jacobian-1 tail, one even degree at a time."""
    ring, n = sigma.ring, sigma.n
    if n < 4:
        raise DecompositionError("layer factorization needs n >= 4")
    if not member(sigma, GAMMA):
        raise DecompositionError("input is not an odd shift automorphism")
    one = GrassmannElement.one(ring, n)
    layers = {}
    residual = sigma
    for s in range(1, (n - 1) // 2 + 1):
        det = residual.jacobian().det
        a2s = component(det - one, 2 * s)
        layers[s] = a2s
        if a2s:
            factor = layer_scaling(ring, n, s, a2s)
            residual = factor.inverse().compose(residual)
    if residual.jacobian().det != one:
        raise DecompositionError("layer peeling left a Jacobian != 1 tail")
    word = LayerWord(layers=layers, tail=residual)
    if word.recompose() != sigma:
        raise DecompositionError("factor recomposition mismatch")
    return word


# ---------------------------------------------------------------------------
# the Jacobian preimage

@dataclass(frozen=True)
class PreimageResult:
    sigma: Endomorphism
    achieved: GrassmannElement
    forced_top: object  # top-monomial coefficient forced for even n, else None


def jacobian_preimage(u: GrassmannElement, *, exact: bool = True) -> PreimageResult:
    """Construct a shift automorphism whose Jacobian is u.

    For odd n the preimage is exact.  For even n the top-monomial coefficient
    of the Jacobian is a function of the lower coordinates; if the request is
    exact and u's top coefficient is not the forced one, no preimage exists.
    """
    ring, n = u.ring, u.n
    if n < 4:
        raise ValueError("preimage construction needs n >= 4")
    one = GrassmannElement.one(ring, n)
    diff = u - one
    if diff != even_part(diff) or (diff and diff.min_degree() < 2):
        raise ValueError("target must be even with constant term 1")
    if u.constant_term() != ring.one:
        raise ValueError("target must have constant term 1")
    acc = identity_endo(ring, n)
    residual_target = u
    for s in range(1, (n - 1) // 2 + 1):
        a2s = component(residual_target - one, 2 * s)
        if not a2s:
            continue
        factor = layer_scaling(ring, n, s, a2s)
        det = factor.jacobian().det
        adjusted = invert_unit(det) * residual_target
        residual_target = factor.inverse().apply(adjusted)
        acc = acc.compose(factor)
    achieved = acc.jacobian().det
    if n % 2:
        if achieved != u:
            raise NoPreimageError("odd-n construction failed to hit the target")
        return PreimageResult(sigma=acc, achieved=achieved, forced_top=None)
    top = (1 << n) - 1
    forced = achieved.coefficient(top)
    if achieved - u:
        mismatch = achieved - u
        if set(mismatch.terms) != {top}:
            raise NoPreimageError("even-n construction failed below the top degree")
        if exact:
            raise NoPreimageError(
                f"no exact preimage: the top coefficient is forced to {ring.format(forced)}, "
                f"target has {ring.format(u.coefficient(top))}")
    return PreimageResult(sigma=acc, achieved=achieved, forced_top=forced)


# ---------------------------------------------------------------------------
# generator families

@dataclass(frozen=True)
class GeneratorDescriptor:
    """A one-parameter subgroup isomorphic to (K, +).

    kinds: "sigma" (x_i += lam * triple monomial), "xi" (general single-
    coordinate shift), "rho" (balanced pair scaling), "omega" (conjugation by
    1 + lam * odd monomial).
    """

    kind: str
    i: Optional[int]
    j: Optional[int]
    mask: int

    def instantiate(self, ring: Ring, n: int, lam) -> Endomorphism:
        if self.kind in ("sigma", "xi"):
            b = GrassmannElement.monomial(ring, n, self.mask, lam)
            return coordinate_shift(ring, n, self.i, b, check=False)
        if self.kind == "rho":
            return rho_endo(ring, n, self.i, self.j, self.mask, lam)
        if self.kind == "omega":
            a = GrassmannElement.monomial(ring, n, self.mask, lam)
            return inner(GrassmannElement.one(ring, n) + a)
        raise ValueError(f"unknown generator kind {self.kind!r}")

    def describe(self) -> str:
        if self.kind == "sigma" or self.kind == "xi":
            return f"x{self.i} -> x{self.i} + t*{mask_str(self.mask)}"
        if self.kind == "rho":
            return (f"x{self.i} -> x{self.i}(1 + t*{mask_str(self.mask)}); "
                    f"x{self.j} -> x{self.j}(1 - t*{mask_str(self.mask)})")
        return f"conjugation by 1 + t*{mask_str(self.mask)}"


def _triple_shift_descriptors(n: int, include_i: bool):
    from itertools import combinations
    out = []
    for i in range(1, n + 1):
        pool = [k for k in range(1, n + 1) if k != i]
        if include_i:
            for k, l in combinations(pool, 2):
                out.append(GeneratorDescriptor(
                    "sigma", i, None, indices_mask((i, k, l))))
        else:
            for j, k, l in combinations(pool, 3):
                out.append(GeneratorDescriptor(
                    "sigma", i, None, indices_mask((j, k, l))))
    return out


def enumerate_generators(group: GroupId, n: int) -> list:
    """The one-parameter generator families of the named group."""
    kind = group.kind
    if kind == "gamma":
        if n < 2:
            raise ValueError("need n >= 2")
        return _triple_shift_descriptors(n, include_i=False)
    if kind == "u":
        gens = _triple_shift_descriptors(n, include_i=False)
        gens += [GeneratorDescriptor("omega", None, None, 1 << (i - 1))
                 for i in range(1, n + 1)]
        return gens
    if kind == "phi":
        return _triple_shift_descriptors(n, include_i=True)
    if kind == "sigma_double_prime":
        if n < 4:
            raise ValueError("need n >= 4")
        gens = _triple_shift_descriptors(n, include_i=False)
        if n % 2 == 0:
            full = (1 << n) - 1
            for i in range(1, n + 1):
                gens.append(GeneratorDescriptor(
                    "xi", i, None, full ^ (1 << (i - 1))))
        return gens
    if kind == "sigma":
        if n < 7:
            raise ValueError("the minimal generator family needs n >= 7")
        avoid = _avoidance(n, 1)
        gens = [GeneratorDescriptor("rho", i, avoid.target(i, mask), mask)
                for i in range(1, n) for mask in sorted(avoid.domain[i])]
        gens += _triple_shift_descriptors(n, include_i=False)
        return gens
    if kind == "sigma_prime":
        gens = []
        for s in range(1, (n - 1) // 2 + 1):
            avoid = _avoidance(n, s)
            gens += [GeneratorDescriptor("rho", i, avoid.target(i, mask), mask)
                     for i in range(1, n) for mask in sorted(avoid.domain[i])]
        return gens
    raise ValueError(f"no generator family implemented for {group}")
