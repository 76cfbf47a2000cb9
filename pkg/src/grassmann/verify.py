"""The seeded verification battery.

Each check draws its samples deterministically from a top-level seed (fanned
out per sample index), runs an exact property, and reports a result row.  The
CLI ``verify`` subcommand prints the rows; the acceptance suite calls the same
functions with its own sample counts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    GrassmannElement,
    component,
    even_part,
    indices_mask,
    involution,
    invert_unit,
    odd_part,
)
from .dims import DIM_GROUPS, dim_by_coordinates, dim_formula
from .endo import (
    Endomorphism,
    format_endomorphism,
    identity_endo,
    inner,
    linear_endo,
)
from .groups import (
    GAMMA,
    GroupId,
    NoPreimageError,
    OMEGA,
    PHI,
    SIGMA,
    SIGMA_PRIME,
    SIGMA_DOUBLE_PRIME,
    U,
    decompose_gamma,
    decompose_layers,
    decompose_omega_gamma_linear,
    decompose_sigma_prime,
    decompose_unipotent,
    jacobian_preimage,
    layer_scaling,
    member,
)
from .identities import (
    check_al2,
    check_g5ab,
    check_group_law_n3,
    check_identity,
    check_invabA,
    check_mul1,
    check_slsA,
    nonnormality_witness,
)
from .linsolve import SolvabilityError, solve_partial_system, solve_xi_system
from .rings import GF, Ring
from .sampling import (
    random_element,
    random_even,
    random_gamma,
    random_gamma_gl,
    random_gamma_pow,
    random_invertible_matrix,
    random_linear,
    random_odd,
    random_omega,
    random_phi,
    random_shift_word,
    random_sigma_prime_word,
    random_sigma_word,
    random_unipotent,
    spawn,
)
from .skewcalc import (
    apply_partial_word,
    coordinate_projection,
    phi_projection,
    skew_partial,
    taylor_reconstruct,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    samples: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" -- {self.detail}" if self.detail else ""
        return f"[{status}] {self.name} ({self.samples} checks){extra}"


def _result(name, failures, samples):
    if failures:
        return CheckResult(name, False, samples, f"first failure: {failures[0]}")
    return CheckResult(name, True, samples)


def _gen(ring, n, i):
    return GrassmannElement.generator(ring, n, i)


# ---------------------------------------------------------------------------
# algebra suite

def check_associativity(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "assoc", k)
        e = random_element(rng, ring, n, terms=3)
        f = random_element(rng, ring, n, terms=3)
        g = random_element(rng, ring, n, terms=3)
        if (e * f) * g != e * (f * g):
            failures.append(f"sample {k}")
    return _result(f"associativity n={n}", failures, samples)


def check_defining_relations(ring: Ring, n: int) -> CheckResult:
    failures = []
    zero = GrassmannElement.zero(ring, n)
    for i in range(1, n + 1):
        xi = _gen(ring, n, i)
        if xi * xi != zero:
            failures.append(f"x{i}^2 != 0")
        for j in range(1, n + 1):
            if i != j and _gen(ring, n, i) * _gen(ring, n, j) + _gen(ring, n, j) * _gen(ring, n, i) != zero:
                failures.append(f"x{i},x{j} do not anticommute")
    return _result(f"defining relations n={n}", failures, n * n)


def check_nilpotency(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "nilp", k)
        acc = GrassmannElement.one(ring, n)
        for _ in range(n + 1):
            acc = acc * random_element(rng, ring, n, degrees=range(1, n + 1), terms=3)
        if acc:
            failures.append(f"sample {k}")
    return _result(f"nilpotency of the augmentation ideal n={n}", failures, samples)


def check_involution(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "invo", k)
        e = random_element(rng, ring, n, terms=4)
        f = random_element(rng, ring, n, terms=4)
        if involution(e * f) != involution(e) * involution(f):
            failures.append(f"multiplicative: sample {k}")
        if involution(involution(e)) != e:
            failures.append(f"order two: sample {k}")
        for i in range(1, n + 1):
            if _gen(ring, n, i) * e != involution(e) * _gen(ring, n, i):
                failures.append(f"normality at x{i}: sample {k}")
    return _result(f"involution properties n={n}", failures, samples)


def check_center(ring: Ring, n: int) -> CheckResult:
    """Brute-force the commutant of the generators over the monomial basis."""
    central = []
    for mask in range(1 << n):
        e = GrassmannElement.monomial(ring, n, mask)
        if all(e * _gen(ring, n, i) == _gen(ring, n, i) * e for i in range(1, n + 1)):
            central.append(mask)
    expected = [m for m in range(1 << n) if m.bit_count() % 2 == 0]
    if n % 2 == 1:
        expected.append((1 << n) - 1)
    ok = sorted(central) == sorted(expected)
    return CheckResult(f"center basis n={n}", ok, 1 << n,
                       "" if ok else f"got {central}")


def check_odd_squares(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    zero = GrassmannElement.zero(ring, n)
    for k in range(samples):
        rng = spawn(seed, "oddsq", k)
        a = random_odd(rng, ring, n, terms=4)
        if a * a != zero:
            failures.append(f"square: sample {k}")
        e = random_element(rng, ring, n, terms=4)
        ev = even_part(e)
        if e * involution(e) != ev * ev:
            failures.append(f"norm form: sample {k}")
    return _result(f"odd squares and norm form n={n}", failures, samples)


def check_unit_inversion(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    one = GrassmannElement.one(ring, n)
    for k in range(samples):
        rng = spawn(seed, "unit", k)
        e = one.scale(ring.random_nonzero(rng)) + random_element(
            rng, ring, n, degrees=range(1, n + 1), terms=3)
        if e * invert_unit(e) != one:
            failures.append(f"sample {k}")
    return _result(f"unit inversion n={n}", failures, samples)


# ---------------------------------------------------------------------------
# calculus suite

def check_skew_leibniz(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "leib", k)
        d = rng.randrange(0, n + 1)
        e = random_element(rng, ring, n, degrees=[d], terms=3)
        f = random_element(rng, ring, n, terms=3)
        i = rng.randrange(1, n + 1)
        lhs = skew_partial(i, e * f)
        rhs = skew_partial(i, e) * f + (e * skew_partial(i, f)).scale(
            ring.from_int(-1 if d % 2 else 1))
        if lhs != rhs:
            failures.append(f"sample {k}")
    return _result(f"skew Leibniz rule n={n}", failures, samples)


def check_operator_relations(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "oprel", k)
        e = random_element(rng, ring, n, terms=4)
        i = rng.randrange(1, n + 1)
        j = rng.randrange(1, n + 1)
        if skew_partial(i, skew_partial(i, e)):
            failures.append(f"d{i}^2: sample {k}")
        if skew_partial(i, skew_partial(j, e)) + skew_partial(j, skew_partial(i, e)):
            if i != j:
                failures.append(f"anticommute d{i},d{j}: sample {k}")
        lhs = skew_partial(i, _gen(ring, n, j) * e) + _gen(ring, n, j) * skew_partial(i, e)
        rhs = e if i == j else GrassmannElement.zero(ring, n)
        if lhs != rhs:
            failures.append(f"mixed relation d{i},x{j}: sample {k}")
    return _result(f"derivative relations n={n}", failures, samples)


def check_projections(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    from .skewcalc import phi_projection_by_composition
    failures = []
    for k in range(samples):
        rng = spawn(seed, "proj", k)
        e = random_element(rng, ring, n, terms=4)
        i = rng.randrange(1, n + 1)
        if coordinate_projection(i, coordinate_projection(i, e)) != coordinate_projection(i, e):
            failures.append(f"idempotence: sample {k}")
        # expansion of the constant-term projection as alternating word sums
        expansion = GrassmannElement.zero(ring, n)
        for mask in range(1 << n):
            term = GrassmannElement.monomial(ring, n, mask) * apply_partial_word(e, mask)
            expansion = expansion + (term if mask.bit_count() % 2 == 0 else -term)
        byphi = phi_projection_by_composition(e)
        if expansion != byphi:
            failures.append(f"expansion: sample {k}")
        if byphi != GrassmannElement.scalar(ring, n, phi_projection(e)):
            failures.append(f"constant term: sample {k}")
    return _result(f"projection operators n={n}", failures, samples)


def check_taylor(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "taylor", k)
        e = random_element(rng, ring, n, terms=5)
        if taylor_reconstruct(e, "at_zero") != e:
            failures.append(f"at_zero: sample {k}")
        if taylor_reconstruct(e, "projected") != e:
            failures.append(f"projected: sample {k}")
    return _result(f"Taylor reconstruction n={n}", failures, samples)


def check_identity_operator(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    """Triangular identity decomposition built from derivative words."""
    failures = []
    full = (1 << n) - 1
    for k in range(samples):
        rng = spawn(seed, "idop", k)
        e = random_element(rng, ring, n, terms=5)
        acc = GrassmannElement.monomial(ring, n, full) * apply_partial_word(e, full)
        for i in range(1, n):
            prefix = (1 << i) - 1
            acc = acc + GrassmannElement.monomial(ring, n, prefix) * apply_partial_word(
                coordinate_projection(i + 1, e), prefix)
        acc = acc + coordinate_projection(1, e)
        if acc != e:
            failures.append(f"sample {k}")
    return _result(f"identity-operator decomposition n={n}", failures, samples)


def check_taylor_substitution(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    """Applying a shift automorphism equals the derivative-expansion sum."""
    failures = []
    for k in range(samples):
        rng = spawn(seed, "tsub", k)
        gamma = random_gamma(rng, ring, n, terms=2)
        f = random_element(rng, ring, n, terms=4)
        shifts = [gamma.images[i] - _gen(ring, n, i + 1) for i in range(n)]
        acc = GrassmannElement.zero(ring, n)
        for mask in range(1 << n):
            d = apply_partial_word(f, mask)
            if not d:
                continue
            prod = GrassmannElement.one(ring, n)
            for i in range(1, n + 1):
                if (mask >> (i - 1)) & 1:
                    prod = prod * shifts[i - 1]
            acc = acc + prod * d
        if acc != gamma.apply(f):
            failures.append(f"sample {k}")
    return _result(f"substitution as derivative expansion n={n}", failures, samples)


# ---------------------------------------------------------------------------
# solver suite

def check_xi_solver(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "xisys", k)
        a = random_element(rng, ring, n, terms=4)
        u = [_gen(ring, n, i) * a for i in range(1, n + 1)]
        family = solve_xi_system(u)
        for c in (ring.zero, ring.one):
            sol = family.at(c)
            if any(_gen(ring, n, i) * sol != u[i - 1] for i in range(1, n + 1)):
                failures.append(f"substitution: sample {k}")
                break
        diff = family.particular - a
        if any(m != (1 << n) - 1 for m in diff.terms):
            failures.append(f"family misses the generator: sample {k}")
        # inconsistent perturbations must be rejected with the right condition
        i0 = rng.randrange(1, n + 1)
        bad = list(u)
        bad[i0 - 1] = bad[i0 - 1] + GrassmannElement.monomial(
            ring, n, indices_mask([j for j in range(1, n + 1) if j != i0][:1]))
        try:
            solve_xi_system(bad)
            failures.append(f"missed membership violation: sample {k}")
        except SolvabilityError as err:
            if err.condition != "membership" or err.indices != (i0,):
                failures.append(f"wrong condition {err.condition}: sample {k}")
    return _result(f"normal-multiplication solver n={n}", failures, samples)


def check_xi_solver_pair_rejection(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "xipair", k)
        a = random_element(rng, ring, n, terms=3)
        u = [_gen(ring, n, i) * a for i in range(1, n + 1)]
        i0 = rng.randrange(1, n + 1)
        # stay inside (x_i0) but break the pair condition
        others = [j for j in range(1, n + 1) if j != i0]
        mask = indices_mask([i0, others[0]])
        bad = list(u)
        bad[i0 - 1] = bad[i0 - 1] + GrassmannElement.monomial(ring, n, mask)
        try:
            solve_xi_system(bad)
            sol_ok = all(_gen(ring, n, i) * solve_xi_system(bad).particular == bad[i - 1]
                         for i in range(1, n + 1))
            if not sol_ok:
                failures.append(f"accepted inconsistent system: sample {k}")
        except SolvabilityError as err:
            if err.condition != "anticommute" or i0 not in err.indices:
                failures.append(f"wrong condition {err.condition}@{err.indices}: sample {k}")
    return _result(f"pair-condition rejection n={n}", failures, samples)


def check_partial_solver(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "dsys", k)
        a = random_element(rng, ring, n, terms=4)
        u = [skew_partial(i, a) for i in range(1, n + 1)]
        family = solve_partial_system(u)
        sol = family.at(ring.random(rng))
        if any(skew_partial(i, sol) != u[i - 1] for i in range(1, n + 1)):
            failures.append(f"substitution: sample {k}")
        if (family.particular - a).max_degree() > 0:
            failures.append(f"family misses the generator: sample {k}")
        i0 = rng.randrange(1, n + 1)
        bad = list(u)
        bad[i0 - 1] = bad[i0 - 1] + _gen(ring, n, i0)
        try:
            solve_partial_system(bad)
            failures.append(f"missed free-variable violation: sample {k}")
        except SolvabilityError as err:
            if err.condition != "free" or err.indices != (i0,):
                failures.append(f"wrong condition {err.condition}: sample {k}")
    return _result(f"derivative-system solver n={n}", failures, samples)


def check_partial_solver_pair_rejection(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "dpair", k)
        a = random_element(rng, ring, n, terms=3)
        u = [skew_partial(i, a) for i in range(1, n + 1)]
        i0, j0 = 1, 2
        bad = list(u)
        # perturb u_i0 by a monomial avoiding x_i0 but containing x_j0
        mask = indices_mask([j0] + [j for j in range(1, n + 1) if j not in (i0, j0)][:1])
        bad[i0 - 1] = bad[i0 - 1] + GrassmannElement.monomial(ring, n, mask)
        try:
            solve_partial_system(bad)
            sol = solve_partial_system(bad).particular
            if any(skew_partial(i, sol) != bad[i - 1] for i in range(1, n + 1)):
                failures.append(f"accepted inconsistent system: sample {k}")
        except SolvabilityError as err:
            if err.condition != "skew-symmetry":
                failures.append(f"wrong condition {err.condition}: sample {k}")
    return _result(f"skew-symmetry rejection n={n}", failures, samples)


# ---------------------------------------------------------------------------
# endomorphism suite

def check_inverse_strategies(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    ident = identity_endo(ring, n)
    for k in range(samples):
        rng = spawn(seed, "inv", k)
        sigma = random_gamma_gl(rng, ring, n)
        by_iter = sigma._inverse_iteration()
        by_formula = sigma._inverse_formula()
        if by_iter != by_formula:
            failures.append(
                f"strategy mismatch on sample {k}: {format_endomorphism(sigma)}")
            continue
        if sigma.compose(by_iter) != ident or by_iter.compose(sigma) != ident:
            failures.append(
                f"not a two-sided inverse on sample {k}: {format_endomorphism(sigma)}")
    return _result(f"inversion strategies n={n} ({ring!r})", failures, samples)


def check_chain_rule(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "chain", k)
        sigma = random_gamma_gl(rng, ring, n)
        tau = random_gamma_gl(rng, ring, n)
        js, jt = sigma.jacobian(), tau.jacobian()
        st = sigma.compose(tau)
        jst = st.jacobian()
        # matrix chain rule: entry (i, j) of the composite matrix
        for i in range(n):
            for j in range(n):
                acc = GrassmannElement.zero(ring, n)
                for t in range(n):
                    acc = acc + sigma.apply(jt.matrix[i][t]) * js.matrix[t][j]
                if acc != jst.matrix[i][j]:
                    failures.append(f"matrix entry ({i + 1},{j + 1}): sample {k}")
                    break
            else:
                continue
            break
        if jst.det != sigma.apply(jt.det) * js.det:
            failures.append(f"determinant chain rule: sample {k}")
        sigma_inv = sigma.inverse()
        if sigma_inv.jacobian().det != sigma_inv.apply(invert_unit(js.det)):
            failures.append(f"inverse determinant rule: sample {k}")
    return _result(f"chain rules n={n}", failures, samples)


def check_inner_properties(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    one = GrassmannElement.one(ring, n)
    for k in range(samples):
        rng = spawn(seed, "inner", k)
        a = random_odd(rng, ring, n, terms=3)
        b = random_odd(rng, ring, n, terms=3)
        if inner(one + a).compose(inner(one + b)) != inner(one + a + b):
            failures.append(f"additivity: sample {k}")
        conj = inner(one + a)
        for i in range(1, n + 1):
            x = _gen(ring, n, i)
            if conj.images[i - 1] != x + (a * x - x * a):
                failures.append(f"bracket form at x{i}: sample {k}")
                break
        lam = ring.random_nonzero(rng)
        if inner(GrassmannElement.scalar(ring, n, lam)) != identity_endo(ring, n):
            failures.append(f"scalar conjugation: sample {k}")
    return _result(f"inner automorphisms n={n}", failures, samples)


def check_dual_derivatives(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "dual", k)
        sigma = random_gamma_gl(rng, ring, n)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                got = sigma.dual_skew_partial(i, sigma.images[j - 1])
                want = (GrassmannElement.one(ring, n) if i == j
                        else GrassmannElement.zero(ring, n))
                if got != want:
                    failures.append(f"delta property ({i},{j}): sample {k}")
        e = random_element(rng, ring, n, terms=3)
        i = rng.randrange(1, n + 1)
        if sigma.dual_skew_partial(i, sigma.dual_skew_partial(i, e)):
            failures.append(f"square zero: sample {k}")
    return _result(f"dual derivatives n={n}", failures, samples)


def check_composition_laws(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "complaw", k)
        mat_a = random_invertible_matrix(rng, ring, n)
        mat_b = random_invertible_matrix(rng, ring, n)
        from .rings import mat_mul
        if linear_endo(ring, mat_a).compose(linear_endo(ring, mat_b)) != linear_endo(
                ring, mat_mul(ring, mat_b, mat_a)):
            failures.append(f"linear law: sample {k}")
        b = random_gamma(rng, ring, n, terms=2)
        c = random_gamma(rng, ring, n, terms=2)
        composed = b.compose(c)
        resub = Endomorphism([b.apply(c.images[i]) for i in range(n)], check=False)
        if composed != resub:
            failures.append(f"substitution law: sample {k}")
    return _result(f"composition conventions n={n}", failures, samples)


# ---------------------------------------------------------------------------
# factorization suite

def check_oga_roundtrip(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "oga", k)
        omega = random_omega(rng, ring, n, terms=2)
        gamma = random_gamma(rng, ring, n, terms=2)
        lin = random_linear(rng, ring, n)
        sigma = omega.compose(gamma).compose(lin)
        fact = decompose_omega_gamma_linear(sigma)
        if fact.recompose(ring, n) != sigma:
            failures.append(
                f"recomposition failed on sample {k}: {format_endomorphism(sigma)}")
        gamma_back = Endomorphism(
            [_gen(ring, n, i + 1) + fact.b[i] for i in range(n)], check=False)
        if gamma_back != gamma or linear_endo(ring, fact.matrix) != lin:
            failures.append(f"parts not recovered: sample {k}")
        if not member(inner(GrassmannElement.one(ring, n) + fact.a), OMEGA):
            failures.append(f"inner part outside the inner group: sample {k}")
        if not member(gamma_back, GAMMA):
            failures.append(f"shift part outside the shift group: sample {k}")
    return _result(f"inner*shift*linear factorization n={n}", failures, samples)


def check_unipotent_roundtrip(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "uni", k)
        sigma = random_unipotent(rng, ring, n, factors=3)
        word = decompose_unipotent(sigma)
        if word.recompose() != sigma:
            failures.append(
                f"recomposition failed on sample {k}: {format_endomorphism(sigma)}")
        for level_kind, data in word.factors:
            if level_kind == "inner":
                if data != odd_part(data):
                    failures.append(f"inner factor not odd: sample {k}")
            else:
                if any(b != odd_part(b) for b in data):
                    failures.append(f"shift factor not odd: sample {k}")
    return _result(f"alternating unipotent factorization n={n}", failures, samples)


def check_gamma_word_roundtrip(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "gword", k)
        if k % 2 == 0:
            sigma = random_gamma(rng, ring, n, terms=2)
        else:
            sigma = random_phi(rng, ring, n).compose(random_shift_word(rng, ring, n))
        word = decompose_gamma(sigma)
        if word.recompose() != sigma:
            failures.append(
                f"recomposition failed on sample {k}: {format_endomorphism(sigma)}")
        if not member(word.phi, PHI):
            failures.append(f"scaling part outside its group: sample {k}")
        if member(sigma, SIGMA) and not member(word.phi, SIGMA_PRIME):
            failures.append(f"Jacobian-1 input with non-Jacobian-1 scaling part: sample {k}")
    return _result(f"scaling/shift factorization n={n}", failures, samples)


def check_sigma_prime_roundtrip(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "spword", k)
        sigma = random_sigma_prime_word(rng, ring, n, length=4)
        word = decompose_sigma_prime(sigma)
        if word.recompose() != sigma:
            failures.append(
                f"recomposition failed on sample {k}: {format_endomorphism(sigma)}")
    return _result(f"pair-scaling coordinates n={n}", failures, samples)


def check_layers_roundtrip(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "layers", k)
        if k % 2 == 0:
            sigma = random_gamma(rng, ring, n, terms=2)
        else:
            # high-valuation inputs exercise the vanishing of the low layers
            sigma = random_gamma_pow(rng, ring, n, 5).compose(
                random_sigma_word(rng, ring, n, length=2))
        word = decompose_layers(sigma)
        if word.recompose() != sigma:
            failures.append(
                f"recomposition failed on sample {k}: {format_endomorphism(sigma)}")
        if not member(word.tail, SIGMA):
            failures.append(f"tail outside the Jacobian-1 group: sample {k}")
        # ascent members must have vanishing low layers
        level = sigma.jacobian().valuation
        for s in range(1, min(level // 2, (n - 1) // 2 + 1)):
            if word.layers.get(s):
                failures.append(f"nonzero layer below the valuation: sample {k}")
    return _result(f"layer factorization n={n}", failures, samples)


# ---------------------------------------------------------------------------
# group suite

def check_sigma_closure(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "closure", k)
        sigma = random_sigma_word(rng, ring, n, length=4)
        tau = random_sigma_word(rng, ring, n, length=4)
        if not member(sigma.compose(tau), SIGMA):
            failures.append(f"product: sample {k}")
        if not member(sigma.inverse(), SIGMA):
            failures.append(f"inverse: sample {k}")
    return _result(f"Jacobian-1 group closure n={n}", failures, samples)


def check_coset_criterion(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "coset", k)
        sigma = random_gamma(rng, ring, n, terms=2)
        tau_same = sigma.compose(random_sigma_word(rng, ring, n, length=3))
        if sigma.jacobian().det != tau_same.jacobian().det:
            failures.append(f"same-coset Jacobians differ: sample {k}")
        if not member(sigma.inverse().compose(tau_same), SIGMA):
            failures.append(f"same-coset quotient outside: sample {k}")
        tau_other = random_gamma(rng, ring, n, terms=2)
        same_j = sigma.jacobian().det == tau_other.jacobian().det
        in_coset = member(sigma.inverse().compose(tau_other), SIGMA)
        if same_j != in_coset:
            failures.append(f"criterion mismatch: sample {k}")
    return _result(f"coset criterion n={n}", failures, samples)


def check_ascent_chain(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "ascent", k)
        for s in range(1, (n - 1) // 2 + 1):
            level = 2 * s + 1
            sigma = random_gamma_pow(rng, ring, n, level)
            if not member(sigma, GroupId("gamma_asc", 2 * s)):
                failures.append(f"filtration not inside ascent 2s={2 * s}: sample {k}")
        sigma = random_gamma(rng, ring, n, terms=2)
        val = sigma.jacobian().valuation
        for s in range(1, (n - 1) // 2 + 2):
            expected = val >= 2 * s
            if member(sigma, GroupId("gamma_asc", 2 * s)) != expected:
                failures.append(f"monotone valuation failed at 2s={2 * s}: sample {k}")
    return _result(f"ascent chain n={n}", failures, samples)


def check_even_collapse(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    """Even n: any sampled map with valuation >= n has Jacobian exactly 1."""
    if n % 2:
        raise ValueError("collapse check is for even n")
    failures = []
    one = GrassmannElement.one(ring, n)
    seen_high = 0
    for k in range(samples):
        rng = spawn(seed, "collapse", k)
        choice = k % 3
        if choice == 0:
            sigma = random_gamma(rng, ring, n, terms=2)
        elif choice == 1:
            sigma = random_gamma_pow(rng, ring, n, 5).compose(
                random_sigma_word(rng, ring, n, length=3))
        else:
            sigma = random_sigma_word(rng, ring, n, length=4)
        jd = sigma.jacobian()
        if jd.valuation >= n:
            seen_high += 1
            if jd.det != one:
                failures.append(f"valuation >= n with Jacobian != 1: sample {k}")
    if seen_high == 0:
        failures.append("no high-valuation samples seen")
    return _result(f"even-n ascent collapse n={n}", failures, samples)


def check_ascent_distinctness(ring: Ring, n: int) -> CheckResult:
    """Explicit layer witnesses separating consecutive ascents below collapse."""
    failures = []
    top_s = (n - 1) // 2
    for s in range(1, top_s + 1):
        a = GrassmannElement.monomial(ring, n, indices_mask(range(n - 2 * s + 1, n + 1)))
        witness = layer_scaling(ring, n, s, a)
        val = witness.jacobian().valuation
        if val != 2 * s:
            failures.append(f"witness at 2s={2 * s} has valuation {val}")
        if not member(witness, GroupId("gamma_asc", 2 * s)):
            failures.append(f"witness not inside ascent 2s={2 * s}")
        if member(witness, GroupId("gamma_asc", 2 * s + 2)):
            failures.append(f"witness not separating at 2s={2 * s}")
    return _result(f"ascent distinctness witnesses n={n}", failures, top_s)


def check_membership_basics(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    ident = identity_endo(ring, n)
    groups = [OMEGA, GAMMA, U, PHI, SIGMA, SIGMA_PRIME, SIGMA_DOUBLE_PRIME,
              GroupId("g_even"), GroupId("g_odd"), GroupId("phi_prime")]
    for g in groups:
        if not member(ident, g):
            failures.append(f"identity outside {g}")
    for k in range(samples):
        rng = spawn(seed, "member", k)
        omega = random_omega(rng, ring, n, terms=2)
        if not member(omega, OMEGA):
            failures.append(f"inner sample outside inner group: sample {k}")
        diffs_even = all(
            not odd_part(omega.images[i] - _gen(ring, n, i + 1)) for i in range(n))
        if not diffs_even:
            failures.append(f"inner image differences not even: sample {k}")
        if member(omega, GAMMA) and not omega.is_identity():
            failures.append(f"nontrivial inner map inside the odd-shift group: sample {k}")
        xi = random_shift_word(rng, ring, n, length=2)
        if not member(xi, SIGMA):
            failures.append(f"shift word outside Jacobian-1 group: sample {k}")
        if not member(xi, SIGMA_DOUBLE_PRIME):
            failures.append(f"shift word outside its own subgroup: sample {k}")
    return _result(f"membership basics n={n}", failures, samples)


def check_graded_groups(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    """Automorphisms respecting a cyclic grading factor per the step's parity."""
    failures = []
    for k in range(samples):
        rng = spawn(seed, "graded", k)
        for s in range(2, n + 1):
            if s % 2 == 0:
                degrees = [1 + j * s for j in range(1, (n - 1) // s + 1) if 1 + j * s <= n]
                images = []
                for i in range(1, n + 1):
                    shift = (random_element(rng, ring, n, degrees=degrees, terms=1)
                             if degrees else GrassmannElement.zero(ring, n))
                    images.append(_gen(ring, n, i) + shift)
                cand = Endomorphism(images, check=False).compose(
                    random_linear(rng, ring, n))
            else:
                degrees = [j * s for j in range(1, n // s + 1, 2)]
                a = (random_element(rng, ring, n, degrees=degrees, terms=1)
                     if degrees else GrassmannElement.zero(ring, n))
                cand = inner(GrassmannElement.one(ring, n) + a).compose(
                    random_linear(rng, ring, n))
            if not member(cand, GroupId("g_zgraded", s)):
                failures.append(f"graded construction escapes mod-{s} grading: sample {k}")
    return _result(f"cyclically graded subgroups n={n}", failures, samples)


# ---------------------------------------------------------------------------
# dimensions, exhaustive small cases, preimages

def check_dimension_tables(n_values=range(4, 11)) -> CheckResult:
    failures = []
    count = 0
    for n in n_values:
        for g in DIM_GROUPS:
            count += 1
            if dim_formula(g, n) != dim_by_coordinates(g, n):
                failures.append(f"{g} at n={n}")
        for s in range(1, n // 2 + 2):
            count += 1
            tag = f"gamma-asc:{2 * s}"
            if dim_formula(tag, n) != dim_by_coordinates(tag, n):
                failures.append(f"{tag} at n={n}")
    return _result("dimension formulas vs coordinate counts", failures, count)


def check_dimension_consistency(n_values=range(4, 11)) -> CheckResult:
    failures = []
    count = 0
    for n in n_values:
        count += 2
        pi = 2 if n % 2 == 0 else 1
        if dim_formula("sigma", n) != dim_formula("sigma_prime", n) + dim_formula("xi_space", n):
            failures.append(f"product decomposition at n={n}")
        if dim_formula("gamma", n) != dim_formula("sigma", n) + (2 ** (n - 1) - pi):
            failures.append(f"quotient count at n={n}")
        count += 1
        if dim_formula("sigma_double_prime", n) != dim_formula("sigma", n) - (n - 3) * (
                n * (n - 1) // 2):
            failures.append(f"normal-subgroup count at n={n}")
    return _result("dimension consistency identities", failures, count)


def check_n3_exhaustive(p: int = 3) -> CheckResult:
    """n = 3 over GF(3): the Jacobian map is a bijection and its kernel is trivial."""
    ring = GF(p)
    n = 3
    failures = []
    theta = 0b111
    seen = {}
    count = 0
    for l1 in range(p):
        for l2 in range(p):
            for l3 in range(p):
                sigma = Endomorphism(
                    [_gen(ring, n, i + 1)
                     + GrassmannElement.monomial(ring, n, theta, (l1, l2, l3)[i])
                     for i in range(n)], check=False)
                if not member(sigma, GAMMA):
                    failures.append(f"{(l1, l2, l3)} outside the shift group")
                det = sigma.jacobian().det
                key = tuple(sorted(det.terms.items()))
                if key in seen:
                    failures.append(f"Jacobian collision {(l1, l2, l3)} vs {seen[key]}")
                seen[key] = (l1, l2, l3)
                if det == GrassmannElement.one(ring, n) and (l1, l2, l3) != (0, 0, 0):
                    failures.append(f"nontrivial Jacobian-1 map {(l1, l2, l3)}")
                count += 1
    # image must be all of 1 + (degree-2 part): p^3 elements
    if len(seen) != p ** 3:
        failures.append(f"image size {len(seen)} != {p ** 3}")
    for key in seen:
        masks = {m for m, _ in key}
        if not masks <= {0, 0b011, 0b101, 0b110}:
            failures.append(f"image element has unexpected support {masks}")
    return _result(f"n=3 exhaustive over GF({p})", failures, count)


def check_preimage_odd(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "preim", k)
        u = GrassmannElement.one(ring, n) + random_even(rng, ring, n, terms=4)
        result = jacobian_preimage(u)
        if result.achieved != u:
            failures.append(f"Jacobian mismatch: sample {k}")
        if result.sigma.jacobian().det != u:
            failures.append(f"verification mismatch: sample {k}")
        if not member(result.sigma, GAMMA):
            failures.append(f"preimage outside the shift group: sample {k}")
    return _result(f"odd-n Jacobian surjectivity n={n}", failures, samples)


def check_preimage_even_refusal(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    one = GrassmannElement.one(ring, n)
    theta = (1 << n) - 1
    target = one + GrassmannElement.monomial(ring, n, theta)
    try:
        jacobian_preimage(target, exact=True)
        failures.append("exact preimage of 1 + top monomial not refused")
    except NoPreimageError:
        pass
    inexact = jacobian_preimage(target, exact=False)
    if inexact.forced_top == ring.one:
        failures.append("forced top coefficient should differ from 1")
    for k in range(samples):
        rng = spawn(seed, "noipre", k)
        sigma = random_gamma(rng, ring, n, terms=2)
        det = sigma.jacobian().det
        diff = det - one
        if diff and set(diff.terms) == {theta}:
            failures.append(f"Jacobian landed in 1 + K* top: sample {k}")
    return _result(f"even-n top-layer refusal n={n}", failures, samples)


# ---------------------------------------------------------------------------
# identity suite

def check_identity_battery(ring: Ring, seed) -> CheckResult:
    failures = []
    rng = spawn(seed, "ident")
    lam, mu, nu = (ring.random_nonzero(rng) for _ in range(3))
    cases = [
        ("gcom1", lambda: check_identity("gcom1", ring, 7, 1, 2, (3, 4, 5), (6, 7), lam, mu)),
        ("gcom2", lambda: check_identity("gcom2", ring, 6, 1, (2, 3), (4, 5, 6), lam, mu)),
        ("xijam", lambda: check_identity("xijam", ring, 7, 1, 2, (3, 4), (5, 6, 7), lam, mu)),
        ("xijam1-overlap", lambda: check_identity(
            "xijam1", ring, 5, 1, 2, (3, 4, 5), (3, 4, 5), lam, mu)),
        ("xijam1-disjoint", lambda: check_identity(
            "xijam1", ring, 8, 1, 2, (3, 4, 5), (6, 7, 8), lam, mu)),
        ("com1", lambda: check_identity("com1", ring, 6, 1, 2, (3, 4), (5, 6), lam, mu)),
        ("dvac1", lambda: check_identity(
            "dvac1", ring, 8, 1, 2, (3, 4), (5, 6), (7, 8), lam, mu, nu)),
        ("dvac2-overlap", lambda: check_identity(
            "dvac2", ring, 7, 1, 2, (3, 4), (5, 6), (3, 6, 7), lam, mu, nu)),
        ("g3ab-m1", lambda: check_identity("g3ab", ring, 5, (1, 2, 3, 4, 5), lam)),
        ("g3ab-m2", lambda: check_identity("g3ab", ring, 7, (1, 2, 3, 4, 5, 6, 7), lam)),
        ("g4ab-m2", lambda: check_identity("g4ab", ring, 6, 1, (2, 3, 4, 5, 6), lam)),
        ("g4ab-m3", lambda: check_identity("g4ab", ring, 8, 2, (1, 3, 4, 5, 6, 7, 8), lam)),
        ("g6ab-m1", lambda: check_identity("g6ab", ring, 5, (1, 2, 3), lam)),
        ("g6ab-m2", lambda: check_identity("g6ab", ring, 5, (1, 2, 3, 4, 5), lam)),
        ("g6ab-m3", lambda: check_identity("g6ab", ring, 7, (1, 2, 3, 4, 5, 6, 7), lam)),
        ("xipq1-m0", lambda: check_identity("xipq1", ring, 8, 1, 2, (), 3, 4, 5, lam)),
        ("xipq2-m0", lambda: check_identity(
            "xipq2", ring, 7, 1, 2, ((3, 4),), 5, 6, 7, lam)),
        ("nonnormality", lambda: nonnormality_witness(ring)),
    ]
    for name, runner in cases:
        try:
            if not runner():
                failures.append(name)
        except Exception as err:  # pragma: no cover - diagnosis aid
            failures.append(f"{name} raised {err!r}")
    return _result("identity battery", failures, len(cases))


def check_identity_battery_random(ring: Ring, n: int, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "identr", k)
        a = random_odd(rng, ring, n, terms=2)
        a = a - GrassmannElement.monomial(ring, n, 0, a.constant_term())
        sigma = random_gamma_gl(rng, ring, n)
        if not check_g5ab(ring, n, sigma, a):
            failures.append(f"conjugation commutator: sample {k}")
        omega = random_omega(rng, ring, n, terms=2)
        gamma = random_gamma(rng, ring, n, terms=1)
        gamma2 = random_gamma(rng, ring, n, terms=1)
        omega2 = random_omega(rng, ring, n, terms=2)
        mat_a = random_invertible_matrix(rng, ring, n)
        mat_b = random_invertible_matrix(rng, ring, n)
        a1 = random_odd(rng, ring, n, terms=2)
        a1 = component(a1, 1) + component(a1, 3)  # keep inside degrees 1..n-1
        a2 = random_odd(rng, ring, n, terms=2)
        a2 = component(a2, 1) + component(a2, 3)
        if not check_mul1(ring, n, a1, gamma.images, mat_a, a2, gamma2.images, mat_b):
            failures.append(f"product law: sample {k}")
        if not check_invabA(ring, n, a1, gamma.images, mat_a):
            failures.append(f"inverse law: sample {k}")
        sigma_full = omega.compose(gamma).compose(linear_endo(ring, mat_a))
        lam_vec = [ring.random(rng) for _ in range(n)]
        if not check_slsA(ring, n, sigma_full, lam_vec):
            failures.append(f"top-shift conjugation: sample {k}")
    return _result(f"random group-law identities n={n}", failures, samples)


def check_al2_random(ring: Ring, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "al2", k)
        mat_a = random_invertible_matrix(rng, ring, 2)
        mat_b = random_invertible_matrix(rng, ring, 2)
        lam = [ring.random(rng) for _ in range(2)]
        mu = [ring.random(rng) for _ in range(2)]
        if not check_al2(ring, mat_a, lam, mat_b, mu):
            failures.append(f"sample {k}")
    return _result("rank-2 composition law", failures, samples)


def check_n3_law_random(ring: Ring, samples: int, seed) -> CheckResult:
    failures = []
    for k in range(samples):
        rng = spawn(seed, "law3", k)
        mat_a = random_invertible_matrix(rng, ring, 3)
        mat_b = random_invertible_matrix(rng, ring, 3)
        vecs = [[ring.random(rng) for _ in range(3)] for _ in range(4)]
        if not check_group_law_n3(ring, vecs[0], vecs[1], mat_a, vecs[2], vecs[3], mat_b):
            failures.append(f"sample {k}")
    return _result("rank-3 composition law", failures, samples)


# ---------------------------------------------------------------------------
# suites

def run_suite(suite: str, *, n: int = 5, ring: Ring = None, samples: int = 25,
              seed=0) -> list[CheckResult]:
    ring = ring if ring is not None else GF(7)
    small = max(4, samples // 5)
    results = []

    def algebra():
        results.append(check_defining_relations(ring, n))
        results.append(check_associativity(ring, min(n, 8), samples, seed))
        results.append(check_nilpotency(ring, n, small, seed))
        results.append(check_involution(ring, n, samples, seed))
        results.append(check_center(ring, 4))
        results.append(check_center(ring, 5))
        results.append(check_odd_squares(ring, n, samples, seed))
        results.append(check_unit_inversion(ring, n, samples, seed))

    def calculus():
        results.append(check_skew_leibniz(ring, n, samples, seed))
        results.append(check_operator_relations(ring, n, samples, seed))
        results.append(check_projections(ring, min(n, 6), small, seed))
        results.append(check_taylor(ring, min(n, 6), small, seed))
        results.append(check_identity_operator(ring, n, samples, seed))
        results.append(check_taylor_substitution(ring, min(n, 6), small, seed))

    def solvers():
        results.append(check_xi_solver(ring, n, samples, seed))
        results.append(check_xi_solver_pair_rejection(ring, n, small, seed))
        results.append(check_partial_solver(ring, n, samples, seed))
        results.append(check_partial_solver_pair_rejection(ring, n, small, seed))

    def inversion():
        results.append(check_inverse_strategies(ring, n, samples, seed))
        results.append(check_composition_laws(ring, n, small, seed))

    def jacobian_suite():
        results.append(check_chain_rule(ring, n, samples, seed))
        results.append(check_dual_derivatives(ring, n, small, seed))
        results.append(check_inner_properties(ring, n, samples, seed))

    def factorize():
        results.append(check_oga_roundtrip(ring, n, small, seed))
        results.append(check_unipotent_roundtrip(ring, n, small, seed))
        results.append(check_gamma_word_roundtrip(ring, n, small, seed))
        results.append(check_sigma_prime_roundtrip(ring, max(n, 4), small, seed))
        results.append(check_layers_roundtrip(ring, max(n, 4), small, seed))

    def groups_suite():
        results.append(check_membership_basics(ring, n, small, seed))
        results.append(check_sigma_closure(ring, n, small, seed))
        results.append(check_coset_criterion(ring, n, small, seed))
        results.append(check_ascent_chain(ring, n, small, seed))
        results.append(check_graded_groups(ring, n, max(2, small // 2), seed))
        results.append(check_ascent_distinctness(ring, n))

    def identities():
        results.append(check_identity_battery(ring, seed))
        results.append(check_identity_battery_random(ring, min(n, 5), small, seed))
        results.append(check_al2_random(ring, samples, seed))
        results.append(check_n3_law_random(ring, small, seed))

    def dims_suite():
        results.append(check_dimension_tables())
        results.append(check_dimension_consistency())

    def n3():
        results.append(check_n3_exhaustive())

    def preimage():
        odd_n = n if n % 2 else n + 1
        even_n = n if n % 2 == 0 else n + 1
        results.append(check_preimage_odd(ring, odd_n, small, seed))
        results.append(check_preimage_even_refusal(ring, even_n, small, seed))

    def ascents():
        even_n = n if n % 2 == 0 else n + 1
        results.append(check_even_collapse(ring, even_n, samples, seed))
        for m in (5, 6, 7):
            results.append(check_ascent_distinctness(ring, m))

    suites = {
        "algebra": algebra,
        "calculus": calculus,
        "solvers": solvers,
        "inversion": inversion,
        "jacobian": jacobian_suite,
        "factorize": factorize,
        "groups": groups_suite,
        "identities": identities,
        "dims": dims_suite,
        "n3": n3,
        "preimage": preimage,
        "ascents": ascents,
    }
    if suite == "all":
        for fn in suites.values():
            fn()
    elif suite in suites:
        suites[suite]()
    else:
        raise ValueError(f"unknown suite {suite!r}; choose from "
                         f"{sorted(suites)} or 'all'")
    return results


SUITES = ("algebra", "calculus", "solvers", "inversion", "jacobian", "factorize",
          "groups", "identities", "dims", "n3", "preimage", "ascents", "all")
