"""The runnable identity suite behind the ``verify`` command.

Every check is a deterministic function of (alphabet size, level budget,
seed); all comparisons are exact in rational mode.  The suite is the
operational summary of what this package promises: dual Dirichlet algorithms
agree, operators are symmetric with zero row sums, clamping never raises
energy, cylinder extension preserves it, the Green identities and boundary
derivative formulas hold, the Gauss-Green residual vanishes, classification
matches cylinder constancy, and the two solvers round-trip.
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass
from fractions import Fraction

from .boundary import (
    SolutionFunction,
    classify_harmonic,
    gauss_green_check,
    laplacian_estimate,
    neumann_derivative,
    solve_dirichlet,
    solve_neumann,
    weak_residual,
)
from .errors import IncompatibleBoundaryError
from .forms import (
    DIFFERENCE_FORM,
    OPERATOR_FORM,
    apply_difference_operator,
    apply_difference_operator_inductive,
    dirichlet_form,
    minimizer_extension,
    operator_matrix,
)
from .functions import CylinderFunction, LevelFunction, chi_extension, clamp, restrict
from .green import (
    GreenApplication,
    green_h_values,
    green_kernel,
    green_kernel_double_sum,
)
from .words import Alphabet, VertexWord, vertex_set, vertex_words


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_level_function(alphabet, m, rng):
    return LevelFunction(
        alphabet,
        m,
        [Fraction(rng.randint(-12, 12), rng.randint(1, 5))
         for _ in range(alphabet.size ** (m + 1))],
    )


def _random_cylinder(alphabet, level, rng):
    return CylinderFunction(
        alphabet,
        level,
        [Fraction(rng.randint(-9, 9), rng.randint(1, 4))
         for _ in range(alphabet.size ** (level + 1))],
    )


def _level_budget(alphabet, m_max, points=2048):
    m = m_max
    while m > 0 and alphabet.size ** (m + 1) > points:
        m -= 1
    return m


def _negated_green(load):
    zero = CylinderFunction(load.alphabet, 0, [0] * load.alphabet.size)
    return SolutionFunction(zero, GreenApplication(load))


def check_dual_dirichlet_forms(alphabet, m_max, rng):
    top = _level_budget(alphabet, m_max)
    trials = 0
    for m in range(top + 1):
        for _ in range(6):
            u = _random_level_function(alphabet, m, rng)
            v = _random_level_function(alphabet, m, rng)
            a = dirichlet_form(m, u, v, OPERATOR_FORM).value
            b = dirichlet_form(m, u, v, DIFFERENCE_FORM).value
            if a != b:
                return False, f"algorithms disagree at level {m}: {a} vs {b}"
            trials += 1
    return True, f"{trials} random pairs, exact agreement through level {top}"


def check_operator_oracle(alphabet, m_max, rng):
    top = min(_level_budget(alphabet, m_max), 4)
    for m in range(top + 1):
        u = _random_level_function(alphabet, m, rng)
        closed = apply_difference_operator(m, u)
        literal = apply_difference_operator_inductive(m, u)
        if closed.values != literal.values:
            return False, f"closed form deviates from the inductive definition at level {m}"
    return True, f"closed form matches the inductive definition through level {top}"


def check_operator_symmetry(alphabet, m_max, rng):
    top = min(_level_budget(alphabet, m_max, points=512), 3)
    for m in range(top + 1):
        entries = operator_matrix(alphabet, m)
        for (i, j), v in entries.items():
            if entries.get((j, i)) != v:
                return False, f"matrix asymmetric at level {m}: ({i},{j})"
        rows: dict[int, int] = {}
        for (i, _), v in entries.items():
            rows[i] = rows.get(i, 0) + v
        if any(v != 0 for v in rows.values()):
            return False, f"nonzero row sum at level {m}"
    return True, f"symmetric with zero row sums through level {top}"


def check_markov_property(alphabet, m_max, rng):
    top = _level_budget(alphabet, m_max)
    for m in range(top + 1):
        for _ in range(8):
            u = _random_level_function(alphabet, m, rng)
            c = clamp(u)
            if (
                dirichlet_form(m, c, c, OPERATOR_FORM).value
                > dirichlet_form(m, u, u, OPERATOR_FORM).value
            ):
                return False, f"clamping raised the form at level {m}"
    return True, f"clamping never raised the form through level {top}"


def check_extension_compatibility(alphabet, m_max, rng):
    top = min(_level_budget(alphabet, m_max) - 1, 4)
    for m in range(top + 1):
        u = _random_level_function(alphabet, m, rng)
        _, cert = minimizer_extension(u, m + 1, samples=2, seed=rng.randint(0, 9999))
        if not cert.energy_equal:
            return False, f"extension changed the energy at level {m}"
        if cert.interior_residual != 0:
            return False, f"interior stationarity fails at level {m}"
        if any(margin < 0 for margin in cert.perturbation_margins):
            return False, f"a perturbation lowered the energy at level {m}"
    return True, f"energy preserved and interior stationary through level {top}"


def check_indicator_pairing(alphabet, m_max, rng):
    top = min(_level_budget(alphabet, m_max, points=512), 4)
    for m in range(top + 1):
        u = _random_level_function(alphabet, m, rng)
        hu = apply_difference_operator(m, u)
        for p in vertex_set(alphabet, m):
            chi = restrict(chi_extension(p, m), m)
            pairing = dirichlet_form(m, u, chi, DIFFERENCE_FORM).value
            if pairing != -hu.value_at(p):
                return False, f"pairing defect at {p.literal}, level {m}"
    return True, f"indicator pairings equal operator values through level {top}"


def check_green_identities(alphabet, m_max, rng):
    top = min(_level_budget(alphabet, m_max, points=512), 4)
    for _ in range(3):
        f = _random_cylinder(alphabet, rng.randint(0, min(2, top)), rng)
        gf = GreenApplication(f)
        for l in alphabet.symbols:
            if gf.evaluate(VertexWord(alphabet, (l,))) != 0:
                return False, "Green image does not vanish at a constant sequence"
        for m in range(top + 1):
            direct = apply_difference_operator(m, restrict(gf, m))
            if direct.values != green_h_values(f, m).values:
                return False, f"operator values of the Green image deviate at level {m}"
    return True, f"boundary zeros and operator identities hold through level {top}"


def check_kernel_oracle(alphabet, m_max, rng):
    level = min(_level_budget(alphabet, m_max, points=256), 3)
    points = vertex_set(alphabet, level)
    pairs = 0
    for x in points:
        for y in points:
            if x == y:
                continue
            if green_kernel(x, y) != green_kernel_double_sum(x, y):
                return False, f"kernel mismatch at ({x.literal}, {y.literal})"
            pairs += 1
    return True, f"{pairs} vertex pairs agree with the double-sum oracle at level {level}"


def check_green_derivative(alphabet, m_max, rng):
    f = _random_cylinder(alphabet, 1, rng)
    gf = GreenApplication(f)
    boundary = min(2, m_max - 1)
    for p in vertex_set(alphabet, boundary):
        value = neumann_derivative(gf, p, boundary).value
        expected = (
            -f.cylinder_integral(p.symbols[:1]) if p.min_level == 0 else 0
        )
        if value != expected:
            return False, f"derivative defect at {p.literal}"
        # the defining sequence must approach the value with vanishing gap
        tail = -green_h_values(f, m_max).value_at(p) - value
        if abs(tail) > max(abs(v) for v in f.values) / alphabet.size**m_max:
            return False, f"defining sequence strays at {p.literal}"
    return True, f"boundary derivative formula verified on vertex_set({boundary})"


def check_gauss_green(alphabet, m_max, rng):
    pool = [
        _random_cylinder(alphabet, 0, rng),
        _random_cylinder(alphabet, 1, rng),
        _negated_green(_random_cylinder(alphabet, rng.randint(0, 2), rng)),
        _negated_green(_random_cylinder(alphabet, rng.randint(0, 2), rng)),
    ]
    for u in pool:
        for v in pool:
            report = gauss_green_check(u, v, boundary_level=2)
            if report.residual != 0:
                return False, "Gauss-Green residual is nonzero"
            if any(c != 0 for c in report.conservation_residuals):
                return False, "conservation residual is nonzero"
    return True, f"{len(pool) ** 2} pairs exact at boundary level 2"


def check_harmonic_classification(alphabet, m_max, rng):
    m = min(_level_budget(alphabet, m_max, points=512), 3)
    for boundary in range(m):
        h = _random_cylinder(alphabet, boundary, rng)
        u = restrict(h, m)
        if not classify_harmonic(u, boundary).compatible:
            return False, f"cylinder restriction rejected at boundary {boundary}"
        bumped = list(u.values)
        idx = rng.randrange(len(bumped))
        # a single bumped value breaks constancy on some checked class
        bumped[idx] = bumped[idx] + 1
        if classify_harmonic(LevelFunction(alphabet, m, bumped), boundary).compatible:
            return False, f"perturbed data accepted at boundary {boundary}"
    return True, f"classification matches cylinder constancy at level {m}"


def check_weak_strong_agreement(alphabet, m_max, rng):
    top = min(_level_budget(alphabet, m_max, points=512), 4)
    for _ in range(3):
        f = _random_cylinder(alphabet, rng.randint(0, min(2, top)), rng)
        u = _negated_green(f)
        for m in range(1, top + 1):
            if weak_residual(u, f, boundary_level=0, m=m) != 0:
                return False, f"weak-form residual nonzero at level {m}"
        est = laplacian_estimate(u, f, boundary_level=0, m_max=top)
        for m, r in est.residuals:
            if m >= f.level and r != 0:
                return False, f"strong-form residual nonzero at level {m}"
    return True, f"weak and strong residuals vanish through level {top}"


def check_bvp_round_trip(alphabet, m_max, rng):
    n = alphabet.size
    f = _random_cylinder(alphabet, rng.randint(0, 1), rng)
    zeta = [Fraction(rng.randint(-5, 5)) for _ in range(n)]
    u = solve_dirichlet(f, zeta)
    if u.boundary_values() != zeta:
        return False, "Dirichlet output misses the boundary data"
    top = max(f.level + 1, 2)
    est = laplacian_estimate(u, f, boundary_level=0, m_max=top)
    if any(r != 0 for m, r in est.residuals if m >= f.level):
        return False, "Dirichlet output misses the load"

    xi = [f.cylinder_integral((l,)) for l in alphabet.symbols]
    w = solve_neumann(f, xi)
    for l in alphabet.symbols:
        p = VertexWord(alphabet, (l,))
        if neumann_derivative(w, p, 0).value != xi[l]:
            return False, "Neumann output misses the derivative data"
    bad = list(xi)
    bad[0] = bad[0] + 1
    try:
        solve_neumann(f, bad)
    except IncompatibleBoundaryError as exc:
        if exc.defect[alphabet.format_symbol(0)] != 1:
            return False, "incompatibility defect is wrong"
    else:
        return False, "incompatible data was accepted"
    return True, "both solvers round-trip; incompatible data rejected with exact defect"


def check_projection_interpolation(alphabet, m_max, rng):
    from .functions import CoordinateSeries, project

    u = CoordinateSeries(alphabet, Fraction(1, 2), symbol=0)
    top = min(_level_budget(alphabet, m_max), 4)
    for m in range(top + 1):
        um = project(u, m)
        for w in vertex_words(alphabet, m):
            p = VertexWord(alphabet, w)
            if um.evaluate(p) != u.evaluate(p):
                return False, f"projection moves a vertex value at level {m}"
    return True, f"projection interpolates the vertex values through level {top}"


def check_refinement_stability(alphabet, m_max, rng):
    f = _random_cylinder(alphabet, 1, rng)
    gf = GreenApplication(f)
    level = min(_level_budget(alphabet, m_max, points=256), 2)
    for p in vertex_set(alphabet, level):
        base = gf.evaluate(p)
        if gf.evaluate(p, resolution=max(p.min_level, f.level) + 1) != base:
            return False, f"quadrature value moved under refinement at {p.literal}"
    return True, f"quadrature stable under refinement on vertex_set({level})"


CHECKS = {
    "dual-dirichlet-forms": check_dual_dirichlet_forms,
    "operator-oracle": check_operator_oracle,
    "operator-symmetry": check_operator_symmetry,
    "markov-clamp": check_markov_property,
    "extension-compatibility": check_extension_compatibility,
    "indicator-pairing": check_indicator_pairing,
    "green-identities": check_green_identities,
    "kernel-oracle": check_kernel_oracle,
    "green-derivative": check_green_derivative,
    "gauss-green": check_gauss_green,
    "harmonic-classification": check_harmonic_classification,
    "weak-strong-agreement": check_weak_strong_agreement,
    "bvp-round-trip": check_bvp_round_trip,
    "projection-interpolation": check_projection_interpolation,
    "refinement-stability": check_refinement_stability,
}


def run_suite(n: int, m_max: int = 5, seed: int = 0, checks=None) -> list[CheckResult]:
    """Run the named checks (all by default), deterministically in the seed."""
    alphabet = Alphabet(n)
    names = list(CHECKS) if checks is None else list(checks)
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {unknown}")
    results = []
    for name in names:
        rng = random.Random(seed * 0x9E3779B1 + zlib.crc32(name.encode()))
        try:
            passed, detail = CHECKS[name](alphabet, m_max, rng)
        except Exception as exc:  # a crash is a failure, not an abort
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name=name, passed=passed, detail=detail))
    return results
