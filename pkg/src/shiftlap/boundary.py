"""Boundary calculus: renormalized Laplacian diagnostics, weak-form residuals,
harmonic classification, Neumann derivatives, the Gauss-Green identity, and
the Dirichlet/Neumann solvers.

Every function here takes the boundary level explicitly; nothing fixes a
global boundary.  Sign conventions, once and for all:

* the Neumann derivative is the limit of minus the level operator values,
* the Laplacian of a Green image is minus its load,
* solver output is ``harmonic part - Green image of the load``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import scalars
from .errors import (
    ArityError,
    BoundaryMismatchError,
    IncompatibleBoundaryError,
    LevelOrderError,
    LevelTooSmallError,
)
from .forms import apply_difference_operator, difference_at
from .functions import Constant, CylinderFunction, LevelFunction, integrate_product, restrict
from .green import GreenApplication, green_pair_integral
from .words import VertexWord, _check_same_alphabet, min_level_of, vertex_set, vertex_words


class SolutionFunction:
    """A boundary-value solution: harmonic cylinder part minus a Green image.

    Its restriction to the constant sequences equals the harmonic part's
    values there, because Green images vanish on them.
    """

    def __init__(self, harmonic: CylinderFunction, green: GreenApplication | None):
        if green is not None:
            _check_same_alphabet(harmonic.alphabet, green.alphabet)
        self.harmonic = harmonic
        self.green = green
        self.alphabet = harmonic.alphabet
        self.mode = green.mode if green is not None else harmonic.mode

    @property
    def load(self):
        """The Laplacian of this function (None means identically zero)."""
        return self.green.load if self.green is not None else None

    def evaluate(self, x: VertexWord, cap=None):
        value = self.harmonic.evaluate(x)
        if self.green is not None:
            value = value - self.green.evaluate(x, cap=cap)
        return value

    def boundary_values(self) -> list:
        """Values on the constant sequences, exact by construction."""
        return [
            self.harmonic.evaluate(VertexWord(self.alphabet, (l,)))
            for l in self.alphabet.symbols
        ]

    def __repr__(self):
        tag = "0" if self.green is None else f"level-{getattr(self.load, 'level', '?')} load"
        return f"SolutionFunction(harmonic level {self.harmonic.level}, load {tag})"


def _as_parts(u):
    """Normalise inputs to (cylinder part, green application or None)."""
    if isinstance(u, SolutionFunction):
        return u.harmonic, u.green
    if isinstance(u, CylinderFunction):
        return u, None
    raise TypeError(f"expected a cylinder function or solution, got {type(u).__name__}")


def level_operator_values(u, m: int, cap=None) -> LevelFunction:
    """Exact level-m operator values of u across the whole vertex set."""
    if isinstance(u, CylinderFunction):
        return apply_difference_operator(m, restrict(u, m, cap))
    if isinstance(u, GreenApplication):
        return u.h_values(m, cap)
    if isinstance(u, SolutionFunction):
        values = apply_difference_operator(m, restrict(u.harmonic, m, cap))
        if u.green is not None:
            values = values - u.green.h_values(m, cap)
        return values
    raise TypeError(f"no exact operator values for {type(u).__name__}")


def _exact_neumann_value(u, p: VertexWord):
    if isinstance(u, CylinderFunction):
        return -difference_at(u.evaluate, p, max(u.level, p.min_level))
    if isinstance(u, GreenApplication):
        return u.neumann_value(p)
    if isinstance(u, SolutionFunction):
        value = -difference_at(u.harmonic.evaluate, p, max(u.harmonic.level, p.min_level))
        if u.green is not None:
            value = value - u.green.neumann_value(p)
        return value
    raise TypeError(f"no exact boundary derivative for {type(u).__name__}")


@dataclass(frozen=True)
class LaplacianEstimate:
    """Residual table for the claim "the Laplacian of u is f over boundary M".

    ``residuals[k]`` is the exact maximum of |N**(m+1) * (level operator)(p)
    - f(p)| over the level-m points off the boundary.  A membership claim
    needs the residuals heading to zero; ``bounds`` carries the load's
    oscillation bound when it declares a modulus of continuity.
    """

    boundary_level: int
    residuals: tuple  # (m, value) pairs
    bounds: tuple | None
    nonincreasing: bool

    @property
    def all_zero(self) -> bool:
        return all(r == 0 for _, r in self.residuals)


def laplacian_estimate(u, f, boundary_level: int, m_max: int, cap=None) -> LaplacianEstimate:
    if m_max < boundary_level + 1:
        raise ValueError("need at least one level beyond the boundary")
    alphabet = f.alphabet
    n = alphabet.size
    residuals = []
    for m in range(boundary_level + 1, m_max + 1):
        hv = level_operator_values(u, m, cap)
        scale = n ** (m + 1)
        worst = None
        for idx, w in enumerate(vertex_words(alphabet, m, cap)):
            if min_level_of(w) <= boundary_level:
                continue
            gap = abs(scale * hv.values[idx] - f.evaluate(VertexWord(alphabet, w)))
            if worst is None or gap > worst:
                worst = gap
        residuals.append((m, worst))
    bounds = None
    if getattr(f, "modulus", None) is not None:
        bounds = tuple((m, f.modulus.oscillation(m + 1)) for m, _ in residuals)
    values = [r for _, r in residuals]
    nonincreasing = all(b <= a for a, b in zip(values, values[1:]))
    return LaplacianEstimate(
        boundary_level=boundary_level,
        residuals=tuple(residuals),
        bounds=bounds,
        nonincreasing=nonincreasing,
    )


def weak_residual(u, f, boundary_level: int, m: int, cap=None):
    """Worst pairing defect against the level-m indicator test functions off
    the boundary: |energy pairing + load integral|, both sides exact.

    The energy pairing against such an indicator is minus the level operator
    value at its point, so no limits are involved.
    """
    if m < boundary_level + 1:
        raise LevelTooSmallError("test level must exceed the boundary level")
    alphabet = u.alphabet
    hv = level_operator_values(u, m, cap)
    worst = None
    for idx, w in enumerate(vertex_words(alphabet, m, cap)):
        if min_level_of(w) <= boundary_level:
            continue
        pairing = -hv.values[idx]
        gap = abs(pairing + f.cylinder_integral(w))
        if worst is None or gap > worst:
            worst = gap
    return worst


@dataclass(frozen=True)
class HarmonicVerdict:
    compatible: bool
    boundary_level: int
    cylinder_values: dict | None  # word literal (length M+1) -> value
    violation: str | None


def classify_harmonic(u: LevelFunction, boundary_level: int) -> HarmonicVerdict:
    """Decide whether level data can be harmonic for the given boundary.

    Harmonic functions with boundary level M are exactly the functions
    constant on every cylinder of length M+1, so the balance equations at the
    points new at each level j > M force equality across each level-j class.
    The verdict returns the witnessing cylinder table, or the first violated
    class equation.
    """
    m = u.level
    if m <= boundary_level:
        raise LevelOrderError("classification needs data strictly finer than the boundary")
    alphabet = u.alphabet
    n = alphabet.size
    for j in range(boundary_level + 1, m + 1):
        block = n ** (m + 1 - j)
        rep = (block - 1) // (n - 1)
        for c_num in range(n**j):
            base = c_num * block
            members = [u.values[base + l * rep] for l in range(n)]
            if any(v != members[0] for v in members[1:]):
                literal = _class_literal(alphabet, c_num, j)
                return HarmonicVerdict(
                    compatible=False,
                    boundary_level=boundary_level,
                    cylinder_values=None,
                    violation=(
                        f"level-{j} class [{literal}] carries values "
                        f"{[scalars.format_scalar(v) for v in members]}; "
                        "a harmonic function must be constant on it"
                    ),
                )
    depth = boundary_level + 1
    block = n ** (m + 1 - depth)
    rep = (block - 1) // (n - 1)
    table = {}
    for c_num in range(n**depth):
        literal = _class_literal(alphabet, c_num, depth)
        tail = c_num % n  # padding symbol equals the word's last symbol
        table[literal] = u.values[c_num * block + tail * rep]
    return HarmonicVerdict(
        compatible=True,
        boundary_level=boundary_level,
        cylinder_values=table,
        violation=None,
    )


def _class_literal(alphabet, c_num: int, length: int) -> str:
    digits = []
    for _ in range(length):
        digits.append(c_num % alphabet.size)
        c_num //= alphabet.size
    return "".join(alphabet.format_symbol(s) for s in reversed(digits))


@dataclass(frozen=True)
class NeumannDerivative:
    point: VertexWord
    boundary_level: int
    value: object
    exact: bool
    tail_bound: object  # 0 for exact inputs, None when no modulus is declared
    sequence: tuple | None


def neumann_derivative(u, p: VertexWord, boundary_level: int, m_max=None,
                       cap=None) -> NeumannDerivative:
    """Boundary derivative at p: the limit of minus the level operator values.

    Exact for cylinder functions (the increments vanish once the level passes
    the cylinder length), Green images, and solutions; for a plain sampler
    the truncated sequence is reported with a geometric tail bound derived
    from the declared modulus (None if it declares none).
    """
    if p.min_level > boundary_level:
        raise BoundaryMismatchError(
            f"{p.literal} first appears at level {p.min_level}, outside boundary "
            f"vertex_set({boundary_level})"
        )
    if isinstance(u, (CylinderFunction, GreenApplication, SolutionFunction)):
        value = _exact_neumann_value(u, p)
        return NeumannDerivative(
            point=p,
            boundary_level=boundary_level,
            value=value,
            exact=True,
            tail_bound=scalars.zero(getattr(u, "mode", scalars.RATIONAL)),
            sequence=None,
        )
    if m_max is None:
        raise ValueError("sampled inputs need m_max for the truncated sequence")
    seq = []
    for m in range(p.min_level, m_max + 1):
        seq.append((m, -difference_at(u.evaluate, p, m)))
    modulus = getattr(u, "modulus", None)
    tail = None
    if modulus is not None:
        tail = (u.alphabet.size - 1) * modulus.tail(m_max + 1)
    return NeumannDerivative(
        point=p,
        boundary_level=boundary_level,
        value=seq[-1][1],
        exact=False,
        tail_bound=tail,
        sequence=tuple(seq),
    )


@dataclass(frozen=True)
class GaussGreenReport:
    boundary_level: int
    lhs: object
    rhs: object
    residual: object
    conservation_residuals: tuple  # one per argument: |sum of derivatives - load integral|


def gauss_green_check(u, v, boundary_level: int, cap=None) -> GaussGreenReport:
    """Both sides of the boundary identity

        integral(v * Lap u - u * Lap v) = sum over boundary points of
        (v * du - u * dv),

    with every ingredient exact, plus the conservation identity
    ``sum of boundary derivatives = integral of the Laplacian`` per argument.
    """
    hu, gu = _as_parts(u)
    hv, gv = _as_parts(v)
    _check_same_alphabet(hu.alphabet, hv.alphabet)
    for part in (hu, hv):
        if part.level > boundary_level:
            raise BoundaryMismatchError(
                f"harmonic part of cylinder length {part.level + 1} needs boundary "
                f"level >= {part.level}, got {boundary_level}"
            )
    fu = gu.load if gu is not None else None
    fv = gv.load if gv is not None else None
    for load in (fu, fv):
        if load is not None and not isinstance(load, CylinderFunction):
            raise ValueError("the exact Gauss-Green check needs cylinder loads")

    mode = getattr(fu, "mode", None) or getattr(fv, "mode", None) or hu.mode
    lhs = scalars.zero(mode)
    if fu is not None:
        lhs = lhs + integrate_product(hv, fu)
        if fv is not None:
            lhs = lhs - green_pair_integral(fu, fv, cap)
    if fv is not None:
        lhs = lhs - integrate_product(hu, fv)
        if fu is not None:
            lhs = lhs + green_pair_integral(fv, fu, cap)

    boundary = vertex_set(hu.alphabet, boundary_level, cap)
    rhs = scalars.zero(mode)
    du_sum = scalars.zero(mode)
    dv_sum = scalars.zero(mode)
    for p in boundary:
        du = _exact_neumann_value(u, p)
        dv = _exact_neumann_value(v, p)
        rhs = rhs + _evaluate_parts(hv, gv, p, cap) * du - _evaluate_parts(hu, gu, p, cap) * dv
        du_sum = du_sum + du
        dv_sum = dv_sum + dv

    int_fu = fu.cylinder_integral(()) if fu is not None else scalars.zero(mode)
    int_fv = fv.cylinder_integral(()) if fv is not None else scalars.zero(mode)
    conservation = (abs(du_sum - int_fu), abs(dv_sum - int_fv))
    return GaussGreenReport(
        boundary_level=boundary_level,
        lhs=lhs,
        rhs=rhs,
        residual=abs(lhs - rhs),
        conservation_residuals=conservation,
    )


def _evaluate_parts(harmonic, green, p, cap):
    value = harmonic.evaluate(p)
    if green is not None:
        value = value - green.evaluate(p, cap=cap)
    return value


def _cylinder_load(f):
    if isinstance(f, Constant):  # keeps solver output pointwise evaluable
        return CylinderFunction.constant(f.alphabet, f.value)
    return f


def solve_dirichlet(f, zeta) -> SolutionFunction:
    """Solve "Laplacian u = f with prescribed values on the constant
    sequences": the harmonic interpolant of the boundary data minus the Green
    image of the load.  Unique up to harmonic functions vanishing there.
    """
    f = _cylinder_load(f)
    alphabet = f.alphabet
    zeta = list(zeta)
    if len(zeta) != alphabet.size:
        raise ArityError(
            f"boundary data needs {alphabet.size} values (one per symbol), got {len(zeta)}"
        )
    harmonic = CylinderFunction(alphabet, 0, zeta)
    return SolutionFunction(harmonic, GreenApplication(f))


def solve_neumann(f, xi) -> SolutionFunction:
    """Solve "Laplacian u = f with prescribed boundary derivatives at the
    constant sequences".

    Solvable exactly when each prescribed derivative equals the load's
    integral over the matching first-symbol cylinder; the solution is then
    minus the Green image.  Incompatible data raises, carrying the exact
    defect per symbol; no least-squares fallback is attempted.
    """
    f = _cylinder_load(f)
    alphabet = f.alphabet
    xi = list(xi)
    if len(xi) != alphabet.size:
        raise ArityError(
            f"boundary data needs {alphabet.size} values (one per symbol), got {len(xi)}"
        )
    defect = {
        alphabet.format_symbol(l): xi[l] - f.cylinder_integral((l,))
        for l in alphabet.symbols
    }
    if any(gap != 0 for gap in defect.values()):
        shown = {k: scalars.format_scalar(v) for k, v in defect.items()}
        raise IncompatibleBoundaryError(
            "prescribed derivatives must equal the load's first-symbol cylinder "
            f"integrals; defect vector: {shown}",
            defect=defect,
        )
    zero = scalars.zero(f.mode)
    harmonic = CylinderFunction(alphabet, 0, [zero] * alphabet.size)
    return SolutionFunction(harmonic, GreenApplication(f))
