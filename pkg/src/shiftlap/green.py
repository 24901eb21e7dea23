"""Green's function and Green's operator, evaluated in exact arithmetic.

The kernel is a finite sum of level terms: the level-m term couples the
level-m cylinders that the two arguments select, with weight 2/N on the
diagonal and 1/N across neighbors.  A term survives only if both arguments
change symbol at position m, so for an eventually constant argument the sum
truncates at the level where its tail begins.  That truncation is what turns
the operator integral into a finite, exact sum over cylinders.
"""

from __future__ import annotations

import itertools

from . import scalars
from .errors import DomainError, LevelTooSmallError, SamePointError
from .functions import Constant, CylinderFunction, LevelFunction
from .scalars import RATIONAL
from .words import (
    Alphabet,
    VertexWord,
    _check_same_alphabet,
    check_point_cap,
    first_disagreement,
    min_level_of,
    new_vertex_words,
    vertex_words,
)


def green_matrix_entry(m: int, p: VertexWord, q: VertexWord, mode=RATIONAL):
    """Entry of the level-m coupling matrix: 2/N on the diagonal, 1/N for
    distinct points sharing their first m symbols, 0 otherwise."""
    _check_same_alphabet(p.alphabet, q.alphabet)
    if p.min_level != m or q.min_level != m:
        raise DomainError(
            f"level-{m} matrix entries need points first appearing at level {m}; "
            f"got {p.literal} (level {p.min_level}) and {q.literal} (level {q.min_level})"
        )
    n = p.alphabet.size
    if p == q:
        return scalars.ratio(2, n, mode)
    if p.prefix(m) == q.prefix(m):
        return scalars.ratio(1, n, mode)
    return scalars.zero(mode)


def green_kernel(x: VertexWord, y: VertexWord, mode=RATIONAL):
    """g(x, y) for distinct points, by the reduced level-term rule."""
    _check_same_alphabet(x.alphabet, y.alphabet)
    if x == y:
        raise SamePointError(f"the kernel is not defined on the diagonal at {x.literal}")
    rho = first_disagreement(x, y)
    n = x.alphabet.size
    total = scalars.zero(mode)
    top = min(rho - 1, x.min_level, y.min_level)
    for m in range(1, top + 1):
        if x.sequence_symbol(m) != x.sequence_symbol(m + 1) and (
            y.sequence_symbol(m) != y.sequence_symbol(m + 1)
        ):
            hits = 2 if x.sequence_symbol(m + 1) == y.sequence_symbol(m + 1) else 1
            total += scalars.ratio(hits, n, mode)
    return total


def green_kernel_double_sum(x: VertexWord, y: VertexWord, mode=RATIONAL):
    """Literal double sum over the level matrices; the oracle for green_kernel."""
    _check_same_alphabet(x.alphabet, y.alphabet)
    if x == y:
        raise SamePointError(f"the kernel is not defined on the diagonal at {x.literal}")
    alphabet = x.alphabet
    rho = first_disagreement(x, y)
    total = scalars.zero(mode)
    for m in range(1, rho):
        for r_word in new_vertex_words(alphabet, m):
            if x.prefix(m + 1) != r_word:
                continue  # indicator of r's cylinder vanishes at x
            r = VertexWord(alphabet, r_word)
            for s_word in new_vertex_words(alphabet, m):
                if y.prefix(m + 1) != s_word:
                    continue
                s = VertexWord(alphabet, s_word)
                total += green_matrix_entry(m, r, s, mode)
    return total


def _kernel_on_cylinder(x_prefix, x_min_level: int, w, n: int, mode):
    """Constant value of g(x, .) on the cylinder of word w, off the point x.

    ``x_prefix`` is x's sequence truncated to len(w) symbols; all level terms
    above x's first-appearance level vanish, so the prefixes decide everything.
    """
    top = x_min_level
    for i in range(len(w)):
        if x_prefix[i] != w[i]:
            top = min(top, i)  # level terms need agreement through position m
            break
    hits = 0
    doubles = 0
    for m in range(1, top + 1):
        if x_prefix[m - 1] != x_prefix[m] and w[m - 1] != w[m]:
            if x_prefix[m] == w[m]:
                doubles += 1
            else:
                hits += 1
    if hits == 0 and doubles == 0:
        return scalars.zero(mode)
    return scalars.ratio(hits + 2 * doubles, n, mode)


class GreenApplication:
    """The Green's operator applied to a fixed load.

    Pointwise evaluation is exact and only available for cylinder loads
    (constants are normalised to them); the operator-image identities (level
    operator values, boundary derivatives) are exact for every load that
    integrates exactly over cylinders.
    """

    def __init__(self, load):
        from .functions import Constant

        if isinstance(load, Constant):
            load = CylinderFunction.constant(load.alphabet, load.value)
        if load.cylinder_integral(()) is None:
            raise ValueError(
                f"{type(load).__name__} does not integrate exactly over cylinders; "
                "project it to a cylinder function first"
            )
        self.load = load
        self.alphabet = load.alphabet
        self.mode = load.mode

    @property
    def pointwise(self) -> bool:
        return isinstance(self.load, CylinderFunction)

    def evaluate(self, x: VertexWord, resolution=None, cap=None):
        """Exact value at a vertex point, as a finite cylinder quadrature.

        ``resolution`` may force a finer quadrature grid than the natural one;
        the result must not change (refinement stability).
        """
        if not self.pointwise:
            raise ValueError(
                "pointwise Green evaluation needs a cylinder load; project the sampler first"
            )
        _check_same_alphabet(self.alphabet, x.alphabet)
        n = self.alphabet.size
        depth = max(x.min_level, self.load.level)
        if resolution is not None:
            depth = max(depth, resolution)
        check_point_cap(self.alphabet, depth, cap)
        x_prefix = x.prefix(depth + 1)
        x_min = x.min_level
        weight = scalars.reciprocal_power(n, depth + 1, self.mode)
        total = scalars.zero(self.mode)
        for w in itertools.product(range(n), repeat=depth + 1):
            kernel = _kernel_on_cylinder(x_prefix, x_min, w, n, self.mode)
            if kernel:
                total += kernel * self.load.value_on_word(w)
        return total * weight

    def h_values(self, m: int, cap=None):
        return green_h_values(self.load, m, cap)

    def neumann_value(self, p: VertexWord):
        """Boundary derivative of the operator image: zero off the constant
        sequences, minus the load's first-cylinder integral at them."""
        _check_same_alphabet(self.alphabet, p.alphabet)
        if p.min_level >= 1:
            return scalars.zero(self.mode)
        return -self.load.cylinder_integral(p.symbols[:1])


def apply_green(load) -> GreenApplication:
    """Wrap a load for exact application of the Green's operator."""
    return GreenApplication(load)


def green_h_values(load, m: int, cap=None):
    """Exact level-m operator values of the Green image, straight from the
    load's cylinder integrals (no kernel evaluation involved).

    At a point with a symbol change the value is minus the integral over the
    point's level-m cylinder; at a constant point the first-symbol cylinder
    integral enters with opposite sign as well.
    """
    if m < 0:
        raise LevelTooSmallError("operator levels are nonnegative")
    alphabet = load.alphabet
    check_point_cap(alphabet, m, cap)
    values = []
    for w in vertex_words(alphabet, m, cap):
        own = load.cylinder_integral(w)
        if min_level_of(w) >= 1:
            values.append(-own)
        else:
            values.append(load.cylinder_integral(w[:1]) - own)
    return LevelFunction(alphabet, m, values)


def green_pair_integral(a: CylinderFunction, b: CylinderFunction, cap=None):
    """Exact integral of (Green image of b) against a.

    Splits the level expansion at the common resolution: levels up to it are
    finite class sums; above it both factors are constant on every class, and
    the remaining levels sum to a closed geometric form.  The expression is
    symmetric in the two loads.
    """
    _check_same_alphabet(a.alphabet, b.alphabet)
    if a.mode != b.mode:
        raise ValueError("cannot mix arithmetic modes in one integral")
    alphabet = a.alphabet
    n = alphabet.size
    top = max(a.level, b.level)
    check_point_cap(alphabet, top, cap)
    mode = a.mode
    total = scalars.zero(mode)
    for m in range(1, top + 1):
        for c in itertools.product(range(n), repeat=m):
            members = [c + (l,) for l in range(n) if l != c[-1]]
            a_ints = [a.cylinder_integral(r) for r in members]
            b_ints = [b.cylinder_integral(s) for s in members]
            for i, ia in enumerate(a_ints):
                for j, ib in enumerate(b_ints):
                    hits = 2 if i == j else 1
                    total += scalars.ratio(hits, n, mode) * ia * ib
    tail = scalars.zero(mode)
    for w in itertools.product(range(n), repeat=top + 1):
        tail += a.value_on_word(w) * b.value_on_word(w)
    return total + tail * scalars.reciprocal_power(n, 2 * top + 3, mode)
