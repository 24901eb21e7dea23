"""Difference operators, Dirichlet forms, energy, and minimal extensions.

The level-m difference operator sums, over every level j from the point's
first appearance up to m, the differences to the N-1 points sharing its first
j symbols.  Applying it is matrix-free over cached neighbor index tables; an
explicit (integer) matrix materialisation exists for structural checks, and a
literal inductive implementation of the operator is kept as an oracle.

The Dirichlet form is computed by two independent algorithms that must agree
exactly in rational mode:

* ``operator-form``   -(u, apply(v)) inner product
* ``difference-form`` half the sum of products of pair differences, taken
  once per unordered neighbor pair across all levels.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import scalars
from .errors import LevelMismatchError, LevelOrderError
from .functions import CylinderFunction, LevelFunction, restrict
from .words import Alphabet, VertexWord, min_level_of, vertex_words

OPERATOR_FORM = "operator-form"
DIFFERENCE_FORM = "difference-form"


@lru_cache(maxsize=None)
def _neighbor_lists(alphabet: Alphabet, m: int) -> tuple[tuple[int, ...], ...]:
    """For each level-m word index, the indices of all its neighbors across
    levels j = min_level..m (each exactly once)."""
    n = alphabet.size
    out = []
    for idx, w in enumerate(itertools.product(range(n), repeat=m + 1)):
        kappa = min_level_of(w)
        nbrs = []
        for j in range(kappa, m + 1):
            block = n ** (m + 1 - j)
            rep = (block - 1) // (n - 1)  # index weight of a constant tail
            prefix_num = idx // block
            for l in range(n):
                if l != w[j]:
                    nbrs.append(prefix_num * block + l * rep)
        out.append(tuple(nbrs))
    return tuple(out)


@lru_cache(maxsize=None)
def _difference_pairs(alphabet: Alphabet, m: int) -> tuple[tuple[int, int], ...]:
    """Each unordered neighbor pair of levels 0..m, as level-m word indices."""
    n = alphabet.size
    pairs = []
    for i in range(m + 1):
        block = n ** (m + 1 - i)
        rep = (block - 1) // (n - 1)
        for c_num in range(n**i):
            base = c_num * block
            for l1 in range(n):
                for l2 in range(l1 + 1, n):
                    pairs.append((base + l1 * rep, base + l2 * rep))
    return tuple(pairs)


def _require_level(u: LevelFunction, m: int):
    if u.level != m:
        raise LevelMismatchError(f"function lives on level {u.level}, operator needs {m}")


def apply_difference_operator(m: int, u: LevelFunction) -> LevelFunction:
    """Closed-form application: per point, the sum of neighbor differences
    over all levels from its first appearance up to m."""
    _require_level(u, m)
    values = u.values
    out = []
    for idx, nbrs in enumerate(_neighbor_lists(u.alphabet, m)):
        centre = values[idx]
        total = scalars.zero(u.mode)
        for q in nbrs:
            total += values[q]
        out.append(total - len(nbrs) * centre)
    return LevelFunction(u.alphabet, m, out)


def apply_difference_operator_inductive(m: int, u: LevelFunction) -> LevelFunction:
    """Literal inductive definition; agrees with the closed form exactly.

    Kept as the independent oracle for the closed-form implementation.
    """
    _require_level(u, m)
    n = u.alphabet.size
    values = u.values

    if m == 0:
        out = []
        for l in range(n):
            acc = scalars.zero(u.mode)
            for k in range(n):
                if k != l:
                    acc += values[k]
            out.append(acc - (n - 1) * values[l])
        return LevelFunction(u.alphabet, 0, out)

    # restriction to the previous vertex set: pad each shorter word by its tail
    prev_values = []
    for w in itertools.product(range(n), repeat=m):
        padded = w + (w[-1],)
        prev_values.append(values[_word_index(padded, n)])
    prev = LevelFunction(u.alphabet, m - 1, prev_values)
    h_prev = apply_difference_operator_inductive(m - 1, prev)

    out = []
    for idx, w in enumerate(itertools.product(range(n), repeat=m + 1)):
        bracket = scalars.zero(u.mode)
        for l in range(n):
            if l != w[-1]:
                bracket += values[_word_index(w[:m] + (l,), n)]
        bracket -= (n - 1) * values[idx]
        if w[-1] == w[-2]:  # the point already lives one level down
            parent = _word_index(w[:m], n)
            out.append(h_prev.values[parent] + bracket)
        else:
            out.append(bracket)
    return LevelFunction(u.alphabet, m, out)


def _word_index(w, n: int) -> int:
    value = 0
    for s in w:
        value = value * n + s
    return value


def difference_at(evaluate, point: VertexWord, m: int):
    """Closed-form operator value at a single point of a sampled function."""
    if m < point.min_level:
        raise LevelMismatchError(
            f"point {point.literal} is not in vertex_set({m})"
        )
    centre = evaluate(point)
    total = None
    for j in range(point.min_level, m + 1):
        for q in point.neighbors(j):
            term = evaluate(q) - centre
            total = term if total is None else total + term
    return total


def operator_matrix(alphabet: Alphabet, m: int) -> dict:
    """Explicit sparse (dict-of-index-pairs) integer matrix of the level-m
    operator.  Debug/diagnostics only; applications stay matrix-free."""
    entries: dict[tuple[int, int], int] = {}
    for idx, nbrs in enumerate(_neighbor_lists(alphabet, m)):
        entries[(idx, idx)] = -len(nbrs)
        for q in nbrs:
            entries[(idx, q)] = entries.get((idx, q), 0) + 1
    return entries


@dataclass(frozen=True)
class DirichletReport:
    level: int
    value: object
    algorithm: str


def dirichlet_form(m: int, u: LevelFunction, v: LevelFunction,
                   algorithm: str = OPERATOR_FORM) -> DirichletReport:
    """The symmetric bilinear form induced by the level-m operator."""
    _require_level(u, m)
    _require_level(v, m)
    if u.alphabet != v.alphabet:
        raise LevelMismatchError("operands live over different alphabets")
    if algorithm == OPERATOR_FORM:
        hv = apply_difference_operator(m, v)
        total = scalars.zero(u.mode)
        for a, b in zip(u.values, hv.values):
            total += a * b
        return DirichletReport(m, -total, algorithm)
    if algorithm == DIFFERENCE_FORM:
        uu, vv = u.values, v.values
        total = scalars.zero(u.mode)
        for i, j in _difference_pairs(u.alphabet, m):
            total += (uu[i] - uu[j]) * (vv[i] - vv[j])
        return DirichletReport(m, total, algorithm)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def energy_of(h: CylinderFunction):
    """Exact energy of a cylinder function: the level-L form of its restriction,
    which the compatible operator family never increases afterwards."""
    u = restrict(h, h.level)
    return dirichlet_form(h.level, u, u, OPERATOR_FORM).value


@dataclass(frozen=True)
class EnergySequence:
    """Level energies of a sampled function, with monotonicity diagnostics.

    The true energy is the limit; for non-cylinder samplers only the monotone
    sequence and its increments are reported, never a claimed exact limit.
    """

    entries: tuple  # (m, value) pairs
    increments: tuple
    monotone: bool
    limit_lower_bound: object


def energy_sequence(u, m_max: int, cap=None) -> EnergySequence:
    entries = []
    for m in range(m_max + 1):
        um = restrict(u, m, cap)
        entries.append((m, dirichlet_form(m, um, um, OPERATOR_FORM).value))
    increments = tuple(entries[i + 1][1] - entries[i][1] for i in range(len(entries) - 1))
    monotone = all(g >= 0 for g in increments)
    return EnergySequence(
        entries=tuple(entries),
        increments=increments,
        monotone=monotone,
        limit_lower_bound=entries[-1][1],
    )


@dataclass(frozen=True)
class ExtensionCertificate:
    source_level: int
    target_level: int
    source_energy: object
    extended_energy: object
    energy_equal: bool
    interior_residual: object  # max |operator value| over points new above the source level
    perturbation_margins: tuple
    seed: int


def minimizer_extension(u: LevelFunction, n: int, samples: int = 8,
                        seed: int = 0) -> tuple[LevelFunction, ExtensionCertificate]:
    """Extend level-m data to level n > m by cylinder constancy and certify
    minimality: energies match exactly, the operator vanishes at every interior
    (new) point, and sampled constrained perturbations never lower the energy.
    """
    m = u.level
    if n <= m:
        raise LevelOrderError(f"extension target {n} must exceed source level {m}")
    source_energy = dirichlet_form(m, u, u, OPERATOR_FORM).value

    ext = restrict(CylinderFunction(u.alphabet, m, u.values), n)
    extended_energy = dirichlet_form(n, ext, ext, OPERATOR_FORM).value

    applied = apply_difference_operator(n, ext)
    interior = [
        abs(applied.values[idx])
        for idx, w in enumerate(vertex_words(u.alphabet, n))
        if min_level_of(w) > m
    ]
    interior_residual = max(interior) if interior else scalars.zero(u.mode)

    rng = random.Random(seed)
    margins = []
    for _ in range(samples):
        pert = list(ext.values)
        for idx, w in enumerate(vertex_words(u.alphabet, n)):
            if min_level_of(w) > m:
                pert[idx] = pert[idx] + _random_scalar(rng, u.mode)
        pv = LevelFunction(u.alphabet, n, pert)
        margins.append(dirichlet_form(n, pv, pv, OPERATOR_FORM).value - extended_energy)

    certificate = ExtensionCertificate(
        source_level=m,
        target_level=n,
        source_energy=source_energy,
        extended_energy=extended_energy,
        energy_equal=extended_energy == source_energy,
        interior_residual=interior_residual,
        perturbation_margins=tuple(margins),
        seed=seed,
    )
    return ext, certificate


def _random_scalar(rng: random.Random, mode):
    if mode == scalars.FLOAT64:
        return rng.uniform(-2.0, 2.0)
    return Fraction(rng.randint(-6, 6), rng.randint(1, 4))
