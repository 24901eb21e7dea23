"""Function spaces on the shift space.

Three representations cover everything the calculus needs:

* :class:`LevelFunction` -- a finite vector of values on one vertex set.
* :class:`CylinderFunction` -- a function constant on cylinders of a fixed
  length.  These are the energy minimizers and the only continuous functions
  with an exact finite description.
* samplers (:class:`Constant`, :class:`CoordinateSeries`,
  :class:`PointwiseSampler`) -- pointwise evaluators for continuous functions
  that are not locally constant.  The built-in families also integrate
  exactly over cylinders, which is what the Green machinery needs.

A general continuous function enters the system only through a sampler;
projecting it to a cylinder function of increasing level is the canonical
finite approximation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import scalars
from .scalars import RATIONAL
from .words import (
    Alphabet,
    VertexWord,
    _check_same_alphabet,
    check_point_cap,
    vertex_words,
)


@dataclass(frozen=True)
class GeometricModulus:
    """Declares ``oscillation(length) <= amplitude * ratio**length``.

    ``oscillation(length)`` bounds sup |u(x) - u(y)| over x, y in any common
    cylinder of that length.  ``ratio`` must lie in [0, 1) so tails are
    summable in closed form.
    """

    amplitude: object
    ratio: object

    def __post_init__(self):
        if not 0 <= self.ratio < 1:
            raise ValueError("modulus ratio must lie in [0, 1)")

    def oscillation(self, length: int):
        return self.amplitude * self.ratio**length

    def tail(self, length: int):
        """sum_{i >= length} oscillation(i), exact for rational data."""
        if self.ratio == 0:
            return self.amplitude * 0
        return self.amplitude * self.ratio**length / (1 - self.ratio)


class LevelFunction:
    """A real-valued function on one vertex set, stored per word index."""

    __slots__ = ("alphabet", "level", "values", "mode")

    def __init__(self, alphabet: Alphabet, level: int, values, mode=None):
        values = list(values)
        expected = alphabet.size ** (level + 1)
        if len(values) != expected:
            raise ValueError(
                f"level {level} over {alphabet.size} symbols needs {expected} values, "
                f"got {len(values)}"
            )
        self.alphabet = alphabet
        self.level = level
        self.values = values
        self.mode = scalars.mode_of_values(values, declared=mode)

    def value_at(self, point: VertexWord):
        _check_same_alphabet(self.alphabet, point.alphabet)
        return self.values[point.embed(self.level).index()]

    def _binary(self, other, op):
        if (
            not isinstance(other, LevelFunction)
            or other.alphabet != self.alphabet
            or other.level != self.level
        ):
            raise ValueError("level functions must share alphabet and level")
        return LevelFunction(
            self.alphabet,
            self.level,
            [op(a, b) for a, b in zip(self.values, other.values)],
        )

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def scaled(self, factor):
        return LevelFunction(self.alphabet, self.level, [factor * v for v in self.values])

    def __eq__(self, other):
        if not isinstance(other, LevelFunction):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.level == other.level
            and self.values == other.values
        )

    def __repr__(self):
        return f"LevelFunction(level={self.level}, N={self.alphabet.size})"


class CylinderFunction:
    """A function constant on all cylinders of length ``level + 1``."""

    __slots__ = ("alphabet", "level", "values", "mode")

    def __init__(self, alphabet: Alphabet, level: int, values, mode=None):
        values = list(values)
        expected = alphabet.size ** (level + 1)
        if len(values) != expected:
            raise ValueError(
                f"a level-{level} cylinder function over {alphabet.size} symbols needs "
                f"{expected} values, got {len(values)}"
            )
        self.alphabet = alphabet
        self.level = level
        self.values = values
        self.mode = scalars.mode_of_values(values, declared=mode)

    @classmethod
    def constant(cls, alphabet: Alphabet, value) -> "CylinderFunction":
        return cls(alphabet, 0, [value] * alphabet.size)

    def evaluate(self, point: VertexWord):
        _check_same_alphabet(self.alphabet, point.alphabet)
        return self.values[_prefix_index(point.prefix(self.level + 1), self.alphabet.size)]

    def value_on_word(self, symbols: tuple[int, ...]):
        """Value on the cylinder of any word of length >= level + 1."""
        return self.values[_prefix_index(symbols[: self.level + 1], self.alphabet.size)]

    def cylinder_integral(self, prefix: tuple[int, ...]):
        """Exact integral over the cylinder with the given prefix."""
        n = self.alphabet.size
        depth = self.level + 1
        if len(prefix) >= depth:
            weight = scalars.reciprocal_power(n, len(prefix), self.mode)
            return self.values[_prefix_index(prefix[:depth], n)] * weight
        weight = scalars.reciprocal_power(n, depth, self.mode)
        total = scalars.zero(self.mode)
        for tail in itertools.product(range(n), repeat=depth - len(prefix)):
            total += self.values[_prefix_index(prefix + tail, n)]
        return total * weight

    @property
    def modulus(self):
        return None

    def __eq__(self, other):
        if not isinstance(other, CylinderFunction):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.level == other.level
            and self.values == other.values
        )

    def __repr__(self):
        return f"CylinderFunction(level={self.level}, N={self.alphabet.size})"


def _prefix_index(symbols, n: int) -> int:
    value = 0
    for s in symbols:
        value = value * n + s
    return value


class Sampler:
    """Pointwise evaluator for a continuous function.

    Implementations must be deterministic.  ``cylinder_integral`` returns the
    exact integral over a cylinder when the family admits one, else ``None``;
    ``modulus`` optionally declares a geometric modulus of continuity.
    """

    alphabet: Alphabet
    mode = RATIONAL
    modulus = None

    def evaluate(self, point: VertexWord):
        raise NotImplementedError

    def cylinder_integral(self, prefix: tuple[int, ...]):
        return None


class Constant(Sampler):
    def __init__(self, alphabet: Alphabet, value):
        self.alphabet = alphabet
        self.value = value
        self.mode = scalars.mode_of_values([value])
        self.modulus = GeometricModulus(scalars.zero(self.mode), 0)

    def evaluate(self, point: VertexWord):
        _check_same_alphabet(self.alphabet, point.alphabet)
        return self.value

    def cylinder_integral(self, prefix):
        return self.value * scalars.reciprocal_power(self.alphabet.size, len(prefix), self.mode)


class CoordinateSeries(Sampler):
    """u(x) = sum_k a**k * [x_k == symbol] for |a| < 1.

    At an eventually constant point the series telescopes to a closed form,
    and so do its integrals over cylinders, which makes this the standard
    non-cylinder test function.
    """

    def __init__(self, alphabet: Alphabet, a, symbol: int):
        if not -1 < a < 1:
            raise ValueError("coordinate series needs |a| < 1")
        if not 0 <= symbol < alphabet.size:
            raise ValueError(f"internal symbol {symbol} outside the alphabet")
        self.alphabet = alphabet
        self.a = a
        self.symbol = symbol
        self.mode = scalars.mode_of_values([a])
        amp = abs(a) / (1 - abs(a))
        self.modulus = GeometricModulus(amp, abs(a))

    def evaluate(self, point: VertexWord):
        _check_same_alphabet(self.alphabet, point.alphabet)
        a = self.a
        total = scalars.zero(self.mode)
        power = scalars.one(self.mode)
        for s in point.symbols:
            power = power * a
            if s == self.symbol:
                total += power
        # the constant tail contributes a geometric remainder
        if point.tail_symbol == self.symbol:
            total += power * a / (1 - a)
        return total

    def cylinder_integral(self, prefix):
        # positions beyond the prefix hit the symbol with probability 1/N
        n = self.alphabet.size
        a = self.a
        total = scalars.zero(self.mode)
        power = scalars.one(self.mode)
        for s in prefix:
            power = power * a
            if s == self.symbol:
                total += power
        total += power * a / ((1 - a) * n)
        return total * scalars.reciprocal_power(n, len(prefix), self.mode)


class PointwiseSampler(Sampler):
    """Wraps an arbitrary pure callable; no exact integrals, optional modulus."""

    def __init__(self, alphabet: Alphabet, fn, mode=RATIONAL, modulus=None):
        self.alphabet = alphabet
        self.fn = fn
        self.mode = mode
        self.modulus = modulus

    def evaluate(self, point: VertexWord):
        _check_same_alphabet(self.alphabet, point.alphabet)
        return self.fn(point)


def chi_extension(point: VertexWord, m: int) -> CylinderFunction:
    """The minimal-energy extension of a point indicator: 1 on the point's
    level-m cylinder, 0 elsewhere."""
    embedded = point.embed(m)  # raises LevelTooSmallError below the point's level
    n = point.alphabet.size
    values = [0] * n ** (m + 1)
    values[embedded.index()] = 1
    return CylinderFunction(point.alphabet, m, values)


def project(u, m: int, cap=None) -> CylinderFunction:
    """Cylinder interpolation of a sampler: constant on each level-m cylinder,
    matching u at the vertex point inside it."""
    alphabet = u.alphabet
    check_point_cap(alphabet, m, cap)
    values = [u.evaluate(VertexWord(alphabet, w)) for w in vertex_words(alphabet, m, cap)]
    return CylinderFunction(alphabet, m, values)


def restrict(u, m: int, cap=None) -> LevelFunction:
    """Values of a cylinder function or sampler at every point of vertex_set(m)."""
    alphabet = u.alphabet
    check_point_cap(alphabet, m, cap)
    values = [u.evaluate(VertexWord(alphabet, w)) for w in vertex_words(alphabet, m, cap)]
    return LevelFunction(alphabet, m, values)


def clamp(u: LevelFunction) -> LevelFunction:
    """Pointwise clip into [0, 1]; leaves values already inside untouched."""
    lo = scalars.zero(u.mode)
    hi = scalars.one(u.mode)
    return LevelFunction(
        u.alphabet,
        u.level,
        [hi if v >= 1 else (lo if v <= 0 else v) for v in u.values],
        mode=u.mode,
    )


def integrate(f, prefix: tuple[int, ...] = ()):
    """Exact integral of f over a cylinder (whole space by default)."""
    value = f.cylinder_integral(prefix)
    if value is None:
        raise ValueError(
            f"{type(f).__name__} does not integrate exactly; project it to a "
            "cylinder function first"
        )
    return value


def integrate_product(a: CylinderFunction, b: CylinderFunction):
    """Exact integral of a*b; both factors are constant on the finer grid."""
    _check_same_alphabet(a.alphabet, b.alphabet)
    if a.mode != b.mode:
        raise ValueError("cannot mix arithmetic modes in one integral")
    n = a.alphabet.size
    depth = max(a.level, b.level) + 1
    total = scalars.zero(a.mode)
    for w in itertools.product(range(n), repeat=depth):
        total += a.value_on_word(w) * b.value_on_word(w)
    return total * scalars.reciprocal_power(n, depth, a.mode)
