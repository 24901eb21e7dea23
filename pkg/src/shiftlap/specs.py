"""Function specifications: the JSON wire format and its CLI shorthands.

Canonical JSON kinds::

    {"kind": "constant", "value": "c"}
    {"kind": "cylinder", "N": 2, "level": 1,
     "values": {"11": "0", "12": "1", "21": "0", "22": "0"}}
    {"kind": "coordinate-series", "a": "1/2", "symbol": 1}
    {"kind": "solution", "f": <spec>, "zeta": {"1": "0", "2": "0"}}

Scalars travel as "p/q" strings in rational mode and as decimal literals in
float mode.  Cylinder value maps must list every word of length level+1
exactly once.  Shorthands (``const:c``, ``chi:WORD@m``, ``series:a,s``)
expand to the canonical JSON before anything is dispatched.
"""

from __future__ import annotations

import itertools
import json

from .boundary import SolutionFunction
from .errors import FunctionSpecError
from .functions import Constant, CoordinateSeries, CylinderFunction, chi_extension
from .green import GreenApplication
from .scalars import format_scalar, parse_scalar
from .words import Alphabet, VertexWord

CANONICAL_KINDS = ("constant", "cylinder", "coordinate-series", "solution")


def expand_shorthand(text: str, n: int) -> dict:
    """Turn a CLI shorthand (or JSON literal) into canonical spec JSON."""
    if text.startswith("const:"):
        return {"kind": "constant", "value": text[len("const:"):]}
    if text.startswith("chi:"):
        body = text[len("chi:"):]
        word, sep, level = body.partition("@")
        if not sep:
            raise FunctionSpecError("chi shorthand is chi:WORD@level")
        try:
            level = int(level)
        except ValueError as exc:
            raise FunctionSpecError(f"bad chi level in {text!r}") from exc
        alphabet = Alphabet(n)
        try:
            chi = chi_extension(VertexWord.from_literal(word, alphabet), level)
        except Exception as exc:
            raise FunctionSpecError(f"cannot expand {text!r}: {exc}") from exc
        return cylinder_spec(chi)
    if text.startswith("series:"):
        body = text[len("series:"):]
        a, sep, symbol = body.partition(",")
        if not sep:
            raise FunctionSpecError("series shorthand is series:a,symbol")
        try:
            symbol = int(symbol)
        except ValueError as exc:
            raise FunctionSpecError(f"bad series symbol in {text!r}") from exc
        return {"kind": "coordinate-series", "a": a, "symbol": symbol}
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FunctionSpecError(f"not a shorthand and not JSON: {text!r}") from exc
    if not isinstance(spec, dict):
        raise FunctionSpecError("a function spec must be a JSON object")
    return spec


def parse_function(spec: dict, alphabet: Alphabet, mode):
    """Build the function object a canonical spec describes."""
    if not isinstance(spec, dict):
        raise FunctionSpecError("a function spec must be a JSON object")
    kind = spec.get("kind")
    if kind == "constant":
        _require_keys(spec, {"kind", "value"})
        return Constant(alphabet, parse_scalar(spec["value"], mode))
    if kind == "cylinder":
        return _parse_cylinder(spec, alphabet, mode)
    if kind == "coordinate-series":
        _require_keys(spec, {"kind", "a", "symbol"})
        a = parse_scalar(spec["a"], mode)
        symbol = spec["symbol"]
        if not isinstance(symbol, int) or not 1 <= symbol <= alphabet.size:
            raise FunctionSpecError(f"series symbol must lie in 1..{alphabet.size}")
        try:
            return CoordinateSeries(alphabet, a, symbol - 1)
        except ValueError as exc:
            raise FunctionSpecError(str(exc)) from exc
    if kind == "solution":
        _require_keys(spec, {"kind", "f", "zeta"}, optional={"zeta"})
        load = parse_function(spec["f"], alphabet, mode)
        if isinstance(load, Constant):  # keeps the solution pointwise evaluable
            load = CylinderFunction.constant(alphabet, load.value)
        if load.cylinder_integral(()) is None:
            raise FunctionSpecError("a solution load must integrate exactly over cylinders")
        zeta = spec.get("zeta")
        if zeta is None:
            values = [0] * alphabet.size
        else:
            values = parse_boundary_data(zeta, alphabet, mode)
        return SolutionFunction(
            CylinderFunction(alphabet, 0, values), GreenApplication(load)
        )
    raise FunctionSpecError(
        f"unknown function kind {kind!r}; expected one of {CANONICAL_KINDS}"
    )


def _parse_cylinder(spec, alphabet, mode) -> CylinderFunction:
    _require_keys(spec, {"kind", "N", "level", "values"})
    if spec["N"] != alphabet.size:
        raise FunctionSpecError(
            f"spec is over {spec['N']} symbols but the run uses {alphabet.size}"
        )
    level = spec["level"]
    if not isinstance(level, int) or level < 0:
        raise FunctionSpecError(f"bad cylinder level {level!r}")
    values = spec["values"]
    if not isinstance(values, dict):
        raise FunctionSpecError("cylinder values must map word literals to scalars")
    expected = [
        "".join(alphabet.format_symbol(s) for s in w)
        for w in itertools.product(alphabet.symbols, repeat=level + 1)
    ]
    missing = [w for w in expected if w not in values]
    if missing:
        raise FunctionSpecError(f"cylinder values missing words: {missing[:5]}")
    extra = [k for k in values if k not in set(expected)]
    if extra:
        raise FunctionSpecError(f"cylinder values carry unknown words: {extra[:5]}")
    return CylinderFunction(
        alphabet, level, [parse_scalar(values[w], mode) for w in expected]
    )


def _require_keys(spec, allowed, optional=frozenset()):
    required = set(allowed) - set(optional)
    missing = required - spec.keys()
    if missing:
        raise FunctionSpecError(f"spec is missing keys: {sorted(missing)}")
    unknown = spec.keys() - set(allowed)
    if unknown:
        raise FunctionSpecError(f"spec has unknown keys: {sorted(unknown)}")


def parse_boundary_data(data, alphabet: Alphabet, mode) -> list:
    """Boundary vectors: JSON object keyed by symbol, JSON array, or "a,b,..."."""
    if isinstance(data, str):
        text = data.strip()
        if text.startswith("[") or text.startswith("{"):
            try:
                data = json.loads(text)
            except json.JSONDecodeError as exc:
                raise FunctionSpecError(f"bad boundary data JSON: {text!r}") from exc
        else:
            data = [piece.strip() for piece in text.split(",")]
    if isinstance(data, dict):
        out = []
        for l in alphabet.symbols:
            key = alphabet.format_symbol(l)
            if key not in data:
                raise FunctionSpecError(f"boundary data missing symbol {key}")
            out.append(parse_scalar(data[key], mode))
        if len(data) != alphabet.size:
            raise FunctionSpecError("boundary data has entries for unknown symbols")
        return out
    if isinstance(data, (list, tuple)):
        return [parse_scalar(v, mode) for v in data]
    raise FunctionSpecError(f"cannot read boundary data from {type(data).__name__}")


def cylinder_spec(h: CylinderFunction) -> dict:
    words = itertools.product(h.alphabet.symbols, repeat=h.level + 1)
    values = {
        "".join(h.alphabet.format_symbol(s) for s in w): format_scalar(h.values[i])
        for i, w in enumerate(words)
    }
    return {"kind": "cylinder", "N": h.alphabet.size, "level": h.level, "values": values}


def function_spec(obj) -> dict:
    """Serialise a function object back to canonical spec JSON."""
    if isinstance(obj, Constant):
        return {"kind": "constant", "value": format_scalar(obj.value)}
    if isinstance(obj, CylinderFunction):
        return cylinder_spec(obj)
    if isinstance(obj, CoordinateSeries):
        return {
            "kind": "coordinate-series",
            "a": format_scalar(obj.a),
            "symbol": obj.symbol + 1,
        }
    if isinstance(obj, SolutionFunction):
        if obj.harmonic.level != 0:
            raise FunctionSpecError(
                "only solutions with symbol-level harmonic parts serialise to specs"
            )
        zeta = {
            obj.alphabet.format_symbol(l): format_scalar(v)
            for l, v in zip(obj.alphabet.symbols, obj.harmonic.values)
        }
        load = obj.load
        spec = {"kind": "solution", "zeta": zeta}
        spec["f"] = (
            function_spec(load)
            if load is not None
            else {"kind": "constant", "value": "0"}
        )
        return spec
    raise FunctionSpecError(f"cannot serialise {type(obj).__name__} to a spec")
