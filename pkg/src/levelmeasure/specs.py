"""JSON specifications for measures, operators, pavings and semicopulas.

Floats in JSON are read as exact decimals (``0.1`` becomes ``1/10``);
strings may hold ``"p/q"`` rationals or ``"inf"``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .cao import Cao, Pfca, builtin, psi_family
from .integrals import SEMICOPULAS, Semicopula, semicopula
from .measure import (
    MonotoneMeasure,
    Paving,
    additive_measure,
    counting_measure,
    indicator_measure,
    mask_literal,
    necessity_measure,
    possibility_measure,
    uniform_probability,
    validate_monotone,
)
from .numeric import INF, Radical, to_number


class SpecError(ValueError):
    """Malformed specification (maps to the input-error exit code)."""


def _exact_float(s: str):
    q = Fraction(s)
    return q.numerator if q.denominator == 1 else q


def loads(text: str):
    return json.loads(text, parse_float=_exact_float)


def load_source(src):
    """Accept a dict or list, inline JSON text or a path to a JSON file."""
    if isinstance(src, (dict, list)):
        return src
    s = str(src).strip()
    if s.startswith("{") or s.startswith("["):
        return loads(s)
    path = Path(s)
    if not path.exists():
        raise SpecError(f"no such file: {s}")
    try:
        return loads(path.read_text())
    except json.JSONDecodeError as e:
        raise SpecError(f"{s}: invalid JSON at line {e.lineno}: {e.msg}") from None


def dump_number(x):
    """JSON-friendly exact rendering: ints stay ints, other rationals become "p/q"."""
    if x == INF:
        return "inf"
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, Radical):
        return float(x)
    return x


def _get(d: dict, key: str, kind: str):
    try:
        return d[key]
    except KeyError:
        raise SpecError(f"{kind} spec needs '{key}'") from None


# --- measures ----------------------------------------------------------------------

def parse_measure(src) -> MonotoneMeasure:
    d = load_source(src)
    kind = d.get("kind", "table")
    try:
        if kind == "table":
            vals = _get(d, "values", "table measure")
            return validate_monotone(vals, d.get("n"), d.get("labels"))
        if kind == "counting":
            return counting_measure(_get(d, "n", "counting measure"))
        if kind == "uniform":
            return uniform_probability(_get(d, "n", "uniform measure"))
        if kind == "additive":
            return additive_measure(_get(d, "weights", "additive measure"))
        if kind == "possibility":
            return possibility_measure(_get(d, "pi", "possibility measure"))
        if kind == "necessity":
            return necessity_measure(_get(d, "pi", "necessity measure"))
        if kind == "indicator":
            return indicator_measure(_get(d, "n", "indicator measure"), d.get("c", 1),
                                     d.get("mode", "only_full"))
    except (TypeError, KeyError) as e:
        raise SpecError(f"bad measure spec: {e}") from None
    raise SpecError(f"unknown measure kind {kind!r}")


def measure_to_json(mu: MonotoneMeasure) -> dict:
    return {"kind": "table", "n": mu.n,
            "values": {mask_literal(m, mu.n): dump_number(v) for m, v in enumerate(mu.values)}}


# --- pavings -----------------------------------------------------------------------

def parse_paving(src, n: int) -> Paving:
    d = load_source(src)
    if isinstance(d, list):
        d = {"members": d}
    if d.get("kind") == "power_set":
        return Paving.power_set(n)
    return Paving.of(n, _get(d, "members", "paving"))


def paving_to_json(p: Paving) -> dict:
    return {"members": [mask_literal(m, p.ground.n) for m in p.members]}


# --- operators ---------------------------------------------------------------------

def _empty(value) -> object:
    if value in (None, "inf", "infinity"):
        return INF
    if value in ("zero", 0, "0"):
        return 0
    raise SpecError(f"empty-set convention must be 'inf' or 'zero', got {value!r}")


def _phi_direction(phi: str) -> str:
    """Monotonicity in t of a named phi."""
    kind, _, arg = str(phi).partition(":")
    if kind == "constant":
        return "constant"
    if kind == "reciprocal":
        return "nonincreasing"
    if kind == "linear":
        a = to_number(arg)
        return "constant" if a == 0 else ("nondecreasing" if a > 0 else "nonincreasing")
    return "general"


def parse_cao(src, measure: MonotoneMeasure | None = None, n: int | None = None) -> Cao | Pfca:
    """Build an operator; ``ess_inf`` falls back to ``measure`` when its
    params do not carry one, ``psi_family`` returns a parametric family."""
    d = load_source(src)
    kind = _get(d, "kind", "operator")
    params = dict(d.get("params", {}))
    empty = _empty(d.get("empty", "inf"))
    try:
        if kind == "ess_inf":
            mu = parse_measure(params["measure"]) if "measure" in params else measure
            if mu is None:
                raise SpecError("ess_inf needs a measure")
            return builtin("ess_inf", empty, measure=mu)
        if kind in ("post_map", "scaled", "inf_weighted"):
            inner = parse_cao(_get(params, "inner", kind), measure, n).with_empty(empty)
            params["inner"] = inner
        if kind == "psi_family":
            size = n if n is not None else (measure.n if measure is not None else None)
            phi = params.get("phi", "constant:1")
            return psi_family(phi, params.get("p", 1), n=size,
                              phi_direction=params.get("phi_direction", _phi_direction(phi)))
        if kind == "mean":
            return builtin("mean", empty, weights=params.get("weights"))
        return builtin(kind, empty, **params)
    except (KeyError, TypeError) as e:
        raise SpecError(f"bad operator spec for {kind!r}: {e}") from None


def parse_semicopula(src) -> Semicopula:
    if isinstance(src, str) and src.strip() in SEMICOPULAS:
        return semicopula(src.strip())
    try:
        return semicopula(_get(load_source(src), "kind", "semicopula"))
    except ValueError as e:
        raise SpecError(str(e)) from None


def parse_function(src, n: int | None = None) -> tuple:
    """Comma-separated numbers, a JSON list, or a file holding either."""
    if isinstance(src, (list, tuple)):
        vals = src
    else:
        s = str(src).strip()
        if s.startswith("["):
            vals = loads(s)
        elif "," not in s and Path(s).is_file():
            return parse_function(Path(s).read_text(), n)
        else:
            vals = [v for v in s.replace(";", ",").split(",") if v.strip()]
    try:
        f = tuple(to_number(v) for v in vals)
    except (TypeError, ValueError) as e:
        raise SpecError(f"bad function values: {e}") from None
    if any(v < 0 or v == INF for v in f):
        raise SpecError("function values must be finite and nonnegative")
    if n is not None and len(f) != n:
        raise SpecError(f"function has {len(f)} values but the ground set has {n} elements")
    return f
