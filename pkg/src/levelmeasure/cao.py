"""Conditional aggregation operators (CAOs) and parametric families of them.

A :class:`Cao` maps a nonnegative function on the ground set (a tuple of
``n`` values) and a conditional set (a bitmask) to ``[0, inf]``.  The value
on the empty set is a per-operator convention: ``inf`` for level-measure use,
``0`` for survival-function use.
"""

from __future__ import annotations

import itertools
import math
import operator
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .measure import (
    MonotoneMeasure,
    Paving,
    PavingProcess,
    is_subset,
    members,
    null_elements,
)
from .numeric import INF, Radical, check_ext, exact_div, is_exact, isclose, power, root, to_number

# probe grid used by all sampling checkers
GRID = (0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1, 2)
LAMBDAS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1, Fraction(3, 2), 2, 3)


def as_function(values: Iterable, n: int | None = None) -> tuple:
    """Validate a function on X: finite nonnegative values, optional length."""
    f = tuple(to_number(v) for v in values)
    if n is not None and len(f) != n:
        raise ValueError(f"function has {len(f)} values, ground set has {n}")
    for v in f:
        check_ext(v, "function value")
        if v == INF:
            raise ValueError("function values must be finite")
    return f


@dataclass(frozen=True)
class Cao:
    """A conditional aggregation operator with an explicit empty-set value.

    ``fn(f, E)`` is only called for nonempty ``E``.  ``prefix``, when given,
    yields ``A(f|[k])`` for ``k = 1..len(f)`` incrementally; it is a pure
    speed-up for chain pavings and must agree with ``fn``.
    """

    fn: Callable[[Sequence, int], object]
    empty: object = INF
    name: str = "cao"
    prefix: Callable[[Sequence], Iterable] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.empty not in (0, INF):
            raise ValueError("empty-set convention must be inf or 0")

    def __call__(self, f: Sequence, E: int):
        if E == 0:
            return self.empty
        return self.fn(f, E)

    def with_empty(self, value) -> "Cao":
        return self if value == self.empty else replace(self, empty=value)

    def prefix_values(self, f: Sequence) -> Iterable:
        if self.prefix is not None:
            return self.prefix(f)
        return (self.fn(f, (1 << k) - 1) for k in range(1, len(f) + 1))


def _vals(f, E):
    return [f[i] for i in members(E)]


# --- kernels -----------------------------------------------------------------

def _geo_mean(vals):
    if any(v == 0 for v in vals):
        return 0
    k = len(vals)
    if all(is_exact(v) and not isinstance(v, Radical) for v in vals):
        return root(math.prod(vals), k)
    try:
        return math.prod(float(v) for v in vals) ** (1.0 / k)
    except OverflowError:
        return math.exp(math.fsum(math.log(v) for v in vals) / k)


def _harmonic(vals):
    # x/0 = inf and 1/inf = 0
    if any(v == 0 for v in vals):
        return 0
    if all(isinstance(v, (int, Fraction)) for v in vals):
        return 1 / sum(Fraction(1) / v for v in vals)
    return 1.0 / math.fsum(1.0 / float(v) for v in vals)


def _accumulate_geo(f):
    p = 1
    exact = all(isinstance(v, (int, Fraction)) for v in f)
    for k, v in enumerate(f, 1):
        if v == 0:
            p = 0
        elif p:
            p = p * v
        if p == 0:
            yield 0
        elif exact:
            # skip the perfect-power search; Radical compares exactly anyway
            yield p if k == 1 else Radical(p, k)
        else:
            yield _geo_mean(f[:k])


def _accumulate_harmonic(f):
    s = 0
    exact = all(isinstance(v, (int, Fraction)) for v in f)
    for v in f:
        if v == 0 or s == INF:
            s = INF
            yield 0
            continue
        s += Fraction(1) / v if exact else 1.0 / float(v)
        yield 1 / s


def _parallel(vals):
    return 1 - math.prod(1 - v for v in vals)


# --- post maps ---------------------------------------------------------------

def named_map(spec) -> Callable:
    """Nondecreasing maps g with g(0)=0 used by post_map and the indices.

    ``spec`` is a callable or one of ``identity``, ``sqrt``, ``power:p``,
    ``scale:c``.
    """
    if callable(spec):
        return spec
    s = str(spec).strip()
    if s == "identity":
        return _identity
    if s == "sqrt":
        return _sqrt
    kind, _, arg = s.partition(":")
    if kind == "power":
        p = to_number(arg)
        if not p > 0:
            raise ValueError("power must be positive")
        return _Power(p)
    if kind == "scale":
        c = to_number(arg)
        if not c > 0:
            raise ValueError("scale must be positive")
        return _Scale(c)
    raise ValueError(f"unknown map {spec!r}")


def _identity(x):
    return x


def _sqrt(x):
    return root(x, 2)


@dataclass(frozen=True)
class _Power:
    p: object

    def __call__(self, x):
        return power(x, self.p)


@dataclass(frozen=True)
class _Scale:
    c: object

    def __call__(self, x):
        return x if x == INF else self.c * x


def check_post_map(g: Callable, probes: Sequence = GRID + (3, 5, 10)) -> None:
    if g(0) != 0:
        raise ValueError("post map must satisfy g(0) = 0")
    ys = [g(x) for x in sorted(probes)]
    for a, b in zip(ys, ys[1:]):
        if a > b:
            raise ValueError("post map must be nondecreasing")


# --- builtins -------------------------------------------------------------------

def builtin(name: str, empty=INF, **params) -> "Cao | Pfca":
    """Construct one of the standard operators by name.

    Names: ``sum``, ``prod``, ``inf``, ``sup``, ``geo_mean``, ``harmonic``,
    ``mean`` (``weights``), ``parallel``, ``ess_inf`` (``measure``),
    ``post_map`` (``g``, ``inner``), ``scaled`` (``lam``, ``inner``),
    ``inf_transform`` (``h``), ``inf_weighted`` (``h``, ``inner``) and
    ``psi_family`` (``phi``, ``p``), the last returning a :class:`Pfca`.
    """
    simple = {
        "sum": (lambda f, E: sum(_vals(f, E)), lambda f: itertools.accumulate(f)),
        "prod": (lambda f, E: math.prod(_vals(f, E)), lambda f: itertools.accumulate(f, operator.mul)),
        "inf": (lambda f, E: min(_vals(f, E)), lambda f: itertools.accumulate(f, min)),
        "sup": (lambda f, E: max(_vals(f, E)), lambda f: itertools.accumulate(f, max)),
        "geo_mean": (lambda f, E: _geo_mean(_vals(f, E)), _accumulate_geo),
        "harmonic": (lambda f, E: _harmonic(_vals(f, E)), _accumulate_harmonic),
        "parallel": (lambda f, E: _parallel(_vals(f, E)), None),
    }
    if name in simple:
        if params:
            raise TypeError(f"{name} takes no parameters")
        fn, prefix = simple[name]
        return Cao(fn, empty, name, prefix)
    if name == "mean":
        return mean_cao(params.get("weights"), empty)
    if name == "ess_inf":
        return ess_inf(params["measure"], empty)
    if name == "post_map":
        return post_map(params["g"], params["inner"])
    if name == "scaled":
        return scaled(params["lam"], params["inner"])
    if name == "inf_transform":
        return inf_transform(params["h"], empty)
    if name == "inf_weighted":
        return inf_weighted(params["h"], params["inner"])
    if name == "psi_family":
        return psi_family(params["phi"], params.get("p", 1), params.get("paving"),
                          params.get("phi_direction", "nondecreasing"))
    raise ValueError(f"unknown operator {name!r}")


def mean_cao(weights: Sequence | None = None, empty=INF) -> Cao:
    """Conditional expectation sum(w f)/sum(w) over E; weights must be positive."""
    w = None if weights is None else [to_number(x) for x in weights]
    if w is not None and any(not x > 0 for x in w):
        raise ValueError("weights must be positive")

    def fn(f, E):
        idx = members(E)
        ws = [1] * len(idx) if w is None else [w[i] for i in idx]
        return exact_div(sum(wi * f[i] for wi, i in zip(ws, idx)), sum(ws))

    return Cao(fn, empty, "mean")


def ess_inf(mu: MonotoneMeasure, empty=INF) -> Cao:
    """Essential infimum of f on E with respect to the null sets of ``mu``.

    Equals the minimum of f over the non-null elements of E.  On a null E the
    value is the maximum of f over E, keeping the operator between the plain
    infimum and supremum.
    """
    null = null_elements(mu)

    def fn(f, E):
        live = E & ~null
        return min(_vals(f, live)) if live else max(_vals(f, E))

    return Cao(fn, empty, "ess_inf")


def post_map(g, inner: Cao) -> Cao:
    """g(A(f|E)) for a nondecreasing g with g(0) = 0."""
    gf = named_map(g)
    check_post_map(gf)
    name = g if isinstance(g, str) else getattr(g, "__name__", "g")
    prefix = None
    if inner.prefix is not None:
        prefix = lambda f: (gf(v) for v in inner.prefix(f))  # noqa: E731
    return Cao(lambda f, E: gf(inner.fn(f, E)), inner.empty, f"{name}({inner.name})", prefix)


def scaled(lam, inner: Cao) -> Cao:
    lam = to_number(lam)
    if not 0 < lam < INF:
        raise ValueError("scale factor must be a positive real")
    return Cao(lambda f, E: lam * inner.fn(f, E), inner.empty, f"{lam}*{inner.name}")


def inf_transform(h, empty=INF) -> Cao:
    """h(min_E f) for h nondecreasing, h(0) = 0, h(1) = 1."""
    hf = named_map(h)
    check_post_map(hf)
    if hf(1) != 1:
        raise ValueError("h must satisfy h(1) = 1")
    return Cao(lambda f, E: hf(min(_vals(f, E))), empty, "h(inf)")


def inf_weighted(h, inner: Cao) -> Cao:
    """A(h(min_E f) * f | E) for h as in :func:`inf_transform`."""
    hf = named_map(h)
    check_post_map(hf)
    if hf(1) != 1:
        raise ValueError("h must satisfy h(1) = 1")

    def fn(f, E):
        w = hf(min(_vals(f, E)))
        return inner.fn(tuple(w * v for v in f), E)

    return Cao(fn, inner.empty, f"{inner.name}(h(inf)*f)")


# --- parametric families ------------------------------------------------------

@dataclass(frozen=True)
class Pfca:
    """t -> CAO over the paving process; ``tags`` are declared properties.

    Tag keys: ``nondecreasing``, ``nonincreasing``, ``nondecreasing_wrt_sets``,
    ``nonincreasing_wrt_sets``, ``idempotent``, ``homogeneous`` (degree),
    ``superhomogeneous`` (degree), ``quasi_superadditive`` (c),
    ``quasi_subadditive`` (c).
    """

    at: Callable[[object], Cao]
    pavings: PavingProcess
    tags: Mapping = field(default_factory=dict)
    name: str = "pfca"

    @classmethod
    def constant(cls, cao: Cao, paving: Paving, tags: Mapping | None = None) -> "Pfca":
        tags = dict(tags or {})
        tags.setdefault("nondecreasing", True)
        tags.setdefault("nonincreasing", True)
        return cls(lambda t: cao, PavingProcess.constant(paving), tags, cao.name)

    def __call__(self, t) -> tuple[Cao, Paving]:
        return self.at(t), self.pavings.at(t)

    def with_empty(self, value) -> "Pfca":
        at = self.at
        return replace(self, at=lambda t: at(t).with_empty(value))


def as_pfca(obj, n: int | None = None, paving: Paving | None = None) -> Pfca:
    if isinstance(obj, Pfca):
        return obj
    if paving is None:
        if n is None:
            raise ValueError("n or paving is required to wrap a single CAO")
        paving = Paving.power_set(n)
    return Pfca.constant(obj, paving)


def named_phi(spec):
    """phi for :func:`psi_family`: callable or ``constant:c``, ``linear:a``
    (1 + a t), ``reciprocal`` (1 / (1 + t))."""
    if callable(spec):
        return spec
    kind, _, arg = str(spec).partition(":")
    if kind == "constant":
        c = to_number(arg)
        return lambda t: c
    if kind == "linear":
        a = to_number(arg)
        return lambda t: 1 + a * t
    if kind == "reciprocal":
        return lambda t: 1 / (1 + Fraction(t) if isinstance(t, (int, Fraction)) else 1 + t)
    raise ValueError(f"unknown phi {spec!r}")


def psi_family(phi, p=1, paving: Paving | PavingProcess | None = None,
               phi_direction: str = "nondecreasing", n: int | None = None) -> Pfca:
    """A_t(f|E) = phi(t) * (sum_E f) ** p with phi >= 0 and p >= 1.

    ``phi_direction`` declares how phi varies with t (``nondecreasing``,
    ``nonincreasing``, ``constant`` or ``general``); the pFCA inherits it.
    """
    p = to_number(p)
    if p < 1:
        raise ValueError("psi_family needs p >= 1")
    phif = named_phi(phi)
    if paving is None:
        if n is None:
            raise ValueError("paving or n is required")
        paving = Paving.power_set(n)
    process = paving if isinstance(paving, PavingProcess) else PavingProcess.constant(paving)
    tags = {"nondecreasing_wrt_sets": True, "quasi_superadditive": 1,
            "homogeneous": p}
    if phi_direction in ("nondecreasing", "constant") and "nondecreasing" in process.tags:
        tags["nondecreasing"] = True
    if phi_direction in ("nonincreasing", "constant") and "nonincreasing" in process.tags:
        tags["nonincreasing"] = True
    if p == 1:
        tags["quasi_subadditive"] = 1

    def at(t):
        c = phif(t)
        if c < 0:
            raise ValueError("phi must be nonnegative")
        return Cao(lambda f, E: c * power(sum(_vals(f, E)), p), INF, f"psi_{t}")

    return Pfca(at, process, tags, f"psi(p={p})")


def moment_family(weights: Sequence | None = None, paving: Paving | None = None,
                  n: int | None = None) -> Pfca:
    """A_t(f|E) = E_P(f**t | E) for the probability with the given weights.

    Only a CAO for t > 0 (at t = 0 the empty-complement condition fails).
    """
    cond = mean_cao(weights)
    if paving is None:
        paving = Paving.power_set(n if n is not None else len(weights))

    def at(t):
        if t == 0:
            return Cao(lambda f, E: 1, INF, "E[f^0]")
        return Cao(lambda f, E: cond.fn(tuple(power(v, t) if v else 0 for v in f), E), INF, f"E[f^{t}]")

    return Pfca(at, PavingProcess.constant(paving), {}, "moment")


# --- checkers -----------------------------------------------------------------

@dataclass
class CheckResult:
    ok: bool
    detail: str = ""
    witness: dict | None = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        head = "pass" if self.ok else "FAIL"
        return f"{head}: {self.detail}" if self.detail else head


def _random_function(rng: random.Random, n: int, grid=GRID) -> tuple:
    return tuple(rng.choice(grid) for _ in range(n))


def _nonempty_sets(n: int, rng: random.Random, k: int | None):
    sets = range(1, 1 << n)
    if k is None or k >= len(sets):
        return list(sets)
    return [rng.randrange(1, 1 << n) for _ in range(k)]


def check_C1_C2(cao: Cao, n: int, trials: int = 200, seed: int = 0,
                exhaustive: bool = False, grid=GRID) -> CheckResult:
    """Sample (C1) monotonicity and (C2) vanishing on the complement indicator.

    Also checks A(0|E) = 0, A(f|E) = A(f 1_E|E) and the declared empty-set
    value.  With ``exhaustive`` every grid function and every nonempty E is
    visited (feasible for n <= 4) and (C1) is checked along one-step raises.
    """
    rng = random.Random(seed)
    zero = (0,) * n
    for E in range(1, 1 << n):
        comp = tuple(0 if (E >> i) & 1 else 1 for i in range(n))
        if cao(comp, E) != 0:
            return CheckResult(False, "(C2) A(1_{E^c}|E) != 0", {"E": E, "value": cao(comp, E)})
        if cao(zero, E) != 0:
            return CheckResult(False, "A(0_X|E) != 0", {"E": E})
    if cao((1,) * n, 0) != cao.empty:
        return CheckResult(False, "empty-set convention not honoured", {})

    if exhaustive:
        fs = itertools.product(grid, repeat=n)
        sets = list(range(1, 1 << n))
    else:
        fs = (_random_function(rng, n, grid) for _ in range(trials))
    for f in fs:
        for E in (sets if exhaustive else _nonempty_sets(n, rng, 3)):
            v = cao(f, E)
            fE = tuple(x if (E >> i) & 1 else 0 for i, x in enumerate(f))
            if not isclose(cao(fE, E), v):
                return CheckResult(False, "A(f|E) != A(f 1_E|E)", {"f": f, "E": E})
            if exhaustive:
                raises = []
                for i in members(E):
                    pos = grid.index(f[i])
                    if pos + 1 < len(grid):
                        raises.append(f[:i] + (grid[pos + 1],) + f[i + 1:])
            else:
                g = tuple(
                    (x + rng.choice(grid)) if (E >> i) & 1 else rng.choice(grid)
                    for i, x in enumerate(f)
                )
                raises = [g]
            for g in raises:
                if cao(g, E) < v and not isclose(cao(g, E), v):
                    return CheckResult(False, "(C1) violated", {"f": f, "g": g, "E": E})
    return CheckResult(True, f"(C1), (C2) hold on {'all grid' if exhaustive else trials} samples")


def check_sandwich(cao: Cao, n: int, trials: int = 200, seed: int = 0) -> CheckResult:
    """inf_E f <= A(f|E) <= sup_E f on sampled inputs."""
    rng = random.Random(seed)
    for _ in range(trials):
        f = _random_function(rng, n)
        for E in _nonempty_sets(n, rng, None if n <= 4 else 8):
            v = cao(f, E)
            lo, hi = min(_vals(f, E)), max(_vals(f, E))
            if v < lo or v > hi:
                return CheckResult(False, "A(f|E) outside [inf, sup]", {"f": f, "E": E, "value": v})
    return CheckResult(True, "A^inf <= A <= A^sup on samples")


def _comonotone_pair(rng, n, grid=GRID):
    f = sorted(rng.choice(grid) for _ in range(n))
    g = sorted(rng.choice(grid) for _ in range(n))
    perm = list(range(n))
    rng.shuffle(perm)
    return tuple(f[perm[i]] for i in range(n)), tuple(g[perm[i]] for i in range(n))


def check_property(obj, prop: str, n: int, trials: int = 100, seed: int = 0,
                   ts: Sequence | None = None, **params) -> CheckResult:
    """Sample one of the operator properties consumed as theorem hypotheses.

    ``obj`` is a :class:`Cao` (checked over the full power set) or a
    :class:`Pfca` (checked at the sampled ``ts``).  Properties:
    ``idempotent``, ``homogeneous`` / ``superhomogeneous`` (``theta``),
    ``monotone_wrt_sets`` / ``pfca_monotone`` (``direction``),
    ``quasi_superadditive`` / ``quasi_subadditive`` (``c``, ``pair_class``).
    """
    pf = as_pfca(obj, n)
    rng = random.Random(seed)
    if ts is None:
        ts = [Fraction(k, 4) for k in range(1, 13)]
    ts = sorted(ts)

    def fail(detail, **w):
        return CheckResult(False, detail, w)

    if prop in ("quasi_superadditive", "quasi_subadditive"):
        c = to_number(params.get("c", 1))
        if prop == "quasi_superadditive" and not 0.5 <= c <= 1:
            raise ValueError("quasi-superadditivity needs c in [0.5, 1]")
        if prop == "quasi_subadditive" and not c >= 1:
            raise ValueError("quasi-subadditivity needs c >= 1")
        pair_class = params.get("pair_class", "all")
        if pair_class not in ("all", "comonotone"):
            raise ValueError("pair_class must be 'all' or 'comonotone'")
        for _ in range(trials):
            t = rng.choice(ts)
            cao, paving = pf(t)
            if pair_class == "comonotone":
                f, g = _comonotone_pair(rng, n)
            else:
                f, g = _random_function(rng, n), _random_function(rng, n)
            fg = tuple(a + b for a, b in zip(f, g))
            for E in paving.nonempty():
                lhs, rhs = cao(fg, E), c * (cao(f, E) + cao(g, E))
                bad = lhs < rhs if prop == "quasi_superadditive" else lhs > rhs
                if bad and not isclose(lhs, rhs):
                    return fail(f"{prop}({c}) violated", t=t, f=f, g=g, E=E)
        return CheckResult(True, f"{prop}(c={c}, {pair_class}) on {trials} samples")

    if prop == "idempotent":
        for t in ts:
            cao, paving = pf(t)
            for b in LAMBDAS:
                for E in paving.nonempty():
                    v = cao((b,) * n, E)
                    if not isclose(v, b):
                        return fail("A(b 1_X|E) != b", t=t, b=b, E=E, value=v)
        return CheckResult(True, "idempotent on probes")

    if prop in ("homogeneous", "superhomogeneous"):
        theta = to_number(params.get("theta", 1))
        for _ in range(trials):
            t = rng.choice(ts)
            cao, paving = pf(t)
            f = _random_function(rng, n)
            lam = rng.choice(LAMBDAS)
            lf = tuple(lam * v for v in f)
            for E in paving.nonempty():
                lhs, rhs = cao(lf, E), power(lam, theta) * cao(f, E)
                if prop == "homogeneous" and not isclose(lhs, rhs):
                    return fail(f"not homogeneous of degree {theta}", t=t, f=f, lam=lam, E=E)
                if prop == "superhomogeneous" and lhs < rhs and not isclose(lhs, rhs):
                    return fail(f"not superhomogeneous of degree {theta}", t=t, f=f, lam=lam, E=E)
        return CheckResult(True, f"{prop}(theta={theta}) on {trials} samples")

    if prop == "monotone_wrt_sets":
        direction = params.get("direction", "nondecreasing")
        for _ in range(trials):
            t = rng.choice(ts)
            cao, paving = pf(t)
            f = _random_function(rng, n)
            ms = paving.nonempty()
            for C in ms:
                for D in ms:
                    if C != D and is_subset(C, D):
                        a, b = cao(f, C), cao(f, D)
                        bad = a > b if direction == "nondecreasing" else a < b
                        if bad and not isclose(a, b):
                            return fail(f"not {direction} w.r.t. sets", t=t, f=f, C=C, D=D)
        return CheckResult(True, f"{direction} w.r.t. sets on {trials} samples")

    if prop == "pfca_monotone":
        direction = params.get("direction", "nondecreasing")
        for s, t in zip(ts, ts[1:]):
            (cs, ps), (ct, pt) = pf(s), pf(t)
            if direction == "nondecreasing" and not ps.issubset(pt):
                return fail("pavings not nondecreasing", s=s, t=t)
            if direction == "nonincreasing" and not pt.issubset(ps):
                return fail("pavings not nonincreasing", s=s, t=t)
            common = ps.nonempty() if direction == "nondecreasing" else pt.nonempty()
            for _ in range(max(1, trials // len(ts))):
                f = _random_function(rng, n)
                for E in common:
                    a, b = cs(f, E), ct(f, E)
                    bad = a > b if direction == "nondecreasing" else a < b
                    if bad and not isclose(a, b):
                        return fail(f"pFCA not {direction} in t", s=s, t=t, f=f, E=E)
        return CheckResult(True, f"pFCA {direction} on t-grid")

    raise ValueError(f"unknown property {prop!r}")
