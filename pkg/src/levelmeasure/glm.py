"""Level measures, survival functions and their generalized versions.

Everything is computed by enumerating the paving, so suprema and infima are
exact.  For constant families the whole map ``a -> value`` is returned as a
:class:`~levelmeasure.stepfun.StepFunction`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

from .cao import Cao, Pfca, as_function, as_pfca, builtin, scaled
from .measure import (
    MeasureFamily,
    MonotoneMeasure,
    Paving,
    PavingProcess,
    as_family,
    dual_measure_family,
    full_mask,
    indicator_measure,
    members,
    validate_monotone,
)
from .numeric import INF, check_ext, to_number
from .stepfun import StepFunction


def _fn(f, mu) -> tuple:
    return as_function(f, mu.n)


def _upper_set(f, a) -> int:
    return sum(1 << i for i, v in enumerate(f) if v >= a)


def _strict_upper_set(f, a) -> int:
    return sum(1 << i for i, v in enumerate(f) if v > a)


def _sorted_unique(xs) -> list:
    out = []
    for x in sorted(xs):
        if not out or x != out[-1]:
            out.append(x)
    return out


# --- classical ---------------------------------------------------------------

def level_measure(mu: MonotoneMeasure, f: Sequence, a):
    """mu({f >= a})."""
    check_ext(a, "a")
    return mu(_upper_set(_fn(f, mu), a))


def survival_function(mu: MonotoneMeasure, f: Sequence, a):
    """mu({f > a})."""
    check_ext(a, "a")
    return mu(_strict_upper_set(_fn(f, mu), a))


def level_step(mu: MonotoneMeasure, f: Sequence) -> StepFunction:
    f = _fn(f, mu)
    levels = _sorted_unique(f)
    vals = [mu(_upper_set(f, u)) for u in levels] + [0]
    return StepFunction.build(levels, vals, "left")


def survival_step(mu: MonotoneMeasure, f: Sequence) -> StepFunction:
    f = _fn(f, mu)
    levels = _sorted_unique(f)
    vals = [mu(full_mask(mu.n))] + [mu(_strict_upper_set(f, u)) for u in levels]
    return StepFunction.build(levels, vals, "right")


# --- generalized level measure -----------------------------------------------

def _paving(paving, n) -> Paving:
    return Paving.power_set(n) if paving is None else paving


def glm_const(cao: Cao, mu: MonotoneMeasure, f: Sequence, a, paving: Paving | None = None):
    """sup{mu(E): A(f|E) >= a, E in the paving}; 0 if only the empty set qualifies."""
    check_ext(a, "a")
    f = _fn(f, mu)
    best = 0
    for E in _paving(paving, mu.n).nonempty():
        m = mu(E)
        if m > best and cao(f, E) >= a:
            best = m
    return best


def glm(pfca, family, f: Sequence, t):
    """Generalized level measure at ``t``.

    ``pfca`` may be a single :class:`Cao` (full power set) and ``family`` a
    single measure; the empty set counts with ``A(f|empty) = inf``.
    """
    check_ext(t, "t")
    fam = as_family(family)
    mu = fam(t)
    pf = as_pfca(pfca, mu.n)
    cao, paving = pf(t)
    return glm_const(cao, mu, f, t, paving)


def glm_values(pfca, family, f: Sequence, ts: Sequence) -> list:
    return [glm(pfca, family, f, t) for t in ts]


def glm_step(cao: Cao, mu: MonotoneMeasure, f: Sequence, paving: Paving | None = None) -> StepFunction:
    """The exact map a -> glm_const(cao, mu, f, a) (left-attached pieces)."""
    f = _fn(f, mu)
    pairs = [(cao(f, E), mu(E)) for E in _paving(paving, mu.n).nonempty()]
    always = max((m for v, m in pairs if v == INF), default=0)
    finite = sorted((p for p in pairs if p[0] != INF), key=lambda p: p[0])
    # suffix maxima of mu over sets with A(f|E) >= each distinct value
    levels, vals = [], []
    best = always
    i = len(finite) - 1
    while i >= 0:
        v = finite[i][0]
        while i >= 0 and finite[i][0] == v:
            best = max(best, finite[i][1])
            i -= 1
        levels.append(v)
        vals.append(best)
    levels.reverse()
    vals.reverse()
    return StepFunction.build(levels, vals + [always], "left")


# --- generalized survival function --------------------------------------------

def gsf_const(cao: Cao, mu: MonotoneMeasure, f: Sequence, a, paving: Paving | None = None):
    """inf{mu(X minus E): A(f|E) <= a, E in the paving} with A(f|empty) = 0."""
    check_ext(a, "a")
    f = _fn(f, mu)
    X = full_mask(mu.n)
    best = mu(X)
    for E in _paving(paving, mu.n).nonempty():
        m = mu(X & ~E)
        if m < best and cao(f, E) <= a:
            best = m
    return best


def gsf(pfca, family, f: Sequence, t):
    """Generalized survival function at ``t`` (empty set has value 0)."""
    check_ext(t, "t")
    fam = as_family(family)
    mu = fam(t)
    pf = as_pfca(pfca, mu.n)
    cao, paving = pf(t)
    return gsf_const(cao, mu, f, t, paving)


def gsf_step(cao: Cao, mu: MonotoneMeasure, f: Sequence, paving: Paving | None = None) -> StepFunction:
    """The exact map a -> gsf_const(cao, mu, f, a) (right-attached pieces)."""
    f = _fn(f, mu)
    X = full_mask(mu.n)
    pairs = [(0, mu(X))] + [(cao(f, E), mu(X & ~E)) for E in _paving(paving, mu.n).nonempty()]
    finite = sorted((p for p in pairs if p[0] != INF), key=lambda p: p[0])
    levels, vals = [], []
    best = INF
    i = 0
    while i < len(finite):
        v = finite[i][0]
        while i < len(finite) and finite[i][0] == v:
            best = min(best, finite[i][1])
            i += 1
        levels.append(v)
        vals.append(best)
    # the piece before the first level (always 0) is empty and gets dropped
    return StepFunction.build(levels, [vals[0]] + vals, "right")


# --- bounds chain ------------------------------------------------------------

class BoundsChain(NamedTuple):
    gsf: object
    survival: object
    level: object
    glm: object

    @property
    def holds(self) -> bool:
        return self.gsf <= self.survival <= self.level <= self.glm


def bounds_chain_check(cao: Cao, mu: MonotoneMeasure, f: Sequence, a) -> BoundsChain:
    """gsf <= mu({f > a}) <= mu({f >= a}) <= glm for a CAO between inf and sup.

    Both sides use the full power set; the empty-set convention is switched
    internally.  Raises ``ValueError`` if the sandwich hypothesis fails for
    this ``f`` and ``AssertionError`` if the chain breaks.
    """
    f = _fn(f, mu)
    for E in range(1, 1 << mu.n):
        vals = [f[i] for i in members(E)]
        v = cao(f, E)
        if v < min(vals) or v > max(vals):
            raise ValueError(f"operator is not between inf and sup on E={E:#b}")
    out = BoundsChain(
        gsf_const(cao.with_empty(0), mu, f, a),
        survival_function(mu, f, a),
        level_measure(mu, f, a),
        glm_const(cao.with_empty(INF), mu, f, a),
    )
    if not out.holds:
        raise AssertionError(f"bounds chain violated: {out}")
    return out


# --- duality -----------------------------------------------------------------

def _pos(x):
    return x if x > 0 else 0


def dual_pfca(pfca, b, n: int | None = None, ts: Sequence | None = None, check: bool = True) -> Pfca:
    """A^_t(f|E) = b - A_{(b-t)+}((b - f)+ | E) with A^_t(.|empty) = 0.

    With ``check`` the hypothesis A_t(b 1_X|E) = b is verified on ``ts``
    (default: a grid of [0, b]) for every nonempty paving member.
    """
    b = to_number(b)
    if not 0 < b < INF:
        raise ValueError("b must be a positive real")
    pf = as_pfca(pfca, n)
    if check:
        grid = ts if ts is not None else [b * Fraction(k, 8) for k in range(9)]
        for t in grid:
            cao, paving = pf(t)
            const = (b,) * paving.ground.n
            for E in paving.nonempty():
                if cao(const, E) != b:
                    raise ValueError(f"A_t(b 1_X|E) != b at t={t}, E={E:#b}")

    def at(t):
        inner = pf.at(_pos(b - t))

        def fn(f, E):
            return b - inner(tuple(_pos(b - v) for v in f), E)

        return Cao(fn, 0, f"dual({inner.name})")

    process = PavingProcess(lambda t: pf.pavings.at(_pos(b - t)), pf.pavings.tags)
    return Pfca(at, process, {}, f"dual({pf.name})")


class DualityResult(NamedTuple):
    lhs: object
    rhs: object

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def duality_identity_check(pfca, family, b, f: Sequence, t, ts: Sequence | None = None) -> DualityResult:
    """Both sides of glm(f, t) = mu_0(X) - gsf^(b - f, b - t) on the dual objects."""
    b, t = to_number(b), to_number(t)
    fam = as_family(family)
    mu0 = fam(0)
    f = as_function(f, mu0.n)
    if max(f) > b:
        raise ValueError("sup f must not exceed b")
    if not 0 <= t <= b:
        raise ValueError("t must lie in [0, b]")
    dual_fam = dual_measure_family(fam, b, [t, b - t, *(ts or ())])
    dual = dual_pfca(pfca, b, mu0.n, check=False)
    lhs = glm(pfca, fam, f, t)
    rhs = mu0.total - gsf(dual, dual_fam, tuple(b - v for v in f), b - t)
    return DualityResult(lhs, rhs)


# --- stored constructions ---------------------------------------------------

def example_step_data():
    """The three-point instance: sup operator, paving {0, {1}, {2}, {2,3}}."""
    n = 3
    mu = validate_monotone({0: 0, 0b001: 1, 0b010: Fraction(1, 2), 0b100: 0,
                            0b011: 1, 0b101: 1, 0b110: Fraction(1, 2), 0b111: 1}, n)
    paving = Paving.of(n, [0b001, 0b010, 0b110])
    f = (Fraction(1, 4), Fraction(3, 4), 1)
    return builtin("sup"), mu, f, paving


def product_table_data():
    """f = (1/2, 1/3, 1/4), product operator, strictly ordered measure."""
    order = [0, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111]
    mu = validate_monotone({m: k for k, m in enumerate(order)}, 3)
    return builtin("prod"), mu, (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))


def characterization_counterexamples() -> list[dict]:
    """Instances where a non-infimum operator gives glm != level measure.

    For each operator take D = X, f = (1, 1/2, 1/4), t0 = A(f|X) and the
    measure that is 1 on supersets of D and 0 elsewhere.
    """
    n = 3
    f = (1, Fraction(1, 2), Fraction(1, 4))
    mu = indicator_measure(n, 1, "only_full")
    X = full_mask(n)
    out = []
    for name in ("sum", "sup", "geo_mean"):
        cao = builtin(name)
        t0 = cao(f, X)
        out.append({"name": name, "cao": cao, "mu": mu, "f": f, "t": t0,
                    "glm": glm_const(cao, mu, f, t0),
                    "level": level_measure(mu, f, t0)})
    return out


def bounded_inf_pfca(M, n: int) -> Pfca:
    """A_t = inf for t <= M and 0.5 * inf beyond; agrees with the level
    measure on functions bounded by M without being the infimum family."""
    M = to_number(M)
    low = builtin("inf")
    high = scaled(Fraction(1, 2), low)
    paving = Paving.power_set(n)
    return Pfca(lambda t: low if t <= M else high, PavingProcess.constant(paving), {}, "bounded_inf")


def nonmonotone_in_t_example():
    """A t-dependent family for which t -> glm is not nonincreasing.

    Built from the three-point instance with a = 1/5, b = 4/5, c = 1/10:
    A_t = (c/b) A for t < a and A otherwise, constant measure.  Returns the
    pFCA, the measure, f and the pair (c, a) with glm(c) < glm(a).
    """
    cao, mu, f, paving = example_step_data()
    a, b, c = Fraction(1, 5), Fraction(4, 5), Fraction(1, 10)
    small = scaled(c / b, cao)
    pf = Pfca(lambda t: small if t < a else cao, PavingProcess.constant(paving), {}, "switching")
    return pf, mu, f, (c, a)


def family_from(fn, tag: str = "general") -> MeasureFamily:
    """Wrap ``t -> MonotoneMeasure`` as a family."""
    return MeasureFamily(fn, tag, True)
