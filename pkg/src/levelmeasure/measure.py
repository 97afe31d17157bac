"""Finite ground sets, subset masks, monotone measures, families and pavings.

A subset of the ground set ``{1, ..., n}`` is an ``int`` bitmask; bit ``i``
stands for element ``i + 1``.  Measures are materialized as tuples indexed by
mask, which keeps them immutable and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .numeric import INF, check_ext, to_number

MAX_N = 24
MAX_PAVING = 1 << 20


# --- subsets ---------------------------------------------------------------

def full_mask(n: int) -> int:
    return (1 << n) - 1


def complement(mask: int, n: int) -> int:
    return full_mask(n) & ~mask


def members(mask: int) -> list[int]:
    """Zero-based indices of the elements of ``mask``."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(elements: Iterable[int], one_based: bool = True) -> int:
    off = 1 if one_based else 0
    m = 0
    for e in elements:
        if e - off < 0:
            raise ValueError(f"element {e} out of range")
        m |= 1 << (e - off)
    return m


def parse_mask(text, n: int | None = None) -> int:
    """Parse ``"0b011"``-style literals (plain ints are accepted too)."""
    if isinstance(text, int):
        m = text
    else:
        s = str(text).strip()
        m = int(s, 0) if s[:2].lower() in ("0b", "0x", "0o") else int(s, 2)
    if m < 0 or (n is not None and m >> n):
        raise ValueError(f"mask {text!r} has bits outside a ground set of size {n}")
    return m


def mask_literal(mask: int, n: int) -> str:
    return "0b" + format(mask, f"0{n}b")


def subsets(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` (including 0 and ``mask``)."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


@dataclass(frozen=True)
class GroundSet:
    n: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if not isinstance(self.n, int) or not 1 <= self.n <= MAX_N:
            raise ValueError(f"ground set size must be in [1, {MAX_N}], got {self.n!r}")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.n or len(set(labels)) != self.n:
                raise ValueError("labels must be n distinct strings")
            object.__setattr__(self, "labels", labels)

    @property
    def full(self) -> int:
        return full_mask(self.n)

    def check_mask(self, mask: int) -> int:
        if mask < 0 or mask >> self.n:
            raise ValueError(f"mask {mask:#b} is not a subset of a {self.n}-element set")
        return mask

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i + 1)

    def describe(self, mask: int) -> str:
        return "{" + ",".join(self.label(i) for i in members(mask)) + "}"


def _ground(n_or_ground) -> GroundSet:
    return n_or_ground if isinstance(n_or_ground, GroundSet) else GroundSet(n_or_ground)


# --- monotone measures -----------------------------------------------------

@dataclass(frozen=True)
class Violation:
    """First failure of the monotone-measure axioms."""

    reason: str
    pair: tuple[int, ...]
    values: tuple

    def describe(self, n: int) -> str:
        sets = ", ".join(mask_literal(m, n) for m in self.pair)
        vals = ", ".join(str(v) for v in self.values)
        return f"{self.reason}: ({sets}) -> ({vals})"


class MeasureViolation(ValueError):
    def __init__(self, violation: Violation, n: int):
        self.violation = violation
        self.n = n
        super().__init__(violation.describe(n))


def find_violation(values: Sequence, n: int) -> Violation | None:
    """Check mu(empty)=0, mu(X)>0 and monotonicity on covering pairs."""
    X = full_mask(n)
    if values[0] != 0:
        return Violation("mu(empty) must be 0", (0,), (values[0],))
    if not values[X] > 0:
        return Violation("mu(X) must be positive", (X,), (values[X],))
    for B in range(1 << n):
        vb = values[B]
        rest = X & ~B
        while rest:
            bit = rest & -rest
            rest ^= bit
            if vb > values[B | bit]:
                return Violation("not monotone", (B, B | bit), (vb, values[B | bit]))
    return None


@dataclass(frozen=True, eq=False)
class MonotoneMeasure:
    """A monotone set function on the power set of a finite ground set."""

    ground: GroundSet
    values: tuple

    def __post_init__(self):
        if len(self.values) != 1 << self.ground.n:
            raise ValueError("measure table must have 2**n entries")

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def total(self):
        return self.values[-1]

    @property
    def is_finite(self) -> bool:
        return self.total != INF

    def __call__(self, mask: int):
        return self.values[mask]

    def __eq__(self, other):
        if not isinstance(other, MonotoneMeasure):
            return NotImplemented
        return self.ground.n == other.ground.n and self.values == other.values

    def __hash__(self):
        return hash((self.ground.n, self.values))

    def __le__(self, other: "MonotoneMeasure") -> bool:
        return all(a <= b for a, b in zip(self.values, other.values))

    def __ge__(self, other: "MonotoneMeasure") -> bool:
        return other <= self

    def is_additive(self) -> bool:
        single = [self.values[1 << i] for i in range(self.n)]
        return all(self.values[m] == sum(single[i] for i in members(m))
                   for m in range(1 << self.n))

    def table(self) -> dict[str, object]:
        return {mask_literal(m, self.n): v for m, v in enumerate(self.values)}


def validate_monotone(table, n: int | None = None, labels=None) -> MonotoneMeasure:
    """Build a measure from a full table, raising :class:`MeasureViolation`.

    ``table`` is either a sequence indexed by mask or a mapping from masks
    (ints or ``"0b..."`` literals) to values; every subset must be present.
    """
    if isinstance(table, Mapping):
        if n is None:
            raise ValueError("n is required for mapping tables")
        vals: list = [None] * (1 << n)
        for k, v in table.items():
            vals[parse_mask(k, n)] = to_number(v)
        missing = [m for m, v in enumerate(vals) if v is None]
        if missing:
            raise ValueError(f"table is not total: missing {mask_literal(missing[0], n)}")
    else:
        vals = [to_number(v) for v in table]
        size = len(vals)
        if size == 0 or size & (size - 1):
            raise ValueError("table length must be a power of two")
        k = size.bit_length() - 1
        if n is not None and n != k:
            raise ValueError(f"table has {size} entries, expected {1 << n}")
        n = k
    for v in vals:
        check_ext(v, "measure value")
    ground = GroundSet(n, labels)
    v = find_violation(vals, n)
    if v is not None:
        raise MeasureViolation(v, n)
    return MonotoneMeasure(ground, tuple(vals))


def measure_from_function(n, fn: Callable[[int], object], check: bool = True) -> MonotoneMeasure:
    ground = _ground(n)
    vals = tuple(fn(m) for m in range(1 << ground.n))
    if check:
        v = find_violation(vals, ground.n)
        if v is not None:
            raise MeasureViolation(v, ground.n)
    return MonotoneMeasure(ground, vals)


def counting_measure(n) -> MonotoneMeasure:
    ground = _ground(n)
    return MonotoneMeasure(ground, tuple(m.bit_count() for m in range(1 << ground.n)))


def additive_measure(weights: Sequence) -> MonotoneMeasure:
    """mu(B) = sum of weights over B; weights must be nonnegative."""
    w = [check_ext(to_number(x), "weight") for x in weights]
    n = len(w)
    vals = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        vals[m] = vals[m ^ low] + w[low.bit_length() - 1]
    if not vals[-1] > 0:
        raise ValueError("weights must not all be zero")
    return MonotoneMeasure(GroundSet(n), tuple(vals))


def uniform_probability(n: int) -> MonotoneMeasure:
    return additive_measure([Fraction(1, n)] * n)


def _check_distribution(pi: Sequence):
    p = [to_number(x) for x in pi]
    if not p:
        raise ValueError("possibility distribution is empty")
    if any(x < 0 or x > 1 for x in p):
        raise ValueError("possibility values must lie in [0, 1]")
    if max(p) != 1:
        raise ValueError(f"possibility distribution must attain 1, max is {max(p)}")
    return p


def possibility_measure(pi: Sequence) -> MonotoneMeasure:
    """mu(E) = max of pi over E."""
    p = _check_distribution(pi)
    n = len(p)
    vals = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        vals[m] = max(vals[m ^ low], p[low.bit_length() - 1])
    return MonotoneMeasure(GroundSet(n), tuple(vals))


def necessity_measure(pi: Sequence) -> MonotoneMeasure:
    """nu(E) = min over the complement of 1 - pi, with nu(X) = 1."""
    p = _check_distribution(pi)
    n = len(p)
    X = full_mask(n)
    vals = []
    for m in range(1 << n):
        comp = members(X & ~m)
        vals.append(min(1 - p[i] for i in comp) if comp else 1)
    return MonotoneMeasure(GroundSet(n), tuple(vals))


def indicator_measure(n, c=1, mode: str = "only_full") -> MonotoneMeasure:
    """``c * 1(E = X)`` (mode ``only_full``) or ``c * 1(E != empty)``."""
    c = to_number(c)
    if not c > 0:
        raise ValueError("c must be positive")
    ground = _ground(n)
    X = ground.full
    if mode == "only_full":
        vals = tuple(c if m == X else 0 for m in range(1 << ground.n))
    elif mode == "any_nonempty":
        vals = tuple(c if m else 0 for m in range(1 << ground.n))
    else:
        raise ValueError(f"unknown indicator mode {mode!r}")
    return MonotoneMeasure(ground, vals)


def null_elements(mu: MonotoneMeasure) -> int:
    """Mask of elements x with mu(E + x) = mu(E) for every E.

    Null sets are hereditary and closed under finite unions, so a set is null
    exactly when all of its elements are.
    """
    out = 0
    vals = mu.values
    for i in range(mu.n):
        bit = 1 << i
        if all(vals[m | bit] == vals[m] for m in range(1 << mu.n) if not m & bit):
            out |= bit
    return out


def is_null(mu: MonotoneMeasure, mask: int) -> bool:
    return is_subset(mask, null_elements(mu))


# --- pavings ----------------------------------------------------------------

@dataclass(frozen=True)
class Paving:
    """A finite collection of subsets that contains the empty set."""

    ground: GroundSet
    members: tuple[int, ...]

    def __post_init__(self):
        seen = []
        s = set()
        for m in (0, *self.members):
            self.ground.check_mask(m)
            if m not in s:
                s.add(m)
                seen.append(m)
        if len(seen) > MAX_PAVING:
            raise ValueError(f"pavings are limited to {MAX_PAVING} members")
        object.__setattr__(self, "members", tuple(seen))
        object.__setattr__(self, "_set", frozenset(s))

    @classmethod
    def of(cls, n, members: Iterable) -> "Paving":
        ground = _ground(n)
        return cls(ground, tuple(parse_mask(m, ground.n) for m in members))

    @classmethod
    def power_set(cls, n) -> "Paving":
        ground = _ground(n)
        return cls(ground, tuple(range(1 << ground.n)))

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, mask):
        return mask in self._set

    def nonempty(self) -> tuple[int, ...]:
        return self.members[1:]

    def issubset(self, other: "Paving") -> bool:
        return self._set <= other._set

    def is_power_set(self) -> bool:
        return len(self._set) == 1 << self.ground.n

    def is_union_closed(self) -> bool:
        ms = self.members
        return all((a | b) in self._set for a in ms for b in ms)

    def union_closure(self) -> "Paving":
        out = set(self._set)
        frontier = list(out)
        while frontier:
            new = []
            for a in frontier:
                for b in list(out):
                    u = a | b
                    if u not in out:
                        out.add(u)
                        new.append(u)
            frontier = new
        return Paving(self.ground, tuple(sorted(out)))

    def is_chain(self) -> bool:
        ms = sorted(self.members, key=int.bit_count)
        return all(is_subset(a, b) for a, b in zip(ms, ms[1:]))


def inner_set_function(mu: MonotoneMeasure, paving: Paving, B: int):
    """sup{mu(E): E subset of B, E in the paving}; 0 when only the empty set fits."""
    return max(mu(E) for E in paving if is_subset(E, B))


# --- parametrized families ----------------------------------------------------

MONOTONE_TAGS = ("constant", "nondecreasing", "nonincreasing", "general")


def default_t_grid(upper=1, extra: Iterable = (), samples: int = 32) -> list:
    """``samples`` uniform points of [0, upper] plus any extra query points."""
    upper = to_number(upper)
    if upper == INF:
        upper = 1
    step = Fraction(upper) / (samples - 1) if isinstance(upper, (int, Fraction)) else upper / (samples - 1)
    grid = {i * step for i in range(samples)}
    grid.update(to_number(t) for t in extra)
    return sorted(grid)


@dataclass(frozen=True)
class MeasureFamily:
    """t -> mu_t; the tag is declared and only spot-checked on finite grids."""

    at: Callable[[object], MonotoneMeasure]
    tag: str = "general"
    finite: bool = True

    def __post_init__(self):
        if self.tag not in MONOTONE_TAGS:
            raise ValueError(f"unknown family tag {self.tag!r}")

    @classmethod
    def constant(cls, mu: MonotoneMeasure) -> "MeasureFamily":
        return cls(lambda t: mu, "constant", mu.is_finite)

    def __call__(self, t) -> MonotoneMeasure:
        return self.at(t)

    def check_tag(self, ts: Iterable) -> Violation | None:
        """Spot-check the declared tag on the sorted grid ``ts``."""
        ts = sorted(set(ts))
        ms = [self.at(t) for t in ts]
        for t, m in zip(ts, ms):
            v = find_violation(m.values, m.n)
            if v is not None:
                return v
        for (s, ms_), (t, mt) in zip(zip(ts, ms), zip(ts[1:], ms[1:])):
            if self.tag == "constant" and ms_ != mt:
                return Violation(f"mu_{s} != mu_{t}", (), ())
            if self.tag == "nondecreasing" and not ms_ <= mt:
                return Violation(f"mu_{s} not <= mu_{t}", (), ())
            if self.tag == "nonincreasing" and not mt <= ms_:
                return Violation(f"mu_{s} not >= mu_{t}", (), ())
        return None


def as_family(mu) -> MeasureFamily:
    return mu if isinstance(mu, MeasureFamily) else MeasureFamily.constant(mu)


def dual_measure_family(family: MeasureFamily, b, ts: Iterable = ()) -> MeasureFamily:
    """The dual family mu^_t(E) = mu_0(X) - mu_{(b-t)+}(X \\ E).

    Requires mu_t(X) = mu_0(X) < inf, which is verified on ``ts`` together with
    a uniform grid of [0, b].
    """
    b = to_number(b)
    if not 0 < b < INF:
        raise ValueError("b must be a positive real")
    mu0 = family.at(0)
    total = mu0.total
    if total == INF:
        raise ValueError("dual family needs finite total mass")
    for t in default_t_grid(b, ts):
        if family.at(t).total != total:
            raise ValueError(f"total mass varies with t (mu_{t}(X) != mu_0(X))")
    n = mu0.n
    X = full_mask(n)

    def at(t):
        s = b - t
        mu_s = family.at(s if s > 0 else 0)
        return MonotoneMeasure(mu0.ground, tuple(total - mu_s(X & ~m) for m in range(1 << n)))

    return MeasureFamily(at, family.tag, True)


@dataclass(frozen=True)
class PavingProcess:
    """t -> paving, with declared (spot-checked) tags."""

    at: Callable[[object], Paving]
    tags: frozenset = field(default_factory=frozenset)

    @classmethod
    def constant(cls, paving: Paving) -> "PavingProcess":
        tags = {"constant", "nondecreasing", "nonincreasing"}
        if paving.is_union_closed():
            tags.add("closed_under_finite_unions")
        return cls(lambda t: paving, frozenset(tags))

    def __call__(self, t) -> Paving:
        return self.at(t)

    @property
    def is_constant(self) -> bool:
        return "constant" in self.tags

    def check_tags(self, ts: Iterable) -> str | None:
        ts = sorted(set(ts))
        ps = [self.at(t) for t in ts]
        for t, p in zip(ts, ps):
            if "closed_under_finite_unions" in self.tags and not p.is_union_closed():
                return f"paving at t={t} is not closed under unions"
        for s, t, ps_, pt in zip(ts, ts[1:], ps, ps[1:]):
            if "constant" in self.tags and set(ps_) != set(pt):
                return f"paving changes between t={s} and t={t}"
            if "nondecreasing" in self.tags and not ps_.issubset(pt):
                return f"paving at t={s} is not contained in paving at t={t}"
            if "nonincreasing" in self.tags and not pt.issubset(ps_):
                return f"paving at t={t} is not contained in paving at t={s}"
        return None

