"""Transformations of a measure on subsets into a set function on families.

A family (hyperset) is a set of nonempty subset masks.  For exhaustive
checks a family over an ``n``-element ground set is also encoded as an int
whose bit ``j`` stands for the subset mask ``j + 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .cao import Cao, builtin
from .measure import full_mask, parse_mask, mask_literal
from .numeric import INF, exact_div, to_number

MAX_VALIDATE_N = 4


@dataclass(frozen=True)
class Hyperset:
    """A family of distinct nonempty subsets."""

    members: tuple

    def __post_init__(self):
        ms = tuple(self.members)
        if any(m <= 0 for m in ms):
            raise ValueError("hyperset members must be nonempty subsets")
        if len(set(ms)) != len(ms):
            raise ValueError("hyperset members must be distinct")
        object.__setattr__(self, "members", ms)

    @classmethod
    def of(cls, members: Iterable, n: int | None = None) -> "Hyperset":
        return cls(tuple(parse_mask(m, n) for m in members))

    @classmethod
    def full(cls, n: int) -> "Hyperset":
        return cls(tuple(range(1, 1 << n)))

    @classmethod
    def from_bits(cls, bits: int) -> "Hyperset":
        out, j = [], 0
        while bits:
            if bits & 1:
                out.append(j + 1)
            bits >>= 1
            j += 1
        return cls(tuple(out))

    def to_bits(self) -> int:
        return sum(1 << (m - 1) for m in self.members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def is_chain(self) -> bool:
        ms = sorted(self.members, key=int.bit_count)
        return all(a & ~b == 0 for a, b in zip(ms, ms[1:]))

    def is_disjoint(self) -> bool:
        seen = 0
        for m in self.members:
            if seen & m:
                return False
            seen |= m
        return True

    def to_json(self, n: int) -> list:
        return [mask_literal(m, n) for m in self.members]


def read_hypersets(text: str, n: int | None = None) -> list[Hyperset]:
    """Parse ``{"families": [["0b011", "0b100"], ...]}``."""
    data = json.loads(text) if isinstance(text, str) else text
    if isinstance(data, dict):
        data = data.get("families")
    if not isinstance(data, list):
        raise ValueError("expected {'families': [[mask, ...], ...]}")
    return [Hyperset.of(fam, n) for fam in data]


def _members(B) -> tuple:
    return B.members if isinstance(B, Hyperset) else tuple(B)


def _total(mu, n):
    return mu(full_mask(n))


def _normalized(mu, n):
    if _total(mu, n) != 1:
        raise ValueError("this transform needs a normalized measure (mu(X) = 1)")


# --- the six transforms ----------------------------------------------------------

def m2m_sup(mu, B) -> object:
    """Largest measure of a member; 0 for the empty family."""
    return max((mu(m) for m in _members(B)), default=0)


def m2m_weighted(mu, g: Callable, B, n: int):
    """sum of nu over the family / sum of nu over all nonempty subsets, nu(B) = g(mu(B), |B|)."""
    nu = [g(mu(m), m.bit_count()) for m in range(1, 1 << n)]
    if any(not v > 0 for v in nu):
        raise ValueError("weight function g must be positive")
    return exact_div(sum(nu[m - 1] for m in _members(B)), sum(nu))


def m2m_union(mu, B):
    """Measure of the union of the members (0 for the empty family)."""
    u = 0
    for m in _members(B):
        u |= m
    return mu(u)


def _pair_sum(mu, ms):
    return sum(mu(a | b) for a in ms for b in ms)


def m2m_pairwise(mu, B, n: int):
    """Sum of mu(B_i | B_j) over ordered pairs of members, diagonal included,
    divided by the same sum over all nonempty subsets."""
    _normalized(mu, n)
    return exact_div(_pair_sum(mu, _members(B)), _pair_sum(mu, range(1, 1 << n)))


def m2m_intersection_dual(mu, B, n: int):
    """1 - mu(intersection of the complements); the empty family gives 1 - mu(X)."""
    _normalized(mu, n)
    inter = full_mask(n)
    for m in _members(B):
        inter &= ~m
    return 1 - mu(inter)


def m2m_glm(mu, cao: Cao, f: Sequence, a, B):
    """sup{mu(B): A(f|B) >= a, B a member or empty}."""
    best = 0
    for m in _members(B):
        v = mu(m)
        if v > best and cao(f, m) >= a:
            best = v
    return best


WEIGHT_FUNCTIONS = {
    "one": lambda x, k: 1,
    "x_plus_1": lambda x, k: x + 1,
    "size": lambda x, k: k,
}

TRANSFORMS = ("sup", "weighted", "union", "pairwise", "intersection_dual", "glm")


def make_transform(name: str, mu, n: int | None = None, **params) -> Callable:
    """Return ``B -> value`` for one of :data:`TRANSFORMS` (or ``m1``..``m6``)."""
    aliases = {f"m{i + 1}": t for i, t in enumerate(TRANSFORMS)}
    name = aliases.get(name, name)
    n = n if n is not None else mu.n
    if name == "sup":
        return lambda B: m2m_sup(mu, B)
    if name == "weighted":
        g = params.get("g", "one")
        g = WEIGHT_FUNCTIONS[g] if isinstance(g, str) else g
        return lambda B: m2m_weighted(mu, g, B, n)
    if name == "union":
        return lambda B: m2m_union(mu, B)
    if name == "pairwise":
        _normalized(mu, n)
        denom = _pair_sum(mu, range(1, 1 << n))
        return lambda B: exact_div(_pair_sum(mu, _members(B)), denom)
    if name == "intersection_dual":
        return lambda B: m2m_intersection_dual(mu, B, n)
    if name == "glm":
        cao = params.get("cao", builtin("inf"))
        if isinstance(cao, str):
            cao = builtin(cao)
        f = tuple(to_number(v) for v in params["f"])
        a = to_number(params.get("a", 0))
        return lambda B: m2m_glm(mu, cao, f, a, B)
    raise ValueError(f"unknown transform {name!r}; known: {', '.join(TRANSFORMS)}")


# --- capacity validation ----------------------------------------------------------

@dataclass
class HypersetCapacityReport:
    empty_value: object
    full_value: object
    monotone: bool
    witness: tuple | None = None
    checked_pairs: int = 0

    @property
    def is_capacity(self) -> bool:
        return self.empty_value == 0 and self.full_value == 1 and self.monotone

    def describe(self, n: int) -> str:
        lines = [f"value on empty family: {self.empty_value}",
                 f"value on full family: {self.full_value}",
                 f"monotone on {self.checked_pairs} pairs: {self.monotone}"]
        if self.witness:
            small, big = self.witness
            lines.append("witness: " + json.dumps([small.to_json(n), big.to_json(n)]))
        lines.append("capacity" if self.is_capacity else "not a capacity")
        return "\n".join(lines)


def validate_capacity(transform: Callable, n: int, full_lattice: bool = False) -> HypersetCapacityReport:
    """Check value 0 on the empty family, 1 on the full family and monotonicity.

    Monotonicity is checked on covering pairs (one member added), which is
    equivalent to the full check; ``full_lattice`` compares every nested pair
    instead and is limited to n <= 3.
    """
    if n > MAX_VALIDATE_N:
        raise ValueError(f"family lattice is only enumerated for n <= {MAX_VALIDATE_N}")
    if full_lattice and n > 3:
        raise ValueError("full-lattice validation is limited to n <= 3")
    m = (1 << n) - 1
    size = 1 << m
    values = [transform(Hyperset.from_bits(F)) for F in range(size)]
    pairs = 0
    for F in range(size):
        vf = values[F]
        if full_lattice:
            sups = (G for G in range(size) if G != F and F & ~G == 0)
        else:
            sups = (F | (1 << j) for j in range(m) if not F >> j & 1)
        for G in sups:
            pairs += 1
            if vf > values[G]:
                return HypersetCapacityReport(values[0], values[-1], False,
                                              (Hyperset.from_bits(F), Hyperset.from_bits(G)), pairs)
    return HypersetCapacityReport(values[0], values[-1], True, None, pairs)


# --- applications -------------------------------------------------------------------

def coalition_power(mu, B):
    """Sum of the members' measures (seat shares of the parties in a coalition)."""
    return sum(mu(m) for m in _members(B))


@dataclass(frozen=True)
class BestSystem:
    value: object
    system: tuple | None
    price: object = None
    survival: object = None


def best_system(p_b: Sequence, p_c: Sequence, price_b: Sequence, price_c: Sequence,
                budget, p_min) -> BestSystem:
    """Cheapest parallel pair (b_i, c_j) whose survival probability is >= p_min.

    The value is the glm-style transform over the family of all pairs with
    mu(B) = (1 - price(B)/budget)+ and the parallel operator
    1 - (1 - p(b))(1 - p(c)).  ``system`` holds 0-based (i, j), or None when
    no pair qualifies within budget.
    """
    k, m = len(p_b), len(p_c)
    if len(price_b) != k or len(price_c) != m:
        raise ValueError("prices must align with components")
    budget, p_min = to_number(budget), to_number(p_min)
    if not 0 < budget < INF:
        raise ValueError("budget must be positive")
    f = tuple(to_number(v) for v in (*p_b, *p_c))
    if any(v < 0 or v > 1 for v in f):
        raise ValueError("survival probabilities must lie in [0, 1]")
    prices = [to_number(v) for v in (*price_b, *price_c)]

    def price(B):
        return sum(prices[i] for i in range(k + m) if B >> i & 1)

    def mu(B):
        if B == 0:
            return 0
        return max(1 - exact_div(price(B), budget), 0)

    pairs = Hyperset(tuple((1 << i) | (1 << (k + j)) for i in range(k) for j in range(m)))
    cao = builtin("parallel")
    value = m2m_glm(mu, cao, f, p_min, pairs)
    if value == 0:
        return BestSystem(0, None)
    for B in pairs:
        if mu(B) == value and cao(f, B) >= p_min:
            i = (B & ((1 << k) - 1)).bit_length() - 1
            j = (B >> k).bit_length() - 1
            return BestSystem(value, (i, j), price(B), cao(f, B))
    raise AssertionError("unreachable")
