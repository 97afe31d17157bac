"""Random instance generators and brute-force oracles shared by the tests.

The oracles work on tuples of element indices produced by
``itertools.combinations`` and never call the package's enumeration code.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from levelmeasure.measure import MonotoneMeasure, GroundSet, Paving

DYADIC = tuple(Fraction(k, 4) for k in range(9))  # 0, 1/4, ..., 2


# --- generators -----------------------------------------------------------------

def random_measure_values(rng: random.Random, n: int, steps=(0, 0, Fraction(1, 4), Fraction(1, 2), 1),
                          normalize: bool = False) -> tuple:
    """Table of a random monotone measure; zero steps leave room for null sets."""
    vals = [0] * (1 << n)
    for m in range(1, 1 << n):
        base = max(vals[m & ~(1 << i)] for i in range(n) if m >> i & 1)
        vals[m] = base + rng.choice(steps)
    if vals[-1] == 0:
        vals[-1] = 1
    if normalize:
        total = vals[-1]
        vals = [Fraction(v) / total for v in vals]
    return tuple(vals)


def random_measure(rng, n, **kw) -> MonotoneMeasure:
    return MonotoneMeasure(GroundSet(n), random_measure_values(rng, n, **kw))


def random_function(rng, n, grid=DYADIC) -> tuple:
    return tuple(rng.choice(grid) for _ in range(n))


def random_comonotone_pair(rng, n, grid=DYADIC):
    """Two functions sorted along the same random permutation of the points."""
    order = list(range(n))
    rng.shuffle(order)
    fs = sorted(rng.choice(grid) for _ in range(n))
    gs = sorted(rng.choice(grid) for _ in range(n))
    f, g = [0] * n, [0] * n
    for rank, i in enumerate(order):
        f[i], g[i] = fs[rank], gs[rank]
    return tuple(f), tuple(g)


def random_paving(rng, n, density=0.5) -> Paving:
    members = [m for m in range(1, 1 << n) if rng.random() < density]
    return Paving.of(n, members)


# --- oracles ----------------------------------------------------------------------

def index_sets(n):
    """Every subset of range(n) as a tuple, empty set first."""
    for k in range(n + 1):
        yield from itertools.combinations(range(n), k)


def bits(idx) -> int:
    return sum(1 << i for i in idx)


def oracle_null(mu, idx, n) -> bool:
    """N is null when adding it never changes the measure."""
    N = bits(idx)
    return all(mu(bits(F) | N) == mu(bits(F)) for F in index_sets(n))


def oracle_ess_inf(mu, f, idx, n):
    """Largest value v of f on E with E and {f < v} null (within E)."""
    best = None
    for v in sorted({f[i] for i in idx}):
        below = tuple(i for i in idx if f[i] < v)
        if oracle_null(mu, below, n):
            best = v
    return best


def oracle_geo_at_least(f, idx, a) -> bool:
    """geometric mean of f over E >= a, decided with exact powers."""
    return math.prod(f[i] for i in idx) >= Fraction(a) ** len(idx)


def oracle_geo_at_most(f, idx, a) -> bool:
    return math.prod(f[i] for i in idx) <= Fraction(a) ** len(idx)


def oracle_bounds(kind, mu, f, a, n):
    """(gsf, mu({f > a}), mu({f >= a}), glm) over the full power set."""
    X = tuple(range(n))
    if kind == "geo_mean":
        ge = lambda idx: oracle_geo_at_least(f, idx, a)  # noqa: E731
        le = lambda idx: oracle_geo_at_most(f, idx, a)  # noqa: E731
    else:
        ge = lambda idx: oracle_ess_inf(mu, f, idx, n) >= a  # noqa: E731
        le = lambda idx: oracle_ess_inf(mu, f, idx, n) <= a  # noqa: E731
    glm_v = max([0] + [mu(bits(E)) for E in index_sets(n) if E and ge(E)])
    gsf_v = min([mu(bits(X))] + [mu(bits(X) & ~bits(E)) for E in index_sets(n) if E and le(E)])
    strict = mu(bits(i for i in X if f[i] > a))
    weak = mu(bits(i for i in X if f[i] >= a))
    return gsf_v, strict, weak, glm_v


def oracle_glm(agg, mu, f, t, members):
    """sup of mu over the nonempty members whose aggregate reaches t."""
    return max([0] + [mu(E) for E in members if E and agg(f, E) >= t])


# --- scientometric oracle ------------------------------------------------------------

def oracle_index(name: str, citations) -> int:
    """Direct scan of the defining inequality on the zero-padded record.

    Past the record the padded zeros make every min-, product- and
    harmonic-type condition false, so only the citation sum (g-index) is
    scanned further, up to the last k with k * k <= total.
    """
    f = list(citations)
    L, total = len(f), sum(f)
    horizon = max(L, math.isqrt(total)) + 1 if name == "g" else L + 1
    pad = f + [0] * (horizon - L)
    best, low, acc, prod, recip = 0, None, 0, 1, Fraction(0)
    for k, v in enumerate(pad, 1):
        low = v if low is None else min(low, v)
        if name == "h":
            ok = low >= k
        elif name == "h_a(2)":
            ok = low >= 2 * k
        elif name == "media(3)":
            ok = low >= 3 * k
        elif name == "p":
            ok = low > 0
        elif name in ("h2", "kosmulski"):
            ok = low >= k * k
        elif name == "g":
            acc += v
            ok = acc >= k * k
        elif name == "t":
            prod *= v
            ok = prod >= k ** k
        elif name == "f":
            # once the reciprocal sum passes 1 (or hits a zero) it never recovers
            if recip is not None and recip <= 1:
                recip = recip + Fraction(1, v) if v else None
            ok = recip is not None and recip <= 1
        else:
            raise ValueError(name)
        if ok:
            best = k
    return best


def random_record(rng: random.Random, max_len: int = 200, max_cite: int = 10 ** 6) -> list:
    """A nonincreasing citation list with a mix of heavy and light tails."""
    L = rng.randint(0, max_len)
    style = rng.random()
    if style < 0.3:
        vals = [rng.randint(0, 30) for _ in range(L)]
    elif style < 0.6:
        vals = [min(max_cite, int(rng.paretovariate(1.2) * 3) - 1) for _ in range(L)]
    elif style < 0.8:
        vals = [rng.randint(0, max_cite) for _ in range(L)]
    else:
        vals = [rng.randint(1, 4) for _ in range(L)]
    return sorted(vals, reverse=True)
