"""Extended nonnegative reals and exact radicals.

Values throughout the package are plain Python numbers (``int``,
``fractions.Fraction``, ``float``) with ``math.inf`` standing for +infinity.
Rational inputs stay rational through sums, products, minima and maxima, so
comparisons on dyadic or rational data are exact.

:class:`Radical` keeps ``p ** (1/k)`` for rational ``p`` symbolically so that
geometric means and square roots of integer data compare exactly against
rational thresholds (``Radical(p, k) >= q`` iff ``p >= q**k``).
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

INF = math.inf


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Radical)) and not isinstance(x, bool)


def to_number(x):
    """Parse a scalar: numbers pass through, strings may be "inf" or "p/q"."""
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, Fraction, float, Radical)):
        return x
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "+inf", "infinity", "∞"):
            return INF
        try:
            q = Fraction(s)
        except ValueError:
            raise ValueError(f"not a number: {x!r}") from None
        return q.numerator if q.denominator == 1 else q
    raise TypeError(f"not a number: {x!r}")


def check_ext(x, what="value"):
    """Validate a member of [0, inf]."""
    if isinstance(x, float) and math.isnan(x):
        raise ValueError(f"{what} is NaN")
    if x < 0:
        raise ValueError(f"{what} must be nonnegative, got {x!r}")
    return x


def ext_mul(a, b):
    # inf * 0 = 0
    if a == 0 or b == 0:
        return 0
    return a * b


def ext_div(a, b):
    # x / 0 = inf for every x in [0, inf]
    if b == 0:
        return INF
    if b == INF:
        return 0 if a != INF else INF
    return a / b


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    if n.bit_length() <= 1000:
        x = int(round(float(n) ** (1.0 / k)))
        if x.bit_length() <= 48:  # float guess is within one of the answer
            while x ** k > n:
                x -= 1
            while (x + 1) ** k <= n:
                x += 1
            return x
    x = 1 << -(-n.bit_length() // k)  # upper bound
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _exact_root(q: Fraction, k: int):
    """Return the rational k-th root of q if it exists, else None."""
    num, den = q.numerator, q.denominator
    rn, rd = _iroot(num, k), _iroot(den, k)
    if rn ** k == num and rd ** k == den:
        return Fraction(rn, rd)
    return None


def _norm(q: Fraction):
    return q.numerator if q.denominator == 1 else q


class Radical:
    """The nonnegative real ``radicand ** (1/index)`` with exact comparisons.

    Arithmetic other than scaling by rationals and integer powers falls back
    to ``float``.
    """

    __slots__ = ("radicand", "index")

    def __init__(self, radicand, index: int):
        if index < 1:
            raise ValueError("index must be >= 1")
        radicand = Fraction(radicand)
        if radicand < 0:
            raise ValueError("radicand must be nonnegative")
        self.radicand = radicand
        self.index = int(index)

    def __float__(self):
        p, k = self.radicand, self.index
        if p == 0:
            return 0.0
        try:
            return float(p) ** (1.0 / k)
        except OverflowError:
            pass
        logp = math.log(p.numerator) - math.log(p.denominator)
        return math.exp(logp / k)

    def __repr__(self):
        return f"Radical({self.radicand}, {self.index})"

    def __str__(self):
        return repr(float(self))

    def _cmp(self, other) -> int:
        if isinstance(other, Radical):
            a = self.radicand ** other.index
            b = other.radicand ** self.index
        elif isinstance(other, int) and not isinstance(other, bool):
            if other < 0:
                return 1
            p = self.radicand
            a, b = p.numerator, other ** self.index * p.denominator
        elif isinstance(other, (Rational, float)):
            if isinstance(other, float):
                if math.isnan(other):
                    raise ValueError("comparison with NaN")
                if math.isinf(other):
                    return -1 if other > 0 else 1
            if other < 0:
                return 1
            a = self.radicand
            b = Fraction(other) ** self.index
        else:
            return NotImplemented
        return (a > b) - (a < b)

    def __eq__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def canonical(self) -> tuple:
        """(p, k) with the smallest index k representing the same number."""
        p, k = self.radicand, self.index
        d = 2
        while d <= k:
            if k % d == 0:
                r = _exact_root(p, d)
                if r is not None:
                    p, k = r, k // d
                    continue
            d += 1
        return p, k

    def __hash__(self):
        p, k = self.canonical()
        return hash(_norm(p)) if k == 1 else hash((p, k))

    def __bool__(self):
        return self.radicand != 0

    def __mul__(self, other):
        if isinstance(other, Rational):
            if other < 0:
                return float(self) * other
            return root(self.radicand * Fraction(other) ** self.index, self.index)
        if isinstance(other, Radical):
            k = self.index * other.index // math.gcd(self.index, other.index)
            return root(self.radicand ** (k // self.index) * other.radicand ** (k // other.index), k)
        return float(self) * other

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational) and other > 0:
            return self * (1 / Fraction(other))
        return float(self) / other

    def __rtruediv__(self, other):
        return other / float(self)

    def __pow__(self, e):
        if isinstance(e, int) and e >= 0:
            g = math.gcd(e, self.index)
            return root(self.radicand ** (e // g), self.index // g)
        return float(self) ** e

    def __add__(self, other):
        return float(self) + other

    __radd__ = __add__

    def __sub__(self, other):
        return float(self) - other

    def __rsub__(self, other):
        return other - float(self)

    def __neg__(self):
        return -float(self)


def root(x, k: int):
    """k-th root of x in [0, inf]; exact (Radical or rational) for exact x."""
    if k == 1:
        return x
    if x == INF:
        return INF
    if isinstance(x, Radical):
        return root(x.radicand, x.index * k)
    if type(x) is int:
        if x < 0:
            raise ValueError("root of a negative number")
        r = _iroot(x, k)
        return r if r ** k == x else Radical(x, k)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        q = Fraction(x)
        if q < 0:
            raise ValueError("root of a negative number")
        r = _exact_root(q, k)
        if r is not None:
            return _norm(r)
        return Radical(q, k)
    return float(x) ** (1.0 / k)


def power(x, p):
    """x ** p for x in [0, inf] and p > 0, exact where possible."""
    if x == INF:
        return INF
    if isinstance(p, float) and p.is_integer():
        p = int(p)
    if isinstance(p, int):
        return x ** p
    if isinstance(p, Fraction) and is_exact(x):
        return root(x ** p.numerator, p.denominator)
    return float(x) ** float(p)


def fmt(x, digits: int = 12) -> str:
    """Render a value with ``digits`` significant digits; infinity as "inf"."""
    if x == INF:
        return "inf"
    return f"{float(x):.{digits}g}"


def isclose(a, b, rel_tol: float = 1e-12) -> bool:
    if a == b:
        return True
    if a == INF or b == INF:
        return False
    return math.isclose(float(a), float(b), rel_tol=rel_tol, abs_tol=rel_tol)


def exact_div(a, b):
    """a / b, staying rational when both operands are."""
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return _norm(Fraction(a) / b)
    return a / b
