"""Citation indices as generalized level measures over the prefix paving.

A record f(1) >= f(2) >= ... is finite with an implicit zero tail.  Indices
take the form

    sup{k: g(A(f|[k])) >= a * k}      (per-size normalization)
    sup{k: g(A(f|[k])) >= a}          (absolute normalization)

over k = 0, 1, 2, ...  Each named index is computed twice: by its textbook
formula (:func:`named_index`) and through the operator form
(:func:`glm_index`).
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cao import Cao, builtin, named_map
from .measure import Paving, counting_measure
from .numeric import INF, exact_div, to_number

NORMALIZATIONS = ("per_size", "absolute")
# operators whose value on [k] no longer changes once k passes the record
TAIL_STABLE = ("inf", "sup", "sum", "prod", "geo_mean", "harmonic")
INDEX_BASES = TAIL_STABLE + ("mean",)


class UnsortedRecordWarning(UserWarning):
    pass


@dataclass(frozen=True)
class ScientificRecord:
    """Citation counts sorted in nonincreasing order, optional per-paper years and ids."""

    citations: tuple
    years: tuple | None = None
    ids: tuple | None = None
    name: str = ""

    def __post_init__(self):
        c = tuple(self.citations)
        for v in c:
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise ValueError(f"citation counts must be nonnegative integers, got {v!r}")
        if any(a < b for a, b in zip(c, c[1:])):
            raise ValueError("citations must be nonincreasing; use ScientificRecord.from_papers")
        for extra in (self.years, self.ids):
            if extra is not None and len(extra) != len(c):
                raise ValueError("years/ids must align with citations")
        object.__setattr__(self, "citations", c)

    @classmethod
    def from_papers(cls, citations: Sequence, years: Sequence | None = None,
                    ids: Sequence | None = None, name: str = "", sort: bool = True) -> "ScientificRecord":
        """Build a record, sorting descending (with a warning) unless ``sort`` is False."""
        c = [_citation(v) for v in citations]
        order = list(range(len(c)))
        if any(c[i] < c[i + 1] for i in range(len(c) - 1)):
            if not sort:
                raise ValueError("record is not nonincreasing")
            label = f"record {name}" if name else "record"
            warnings.warn(f"{label} was not sorted; sorting descending",
                          UnsortedRecordWarning, stacklevel=2)
            order.sort(key=lambda i: -c[i])
        pick = lambda xs: None if xs is None else tuple(xs[i] for i in order)  # noqa: E731
        return cls(tuple(c[i] for i in order), pick(years), pick(ids), name)

    def __len__(self):
        return len(self.citations)

    def f(self, k: int) -> int:
        """Citations of the k-th paper (1-based), 0 beyond the record."""
        return self.citations[k - 1] if 1 <= k <= len(self.citations) else 0


def _citation(v) -> int:
    if isinstance(v, str):
        v = v.strip()
        if not v.lstrip("-").isdigit():
            raise ValueError(f"citation count is not an integer: {v!r}")
        v = int(v)
    if isinstance(v, float) and v.is_integer():
        v = int(v)
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ValueError(f"citation count must be a nonnegative integer, got {v!r}")
    return v


def _as_record(record) -> ScientificRecord:
    if isinstance(record, ScientificRecord):
        return record
    return ScientificRecord.from_papers(record)


# --- operator form --------------------------------------------------------------

@dataclass(frozen=True)
class IndexSpec:
    """base operator, post map g, normalization and threshold a.

    ``threshold`` may be the string ``"limit"`` for the a -> 0+ limit.
    """

    base: str = "inf"
    g: object = "identity"
    normalization: str = "per_size"
    threshold: object = 1
    _g: object = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.base not in INDEX_BASES:
            raise ValueError(f"base must be one of {INDEX_BASES}")
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"normalization must be one of {NORMALIZATIONS}")
        if self.threshold != "limit":
            a = to_number(self.threshold)
            if not 0 <= a < INF:
                raise ValueError("threshold must be a finite nonnegative number or 'limit'")
            object.__setattr__(self, "threshold", a)
        gf = named_map(self.g)
        if gf(0) != 0:
            raise ValueError("g must satisfy g(0) = 0")
        probes = [gf(x) for x in (0, 1, 2, 10, 10**3, 10**6, 10**12)]
        if any(p > q for p, q in zip(probes, probes[1:])):
            raise ValueError("g must be nondecreasing")
        if probes[-1] == probes[-2]:
            warnings.warn("g looks bounded; indices are still computed", UserWarning, stacklevel=2)
        object.__setattr__(self, "_g", gf)

    def qualifies(self, value, k: int) -> bool:
        if self.threshold == "limit":
            return value > 0
        if self.normalization == "per_size":
            return value >= self.threshold * k
        return value >= self.threshold

    def cao(self, empty=INF) -> Cao:
        """The operator g(A(f|E)) / |E| (per-size) or g(A(f|E)) (absolute)."""
        inner, gf = builtin(self.base, empty), self._g
        if self.normalization == "per_size":
            fn = lambda f, E: exact_div(gf(inner.fn(f, E)), E.bit_count())  # noqa: E731
        else:
            fn = lambda f, E: gf(inner.fn(f, E))  # noqa: E731
        return Cao(fn, empty, f"index[{self.base}]")


def _tail_max(spec: IndexSpec, G, length: int):
    """Largest qualifying k > length when g(A(f|[k])) = G for all such k."""
    if spec.threshold == "limit" or spec.normalization == "absolute" or spec.threshold == 0:
        return INF if spec.qualifies(G, length + 1) else 0
    a = spec.threshold
    k = math.floor(float(G) / float(a)) if G else 0
    while spec.qualifies(G, k + 1):
        k += 1
    while k > 0 and not spec.qualifies(G, k):
        k -= 1
    return k if k > length else 0


def glm_index(spec: IndexSpec, record) -> int | float:
    """sup{|E|: E = [k], g(A(f|E)) >= a|E| (or >= a)} over k >= 0.

    The zero tail is handled analytically for operators whose value stops
    changing past the record; ``inf`` is returned when every k qualifies.
    """
    rec = _as_record(record)
    f = rec.citations
    inner, gf = builtin(spec.base), spec._g
    best = 0
    for k, v in enumerate(inner.prefix_values(f), 1):
        if spec.qualifies(gf(v), k):
            best = k
    L = len(f)
    padded = f + (0,)
    if spec.base in TAIL_STABLE:
        G = gf(inner.fn(padded, (1 << (L + 1)) - 1))
        return max(best, _tail_max(spec, G, L))
    # mean: g(S/k) is nonincreasing past the record, so scan until it fails
    if spec.threshold == 0 or (spec.threshold == "limit" and sum(f) > 0):
        return INF
    k = L + 1
    while spec.qualifies(gf(exact_div(sum(f), k)), k):
        best = k
        k += 1
    return best


def prefix_paving(length: int) -> Paving:
    """{empty, [1], [2], ..., [length]} on a ground set of size ``length``."""
    return Paving.of(length, [(1 << k) - 1 for k in range(1, length + 1)])


def glm_index_small(spec: IndexSpec, record, pad: int = 1) -> int:
    """The same index through the generic glm machinery (short records only).

    The record is padded with ``pad`` zeros; the counting measure and prefix
    paving live on that finite ground set, so tails longer than ``pad`` are
    not seen.
    """
    from .glm import glm_const

    rec = _as_record(record)
    f = rec.citations + (0,) * pad
    mu = counting_measure(len(f))
    a = 0 if spec.threshold == "limit" else spec.threshold
    if spec.threshold == "limit":
        # a -> 0+: qualifying means a positive operator value
        cao = spec.cao()
        return max((E.bit_count() for E in prefix_paving(len(f)).nonempty() if cao(f, E) > 0), default=0)
    return glm_const(spec.cao(), mu, f, a, prefix_paving(len(f)))


# --- named indices -------------------------------------------------------------

def _parse_name(name: str):
    """``"h_a(2)"`` / ``"h_a:2"`` -> ("h_a", "2")."""
    s = name.strip()
    if s.endswith(")") and "(" in s:
        head, _, arg = s[:-1].partition("(")
        return head.strip(), arg.strip()
    head, _, arg = s.partition(":")
    return head.strip(), (arg.strip() or None)


INDEX_NAMES = ("h", "h_a", "p", "kosmulski", "h2", "g", "t", "f", "media")
_ALIASES = {"g_index": "g", "t_index": "t", "f_index": "f", "hirsch": "h"}


def index_spec(name: str, param=None) -> IndexSpec:
    """The operator form of a named index."""
    head, arg = _parse_name(name)
    head = _ALIASES.get(head, head)
    param = arg if param is None else param
    if head == "h":
        return IndexSpec("inf", "identity", "per_size", 1)
    if head == "h_a":
        return IndexSpec("inf", "identity", "per_size", _required(param, "h_a"))
    if head == "p":
        return IndexSpec("inf", "identity", "per_size", "limit")
    if head == "kosmulski":
        return IndexSpec("inf", param or "sqrt", "per_size", 1)
    if head == "h2":
        return IndexSpec("inf", "sqrt", "per_size", 1)
    if head == "g":
        return IndexSpec("sum", "sqrt", "per_size", 1)
    if head == "t":
        return IndexSpec("geo_mean", "identity", "per_size", 1)
    if head == "f":
        return IndexSpec("harmonic", "identity", "absolute", 1)
    if head == "media":
        return IndexSpec("inf", "identity", "per_size", _required(param, "media"))
    raise ValueError(f"unknown index {name!r}; known: {', '.join(INDEX_NAMES)}")


def _required(param, name):
    if param is None:
        raise ValueError(f"index {name} needs a parameter, e.g. {name}(2)")
    a = to_number(param)
    if not 0 < a < INF:
        raise ValueError(f"{name} parameter must be positive")
    return a


def _last_true(pred, upto: int) -> int:
    best = 0
    for k in range(1, upto + 1):
        if pred(k):
            best = k
    return best


def named_index(name: str, record, param=None) -> int | float:
    """Textbook formula for a named index (independent of :func:`glm_index`)."""
    rec = _as_record(record)
    f, L = rec.citations, len(rec.citations)
    head, arg = _parse_name(name)
    head = _ALIASES.get(head, head)
    param = arg if param is None else param
    if head == "h":
        return _last_true(lambda k: f[k - 1] >= k, L)
    if head in ("h_a", "media"):
        a = _required(param, head)
        return _last_true(lambda k: f[k - 1] >= a * k, L)
    if head == "p":
        return sum(1 for v in f if v >= 1)
    if head in ("kosmulski", "h2"):
        g = named_map(param or "sqrt") if head == "kosmulski" else named_map("sqrt")
        return _last_true(lambda k: g(f[k - 1]) >= k, L)
    if head == "g":
        total, best = 0, 0
        for k, v in enumerate(f, 1):
            total += v
            if total >= k * k:
                best = k
        tail = math.isqrt(total)  # zero tail: the sum stays put past the record
        return max(best, tail if tail > L else 0)
    if head == "t":
        prod, best = 1, 0
        for k, v in enumerate(f, 1):
            prod *= v
            if prod >= k ** k:  # geometric mean >= k
                best = k
        return best
    if head == "f":
        s, best = Fraction(0), 0
        for k, v in enumerate(f, 1):
            if v == 0:
                break
            s += Fraction(1, v)
            if s <= 1:  # harmonic aggregate 1/s >= 1
                best = k
        return best
    raise ValueError(f"unknown index {name!r}; known: {', '.join(INDEX_NAMES)}")


def compute_indices(records: Sequence, names: Sequence[str]) -> list[dict]:
    """Table of named index values, one row per record."""
    rows = []
    for i, rec in enumerate(records):
        rec = _as_record(rec)
        row = {"record": rec.name or str(i + 1), "papers": len(rec)}
        for name in names:
            row[name] = named_index(name, rec)
        rows.append(row)
    return rows


# --- windows -------------------------------------------------------------------

def recent_window_index(record: ScientificRecord, window: tuple, k, paving: str = "subsets") -> int:
    """Papers published in ``window`` (inclusive year range) with >= k citations.

    With ``paving="subsets"`` the paving is every subset of the window, and the
    level measure over it is the inner set function of {f >= k}: a count.
    ``paving="whole"`` uses {empty, window} instead, which returns the window
    size when every paper in it qualifies and 0 otherwise.
    """
    if record.years is None:
        raise ValueError("record has no publication years")
    lo, hi = window
    k = to_number(k)
    in_window = [c for c, y in zip(record.citations, record.years) if lo <= y <= hi]
    if paving == "subsets":
        # sup{|E|: E within the window, min over E >= k} = |window and {f >= k}|
        return sum(1 for c in in_window if c >= k)
    if paving == "whole":
        return len(in_window) if in_window and min(in_window) >= k else 0
    raise ValueError("paving must be 'subsets' or 'whole'")


# --- input ---------------------------------------------------------------------

def _record_from_papers(papers, name="", sort=True) -> ScientificRecord:
    cites, years, ids = [], [], []
    for j, p in enumerate(papers):
        if isinstance(p, dict):
            if "citations" not in p:
                raise ValueError(f"paper {j + 1} has no 'citations'")
            cites.append(p["citations"])
            years.append(p.get("year"))
            ids.append(p.get("id", str(j + 1)))
        else:
            cites.append(p)
            years.append(None)
            ids.append(str(j + 1))
    has_years = bool(years) and all(y is not None for y in years)
    return ScientificRecord.from_papers(cites, [int(y) for y in years] if has_years else None,
                                        ids, name, sort)


def read_records(text: str, fmt: str = "auto", sort: bool = True) -> list[ScientificRecord]:
    """Parse records from JSON or CSV text.

    JSON: ``{"papers": [...]}``, ``{"records": [{"name":..., "papers": [...]}]}``
    or a bare list of counts.  Papers are counts or objects with
    ``citations`` (and optional ``id``, ``year``).  CSV: one count per line,
    or ``id,citations[,year]`` rows; a header row is skipped.
    """
    s = text.strip()
    if fmt == "auto":
        fmt = "json" if s[:1] in "[{" else "csv"
    if fmt == "json":
        data = json.loads(s)
        if isinstance(data, list):
            return [_record_from_papers(data, sort=sort)]
        if "records" in data:
            return [_record_from_papers(r["papers"], str(r.get("name", i + 1)), sort)
                    for i, r in enumerate(data["records"])]
        if "papers" in data:
            return [_record_from_papers(data["papers"], str(data.get("name", "")), sort)]
        raise ValueError("JSON records need 'papers' or 'records'")
    if fmt != "csv":
        raise ValueError(f"unknown record format {fmt!r}")
    papers = []
    for row in csv.reader(io.StringIO(s)):
        row = [c.strip() for c in row if c.strip()]
        if not row or row[0].startswith("#"):
            continue
        if len(row) == 1:
            if not papers and not row[0].isdigit():
                continue  # header
            papers.append({"citations": _citation(row[0])})
        else:
            if not papers and not row[1].isdigit():
                continue
            p = {"id": row[0], "citations": _citation(row[1])}
            if len(row) > 2:
                p["year"] = int(row[2])
            papers.append(p)
    return [_record_from_papers(papers, sort=sort)]
