"""Truncated Hilbert series, interval partitions, induced decompositions,
backtracking partition enumeration, and Hilbert depth.

A partition writes the truncated series as a sum of interval indicator
polynomials Q[a,b]; each interval [a,b] induces one summand (Z_b, c) per
lattice point c of G[a,b], where Z_b collects the coordinates at which b
touches g and G[a,b] freezes exactly those coordinates at a.  The depth
of the induced decomposition is min |Z_b| over the intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from . import degrees as dg
from .errors import InputFormatError, PreconditionError, ShapeError
from .modules import GradedModule


class TruncatedSeries:
    """Coefficients dim M_a for every a in [0, g]."""

    __slots__ = ("g", "coefficients")

    def __init__(self, g: tuple, coefficients: dict):
        self.g = tuple(g)
        self.coefficients = {tuple(a): int(c) for a, c in coefficients.items()}
        for a in dg.box(dg.zero(len(self.g)), self.g):
            self.coefficients.setdefault(a, 0)

    def coefficient(self, a: tuple) -> int:
        return self.coefficients.get(tuple(a), 0)

    def total_mass(self) -> int:
        return sum(self.coefficients.values())

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.g == other.g
            and self.coefficients == other.coefficients
        )

    def __repr__(self):
        nonzero = {a: c for a, c in sorted(self.coefficients.items()) if c}
        return f"TruncatedSeries(g={self.g}, {nonzero})"


def truncated_series(gm: GradedModule) -> TruncatedSeries:
    return TruncatedSeries(gm.g, {a: gm.dim(a) for a in dg.box(dg.zero(gm.n), gm.g)})


class Interval(NamedTuple):
    a: tuple
    b: tuple


def interval_poly(iv: Interval, g: tuple | None = None) -> TruncatedSeries:
    """Indicator series of the interval [a, b] inside the box [0, g]."""
    a, b = tuple(iv[0]), tuple(iv[1])
    if not dg.leq(a, b):
        raise ShapeError(f"interval needs a <= b, got {a}, {b}")
    if g is None:
        g = b
    if not dg.leq(b, tuple(g)):
        raise ShapeError(f"interval upper bound {b} exceeds g = {tuple(g)}")
    return TruncatedSeries(g, {c: 1 for c in dg.box(a, b)})


class HilbertPartition:
    """A multiset of intervals, stored canonically sorted."""

    __slots__ = ("intervals",)

    def __init__(self, intervals):
        self.intervals = tuple(sorted(Interval(tuple(a), tuple(b)) for a, b in intervals))
        for a, b in self.intervals:
            if not dg.leq(a, b):
                raise ShapeError(f"interval needs a <= b, got {a}, {b}")

    def series(self, g: tuple) -> TruncatedSeries:
        coeffs: dict[tuple, int] = {}
        for a, b in self.intervals:
            if not dg.leq(b, g):
                raise ShapeError(f"interval upper bound {b} exceeds g = {g}")
            for c in dg.box(a, b):
                coeffs[c] = coeffs.get(c, 0) + 1
        return TruncatedSeries(g, coeffs)

    def validates_against(self, series: TruncatedSeries) -> bool:
        return self.series(series.g) == series

    def depth(self, g: tuple):
        if not self.intervals:
            return math.inf
        return min(sum(1 for j in range(len(g)) if b[j] == g[j]) for _, b in self.intervals)

    def __eq__(self, other):
        return isinstance(other, HilbertPartition) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __repr__(self):
        return f"HilbertPartition({list(self.intervals)})"


class HilbertDecomposition:
    """An ordered list of summands (Z, shift); order fixes the generic
    variable numbering Y[i,j], so it is preserved from the input."""

    __slots__ = ("summands",)

    def __init__(self, summands):
        cleaned = []
        for zset, shift in summands:
            cleaned.append((frozenset(int(j) for j in zset), tuple(int(x) for x in shift)))
        self.summands = tuple(cleaned)

    def depth(self):
        if not self.summands:
            return math.inf
        return min(len(z) for z, _ in self.summands)

    def canonical(self) -> tuple:
        """Order-independent form, for multiset comparisons."""
        return tuple(sorted((shift, tuple(sorted(z))) for z, shift in self.summands))

    def __eq__(self, other):
        return isinstance(other, HilbertDecomposition) and self.summands == other.summands

    def __hash__(self):
        return hash(self.summands)

    def __len__(self):
        return len(self.summands)

    def __repr__(self):
        return f"HilbertDecomposition({[(sorted(z), s) for z, s in self.summands]})"


def partition_to_decomposition(p: HilbertPartition, g: tuple) -> HilbertDecomposition:
    """One summand (Z_b, c) per interval [a, b] and point c of G[a, b]."""
    g = tuple(g)
    n = len(g)
    summands = []
    for a, b in p.intervals:
        if not dg.leq(b, g):
            raise ShapeError(f"interval upper bound {b} exceeds g = {g}")
        zset = frozenset(j for j in range(n) if b[j] == g[j])
        free_upper = tuple(a[j] if j in zset else b[j] for j in range(n))
        for c in dg.box(a, free_upper):
            summands.append((zset, c))
    return HilbertDecomposition(summands)


def decomposition_to_partition(d: HilbertDecomposition, g: tuple) -> HilbertPartition:
    """Inverse construction: the summand (Z, s) spreads to the interval
    [s, b] with b_j = g_j on Z and b_j = s_j elsewhere."""
    g = tuple(g)
    n = len(g)
    intervals = []
    for zset, shift in d.summands:
        failure = _summand_shape_failure(zset, shift, g, n)
        if failure:
            raise ShapeError(failure)
        b = tuple(g[j] if j in zset else shift[j] for j in range(n))
        intervals.append(Interval(shift, b))
    return HilbertPartition(intervals)


def _summand_shape_failure(zset, shift, g, n):
    if len(shift) != n:
        return f"summand shift {shift} is not a length-{n} vector"
    if any(j < 0 or j >= n for j in zset):
        return f"summand variable set {sorted(zset)} is out of range for n = {n}"
    if not (all(x >= 0 for x in shift) and dg.leq(shift, g)):
        return f"summand shift {shift} is outside [0, g] = [0, {g}]"
    forced = {j for j in range(n) if shift[j] == g[j]}
    if not forced <= zset:
        return (
            f"summand (Z={sorted(j + 1 for j in zset)}, shift={shift}) misses the "
            f"coordinates {sorted(j + 1 for j in forced - zset)} forced by shift_j = g_j"
        )
    return None


@dataclass(frozen=True)
class ValidationFailure:
    kind: str  # "shape" or "count"
    degree: tuple | None = None
    detail: str = ""

    def __str__(self):
        if self.kind == "count":
            return f"summand count mismatch at degree {self.degree}: {self.detail}"
        return self.detail


def validate_decomposition(d: HilbertDecomposition, gm: GradedModule):
    """None on success; otherwise the first failure.

    Checks the summand shape constraints (shift within [0, g], forced
    coordinates present in Z) and, for every a in [0, g], that the number
    of summands alive at a equals dim M_a.
    """
    g = gm.g
    n = gm.n
    for zset, shift in d.summands:
        failure = _summand_shape_failure(zset, shift, g, n)
        if failure:
            return ValidationFailure("shape", None, failure)
    for a in dg.box(dg.zero(n), g):
        count = sum(
            1
            for zset, shift in d.summands
            if dg.leq(shift, a) and dg.support(dg.sub(a, shift)) <= zset
        )
        expected = gm.dim(a)
        if count != expected:
            return ValidationFailure("count", a, f"decomposition covers {count}, module has {expected}")
    return None


def enumerate_partitions(series: TruncatedSeries, min_depth: int, g: tuple | None = None):
    """Yield every partition of the series into intervals [a, b] with b
    touching g in at least min_depth coordinates.

    Depth-first backtracking: repeatedly cover the lexicographically
    smallest degree with positive residual (such a degree is
    componentwise-minimal, so it must be an interval lower endpoint);
    cover candidates are tried by descending contact count, then
    lexicographically.  Runs of covers at one lower endpoint are forced
    to be non-decreasing in that order, so each partition multiset is
    emitted exactly once.  Consumers may stop iterating at any time.
    """
    g = series.g if g is None else tuple(g)
    n = len(g)
    if not 0 <= min_depth <= n:
        raise PreconditionError(f"min_depth must be within [0, {n}], got {min_depth}")
    residual = dict(series.coefficients)
    degrees_lex = sorted(residual)
    chosen: list[Interval] = []
    cover_cache: dict[tuple, list] = {}

    def covers(a):
        cached = cover_cache.get(a)
        if cached is None:
            cached = []
            for b in dg.box(a, g):
                rho = sum(1 for j in range(n) if b[j] == g[j])
                if rho >= min_depth:
                    cached.append(((-rho, b), b))
            cached.sort()
            cover_cache[a] = cached
        return cached

    def rec(prev_element, prev_key):
        element = next((a for a in degrees_lex if residual[a] > 0), None)
        if element is None:
            yield HilbertPartition(chosen)
            return
        min_key = prev_key if element == prev_element else None
        for key, b in covers(element):
            if min_key is not None and key < min_key:
                continue
            cells = list(dg.box(element, b))
            if any(residual[c] < 1 for c in cells):
                continue
            for c in cells:
                residual[c] -= 1
            chosen.append(Interval(element, b))
            yield from rec(element, key)
            chosen.pop()
            for c in cells:
                residual[c] += 1

    yield from rec(None, None)


def require_g_determined(gm: GradedModule) -> None:
    cached = getattr(gm, "_g_determined", None)
    if cached is None:
        cached = gm.verify_g_determined()
        gm._g_determined = cached
    if cached is not None:
        a, k = cached
        raise PreconditionError(
            f"module is not g-determined for g = {gm.g}: multiplication by "
            f"X_{k + 1} at degree {a} is not an isomorphism"
        )


def hdepth(gm: GradedModule, return_partition: bool = False):
    """The largest s admitting a partition of the truncated series into
    intervals of contact count >= s; inf for the zero module."""
    require_g_determined(gm)
    if gm.is_zero_module():
        return (math.inf, HilbertPartition([])) if return_partition else math.inf
    series = truncated_series(gm)
    for s in range(gm.n, -1, -1):
        found = next(enumerate_partitions(series, s), None)
        if found is not None:
            return (s, found) if return_partition else s
    raise AssertionError("a singleton partition always exists at s = 0")


# ---------------------------------------------------------------------------
# JSON forms
#
# {"summands": [{"vars": [1-based ints], "shift": [..], "mult": int}, ..]}
# {"intervals": [{"a": [..], "b": [..], "mult": int}, ..]}


def decomposition_from_json(obj, g: tuple):
    """Parse either decomposition form; interval form is converted via the
    induced-summand construction for the given g."""
    if not isinstance(obj, dict):
        raise InputFormatError("decomposition file must be a JSON object")
    if "summands" in obj:
        summands = []
        for item in obj["summands"]:
            try:
                zset = frozenset(int(j) - 1 for j in item["vars"])
                shift = tuple(int(x) for x in item["shift"])
            except (KeyError, TypeError, ValueError) as exc:
                raise InputFormatError(f"bad summand entry {item!r}") from exc
            if any(j < 0 for j in zset):
                raise InputFormatError(f"summand vars must be >= 1 in {item!r}")
            mult = int(item.get("mult", 1))
            if mult < 0:
                raise InputFormatError(f"negative multiplicity in {item!r}")
            summands.extend([(zset, shift)] * mult)
        return HilbertDecomposition(summands)
    if "intervals" in obj:
        intervals = []
        for item in obj["intervals"]:
            try:
                a = tuple(int(x) for x in item["a"])
                b = tuple(int(x) for x in item["b"])
            except (KeyError, TypeError, ValueError) as exc:
                raise InputFormatError(f"bad interval entry {item!r}") from exc
            mult = int(item.get("mult", 1))
            if mult < 0:
                raise InputFormatError(f"negative multiplicity in {item!r}")
            intervals.extend([(a, b)] * mult)
        try:
            return partition_to_decomposition(HilbertPartition(intervals), g)
        except ShapeError as exc:
            raise InputFormatError(str(exc)) from exc
    raise InputFormatError('decomposition file needs a "summands" or "intervals" key')


def decomposition_to_json(d: HilbertDecomposition) -> dict:
    groups: dict[tuple, int] = {}
    for shift, zvars in d.canonical():
        key = (shift, zvars)
        groups[key] = groups.get(key, 0) + 1
    return {
        "summands": [
            {"vars": [j + 1 for j in zvars], "shift": list(shift), "mult": mult}
            for (shift, zvars), mult in sorted(groups.items())
        ]
    }


def partition_to_json(p: HilbertPartition) -> dict:
    groups: dict[Interval, int] = {}
    for iv in p.intervals:
        groups[iv] = groups.get(iv, 0) + 1
    return {
        "intervals": [
            {"a": list(a), "b": list(b), "mult": mult}
            for (a, b), mult in sorted(groups.items())
        ]
    }


def load_decomposition_file(path, g: tuple):
    import json

    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc}") from exc
    try:
        return decomposition_from_json(obj, g)
    except InputFormatError as exc:
        raise InputFormatError(f"{path}: {exc}") from exc
