"""Independent reference implementations used only by the tests.

Everything here prefers the most obviously correct algorithm over speed:
Laplace determinants, rank via minors, permutation-sum symbolic
determinants, exhaustive subset conditions for transversals, depth-first
lattice enumeration, and brute-force partition search.  None of it
shares code paths with the algorithms under test.
"""

from __future__ import annotations

import random
from itertools import combinations, permutations, product

from stanleydepth import degrees as dg
from stanleydepth import hilbert, modules
from stanleydepth.fields import QQ
from stanleydepth.linalg import Matrix


# ---------------------------------------------------------------------------
# numeric linear algebra


def det_laplace(field, rows):
    """Cofactor expansion along the first row."""
    rows = [list(r) for r in rows]
    n = len(rows)
    if n == 0:
        return field.one
    if n == 1:
        return rows[0][0]
    total = field.zero
    for j in range(n):
        if field.is_zero(rows[0][j]):
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = field.mul(rows[0][j], det_laplace(field, minor))
        total = field.add(total, term) if j % 2 == 0 else field.sub(total, term)
    return total


def rank_by_minors(field, rows):
    """Largest r with a nonvanishing r x r minor."""
    rows = [list(r) for r in rows]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    for r in range(min(m, n), 0, -1):
        for rs in combinations(range(m), r):
            for cs in combinations(range(n), r):
                sub = [[rows[i][j] for j in cs] for i in rs]
                if not field.is_zero(det_laplace(field, sub)):
                    return r
    return 0


# ---------------------------------------------------------------------------
# symbolic polynomials on a plain-dict representation


def dict_from_poly(p):
    return dict(p.terms)


def dict_add(field, a, b):
    out = dict(a)
    for mono, coeff in b.items():
        acc = field.add(out.get(mono, field.zero), coeff)
        if field.is_zero(acc):
            out.pop(mono, None)
        else:
            out[mono] = acc
    return out


def dict_mul(field, a, b):
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            exps = {}
            for v, e in ma:
                exps[v] = exps.get(v, 0) + e
            for v, e in mb:
                exps[v] = exps.get(v, 0) + e
            mono = tuple(sorted(exps.items()))
            acc = field.add(out.get(mono, field.zero), field.mul(ca, cb))
            if field.is_zero(acc):
                out.pop(mono, None)
            else:
                out[mono] = acc
    return out


def det_permutation_sum(field, grid):
    """Leibniz formula with explicit inversion-count signs."""
    n = len(grid)
    total = {}
    for perm in permutations(range(n)):
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
        )
        prod = {(): field.one}
        for i in range(n):
            prod = dict_mul(field, prod, dict_from_poly(grid[i][perm[i]]))
        if inversions % 2:
            prod = {m: field.neg(c) for m, c in prod.items()}
        total = dict_add(field, total, prod)
    return total


def eval_terms_mod(terms, assignment, q):
    """Evaluate a term dict over GF(q) with plain int arithmetic."""
    total = 0
    for mono, coeff in terms.items():
        value = int(coeff) % q
        for v, e in mono:
            value = (value * pow(int(assignment[v]) % q, e, q)) % q
        total = (total + value) % q
    return total


# ---------------------------------------------------------------------------
# partitions and lattice points


def brute_partitions(series, min_depth):
    """Every interval partition of the series, as sorted interval tuples.

    Covers the lexicographically least degree with positive residual;
    runs of intervals at one lower endpoint are forced non-decreasing in
    the upper endpoint, so each multiset appears exactly once.
    """
    g = series.g
    n = len(g)
    residual = dict(series.coefficients)
    found = set()

    def uppers(a):
        out = []
        for b in dg.box(a, g):
            if sum(1 for j in range(n) if b[j] == g[j]) >= min_depth:
                out.append(b)
        return out

    def rec(chosen, last):
        element = min((d for d, c in residual.items() if c > 0), default=None)
        if element is None:
            found.add(tuple(sorted(chosen)))
            return
        floor = last[1] if last is not None and last[0] == element else None
        for b in uppers(element):
            if floor is not None and b < floor:
                continue
            cells = list(dg.box(element, b))
            if any(residual[c] < 1 for c in cells):
                continue
            for c in cells:
                residual[c] -= 1
            chosen.append((element, b))
            rec(chosen, (element, b))
            chosen.pop()
            for c in cells:
                residual[c] += 1

    rec([], None)
    return found


def equality_solutions(system):
    """All nonnegative integer points of the equality rows, by bounded DFS."""
    rows = [r for r in system.rows if r.sense == "=="]
    nvars = len(system.variables)
    touching = [[] for _ in range(nvars)]
    finish = {}
    for ri, row in enumerate(rows):
        for i in row.support:
            touching[i].append(ri)
        if row.support:
            finish.setdefault(max(row.support), []).append(ri)
    if any(row.rhs != 0 for row in rows if not row.support):
        return []
    remaining = [row.rhs for row in rows]
    values = [0] * nvars
    out = []

    def rec(i):
        if i == nvars:
            out.append(tuple(values))
            return
        cap = min((remaining[ri] for ri in touching[i]), default=0)
        for v in range(cap + 1):
            values[i] = v
            for ri in touching[i]:
                remaining[ri] -= v
            if all(remaining[ri] == 0 for ri in finish.get(i, ())):
                rec(i + 1)
            for ri in touching[i]:
                remaining[ri] += v
        values[i] = 0

    rec(0)
    return out


# ---------------------------------------------------------------------------
# transversals


def rado_full_transversal(field, ambient, families):
    """A full independent transversal exists iff every subfamily spans at
    least its own size."""
    m = len(families)
    for r in range(1, m + 1):
        for idx in combinations(range(m), r):
            vectors = [v for i in idx for v in families[i]]
            if Matrix(field, vectors, ambient).rank() < r:
                return False
    return True


def max_transversal_bound(field, ambient, families):
    """Matroid-intersection min-max value: min over subfamilies J of
    (m - |J| + dim span J)."""
    m = len(families)
    best = m
    for r in range(m + 1):
        for idx in combinations(range(m), r):
            vectors = [v for i in idx for v in families[i]]
            dim = Matrix(field, vectors, ambient).rank() if vectors else 0
            best = min(best, m - r + dim)
    return best


def brute_check_induced(gm, d):
    """Per-degree exhaustive subset condition on the summand images."""
    for a in dg.box(dg.zero(gm.n), gm.g):
        families = [
            gm.power_map(shift, a).columns()
            for zset, shift in d.summands
            if dg.leq(shift, a) and dg.support(dg.sub(a, shift)) <= zset
        ]
        if not families:
            continue
        if not rado_full_transversal(gm.field, gm.dim(a), families):
            return False
    return True


def brute_sdepth(gm):
    series = hilbert.truncated_series(gm)
    for s in range(gm.n, -1, -1):
        for intervals in sorted(brute_partitions(series, s)):
            d = hilbert.partition_to_decomposition(
                hilbert.HilbertPartition(intervals), gm.g
            )
            if brute_check_induced(gm, d):
                return s
    raise AssertionError("the all-singleton partition is always induced")


# ---------------------------------------------------------------------------
# monomial modules


def monomial_in_ideal(a, gens):
    return any(dg.leq(e, a) for e in gens)


def monomial_dims(kind, n, gens, g):
    """Graded dimensions of a monomial ideal or its quotient ring."""
    dims = {}
    for a in dg.box(dg.zero(n), g):
        inside = monomial_in_ideal(a, gens)
        dims[a] = int(inside) if kind == "ideal" else int(not inside)
    return dims


def random_modules(count, seed, max_total_dim=6, max_box=20, allow_sums=True):
    """Deterministic stream of small monomial-ideal and quotient modules
    over the rationals (optionally direct sums of two of them)."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 200:
        attempts += 1
        parts = []
        n = rng.choice([1, 2, 3])
        npieces = rng.choice([1, 1, 2]) if allow_sums else 1
        for _ in range(npieces):
            k = rng.randint(1, 3)
            gens = [tuple(rng.randint(0, 2) for _ in range(n)) for _ in range(k)]
            if rng.random() < 0.5:
                parts.append(modules.monomial_ideal(QQ, n, gens))
            else:
                if any(all(x == 0 for x in e) for e in gens):
                    break
                parts.append(modules.quotient_by_monomial_ideal(QQ, n, gens))
        if len(parts) != npieces:
            continue
        pres = parts[0] if npieces == 1 else modules.direct_sum(parts)
        g = pres.default_g()
        if dg.box_size(dg.zero(n), g) > max_box:
            continue
        gm = modules.build(pres)
        total = sum(gm.dim(a) for a in dg.box(dg.zero(n), g))
        if not 1 <= total <= max_total_dim:
            continue
        out.append(gm)
    return out
