"""Decide whether a Hilbert decomposition is induced by a Stanley
decomposition; extract and verify witnesses; compute Stanley depth.

For each degree a in [0, g] the decomposition yields a square matrix A_a:
one column per summand alive at a, with entries linear in the generic
coefficients Y[i,j] of summand i's generator written in the canonical
basis of M_(S_i).  The decomposition is induced iff the generic
generators can be specialized so that all A_a have full rank
simultaneously: over an infinite field this means every det A_a is a
nonzero polynomial; over GF(q) the product of the determinants must
survive the exponent reduction modulo Y^q = Y.  Over infinite fields the
per-degree rank condition is also equivalent to the existence of an
independent transversal of the subspaces X^(a-S_i) M_(S_i), which the
transversal mode decides without symbolic determinants.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field

from . import degrees as dg
from .errors import (
    InputFormatError,
    ModeError,
    PreconditionError,
    ResourceLimitError,
    UnboundVariableError,
    WitnessNotFoundError,
)
from .fields import Field, field_from_json
from .hilbert import (
    HilbertDecomposition,
    decomposition_from_json,
    enumerate_partitions,
    partition_to_decomposition,
    require_g_determined,
    truncated_series,
    validate_decomposition,
)
from .linalg import Matrix
from .modules import GradedModule
from .polynomials import (
    Poly,
    Var,
    det_symbolic,
    evaluate,
    parse_var_name,
    poly_mul,
    reduce_exponents,
    var_name,
)
from .transversal import max_independent_transversal

BASIS_CONVENTION = "echelon-unit-cosets/1"
DEFAULT_TERM_BUDGET = 10**6
DEFAULT_SEARCH_BUDGET = 10**6
SYMBOLIC_SIZE_LIMIT = 6


class SymbolicMatrixFamily:
    """The matrices A_a of one decomposition, indexed by degree."""

    def __init__(self, gm: GradedModule, decomposition: HilbertDecomposition):
        self.module = gm
        self.field: Field = gm.field
        self.g = gm.g
        self.decomposition = decomposition
        self.summands = decomposition.summands
        self.summand_dims = tuple(gm.dim(shift) for _z, shift in self.summands)
        self.matrices: dict[tuple, list[list[Poly]]] = {}
        self.columns: dict[tuple, tuple[int, ...]] = {}
        self._det_cache: dict[tuple, Poly] = {}
        f = self.field
        for a in dg.box(dg.zero(gm.n), gm.g):
            alive = tuple(
                i
                for i, (zset, shift) in enumerate(self.summands)
                if dg.leq(shift, a) and dg.support(dg.sub(a, shift)) <= zset
            )
            dim = gm.dim(a)
            if dim == 0 and not alive:
                continue
            if len(alive) != dim:
                raise PreconditionError(
                    f"{len(alive)} summands alive at {a}, module has dimension {dim}"
                )
            rows = [[Poly.zero(f) for _ in alive] for _ in range(dim)]
            for col, i in enumerate(alive):
                image = gm.power_map(self.summands[i][1], a)
                for k in range(dim):
                    terms = {}
                    for j in range(self.summand_dims[i]):
                        coeff = image.entries[k][j]
                        if not f.is_zero(coeff):
                            terms[(((i, j), 1),)] = coeff
                    rows[k][col] = Poly(f, terms)
            self.matrices[a] = rows
            self.columns[a] = alive

    @property
    def variables(self) -> tuple[Var, ...]:
        return tuple((i, j) for i, l in enumerate(self.summand_dims) for j in range(l))

    def degrees(self) -> list[tuple]:
        return sorted(self.matrices)

    def det(self, a: tuple) -> Poly:
        a = tuple(a)
        cached = self._det_cache.get(a)
        if cached is None:
            cached = det_symbolic(self.matrices[a], self.field)
            self._det_cache[a] = cached
        return cached

    def max_dimension(self) -> int:
        return max((len(m) for m in self.matrices.values()), default=0)

    def evaluate_at(self, a: tuple, assignment) -> Matrix:
        """The numeric matrix A_a(y)."""
        rows = [[evaluate(entry, assignment) for entry in row] for row in self.matrices[a]]
        return Matrix(self.field, rows, len(self.columns[a]))


def build_matrices(gm: GradedModule, d: HilbertDecomposition) -> SymbolicMatrixFamily:
    failure = validate_decomposition(d, gm)
    if failure is not None:
        raise PreconditionError(f"not a Hilbert decomposition of the module: {failure}")
    return SymbolicMatrixFamily(gm, d)


@dataclass(frozen=True)
class CheckReport:
    verdict: str  # "induced" | "not_induced"
    mode: str
    failing_degree: tuple | None = None
    p_tilde_zero: bool | None = None
    detail: str = ""

    @property
    def induced(self) -> bool:
        return self.verdict == "induced"


def check_infinite(fam: SymbolicMatrixFamily) -> CheckReport:
    """Induced iff no determinant is the zero polynomial (infinite field)."""
    if fam.field.is_finite():
        raise ModeError("the per-degree determinant criterion needs an infinite field")
    for a in fam.degrees():
        if fam.det(a).is_zero():
            return CheckReport("not_induced", "symbolic", failing_degree=a)
    return CheckReport("induced", "symbolic")


def check_finite(fam: SymbolicMatrixFamily, q: int | None = None, term_budget: int = DEFAULT_TERM_BUDGET) -> CheckReport:
    """Induced iff the reduced product of all determinants is nonzero
    (field with q elements)."""
    if not fam.field.is_finite():
        raise ModeError("the reduced-product criterion needs a finite field")
    if q is None:
        q = fam.field.cardinality
    elif q != fam.field.cardinality:
        raise ModeError(f"q = {q} does not match the field size {fam.field.cardinality}")
    product = Poly.one(fam.field)
    for a in fam.degrees():
        factor = fam.det(a)
        if factor.is_zero():
            return CheckReport("not_induced", "finite", failing_degree=a, p_tilde_zero=True)
        try:
            product = reduce_exponents(poly_mul(product, factor, term_budget), q)
        except ResourceLimitError as exc:
            raise ResourceLimitError(
                f"{exc}; the determinant product is too large to expand -- over an "
                "infinite field use transversal mode instead"
            ) from exc
        if product.is_zero():
            return CheckReport("not_induced", "finite", p_tilde_zero=True,
                               detail=f"reduced product vanishes after degree {a}")
    return CheckReport("induced", "finite", p_tilde_zero=False)


def check_unified(fam: SymbolicMatrixFamily, q: int | None = None, term_budget: int = DEFAULT_TERM_BUDGET) -> CheckReport:
    """One check for both field kinds.

    Every determinant is squarefree in the Y[i,j] (one column per
    summand, linear entries), so each variable's exponent in the expanded
    product is at most the number of matrices it appears in.  When that
    bound stays below the field size, exponent reduction cannot change
    the product and per-factor nonzeroness decides; otherwise fall back
    to the expanded finite-field computation.
    """
    if not fam.field.is_finite():
        report = check_infinite(fam)
        return CheckReport(report.verdict, "unified", report.failing_degree,
                           detail="infinite field; per-factor determinants")
    if q is None:
        q = fam.field.cardinality
    elif q != fam.field.cardinality:
        raise ModeError(f"q = {q} does not match the field size {fam.field.cardinality}")
    occurrences: dict[Var, int] = {}
    for a in fam.degrees():
        seen = set()
        for row in fam.matrices[a]:
            for entry in row:
                seen.update(entry.variables())
        for v in seen:
            occurrences[v] = occurrences.get(v, 0) + 1
    bound = max(occurrences.values(), default=0)
    if bound < q:
        for a in fam.degrees():
            if fam.det(a).is_zero():
                return CheckReport("not_induced", "unified", failing_degree=a,
                                   p_tilde_zero=True,
                                   detail=f"per-factor determinants (exponent bound {bound} < {q})")
        return CheckReport("induced", "unified", p_tilde_zero=False,
                           detail=f"per-factor determinants (exponent bound {bound} < {q})")
    report = check_finite(fam, q, term_budget)
    return CheckReport(report.verdict, "unified", report.failing_degree, report.p_tilde_zero,
                       detail=f"expanded product (exponent bound {bound} >= {q})")


def check_transversal(gm: GradedModule, d: HilbertDecomposition) -> CheckReport:
    """Per-degree independent transversals of the summand image subspaces.

    Equivalent to the determinant criterion over infinite fields, and
    polynomial-time even when the matrices are large.  Per-degree checks
    do not suffice over finite fields, so those are rejected.
    """
    if gm.field.is_finite():
        raise ModeError(
            "transversal mode needs an infinite field: per-degree checks do not "
            "glue over finite fields"
        )
    failure = validate_decomposition(d, gm)
    if failure is not None:
        raise PreconditionError(f"not a Hilbert decomposition of the module: {failure}")
    for a in dg.box(dg.zero(gm.n), gm.g):
        dim = gm.dim(a)
        if dim == 0:
            continue
        families = []
        for zset, shift in d.summands:
            if dg.leq(shift, a) and dg.support(dg.sub(a, shift)) <= zset:
                families.append(gm.power_map(shift, a).columns())
        transversal = max_independent_transversal(gm.field, dim, families)
        if len(transversal) < dim:
            return CheckReport("not_induced", "transversal", failing_degree=a)
    return CheckReport("induced", "transversal")


def check(
    gm: GradedModule,
    d: HilbertDecomposition,
    mode: str = "auto",
    fam: SymbolicMatrixFamily | None = None,
    term_budget: int = DEFAULT_TERM_BUDGET,
    seed: int = 0,
    samples: int = 3,
) -> CheckReport:
    """Mode dispatch.

    auto: finite fields use the unified check; infinite fields use
    symbolic determinants while every matrix is at most
    6x6 and independent transversals beyond that.
    """
    if mode == "transversal":
        return check_transversal(gm, d)
    if mode == "randomized":
        return check_randomized(gm, d, seed=seed, samples=samples, term_budget=term_budget)
    if fam is None:
        fam = build_matrices(gm, d)
    if mode == "auto":
        if gm.field.is_finite():
            return check_unified(fam, term_budget=term_budget)
        if fam.max_dimension() > SYMBOLIC_SIZE_LIMIT:
            return check_transversal(gm, d)
        return check_infinite(fam)
    if mode == "symbolic":
        if gm.field.is_finite():
            return check_finite(fam, term_budget=term_budget)
        return check_infinite(fam)
    if mode == "unified":
        return check_unified(fam, term_budget=term_budget)
    raise InputFormatError(f"unknown check mode {mode!r}")


def check_randomized(
    gm: GradedModule,
    d: HilbertDecomposition,
    seed: int = 0,
    samples: int = 3,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> CheckReport:
    """Try random integer points first; every hit is verified exactly, and
    a miss never certifies anything -- it falls back to the deterministic
    check."""
    if gm.field.is_finite():
        raise ModeError("randomized sampling is for infinite fields; use the unified check")
    fam = build_matrices(gm, d)
    rng = random.Random(seed)
    for _ in range(samples):
        assignment = {v: gm.field.from_int(rng.randrange(1, 2**30)) for v in fam.variables}
        if _witness_failure(fam, assignment) is None:
            return CheckReport("induced", "randomized", detail="verified sampled witness")
    report = check(gm, d, mode="auto", fam=fam, term_budget=term_budget)
    return CheckReport(report.verdict, "randomized", report.failing_degree,
                       report.p_tilde_zero, detail=f"fallback: {report.mode}")


@dataclass(frozen=True)
class StanleyWitness:
    """An explicit specialization of the generic coefficients, plus the
    per-degree full-rank transcript established when it was verified."""

    assignment: dict
    transcript: tuple = dc_field(default_factory=tuple)

    def to_json(self, field: Field) -> dict:
        return {var_name(v): field.to_str(val) for v, val in sorted(self.assignment.items())}


def _witness_failure(fam: SymbolicMatrixFamily, assignment) -> tuple | None:
    """First degree where A_a(y) drops rank, or None."""
    for a in fam.degrees():
        m = fam.evaluate_at(a, assignment)
        if m.rank() < len(fam.matrices[a]):
            return a
    return None


def verify_witness(gm: GradedModule, d: HilbertDecomposition, witness) -> tuple | None:
    """Re-check a witness from scratch: evaluate every A_a at the
    assignment and test full rank.  None on success, else the first
    failing degree."""
    assignment = witness.assignment if isinstance(witness, StanleyWitness) else dict(witness)
    fam = build_matrices(gm, d)
    needed = set(fam.variables)
    given = set(assignment)
    if needed - given:
        raise UnboundVariableError(
            f"witness misses {', '.join(var_name(v) for v in sorted(needed - given))}"
        )
    if given - needed:
        raise InputFormatError(
            f"witness assigns unknown {', '.join(var_name(v) for v in sorted(given - needed))}"
        )
    return _witness_failure(fam, assignment)


def _det_prunes(fam: SymbolicMatrixFamily):
    """Determinant support sets for search pruning, if affordable."""
    if fam.max_dimension() > SYMBOLIC_SIZE_LIMIT:
        return None
    prunes = []
    for a in fam.degrees():
        det = fam.det(a)
        if det.is_zero():
            return "zero"
        prunes.append((tuple(sorted(det.variables())), det))
    return prunes


def extract_witness(
    gm: GradedModule,
    d: HilbertDecomposition,
    fam: SymbolicMatrixFamily | None = None,
    budget: int = DEFAULT_SEARCH_BUDGET,
    check_first: bool = True,
) -> StanleyWitness:
    """Deterministic witness search.

    Over the rationals, candidates are integer points enumerated by
    increasing maximum entry and lexicographically within each stage; a
    witness among {1, ..., D+1}^vars always exists when the decomposition
    is induced (D = number of degrees with a matrix), so the search
    terminates.  Over GF(q) the q^|vars| points are searched
    depth-first.  Both searches prune on vanishing determinants when the
    matrices are small enough to expand, and every candidate that
    survives is verified by exact rank checks.
    """
    if fam is None:
        fam = build_matrices(gm, d)
    if check_first:
        report = check(gm, d, fam=fam)
        if not report.induced:
            raise WitnessNotFoundError(
                f"no witness exists: decomposition is not induced ({report.mode} "
                f"check{f' fails at degree {report.failing_degree}' if report.failing_degree else ''})"
            )
    variables = fam.variables
    prunes = _det_prunes(fam)
    if prunes == "zero":
        raise WitnessNotFoundError("no witness exists: a determinant vanishes identically")

    if fam.field.is_finite():
        values = list(fam.field.elements())
        candidate = _search(fam, variables, prunes, values, budget, require_max=None)
        if candidate is None:
            raise WitnessNotFoundError(f"no witness exists over {fam.field!r}")
        return candidate

    stages = len(fam.matrices) + 1
    for stage in range(1, stages + 1):
        values = [fam.field.from_int(v) for v in range(1, stage + 1)]
        candidate = _search(fam, variables, prunes, values, budget, require_max=values[-1] if stage > 1 else None)
        if candidate is not None:
            return candidate
    raise WitnessNotFoundError(
        "no witness within the guaranteed bound; the decomposition is not induced"
    )


def _search(fam, variables, prunes, values, budget, require_max):
    """DFS in lexicographic order over the value grid; prune a branch as
    soon as some determinant has all variables assigned and evaluates to
    zero.  require_max skips points already tried at earlier stages."""
    f = fam.field
    n = len(variables)
    position = {v: i for i, v in enumerate(variables)}
    watched: dict[int, list] = {}
    if isinstance(prunes, list):
        for vars_, det in prunes:
            last = max((position[v] for v in vars_), default=-1)
            watched.setdefault(last, []).append(det)
    assignment: dict = {}
    counter = [0]

    def rec(i: int, has_max: bool):
        if i == n:
            if require_max is not None and not has_max:
                return None
            counter[0] += 1
            if counter[0] > budget:
                raise ResourceLimitError(
                    f"witness search exceeded the budget of {budget} candidates"
                )
            if isinstance(prunes, list):
                return dict(assignment)
            return dict(assignment) if _witness_failure(fam, assignment) is None else None
        for value in values:
            assignment[variables[i]] = value
            ok = True
            for det in watched.get(i, ()):
                if f.is_zero(evaluate(det, assignment)):
                    ok = False
                    break
            if ok:
                found = rec(i + 1, has_max or value == require_max)
                if found is not None:
                    return found
        del assignment[variables[i]]
        return None

    found = rec(0, False)
    if found is None:
        return None
    failing = _witness_failure(fam, found)
    if failing is not None:
        raise AssertionError(f"search returned a non-witness failing at {failing}")
    transcript = tuple((a, "full-rank") for a in fam.degrees())
    return StanleyWitness(found, transcript)


@dataclass(frozen=True)
class SdepthResult:
    value: object  # int, or math.inf for the zero module
    decomposition: HilbertDecomposition
    witness: StanleyWitness | None
    partition: object = None


def sdepth(
    gm: GradedModule,
    mode: str = "auto",
    with_witness: bool = True,
    seed: int = 0,
    term_budget: int = DEFAULT_TERM_BUDGET,
    search_budget: int = DEFAULT_SEARCH_BUDGET,
) -> SdepthResult:
    """Largest s such that some depth-s interval partition of the
    truncated series is induced by a Stanley decomposition.

    Searching box-truncated decompositions is lossless: every Stanley
    decomposition re-truncates to one of them with no smaller depth.
    """
    require_g_determined(gm)
    if gm.is_zero_module():
        return SdepthResult(math.inf, HilbertDecomposition([]), None)
    series = truncated_series(gm)
    for s in range(gm.n, -1, -1):
        for partition in enumerate_partitions(series, s):
            d = partition_to_decomposition(partition, gm.g)
            report = check(gm, d, mode=mode, seed=seed, term_budget=term_budget)
            if report.induced:
                witness = None
                if with_witness:
                    witness = extract_witness(gm, d, budget=search_budget, check_first=False)
                return SdepthResult(s, d, witness, partition)
    raise AssertionError("the all-singletons partition at s = 0 is always induced")


# ---------------------------------------------------------------------------
# certificates
#
# {"format": "stanleydepth-certificate/1",
#  "basis_convention": "echelon-unit-cosets/1",
#  "field": "Q" | {"Fp": p},
#  "g": [..],
#  "decomposition": {"summands": [{"vars": [..], "shift": [..]}, ..]},  (ordered)
#  "witness": {"Y[i,j]": "scalar", ..}}

CERTIFICATE_FORMAT = "stanleydepth-certificate/1"


def certificate_json(gm: GradedModule, d: HilbertDecomposition, witness: StanleyWitness) -> dict:
    summands = [
        {"vars": [j + 1 for j in sorted(zset)], "shift": list(shift)}
        for zset, shift in d.summands
    ]
    return {
        "format": CERTIFICATE_FORMAT,
        "basis_convention": BASIS_CONVENTION,
        "field": gm.field.to_json(),
        "g": list(gm.g),
        "decomposition": {"summands": summands},
        "witness": witness.to_json(gm.field),
    }


def verify_certificate(gm: GradedModule, cert: dict) -> tuple[bool, str]:
    """Re-check a certificate from scratch against the module.

    Returns (True, message) when the decomposition validates and the
    witness gives full rank at every degree; (False, reason) when the
    certificate is rejected as a verdict.  Malformed certificates raise.
    """
    if not isinstance(cert, dict) or cert.get("format") != CERTIFICATE_FORMAT:
        raise InputFormatError(f"not a {CERTIFICATE_FORMAT} certificate")
    if cert.get("basis_convention") != BASIS_CONVENTION:
        raise InputFormatError(
            f"certificate uses basis convention {cert.get('basis_convention')!r}, "
            f"this build uses {BASIS_CONVENTION!r}"
        )
    cert_field = field_from_json(cert.get("field", "Q"))
    if cert_field != gm.field:
        raise InputFormatError(f"certificate field {cert_field!r} does not match module field {gm.field!r}")
    if tuple(cert.get("g", ())) != gm.g:
        raise InputFormatError(f"certificate g {cert.get('g')} does not match module g {list(gm.g)}")
    d = decomposition_from_json(cert["decomposition"], gm.g)
    failure = validate_decomposition(d, gm)
    if failure is not None:
        return False, f"decomposition invalid: {failure}"
    witness_obj = cert.get("witness")
    if not isinstance(witness_obj, dict):
        raise InputFormatError("certificate has no witness map")
    assignment = {parse_var_name(k): gm.field.parse(str(v)) for k, v in witness_obj.items()}
    failing = verify_witness(gm, d, assignment)
    if failing is not None:
        return False, f"witness loses rank at degree {failing}"
    return True, ("witness gives full rank at every degree of "
                  f"[0, ({','.join(str(x) for x in gm.g)})]")
