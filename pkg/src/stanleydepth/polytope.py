"""Integer-programming view of Hilbert decompositions.

Variables u[b; Z] count summands K[Z](-b), one for each admissible pair:
b in [0, g] and Z containing every coordinate j with b_j = g_j.  The
equality system says the summands alive at each degree a of [0, g] add
up to dim M_a.  On top of that, rank inequalities bound, for each degree
a and each set J of shifts below a, the number of summands drawn from J
by the dimension of the sum of the image subspaces X^(a-b) M_b, b in J;
a nonnegative integer point of the equality system satisfies all rank
inequalities iff it is the shift multiset of a decomposition induced by
a Stanley decomposition (over an infinite field).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import degrees as dg
from .errors import InputFormatError, PreconditionError, RangeError, ResourceLimitError
from .hilbert import HilbertDecomposition, validate_decomposition
from .modules import GradedModule
from .transversal import max_independent_transversal

FULL_ENUMERATION_BOX_LIMIT = 20
DEFAULT_MAX_SUBSET = 4
INEQUALITY_ROW_BUDGET = 2 * 10**6


@dataclass(frozen=True)
class OmegaVariable:
    """An admissible summand shape: shift b plus variable set Z."""

    shift: tuple
    zset: frozenset

    def name(self) -> str:
        coords = ",".join(str(x) for x in self.shift)
        zs = ",".join(str(j + 1) for j in sorted(self.zset))
        return f"u[{coords};{{{zs}}}]"

    def lp_name(self) -> str:
        coords = "_".join(str(x) for x in self.shift)
        zs = "_".join(str(j + 1) for j in sorted(self.zset))
        return f"u_{coords}__{zs}"


def omega_variables(n: int, g: tuple) -> list[OmegaVariable]:
    """All admissible pairs, shifts in lex order, Z sets by sorted tuple."""
    out = []
    indices = list(range(n))
    for b in dg.box(dg.zero(n), g):
        forced = frozenset(j for j in indices if b[j] == g[j])
        free = [j for j in indices if j not in forced]
        extensions = []
        for r in range(len(free) + 1):
            extensions.extend(combinations(free, r))
        for ext in sorted(extensions):
            out.append(OmegaVariable(b, forced | frozenset(ext)))
    return out


@dataclass(frozen=True)
class LinearRow:
    """sum of u over `support` (indices into the variable list) compared
    with rhs; sense is "==" or "<="."""

    support: tuple
    sense: str
    rhs: int
    label: object


@dataclass
class LinearSystem:
    n: int
    g: tuple
    variables: list[OmegaVariable]
    rows: list[LinearRow]
    max_subset: int | None = None

    def index(self) -> dict[OmegaVariable, int]:
        return {v: i for i, v in enumerate(self.variables)}

    def violated_row(self, values) -> LinearRow | None:
        """First row the assignment breaks, or None."""
        for row in self.rows:
            total = sum(values[i] for i in row.support)
            if row.sense == "==" and total != row.rhs:
                return row
            if row.sense == "<=" and total > row.rhs:
                return row
        return None


def _alive_supports(variables: list[OmegaVariable], n: int, g: tuple):
    """For each degree a, the variable indices alive at a."""
    supports: dict[tuple, list[int]] = {a: [] for a in dg.box(dg.zero(n), g)}
    for i, v in enumerate(variables):
        for c in dg.box(v.shift, tuple(v.shift[j] if j not in v.zset else g[j] for j in range(n))):
            supports[c].append(i)
    return supports


def build_hilbert_system(gm: GradedModule) -> LinearSystem:
    """One equality per degree of [0, g]: alive summand count = dim M_a."""
    variables = omega_variables(gm.n, gm.g)
    supports = _alive_supports(variables, gm.n, gm.g)
    rows = [
        LinearRow(tuple(supports[a]), "==", gm.dim(a), tuple(a))
        for a in dg.box(dg.zero(gm.n), gm.g)
    ]
    return LinearSystem(gm.n, gm.g, variables, rows)


def build_stanley_inequalities(
    gm: GradedModule,
    max_subset: int | None = DEFAULT_MAX_SUBSET,
    min_depth: int | None = None,
) -> LinearSystem:
    """Equalities plus rank inequalities.

    max_subset caps |J| (None = all nonempty J, refused when the box
    [0, g] has more than 20 degrees); any cap keeps the system a
    relaxation whose integer points may still need the exact check.
    min_depth drops every variable with |Z| below the bound.
    """
    if max_subset is None:
        size = dg.box_size(dg.zero(gm.n), gm.g)
        if size > FULL_ENUMERATION_BOX_LIMIT:
            raise ResourceLimitError(
                f"subset enumeration over a box of {size} degrees spans up to "
                f"2^{size} sets per degree; pass a max_subset cap"
            )
    variables = omega_variables(gm.n, gm.g)
    if min_depth is not None:
        variables = [v for v in variables if len(v.zset) >= min_depth]
    supports = _alive_supports(variables, gm.n, gm.g)
    rows = [
        LinearRow(tuple(supports[a]), "==", gm.dim(a), tuple(a))
        for a in dg.box(dg.zero(gm.n), gm.g)
    ]
    by_shift: dict[tuple, list[int]] = {}
    for i, v in enumerate(variables):
        by_shift.setdefault(v.shift, []).append(i)
    count = 0
    for a in dg.box(dg.zero(gm.n), gm.g):
        below = [b for b in dg.box(dg.zero(gm.n), a) if by_shift.get(b)]
        cap = len(below) if max_subset is None else min(max_subset, len(below))
        for size in range(1, cap + 1):
            for J in combinations(below, size):
                count += 1
                if count > INEQUALITY_ROW_BUDGET:
                    raise ResourceLimitError(
                        f"more than {INEQUALITY_ROW_BUDGET} inequality rows; "
                        "lower max_subset"
                    )
                support = tuple(i for b in J for i in by_shift[b]
                                if _alive_at(variables[i], a))
                rhs = _image_sum_dim(gm, J, a)
                rows.append(LinearRow(support, "<=", rhs, (tuple(a), J)))
    return LinearSystem(gm.n, gm.g, variables, rows, max_subset=max_subset)


def _alive_at(v: OmegaVariable, a: tuple) -> bool:
    return dg.leq(v.shift, a) and dg.support(dg.sub(a, v.shift)) <= v.zset


def _image_sum_dim(gm: GradedModule, shifts, a: tuple) -> int:
    vectors = []
    for b in shifts:
        vectors.extend(gm.power_map(b, a).columns())
    dim_a = gm.dim(a)
    if not vectors:
        return 0
    from .linalg import Subspace

    return Subspace(gm.field, dim_a, vectors).dim


def decomposition_to_point(system: LinearSystem, d: HilbertDecomposition) -> list[int]:
    index = system.index()
    values = [0] * len(system.variables)
    for zset, shift in d.summands:
        v = OmegaVariable(tuple(shift), frozenset(zset))
        i = index.get(v)
        if i is None:
            raise InputFormatError(f"summand {v.name()} is not an admissible variable")
        values[i] += 1
    return values


def point_to_decomposition(system: LinearSystem, values) -> HilbertDecomposition:
    if len(values) != len(system.variables):
        raise InputFormatError(
            f"expected {len(system.variables)} values, got {len(values)}"
        )
    summands = []
    for v, count in zip(system.variables, values):
        if count < 0:
            raise InputFormatError(f"negative multiplicity for {v.name()}")
        summands.extend((v.zset, v.shift) for _ in range(count))
    return HilbertDecomposition(summands)


def check_u_vector(gm: GradedModule, system: LinearSystem, values) -> tuple | None:
    """Decide whether a nonnegative integer point of the equality system
    is induced over an infinite field, degree by degree.

    At each a, the rank inequalities over every J below a hold iff the
    summand images admit an independent transversal there, so the check
    runs in polynomial time instead of enumerating subsets.  Returns None
    or the first failing degree.
    """
    if gm.field.is_finite():
        raise PreconditionError("the subspace-rank criterion needs an infinite field")
    if any(x < 0 for x in values):
        raise InputFormatError("negative multiplicities")
    d = point_to_decomposition(system, values)
    failure = validate_decomposition(d, gm)
    if failure is not None:
        raise PreconditionError(f"point is not a Hilbert decomposition: {failure}")
    for a in dg.box(dg.zero(gm.n), gm.g):
        dim = gm.dim(a)
        if dim == 0:
            continue
        families = [
            gm.power_map(shift, a).columns()
            for zset, shift in d.summands
            if _alive_at(OmegaVariable(shift, zset), a)
        ]
        if len(max_independent_transversal(gm.field, dim, families)) < dim:
            return tuple(a)
    return None


# ---------------------------------------------------------------------------
# file formats
#
# .sip (native):
#   # comment lines
#   ip <n> <g_1> .. <g_n>
#   var u[b1,..,bn;{z1,..}] >= 0 integer          (one per variable, in order)
#   eq <label>: u[..] + u[..] + .. == <rhs>
#   le <label>: u[..] + .. <= <rhs>
#
# .lp (CPLEX LP, for external solvers): names sanitized to u_b1_.._bn__z1_z2.
#
# solution files: one "<name> <value>" pair per line, every variable
# present, names in either the native or the sanitized form.


def export_sip(system: LinearSystem, comment: str = "") -> str:
    lines = []
    if comment:
        for line in comment.splitlines():
            lines.append(f"# {line}" if line else "#")
    if system.max_subset is not None:
        lines.append(f"# relaxation: subset size capped at {system.max_subset}")
    lines.append(f"ip {system.n} " + " ".join(str(x) for x in system.g))
    for v in system.variables:
        lines.append(f"var {v.name()} >= 0 integer")
    for row in system.rows:
        op = "==" if row.sense == "==" else "<="
        kind = "eq" if row.sense == "==" else "le"
        terms = " + ".join(system.variables[i].name() for i in row.support) or "0"
        lines.append(f"{kind} {_label_text(row.label)}: {terms} {op} {row.rhs}")
    return "\n".join(lines) + "\n"


def export_lp(system: LinearSystem) -> str:
    lines = ["Minimize", " obj: 0", "Subject To"]
    for idx, row in enumerate(system.rows):
        terms = " + ".join(system.variables[i].lp_name() for i in row.support) \
            or f"0 {system.variables[0].lp_name()}"
        op = "=" if row.sense == "==" else "<="
        lines.append(f" r{idx}: {terms} {op} {row.rhs}")
    lines.append("Bounds")
    for v in system.variables:
        lines.append(f" {v.lp_name()} >= 0")
    lines.append("General")
    for v in system.variables:
        lines.append(f" {v.lp_name()}")
    lines.append("End")
    return "\n".join(lines) + "\n"


def export_ip(system: LinearSystem, path: str, comment: str = "") -> tuple[str, str]:
    """Write the native .sip file at `path` and its LP-format twin next to
    it (same name, .lp suffix).  Returns both paths."""
    sip_path = str(path)
    root = sip_path[: -len(".sip")] if sip_path.endswith(".sip") else sip_path
    lp_path = root + ".lp"
    with open(sip_path, "w", encoding="utf-8") as fh:
        fh.write(export_sip(system, comment))
    with open(lp_path, "w", encoding="utf-8") as fh:
        fh.write(export_lp(system))
    return sip_path, lp_path


def _label_text(label) -> str:
    if isinstance(label, tuple) and label and isinstance(label[0], tuple):
        a, J = label
        shifts = "|".join(",".join(str(x) for x in b) for b in J)
        return f"[{','.join(str(x) for x in a)}]{{{shifts}}}"
    return "[" + ",".join(str(x) for x in label) + "]"


def parse_solution(text: str, system: LinearSystem) -> list[int]:
    """Strict reader: every variable assigned exactly once, values are
    nonnegative integers, no unknown names."""
    by_name = {}
    for i, v in enumerate(system.variables):
        by_name[v.name()] = i
        by_name[v.lp_name()] = i
    values: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputFormatError(f"line {lineno}: expected '<name> <value>'")
        name, value_text = parts
        i = by_name.get(name)
        if i is None:
            raise InputFormatError(f"line {lineno}: unknown variable {name!r}")
        if i in values:
            raise InputFormatError(f"line {lineno}: {name!r} assigned twice")
        try:
            value = int(value_text)
        except ValueError as exc:
            raise InputFormatError(f"line {lineno}: {value_text!r} is not an integer") from exc
        if value < 0:
            raise InputFormatError(f"line {lineno}: {name!r} is negative")
        values[i] = value
    missing = [system.variables[i].name() for i in range(len(system.variables)) if i not in values]
    if missing:
        raise InputFormatError(f"solution misses {len(missing)} variables, first {missing[0]}")
    return [values[i] for i in range(len(system.variables))]


def import_solution(gm: GradedModule, system: LinearSystem, text: str) -> HilbertDecomposition:
    """Parse, replay the equality rows, and hand back the decomposition.

    Raises RangeError when the point fails the equality system (it then
    does not even describe a Hilbert decomposition)."""
    values = parse_solution(text, system)
    violated = system.violated_row(values)
    if violated is not None and violated.sense == "==":
        raise RangeError(
            f"equality at degree {_label_text(violated.label)} violated: "
            f"expected {violated.rhs}"
        )
    return point_to_decomposition(system, values)
