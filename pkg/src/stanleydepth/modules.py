"""Multigraded modules presented by generators and relations.

A presentation lists generator degrees and homogeneous relation rows;
build() computes every graded piece M_a for a in the box [0, g+1] by
exact linear algebra, together with the multiplication maps
X_k : M_a -> M_(a+e_k).

The degree-a piece is the span of the monomial multiples
{X^(a - deg e_i) e_i : deg e_i <= a} (one ambient coordinate per
generator, ordered by generator index) modulo the span of the degree-a
multiples of the relations.  The coset basis follows the canonical
convention of linalg.quotient_basis, which makes every downstream
certificate reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import degrees as dg
from .errors import (
    BoxError,
    HomogeneityError,
    InputFormatError,
    RangeError,
    ShapeError,
)
from .fields import Field, field_from_json
from .linalg import Matrix, Subspace, quotient_basis


@dataclass(frozen=True)
class Relation:
    """One homogeneous relation row: sum of coeff * X^shift * e_gen = 0."""

    triples: tuple[tuple[int, tuple, object], ...]
    degree: tuple


class ModulePresentation:
    """Generators with degrees plus homogeneous relations, over one field."""

    __slots__ = ("n", "field", "generator_degrees", "relations")

    def __init__(self, n: int, field: Field, generator_degrees, relations=()):
        if n < 1:
            raise InputFormatError("the ring needs at least one variable")
        gen_degs = []
        for d in generator_degrees:
            d = tuple(int(x) for x in d)
            if len(d) != n or any(x < 0 for x in d):
                raise InputFormatError(f"generator degree {d} is not a length-{n} vector over N")
            gen_degs.append(d)
        rels = []
        for row in relations:
            triples = []
            degree = None
            for gen, shift, coeff in row:
                if not 0 <= gen < len(gen_degs):
                    raise InputFormatError(f"relation references generator {gen + 1} of {len(gen_degs)}")
                shift = tuple(int(x) for x in shift)
                if len(shift) != n or any(x < 0 for x in shift):
                    raise InputFormatError(f"relation shift {shift} is not a length-{n} vector over N")
                if field.is_zero(coeff):
                    continue
                term_degree = dg.add(gen_degs[gen], shift)
                if degree is None:
                    degree = term_degree
                elif degree != term_degree:
                    raise HomogeneityError(
                        f"relation mixes degrees {degree} and {term_degree}"
                    )
                triples.append((gen, shift, coeff))
            if triples:
                rels.append(Relation(tuple(triples), degree))
        self.n = n
        self.field = field
        self.generator_degrees = tuple(gen_degs)
        self.relations = tuple(rels)

    def default_g(self) -> tuple:
        """Componentwise maximum of all generator and relation degrees."""
        g = dg.zero(self.n)
        for d in self.generator_degrees:
            g = dg.join(g, d)
        for r in self.relations:
            g = dg.join(g, r.degree)
        return g


@dataclass(frozen=True)
class GradedPiece:
    """One graded component M_a in ambient coordinates indexed by the
    generators alive at degree a."""

    gens: tuple[int, ...]
    relation_subspace: Subspace
    coset_basis: tuple[tuple, ...]
    nonpivot_columns: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.coset_basis)

    def coords(self, ambient_vector) -> tuple:
        """Coordinates of an ambient vector in the coset basis."""
        reduced = self.relation_subspace.reduce(ambient_vector)
        return tuple(reduced[c] for c in self.nonpivot_columns)


class GradedModule:
    """A presentation together with all graded pieces on [0, g+1]."""

    def __init__(self, presentation: ModulePresentation, g: tuple):
        g = tuple(int(x) for x in g)
        if len(g) != presentation.n or any(x < 0 for x in g):
            raise InputFormatError(f"g must be a length-{presentation.n} vector over N, got {g}")
        self.presentation = presentation
        self.n = presentation.n
        self.field = presentation.field
        self.g = g
        self.top = dg.add(g, dg.ones(self.n))
        for d in presentation.generator_degrees:
            if not dg.leq(d, self.top):
                raise BoxError(f"generator degree {d} exceeds the box [0, g+1] = [0, {self.top}]")
        for r in presentation.relations:
            if not dg.leq(r.degree, self.top):
                raise BoxError(f"relation degree {r.degree} exceeds the box [0, g+1] = [0, {self.top}]")
        self.pieces: dict[tuple, GradedPiece] = {}
        self.mult_maps: dict[tuple, Matrix] = {}
        self._power_cache: dict[tuple, Matrix] = {}
        self._build()

    def _build(self) -> None:
        pres = self.presentation
        f = self.field
        for a in dg.box(dg.zero(self.n), self.top):
            gens = tuple(i for i, d in enumerate(pres.generator_degrees) if dg.leq(d, a))
            position = {i: p for p, i in enumerate(gens)}
            ambient = len(gens)
            vectors = []
            for r in pres.relations:
                if dg.leq(r.degree, a):
                    vec = [f.zero] * ambient
                    for gen, _shift, coeff in r.triples:
                        p = position[gen]
                        vec[p] = f.add(vec[p], coeff)
                    vectors.append(vec)
            sub = Subspace(f, ambient, vectors)
            basis = tuple(quotient_basis(ambient, sub))
            pivot_set = set(sub.pivots)
            nonpivots = tuple(c for c in range(ambient) if c not in pivot_set)
            self.pieces[a] = GradedPiece(gens, sub, basis, nonpivots)
        for a in dg.box(dg.zero(self.n), self.top):
            src = self.pieces[a]
            for k in range(self.n):
                b = dg.add(a, dg.unit(self.n, k))
                if not dg.leq(b, self.top):
                    continue
                dst = self.pieces[b]
                dst_position = {i: p for p, i in enumerate(dst.gens)}
                columns = []
                for vec in src.coset_basis:
                    image = [f.zero] * len(dst.gens)
                    for p, gen in enumerate(src.gens):
                        if not f.is_zero(vec[p]):
                            image[dst_position[gen]] = f.add(image[dst_position[gen]], vec[p])
                    columns.append(dst.coords(image))
                self.mult_maps[(a, k)] = Matrix.from_columns(f, columns, dst.dim)

    def piece(self, a: tuple) -> GradedPiece:
        piece = self.pieces.get(tuple(a))
        if piece is None:
            raise RangeError(f"degree {tuple(a)} is outside the computed box [0, {self.top}]")
        return piece

    def dim(self, a: tuple) -> int:
        return self.piece(a).dim

    def hilbert_function(self, a: tuple) -> int:
        return self.dim(a)

    def mult_map(self, a: tuple, k: int) -> Matrix:
        key = (tuple(a), k)
        if key not in self.mult_maps:
            raise RangeError(f"multiplication map at {key} is outside the computed box")
        return self.mult_maps[key]

    def power_map(self, src: tuple, dst: tuple) -> Matrix:
        """The map X^(dst-src) : M_src -> M_dst along a fixed monotone path.

        Multiplication maps commute, so the path does not matter; the
        composite is cached per (src, dst) pair.
        """
        src, dst = tuple(src), tuple(dst)
        if not dg.leq(src, dst):
            raise RangeError(f"power map needs src <= dst, got {src}, {dst}")
        key = (src, dst)
        cached = self._power_cache.get(key)
        if cached is not None:
            return cached
        if src == dst:
            out = Matrix.identity(self.field, self.dim(src))
        else:
            k = max(i for i in range(self.n) if dst[i] > src[i])
            mid = dg.sub(dst, dg.unit(self.n, k))
            out = self.mult_map(mid, k) @ self.power_map(src, mid)
        self._power_cache[key] = out
        return out

    def image_subspace(self, src: tuple, dst: tuple) -> Subspace:
        """The subspace X^(dst-src) M_src of M_dst, in coset coordinates."""
        m = self.power_map(src, dst)
        return Subspace(self.field, m.nrows, m.columns())

    def is_zero_module(self) -> bool:
        return all(p.dim == 0 for p in self.pieces.values())

    def verify_g_determined(self):
        """None if multiplication by X_k is an isomorphism on every boundary
        slab a_k = g_k; otherwise the first violating (a, k) in (degree,
        coordinate) order."""
        for a in dg.box(dg.zero(self.n), self.top):
            for k in range(self.n):
                if a[k] != self.g[k]:
                    continue
                b = dg.add(a, dg.unit(self.n, k))
                if not dg.leq(b, self.top):
                    continue
                m = self.mult_maps[(a, k)]
                if m.nrows != m.ncols or m.rank() != m.nrows:
                    return (a, k)
        return None


def build(presentation: ModulePresentation, g: tuple | None = None) -> GradedModule:
    """Compute all graded pieces and multiplication maps on [0, g+1]."""
    if g is None:
        g = presentation.default_g()
    return GradedModule(presentation, g)


# ---------------------------------------------------------------------------
# canonical constructors


def free(field: Field, n: int, shifts) -> ModulePresentation:
    """A free module with one generator per shift, no relations."""
    return ModulePresentation(n, field, shifts)


def minimalize_monomials(exponents) -> list[tuple]:
    """Remove duplicate and divisible exponent vectors; sort the rest."""
    unique = sorted({tuple(int(x) for x in e) for e in exponents})
    return [u for u in unique if not any(v != u and dg.leq(v, u) for v in unique)]


def monomial_ideal(field: Field, n: int, exponents) -> ModulePresentation:
    """The ideal generated by the monomials X^e, presented by its minimal
    generators with the pairwise syzygies X^(lcm/u) e_u - X^(lcm/v) e_v."""
    gens = minimalize_monomials(exponents)
    for e in gens:
        if len(e) != n:
            raise ShapeError(f"exponent vector {e} is not length {n}")
    relations = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            lcm = dg.join(gens[i], gens[j])
            relations.append(
                [
                    (i, dg.sub(lcm, gens[i]), field.one),
                    (j, dg.sub(lcm, gens[j]), field.neg(field.one)),
                ]
            )
    return ModulePresentation(n, field, gens, relations)


def quotient_by_monomial_ideal(field: Field, n: int, exponents) -> ModulePresentation:
    """R / (monomial ideal): one generator in degree 0, one relation per
    minimal ideal generator."""
    gens = minimalize_monomials(exponents)
    for e in gens:
        if len(e) != n:
            raise ShapeError(f"exponent vector {e} is not length {n}")
    relations = [[(0, e, field.one)] for e in gens]
    return ModulePresentation(n, field, [dg.zero(n)], relations)


def direct_sum(parts) -> ModulePresentation:
    """Concatenate presentations; generators and relations are reindexed."""
    parts = list(parts)
    if not parts:
        raise ShapeError("direct sum of no parts")
    n, field = parts[0].n, parts[0].field
    gen_degs = []
    relations = []
    for part in parts:
        if part.n != n or part.field != field:
            raise ShapeError("direct sum parts must share ring and field")
        offset = len(gen_degs)
        gen_degs.extend(part.generator_degrees)
        for r in part.relations:
            relations.append([(gen + offset, shift, coeff) for gen, shift, coeff in r.triples])
    return ModulePresentation(n, field, gen_degs, relations)


def maximal_ideal(field: Field, n: int) -> ModulePresentation:
    """The ideal (X_1, ..., X_n)."""
    return monomial_ideal(field, n, [dg.unit(n, k) for k in range(n)])


# ---------------------------------------------------------------------------
# JSON input
#
# {"ring": {"n": int, "field": "Q" | {"Fp": p}},
#  "g": [..],                              (optional, componentwise >= 0)
#  "module": {"kind": ..., ...}}
#
# kinds:
#   presentation:               {"generator_degrees": [[..]..],
#                                "relations": [[{"gen": 1-based int,
#                                                "shift": [..],
#                                                "coeff": "scalar"}..]..]}
#   monomial_ideal:             {"generators": [[..]..]}
#   quotient_by_monomial_ideal: {"generators": [[..]..]}
#   free:                       {"shifts": [[..]..]}
#   direct_sum:                 {"parts": [module objects..]}


def _parse_module_obj(obj, n: int, field: Field) -> ModulePresentation:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputFormatError('module object must be a dict with a "kind" key')
    kind = obj["kind"]
    try:
        if kind == "presentation":
            rows = []
            for row in obj.get("relations", []):
                triples = []
                for t in row:
                    triples.append((int(t["gen"]) - 1, t["shift"], field.parse(str(t["coeff"]))))
                rows.append(triples)
            return ModulePresentation(n, field, obj["generator_degrees"], rows)
        if kind == "monomial_ideal":
            return monomial_ideal(field, n, obj["generators"])
        if kind == "quotient_by_monomial_ideal":
            return quotient_by_monomial_ideal(field, n, obj["generators"])
        if kind == "free":
            return free(field, n, obj["shifts"])
        if kind == "direct_sum":
            return direct_sum(_parse_module_obj(p, n, field) for p in obj["parts"])
    except KeyError as exc:
        raise InputFormatError(f"module kind {kind!r} is missing key {exc}") from exc
    raise InputFormatError(f"unknown module kind {kind!r}")


def load_module_json(obj, field_override: Field | None = None):
    """Parse a module JSON object into (presentation, explicit g or None)."""
    if not isinstance(obj, dict) or "ring" not in obj or "module" not in obj:
        raise InputFormatError('module file needs "ring" and "module" keys')
    ring = obj["ring"]
    try:
        n = int(ring["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError('ring needs an integer "n"') from exc
    field = field_override if field_override is not None else field_from_json(ring.get("field", "Q"))
    pres = _parse_module_obj(obj["module"], n, field)
    g = obj.get("g")
    if g is not None:
        g = tuple(int(x) for x in g)
        if len(g) != n or any(x < 0 for x in g):
            raise InputFormatError(f"g must be a length-{n} vector over N, got {g}")
    return pres, g


def load_module_file(
    path,
    field_override: Field | None = None,
    g_override: tuple | None = None,
) -> GradedModule:
    """Read a module JSON file and build it."""
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc}") from exc
    try:
        pres, g = load_module_json(obj, field_override)
        if g_override is not None:
            g = tuple(int(x) for x in g_override)
        return build(pres, g)
    except InputFormatError as exc:
        raise InputFormatError(f"{path}: {exc}") from exc
