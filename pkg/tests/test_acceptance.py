"""Acceptance gate: one test per shipped criterion, each printing a
PASS/FAIL line (run with -s to see them), with the stated runtime
bounds asserted.  Everything is exact arithmetic; there is no numeric
tolerance anywhere."""

import functools
import json
import math
import time
from itertools import islice

import pytest

import oracles
from conftest import data_file
from stanleydepth import degrees as dg
from stanleydepth import modules, polytope
from stanleydepth.fields import QQ, PrimeField
from stanleydepth.hilbert import (
    HilbertPartition,
    enumerate_partitions,
    hdepth,
    partition_to_decomposition,
    truncated_series,
    validate_decomposition,
)
from stanleydepth.polynomials import Poly, evaluate, poly_mul, reduce_exponents
from stanleydepth.stanley import (
    build_matrices,
    certificate_json,
    check_finite,
    check_infinite,
    check_transversal,
    check_unified,
    extract_witness,
    sdepth,
    verify_certificate,
    verify_witness,
)

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)


def criterion(label, limit=None):
    """Print one CRITERION line per run; enforce the runtime bound."""

    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            start = time.monotonic()
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"CRITERION {label}: FAIL")
                raise
            elapsed = time.monotonic() - start
            if limit is not None and elapsed > limit:
                print(f"CRITERION {label}: FAIL (took {elapsed:.1f}s, limit {limit}s)")
                raise AssertionError(
                    f"criterion {label} exceeded its {limit}s budget: {elapsed:.1f}s"
                )
            print(f"CRITERION {label}: PASS ({elapsed:.2f}s)")

        return wrapper

    return decorate


def _texts(grid):
    from stanleydepth.polynomials import to_text

    return [[to_text(entry) for entry in row] for row in grid]


@criterion(1, limit=1.0)
def test_criterion_1_matrices_and_verdict(ex34, ex34_dec):
    fam = build_matrices(ex34, ex34_dec)
    assert _texts(fam.matrices[(1, 0)]) == [["Y[1,1]"]]
    assert _texts(fam.matrices[(0, 1)]) == [["Y[2,1]"]]
    assert _texts(fam.matrices[(1, 1)]) == [["Y[1,1]", "Y[2,1]"], ["0", "0"]]
    report = check_infinite(fam)
    assert report.verdict == "not_induced"
    assert report.failing_degree == (1, 1)


@criterion(2, limit=5.0)
def test_criterion_2_field_size_trichotomy(ex36, ex36_f2, ex36_f5, ex36_dec):
    def y(i, j, field):
        return Poly.variable(field, (i - 1, j - 1))

    fam = build_matrices(ex36, ex36_dec)
    for a, expected in [
        ((3, 1), y(1, 2, QQ) * y(3, 1, QQ)),
        ((3, 2), y(1, 1, QQ) * y(4, 1, QQ)),
        ((3, 3), (y(1, 2, QQ) - y(1, 1, QQ)) * y(5, 1, QQ)),
    ]:
        det = fam.det(a)
        assert det == expected or det == -expected
    assert check_infinite(fam).induced

    report2 = check_finite(build_matrices(ex36_f2, ex36_dec))
    assert report2.verdict == "not_induced" and report2.p_tilde_zero is True

    report5 = check_unified(build_matrices(ex36_f5, ex36_dec))
    assert report5.induced
    witness = extract_witness(ex36_f5, ex36_dec)
    assert verify_witness(ex36_f5, ex36_dec, witness) is None


@criterion(3, limit=120.0)
def test_criterion_3_maximal_ideals_fast():
    for n in (2, 3, 4):
        gm = modules.build(modules.maximal_ideal(QQ, n))
        result = sdepth(gm)
        assert result.value == math.ceil(n / 2)
        assert verify_witness(gm, result.decomposition, result.witness) is None


@pytest.mark.extended
@criterion("3 (extended, n=5)")
def test_criterion_3_maximal_ideal_five():
    gm = modules.build(modules.maximal_ideal(QQ, 5))
    assert sdepth(gm, with_witness=False).value == 3


@criterion(4, limit=300.0)
def test_criterion_4_shipped_partition_is_induced():
    gm = modules.load_module_file(data_file("m6r9.json"))
    obj = json.loads(open(data_file("m6r9_partition.json")).read())
    intervals = [
        (tuple(iv["a"]), tuple(iv["b"]))
        for iv in obj["intervals"]
        for _ in range(iv.get("mult", 1))
    ]
    partition = HilbertPartition(intervals)
    assert partition.series(gm.g) == truncated_series(gm)
    assert partition.depth(gm.g) == 5
    d = partition_to_decomposition(partition, gm.g)
    assert validate_decomposition(d, gm) is None
    assert check_transversal(gm, d).induced


@criterion(5)
def test_criterion_5_hilbert_depth_cross_checks():
    m2 = modules.build(modules.maximal_ideal(QQ, 2))
    assert hdepth(m2) == 1
    for n in (1, 2, 3):
        gm = modules.build(modules.free(QQ, n, [dg.zero(n)]), dg.ones(n))
        assert hdepth(gm) == n
    m6r9 = modules.load_module_file(data_file("m6r9.json"))
    series = truncated_series(m6r9)
    assert list(enumerate_partitions(series, 6)) == []


@criterion(6)
def test_criterion_6_oracle_equivalence():
    corpus = oracles.random_modules(50, seed=20260813)
    assert len(corpus) >= 50
    for gm in corpus:
        assert gm.n <= 3
        assert sum(gm.dim(a) for a in dg.box(dg.zero(gm.n), gm.g)) <= 6
        series = truncated_series(gm)

        mine = {p.intervals for p in enumerate_partitions(series, 0)}
        assert mine == oracles.brute_partitions(series, 0)

        system = polytope.build_hilbert_system(gm)
        solutions = oracles.equality_solutions(system)
        enumerated = {
            partition_to_decomposition(HilbertPartition(ivs), gm.g).canonical()
            for ivs in mine
        }
        from_points = {
            polytope.point_to_decomposition(system, values).canonical()
            for values in solutions
        }
        assert from_points == enumerated
        assert len(solutions) == len(from_points)

        for values in solutions:
            d = polytope.point_to_decomposition(system, values)
            report = check_transversal(gm, d)
            failing = polytope.check_u_vector(gm, system, values)
            assert (failing is None) == report.induced

            fam = build_matrices(gm, d)
            assert check_infinite(fam).induced == report.induced
            assert check_unified(fam).induced == report.induced


@criterion("6 (literal inequality rows)")
def test_criterion_6_literal_subset_rows():
    checked = 0
    for gm in oracles.random_modules(50, seed=20260813):
        if dg.box_size(dg.zero(gm.n), gm.g) > 8:
            continue
        system = polytope.build_stanley_inequalities(gm, max_subset=None)
        for values in oracles.equality_solutions(polytope.build_hilbert_system(gm)):
            violated = system.violated_row(list(values))
            induced = polytope.check_u_vector(gm, system, values) is None
            assert (violated is None) == induced
            checked += 1
    assert checked >= 20


@criterion(7)
def test_criterion_7_sums_of_ideals_and_free_modules():
    total = 0
    for n in (2, 3):
        for alpha in (0, 1, 2):
            for beta in (0, 1, 2):
                if alpha == 0 and beta == 0:
                    continue
                parts = [modules.maximal_ideal(QQ, n) for _ in range(alpha)]
                parts += [modules.free(QQ, n, [dg.zero(n)]) for _ in range(beta)]
                gm = modules.build(modules.direct_sum(parts), dg.ones(n))
                series = truncated_series(gm)
                seen = set()
                for partition in islice(enumerate_partitions(series, 0), 3):
                    d = partition_to_decomposition(partition, gm.g)
                    if d.canonical() in seen:
                        continue
                    seen.add(d.canonical())
                    assert check_transversal(gm, d).induced
                    total += 1
    assert total >= 20


@criterion("8 (matrix invariants)")
def test_criterion_8_squarefree_block_homogeneous():
    fams = []
    ex34 = modules.load_module_file(data_file("ex34.json"))
    from stanleydepth.hilbert import load_decomposition_file

    fams.append(build_matrices(ex34, load_decomposition_file(data_file("ex34_dec.json"), ex34.g)))
    ex36 = modules.load_module_file(data_file("ex36.json"))
    fams.append(build_matrices(ex36, load_decomposition_file(data_file("ex36_dec.json"), ex36.g)))
    for gm in oracles.random_modules(10, seed=6):
        series = truncated_series(gm)
        for partition in islice(enumerate_partitions(series, 0), 2):
            fams.append(build_matrices(gm, partition_to_decomposition(partition, gm.g)))
    for fam in fams:
        for a in fam.degrees():
            alive = fam.columns[a]
            for monomial, _coeff in fam.det(a).terms.items():
                assert all(e == 1 for _v, e in monomial)
                assert sorted(i for (i, _j), _e in monomial) == sorted(alive)


@criterion("8 (finite reduction)")
def test_criterion_8_reduction_by_exhaustive_evaluation():
    cases = []
    for q, field in ((2, F2), (3, F3)):
        cases.append((q, modules.build(modules.maximal_ideal(field, 2))))
        cases.append((q, modules.load_module_file(data_file("ex34.json"), field_override=field)))
        cases.append((q, modules.build(
            modules.quotient_by_monomial_ideal(field, 2, [(2, 0), (1, 1), (0, 2)]))))
    for q, gm in cases:
        series = truncated_series(gm)
        for partition in islice(enumerate_partitions(series, 0), 2):
            d = partition_to_decomposition(partition, gm.g)
            fam = build_matrices(gm, d)
            if len(fam.variables) > 8:
                continue
            product = Poly.one(gm.field)
            for a in fam.degrees():
                product = poly_mul(product, fam.det(a), 10**6)
            reduced = reduce_exponents(product, q)
            variables = sorted(
                {v for mono, _c in product.terms.items() for v, _e in mono}
                | set(fam.variables)
            )
            terms = oracles.dict_from_poly(product)
            values_seen = []
            for point in dg.box(dg.zero(len(variables)), tuple([q - 1] * len(variables))):
                assignment = dict(zip(variables, point))
                expect = oracles.eval_terms_mod(terms, assignment, q)
                assert evaluate(reduced, assignment) == expect
                values_seen.append(expect)
            assert reduced.is_zero() == all(v == 0 for v in values_seen)


@criterion("8 (multiplication maps)")
def test_criterion_8_multiplication_maps_commute():
    targets = [modules.load_module_file(data_file("ex36.json"))]
    targets.extend(oracles.random_modules(10, seed=17))
    for gm in targets:
        top = dg.add(gm.g, dg.ones(gm.n))
        for a in dg.box(dg.zero(gm.n), gm.g):
            for i in range(gm.n):
                for j in range(i + 1, gm.n):
                    b = dg.add(dg.add(a, dg.unit(gm.n, i)), dg.unit(gm.n, j))
                    if not dg.leq(b, top):
                        continue
                    via_i = gm.mult_map(dg.add(a, dg.unit(gm.n, i)), j) @ gm.mult_map(a, i)
                    via_j = gm.mult_map(dg.add(a, dg.unit(gm.n, j)), i) @ gm.mult_map(a, j)
                    assert via_i == via_j


@criterion("8 (certificate round-trips)")
def test_criterion_8_certificate_round_trips(ex36_f5):
    targets = [
        modules.build(modules.maximal_ideal(QQ, 2)),
        modules.build(modules.maximal_ideal(QQ, 3)),
        ex36_f5,
    ]
    for gm in targets:
        result = sdepth(gm)
        cert = certificate_json(gm, result.decomposition, result.witness)
        reparsed = json.loads(json.dumps(cert, sort_keys=True))
        ok, message = verify_certificate(gm, reparsed)
        assert ok, message
