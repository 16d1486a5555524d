"""Acceptance gate: nine criteria, one pass/fail line each.

Run with `pytest tests/test_acceptance.py -v` (lines appear in the terminal summary)
or `python tests/test_acceptance.py`.
"""
import time

import numpy as np
import pytest

from twotoone import codes, gf, polysolve, search
from twotoone.families import FamilyId, admissible_c_values, build, family_grid, verify_family, FamilyParams
from twotoone.mappings import MappingSpec, is_two_to_one_count, is_two_to_one_derivative

RESULTS = {}

CODE_FIXTURES = {
    # family, k, l -> (length, dimension, min distance, weight distribution)
    ("T32_1", 2, 3): (63, 8, 24, {0: 1, 24: 30, 32: 207, 40: 18}),
    ("T33_1", 3, 3): (511, 12, 240, {0: 1, 240: 840, 256: 2303, 272: 952}),
    ("T34", 3, 2): (63, 9, 24, {0: 1, 24: 70, 32: 399, 40: 42}),
}


def record(num, title, ok, detail):
    RESULTS[num] = (bool(ok), title, detail)
    print(f"criterion {num} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
    assert ok, detail


def _diff_rows(which, pairs):
    bad, seconds = [], 0.0
    for k, l in pairs:
        t = time.perf_counter()
        _, diff = search.diff_tables(which, k, l)
        seconds += time.perf_counter() - t
        if not diff.empty:
            bad.append(((k, l), diff.to_json()))
    return bad, seconds


def test_criterion_1_single_trace_table():
    bad, secs = _diff_rows("3-1", [(2, 3), (3, 3), (2, 5), (3, 2)])
    bad2, secs2 = _diff_rows("3-1", [(5, 2)])
    ok = not bad and not bad2 and secs <= 120 and secs2 <= 1800
    record(1, "single-trace table reproduction", ok,
           f"mismatches {bad + bad2}, {secs:.1f}s for (2,3),(3,3),(2,5),(3,2); {secs2:.1f}s for (5,2)")


def test_criterion_2_double_trace_table():
    bad, secs = _diff_rows("4-1", [(2, 3), (3, 2), (3, 3)])
    ctx = gf.make_field(3, 3)
    odd = [h for h in search.run_double_trace(3, 3).hits if h.exponents == (9, 18)]
    orbit = len(odd) == 1 and len(odd[0].cs) == 3 and search.is_frobenius_orbit(ctx, odd[0].cs)
    ok = not bad and orbit and secs <= 600
    record(2, "double-trace table reproduction", ok,
           f"mismatches {bad}, (9,18) row has {len(odd[0].cs) if odd else 0} c values, {secs:.1f}s")


def test_criterion_3_family_soundness():
    instances = failed = 0
    vacuous = []
    for fid, k, l in family_grid(12):
        if k * l > 10 and fid.value[:3] not in ("T32", "T33", "T42", "T44"):
            continue
        rep = verify_family(fid, k, l)
        if not rep.admissible:
            vacuous.append(f"{fid.value}({k},{l})")
            continue
        instances += 1
        failed += not rep.passed
    record(3, "family soundness sweep", failed == 0,
           f"{instances - failed}/{instances} instances pass for every admissible c "
           f"(k*l <= 10, plus k*l = 12 for T32/T33/T42/T44); {len(vacuous)} instances have no admissible c")


def test_criterion_4_code_distributions():
    notes, ok = [], True
    for (fid, k, l), (length, dim, dmin, dist) in CODE_FIXTURES.items():
        ctx = gf.make_field(k, l)
        spec = build(FamilyParams(fid, k, l, admissible_c_values(fid, ctx)[0]), ctx)
        t = time.perf_counter()
        rep = codes.build_code(ctx, spec, minimal_method=None)
        secs = time.perf_counter() - t
        enum = codes.distribution_of(codes.enumerate_codewords(rep.rows))
        predicted = codes.predicted_distribution(fid, k, l)
        good = (rep.weight_distribution == dist == predicted and enum == rep.weight_distribution
                and (rep.length, rep.dimension, rep.min_distance) == (length, dim, dmin) and secs <= 60)
        ok &= good
        if not good:
            notes.append(f"{fid}({k},{l}): computed {rep.weight_distribution}, enumerated {enum}, "
                         f"closed form {predicted}, fixture {dist}")
        else:
            notes.append(f"{fid}({k},{l}) [{length},{dim},{dmin}] ok")
    record(4, "code weight distributions", ok, "; ".join(notes))


def test_criterion_5_self_orthogonal_and_minimal():
    notes, ok = [], True
    for (fid, k, l) in CODE_FIXTURES:
        ctx = gf.make_field(k, l)
        spec = build(FamilyParams(fid, k, l, admissible_c_values(fid, ctx)[0]), ctx)
        rep = codes.build_code(ctx, spec)
        good = rep.self_orthogonal and rep.minimal
        if ctx.n == 6:
            good &= rep.minimal_method == "sufficient-condition"
            ex, _ = codes.is_minimal(rep.weight_distribution, rep.rows, rep.length, method="exhaustive")
            good &= ex
        ok &= good
        wmin, wmax = rep.min_distance, max(rep.weight_distribution)
        notes.append(f"{fid}({k},{l}) self-orthogonal={rep.self_orthogonal} minimal={rep.minimal} "
                     f"({rep.minimal_method}, {wmin}/{wmax})")
    record(5, "self-orthogonality and minimality", ok, "; ".join(notes))


def _random_spec(ctx, rng):
    order = ctx.order
    outer = 1 if rng.random() < 0.5 else int(rng.integers(1, order + 1))
    exps = tuple(int(e) for e in rng.integers(1, order + 1, size=int(rng.integers(1, 3))))
    c = int(rng.integers(1, ctx.size))
    if rng.random() < 0.5:
        c = int(rng.choice(gf.subfield_elements(ctx)[1:]))
    return MappingSpec(ctx, c, outer, exps)


def test_criterion_6_criterion_equivalence():
    rng = np.random.default_rng(2024)
    checked = agree = positives = 0
    for k, l in [(1, 4), (2, 2), (1, 6), (2, 3), (3, 2)]:
        ctx = gf.make_field(k, l)
        count = 5000 if ctx.n == 4 else 3400
        specs = [_random_spec(ctx, rng) for _ in range(count)]
        for fid, fk, fl in family_grid(6):
            if (fk, fl) == (k, l):
                specs += [build(FamilyParams(fid, k, l, c), ctx) for c in admissible_c_values(fid, ctx)]
        for spec in specs:
            a = is_two_to_one_count(spec)
            checked += 1
            agree += a == is_two_to_one_derivative(spec)
            positives += a
    record(6, "count and derivative criteria agree", checked == agree and checked >= 20000,
           f"{agree}/{checked} specs agree on GF(16) and GF(64) ({positives} are 2-to-1)")


def test_criterion_7_classifier_oracle():
    cases = bad = 0
    for n in (2, 3, 4):
        ctx = gf.make_field(n, 1)
        for a in range(1, ctx.size):
            for b in range(1, ctx.size):
                cases += 1
                bad += polysolve.cubic_classify(ctx, a, b) != polysolve.brute_factor(ctx, [b, a, 0, 1])
        for a2 in range(ctx.size):
            for a1 in range(1, ctx.size):
                for a0 in range(1, ctx.size):
                    cases += 1
                    bad += (polysolve.quartic_classify(ctx, a2, a1, a0)
                            != polysolve.brute_factor(ctx, [a0, a1, a2, 0, 1]))
    record(7, "cubic/quartic classifiers match brute force", bad == 0,
           f"{cases - bad}/{cases} tuples over GF(4), GF(8), GF(16)")


def test_criterion_8_walsh_oracle():
    t = time.perf_counter()
    points = bad = 0
    rng = np.random.default_rng(8)
    for k, l in [(2, 2), (2, 3), (2, 4), (3, 3), (2, 5)]:
        ctx = gf.make_field(k, l)
        spec = MappingSpec(ctx, int(gf.subfield_elements(ctx)[-1]), 1, (ctx.q + 1,))
        w = codes.walsh_matrix(ctx, spec)
        bad += int(np.sum((w.astype(np.int64) ** 2).sum(axis=1) != 4 ** ctx.n))
        if ctx.n <= 6:
            bad += int(np.sum(w != codes.naive_walsh_matrix(ctx, spec)))
            pts = [(a, b) for a in range(ctx.size) for b in range(ctx.size)]
        else:
            pts = [tuple(int(v) for v in p) for p in rng.integers(0, ctx.size, size=(1000, 2))]
            bad += sum(codes.naive_walsh(ctx, spec, a, b) != w[b, a] for a, b in pts)
        bad += sum(codes.quadratic_rank_walsh(ctx, spec, a, b) != w[b, a] for a, b in pts)
        points += len(pts)
    secs = time.perf_counter() - t
    record(8, "Walsh transform oracles", bad == 0 and secs <= 120,
           f"{points} points checked, {bad} disagreements, Parseval on every b, {secs:.1f}s")


def test_criterion_9_negative_results():
    monomials = sum(is_two_to_one_count(gf.power_table(gf.make_field(n, 1), d))
                    for n in range(1, 9) for d in range(1, 1 << n))
    grid = [(k, l) for k in range(2, 11) for l in range(2, 11) if k * l <= 10]
    offenders = [(k, l, h.outer_d) for k, l in grid for h in search.run_single_trace(k, l).hits if h.outer_d != 1]
    record(9, "no 2-to-1 monomials, no hit with outer exponent != 1", monomials == 0 and not offenders,
           f"{monomials} 2-to-1 monomials for n <= 8; searched {grid}; offenders {offenders}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
