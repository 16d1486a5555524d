import pytest

from twotoone import gf, search
from twotoone.mappings import canonical_exponent, cyclotomic_class


def _keyed(result):
    ctx = gf.make_field(result.k, result.l)
    return {tuple(canonical_exponent(ctx, e) for e in h.exponents): h for h in result.hits}


def test_single_examples():
    res = search.run_single_trace(2, 3)
    assert [(h.outer_d, h.exponents, h.c_range) for h in res.hits] == [(1, (5,), search.GF_Q_STAR)]
    assert list(res.hits[0].cs) == gf.subfield_elements(gf.make_field(2, 3))[1:]
    hits = _keyed(search.run_single_trace(3, 3))
    assert sorted(hits) == [(6,), (9,), (18,), (20,), (34,)]
    assert all(h.c_range == search.GF_Q_STAR and len(h.cs) == 7 for h in hits.values())
    assert search.run_single_trace(2, 2).hits == []


def test_double_examples():
    hits = _keyed(search.run_double_trace(2, 3))
    assert list(hits) == [(5, 10)] and hits[(5, 10)].c_range == search.GF_Q_NOT_01
    hits = _keyed(search.run_double_trace(3, 2))
    assert sorted(hits) == [(6, 20), (13, 15)]
    assert hits[(13, 15)].c_range == search.CUBE_ROOTS_OF_UNITY
    assert hits[(6, 20)].c_range == search.OUTSIDE_SUBFIELD and len(hits[(6, 20)].cs) == 56


def test_double_3_3_and_frobenius_row():
    res = search.run_double_trace(3, 3)
    hits = _keyed(res)
    assert sorted(hits) == [(6, 36), (9, 18), (9, 36), (18, 36), (20, 36), (34, 36)]
    odd = hits[(9, 18)]
    ctx = gf.make_field(3, 3)
    assert odd.c_range == search.EXPLICIT and len(odd.cs) == 3
    assert all(gf.in_subfield(ctx, c) for c in odd.cs)
    assert search.is_frobenius_orbit(ctx, odd.cs)


def test_search_space_pruning():
    ctx = gf.make_field(2, 3)
    assert search.outer_exponents(ctx) == [1, 3, 7, 9, 21]
    reps = search.inner_exponents(ctx)
    assert 1 not in reps and 5 in reps and 17 not in reps
    assert all(cyclotomic_class(ctx, d).canonical == d for d in reps)
    ctx = gf.make_field(2, 2)
    assert 5 not in search.inner_exponents(ctx)


@pytest.mark.parametrize("k,l", [(2, 2), (2, 3)])
def test_pruning_is_sound(k, l):
    pruned = search.run_single_trace(k, l).hits
    assert search.run_reference_single(k, l) == pruned


def test_search_is_deterministic_across_jobs():
    a = search.run_double_trace(3, 2, jobs=1).hits
    b = search.run_double_trace(3, 2, jobs=2).hits
    assert a == b


def test_jobs_from_environment(monkeypatch):
    monkeypatch.setenv(search.JOBS_ENV, "3")
    assert search.default_jobs() == 3


def test_capacity_gates():
    with pytest.raises(search.LongRunRequired):
        search.run_single_trace(3, 4)
    with pytest.raises(gf.CapacityError):
        search.run_single_trace(2, 7, long_run=True)
    with pytest.raises(ValueError):
        search.run_single_trace(1, 5)
    with pytest.raises(ValueError):
        search.run_single_trace(5, 1)


def test_c_range_labels():
    ctx = gf.make_field(3, 2)
    for label in (search.GF_Q_STAR, search.GF_Q_NOT_01, search.OMEGA_RATIO, search.CUBE_ROOTS_OF_UNITY,
                  search.OUTSIDE_SUBFIELD, search.ALL_NONZERO):
        assert search.c_range_label(ctx, search.c_range_set(ctx, label)) == label
    assert len(search.c_range_set(ctx, search.OMEGA_RATIO)) == 14
    assert search.c_range_label(ctx, [5]) == search.EXPLICIT


def test_diff_examples():
    ctx = gf.make_field(2, 3)
    hits = search.run_single_trace(2, 3).hits
    rows = search.table_rows("3-1", 2, 3)
    assert search.diff_against_table(hits, rows, ctx).empty
    assert search.diff_against_table(hits, [], ctx).extra[0]["exponents"] == [5]
    moved = [search.SearchHit(1, (17,), hits[0].cs)]
    assert search.diff_against_table(moved, rows, ctx).empty
    diff = search.diff_against_table([], rows, ctx)
    assert diff.missing and not diff.empty
    short = [search.SearchHit(1, (5,), (1, 2))]
    assert search.diff_against_table(short, rows, ctx).c_mismatch


def test_table_fixtures():
    t31 = search.load_table("3-1")
    t41 = search.load_table("4-1")
    assert len(t31["rows"]) == 12 and len(t41["rows"]) == 9
    assert [2, 3] in t31["complete_for"]


def test_hit_json():
    hit = search.run_single_trace(2, 3).hits[0]
    sub = gf.subfield_elements(gf.make_field(2, 3))[1:]
    assert hit.to_json() == {"outer_d": 1, "exponents": [5], "c_values": sub, "c_count": 3,
                             "c_range": "GF(q)*"}
