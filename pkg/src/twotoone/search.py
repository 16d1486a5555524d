"""Exhaustive search for 2-to-1 mappings c*x^d + Tr(x^{d1}) and c*x^d + Tr(x^{d1} + x^{d2}).

The search space is pruned the same way throughout:

* the outer exponent runs over divisors of q^l - 1 (x -> x^t with gcd(t, q^l - 1) = 1
  moves any other outer exponent onto its gcd);
* inner exponents are canonical cyclotomic representatives whose trace term is not
  identically zero and is not GF(2)-linear (a power-of-two exponent makes the whole
  map linear, which is not what the switching construction is after);
* c runs over all of GF(q^l)*.

Work is sharded by exponent tuple; every shard checks all c at once.
"""
from __future__ import annotations

import json
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import gf
from ._kernels import scan_coefficients
from .gf import FieldCtx
from .mappings import canonical_exponent, cyclotomic_class, divisors, is_linear_class, trace_part, trace_term_is_zero

LONG_RUN_N = 12
JOBS_ENV = "TWOTOONE_JOBS"


class LongRunRequired(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# c-range labels

GF_Q_STAR = "GF(q)*"
GF_Q_NOT_01 = "GF(q)\\{0,1}"
OMEGA_RATIO = "c^(q-1) in GF(4)\\GF(2)"
CUBE_ROOTS_OF_UNITY = "GF(4)\\{0,1}"
OUTSIDE_SUBFIELD = "GF(q^l)\\GF(q)"
ALL_NONZERO = "GF(q^l)*"
EXPLICIT = "explicit"


def c_range_set(ctx: FieldCtx, label: str) -> set[int] | None:
    """The coefficient set a symbolic label denotes in ctx, or None for explicit ranges."""
    sub = set(gf.subfield_elements(ctx))
    if label == GF_Q_STAR:
        return sub - {0}
    if label == GF_Q_NOT_01:
        return sub - {0, 1}
    if label == OMEGA_RATIO:
        om = set(gf.omega_elements(ctx))
        return {c for c in range(1, ctx.size) if gf.pow(ctx, c, ctx.q - 1) in om}
    if label == CUBE_ROOTS_OF_UNITY:
        return set(gf.omega_elements(ctx))
    if label == OUTSIDE_SUBFIELD:
        return set(range(1, ctx.size)) - sub
    if label == ALL_NONZERO:
        return set(range(1, ctx.size))
    if label == EXPLICIT:
        return None
    raise ValueError(f"unknown c-range label {label!r}")


def c_range_label(ctx: FieldCtx, cs) -> str:
    cs = set(cs)
    for label in (GF_Q_STAR, GF_Q_NOT_01, OMEGA_RATIO, CUBE_ROOTS_OF_UNITY, OUTSIDE_SUBFIELD, ALL_NONZERO):
        if c_range_set(ctx, label) == cs:
            return label
    return EXPLICIT


def is_frobenius_orbit(ctx: FieldCtx, cs) -> bool:
    """cs is a single orbit of c -> c^2."""
    cs = set(cs)
    if not cs:
        return False
    start = min(cs)
    orbit = {start}
    c = gf.mul(ctx, start, start)
    while c != start:
        orbit.add(c)
        c = gf.mul(ctx, c, c)
    return orbit == cs


# ---------------------------------------------------------------------------
# results

@dataclass(frozen=True)
class SearchHit:
    outer_d: int
    exponents: tuple[int, ...]
    cs: tuple[int, ...]
    c_range: str = field(compare=False, default=EXPLICIT)

    def to_json(self) -> dict:
        return {"outer_d": self.outer_d, "exponents": list(self.exponents),
                "c_values": list(self.cs), "c_count": len(self.cs), "c_range": self.c_range}


@dataclass
class SearchResult:
    k: int
    l: int
    form: str
    modulus: int
    hits: list[SearchHit]
    shards: int = 0

    def to_json(self) -> dict:
        return {"k": self.k, "l": self.l, "form": self.form, "modulus_bits": self.modulus,
                "shards": self.shards, "hits": [h.to_json() for h in self.hits]}


# ---------------------------------------------------------------------------
# search space

def outer_exponents(ctx: FieldCtx) -> list[int]:
    """Divisors of q^l - 1 inside [1, q^l - 2]."""
    return [d for d in divisors(ctx.order) if d <= ctx.order - 1]


def inner_exponents(ctx: FieldCtx) -> list[int]:
    """Canonical cyclotomic representatives with a nonzero, nonlinear trace term."""
    reps = []
    seen = np.zeros(ctx.order + 1, dtype=bool)
    for d in range(1, ctx.order):
        if seen[d]:
            continue
        cls = cyclotomic_class(ctx, d)
        seen[list(cls.members)] = True
        if trace_term_is_zero(ctx, d) or is_linear_class(ctx, d):
            continue
        reps.append(cls.canonical)
    return reps


def single_shards(ctx: FieldCtx) -> list[tuple[int, tuple[int, ...]]]:
    return [(d, (e,)) for d in outer_exponents(ctx) for e in inner_exponents(ctx)]


def double_shards(ctx: FieldCtx) -> list[tuple[int, tuple[int, ...]]]:
    reps = inner_exponents(ctx)
    pairs = [(a, b) for i, a in enumerate(reps) for b in reps[i + 1:]]
    return [(d, p) for d in outer_exponents(ctx) for p in pairs]


def _check_capacity(k: int, l: int, long_run: bool):
    if k < 2:
        raise ValueError("the search assumes k > 1 (k = 1 is the classical absolute-trace case)")
    if l < 2:
        raise ValueError("the search assumes l >= 2 (l = 1 makes the trace the identity)")
    n = k * l
    if n >= 14:
        raise gf.CapacityError(f"searches are limited to k*l < 14, got {n}")
    if n >= LONG_RUN_N and not long_run:
        raise LongRunRequired(f"k*l = {n} searches need the long-run flag")


# ---------------------------------------------------------------------------
# execution

def _scan(ctx: FieldCtx, shards) -> list[tuple[int, tuple[int, ...], tuple[int, ...]]]:
    out = []
    c_all = np.arange(1, ctx.size, dtype=np.int64)
    c_logs = ctx.log[c_all].copy()
    verdict = np.zeros(len(c_logs), dtype=np.bool_)
    tcache: dict[int, np.ndarray] = {}
    mono_cache: dict[int, np.ndarray] = {}
    for outer_d, exps in shards:
        mono = mono_cache.get(outer_d)
        if mono is None:
            mono = mono_cache[outer_d] = ctx.log[gf.power_table(ctx, outer_d)].copy()
        tpart = np.zeros(ctx.size, dtype=np.int64)
        for e in exps:
            t = tcache.get(e)
            if t is None:
                t = tcache[e] = trace_part(ctx, [e])
            tpart ^= t
        scan_coefficients(ctx.exp, mono, tpart, c_logs, verdict)
        if verdict.any():
            out.append((outer_d, tuple(exps), tuple(int(c) for c in c_all[verdict])))
    return out


def _scan_worker(args):
    k, l, modulus, shards = args
    return _scan(gf.make_field(k, l, modulus), shards)


def default_jobs() -> int:
    env = os.environ.get(JOBS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _run(ctx: FieldCtx, shards, jobs: int | None):
    jobs = default_jobs() if jobs is None else max(1, jobs)
    if jobs == 1 or len(shards) < 2:
        raw = _scan(ctx, shards)
    else:
        chunks = [shards[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_scan_worker, [(ctx.k, ctx.l, ctx.modulus, ch) for ch in chunks])
            raw = [h for part in parts for h in part]
    hits = [SearchHit(d, e, cs, c_range_label(ctx, cs)) for d, e, cs in raw]
    hits.sort(key=lambda h: (h.outer_d, h.exponents, h.cs))
    return hits


def run_single_trace(k: int, l: int, jobs: int | None = 1, long_run: bool = False,
                     modulus: int | None = None) -> SearchResult:
    """All 2-to-1 maps c*x^d + Tr(x^e) over the pruned space."""
    _check_capacity(k, l, long_run)
    ctx = gf.make_field(k, l, modulus)
    shards = single_shards(ctx)
    return SearchResult(k, l, "single", ctx.modulus, _run(ctx, shards, jobs), len(shards))


def run_double_trace(k: int, l: int, jobs: int | None = 1, long_run: bool = False,
                     modulus: int | None = None) -> SearchResult:
    """All 2-to-1 maps c*x^d + Tr(x^d1 + x^d2), d1 < d2, over the pruned space."""
    _check_capacity(k, l, long_run)
    ctx = gf.make_field(k, l, modulus)
    shards = double_shards(ctx)
    return SearchResult(k, l, "double", ctx.modulus, _run(ctx, shards, jobs), len(shards))


def run_reference_single(k: int, l: int) -> list[SearchHit]:
    """Unpruned single-trace search (every outer and inner exponent), mapped onto the
    pruned coordinates so it can be compared with run_single_trace.

    (d1, d2, c) goes to (s, canonical(d2 * t), c) where x -> x^t sends d1 to s = gcd(d1, N).
    Inner classes the pruned search skips are dropped here too, judged after the substitution.
    """
    from .mappings import divisor_reduce
    ctx = gf.make_field(k, l)
    shards = [(d1, (d2,)) for d1 in range(1, ctx.order) for d2 in range(1, ctx.order)]
    raw = _scan(ctx, shards)
    merged: dict[tuple, set] = defaultdict(set)
    for d1, (d2,), cs in raw:
        s, t = divisor_reduce(ctx, d1)
        e = canonical_exponent(ctx, d2 * t)
        if trace_term_is_zero(ctx, e) or is_linear_class(ctx, e):
            continue
        merged[(s, (e,))].update(cs)
    hits = [SearchHit(s, e, tuple(sorted(cs)), c_range_label(ctx, cs)) for (s, e), cs in merged.items()]
    hits.sort(key=lambda h: (h.outer_d, h.exponents, h.cs))
    return hits


# ---------------------------------------------------------------------------
# table fixtures and diffs

def load_table(which: str) -> dict:
    name = {"3-1": "table_3_1.json", "4-1": "table_4_1.json"}[which]
    return json.loads(resources.files("twotoone.data").joinpath(name).read_text())


def table_rows(which: str, k: int, l: int) -> list[dict]:
    return [r for r in load_table(which)["rows"] if r["k"] == k and r["l"] == l]


def _exp_key(ctx: FieldCtx, exps) -> tuple[int, ...]:
    return tuple(sorted(canonical_exponent(ctx, e) for e in exps))


@dataclass
class TableDiff:
    missing: list[dict] = field(default_factory=list)   # in the table, not found
    extra: list[dict] = field(default_factory=list)     # found, not in the table
    c_mismatch: list[dict] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not (self.missing or self.extra or self.c_mismatch)

    def to_json(self) -> dict:
        return {"missing": self.missing, "extra_in_results": self.extra,
                "c_mismatch": self.c_mismatch, "match": self.empty}


def _row_matches_cs(ctx: FieldCtx, row: dict, cs: set[int]) -> bool:
    if "c_values" in row:
        return set(row["c_values"]) == cs
    expected = c_range_set(ctx, row["c_range"])
    if expected is not None:
        return expected == cs
    if len(cs) != row["c_count"]:
        return False
    if row.get("c_structure") == "frobenius_orbit":
        return is_frobenius_orbit(ctx, cs)
    return True


def diff_against_table(hits, rows: list[dict], ctx: FieldCtx) -> TableDiff:
    """Compare hits with fixture rows up to cyclotomic equivalence of the inner exponents."""
    found = {}
    for h in hits:
        key = (h.outer_d, _exp_key(ctx, h.exponents))
        found.setdefault(key, set()).update(h.cs)
    wanted = {(r.get("outer_d", 1), _exp_key(ctx, r["exponents"])): r for r in rows}
    diff = TableDiff()
    for key, row in sorted(wanted.items()):
        if key not in found:
            diff.missing.append({"outer_d": key[0], "exponents": list(key[1]), "c_range": row["c_range"]})
        elif not _row_matches_cs(ctx, row, found[key]):
            diff.c_mismatch.append({"outer_d": key[0], "exponents": list(key[1]), "expected": row["c_range"],
                                    "found": c_range_label(ctx, found[key]), "found_count": len(found[key])})
    for key, cs in sorted(found.items()):
        if key not in wanted:
            diff.extra.append({"outer_d": key[0], "exponents": list(key[1]), "c_range": c_range_label(ctx, cs),
                               "c_count": len(cs)})
    return diff


def diff_tables(which: str, k: int, l: int, jobs: int | None = 1, long_run: bool = False) -> tuple[SearchResult, TableDiff]:
    run = run_single_trace if which == "3-1" else run_double_trace
    result = run(k, l, jobs=jobs, long_run=long_run)
    ctx = gf.make_field(k, l, result.modulus)
    return result, diff_against_table(result.hits, table_rows(which, k, l), ctx)
