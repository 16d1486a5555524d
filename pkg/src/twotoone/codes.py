"""Binary linear codes C_f = {(Tr(a x + b f(x)))_{x != 0} : a, b} and their Walsh spectra.

Coordinates are ordered by the integer value of x, ascending over GF(2^n)*.
Codewords are Python ints: bit x - 1 holds the coordinate at x.
"""
from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import gf
from .families import FamilyId, family_exponents, structural_violations
from .gf import FieldCtx
from .mappings import MappingSpec, function_table

MAX_EXHAUSTIVE_DIM = 16


class CodeConsistencyError(RuntimeError):
    """The spectrum violates a structural identity; the function table is corrupt."""


# ---------------------------------------------------------------------------
# Walsh transforms

def _table(ctx: FieldCtx, f) -> np.ndarray:
    table = function_table(f)
    if table.shape != (ctx.size,):
        raise ValueError(f"function table must have length 2^{ctx.n} = {ctx.size}, got {table.size}")
    return table


def linear_masks(ctx: FieldCtx) -> np.ndarray:
    """masks[a] is the bit vector m with Tr(a x) = parity(m & x)."""
    tr = gf.abs_trace_table(ctx)
    xs = ctx.elements()
    masks = np.zeros(ctx.size, dtype=np.int64)
    for i in range(ctx.n):
        masks |= tr[gf.vmul(ctx, xs, 1 << i)].astype(np.int64) << i
    return masks


def fht(rows: np.ndarray) -> np.ndarray:
    """Fast Hadamard transform along the last axis (length a power of two)."""
    out = np.array(rows, dtype=np.int64)
    lead = out.shape[:-1]
    size = out.shape[-1]
    h = 1
    while h < size:
        view = out.reshape(*lead, size // (2 * h), 2, h)
        lo = view[..., 0, :].copy()
        hi = view[..., 1, :]
        view[..., 0, :] = lo + hi
        view[..., 1, :] = lo - hi
        h *= 2
    return out


def walsh_matrix(ctx: FieldCtx, f, block: int = 256) -> np.ndarray:
    """W[b, a] = sum_x (-1)^Tr(a x + b f(x)) for all a, b."""
    table = _table(ctx, f)
    tr = gf.abs_trace_table(ctx)
    masks = linear_masks(ctx)
    out = np.empty((ctx.size, ctx.size), dtype=np.int64)
    for start in range(0, ctx.size, block):
        bs = np.arange(start, min(ctx.size, start + block))
        signs = 1 - 2 * tr[gf.vmul(ctx, bs[:, None], table[None, :])].astype(np.int64)
        out[bs] = fht(signs)[:, masks]
    return out


def naive_walsh(ctx: FieldCtx, f, a: int, b: int) -> int:
    table = _table(ctx, f)
    xs = ctx.elements()
    arg = gf.vmul(ctx, a, xs) ^ gf.vmul(ctx, b, table)
    return int(np.sum(1 - 2 * gf.abs_trace_table(ctx)[arg].astype(np.int64)))


def naive_walsh_matrix(ctx: FieldCtx, f) -> np.ndarray:
    """Direct double loop (one row of b at a time); only for small n."""
    table = _table(ctx, f)
    xs = ctx.elements()
    tr = gf.abs_trace_table(ctx).astype(np.int64)
    ax = gf.vmul(ctx, xs[:, None], xs[None, :])          # ax[a, x]
    out = np.empty((ctx.size, ctx.size), dtype=np.int64)
    for b in range(ctx.size):
        bf = gf.vmul(ctx, b, table)
        out[b] = (1 - 2 * tr[ax ^ bf[None, :]]).sum(axis=1)
    return out


@dataclass
class WalshSpectrum:
    n: int
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def moments_ok(self) -> bool:
        n = self.n
        return (self.total == 4 ** n
                and sum(w * c for w, c in self.counts.items()) == 4 ** n
                and sum(w * w * c for w, c in self.counts.items()) == 8 ** n)

    def to_json(self) -> dict:
        return {"n": self.n, "values": {str(w): c for w, c in sorted(self.counts.items())}}


def spectrum_from_matrix(n: int, w: np.ndarray) -> WalshSpectrum:
    vals, cnt = np.unique(w, return_counts=True)
    return WalshSpectrum(n, {int(v): int(c) for v, c in zip(vals, cnt)})


def walsh_spectrum(ctx: FieldCtx, f, check: bool = True, samples: int = 32, seed: int = 0) -> WalshSpectrum:
    """Value multiset of W_f; for n <= 8 a few (a, b) are re-summed directly."""
    w = walsh_matrix(ctx, f)
    if check and ctx.n <= 8:
        rng = np.random.default_rng(seed)
        for a, b in rng.integers(0, ctx.size, size=(samples, 2)):
            if naive_walsh(ctx, f, int(a), int(b)) != w[b, a]:
                raise CodeConsistencyError(f"fast transform disagrees with direct sum at ({a}, {b})")
    return spectrum_from_matrix(ctx.n, w)


# ---------------------------------------------------------------------------
# quadratic forms

def _gf2_rank_basis(vectors):
    """Row-reduced basis {pivot bit: vector} of the GF(2) span of int bit vectors."""
    basis: dict[int, int] = {}
    for v in vectors:
        v = int(v)
        while v:
            p = v.bit_length() - 1
            if p not in basis:
                basis[p] = v
                break
            v ^= basis[p]
    return basis


def _nullspace(rows: list[int], n: int) -> list[int]:
    """Basis of {y : parity(row & y) = 0 for all rows} in GF(2)^n."""
    piv: dict[int, int] = {}
    for r in rows:
        for p, v in piv.items():
            if r >> p & 1:
                r ^= v
        if r:
            p = r.bit_length() - 1
            for q, v in list(piv.items()):
                if v >> p & 1:
                    piv[q] = v ^ r
            piv[p] = r
    free = [j for j in range(n) if j not in piv]
    basis = []
    for j in free:
        y = 1 << j
        for p, v in piv.items():
            if v >> j & 1:
                y |= 1 << p
        basis.append(y)
    return basis


def is_quadratic_spec(spec: MappingSpec) -> bool:
    exps = (spec.outer_d, *spec.trace_exponents)
    return all(0 < bin(e).count("1") <= 2 for e in exps)


def quadratic_rank_walsh(ctx: FieldCtx, spec: MappingSpec, a: int, b: int) -> int:
    """W_f(a, b) for quadratic f from the kernel of the bilinear form of Tr(a x + b f(x))."""
    if not is_quadratic_spec(spec):
        raise ValueError("every exponent must have binary weight at most 2")
    n = ctx.n
    table = spec.table()
    tr = gf.abs_trace_table(ctx)

    def phi(xs):
        xs = np.asarray(xs, dtype=np.int64)
        return tr[gf.vmul(ctx, a, xs) ^ gf.vmul(ctx, b, table[xs])].astype(np.int64)

    basis = np.array([1 << i for i in range(n)], dtype=np.int64)
    pb = phi(basis)
    pairs = phi(basis[:, None] ^ basis[None, :])
    bil = pairs ^ pb[:, None] ^ pb[None, :]
    np.fill_diagonal(bil, 0)
    rows = [int(sum(int(bil[i, j]) << j for j in range(n))) for i in range(n)]
    kernel = _nullspace(rows, n)
    d = len(kernel)
    if kernel and np.any(phi(kernel)):
        return 0
    # phi is constant on cosets of the kernel, so summing over a complement suffices
    pivots = set(_gf2_rank_basis(kernel))
    comp = [1 << j for j in range(n) if j not in pivots]
    span = np.zeros(1, dtype=np.int64)
    for v in comp:
        span = np.concatenate([span, span ^ v])
    total = int(np.sum(1 - 2 * phi(span)))
    w = (1 << d) * total
    if abs(w) != 1 << ((n + d) // 2) or (n + d) % 2:
        raise CodeConsistencyError(f"quadratic Walsh value {w} has the wrong magnitude for d = {d}")
    return w


# ---------------------------------------------------------------------------
# codes

def codeword(ctx: FieldCtx, table: np.ndarray, a: int, b: int) -> int:
    xs = ctx.elements()[1:]
    bits = gf.abs_trace_table(ctx)[gf.vmul(ctx, a, xs) ^ gf.vmul(ctx, b, table[1:])]
    return int.from_bytes(np.packbits(bits.astype(np.uint8), bitorder="little").tobytes(), "little")


def generator_rows(ctx: FieldCtx, f) -> list[int]:
    """Independent rows spanning C_f, reduced from the 2n basis codewords."""
    table = _table(ctx, f)
    raw = [codeword(ctx, table, 1 << i, 0) for i in range(ctx.n)]
    raw += [codeword(ctx, table, 0, 1 << i) for i in range(ctx.n)]
    basis = _gf2_rank_basis(raw)
    return [basis[p] for p in sorted(basis, reverse=True)]


def enumerate_codewords(rows: list[int]) -> list[int]:
    """All 2^len(rows) codewords in Gray-code order."""
    words = [0]
    cur = 0
    for i in range(1, 1 << len(rows)):
        cur ^= rows[(i & -i).bit_length() - 1]
        words.append(cur)
    return words


def distribution_of(words) -> dict[int, int]:
    return dict(sorted(Counter(w.bit_count() for w in words).items()))


def is_self_orthogonal(rows: list[int]) -> bool:
    """Every pair of rows (each row with itself included) has even overlap."""
    return all((rows[i] & rows[j]).bit_count() % 2 == 0
               for i in range(len(rows)) for j in range(i, len(rows)))


def weights_divisible_by_4(distribution: dict[int, int]) -> bool:
    return all(w % 4 == 0 for w in distribution)


def _pack(words: list[int], length: int) -> np.ndarray:
    nwords = max(1, (length + 63) // 64)
    out = np.zeros((len(words), nwords), dtype=np.uint64)
    mask = (1 << 64) - 1
    for i, w in enumerate(words):
        for j in range(nwords):
            out[i, j] = (w >> (64 * j)) & mask
    return out


def minimal_exhaustive(rows: list[int], length: int) -> bool:
    """No nonzero codeword's support strictly contains another's."""
    if len(rows) > MAX_EXHAUSTIVE_DIM:
        raise gf.CapacityError(f"exhaustive minimality is limited to dimension {MAX_EXHAUSTIVE_DIM}")
    words = sorted((w for w in enumerate_codewords(rows) if w), key=int.bit_count)
    weights = np.array([w.bit_count() for w in words])
    packed = _pack(words, length)
    for i in range(len(words)):
        lighter = packed[: np.searchsorted(weights, weights[i])]
        if len(lighter) and np.any(np.all((lighter & packed[i]) == lighter, axis=1)):
            return False
    return True


def is_minimal(distribution: dict[int, int], rows: list[int] | None = None, length: int | None = None,
               method: str = "auto") -> tuple[bool, str]:
    """(verdict, method): the w_min/w_max > 1/2 test first, exhaustive covering otherwise."""
    nonzero = [w for w, m in distribution.items() if w and m]
    if method in ("auto", "sufficient-condition") and nonzero:
        if 2 * min(nonzero) > max(nonzero):
            return True, "sufficient-condition"
        if method == "sufficient-condition":
            raise ValueError("w_min/w_max <= 1/2; the sufficient condition does not decide minimality")
    if rows is None:
        raise ValueError("exhaustive minimality needs the generator rows")
    if length is None:
        length = max((r.bit_length() for r in rows), default=1)
    return minimal_exhaustive(rows, length), "exhaustive"


@dataclass
class CodeReport:
    n: int
    length: int
    dimension: int
    d_K: int
    weight_distribution: dict[int, int]
    spectrum: WalshSpectrum
    rows: list[int] = field(repr=False)
    self_orthogonal: bool = False
    weights_div4: bool = False
    minimal: bool | None = None
    minimal_method: str | None = None

    @property
    def min_distance(self) -> int:
        return min(w for w in self.weight_distribution if w)

    def to_json(self) -> dict:
        return {"length": self.length, "dimension": self.dimension, "d_K": self.d_K,
                "min_distance": self.min_distance,
                "weight_distribution": {str(w): m for w, m in sorted(self.weight_distribution.items())},
                "walsh_spectrum": self.spectrum.to_json()["values"],
                "self_orthogonal": self.self_orthogonal, "weights_divisible_by_4": self.weights_div4,
                "minimal": self.minimal, "minimal_method": self.minimal_method}


def build_code(ctx: FieldCtx, f, minimal_method: str | None = "auto") -> CodeReport:
    """Dimension, weight distribution and predicates of C_f, all read off the Walsh spectrum."""
    table = _table(ctx, f)
    if table[0] != 0:
        raise ValueError("f(0) must be 0")
    n = ctx.n
    w = walsh_matrix(ctx, table)
    spectrum = spectrum_from_matrix(n, w)
    bs, as_ = np.nonzero(w == ctx.size)
    kvecs = (as_.astype(np.int64) | (bs.astype(np.int64) << n)).tolist()
    d_k = len(_gf2_rank_basis(kvecs))
    if len(kvecs) != 1 << d_k:
        raise CodeConsistencyError(f"K has {len(kvecs)} elements, which is not the span of its members")
    dist: dict[int, int] = {}
    for value, count in spectrum.counts.items():
        mult, rem = divmod(count, 1 << d_k)
        if rem:
            raise CodeConsistencyError(f"count {count} of W = {value} is not divisible by 2^{d_k}")
        weight = (ctx.size - value) // 2
        dist[weight] = dist.get(weight, 0) + mult
    dist = dict(sorted(dist.items()))
    rows = generator_rows(ctx, table)
    dim = 2 * n - d_k
    if len(rows) != dim:
        raise CodeConsistencyError(f"generator rank {len(rows)} differs from 2n - d_K = {dim}")
    report = CodeReport(n, ctx.size - 1, dim, d_k, dist, spectrum, rows,
                        is_self_orthogonal(rows), weights_divisible_by_4(dist))
    if minimal_method:
        report.minimal, report.minimal_method = is_minimal(dist, rows, ctx.size - 1, minimal_method)
    return report


def write_weights_csv(path, distribution: dict[int, int]):
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["weight", "multiplicity"])
        for w, m in sorted(distribution.items()):
            out.writerow([w, m])


# ---------------------------------------------------------------------------
# closed forms

def _p2(e: Fraction) -> Fraction:
    if e.denominator != 1:
        raise ValueError(f"non-integral exponent {e}")
    return Fraction(2) ** int(e)


_GOLD_LIKE = {FamilyId.T32_1, FamilyId.T32_2, FamilyId.T32_3}
_SIX_LIKE = {FamilyId.T33_1, FamilyId.T33_2, FamilyId.T33_3}
_QUADRATIC_EXT = {FamilyId.T34}
CODE_FAMILIES = sorted(_GOLD_LIKE | _SIX_LIKE | _QUADRATIC_EXT)


def predicted_distribution(fid, k: int, l: int) -> dict[int, int]:
    """Closed-form weight distribution of C_f for the families with a known three-valued spectrum."""
    fid = FamilyId(fid)
    if fid not in CODE_FAMILIES:
        raise ValueError(f"no closed form for {fid.value}")
    bad = structural_violations(fid, k, l)
    if bad:
        raise ValueError(f"{fid.value} at (k, l) = ({k}, {l}) requires: {', '.join(bad)}")
    n = k * l
    if any(bin(d % ((1 << n) - 1) or 1).count("1") == 1 for d in family_exponents(fid, k, l)):
        raise ValueError(f"{fid.value} at (k, l) = ({k}, {l}) is degenerate: its trace term is linear")
    F = Fraction
    half = F(2) ** (n - 1)
    if fid in _GOLD_LIKE:
        s = _p2(F(n + k, 2) - 1)
        t = _p2(F(n - k, 2) - 1)
        mid = 2 ** (n - k) + 2 ** (n + k) - 2 ** n - 1
        base = half - _p2(F(n - k - 1))
        low, high = s - t + base, t - s + base
    elif fid in _SIX_LIKE:
        s = _p2(F(n + 1, 2) - 1)
        u = _p2(F(n + 1, 2) - 2)
        v = _p2(F(n + 1, 2) - 2 + k)
        mid = 2 ** (n - 1) + 2 ** (n + k) - 2 ** (n - 1 + k) - 1
        base = _p2(F(n - 2 + k)) - _p2(F(n - 2))
        low, high = u - v + base, v - u + base
    else:
        s = _p2(F(n + 2, 2) - 1)
        u = _p2(F(n, 2) - 2)
        v = _p2(F(n, 2) - 2 + k)
        mid = 2 ** (n - 2) + 2 ** (n + k) - 2 ** (n - 2 + k) - 1
        base = _p2(F(n - 3 + k)) - _p2(F(n - 3))
        low, high = v - u + base, u - v + base
    dist: dict[int, int] = {0: 1}
    for weight, mult in ((half - s, low), (half, F(mid)), (half + s, high)):
        if weight.denominator != 1 or mult.denominator != 1 or mult < 0:
            raise ValueError(f"closed form is not a valid distribution at (k, l) = ({k}, {l})")
        if mult:
            dist[int(weight)] = dist.get(int(weight), 0) + int(mult)
    if sum(dist.values()) != 2 ** (n + k):
        raise ValueError("closed-form multiplicities do not sum to 2^(n+k)")
    return dict(sorted(dist.items()))


def distribution_moments_ok(distribution: dict[int, int], n: int, d_k: int) -> bool:
    """Whether the Walsh counts implied by a weight distribution satisfy the three power moments."""
    counts = {(1 << n) - 2 * w: m << d_k for w, m in distribution.items()}
    return WalshSpectrum(n, counts).moments_ok()


def solve_frequency_system(n: int, d_k: int, values) -> tuple[int, int, int]:
    """Counts X_1..X_3 of three Walsh values given X_0 = 2^d_K copies of 2^n.

    Solves the first three power moments exactly.
    """
    v = [int(x) for x in values]
    if len(v) != 3:
        raise ValueError("exactly three values are needed")
    v0 = 1 << n
    if len(set(v + [v0])) != 4:
        raise ValueError("the values must be distinct from each other and from 2^n")
    x0 = 1 << d_k
    rhs = [Fraction(4 ** n - x0), Fraction(4 ** n - v0 * x0), Fraction(8 ** n - v0 * v0 * x0)]
    m = [[Fraction(1)] * 3, [Fraction(x) for x in v], [Fraction(x * x) for x in v]]
    # Gaussian elimination over the rationals
    aug = [row + [r] for row, r in zip(m, rhs)]
    for col in range(3):
        piv = next(r for r in range(col, 3) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(3):
            if r != col and aug[r][col]:
                f = aug[r][col] / aug[col][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    sol = [aug[i][3] / aug[i][i] for i in range(3)]
    if any(s.denominator != 1 or s < 0 for s in sol):
        raise ValueError(f"no nonnegative integral solution: {sol}")
    return tuple(int(s) for s in sol)
