"""Mappings c*x^d + Tr_{q^l/q}(sum_i x^{d_i}), their 2-to-1 verification, and the
exponent equivalences (cyclotomic classes, divisor reduction, monomial composition)
used to canonicalise search spaces.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gf
from ._kernels import check_table
from .gf import FieldCtx


@dataclass(frozen=True)
class MappingSpec:
    """c * x^outer_d + Tr_{q^l/q}(sum of x^d for d in trace_exponents)."""

    ctx: FieldCtx
    c: int
    outer_d: int
    trace_exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "trace_exponents", tuple(int(d) for d in self.trace_exponents))
        order = self.ctx.order
        if not 0 < self.c < self.ctx.size:
            raise ValueError(f"c must be a nonzero element of GF(2^{self.ctx.n}), got {self.c}")
        if not self.trace_exponents:
            raise ValueError("at least one trace exponent is required")
        # d = order is kept distinct from 0: x^order is 1 off zero but vanishes at 0
        for d in (self.outer_d, *self.trace_exponents):
            if not 1 <= d <= max(order, 1):
                raise ValueError(f"exponent {d} outside [1, {order}]")

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def table(self) -> np.ndarray:
        return spec_table(self)

    def to_json(self) -> dict:
        return {**self.ctx.to_json(), "c": self.c, "outer_d": self.outer_d,
                "trace_exponents": list(self.trace_exponents)}

    @classmethod
    def from_json(cls, data: dict) -> "MappingSpec":
        ctx = gf.make_field(int(data["k"]), int(data["l"]), int(data["modulus_bits"]))
        return cls(ctx, int(data["c"]), int(data["outer_d"]), tuple(data["trace_exponents"]))


def reduce_exponent(ctx: FieldCtx, d: int) -> int:
    """Representative of d in [1, 2^n - 1]; nonzero d never collapses to the constant x^0."""
    order = ctx.order
    return (d - 1) % order + 1


def evaluate(spec: MappingSpec, x: int) -> int:
    ctx = spec.ctx
    inner = 0
    for d in spec.trace_exponents:
        inner ^= gf.pow(ctx, x, d)
    return gf.mul(ctx, spec.c, gf.pow(ctx, x, spec.outer_d)) ^ gf.trace_rel(ctx, inner)


def trace_part(ctx: FieldCtx, exponents) -> np.ndarray:
    """Tr_{q^l/q}(sum_i x^{d_i}) for every x."""
    xs = ctx.elements()
    inner = np.zeros(ctx.size, dtype=np.int64)
    for d in exponents:
        inner ^= gf.vpow(ctx, xs, d)
    return gf.vtrace_rel(ctx, inner)


def spec_table(spec: MappingSpec) -> np.ndarray:
    ctx = spec.ctx
    mono = gf.vmul(ctx, spec.c, gf.power_table(ctx, spec.outer_d))
    return mono ^ trace_part(ctx, spec.trace_exponents)


class ComposedMapping:
    """x -> f(x^e) for a permutation monomial x^e."""

    def __init__(self, base, e: int, ctx: FieldCtx):
        if math.gcd(e, ctx.order) != 1:
            raise ValueError(f"x^{e} is not a permutation of GF(2^{ctx.n}): gcd({e}, {ctx.order}) != 1")
        self.base = base
        self.e = e
        self.ctx = ctx

    def __call__(self, x: int) -> int:
        return int(function_table(self.base)[gf.pow(self.ctx, x, self.e)])

    def table(self) -> np.ndarray:
        return function_table(self.base)[gf.power_table(self.ctx, self.e)]


def compose_with_monomial_perm(spec: MappingSpec, e: int) -> ComposedMapping:
    return ComposedMapping(spec, e, spec.ctx)


def qm_transform(ctx: FieldCtx, f, a: int, b: int, e: int) -> np.ndarray:
    """Table of x -> a * f(b * x^e)."""
    if a == 0 or b == 0:
        raise ValueError("a and b must be nonzero")
    if math.gcd(e, ctx.order) != 1:
        raise ValueError(f"gcd({e}, {ctx.order}) != 1")
    base = function_table(f)
    return gf.vmul(ctx, a, base[gf.vmul(ctx, b, gf.power_table(ctx, e))])


def function_table(f) -> np.ndarray:
    """Full value table of a MappingSpec, a ComposedMapping, or an array-like table."""
    if hasattr(f, "table"):
        return np.asarray(f.table(), dtype=np.int64)
    return np.asarray(f, dtype=np.int64)


# ---------------------------------------------------------------------------
# 2-to-1 criteria

def is_two_to_one_count(f) -> bool:
    """Every image value has exactly 0 or 2 preimages."""
    return check_table(function_table(f))


def is_two_to_one_derivative(f) -> bool:
    """For every a, f(x + a) + f(a) = 0 has exactly two solutions x (x = 0 included)."""
    table = function_table(f)
    size = table.size
    xs = np.arange(size)
    block = max(1, (1 << 16) // size)
    for start in range(0, size, block):
        a = np.arange(start, min(size, start + block))
        sols = (table[xs[None, :] ^ a[:, None]] == table[a][:, None]).sum(axis=1)
        if np.any(sols != 2):
            return False
    return True


# ---------------------------------------------------------------------------
# exponent equivalences

@dataclass(frozen=True)
class ExpClass:
    canonical: int
    size: int
    members: tuple[int, ...]


def cyclotomic_class(ctx: FieldCtx, d: int) -> ExpClass:
    """{d * q^i mod (q^l - 1)} with its smallest member as canonical representative."""
    order = ctx.order
    if not 1 <= d <= order:
        raise ValueError(f"exponent {d} outside [1, {order}]")
    if d == order:
        return ExpClass(order, 1, (order,))
    members = []
    e = d
    while e not in members:
        members.append(e)
        e = e * ctx.q % order
    members.sort()
    return ExpClass(members[0], len(members), tuple(members))


def cyclotomic_canonical(ctx: FieldCtx, d: int) -> ExpClass:
    return cyclotomic_class(ctx, d)


def canonical_exponent(ctx: FieldCtx, d: int) -> int:
    return cyclotomic_class(ctx, reduce_exponent(ctx, d)).canonical


def trace_term_is_zero(ctx: FieldCtx, d: int, check: bool = False) -> bool:
    """x -> Tr_{q^l/q}(x^d) vanishes identically iff l / |class of d| is even."""
    s = cyclotomic_class(ctx, d).size
    verdict = (ctx.l // s) % 2 == 0
    if check:
        actual = not np.any(trace_part(ctx, [d]))
        if actual != verdict:
            raise AssertionError(f"class-size criterion wrong for d={d}")
    return verdict


def is_linear_class(ctx: FieldCtx, d: int) -> bool:
    """All members are powers of two, so x^d is additive and Tr(x^d) is GF(2)-linear."""
    return bin(reduce_exponent(ctx, d)).count("1") == 1


def divisor_reduce(ctx: FieldCtx, d1: int) -> tuple[int, int]:
    """(s, t) with s = gcd(d1, N), gcd(t, N) = 1 and d1 * t = s mod N, N = q^l - 1.

    Substituting x -> x^t turns c x^d1 + Tr(x^d2) into c x^s + Tr(x^(d2 t)).
    """
    order = ctx.order
    s = math.gcd(d1, order)
    if order == 1:
        return 1, 1
    m = order // s
    t0 = pow(d1 // s, -1, m) if m > 1 else 0
    for j in range(s):
        t = t0 + j * m
        if t and math.gcd(t, order) == 1:
            assert (d1 * t - s) % order == 0
            return s, t
    raise AssertionError("a unit lift always exists")


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))
