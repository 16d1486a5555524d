"""Arithmetic in GF(2^n) with an explicit subfield tower GF(q) < GF(q^l), q = 2^k.

Elements are plain Python ints whose bit i is the coefficient of x^i in the
polynomial basis.  A :class:`FieldCtx` carries the modulus and log/antilog
tables; the vectorised helpers at the bottom operate on whole numpy arrays
of elements and are what the search and code modules use.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

MAX_DEGREE = 16


class CapacityError(ValueError):
    """Requested field is larger than the table-driven implementation supports."""


# ---------------------------------------------------------------------------
# polynomials over GF(2), packed into ints

def clmul(a: int, b: int) -> int:
    """Carryless product of two GF(2)[x] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def poly_mulmod(a: int, b: int, m: int) -> int:
    return poly_mod(clmul(a, b), m)


def _x_pow_2_pow(m: int, f: int) -> int:
    """x^(2^m) mod f by repeated squaring."""
    r = poly_mod(0b10, f)
    for _ in range(m):
        r = poly_mulmod(r, r, f)
    return r


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: int) -> bool:
    """Rabin's test: x^(2^n) = x mod f and gcd(x^(2^(n/p)) - x, f) = 1 for p | n."""
    n = f.bit_length() - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if _x_pow_2_pow(n, f) != 0b10:
        return False
    for p in prime_factors(n):
        h = _x_pow_2_pow(n // p, f) ^ 0b10
        if poly_gcd(f, h) != 1:
            return False
    return True


def smallest_irreducible(n: int) -> int:
    for f in range(1 << n, 1 << (n + 1)):
        if f & 1 or n == 1:
            if is_irreducible(f):
                return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


# ---------------------------------------------------------------------------
# the field context

@dataclass(frozen=True, eq=False)
class FieldCtx:
    """GF(2^n), n = k*l, viewed as GF(q^l) over the subfield GF(q), q = 2^k.

    Immutable; the tables are read-only numpy arrays plus list mirrors for
    fast scalar lookups.
    """

    k: int
    l: int
    modulus: int
    generator: int = field(repr=False)
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    _exp: list = field(repr=False)
    _log: list = field(repr=False)

    @property
    def n(self) -> int:
        return self.k * self.l

    @property
    def q(self) -> int:
        return 1 << self.k

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def order(self) -> int:
        """Order of the multiplicative group, 2^n - 1."""
        return (1 << self.n) - 1

    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    def to_json(self) -> dict:
        return {"k": self.k, "l": self.l, "modulus_bits": self.modulus}

    def __eq__(self, other):
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return (self.k, self.l, self.modulus) == (other.k, other.l, other.modulus)

    def __hash__(self):
        return hash((self.k, self.l, self.modulus))

    def __reduce__(self):
        return (make_field, (self.k, self.l, self.modulus))


_cache: dict[tuple[int, int, int], FieldCtx] = {}


def make_field(k: int, l: int, modulus: int | None = None) -> FieldCtx:
    """Build GF(2^(k*l)); the default modulus is the numerically smallest irreducible."""
    if k < 1 or l < 1:
        raise ValueError(f"k and l must be positive, got k={k}, l={l}")
    n = k * l
    if n > MAX_DEGREE:
        raise CapacityError(f"n = k*l = {n} exceeds the supported bound {MAX_DEGREE}")
    if modulus is None:
        modulus = smallest_irreducible(n)
    elif modulus.bit_length() - 1 != n:
        raise ValueError(f"modulus {modulus:#b} does not have degree {n}")
    elif not is_irreducible(modulus):
        raise ValueError(f"modulus {modulus:#b} is not irreducible over GF(2)")
    key = (k, l, modulus)
    if key in _cache:
        return _cache[key]

    order = (1 << n) - 1
    g = _find_generator(modulus, n)
    exp = [0] * (2 * order + 1)
    log = [-1] * (1 << n)
    e = 1
    for i in range(order):
        exp[i] = e
        log[e] = i
        e = poly_mulmod(e, g, modulus)
    for i in range(order, 2 * order + 1):
        exp[i] = exp[i - order]
    exp_arr = np.array(exp, dtype=np.int64)
    log_arr = np.array(log, dtype=np.int64)
    exp_arr.flags.writeable = False
    log_arr.flags.writeable = False
    ctx = FieldCtx(k, l, modulus, g, exp_arr, log_arr, exp, log)
    _cache[key] = ctx
    return ctx


def _find_generator(modulus: int, n: int) -> int:
    order = (1 << n) - 1
    if order == 1:
        return 1
    ps = prime_factors(order)
    for g in range(2, 1 << n):
        if all(_slow_pow(g, order // p, modulus) != 1 for p in ps):
            return g
    raise AssertionError("multiplicative group is cyclic")


def _slow_pow(a: int, e: int, m: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = poly_mulmod(r, a, m)
        a = poly_mulmod(a, a, m)
        e >>= 1
    return r


# ---------------------------------------------------------------------------
# scalar operations

def add(ctx: FieldCtx, a: int, b: int) -> int:
    return a ^ b


def mul(ctx: FieldCtx, a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return ctx._exp[ctx._log[a] + ctx._log[b]]


def inv(ctx: FieldCtx, a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("inverse of 0 in GF(2^n)")
    return ctx._exp[(ctx.order - ctx._log[a]) % ctx.order]


def div(ctx: FieldCtx, a: int, b: int) -> int:
    return mul(ctx, a, inv(ctx, b))


def pow(ctx: FieldCtx, a: int, e: int) -> int:  # noqa: A001 - field power, mirrors builtin
    """a^e; pow(0, 0) = 1, pow(0, e) = 0 for e > 0.  Negative e inverts."""
    if a == 0:
        if e == 0:
            return 1
        if e < 0:
            raise ZeroDivisionError("negative power of 0")
        return 0
    return ctx._exp[(ctx._log[a] * e) % ctx.order]


def frobenius_q(ctx: FieldCtx, a: int, i: int = 1) -> int:
    """a^(q^i)."""
    return pow(ctx, a, ctx.q ** (i % ctx.l)) if ctx.l > 1 else a


def trace_rel(ctx: FieldCtx, a: int) -> int:
    """Relative trace Tr_{q^l/q}(a) = a + a^q + ... + a^(q^(l-1))."""
    if a == 0:
        return 0
    la = ctx._log[a]
    r = 0
    e = 1
    for _ in range(ctx.l):
        r ^= ctx._exp[(la * e) % ctx.order]
        e *= ctx.q
    return r


def trace_abs(ctx: FieldCtx, a: int) -> int:
    """Absolute trace Tr_{2^n/2}(a), returned as 0 or 1."""
    r = 0
    for _ in range(ctx.n):
        r ^= a
        a = mul(ctx, a, a)
    return r


def trace_sub(ctx: FieldCtx, a: int) -> int:
    """Absolute trace of a subfield element computed inside GF(q): sum of a^(2^i), i < k."""
    r = 0
    for _ in range(ctx.k):
        r ^= a
        a = mul(ctx, a, a)
    return r


def in_subfield(ctx: FieldCtx, a: int) -> bool:
    return frobenius_q(ctx, a, 1) == a if ctx.l > 1 else True


def subfield_elements(ctx: FieldCtx) -> list[int]:
    """The q elements of GF(q) as embedded in ctx."""
    if ctx.l == 1:
        return list(range(ctx.size))
    step = ctx.order // (ctx.q - 1)
    return [0] + sorted(ctx._exp[i * step] for i in range(ctx.q - 1))


def omega_elements(ctx: FieldCtx) -> list[int]:
    """Roots of w^2 + w + 1, i.e. GF(4) minus GF(2); empty when n is odd."""
    if ctx.n % 2:
        return []
    step = ctx.order // 3
    return sorted([ctx._exp[step], ctx._exp[2 * step]])


def element_order(ctx: FieldCtx, a: int) -> int:
    if a == 0:
        raise ValueError("0 has no multiplicative order")
    return ctx.order // math.gcd(ctx.order, ctx._log[a])


# ---------------------------------------------------------------------------
# vectorised helpers (numpy int64 arrays of elements)

def vmul(ctx: FieldCtx, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    la = ctx.log[a]
    lb = ctx.log[b]
    out = ctx.exp[np.maximum(la, 0) + np.maximum(lb, 0)]
    return np.where((a == 0) | (b == 0), 0, out)


def vpow(ctx: FieldCtx, a, e: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if e == 0:
        return np.ones_like(a)
    la = ctx.log[a]
    out = ctx.exp[(np.maximum(la, 0) * (e % ctx.order)) % ctx.order]
    return np.where(a == 0, 0, out)


def power_table(ctx: FieldCtx, e: int) -> np.ndarray:
    """x^e for every x in the field, indexed by x."""
    return vpow(ctx, ctx.elements(), e)


def vtrace_rel(ctx: FieldCtx, a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    out = np.zeros_like(a)
    e = 1
    for _ in range(ctx.l):
        out ^= vpow(ctx, a, e)
        e *= ctx.q
    return out


def vtrace_abs(ctx: FieldCtx, a) -> np.ndarray:
    return abs_trace_table(ctx)[np.asarray(a, dtype=np.int64)]


_abs_trace_cache: dict[FieldCtx, np.ndarray] = {}


def abs_trace_table(ctx: FieldCtx) -> np.ndarray:
    """Tr_{2^n/2}(x) for every x.  The absolute trace is GF(2)-linear, so it is a parity mask."""
    t = _abs_trace_cache.get(ctx)
    if t is None:
        mask = 0
        for i in range(ctx.n):
            mask |= trace_abs(ctx, 1 << i) << i
        xs = ctx.elements() & mask
        t = np.zeros(ctx.size, dtype=np.int64)
        for i in range(ctx.n):
            t ^= (xs >> i) & 1
        t.flags.writeable = False
        _abs_trace_cache[ctx] = t
    return t


def abs_trace_mask(ctx: FieldCtx) -> int:
    """Bit mask m with Tr_{2^n/2}(x) = parity(x & m)."""
    m = 0
    for i in range(ctx.n):
        m |= trace_abs(ctx, 1 << i) << i
    return m
