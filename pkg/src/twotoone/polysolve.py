"""Root counting and factorisation patterns for equations of degree <= 4 over GF(2^n),
plus Dickson polynomials.

Patterns are sorted tuples of irreducible-factor degrees, e.g. ``(1, 2)``.
Elements outside the base field live in the quadratic extension
GF(2^n)[t]/(t^2 + t + beta) and are represented as pairs ``(u, v) = u + v*t``.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from . import gf
from .gf import FieldCtx


class PreconditionError(ValueError):
    pass


class NotFoundError(LookupError):
    pass


# ---------------------------------------------------------------------------
# quadratics

def quadratic_roots(ctx: FieldCtx, u: int, v: int) -> list[int]:
    """All roots of x^2 + u x + v in ctx, sorted."""
    if u == 0:
        # squaring is a bijection: x = v^(2^(n-1))
        return [gf.pow(ctx, v, 1 << (ctx.n - 1))]
    u2 = gf.mul(ctx, u, u)
    gamma = gf.div(ctx, v, u2)
    if gf.trace_abs(ctx, gamma):
        return []
    z = _half_trace_solve(ctx, gamma)
    r = gf.mul(ctx, u, z)
    return sorted([r, r ^ u])


def _half_trace_solve(ctx: FieldCtx, gamma: int) -> int:
    """A solution of z^2 + z = gamma, assuming Tr(gamma) = 0."""
    n = ctx.n
    if n % 2:
        # half-trace
        z = 0
        g = gamma
        for i in range(n):
            if i % 2 == 0:
                z ^= g
            g = gf.mul(ctx, g, g)
        return z
    # even n: z = sum_{i<n} (sum_{j>i} theta^(2^j)) gamma^(2^i), with Tr(theta) = 1
    theta = _trace_one_element(ctx)
    th = [theta]
    gm = [gamma]
    for _ in range(n - 1):
        th.append(gf.mul(ctx, th[-1], th[-1]))
        gm.append(gf.mul(ctx, gm[-1], gm[-1]))
    z = 0
    for i in range(n - 1):
        s = 0
        for j in range(i + 1, n):
            s ^= th[j]
        z ^= gf.mul(ctx, gm[i], s)
    return z


@lru_cache(maxsize=None)
def _trace_one_element(ctx: FieldCtx) -> int:
    for a in range(1, ctx.size):
        if gf.trace_abs(ctx, a):
            return a
    raise AssertionError("trace is surjective")


# ---------------------------------------------------------------------------
# quadratic extension GF(2^n)[t] / (t^2 + t + beta)

class QuadExt:
    """GF(2^(2n)) as pairs over ctx.  beta is the smallest element of absolute trace 1."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.beta = _trace_one_element(ctx)
        self.order = (1 << (2 * ctx.n)) - 1

    def mul(self, x, y):
        c = self.ctx
        u1, v1 = x
        u2, v2 = y
        vv = gf.mul(c, v1, v2)
        return (gf.mul(c, u1, u2) ^ gf.mul(c, self.beta, vv),
                gf.mul(c, u1, v2) ^ gf.mul(c, u2, v1) ^ vv)

    def pow(self, x, e):
        r = (1, 0)
        while e:
            if e & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            e >>= 1
        return r

    def inv(self, x):
        return self.pow(x, self.order - 1)

    def elements(self):
        for u in range(self.ctx.size):
            for v in range(self.ctx.size):
                yield (u, v)


def _cube_root(mul, pw, order, one, y, non_cube):
    """A cube root of y in a cyclic group of the given order, or None if y is not a cube.

    Adleman-Manders-Miller style: split order = 3^s * m with 3 not dividing m, fix
    the m-part by exponentiation, then the 3-Sylow part by a discrete log.
    """
    if order % 3:
        return pw(y, pow(3, -1, order))
    s, m = 0, order
    while m % 3 == 0:
        m //= 3
        s += 1
    if pw(y, order // 3) != one:
        return None
    kk = 1 if (m + 1) % 3 == 0 else 2
    x0 = pw(y, (kk * m + 1) // 3)
    z = pw(y, kk * m)              # lies in the 3-Sylow subgroup
    g = pw(non_cube, m)            # generates the 3-Sylow subgroup
    sylow = 3 ** s
    acc = one
    j = None
    for i in range(sylow):
        if acc == z:
            j = i
            break
        acc = mul(acc, g)
    if j is None or j % 3:
        raise AssertionError("cube in the 3-Sylow subgroup has exponent divisible by 3")
    h = pw(g, (sylow - j // 3) % sylow)
    x = mul(x0, h)
    assert mul(mul(x, x), x) == y
    return x


@lru_cache(maxsize=None)
def _base_non_cube(ctx: FieldCtx) -> int:
    return ctx.generator


def _ext_non_cube(ext: QuadExt):
    for u in range(ext.ctx.size):
        x = (u, 1)
        if ext.pow(x, ext.order // 3) != (1, 0):
            return x
    raise AssertionError("extension group order is divisible by 3")


def cube_root_base(ctx: FieldCtx, y: int) -> int | None:
    if y == 0:
        return 0
    return _cube_root(lambda a, b: gf.mul(ctx, a, b), lambda a, e: gf.pow(ctx, a, e),
                      ctx.order, 1, y, _base_non_cube(ctx))


def cube_root_ext(ext: QuadExt, y):
    if y == (0, 0):
        return (0, 0)
    return _cube_root(ext.mul, ext.pow, ext.order, (1, 0), y, _ext_non_cube(ext))


# ---------------------------------------------------------------------------
# cubics x^3 + a x + b

def _resolvent_root(ctx: FieldCtx, a: int, b: int):
    """A root y1 of y^2 + b y + a^3 (b != 0), in ctx when possible, else in the extension.

    Returns (y1, ext) where ext is None for a base-field root.
    """
    a3 = gf.pow(ctx, a, 3)
    gamma = gf.div(ctx, a3, gf.mul(ctx, b, b))
    if gf.trace_abs(ctx, gamma) == 0:
        return gf.mul(ctx, b, _half_trace_solve(ctx, gamma)), None
    ext = QuadExt(ctx)
    # z = w + t with w^2 + w = gamma + beta solves z^2 + z = gamma
    w = _half_trace_solve(ctx, gamma ^ ext.beta)
    return (gf.mul(ctx, b, w), b), ext


def _pure_cube_pattern(ctx: FieldCtx, b: int) -> tuple:
    # x^3 = b, b != 0
    if ctx.order % 3:
        return (1, 2)
    return (1, 1, 1) if gf.pow(ctx, b, ctx.order // 3) == 1 else (3,)


def cubic_classify(ctx: FieldCtx, a: int, b: int) -> tuple:
    """Factorisation pattern of x^3 + a x + b, a, b nonzero (trace test plus cubic-residue test)."""
    if a == 0 or b == 0:
        raise PreconditionError("cubic_classify needs a != 0 and b != 0")
    pattern = _cubic_pattern(ctx, a, b)
    if pattern != (3,):
        r = cubic_root(ctx, a, b)
        assert _eval_poly(ctx, [b, a, 0, 1], r) == 0
    return pattern


def _cubic_pattern(ctx: FieldCtx, a: int, b: int) -> tuple:
    if a == 0:
        return _pure_cube_pattern(ctx, b)
    a3 = gf.pow(ctx, a, 3)
    t = gf.trace_abs(ctx, gf.div(ctx, a3, gf.mul(ctx, b, b)))
    if t != ctx.n % 2:
        return (1, 2)
    y1, ext = _resolvent_root(ctx, a, b)
    if ext is None:
        is_cube = gf.pow(ctx, y1, ctx.order // 3) == 1
    else:
        is_cube = ext.pow(y1, ext.order // 3) == (1, 0)
    return (1, 1, 1) if is_cube else (3,)


def cubic_root(ctx: FieldCtx, a: int, b: int) -> int:
    """One root of x^3 + a x + b in ctx via r = eps + a/eps, eps^3 = y1, y1^2 + b y1 + a^3 = 0."""
    if b == 0:
        raise PreconditionError("cubic_root needs b != 0")
    if a == 0:
        r = cube_root_base(ctx, b)
        if r is None:
            raise NotFoundError("x^3 = b has no root in the field")
        return r
    y1, ext = _resolvent_root(ctx, a, b)
    candidates = []
    if ext is None:
        eps = cube_root_base(ctx, y1)
        if eps is not None:
            candidates = [eps ^ gf.div(ctx, a, eps)]
    else:
        eps = cube_root_ext(ext, y1)
        if eps is not None:
            # the three cube roots eps * w^j; keep a resulting r that lands in the base field
            w = _primitive_cube_root_of_unity(ext)
            for _ in range(3):
                e_inv = ext.inv(eps)
                r = (eps[0] ^ gf.mul(ctx, a, e_inv[0]), eps[1] ^ gf.mul(ctx, a, e_inv[1]))
                if r[1] == 0:
                    candidates.append(r[0])
                eps = ext.mul(eps, w)
    for r in candidates:
        if _eval_poly(ctx, [b, a, 0, 1], r) == 0:
            return r
    raise NotFoundError(f"x^3 + {a}x + {b} has no root in GF(2^{ctx.n})")


def _primitive_cube_root_of_unity(ext: QuadExt):
    g = _ext_non_cube(ext)
    # g^(order/3) has order exactly 3
    return ext.pow(g, ext.order // 3)


def special_cubic_roots(ctx: FieldCtx, t: int) -> tuple[int, int, int]:
    """The three roots of z^3 + (1+t) z + t + t^2 over GF(q^2), k odd, t in GF(q) minus GF(2)."""
    if ctx.l != 2 or ctx.k % 2 == 0:
        raise PreconditionError("needs l = 2 and k odd")
    if t in (0, 1) or not gf.in_subfield(ctx, t):
        raise PreconditionError("t must lie in GF(q) but not in GF(2)")
    q = ctx.q
    # k odd => cubing permutes GF(q)
    alpha = gf.pow(ctx, 1 ^ t, pow(3, -1, q - 1))
    w, w2 = gf.omega_elements(ctx)
    a2 = gf.mul(ctx, alpha, alpha)
    roots = (alpha ^ a2,
             gf.mul(ctx, alpha, w) ^ gf.mul(ctx, a2, w2),
             gf.mul(ctx, alpha, w2) ^ gf.mul(ctx, a2, w))
    coeffs = [t ^ gf.mul(ctx, t, t), 1 ^ t, 0, 1]
    for z in roots:
        assert _eval_poly(ctx, coeffs, z) == 0
    return roots


# ---------------------------------------------------------------------------
# quartics x^4 + a2 x^2 + a1 x + a0

def _cubic_roots_all(ctx: FieldCtx, a: int, b: int) -> list[int]:
    """All base-field roots of x^3 + a x + b (b != 0)."""
    try:
        r = cubic_root(ctx, a, b)
    except NotFoundError:
        return []
    # x^3 + a x + b = (x + r)(x^2 + r x + a + r^2)
    rest = quadratic_roots(ctx, r, a ^ gf.mul(ctx, r, r))
    return sorted({r, *rest})


def quartic_classify(ctx: FieldCtx, a2: int, a1: int, a0: int) -> tuple:
    """Factorisation pattern of x^4 + a2 x^2 + a1 x + a0 from its resolvent cubic y^3 + a2 y + a1."""
    if a0 == 0 or a1 == 0:
        raise PreconditionError("quartic_classify needs a0 * a1 != 0")
    f1 = _cubic_pattern(ctx, a2, a1)
    if f1 == (3,):
        return (1, 3)
    roots = _cubic_roots_all(ctx, a2, a1)
    a1sq = gf.mul(ctx, a1, a1)
    traces = [gf.trace_abs(ctx, gf.div(ctx, gf.mul(ctx, a0, gf.mul(ctx, r, r)), a1sq)) for r in roots]
    if f1 == (1, 2):
        assert len(roots) == 1
        return (1, 1, 2) if traces[0] == 0 else (4,)
    assert len(roots) == 3
    zeros = traces.count(0)
    if zeros == 3:
        return (1, 1, 1, 1)
    if zeros == 1:
        return (2, 2)
    raise AssertionError(f"resolvent traces {traces} fit no quartic case")


# ---------------------------------------------------------------------------
# brute-force oracle

def _eval_poly(ctx: FieldCtx, coeffs: list[int], x: int) -> int:
    """Horner evaluation; coeffs[i] is the coefficient of x^i."""
    r = 0
    for c in reversed(coeffs):
        r = gf.mul(ctx, r, x) ^ c
    return r


def _divide_linear(ctx: FieldCtx, coeffs: list[int], r: int) -> list[int]:
    """Quotient of a monic polynomial with root r by (x + r)."""
    d = len(coeffs) - 1
    out = [0] * d
    acc = 0
    for i in range(d, 0, -1):
        acc = gf.mul(ctx, acc, r) ^ coeffs[i]
        out[i - 1] = acc
    return out


def _has_quadratic_factor(ctx: FieldCtx, coeffs: list[int]) -> bool:
    # monic quartic, root-free: scan monic quadratics x^2 + u x + v
    for u in range(ctx.size):
        for v in range(1, ctx.size):
            rem = list(coeffs)
            for i in range(4, 1, -1):
                c = rem[i]
                if c:
                    rem[i] = 0
                    rem[i - 1] ^= gf.mul(ctx, c, u)
                    rem[i - 2] ^= gf.mul(ctx, c, v)
            if rem[0] == 0 and rem[1] == 0:
                return True
    return False


def brute_factor(ctx: FieldCtx, coeffs: list[int]) -> tuple:
    """Pattern of a monic polynomial of degree <= 4 by exhaustive root search.

    coeffs[i] is the coefficient of x^i; the last entry must be 1.
    """
    if coeffs[-1] != 1:
        raise PreconditionError("brute_factor needs a monic polynomial")
    if len(coeffs) - 1 > 4:
        raise PreconditionError("brute_factor handles degree <= 4 only")
    pattern = []
    poly = list(coeffs)
    while len(poly) > 1:
        root = next((x for x in range(ctx.size) if _eval_poly(ctx, poly, x) == 0), None)
        if root is None:
            break
        pattern.append(1)
        poly = _divide_linear(ctx, poly, root)
    d = len(poly) - 1
    if d == 4:
        pattern += [2, 2] if _has_quadratic_factor(ctx, poly) else [4]
    elif d > 0:
        pattern.append(d)
    return tuple(sorted(pattern))


# ---------------------------------------------------------------------------
# Dickson polynomials

def dickson_coefficients(r: int) -> list[int]:
    """Coefficients mod 2 of D_r(x, a) = sum_i r/(r-i) C(r-i, i) (-a)^i x^(r-2i), as a list over i."""
    if r < 1:
        raise ValueError("degree must be positive")
    return [(r * math.comb(r - i, i) // (r - i)) % 2 for i in range(r // 2 + 1)]


def dickson_eval(ctx: FieldCtx, r: int, x: int, a: int) -> int:
    out = 0
    for i, coef in enumerate(dickson_coefficients(r)):
        if coef:
            out ^= gf.mul(ctx, gf.pow(ctx, a, i), gf.pow(ctx, x, r - 2 * i))
    return out


def dickson_table(ctx: FieldCtx, r: int, a: int) -> np.ndarray:
    """D_r(x, a) for every x in the field."""
    xs = ctx.elements()
    out = np.zeros(ctx.size, dtype=np.int64)
    for i, coef in enumerate(dickson_coefficients(r)):
        if coef:
            out ^= gf.vmul(ctx, gf.pow(ctx, a, i), gf.vpow(ctx, xs, r - 2 * i))
    return out


def dickson_is_permutation(ctx: FieldCtx, r: int, check: bool = True) -> bool:
    """gcd(r, (2^n)^2 - 1) == 1; for n <= 10 cross-checked by evaluation at a few nonzero a."""
    verdict = math.gcd(r, ctx.size * ctx.size - 1) == 1
    if check and ctx.n <= 10:
        for a in sorted({1, ctx.generator, ctx.order}):
            bij = len(np.unique(dickson_table(ctx, r, a))) == ctx.size
            if bij != verdict:
                raise AssertionError(f"Dickson criterion disagrees with evaluation for r={r}, a={a}")
    return verdict
