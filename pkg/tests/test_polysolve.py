import math

import numpy as np
import pytest

from twotoone import gf
from twotoone import polysolve as ps

SMALL = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (1, 4), (2, 2), (4, 1)]


def test_quadratic_examples():
    for k, l in [(1, 1), (2, 3), (3, 3)]:
        ctx = gf.make_field(k, l)
        assert ps.quadratic_roots(ctx, 1, 0) == [0, 1]
    c4 = gf.make_field(1, 2)
    assert ps.quadratic_roots(c4, 1, 2) == []
    ctx = gf.make_field(2, 3)
    for v in range(ctx.size):
        (r,) = ps.quadratic_roots(ctx, 0, v)
        assert gf.mul(ctx, r, r) == v


@pytest.mark.parametrize("k,l", [(1, 3), (2, 2), (1, 5), (2, 3), (4, 2)])
def test_quadratic_roots_exhaustive(k, l):
    ctx = gf.make_field(k, l)
    xs = ctx.elements()
    for u in range(1, ctx.size):
        ux = gf.vmul(ctx, u, xs)
        sq = gf.vmul(ctx, xs, xs)
        for v in range(ctx.size):
            expect = sorted(int(x) for x in xs[(sq ^ ux ^ v) == 0])
            got = ps.quadratic_roots(ctx, u, v)
            assert got == expect
            # two roots exactly when Tr(v / u^2) = 0
            assert (len(got) == 2) == (gf.trace_abs(ctx, gf.div(ctx, v, gf.mul(ctx, u, u))) == 0)


def test_brute_factor_examples():
    assert ps.brute_factor(gf.make_field(1, 1), [1, 1, 1]) == (2,)
    assert ps.brute_factor(gf.make_field(1, 2), [0, 1, 0, 1]) == (1, 1, 1)
    assert ps.brute_factor(gf.make_field(1, 1), [1, 1, 0, 0, 1]) == (4,)


def test_cubic_examples():
    assert ps.cubic_classify(gf.make_field(1, 1), 1, 1) == (3,)
    c8 = gf.make_field(3, 1)
    assert c8.modulus == 0b1011
    assert ps.cubic_classify(c8, 1, 1) == (1, 1, 1)
    c4 = gf.make_field(1, 2)
    assert ps.cubic_classify(c4, 1, 2) == ps.brute_factor(c4, [2, 1, 0, 1])
    with pytest.raises(ps.PreconditionError):
        ps.cubic_classify(c4, 1, 0)
    g3 = gf.pow(c8, 2, 3)
    r = ps.cubic_root(c8, 1, g3)
    assert gf.pow(c8, r, 3) ^ r == g3


@pytest.mark.parametrize("k,l", SMALL)
def test_classifiers_match_brute_force(k, l):
    ctx = gf.make_field(k, l)
    for a in range(1, ctx.size):
        for b in range(1, ctx.size):
            assert ps.cubic_classify(ctx, a, b) == ps.brute_factor(ctx, [b, a, 0, 1])
    for a2 in range(ctx.size):
        for a1 in range(1, ctx.size):
            for a0 in range(1, ctx.size):
                assert ps.quartic_classify(ctx, a2, a1, a0) == ps.brute_factor(ctx, [a0, a1, a2, 0, 1])


@pytest.mark.parametrize("k,l", [(1, 5), (2, 3), (3, 2), (1, 6)])
def test_cubic_classifier_larger_fields(k, l):
    ctx = gf.make_field(k, l)
    rng = np.random.default_rng(n := k * l)
    for a, b in rng.integers(1, ctx.size, size=(300, 2)):
        assert ps.cubic_classify(ctx, int(a), int(b)) == ps.brute_factor(ctx, [int(b), int(a), 0, 1]), n


@pytest.mark.parametrize("k,l", [(2, 3), (1, 7), (3, 2)])
def test_cubic_root_planted(k, l):
    ctx = gf.make_field(k, l)
    rng = np.random.default_rng(7)
    for rho, a in rng.integers(1, ctx.size, size=(200, 2)):
        rho, a = int(rho), int(a)
        b = gf.pow(ctx, rho, 3) ^ gf.mul(ctx, a, rho)
        if b == 0:
            continue
        r = ps.cubic_root(ctx, a, b)
        assert gf.pow(ctx, r, 3) ^ gf.mul(ctx, a, r) == b


def test_cubic_root_special_form():
    # z^3 + (1+t) z + t + t^2 has the root alpha + alpha^2 with alpha^3 = 1 + t
    for k in (1, 3, 5):
        ctx = gf.make_field(k, 2)
        for t in gf.subfield_elements(ctx):
            if t in (0, 1):
                continue
            roots = ps.special_cubic_roots(ctx, t)
            alpha = gf.pow(ctx, 1 ^ t, pow(3, -1, ctx.q - 1))
            assert gf.pow(ctx, alpha, 3) == 1 ^ t
            assert roots[0] == alpha ^ gf.mul(ctx, alpha, alpha)
            assert len(set(roots)) == 3
            assert sum(gf.in_subfield(ctx, z) for z in roots) == 1
            r = ps.cubic_root(ctx, 1 ^ t, t ^ gf.mul(ctx, t, t))
            assert r in roots
    with pytest.raises(ps.PreconditionError):
        ps.special_cubic_roots(gf.make_field(2, 2), 2)


def test_planted_split_quartic():
    ctx = gf.make_field(2, 2)
    rng = np.random.default_rng(3)
    found = 0
    while found < 50:
        roots = [int(r) for r in rng.choice(np.arange(1, 16), 4, replace=False)]
        poly = [1]
        for r in roots:
            poly = [(poly[i - 1] if i else 0) ^ gf.mul(ctx, r, poly[i] if i < len(poly) else 0)
                    for i in range(len(poly) + 1)]
        a0, a1, a2, a3 = poly[:4]
        if a3 or not a1 or not a0:
            continue
        assert ps.quartic_classify(ctx, a2, a1, a0) == (1, 1, 1, 1)
        found += 1


def test_dickson_examples():
    ctx = gf.make_field(2, 3)
    rng = np.random.default_rng(0)
    for x, a in rng.integers(0, ctx.size, size=(100, 2)):
        x, a = int(x), int(a)
        assert ps.dickson_eval(ctx, 1, x, a) == x
        x3, x5 = gf.pow(ctx, x, 3), gf.pow(ctx, x, 5)
        assert ps.dickson_eval(ctx, 3, x, a) == x3 ^ gf.mul(ctx, a, x)
        assert ps.dickson_eval(ctx, 5, x, a) == x5 ^ gf.mul(ctx, a, x3) ^ gf.mul(ctx, gf.mul(ctx, a, a), x)


@pytest.mark.parametrize("k,l", [(1, 3), (2, 2), (1, 5), (2, 3)])
def test_dickson_functional_equation(k, l):
    ctx = gf.make_field(k, l)
    for r in range(1, 8):
        for a in (1, 2, ctx.order):
            for y in range(1, ctx.size):
                ay = gf.div(ctx, a, y)
                x = y ^ ay
                assert ps.dickson_eval(ctx, r, x, a) == gf.pow(ctx, y, r) ^ gf.pow(ctx, ay, r)


def test_dickson_permutation_criterion():
    assert ps.dickson_is_permutation(gf.make_field(3, 1), 5)
    assert not ps.dickson_is_permutation(gf.make_field(2, 2), 5)
    for k, l in [(1, 3), (2, 2), (1, 5), (2, 3), (4, 2)]:
        ctx = gf.make_field(k, l)
        assert ps.dickson_is_permutation(ctx, 1)
        for r in range(1, 20):
            bij = all(len(np.unique(ps.dickson_table(ctx, r, a))) == ctx.size for a in range(1, ctx.size, 3))
            assert ps.dickson_is_permutation(ctx, r) == bij == (math.gcd(r, 4 ** ctx.n - 1) == 1)
