import random

import pytest

from higgsflow.cocycle import (binomial_over_p, build_A_closed,
                               build_A_primitive, build_transition)
from higgsflow.errors import ForbiddenResidue
from higgsflow.fields import make_context, witt_decompose
from higgsflow.polys import Poly, PoleFraction, z_minus_one_pow


def P(ctx, *ints):
    return Poly.from_ints(ctx, ints)


def test_primitive_micro_cases():
    ctx = make_context(3, 1)
    assert build_A_primitive(ctx, ctx.w_from_int(-1)).A == P(ctx, 0, 2, 0, 0, 0, 1)
    assert build_A_primitive(ctx, ctx.w_from_int(2)).A == P(ctx, 1, 2, 0, 2, 0, 1)
    with pytest.raises(ForbiddenResidue):
        build_A_primitive(ctx, ctx.w_from_int(4))  # residue 1
    with pytest.raises(ForbiddenResidue):
        build_A_primitive(ctx, ctx.w_from_int(3))  # residue 0


def test_closed_micro_cases():
    ctx = make_context(3, 1)
    two = ctx.f_from_int(2)
    assert build_A_closed(ctx, two, ctx.zero).A == P(ctx, 0, 2, 0, 0, 0, 1)
    assert build_A_closed(ctx, two, ctx.one).A == P(ctx, 1, 2, 0, 2, 0, 1)


def test_lam1_enters_only_through_last_term():
    for p in (3, 5, 7):
        ctx = make_context(p, 1)
        for a in range(2, p):
            lam0 = ctx.f_from_int(a)
            base = build_A_closed(ctx, lam0, ctx.zero).A
            for b in range(p):
                lam1 = ctx.f_from_int(b)
                diff = build_A_closed(ctx, lam0, lam1).A - base
                zp_minus_1 = Poly.monomial(ctx, p) - Poly.one(ctx)
                assert diff == zp_minus_1.scale(-lam1)


def test_closed_equals_primitive_exhaustive_prime_fields():
    for p in (3, 5, 7):
        ctx = make_context(p, 1)
        for n in range(p * p):
            w = ctx.w_from_int(n)
            r = w.residue()
            if r.is_zero() or r == ctx.one:
                continue
            prim = build_A_primitive(ctx, w)
            for conv in ("standard", "twisted"):
                wp = witt_decompose(w, conv)
                assert build_A_closed(ctx, wp.lam0, wp.lam1).A == prim.A


def test_closed_equals_primitive_quadratic_field_twisted_only():
    ctx = make_context(3, 2)
    mismatch_standard = 0
    for w in ctx.witt_elements():
        r = w.residue()
        if r.is_zero() or r == ctx.one:
            continue
        prim = build_A_primitive(ctx, w)
        tw = witt_decompose(w, "twisted")
        assert build_A_closed(ctx, tw.lam0, tw.lam1).A == prim.A
        std = witt_decompose(w, "standard")
        if build_A_closed(ctx, std.lam0, std.lam1).A != prim.A:
            mismatch_standard += 1
    # the naive convention must genuinely differ somewhere, else the flag is moot
    assert mismatch_standard > 0


def test_degree_bound_and_top_cancellation_random():
    rng = random.Random(123)
    primes = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31)
    for _ in range(200):
        p = rng.choice(primes)
        ctx = make_context(p, 1)
        while True:
            w = ctx.w_from_int(rng.randrange(p * p))
            r = w.residue()
            if not (r.is_zero() or r == ctx.one):
                break
        a = build_A_primitive(ctx, w).A
        assert a.degree <= 2 * p - 1


def test_binomial_scalar_identity():
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        for i in range(1, p):
            assert binomial_over_p(p, i) == (-1) ** (i - 1) * pow(i, p - 2, p) % p


def test_unit_is_nonzero_and_correct():
    ctx = make_context(3, 1)
    co = build_A_primitive(ctx, ctx.w_from_int(-1))
    assert co.unit == ctx.f_from_int(2)  # 1 - 2^3 = -7 = 2 mod 3
    assert not co.unit.is_zero()


def test_laurent_form_of_the_cocycle():
    # a = A/(u z^p): for the periodic micro-case, (z^5+2z)/(2z^3) = 2z^2 + z^-2
    ctx = make_context(3, 1)
    co = build_A_primitive(ctx, ctx.w_from_int(-1))
    a = co.laurent()
    assert a.val == -2
    assert a.poly == P(ctx, 1, 0, 0, 0, 2)
    assert a.coeff(2) == ctx.f_from_int(2) and a.coeff(-2) == ctx.one


def test_transition_shape_and_determinant():
    ctx = make_context(3, 1)
    co = build_A_primitive(ctx, ctx.w_from_int(-1))
    m = build_transition(co)
    assert m.entry(0, 1).is_zero()
    assert m.entry(0, 0) == PoleFraction(z_minus_one_pow(ctx, 3))
    assert m.entry(1, 1) == PoleFraction(Poly.one(ctx), 0, 3)
    det = m.entry(0, 0) * m.entry(1, 1) - m.entry(0, 1) * m.entry(1, 0)
    assert det == PoleFraction(Poly.one(ctx))
    # lower-left is a(z-1)^-p with a = (z^5+2z)/(2 z^3)
    expect = PoleFraction(P(ctx, 0, 2, 0, 0, 0, 1).scale(ctx.f_from_int(2)), 3, 3)
    assert m.entry(1, 0) == expect


def test_transition_poles_confined():
    ctx = make_context(5, 1)
    co = build_A_primitive(ctx, ctx.w_from_int(3))
    m = build_transition(co)
    for i in range(2):
        for j in range(2):
            e = m.entry(i, j)
            assert e.a >= 0 and e.b >= 0  # poles only at 0 and 1 (and infinity)
