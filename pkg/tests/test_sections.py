import random

import pytest

from higgsflow.cocycle import build_A_primitive, build_transition
from higgsflow.factorization import splitting_from_birkhoff
from higgsflow.fields import make_context
from higgsflow.sections import (SectionSpaceProblem, h0_of_twist,
                                splitting_from_cech)


def _transition(ctx, lam_int):
    return build_transition(build_A_primitive(ctx, ctx.w_from_int(lam_int)))


def test_h0_micro_cases():
    ctx = make_context(3, 1)
    m1 = _transition(ctx, -1)   # n = 1
    assert h0_of_twist(m1, 0) == 2
    assert h0_of_twist(m1, -1) == 1
    m2 = _transition(ctx, 2)    # n = 0
    assert h0_of_twist(m2, -1) == 0
    assert h0_of_twist(m2, 0) == 2


def test_bound_must_respect_minimum():
    ctx = make_context(3, 1)
    m = _transition(ctx, -1)
    with pytest.raises(ValueError):
        SectionSpaceProblem(matrix=m, twist=0, bound=2 * 3 + 1)
    # explicit valid bound works and agrees with the default
    assert h0_of_twist(m, 0, bound=2 * 3 + 2) == 2


def test_dimension_stable_in_bound():
    ctx = make_context(5, 1)
    m = _transition(ctx, 7)
    base = h0_of_twist(m, 0)
    for extra in (2, 4, 8):
        assert h0_of_twist(m, 0, bound=2 * 5 + 4 + extra) == base


def test_profile_formula_micro_cases():
    ctx = make_context(3, 1)
    st = splitting_from_cech(ctx, ctx.w_from_int(-1))
    assert st.n == 1 and st.periodic and st.method == "cech"
    st = splitting_from_cech(ctx, ctx.w_from_int(2))
    assert st.n == 0 and not st.periodic


def test_h0_growth_profile():
    # non-decreasing, and increments of exactly 2 once m >= n-1
    ctx = make_context(3, 1)
    for lam_int in (-1, 2):
        m = _transition(ctx, lam_int)
        n = splitting_from_cech(ctx, ctx.w_from_int(lam_int)).n
        values = [h0_of_twist(m, t) for t in range(-1, n + 3)]
        for a, b in zip(values, values[1:]):
            assert b >= a
        for idx, t in enumerate(range(-1, n + 2)):
            if t >= n - 1:
                assert values[idx + 1] - values[idx] == 2


def test_agreement_with_birkhoff_sampled():
    rng = random.Random(4)
    for p in (3, 5, 7):
        ctx = make_context(p, 1)
        picks = 0
        while picks < 6:
            w = ctx.w_from_int(rng.randrange(p * p))
            r = w.residue()
            if r.is_zero() or r == ctx.one:
                continue
            picks += 1
            assert splitting_from_cech(ctx, w).n == splitting_from_birkhoff(ctx, w).n


def test_quadratic_field_agreement_sampled():
    ctx = make_context(3, 2)
    rng = random.Random(12)
    picks = 0
    while picks < 5:
        digits = [rng.randrange(9) for _ in range(2)]
        w = ctx.w_from_coeffs(digits)
        r = w.residue()
        if r.is_zero() or r == ctx.one:
            continue
        picks += 1
        assert splitting_from_cech(ctx, w).n == splitting_from_birkhoff(ctx, w).n
