"""Transition data for the Frobenius-twisted gluing of the rank-2 bundle.

The lifted parameter determines a 1-cocycle on the two-chart cover of the
projective line minus the four marked points.  Its numerator A is computed
two independent ways: from the characteristic-p² primitive (expand, check
divisibility by p, divide), and from the expanded closed form.  A is kept
unnormalised (the displayed numerator itself); the scalar unit
u = 1 - lam0^p is carried separately, since rescaling A touches no rank,
null space, or splitting integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import ForbiddenResidue, InternalDivisibilityFailure
from .fields import (FieldElement, ReductionContext, WittParameter,
                     WittRingElement, frobenius_w2, witt_compose, witt_decompose)
from .polys import LaurentPoly, Poly, PoleFraction, z_minus_one_pow


def binomial_over_p(p: int, i: int) -> int:
    """The integer C(p, i)/p reduced mod p, for 1 <= i <= p-1."""
    if not 1 <= i <= p - 1:
        raise ValueError("binomial scalar defined for 1 <= i <= p-1")
    return (comb(p, i) // p) % p


@dataclass(frozen=True)
class CocyclePolynomial:
    """The cocycle numerator A (degree <= 2p-1) and its scalar unit."""

    ctx: ReductionContext
    witt: WittParameter
    A: Poly
    unit: FieldElement

    def laurent(self) -> LaurentPoly:
        """The cocycle a = A / (u z^p) as a Laurent element."""
        return LaurentPoly(self.A.scale(self.unit.inverse()), -self.ctx.p)


@dataclass(frozen=True)
class TransitionMatrix:
    """2x2 gluing matrix [[(z-1)^p, 0], [a (z-1)^-p, (z-1)^-p]].

    Lower triangular with reciprocal diagonal, so det = 1; checked exactly
    at construction.  All poles sit inside {0, 1, infinity}.
    """

    cocycle: CocyclePolynomial
    entries: tuple

    def entry(self, i: int, j: int) -> PoleFraction:
        return self.entries[i][j]


def _check_lam0(lam0: FieldElement) -> None:
    if lam0.is_zero() or lam0 == lam0.ctx.one:
        raise ForbiddenResidue("lam0 must avoid {0, 1}")


def build_A_primitive(ctx: ReductionContext, lam: WittRingElement) -> CocyclePolynomial:
    """A from the characteristic-p² bracket.

    Expands (z^p - F(lam))(z-1)^p - (z-lam)^p(z^p - 1) exactly over the
    Witt ring, verifies every coefficient is divisible by p, and divides.
    The z^(2p) terms cancel, leaving degree <= 2p-1.
    """
    p, p2 = ctx.p, ctx.p2
    lam0 = lam.residue()
    _check_lam0(lam0)
    flam = frobenius_w2(lam)

    binom = [comb(p, k) % p2 for k in range(p + 1)]
    neg_lam = ctx.wneg(lam.vec)

    # (z-1)^p and (z-lam)^p coefficient vectors, index k = coefficient of z^k
    zm1 = [ctx.w_from_int(binom[k] * (-1) ** (p - k)).vec for k in range(p + 1)]
    zml = [ctx.w_from_int(0).vec] * (p + 1)
    pw = ctx.w_from_int(1).vec
    for k in range(p, -1, -1):
        # coefficient of z^k in (z - lam)^p is C(p,k) * (-lam)^(p-k)
        zml[k] = ctx.wmul(ctx.w_from_int(binom[k]).vec, pw)
        pw = ctx.wmul(pw, neg_lam)

    n = [ctx.w_from_int(0).vec] * (2 * p + 1)
    # (z^p - F(lam)) * (z-1)^p
    for k in range(p + 1):
        n[k + p] = ctx.wadd(n[k + p], zm1[k])
        n[k] = ctx.wsub(n[k], ctx.wmul(flam.vec, zm1[k]))
    # minus (z - lam)^p * (z^p - 1)
    for k in range(p + 1):
        n[k + p] = ctx.wsub(n[k + p], zml[k])
        n[k] = ctx.wadd(n[k], zml[k])

    coeffs = []
    for k, v in enumerate(n):
        try:
            coeffs.append(ctx.w_divexact_p(v))
        except ValueError:
            raise InternalDivisibilityFailure(
                f"numerator coefficient of z^{k} not divisible by p") from None
    a_poly = Poly(ctx, coeffs)
    if a_poly.degree > 2 * p - 1:
        raise InternalDivisibilityFailure("z^(2p) term failed to cancel")

    unit = ctx.one - lam0 ** p
    witt = witt_decompose(lam, "twisted")
    return CocyclePolynomial(ctx=ctx, witt=witt, A=a_poly, unit=unit)


def build_A_closed(ctx: ReductionContext, lam0: FieldElement,
                   lam1: FieldElement) -> CocyclePolynomial:
    """A from the expanded closed form.

    A = sum_i (-1)^i (C(p,i)/p) (1 - lam0^i) z^(2p-i)
      + sum_i (-1)^i (C(p,i)/p) (lam0^i - lam0^p) z^(p-i)
      - lam1 (z^p - 1),   i running over 1..p-1.
    """
    _check_lam0(lam0)
    p = ctx.p
    coeffs = [ctx.zero.vec] * (2 * p)
    pw = [ctx.one]
    for _ in range(p):
        pw.append(pw[-1] * lam0)
    for i in range(1, p):
        ci = ctx.f_from_int(binomial_over_p(p, i) * (-1) ** i)
        coeffs[2 * p - i] = (ci * (ctx.one - pw[i])).vec
        coeffs[p - i] = (ci * (pw[i] - pw[p])).vec
    coeffs[p] = ctx.fsub(coeffs[p], lam1.vec)
    coeffs[0] = ctx.fadd(coeffs[0], lam1.vec)
    a_poly = Poly(ctx, coeffs)
    unit = ctx.one - pw[p]
    witt = WittParameter(witt=witt_compose(lam0, lam1, "twisted"),
                         lam0=lam0, lam1=lam1, convention="twisted")
    return CocyclePolynomial(ctx=ctx, witt=witt, A=a_poly, unit=unit)


def build_transition(cocycle: CocyclePolynomial) -> TransitionMatrix:
    """The gluing matrix for the inverse-Cartier bundle.

    The unit determinant is checked as an exact rational-function identity,
    which subsumes evaluation at sample points.
    """
    ctx = cocycle.ctx
    p = ctx.p
    top = PoleFraction(z_minus_one_pow(ctx, p))
    zero = PoleFraction.zero(ctx)
    lower_left = PoleFraction(cocycle.A.scale(cocycle.unit.inverse()), p, p)
    lower_right = PoleFraction(Poly.one(ctx), 0, p)
    det = top * lower_right - zero * lower_left
    if det != PoleFraction(Poly.one(ctx)):
        raise InternalDivisibilityFailure("transition determinant is not 1")
    return TransitionMatrix(cocycle=cocycle,
                            entries=((top, zero), (lower_left, lower_right)))
