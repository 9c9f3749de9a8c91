"""Algebraic numbers to scan, their reductions, and the built-in catalog.

A scan target is a primitive integer minimal polynomial of degree 1 or 2.
Reduction at an odd prime factors the polynomial mod p: split roots are
lifted to the integers mod p² by one Newton step, inert quadratics land in
the degree-2 Galois ring.  Degenerate reductions (prime divides leading
coefficient or discriminant, residue 0 or 1) are reported as bad-prime
data rather than failures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from math import gcd, isqrt

from .errors import (DegreeUnsupported, ForbiddenResidue, ForbiddenValue,
                     NonInvertible, NotPrime, ReducibleMinpoly)
from .fields import (ReductionContext, WittParameter, WittRingElement,
                     is_prime, make_context, witt_decompose)

BAD_DIVIDES_LEADING = "DividesLeadingCoeff"
BAD_DIVIDES_DISC = "DividesDiscriminant"
BAD_RESIDUE_ZERO = "ResidueZero"
BAD_RESIDUE_ONE = "ResidueOne"
BAD_PRIME_TOO_SMALL = "PrimeTooSmall"


@dataclass(frozen=True)
class LambdaSpec:
    """Primitive integer minimal polynomial, constant term first."""

    minpoly: tuple[int, ...]
    label: str
    root_selector: str | int = "all"

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1


@dataclass(frozen=True)
class ReductionDatum:
    """One place of the reduction at p, or a bad-prime marker."""

    p: int
    place: int
    d: int
    witt: WittParameter | None
    bad_reason: str | None = None

    @property
    def is_bad(self) -> bool:
        return self.bad_reason is not None


@dataclass(frozen=True)
class BeauvilleEntry:
    spec: LambdaSpec
    note: str
    rational: tuple[int, int] | None = None
    radical: dict | None = None


def _is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def _normalize_minpoly(coeffs: list[int]) -> tuple[int, ...]:
    if not coeffs or coeffs[-1] == 0:
        raise ReducibleMinpoly("leading coefficient must be nonzero")
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    coeffs = [c // g for c in coeffs]
    if coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    return tuple(coeffs)


def _validate_spec(coeffs: tuple[int, ...]) -> None:
    deg = len(coeffs) - 1
    if deg not in (1, 2):
        raise DegreeUnsupported(f"degree {deg} not supported; use 1 or 2")
    if deg == 2:
        c0, c1, c2 = coeffs
        disc = c1 * c1 - 4 * c0 * c2
        if _is_perfect_square(disc):
            raise ReducibleMinpoly("quadratic splits over the rationals")
    if coeffs[0] == 0:
        raise ForbiddenValue("0 is excluded: the marked points collide")
    if sum(coeffs) == 0:
        raise ForbiddenValue("1 is excluded: the marked points collide")


def parse_lambda_spec(text: str) -> LambdaSpec:
    """Parse either a rational 'a/b' (or integer) or a coefficient list."""
    raw = text.strip()
    if "," in raw:
        try:
            coeffs = [int(t.strip()) for t in raw.split(",")]
        except ValueError as exc:
            raise DegreeUnsupported(f"cannot parse coefficients {raw!r}") from exc
        if len(coeffs) > 3:
            raise DegreeUnsupported("at most three coefficients (degree 2)")
        if len(coeffs) < 2:
            raise DegreeUnsupported("need at least a degree-1 polynomial")
        mp = _normalize_minpoly(coeffs)
        _validate_spec(mp)
        # semicolons keep the label usable as a CSV cell
        label = raw.replace(" ", "").replace(",", ";")
        return LambdaSpec(minpoly=mp, label=label)
    try:
        if "/" in raw:
            a_s, b_s = raw.split("/")
            a, b = int(a_s), int(b_s)
        else:
            a, b = int(raw), 1
    except ValueError as exc:
        raise DegreeUnsupported(f"cannot parse rational {raw!r}") from exc
    if b == 0:
        raise ForbiddenValue("denominator is zero")
    if b < 0:
        a, b = -a, -b
    g = gcd(a, b)
    a, b = a // g, b // g
    mp = _normalize_minpoly([-a, b])
    _validate_spec(mp)
    label = f"{a}" if b == 1 else f"{a}/{b}"
    return LambdaSpec(minpoly=mp, label=label)


def _minpoly_eval_int(coeffs, x: int, mod: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % mod
    return acc


def _minpoly_eval_ring(coeffs, x: WittRingElement) -> WittRingElement:
    ctx = x.ctx
    acc = ctx.w_from_int(0)
    for c in reversed(coeffs):
        acc = acc * x + ctx.w_from_int(c)
    return acc


def _datum_for_residue_fault(p: int, place: int, d: int, residue_is_zero: bool) -> ReductionDatum:
    reason = BAD_RESIDUE_ZERO if residue_is_zero else BAD_RESIDUE_ONE
    return ReductionDatum(p=p, place=place, d=d, witt=None, bad_reason=reason)


def _lift_prime_root(spec: LambdaSpec, p: int, root: int, place: int,
                     convention: str) -> ReductionDatum:
    c = spec.minpoly
    p2 = p * p
    fp = 0
    for k in range(1, len(c)):
        fp = (fp + k * c[k] * pow(root, k - 1, p2)) % p
    lam = (root - _minpoly_eval_int(c, root, p2) * pow(fp, p - 2, p)) % p2
    r = lam % p
    if r == 0:
        return _datum_for_residue_fault(p, place, 1, True)
    if r == 1:
        return _datum_for_residue_fault(p, place, 1, False)
    ctx = make_context(p, 1)
    w = ctx.w_from_int(lam)
    assert _minpoly_eval_ring(c, w).is_zero(), "Hensel lift failed"
    return ReductionDatum(p=p, place=place, d=1,
                          witt=witt_decompose(w, convention))


def _inert_roots(spec: LambdaSpec, ctx: ReductionContext):
    c0, c1, c2 = spec.minpoly
    disc = ctx.f_from_int(c1 * c1 - 4 * c0 * c2)
    theta_vec = ctx.f_sqrt(disc.vec)
    assert theta_vec is not None, "discriminant must be a square in F_{p^2}"
    theta = type(disc)(ctx, theta_vec)
    half = (ctx.f_from_int(2) * ctx.f_from_int(c2)).inverse()
    minus_c1 = ctx.f_from_int(-c1)
    roots = [(minus_c1 + theta) * half, (minus_c1 - theta) * half]
    roots.sort(key=lambda r: r.index())
    return roots


def reduce_at_prime(spec: LambdaSpec, p: int, convention: str = "standard",
                    both_embeddings: bool = False) -> list[ReductionDatum]:
    """All reduction data of the scan target at one prime.

    Split primes contribute one datum per root (each root is its own
    place); inert primes contribute the canonical embedding, or both when
    both_embeddings is set.  Degenerate reductions come back as bad-prime
    markers, never as exceptions.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p < 3:
        return [ReductionDatum(p=p, place=0, d=1, witt=None,
                               bad_reason=BAD_PRIME_TOO_SMALL)]
    c = spec.minpoly
    if c[-1] % p == 0:
        return [ReductionDatum(p=p, place=0, d=1, witt=None,
                               bad_reason=BAD_DIVIDES_LEADING)]
    if spec.degree == 1:
        root = (-c[0]) * pow(c[1], p - 2, p) % p
        return [_lift_prime_root(spec, p, root, 0, convention)]

    c0, c1, c2 = c
    disc = c1 * c1 - 4 * c0 * c2
    if disc % p == 0:
        return [ReductionDatum(p=p, place=0, d=1, witt=None,
                               bad_reason=BAD_DIVIDES_DISC)]
    if pow(disc % p, (p - 1) // 2, p) == 1:
        ctx = make_context(p, 1)
        s = ctx.f_sqrt(disc % p)
        inv = pow(2 * c2 % p, p - 2, p)
        roots = sorted(((-c1 + s) * inv % p, (-c1 - s) * inv % p))
        out = [_lift_prime_root(spec, p, r, i, convention)
               for i, r in enumerate(roots)]
        assert len({r for r in roots}) == 2, "split roots must be distinct"
        return out

    ctx = make_context(p, 2)
    roots = _inert_roots(spec, ctx)
    chosen = roots if both_embeddings else roots[:1]
    out = []
    for place, r in enumerate(chosen):
        if r.is_zero():
            out.append(_datum_for_residue_fault(p, place, 2, True))
            continue
        if r == ctx.one:
            out.append(_datum_for_residue_fault(p, place, 2, False))
            continue
        x = r.lift()
        fpx = ctx.w_from_int(2 * c2) * x + ctx.w_from_int(c1)
        lam = x - _minpoly_eval_ring(c, x) * fpx.inverse()
        assert _minpoly_eval_ring(c, lam).is_zero(), "ring Hensel lift failed"
        out.append(ReductionDatum(p=p, place=place, d=2,
                                  witt=witt_decompose(lam, convention)))
    return out


def w2_orbit(lam: WittRingElement) -> list[WittRingElement]:
    """The six-fold Moebius orbit of the lifted parameter, deduplicated.

    {lam, 1-lam, 1/lam, 1/(1-lam), (lam-1)/lam, lam/(lam-1)}; once the
    residue avoids {0, 1} every member is invertible where needed, so the
    NonInvertible guard is purely defensive.
    """
    ctx = lam.ctx
    r = lam.residue()
    if r.is_zero() or r == ctx.one:
        raise ForbiddenResidue("orbit defined only away from residues {0, 1}")
    one = ctx.w_from_int(1)
    try:
        one_minus = one - lam
        members = [lam, one_minus, lam.inverse(), one_minus.inverse(),
                   (lam - one) * lam.inverse(), lam * (lam - one).inverse()]
    except ZeroDivisionError as exc:
        raise NonInvertible(str(exc)) from exc
    seen, out = set(), []
    for m in members:
        if m.vec not in seen:
            seen.add(m.vec)
            out.append(m)
    return out


_catalog_cache: list[BeauvilleEntry] | None = None


def beauville_catalog() -> list[BeauvilleEntry]:
    """The 17 catalog numbers, loaded from the versioned data file."""
    global _catalog_cache
    if _catalog_cache is None:
        raw = json.loads(resources.files("higgsflow")
                         .joinpath("data/beauville.json").read_text("utf-8"))
        entries = []
        for e in raw["entries"]:
            mp = _normalize_minpoly(list(e["minpoly"]))
            _validate_spec(mp)
            entries.append(BeauvilleEntry(
                spec=LambdaSpec(minpoly=mp, label=e["label"]),
                note=e["note"],
                rational=tuple(e["rational"]) if "rational" in e else None,
                radical=e.get("radical")))
        if len(entries) != 17:
            raise AssertionError("catalog must hold exactly 17 entries")
        _catalog_cache = entries
    return list(_catalog_cache)
