"""Exact arithmetic in F_{p^d} and in the characteristic-p² ring lifting it.

The length-2 Witt ring of F_{p^d} is realised as a Galois ring: integers
mod p² reduced by a fixed monic modulus whose image mod p is irreducible.
Ring operations are then ordinary polynomial arithmetic; Witt coordinates
(Teichmueller part, p-part) are recovered on demand.

Elements are stored as coefficient "vecs": a plain int when d == 1, a
tuple of ints otherwise.  The wrapper classes :class:`FieldElement` and
:class:`WittRingElement` expose operators on top of the vec layer.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterator, Literal

from .errors import DegreeOutOfRange, EvenPrime, ForbiddenResidue, NotPrime

WittConvention = Literal["standard", "twisted"]

MAX_EXTENSION_DEGREE = 4

_TEICHMULLER_ITERATION_CAP = 8


def is_prime(n: int) -> bool:
    """Trial-division primality test; ample for the supported prime range."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_convention(convention: str) -> str:
    if convention not in ("standard", "twisted"):
        raise ValueError(f"unknown Witt convention {convention!r}")
    return convention


# ---------------------------------------------------------------------------
# int-list polynomial helpers over F_p (lowest degree first), used only for
# modulus selection.


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for j, mj in enumerate(m):
            a[shift + j] = (a[shift + j] - c * mj) % p
        _ptrim(a)
    return a


def _ppowmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    acc = _pmod(list(base), m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, acc, p), m, p)
        acc = _pmod(_pmul(acc, acc, p), m, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(coeffs: list[int], p: int) -> bool:
    """Irreducibility over F_p via the distinct-degree criterion."""
    d = len(coeffs) - 1
    if d == 1:
        return True
    x = [0, 1]
    # x^(p^d) == x mod f
    t = x
    for _ in range(d):
        t = _ppowmod(t, p, coeffs, p)
    if _ptrim([(ti - xi) % p for ti, xi in
               zip(t + [0] * len(x), x + [0] * len(t))]):
        return False
    for r in {f for f in (2, 3) if d % f == 0}:
        t = x
        for _ in range(d // r):
            t = _ppowmod(t, p, coeffs, p)
        diff = _ptrim([(a - b) % p for a, b in
                       zip(t + [0] * len(x), x + [0] * len(t))])
        g = _pgcd(list(coeffs), diff, p)
        if len(g) - 1 > 0:
            return False
    return True


def _find_modulus(p: int, d: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree d over F_p.

    Candidates x^d + c_{d-1} x^{d-1} + ... + c_0 are ordered by the integer
    sum(c_i p^i), so the choice is reproducible bit for bit.
    """
    for n in range(p ** d):
        c, m = n, []
        for _ in range(d):
            c, r = divmod(c, p)
            m.append(r)
        m.append(1)
        if _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible modulus found")  # unreachable


# ---------------------------------------------------------------------------


class ReductionContext:
    """A prime p >= 3, extension degree d, and the rings they induce.

    Holds the fixed modulus (lifted to mod p²) plus specialised closures for
    vec arithmetic in F_q and in the Galois ring of characteristic p².
    """

    def __init__(self, p: int, d: int):
        if not isinstance(p, int) or not isinstance(d, int):
            raise TypeError("p and d must be integers")
        if p == 2:
            raise EvenPrime("p = 2 is not supported")
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if not 1 <= d <= MAX_EXTENSION_DEGREE:
            raise DegreeOutOfRange(f"extension degree {d} outside 1..{MAX_EXTENSION_DEGREE}")
        self.p = p
        self.d = d
        self.q = p ** d
        self.p2 = p * p
        self.modulus = _find_modulus(p, d)  # monic, length d+1, entries mod p
        self._setup_vec_ops()
        self.zero = self.f_from_int(0)
        self.one = self.f_from_int(1)
        self._extensions: dict[int, "FieldExtension"] = {}

    # -- vec arithmetic ----------------------------------------------------

    def _setup_vec_ops(self):
        p, p2, d = self.p, self.p2, self.d
        if d == 1:
            self.fadd = lambda a, b: (a + b) % p
            self.fsub = lambda a, b: (a - b) % p
            self.fneg = lambda a: (-a) % p
            self.fmul = lambda a, b: (a * b) % p
            self.wadd = lambda a, b: (a + b) % p2
            self.wsub = lambda a, b: (a - b) % p2
            self.wneg = lambda a: (-a) % p2
            self.wmul = lambda a, b: (a * b) % p2
            return

        def make_red(mod: int) -> list[tuple[int, ...]]:
            # x^k mod modulus for k = d .. 2d-2, coefficients mod `mod`
            red: list[tuple[int, ...]] = [()] * (2 * d - 1)
            cur = [(-c) % mod for c in self.modulus[:d]]  # x^d
            red[d] = tuple(cur)
            for k in range(d + 1, 2 * d - 1):
                nxt = [0] + cur[:-1]
                top = cur[-1]
                if top:
                    for j in range(d):
                        nxt[j] = (nxt[j] + top * red[d][j]) % mod
                cur = nxt
                red[k] = tuple(cur)
            return red

        def make_ops(mod: int, red: list[tuple[int, ...]]):
            def add(a, b):
                return tuple((x + y) % mod for x, y in zip(a, b))

            def sub(a, b):
                return tuple((x - y) % mod for x, y in zip(a, b))

            def neg(a):
                return tuple((-x) % mod for x in a)

            if d == 2:
                r0, r1 = red[2]  # x^2 reduced

                def mul2(a, b):
                    a0, a1 = a
                    b0, b1 = b
                    t2 = a1 * b1
                    return ((a0 * b0 + t2 * r0) % mod,
                            (a0 * b1 + a1 * b0 + t2 * r1) % mod)

                return add, sub, neg, mul2

            def mul(a, b):
                t = [0] * (2 * d - 1)
                for i, ai in enumerate(a):
                    if ai:
                        for j, bj in enumerate(b):
                            t[i + j] += ai * bj
                for k in range(2 * d - 2, d - 1, -1):
                    c = t[k] % mod
                    if c:
                        rk = red[k]
                        for j in range(d):
                            t[j] += c * rk[j]
                return tuple(x % mod for x in t[:d])

            return add, sub, neg, mul

        self._red_p = make_red(p)
        self._red_p2 = make_red(p2)
        self.fadd, self.fsub, self.fneg, self.fmul = make_ops(p, self._red_p)
        self.wadd, self.wsub, self.wneg, self.wmul = make_ops(p2, self._red_p2)

    def fpow(self, a, e: int):
        result = self.f_from_int(1).vec
        acc = a
        while e:
            if e & 1:
                result = self.fmul(result, acc)
            acc = self.fmul(acc, acc)
            e >>= 1
        return result

    def wpow(self, a, e: int):
        result = self.w_from_int(1).vec
        acc = a
        while e:
            if e & 1:
                result = self.wmul(result, acc)
            acc = self.wmul(acc, acc)
            e >>= 1
        return result

    def finv(self, a):
        if self.f_is_zero(a):
            raise ZeroDivisionError("inverse of zero field element")
        return self.fpow(a, self.q - 2)

    def winv(self, a):
        res = self.w_residue(a)
        if self.f_is_zero(res):
            raise ZeroDivisionError("element not invertible in the Witt ring")
        y = self.f_lift(self.finv(res))
        two = self.w_from_int(2).vec
        # one Newton step lifts an inverse mod p to an inverse mod p²
        return self.wmul(y, self.wsub(two, self.wmul(a, y)))

    # -- conversions ---------------------------------------------------------

    def f_is_zero(self, a) -> bool:
        return a == 0 if self.d == 1 else not any(a)

    def w_is_zero(self, a) -> bool:
        return a == 0 if self.d == 1 else not any(a)

    def f_lift(self, a):
        """Coefficientwise lift of a field vec to a Witt vec."""
        return a

    def w_residue(self, a):
        p = self.p
        return a % p if self.d == 1 else tuple(x % p for x in a)

    def w_times_p(self, a):
        p, p2 = self.p, self.p2
        return a * p % p2 if self.d == 1 else tuple(x * p % p2 for x in a)

    def w_divexact_p(self, a):
        """Divide a Witt vec by p; the result is a field vec.

        Requires every coordinate divisible by p.
        """
        p = self.p
        if self.d == 1:
            if a % p:
                raise ValueError("vec not divisible by p")
            return a // p
        if any(x % p for x in a):
            raise ValueError("vec not divisible by p")
        return tuple(x // p for x in a)

    def f_from_int(self, n: int) -> "FieldElement":
        v = n % self.p
        return FieldElement(self, v if self.d == 1 else (v,) + (0,) * (self.d - 1))

    def w_from_int(self, n: int) -> "WittRingElement":
        v = n % self.p2
        return WittRingElement(self, v if self.d == 1 else (v,) + (0,) * (self.d - 1))

    def f_from_coeffs(self, coeffs) -> "FieldElement":
        c = [x % self.p for x in coeffs]
        c += [0] * (self.d - len(c))
        return FieldElement(self, c[0] if self.d == 1 else tuple(c[: self.d]))

    def w_from_coeffs(self, coeffs) -> "WittRingElement":
        c = [x % self.p2 for x in coeffs]
        c += [0] * (self.d - len(c))
        return WittRingElement(self, c[0] if self.d == 1 else tuple(c[: self.d]))

    def f_from_index(self, n: int) -> "FieldElement":
        """n-th field element in the canonical enumeration (base-p digits)."""
        if self.d == 1:
            return FieldElement(self, n % self.p)
        digits = []
        for _ in range(self.d):
            n, r = divmod(n, self.p)
            digits.append(r)
        return FieldElement(self, tuple(digits))

    def f_index(self, a) -> int:
        if self.d == 1:
            return a
        n = 0
        for c in reversed(a):
            n = n * self.p + c
        return n

    def field_elements(self) -> Iterator["FieldElement"]:
        for n in range(self.q):
            yield self.f_from_index(n)

    def witt_elements(self) -> Iterator["WittRingElement"]:
        for n in range(self.q * self.q):
            if self.d == 1:
                yield WittRingElement(self, n % self.p2)
            else:
                digits = []
                m = n
                for _ in range(self.d):
                    m, r = divmod(m, self.p2)
                    digits.append(r)
                yield WittRingElement(self, tuple(digits))

    # -- square roots in F_q -------------------------------------------------

    def f_is_square(self, a) -> bool:
        if self.f_is_zero(a):
            return True
        one = self.one.vec
        return self.fpow(a, (self.q - 1) // 2) == one

    def f_nonsquare(self):
        for n in range(1, self.q):
            v = self.f_from_index(n).vec
            if not self.f_is_square(v):
                return v
        raise AssertionError("no non-square found")  # unreachable for q odd

    def f_sqrt(self, a):
        """Tonelli-Shanks square root in F_q; None when a is a non-square."""
        if self.f_is_zero(a):
            return a
        if not self.f_is_square(a):
            return None
        q = self.q
        s, m = q - 1, 0
        while s % 2 == 0:
            s //= 2
            m += 1
        if m == 1:
            return self.fpow(a, (q + 1) // 4)
        c = self.fpow(self.f_nonsquare(), s)
        t = self.fpow(a, s)
        r = self.fpow(a, (s + 1) // 2)
        one = self.one.vec
        while t != one:
            t2, i = t, 0
            while t2 != one:
                t2 = self.fmul(t2, t2)
                i += 1
            b = c
            for _ in range(m - i - 1):
                b = self.fmul(b, b)
            m = i
            c = self.fmul(b, b)
            t = self.fmul(t, c)
            r = self.fmul(r, b)
        return r

    # -- misc ----------------------------------------------------------------

    def extension(self, degree: int) -> "FieldExtension":
        """Cached quotient-ring extension of F_q, used for point sampling."""
        ext = self._extensions.get(degree)
        if ext is None:
            ext = FieldExtension(self, degree)
            self._extensions[degree] = ext
        return ext

    def __repr__(self):
        return f"ReductionContext(p={self.p}, d={self.d})"


@functools.lru_cache(maxsize=None)
def make_context(p: int, d: int = 1) -> ReductionContext:
    """Context for F_{p^d} with a deterministically chosen modulus."""
    return ReductionContext(p, d)


# ---------------------------------------------------------------------------


def _vec_string(coeffs: list[int], sym: str) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            head = "" if c == 1 else str(c)
            terms.append(f"{head}{sym}" if k == 1 else f"{head}{sym}^{k}")
    return "+".join(terms) if terms else "0"


class FieldElement:
    """An element of F_{p^d}, stored as a coefficient vec."""

    __slots__ = ("ctx", "vec")

    def __init__(self, ctx: ReductionContext, vec):
        self.ctx = ctx
        self.vec = vec

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.fadd(self.vec, other.vec))

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.fsub(self.vec, other.vec))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.fneg(self.vec))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.fmul(self.vec, other.vec))

    def __truediv__(self, other):
        return FieldElement(self.ctx, self.ctx.fmul(self.vec, self.ctx.finv(other.vec)))

    def __pow__(self, e: int):
        if e < 0:
            return FieldElement(self.ctx, self.ctx.fpow(self.ctx.finv(self.vec), -e))
        return FieldElement(self.ctx, self.ctx.fpow(self.vec, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.finv(self.vec))

    def is_zero(self) -> bool:
        return self.ctx.f_is_zero(self.vec)

    def frobenius(self) -> "FieldElement":
        if self.ctx.d == 1:
            return self
        return self ** self.ctx.p

    def frobenius_inverse(self) -> "FieldElement":
        if self.ctx.d == 1:
            return self
        return self ** (self.ctx.p ** (self.ctx.d - 1))

    def coeffs(self) -> list[int]:
        return [self.vec] if self.ctx.d == 1 else list(self.vec)

    def index(self) -> int:
        return self.ctx.f_index(self.vec)

    def lift(self) -> "WittRingElement":
        return WittRingElement(self.ctx, self.ctx.f_lift(self.vec))

    def to_string(self, sym: str = "u") -> str:
        return _vec_string(self.coeffs(), sym)

    def __eq__(self, other):
        return (isinstance(other, FieldElement) and self.ctx is other.ctx
                and self.vec == other.vec)

    def __hash__(self):
        return hash((id(self.ctx), self.vec))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"F({self.to_string()})"


class WittRingElement:
    """An element of the characteristic-p² Galois ring over the context."""

    __slots__ = ("ctx", "vec")

    def __init__(self, ctx: ReductionContext, vec):
        self.ctx = ctx
        self.vec = vec

    def __add__(self, other):
        return WittRingElement(self.ctx, self.ctx.wadd(self.vec, other.vec))

    def __sub__(self, other):
        return WittRingElement(self.ctx, self.ctx.wsub(self.vec, other.vec))

    def __neg__(self):
        return WittRingElement(self.ctx, self.ctx.wneg(self.vec))

    def __mul__(self, other):
        return WittRingElement(self.ctx, self.ctx.wmul(self.vec, other.vec))

    def __pow__(self, e: int):
        return WittRingElement(self.ctx, self.ctx.wpow(self.vec, e))

    def inverse(self) -> "WittRingElement":
        return WittRingElement(self.ctx, self.ctx.winv(self.vec))

    def is_zero(self) -> bool:
        return self.ctx.w_is_zero(self.vec)

    def residue(self) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.w_residue(self.vec))

    def coeffs(self) -> list[int]:
        return [self.vec] if self.ctx.d == 1 else list(self.vec)

    def to_string(self, sym: str = "u") -> str:
        return _vec_string(self.coeffs(), sym)

    def __eq__(self, other):
        return (isinstance(other, WittRingElement) and self.ctx is other.ctx
                and self.vec == other.vec)

    def __hash__(self):
        return hash((id(self.ctx), "w", self.vec))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"W({self.to_string()})"


@dataclass(frozen=True)
class WittParameter:
    """A lifted parameter with its Witt coordinates under a fixed convention."""

    witt: WittRingElement
    lam0: FieldElement
    lam1: FieldElement
    convention: str


# ---------------------------------------------------------------------------
# Witt-layer operations


def teichmuller(x0: FieldElement) -> WittRingElement:
    """Multiplicative lift of x0: the fixed point of q-th powering mod p²."""
    ctx = x0.ctx
    w = ctx.f_lift(x0.vec)
    for _ in range(_TEICHMULLER_ITERATION_CAP):
        nxt = ctx.wpow(w, ctx.q)
        if nxt == w:
            return WittRingElement(ctx, w)
        w = nxt
    raise AssertionError("Teichmueller iteration did not stabilise")


def frobenius_w2(x: WittRingElement) -> WittRingElement:
    """Ring endomorphism lifting the p-power map.

    On tau(a) + p*b it gives tau(a^p) + p*(b^p); the identity when d = 1.
    """
    ctx = x.ctx
    if ctx.d == 1:
        return x
    a = x.residue()
    t = teichmuller(a)
    b = FieldElement(ctx, ctx.w_divexact_p(ctx.wsub(x.vec, t.vec)))
    head = teichmuller(a.frobenius())
    tail = ctx.w_times_p(ctx.f_lift(b.frobenius().vec))
    return WittRingElement(ctx, ctx.wadd(head.vec, tail))


def _check_residue(lam0: FieldElement):
    if lam0.is_zero() or lam0 == lam0.ctx.one:
        raise ForbiddenResidue("reduction of the parameter lies in {0, 1}")


def witt_decompose(lam: WittRingElement, convention: WittConvention = "standard") -> WittParameter:
    """Split a lifted parameter into coordinates (lam0, lam1).

    standard: lam1 is the residue of (lam - tau(lam0)) / p.
    twisted:  additionally applies the inverse residue-field Frobenius,
              recovering the Verschiebung-normalised Witt coordinate.
    The two conventions coincide when d = 1.
    """
    check_convention(convention)
    ctx = lam.ctx
    lam0 = lam.residue()
    _check_residue(lam0)
    t = teichmuller(lam0)
    mu = FieldElement(ctx, ctx.w_divexact_p(ctx.wsub(lam.vec, t.vec)))
    lam1 = mu if convention == "standard" else mu.frobenius_inverse()
    return WittParameter(witt=lam, lam0=lam0, lam1=lam1, convention=convention)


def witt_compose(lam0: FieldElement, lam1: FieldElement,
                 convention: WittConvention = "standard") -> WittRingElement:
    """Inverse of :func:`witt_decompose`; exact round-trip both ways."""
    check_convention(convention)
    _check_residue(lam0)
    ctx = lam0.ctx
    mu = lam1 if convention == "standard" else lam1.frobenius()
    t = teichmuller(lam0)
    return WittRingElement(ctx, ctx.wadd(t.vec, ctx.w_times_p(ctx.f_lift(mu.vec))))


# ---------------------------------------------------------------------------


class FieldExtension:
    """F_{q^e} as a quotient of F_q[y], for sampling evaluation points.

    Elements are tuples of e field vecs.  Only add/sub/mul/inv/pow and
    embedding of F_q constants are provided; this is scaffolding for
    random-point identity checks, not a general tower implementation.
    """

    def __init__(self, ctx: ReductionContext, degree: int):
        if degree < 1 or degree > 3:
            raise DegreeOutOfRange("evaluation extensions support degree 1..3")
        self.ctx = ctx
        self.e = degree
        self.size = ctx.q ** degree
        if degree == 1:
            self.modulus = None
        else:
            self.modulus = self._find_modulus()
        self._setup_fast_ops()

    def _find_modulus(self):
        # monic degree-e poly over F_q without roots; enough for e <= 3
        ctx, e = self.ctx, self.e
        for n in range(ctx.q ** e):
            digits, m = [], n
            for _ in range(e):
                m, r = divmod(m, ctx.q)
                digits.append(ctx.f_from_index(r).vec)
            coeffs = digits + [ctx.one.vec]
            if not self._has_root(coeffs):
                return tuple(coeffs)
        raise AssertionError("no extension modulus found")

    def _has_root(self, coeffs) -> bool:
        ctx = self.ctx
        for x in ctx.field_elements():
            acc = ctx.zero.vec
            for c in reversed(coeffs):
                acc = ctx.fadd(ctx.fmul(acc, x.vec), c)
            if ctx.f_is_zero(acc):
                return True
        return False

    # elements: tuples of length e of field vecs
    def embed(self, vec):
        if self.e == 1:
            return (vec,)
        return (vec,) + (self.ctx.zero.vec,) * (self.e - 1)

    def zero(self):
        return self.embed(self.ctx.zero.vec)

    def one(self):
        return self.embed(self.ctx.one.vec)

    def add(self, a, b):
        f = self.ctx.fadd
        return tuple(f(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        f = self.ctx.fsub
        return tuple(f(x, y) for x, y in zip(a, b))

    def neg(self, a):
        f = self.ctx.fneg
        return tuple(f(x) for x in a)

    def _setup_fast_ops(self):
        """Bind mul and Horner evaluation, specialised by (e, base degree)."""
        ctx, e = self.ctx, self.e
        if e == 1:
            fmul, fadd = ctx.fmul, ctx.fadd

            def mul1(a, b):
                return (fmul(a[0], b[0]),)

            def eval1(vecs, point):
                acc, z = ctx.zero.vec, point[0]
                for c in reversed(vecs):
                    acc = fadd(fmul(acc, z), c)
                return (acc,)

            self.mul, self.eval_poly = mul1, eval1
            return

        if e == 2 and ctx.d == 1:
            p = ctx.p
            n0, n1 = (-self.modulus[0]) % p, (-self.modulus[1]) % p

            def mul2(a, b):
                a0, a1 = a
                b0, b1 = b
                t2 = a1 * b1
                return ((a0 * b0 + t2 * n0) % p,
                        (a0 * b1 + a1 * b0 + t2 * n1) % p)

            def eval2(vecs, point):
                z0, z1 = point
                a0 = a1 = 0
                for c in reversed(vecs):
                    t2 = a1 * z1
                    b0 = a0 * z0 + t2 * n0
                    a1 = (a0 * z1 + a1 * z0 + t2 * n1) % p
                    a0 = (b0 + c) % p
                return (a0, a1)

            self.mul, self.eval_poly = mul2, eval2
            return

        if e == 2:
            fmul, fadd, fneg = ctx.fmul, ctx.fadd, ctx.fneg
            n0, n1 = fneg(self.modulus[0]), fneg(self.modulus[1])

            def mul2v(a, b):
                a0, a1 = a
                b0, b1 = b
                t2 = fmul(a1, b1)
                return (fadd(fmul(a0, b0), fmul(t2, n0)),
                        fadd(fadd(fmul(a0, b1), fmul(a1, b0)), fmul(t2, n1)))

            def eval2v(vecs, point):
                z0, z1 = point
                a0 = a1 = ctx.zero.vec
                for c in reversed(vecs):
                    t2 = fmul(a1, z1)
                    b0 = fadd(fmul(a0, z0), fmul(t2, n0))
                    a1 = fadd(fadd(fmul(a0, z1), fmul(a1, z0)), fmul(t2, n1))
                    a0 = fadd(b0, c)
                return (a0, a1)

            self.mul, self.eval_poly = mul2v, eval2v
            return

        def mul_gen(a, b):
            t = [ctx.zero.vec] * (2 * e - 1)
            for i, ai in enumerate(a):
                if not ctx.f_is_zero(ai):
                    for j, bj in enumerate(b):
                        t[i + j] = ctx.fadd(t[i + j], ctx.fmul(ai, bj))
            for k in range(2 * e - 2, e - 1, -1):
                c = t[k]
                if ctx.f_is_zero(c):
                    continue
                # y^k = y^(k-e) * (y^e mod modulus)
                for j in range(e):
                    mj = ctx.fneg(self.modulus[j])
                    t[k - e + j] = ctx.fadd(t[k - e + j], ctx.fmul(c, mj))
            return tuple(t[:e])

        def eval_gen(vecs, point):
            acc = self.zero()
            for c in reversed(vecs):
                acc = self.add(self.mul(acc, point), self.embed(c))
            return acc

        self.mul, self.eval_poly = mul_gen, eval_gen

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result, acc = self.one(), a
        while n:
            if n & 1:
                result = self.mul(result, acc)
            acc = self.mul(acc, acc)
            n >>= 1
        return result

    def inv(self, a):
        if all(self.ctx.f_is_zero(x) for x in a):
            raise ZeroDivisionError("inverse of zero in evaluation extension")
        return self.pow(a, self.size - 2)

    def is_zero(self, a) -> bool:
        return all(self.ctx.f_is_zero(x) for x in a)

    def from_index(self, n: int):
        digits, m = [], n
        for _ in range(self.e):
            m, r = divmod(m, self.ctx.q)
            digits.append(self.ctx.f_from_index(r).vec)
        return tuple(digits)

    def random_element(self, rng):
        return self.from_index(rng.randrange(self.size))
