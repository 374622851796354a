"""Exact arithmetic in cyclotomic fields Q(zeta_m), plus reduction mod ell.

A value is sum_e c_e * zeta_m^e with rational c_e.  The canonical form
keeps, for every prime power p^a || m, only exponents whose p-adic
coordinate has top digit < p - 1, eliminating via

    1 + zeta_p + ... + zeta_p^(p-1) = 0.

Shifting an exponent by multiples of m/p changes only its p-coordinate, so
one pass over the primes canonicalises.  The surviving monomials are the
tensor product of the power bases of the Q(zeta_{p^a}), which is a Z-basis
of the ring of integers; representations are therefore unique, equality is
structural, and integrality is visible on the coefficients.  Conductors are
kept minimal: when every canonical exponent is divisible by a prime p | m
the value lives in Q(zeta_{m/p}) and is rewritten there.

ResidueField implements the ell-modular reduction: a finite field
F_{ell^d} with a distinguished root of unity w of order m', receiving
zeta_m for every conductor m whose ell'-part divides m' (ell-power roots
of unity reduce to 1, rational coefficients reduce via inverting their
denominators mod ell).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import mpmath

from ._nt import (
    factor_prime_power_minus_one,
    factorint,
    multiplicative_order,
    p_part,
    p_prime_part,
    prime_divisors,
    smallest_primitive_root,
    valuation,
)
from .errors import NotIntegralError

_ZERO = Fraction(0)

# Coefficients are stored as plain ints whenever they are integral and as
# Fractions otherwise; Python hashes and compares numeric types uniformly,
# so mixed dicts still give structural equality of canonical forms.


@lru_cache(maxsize=None)
def _basis_info(m: int) -> tuple[frozenset[int], tuple[int, ...]]:
    """(allowed exponent set of the canonical basis, prime divisors of m)."""
    allowed = set(range(m))
    for p, a in factorint(m):
        pa = p**a
        top = pa // p
        allowed = {e for e in allowed if (e % pa) // top != p - 1}
    return frozenset(allowed), tuple(prime_divisors(m))


def _eliminate(m: int, coeffs: dict) -> None:
    """Rewrite onto the tensor power basis, in place, exponents already mod m."""
    for p, a in factorint(m):
        pa = p**a
        top = pa // p
        shift = m // p
        work = [e for e in coeffs if (e % pa) // top == p - 1]
        for e in work:
            c = coeffs.pop(e)
            if not c:
                continue
            for j in range(1, p):
                e2 = (e - j * shift) % m
                c2 = coeffs.get(e2, _ZERO) - c
                if c2:
                    coeffs[e2] = c2
                else:
                    coeffs.pop(e2, None)


def _canonical(m: int, coeffs: dict) -> tuple[int, dict]:
    folded: dict = {}
    for e, c in coeffs.items():
        if c:
            k = e % m
            v = folded.get(k)
            folded[k] = c if v is None else v + c
    coeffs = {}
    for e, c in folded.items():
        if c:
            coeffs[e] = c.numerator if c.denominator == 1 else c
    if not coeffs:
        return 1, coeffs
    if m == 1:
        return 1, coeffs

    # fast accept: support already on the basis and no conductor descent
    allowed, primes = _basis_info(m)
    if all(e in allowed for e in coeffs):
        for p in primes:
            if all(e % p == 0 for e in coeffs):
                break
        else:
            return m, coeffs

    # Alternate basis elimination with conductor descent.  On a canonical
    # form, the value lies in Q(zeta_{m/p}) exactly when every exponent is
    # divisible by p; dividing the exponents can leave the new form off the
    # basis again, so re-eliminate after each descent.
    while True:
        _eliminate(m, coeffs)
        if m == 1 or not coeffs:
            break
        for p in prime_divisors(m):
            if all(e % p == 0 for e in coeffs):
                m //= p
                coeffs = {e // p: c for e, c in coeffs.items()}
                break
        else:
            break
    if not coeffs:
        return 1, coeffs
    return m, {e: c.numerator if c.denominator == 1 else c for e, c in coeffs.items()}


class Cyclotomic:
    """An element of Q(zeta_m) in canonical form; immutable value semantics."""

    __slots__ = ("m", "coeffs", "_hash")

    def __init__(self, m: int, coeffs: dict[int, Fraction], *, _canonicalise=True):
        if _canonicalise:
            m, coeffs = _canonical(m, coeffs)
        self.m = m
        self.coeffs = coeffs
        self._hash = None

    # -- constructors

    @staticmethod
    def zero() -> Cyclotomic:
        return Cyclotomic(1, {}, _canonicalise=False)

    # -- coercion

    @staticmethod
    def _coerce(x) -> Cyclotomic | None:
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, int):
            return Cyclotomic(1, {0: x} if x else {}, _canonicalise=False)
        if isinstance(x, Fraction):
            if not x:
                return Cyclotomic(1, {}, _canonicalise=False)
            c = x.numerator if x.denominator == 1 else x
            return Cyclotomic(1, {0: c}, _canonicalise=False)
        return None

    # -- ring operations

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.m == o.m:
            # support stays inside the union of two canonical supports, so
            # only full cancellation can force re-normalisation
            coeffs = dict(self.coeffs)
            cancelled = False
            for e, c in o.coeffs.items():
                v = coeffs.get(e)
                if v is None:
                    coeffs[e] = c
                elif (v := v + c):
                    coeffs[e] = v
                else:
                    del coeffs[e]
                    cancelled = True
            if not cancelled:
                return Cyclotomic(self.m, coeffs, _canonicalise=False)
            return Cyclotomic(self.m, coeffs)
        if o.m == 1:  # rational shift touches only the always-allowed exponent 0
            if not o.coeffs:
                return self
            coeffs = dict(self.coeffs)
            v = coeffs.get(0, 0) + o.coeffs[0]
            if v:
                coeffs[0] = v
            else:
                coeffs.pop(0, None)
            if coeffs:
                return Cyclotomic(self.m, coeffs, _canonicalise=False)
            return Cyclotomic(1, {}, _canonicalise=False)
        if self.m == 1:
            return o + self
        m = lcm(self.m, o.m)
        s1, s2 = m // self.m, m // o.m
        coeffs = {e * s1: c for e, c in self.coeffs.items()}
        for e, c in o.coeffs.items():
            k = e * s2
            coeffs[k] = coeffs.get(k, _ZERO) + c
        return Cyclotomic(m, coeffs)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, {e: -c for e, c in self.coeffs.items()}, _canonicalise=False)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.m == 1:  # scalar: canonical form is preserved
            if not o.coeffs:
                return Cyclotomic.zero()
            c0 = o.coeffs[0]
            return Cyclotomic(self.m, {e: c * c0 for e, c in self.coeffs.items()}, _canonicalise=False)
        if self.m == 1:
            return o * self
        m = lcm(self.m, o.m)
        s1, s2 = m // self.m, m // o.m
        coeffs: dict = {}
        for e1, c1 in self.coeffs.items():
            k1 = e1 * s1
            for e2, c2 in o.coeffs.items():
                k = (k1 + e2 * s2) % m
                v = coeffs.get(k)
                c = c1 * c2
                coeffs[k] = c if v is None else v + c
        return Cyclotomic(m, coeffs)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r = rat(1)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def galois(self, k: int) -> Cyclotomic:
        """Apply zeta_m -> zeta_m^k, for k coprime to the conductor."""
        if gcd(k, self.m) != 1:
            raise ValueError(f"{k} is not coprime to the conductor {self.m}")
        return Cyclotomic(self.m, {(e * k) % self.m: c for e, c in self.coeffs.items()})

    def conjugate(self) -> Cyclotomic:
        return self.galois(self.m - 1 if self.m > 1 else 1)

    def inverse(self) -> Cyclotomic:
        """Inverse via the product of the nontrivial Galois conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return rat(1 / self.coeffs[0])
        prod = rat(1)
        for k in range(2, self.m):
            if gcd(k, self.m) == 1:
                prod = prod * self.galois(k)
        norm = (self * prod).rational()
        return prod * rat(1 / norm)

    # -- predicates and extraction

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return self.m == 1

    def rational(self) -> Fraction:
        if self.m != 1:
            raise NotIntegralError(f"value is not rational: {self!r}")
        return self.coeffs.get(0, _ZERO)

    def is_integral(self) -> bool:
        """True when the value lies in Z[zeta_m] (all coefficients integral)."""
        return all(c.denominator == 1 for c in self.coeffs.values())

    def is_real(self) -> bool:
        return self == self.conjugate()

    def real_sign(self) -> int:
        """Sign of a real value under zeta_m -> exp(2*pi*i/m).

        Exact zero is decided on the canonical form; otherwise certified
        interval arithmetic is refined until the enclosure excludes zero.
        """
        if not self.is_real():
            raise ValueError("real_sign of a non-real value")
        if self.is_zero():
            return 0
        prec = 64
        while prec <= 1 << 16:
            saved = mpmath.iv.prec
            try:
                mpmath.iv.prec = prec
                total = mpmath.iv.mpf(0)
                two_pi = 2 * mpmath.iv.pi
                for e, c in sorted(self.coeffs.items()):
                    term = mpmath.iv.cos(two_pi * e / self.m)
                    total += term * mpmath.iv.mpf(c.numerator) / c.denominator
            finally:
                mpmath.iv.prec = saved
            if total.a > 0:
                return 1
            if total.b < 0:
                return -1
            prec *= 2
        raise AssertionError(f"sign of nonzero value did not separate: {self!r}")

    def approx(self) -> complex:
        """Floating approximation under the standard embedding (a hint only)."""
        with mpmath.workprec(64):
            z = mpmath.mpc(0)
            for e, c in sorted(self.coeffs.items()):
                z += mpmath.expjpi(mpmath.mpf(2 * e) / self.m) * mpmath.mpf(c.numerator) / c.denominator
            return complex(z)

    # -- equality, hashing, display

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.m == o.m and self.coeffs == o.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.m, tuple(sorted(self.coeffs.items()))))
        return self._hash

    def terms(self) -> list[tuple[int, int, int]]:
        """Sorted (exponent, numerator, denominator) triples."""
        return [(e, c.numerator, c.denominator) for e, c in sorted(self.coeffs.items())]

    def __repr__(self) -> str:
        return f"Cyclotomic({self.as_string()!r})"

    def as_string(self) -> str:
        """Canonical term string, e.g. ``1 + -2*z(5)^2``."""
        if self.is_zero():
            return "0"
        parts = []
        for e, num, den in self.terms():
            c = str(num) if den == 1 else f"{num}/{den}"
            parts.append(c if e == 0 else f"{c}*z({self.m})^{e}")
        return " + ".join(parts)

    # -- serialization

    def to_json(self, with_approx: bool = False) -> dict:
        doc: dict = {"m": self.m, "terms": [list(t) for t in self.terms()]}
        if with_approx and not self.is_rational():
            z = self.approx()
            doc["approx"] = f"{z.real:.12g}" if abs(z.imag) < 1e-9 else f"{z.real:.12g}{z.imag:+.12g}j"
        return doc

    @staticmethod
    def from_json(doc: dict) -> Cyclotomic:
        coeffs = {int(e): Fraction(int(num), int(den)) for e, num, den in doc["terms"]}
        return Cyclotomic(int(doc["m"]), coeffs)


def zeta(m: int, e: int = 1) -> Cyclotomic:
    return Cyclotomic(m, {e % m: Fraction(1)})


def rat(x) -> Cyclotomic:
    c = Fraction(x)
    return Cyclotomic(1, {0: c} if c else {}, _canonicalise=False)


def zsum(m: int, e: int) -> Cyclotomic:
    """zeta_m^e + zeta_m^(-e), the recurring torus-pair value."""
    return zeta(m, e) + zeta(m, -e)


# ---------------------------------------------------------------------------
# reduction modulo ell


def _poly_trim(v: list[int]) -> tuple[int, ...]:
    while v and v[-1] == 0:
        v.pop()
    return tuple(v)


class _Fq:
    """F_{ell^d} as F_ell[X] mod a fixed irreducible polynomial."""

    def __init__(self, ell: int, d: int, modulus: tuple[int, ...]):
        self.ell = ell
        self.d = d
        self.modulus = modulus  # monic, low-to-high, length d + 1
        self.zero = ()
        self.one = (1,)

    def scalar(self, c: int) -> tuple[int, ...]:
        c %= self.ell
        return (c,) if c else ()

    def add(self, a, b):
        n = max(len(a), len(b))
        out = [0] * n
        for i, c in enumerate(a):
            out[i] = c
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.ell
        return _poly_trim(out)

    def smul(self, c: int, a):
        c %= self.ell
        if c == 0:
            return ()
        return _poly_trim([(c * x) % self.ell for x in a])

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % self.ell
        return self._mod(out)

    def _mod(self, v: list[int]):
        m = self.modulus
        dm = len(m) - 1
        inv_lead = pow(m[-1], -1, self.ell)
        while len(v) > dm:
            c = (v[-1] * inv_lead) % self.ell
            if c:
                off = len(v) - 1 - dm
                for i, mc in enumerate(m):
                    v[off + i] = (v[off + i] - c * mc) % self.ell
            v.pop()
        return _poly_trim(v)

    def pow(self, a, e: int):
        r = self.one
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def order(self, a) -> int:
        if not a:
            raise ZeroDivisionError("order of zero")
        n = self.ell**self.d - 1
        order = n
        for p in factor_prime_power_minus_one(self.ell, self.d):
            while order % p == 0 and self.pow(a, order // p) == self.one:
                order //= p
        return order


def _find_irreducible(ell: int, d: int) -> tuple[int, ...]:
    """Least monic irreducible of degree d over F_ell (coefficient-lex)."""
    if d == 1:
        return (0, 1)  # X
    for code in range(ell**d):
        coeffs = []
        c = code
        for _ in range(d):
            coeffs.append(c % ell)
            c //= ell
        cand = tuple(coeffs) + (1,)
        if _poly_is_irreducible(ell, d, cand):
            return cand
    raise AssertionError("unreachable")


def _poly_is_irreducible(ell: int, d: int, cand: tuple[int, ...]) -> bool:
    """Rabin test: X^(ell^d) = X mod cand and no coincidence at proper d/r."""
    if cand[0] == 0:
        return d == 1  # divisible by X
    field = _Fq(ell, d, cand)
    x = (0, 1)
    if field.pow(x, ell**d) != x:
        return False
    for r in prime_divisors(d):
        h = field.add(field.pow(x, ell ** (d // r)), field.smul(ell - 1, x))
        if not h:  # cand divides X^(ell^(d/r)) - X, so it has small factors
            return False
        if _poly_gcd(ell, cand, h) != (1,):
            return False
    return True


def _poly_gcd(ell: int, a, b):
    a = _poly_trim([c % ell for c in a])
    b = _poly_trim([c % ell for c in b])
    while b:
        a, b = b, _poly_rem(ell, a, b)
    if a:
        lead_inv = pow(a[-1], -1, ell)
        a = _poly_trim([(c * lead_inv) % ell for c in a])
    return a


def _poly_rem(ell: int, a, b):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, ell)
    while a and len(a) - 1 >= db:
        c = (a[-1] * inv) % ell
        off = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[off + i] = (a[off + i] - c * bc) % ell
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return tuple(a)


class ResidueField:
    """F_{ell^d} with a fixed image w of zeta_{m'}, receiving reductions.

    d is the multiplicative order of ell mod m'.  The image of zeta_{m'} is
    g^(k * (ell^d - 1)/m') where g is the deterministically chosen smallest
    generator of the multiplicative group and k (coprime to m', default 1)
    selects among the primitive choices.
    """

    def __init__(self, ell: int, m_prime: int, image_unit: int = 1):
        if ell < 2 or not _is_prime_int(ell):
            raise ValueError(f"ell = {ell} is not prime")
        if m_prime % ell == 0:
            raise ValueError("m' must be coprime to ell")
        if gcd(image_unit, m_prime) != 1:
            raise ValueError("image unit must be coprime to m'")
        self.ell = ell
        self.m_prime = m_prime
        self.image_unit = image_unit % m_prime if m_prime > 1 else 1
        self.d = multiplicative_order(ell % m_prime, m_prime) if m_prime > 1 else 1
        if self.d == 1:
            self._field = _Fq(ell, 1, (0, 1))
            g = (smallest_primitive_root(ell),) if ell > 2 else (1,)
        else:
            self._field = _Fq(ell, self.d, _find_irreducible(ell, self.d))
            g = self._smallest_generator()
        self.generator = g
        w = self._field.pow(g, (ell**self.d - 1) // m_prime)
        w = self._field.pow(w, self.image_unit)
        self.root_image = w
        self._wpow = [self._field.one]
        for _ in range(m_prime - 1):
            self._wpow.append(self._field.mul(self._wpow[-1], w))

    def _smallest_generator(self):
        field = self._field
        n = field.ell**field.d - 1
        primes = factor_prime_power_minus_one(field.ell, field.d)
        code = 1
        while True:
            code += 1
            coeffs = []
            c = code
            for _ in range(field.d):
                coeffs.append(c % field.ell)
                c //= field.ell
            cand = _poly_trim(coeffs)
            if all(field.pow(cand, n // p) != field.one for p in primes):
                return cand

    # -- element helpers (elements are coefficient tuples)

    @property
    def field_size(self) -> int:
        return self.ell**self.d

    def add(self, a, b):
        return self._field.add(a, b)

    def mul(self, a, b):
        return self._field.mul(a, b)

    def pow(self, a, e: int):
        return self._field.pow(a, e)

    def order(self, a) -> int:
        return self._field.order(a)

    def one(self):
        return self._field.one

    def reduce(self, value: Cyclotomic | int | Fraction):
        """Reduce an ell-integral cyclotomic value into the residue field."""
        v = Cyclotomic._coerce(value)
        if v is None:
            raise TypeError(f"cannot reduce {value!r}")
        m = v.m
        a = valuation(m, self.ell) if m % self.ell == 0 else 0
        m0 = m // self.ell**a
        if self.m_prime % m0:
            raise ValueError(f"conductor {m} does not reduce into F_{self.ell}^{self.d} with m' = {self.m_prime}")
        scale = self.m_prime // m0
        shift = pow(self.ell**a, -1, m0) if m0 > 1 else 0
        out = self._field.zero
        for e, c in v.coeffs.items():
            if c.denominator % self.ell == 0:
                raise NotIntegralError(f"denominator {c.denominator} not invertible mod {self.ell}")
            cbar = (c.numerator * pow(c.denominator, -1, self.ell)) % self.ell
            if not cbar:
                continue
            exp = ((e % m0) * shift % m0) * scale if m0 > 1 else 0
            out = self._field.add(out, self._field.smul(cbar, self._wpow[exp]))
        return out


def _is_prime_int(n: int) -> bool:
    return n >= 2 and factorint(n) == ((n, 1),)
