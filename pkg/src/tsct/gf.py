"""Exact arithmetic in the field tower GF(2^f) < GF(2^(2f)).

Base-field elements are ints encoding polynomials over GF(2) in the power
basis of a fixed irreducible modulus (bit i = coefficient of X^i), so
addition is xor.  Extension elements are pairs (a, b) meaning a + b*xbar,
where xbar is a root of X^2 + X + c for a fixed c of absolute trace 1;
that trace condition makes X^2 + X + c irreducible in characteristic 2
and pins down the Frobenius: xbar^q = xbar + 1.

Moduli and generators are chosen deterministically (smallest in
coefficient-lexicographic order) so that all downstream output is
reproducible run to run.
"""

from __future__ import annotations

from functools import lru_cache

from ._nt import divisors, prime_divisors

BASE = "base"
EXT = "ext"


# ---------------------------------------------------------------------------
# polynomial arithmetic over GF(2), ints as coefficient bitmasks


def _deg(p: int) -> int:
    return p.bit_length() - 1


def _clmul(a: int, b: int) -> int:
    """Carry-less product of GF(2)[X] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _pmod(p: int, m: int) -> int:
    dm = _deg(m)
    while p.bit_length() - 1 >= dm and p:
        p ^= m << (_deg(p) - dm)
    return p


def _pmulmod(a: int, b: int, m: int) -> int:
    return _pmod(_clmul(a, b), m)


def _ppowmod(a: int, e: int, m: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = _pmulmod(r, a, m)
        a = _pmulmod(a, a, m)
        e >>= 1
    return r


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pmod(a, b)
    return a


def _is_irreducible(p: int) -> bool:
    """Rabin test for p in GF(2)[X], degree >= 1."""
    d = _deg(p)
    if d < 1 or not p & 1:  # reducible unless constant term is 1 (or p = X)
        return p == 2
    x = 2
    if _ppowmod(x, 2**d, p) != x:
        return False
    for r in prime_divisors(d):
        h = _ppowmod(x, 2 ** (d // r), p) ^ x
        if _pgcd(p, h) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(degree: int) -> int:
    """Least monic irreducible polynomial of the given degree over GF(2).

    "Least" compares coefficient vectors from the top degree down, which is
    the same as comparing the int encodings.
    """
    for p in range(1 << degree, 1 << (degree + 1)):
        if _is_irreducible(p):
            return p
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------


class FieldElement:
    """An element of the tower, at level 'base' (int) or 'ext' (pair)."""

    __slots__ = ("tower", "level", "val")

    def __init__(self, tower: FieldTower, level: str, val):
        self.tower = tower
        self.level = level
        self.val = val

    # -- helpers

    def as_ext(self) -> FieldElement:
        if self.level == EXT:
            return self
        return FieldElement(self.tower, EXT, (self.val, 0))

    def is_zero(self) -> bool:
        return self.val == 0 or self.val == (0, 0)

    def _pair(self, other) -> tuple[FieldElement, FieldElement, str]:
        if not isinstance(other, FieldElement):
            return NotImplemented  # type: ignore[return-value]
        if other.tower is not self.tower:
            raise ValueError("elements of different towers")
        if self.level == other.level:
            return self, other, self.level
        return self.as_ext(), other.as_ext(), EXT

    # -- arithmetic

    def __add__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b, level = pair
        if level == BASE:
            return FieldElement(self.tower, BASE, a.val ^ b.val)
        return FieldElement(self.tower, EXT, (a.val[0] ^ b.val[0], a.val[1] ^ b.val[1]))

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b, level = pair
        t = self.tower
        if level == BASE:
            return FieldElement(t, BASE, t.bmul(a.val, b.val))
        return FieldElement(t, EXT, t.emul(a.val, b.val))

    def inverse(self) -> FieldElement:
        t = self.tower
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if self.level == BASE:
            return FieldElement(t, BASE, t.binv(self.val))
        return FieldElement(t, EXT, t.einv(self.val))

    def __pow__(self, e: int) -> FieldElement:
        t = self.tower
        if e < 0:
            return self.inverse() ** (-e)
        if self.level == BASE:
            return FieldElement(t, BASE, t.bpow(self.val, e))
        return FieldElement(t, EXT, t.epow(self.val, e))

    def order(self) -> int:
        return self.tower.element_order(self)

    # -- structure

    def frobenius(self) -> FieldElement:
        """x -> x^q; the identity on the base field."""
        if self.level == BASE:
            return self
        a, b = self.val
        return FieldElement(self.tower, EXT, (a ^ b, b))

    def norm(self) -> FieldElement:
        """Norm to the base field: x * x^q (base elements: x^2)."""
        if self.level == BASE:
            return self * self
        a, b = self.val
        t = self.tower
        n = t.bmul(a, a) ^ t.bmul(a, b) ^ t.bmul(t.ext_c, t.bmul(b, b))
        return FieldElement(t, BASE, n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.tower is not self.tower:
            return False
        if self.level == other.level:
            return self.val == other.val
        return self.as_ext().val == other.as_ext().val

    def __hash__(self) -> int:
        val = self.val if self.level == EXT else (self.val, 0)
        return hash(val)

    def __repr__(self) -> str:
        if self.level == BASE:
            return f"gf({self.tower.q}:{self.val:#x})"
        return f"gf({self.tower.q}^2:{self.val[0]:#x},{self.val[1]:#x})"


class FieldTower:
    """GF(2^f) together with its quadratic extension GF(2^(2f))."""

    def __init__(self, f: int):
        if f < 1:
            raise ValueError("f must be >= 1")
        self.f = f
        self.q = 1 << f
        q = self.q
        self.base_modulus = smallest_irreducible(f)

        # dense base-field tables; q <= 2^16 keeps these small
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                m = _pmulmod(a, b, self.base_modulus)
                mul[a][b] = m
                mul[b][a] = m
        self._mul = mul
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self.bpow(a, q - 2)
        self._inv = inv

        # trace to GF(2); c of trace 1 makes X^2 + X + c irreducible
        def trace(a: int) -> int:
            t, x = 0, a
            for _ in range(f):
                t ^= x
                x = mul[x][x]
            return t

        self.trace = trace
        self.ext_c = next(a for a in range(q) if trace(a) == 1)
        self.ext_modulus = (self.ext_c, 1, 1)  # X^2 + X + c, low to high

        self._base_gen = self._find_base_generator()
        self._dlog = {1: 0}
        x = 1
        for k in range(1, q - 1):
            x = mul[x][self._base_gen]
            self._dlog[x] = k
        self._ext_gen = self._find_ext_generator()

    # -- base field ops (ints)

    def bmul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def binv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def bpow(self, a: int, e: int) -> int:
        if e < 0:
            return self.bpow(self.binv(a), -e)
        r = 1
        while e:
            if e & 1:
                r = self._mul[r][a]
            a = self._mul[a][a]
            e >>= 1
        return r

    def dlog(self, a: int) -> int:
        """Exponent k with base_generator^k = a, for a != 0."""
        if a == 0:
            raise ZeroDivisionError("dlog of zero")
        return self._dlog[a]

    # -- extension ops (pairs), basis {1, xbar}, xbar^2 = xbar + c

    def emul(self, x, y):
        a, b = x
        s, t = y
        m = self._mul
        bt = m[b][t]
        return (m[a][s] ^ m[bt][self.ext_c], m[a][t] ^ m[b][s] ^ bt)

    def epow(self, x, e: int):
        if e < 0:
            return self.epow(self.einv(x), -e)
        r = (1, 0)
        while e:
            if e & 1:
                r = self.emul(r, x)
            x = self.emul(x, x)
            e >>= 1
        return r

    def einv(self, x):
        a, b = x
        if a == 0 and b == 0:
            raise ZeroDivisionError("inverse of zero")
        m = self._mul
        n = m[a][a] ^ m[a][b] ^ m[self.ext_c][m[b][b]]  # norm, in the base field
        ninv = self.binv(n)
        conj = (a ^ b, b)  # Frobenius image
        return (m[conj[0]][ninv], m[conj[1]][ninv])

    # -- deterministic generators

    def _order_is(self, powfn, x, n: int) -> bool:
        return all(powfn(x, n // r) not in (1, (1, 0)) for r in prime_divisors(n))

    def _find_base_generator(self) -> int:
        if self.q == 2:
            return 1
        for a in range(2, self.q):
            if self._order_is(self.bpow, a, self.q - 1):
                return a
        raise AssertionError("no generator found")

    def _find_ext_generator(self):
        n = self.q**2 - 1
        for key in range(2, self.q**2):
            x = (key & (self.q - 1), key >> self.f)
            if self._order_is(self.epow, x, n):
                return x
        raise AssertionError("no generator found")

    # -- elements

    def base(self, val: int) -> FieldElement:
        return FieldElement(self, BASE, val)

    def ext(self, a: int, b: int = 0) -> FieldElement:
        return FieldElement(self, EXT, (a, b))

    def zero(self, level: str = BASE) -> FieldElement:
        return self.base(0) if level == BASE else self.ext(0, 0)

    def one(self, level: str = BASE) -> FieldElement:
        return self.base(1) if level == BASE else self.ext(1, 0)

    @property
    def base_generator(self) -> FieldElement:
        return self.base(self._base_gen)

    @property
    def ext_generator(self) -> FieldElement:
        return self.ext(*self._ext_gen)

    def embed(self, a: FieldElement) -> FieldElement:
        return a.as_ext()

    @lru_cache(maxsize=None)
    def mu_subgroup(self, r: int) -> tuple[FieldElement, ...]:
        """The r-th roots of unity, as consecutive powers of a fixed generator.

        For r | q - 1 these are base-field elements (powers of the base
        generator); otherwise r must divide q^2 - 1 and they live in the
        extension.  The list starts with 1.
        """
        if r < 1 or (self.q**2 - 1) % r:
            raise ValueError(f"{r} does not divide q^2 - 1 = {self.q ** 2 - 1}")
        if (self.q - 1) % r == 0:
            g = self.bpow(self._base_gen, (self.q - 1) // r)
            out, x = [], 1
            for _ in range(r):
                out.append(self.base(x))
                x = self.bmul(x, g)
            return tuple(out)
        g = self.epow(self._ext_gen, (self.q**2 - 1) // r)
        out, x = [], (1, 0)
        for _ in range(r):
            out.append(self.ext(*x))
            x = self.emul(x, g)
        return tuple(out)

    def element_order(self, a: FieldElement) -> int:
        if a.is_zero():
            raise ValueError("order of zero is undefined")
        n = self.q - 1 if a.level == BASE else self.q**2 - 1
        if n == 0:
            return 1
        one = self.one(a.level)
        for d in divisors(n):
            if a**d == one:
                return d
        raise AssertionError("element order not found")
