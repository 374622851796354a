"""SL2(q) for q = 2^f: canonical class representatives and torus geometry.

Group elements are 4-tuples (a, b, c, d) of base-field ints, row major.
The model carries the split torus T (diagonal), the nonsplit torus T'
(multiplication by norm-one elements of GF(q^2) in the basis {1, xbar}),
their normalisers N = <T, sigma> and N' = <T', sigma'>, the Borel subgroup
B, and for each admissible odd prime ell the chain of cyclic ell-subgroups
{1} = Q_1 < ... < Q_{n+1} inside the Sylow subgroup of T or T'.

Conjugacy classes are classified by trace: q - 1 nonzero trace values split
into (q-2)/2 split classes (trace a + a^-1) and q/2 nonsplit classes
(trace xi + xi^q); trace zero is the identity or the unipotent class.
Split/nonsplit classes are labelled by the exponent of the fixed generator
of mu_{q-1} resp. mu_{q+1}, up to inverse, represented by the smaller
exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ._nt import p_part, p_prime_part, valuation
from .errors import UsageError
from .gf import FieldElement, FieldTower

Element = tuple[int, int, int, int]


@dataclass(frozen=True, order=True)
class ClassLabel:
    """Conjugacy class tag: kind in {id, u, split, nonsplit, sigma, sigma'}."""

    kind: str
    k: int = 0

    def __str__(self) -> str:
        if self.kind == "split":
            return f"d(a[{self.k}])"
        if self.kind == "nonsplit":
            return f"d'(xi[{self.k}])"
        return {"id": "I2", "u": "u", "sigma": "sigma", "sigma'": "sigma'"}[self.kind]


IDENTITY = ClassLabel("id")
UNIPOTENT = ClassLabel("u")
SIGMA = ClassLabel("sigma")
SIGMA_PRIME = ClassLabel("sigma'")


@dataclass(frozen=True)
class SylowData:
    """The ell-local skeleton: case, n, subgroup chain and its generators."""

    ell: int
    case: str  # "q-1" or "q+1"
    n: int
    chain: tuple[tuple[Element, ...], ...]  # Q_1, ..., Q_{n+1}
    generators: tuple[Element, ...]  # generator of each Q_i (identity for Q_1)
    generator_exponents: tuple[int, ...]  # exponent in mu_{q -+ 1} of each generator
    normalizer: str  # "N" or "N'"


@dataclass(frozen=True)
class ClassInventory:
    """ell-regular class systems for G, N, N' at a fixed odd prime ell."""

    ell: int
    case: str
    g_regular: tuple[ClassLabel, ...]
    n_regular: tuple[ClassLabel, ...]
    np_regular: tuple[ClassLabel, ...]
    gamma_regular: tuple[int, ...]  # split exponents surviving (Gamma_{ell'})
    gamma_prime_regular: tuple[int, ...]


class SL2:
    def __init__(self, tower: FieldTower):
        if tower.f < 2:
            raise UsageError(f"q = {tower.q} is too small; need q = 2^f with f >= 2")
        self.tower = tower
        self.q = tower.q
        q = self.q
        self.order = q * (q * q - 1)
        self.identity: Element = (1, 0, 0, 1)
        self.u: Element = (1, 1, 0, 1)
        self.sigma: Element = (0, 1, 1, 0)

        self._mu_split = tower.mu_subgroup(q - 1)
        self._mu_nonsplit = tower.mu_subgroup(q + 1)
        # discrete logs inside each torus, keyed by raw element values
        self._split_dlog = {a.val: k for k, a in enumerate(self._mu_split)}
        self._nonsplit_dlog = {xi.val: k for k, xi in enumerate(self._mu_nonsplit)}

        self.sigma_prime = self._frobenius_matrix()

        # class representatives, in table order: I2, splits, nonsplits, u
        self.split_exponents = tuple(range(1, (q - 2) // 2 + 1))
        self.nonsplit_exponents = tuple(range(1, q // 2 + 1))
        self.classes: tuple[ClassLabel, ...] = (
            (IDENTITY,)
            + tuple(ClassLabel("split", k) for k in self.split_exponents)
            + tuple(ClassLabel("nonsplit", k) for k in self.nonsplit_exponents)
            + (UNIPOTENT,)
        )
        self._trace_table = self._build_trace_table()

        self.n_classes: tuple[ClassLabel, ...] = (
            (IDENTITY,) + tuple(ClassLabel("split", k) for k in self.split_exponents) + (SIGMA,)
        )
        self.np_classes: tuple[ClassLabel, ...] = (
            (IDENTITY,) + tuple(ClassLabel("nonsplit", k) for k in self.nonsplit_exponents) + (SIGMA_PRIME,)
        )

        self.T = tuple(self.d_exp(k) for k in range(q - 1))
        self.Tp = tuple(self.dprime_exp(k) for k in range(q + 1))
        self.N = self.T + tuple(self.mul(t, self.sigma) for t in self.T)
        self.Np = self.Tp + tuple(self.mul(t, self.sigma_prime) for t in self.Tp)
        self.B = tuple((a, b, 0, tower.binv(a)) for a in range(1, q) for b in range(q))
        self.U = tuple((1, b, 0, 1) for b in range(q))

    # -- matrix arithmetic

    def mul(self, x: Element, y: Element) -> Element:
        m = self.tower._mul
        a, b, c, d = x
        e, f, g, h = y
        return (
            m[a][e] ^ m[b][g],
            m[a][f] ^ m[b][h],
            m[c][e] ^ m[d][g],
            m[c][f] ^ m[d][h],
        )

    def inv(self, x: Element) -> Element:
        a, b, c, d = x  # adjugate; char 2 drops the signs
        return (d, b, c, a)

    def det(self, x: Element) -> int:
        a, b, c, d = x
        m = self.tower._mul
        return m[a][d] ^ m[b][c]

    def trace(self, x: Element) -> int:
        return x[0] ^ x[3]

    def conj(self, h: Element, g: Element) -> Element:
        """h g h^-1."""
        return self.mul(self.mul(h, g), self.inv(h))

    # -- distinguished elements

    def d(self, a: FieldElement) -> Element:
        """diag(a, a^-1) for a in mu_{q-1} = GF(q)^x."""
        if a.level != "base":
            raise ValueError("d expects a base-field element")
        if a.val == 0:
            raise ZeroDivisionError("d(0) is undefined")
        return (a.val, 0, 0, self.tower.binv(a.val))

    def d_exp(self, k: int) -> Element:
        """d at the k-th power of the fixed mu_{q-1} generator."""
        return self.d(self._mu_split[k % (self.q - 1)])

    def dprime(self, xi: FieldElement) -> Element:
        """Multiplication by xi on GF(q^2) in the basis {1, xbar}; xi in mu_{q+1}."""
        x = xi.as_ext()
        if x.norm().val != 1:
            raise ValueError("d' expects a norm-one element of GF(q^2)")
        s, t = x.val
        m = self.tower._mul
        return (s, m[t][self.tower.ext_c], t, s ^ t)

    def dprime_exp(self, k: int) -> Element:
        return self.dprime(self._mu_nonsplit[k % (self.q + 1)])

    def _frobenius_matrix(self) -> Element:
        # x -> x^q fixes 1 and sends xbar to xbar + 1
        return (1, 1, 0, 1)

    def sigma_elements(self) -> tuple[Element, Element]:
        return self.sigma, self.sigma_prime

    # -- conjugacy classification

    def _build_trace_table(self) -> dict[int, ClassLabel]:
        table: dict[int, ClassLabel] = {}
        q = self.q
        for k in self.split_exponents:
            g = self.d_exp(k)
            table[self.trace(g)] = ClassLabel("split", k)
        for k in self.nonsplit_exponents:
            g = self.dprime_exp(k)
            table[self.trace(g)] = ClassLabel("nonsplit", k)
        if len(table) != q - 1 or 0 in table:
            raise AssertionError("trace classification table is inconsistent")
        return table

    def classify(self, g: Element) -> ClassLabel:
        if self.det(g) != 1:
            raise ValueError(f"element has determinant != 1: {g}")
        if g == self.identity:
            return IDENTITY
        t = self.trace(g)
        if t == 0:
            return UNIPOTENT
        return self._trace_table[t]

    def class_data(self, label: ClassLabel) -> tuple[int, int, int]:
        """(class size, centraliser order, element order) in G."""
        q = self.q
        if label.kind == "id":
            size, elt_order = 1, 1
        elif label.kind == "u":
            size, elt_order = (q - 1) * (q + 1), 2
        elif label.kind == "split":
            size = q * (q + 1)
            elt_order = (q - 1) // _gcd(label.k, q - 1)
        elif label.kind == "nonsplit":
            size = q * (q - 1)
            elt_order = (q + 1) // _gcd(label.k, q + 1)
        else:
            raise ValueError(f"not a class of G: {label}")
        return size, self.order // size, elt_order

    def class_representative(self, label: ClassLabel) -> Element:
        if label.kind == "id":
            return self.identity
        if label.kind == "u":
            return self.u
        if label.kind == "split":
            return self.d_exp(label.k)
        if label.kind == "nonsplit":
            return self.dprime_exp(label.k)
        if label.kind == "sigma":
            return self.sigma
        return self.mul(self.dprime_exp(0), self.sigma_prime)

    def split_label(self, k: int) -> ClassLabel:
        k %= self.q - 1
        k = min(k, self.q - 1 - k)
        if k == 0:
            return IDENTITY
        return ClassLabel("split", k)

    def nonsplit_label(self, k: int) -> ClassLabel:
        k %= self.q + 1
        k = min(k, self.q + 1 - k)
        if k == 0:
            return IDENTITY
        return ClassLabel("nonsplit", k)

    def classify_in_n(self, g: Element) -> ClassLabel:
        """Conjugacy class of g inside N = <T, sigma>."""
        if g[1] == 0 and g[2] == 0:
            return self.split_label(self.tower.dlog(g[0]))
        if g[0] == 0 and g[3] == 0:
            return SIGMA
        raise ValueError(f"element not in N: {g}")

    def classify_in_np(self, g: Element) -> ClassLabel:
        """Conjugacy class of g inside N' = <T', sigma'>."""
        k = self._nonsplit_dlog.get(self._as_torus_prime(g))
        if k is not None:
            return self.nonsplit_label(k)
        h = self.mul(g, self.inv(self.sigma_prime))
        if self._as_torus_prime(h) is not None:
            return SIGMA_PRIME
        raise ValueError(f"element not in N': {g}")

    def _as_torus_prime(self, g: Element):
        """The mu_{q+1} value (s, t) when g = d'(s + t*xbar), else None."""
        s, tc, t, st = g
        m = self.tower._mul
        if tc != m[t][self.tower.ext_c] or st != (s ^ t):
            return None
        if (s, t) not in self._nonsplit_dlog:
            return None
        return (s, t)

    def _as_torus_prime_exp(self, g: Element) -> int | None:
        val = self._as_torus_prime(g)
        return None if val is None else self._nonsplit_dlog[val]

    # -- enumeration

    def elements(self):
        """All of G, by the two-chart parametrisation (no filtering)."""
        q = self.q
        binv = self.tower.binv
        m = self.tower._mul
        for a in range(1, q):
            d = binv(a)
            for b in range(q):
                yield (a, b, 0, d)
        for c in range(1, q):
            cinv = binv(c)
            for a in range(q):
                for d in range(q):
                    b = m[m[a][d] ^ 1][cinv]
                    yield (a, b, c, d)

    # -- ell-local structure

    @lru_cache(maxsize=None)
    def sylow(self, ell: int) -> SylowData:
        self.check_ell(ell)
        q = self.q
        if (q - 1) % ell == 0:
            case, r, normalizer = "q-1", q - 1, "N"
            torus_el = self.d_exp
        else:
            case, r, normalizer = "q+1", q + 1, "N'"
            torus_el = self.dprime_exp
        n = valuation(r, ell)
        ell_n = ell**n
        base = r // ell_n  # exponent of the Sylow generator inside the torus
        generators = []
        chain = []
        exps = []
        for i in range(1, n + 2):
            step = base * ell ** (n - i + 1)  # generator exponent of Q_i
            size = ell ** (i - 1)
            gen_exp = step % r
            generators.append(torus_el(gen_exp))
            exps.append(gen_exp)
            chain.append(tuple(torus_el(gen_exp * j % r) for j in range(size)))
        return SylowData(ell, case, n, tuple(chain), tuple(generators), tuple(exps), normalizer)

    def check_ell(self, ell: int) -> None:
        from ._nt import is_prime

        if ell == 2 or not is_prime(ell):
            raise UsageError(f"ell = {ell} must be an odd prime")
        if (self.q * self.q - 1) % ell:
            raise UsageError(f"ell = {ell} divides neither q - 1 = {self.q - 1} nor q + 1 = {self.q + 1}")

    @lru_cache(maxsize=None)
    def class_inventories(self, ell: int) -> ClassInventory:
        self.check_ell(ell)
        q = self.q
        case = "q-1" if (q - 1) % ell == 0 else "q+1"
        split_part = p_part(q - 1, ell)  # (q-1)_ell; 1 unless ell | q-1
        nonsplit_part = p_part(q + 1, ell)
        gamma = tuple(k for k in self.split_exponents if k % split_part == 0)
        gamma_p = tuple(k for k in self.nonsplit_exponents if k % nonsplit_part == 0)
        g_reg = (
            (IDENTITY,)
            + tuple(ClassLabel("split", k) for k in gamma)
            + tuple(ClassLabel("nonsplit", k) for k in gamma_p)
            + (UNIPOTENT,)
        )
        n_reg = (IDENTITY,) + tuple(ClassLabel("split", k) for k in gamma) + (SIGMA,)
        np_reg = (IDENTITY,) + tuple(ClassLabel("nonsplit", k) for k in gamma_p) + (SIGMA_PRIME,)
        return ClassInventory(ell, case, g_reg, n_reg, np_reg, gamma, gamma_p)

    # -- convenience

    def torus_part_exponents(self, ell: int) -> tuple[int, int]:
        """((q-1)_ell-part, (q+1)_ell-part) as (ell-part, ell'-part) of the case torus."""
        sy = self.sylow(ell)
        r = self.q - 1 if sy.case == "q-1" else self.q + 1
        return p_part(r, ell), p_prime_part(r, ell)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
