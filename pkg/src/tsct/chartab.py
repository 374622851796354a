"""Ordinary character tables of G = SL2(q), N and N', plus induction.

Irreducible characters are labelled, not materialised: torus characters
enter only as integer indices j, acting on torus elements through
zeta-power evaluation (the j-th character of the cyclic torus sends the
k-th generator power to zeta^(j*k)).  Indices are taken up to inverse with
representative min(j, r - j).

The induction engine evaluates Ind_H^target by the coset-sum formula over
a cached coset decomposition; for H = B this doubles as the Harish-Chandra
oracle whose exact agreement with the closed-form table certifies the
table.  The degree-(q-1) series is certified by orthogonality instead:
its values on the unipotent and split classes are forced uniquely by the
second orthogonality relations against the already-certified rows, and on
the nonsplit classes the full Gram identities pin the family down.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclo import Cyclotomic, rat, zeta, zsum
from .errors import CertificationError
from .grp import SIGMA, SIGMA_PRIME, ClassLabel, Element, SL2


@dataclass(frozen=True, order=True)
class IrLabel:
    """Tagged irreducible character label; j indexes a torus character."""

    kind: str  # 1G | St | R | Rp | 1N | eps | chi | 1Np | epsp | chip
    j: int = 0

    def __str__(self) -> str:
        fixed = {
            "1G": "1_G",
            "St": "St",
            "1N": "1_N",
            "eps": "eps",
            "1Np": "1_N'",
            "epsp": "eps'",
        }
        if self.kind in fixed:
            return fixed[self.kind]
        if self.kind == "R":
            return f"R(alpha[{self.j}])"
        if self.kind == "Rp":
            return f"R'(theta[{self.j}])"
        if self.kind == "chi":
            return f"chi_alpha[{self.j}]"
        return f"chi'_theta[{self.j}]"


GROUP_OF_KIND = {
    "1G": "G",
    "St": "G",
    "R": "G",
    "Rp": "G",
    "1N": "N",
    "eps": "N",
    "chi": "N",
    "1Np": "N'",
    "epsp": "N'",
    "chip": "N'",
}


@dataclass(frozen=True)
class ClassFunction:
    group: str
    values: tuple[Cyclotomic, ...]


class CharTable:
    """Exact character values of one of G, N, N' over its ordered classes."""

    def __init__(self, model: SL2, group: str):
        if group not in ("G", "N", "N'"):
            raise ValueError(f"unknown group tag {group!r}")
        self.model = model
        self.group = group
        q = model.q
        if group == "G":
            self.classes = model.classes
            self.order = model.order
            self.irreducibles = (
                (IrLabel("1G"), IrLabel("St"))
                + tuple(IrLabel("R", j) for j in model.split_exponents)
                + tuple(IrLabel("Rp", j) for j in model.nonsplit_exponents)
            )
            self.sizes = tuple(model.class_data(c)[0] for c in self.classes)
        elif group == "N":
            self.classes = model.n_classes
            self.order = 2 * (q - 1)
            self.irreducibles = (IrLabel("1N"), IrLabel("eps")) + tuple(
                IrLabel("chi", j) for j in model.split_exponents
            )
            self.sizes = tuple(1 if c.kind == "id" else (q - 1 if c.kind == "sigma" else 2) for c in self.classes)
        else:
            self.classes = model.np_classes
            self.order = 2 * (q + 1)
            self.irreducibles = (IrLabel("1Np"), IrLabel("epsp")) + tuple(
                IrLabel("chip", j) for j in model.nonsplit_exponents
            )
            self.sizes = tuple(1 if c.kind == "id" else (q + 1 if c.kind == "sigma'" else 2) for c in self.classes)
        self.centralizer_orders = tuple(self.order // s for s in self.sizes)
        self.class_index = {c: i for i, c in enumerate(self.classes)}
        self._grid = {lab: tuple(self._value(lab, c) for c in self.classes) for lab in self.irreducibles}

    # -- closed-form values

    def _value(self, label: IrLabel, c: ClassLabel) -> Cyclotomic:
        q = self.model.q
        kind, j, ck = label.kind, label.j, c.kind
        if kind in ("1G", "1N", "1Np"):
            return rat(1)
        if kind == "St":
            return rat({"id": q, "split": 1, "nonsplit": -1, "u": 0}[ck])
        if kind == "R":
            if ck == "id":
                return rat(q + 1)
            if ck == "split":
                return zsum(q - 1, j * c.k)
            return rat(1 if ck == "u" else 0)
        if kind == "Rp":
            if ck == "id":
                return rat(q - 1)
            if ck == "nonsplit":
                return -zsum(q + 1, j * c.k)
            return rat(-1 if ck == "u" else 0)
        if kind in ("eps", "epsp"):
            return rat(-1 if ck in ("sigma", "sigma'") else 1)
        if kind == "chi":
            if ck == "id":
                return rat(2)
            return zsum(q - 1, j * c.k) if ck == "split" else rat(0)
        if kind == "chip":
            if ck == "id":
                return rat(2)
            return zsum(q + 1, j * c.k) if ck == "nonsplit" else rat(0)
        raise ValueError(f"unknown label {label}")

    # -- public access

    def value(self, label: IrLabel, c: ClassLabel) -> Cyclotomic:
        if GROUP_OF_KIND[label.kind] != self.group:
            raise ValueError(f"label {label} does not belong to {self.group}")
        if c not in self.class_index:
            raise ValueError(f"class {c} does not belong to {self.group}")
        return self._grid[label][self.class_index[c]]

    def class_function(self, label: IrLabel) -> ClassFunction:
        if GROUP_OF_KIND[label.kind] != self.group:
            raise ValueError(f"label {label} does not belong to {self.group}")
        return ClassFunction(self.group, self._grid[label])

    def formal_value(self, labels, c: ClassLabel) -> Cyclotomic:
        """Value at c of a formal sum of irreducible labels."""
        total = rat(0)
        for lab in labels:
            total = total + self.value(lab, c)
        return total

    def degree(self, label: IrLabel) -> int:
        d = self._grid[label][0].rational()
        assert d.denominator == 1
        return int(d)

    def inner_product(self, phi: ClassFunction, psi: ClassFunction) -> Fraction:
        if phi.group != self.group or psi.group != self.group:
            raise ValueError("class functions belong to a different group")
        total = rat(0)
        for size, a, b in zip(self.sizes, phi.values, psi.values):
            total = total + size * (a * b.conjugate())
        return (total * Fraction(1, self.order)).rational()

    # -- certifications

    def check_first_orthogonality(self) -> None:
        for i, lab1 in enumerate(self.irreducibles):
            f1 = self.class_function(lab1)
            for lab2 in self.irreducibles[i:]:
                got = self.inner_product(f1, self.class_function(lab2))
                want = Fraction(1 if lab1 == lab2 else 0)
                if got != want:
                    raise CertificationError("first orthogonality fails", group=self.group, pair=(str(lab1), str(lab2)), got=got)

    def check_second_orthogonality(self) -> None:
        cols = {c: tuple(self._grid[lab][i] for lab in self.irreducibles) for i, c in enumerate(self.classes)}
        for i, c1 in enumerate(self.classes):
            for c2 in self.classes[i:]:
                total = rat(0)
                for a, b in zip(cols[c1], cols[c2]):
                    total = total + a * b.conjugate()
                want = rat(self.centralizer_orders[self.class_index[c1]]) if c1 == c2 else rat(0)
                if total != want:
                    raise CertificationError("second orthogonality fails", group=self.group, pair=(str(c1), str(c2)), got=total.as_string())

    def check_degree_sum(self) -> None:
        total = sum(self.degree(lab) ** 2 for lab in self.irreducibles)
        if total != self.order:
            raise CertificationError("sum of squared degrees != group order", group=self.group, got=total, want=self.order)


def make_tables(model: SL2) -> dict[str, CharTable]:
    return {g: CharTable(model, g) for g in ("G", "N", "N'")}


# ---------------------------------------------------------------------------
# induction by coset sums


class Inducer:
    """Exact induction of class functions into G, N or N'.

    For a subgroup H of the target, Ind f(g) = sum over cosets xH of the
    zero-extension of f at x^-1 g x; the conjugates landing in H are
    precomputed per target class, so inducing many characters from the
    same subgroup costs one group scan total.
    """

    def __init__(self, model: SL2):
        self.model = model
        self._targets = {
            "G": (model.classes, None),
            "N": (model.n_classes, model.N),
            "N'": (model.np_classes, model.Np),
        }

    def _target_elements(self, target: str):
        if target == "G":
            return self.model.elements()
        return iter(self._targets[target][1])

    def _class_rep(self, target: str, c: ClassLabel) -> Element:
        m = self.model
        if target == "N'" and c.kind == "sigma'":
            return m.sigma_prime
        if target == "N" and c.kind == "sigma":
            return m.sigma
        return m.class_representative(c)

    @lru_cache(maxsize=None)
    def coset_reps(self, subgroup: str, target: str = "G") -> tuple[Element, ...]:
        H = set(self.subgroup_elements(subgroup))
        reps = []
        seen: set[Element] = set()
        for x in self._target_elements(target):
            if x in seen:
                continue
            reps.append(x)
            for h in H:
                seen.add(self.model.mul(x, h))
        return tuple(reps)

    def subgroup_elements(self, subgroup: str) -> tuple[Element, ...]:
        m = self.model
        if subgroup == "T":
            return m.T
        if subgroup == "T'":
            return m.Tp
        if subgroup == "B":
            return m.B
        if subgroup.startswith("Q"):  # "Q<i>@<ell>"
            tag, ell = subgroup[1:].split("@")
            sy = m.sylow(int(ell))
            return sy.chain[int(tag) - 1]
        raise ValueError(f"subgroup {subgroup!r} is not materialised")

    @lru_cache(maxsize=None)
    def _conjugate_data(self, subgroup: str, target: str) -> tuple[tuple[Element, ...], ...]:
        """Per target class: the conjugates x^-1 g x landing in H, over coset reps x."""
        m = self.model
        H = set(self.subgroup_elements(subgroup))
        reps = self.coset_reps(subgroup, target)
        classes = self._targets[target][0]
        out = []
        for c in classes:
            g = self._class_rep(target, c)
            hits = []
            for x in reps:
                y = m.mul(m.mul(m.inv(x), g), x)
                if y in H:
                    hits.append(y)
            out.append(tuple(hits))
        return tuple(out)

    def induce(self, subgroup: str, f, target: str = "G") -> ClassFunction:
        """Induce the H-class-function f (a callable on elements) to the target."""
        data = self._conjugate_data(subgroup, target)
        values = []
        for hits in data:
            total = rat(0)
            for y in hits:
                total = total + f(y)
            values.append(total)
        return ClassFunction(target, tuple(values))

    # -- specific inductions

    def torus_character(self, j: int):
        q = self.model.q
        dlog = self.model.tower.dlog

        def f(g: Element) -> Cyclotomic:
            return zeta(q - 1, j * dlog(g[0]))

        return f

    def torus_prime_character(self, j: int):
        q = self.model.q
        model = self.model

        def f(g: Element) -> Cyclotomic:
            k = model._as_torus_prime_exp(g)
            if k is None:
                raise ValueError("element is not in T'")
            return zeta(q + 1, j * k)

        return f

    def induce_torus_to_n(self, j: int) -> ClassFunction:
        return self.induce("T", self.torus_character(j), "N")

    def induce_torus_prime_to_np(self, j: int) -> ClassFunction:
        return self.induce("T'", self.torus_prime_character(j), "N'")

    def harish_chandra(self, j: int) -> ClassFunction:
        """Ind_B^G of the inflation through B ->> T of the j-th torus character."""
        return self.induce("B", self.torus_character(j), "G")

    def trivial(self, subgroup: str, target: str = "G") -> ClassFunction:
        return self.induce(subgroup, lambda g: rat(1), target)


def check_harish_chandra_oracle(model: SL2, table: CharTable, inducer: Inducer) -> None:
    """Brute-force Ind_B^G(alpha_j) against the closed-form table, every j."""
    q = model.q
    st_plus_one = tuple(
        table.value(IrLabel("1G"), c) + table.value(IrLabel("St"), c) for c in table.classes
    )
    for j in range(0, (q - 2) // 2 + 1):
        got = inducer.harish_chandra(j)
        want = st_plus_one if j == 0 else table._grid[IrLabel("R", j)]
        if tuple(got.values) != tuple(want):
            raise CertificationError("Harish-Chandra oracle disagrees with the table", q=q, j=j)


# ---------------------------------------------------------------------------
# certification of the degree-(q-1) series by orthogonality


def certify_nonsplit_series(table: CharTable) -> None:
    """Certify the R'(theta) rows against the rest of the table.

    The known rows are 1_G, St and the R(alpha): second orthogonality of
    the u-column against the degree column forces sum v and sum v^2 for
    the unknown u-values, whose Cauchy--Schwarz equality case pins every
    value to -1; on split columns the forced sum of squares is 0; on
    nonsplit columns the Gram matrix of the candidate rows must account
    exactly for the missing part of the second orthogonality relations.
    First orthogonality of every candidate row is checked as well.
    """
    if table.group != "G":
        raise ValueError("nonsplit-series certification applies to the G table")
    model = table.model
    q = model.q
    known = [lab for lab in table.irreducibles if lab.kind != "Rp"]
    cand = [lab for lab in table.irreducibles if lab.kind == "Rp"]
    n_cand = Fraction(len(cand))
    idx_u = table.class_index[ClassLabel("u")]
    idx_id = 0

    def column(lab_list, i):
        return [table._grid[lab][i] for lab in lab_list]

    # u-column: forced first and second moments
    known_u = column(known, idx_u)
    known_deg = column(known, idx_id)
    moment1 = -sum((a * b for a, b in zip(known_deg, known_u)), rat(0)) * Fraction(1, q - 1)
    cent_u = table.centralizer_orders[idx_u]
    moment2 = rat(cent_u) - sum((a * a for a, b in zip(known_u, known_u)), rat(0))
    s1, s2 = moment1.rational(), moment2.rational()
    if s2 * n_cand != s1 * s1:
        raise CertificationError("u-column moments do not force a unique solution", cls="u")
    forced = s1 / n_cand
    for lab in cand:
        if table._grid[lab][idx_u] != rat(forced):
            raise CertificationError("u-column value differs from the forced one", cls="u", label=str(lab))

    # split columns: forced sum of squares is zero, so every value is zero
    for c in table.classes:
        if c.kind != "split":
            continue
        i = table.class_index[c]
        residual = rat(table.centralizer_orders[i]) - sum(
            (a * a.conjugate() for a in column(known, i)), rat(0)
        )
        if not residual.is_zero():
            raise CertificationError("split column does not force zero values", cls=str(c))
        for lab in cand:
            if not table._grid[lab][i].is_zero():
                raise CertificationError("split column value should be zero", cls=str(c), label=str(lab))

    # nonsplit Gram identities
    nonsplit = [c for c in table.classes if c.kind == "nonsplit"]
    for a_i, c1 in enumerate(nonsplit):
        i = table.class_index[c1]
        for c2 in nonsplit[a_i:]:
            k = table.class_index[c2]
            want = rat(table.centralizer_orders[i]) if c1 == c2 else rat(0)
            known_part = sum((a * b.conjugate() for a, b in zip(column(known, i), column(known, k))), rat(0))
            cand_part = sum((a * b.conjugate() for a, b in zip(column(cand, i), column(cand, k))), rat(0))
            if known_part + cand_part != want:
                raise CertificationError("nonsplit Gram identity fails", cls=(str(c1), str(c2)))

    # first orthogonality of each candidate row
    for lab in cand:
        f1 = table.class_function(lab)
        for lab2 in table.irreducibles:
            got = table.inner_product(f1, table.class_function(lab2))
            if got != (1 if lab2 == lab else 0):
                raise CertificationError("first orthogonality fails for candidate row", label=str(lab), against=str(lab2))


def nonsplit_series_function(table: CharTable, j: int) -> ClassFunction:
    """The certified degree-(q-1) row for theta index j."""
    certify_cached(table)
    return table.class_function(IrLabel("Rp", j))


@lru_cache(maxsize=None)
def _certified_tables() -> set[int]:
    return set()


def certify_cached(table: CharTable) -> None:
    seen = _certified_tables()
    if id(table) not in seen:
        certify_nonsplit_series(table)
        seen.add(id(table))
