"""Group realizations and the pairing with a superalgebra.

Two realizations are shipped: finite groups given by a Cayley table with an
adjoint matrix per element, and the real line acting through the truncated
exponential of the (nilpotent) adjoint of its even generator.  Every shipped
instance is unimodular; the modular function is carried through the formulas
regardless.

Points of the epsilon-extension G x {1, eps} are (base, eps) pairs; eps is
central, squares to the identity, and acts on the algebra as the parity
flip.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import linalg
from .errors import MismatchError, StructureError, UnsupportedInstanceError
from .superalgebra import EVEN, SuperAlgebra
from .validation import ValidationReport

FINITE = "finite"
LINE = "line"


@dataclass(frozen=True)
class GroupPoint:
    base: object  # element index (finite) or a real number (line)
    eps: bool = False

    def __repr__(self):
        return f"({self.base}{', eps' if self.eps else ''})"


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group as a Cayley table over element names."""

    name: str
    element_names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.element_names)

    def validate(self) -> ValidationReport:
        report = ValidationReport(f"group {self.name}")
        n = self.size
        shape_ok = len(self.table) == n and all(len(r) == n for r in self.table)
        report.add("table_shape", shape_ok)
        if not shape_ok:
            return report
        closed = all(0 <= v < n for r in self.table for v in r)
        report.add("closure", closed)
        if not closed:
            return report
        ident = next(
            (e for e in range(n) if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n))),
            None,
        )
        report.add("identity", ident is not None, "no two-sided identity" if ident is None else "")
        assoc_bad = [
            (a, b, c)
            for a in range(n)
            for b in range(n)
            for c in range(n)
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]
        ]
        report.add("associativity", not assoc_bad, f"{len(assoc_bad)} violations" if assoc_bad else "")
        if ident is not None:
            inverses = all(
                any(self.table[a][b] == ident and self.table[b][a] == ident for b in range(n))
                for a in range(n)
            )
            report.add("inverses", inverses)
        return report

    @property
    def identity(self) -> int:
        n = self.size
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                return e
        raise StructureError(f"group {self.name} has no identity")

    def inverse(self, a: int) -> int:
        e = self.identity
        for b in range(self.size):
            if self.table[a][b] == e and self.table[b][a] == e:
                return b
        raise StructureError(f"group {self.name}: element {a} has no inverse")


@dataclass(frozen=True)
class GroupData:
    """Realization of G: a finite group with per-element adjoint matrices,
    or the real line generated by one even basis element."""

    kind: str
    name: str
    finite: FiniteGroup | None = None
    # adjoint matrix per finite group element, rows of rationals
    ad_matrices: tuple[tuple[tuple[Fraction, ...], ...], ...] | None = None
    generator_name: str | None = None


@dataclass(frozen=True)
class Supergroup:
    """A group realization paired with a validated superalgebra."""

    name: str
    group: GroupData
    algebra: SuperAlgebra

    # -- group operations on points of the epsilon-extension ----------------

    def identity_point(self) -> GroupPoint:
        base = self.group.finite.identity if self.group.kind == FINITE else Fraction(0)
        return GroupPoint(base, False)

    def epsilon_point(self) -> GroupPoint:
        base = self.group.finite.identity if self.group.kind == FINITE else Fraction(0)
        return GroupPoint(base, True)

    def multiply(self, p: GroupPoint, q: GroupPoint) -> GroupPoint:
        if self.group.kind == FINITE:
            return GroupPoint(self.group.finite.table[p.base][q.base], p.eps ^ q.eps)
        return GroupPoint(p.base + q.base, p.eps ^ q.eps)

    def inverse(self, p: GroupPoint) -> GroupPoint:
        if self.group.kind == FINITE:
            return GroupPoint(self.group.finite.inverse(p.base), p.eps)
        return GroupPoint(-p.base, p.eps)

    def points(self):
        """All points of the epsilon-extension (finite groups only)."""
        if self.group.kind != FINITE:
            raise UnsupportedInstanceError("cannot enumerate points of a line group")
        for eps in (False, True):
            for g in range(self.group.finite.size):
                yield GroupPoint(g, eps)

    def modular(self, p: GroupPoint) -> Fraction:
        # every shipped instance is unimodular
        return Fraction(1)

    # -- adjoint action ------------------------------------------------------

    @property
    def generator_index(self) -> int:
        if self.group.kind != LINE:
            raise UnsupportedInstanceError("generator_index only exists for line groups")
        return self.algebra.index(self.group.generator_name)

    def ad_generator_matrix(self):
        """The matrix of y -> [z, y] for the line generator z."""
        z = self.generator_index
        n = self.algebra.dim
        return [
            [self.algebra.constants[z][j][k] for j in range(n)] for k in range(n)
        ]

    def line_ad_matrix(self, t: Fraction):
        """Ad(exp(t z)) as the truncated exponential of t * ad z."""
        n = self.algebra.dim
        adz = self.ad_generator_matrix()
        out = linalg.identity_matrix(n)
        power = linalg.identity_matrix(n)
        for k in range(1, n + 1):
            power = linalg.mat_mul(adz, power)
            if linalg.is_zero_matrix(power):
                break
            scale = Fraction(t) ** k / factorial(k)
            out = [
                [a + scale * b for a, b in zip(ra, rb)] for ra, rb in zip(out, power)
            ]
        return out

    def parity_flip_matrix(self):
        n = self.algebra.dim
        return [
            [
                (Fraction(-1) if self.algebra.parity[i] else Fraction(1)) if i == j else Fraction(0)
                for j in range(n)
            ]
            for i in range(n)
        ]

    def ad_point(self, p: GroupPoint):
        """Exact adjoint matrix of a point of the epsilon-extension."""
        if self.group.kind == FINITE:
            mat = [list(r) for r in self.group.ad_matrices[p.base]]
        else:
            mat = self.line_ad_matrix(Fraction(p.base))
        if p.eps:
            mat = linalg.mat_mul(mat, self.parity_flip_matrix())
        return mat

    def line_ad_is_trivial(self) -> bool:
        return linalg.is_zero_matrix(self.ad_generator_matrix())

    def require_trivial_line_ad(self):
        if self.group.kind == LINE and not self.line_ad_is_trivial():
            raise UnsupportedInstanceError(
                f"{self.name}: line instances with a nontrivial adjoint action "
                "on the algebra are not supported"
            )


def _preserves_bracket(algebra: SuperAlgebra, mat) -> list[str]:
    n = algebra.dim
    bad = []
    cols = [[mat[k][i] for k in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = algebra.bracket_rational(cols[i], cols[j])
            rhs = [Fraction(0)] * n
            for k, c in enumerate(algebra.bracket_basis(i, j)):
                if c != 0:
                    for m in range(n):
                        rhs[m] += c * cols[k][m]
            if lhs != rhs:
                bad.append(f"[{algebra.basis_names[i]},{algebra.basis_names[j]}]")
    return bad


def _preserves_parity(algebra: SuperAlgebra, mat) -> bool:
    n = algebra.dim
    return all(
        mat[k][i] == 0
        for i in range(n)
        for k in range(n)
        if algebra.parity[k] != algebra.parity[i]
    )


def validate_pair(pair: Supergroup) -> ValidationReport:
    """Check the compatibility axioms between the group realization and the
    superalgebra."""
    report = ValidationReport(f"pair {pair.name}")
    algebra = pair.algebra
    group = pair.group
    n = algebra.dim

    if group.kind == FINITE:
        fg = group.finite
        grp_report = fg.validate()
        report.add("group_table", grp_report.ok,
                   "; ".join(f"{c.name}: {c.detail}" for c in grp_report.failures()))
        if not grp_report.ok:
            return report
        report.add(
            "even_part_trivial",
            not algebra.even_indices(),
            "" if not algebra.even_indices() else
            "a finite group has a zero Lie algebra but the even part is nonzero",
        )
        mats = group.ad_matrices
        if mats is None or len(mats) != fg.size or any(
            len(m) != n or any(len(r) != n for r in m) for m in mats
        ):
            report.add("ad_shape", False, "one adjoint matrix per group element required")
            return report
        report.add("ad_shape", True)
        hom_bad = [
            (a, b)
            for a in range(fg.size)
            for b in range(fg.size)
            if linalg.mat_mul(mats[a], mats[b]) != [list(r) for r in mats[fg.table[a][b]]]
        ]
        report.add("ad_homomorphism", not hom_bad,
                   f"Ad(gh) != Ad(g)Ad(h) for pairs {hom_bad}" if hom_bad else "")
        parity_bad = [g for g in range(fg.size) if not _preserves_parity(algebra, mats[g])]
        report.add("ad_parity", not parity_bad,
                   f"parity broken by elements {parity_bad}" if parity_bad else "")
        bracket_bad = {
            g: bad for g in range(fg.size) if (bad := _preserves_bracket(algebra, mats[g]))
        }
        report.add(
            "ad_bracket", not bracket_bad,
            "; ".join(f"Ad({fg.element_names[g]}) breaks {', '.join(b)}"
                      for g, b in bracket_bad.items()),
        )
        ident_ok = [list(r) for r in mats[fg.identity]] == linalg.identity_matrix(n)
        report.add("ad_identity", ident_ok)
        return report

    if group.kind == LINE:
        even = algebra.even_indices()
        report.add(
            "even_part_line",
            len(even) == 1,
            "" if len(even) == 1 else "the even part of a line pair must be 1-dimensional",
        )
        try:
            z = algebra.index(group.generator_name)
        except StructureError as exc:
            report.add("generator", False, str(exc))
            return report
        report.add(
            "generator_even",
            algebra.parity[z] == EVEN,
            "" if algebra.parity[z] == EVEN else f"generator {group.generator_name} is odd",
        )
        adz = pair.ad_generator_matrix()
        power = [list(r) for r in adz]
        for _ in range(n):
            power = linalg.mat_mul(adz, power)
        nilpotent = linalg.is_zero_matrix(power)
        report.add("ad_generator_nilpotent", nilpotent,
                   "" if nilpotent else "ad z is not nilpotent; the exact exponential is unavailable")
        if not nilpotent:
            return report
        # derivative check: (Ad(h) - 1)/h applied to each basis vector must
        # equal [z, .] up to the exact quadratic-and-higher tail
        h = Fraction(1, 1024)
        ad_h = pair.line_ad_matrix(h)
        basis = linalg.identity_matrix(n)
        deriv_bad = []
        for j in range(n):
            fd = [(ad_h[k][j] - basis[k][j]) / h for k in range(n)]
            target = [adz[k][j] for k in range(n)]
            resid = [a - b for a, b in zip(fd, target)]
            # the residual of a degree <= n polynomial curve is O(h); certify
            # with a crude coefficient bound from the nilpotent expansion
            bound = Fraction(0)
            power = [list(r) for r in adz]
            for k in range(2, n + 2):
                power = linalg.mat_mul(adz, power)
                bound += h ** (k - 1) * max((abs(v) for row in power for v in row), default=Fraction(0))
            if any(abs(r) > bound for r in resid):
                deriv_bad.append(algebra.basis_names[j])
        report.add("ad_derivative_matches_bracket", not deriv_bad, ", ".join(deriv_bad))
        # the exponential of a bracket derivation preserves bracket and parity
        sample = pair.line_ad_matrix(Fraction(1))
        report.add("ad_parity", _preserves_parity(algebra, sample))
        bad = _preserves_bracket(algebra, sample)
        report.add("ad_bracket", not bad, ", ".join(bad))
        hom_ok = linalg.mat_mul(pair.line_ad_matrix(Fraction(1, 2)),
                                pair.line_ad_matrix(Fraction(1, 3))) == pair.line_ad_matrix(
            Fraction(5, 6))
        report.add("ad_one_parameter", hom_ok)
        return report

    report.add("kind", False, f"unknown group kind {group.kind!r}")
    return report


def build_pair(name: str, group: GroupData, algebra: SuperAlgebra) -> Supergroup:
    pair = Supergroup(name, group, algebra)
    validate_pair(pair).raise_if_failed()
    return pair


def ad_eps_extend(pair: Supergroup):
    """The adjoint action extended to the epsilon-extension, as a callable
    GroupPoint -> exact matrix."""
    return pair.ad_point
