"""Lefschetz and Nielsen numbers, Reidemeister classes and fixed point class indices.

All maps are fiber-preserving self-maps of Sigma_g x T^k over the identity
of the base. Liftings are labelled by ``(u, v)`` in pi_1; labels with
``u != 1`` give empty classes, so the nonempty classes are the orbits of the
``u = 1`` labels under twisted conjugacy. Two such labels ``(1, v')`` and
``(1, v'')`` are conjugate iff ``v'' - v'`` lies in ``R Z^{2g} + (Xi - I) Z^k``.

The index of a single nonempty class is computed two ways: from the total
Lefschetz number ``chi(Sigma_g) * det(I - Xi)``, and from the product formula
``[fix id : p(fix f_pi)] * |chi(Sigma_g)|``. Both only give the absolute value
per class; the sign is carried by the total Lefschetz number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateSpecError, MultipleClassesError, SpecError
from .exact_linalg import INFINITE, CokernelInvariants, Index, IntMatrix, cokernel, preimage_lattice_index, smith_normal_form
from .fibered_map import FAMILIES, FiberedMapSpec, make_family
from .groups import FiberElement, generator_name

__all__ = [
    "Congruence",
    "FiberFormula",
    "FixedSubgroupReport",
    "InvariantReport",
    "ReidemeisterStructure",
    "CertificateRow",
    "Certificate",
    "fiber_lefschetz",
    "fiber_nielsen",
    "total_lefschetz",
    "reidemeister_structure",
    "same_reidemeister_class",
    "fixed_subgroup",
    "class_index",
    "analyze",
    "fixed_surface_genus",
    "bip_certificate",
    "row_is_valid",
]


def _require_nondegenerate(xi: IntMatrix) -> int:
    d = fiber_lefschetz(xi)
    if d == 0:
        raise DegenerateSpecError("det(I - Xi) = 0: fiber map has a non-isolated fixed set")
    return d


def fiber_lefschetz(xi: IntMatrix) -> int:
    """Lefschetz number of the linear torus map with matrix ``xi``: ``det(I - xi)``."""
    if not xi.is_square:
        raise ValueError("fiber matrix must be square")
    return (IntMatrix.identity(xi.rows) - xi).det()


def fiber_nielsen(xi: IntMatrix) -> int:
    # every fixed point class of a torus map has index +-1
    return abs(_require_nondegenerate(xi))


def total_lefschetz(spec: FiberedMapSpec) -> int:
    return spec.euler_characteristic * fiber_lefschetz(spec.fiber_matrix)


@dataclass(frozen=True)
class ReidemeisterStructure:
    """Twisted-conjugacy classes of the labels ``(1, v)``."""

    cokernel: CokernelInvariants
    class_count: Index
    empty_classes_exist: bool = True


def _merge_matrix(spec: FiberedMapSpec) -> IntMatrix:
    return spec.retraction.hstack(spec.fiber_matrix - IntMatrix.identity(spec.fiber_rank))


def reidemeister_structure(spec: FiberedMapSpec) -> ReidemeisterStructure:
    coker = cokernel(_merge_matrix(spec))
    return ReidemeisterStructure(coker, coker.order)


def same_reidemeister_class(spec: FiberedMapSpec, v1: FiberElement, v2: FiberElement) -> bool:
    """Whether the labels ``(1, v1)`` and ``(1, v2)`` name the same fixed point class."""
    snf = smith_normal_form(_merge_matrix(spec))
    diag = snf.invariant_factors
    for i, c in enumerate(snf.U.apply((v2 - v1).coords)):
        d = diag[i] if i < len(diag) else 0
        if c % d if d else c:
            return False
    return True


@dataclass(frozen=True)
class Congruence:
    """``coefficients . alpha == 0 (mod modulus)``; modulus 0 means an exact equation."""

    coefficients: tuple[int, ...]
    modulus: int

    def holds(self, alpha: Sequence[int]) -> bool:
        s = sum(c * a for c, a in zip(self.coefficients, alpha))
        return s == 0 if self.modulus == 0 else s % self.modulus == 0

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if c:
                name = f"nu({generator_name(i)})"
                terms.append(name if c == 1 else f"{c}*{name}")
        lhs = " + ".join(terms) or "0"
        return f"{lhs} = 0" if self.modulus == 0 else f"{lhs} = 0 mod {self.modulus}"


def _normalize_congruence(coeffs: Sequence[int], modulus: int) -> Congruence | None:
    """Scale by a unit so the leading coefficient divides the modulus; None if vacuous."""
    if modulus == 0:
        g = math.gcd(*coeffs)
        if g == 0:
            return None
        lead = next(c for c in coeffs if c)
        sign = 1 if lead > 0 else -1
        return Congruence(tuple(sign * c // g for c in coeffs), 0)
    coeffs = [c % modulus for c in coeffs]
    lead = next((c for c in coeffs if c), None)
    if lead is None:
        return None
    g = math.gcd(lead, modulus)
    reduced = modulus // g
    u = pow(lead // g, -1, reduced) if reduced > 1 else 1
    while math.gcd(u, modulus) != 1:
        u += reduced
    return Congruence(tuple(u * c % modulus for c in coeffs), modulus)


@dataclass(frozen=True)
class FiberFormula:
    """The fiber coordinate ``v = (I - Xi)^-1 R alpha`` forced on a fixed element ``(u, v)``."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __call__(self, alpha: Sequence[int]) -> tuple[Fraction, ...]:
        return tuple(sum((c * a for c, a in zip(row, alpha)), Fraction(0)) for row in self.matrix)

    def __str__(self) -> str:
        parts = []
        for row in self.matrix:
            terms = []
            for i, c in enumerate(row):
                if not c:
                    continue
                name = generator_name(i)
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                if mag == 1:
                    body = name
                elif mag.denominator == 1:
                    body = f"{mag.numerator}*{name}"
                elif mag.numerator == 1:
                    body = f"{name}/{mag.denominator}"
                else:
                    body = f"{mag.numerator}*{name}/{mag.denominator}"
                terms.append((sign, body))
            if not terms:
                parts.append("0")
                continue
            text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
            text += "".join(f" {s} {b}" for s, b in terms[1:])
            parts.append(text)
        return "(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class FixedSubgroupReport:
    """``fix f_pi`` and its projection ``Lambda`` to the abelianized base.

    ``(u, v)`` is fixed iff ``nu(u)`` satisfies every congruence in
    ``lattice_conditions`` and ``v = fiber_formula(nu(u))``.
    """

    lattice_conditions: tuple[Congruence, ...]
    lattice_index: Index
    fiber_formula: FiberFormula

    def contains(self, alpha: Sequence[int]) -> bool:
        return all(c.holds(alpha) for c in self.lattice_conditions)


def fixed_subgroup(spec: FiberedMapSpec) -> FixedSubgroupReport:
    B = spec.lefschetz_matrix
    det = _require_nondegenerate(spec.fiber_matrix)
    R = spec.retraction

    # R alpha in B Z^k  <=>  (U R alpha)_i = 0 mod d_i where U B V = diag(d)
    snf = smith_normal_form(B)
    UR = snf.U @ R
    conditions = []
    for i, d in enumerate(snf.invariant_factors):
        if d == 1:
            continue
        cong = _normalize_congruence(UR.row(i), d)
        if cong is not None:
            conditions.append(cong)

    AR = B.adjugate() @ R
    formula = FiberFormula(
        tuple(tuple(Fraction(x, det) for x in AR.row(i)) for i in range(AR.rows))
    )
    return FixedSubgroupReport(tuple(conditions), preimage_lattice_index(R, B), formula)


def class_index(spec: FiberedMapSpec) -> int:
    """|index| of the unique nonempty fixed point class, by the product formula."""
    _require_nondegenerate(spec.fiber_matrix)
    count = reidemeister_structure(spec).class_count
    if count != 1:
        raise MultipleClassesError(
            f"{count} nonempty fixed point classes; per-class indices are not computed"
        )
    return fixed_subgroup(spec).lattice_index * abs(spec.euler_characteristic)


@dataclass(frozen=True)
class InvariantReport:
    fiber_lefschetz: int
    fiber_nielsen: int
    euler_characteristic: int
    total_lefschetz: int
    class_count: Index
    class_index_abs: int | None
    empty_classes_exist: bool = True


def analyze(spec: FiberedMapSpec) -> InvariantReport:
    lf = fiber_lefschetz(spec.fiber_matrix)
    nf = fiber_nielsen(spec.fiber_matrix)
    count = reidemeister_structure(spec).class_count
    index = class_index(spec) if count == 1 else None
    return InvariantReport(
        fiber_lefschetz=lf,
        fiber_nielsen=nf,
        euler_characteristic=spec.euler_characteristic,
        total_lefschetz=spec.euler_characteristic * lf,
        class_count=count,
        class_index_abs=index,
    )


def fixed_surface_genus(m: int) -> int:
    """Genus of fix f for the first family: an m-sheeted cover of Sigma_2."""
    if not isinstance(m, int) or m < 1:
        raise SpecError(f"m must be an integer >= 1, got {m!r}")
    chi = m * (2 - 2 * 2)
    return 1 - chi // 2


@dataclass(frozen=True)
class CertificateRow:
    m: int
    total_lefschetz: int
    class_count: Index
    class_index_abs: int | None


def row_is_valid(row: CertificateRow) -> bool:
    """A row witnesses a class of index 2m: one nonempty class, |ind| = L(f) = 2m."""
    return (
        row.class_count == 1
        and row.class_index_abs is not None
        and row.class_index_abs == 2 * row.m
        and row.total_lefschetz == row.class_index_abs
    )


@dataclass(frozen=True)
class Certificate:
    family: str
    rows: tuple[CertificateRow, ...]

    @property
    def valid(self) -> bool:
        return bool(self.rows) and all(row_is_valid(r) for r in self.rows)


def bip_certificate(family: str, m_max: int, m_min: int = 1) -> Certificate:
    """Rows m = m_min..m_max of (L(f), class count, |ind|) for one of the two families."""
    if family not in FAMILIES:
        raise SpecError(f"unknown family {family!r}")
    if m_max < 1 or m_min < 1 or m_min > m_max:
        raise SpecError(f"empty or invalid m range {m_min}..{m_max}")
    rows = []
    for m in range(m_min, m_max + 1):
        report = analyze(make_family(family, m))
        rows.append(CertificateRow(m, report.total_lefschetz, report.class_count, report.class_index_abs))
    return Certificate(family, tuple(rows))
