"""Brute-force cross-checks for the invariants.

These deliberately avoid the Smith-form route used by ``invariants``: torus
fixed points are found by enumerating integer translates inside a bounding
box, fixed subgroups by solving each candidate with rational Gauss-Jordan.
Only the merge-witness search uses the Diophantine solver, and its answer is
then checked by direct evaluation of the twisted conjugation.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceededError, DegenerateSpecError
from .exact_linalg import IntMatrix, solve_diophantine
from .fibered_map import FiberedMapSpec, make_theorem1_family, make_theorem2_family
from .groups import FiberElement, ProductElement, SurfaceWord, twisted_conjugate

__all__ = [
    "TorusFixedPointSet",
    "MergeWitness",
    "SuiteResult",
    "torus_fixed_points",
    "verify_merge_witness",
    "brute_force_fixed_subgroup",
    "rational_inverse",
    "run_oracle_suites",
]

MAX_BOUND = 12
MAX_BOX_POINTS = 2_000_000


def rational_inverse(A: IntMatrix) -> list[list[Fraction]] | None:
    """Gauss-Jordan inverse over Q, or None if A is singular."""
    n = A.rows
    M = [[Fraction(x) for x in A.row(i)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col] != 0), None)
        if pivot is None:
            return None
        M[col], M[pivot] = M[pivot], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]


@dataclass(frozen=True)
class TorusFixedPointSet:
    count: int
    points: tuple[tuple[Fraction, ...], ...]
    degenerate: bool


def torus_fixed_points(xi: IntMatrix, c: Sequence[Fraction | int] | None = None) -> TorusFixedPointSet:
    """Fixed points in [0,1)^k of the torus map ``x -> xi x + c``.

    x is fixed iff ``(xi - I) x = z - c`` for some integer z. Every x in the
    unit cube maps into the image parallelepiped of the cube, so it suffices
    to enumerate the integer points z in that parallelepiped's bounding box.
    """
    k = xi.rows
    c = [Fraction(0)] * k if c is None else [Fraction(x) for x in c]
    if len(c) != k:
        raise ValueError(f"translation has length {len(c)}, expected {k}")
    A = xi - IntMatrix.identity(k)
    inv = rational_inverse(A)
    if inv is None:
        return TorusFixedPointSet(0, (), True)

    # integer form: x = P (z - c) / q
    q = math.lcm(*(x.denominator for row in inv for x in row))
    P = [[int(x * q) for x in row] for row in inv]
    cden = math.lcm(*(x.denominator for x in c))
    cnum = [int(x * cden) for x in c]
    qq = q * cden

    ranges = []
    for i in range(k):
        row = A.row(i)
        lo = sum(min(a, 0) for a in row) + c[i]
        hi = sum(max(a, 0) for a in row) + c[i]
        ranges.append(range(math.floor(lo), math.ceil(hi) + 1))

    points = []
    for z in itertools.product(*ranges):
        w = [zi * cden - ci for zi, ci in zip(z, cnum)]
        num = [sum(p * wi for p, wi in zip(row, w)) for row in P]
        if all(0 <= x < qq for x in num):
            points.append(tuple(Fraction(x, qq) for x in num))
    points.sort()
    return TorusFixedPointSet(len(points), tuple(points), False)


def _is_fixed_on_torus(xi: IntMatrix, c: Sequence[Fraction], x: Sequence[Fraction]) -> bool:
    image = [sum((a * xj for a, xj in zip(xi.row(i), x)), c[i]) for i in range(xi.rows)]
    return all((y - xj).denominator == 1 for y, xj in zip(image, x))


@dataclass(frozen=True)
class MergeWitness:
    """Outcome of searching for ``gamma`` with ``gamma^-1 (1, v_from) f(gamma) = (1, v_to)``.

    ``witness`` is None when the two labels are in different classes. The
    integer solutions ``(nu(gamma_base), gamma_fiber)`` form
    ``solution + span(solution_kernel)``.
    """

    witness: ProductElement | None
    verified: bool
    solution: tuple[int, ...] | None = None
    solution_kernel: tuple[tuple[int, ...], ...] = ()

    def admits(self, alpha: Sequence[int], v: Sequence[int]) -> bool:
        """Whether ``(alpha, v)`` is another solution of the same merge system."""
        if self.solution is None:
            return False
        diff = [a - b for a, b in zip(tuple(alpha) + tuple(v), self.solution)]
        if not any(diff):
            return True
        if not self.solution_kernel:
            return False
        K = IntMatrix.from_rows([[vec[i] for vec in self.solution_kernel] for i in range(len(diff))])
        return solve_diophantine(K, diff) is not None


def verify_merge_witness(spec: FiberedMapSpec, v_from: FiberElement, v_to: FiberElement) -> MergeWitness:
    k, n = spec.fiber_rank, 2 * spec.genus
    system = spec.retraction.hstack(spec.fiber_matrix - IntMatrix.identity(k))
    sol = solve_diophantine(system, (v_to - v_from).coords)
    if sol is None:
        return MergeWitness(None, False)
    alpha, v = sol.particular[:n], sol.particular[n:]
    witness = ProductElement(SurfaceWord.from_exponents(spec.genus, alpha), FiberElement(k, v))
    got = twisted_conjugate(spec, ProductElement(SurfaceWord(spec.genus), v_from), witness)
    verified = got.base.is_identity and got.fiber == v_to
    return MergeWitness(witness, verified, sol.particular, sol.kernel_basis)


def brute_force_fixed_subgroup(spec: FiberedMapSpec, bound: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ``(alpha, v)`` with alpha in ``[-bound, bound]^{2g}`` and ``v = R alpha + Xi v`` integral."""
    n, k = 2 * spec.genus, spec.fiber_rank
    if not 1 <= bound <= MAX_BOUND or (2 * bound + 1) ** n > MAX_BOX_POINTS:
        raise BudgetExceededError(f"bound {bound} over {n} coordinates exceeds the enumeration budget")
    inv = rational_inverse(spec.lefschetz_matrix)
    if inv is None:
        raise DegenerateSpecError("I - Xi is singular")
    out = []
    for alpha in itertools.product(range(-bound, bound + 1), repeat=n):
        ra = spec.retraction.apply(alpha)
        v = [sum((a * b for a, b in zip(row, ra)), Fraction(0)) for row in inv]
        if all(x.denominator == 1 for x in v):
            vi = tuple(int(x) for x in v)
            # direct substitution into v = R alpha + Xi v
            assert tuple(r + x for r, x in zip(ra, spec.fiber_matrix.apply(vi))) == vi
            out.append((alpha, vi))
    return out


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: int
    failed: int

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _random_matrix(rng: random.Random, rows: int, cols: int, lo: int, hi: int) -> IntMatrix:
    return IntMatrix(rows, cols, tuple(rng.randint(lo, hi) for _ in range(rows * cols)))


def random_nondegenerate_spec(rng: random.Random, max_genus: int = 3, max_rank: int = 3, bound: int = 4) -> FiberedMapSpec:
    while True:
        g, k = rng.randint(2, max_genus), rng.randint(1, max_rank)
        xi = _random_matrix(rng, k, k, -bound, bound)
        if (IntMatrix.identity(k) - xi).det() != 0:
            return FiberedMapSpec(g, k, _random_matrix(rng, k, 2 * g, -bound, bound), xi, label="random")


def run_oracle_suites(seed: int = 0, trials: int = 200) -> list[SuiteResult]:
    """Cross-check the invariants against the oracles on random and family instances."""
    from .invariants import fiber_nielsen, fixed_subgroup, same_reidemeister_class

    rng = random.Random(seed)
    results = []

    ok = bad = 0
    done = 0
    while done < trials:
        k = rng.randint(1, 3)
        xi = _random_matrix(rng, k, k, -5, 5)
        if (xi - IntMatrix.identity(k)).det() == 0:
            continue
        done += 1
        fp = torus_fixed_points(xi)
        if fp.count == fiber_nielsen(xi) and all(_is_fixed_on_torus(xi, [Fraction(0)] * k, x) for x in fp.points):
            ok += 1
        else:
            bad += 1
    results.append(SuiteResult("torus fixed points = fiber Nielsen number", ok, bad))

    ok = bad = 0
    for _ in range(trials):
        spec = random_nondegenerate_spec(rng)
        k = spec.fiber_rank
        v_from = FiberElement(k, tuple(rng.randint(-5, 5) for _ in range(k)))
        v_to = FiberElement(k, tuple(rng.randint(-5, 5) for _ in range(k)))
        mw = verify_merge_witness(spec, v_from, v_to)
        if (mw.witness is not None) == same_reidemeister_class(spec, v_from, v_to) and (mw.witness is None or mw.verified):
            ok += 1
        else:
            bad += 1
    results.append(SuiteResult("merge witness agrees with Reidemeister cokernel", ok, bad))

    ok = bad = 0
    for family in (make_theorem1_family, make_theorem2_family):
        for m in range(1, 7):
            spec = family(m)
            report = fixed_subgroup(spec)
            pairs = dict(brute_force_fixed_subgroup(spec, 3))
            agree = True
            for alpha in itertools.product(range(-3, 4), repeat=4):
                if (alpha in pairs) != report.contains(alpha):
                    agree = False
                elif alpha in pairs and tuple(report.fiber_formula(alpha)) != pairs[alpha]:
                    agree = False
            ok, bad = (ok + 1, bad) if agree else (ok, bad + 1)
    results.append(SuiteResult("brute-force fixed subgroup = congruence lattice", ok, bad))
    return results

