"""Fiber-preserving self-maps of Sigma_g x T^k over the identity of Sigma_g.

On pi_1 such a map is ``(u, v) -> (u, R nu(u) + Xi v)``, where ``nu`` is the
exponent-sum vector of ``u``, ``R`` (k x 2g) records where the retraction
sends each surface generator and ``Xi`` (k x k) is the induced map of the
fiber torus.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import SpecError, SpecParseError
from .exact_linalg import IntMatrix

__all__ = [
    "FiberedMapSpec",
    "SpecDiagnostics",
    "make_theorem1_family",
    "make_theorem2_family",
    "make_family",
    "validate_spec",
    "parse_family",
    "parse_spec_text",
    "load_spec",
    "format_spec",
    "FAMILIES",
]


@dataclass(frozen=True)
class FiberedMapSpec:
    genus: int
    fiber_rank: int
    retraction: IntMatrix
    fiber_matrix: IntMatrix
    label: str = ""

    def __post_init__(self):
        # deck transformations of the base must act freely
        if self.genus < 2:
            raise SpecError(f"genus >= 2 required, got {self.genus}")
        if self.fiber_rank < 1:
            raise SpecError(f"fiber_rank >= 1 required, got {self.fiber_rank}")
        if self.retraction.shape != (self.fiber_rank, 2 * self.genus):
            raise SpecError(
                f"retraction must be {self.fiber_rank}x{2 * self.genus}, got "
                f"{self.retraction.rows}x{self.retraction.cols}"
            )
        if self.fiber_matrix.shape != (self.fiber_rank, self.fiber_rank):
            raise SpecError(
                f"fiber_matrix must be {self.fiber_rank}x{self.fiber_rank}, got "
                f"{self.fiber_matrix.rows}x{self.fiber_matrix.cols}"
            )

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus

    @property
    def lefschetz_matrix(self) -> IntMatrix:
        """``I - Xi``."""
        return IntMatrix.identity(self.fiber_rank) - self.fiber_matrix


@dataclass(frozen=True)
class SpecDiagnostics:
    fiber_det: int
    is_fiber_automorphism: bool
    lefschetz_det: int
    degenerate: bool


def _check_m(m: int):
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise SpecError(f"family parameter m must be an integer >= 1, got {m!r}")


def make_theorem1_family(m: int) -> FiberedMapSpec:
    """Sigma_2 x S^1, a_1 -> c on the fiber, fiber map of degree m+1."""
    _check_m(m)
    return FiberedMapSpec(
        genus=2,
        fiber_rank=1,
        retraction=IntMatrix.from_rows([[1, 0, 0, 0]]),
        fiber_matrix=IntMatrix.from_rows([[m + 1]]),
        label=f"theorem1:m={m}",
    )


def make_theorem2_family(m: int) -> FiberedMapSpec:
    """Sigma_2 x T^2, pinch map a_1 -> a, b_1 -> b, fiber automorphism [[m+1, m], [1, 1]]."""
    _check_m(m)
    return FiberedMapSpec(
        genus=2,
        fiber_rank=2,
        retraction=IntMatrix.from_rows([[1, 0, 0, 0], [0, 1, 0, 0]]),
        fiber_matrix=IntMatrix.from_rows([[m + 1, m], [1, 1]]),
        label=f"theorem2:m={m}",
    )


FAMILIES = {
    "theorem1": make_theorem1_family,
    "theorem2": make_theorem2_family,
}


def make_family(name: str, m: int) -> FiberedMapSpec:
    try:
        factory = FAMILIES[name]
    except KeyError:
        raise SpecError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}") from None
    return factory(m)


def validate_spec(spec: FiberedMapSpec) -> SpecDiagnostics:
    fiber_det = spec.fiber_matrix.det()
    lefschetz_det = spec.lefschetz_matrix.det()
    return SpecDiagnostics(
        fiber_det=fiber_det,
        is_fiber_automorphism=abs(fiber_det) == 1,
        lefschetz_det=lefschetz_det,
        degenerate=lefschetz_det == 0,
    )


_FAMILY = re.compile(r"^\s*(\w+)\s*(?::\s*m\s*=\s*([+-]?\d+))?\s*$")


def parse_family(text: str) -> tuple[str, int | None]:
    """Split ``"theorem2:m=3"`` into ``("theorem2", 3)``; the ``:m=`` part is optional."""
    match = _FAMILY.match(text)
    if not match or match.group(1) not in FAMILIES:
        raise SpecParseError(
            f"expected one of {', '.join(f'{f}:m=<int>' for f in FAMILIES)}, got {text!r}",
            field="family",
        )
    name, m = match.groups()
    return name, None if m is None else int(m)


_REQUIRED = ("genus", "fiber_rank", "retraction", "fiber_matrix")


def _parse_int_list(value: str, field: str, line: int) -> list[int]:
    tokens = [t for t in re.split(r"[\s,\[\]]+", value) if t]
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise SpecParseError(f"expected a list of integers, got {value!r}", field, line) from None


def parse_spec_text(text: str) -> FiberedMapSpec:
    """Parse the key-value spec format.

    One ``key = value`` (or ``key: value``) per line, ``#`` starts a comment.
    Matrices are row-major integer lists::

        genus = 2
        fiber_rank = 2
        retraction = 1 0 0 0, 0 1 0 0
        fiber_matrix = 4 3, 1 1
        label = my map
    """
    raw: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        match = re.match(r"^(\w+)\s*[=:]\s*(.*)$", line)
        if not match:
            raise SpecParseError(f"cannot parse {line!r}", line=lineno)
        key, value = match.group(1).lower(), match.group(2).strip()
        if key not in _REQUIRED and key != "label":
            raise SpecParseError("unknown field", key, lineno)
        if key in raw:
            raise SpecParseError("duplicate field", key, lineno)
        raw[key] = (value, lineno)

    for key in _REQUIRED:
        if key not in raw:
            raise SpecParseError("missing required field", key)

    def scalar(key):
        value, lineno = raw[key]
        try:
            return int(value)
        except ValueError:
            raise SpecParseError(f"expected an integer, got {value!r}", key, lineno) from None

    genus, rank = scalar("genus"), scalar("fiber_rank")
    if genus < 2:
        raise SpecParseError(f"genus >= 2 required, got {genus}", "genus", raw["genus"][1])
    if rank < 1:
        raise SpecParseError(f"fiber_rank >= 1 required, got {rank}", "fiber_rank", raw["fiber_rank"][1])

    def matrix(key, rows, cols):
        value, lineno = raw[key]
        entries = _parse_int_list(value, key, lineno)
        if len(entries) != rows * cols:
            raise SpecParseError(f"expected {rows * cols} entries ({rows}x{cols}), got {len(entries)}", key, lineno)
        return IntMatrix(rows, cols, tuple(entries))

    return FiberedMapSpec(
        genus=genus,
        fiber_rank=rank,
        retraction=matrix("retraction", rank, 2 * genus),
        fiber_matrix=matrix("fiber_matrix", rank, rank),
        label=raw.get("label", ("", 0))[0],
    )


def load_spec(path: str | Path) -> FiberedMapSpec:
    return parse_spec_text(Path(path).read_text())


def format_spec(spec: FiberedMapSpec) -> str:
    """Inverse of :func:`parse_spec_text`."""

    def rows(M: IntMatrix) -> str:
        return ", ".join(" ".join(map(str, M.row(i))) for i in range(M.rows))

    lines = [
        f"genus = {spec.genus}",
        f"fiber_rank = {spec.fiber_rank}",
        f"retraction = {rows(spec.retraction)}",
        f"fiber_matrix = {rows(spec.fiber_matrix)}",
    ]
    if spec.label:
        lines.append(f"label = {spec.label}")
    return "\n".join(lines) + "\n"
