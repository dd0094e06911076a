"""Elements of pi_1(Sigma_g) x Z^k and the twisted-conjugacy action.

Surface-group words are kept freely reduced but the surface relator is never
applied, so two different words may name the same group element. This is
harmless here: every invariant computed downstream factors through the
exponent-sum vector (which kills the relator) or through the fiber group.
Do not use ``==`` on words as a test for equality in pi_1(Sigma_g).

Generator ``i`` is ``a_{i//2+1}`` for even ``i`` and ``b_{i//2+1}`` for odd ``i``.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

if TYPE_CHECKING:
    from .fibered_map import FiberedMapSpec

__all__ = [
    "SurfaceWord",
    "FiberElement",
    "ProductElement",
    "word_multiply",
    "exponent_vector",
    "apply_endomorphism",
    "twisted_conjugate",
    "parse_word",
    "generator_name",
]


def generator_name(index: int) -> str:
    return f"{'ab'[index % 2]}{index // 2 + 1}"


def _free_reduce(letters: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[tuple[int, int]] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((gen, merged))
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class SurfaceWord:
    """Freely reduced word in a_1, b_1, ..., a_g, b_g.

    Letters are ``(generator index, nonzero exponent)`` pairs; whatever is
    passed in is reduced on construction.
    """

    genus: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.genus < 2:
            raise ValueError(f"genus >= 2 required, got {self.genus}")
        checked = []
        for gen, exp in self.letters:
            gen, exp = operator.index(gen), operator.index(exp)
            if not 0 <= gen < 2 * self.genus:
                raise ValueError(f"generator index {gen} out of range for genus {self.genus}")
            checked.append((gen, exp))
        object.__setattr__(self, "letters", _free_reduce(checked))

    @classmethod
    def identity(cls, genus: int) -> "SurfaceWord":
        return cls(genus)

    @classmethod
    def generator(cls, genus: int, index: int, exponent: int = 1) -> "SurfaceWord":
        return cls(genus, ((index, exponent),))

    @classmethod
    def from_exponents(cls, genus: int, exponents: Sequence[int]) -> "SurfaceWord":
        """The word a_1^{e_0} b_1^{e_1} ... b_g^{e_{2g-1}}."""
        if len(exponents) != 2 * genus:
            raise ValueError(f"need {2 * genus} exponents, got {len(exponents)}")
        return cls(genus, tuple(enumerate(exponents)))

    @classmethod
    def relator(cls, genus: int) -> "SurfaceWord":
        letters = []
        for h in range(genus):
            a, b = 2 * h, 2 * h + 1
            letters += [(a, 1), (b, 1), (a, -1), (b, -1)]
        return cls(genus, tuple(letters))

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __mul__(self, other: "SurfaceWord") -> "SurfaceWord":
        return word_multiply(self, other)

    def inverse(self) -> "SurfaceWord":
        return SurfaceWord(self.genus, tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "SurfaceWord":
        if n < 0:
            return self.inverse() ** -n
        out = SurfaceWord(self.genus)
        for _ in range(n):
            out = out * self
        return out

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(
            generator_name(g) if e == 1 else f"{generator_name(g)}^{e}" for g, e in self.letters
        )


@dataclass(frozen=True)
class FiberElement:
    """Element of pi_1(T^k) = Z^k, written additively."""

    rank: int
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(operator.index(c) for c in self.coords)
        if self.rank < 1 or len(coords) != self.rank:
            raise ValueError(f"fiber element of rank {self.rank} needs {self.rank} coordinates")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, *coords: int) -> "FiberElement":
        return cls(len(coords), tuple(coords))

    @classmethod
    def zero(cls, rank: int) -> "FiberElement":
        return cls(rank, (0,) * rank)

    def _check(self, other: "FiberElement"):
        if self.rank != other.rank:
            raise ValueError(f"fiber rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "FiberElement") -> "FiberElement":
        self._check(other)
        return FiberElement(self.rank, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "FiberElement") -> "FiberElement":
        self._check(other)
        return FiberElement(self.rank, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "FiberElement":
        return FiberElement(self.rank, tuple(-a for a in self.coords))

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.coords)) + ")"


@dataclass(frozen=True)
class ProductElement:
    """``(u, v)`` in pi_1(Sigma_g) x pi_1(T^k)."""

    base: SurfaceWord
    fiber: FiberElement

    @classmethod
    def identity(cls, genus: int, rank: int) -> "ProductElement":
        return cls(SurfaceWord(genus), FiberElement.zero(rank))

    @property
    def genus(self) -> int:
        return self.base.genus

    @property
    def rank(self) -> int:
        return self.fiber.rank

    def __mul__(self, other: "ProductElement") -> "ProductElement":
        return ProductElement(word_multiply(self.base, other.base), self.fiber + other.fiber)

    def inverse(self) -> "ProductElement":
        return ProductElement(self.base.inverse(), -self.fiber)

    def __str__(self) -> str:
        return f"({self.base}, {self.fiber})"


def word_multiply(w1: SurfaceWord, w2: SurfaceWord) -> SurfaceWord:
    if w1.genus != w2.genus:
        raise ValueError(f"genus mismatch: {w1.genus} vs {w2.genus}")
    return SurfaceWord(w1.genus, w1.letters + w2.letters)


def exponent_vector(w: SurfaceWord) -> tuple[int, ...]:
    """Exponent sums per generator: the abelianization pi_1(Sigma_g) -> Z^{2g}."""
    out = [0] * (2 * w.genus)
    for gen, exp in w.letters:
        out[gen] += exp
    return tuple(out)


def _check_fits(spec: "FiberedMapSpec", x: ProductElement):
    if x.genus != spec.genus or x.rank != spec.fiber_rank:
        raise ValueError(
            f"element lives in genus {x.genus} x rank {x.rank}, "
            f"map is on genus {spec.genus} x rank {spec.fiber_rank}"
        )


def apply_endomorphism(spec: "FiberedMapSpec", x: ProductElement) -> ProductElement:
    """``(u, v) -> (u, R nu(u) + Xi v)``; the base map is the identity."""
    _check_fits(spec, x)
    shift = spec.retraction.apply(exponent_vector(x.base))
    twisted = spec.fiber_matrix.apply(x.fiber.coords)
    return ProductElement(x.base, FiberElement(spec.fiber_rank, tuple(a + b for a, b in zip(shift, twisted))))


def twisted_conjugate(spec: "FiberedMapSpec", beta: ProductElement, gamma: ProductElement) -> ProductElement:
    """``gamma^-1 * beta * f(gamma)``."""
    _check_fits(spec, beta)
    _check_fits(spec, gamma)
    return gamma.inverse() * beta * apply_endomorphism(spec, gamma)


_TOKEN = re.compile(r"([ab])(\d+)(?:\^\s*([+-]?\d+))?$")


def parse_word(text: str, genus: int) -> SurfaceWord:
    """Parse ``"a1 b1^-1 a2^3"``. Empty text or ``"1"`` is the identity."""
    letters = []
    for token in text.lower().split():
        if token == "1":
            continue
        match = _TOKEN.match(token)
        if not match:
            raise ValueError(f"bad word token {token!r}")
        kind, handle, exp = match.groups()
        handle = int(handle)
        if not 1 <= handle <= genus:
            raise ValueError(f"generator {token!r} does not exist in genus {genus}")
        letters.append((2 * (handle - 1) + (kind == "b"), int(exp) if exp else 1))
    return SurfaceWord(genus, tuple(letters))
