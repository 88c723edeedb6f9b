"""Seifert matrices, the Alexander presentation A(t) = S^T - tS and the normalized Alexander polynomial."""

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from . import logger
from .exactmath import (
    NumberField,
    Poly,
    bareiss_determinant,
    integer_determinant,
    yun_squarefree,
)
from .utils import (
    DegenerateAlexanderError,
    NonSquareSeifertError,
    NonUnimodularSeifertError,
    OddSizeSeifertError,
    SeifertValidationError,
)

log = logger.get_logger(__name__)

IntMatrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class SeifertData:
    """A validated Seifert matrix: square, even-sized, with det(S - S^T) = 1."""

    name: str
    matrix: IntMatrix

    @property
    def size(self) -> int:
        return len(self.matrix)

    @property
    def genus(self) -> int:
        return self.size // 2


@dataclass(frozen=True)
class AlexanderPresentation:
    """A(t) with entry (i, j) equal to S[j][i] - t*S[i][j]."""

    seifert: SeifertData
    matrix: Tuple[Tuple[Poly, ...], ...]

    @property
    def size(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class NormalizedAlexanderPoly:
    """``det A = sign * t**t_power * delta`` with delta(0) != 0 and a positive leading coefficient."""

    delta: Poly
    sign: int
    t_power: int

    @property
    def raw(self) -> Poly:
        return (self.delta * self.sign).shift(self.t_power)

    def __str__(self) -> str:
        return str(self.delta)


@dataclass(frozen=True)
class RootClass:
    """A monic squarefree factor of delta and its multiplicity."""

    factor: Poly
    multiplicity: int

    @property
    def field(self) -> NumberField:
        return NumberField(self.factor)


@dataclass(frozen=True)
class RootClassSet:
    classes: Tuple[RootClass, ...]
    content: Fraction

    def __iter__(self) -> Iterator[RootClass]:
        return iter(self.classes)

    def __len__(self) -> int:
        return len(self.classes)

    def factors(self) -> List[Poly]:
        return [rc.factor for rc in self.classes]


def validate_seifert(name: str, raw: Sequence[Sequence[int]]) -> SeifertData:
    """Validate a raw integer matrix as a Seifert matrix.

    Args:
        name: Knot label used in error messages
        raw: Square integer matrix, rows first

    Returns:
        The validated SeifertData

    Raises:
        NonSquareSeifertError: A row length differs from the row count
        OddSizeSeifertError: The size is odd
        NonUnimodularSeifertError: det(S - S^T) != 1
    """
    rows = [list(row) for row in raw]
    size = len(rows)
    for index, row in enumerate(rows):
        if len(row) != size:
            raise NonSquareSeifertError(
                f"{name}: row {index} has {len(row)} entries, expected {size}"
            )
        for value in row:
            if isinstance(value, bool) or not isinstance(value, int):
                raise SeifertValidationError(
                    f"{name}: non-integer entry {value!r} in row {index}"
                )
    if size % 2:
        raise OddSizeSeifertError(f"{name}: Seifert matrix has odd size {size}")

    skew = [[rows[i][j] - rows[j][i] for j in range(size)] for i in range(size)]
    det = integer_determinant(skew)
    if det != 1:
        raise NonUnimodularSeifertError(
            f"{name}: det(S - S^T) = {det}, expected 1"
        )

    log.debug(f"Validated Seifert matrix for {name} (genus {size // 2})")
    return SeifertData(name=name, matrix=tuple(tuple(row) for row in rows))


def alexander_matrix(s: SeifertData) -> AlexanderPresentation:
    """Build A(t) = S^T - tS."""
    size = s.size
    matrix = tuple(
        tuple(Poly([s.matrix[j][i], -s.matrix[i][j]]) for j in range(size))
        for i in range(size)
    )
    return AlexanderPresentation(seifert=s, matrix=matrix)


def alexander_polynomial(a: AlexanderPresentation) -> NormalizedAlexanderPoly:
    """Exact determinant of A(t), normalized up to the units +-t^k.

    Raises:
        DegenerateAlexanderError: det A vanishes, delta(1) != +-1, or delta is not symmetric
    """
    raw = bareiss_determinant(a.matrix)
    name = a.seifert.name
    if raw.is_zero:
        raise DegenerateAlexanderError(f"{name}: det A(t) is identically zero")

    t_power = raw.trailing_zeros()
    delta = Poly(raw.coeffs[t_power:])
    sign = 1
    if delta.lc < 0:
        delta = -delta
        sign = -1

    if delta(1) not in (1, -1):
        raise DegenerateAlexanderError(f"{name}: delta(1) = {delta(1)}, expected +-1")
    mirrored = Poly(reversed(delta.coeffs))
    if mirrored != delta and mirrored != -delta:
        raise DegenerateAlexanderError(f"{name}: Alexander polynomial {delta} is not symmetric")

    log.info(f"Alexander polynomial of {name}: {delta}")
    return NormalizedAlexanderPoly(delta=delta, sign=sign, t_power=t_power)


def root_classes(d: NormalizedAlexanderPoly) -> RootClassSet:
    """Squarefree factors of delta with multiplicities (Yun); each becomes a field modulus."""
    factorization = yun_squarefree(d.delta)
    classes = []
    for factor, multiplicity in factorization.factors:
        if factor(0) == 0 or factor(1) == 0:
            raise DegenerateAlexanderError(
                f"root class {factor} has a root at 0 or 1"
            )
        classes.append(RootClass(factor=factor, multiplicity=multiplicity))
    return RootClassSet(classes=tuple(classes), content=factorization.content)


def connected_sum(a: SeifertData, b: SeifertData, name: Optional[str] = None) -> SeifertData:
    """Block-diagonal Seifert matrix of the connected sum; Alexander polynomials multiply."""
    size = a.size + b.size
    rows: List[List[int]] = [[0] * size for _ in range(size)]
    for i in range(a.size):
        rows[i][: a.size] = a.matrix[i]
    for i in range(b.size):
        rows[a.size + i][a.size :] = b.matrix[i]
    return validate_seifert(name or f"{a.name}#{b.name}", rows)


def random_seifert(
    genus: int, rng: random.Random, bound: int = 2, name: Optional[str] = None
) -> SeifertData:
    """Random Seifert matrix with entries in [-bound, bound].

    S = B + N with B symmetric and N the strictly upper part of the standard
    symplectic form, so S - S^T is unimodular and A(1) = -(S - S^T) keeps
    det A nonzero.
    """
    size = 2 * genus
    rows = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            top = bound - 1 if (i % 2 == 0 and j == i + 1) else bound
            value = rng.randint(-bound, top)
            rows[i][j] = value
            rows[j][i] = value
    for i in range(genus):
        rows[2 * i][2 * i + 1] += 1
    return validate_seifert(name or f"random_g{genus}", rows)


def evaluate_presentation(a: AlexanderPresentation, t0: Fraction) -> List[List[Fraction]]:
    """The rational matrix A(t0)."""
    return [[entry(Fraction(t0)) for entry in row] for row in a.matrix]
