"""Metabelian representations on the quotient (Alexander module) x| Z.

An element is a pair (y, k) with y a row of Laurent polynomials standing for
a class of Lambda^{2g} modulo the row span of A(t). A solution Phi of the
obstruction system at level n gives

    rho(y, k) = [[alpha^k, Phi(y) J^k],
                 [0,       J^k      ]]

with Phi extended by Phi(p(t) e_i) = Phi(e_i) p(alpha J^-1).
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import logger
from .constants import MAX_RANDOM_COEFF, MAX_RANDOM_SHIFT
from .exactmath import NFElement, NumberField, Poly, ZERO, format_terms, parse_terms
from .obstruction import PhiMatrix, SolutionSpace, jordan_power
from .seifert import AlexanderPresentation, SeifertData, alexander_matrix

log = logger.get_logger(__name__)


class LaurentPoly:
    """t**shift * numerator, kept with numerator(0) != 0 (zero is (0, 0))."""

    __slots__ = ("numerator", "shift")

    def __init__(self, numerator: Poly = ZERO, shift: int = 0):
        if numerator.is_zero:
            shift = 0
        else:
            low = numerator.trailing_zeros()
            if low:
                numerator = Poly(numerator.coeffs[low:])
                shift += low
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "shift", shift)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def from_terms(cls, terms: Dict[int, Union[int, Fraction]]) -> "LaurentPoly":
        nonzero = {e: c for e, c in terms.items() if c != 0}
        if not nonzero:
            return cls()
        low = min(nonzero)
        coeffs = [Fraction(0)] * (max(nonzero) - low + 1)
        for e, c in nonzero.items():
            coeffs[e - low] = Fraction(c)
        return cls(Poly(coeffs), low)

    @classmethod
    def monomial(cls, coeff: Union[int, Fraction], exponent: int) -> "LaurentPoly":
        return cls.from_terms({exponent: coeff})

    @classmethod
    def parse(cls, text: str, var: str = "t") -> "LaurentPoly":
        return cls.from_terms(parse_terms(text, var))

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def terms(self) -> List[Tuple[int, Fraction]]:
        """Nonzero ``(exponent, coefficient)`` pairs, ascending."""
        return [
            (self.shift + i, c) for i, c in enumerate(self.numerator.coeffs) if c != 0
        ]

    def times_t(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.numerator, self.shift + k)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        low = min(self.shift, other.shift)
        total = self.numerator.shift(self.shift - low) + other.numerator.shift(
            other.shift - low
        )
        return LaurentPoly(total, low)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(-self.numerator, self.shift)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: Union["LaurentPoly", int, Fraction]) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return LaurentPoly(self.numerator * other.numerator, self.shift + other.shift)
        return LaurentPoly(self.numerator * other, self.shift)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.numerator == other.numerator and self.shift == other.shift

    def __hash__(self) -> int:
        return hash((self.numerator, self.shift))

    def __str__(self) -> str:
        return format_terms([(c, e) for e, c in self.terms()], "t")

    def __repr__(self) -> str:
        return f"LaurentPoly('{self}')"


@dataclass(frozen=True)
class MetabelianElement:
    """(y, k) with y in Lambda^{2g} (modulo the relations) and k the meridian exponent."""

    y: Tuple[LaurentPoly, ...]
    k: int

    @property
    def size(self) -> int:
        return len(self.y)

    @classmethod
    def identity(cls, size: int) -> "MetabelianElement":
        return cls(tuple(LaurentPoly() for _ in range(size)), 0)

    @classmethod
    def meridian(cls, size: int) -> "MetabelianElement":
        return cls(tuple(LaurentPoly() for _ in range(size)), 1)

    @classmethod
    def generator(cls, size: int, index: int, k: int = 0) -> "MetabelianElement":
        """(e_index, k)."""
        y = [LaurentPoly() for _ in range(size)]
        y[index] = LaurentPoly.monomial(1, 0)
        return cls(tuple(y), k)

    def __str__(self) -> str:
        return f"([{', '.join(str(p) for p in self.y)}], {self.k})"


def semidirect_mul(a: MetabelianElement, b: MetabelianElement) -> MetabelianElement:
    """(y1, k1) * (y2, k2) = (y1 + t^k1 y2, k1 + k2)."""
    if a.size != b.size:
        raise ValueError(f"size mismatch: {a.size} != {b.size}")
    return MetabelianElement(
        tuple(p + q.times_t(a.k) for p, q in zip(a.y, b.y)), a.k + b.k
    )


@dataclass(frozen=True)
class RepMatrix:
    """An n x n upper triangular matrix over a root class field."""

    field: NumberField
    entries: Tuple[Tuple[NFElement, ...], ...]

    @property
    def order(self) -> int:
        return len(self.entries)

    def __matmul__(self, other: "RepMatrix") -> "RepMatrix":
        n = self.order
        zero = self.field.zero
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                # upper triangular: only i <= l <= j contributes
                for l in range(i, j + 1):
                    acc = acc + self.entries[i][l] * other.entries[l][j]
                row.append(acc)
            rows.append(tuple(row))
        return RepMatrix(self.field, tuple(rows))

    def jordan_block(self) -> Tuple[Tuple[NFElement, ...], ...]:
        """The matrix with row 1 and column 1 deleted."""
        return tuple(row[1:] for row in self.entries[1:])

    def determinant(self) -> NFElement:
        det = self.field.one
        for i in range(self.order):
            det = det * self.entries[i][i]
        return det

    def is_upper_triangular(self) -> bool:
        return all(
            self.entries[i][j].is_zero for i in range(self.order) for j in range(i)
        )

    def to_strings(self) -> List[List[str]]:
        return [[str(entry) for entry in row] for row in self.entries]


def satisfies_obstruction(s: SeifertData, field_: NumberField, phi: PhiMatrix) -> bool:
    """True iff S^T Phi J = alpha S Phi exactly."""
    size = s.size
    width = len(phi[0]) if phi else 0
    alpha = field_.gen
    for i in range(size):
        for j in range(width):
            lhs = field_.zero
            rhs = field_.zero
            for l in range(size):
                if s.matrix[l][i]:
                    phi_j = phi[l][j] + (phi[l][j - 1] if j > 0 else field_.zero)
                    lhs = lhs + phi_j * s.matrix[l][i]
                if s.matrix[i][l]:
                    rhs = rhs + phi[l][j] * s.matrix[i][l]
            if lhs != alpha * rhs:
                return False
    return True


@dataclass(frozen=True)
class RepBuilder:
    """One solution Phi (2g x (n-1)) of the obstruction system; checked unless ``check`` is False."""

    seifert: SeifertData
    field: NumberField
    level: int
    phi: PhiMatrix
    check: bool = field(default=True, compare=False)
    _powers: Dict[int, NFElement] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )
    _rows: Dict[Tuple[int, int], Tuple[NFElement, ...]] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if len(self.phi) != self.seifert.size or any(
            len(row) != self.level - 1 for row in self.phi
        ):
            raise ValueError(
                f"Phi must be {self.seifert.size} x {self.level - 1} for level {self.level}"
            )
        if self.check and not satisfies_obstruction(self.seifert, self.field, self.phi):
            raise ValueError("Phi does not solve the obstruction system")

    @property
    def width(self) -> int:
        return self.level - 1

    def alpha_power(self, k: int) -> NFElement:
        power = self._powers.get(k)
        if power is None:
            power = self.field.gen**k
            self._powers[k] = power
        return power

    def power_row(self, i: int, e: int) -> Tuple[NFElement, ...]:
        """Phi(t^e e_i) = Phi(e_i) alpha^e J^-e, memoized per (i, e)."""
        key = (i, e)
        row = self._rows.get(key)
        if row is None:
            width = self.width
            inverse = jordan_power(width, -e)
            phi_i = self.phi[i]
            alpha_e = self.alpha_power(e)
            row = tuple(
                sum(
                    (phi_i[r] * inverse[r][c] for r in range(c + 1) if inverse[r][c]),
                    self.field.zero,
                )
                * alpha_e
                for c in range(width)
            )
            self._rows[key] = row
        return row


def solutions_to_builders(space: SolutionSpace, check: bool = True) -> Tuple[RepBuilder, ...]:
    """One builder per nullspace basis vector."""
    system = space.system
    return tuple(
        RepBuilder(
            seifert=system.seifert,
            field=space.field,
            level=system.level,
            phi=space.phi_matrix(index),
            check=check,
        )
        for index in range(space.dimension)
    )


def phi_extend(b: RepBuilder, y: Sequence[LaurentPoly]) -> Tuple[NFElement, ...]:
    """Phi(y) = sum_i Phi(e_i) y_i(alpha J^-1), a row of length n-1."""
    if len(y) != b.seifert.size:
        raise ValueError(f"expected {b.seifert.size} entries, got {len(y)}")
    width = b.width
    result = [b.field.zero] * width
    for i, entry in enumerate(y):
        for e, c in entry.terms():
            row = b.power_row(i, e)
            for col in range(width):
                if not row[col].is_zero:
                    result[col] = result[col] + row[col] * c
    return tuple(result)


def build_rep(b: RepBuilder, g: MetabelianElement) -> RepMatrix:
    """rho_n(g) = [[alpha^k, Phi(y) J^k], [0, J^k]]."""
    return _assemble(b, phi_extend(b, g.y), g.k)


def _assemble(b: RepBuilder, phi_y: Sequence[NFElement], k: int) -> RepMatrix:
    width = b.width
    field_ = b.field
    jk = jordan_power(width, k)
    top = [b.alpha_power(k)]
    for c in range(width):
        acc = field_.zero
        for r in range(c + 1):
            if jk[r][c] and not phi_y[r].is_zero:
                acc = acc + phi_y[r] * jk[r][c]
        top.append(acc)
    rows = [tuple(top)]
    for r in range(width):
        rows.append(
            (field_.zero,) + tuple(field_.element(jk[r][c]) for c in range(width))
        )
    return RepMatrix(field_, tuple(rows))


def _random_laurent(rng: random.Random, min_terms: int = 0) -> LaurentPoly:
    terms: Dict[int, int] = {}
    for _ in range(rng.randint(min_terms, 2)):
        exponent = rng.randint(-MAX_RANDOM_SHIFT, MAX_RANDOM_SHIFT)
        coeff = rng.choice(
            [c for c in range(-MAX_RANDOM_COEFF, MAX_RANDOM_COEFF + 1) if c != 0]
        )
        terms[exponent] = terms.get(exponent, 0) + coeff
    return LaurentPoly.from_terms(terms)


def random_element(size: int, rng: random.Random) -> MetabelianElement:
    """Random (y, k) with |k| <= 5 and small integer coefficients."""
    y = tuple(_random_laurent(rng) for _ in range(size))
    return MetabelianElement(y, rng.randint(-MAX_RANDOM_SHIFT, MAX_RANDOM_SHIFT))


def random_relation(
    presentation: AlexanderPresentation, rng: random.Random
) -> Tuple[LaurentPoly, ...]:
    """A random element sum_i c_i(t) * row_i(A) of the row span of A(t), each c_i nonzero."""
    size = presentation.size
    total = [LaurentPoly() for _ in range(size)]
    for i in range(size):
        c = _random_laurent(rng, min_terms=1)
        for j in range(size):
            total[j] = total[j] + c * LaurentPoly(presentation.matrix[i][j])
    return tuple(total)


@dataclass(frozen=True)
class HomomorphismCheck:
    passed: bool
    trials_run: int
    witness: Optional[Tuple[MetabelianElement, MetabelianElement]] = None
    failure: Optional[str] = None


def verify_homomorphism(b: RepBuilder, trials: int, seed: int) -> HomomorphismCheck:
    """Check rho on ``trials`` pseudorandom pairs.

    Each trial checks multiplicativity rho(g1 g2) = rho(g1) rho(g2), invariance
    of rho(g1) under adding a random relation to y, and that the images of the
    k = 0 parts commute.
    """
    rng = random.Random(seed)
    size = b.seifert.size
    presentation = alexander_matrix(b.seifert)
    for trial in range(1, trials + 1):
        g1 = random_element(size, rng)
        g2 = random_element(size, rng)
        phi1 = phi_extend(b, g1.y)
        phi2 = phi_extend(b, g2.y)
        rho1 = _assemble(b, phi1, g1.k)
        rho2 = _assemble(b, phi2, g2.k)

        if build_rep(b, semidirect_mul(g1, g2)) != rho1 @ rho2:
            return _failed(b, trial, g1, g2, "multiplicativity")

        relation = random_relation(presentation, rng)
        moved = MetabelianElement(tuple(p + r for p, r in zip(g1.y, relation)), g1.k)
        if phi_extend(b, moved.y) != phi1:
            return _failed(b, trial, g1, moved, "relation invariance")

        h1 = _assemble(b, phi1, 0)
        h2 = _assemble(b, phi2, 0)
        if h1 @ h2 != h2 @ h1:
            return _failed(b, trial, g1, g2, "commutation")
    log.debug(f"{b.seifert.name} level {b.level}: homomorphism check passed ({trials} trials)")
    return HomomorphismCheck(passed=True, trials_run=trials)


def _failed(
    b: RepBuilder, trial: int, g1: MetabelianElement, g2: MetabelianElement, check: str
) -> HomomorphismCheck:
    log.warning(
        f"{b.seifert.name} level {b.level}: {check} failed on trial {trial}: {g1} / {g2}"
    )
    return HomomorphismCheck(passed=False, trials_run=trial, witness=(g1, g2), failure=check)
