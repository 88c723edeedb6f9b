"""Exact rational polynomials, number fields with dynamic splitting, and linear algebra over them.

Polynomials are dense with :class:`fractions.Fraction` coefficients, lowest
degree first. A :class:`NumberField` is ``Q[x]/(f)`` for a monic squarefree
``f`` that need not be irreducible: whenever an elimination step has to invert
a zero divisor, the modulus is split along ``gcd(rep, f)`` and the computation
is restarted in each branch (dynamic evaluation).
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, List, Sequence, Tuple, TypeVar, Union

from . import logger
from .utils import normalize_minus

Scalar = Union[int, Fraction]
T = TypeVar("T")

# Degree reported for the zero polynomial.
ZERO_DEGREE = -1


class InversionError(ZeroDivisionError):
    """Raised when dividing by the zero polynomial or inverting zero in a field."""


class FieldSplit(ArithmeticError):
    """Raised when a zero divisor has to be inverted; carries the split of the modulus."""

    def __init__(self, event: "SplitEvent"):
        super().__init__(
            f"zero divisor modulo {event.parent}: splits into "
            f"({event.factors[0]}) * ({event.factors[1]})"
        )
        self.event = event


def format_terms(terms: Iterable[Tuple[Fraction, int]], var: str) -> str:
    """Render ``(coefficient, exponent)`` pairs in the given order as ASCII."""
    parts: List[str] = []
    for coeff, exp in terms:
        if coeff == 0:
            continue
        magnitude = abs(coeff)
        if exp == 0:
            body = str(magnitude)
        else:
            power = var if exp == 1 else f"{var}^{exp}"
            body = power if magnitude == 1 else f"{magnitude}*{power}"
        if not parts:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(parts) if parts else "0"


def parse_terms(text: str, var: str) -> dict:
    """Parse an ASCII sum of monomials in ``var`` into ``{exponent: coefficient}``.

    Accepts rational coefficients (``3/2*t^2``), implicit products (``2t``),
    negative exponents (``t^-1``) and the U+2212 minus sign.
    """
    cleaned = re.sub(r"\s+", "", normalize_minus(text))
    if not cleaned:
        raise ValueError("empty polynomial string")
    pattern = re.compile(
        rf"([+-]?)(\d+(?:/\d+)?)?(\*?)({re.escape(var)}(?:\^(-?\d+))?)?"
    )
    terms: dict = {}
    pos = 0
    while pos < len(cleaned):
        match = pattern.match(cleaned, pos)
        sign, coeff, star, power, exp = match.groups()  # type: ignore[union-attr]
        if match.end() == pos or (coeff is None and power is None):  # type: ignore[union-attr]
            raise ValueError(f"cannot parse {text!r} near position {pos}")
        if star and (coeff is None or power is None):
            raise ValueError(f"dangling '*' in {text!r}")
        if pos > 0 and not sign:
            raise ValueError(f"missing sign between terms in {text!r}")
        value = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            value = -value
        exponent = (int(exp) if exp else 1) if power else 0
        terms[exponent] = terms.get(exponent, Fraction(0)) + value
        pos = match.end()  # type: ignore[union-attr]
    return {e: c for e, c in terms.items() if c != 0}


class Poly:
    """Dense univariate polynomial over Q, coefficients lowest degree first.

    Trailing zeros are stripped, so the zero polynomial is the empty tuple and
    its degree is ``ZERO_DEGREE``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        values = [Fraction(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def _from_fractions(cls, values: List[Fraction]) -> "Poly":
        # values must already be Fractions; the list is consumed
        while values and values[-1] == 0:
            values.pop()
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(values))
        return obj

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, value: Scalar) -> "Poly":
        return cls([value])

    @classmethod
    def monomial(cls, coeff: Scalar, degree: int) -> "Poly":
        if degree < 0:
            raise ValueError("monomial degree must be non-negative")
        return cls([0] * degree + [coeff])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def parse(cls, text: str, var: str = "t") -> "Poly":
        """Parse the output of :meth:`to_string` (either term order)."""
        terms = parse_terms(text, var)
        if any(e < 0 for e in terms):
            raise ValueError(f"negative exponent in polynomial {text!r}")
        if not terms:
            return cls()
        coeffs = [Fraction(0)] * (max(terms) + 1)
        for exp, coeff in terms.items():
            coeffs[exp] = coeff
        return cls(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, degree: int) -> Fraction:
        if 0 <= degree < len(self.coeffs):
            return self.coeffs[degree]
        return Fraction(0)

    def trailing_zeros(self) -> int:
        """Number of vanishing low-order coefficients (the t-adic valuation)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0

    @staticmethod
    def _coerce(other: Any) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return NotImplemented  # type: ignore[return-value]

    def __eq__(self, other: object) -> bool:
        other_poly = Poly._coerce(other)
        if other_poly is NotImplemented:
            return NotImplemented
        return self.coeffs == other_poly.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: Any) -> "Poly":
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        longer, shorter = (
            (self.coeffs, other.coeffs)
            if len(self.coeffs) >= len(other.coeffs)
            else (other.coeffs, self.coeffs)
        )
        result = list(longer)
        for i, c in enumerate(shorter):
            result[i] += c
        return Poly._from_fractions(result)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._from_fractions([-c for c in self.coeffs])

    def __sub__(self, other: Any) -> "Poly":
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "Poly":
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other: Any) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly._from_fractions([c * other for c in self.coeffs])
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly()
        result = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                result[i + j] += a * b
        return Poly._from_fractions(result)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1])
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        return poly_divrem(self, other)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return poly_divrem(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return poly_divrem(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of a division known to be exact."""
        quotient, remainder = poly_divrem(self, other)
        if not remainder.is_zero:
            raise ArithmeticError(f"{other} does not divide {self}")
        return quotient

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self * (1 / self.lc)

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def shift(self, k: int) -> "Poly":
        """Multiply by ``t**k`` (``k >= 0``)."""
        if k < 0:
            raise ValueError("use LaurentPoly for negative shifts")
        if self.is_zero:
            return self
        return Poly([0] * k + list(self.coeffs))

    def __call__(self, value: Any) -> Any:
        """Evaluate by Horner's rule at a rational or any ring element."""
        if self.is_zero:
            return Fraction(0)
        acc: Any = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        return acc

    def to_string(self, var: str = "t", ascending: bool = False) -> str:
        terms = [(c, i) for i, c in enumerate(self.coeffs)]
        if not ascending:
            terms.reverse()
        return format_terms(terms, var)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Poly('{self.to_string()}')"


ZERO = Poly()
ONE = Poly([1])


def poly_divrem(a: Poly, b: Poly) -> Tuple[Poly, Poly]:
    """Return ``(q, r)`` with ``a = q*b + r`` and ``deg r < deg b``."""
    if b.is_zero:
        raise InversionError("division by the zero polynomial")
    rem = list(a.coeffs)
    db = b.degree
    inv_lc = 1 / b.lc
    quotient = [Fraction(0)] * max(len(rem) - db, 0)
    for i in range(len(rem) - db - 1, -1, -1):
        c = rem[i + db] * inv_lc
        quotient[i] = c
        if c:
            for j, bc in enumerate(b.coeffs):
                rem[i + j] -= c * bc
    return Poly._from_fractions(quotient), Poly._from_fractions(rem[:db])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> Tuple[Poly, Poly, Poly]:
    """Return ``(g, s, u)`` with ``s*a + u*b = g`` and ``g`` the monic gcd."""
    r0, r1 = a, b
    s0, s1 = ONE, ZERO
    u0, u1 = ZERO, ONE
    while not r1.is_zero:
        q, r = poly_divrem(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    if r0.is_zero:
        return ZERO, ZERO, ZERO
    scale = 1 / r0.lc
    return r0 * scale, s0 * scale, u0 * scale


@dataclass(frozen=True)
class SquarefreeFactorization:
    """``p = content * prod(g**m for g, m in factors)`` with monic squarefree coprime ``g``."""

    content: Fraction
    factors: Tuple[Tuple[Poly, int], ...]

    def expand(self) -> Poly:
        result = Poly([self.content])
        for factor, multiplicity in self.factors:
            result = result * factor**multiplicity
        return result


def yun_squarefree(p: Poly) -> SquarefreeFactorization:
    """Yun's square-free decomposition over Q; multiplicities strictly increase."""
    if p.is_zero:
        raise ValueError("square-free decomposition of the zero polynomial")
    content = p.lc
    if p.degree == 0:
        return SquarefreeFactorization(content, ())
    f = p.monic()
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    factors: List[Tuple[Poly, int]] = []
    multiplicity = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            factors.append((a, multiplicity))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        multiplicity += 1
    return SquarefreeFactorization(content, tuple(factors))


def bareiss_determinant(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Fraction-free determinant over Q[t]; the empty matrix has determinant 1."""
    n = len(matrix)
    if n == 0:
        return ONE
    a = [list(row) for row in matrix]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k].is_zero:
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def integer_determinant(matrix: Sequence[Sequence[Scalar]]) -> Fraction:
    """Exact determinant of a rational matrix via :func:`bareiss_determinant`."""
    return bareiss_determinant([[Poly([x]) for x in row] for row in matrix]).coeff(0)


@dataclass(frozen=True)
class NumberField:
    """``Q[x]/(modulus)`` for a monic squarefree modulus of degree at least 1."""

    modulus: Poly

    def __post_init__(self) -> None:
        if self.modulus.degree < 1:
            raise ValueError(f"modulus {self.modulus} must have degree at least 1")
        if self.modulus.lc != 1:
            raise ValueError(f"modulus {self.modulus} must be monic")
        if poly_gcd(self.modulus, self.modulus.derivative()).degree > 0:
            raise ValueError(f"modulus {self.modulus} must be squarefree")

    @property
    def degree(self) -> int:
        return self.modulus.degree

    def element(self, rep: Union[Poly, Scalar]) -> "NFElement":
        if not isinstance(rep, Poly):
            rep = Poly([rep])
        return NFElement(self, rep)

    @property
    def zero(self) -> "NFElement":
        return NFElement(self, ZERO, reduced=True)

    @property
    def one(self) -> "NFElement":
        return NFElement(self, ONE, reduced=True)

    @property
    def gen(self) -> "NFElement":
        """The class of ``x``; plays the role of the root ``alpha``."""
        return NFElement(self, Poly.x())

    def __str__(self) -> str:
        return f"Q[a]/({self.modulus.to_string('a')})"


RATIONALS = NumberField(Poly.x())


@dataclass(frozen=True)
class SplitEvent:
    """A zero divisor revealed ``parent = factors[0] * factors[1]`` (coprime, monic)."""

    parent: Poly
    factors: Tuple[Poly, Poly]

    def __post_init__(self) -> None:
        first, second = self.factors
        if first.degree < 1 or second.degree < 1:
            raise ValueError("split factors must be nonconstant")
        if first.lc != 1 or second.lc != 1:
            raise ValueError("split factors must be monic")
        if first * second != self.parent:
            raise ValueError("split factors must multiply to the parent modulus")
        if poly_gcd(first, second).degree > 0:
            raise ValueError("split factors must be coprime")


class NFElement:
    """Element of a :class:`NumberField`, stored as a reduced representative."""

    __slots__ = ("field", "rep")

    def __init__(self, field: NumberField, rep: Poly, reduced: bool = False):
        if not reduced and rep.degree >= field.degree:
            rep = rep % field.modulus
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rep", rep)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("NFElement is immutable")

    def _coerce(self, other: Any) -> "NFElement":
        if isinstance(other, NFElement):
            if other.field != self.field:
                raise ValueError(
                    f"mixed moduli: {self.field.modulus} and {other.field.modulus}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return NFElement(self.field, Poly([other]), reduced=True)
        return NotImplemented  # type: ignore[return-value]

    @property
    def is_zero(self) -> bool:
        return self.rep.is_zero

    @property
    def is_one(self) -> bool:
        return self.rep == ONE

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NFElement):
            return self.field == other.field and self.rep == other.rep
        if isinstance(other, (int, Fraction)):
            return self.rep == Poly([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.modulus, self.rep))

    def __add__(self, other: Any) -> "NFElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return NFElement(self.field, self.rep + other.rep, reduced=True)

    __radd__ = __add__

    def __neg__(self) -> "NFElement":
        return NFElement(self.field, -self.rep, reduced=True)

    def __sub__(self, other: Any) -> "NFElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return NFElement(self.field, self.rep - other.rep, reduced=True)

    def __rsub__(self, other: Any) -> "NFElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other: Any) -> "NFElement":
        if isinstance(other, (int, Fraction)):
            return NFElement(self.field, self.rep * other, reduced=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.rep.is_constant or other.rep.is_constant:
            return NFElement(self.field, self.rep * other.rep, reduced=True)
        return NFElement(self.field, self.rep * other.rep)

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        """Multiplicative inverse; raises :class:`FieldSplit` on a zero divisor."""
        result = nf_invert(self)
        if isinstance(result, SplitEvent):
            raise FieldSplit(result)
        return result

    def __truediv__(self, other: Any) -> "NFElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, exponent: int) -> "NFElement":
        base = self if exponent >= 0 else self.inverse()
        exponent = abs(exponent)
        result = self.field.one
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __str__(self) -> str:
        return self.rep.to_string("a", ascending=True)

    def __repr__(self) -> str:
        return f"NFElement({self}, mod {self.field.modulus.to_string('a')})"


def nf_invert(a: NFElement) -> Union[NFElement, SplitEvent]:
    """Inverse of ``a``, or the :class:`SplitEvent` exposed when ``a`` is a zero divisor."""
    if a.is_zero:
        raise InversionError(f"inversion of zero in {a.field}")
    g, s, _ = poly_xgcd(a.rep, a.field.modulus)
    if g.degree == 0:
        return NFElement(a.field, s)
    return SplitEvent(a.field.modulus, (g, a.field.modulus.exact_div(g)))


Matrix = List[List[NFElement]]


def change_field(matrix: Sequence[Sequence[NFElement]], field: NumberField) -> Matrix:
    """Reduce every entry into ``field`` (a branch of the entries' field)."""
    return [[field.element(entry.rep) for entry in row] for row in matrix]


def _check_entries(
    field: NumberField, matrix: Sequence[Sequence[NFElement]], cols: int
) -> None:
    for index, row in enumerate(matrix):
        if len(row) != cols:
            raise ValueError(f"row {index} has {len(row)} entries, expected {cols}")
        for entry in row:
            if not isinstance(entry, NFElement) or entry.field != field:
                raise ValueError(f"mixed moduli in row {index}: expected {field}")


def rref(
    field: NumberField, matrix: Sequence[Sequence[NFElement]], cols: int
) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form; the pivot is the lowest-index nonzero entry.

    Raises :class:`FieldSplit` when the pivot is a zero divisor.
    """
    rows = [list(row) for row in matrix]
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == len(rows):
            break
        pivot_row = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [entry * inv for entry in rows[r]]
        for i in range(len(rows)):
            factor = rows[i][c]
            if i == r or factor.is_zero:
                continue
            rows[i] = [
                x if y.is_zero else x - factor * y for x, y in zip(rows[i], rows[r])
            ]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def nullspace_basis(
    field: NumberField, matrix: Sequence[Sequence[NFElement]], cols: int
) -> Tuple[Tuple[NFElement, ...], ...]:
    """Reduced basis of ``{v : M v = 0}``; raises :class:`FieldSplit` on a zero divisor."""
    rows, pivots = rref(field, matrix, cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        vector = [field.zero] * cols
        vector[free] = field.one
        for row, pivot in zip(rows, pivots):
            vector[pivot] = -row[free]
        basis.append(tuple(vector))
    return tuple(basis)


def row_rank(
    field: NumberField, matrix: Sequence[Sequence[NFElement]], cols: int
) -> int:
    """Rank over ``field``; raises :class:`FieldSplit` on a zero divisor."""
    return len(rref(field, matrix, cols)[1])


@dataclass(frozen=True)
class NullspaceBranch:
    field: NumberField
    basis: Tuple[Tuple[NFElement, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class NullspaceResult:
    """Nullspace per branch field; a single branch unless the modulus split."""

    branches: Tuple[NullspaceBranch, ...]
    splits: Tuple[SplitEvent, ...]

    @property
    def basis(self) -> Tuple[Tuple[NFElement, ...], ...]:
        if len(self.branches) != 1:
            raise ValueError("nullspace computation split; inspect branches instead")
        return self.branches[0].basis


@dataclass(frozen=True)
class RankBranch:
    field: NumberField
    rank: int


@dataclass(frozen=True)
class RankResult:
    branches: Tuple[RankBranch, ...]
    splits: Tuple[SplitEvent, ...]


def _branchwise(
    field: NumberField,
    matrix: Sequence[Sequence[NFElement]],
    cols: int,
    compute: Callable[[NumberField, Matrix], T],
) -> Tuple[List[Tuple[NumberField, T]], List[SplitEvent]]:
    _check_entries(field, matrix, cols)
    log = logger.get_logger(__name__)
    results: List[Tuple[NumberField, T]] = []
    splits: List[SplitEvent] = []
    pending: List[Tuple[NumberField, Matrix]] = [(field, [list(r) for r in matrix])]
    while pending:
        current, rows = pending.pop(0)
        try:
            results.append((current, compute(current, rows)))
        except FieldSplit as exc:
            splits.append(exc.event)
            log.info(f"Dynamic evaluation split: {exc}")
            branches = [NumberField(f) for f in exc.event.factors]
            pending[0:0] = [(b, change_field(rows, b)) for b in branches]
    return results, splits


def nf_nullspace(
    field: NumberField, matrix: Sequence[Sequence[NFElement]], cols: int
) -> NullspaceResult:
    """Exact nullspace of an ``r x cols`` matrix, restarted per branch on a split."""
    results, splits = _branchwise(
        field, matrix, cols, lambda f, rows: nullspace_basis(f, rows, cols)
    )
    return NullspaceResult(
        tuple(NullspaceBranch(f, basis) for f, basis in results), tuple(splits)
    )


def nf_rank(
    field: NumberField, matrix: Sequence[Sequence[NFElement]], cols: int
) -> RankResult:
    """Exact rank of an ``r x cols`` matrix, restarted per branch on a split."""
    results, splits = _branchwise(
        field, matrix, cols, lambda f, rows: row_rank(f, rows, cols)
    )
    return RankResult(tuple(RankBranch(f, rank) for f, rank in results), tuple(splits))


def mat_mul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> List[List[Any]]:
    """Product of two nonempty matrices over any ring with ``+`` and ``*``."""
    inner = len(b)
    cols = len(b[0])
    result = []
    for row in a:
        if len(row) != inner:
            raise ValueError("matrix dimensions do not match")
        out = []
        for j in range(cols):
            acc = row[0] * b[0][j]
            for k in range(1, inner):
                acc = acc + row[k] * b[k][j]
            out.append(acc)
        result.append(out)
    return result
