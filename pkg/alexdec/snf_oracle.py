"""Smith normal form of A(t) over Q[t]: the reference decomposition the filtration is checked against."""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from . import logger
from .exactmath import ONE, ZERO, Poly, bareiss_determinant, mat_mul, yun_squarefree
from .obstruction import Decomposition
from .seifert import AlexanderPresentation
from .utils import ConsistencyError

log = logger.get_logger(__name__)

PolyMatrix = List[List[Poly]]


@dataclass(frozen=True)
class InvariantFactors:
    """Monic diagonal d_1 | d_2 | ... of the Smith form; ``verified`` when U*A*W = D was checked."""

    factors: Tuple[Poly, ...]
    verified: bool = False

    def product(self) -> Poly:
        result = ONE
        for d in self.factors:
            result = result * d
        return result

    def nontrivial(self) -> Tuple[Poly, ...]:
        return tuple(d for d in self.factors if d.degree != 0)


@dataclass
class _Reduction:
    matrix: PolyMatrix
    left: Optional[PolyMatrix]
    right: Optional[PolyMatrix]


def _identity(n: int) -> PolyMatrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def _swap_rows(red: _Reduction, i: int, j: int) -> None:
    if i == j:
        return
    red.matrix[i], red.matrix[j] = red.matrix[j], red.matrix[i]
    if red.left is not None:
        red.left[i], red.left[j] = red.left[j], red.left[i]


def _swap_cols(red: _Reduction, i: int, j: int) -> None:
    if i == j:
        return
    for row in red.matrix:
        row[i], row[j] = row[j], row[i]
    if red.right is not None:
        for row in red.right:
            row[i], row[j] = row[j], row[i]


def _add_row(red: _Reduction, target: int, source: int, factor: Poly) -> None:
    """row[target] += factor * row[source]."""
    for mat in (red.matrix, red.left):
        if mat is None:
            continue
        mat[target] = [a + factor * b for a, b in zip(mat[target], mat[source])]


def _add_col(red: _Reduction, target: int, source: int, factor: Poly) -> None:
    """col[target] += factor * col[source]."""
    for mat in (red.matrix, red.right):
        if mat is None:
            continue
        for row in mat:
            row[target] = row[target] + factor * row[source]


def _scale_row(red: _Reduction, index: int, factor: Poly) -> None:
    for mat in (red.matrix, red.left):
        if mat is None:
            continue
        mat[index] = [a * factor for a in mat[index]]


def _reduce(matrix: Sequence[Sequence[Poly]], track: bool) -> _Reduction:
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    red = _Reduction(
        matrix=[list(row) for row in matrix],
        left=_identity(rows) if track else None,
        right=_identity(cols) if track else None,
    )
    a = red.matrix
    for k in range(min(rows, cols)):
        while True:
            candidates = [
                (a[i][j].degree, i, j)
                for i in range(k, rows)
                for j in range(k, cols)
                if not a[i][j].is_zero
            ]
            if not candidates:
                return red
            _, pi, pj = min(candidates)
            _swap_rows(red, k, pi)
            _swap_cols(red, k, pj)
            pivot = a[k][k]

            clean = True
            for i in range(k + 1, rows):
                if a[i][k].is_zero:
                    continue
                q, r = divmod(a[i][k], pivot)
                _add_row(red, i, k, -q)
                clean = clean and r.is_zero
            for j in range(k + 1, cols):
                if a[k][j].is_zero:
                    continue
                q, r = divmod(a[k][j], pivot)
                _add_col(red, j, k, -q)
                clean = clean and r.is_zero
            if not clean:
                continue

            offender = next(
                (
                    i
                    for i in range(k + 1, rows)
                    for j in range(k + 1, cols)
                    if not pivot.divides(a[i][j])
                ),
                None,
            )
            if offender is None:
                break
            _add_row(red, k, offender, ONE)

        _scale_row(red, k, Poly([1 / a[k][k].lc]))
    return red


def smith_normal_form(a: AlexanderPresentation, verify: bool = False) -> InvariantFactors:
    """Invariant factors of A(t) over Q[t].

    Args:
        a: Alexander presentation with nonzero determinant
        verify: Also track the transforms and check U*A*W = D

    Returns:
        Monic divisibility chain, one factor per row

    Raises:
        ConsistencyError: The chain or the product check fails
    """
    red = _reduce(a.matrix, track=verify)
    factors = tuple(red.matrix[k][k] for k in range(a.size))
    if any(d.is_zero for d in factors):
        raise ConsistencyError(f"{a.seifert.name}: A(t) is singular over Q(t)")
    for first, second in zip(factors, factors[1:]):
        if not first.divides(second):
            raise ConsistencyError(f"{a.seifert.name}: {first} does not divide {second}")

    inv = InvariantFactors(factors=factors, verified=False)
    product = inv.product()
    det = bareiss_determinant(a.matrix)
    strip = Poly(product.coeffs[product.trailing_zeros() :]).monic()
    if strip != Poly(det.coeffs[det.trailing_zeros() :]).monic():
        raise ConsistencyError(
            f"{a.seifert.name}: product of invariant factors {product} != det A {det}"
        )

    if verify:
        _check_certificate(a, red)
        inv = InvariantFactors(factors=factors, verified=True)
    log.debug(f"{a.seifert.name}: invariant factors {[str(d) for d in factors]}")
    return inv


def _check_certificate(a: AlexanderPresentation, red: _Reduction) -> None:
    assert red.left is not None and red.right is not None
    name = a.seifert.name
    if a.size == 0:
        return
    product = mat_mul(red.left, mat_mul([list(r) for r in a.matrix], red.right))
    for i, row in enumerate(product):
        for j, entry in enumerate(row):
            expected = red.matrix[i][j] if i == j else ZERO
            if entry != expected:
                raise ConsistencyError(f"{name}: U*A*W differs from D at ({i}, {j})")
    for label, transform in (("U", red.left), ("W", red.right)):
        det = bareiss_determinant(transform)
        if det.degree != 0:
            raise ConsistencyError(f"{name}: {label} is not unimodular (det {det})")


def verify_smith_form(a: AlexanderPresentation, inv: InvariantFactors) -> bool:
    """Recompute with transforms; True iff U*A*W = D, U and W are unimodular and D matches ``inv``."""
    try:
        checked = smith_normal_form(a, verify=True)
    except ConsistencyError as e:
        log.warning(f"Smith form certificate failed: {e}")
        return False
    return checked.factors == inv.factors


def local_exponents(inv: InvariantFactors, f: Poly) -> Tuple[int, ...]:
    """Largest e with f**e | d_i for every invariant factor, zeros omitted, ascending."""
    if f.degree < 1:
        raise ValueError(f"local exponents need a nonconstant factor, got {f}")
    exponents = []
    for d in inv.factors:
        e = 0
        while not d.is_zero and f.divides(d):
            d = d.exact_div(f)
            e += 1
        if e:
            exponents.append(e)
    return tuple(sorted(exponents))


def oracle_moduli(inv: InvariantFactors, branch_moduli: Iterable[Poly] = ()) -> List[Poly]:
    """Squarefree classes of the product of the invariant factors.

    A class that some branch moduli properly divide is replaced by them, so
    split classes are keyed the way the filtration reports them.
    """
    product = inv.product()
    product = Poly(product.coeffs[product.trailing_zeros() :])
    branches = list(branch_moduli)
    moduli: List[Poly] = []
    for factor, _ in yun_squarefree(product).factors:
        parts = [b for b in branches if b != factor and b.divides(factor)]
        moduli.extend(parts or [factor])
    return moduli


def oracle_decomposition(inv: InvariantFactors, factors: Iterable[Poly]) -> Decomposition:
    return Decomposition(
        exponents={f: local_exponents(inv, f) for f in factors},
        provenance="oracle",
    )
