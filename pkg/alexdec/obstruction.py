"""Obstruction systems, the metabelian filtration and recovery of the exponent multisets.

For a root class field K = Q[x]/(f) with alpha the class of x, a level n >= 2
and a Seifert matrix S of size 2g, the unknown is the 2g x (n-1) matrix Phi
whose row i is the image of the generator e_i. Phi descends to the Alexander
module, twisted so that Phi(t*y) = alpha * Phi(y) * J^-1, iff

    S^T * Phi * J = alpha * S * Phi        (J = J_{n-1} unipotent Jordan block)

The solution dimension d_n and the rank c_n of the first column (the
cohomology class of the solution) determine the exponents q_i of the
decomposition  M (x) C = (+)_alpha (+)_i Lambda/(t - alpha)^q_i  through
c_n = #{q_i >= n - 1}.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import logger
from .exactmath import (
    FieldSplit,
    NFElement,
    NumberField,
    Poly,
    SplitEvent,
    nf_nullspace,
    nf_rank,
    nullspace_basis,
    row_rank,
)
from .seifert import (
    NormalizedAlexanderPoly,
    RootClass,
    SeifertData,
    alexander_matrix,
    alexander_polynomial,
    root_classes,
)
from .utils import ConsistencyError, binomial

log = logger.get_logger(__name__)

PhiMatrix = Tuple[Tuple[NFElement, ...], ...]


@lru_cache(maxsize=256)
def jordan_power(m: int, k: int) -> Tuple[Tuple[int, ...], ...]:
    """J_m**k for any integer k: entry (i, i+p) is binomial(k, p)."""
    if m < 1:
        raise ValueError("Jordan block size must be at least 1")
    return tuple(
        tuple(binomial(k, j - i) if j >= i else 0 for j in range(m)) for i in range(m)
    )


def _equations(
    left: Sequence[Sequence[object]],
    right: Sequence[Sequence[object]],
    field: NumberField,
    width: int,
) -> Tuple[Tuple[NFElement, ...], ...]:
    """Vectorize ``left * Phi * J - right * Phi = 0`` over the unknowns Phi[l][m] (index l*width + m)."""
    size = len(left)
    rows = []
    for i in range(size):
        for j in range(width):
            row = [field.zero] * (size * width)
            for l in range(size):
                coeff = left[i][l]
                if coeff != 0:
                    row[l * width + j] = row[l * width + j] + coeff
                    if j > 0:
                        row[l * width + j - 1] = row[l * width + j - 1] + coeff
                if right[i][l] != 0:
                    row[l * width + j] = row[l * width + j] - right[i][l]
            rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class ObstructionSystem:
    """The linear system S^T Phi J = alpha S Phi over a root class field at level n."""

    seifert: SeifertData
    field: NumberField
    level: int
    matrix: Tuple[Tuple[NFElement, ...], ...]

    @property
    def size(self) -> int:
        return self.seifert.size

    @property
    def width(self) -> int:
        return self.level - 1

    @property
    def unknowns(self) -> int:
        return self.size * self.width

    def unknown_index(self, i: int, j: int) -> int:
        return i * self.width + j


def build_obstruction_system(
    s: SeifertData, f: Poly, n: int, check_root: bool = True
) -> ObstructionSystem:
    """Build the obstruction system for root class modulus ``f`` at level ``n``.

    Args:
        s: Validated Seifert matrix
        f: Monic squarefree modulus
        n: Level, at least 2
        check_root: Require ``f`` to divide the Alexander polynomial

    Returns:
        The vectorized system in 2g*(n-1) unknowns

    Raises:
        ValueError: n < 2, or ``f`` does not divide delta while check_root is set
    """
    if n < 2:
        raise ValueError(f"level must be at least 2, got {n}")
    if check_root:
        delta = alexander_polynomial(alexander_matrix(s)).delta
        if not f.divides(delta):
            raise ValueError(f"{f} does not divide the Alexander polynomial {delta}")
    field_ = NumberField(f)
    alpha = field_.gen
    size = s.size
    left = [[s.matrix[l][i] for l in range(size)] for i in range(size)]
    right = [[alpha * s.matrix[i][l] for l in range(size)] for i in range(size)]
    matrix = _equations(left, right, field_, n - 1)
    return ObstructionSystem(seifert=s, field=field_, level=n, matrix=matrix)


def equivariance_system(
    t_action: Sequence[Sequence[object]], field: NumberField, n: int
) -> Tuple[Tuple[NFElement, ...], ...]:
    """Equations of Phi(t*e_j) * J = alpha * Phi(e_j) for a module with t*e_j = sum_l T[j][l] e_l."""
    if n < 2:
        raise ValueError(f"level must be at least 2, got {n}")
    size = len(t_action)
    alpha = field.gen
    identity = [[alpha if i == j else 0 for j in range(size)] for i in range(size)]
    return _equations(t_action, identity, field, n - 1)


def cyclic_t_action(q: int, field: NumberField) -> List[List[NFElement]]:
    """Matrix of t on Lambda/(t - alpha)^q in the basis e_j = [(t - alpha)^j]."""
    alpha = field.gen
    action = [[field.zero] * q for _ in range(q)]
    for j in range(q):
        action[j][j] = alpha
        if j + 1 < q:
            action[j][j + 1] = field.one
    return action


def cyclic_module_system(
    q: int, n: int, field: NumberField
) -> Tuple[Tuple[NFElement, ...], ...]:
    return equivariance_system(cyclic_t_action(q, field), field, n)


def check_equivariance(
    phi_rows: Sequence[Sequence[NFElement]],
    t_action: Sequence[Sequence[object]],
    field: NumberField,
    n: int,
) -> bool:
    """True iff sum_l T[j][l] Phi_l J == alpha Phi_j for every basis vector e_j."""
    width = n - 1
    jordan = jordan_power(width, 1)
    alpha = field.gen
    for j, action_row in enumerate(t_action):
        for c in range(width):
            lhs = field.zero
            for l, coeff in enumerate(action_row):
                if coeff == 0:
                    continue
                column = sum(
                    (phi_rows[l][m] * jordan[m][c] for m in range(width)), field.zero
                )
                lhs = lhs + column * coeff
            if lhs != alpha * phi_rows[j][c]:
                return False
    return True


def cyclic_phi(q: int, n: int, field: NumberField) -> PhiMatrix:
    """Canonical Phi on Lambda/(t - alpha)^q: Phi(e_0) = (1, 0, ..., 0) and
    Phi(e_j) = alpha * Phi(e_{j-1}) * (J^-1 - I).

    Equivariant when n <= q + 1; larger n is allowed for comparison.
    """
    width = n - 1
    inverse = jordan_power(width, -1)
    step = [
        [inverse[r][c] - (1 if r == c else 0) for c in range(width)] for r in range(width)
    ]
    alpha = field.gen
    row = [field.one] + [field.zero] * (width - 1)
    rows = [tuple(row)]
    for _ in range(1, q):
        row = [
            alpha * sum((row[r] * step[r][c] for r in range(width)), field.zero)
            for c in range(width)
        ]
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class SolutionSpace:
    """Nullspace of an obstruction system over one branch field."""

    system: ObstructionSystem
    field: NumberField
    basis: Tuple[Tuple[NFElement, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def phi_matrix(self, index: int) -> PhiMatrix:
        """Reshape basis vector ``index`` into the 2g x (n-1) matrix Phi."""
        vector = self.basis[index]
        width = self.system.width
        return tuple(
            tuple(vector[i * width : (i + 1) * width]) for i in range(self.system.size)
        )

    def projection_rows(self) -> List[List[NFElement]]:
        """First-column entries phi_1(e_i) of each basis vector."""
        width = self.system.width
        return [
            [vector[i * width] for i in range(self.system.size)] for vector in self.basis
        ]


def solution_spaces(sys: ObstructionSystem) -> Tuple[SolutionSpace, ...]:
    """Exact nullspace per branch field."""
    result = nf_nullspace(sys.field, sys.matrix, sys.unknowns)
    return tuple(SolutionSpace(sys, b.field, b.basis) for b in result.branches)


def solution_dim(sys: ObstructionSystem) -> Dict[Poly, int]:
    """d_n per branch modulus (a single entry unless the modulus split)."""
    return {space.field.modulus: space.dimension for space in solution_spaces(sys)}


def phi1_projection_dim(space: SolutionSpace) -> Dict[Poly, int]:
    """c_n per branch modulus: rank of the first-column entries of the basis."""
    result = nf_rank(space.field, space.projection_rows(), space.system.size)
    return {b.field.modulus: b.rank for b in result.branches}


@dataclass(frozen=True)
class FiltrationLevel:
    level: int
    solution_dim: int
    projection_dim: int

    @property
    def cocycle_dim(self) -> int:
        """dim C_n = 1 + c_n (the coboundary line contributes the 1)."""
        return 1 + self.projection_dim


@dataclass(frozen=True)
class RootClassFiltration:
    """Filtration data for one root class over its final branch modulus."""

    factor: Poly
    modulus: Poly
    multiplicity: int
    levels: Tuple[FiltrationLevel, ...]
    splits: Tuple[SplitEvent, ...] = ()

    @property
    def projection_dims(self) -> Tuple[int, ...]:
        return tuple(level.projection_dim for level in self.levels)

    @property
    def termination_level(self) -> int:
        return self.levels[-1].level

    @property
    def cohomology_dim(self) -> int:
        """dim H^1(pi, C_alpha) = c_2, the number of summands per root."""
        return self.levels[0].projection_dim

    @property
    def cocycle_dim(self) -> int:
        """dim Z^1(pi, C_alpha) = dim C_2."""
        return self.levels[0].cocycle_dim


@dataclass(frozen=True)
class FiltrationReport:
    seifert: SeifertData
    alexander: NormalizedAlexanderPoly
    classes: Tuple[RootClassFiltration, ...]

    @property
    def split_count(self) -> int:
        return sum(len(c.splits) for c in self.classes)


@dataclass(frozen=True)
class Decomposition:
    """Root class modulus -> ascending exponent multiset; equality ignores provenance."""

    exponents: Dict[Poly, Tuple[int, ...]]
    provenance: str = field(default="filtration", compare=False)

    def factors(self) -> List[Poly]:
        return list(self.exponents)

    def as_strings(self, ascending: bool = True) -> Dict[str, List[int]]:
        return {
            f.to_string(ascending=ascending): list(q) for f, q in self.exponents.items()
        }


def exponents_from_projection_dims(cbar: Sequence[int], m: int) -> Tuple[int, ...]:
    """Recover the exponents from c_2, c_3, ... via #{q = e} = c_{e+1} - c_{e+2}.

    Raises:
        ConsistencyError: The sequence does not reach 0, is not monotone, or
            the exponents do not sum to ``m``
    """
    values = list(cbar)
    if not values or values[-1] != 0:
        raise ConsistencyError(f"filtration did not terminate: {values}")
    exponents: List[int] = []
    for e in range(1, len(values)):
        count = values[e - 1] - values[e]
        if count < 0:
            raise ConsistencyError(f"projection dimensions not decreasing: {values}")
        exponents.extend([e] * count)
    if sum(exponents) != m:
        raise ConsistencyError(
            f"exponents {exponents} sum to {sum(exponents)}, expected multiplicity {m}"
        )
    if len(exponents) != values[0]:
        raise ConsistencyError(f"{len(exponents)} summands but c_2 = {values[0]}")
    return tuple(exponents)


def decompose_from_filtration(report: FiltrationReport) -> Decomposition:
    return Decomposition(
        exponents={
            c.modulus: exponents_from_projection_dims(c.projection_dims, c.multiplicity)
            for c in report.classes
        },
        provenance="filtration",
    )


def _filtration_levels(
    s: SeifertData, field_: NumberField, cap: int
) -> Tuple[FiltrationLevel, ...]:
    """Levels n = 2, 3, ... until c_n = 0; raises FieldSplit on a zero divisor."""
    levels: List[FiltrationLevel] = []
    for n in range(2, cap + 1):
        system = build_obstruction_system(s, field_.modulus, n, check_root=False)
        basis = nullspace_basis(field_, system.matrix, system.unknowns)
        space = SolutionSpace(system, field_, basis)
        cbar = row_rank(field_, space.projection_rows(), system.size)
        level = FiltrationLevel(level=n, solution_dim=len(basis), projection_dim=cbar)
        log.debug(
            f"{s.name} mod {field_.modulus}: n={n} d_n={level.solution_dim} c_n={cbar}"
        )
        if levels:
            previous = levels[-1]
            if cbar > previous.projection_dim or level.solution_dim < previous.solution_dim:
                raise ConsistencyError(
                    f"{s.name}: filtration not monotone at n={n} mod {field_.modulus}"
                )
        elif cbar != level.solution_dim:
            raise ConsistencyError(f"{s.name}: c_2 != d_2 mod {field_.modulus}")
        levels.append(level)
        if cbar == 0:
            return tuple(levels)
    raise ConsistencyError(
        f"{s.name}: filtration mod {field_.modulus} did not reach c_n = 0 by n = {cap}"
    )


def filtrate_root_class(
    s: SeifertData, root_class: RootClass, max_n: Optional[int] = None
) -> Tuple[RootClassFiltration, ...]:
    """Run the filtration for one root class, restarting in each branch on a split."""
    cap = max_n if max_n is not None else root_class.multiplicity + 2
    results: List[RootClassFiltration] = []
    pending: List[Tuple[Poly, Tuple[SplitEvent, ...]]] = [(root_class.factor, ())]
    while pending:
        modulus, lineage = pending.pop(0)
        try:
            levels = _filtration_levels(s, NumberField(modulus), cap)
        except FieldSplit as exc:
            log.info(f"{s.name}: root class {modulus} splits ({exc})")
            branch_lineage = lineage + (exc.event,)
            pending[0:0] = [(f, branch_lineage) for f in exc.event.factors]
            continue
        results.append(
            RootClassFiltration(
                factor=root_class.factor,
                modulus=modulus,
                multiplicity=root_class.multiplicity,
                levels=levels,
                splits=lineage,
            )
        )
    return tuple(results)


def run_filtration(
    s: SeifertData, max_n: Optional[int] = None
) -> Tuple[FiltrationReport, Decomposition]:
    """Filtration report and decomposition for every root class of ``s``.

    Args:
        s: Validated Seifert matrix
        max_n: Highest level to try; defaults to multiplicity + 2 per class

    Returns:
        The per-class filtration tables and the recovered decomposition
    """
    alexander = alexander_polynomial(alexander_matrix(s))
    classes: List[RootClassFiltration] = []
    for root_class in root_classes(alexander):
        classes.extend(filtrate_root_class(s, root_class, max_n))
    report = FiltrationReport(seifert=s, alexander=alexander, classes=tuple(classes))
    decomposition = decompose_from_filtration(report)
    log.info(f"{s.name}: filtration decomposition {decomposition.as_strings()}")
    return report, decomposition
