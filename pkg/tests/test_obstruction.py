"""Tests for obstruction module."""

import pytest

from alexdec.exactmath import NumberField, Poly, mat_mul, nullspace_basis, row_rank
from alexdec.knot_io import load_bundled_corpus
from alexdec.obstruction import (
    Decomposition,
    FiltrationLevel,
    build_obstruction_system,
    check_equivariance,
    cyclic_module_system,
    cyclic_phi,
    cyclic_t_action,
    decompose_from_filtration,
    equivariance_system,
    exponents_from_projection_dims,
    jordan_power,
    phi1_projection_dim,
    run_filtration,
    solution_dim,
    solution_spaces,
)
from alexdec.seifert import connected_sum, validate_seifert
from alexdec.utils import ConsistencyError

EISENSTEIN = Poly.parse("t^2 - t + 1")
GOLDEN = Poly.parse("t^2 - 3t + 1")


@pytest.fixture
def corpus():
    """Bundled knots by name."""
    return {r.name: validate_seifert(r.name, r.seifert) for r in load_bundled_corpus()}


@pytest.fixture
def two():
    """Q with alpha = 2."""
    return NumberField(Poly.parse("t - 2"))


class TestJordanPower:
    """Test integer powers of the unipotent Jordan block."""

    def test_small_cases(self):
        """Test J^0, J^1 and J^-1."""
        assert jordan_power(3, 0) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        assert jordan_power(3, 1) == ((1, 1, 0), (0, 1, 1), (0, 0, 1))
        assert jordan_power(3, -1) == ((1, -1, 1), (0, 1, -1), (0, 0, 1))

    def test_binomial_formula_matches_iteration(self):
        """Test J^k * J = J^(k+1) for block sizes up to 6 and |k| <= 20."""
        for m in range(1, 7):
            step = jordan_power(m, 1)
            for k in range(-20, 20):
                product = mat_mul(jordan_power(m, k), step)
                assert tuple(tuple(row) for row in product) == jordan_power(m, k + 1)

    def test_invalid_size(self):
        """Test the block size must be positive."""
        with pytest.raises(ValueError):
            jordan_power(0, 1)


class TestObstructionSystem:
    """Test construction and solution of the obstruction system."""

    def test_shape(self, corpus):
        """Test the system has 2g*(n-1) unknowns."""
        system = build_obstruction_system(corpus["10_99"], EISENSTEIN, 3)
        assert system.unknowns == 16
        assert len(system.matrix) == 16
        assert system.unknown_index(2, 1) == 5

    def test_trefoil_level_two(self, corpus):
        """Test the trefoil has a single nonabelian direction."""
        system = build_obstruction_system(corpus["3_1"], EISENSTEIN, 2)
        assert solution_dim(system) == {EISENSTEIN: 1}

    def test_level_below_two(self, corpus):
        """Test n must be at least 2."""
        with pytest.raises(ValueError, match="at least 2"):
            build_obstruction_system(corpus["3_1"], EISENSTEIN, 1)

    def test_non_root_rejected(self, corpus):
        """Test the modulus must divide the Alexander polynomial."""
        with pytest.raises(ValueError, match="does not divide"):
            build_obstruction_system(corpus["3_1"], GOLDEN, 2)

    def test_non_root_has_only_abelian_solutions(self, corpus):
        """Test nullity 0 at level 2 when alpha is not a root."""
        system = build_obstruction_system(corpus["3_1"], GOLDEN, 2, check_root=False)
        assert solution_dim(system) == {GOLDEN: 0}

    def test_projection_dim(self, corpus):
        """Test c_3 = 2 for 10_99."""
        system = build_obstruction_system(corpus["10_99"], EISENSTEIN, 3)
        (space,) = solution_spaces(system)
        assert space.dimension == 4
        assert phi1_projection_dim(space) == {EISENSTEIN: 2}


class TestCyclicModules:
    """Test the equivariance system on Lambda/(t - alpha)^q."""

    def test_hom_dimension_identity(self, two):
        """Test nullity min(q, n-1) for q <= 5 and n <= 7."""
        for q in range(1, 6):
            for n in range(2, 8):
                basis = nullspace_basis(two, cyclic_module_system(q, n, two), q * (n - 1))
                assert len(basis) == min(q, n - 1), (q, n)

    def test_phi1_vanishes_for_short_modules(self, two):
        """Test the first-column rank is 0 exactly when q <= n-2."""
        for q in range(1, 6):
            for n in range(2, 8):
                width = n - 1
                basis = nullspace_basis(two, cyclic_module_system(q, n, two), q * width)
                rows = [[vector[j * width] for j in range(q)] for vector in basis]
                expected = 0 if q <= n - 2 else 1
                assert row_rank(two, rows, q) == expected, (q, n)

    def test_cyclic_phi_equivariant(self, two):
        """Test the canonical Phi is equivariant exactly when n <= q + 1."""
        for q in range(1, 5):
            action = cyclic_t_action(q, two)
            for n in range(2, 7):
                phi = cyclic_phi(q, n, two)
                assert check_equivariance(phi, action, two, n) == (n <= q + 1), (q, n)

    def test_equivariance_level_below_two(self, two):
        """Test the equivariance system needs n >= 2."""
        with pytest.raises(ValueError, match="at least 2"):
            equivariance_system(cyclic_t_action(2, two), two, 1)

    def test_eigenvector_module(self, two):
        """Test t*e = alpha*e only admits Phi supported on the last column."""
        system = equivariance_system([[two.gen]], two, 4)
        basis = nullspace_basis(two, system, 3)
        assert len(basis) == 1
        assert [x.is_zero for x in basis[0]] == [True, True, False]

    def test_cyclic_phi_solves_system(self):
        """Test the vectorized canonical Phi lies in the nullspace."""
        field = NumberField(EISENSTEIN)
        for q in range(1, 5):
            for n in range(2, q + 2):
                vector = [x for row in cyclic_phi(q, n, field) for x in row]
                for equation in cyclic_module_system(q, n, field):
                    total = sum((a * b for a, b in zip(equation, vector)), field.zero)
                    assert total.is_zero, (q, n)


class TestFiltration:
    """Test the filtration and exponent recovery."""

    def test_ten_ninety_nine(self, corpus):
        """Test c = (2, 2, 0), d = (2, 4, 4) and exponents {2, 2}."""
        report, decomposition = run_filtration(corpus["10_99"])
        (root_class,) = report.classes
        assert root_class.projection_dims == (2, 2, 0)
        assert tuple(level.solution_dim for level in root_class.levels) == (2, 4, 4)
        assert [level.cocycle_dim for level in root_class.levels] == [3, 3, 1]
        assert root_class.cohomology_dim == 2
        assert root_class.cocycle_dim == 3
        assert root_class.termination_level == 4
        assert decomposition.exponents == {EISENSTEIN: (2, 2)}

    def test_trefoil(self, corpus):
        """Test a single simple summand."""
        report, decomposition = run_filtration(corpus["3_1"])
        assert report.classes[0].projection_dims == (1, 0)
        assert decomposition == Decomposition({EISENSTEIN: (1,)}, "oracle")

    def test_decomposition_from_report(self, corpus):
        """Test the report alone reproduces the decomposition."""
        report, decomposition = run_filtration(corpus["10_99"])
        rebuilt = decompose_from_filtration(report)
        assert rebuilt == decomposition
        assert rebuilt.provenance == "filtration"

    def test_cap_too_small(self, corpus):
        """Test a cap below the termination level is an error."""
        with pytest.raises(ConsistencyError, match="did not reach"):
            run_filtration(corpus["10_99"], max_n=3)

    def test_reducible_class_splits(self, corpus):
        """Test 3_1 # 4_1 splits its degree-four class into both fields."""
        s = connected_sum(corpus["3_1"], corpus["4_1"])
        report, decomposition = run_filtration(s)
        assert report.split_count >= 1
        assert {c.modulus for c in report.classes} == {EISENSTEIN, GOLDEN}
        assert all(c.factor == EISENSTEIN * GOLDEN for c in report.classes)
        assert decomposition.exponents == {EISENSTEIN: (1,), GOLDEN: (1,)}


class TestExponentRecovery:
    """Test exponents_from_projection_dims."""

    def test_recovery(self):
        """Test counts of each exponent come from successive differences."""
        assert exponents_from_projection_dims((2, 2, 0), 4) == (2, 2)
        assert exponents_from_projection_dims((1, 0), 1) == (1,)
        assert exponents_from_projection_dims((3, 1, 0), 4) == (1, 1, 2)

    def test_not_terminated(self):
        """Test a sequence that does not reach 0."""
        with pytest.raises(ConsistencyError, match="did not terminate"):
            exponents_from_projection_dims((2, 2), 4)

    def test_not_monotone(self):
        """Test an increasing step."""
        with pytest.raises(ConsistencyError, match="not decreasing"):
            exponents_from_projection_dims((1, 2, 0), 3)

    def test_wrong_sum(self):
        """Test the exponents must add up to the multiplicity."""
        with pytest.raises(ConsistencyError, match="expected multiplicity 3"):
            exponents_from_projection_dims((2, 0), 3)

    def test_cocycle_dim(self):
        """Test dim C_n = 1 + c_n."""
        assert FiltrationLevel(level=2, solution_dim=2, projection_dim=2).cocycle_dim == 3
