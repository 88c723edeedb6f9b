"""Tests for exactmath module."""

import random
from fractions import Fraction

import pytest
import sympy

from alexdec.exactmath import (
    RATIONALS,
    FieldSplit,
    InversionError,
    NumberField,
    Poly,
    SplitEvent,
    bareiss_determinant,
    integer_determinant,
    nf_invert,
    nf_nullspace,
    nf_rank,
    nullspace_basis,
    poly_gcd,
    poly_xgcd,
    rref,
    row_rank,
    yun_squarefree,
)

T = sympy.Symbol("t")


def to_sympy(p: Poly):
    return sum(sympy.Rational(c.numerator, c.denominator) * T**i for i, c in enumerate(p.coeffs))


def rational_matrix(rows):
    return [[RATIONALS.element(v) for v in row] for row in rows]


@pytest.fixture
def eisenstein():
    """Q(alpha) with alpha a primitive sixth root of unity."""
    return NumberField(Poly.parse("t^2 - t + 1"))


class TestPolyParsing:
    """Test polynomial rendering and parsing."""

    def test_render_descending_and_ascending(self):
        """Test both term orders."""
        p = Poly([1, -1, 1])
        assert str(p) == "t^2 - t + 1"
        assert p.to_string(ascending=True) == "1 - t + t^2"

    def test_render_rational_coefficient(self):
        """Test rational coefficients keep an explicit product sign."""
        assert str(Poly([0, 0, Fraction(3, 2)])) == "3/2*t^2"
        assert str(Poly([-2])) == "-2"
        assert str(Poly()) == "0"

    def test_parse_either_order(self):
        """Test that parsing accepts both term orders."""
        assert Poly.parse("1 - t + t^2") == Poly([1, -1, 1])
        assert Poly.parse("t^2 - t + 1") == Poly([1, -1, 1])

    def test_parse_implicit_product_and_fraction(self):
        """Test implicit products and rational coefficients."""
        assert Poly.parse("2t - 1") == Poly([-1, 2])
        assert Poly.parse("3/2*t^2") == Poly([0, 0, Fraction(3, 2)])

    def test_parse_unicode_minus(self):
        """Test U+2212 is read as a minus sign."""
        assert Poly.parse("t^2 − 1") == Poly([-1, 0, 1])

    def test_parse_rejects_negative_exponent(self):
        """Test negative exponents belong to Laurent polynomials."""
        with pytest.raises(ValueError, match="negative exponent"):
            Poly.parse("t^-1")

    def test_parse_rejects_missing_sign(self):
        """Test adjacent terms without an operator."""
        with pytest.raises(ValueError, match="missing sign"):
            Poly.parse("t t")

    def test_parse_rejects_empty(self):
        """Test the empty string."""
        with pytest.raises(ValueError, match="empty"):
            Poly.parse("   ")


class TestPolyArithmetic:
    """Test Poly arithmetic."""

    def test_zero_polynomial(self):
        """Test the zero polynomial has degree -1 and compares to 0."""
        assert Poly().degree == -1
        assert Poly([0, 0]) == 0
        assert Poly([0, 0]).is_zero

    def test_immutable(self):
        """Test Poly cannot be mutated."""
        with pytest.raises(AttributeError):
            Poly([1]).coeffs = (Fraction(2),)

    def test_divmod(self):
        """Test division with remainder."""
        q, r = divmod(Poly.parse("t^3 - 1"), Poly.parse("t - 1"))
        assert q == Poly.parse("t^2 + t + 1")
        assert r.is_zero
        q, r = divmod(Poly.parse("t^2 + 1"), Poly.parse("2t"))
        assert q == Poly([0, Fraction(1, 2)])
        assert r == 1

    def test_division_by_zero(self):
        """Test division by the zero polynomial."""
        with pytest.raises(InversionError):
            divmod(Poly.x(), Poly())

    def test_exact_div_failure(self):
        """Test exact_div refuses a nonzero remainder."""
        with pytest.raises(ArithmeticError, match="does not divide"):
            Poly.parse("t^2 + 1").exact_div(Poly.parse("t - 1"))

    def test_evaluation(self):
        """Test Horner evaluation."""
        p = Poly.parse("t^2 - 3*t + 1")
        assert p(1) == -1
        assert p(Fraction(1, 2)) == Fraction(-1, 4)

    def test_gcd_is_monic(self):
        """Test gcd normalization."""
        a = Poly.parse("2t - 2") * Poly.parse("t + 2")
        b = Poly.parse("t - 1") * Poly.parse("t - 3")
        assert poly_gcd(a, b) == Poly.parse("t - 1")
        assert poly_gcd(Poly(), Poly()).is_zero

    def test_divmod_random(self):
        """Test a = q*b + r with deg r < deg b on random inputs."""
        rng = random.Random(11)
        for _ in range(30):
            a = Poly(
                [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(rng.randint(1, 7))]
            )
            b = Poly([rng.randint(-5, 5) for _ in range(rng.randint(0, 3))] + [rng.choice([-3, 1, 2])])
            q, r = divmod(a, b)
            assert q * b + r == a
            assert r.degree < b.degree

    def test_gcd_divides_random(self):
        """Test the gcd divides both arguments and contains their common factor."""
        rng = random.Random(12)
        for _ in range(20):
            common = Poly([rng.randint(-3, 3) for _ in range(rng.randint(1, 3))] + [2])
            a = common * Poly([rng.randint(-4, 4) for _ in range(rng.randint(0, 3))] + [1])
            b = common * Poly([rng.randint(-4, 4) for _ in range(rng.randint(0, 3))] + [3])
            g = poly_gcd(a, b)
            assert g.lc == 1
            assert g.divides(a)
            assert g.divides(b)
            assert common.divides(g)

    def test_xgcd_bezout(self):
        """Test s*a + u*b = g on random inputs."""
        rng = random.Random(7)
        for _ in range(20):
            a = Poly([rng.randint(-4, 4) for _ in range(rng.randint(1, 5))] + [1])
            b = Poly([rng.randint(-4, 4) for _ in range(rng.randint(1, 4))] + [2])
            g, s, u = poly_xgcd(a, b)
            assert s * a + u * b == g
            assert g == poly_gcd(a, b)


class TestSquarefree:
    """Test Yun's square-free decomposition."""

    def test_decomposition(self):
        """Test multiplicities come out increasing and expand back."""
        p = Poly([3]) * Poly.parse("t - 1") ** 3 * Poly.parse("t + 1") ** 2 * Poly.parse("t + 2")
        result = yun_squarefree(p)
        assert result.content == 3
        assert result.factors == (
            (Poly.parse("t + 2"), 1),
            (Poly.parse("t + 1"), 2),
            (Poly.parse("t - 1"), 3),
        )
        assert result.expand() == p

    def test_gap_in_multiplicities(self):
        """Test that empty multiplicity levels are omitted."""
        result = yun_squarefree(Poly.parse("t^2 - t + 1") ** 4)
        assert result.factors == ((Poly.parse("t^2 - t + 1"), 4),)

    def test_constant(self):
        """Test a nonzero constant has no factors."""
        assert yun_squarefree(Poly([5])).factors == ()

    def test_zero_rejected(self):
        """Test the zero polynomial has no decomposition."""
        with pytest.raises(ValueError):
            yun_squarefree(Poly())

    def test_matches_sympy(self):
        """Test against sympy.sqf_list on products of random factors."""
        rng = random.Random(3)
        for _ in range(10):
            p = Poly([1])
            for multiplicity in range(1, 4):
                factor = Poly([rng.randint(-3, 3) or 1, rng.randint(-3, 3), 1])
                p = p * factor**multiplicity
            ours = {}
            for factor, multiplicity in yun_squarefree(p).factors:
                ours[multiplicity] = factor
            _, theirs = sympy.sqf_list(to_sympy(p), T)
            assert len(theirs) == len(ours)
            for factor, multiplicity in theirs:
                expected = sympy.Poly(factor, T).monic().all_coeffs()
                got = [sympy.Rational(c.numerator, c.denominator) for c in reversed(ours[multiplicity].coeffs)]
                assert got == expected


class TestDeterminants:
    """Test fraction-free determinants."""

    def test_empty_matrix(self):
        """Test the empty determinant is 1."""
        assert bareiss_determinant([]) == 1

    def test_integer_determinant(self):
        """Test the standard symplectic form."""
        assert integer_determinant([[0, 1], [-1, 0]]) == 1
        assert integer_determinant([[1, 2], [2, 4]]) == 0

    def test_needs_row_swap(self):
        """Test a zero leading entry is pivoted away."""
        matrix = [[Poly(), Poly([1])], [Poly.x(), Poly()]]
        assert bareiss_determinant(matrix) == Poly([0, -1])

    def test_matches_sympy(self):
        """Test random polynomial matrices against sympy."""
        rng = random.Random(11)
        for size in (2, 3, 4):
            rows = [
                [Poly([rng.randint(-3, 3), rng.randint(-3, 3)]) for _ in range(size)]
                for _ in range(size)
            ]
            expected = sympy.Matrix([[to_sympy(p) for p in row] for row in rows]).det()
            assert sympy.expand(to_sympy(bareiss_determinant(rows)) - expected) == 0


class TestNumberField:
    """Test NumberField and NFElement."""

    def test_modulus_validation(self):
        """Test non-monic, constant and non-squarefree moduli are rejected."""
        with pytest.raises(ValueError, match="monic"):
            NumberField(Poly.parse("2t - 1"))
        with pytest.raises(ValueError, match="degree"):
            NumberField(Poly([1]))
        with pytest.raises(ValueError, match="squarefree"):
            NumberField(Poly.parse("t^2 - 2t + 1"))

    def test_reduction(self, eisenstein):
        """Test alpha^2 = alpha - 1 and alpha^6 = 1."""
        alpha = eisenstein.gen
        assert alpha * alpha == alpha - 1
        assert alpha**6 == 1
        assert str(alpha * alpha) == "-1 + a"

    def test_inverse(self, eisenstein):
        """Test the inverse and negative powers."""
        alpha = eisenstein.gen
        assert alpha.inverse() == 1 - alpha
        assert alpha**-1 == 1 - alpha
        assert (alpha / alpha).is_one

    def test_inverse_of_zero(self, eisenstein):
        """Test inverting zero raises InversionError."""
        with pytest.raises(InversionError):
            eisenstein.zero.inverse()

    def test_mixed_moduli(self, eisenstein):
        """Test elements of different fields do not combine."""
        other = NumberField(Poly.parse("t^2 - 3t + 1"))
        with pytest.raises(ValueError, match="mixed moduli"):
            eisenstein.gen + other.gen

    def test_zero_divisor_split(self):
        """Test inverting a zero divisor reports the split of the modulus."""
        field = NumberField(Poly.parse("t^2 - 1"))
        with pytest.raises(FieldSplit) as exc_info:
            (field.gen - 1).inverse()
        assert exc_info.value.event.factors == (Poly.parse("t - 1"), Poly.parse("t + 1"))

    def test_nf_invert_returns_split_event(self):
        """Test nf_invert returns the inverse or the split instead of raising."""
        field = NumberField(Poly.parse("t^2 - 1"))
        assert nf_invert(field.gen) == field.gen
        event = nf_invert(field.gen + 1)
        assert isinstance(event, SplitEvent)
        assert event.parent == field.modulus
        assert set(event.factors) == {Poly.parse("t - 1"), Poly.parse("t + 1")}

    def test_split_event_validation(self):
        """Test SplitEvent rejects factors that do not multiply to the parent."""
        with pytest.raises(ValueError, match="multiply"):
            SplitEvent(Poly.parse("t^2 - 1"), (Poly.parse("t - 1"), Poly.parse("t - 2")))


class TestLinearAlgebra:
    """Test RREF, nullspace and rank."""

    def test_lowest_index_pivot(self):
        """Test RREF swaps rows to the first nonzero entry."""
        rows, pivots = rref(RATIONALS, rational_matrix([[0, 1], [1, 0]]), 2)
        assert pivots == [0, 1]
        assert rows == rational_matrix([[1, 0], [0, 1]])

    def test_nullspace_basis(self):
        """Test the reduced nullspace basis over Q."""
        basis = nullspace_basis(RATIONALS, rational_matrix([[1, 2], [2, 4]]), 2)
        assert basis == (tuple(rational_matrix([[-2, 1]])[0]),)

    def test_rank_without_split(self):
        """Test nf_rank on a field with no zero divisors."""
        result = nf_rank(RATIONALS, rational_matrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]]), 3)
        assert [b.rank for b in result.branches] == [2]
        assert result.splits == ()

    def test_nullspace_splits(self, caplog):
        """Test a zero-divisor pivot restarts the computation in each branch."""
        caplog.set_level("INFO")
        field = NumberField(Poly.parse("t^2 - 1"))
        result = nf_nullspace(field, [[field.gen - 1]], 1)
        assert [b.field.modulus for b in result.branches] == [
            Poly.parse("t - 1"),
            Poly.parse("t + 1"),
        ]
        assert [b.dimension for b in result.branches] == [1, 0]
        assert len(result.splits) == 1
        assert "split" in caplog.text
        with pytest.raises(ValueError, match="split"):
            result.basis

    def test_nullspace_examples(self, eisenstein):
        """Test the identity, the zero matrix and a rank-one matrix over Q(alpha)."""
        identity = rational_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert nf_nullspace(RATIONALS, identity, 3).basis == ()
        zero = rational_matrix([[0, 0, 0], [0, 0, 0]])
        assert len(nf_nullspace(RATIONALS, zero, 3).basis) == 3
        x = eisenstein.gen
        result = nf_nullspace(eisenstein, [[x, eisenstein.one], [x * x, x]], 2)
        assert result.splits == ()
        (vector,) = result.basis
        assert x * vector[0] + vector[1] == 0

    @pytest.mark.parametrize("seed", range(10))
    def test_nullspace_random(self, eisenstein, seed):
        """Test M v = 0 for every basis vector, independence and rank + nullity = cols."""
        rng = random.Random(seed)
        field = RATIONALS if seed % 2 else eisenstein
        rows, cols = rng.randint(1, 4), rng.randint(1, 5)
        def entry():
            return field.element(Poly([rng.randint(-2, 2) for _ in range(field.degree)]))

        matrix = [[entry() for _ in range(cols)] for _ in range(rows)]
        if seed % 3 == 0:
            matrix.append([a + b for a, b in zip(matrix[0], matrix[-1])])
        result = nf_nullspace(field, matrix, cols)
        assert result.splits == ()
        basis = result.basis
        for vector in basis:
            for row in matrix:
                assert sum((a * v for a, v in zip(row, vector)), field.zero).is_zero
        if basis:
            assert row_rank(field, [list(v) for v in basis], cols) == len(basis)
        assert row_rank(field, matrix, cols) + len(basis) == cols

    def test_ragged_matrix(self):
        """Test row length validation."""
        with pytest.raises(ValueError, match="entries"):
            nf_nullspace(RATIONALS, [rational_matrix([[1, 2]])[0], rational_matrix([[1]])[0]], 2)
