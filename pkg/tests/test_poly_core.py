import numpy as np
import pytest

from poly_core import (
    DimensionError,
    ParseError,
    Polynomial,
    PolynomialError,
    PolynomialSystem,
    UndeclaredVariableError,
    dehomogenize,
    homogenize,
    parse_polynomial,
    parse_system,
    sum_of_squares,
)


def test_parse_hypersurface(hypersurface):
    assert hypersurface.variables == ("x1", "x2", "x3")
    assert hypersurface.N == 3
    assert hypersurface.n == 1
    assert hypersurface.degrees() == [2]
    assert hypersurface.evaluate([1, 0, -1])[0] == 0


def test_parse_semicolons_comments_and_continuation():
    system = parse_system("# header comment\nvariables: x y\nx^2 +\n  y^2 - 1 ; x - y  # trailing\n")
    assert system.n == 2
    assert system.evaluate([0.5, 0.5]) == pytest.approx([-0.5, 0.0])


def test_parse_fractions_and_imaginary_unit():
    p = parse_polynomial("1/3*x + 2*i*y - i/4", ["x", "y"])
    assert p.evaluate([3, 1]) == pytest.approx(1 + 1.75j)


def test_cubic_fixture_contains_twisted_cubic(cubic_system):
    for s in (0.5, -1.0 / 3.0, 2.0, 0.3 + 0.4j):
        assert np.linalg.norm(cubic_system.evaluate([s, s ** 2, s ** 3])) < 1e-12


def test_undeclared_variable_reports_position():
    with pytest.raises(UndeclaredVariableError) as info:
        parse_system("variables: x y\nx + z\n")
    assert (info.value.line, info.value.column) == (2, 5)


@pytest.mark.parametrize("text", [
    "",
    "# only a comment\n",
    "x + y\n",
    "variables: x\n",
    "variables: x x\nx\n",
    "variables: x\nx/(x + 1)\n",
    "variables: x\n2x\n",
    "variables: x\nx^y\n",
    "variables: x\nx^-1\n",
    "variables: x\n(x + 1\n",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_system(text)


def test_arithmetic_matches_evaluation():
    x = Polynomial.variable(2, 0)
    y = Polynomial.variable(2, 1)
    p = (x + 2 * y) ** 3 - x * y / 4 + 1
    point = [0.3 - 0.1j, -1.2]
    a, b = point
    assert p.evaluate(point) == pytest.approx((a + 2 * b) ** 3 - a * b / 4 + 1)
    assert p.degree() == 3
    assert (p - p).is_zero()
    assert (p - p).degree() == -1
    assert np.float64(2.0) * x == x * 2


def test_mixing_variable_counts_is_rejected():
    with pytest.raises(DimensionError):
        Polynomial.variable(2, 0) + Polynomial.variable(3, 0)
    with pytest.raises(PolynomialError):
        Polynomial.variable(1, 0) / 0


def random_polynomial(rng, nvars, max_degree=4, terms=6):
    coefficients = {}
    for _ in range(terms):
        exps = rng.multinomial(int(rng.integers(0, max_degree + 1)), [1 / nvars] * nvars)
        coefficients[tuple(int(e) for e in exps)] = complex(*rng.normal(size=2))
    return Polynomial(nvars, coefficients)


def random_system(seed):
    rng = np.random.default_rng(seed)
    N = int(rng.integers(1, 7))
    n = int(rng.integers(1, N + 1))
    names = [f"x{k}" for k in range(N)]
    return PolynomialSystem(names, [random_polynomial(rng, N) for _ in range(n)]), rng


@pytest.mark.parametrize("seed", range(100))
def test_jacobian_matches_central_differences(seed):
    system, rng = random_system(seed)
    x = rng.uniform(-1, 1, system.N)
    J = system.jacobian(x)
    assert J.shape == (system.n, system.N)
    h = 1e-6
    for j in range(system.N):
        e = np.zeros(system.N)
        e[j] = h
        column = (system.evaluate(x + e) - system.evaluate(x - e)) / (2 * h)
        assert np.linalg.norm(J[:, j] - column) <= 1e-6 * max(1.0, np.linalg.norm(column))


def test_to_text_reparses_to_the_same_system(cubic_system):
    assert parse_system(cubic_system.to_text()) == cubic_system


def test_sum_of_squares_vanishes_exactly_on_common_zeros():
    system = parse_system("variables: x y z\nx - y\ny^2 - z\nz*x - 1\n")
    g = sum_of_squares(system)
    assert g.n == 1 and g.degrees() == [4]
    assert abs(g.evaluate([1, 1, 1])[0]) == 0
    rng = np.random.default_rng(0)
    for point in rng.uniform(-2, 2, (100, 3)):
        values = system.evaluate(point)
        assert g.evaluate(point)[0].real == pytest.approx(float(np.sum(np.abs(values) ** 2)))
        assert g.evaluate(point)[0].real > 0


def test_homogenize_then_dehomogenize_restores_the_system():
    system = parse_system("variables: x y\nx^3 + 2*x*y - 5\ny - 7\n")
    lifted = homogenize(system, ["x", "y"])
    assert lifted.variables == ("x", "y", "h")
    assert all(len({sum(e) for e in p.terms}) == 1 for p in lifted)
    assert dehomogenize(lifted, "h") == system


@pytest.mark.parametrize("seed", range(50))
def test_homogenize_round_trip_on_random_polynomials(seed):
    rng = np.random.default_rng(1000 + seed)
    N = int(rng.integers(1, 5))
    names = [f"x{k}" for k in range(N)]
    system = PolynomialSystem(names, [random_polynomial(rng, N, terms=int(rng.integers(1, 8)))])
    lifted = homogenize(system, names)
    assert len({sum(e) for e in lifted.polynomials[0].terms}) == 1
    assert dehomogenize(lifted, "h") == system


def test_homogenize_quadratic():
    lifted = homogenize(parse_system("variables: x\nx^2 + x + 1\n"), ["x"])
    assert lifted == parse_system("variables: x h\nx^2 + x*h + h^2\n")


def test_homogenize_leaves_homogeneous_polynomials_alone():
    lifted = homogenize(parse_system("variables: x1 x2\nx1*x2\n"), ["x1", "x2"])
    assert lifted == parse_system("variables: x1 x2 h\nx1*x2\n")


def test_specialize_removes_the_variable():
    system = parse_system("variables: x t\nx^2 - (4 - 3*t)\n")
    at_zero = system.specialize("t", 0)
    assert at_zero.variables == ("x",)
    assert at_zero.evaluate([2])[0] == 0
