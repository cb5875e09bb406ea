"""Shared fixtures: the three golden systems and seeded random generators."""

from fractions import Fraction

import pytest

import bnpick as b

F = Fraction


def data_two_regular():
    # nodes 0, 1 with values 0, 1 and derivative bounds -1, 1
    return b.InterpolationData(
        nodes=(F(0), F(1)),
        values=(F(0), F(1)),
        derivative_bounds=(F(-1), F(1)),
        residues=(),
    )


def data_mixed():
    # regular node 1 (value 0, bound -1) and singular node 0 (residue -1)
    return b.InterpolationData(
        nodes=(F(1), F(0)),
        values=(F(0),),
        derivative_bounds=(F(-1),),
        residues=(F(-1),),
    )


def data_degenerate():
    # regular node -1/2 (value 0, bound -1) and singular node 1/2 (residue 1)
    return b.InterpolationData(
        nodes=(F(-1, 2), F(1, 2)),
        values=(F(0),),
        derivative_bounds=(F(-1),),
        residues=(F(1),),
    )


@pytest.fixture(scope="session")
def sys1():
    return b.build_system(data_two_regular())


@pytest.fixture(scope="session")
def sys2():
    return b.build_system(data_mixed())


@pytest.fixture(scope="session")
def sys3():
    return b.build_system(data_degenerate())


@pytest.fixture(scope="session")
def theta1(sys1):
    return b.build_theta(sys1)


@pytest.fixture(scope="session")
def theta2(sys2):
    return b.build_theta(sys2)


def rf(num, den=(1,)):
    return b.RationalFunction(b.Polynomial(num), b.Polynomial(den))


def golden_theta_two_regular():
    """Displayed closed form: (1/(2z(z-1))) [[2z^2, -z], [2z, 2z^2-4z+1]]."""
    den = (0, -2, 2)
    return [[rf((0, 0, 2), den), rf((0, -1), den)], [rf((0, 2), den), rf((1, -4, 2), den)]]


def golden_theta_mixed():
    """Displayed closed form: (1/(2z(z-1))) [[2z^2-3z+1, 1-z], [-z, 2z^2-z]]."""
    den = (0, -2, 2)
    return [[rf((1, -3, 2), den), rf((1, -1), den)], [rf((0, -1), den), rf((0, -1, 2), den)]]


def unique_solution():
    """(2z+1)/(2z-1), the unique degenerate-case interpolant."""
    return rf((1, 2), (-1, 2))


STANDARD_SWEEP = (
    b.Parameter.constant(0),
    b.Parameter.constant(1),
    b.Parameter.constant(-2),
    b.Parameter.infinity(),
    b.Parameter.rational(rf((0, 1))),
    b.Parameter.rational(rf((-1,), (0, 1))),
    b.Parameter.rational(rf((2, 1))),
)


# -- seeded random generators ------------------------------------------------


def random_fraction(rng, span=6, den=4, nonzero=False):
    while True:
        value = Fraction(rng.randint(-span, span), rng.randint(1, den))
        if value or not nonzero:
            return value


def random_data(rng, n_max=6, n_min=1):
    n = rng.randint(n_min, n_max)
    ell = rng.randint(0, n)
    pool = [Fraction(k, 2) for k in range(-8, 9)]
    nodes = tuple(rng.sample(pool, n))
    return b.InterpolationData(
        nodes=nodes,
        values=tuple(random_fraction(rng) for _ in range(ell)),
        derivative_bounds=tuple(random_fraction(rng) for _ in range(ell)),
        residues=tuple(random_fraction(rng, nonzero=True) for _ in range(n - ell)),
    )


def exact_det(rows):
    rows = [list(r) for r in rows]
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        sign = 1 if j % 2 == 0 else -1
        total += sign * rows[0][j] * exact_det(minor)
    return total


def random_invertible_system(rng, n_max=5):
    while True:
        data = random_data(rng, n_max=n_max)
        sys_ = b.build_system(data)
        if sys_.invertible:
            return sys_


def random_singular_data(rng, n_max=5):
    """Random data whose Pick matrix is exactly singular.

    The determinant is affine in the first derivative bound, so solving one
    linear equation pins it to a singular value.
    """
    while True:
        data = random_data(rng, n_max=n_max, n_min=2)
        if data.ell == 0:
            continue  # all-singular data has diagonal P, always invertible
        P0 = b.build_pick(_with_gamma1(data, Fraction(0)))
        P1 = b.build_pick(_with_gamma1(data, Fraction(1)))
        b0 = exact_det([[v.re for v in row] for row in P0.rows])
        a = exact_det([[v.re for v in row] for row in P1.rows]) - b0
        if not a:
            continue
        data = _with_gamma1(data, -b0 / a)
        sys_ = b.build_system(data)
        if sys_.inertia.zeros > 0:
            return data


def _with_gamma1(data, gamma1):
    bounds = (gamma1,) + data.derivative_bounds[1:]
    return b.InterpolationData(
        nodes=data.nodes,
        values=data.values,
        derivative_bounds=bounds,
        residues=data.residues,
    )
