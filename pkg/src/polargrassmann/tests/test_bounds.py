import pytest

from polargrassmann.bounds import correction_radius, dual_polar_parameters, expected_dimension, gaussian_binomial, \
    grassmann_code_parameters, mt1_distance_bound, mt2_distance, planes_per_line, spread_bound
from polargrassmann.geometry import count_formula


@pytest.mark.parametrize("r,q,expected", [(1, 4, 17), (1, 3, 4), (2, 2, 9), (1, 2, 5), (2, 3, 4)])
def test_spread_bound(r, q, expected):
    assert spread_bound(r, q) == expected


@pytest.mark.parametrize("n,k,q,expected", [(3, 2, 2, 16), (2, 1, 2, 6), (3, 2, 3, 33), (3, 1, 3, 33)])
def test_mt1_distance_bound(n, k, q, expected):
    assert mt1_distance_bound(n, k, q) == expected


def test_mt1_needs_k_below_n():
    with pytest.raises(ValueError):
        mt1_distance_bound(3, 3, 2)


@pytest.mark.parametrize("n,q,expected", [(3, 3, 1944), (2, 3, 18), (2, 5, 100)])
def test_mt2_distance(n, q, expected):
    assert mt2_distance(n, q) == expected


def test_mt2_odd_q_only():
    with pytest.raises(ValueError):
        mt2_distance(3, 4)


@pytest.mark.parametrize("n,q,expected", [
    (2, 2, (15, 9, 4)),
    (2, 3, (40, 10, 18)),
    (3, 2, (135, 28, 32)),
    (3, 3, (1120, 35, 468)),
])
def test_dual_polar_parameters(n, q, expected):
    assert dual_polar_parameters(n, q) == expected
    assert dual_polar_parameters(n, q)[0] == count_formula(n, n, q)


def test_dual_polar_unknown():
    with pytest.raises(ValueError):
        dual_polar_parameters(4, 3)
    assert expected_dimension(4, 4, 3) is None


@pytest.mark.parametrize("n,k,q,expected", [(3, 2, 3, 21), (3, 2, 2, 20), (2, 1, 2, 5), (3, 1, 4, 7), (3, 3, 2, 28)])
def test_expected_dimension(n, k, q, expected):
    assert expected_dimension(n, k, q) == expected


def test_grassmann_comparison():
    assert gaussian_binomial(5, 2, 3) == 1210
    assert gaussian_binomial(3, 4, 2) == 0
    N, K = grassmann_code_parameters(3, 2, 3)
    assert K == expected_dimension(3, 2, 3)
    assert N > count_formula(3, 2, 3)


@pytest.mark.parametrize("n,q,votes,radius", [(3, 2, 3, 1), (3, 3, 4, 1), (3, 5, 6, 2), (4, 2, 15, 7), (2, 3, 0, 0)])
def test_local_correction_parameters(n, q, votes, radius):
    assert planes_per_line(n, q) == votes
    assert correction_radius(n, q) == radius
