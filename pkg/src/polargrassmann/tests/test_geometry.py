import itertools

import numpy as np
import pytest

from polargrassmann.geometry import QuadraticSpace, count_formula, enumerate_totally_singular, eval_quadratic, \
    is_totally_singular, nucleus, perp, planes_through_line
from polargrassmann.linalg import Subspace, enumerate_rref, rank


def unit(space, *indices):
    v = np.zeros(space.dim, dtype=np.uint8)
    for i in indices:
        v[i] = 1
    return v


def test_eval_quadratic():
    space = QuadraticSpace(2, 3)
    assert eval_quadratic(space, unit(space, 0)) == 1
    assert eval_quadratic(space, unit(space, 1)) == 0
    assert eval_quadratic(space, unit(space, 1, 2)) == 1
    assert eval_quadratic(space, unit(space, 0, 1, 2)) == 2
    with pytest.raises(ValueError):
        eval_quadratic(space, [1, 0, 0])


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_polarization_identity(q):
    space = QuadraticSpace(2, q)
    f = space.field
    x = np.array(list(itertools.product(range(q), repeat=2)), dtype=np.uint8)
    eye = np.eye(space.dim, dtype=np.uint8)
    for i, j in itertools.product(range(space.dim), repeat=2):
        for a, b in x:
            u = f.mul(a, eye[i])
            v = f.mul(b, eye[j])
            lhs = space.bilinear(u, v)
            rhs = f.sub(f.sub(space.quadratic(f.add(u, v)), space.quadratic(u)), space.quadratic(v))
            assert lhs == rhs
    m = space.polar_matrix
    assert np.array_equal(m, m.T)


def test_is_totally_singular():
    space = QuadraticSpace(2, 5)
    f = space.field
    assert is_totally_singular(space, Subspace.span(f, [unit(space, 1), unit(space, 3)]))
    assert not is_totally_singular(space, Subspace.span(f, [unit(space, 0)]))
    assert not is_totally_singular(space, Subspace.span(f, [unit(space, 1), unit(space, 2)]))


def test_even_characteristic_needs_the_quadratic_form():
    # <e_0> is orthogonal to everything for q even, but isn't singular
    space = QuadraticSpace(2, 4)
    assert space.bilinear(unit(space, 0), unit(space, 0)) == 0
    assert not is_totally_singular(space, [unit(space, 0)])


@pytest.mark.parametrize("n,k,q,expected", [
    (3, 2, 3, 3640),
    (2, 2, 2, 15),
    (2, 1, 2, 15),
    (2, 2, 3, 40),
    (3, 3, 2, 135),
    (4, 0, 3, 1),
])
def test_count_formula(n, k, q, expected):
    assert count_formula(n, k, q) == expected


@pytest.mark.parametrize("n,k,q,expected", [(2, 1, 2, 15), (2, 2, 3, 40), (3, 3, 2, 135)])
def test_enumeration_examples(n, k, q, expected):
    assert len(enumerate_totally_singular(QuadraticSpace(n, q), k)) == expected


GRID = [(n, k, q) for n in (2, 3) for k in range(1, n + 1) for q in (2, 3, 4, 5)]


@pytest.mark.parametrize("n,k,q", [
    pytest.param(n, k, q, marks=pytest.mark.slow) if (n, q) == (3, 5) else (n, k, q) for n, k, q in GRID
])
def test_enumeration_matches_count_formula(n, k, q):
    space = QuadraticSpace(n, q)
    points = enumerate_totally_singular(space, k)
    assert len(points) == count_formula(n, k, q)
    flat = points.bases.reshape(len(points), -1)
    # Sorted and duplicate-free
    assert len(set(map(bytes, flat))) == len(points)
    order = np.lexsort(flat.T[::-1])
    assert np.array_equal(order, np.arange(len(points)))


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("k", [1, 2])
def test_enumeration_is_complete(q, k):
    space = QuadraticSpace(2, q)
    points = enumerate_totally_singular(space, k)
    listed = set(b.tobytes() for b in points.bases)
    for basis in enumerate_rref(space.field, space.dim, k):
        assert is_totally_singular(space, basis) == (basis.tobytes() in listed)


def test_witt_index():
    for q in (2, 3):
        space = QuadraticSpace(2, q)
        assert len(enumerate_totally_singular(space, 2)) > 0
        # Witt index 2: no totally singular 3-spaces
        with pytest.raises(ValueError):
            enumerate_totally_singular(space, 3)
        singular_3 = [b for b in enumerate_rref(space.field, space.dim, 3) if is_totally_singular(space, b)]
        assert singular_3 == []


def test_points_index():
    space = QuadraticSpace(2, 3)
    points = enumerate_totally_singular(space, 2)
    for i in (0, 7, 39):
        assert points.index(points[i]) == i
    assert points.index(points.bases[7][::-1]) == 7
    with pytest.raises(ValueError):
        points.index(Subspace.span(space.field, [unit(space, 1), unit(space, 2)]))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_nucleus(q):
    space = QuadraticSpace(3, q)
    radical = nucleus(space)
    if q % 2:
        assert radical.k == 0
    else:
        assert radical == Subspace.span(space.field, [unit(space, 0)])


def test_perp():
    space = QuadraticSpace(3, 3)
    f = space.field
    e1_perp = perp(space, Subspace.span(f, [unit(space, 1)]))
    assert e1_perp.k == 2 * space.n
    assert not e1_perp.contains(unit(space, 2))
    assert e1_perp.contains(unit(space, 1))
    rng = np.random.default_rng(5)
    for _ in range(20):
        s = Subspace.span(f, f.random(rng, (rng.integers(1, 4), space.dim)))
        assert perp(space, s).k == space.dim - rank(f, space.polar_image(s.basis))
        # No radical for odd q
        assert perp(space, s).k == space.dim - s.k


@pytest.mark.parametrize("q,expected", [(2, 3), (3, 4)])
def test_planes_through_line(q, expected):
    space = QuadraticSpace(3, q)
    lines = enumerate_totally_singular(space, 2)
    all_planes = enumerate_totally_singular(space, 3).points
    planes = set(p.key for p in all_planes)
    for i in range(0, len(lines), max(len(lines) // 25, 1)):
        line = lines[i]
        through = planes_through_line(space, line)
        assert len(through) == expected
        for plane in through:
            assert plane.k == 3
            assert plane.contains_subspace(line)
            assert plane.key in planes
        for p1, p2 in itertools.combinations(through, 2):
            assert p1.intersection(p2) == line
        # Brute force: every plane containing the line is found
        containing = [p for p in all_planes if p.contains_subspace(line)]
        assert len(containing) == expected


def test_no_planes_when_n_is_2():
    space = QuadraticSpace(2, 3)
    line = enumerate_totally_singular(space, 2)[0]
    assert planes_through_line(space, line) == []


def test_k_out_of_range():
    with pytest.raises(ValueError):
        enumerate_totally_singular(QuadraticSpace(2, 3), 0)
