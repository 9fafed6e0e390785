import itertools

import numpy as np
import pytest
from scipy.special import comb

from polargrassmann.field import field_for_order
from polargrassmann.linalg import Subspace, det, enumerate_rref, rank
from polargrassmann.pluecker import index_tuple, k_tuples, normalize, pluecker, pluecker_raw, tuple_index


def random_full_rank(f, rng, k, dim):
    while True:
        m = f.random(rng, (k, dim))
        if rank(f, m) == k:
            return m


def test_coordinate_line():
    f = field_for_order(3)
    s = Subspace.span(f, [[0, 1, 0, 0, 0], [0, 0, 1, 0, 0]])
    vector = pluecker(s)
    assert vector.k == 2 and vector.dim == 5
    expected = np.zeros(10, dtype=np.uint8)
    expected[tuple_index((1, 2), 5)] = 1
    assert np.array_equal(vector.coords, expected)


def test_small_example():
    f = field_for_order(3)
    # Minors of [[1, 0, 2], [0, 1, 1]] on (0,1), (0,2), (1,2): 1, 1, -2
    coords = pluecker([[1, 0, 2], [0, 1, 1]], field=f).coords
    assert coords.tolist() == [1, 1, 1]
    with pytest.raises(ValueError):
        pluecker([[1, 0, 2], [0, 1, 1]])


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_independent_of_basis(q, k):
    f = field_for_order(q)
    rng = np.random.default_rng(k * 10 + q)
    dim = 7
    for _ in range(10):
        m = random_full_rank(f, rng, k, dim)
        t = random_full_rank(f, rng, k, k)
        assert np.array_equal(pluecker(m, field=f).coords, pluecker(f.matmul(t, m), field=f).coords)
        assert np.array_equal(pluecker(m, field=f).coords, pluecker(Subspace.span(f, m)).coords)


def test_raw_coordinates_are_minors():
    f = field_for_order(5)
    rng = np.random.default_rng(2)
    for k in (2, 3, 4):
        m = f.random(rng, (k, 6))
        raw = pluecker_raw(f, m)
        for t, cols in enumerate(k_tuples(6, k)):
            assert raw[t] == det(f, m[:, cols])


def test_rank_deficient():
    f = field_for_order(2)
    with pytest.raises(ValueError):
        pluecker([[1, 1, 0], [1, 1, 0]], field=f)
    with pytest.raises(ValueError):
        normalize(f, np.zeros(3, dtype=np.uint8))


@pytest.mark.parametrize("dim,k", [(5, 2), (7, 3), (6, 1), (4, 4)])
def test_tuple_index(dim, k):
    tuples = list(itertools.combinations(range(dim), k))
    assert tuple_index(tuples[0], dim) == 0
    assert tuple_index(tuples[-1], dim) == comb(dim, k, exact=True) - 1
    for i, t in enumerate(tuples):
        assert tuple_index(t, dim) == i
        assert index_tuple(i, dim, k) == t


def test_tuple_index_errors():
    with pytest.raises(ValueError):
        tuple_index((2, 1), 5)
    with pytest.raises(ValueError):
        tuple_index((0, 5), 5)
    with pytest.raises(ValueError):
        index_tuple(10, 5, 2)


@pytest.mark.parametrize("q", [2, 3])
def test_embedding_is_injective(q):
    f = field_for_order(q)
    bases = enumerate_rref(f, 5, 2)
    coords = pluecker_raw(f, bases)
    normalized, _ = normalize(f, coords)
    assert len(set(map(bytes, normalized))) == bases.shape[0]


@pytest.mark.parametrize("q", [3, 4, 7])
def test_grassmann_pluecker_relations(q):
    # p_ij p_kl - p_ik p_jl + p_il p_jk = 0 for every 4-tuple of columns
    f = field_for_order(q)
    rng = np.random.default_rng(q)
    dim = 6
    for _ in range(20):
        p = pluecker(random_full_rank(f, rng, 2, dim), field=f).coords

        def at(a, b):
            return p[tuple_index((a, b), dim)]

        for i, j, k, l in itertools.combinations(range(dim), 4):
            value = f.add(f.sub(f.mul(at(i, j), at(k, l)), f.mul(at(i, k), at(j, l))), f.mul(at(i, l), at(j, k)))
            assert value == 0


def test_grassmann_pluecker_relations_all_lines_q2():
    f = field_for_order(2)
    dim = 5
    coords = pluecker_raw(f, enumerate_rref(f, dim, 2))
    for i, j, k, l in itertools.combinations(range(dim), 4):
        ij, kl = coords[:, tuple_index((i, j), dim)], coords[:, tuple_index((k, l), dim)]
        ik, jl = coords[:, tuple_index((i, k), dim)], coords[:, tuple_index((j, l), dim)]
        il, jk = coords[:, tuple_index((i, l), dim)], coords[:, tuple_index((j, k), dim)]
        assert not np.any(f.add(f.sub(f.mul(ij, kl), f.mul(ik, jl)), f.mul(il, jk)))
