import numpy as np
import pytest
from scipy.special import comb

from polargrassmann.bounds import expected_dimension
from polargrassmann.codes.builder import LinearCode, verify_theorems
from polargrassmann.geometry import count_formula
from polargrassmann.linalg import rank
from polargrassmann.pluecker import pluecker_raw


@pytest.fixture(scope="module")
def lines_3():
    return LinearCode.build(2, 2, 3)


@pytest.mark.parametrize("n,k,q,N,K", [
    (2, 2, 3, 40, 10),
    (3, 2, 3, 3640, 21),
    (3, 3, 2, 135, 28),
    (2, 1, 2, 15, 5),
])
def test_parameters(n, k, q, N, K):
    code = LinearCode.build(n, k, q)
    assert code.N == N
    assert code.K == K
    assert code.generator.shape == (comb(2 * n + 1, k, exact=True), N)


@pytest.mark.parametrize("n,k,q", [
    (n, k, q) if (n, q) != (3, 4) else pytest.param(n, k, q, marks=pytest.mark.slow)
    for n in (2, 3) for k in range(1, n + 1) for q in (2, 3, 4)
])
def test_dimension_grid(n, k, q):
    code = LinearCode.build(n, k, q)
    assert code.N == count_formula(n, k, q)
    expected = expected_dimension(n, k, q)
    assert rank(code.field, code.generator) == expected


def test_columns_are_normalized(lines_3):
    g = lines_3.generator
    first = np.argmax(g != 0, axis=0)
    assert np.all(g[first, np.arange(g.shape[1])] == 1)


def test_weight_is_complement_of_hyperplane_section(lines_3):
    f = lines_3.field
    rng = np.random.default_rng(11)
    raw = pluecker_raw(f, lines_3.points.bases)
    for _ in range(20):
        functional = f.random(rng, lines_3.message_length)
        vanishing = int(np.count_nonzero(f.dot(raw, functional) == 0))
        assert lines_3.hyperplane_section_size(functional) == vanishing
        assert lines_3.weight_of_functional(functional) == lines_3.N - vanishing


def test_encode_checks_length(lines_3):
    with pytest.raises(ValueError):
        lines_3.encode([1, 2, 0])


def test_build_rejects_bad_k():
    with pytest.raises(ValueError):
        LinearCode.build(2, 3, 3)
    with pytest.raises(ValueError):
        LinearCode.build(2, 0, 3)


@pytest.mark.parametrize("n,k,q,d", [(2, 2, 3, 18), (2, 2, 2, 4), (2, 1, 2, None), (3, 2, 2, None)])
def test_verify_theorems_passes(n, k, q, d):
    code = LinearCode.build(n, k, q)
    report = verify_theorems(code, show_progress=False)
    assert report.passed, "\n".join(report.lines())
    assert code.dmin is not None
    assert code.dmin_lower == code.dmin == code.dmin_upper
    if d is not None:
        assert report["distance"].observed == d
    if k < n:
        assert report["distance_bound"].passed
    assert ("kernel" in report) == (q % 2 == 0 and k == 2)


def test_verify_theorems_over_budget():
    # 3^10 messages are over the budget, the 1210 x 40 form scan isn't
    code = LinearCode.build(2, 2, 3)
    report = verify_theorems(code, budget=50000, samples=500, seed=3, show_progress=False)
    assert report.passed, "\n".join(report.lines())
    assert code.dmin is None
    assert code.dmin_upper == 18
    assert report["distance_witness"].observed == 18
    assert report["distance_witness"].note == "confirmed"
    assert report["distance_sweep"].observed >= 18


def test_mutated_generator_fails():
    code = LinearCode.build(2, 2, 3)
    generator = code.generator.copy()
    generator[:, 1] = generator[:, 0]
    broken = LinearCode(2, 2, 3, code.points, generator, code.column_scalars)
    report = verify_theorems(broken, show_progress=False)
    assert not report.passed
    assert not report["columns"].passed
    assert any(line.startswith("FAIL columns") for line in report.lines())


def test_zero_column_fails():
    code = LinearCode.build(2, 1, 3)
    generator = code.generator.copy()
    generator[:, 3] = 0
    report = verify_theorems(LinearCode(2, 1, 3, code.points, generator, code.column_scalars), show_progress=False)
    assert not report["columns"].passed
    assert not report.passed


@pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (2, 4)])
def test_kernel_form_for_even_q(n, q):
    code = LinearCode.build(n, 2, q)
    kernel = code.kernel_forms()
    assert kernel.shape[0] == 1
    assert not np.any(code.encode(kernel[0]))


def test_no_kernel_for_odd_q():
    code = LinearCode.build(3, 2, 3)
    assert code.kernel_forms().shape[0] == 0


def test_save_load(tmp_path):
    code = LinearCode.build(2, 2, 3)
    verify_theorems(code, show_progress=False)
    path = str(tmp_path / "code")
    code.save(path)
    # Saving twice replaces the directory
    code.save(path)
    loaded = LinearCode.load(path)
    assert (loaded.n, loaded.k, loaded.q, loaded.N, loaded.K) == (2, 2, 3, 40, 10)
    assert np.array_equal(loaded.generator, code.generator)
    assert np.array_equal(loaded.points.bases, code.points.bases)
    assert loaded.dmin == 18
    assert loaded.notes == code.notes
    assert loaded.points.index(code.points[5]) == 5
