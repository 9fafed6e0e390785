"""
The parabolic quadric Q(2n, q) and its totally singular subspaces.

We always work with the standard form

    eta(x) = x_0^2 + x_1 x_2 + x_3 x_4 + ... + x_{2n-1} x_{2n}

on V = F_q^{2n+1}. It has Witt index n in every characteristic. Its polar form is

    B(x, y) = eta(x + y) - eta(x) - eta(y) = 2 x_0 y_0 + sum_i (x_{2i-1} y_{2i} + x_{2i} y_{2i-1})

which in characteristic 2 loses the x_0 term, so B has the 1-dimensional radical <e_0>
(the nucleus) and total singularity can't be read off B alone.

"""
import numpy as np

from polargrassmann.field import field_for_order
from polargrassmann.linalg import Subspace, enumerate_rref, null_space, sort_bases, rref
from polargrassmann.utils import get_logger


class QuadraticSpace:
    """
    V(2n+1, q) with the standard parabolic quadratic form.

    All the form evaluations work on arrays of vectors: the last axis is the vector.

    """
    def __init__(self, n, q):
        if n < 1:
            raise ValueError("Witt index must be at least 1, got {}".format(n))
        self.n = n
        self.q = q
        self.field = field_for_order(q)
        self.dim = 2 * n + 1
        # Position each coordinate is paired with by B
        self._partner = np.array([0] + [i + 1 if i % 2 == 1 else i - 1 for i in range(1, self.dim)])

    def __repr__(self):
        return "QuadraticSpace(n={}, q={})".format(self.n, self.q)

    def __eq__(self, other):
        return isinstance(other, QuadraticSpace) and (other.n, other.q) == (self.n, self.q)

    def __hash__(self):
        return hash(("QuadraticSpace", self.n, self.q))

    @property
    def polar_matrix(self):
        m = np.zeros((self.dim, self.dim), dtype=np.uint8)
        m[np.arange(self.dim), self._partner] = 1
        m[0, 0] = self.field.two
        return m

    def _check_length(self, v):
        v = self.field.check(v, "vector")
        if v.shape[-1] != self.dim:
            raise ValueError("vectors in V({}, {}) have length {}, got {}".format(
                self.dim, self.q, self.dim, v.shape[-1]))
        return v

    def quadratic(self, v):
        f = self.field
        v = np.asarray(v)
        terms = np.concatenate([
            f.mul(v[..., :1], v[..., :1]),
            f.mul(v[..., 1::2], v[..., 2::2]),
        ], axis=-1)
        return f.sum(terms, axis=-1)

    def polar_image(self, y):
        """
        The vector M y, where M is the polar matrix, so that B(x, y) = x . (M y).

        """
        y = np.asarray(y)
        image = y[..., self._partner].copy()
        image[..., 0] = self.field.mul(image[..., 0], self.field.two)
        return image

    def bilinear(self, x, y):
        return self.field.dot(x, self.polar_image(y))


def eval_quadratic(space, v):
    v = space._check_length(v)
    if v.ndim != 1:
        raise ValueError("expected a single vector, got shape {}".format(v.shape))
    return int(space.quadratic(v))


def _basis_of(space, s):
    if isinstance(s, Subspace):
        basis = s.basis
    else:
        basis = space.field.check(s, "basis")
        if basis.ndim == 1:
            basis = basis[None, :]
    if basis.shape[-1] != space.dim:
        raise ValueError("subspace lives in dimension {}, not {}".format(basis.shape[-1], space.dim))
    return basis


def is_totally_singular(space, s):
    """
    Check eta vanishes on every basis vector and B on every pair of basis vectors,
    which covers characteristic 2 too.

    :param s: Subspace or a matrix whose rows span the subspace
    """
    basis = _basis_of(space, s)
    if np.any(space.quadratic(basis) != 0):
        return False
    f = space.field
    pairing = f.matmul(basis, space.polar_image(basis).T)
    return not np.any(np.triu(pairing, 1))


def count_formula(n, k, q):
    """
    Number of totally singular k-spaces of Q(2n, q):

        prod_{i=0}^{k-1} (q^{2(n-i)} - 1) / (q^{i+1} - 1)

    """
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (2 * (n - i)) - 1
        den *= q ** (i + 1) - 1
    if num % den:
        raise ValueError("count formula for n={}, k={}, q={} is not an integer".format(n, k, q))
    return num // den


def singular_row_filter(space):
    def _filter(rows):
        return space.quadratic(rows) == 0
    return _filter


def orthogonal_extension_filter(space):
    """
    Allows a candidate row to extend a partial basis if B vanishes between it and
    every row already chosen.

    """
    f = space.field

    def _filter(states, cands):
        images = space.polar_image(cands).T
        allowed = np.ones((states.shape[0], cands.shape[0]), dtype=bool)
        for r in range(states.shape[1]):
            allowed &= f.matmul(states[:, r, :], images) == 0
        return allowed
    return _filter


def enumerate_totally_singular(space, k, log=None):
    """
    All totally singular k-subspaces, as a PolarGrassmannian (sorted list).

    Partial RREF matrices are built row by row. A row is only used if it's singular
    and orthogonal to the rows already chosen, so a prefix is dropped as soon as it
    can't extend to a totally singular subspace.

    """
    if not 1 <= k <= space.n:
        raise ValueError("k must be between 1 and n={}, got {}".format(space.n, k))
    if log is None:
        log = get_logger()
    log.info("Enumerating totally singular {}-spaces of Q({},{})".format(k, 2 * space.n, space.q))
    bases = enumerate_rref(
        space.field, space.dim, k,
        row_filter=singular_row_filter(space),
        extension_filter=orthogonal_extension_filter(space),
    )
    bases = sort_bases(bases)
    log.info("Found {:,} subspaces".format(bases.shape[0]))
    return PolarGrassmannian(space, k, bases)


class PolarGrassmannian:
    """
    The ordered point set of the polar Grassmannian: every totally singular k-space,
    sorted by the entries of its RREF basis. A subspace's position in this list is its
    coordinate index in the code.

    """
    def __init__(self, space, k, bases):
        self.space = space
        self.k = k
        self.bases = np.array(bases, dtype=np.uint8)
        self.bases.flags.writeable = False
        self._points = None
        self._index = None

    def __len__(self):
        return self.bases.shape[0]

    @property
    def N(self):
        return self.bases.shape[0]

    def __getitem__(self, i):
        basis = self.bases[i]
        pivots = tuple(int(np.flatnonzero(row)[0]) for row in basis)
        return Subspace(self.space.field, basis, pivots)

    @property
    def points(self):
        if self._points is None:
            self._points = [self[i] for i in range(len(self))]
        return self._points

    def index(self, s):
        """
        Position of a subspace in the list.

        :raises ValueError: if the subspace isn't one of the points
        """
        if self._index is None:
            self._index = dict((self.bases[i].tobytes(), i) for i in range(len(self)))
        basis = s.basis if isinstance(s, Subspace) else Subspace.span(self.space.field, s).basis
        try:
            return self._index[np.ascontiguousarray(basis).tobytes()]
        except KeyError:
            raise ValueError("{} is not a totally singular {}-space of Q({},{})".format(
                s, self.k, 2 * self.space.n, self.space.q))


def perp(space, s):
    """
    The subspace {v : B(v, x) = 0 for all x in s}.

    """
    basis = _basis_of(space, s)
    if basis.shape[0] == 0:
        return Subspace.span(space.field, np.eye(space.dim, dtype=np.uint8))
    kernel = null_space(space.field, space.polar_image(basis))
    return Subspace.span(space.field, kernel, ambient_dim=space.dim)


def nucleus(space):
    """
    Radical of the polar form: <e_0> in characteristic 2, zero otherwise.

    """
    return perp(space, np.eye(space.dim, dtype=np.uint8))


def plane_completions(space, line):
    """
    For each totally singular plane through a totally singular line, the vector C
    that completes the line's basis to a basis of the plane.

    C is the unique vector of the plane with zeros in the line's pivot columns and
    a leading 1. The rows are sorted lexicographically, which fixes the order of the
    planes.

    :return: (planes, dim) array (no rows when n < 3)
    """
    if not isinstance(line, Subspace):
        line = Subspace.span(space.field, line)
    if line.k != 2:
        raise ValueError("expected a line (2-space), got a {}-space".format(line.k))
    if not is_totally_singular(space, line):
        raise ValueError("{} is not totally singular".format(line))
    f = space.field
    if space.n < 3:
        return np.zeros((0, space.dim), dtype=np.uint8)

    orth = perp(space, line)
    # Clear the line's pivot columns to get a complement of the line inside its perp
    reduced = orth.basis.copy()
    for row, p in zip(line.basis, line.pivots):
        reduced = f.sub(reduced, f.mul(reduced[:, p][:, None], row[None, :]))
    complement, r, _ = rref(f, reduced)
    complement = complement[:r]

    # Projective points of the complement, as leading-1 coefficient vectors
    coefs = enumerate_rref(f, complement.shape[0], 1)[:, 0, :]
    vectors = f.matmul(coefs, complement)
    vectors = vectors[space.quadratic(vectors) == 0]
    return sort_bases(vectors[:, None, :])[:, 0, :]


def planes_through_line(space, line):
    """
    All totally singular planes containing a totally singular line, ordered by their
    completion vectors (see `plane_completions()`). There are none when n < 3.

    """
    if not isinstance(line, Subspace):
        line = Subspace.span(space.field, line)
    completions = plane_completions(space, line)
    return [Subspace.span(space.field, np.vstack([line.basis, c[None, :]])) for c in completions]
