"""
Dense linear algebra over the small fields of `polargrassmann.field`.

Matrices are 2D numpy uint8 arrays of element encodings. Subspaces are identified
by the reduced row echelon form of any basis, which is unique, so two subspaces are
equal exactly when their RREF matrices are identical.

Row reduction, kernels and determinants are galois' (`FieldArray.row_reduce()`,
`null_space()`, `np.linalg.det`); results come back as uint8 arrays.

"""
import itertools

import numpy as np


def _plain(a):
    return np.asarray(a.view(np.ndarray), dtype=np.uint8)


def _matrix(field, m, what="matrix"):
    a = field.check(m, what)
    if a.ndim != 2:
        raise ValueError("expected a 2D {}, got shape {}".format(what, a.shape))
    return a


def rref(field, m):
    """
    Reduced row echelon form, with the pivot columns read off the reduced rows.

    :param field: FieldTable
    :param m: 2D array
    :return: (rref matrix, rank, tuple of pivot columns)
    """
    a = _matrix(field, m)
    if a.size == 0:
        return a.copy(), 0, ()
    reduced = _plain(field.array(a).row_reduce())
    pivots = tuple(int(np.argmax(row != 0)) for row in reduced if np.any(row))
    return reduced, len(pivots), pivots


def rank(field, m):
    return rref(field, m)[1]


def null_space(field, m):
    """
    Basis of the right kernel {x : m x = 0}, as the rows of a matrix in RREF.
    The result has cols - rank(m) rows (possibly none).

    """
    a = _matrix(field, m)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.uint8)
    kernel = _plain(field.array(a).null_space())
    if kernel.shape[0] == 0:
        return np.zeros((0, cols), dtype=np.uint8)
    return rref(field, kernel)[0]


def solve_linear(field, a, b):
    """
    Find some x with a x = b.

    Free variables are set to zero, so when a has full column rank this is the
    unique solution.

    :return: solution vector, or None if the system is inconsistent
    """
    a = _matrix(field, a)
    b = field.check(b, "right-hand side").reshape(-1)
    if a.shape[0] != b.shape[0]:
        raise ValueError("cannot solve system with matrix of shape {} and right-hand side of length {}".format(
            a.shape, b.shape[0]))
    cols = a.shape[1]
    reduced, r, pivots = rref(field, np.hstack([a, b[:, None]]))
    if cols in pivots:
        # A pivot in the augmented column means 0 = 1 somewhere
        return None
    x = np.zeros(cols, dtype=np.uint8)
    for row, p in enumerate(pivots):
        x[p] = reduced[row, cols]
    return x


def det(field, m):
    a = _matrix(field, m)
    if a.shape[0] != a.shape[1]:
        raise ValueError("determinant needs a square matrix, got shape {}".format(a.shape))
    if a.shape[0] == 0:
        return 1
    return int(np.linalg.det(field.array(a)))


class Subspace:
    """
    A subspace of F_q^d, held as its basis in reduced row echelon form.

    Build one from any spanning set with `Subspace.span()`. The constructor itself
    expects a matrix that's already in RREF with no zero rows and doesn't check.

    """
    def __init__(self, field, basis, pivots):
        self.field = field
        self.basis = np.array(basis, dtype=np.uint8)
        self.basis.flags.writeable = False
        self.pivots = tuple(pivots)
        self.k = self.basis.shape[0]
        self.ambient_dim = self.basis.shape[1]

    @staticmethod
    def span(field, rows, ambient_dim=None):
        rows = field.check(rows, "basis")
        if rows.ndim == 1:
            rows = rows[None, :]
        if rows.shape[0] == 0:
            if ambient_dim is None:
                ambient_dim = rows.shape[1]
            return Subspace(field, np.zeros((0, ambient_dim), dtype=np.uint8), ())
        reduced, r, pivots = rref(field, rows)
        return Subspace(field, reduced[:r], pivots)

    @property
    def key(self):
        """ Entries of the RREF basis as bytes, usable as a dict key """
        return self.basis.tobytes()

    def __eq__(self, other):
        return isinstance(other, Subspace) and other.field == self.field \
            and other.basis.shape == self.basis.shape and np.array_equal(other.basis, self.basis)

    def __hash__(self):
        return hash((self.field.q, self.basis.shape, self.key))

    def __repr__(self):
        return "Subspace(q={}, k={}, basis={})".format(
            self.field.q, self.k, self.basis.tolist())

    def join(self, other):
        """ The sum of two subspaces """
        return Subspace.span(self.field, np.vstack([self.basis, other.basis]), ambient_dim=self.ambient_dim)

    def contains(self, v):
        v = self.field.check(v, "vector").reshape(1, -1)
        return rank(self.field, np.vstack([self.basis, v])) == self.k

    def contains_subspace(self, other):
        return self.join(other).k == self.k

    def intersection(self, other):
        # Pairs (x, y) with x.S = y.T are the left kernel of [S; -T]
        stacked = np.vstack([self.basis, self.field.neg(other.basis)])
        coefs = null_space(self.field, stacked.T)
        if coefs.shape[0] == 0:
            return Subspace.span(self.field, np.zeros((0, self.ambient_dim), dtype=np.uint8),
                                 ambient_dim=self.ambient_dim)
        return Subspace.span(self.field, self.field.matmul(coefs[:, :self.k], self.basis),
                             ambient_dim=self.ambient_dim)


def all_vectors(field, length):
    """
    Every vector of F_q^length, as rows in lexicographic order.

    """
    if length == 0:
        return np.zeros((1, 0), dtype=np.uint8)
    grid = np.indices((field.q,) * length, dtype=np.uint8)
    return grid.reshape(length, -1).T.copy()


def pivot_rows(field, dim, pivot, other_pivots):
    """
    All rows that can appear in an RREF matrix with the given pivot, i.e. 1 at the pivot,
    zero before it and at all the other pivot columns, anything elsewhere.

    """
    free = [c for c in range(pivot + 1, dim) if c not in other_pivots]
    values = all_vectors(field, len(free))
    rows = np.zeros((values.shape[0], dim), dtype=np.uint8)
    rows[:, pivot] = 1
    rows[:, free] = values
    return rows


def enumerate_rref(field, dim, k, row_filter=None, extension_filter=None):
    """
    Enumerate k x dim matrices in reduced row echelon form with no zero rows, i.e. the
    k-subspaces of F_q^dim, optionally restricted by filters applied while the matrices
    are built up one row at a time.

    :param row_filter: takes an (m, dim) array of candidate rows and returns a boolean
        mask of the rows that may be used at all
    :param extension_filter: takes the partial matrices built so far, (m, r, dim), and
        candidate next rows, (c, dim), and returns an (m, c) mask of allowed extensions
    :return: (count, k, dim) uint8 array, grouped by pivot columns (not sorted)
    """
    if not 0 <= k <= dim:
        raise ValueError("cannot have {}-dimensional subspaces of a {}-dimensional space".format(k, dim))
    results = []
    for pivots in itertools.combinations(range(dim), k):
        states = np.zeros((1, 0, dim), dtype=np.uint8)
        for pivot in pivots:
            cands = pivot_rows(field, dim, pivot, pivots)
            if row_filter is not None:
                cands = cands[row_filter(cands)]
            if states.shape[1] > 0 and extension_filter is not None and len(cands) > 0:
                allowed = extension_filter(states, cands)
            else:
                allowed = np.ones((states.shape[0], cands.shape[0]), dtype=bool)
            si, ci = np.nonzero(allowed)
            states = np.concatenate([states[si], cands[ci][:, None, :]], axis=1)
            if states.shape[0] == 0:
                break
        if states.shape[0]:
            results.append(states)
    if not results:
        return np.zeros((0, k, dim), dtype=np.uint8)
    return np.concatenate(results, axis=0)


def sort_bases(bases):
    """
    Sort a stack of basis matrices (m, k, dim) lexicographically by their entries,
    read row by row.

    """
    if bases.shape[0] == 0:
        return bases
    flat = bases.reshape(bases.shape[0], -1)
    # lexsort uses the last key as the primary one
    order = np.lexsort(flat.T[::-1])
    return bases[order]


def format_matrix(m, q):
    """
    Text format: a header line "rows cols q", then one line per row of
    space-separated element encodings.

    """
    m = np.asarray(m)
    lines = ["{} {} {}".format(m.shape[0], m.shape[1], q)]
    for row in m:
        lines.append(" ".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"


def format_vector(v):
    return " ".join(str(int(x)) for x in v) + "\n"


def parse_vector(text, q):
    try:
        values = [int(tok) for tok in text.split()]
    except ValueError:
        raise ValueError("could not read field elements from '{}'".format(text.strip()))
    bad = [x for x in values if not 0 <= x < q]
    if bad:
        raise ValueError("values {} are not elements of GF({})".format(bad, q))
    return np.array(values, dtype=np.uint8)


def _parse_block(lines):
    index = None
    header = lines[0].split()
    if len(header) == 1:
        # Index line, as written by the points listing
        index = int(header[0])
        lines = lines[1:]
        if not lines:
            raise ValueError("matrix block has an index line but no matrix")
        header = lines[0].split()
    if len(header) != 3:
        raise ValueError("matrix header should be 'rows cols q', got '{}'".format(lines[0]))
    rows, cols, q = (int(x) for x in header)
    body = lines[1:]
    if len(body) != rows:
        raise ValueError("header says {} rows, found {}".format(rows, len(body)))
    matrix = np.zeros((rows, cols), dtype=np.uint8)
    for r, line in enumerate(body):
        row = parse_vector(line, q)
        if row.shape[0] != cols:
            raise ValueError("row {} has {} entries, expected {}".format(r, row.shape[0], cols))
        matrix[r] = row
    return index, matrix, q


def parse_matrix(text):
    """
    Read a single matrix in the text format.

    :return: (matrix, q)
    """
    blocks = parse_matrices(text)
    if len(blocks) != 1:
        raise ValueError("expected one matrix, found {}".format(len(blocks)))
    return blocks[0][1], blocks[0][2]


def parse_matrices(text):
    """
    Read blank-line-separated matrices, each optionally preceded by a line holding
    just its index.

    :return: list of (index or None, matrix, q)
    """
    blocks = []
    current = []
    for line in text.splitlines():
        if line.strip():
            current.append(line)
        elif current:
            blocks.append(_parse_block(current))
            current = []
    if current:
        blocks.append(_parse_block(current))
    return blocks
