"""
Plücker coordinates of subspaces, the Grassmann embedding into the exterior power.

The coordinate of a k-space at the increasing k-tuple T of column indices is the
minor of a basis matrix on the columns T. Tuples are ordered lexicographically.

"""
import itertools
from collections import namedtuple

import numpy as np
from scipy.special import comb

from polargrassmann.linalg import Subspace, det


PlueckerVector = namedtuple("PlueckerVector", ["k", "dim", "coords"])


def k_tuples(dim, k):
    """ All increasing k-tuples from range(dim), in lexicographic order, as a (C(dim,k), k) array """
    tuples = list(itertools.combinations(range(dim), k))
    return np.array(tuples, dtype=np.int64).reshape(len(tuples), k)


def _check_tuple(t, dim):
    t = tuple(int(x) for x in t)
    if any(a >= b for a, b in zip(t, t[1:])) or (t and (t[0] < 0 or t[-1] >= dim)):
        raise ValueError("{} is not an increasing tuple of indices in [0, {})".format(t, dim))
    return t


def tuple_index(t, dim):
    """
    Lexicographic position of an increasing tuple among all tuples of its length.

    """
    t = _check_tuple(t, dim)
    k = len(t)
    total = comb(dim, k, exact=True)
    # Count the tuples that come after t
    after = sum(comb(dim - 1 - c, k - i, exact=True) for i, c in enumerate(t))
    return total - 1 - after


def index_tuple(index, dim, k):
    total = comb(dim, k, exact=True)
    if not 0 <= index < total:
        raise ValueError("tuple index {} out of range [0, {})".format(index, total))
    result = []
    c = 0
    for pos in range(k):
        while True:
            # Tuples starting with c at this position
            block = comb(dim - 1 - c, k - 1 - pos, exact=True)
            if index < block:
                break
            index -= block
            c += 1
        result.append(c)
        c += 1
    return tuple(result)


def pluecker_raw(field, bases):
    """
    Un-normalized Plücker coordinates (all k x k minors) of a stack of basis matrices.

    :param bases: (..., k, dim) array
    :return: (..., C(dim, k)) array
    """
    bases = np.asarray(bases)
    k, dim = bases.shape[-2:]
    tuples = k_tuples(dim, k)
    f = field
    if k == 1:
        return bases[..., 0, :].copy()
    if k == 2:
        a = bases[..., 0, :]
        b = bases[..., 1, :]
        i, j = tuples[:, 0], tuples[:, 1]
        return f.sub(f.mul(a[..., i], b[..., j]), f.mul(a[..., j], b[..., i]))
    if k == 3:
        # Cofactor expansion along the first row
        a, b, c = (bases[..., r, :][..., tuples] for r in range(3))

        def minor2(x, y, s, t):
            return f.sub(f.mul(x[..., s], y[..., t]), f.mul(x[..., t], y[..., s]))

        return f.add(
            f.sub(f.mul(a[..., 0], minor2(b, c, 1, 2)), f.mul(a[..., 1], minor2(b, c, 0, 2))),
            f.mul(a[..., 2], minor2(b, c, 0, 1)),
        )
    # Higher grades only appear for n = 4 dual polar spaces: go one minor at a time
    flat = bases.reshape(-1, k, dim)
    out = np.zeros((flat.shape[0], tuples.shape[0]), dtype=np.uint8)
    for m, basis in enumerate(flat):
        for t, cols in enumerate(tuples):
            out[m, t] = det(field, basis[:, cols])
    return out.reshape(bases.shape[:-2] + (tuples.shape[0],))


def normalize(field, coords):
    """
    Scale so that the first nonzero coordinate is 1.

    :return: (normalized coords, scalars) where coords = scalars * normalized
    :raises ValueError: if any coordinate vector is zero (rank-deficient input)
    """
    coords = np.asarray(coords)
    nonzero = coords != 0
    if not np.all(np.any(nonzero, axis=-1)):
        raise ValueError("zero Plücker vector: the basis is rank-deficient")
    first = np.argmax(nonzero, axis=-1)
    scalars = np.take_along_axis(coords, first[..., None], axis=-1)
    return field.mul(coords, field.inv_table[scalars]), scalars[..., 0]


def pluecker(s, field=None):
    """
    Normalized Plücker vector of a subspace.

    :param s: Subspace, or a basis matrix together with the field
    """
    if isinstance(s, Subspace):
        field = s.field
        basis = s.basis
    else:
        if field is None:
            raise ValueError("need a field to take Plücker coordinates of a raw matrix")
        basis = field.check(s, "basis")
    coords, _ = normalize(field, pluecker_raw(field, basis))
    return PlueckerVector(basis.shape[0], basis.shape[1], coords)
