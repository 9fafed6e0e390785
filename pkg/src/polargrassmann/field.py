"""
Arithmetic in the small finite fields GF(q), q = p^e <= 16.

An element is stored as an integer v in [0, q), standing for the polynomial
sum c_i x^i with v = sum c_i p^i (0 is zero, 1 is the identity). This is also
galois' integer representation, so the tables can be read straight off a
galois field class.

Elementwise arithmetic is done by lookup into the precomputed add/mul/neg/inv
tables, so it works on numpy arrays of any shape. Arrays of field elements are
always numpy uint8. Matrix algebra (row reduction, kernels, determinants) goes
through the galois class kept as `FieldTable.gf`.

"""
import functools

import galois
import numpy as np


# Order -> (characteristic, extension degree)
SUPPORTED_ORDERS = {
    2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1),
    8: (2, 3), 9: (3, 2), 11: (11, 1), 13: (13, 1), 16: (2, 4),
}

# Defining polynomials of the extension fields (Conway polynomials).
# These are fixed once and for all: every generator matrix, codeword and text export
# depends on them, bit for bit.
DEFINING_POLYNOMIALS = {
    (2, 2): "x^2 + x + 1",
    (2, 3): "x^3 + x + 1",
    (3, 2): "x^2 + 2x + 2",
    (2, 4): "x^4 + x + 1",
}


def _frozen(arr):
    arr = np.array(arr.view(np.ndarray) if isinstance(arr, np.ndarray) else arr, dtype=np.uint8)
    arr.flags.writeable = False
    return arr


class FieldTable:
    """
    Lookup tables for GF(p^e).

    Don't instantiate this directly: use `field_make()` or `field_for_order()`, which
    cache the tables, so there's one FieldTable per field.

    Attributes:

      - p, e, q: characteristic, extension degree and order
      - modulus: coefficients of the defining polynomial, highest degree first
        (None for prime fields)
      - add_table, mul_table: (q, q) tables
      - neg_table, inv_table: (q,) tables (inv_table[0] is 0 and never used)

    The tables are read-only, so a FieldTable can be shared freely, including
    between threads.

    """
    def __init__(self, p, e):
        if SUPPORTED_ORDERS.get(p ** e) != (p, e):
            raise ValueError("unsupported field GF({}^{}): supported orders are {}".format(
                p, e, ", ".join(str(q) for q in sorted(SUPPORTED_ORDERS))))
        self.p = p
        self.e = e
        self.q = p ** e

        if e == 1:
            gf = galois.GF(p)
            self.modulus = None
        else:
            gf = galois.GF(self.q, irreducible_poly=DEFINING_POLYNOMIALS[(p, e)])
            self.modulus = tuple(int(c) for c in gf.irreducible_poly.coeffs)

        # galois field class, used for the matrix algebra in `linalg`
        self.gf = gf
        x = gf.elements
        self.add_table = _frozen(x[:, None] + x[None, :])
        self.mul_table = _frozen(x[:, None] * x[None, :])
        self.neg_table = _frozen(-x)
        inv = np.zeros(self.q, dtype=np.uint8)
        inv[1:] = np.reciprocal(x[1:]).view(np.ndarray)
        self.inv_table = _frozen(inv)
        # 1 + 1, the coefficient of x_0 y_0 in a polar form
        self.two = int(self.add_table[1, 1])

    def __repr__(self):
        return "FieldTable(GF({}))".format(self.q)

    def __eq__(self, other):
        return isinstance(other, FieldTable) and other.q == self.q

    def __hash__(self):
        return hash(("FieldTable", self.q))

    def __reduce__(self):
        # Unpickle to the cached instance
        return field_make, (self.p, self.e)

    @property
    def elements(self):
        return np.arange(self.q, dtype=np.uint8)

    def check(self, a, what="array"):
        """
        Coerce to a uint8 array, raising a ValueError if any entry is not a valid
        element encoding.

        """
        arr = np.asarray(a)
        if arr.size and (arr.min() < 0 or arr.max() >= self.q):
            raise ValueError("{} has entries outside [0, {}): {}".format(what, self.q, arr))
        return arr.astype(np.uint8)

    def add(self, a, b):
        return self.add_table[a, b]

    def sub(self, a, b):
        return self.add_table[a, self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ValueError("zero has no multiplicative inverse")
        return self.inv_table[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, exponent):
        result = np.ones_like(np.asarray(a, dtype=np.uint8))
        for _ in range(exponent):
            result = self.mul(result, a)
        return result

    def frobenius(self, a):
        """ x -> x^p """
        return self.power(a, self.p)

    def sum(self, a, axis=None):
        """
        Field sum of the entries along an axis (all entries if axis is None).

        """
        a = np.asarray(a)
        if self.e == 1:
            return (a.sum(axis=axis, dtype=np.int64) % self.p).astype(np.uint8)
        if self.p == 2:
            # Polynomials over GF(2) add by XOR of their bit patterns
            return np.bitwise_xor.reduce(a.astype(np.uint8), axis=axis)
        if axis is None:
            a = a.reshape(-1)
            axis = 0
        a = np.moveaxis(a, axis, 0)
        acc = np.zeros(a.shape[1:], dtype=np.uint8)
        for part in a:
            acc = self.add_table[acc, part]
        return acc

    def dot(self, a, b, axis=-1):
        return self.sum(self.mul(a, b), axis=axis)

    def matmul(self, a, b):
        """
        Matrix product of two 2D arrays over the field.

        Prime fields go through a float64 BLAS product, which is exact at these sizes,
        and reduce mod p. Extension fields accumulate one rank-one product at a time.

        """
        a = np.asarray(a)
        b = np.asarray(b)
        if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
            raise ValueError("cannot multiply matrices of shapes {} and {}".format(a.shape, b.shape))
        if self.e == 1:
            prod = np.matmul(a.astype(np.float64), b.astype(np.float64))
            return (prod % self.p).astype(np.uint8)
        acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint8)
        for j in range(a.shape[1]):
            acc = self.add_table[acc, self.mul_table[a[:, j][:, None], b[j][None, :]]]
        return acc

    def array(self, a):
        """ The same elements as a galois FieldArray """
        return self.gf(self.check(a))

    def random(self, rng, shape):
        return rng.integers(0, self.q, size=shape).astype(np.uint8)


@functools.lru_cache(maxsize=None)
def field_make(p, e=1):
    """
    Build (or fetch from the cache) the tables for GF(p^e).

    Raises a ValueError for fields outside the supported set
    {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}.

    """
    return FieldTable(p, e)


def field_for_order(q):
    if q not in SUPPORTED_ORDERS:
        raise ValueError("unsupported field order q={}: supported orders are {}".format(
            q, ", ".join(str(o) for o in sorted(SUPPORTED_ORDERS))))
    return field_make(*SUPPORTED_ORDERS[q])
