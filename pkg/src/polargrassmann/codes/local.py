"""
Local encoding and local error correction for line codes (k = 2).

A message is an alternating form m(x, y) = sum_{i<j} m_ij (x_i y_j - x_j y_i): its
coefficients are exactly the coefficients of a functional on the Plücker coordinates.
The codeword entry at position i is m(A, B), for A, B the RREF basis of the i-th
line, divided by the column scalar of that line (1 for RREF bases, but we keep it
explicit so the local and generator encoders agree for any normalization).

Correction works on the totally singular planes through the line of a position. For
the plane <A, B, C> (C the completion from `geometry.plane_completions()`),

    m(A, B) = m(A + C, B) - m(C, B)

and both terms on the right can be read off other positions: if <u, v> is a line
with RREF basis (A', B') at position j then m(u, v) = det(T) m(A', B'), where T is
the change of basis, and det(T) is the minor of [u; v] on the pivot columns of A', B'.
Lines through different planes only meet in the original line, so each error
outside position i spoils at most one vote.

"""
import functools
from collections import namedtuple

import numpy as np
from scipy.special import comb

from polargrassmann.bounds import correction_radius, planes_per_line
from polargrassmann.enumerative import line_enumerator
from polargrassmann.geometry import QuadraticSpace, count_formula, plane_completions
from polargrassmann.linalg import Subspace
from polargrassmann.pluecker import normalize, pluecker_raw, tuple_index
from polargrassmann.utils import get_logger, get_progress_bar


Vote = namedtuple("Vote", ["plane", "positions", "coefficients"])
PositionCorrection = namedtuple("PositionCorrection",
                                ["position", "value", "tie", "votes_for", "votes_against", "estimates"])
# changes: list of (position, old, new, votes_for, votes_against), ties: list of positions
# radius: number of errors the plurality is guaranteed to correct
CorrectionReport = namedtuple("CorrectionReport", ["corrected", "changes", "ties", "radius"])


class AlternatingForm:
    """
    An alternating bilinear form on V(dim, q), given by its coefficients m_ij for
    i < j, ordered like the Plücker coordinates.

    """
    def __init__(self, field, dim, coeffs):
        coeffs = field.check(coeffs, "form coefficients").reshape(-1)
        if coeffs.shape[0] != comb(dim, 2, exact=True):
            raise ValueError("an alternating form on V({}) has {} coefficients, got {}".format(
                dim, comb(dim, 2, exact=True), coeffs.shape[0]))
        self.field = field
        self.dim = dim
        self.coeffs = coeffs
        self.coeffs.flags.writeable = False

    def __repr__(self):
        return "AlternatingForm(dim={}, coeffs={})".format(self.dim, self.coeffs.tolist())

    @staticmethod
    def elementary(field, dim, i, j):
        """ The form x_i y_j - x_j y_i """
        coeffs = np.zeros(comb(dim, 2, exact=True), dtype=np.uint8)
        coeffs[tuple_index((i, j), dim)] = 1
        return AlternatingForm(field, dim, coeffs)

    def __call__(self, x, y):
        """
        m(x, y). x and y can be stacks of vectors with the same leading shape.

        """
        x = np.asarray(x)
        y = np.asarray(y)
        raw = pluecker_raw(self.field, np.stack([x, y], axis=-2))
        return self.field.dot(raw, self.coeffs)


def message_to_form(message, space):
    """
    Read a message (C(2n+1, 2) coefficients) as an alternating form.

    For even q the form sum_i m_{2i-1,2i} vanishes on every totally singular line,
    so messages differing by a multiple of it give the same codeword.

    """
    return AlternatingForm(space.field, space.dim, message)


class ReceivedWord:
    """
    A word of length N(n, 2, q), as received from the channel.

    """
    def __init__(self, n, q, values):
        self.n = n
        self.q = q
        self.space = QuadraticSpace(n, q)
        values = self.space.field.check(values, "received word").reshape(-1)
        N = count_formula(n, 2, q)
        if values.shape[0] != N:
            raise ValueError("words of the line code P({},2,{}) have length {}, got {}".format(n, q, N, values.shape[0]))
        self.values = values
        self.values.flags.writeable = False

    def __len__(self):
        return self.values.shape[0]


class LocalCodec:
    """
    Local encoder and corrector for the line code of a quadratic space.

    Recovery sets are worked out per position on demand. `recovery_table()` works them
    all out at once, which is what `correct_all()` uses.

    """
    def __init__(self, space, log=None):
        if log is None:
            log = get_logger()
        self.log = log
        self.space = space
        self.field = space.field
        self.enumerator = line_enumerator(space)
        self._votes = {}
        self._table = None

    @property
    def N(self):
        return self.enumerator.N

    def _check_position(self, i):
        if not 0 <= i < self.N:
            raise ValueError("position {} out of range [0, {})".format(i, self.N))

    def column_scalar(self, basis):
        return int(normalize(self.field, pluecker_raw(self.field, basis))[1])

    def encode_position(self, form, i):
        if form.dim != self.space.dim:
            raise ValueError("form on V({}) can't encode positions of lines in V({})".format(form.dim, self.space.dim))
        self._check_position(i)
        line = self.enumerator.unrank(i)
        value = form(line.basis[0], line.basis[1])
        return int(self.field.div(value, self.column_scalar(line.basis)))

    def encode(self, form):
        """ The whole codeword, one position at a time """
        return np.array([self.encode_position(form, i) for i in range(self.N)], dtype=np.uint8)

    def votes(self, i):
        """
        The votes for position i, one per totally singular plane through its line.

        """
        self._check_position(i)
        cached = self._votes.get(i)
        if cached is not None:
            return cached
        f = self.field
        line = self.enumerator.unrank(i)
        a, b = line.basis
        own_scalar = self.column_scalar(line.basis)
        votes = []
        for c in plane_completions(self.space, line):
            plane = Subspace.span(f, np.vstack([line.basis, c[None, :]]))
            positions = []
            coefficients = []
            for u in (f.add(a, c), c):
                aux = Subspace.span(f, np.vstack([u, b]))
                j = self.enumerator.rank(aux)
                # Change-of-basis determinant from <u, b> to the RREF basis
                det = pluecker_raw(f, np.vstack([u, b]))[tuple_index(aux.pivots, self.space.dim)]
                coef = f.div(f.mul(det, self.column_scalar(aux.basis)), own_scalar)
                positions.append(j)
                coefficients.append(int(coef))
            votes.append(Vote(plane, tuple(positions), tuple(coefficients)))
        self._votes[i] = votes
        return votes

    def estimates(self, values, i):
        f = self.field
        return [int(f.sub(f.mul(c1, values[j1]), f.mul(c2, values[j2])))
                for _, (j1, j2), (c1, c2) in self.votes(i)]

    def recovery_table(self, show_progress=True):
        """
        Positions and coefficients of every vote at every position, as two
        (N, votes, 2) arrays.

        """
        if self._table is None:
            r = planes_per_line(self.space.n, self.space.q)
            # Fill the rank cache first: ranking the auxiliary lines is then a lookup
            self.enumerator.unrank_all(show_progress=show_progress)
            self.log.info("Computing {} recovery sets per position for {:,} positions".format(r, self.N))
            positions = np.zeros((self.N, r, 2), dtype=np.int64)
            coefficients = np.zeros((self.N, r, 2), dtype=np.uint8)
            pbar = get_progress_bar(self.N, title="Recovery sets", show_progress=show_progress)
            for i in pbar(range(self.N)):
                for v, vote in enumerate(self.votes(i)):
                    positions[i, v] = vote.positions
                    coefficients[i, v] = vote.coefficients
            self._table = positions, coefficients
        return self._table

    def correct_position(self, values, i):
        """
        Plurality of the vote estimates for position i. values[i] itself doesn't vote.

        """
        estimates = self.estimates(values, i)
        counts = np.bincount(estimates, minlength=self.field.q)
        top = int(counts.max())
        tie = int(np.count_nonzero(counts == top)) > 1
        value = None if tie else int(counts.argmax())
        return PositionCorrection(i, value, tie, top, len(estimates) - top, estimates)

    def correct_all(self, values, show_progress=True):
        """
        Correct every position in one pass. All votes read the values as received, so the
        result doesn't depend on the order positions are visited in. Tied positions
        keep their received value and are listed in the report.

        """
        f = self.field
        values = np.asarray(values)
        positions, coefficients = self.recovery_table(show_progress=show_progress)
        estimates = f.sub(
            f.mul(coefficients[:, :, 0], values[positions[:, :, 0]]),
            f.mul(coefficients[:, :, 1], values[positions[:, :, 1]]),
        )
        counts = np.stack([np.count_nonzero(estimates == v, axis=1) for v in range(f.q)], axis=1)
        top = counts.max(axis=1)
        winners = counts.argmax(axis=1).astype(np.uint8)
        tied = np.count_nonzero(counts == top[:, None], axis=1) > 1
        corrected = np.where(tied, values, winners).astype(np.uint8)

        r = positions.shape[1]
        changed = np.flatnonzero(corrected != values)
        changes = [(int(i), int(values[i]), int(corrected[i]), int(top[i]), int(r - top[i])) for i in changed]
        ties = [int(i) for i in np.flatnonzero(tied)]
        radius = correction_radius(self.space.n, self.space.q)
        if changes or ties:
            self.log.info("Changed {} positions, {} ties ({} votes per position, corrects up to {} errors)".format(
                len(changes), len(ties), r, radius))
        return CorrectionReport(corrected, changes, ties, radius)


@functools.lru_cache(maxsize=None)
def local_codec(space):
    return LocalCodec(space)


def _require_planes(space):
    if space.n < 3:
        raise ValueError("local correction needs n >= 3: Q({},{}) has no totally singular planes".format(
            2 * space.n, space.q))


def local_encode_position(form, space, i):
    """
    Codeword entry at position i of the message given by an alternating form, computed
    from the i-th line alone.

    """
    return local_codec(space).encode_position(form, i)


def recovery_sets(space, i):
    """
    The votes for position i. Empty when n < 3.

    """
    if space.n < 3:
        return []
    return local_codec(space).votes(i)


def local_correct_position(received, i):
    """
    :return: PositionCorrection (value None and tie True if the plurality is tied)
    :raises ValueError: when n < 3
    """
    _require_planes(received.space)
    return local_codec(received.space).correct_position(received.values, i)


def correct_all(received, show_progress=True):
    _require_planes(received.space)
    return local_codec(received.space).correct_all(received.values, show_progress=show_progress)
