"""
Enumerative coding of the totally singular lines of Q(2n, q).

Lines are ordered by the entries of their 2 x (2n+1) RREF basis, read row by row,
the same order as `geometry.enumerate_totally_singular()`. Ranking and unranking
walk down the tree of prefixes of that entry sequence, using the number of lines
that extend each prefix, so the full list is never built.

Counting lines that extend a prefix
-----------------------------------
For pivot columns p1 < p2 the RREF rows A, B look like

    A = 0 ... 0 1 * * 0 * *       (1 at p1, 0 at p2)
    B = 0 ... 0 0 0 0 1 * *       (1 at p2)

and the line is totally singular iff eta(A) = 0, eta(B) = 0 and B(A, B) = 0. Since B
vanishes before p2, the last condition only sees the tail of A's polar image from p2
on. So we enumerate the completions of A that are singular, group them by that tail,
and multiply by the number of singular completions of B orthogonal to it. The B
counts are memoized by (p2, tail, fixed entries of B).

"""
import functools
import threading
from collections import namedtuple

import numpy as np

from polargrassmann.geometry import is_totally_singular
from polargrassmann.linalg import Subspace, all_vectors
from polargrassmann.utils import get_logger, get_progress_bar


class LinePrefix(namedtuple("LinePrefix", ["pivots", "entries"])):
    """
    A prefix descriptor: the pivot columns (p1, p2), or None to allow any, and the
    leading entries of the flattened RREF basis.

    """
    def __new__(cls, pivots=None, entries=()):
        return super().__new__(cls, None if pivots is None else tuple(pivots), tuple(int(e) for e in entries))


class PrefixCounter:
    """
    Counts the totally singular lines extending a prefix.

    Counts are memoized. The memos are shared by all callers: reads don't lock, inserts
    do. A count never changes once computed, so two threads racing to insert the same
    key is harmless.

    """
    def __init__(self, space):
        self.space = space
        self.field = space.field
        self.dim = space.dim
        self.pivot_pairs = [(p1, p2) for p1 in range(self.dim) for p2 in range(p1 + 1, self.dim)]
        self.memo = {}
        self._completion_memo = {}
        self._templates = {}
        self._lock = threading.Lock()

    def _template(self, p1, p2):
        """
        Entries forced by the pivot choice over the whole flattened basis: 0 or 1 where
        forced, -1 where free.

        """
        tmpl = self._templates.get((p1, p2))
        if tmpl is None:
            d = self.dim
            tmpl = -np.ones(2 * d, dtype=np.int16)
            tmpl[:p1] = 0
            tmpl[p1] = 1
            tmpl[p2] = 0
            tmpl[d:d + p2] = 0
            tmpl[d + p2] = 1
            tmpl.flags.writeable = False
            self._templates[(p1, p2)] = tmpl
        return tmpl

    def check_prefix(self, prefix):
        if not isinstance(prefix, LinePrefix):
            prefix = LinePrefix(*prefix)
        if prefix.pivots is not None:
            if len(prefix.pivots) != 2 or not 0 <= prefix.pivots[0] < prefix.pivots[1] < self.dim:
                raise ValueError("pivot columns must satisfy 0 <= p1 < p2 < {}, got {}".format(
                    self.dim, prefix.pivots))
        if len(prefix.entries) > 2 * self.dim:
            raise ValueError("prefix has {} entries, but a line basis only has {}".format(
                len(prefix.entries), 2 * self.dim))
        if any(not 0 <= e < self.field.q for e in prefix.entries):
            raise ValueError("prefix entries {} are not all elements of GF({})".format(
                prefix.entries, self.field.q))
        return prefix

    def count(self, prefix):
        prefix = self.check_prefix(prefix)
        if prefix.pivots is None:
            return self.total(prefix.entries)
        return self.count_pivots(prefix.pivots, prefix.entries)

    def total(self, entries=()):
        """ Number of lines, with any pivots, whose flattened basis starts with the entries """
        entries = tuple(entries)
        result = self.memo.get(entries)
        if result is None:
            result = sum(self.count_pivots(pivots, entries) for pivots in self.pivot_pairs)
            with self._lock:
                self.memo[entries] = result
        return result

    def count_pivots(self, pivots, entries):
        p1, p2 = pivots
        d = self.dim
        tmpl = self._template(p1, p2)
        length = len(entries)
        fixed = np.array(entries, dtype=np.int16)
        forced = tmpl[:length]
        if np.any((forced >= 0) & (forced != fixed)):
            return 0
        f = self.field
        space = self.space

        if length <= d:
            # Enumerate the completions of A
            a_tmpl = tmpl[:d].copy()
            a_tmpl[:length] = fixed
            free = np.flatnonzero(a_tmpl < 0)
            rows = np.empty((f.q ** len(free), d), dtype=np.uint8)
            rows[:] = np.where(a_tmpl < 0, 0, a_tmpl).astype(np.uint8)
            rows[:, free] = all_vectors(f, len(free))
            rows = rows[space.quadratic(rows) == 0]
            if rows.shape[0] == 0:
                return 0
            tails = space.polar_image(rows)[:, p2:]
            tails, multiplicity = np.unique(tails, axis=0, return_counts=True)
            return sum(int(m) * self.b_completions(p2, tail, ()) for tail, m in zip(tails, multiplicity))

        a = fixed[:d].astype(np.uint8)
        if space.quadratic(a) != 0:
            return 0
        tail = space.polar_image(a)[p2:]
        return self.b_completions(p2, tail, tuple(entries[d + p2 + 1:]))

    def b_completions(self, p2, tail, fixed):
        """
        Number of second rows B with pivot p2, the given entries right after the pivot,
        eta(B) = 0 and B orthogonal to the first row (whose polar image from p2 on is tail).

        """
        key = (p2, np.ascontiguousarray(tail).tobytes(), fixed)
        result = self._completion_memo.get(key)
        if result is None:
            f = self.field
            d = self.dim
            start = p2 + 1 + len(fixed)
            values = all_vectors(f, d - start)
            rows = np.zeros((values.shape[0], d), dtype=np.uint8)
            rows[:, p2] = 1
            rows[:, p2 + 1:start] = fixed
            rows[:, start:] = values
            ok = (self.space.quadratic(rows) == 0) & (f.dot(rows[:, p2:], tail) == 0)
            result = int(np.count_nonzero(ok))
            with self._lock:
                self._completion_memo[key] = result
        return result


class LineEnumerator:
    """
    Rank and unrank totally singular lines of a quadratic space.

    Use `line_enumerator()` to get the shared instance for a space, so that all
    callers benefit from the same memoized counts.

    """
    def __init__(self, space, log=None):
        if space.n < 2:
            raise ValueError("Q({},{}) has no totally singular lines".format(2 * space.n, space.q))
        if log is None:
            log = get_logger()
        self.log = log
        self.space = space
        self.counter = PrefixCounter(space)
        self._rank_cache = {}
        self._lock = threading.Lock()

    @property
    def N(self):
        return self.counter.total(())

    def unrank(self, index):
        """
        The line at the given position in the sorted list.

        """
        N = self.N
        if not 0 <= index < N:
            raise ValueError("line index {} out of range [0, {})".format(index, N))
        q = self.space.field.q
        total = self.counter.total
        entries = []
        remaining = index
        for _ in range(2 * self.space.dim):
            for v in range(q):
                c = total(tuple(entries) + (v,))
                if remaining < c:
                    entries.append(v)
                    break
                remaining -= c
        basis = np.array(entries, dtype=np.uint8).reshape(2, self.space.dim)
        pivots = tuple(int(np.flatnonzero(row)[0]) for row in basis)
        line = Subspace(self.space.field, basis, pivots)
        with self._lock:
            self._rank_cache[line.key] = index
        return line

    def rank(self, line):
        """
        Position of a totally singular line in the sorted list.

        :param line: Subspace or 2 x (2n+1) matrix spanning the line
        """
        if not isinstance(line, Subspace):
            line = Subspace.span(self.space.field, line)
        if line.k != 2 or line.ambient_dim != self.space.dim:
            raise ValueError("expected a line in V({},{}), got {}".format(self.space.dim, self.space.q, line))
        cached = self._rank_cache.get(line.key)
        if cached is not None:
            return cached
        if not is_totally_singular(self.space, line):
            raise ValueError("{} is not totally singular".format(line))
        total = self.counter.total
        entries = tuple(int(x) for x in line.basis.reshape(-1))
        index = 0
        for t, e in enumerate(entries):
            for v in range(e):
                index += total(entries[:t] + (v,))
        with self._lock:
            self._rank_cache[line.key] = index
        return index

    def unrank_all(self, show_progress=True):
        """
        Every line, in order, as an (N, 2, 2n+1) array. This also fills the rank cache.

        """
        N = self.N
        self.log.info("Unranking {:,} lines of Q({},{})".format(N, 2 * self.space.n, self.space.q))
        bases = np.zeros((N, 2, self.space.dim), dtype=np.uint8)
        pbar = get_progress_bar(N, title="Unranking", counter=True, show_progress=show_progress)
        for i in pbar(range(N)):
            bases[i] = self.unrank(i).basis
        return bases


@functools.lru_cache(maxsize=None)
def line_enumerator(space):
    return LineEnumerator(space)


def unrank(space, index):
    return line_enumerator(space).unrank(index)


def rank(space, line):
    return line_enumerator(space).rank(line)


def count_prefix(space, prefix):
    """
    Number of totally singular lines whose RREF basis extends the prefix.

    :param prefix: LinePrefix, or a (pivots, entries) pair
    """
    return line_enumerator(space).counter.count(prefix)
