"""
Minimum distance and weight distribution of the codes.

Exhaustive scans
----------------
The generator is row-reduced first, so we enumerate the q^K messages on an information
set and not the q^{C(2n+1,k)} coefficient vectors (even q generators are rank-deficient).

The K information rows are split into inner and outer rows. The codewords spanned by the
inner rows are tabulated once (at most 2^16 of them). The outer messages are visited in
reflected base-q Gray code order, so going from one outer word to the next changes one
digit and costs one scaled row addition. For each outer word w, the weights of all
w + t, t in the table, come from a single vectorised comparison t != -w.

The outer space can be split up over worker processes by the value of the first outer
digit. Spectra from the workers are summed, so the result doesn't depend on the
number of processes.

"""
import multiprocessing as mp
from collections import namedtuple
from fractions import Fraction

import numpy as np
from scipy.special import comb

from polargrassmann.field import field_make
from polargrassmann.linalg import enumerate_rref, rref
from polargrassmann.mp_utils import SharedArray
from polargrassmann.pluecker import pluecker_raw
from polargrassmann.utils import get_logger, get_progress_bar


DEFAULT_BUDGET = 2 ** 30
INNER_TABLE_SIZE = 2 ** 16
# Forms per batch in the witness scan
WITNESS_BATCH = 2048


class BudgetExceededError(ValueError):
    def __init__(self, required, budget):
        super().__init__("exhaustive scan needs {:,} steps, more than the budget of {:,}".format(required, budget))
        self.required = required
        self.budget = budget


WitnessResult = namedtuple("WitnessResult", ["weight", "witnesses", "forms_scanned"])
SweepResult = namedtuple("SweepResult", ["weight", "samples"])
SpanResult = namedtuple("SpanResult", ["weight", "count", "rank"])


def information_rows(code):
    """
    A basis of the code: the nonzero rows of the RREF of the generator (K x N).

    """
    reduced, r, _ = rref(code.field, code.generator)
    return reduced[:r]


def reflected_gray(radix, length):
    """
    Loopless reflected Gray code over `length` digits in base `radix` (Knuth's
    Algorithm H). Starts from the all-zero word, which isn't yielded, and yields
    (digit, old value, new value) for each of the following radix^length - 1 steps.

    """
    digits = [0] * length
    focus = list(range(length + 1))
    direction = [1] * length
    while True:
        j = focus[0]
        focus[0] = 0
        if j == length:
            return
        old = digits[j]
        digits[j] += direction[j]
        if digits[j] == 0 or digits[j] == radix - 1:
            direction[j] = -direction[j]
            focus[j] = focus[j + 1]
            focus[j + 1] = j + 1
        yield j, old, digits[j]


def _inner_table(field, rows):
    if rows.shape[0] == 0:
        return np.zeros((1, rows.shape[1]), dtype=np.uint8)
    idx = np.arange(field.q ** rows.shape[0])
    # Digit j of the table index is the coefficient of inner row j
    coefs = np.stack([(idx // field.q ** j) % field.q for j in range(rows.shape[0])], axis=1).astype(np.uint8)
    return field.matmul(coefs, rows)


def _span_basis(field, basis, words):
    if words.shape[0] == 0:
        return basis
    reduced, r, _ = rref(field, np.vstack([basis, words]))
    return reduced[:r]


def _gray_scan(field, table, outer_rows, start, target=None, show_progress=False):
    """
    Spectrum of all codewords start + (Gray-coded outer message) + (table row).

    :param target: if given, also collect a basis of the span of the codewords of this weight
    :return: (spectrum, span basis or None)
    """
    N = table.shape[1]
    spectrum = np.zeros(N + 1, dtype=np.int64)
    basis = np.zeros((0, N), dtype=np.uint8) if target is not None else None
    word = start.copy()
    steps = field.q ** len(outer_rows) - 1
    pbar = get_progress_bar(max(steps, 1), title="Gray scan", show_progress=show_progress)

    def visit(word, basis):
        weights = np.count_nonzero(table != field.neg_table[word][None, :], axis=1)
        spectrum[:] += np.bincount(weights, minlength=N + 1)
        if target is not None:
            hits = np.flatnonzero(weights == target)
            if len(hits):
                basis = _span_basis(field, basis, field.add(table[hits], word[None, :]))
        return basis

    basis = visit(word, basis)
    for j, old, new in pbar(reflected_gray(field.q, len(outer_rows))):
        delta = field.sub(new, old)
        word = field.add(word, field.mul(delta, outer_rows[j]))
        basis = visit(word, basis)
    return spectrum, basis


_worker = {}


def _init_worker(shared_table, p, e):
    _worker["table"] = shared_table.np
    _worker["field"] = field_make(p, e)


def _scan_partition(args):
    value, first_row, rest, target = args
    field = _worker["field"]
    start = field.mul(value, first_row)
    return _gray_scan(field, _worker["table"], rest, start, target=target)


def _split_rows(field, rows):
    inner = 0
    while inner < rows.shape[0] and field.q ** (inner + 1) <= INNER_TABLE_SIZE:
        inner += 1
    outer = rows.shape[0] - inner
    return rows[:outer], rows[outer:]


def _scan(code, budget, threads, show_progress, log, target=None):
    field = code.field
    rows = information_rows(code)
    required = field.q ** rows.shape[0]
    if required > budget:
        raise BudgetExceededError(required, budget)
    outer, inner = _split_rows(field, rows)
    log.info("Exhaustive scan of {:,} codewords of P({},{},{}): {} outer digits, table of {:,} words".format(
        required, code.n, code.k, code.q, outer.shape[0], field.q ** inner.shape[0]))
    table = _inner_table(field, inner)
    zero = np.zeros(code.N, dtype=np.uint8)

    if threads > 1 and outer.shape[0] > 0:
        shared = SharedArray.from_array(table)
        tasks = [(v, outer[0], outer[1:], target) for v in range(field.q)]
        with mp.Pool(min(threads, field.q), initializer=_init_worker, initargs=(shared, field.p, field.e)) as pool:
            results = pool.map(_scan_partition, tasks)
        spectrum = sum(r[0] for r in results)
        basis = None
        if target is not None:
            basis = np.zeros((0, code.N), dtype=np.uint8)
            for _, part in results:
                basis = _span_basis(field, basis, part)
        return spectrum, basis
    return _gray_scan(field, table, outer, zero, target=target, show_progress=show_progress)


def exhaustive_spectrum(code, budget=DEFAULT_BUDGET, threads=1, show_progress=True, log=None):
    """
    Weight distribution of the whole code, as an array A with A[w] = number of
    codewords of weight w.

    :raises BudgetExceededError: if q^K > budget
    """
    if log is None:
        log = get_logger()
    spectrum, _ = _scan(code, budget, threads, show_progress, log)
    return spectrum


def _minimum(spectrum):
    nonzero = np.flatnonzero(spectrum[1:]) + 1
    return int(nonzero[0]) if len(nonzero) else None


def min_distance_exhaustive(code, budget=DEFAULT_BUDGET, threads=1, show_progress=True, log=None):
    if log is None:
        log = get_logger()
    d = _minimum(exhaustive_spectrum(code, budget, threads=threads, show_progress=show_progress, log=log))
    log.info("Minimum distance of P({},{},{}): {}".format(code.n, code.k, code.q, d))
    return d


def weight_spectrum(code, budget=DEFAULT_BUDGET, threads=1, show_progress=True, log=None):
    """
    :return: list of (weight, count) for the weights that occur, ascending
    """
    spectrum = exhaustive_spectrum(code, budget, threads=threads, show_progress=show_progress, log=log)
    return [(int(w), int(spectrum[w])) for w in np.flatnonzero(spectrum)]


def minimum_weight_span(code, budget=DEFAULT_BUDGET, threads=1, show_progress=True, log=None):
    """
    Minimum distance, number of minimum weight codewords and the dimension of their span.
    Two passes over the message space: one to find the minimum, one to collect the words.

    """
    if log is None:
        log = get_logger()
    spectrum = exhaustive_spectrum(code, budget, threads=threads, show_progress=show_progress, log=log)
    d = _minimum(spectrum)
    if d is None:
        return SpanResult(None, 0, 0)
    _, basis = _scan(code, budget, threads, show_progress, log, target=d)
    log.info("Minimum weight words of P({},{},{}) span a {}-dimensional subcode".format(
        code.n, code.k, code.q, basis.shape[0]))
    return SpanResult(d, int(spectrum[d]), basis.shape[0])


def macwilliams_transform(spectrum, N, q):
    """
    Weight distribution of the dual code from that of the code:

        B_j = 1/|C| sum_i A_i K_j(i),  K_j(i) = sum_s (-1)^s (q-1)^{j-s} C(i, s) C(N-i, j-s)

    :param spectrum: A_0..A_N (sequence of length N+1) or list of (weight, count)
    :return: list of N+1 Fractions
    """
    if len(spectrum) and isinstance(spectrum[0], tuple):
        counts = [0] * (N + 1)
        for w, c in spectrum:
            counts[w] = c
    else:
        counts = [int(c) for c in spectrum]
    if len(counts) != N + 1:
        raise ValueError("spectrum should have {} entries, got {}".format(N + 1, len(counts)))
    size = sum(counts)
    occurring = [(i, a) for i, a in enumerate(counts) if a]
    dual = []
    for j in range(N + 1):
        total = 0
        for i, a in occurring:
            kraw = sum(
                (-1) ** s * (q - 1) ** (j - s) * comb(i, s, exact=True) * comb(N - i, j - s, exact=True)
                for s in range(min(i, j) + 1)
            )
            total += a * kraw
        dual.append(Fraction(total, size))
    return dual


def witness_scan(code, budget=DEFAULT_BUDGET, show_progress=True, log=None):
    """
    Upper bound on the minimum distance from the weights of particular functionals.

    Every coordinate functional (a generator row) is tried. For line codes we also try
    every decomposable alternating form f ^ g, one per 2-space <f, g> of the dual space,
    whose value on the line <a, b> is f(a)g(b) - f(b)g(a). The form scan costs
    (number of forms) x N steps and is skipped if that's over the budget.

    :return: WitnessResult with the smallest weight found and the coefficient vectors
        of all the functionals that reach it
    """
    if log is None:
        log = get_logger()
    field = code.field
    gen = code.generator
    row_weights = np.count_nonzero(gen, axis=1)
    nonzero_rows = np.flatnonzero(row_weights)
    best = int(row_weights[nonzero_rows].min())
    witnesses = []
    for r in nonzero_rows[row_weights[nonzero_rows] == best]:
        unit = np.zeros(gen.shape[0], dtype=np.uint8)
        unit[r] = 1
        witnesses.append(unit)
    scanned = len(nonzero_rows)

    if code.k == 2:
        dim = code.space.dim
        forms = enumerate_rref(field, dim, 2)
        cost = forms.shape[0] * code.N
        if cost > budget:
            log.info("Skipping scan of {:,} decomposable forms: {:,} steps is over the budget".format(
                forms.shape[0], cost))
        else:
            log.info("Scanning {:,} decomposable forms against {:,} lines".format(forms.shape[0], code.N))
            lines = code.points.bases
            a_t = lines[:, 0, :].T
            b_t = lines[:, 1, :].T
            form_weights = np.zeros(forms.shape[0], dtype=np.int64)
            batches = range(0, forms.shape[0], WITNESS_BATCH)
            pbar = get_progress_bar(len(batches), title="Forms", show_progress=show_progress)
            for start in pbar(batches):
                fs = forms[start:start + WITNESS_BATCH, 0, :]
                gs = forms[start:start + WITNESS_BATCH, 1, :]
                values = field.sub(
                    field.mul(field.matmul(fs, a_t), field.matmul(gs, b_t)),
                    field.mul(field.matmul(fs, b_t), field.matmul(gs, a_t)),
                )
                form_weights[start:start + WITNESS_BATCH] = np.count_nonzero(values, axis=1)
            scanned += forms.shape[0]
            form_best = int(form_weights.min())
            if form_best < best:
                best = form_best
                witnesses = []
            if form_best == best:
                hits = forms[form_weights == best]
                witnesses.extend(pluecker_raw(field, hits))
    log.info("Best witness weight for P({},{},{}): {} ({} witnesses)".format(
        code.n, code.k, code.q, best, len(witnesses)))
    return WitnessResult(best, witnesses, scanned)


def random_weight_sweep(code, samples, seed=None, batch=1024, log=None):
    """
    Smallest weight among random nonzero codewords. Messages are drawn uniformly on
    the information set, all-zero draws are skipped.

    """
    if log is None:
        log = get_logger()
    field = code.field
    rows = information_rows(code)
    rng = np.random.default_rng(seed)
    best = None
    seen = 0
    while seen < samples:
        msgs = field.random(rng, (min(batch, samples - seen), rows.shape[0]))
        msgs = msgs[np.any(msgs != 0, axis=1)]
        if msgs.shape[0] == 0:
            continue
        weights = np.count_nonzero(field.matmul(msgs, rows), axis=1)
        low = int(weights.min())
        best = low if best is None else min(best, low)
        seen += msgs.shape[0]
    log.info("Lowest weight in {:,} random codewords of P({},{},{}): {}".format(
        seen, code.n, code.k, code.q, best))
    return SweepResult(best, seen)
