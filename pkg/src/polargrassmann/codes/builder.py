"""
The orthogonal polar Grassmann code P(n, k, q): the projective code whose generator
has the normalized Plücker coordinates of the totally singular k-spaces of Q(2n, q)
as columns, in the canonical point order.

"""
import json
import os
import pickle
import shutil
from collections import namedtuple

import numpy as np
from scipy.special import comb

from polargrassmann.bounds import dual_polar_parameters, expected_dimension, mt1_distance_bound, mt2_distance
from polargrassmann.codes.distance import DEFAULT_BUDGET, min_distance_exhaustive, random_weight_sweep, \
    witness_scan
from polargrassmann.field import field_for_order
from polargrassmann.geometry import PolarGrassmannian, QuadraticSpace, count_formula, enumerate_totally_singular
from polargrassmann.linalg import null_space, rank
from polargrassmann.pluecker import normalize, pluecker_raw, tuple_index
from polargrassmann.utils import get_logger


class LinearCode:
    """
    A built code. Use `LinearCode.build()` to construct one from scratch, or
    `LinearCode.load()` to read one saved with `save()`.

    The distance fields start out as None. `dmin` is only ever set from an exhaustive
    computation. `dmin_lower` and `dmin_upper` are bounds, and `notes` says where each
    distance figure came from.

    """
    def __init__(self, n, k, q, points, generator, column_scalars, K=None, log=None):
        if log is None:
            log = get_logger()
        self.log = log
        self.n = n
        self.k = k
        self.q = q
        self.field = field_for_order(q)
        self.points = points
        self.space = points.space
        self.generator = np.array(generator, dtype=np.uint8)
        self.generator.flags.writeable = False
        # Raw Plücker vector of column j = column_scalars[j] * column j
        self.column_scalars = np.array(column_scalars, dtype=np.uint8)
        self.N = self.generator.shape[1]
        self.K = rank(self.field, self.generator) if K is None else K

        self.dmin = None
        self.dmin_lower = None
        self.dmin_upper = None
        self.notes = []

    def __repr__(self):
        return "LinearCode(P({},{},{}), N={}, K={})".format(self.n, self.k, self.q, self.N, self.K)

    @staticmethod
    def build(n, k, q, log=None):
        """
        Enumerate the points, embed them and assemble the generator.

        :raises ValueError: for k outside [1, n], unsupported q, or if the embedded point
            set has a zero or repeated column
        """
        if log is None:
            log = get_logger()
        if not 1 <= k <= n:
            raise ValueError("k must be between 1 and n={}, got {}".format(n, k))
        space = QuadraticSpace(n, q)
        points = enumerate_totally_singular(space, k, log=log)

        log.info("Computing Plücker coordinates of {:,} points".format(len(points)))
        raw = pluecker_raw(space.field, points.bases)
        columns, scalars = normalize(space.field, raw)
        if np.unique(columns, axis=0).shape[0] != columns.shape[0]:
            raise ValueError("embedded point set of P({},{},{}) has repeated columns".format(n, k, q))
        code = LinearCode(n, k, q, points, columns.T, scalars, log=log)
        log.info("Built {}".format(code))
        return code

    @property
    def message_length(self):
        return self.generator.shape[0]

    def encode(self, message):
        """
        Codeword of a coefficient vector over the Plücker coordinates.

        """
        message = self.field.check(message, "message").reshape(-1)
        if message.shape[0] != self.message_length:
            raise ValueError("messages for P({},{},{}) have {} entries, got {}".format(
                self.n, self.k, self.q, self.message_length, message.shape[0]))
        return self.field.matmul(message[None, :], self.generator)[0]

    def weight_of_functional(self, f):
        """
        Number of points the functional doesn't vanish on, i.e. the weight of the
        codeword f . G.

        """
        return int(np.count_nonzero(self.encode(f)))

    def hyperplane_section_size(self, f):
        return self.N - self.weight_of_functional(f)

    def kernel_forms(self):
        """
        Basis (rows) of the functionals that vanish on every point: the left kernel of
        the generator. Empty for odd q and k < n.

        """
        return null_space(self.field, self.generator.T)

    def save(self, path):
        if os.path.exists(path):
            shutil.rmtree(path)
        os.makedirs(path)

        with open(os.path.join(path, "params.json"), "w") as f:
            json.dump({
                "n": self.n,
                "k": self.k,
                "q": self.q,
                "N": self.N,
                "K": self.K,
                "dmin": self.dmin,
                "dmin_lower": self.dmin_lower,
                "dmin_upper": self.dmin_upper,
                "notes": self.notes,
            }, f)
        for name, data in [
            ("generator", self.generator),
            ("bases", self.points.bases),
            ("column_scalars", self.column_scalars),
        ]:
            with open(os.path.join(path, "{}.pkl".format(name)), "wb") as f:
                pickle.dump(data, f)

    @staticmethod
    def load(path, log=None):
        with open(os.path.join(path, "params.json"), "r") as f:
            params = json.load(f)

        arrs = {}
        for name in ["generator", "bases", "column_scalars"]:
            with open(os.path.join(path, "{}.pkl".format(name)), "rb") as f:
                arrs[name] = pickle.load(f)

        space = QuadraticSpace(params["n"], params["q"])
        points = PolarGrassmannian(space, params["k"], arrs["bases"])
        code = LinearCode(
            params["n"], params["k"], params["q"], points, arrs["generator"], arrs["column_scalars"],
            K=params["K"], log=log,
        )
        code.dmin = params["dmin"]
        code.dmin_lower = params["dmin_lower"]
        code.dmin_upper = params["dmin_upper"]
        code.notes = params["notes"]
        return code


TheoremCheck = namedtuple("TheoremCheck", ["name", "passed", "expected", "observed", "note"])


class TheoremReport:
    """
    Outcome of `verify_theorems()`: a list of named checks. Failed checks are entries
    here, never exceptions.

    """
    def __init__(self, code):
        self.n = code.n
        self.k = code.k
        self.q = code.q
        self.checks = []

    def add(self, name, passed, expected, observed, note=""):
        self.checks.append(TheoremCheck(name, bool(passed), expected, observed, note))

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def __getitem__(self, name):
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def __contains__(self, name):
        return any(c.name == name for c in self.checks)

    def lines(self):
        out = []
        for c in self.checks:
            line = "{} {} expected={} observed={}".format(
                "PASS" if c.passed else "FAIL", c.name, c.expected, c.observed)
            if c.note:
                line += " ({})".format(c.note)
            out.append(line)
        return out

    def to_dict(self):
        return {
            "n": self.n, "k": self.k, "q": self.q,
            "passed": self.passed,
            "checks": [c._asdict() for c in self.checks],
        }


def _check_columns(code, report):
    try:
        columns, _ = normalize(code.field, code.generator.T)
    except ValueError:
        report.add("columns", False, "no zero columns", "zero column")
        return
    distinct = np.unique(columns, axis=0).shape[0]
    report.add("columns", distinct == code.N and np.array_equal(columns, code.generator.T),
               code.N, distinct, "distinct normalized columns")


def _line_kernel_form(n):
    # sum_i p_{2i-1, 2i}: the polar form restricted to lines, which vanishes on every
    # totally singular line in characteristic 2
    form = np.zeros(comb(2 * n + 1, 2, exact=True), dtype=np.uint8)
    for i in range(1, n + 1):
        form[tuple_index((2 * i - 1, 2 * i), 2 * n + 1)] = 1
    return form


def verify_theorems(code, budget=DEFAULT_BUDGET, samples=0, seed=None, threads=1, show_progress=True, log=None):
    """
    Check a built code against the closed-form results: length, dimension and minimum
    distance (or bounds on it).

    The distance is computed exhaustively when q^K <= budget, and then stored in
    `code.dmin`. Otherwise the witness scan gives an upper bound and, if samples > 0,
    a random sweep looks for lighter codewords.

    :return: TheoremReport
    """
    if log is None:
        log = get_logger()
    n, k, q = code.n, code.k, code.q
    field = code.field
    report = TheoremReport(code)

    report.add("length", code.N == count_formula(n, k, q), count_formula(n, k, q), code.N)
    _check_columns(code, report)

    K = rank(field, code.generator)
    expected_K = expected_dimension(n, k, q)
    if expected_K is None:
        report.add("dimension", True, None, K, "no closed form for k = n = {}".format(n))
    else:
        report.add("dimension", K == expected_K, expected_K, K)

    if q % 2 == 0 and k == 2:
        kernel = code.kernel_forms()
        form = _line_kernel_form(n)
        in_kernel = not np.any(code.encode(form))
        report.add("kernel", in_kernel and kernel.shape[0] == comb(2 * n + 1, 2, exact=True) - K,
                   "sum of p_(2i-1,2i)", kernel.tolist(), "forms vanishing on every line")

    mt1 = mt1_distance_bound(n, k, q) if k < n else None
    if k < n:
        code.dmin_lower = mt1
    exact_target = None
    if k == 2 and q % 2 == 1:
        exact_target = mt2_distance(n, q)
    elif k == n and n in (2, 3):
        exact_target = dual_polar_parameters(n, q)[2]

    if q ** K <= budget:
        d = min_distance_exhaustive(code, budget, threads=threads, show_progress=show_progress, log=log)
        code.dmin = code.dmin_lower = code.dmin_upper = d
        code.notes.append("dmin={} by exhaustive Gray-code scan of {} messages".format(d, q ** K))
        if mt1 is not None:
            report.add("distance_bound", d >= mt1, ">={}".format(mt1), d)
        if exact_target is not None:
            report.add("distance", d == exact_target, exact_target, d)
        return report

    log.info("q^K = {:,} is over the budget, bounding the distance instead".format(q ** K))
    witness = witness_scan(code, budget, show_progress=show_progress, log=log)
    code.dmin_upper = witness.weight
    code.notes.append("dmin<={} from witness scan of {} functionals".format(witness.weight, witness.forms_scanned))
    if mt1 is not None:
        code.notes.append("dmin>={} from the partial spread bound".format(mt1))
        report.add("distance_bound", witness.weight >= mt1, ">={}".format(mt1), witness.weight, "witness weight")
    if exact_target is not None:
        # The witness is only an upper bound, so anything at or above the target agrees
        report.add("distance_witness", witness.weight >= exact_target, ">={}".format(exact_target), witness.weight,
                   "confirmed" if witness.weight == exact_target else "lightest functional found, target not reached")
    if samples > 0:
        sweep = random_weight_sweep(code, samples, seed=seed, log=log)
        floor = exact_target if exact_target is not None else mt1
        if floor is not None:
            report.add("distance_sweep", sweep.weight >= floor, ">={}".format(floor), sweep.weight,
                       "{} random codewords".format(sweep.samples))
    return report
