"""
Command-line tool for building, checking and using orthogonal polar Grassmann codes.

Results go to stdout (or --output), logging and progress bars to stderr, so the
results only depend on the flags, the input and the seed.

Exit status: 0 on success, 1 if `verify` finds a failed check, 2 on a usage error.

"""
import argparse
import json
import sys
from collections import namedtuple

from polargrassmann.bounds import grassmann_code_parameters, mt1_distance_bound
from polargrassmann.codes.builder import LinearCode, verify_theorems
from polargrassmann.codes.distance import BudgetExceededError, macwilliams_transform, min_distance_exhaustive, \
    minimum_weight_span, weight_spectrum, witness_scan
from polargrassmann.codes.local import ReceivedWord, correct_all
from polargrassmann.enumerative import line_enumerator
from polargrassmann.field import SUPPORTED_ORDERS
from polargrassmann.geometry import QuadraticSpace
from polargrassmann.linalg import format_matrix, format_vector, parse_matrices, parse_vector
from polargrassmann.utils import get_logger


COMMANDS = ["params", "genmat", "points", "verify", "mindist", "spectrum", "rank", "unrank", "encode", "decode"]
# Commands that only make sense for line codes
LINE_COMMANDS = {"rank", "unrank", "decode"}
CLI_DEFAULT_BUDGET = 2 ** 24


_RunConfigBase = namedtuple("_RunConfigBase", [
    "command", "n", "k", "q", "index", "budget", "seed", "format", "input", "output",
    "threads", "samples", "span", "dual", "quiet",
])


class RunConfig(_RunConfigBase):
    """
    Validated, immutable settings for one run of the tool.

    :raises ValueError: naming the offending flag if a setting is out of range
    """
    def __new__(cls, command, n, k=2, q=2, index=None, budget=CLI_DEFAULT_BUDGET, seed=0, format="text",
                input=None, output=None, threads=1, samples=0, span=False, dual=False, quiet=False):
        if command not in COMMANDS:
            raise ValueError("unknown command '{}'".format(command))
        if not 2 <= n <= 4:
            raise ValueError("--n must be between 2 and 4, got {}".format(n))
        if not 1 <= k <= n:
            raise ValueError("--k must be between 1 and --n ({}), got {}".format(n, k))
        if q not in SUPPORTED_ORDERS:
            raise ValueError("--q must be one of {}, got {}".format(
                ", ".join(str(o) for o in sorted(SUPPORTED_ORDERS)), q))
        if budget <= 0:
            raise ValueError("--budget must be positive, got {}".format(budget))
        if threads < 1:
            raise ValueError("--threads must be at least 1, got {}".format(threads))
        if samples < 0:
            raise ValueError("--samples can't be negative, got {}".format(samples))
        if format not in ("text", "json"):
            raise ValueError("--format must be text or json, got {}".format(format))
        if command in LINE_COMMANDS and k != 2:
            raise ValueError("{} only works on line codes (--k 2), got --k {}".format(command, k))
        if command == "decode" and n < 3:
            raise ValueError("decode needs --n >= 3: there are no planes through lines when n = 2")
        if command == "unrank" and index is None:
            raise ValueError("unrank needs --index")
        if index is not None and index < 0:
            raise ValueError("--index can't be negative, got {}".format(index))
        return super().__new__(cls, command, n, k, q, index, budget, seed, format, input, output,
                               threads, samples, span, dual, quiet)

    @staticmethod
    def from_args(args):
        return RunConfig(
            args.command, args.n, k=args.k, q=args.q, index=args.index, budget=args.budget, seed=args.seed,
            format=args.format, input=args.input, output=args.output, threads=args.threads,
            samples=args.samples, span=args.span, dual=args.dual, quiet=args.quiet,
        )


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="Witt index of the quadric Q(2n, q)")
    common.add_argument("--k", type=int, default=2, help="Dimension of the subspaces (default: lines)")
    common.add_argument("--q", type=int, required=True, help="Field order")
    common.add_argument("--index", type=int, help="Position of a line in the canonical order")
    common.add_argument("--budget", type=int, default=CLI_DEFAULT_BUDGET,
                        help="Most steps an exhaustive scan may take (default: 2^24)")
    common.add_argument("--seed", type=int, default=0, help="Seed for randomized checks")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--input", help="Read from this file instead of stdin")
    common.add_argument("--output", help="Write to this file instead of stdout")
    common.add_argument("--threads", type=int, default=1, help="Worker processes for exhaustive scans")
    common.add_argument("--samples", type=int, default=0,
                        help="Random codewords to sweep when the distance can't be computed exactly")
    common.add_argument("--span", action="store_true",
                        help="mindist: also report the number and span of minimum weight words")
    common.add_argument("--dual", action="store_true",
                        help="spectrum: output the dual code's weight distribution")
    common.add_argument("--quiet", action="store_true", help="No progress bars, and only warnings in the log")

    parser = argparse.ArgumentParser(
        prog="polargrassmann",
        description="Orthogonal polar Grassmann codes: construction, parameter checks, "
                    "enumerative coding and local correction",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    helps = {
        "params": "One-line summary: n k q N K dlow dhigh exact|bounds",
        "genmat": "Generator matrix",
        "points": "The ordered list of totally singular subspaces",
        "verify": "Check the code against the closed-form parameters",
        "mindist": "Exact minimum distance by exhaustive scan",
        "spectrum": "Weight distribution by exhaustive scan",
        "rank": "Index of each line read from the input",
        "unrank": "Line at --index",
        "encode": "Codeword of a message read from the input",
        "decode": "Locally correct a received word read from the input",
    }
    for command in COMMANDS:
        sub.add_parser(command, parents=[common], help=helps[command])
    return parser


def _code(config, log):
    return LinearCode.build(config.n, config.k, config.q, log=log)


def _cmd_params(config, inp, out, log):
    code = _code(config, log)
    q, K = config.q, code.K
    if q ** K <= config.budget:
        d = min_distance_exhaustive(code, config.budget, threads=config.threads,
                                    show_progress=not config.quiet, log=log)
        dlow = dhigh = d
        exact = True
    else:
        dlow = mt1_distance_bound(config.n, config.k, q) if config.k < config.n else 1
        dhigh = witness_scan(code, config.budget, show_progress=not config.quiet, log=log).weight
        exact = False
    if config.format == "json":
        grassmann_N, grassmann_K = grassmann_code_parameters(config.n, config.k, q)
        json.dump({
            "n": config.n, "k": config.k, "q": q, "N": code.N, "K": K,
            "dlow": dlow, "dhigh": dhigh, "exact": exact,
            "grassmann_N": grassmann_N, "grassmann_K": grassmann_K,
        }, out, sort_keys=True)
        out.write("\n")
    else:
        out.write("{} {} {} {} {} {} {} {}\n".format(
            config.n, config.k, q, code.N, K, dlow, dhigh, "exact" if exact else "bounds"))
    return 0


def _cmd_genmat(config, inp, out, log):
    code = _code(config, log)
    if config.format == "json":
        json.dump({"rows": code.generator.shape[0], "cols": code.N, "q": config.q,
                   "entries": code.generator.tolist()}, out, sort_keys=True)
        out.write("\n")
    else:
        out.write(format_matrix(code.generator, config.q))
    return 0


def _cmd_points(config, inp, out, log):
    code = _code(config, log)
    bases = code.points.bases
    if config.format == "json":
        json.dump({"q": config.q, "points": bases.tolist()}, out, sort_keys=True)
        out.write("\n")
        return 0
    for i, basis in enumerate(bases):
        if i:
            out.write("\n")
        out.write("{}\n".format(i))
        out.write(format_matrix(basis, config.q))
    return 0


def _cmd_verify(config, inp, out, log):
    code = _code(config, log)
    report = verify_theorems(code, config.budget, samples=config.samples, seed=config.seed,
                             threads=config.threads, show_progress=not config.quiet, log=log)
    if code.dmin is not None:
        distance = "d={}".format(code.dmin)
    else:
        distance = "d<={}".format(code.dmin_upper)
    if config.format == "json":
        result = report.to_dict()
        result.update({"N": code.N, "K": code.K, "dmin": code.dmin,
                       "dmin_lower": code.dmin_lower, "dmin_upper": code.dmin_upper})
        json.dump(result, out, sort_keys=True, default=str)
        out.write("\n")
    else:
        for line in report.lines():
            out.write(line + "\n")
        out.write("{} P({},{},{}) N={} K={} {}\n".format(
            "PASS" if report.passed else "FAIL", config.n, config.k, config.q, code.N, code.K, distance))
    return 0 if report.passed else 1


def _cmd_mindist(config, inp, out, log):
    code = _code(config, log)
    show = not config.quiet
    if config.span:
        result = minimum_weight_span(code, config.budget, threads=config.threads, show_progress=show, log=log)
        if config.format == "json":
            json.dump(result._asdict(), out, sort_keys=True)
            out.write("\n")
        else:
            out.write("{} {} {}\n".format(result.weight, result.count, result.rank))
        return 0
    d = min_distance_exhaustive(code, config.budget, threads=config.threads, show_progress=show, log=log)
    if config.format == "json":
        json.dump({"dmin": d}, out, sort_keys=True)
        out.write("\n")
    else:
        out.write("{}\n".format(d))
    return 0


def _cmd_spectrum(config, inp, out, log):
    code = _code(config, log)
    spectrum = weight_spectrum(code, config.budget, threads=config.threads,
                               show_progress=not config.quiet, log=log)
    rows = spectrum
    if config.dual:
        # Fractions only show up if the spectrum was wrong
        rows = [(w, int(c) if c.denominator == 1 else str(c))
                for w, c in enumerate(macwilliams_transform(spectrum, code.N, config.q)) if c]
    if config.format == "json":
        json.dump({"dual": config.dual, "spectrum": rows}, out, sort_keys=True)
        out.write("\n")
    else:
        for w, c in rows:
            out.write("{} {}\n".format(w, c))
    return 0


def _cmd_rank(config, inp, out, log):
    space = QuadraticSpace(config.n, config.q)
    enumerator = line_enumerator(space)
    indices = []
    for _, matrix, q in parse_matrices(inp.read()):
        if q != config.q:
            raise ValueError("input matrix is over GF({}), but --q is {}".format(q, config.q))
        if matrix.shape != (2, space.dim):
            raise ValueError("lines of Q({},{}) are 2 x {} matrices, got {} x {}".format(
                2 * config.n, config.q, space.dim, *matrix.shape))
        indices.append(enumerator.rank(matrix))
    if config.format == "json":
        json.dump({"indices": indices}, out, sort_keys=True)
        out.write("\n")
    else:
        for i in indices:
            out.write("{}\n".format(i))
    return 0


def _cmd_unrank(config, inp, out, log):
    space = QuadraticSpace(config.n, config.q)
    line = line_enumerator(space).unrank(config.index)
    if config.format == "json":
        json.dump({"index": config.index, "q": config.q, "basis": line.basis.tolist()}, out, sort_keys=True)
        out.write("\n")
    else:
        out.write(format_matrix(line.basis, config.q))
    return 0


def _cmd_encode(config, inp, out, log):
    code = _code(config, log)
    message = parse_vector(inp.read(), config.q)
    codeword = code.encode(message)
    if config.format == "json":
        json.dump({"codeword": codeword.tolist()}, out, sort_keys=True)
        out.write("\n")
    else:
        out.write(format_vector(codeword))
    return 0


def _cmd_decode(config, inp, out, log):
    received = ReceivedWord(config.n, config.q, parse_vector(inp.read(), config.q))
    report = correct_all(received, show_progress=not config.quiet)
    for pos in report.ties:
        log.warning("Votes tied at position {}, kept the received value".format(pos))
    if config.format == "json":
        json.dump({
            "corrected": report.corrected.tolist(),
            "changes": [list(c) for c in report.changes],
            "ties": report.ties,
            "radius": report.radius,
        }, out, sort_keys=True)
        out.write("\n")
    else:
        out.write(format_vector(report.corrected))
        for change in report.changes:
            out.write("{} {} {} {} {}\n".format(*change))
        for pos in report.ties:
            out.write("tie {}\n".format(pos))
    return 0


_COMMANDS = {
    "params": _cmd_params,
    "genmat": _cmd_genmat,
    "points": _cmd_points,
    "verify": _cmd_verify,
    "mindist": _cmd_mindist,
    "spectrum": _cmd_spectrum,
    "rank": _cmd_rank,
    "unrank": _cmd_unrank,
    "encode": _cmd_encode,
    "decode": _cmd_decode,
}


def run(config, stdin=None, stdout=None, log=None):
    """
    Carry out one command.

    :return: exit status
    :raises ValueError: on bad input (a usage error)
    """
    if log is None:
        log = get_logger()
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    inp = open(config.input, "r") if config.input else stdin
    out = open(config.output, "w") if config.output else stdout
    try:
        return _COMMANDS[config.command](config, inp, out, log)
    finally:
        if config.input:
            inp.close()
        if config.output:
            out.close()


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig.from_args(args)
    except ValueError as e:
        parser.error(str(e))
    log = get_logger(quiet=config.quiet)
    try:
        return run(config, log=log)
    except BudgetExceededError as e:
        sys.stderr.write("polargrassmann: error: {} (raise --budget to allow it)\n".format(e))
        return 2
    except ValueError as e:
        sys.stderr.write("polargrassmann: error: {}\n".format(e))
        return 2


if __name__ == "__main__":
    sys.exit(main())
