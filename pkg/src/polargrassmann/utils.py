import logging
import sys

import progressbar as pb


LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def get_logger(name="polargrassmann", quiet=None):
    """
    Logger shared by the library and the command-line tool.

    Everything goes to stderr, so that the results the command-line tool writes
    to stdout are never mixed up with log output.

    :param name: logging system logger name
    :param quiet: True to only let warnings (e.g. tied votes) through, False for INFO.
        None leaves the level as it is (INFO for a new logger).
    :return:
    """
    log = logging.getLogger(name)
    if quiet is not None:
        log.setLevel(logging.WARNING if quiet else logging.INFO)
    elif log.level == logging.NOTSET:
        log.setLevel(logging.INFO)
    level = log.level

    # coloredlogs isn't a dependency, but if it's installed on the system we use it
    try:
        import coloredlogs
    except ImportError:
        if not log.handlers:
            sh = logging.StreamHandler(sys.stderr)
            sh.setLevel(logging.DEBUG)
            sh.setFormatter(logging.Formatter(LOG_FORMAT))
            log.addHandler(sh)
    else:
        coloredlogs.install(level=level, logger=log, fmt=LOG_FORMAT, stream=sys.stderr)

    return log


def get_progress_bar(maxval, title=None, counter=False, show_progress=True):
    """
    Progress bar on stderr over `maxval` steps. Call the result on an iterable to
    wrap it. With show_progress=False this is the identity.

    """
    if not show_progress:
        return lambda x: x

    widgets = []
    if title is not None:
        widgets.append("%s: " % title)
    if maxval is not pb.UnknownLength:
        widgets.extend([pb.Percentage(), ' ', pb.Bar(marker=pb.RotatingMarker())])
    if counter:
        widgets.extend([' (', pb.Counter(), ')'])
    if maxval is not pb.UnknownLength:
        widgets.extend([' ', pb.ETA()])
    return pb.ProgressBar(widgets=widgets, maxval=maxval, fd=sys.stderr)
