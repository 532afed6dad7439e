"""
The package logger `chowlogger`, a plain `logging.Logger` named
"chowcheck" at level INFO:

>>> from chowcheck.core.logger import chowlogger

Verdicts and corpus summaries are logged at INFO, the rejected samples,
skipped relations and overridden joins at WARNING. At DEBUG the library
reports the parsed cases, the solved parameter constraints, the pivot
choices and the drawn samples. Switch it on with

>>> activate_local_debug_mode(handler=logging.StreamHandler())

and back with `reset()`. The command line does this when
CHOWCHECK_DEBUG is set. Messages about a single case go through
`case_logger(name)`, which prefixes the case name.

Worker processes of a corpus run start with a fresh logger;
`init_worker` carries the level of the parent over.
"""
# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)


import logging
import sys


chowlogger = logging.getLogger("chowcheck")
chowlogger.setLevel(logging.INFO)
chowformatter = logging.Formatter(logging.BASIC_FORMAT)


class CaseLogger(logging.LoggerAdapter):
    """Prefixes every message with the name of the case."""

    def process(self, msg, kwargs):
        return f"{self.extra['case']}: {msg}", kwargs


def case_logger(name: str) -> CaseLogger:
    return CaseLogger(chowlogger, {"case": name})


def activate_local_debug_mode(handler=None, propagate=False):
    """
    Sets the level to DEBUG and adds `handler` (a NullHandler if None,
    so that the lastResort handler stays silent). Handlers without a
    formatter get `logging.BASIC_FORMAT`. With `propagate` False the
    records do not reach the handlers of the root logger.
    """
    if handler is None:
        handler = logging.NullHandler()
    if not handler.formatter:
        handler.setFormatter(chowformatter)
    chowlogger.addHandler(handler)
    chowlogger.propagate = propagate
    chowlogger.setLevel(logging.DEBUG)


def reset(keep_handlers=False, propagate=True):
    """Back to level INFO; drops all handlers unless `keep_handlers`."""
    if not keep_handlers:
        chowlogger.handlers = []
    chowlogger.propagate = propagate
    chowlogger.setLevel(logging.INFO)


def init_worker(level=logging.INFO):
    """
    Initializer of the corpus worker processes. A parent in debug mode
    gets workers logging to stderr at DEBUG.
    """
    if level <= logging.DEBUG:
        activate_local_debug_mode(handler=logging.StreamHandler(sys.stderr))
    else:
        chowlogger.setLevel(level)
