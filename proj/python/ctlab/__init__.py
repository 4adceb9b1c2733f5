"""Python access to the ctlab core: the exponent atlas and the experiment runner."""

import json

from ._core import ConfigError, Error, __version__, breakpoints, exponent, exponent_exact, run_json

__all__ = ["ConfigError", "Error", "__version__", "breakpoints", "exponent", "exponent_exact", "run"]


def run(config):
    """Run one experiment described by a dict and return the record as a dict."""
    return json.loads(run_json(json.dumps(config)))
