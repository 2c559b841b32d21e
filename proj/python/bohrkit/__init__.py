"""Python access to the bohr numerics library."""

import json

from ._bohrkit import (
    BohrError,
    BoundExceeded,
    DegenerateDegree,
    Overflow,
    ParseError,
    PreconditionViolation,
    __version__,
    enumerate_lambda,
    factor,
    h2_sharp_constant,
    l2_norm,
    lp_norm_mc,
    multinomial,
    operations,
    sup_norm,
    to_integer,
)
from . import _bohrkit


def run(command, params=None, seed=None):
    """Run one experiment and return its ledger record as a dict."""
    return json.loads(_bohrkit.run(command, json.dumps(params or {}), seed))


def run_suite(name, seed=1729):
    return json.loads(_bohrkit.run_suite(name, seed))


def classify(sequence, space, **params):
    return run("classify", dict(sequence=sequence, space=space, **params))["result"]
