"""Numerical radius, norms and inequality checks for small complex matrices."""

import json as _json

from ._radiuslab import *  # noqa: F401,F403
from ._radiuslab import RadiuslabError, verify as _verify


def verify_report(bounds, **kwargs):
    """Run verify and return the parsed JSON report."""
    return _json.loads(_verify(bounds, **kwargs))
