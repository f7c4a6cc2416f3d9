"""Python access to the towerlab library.

Family documents are passed as JSON text. Heights come back as int and
directions as Fraction.
"""

from fractions import Fraction

from . import _core
from ._core import InsufficientPrefix, ParseError

__all__ = [
    "InsufficientPrefix",
    "ParseError",
    "canonical",
    "classify",
    "digest",
    "heights",
    "run",
    "series_index",
    "synthesize",
]


def _dir(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def heights(family_json, up_to):
    """List of (H_n, h_n) for n = 0..up_to."""
    return [(int(H), int(h)) for H, h in _core.heights(family_json, up_to)]


def digest(family_json):
    return _core.digest(family_json)


def canonical(family_json):
    """Re-serialized document; equal inputs give equal text."""
    return _core.canonical(family_json)


def synthesize(R, S, R2=(), stages=8):
    """Family document realizing directions R (or R1 with R2 in three-way mode).

    S is the enumeration prefix of the complement to exclude.
    """
    return _core.synthesize([_dir(r) for r in R], [_dir(s) for s in S], [_dir(r) for r in R2], stages)


def classify(family_json, ratio, horizon=-1, negative=False):
    ratio = Fraction(ratio)
    v = _core.classify(family_json, str(ratio.numerator), str(ratio.denominator), horizon, negative)
    v["p"], v["q"] = int(v["p"]), int(v["q"])
    v["facts"] = dict(v["facts"])
    return v


def series_index(family_json):
    return _core.series_index(family_json)


def run(*args):
    """Runs the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.run([str(a) for a in args])
