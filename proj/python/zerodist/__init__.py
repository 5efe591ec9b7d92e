"""Zero distributions of polynomial sequences defined by P_{n+1} = A_n P_n' + B_n P_n."""

import json
from fractions import Fraction

from ._core import (
    Error,
    __version__,
    abel_kappa,
    builtins,
    cdf,
    closed_form_series,
    dawson,
    faddeeva,
    generate,
    ks,
    lambert_w0,
    moments,
    pdf,
    scaled_zeros,
    series,
    stieltjes,
)
from ._core import run as _run


def run(command, family, **kwargs):
    """Run a CLI command in-process; returns the {"meta", "data"} document."""
    return json.loads(_run(command, family, **kwargs))


def fractions(values):
    return [Fraction(v) for v in values]


__all__ = [
    "Error",
    "__version__",
    "abel_kappa",
    "builtins",
    "cdf",
    "closed_form_series",
    "dawson",
    "faddeeva",
    "fractions",
    "generate",
    "ks",
    "lambert_w0",
    "moments",
    "pdf",
    "run",
    "scaled_zeros",
    "series",
    "stieltjes",
]
