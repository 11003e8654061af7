"""Elliptic divisibility sequences over F_p(t) and Q(t)."""

import json as _json

from ._core import (
    AmbiguousPlace,
    ConsistencyError,
    DomainError,
    Error,
    Inconclusive,
    ParseError,
    kinds,
    reference_admissible,
)
from ._core import run_json as _run_json
from ._core import verify_json as _verify_json

__all__ = [
    "AmbiguousPlace",
    "ConsistencyError",
    "DomainError",
    "Error",
    "Inconclusive",
    "ParseError",
    "kinds",
    "reference_admissible",
    "run",
    "verify",
    "curve",
    "seq",
    "zsigmondy",
    "growth",
    "heights",
    "criterion_table",
    "criterion_sum",
    "demo_supersingular",
    "factor",
    "valuation",
]


def run(kind, jobs=1, **inputs):
    """Full report dict: kind, input, result, passed."""
    return _json.loads(_run_json(kind, _json.dumps(inputs), jobs))


def verify(report, jobs=1):
    return _json.loads(_verify_json(_json.dumps(report), jobs))


def _curve(kind):
    def f(p, A, B, P=None, Q="O", jobs=1, **extra):
        args = dict(p=p, A=A, B=B, Q=Q, **extra)
        if P is not None:
            args["P"] = P
        return run(kind, jobs=jobs, **args)

    f.__name__ = kind
    return f


curve = _curve("curve")
seq = _curve("seq")
zsigmondy = _curve("zsigmondy")
divisibility = _curve("divisibility")
growth = _curve("growth")
heights = _curve("heights")


def criterion_table(p_list=(0, 5, 7, 11, 13, 17), r_max=24):
    return run("criterion_table", p_list=list(p_list), r_max=r_max)


def criterion_sum(n, p, r):
    return run("criterion_sum", n=n, p=p, r=r)


def demo_supersingular(p, l_max=3):
    return run("demo_supersingular", p=p, l_max=l_max)


def factor(p, f):
    return run("factor", p=p, f=f)


def valuation(p, place, f):
    return run("valuation", p=p, place=place, f=f)
