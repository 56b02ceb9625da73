"""Concordance invariants t and T_i of knots."""

import json

from ._tinv import (
    ConsistencyError,
    Diagram,
    ParseError,
    ResourceCapExceeded,
    UnsupportedDiagram,
    jones_polynomial,
    khovanov,
    parse_braid,
    parse_pd,
    signature,
    t_invariant,
    torus_t_expected,
)
from ._tinv import report_json as _report_json

__all__ = [
    "ConsistencyError",
    "Diagram",
    "ParseError",
    "ResourceCapExceeded",
    "UnsupportedDiagram",
    "compute",
    "jones_polynomial",
    "khovanov",
    "parse_braid",
    "parse_pd",
    "signature",
    "t_invariant",
    "torus_t_expected",
]


def compute(diagram, fields=("Q",), ti=4, cap=0, name="K"):
    """Full invariant report of a knot diagram as a dict."""
    if isinstance(diagram, str):
        diagram = parse_pd(diagram)
    return json.loads(_report_json(diagram, list(fields), ti, cap, name))
