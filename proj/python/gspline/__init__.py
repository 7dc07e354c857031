"""Generalized splines on edge-labeled graphs.

Graph documents are dicts (or JSON strings) with keys ``ring``, ``ideals``,
``vertices`` and ``edges``; results come back as plain dicts.
"""

import json

from . import _core
from ._core import GsplineError

__all__ = [
    "GsplineError",
    "spline_module",
    "is_spline",
    "reduce_graph",
    "decompose",
    "hilbert_dyck",
    "guess_relation",
    "verify",
    "shipped_corpus",
]


def _doc(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def _int(x):
    return int(x) if isinstance(x, str) else x


def spline_module(doc, based=()):
    return json.loads(_core.spline_module(_doc(doc), list(based)))


def is_spline(doc, values):
    return _core.is_spline(_doc(doc), json.dumps(values))


def reduce_graph(doc):
    return json.loads(_core.reduce_graph(_doc(doc)))


def decompose(doc):
    return json.loads(_core.decompose(_doc(doc)))


def hilbert_dyck(ring, ideals, max_pairs, mode="dim"):
    """Coefficients a_0..a_max_pairs as Python ints."""
    out = json.loads(_core.hilbert_dyck(ring, json.dumps(ideals), max_pairs, mode))
    return [_int(c) for c in out["coefficients"]]


def guess_relation(coefficients, deg_x, deg_t, mode="dim"):
    prefix = json.dumps({"mode": mode, "coefficients": [str(c) for c in coefficients]})
    return json.loads(_core.guess_relation(prefix, deg_x, deg_t))


def verify(doc):
    return json.loads(_core.verify(_doc(doc)))


def shipped_corpus():
    return json.loads(_core.shipped_corpus())
