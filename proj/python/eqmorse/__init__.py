"""Equivariant algebraic Morse reduction of free chain complexes.

Every function takes and returns the JSON documents used by the ``eqmorse``
command line tool, as plain python dicts.
"""

import json

from . import _core

__all__ = [
    "EqmorseError",
    "check_complex",
    "check_matching",
    "group_order",
    "homology",
    "ingest",
    "match",
    "reduce",
]


class EqmorseError(Exception):
    """Raised for any library failure; ``kind`` is the diagnostic name."""

    def __init__(self, kind, message):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.message = message


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def _opt(doc):
    return None if doc is None else _text(doc)


def _call(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except _core.Error as e:
        raise EqmorseError(*e.args) from None


def homology(complex):
    return json.loads(_call(_core.homology, _text(complex)))


def check_complex(complex):
    """Cells (degree, label) whose boundary has nonzero boundary."""
    return _call(_core.check_complex, _text(complex))


def group_order(complex, generators=None):
    return _call(_core.group_order, _text(complex), _opt(generators))


def match(complex, generators=None, policy="lex"):
    return json.loads(_call(_core.match, _text(complex), _opt(generators), policy))


def check_matching(complex, matching, generators=None):
    return json.loads(_call(_core.check_matching, _text(complex), _text(matching), _opt(generators)))


def reduce(complex, matching, generators=None):
    return json.loads(_call(_core.reduce, _text(complex), _text(matching), _opt(generators)))


def ingest(simplicial, ring=None):
    """Returns (complex, generators) for a simplicial complex with an action."""
    c, g = _call(_core.ingest, _text(simplicial), ring)
    return json.loads(c), json.loads(g)
