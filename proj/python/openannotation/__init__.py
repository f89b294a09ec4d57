"""Open Annotation model: validation, anchoring, serialization and storage.

Annotation documents are plain dicts in the JSON-LD form.
"""

import json

from . import _core
from ._core import OAError, parse_fragment, point_in_area, resolve_text_position

__all__ = [
    "OAError",
    "Store",
    "annotea_export",
    "annotea_import",
    "derive_quote",
    "normalize",
    "parse_fragment",
    "point_in_area",
    "resolve_text_position",
    "resolve_text_quote",
    "to_trig",
    "to_turtle",
    "trig_isomorphic",
    "validate",
]


def _dump(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def validate(doc):
    """List of {"path", "message"} violations; empty when valid."""
    return [{"path": p, "message": m} for p, m in _core.violations(_dump(doc))]


def normalize(doc):
    """Parse and re-serialize, which drops nothing but reorders keys."""
    return json.loads(_core.normalize(_dump(doc)))


def to_trig(doc):
    return _core.to_trig(_dump(doc))


def to_turtle(doc):
    return _core.to_turtle(_dump(doc))


def trig_isomorphic(a, b):
    return _core.trig_isomorphic(a, b)


def resolve_text_quote(text, exact, prefix=None, suffix=None):
    """(start, end, ambiguous) in code points of the NFC form of text."""
    return _core.resolve_text_quote(text, exact, prefix, suffix)


def derive_quote(text, start, end, context_len=8):
    exact, prefix, suffix = _core.derive_quote(text, start, end, context_len)
    return {"exact": exact, "prefix": prefix, "suffix": suffix}


def annotea_import(record):
    return json.loads(_core.annotea_import(_dump(record)))


def annotea_export(doc):
    return json.loads(_core.annotea_export(_dump(doc)))


class Store:
    """Persistent annotation store in a directory.

    Pass base_uri to create a new store; omit it to reopen one.
    """

    def __init__(self, directory, base_uri=None, sync=True):
        self._store = _core.Store(str(directory), base_uri, sync)

    @property
    def base_uri(self):
        return self._store.base_uri

    def put(self, doc):
        return self._store.put(_dump(doc))

    def get(self, annotation_id):
        return json.loads(self._store.get(annotation_id))

    def remove(self, annotation_id):
        self._store.remove(annotation_id)

    def query(self, target=None, tag=None, author=None, since=None, motivation=None, limit=100, offset=0):
        total, items = self._store.query(target, tag, author, since, motivation, limit, offset)
        return {"total": total, "items": [json.loads(i) for i in items]}

    def __len__(self):
        return len(self._store)
