"""Certificate documents: versioned JSON with decimal-string integers.

Round-trips losslessly at arbitrary precision; re-verifying a loaded document
reproduces the verified flag.  No timestamps, so identical inputs serialize
byte-identically.
"""

from __future__ import annotations

import json
from typing import Any

from .builder import PAIR_KEYS, QuadrupleCertificate
from .ring import QuadringError, RingContext, RingElement

SCHEMA_VERSION = "1"


class DocumentError(QuadringError):
    """Malformed certificate document."""


def _pair(e: RingElement) -> list[str]:
    return [str(e.x), str(e.y)]


def _unpair(raw: Any, what: str) -> RingElement:
    try:
        x, y = raw
        return RingElement(int(x), int(y))
    except (TypeError, ValueError) as err:
        raise DocumentError(f"bad {what}: {raw!r}") from err


def to_document(cert: QuadrupleCertificate, verified: bool) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "d": str(cert.d),
        "n": _pair(cert.n),
        "elements": [_pair(e) for e in cert.elements],
        "witnesses": {key: _pair(w) for key, w in zip(PAIR_KEYS, cert.witnesses)},
        "provenance": cert.provenance,
        "params": {k: str(v) for k, v in cert.params.items()},
        "verified": bool(verified),
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise DocumentError(f"not valid JSON: {err}") from err
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    return doc


def parse_document(doc: dict) -> QuadrupleCertificate:
    """Dict -> certificate; witnesses are optional (re-derived on verify)."""
    for key in ("d", "n", "elements"):
        if key not in doc:
            raise DocumentError(f"missing field {key!r}")
    try:
        d = int(doc["d"])
    except (TypeError, ValueError) as err:
        raise DocumentError(f"bad d: {doc['d']!r}") from err
    n = _unpair(doc["n"], "n")
    elements = doc["elements"]
    if not isinstance(elements, list) or len(elements) != 4:
        raise DocumentError("elements must be a list of four pairs")
    els = tuple(_unpair(e, "element") for e in elements)
    raw_ws = doc.get("witnesses") or {}
    if raw_ws and sorted(raw_ws) != sorted(PAIR_KEYS):
        raise DocumentError(f"witness keys must be {PAIR_KEYS}")
    ws = tuple(
        _unpair(raw_ws[key], f"witness {key}") for key in PAIR_KEYS
    ) if raw_ws else tuple(RingElement(0, 0) for _ in PAIR_KEYS)
    params = {}
    for k, v in (doc.get("params") or {}).items():
        try:
            params[str(k)] = int(v)
        except (TypeError, ValueError) as err:
            raise DocumentError(f"bad param {k}={v!r}") from err
    return QuadrupleCertificate(
        d, n, els, ws, str(doc.get("provenance", "")), params
    )


def context_for(cert: QuadrupleCertificate) -> RingContext:
    return RingContext(cert.d)
