"""The JSON interchange format for algebras.

A document carries a schema version, the dimension, basis labels and the
sparse constant entries as 1-based records {i, j, k, c} with the coefficient
rendered as an exact decimal fraction string ("p" or "p/q", never floating
point).  Documents round-trip exactly: parse(serialize(A)) == A.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .core import Algebra, Q
from .constructions import NamedAlgebra

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    pass


def format_rational(q: Q) -> str:
    return str(q)  # Fraction renders as "p" or "p/q" in lowest terms


def parse_rational(text: str) -> Q:
    if not isinstance(text, str):
        raise DocumentError(f"coefficient must be a string, got {text!r}")
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad rational {text!r}: {exc}") from None
    if "." in text or "e" in text.lower():
        raise DocumentError(f"coefficient {text!r} is not an integer fraction")
    return q


def _entries(a: Algebra) -> list[dict]:
    return [{"i": i + 1, "j": j + 1, "k": k + 1, "c": format_rational(c)}
            for (i, j, k), c in sorted(a.constants.items())]


def _parse_entries(entries, dim: int, what: str) -> dict[tuple[int, int, int], Q]:
    constants: dict[tuple[int, int, int], Q] = {}
    for n, e in enumerate(entries):
        try:
            i, j, k = int(e["i"]), int(e["j"]), int(e["k"])
            c = parse_rational(e["c"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"{what} entry {n}: {exc}") from None
        if not (1 <= i <= dim and 1 <= j <= dim and 1 <= k <= dim):
            raise DocumentError(f"{what} entry {n}: index ({i},{j},{k}) out of range 1..{dim}")
        if (i - 1, j - 1, k - 1) in constants:
            raise DocumentError(f"{what} entry {n}: duplicate index ({i},{j},{k})")
        if c == 0:
            raise DocumentError(f"{what} entry {n}: explicit zero coefficient")
        constants[(i - 1, j - 1, k - 1)] = c
    return constants


def serialize(named: NamedAlgebra) -> str:
    doc = {
        "schema": SCHEMA_VERSION,
        "kind": "novikov" if named.product is not None else "lie",
        "name": named.name,
        "dim": named.lie.dim,
        "basis": list(named.lie.labels),
        "bracket": _entries(named.lie),
    }
    if named.product is not None:
        doc["product"] = _entries(named.product)
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def parse(text: str) -> NamedAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema version {doc.get('schema')!r} "
                            f"(expected {SCHEMA_VERSION})")
    kind = doc.get("kind")
    if kind not in ("lie", "novikov"):
        raise DocumentError(f"unknown document kind {kind!r}")
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim <= 0:
        raise DocumentError("dim must be a positive integer")
    basis = doc.get("basis")
    if not isinstance(basis, list) or len(basis) != dim:
        raise DocumentError("basis must list exactly dim labels")
    lie = Algebra(dim, _parse_entries(doc.get("bracket", []), dim, "bracket"),
                  tuple(str(b) for b in basis))
    product = None
    if kind == "novikov":
        if "product" not in doc:
            raise DocumentError("novikov document needs a product block")
        product = Algebra(dim, _parse_entries(doc["product"], dim, "product"),
                          tuple(str(b) for b in basis))
    return NamedAlgebra(str(doc.get("name", "")), lie, product)


def load(path: str) -> NamedAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def dump(named: NamedAlgebra, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(named))
