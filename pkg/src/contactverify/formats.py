"""Text formats for matrices, chain complexes and group presentations.

Matrix: first line ``rows cols``, then the entries row-major, separated by
whitespace; lines starting with ``#`` are comments.

Chain complex: a JSON object ``{"dims": [...], "boundaries": [...]}`` where
``boundaries[k-1]`` is ``d_k`` as a list of rows.

Presentation: a ``gens:`` line, then one ``rel:`` line per relator with
tokens ``name``, ``name^-1`` (or ``name^k``).
"""

from __future__ import annotations

import json

from .abelian.homology import ChainComplex, ComplexError
from .abelian.matrix import IntMatrix
from .grouppres import Presentation, PresentationError, word_from_string, word_to_string


class FormatError(ValueError):
    pass


def _content_lines(text: str) -> list[str]:
    return [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def parse_matrix(text: str) -> IntMatrix:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("matrix file is empty")
    head = lines[0].split()
    try:
        rows, cols = (int(t) for t in head)
    except ValueError:
        raise FormatError(f"bad matrix header {lines[0]!r}, expected 'rows cols'") from None
    if rows < 0 or cols < 0:
        raise FormatError("matrix dimensions must be nonnegative")
    try:
        entries = [int(t) for ln in lines[1:] for t in ln.split()]
    except ValueError as exc:
        raise FormatError(f"non-integer matrix entry: {exc}") from None
    if len(entries) != rows * cols:
        raise FormatError(f"dimension mismatch: header says {rows}x{cols} "
                          f"({rows * cols} entries), found {len(entries)}")
    return IntMatrix(rows, cols, [entries[i * cols:(i + 1) * cols] for i in range(rows)])


def format_matrix(M: IntMatrix) -> str:
    rows, cols = M.shape
    out = [f"{rows} {cols}"]
    out += [" ".join(str(v) for v in row) for row in M.to_rows()]
    return "\n".join(out) + "\n"


def parse_complex(text: str) -> ChainComplex:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"chain complex is not valid JSON: {exc}") from None
    if not isinstance(obj, dict) or "dims" not in obj:
        raise FormatError("chain complex needs an object with 'dims' and 'boundaries'")
    dims = obj["dims"]
    bounds = obj.get("boundaries", [])
    if not isinstance(dims, list) or not all(isinstance(d, int) for d in dims):
        raise FormatError("'dims' must be a list of integers")
    if not isinstance(bounds, list) or len(bounds) != max(len(dims) - 1, 0):
        raise FormatError(f"expected {max(len(dims) - 1, 0)} boundary matrices")
    for k, b in enumerate(bounds, start=1):
        if not isinstance(b, list) or not all(
                isinstance(r, list) and all(type(v) is int for v in r) for r in b):
            raise FormatError(f"boundary in degree {k} must be a list of integer rows")
    try:
        return ChainComplex.from_lists(dims, bounds)
    except (ComplexError, TypeError) as exc:
        raise FormatError(str(exc)) from None


def format_complex(C: ChainComplex) -> str:
    return json.dumps({"dims": list(C.dims), "boundaries": [b.to_rows() for b in C.boundaries]},
                      sort_keys=True) + "\n"


def parse_presentation(text: str) -> Presentation:
    gens = None
    rels = []
    for ln in _content_lines(text):
        key, sep, rest = ln.partition(":")
        key = key.strip()
        if not sep or key not in ("gens", "rel"):
            raise FormatError(f"expected a 'gens:' or 'rel:' line, got {ln!r}")
        if key == "gens":
            if gens is not None:
                raise FormatError("more than one 'gens:' line")
            gens = rest.split()
        else:
            if gens is None:
                raise FormatError("'rel:' before 'gens:'")
            try:
                rels.append(word_from_string(rest))
            except PresentationError as exc:
                raise FormatError(str(exc)) from None
    if gens is None:
        raise FormatError("missing 'gens:' line")
    try:
        return Presentation(tuple(gens), tuple(rels))
    except PresentationError as exc:
        raise FormatError(str(exc)) from None


def format_presentation(P: Presentation) -> str:
    out = ["gens: " + " ".join(P.generators)]
    out += [("rel: " + word_to_string(r)).rstrip() for r in P.relators]
    return "\n".join(out) + "\n"
