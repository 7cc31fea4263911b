"""Text file formats for codes and Gram lattices.

Code file::

    # optional comments
    q n k
    <k generator rows, entries separated by single spaces>

Gram file::

    dim
    <dim rows of the symmetric Gram matrix>
    basis <scale>            (optional section)
    <dim rows of ambient integer basis coordinates>
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .algebra import FpMatrix, format_matrix
from .codes import LinearCode, from_generator
from .lattices import GramLattice


class FormatError(ValueError):
    pass


def _content_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]


def _ints(line: str) -> list[int]:
    try:
        return [int(t) for t in line.split()]
    except ValueError as exc:
        raise FormatError(f"expected integers, got {line!r}") from exc


def parse_code(text: str) -> LinearCode:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty code file")
    header = _ints(lines[0])
    if len(header) != 3:
        raise FormatError("code header must be 'q n k'")
    q, n, k = header
    rows = [_ints(ln) for ln in lines[1:]]
    if len(rows) != k:
        raise FormatError(f"header announces {k} rows, found {len(rows)}")
    if any(len(r) != n for r in rows):
        raise FormatError(f"every generator row must have {n} entries")
    try:
        data = np.array(rows, dtype=np.int64).reshape(k, n)
        C = from_generator(FpMatrix(data, q))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if C.k != k:
        raise FormatError(f"generator rows are dependent (rank {C.k} < {k})")
    return C


def format_code(C: LinearCode) -> str:
    body = format_matrix(C.generator.tolist())
    return f"{C.p} {C.n} {C.k}\n{body}\n" if body else f"{C.p} {C.n} {C.k}\n"


def read_code(path) -> LinearCode:
    return parse_code(Path(path).read_text())


def write_code(C: LinearCode, path, comment: str = "") -> None:
    head = "".join(f"# {ln}\n" for ln in comment.splitlines())
    Path(path).write_text(head + format_code(C))


def parse_gram(text: str) -> GramLattice:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty Gram file")
    head = _ints(lines[0])
    if len(head) != 1:
        raise FormatError("Gram header must be the dimension")
    dim = head[0]
    if len(lines) < 1 + dim:
        raise FormatError("Gram file truncated")
    gram = [_ints(ln) for ln in lines[1 : 1 + dim]]
    if any(len(r) != dim for r in gram):
        raise FormatError("Gram rows must have dim entries")
    rest = lines[1 + dim :]
    basis = scale = None
    if rest:
        tok = rest[0].split()
        if tok[0] != "basis" or len(tok) != 2:
            raise FormatError("expected 'basis <scale>' section")
        scale = int(tok[1])
        basis = [_ints(ln) for ln in rest[1:]]
        if len(basis) != dim or len({len(r) for r in basis}) != 1:
            raise FormatError("basis section must have dim rows of equal length")
    try:
        return GramLattice(gram, basis, scale)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def format_gram(L: GramLattice) -> str:
    out = f"{L.dim}\n{format_matrix(L.gram.tolist())}\n"
    if L.basis is not None:
        out += f"basis {L.scale}\n{format_matrix(L.basis.tolist())}\n"
    return out


def read_gram(path) -> GramLattice:
    return parse_gram(Path(path).read_text())


def write_gram(L: GramLattice, path, comment: str = "") -> None:
    head = "".join(f"# {ln}\n" for ln in comment.splitlines())
    Path(path).write_text(head + format_gram(L))
