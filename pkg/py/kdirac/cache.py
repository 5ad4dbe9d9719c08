"""On-disk cache of prolongation matrices.

One text file per matrix: a header line naming the key and the shape, then
one line per row with the entries written as ``a/b+c/d i`` and separated by
``", "``.  Files are written atomically.
"""

from __future__ import annotations

import logging
import os
import re

from kdirac.exactla import ExactMatrix, Scalar
from kdirac.exceptions import CacheErrorCorrupted
from kdirac.utils import atomic_write_text

__all__ = ["MatrixCache"]

logger = logging.getLogger(__name__)

FORMAT_TAG = "kdirac-matrix/1"
_HEADER_RE = re.compile(
    r"^kdirac-matrix/1 k=(\d+) n=(\d+) op=(\S+) degree=(-?\d+) "
    r"weighted=([01]) rows=(\d+) cols=(\d+)$"
)
_UNSAFE_RE = re.compile(r"[^A-Za-z0-9_.=-]")


class MatrixCache:
    """Matrices keyed by (k, n, operator id, degree, weighted flag)."""

    def __init__(self, directory):
        self.directory = os.path.abspath(directory)
        self.events: list[dict] = []
        self.hits = 0
        self.misses = 0

    def path(self, k, n, op_id, degree, weighted):
        safe = _UNSAFE_RE.sub("_", op_id)
        flag = "w" if weighted else "u"
        return os.path.join(self.directory, f"k{k}-n{n}-{safe}-d{degree}-{flag}.mat")

    def _header(self, k, n, op_id, degree, weighted, rows, cols):
        return (
            f"{FORMAT_TAG} k={k} n={n} op={_UNSAFE_RE.sub('_', op_id)} "
            f"degree={degree} weighted={int(bool(weighted))} rows={rows} cols={cols}"
        )

    def _parse(self, text, k, n, op_id, degree, weighted):
        lines = text.split("\n")
        match = _HEADER_RE.match(lines[0]) if lines else None
        if match is None:
            raise CacheErrorCorrupted("missing or malformed header")
        rows, cols = int(match.group(6)), int(match.group(7))
        expected = self._header(k, n, op_id, degree, weighted, rows, cols)
        if lines[0] != expected:
            raise CacheErrorCorrupted(f"header {lines[0]!r} does not match the key")
        body = lines[1:]
        if body and body[-1] == "":
            body.pop()
        if len(body) != rows:
            raise CacheErrorCorrupted(f"expected {rows} rows, found {len(body)}")
        data = {}
        for i, line in enumerate(body):
            entries = line.split(", ") if cols else ([] if line == "" else [line])
            if len(entries) != cols:
                raise CacheErrorCorrupted(f"row {i} has {len(entries)} entries")
            for j, text_value in enumerate(entries):
                value = Scalar.parse(text_value)
                if value:
                    data[(i, j)] = value
        return ExactMatrix.from_sparse(rows, cols, data)

    def load(self, k, n, op_id, degree, weighted):
        """Returns the cached matrix, or None when absent or corrupted.

        A corrupted file is reported, logged and removed so that the caller
        rebuilds it.
        """
        path = self.path(k, n, op_id, degree, weighted)
        try:
            with open(path, encoding="utf-8", errors="replace") as f:
                text = f.read()
        except FileNotFoundError:
            self.misses += 1
            return None
        except OSError as e:
            raise CacheErrorCorrupted(f"cannot read cache file {path}: {e.strerror}") from None
        try:
            rv = self._parse(text, k, n, op_id, degree, weighted)
        except CacheErrorCorrupted as e:
            logger.warning("cache file %s is corrupted (code %s): %s", path, e.code, e.message)
            self.events.append(
                {"code": e.code, "error": type(e).__name__, "path": path, "message": e.message}
            )
            try:
                os.unlink(path)
            except OSError:
                pass
            self.misses += 1
            return None
        self.hits += 1
        return rv

    def store(self, k, n, op_id, degree, weighted, matrix):
        lines = [self._header(k, n, op_id, degree, weighted, matrix.rows, matrix.cols)]
        for i in range(matrix.rows):
            lines.append(
                ", ".join(matrix[i, j].to_text() for j in range(matrix.cols))
            )
        path = self.path(k, n, op_id, degree, weighted)
        try:
            atomic_write_text(path, "\n".join(lines) + "\n")
        except OSError as e:
            raise CacheErrorCorrupted(f"cannot write cache file {path}: {e.strerror}") from None
