"""Matrix Market text IO: 1-based coordinate and array variants, real or
integer fields, general or symmetric storage (symmetric expands on read).

Values are written with 17 significant digits so that write -> read round
trips are bit exact for float64.
"""

import numpy as np

from .sparse import SparseMatrix

_FIELDS = ("real", "integer")
_SYMMETRIES = ("general", "symmetric")


class MatrixMarketError(ValueError):
    """Parse failure; carries the 1-based line number."""

    def __init__(self, message, line_no=None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


def _fmt(v):
    return f"{v:.17g}"


def _parse_header(line):
    parts = line.strip().split()
    if len(parts) != 5 or parts[0].lower() != "%%matrixmarket":
        raise MatrixMarketError("expected '%%MatrixMarket object format field symmetry' header", 1)
    _, obj, fmt, field, symmetry = (p.lower() for p in parts)
    if obj != "matrix":
        raise MatrixMarketError(f"unsupported object {obj!r}", 1)
    if fmt not in ("coordinate", "array"):
        raise MatrixMarketError(f"unsupported format {fmt!r}", 1)
    if field not in _FIELDS:
        raise MatrixMarketError(f"unsupported field {field!r} (real/integer only)", 1)
    if symmetry not in _SYMMETRIES:
        raise MatrixMarketError(f"unsupported symmetry {symmetry!r} (general/symmetric only)", 1)
    return fmt, field, symmetry


def _parse_value(token, line_no):
    try:
        return float(token)
    except ValueError:
        raise MatrixMarketError(f"bad numeric value {token!r}", line_no) from None


def read_matrix_market(path):
    """Read a Matrix Market file into a SparseMatrix.

    Symmetric storage is expanded to full form. Malformed headers,
    out-of-range indices, and duplicate entries raise MatrixMarketError
    with the offending line number.
    """
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise MatrixMarketError("empty file", 1)
    fmt, _field, symmetry = _parse_header(lines[0])

    pos = 1
    while pos < len(lines) and (lines[pos].startswith("%") or not lines[pos].strip()):
        pos += 1
    if pos >= len(lines):
        raise MatrixMarketError("missing size line", len(lines))
    size_parts = lines[pos].split()
    size_line = pos + 1

    if fmt == "coordinate":
        if len(size_parts) != 3:
            raise MatrixMarketError("coordinate size line must be 'rows cols nnz'", size_line)
        try:
            m, n, nnz = (int(p) for p in size_parts)
        except ValueError:
            raise MatrixMarketError("bad size line", size_line) from None
        if symmetry == "symmetric" and m != n:
            raise MatrixMarketError("symmetric matrix must be square", size_line)
        rows, cols, vals = [], [], []
        seen = set()
        count = 0
        for lineno in range(size_line, len(lines)):
            raw = lines[lineno].strip()
            if not raw or raw.startswith("%"):
                continue
            if count >= nnz:
                raise MatrixMarketError(f"more than {nnz} entries", lineno + 1)
            parts = raw.split()
            if len(parts) != 3:
                raise MatrixMarketError("entry must be 'row col value'", lineno + 1)
            try:
                i, j = int(parts[0]), int(parts[1])
            except ValueError:
                raise MatrixMarketError("bad index", lineno + 1) from None
            v = _parse_value(parts[2], lineno + 1)
            if not (1 <= i <= m and 1 <= j <= n):
                raise MatrixMarketError(f"index ({i}, {j}) out of range for {m}x{n}", lineno + 1)
            if symmetry == "symmetric" and i < j:
                raise MatrixMarketError("symmetric storage requires row >= col", lineno + 1)
            if (i, j) in seen:
                raise MatrixMarketError(f"duplicate entry ({i}, {j})", lineno + 1)
            seen.add((i, j))
            rows.append(i - 1)
            cols.append(j - 1)
            vals.append(v)
            if symmetry == "symmetric" and i != j:
                rows.append(j - 1)
                cols.append(i - 1)
                vals.append(v)
            count += 1
        if count < nnz:
            raise MatrixMarketError(f"expected {nnz} entries, found {count}", len(lines))
        return SparseMatrix(m, n, np.array(rows, dtype=np.int64),
                            np.array(cols, dtype=np.int64), np.array(vals))

    # array format: values in column-major order, lower triangle if symmetric
    if len(size_parts) != 2:
        raise MatrixMarketError("array size line must be 'rows cols'", size_line)
    try:
        m, n = (int(p) for p in size_parts)
    except ValueError:
        raise MatrixMarketError("bad size line", size_line) from None
    if symmetry == "symmetric" and m != n:
        raise MatrixMarketError("symmetric matrix must be square", size_line)
    if symmetry == "general":
        coords = [(i, j) for j in range(n) for i in range(m)]
    else:
        coords = [(i, j) for j in range(n) for i in range(j, m)]
    A = np.zeros((m, n))
    k = 0
    for lineno in range(size_line, len(lines)):
        raw = lines[lineno].strip()
        if not raw or raw.startswith("%"):
            continue
        for token in raw.split():
            if k >= len(coords):
                raise MatrixMarketError(f"more than {len(coords)} values", lineno + 1)
            i, j = coords[k]
            v = _parse_value(token, lineno + 1)
            A[i, j] = v
            if symmetry == "symmetric":
                A[j, i] = v
            k += 1
    if k < len(coords):
        raise MatrixMarketError(f"expected {len(coords)} values, found {k}", len(lines))
    return SparseMatrix.from_dense(A)


def write_matrix_market(M, path, symmetry="general", comment=None):
    """Write M to path; SparseMatrix goes to coordinate format, a dense
    array to array format. symmetry='symmetric' stores the lower triangle
    (M must be exactly symmetric)."""
    if symmetry not in _SYMMETRIES:
        raise ValueError(f"symmetry must be one of {_SYMMETRIES}")
    dense = not isinstance(M, SparseMatrix)
    if dense:
        M = np.asarray(M, dtype=float)
        if M.ndim != 2:
            raise ValueError("dense input must be 2-D")
        rows, cols = M.shape
    else:
        rows, cols = M.rows, M.cols
    if symmetry == "symmetric":
        full = M if dense else M.to_dense()
        if rows != cols or not np.array_equal(full, full.T):
            raise ValueError("symmetric output requires an exactly symmetric square matrix")

    out = []
    fmt = "array" if dense else "coordinate"
    out.append(f"%%MatrixMarket matrix {fmt} real {symmetry}")
    if comment:
        for line in comment.splitlines():
            out.append(f"% {line}")
    if dense:
        out.append(f"{rows} {cols}")
        if symmetry == "general":
            for j in range(cols):
                for i in range(rows):
                    out.append(_fmt(M[i, j]))
        else:
            for j in range(cols):
                for i in range(j, rows):
                    out.append(_fmt(M[i, j]))
    else:
        if symmetry == "symmetric":
            mask = M.row >= M.col
            r, c, d = M.row[mask], M.col[mask], M.data[mask]
        else:
            r, c, d = M.row, M.col, M.data
        out.append(f"{rows} {cols} {d.size}")
        for i, j, v in zip(r, c, d):
            out.append(f"{i + 1} {j + 1} {_fmt(v)}")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(out) + "\n")
