"""Dense exact matrices over Q or GF(p) and the solvers everything reduces to.

Row reduction is delegated to a backend: the compiled ``_kernels`` module when
it was built, otherwise the pure-Python ``_kernels_py`` twin.  Set
``PERIODICA_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os
from typing import List, Optional, Sequence, Tuple

from .fields import Field

if os.environ.get("PERIODICA_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl


def backend() -> str:
    """Name of the active elimination backend ("cython" or "python")."""
    return _impl.BACKEND


class Mat:
    """An immutable dense matrix with exact entries.

    Storage is a flat row-major list.  All entries live in ``field``; mixing
    fields raises.
    """

    __slots__ = ("field", "rows", "cols", "data", "_rref")

    def __init__(self, field: Field, rows: int, cols: int, data: list):
        if len(data) != rows * cols:
            raise ValueError("entry count must be rows * cols")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data
        self._rref = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence]) -> "Mat":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        flat = []
        for row in rows:
            if len(row) != nc:
                raise ValueError("ragged rows")
            flat.extend(field.coerce(x) for x in row)
        return cls(field, nr, nc, flat)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Mat":
        return cls(field, rows, cols, [field.zero()] * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        m = cls.zeros(field, n, n)
        one = field.one()
        for i in range(n):
            m.data[i * n + i] = one
        return m

    @classmethod
    def column(cls, field: Field, entries: Sequence) -> "Mat":
        return cls(field, len(entries), 1, [field.coerce(x) for x in entries])

    # -- access ---------------------------------------------------------------

    def get(self, i: int, j: int):
        return self.data[i * self.cols + j]

    def row_list(self, i: int) -> list:
        return self.data[i * self.cols:(i + 1) * self.cols]

    def col_list(self, j: int) -> list:
        return [self.data[i * self.cols + j] for i in range(self.rows)]

    def tolist(self) -> List[list]:
        return [self.row_list(i) for i in range(self.rows)]

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        fz = self.field.is_zero
        return all(fz(x) for x in self.data)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        raise TypeError("Mat is not hashable")

    def __repr__(self):
        return f"Mat({self.field!r}, {self.rows}x{self.cols})"

    # -- arithmetic -----------------------------------------------------------

    def _check_field(self, other: "Mat"):
        if self.field != other.field:
            raise ValueError("field mismatch")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        add = self.field.add
        return Mat(self.field, self.rows, self.cols,
                   [add(a, b) for a, b in zip(self.data, other.data)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        sub = self.field.sub
        return Mat(self.field, self.rows, self.cols,
                   [sub(a, b) for a, b in zip(self.data, other.data)])

    def __neg__(self) -> "Mat":
        neg = self.field.neg
        return Mat(self.field, self.rows, self.cols, [neg(a) for a in self.data])

    def scale(self, c) -> "Mat":
        c = self.field.coerce(c)
        mul = self.field.mul
        return Mat(self.field, self.rows, self.cols, [mul(c, a) for a in self.data])

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        n, k, m = self.rows, self.cols, other.cols
        if n == 0 or m == 0 or k == 0:
            return Mat.zeros(self.field, n, m)
        p = self.field.p
        if p:
            data = _impl.fp_matmul(self.data, other.data, n, k, m, p)
        else:
            data = _impl.q_matmul(self.data, other.data, n, k, m)
        return Mat(self.field, n, m, data)

    def transpose(self) -> "Mat":
        out = Mat.zeros(self.field, self.cols, self.rows)
        for i in range(self.rows):
            base = i * self.cols
            for j in range(self.cols):
                out.data[j * self.rows + i] = self.data[base + j]
        return out

    # -- block assembly ---------------------------------------------------------

    def hstack(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        data = []
        for i in range(self.rows):
            data.extend(self.row_list(i))
            data.extend(other.row_list(i))
        return Mat(self.field, self.rows, self.cols + other.cols, data)

    def vstack(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.cols != other.cols:
            raise ValueError("col mismatch")
        return Mat(self.field, self.rows + other.rows, self.cols,
                   self.data + other.data)

    @classmethod
    def block(cls, grid: Sequence[Sequence["Mat"]]) -> "Mat":
        """Assemble a block matrix from a rectangular grid of Mats."""
        rows = None
        for brow in grid:
            part = brow[0]
            for b in brow[1:]:
                part = part.hstack(b)
            rows = part if rows is None else rows.vstack(part)
        assert rows is not None
        return rows

    def take_cols(self, js: Sequence[int]) -> "Mat":
        data = []
        for i in range(self.rows):
            base = i * self.cols
            for j in js:
                data.append(self.data[base + j])
        return Mat(self.field, self.rows, len(js), data)

    # -- elimination ------------------------------------------------------------

    def rref(self) -> Tuple["Mat", Tuple[int, ...]]:
        """Reduced row echelon form; zero rows dropped.  Cached."""
        if self._rref is None:
            p = self.field.p
            if self.rows == 0 or self.cols == 0:
                self._rref = (Mat(self.field, 0, self.cols, []), ())
            else:
                if p:
                    flat, piv = _impl.fp_rref(self.data, self.rows, self.cols, p)
                else:
                    flat, piv = _impl.q_rref(self.data, self.rows, self.cols)
                self._rref = (Mat(self.field, len(piv), self.cols, flat), tuple(piv))
        return self._rref

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> "Mat":
        """Columns form a basis of the null space {x : A x = 0}."""
        R, piv = self.rref()
        free = [j for j in range(self.cols) if j not in set(piv)]
        out = Mat.zeros(self.field, self.cols, len(free))
        one = self.field.one()
        neg = self.field.neg
        for i, fc in enumerate(free):
            out.data[fc * len(free) + i] = one
            for k, pc in enumerate(piv):
                out.data[pc * len(free) + i] = neg(R.get(k, fc))
        return out

    def image_basis(self) -> "Mat":
        """Columns: the pivot columns of A (a basis of the column space)."""
        _, piv = self.rref()
        return self.take_cols(list(piv))

    def solve_matrix(self, B: "Mat") -> Optional["Mat"]:
        """Return X with ``A @ X == B``, or None if any column is inconsistent."""
        self._check_field(B)
        if B.rows != self.rows:
            raise ValueError("shape mismatch")
        aug = self.hstack(B)
        R, piv = aug.rref()
        if any(c >= self.cols for c in piv):
            return None
        X = Mat.zeros(self.field, self.cols, B.cols)
        for k, pc in enumerate(piv):
            for j in range(B.cols):
                X.data[pc * B.cols + j] = R.get(k, self.cols + j)
        return X

    def solve(self, b: Sequence) -> Optional[list]:
        """One solution of ``A x = b`` (free variables set to 0), or None."""
        col = b if isinstance(b, Mat) else Mat.column(self.field, list(b))
        X = self.solve_matrix(col)
        return None if X is None else [X.get(i, 0) for i in range(self.cols)]

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise ValueError("not square")
        X = self.solve_matrix(Mat.identity(self.field, self.rows))
        if X is None:
            raise ValueError("matrix not invertible")
        return X


def rank(a: Mat) -> int:
    return a.rank()


def kernel_basis(a: Mat) -> Mat:
    return a.kernel_basis()


def image_basis(a: Mat) -> Mat:
    return a.image_basis()


def solve(a: Mat, b: Sequence) -> Optional[list]:
    return a.solve(b)


def reduce_mod_rowspace(R: Mat, piv: Sequence[int], vec: list,
                        field: Field) -> list:
    """Reduce a vector modulo the row space of an rref matrix R."""
    out = list(vec)
    sub, mul = field.sub, field.mul
    for k, pc in enumerate(piv):
        c = out[pc]
        if not field.is_zero(c):
            base = k * R.cols
            for j in range(pc, R.cols):
                out[j] = sub(out[j], mul(c, R.data[base + j]))
    return out


def quotient(ambient_dim: int, sub: Mat) -> Tuple[int, Mat]:
    """Quotient of k^n by the column span of ``sub``.

    Returns ``(dim, projection)`` with ``projection @ sub == 0``; the
    projection is onto the coordinates not hit by pivots of the subspace.
    """
    if sub.rows != ambient_dim:
        raise ValueError("subspace columns must live in the ambient space")
    R, piv = sub.transpose().rref()
    free = [j for j in range(ambient_dim) if j not in set(piv)]
    dim = len(free)
    field = sub.field
    proj = Mat.zeros(field, dim, ambient_dim)
    for j in range(ambient_dim):
        e = [field.zero()] * ambient_dim
        e[j] = field.one()
        red = reduce_mod_rowspace(R, piv, e, field)
        for i, fc in enumerate(free):
            proj.data[i * ambient_dim + j] = red[fc]
    return dim, proj
