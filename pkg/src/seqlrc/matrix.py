"""Dense matrices over a finite field.

A :class:`Matrix` is an immutable numpy ``int64`` array of canonical field
integers tagged with its :class:`~seqlrc.field.Field`.  Elimination is
ordinary Gauss-Jordan with field arithmetic; nothing here is floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, FieldMismatch, NoSolution
from .field import Field, gf


class Matrix:
    __slots__ = ("field", "data")

    def __init__(self, field: Field, data, rows: int | None = None, cols: int | None = None):
        arr = np.array(data, dtype=np.int64, copy=True)
        if arr.size == 0:
            arr = arr.reshape(rows if rows is not None else 0, cols if cols is not None else 0)
        if arr.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d array, got shape {arr.shape}")
        if np.any(arr < 0) or np.any(arr >= field.q):
            raise ValueError(f"entries out of range for {field}")
        arr.setflags(write=False)
        self.field = field
        self.data = arr

    @classmethod
    def _wrap(cls, field: Field, arr: np.ndarray) -> "Matrix":
        m = object.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.setflags(write=False)
        m.field = field
        m.data = arr
        return m

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls._wrap(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls._wrap(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> "Matrix":
        return Matrix._wrap(self.field, self.data.T)

    def __getitem__(self, key):
        out = self.data[key]
        if isinstance(out, np.ndarray) and out.ndim == 2:
            return Matrix._wrap(self.field, out)
        return out

    def columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix._wrap(self.field, self.data[:, list(idx)])

    def delete_columns(self, idx: Iterable[int]) -> "Matrix":
        return Matrix._wrap(self.field, np.delete(self.data, list(idx), axis=1))

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and bool(
            np.array_equal(self.data, other.data)
        )

    def __hash__(self):
        return hash((self.field, self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {self.tolist()})"

    def _same_field(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Matrix._wrap(self.field, self.field.add(self.data, other.data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Matrix._wrap(self.field, self.field.sub(self.data, other.data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        if self.cols == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        return Matrix._wrap(self.field, self.field.matmul(self.data, other.data))

    def scale(self, c: int) -> "Matrix":
        return Matrix._wrap(self.field, self.field.mul(self.data, int(c)))

    def vecmul(self, v: Sequence[int]) -> np.ndarray:
        """Row vector times matrix: ``v @ self``."""
        v = np.asarray(v, dtype=np.int64).reshape(1, -1)
        if v.shape[1] != self.rows:
            raise DimensionMismatch(f"vector of length {v.shape[1]} against {self.rows} rows")
        if self.rows == 0:
            return np.zeros(self.cols, dtype=np.int64)
        return self.field.matmul(v, self.data)[0]

    def matvec(self, v: Sequence[int]) -> np.ndarray:
        """``self @ v`` for a column vector ``v``."""
        v = np.asarray(v, dtype=np.int64).reshape(-1, 1)
        if v.shape[0] != self.cols:
            raise DimensionMismatch(f"vector of length {v.shape[0]} against {self.cols} columns")
        if self.cols == 0:
            return np.zeros(self.rows, dtype=np.int64)
        return self.field.matmul(self.data, v)[:, 0]

    def rank(self) -> int:
        return len(rref(self)[1])

    def to_json(self) -> dict:
        return {
            "q": self.field.q,
            "m": self.field.m,
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.tolist(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj: dict | str) -> "Matrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        field = gf(int(obj["q"]))
        if "m" in obj and int(obj["m"]) != field.m:
            raise ValueError(f"q={obj['q']} is inconsistent with m={obj['m']}")
        rows, cols = int(obj["rows"]), int(obj["cols"])
        m = cls(field, obj["entries"], rows, cols)
        if m.shape != (rows, cols):
            raise DimensionMismatch(f"declared {rows}x{cols}, got {m.shape}")
        return m


def _rref_array(field: Field, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    a = np.array(a, dtype=np.int64, copy=True)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    prime = field.m == 1
    p = field.p
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = field.inv(int(a[r, c]))
        if prime:
            a[r] = (a[r] * inv) % p
            factors = a[:, c].copy()
            factors[r] = 0
            if np.any(factors):
                a = (a - factors[:, None] * a[r][None, :]) % p
        else:
            a[r] = field.mul(a[r], inv)
            factors = a[:, c].copy()
            factors[r] = 0
            if np.any(factors):
                a = field.sub(a, field.mul(factors[:, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.  Zero rows are kept at the bottom."""
    a, piv = _rref_array(m.field, m.data)
    return Matrix._wrap(m.field, a), piv


def row_basis(m: Matrix) -> Matrix:
    """RREF with the zero rows dropped: a canonical basis of the row space."""
    a, piv = _rref_array(m.field, m.data)
    return Matrix._wrap(m.field, a[: len(piv)])


def rank(m: Matrix) -> int:
    return m.rank()


def kernel(m: Matrix) -> Matrix:
    """Basis of ``{x : m @ x = 0}``, one vector per row, in RREF.

    The basis has ``cols - rank`` rows; for full column rank it is a
    ``0 x cols`` matrix.
    """
    f = m.field
    n = m.cols
    a, piv = _rref_array(f, m.data)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for row, c in enumerate(free):
        basis[row, c] = 1
        for i, pc in enumerate(piv):
            basis[row, pc] = f.neg(int(a[i, c]))
    out, _ = _rref_array(f, basis)
    return Matrix._wrap(f, out)


def kronecker(a: Matrix, b: Matrix) -> Matrix:
    """Block matrix ``[a_ij * b]`` of shape ``(ra*rb, ca*cb)``."""
    a._same_field(b)
    f = a.field
    prod = f.mul(a.data[:, None, :, None], b.data[None, :, None, :])
    return Matrix._wrap(f, np.asarray(prod).reshape(a.rows * b.rows, a.cols * b.cols))


def hstack(mats: Sequence[Matrix]) -> Matrix:
    f = mats[0].field
    for x in mats[1:]:
        mats[0]._same_field(x)
    return Matrix._wrap(f, np.hstack([x.data for x in mats]))


def vstack(mats: Sequence[Matrix]) -> Matrix:
    f = mats[0].field
    for x in mats[1:]:
        mats[0]._same_field(x)
    return Matrix._wrap(f, np.vstack([x.data for x in mats]))


@dataclass(frozen=True)
class Solution:
    """A particular solution plus a basis of the homogeneous solution space."""

    particular: np.ndarray
    kernel: Matrix

    @property
    def kernel_dim(self) -> int:
        return self.kernel.rows

    @property
    def unique(self) -> bool:
        return self.kernel.rows == 0


def solve(a: Matrix, rhs: Sequence[int]) -> Solution:
    """Solve ``a @ x = rhs``; raise :class:`NoSolution` if inconsistent."""
    rhs = np.asarray(rhs, dtype=np.int64).reshape(-1)
    if rhs.shape[0] != a.rows:
        raise DimensionMismatch(f"rhs of length {rhs.shape[0]} for {a.rows} rows")
    f = a.field
    aug = np.hstack([a.data, rhs.reshape(-1, 1) % f.q])
    red, piv = _rref_array(f, aug)
    if a.cols in piv:
        raise NoSolution("inconsistent linear system")
    x = np.zeros(a.cols, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = red[i, a.cols]
    return Solution(x, kernel(a))
