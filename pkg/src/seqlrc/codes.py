"""Linear codes over GF(q) and the component codes used by the product construction.

Coordinates are 0-based everywhere except :meth:`LinearCode.puncture`, which
takes 1-based positions so that ``C.puncture({1, 5})`` reads like the usual
``C^{*{1,5}}`` notation.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DistanceUnknown,
    NonPrime,
    ParameterViolation,
    RankDrop,
)
from .field import Field, find_primitive_element, gf, make_extension_field, prime_power
from .matrix import Matrix, kernel, row_basis

DEFAULT_DISTANCE_BUDGET = 10**8
# rows of the inner meet-in-the-middle table and elements per numpy batch
_LOW_TABLE_ROWS = 1 << 14
_BATCH_ELEMENTS = 1 << 22


def distance_budget() -> int:
    env = os.environ.get("SLRC_BUDGET_OPS")
    return int(env) if env else DEFAULT_DISTANCE_BUDGET


@dataclass(frozen=True)
class Distance:
    d: int
    exact: bool

    @property
    def tag(self) -> str:
        return "exact" if self.exact else "lower-bound"

    def __int__(self) -> int:
        return self.d


def all_vectors(q: int, k: int) -> np.ndarray:
    """Every vector of GF(q)^k, as rows in canonical (little-endian) order."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(q**k, dtype=np.int64)[:, None]
    return (idx // (q ** np.arange(k, dtype=np.int64))[None, :]) % q


def projective_vectors(q: int, k: int) -> np.ndarray:
    """Nonzero vectors of GF(q)^k whose first nonzero entry is 1."""
    if k == 0:
        return np.zeros((0, 0), dtype=np.int64)
    v = all_vectors(q, k)
    v = v[1:]
    first = v[np.arange(len(v)), np.argmax(v != 0, axis=1)]
    return v[first == 1]


class LinearCode:
    """An ``[n, k]_q`` code given by a full-row-rank generator matrix."""

    def __init__(
        self,
        generator: Matrix,
        name: str | None = None,
        *,
        distance_lower_bound: int | None = None,
    ):
        rank = generator.rank()
        if rank != generator.rows:
            raise ParameterViolation(
                f"generator matrix has {generator.rows} rows but rank {rank}"
            )
        self.generator = generator
        self.field: Field = generator.field
        self.name = name or f"C[{generator.cols},{generator.rows}]"
        self._distance_lower_bound = distance_lower_bound
        self._lock = threading.Lock()
        self._parity: Matrix | None = None
        self._distance: Distance | None = None

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def k(self) -> int:
        return self.generator.rows

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def rate(self) -> float:
        return self.k / self.n

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} [{self.n}, {self.k}]_{self.q}>"

    @property
    def parity_check(self) -> Matrix:
        """``(n-k) x n`` parity-check matrix in RREF."""
        with self._lock:
            if self._parity is None:
                self._parity = kernel(self.generator)
            return self._parity

    def encode(self, msg: Sequence[int]) -> np.ndarray:
        msg = np.asarray(msg, dtype=np.int64)
        if msg.shape != (self.k,):
            raise DimensionMismatch(f"message of shape {msg.shape} for k={self.k}")
        return self.generator.vecmul(msg)

    def contains(self, word: Sequence[int]) -> bool:
        word = np.asarray(word, dtype=np.int64)
        if word.shape != (self.n,):
            return False
        return not np.any(self.parity_check.matvec(word))

    def codewords(self) -> Iterator[np.ndarray]:
        for msg in all_vectors(self.q, self.k):
            yield self.encode(msg)

    def dual(self) -> "LinearCode":
        return LinearCode(self.parity_check, name=f"dual({self.name})")

    def same_code(self, other: "LinearCode") -> bool:
        return row_basis(self.generator) == row_basis(other.generator)

    def puncture(self, positions: Iterable[int]) -> "LinearCode":
        """Delete the given 1-based coordinates from every codeword."""
        pos = sorted(set(int(i) for i in positions))
        for i in pos:
            if not 1 <= i <= self.n:
                raise ParameterViolation(f"puncture position {i} outside [1, {self.n}]")
        if not pos:
            return self
        g = self.generator.delete_columns([i - 1 for i in pos])
        if g.rank() < self.k:
            raise RankDrop(f"puncturing {self.name} at {pos} loses dimension")
        label = ",".join(map(str, pos))
        lb = self._distance_lower_bound
        return LinearCode(
            g,
            name=f"punct({self.name}; {label})",
            distance_lower_bound=None if lb is None else max(1, lb - len(pos)),
        )

    @property
    def distance_lower_bound(self) -> int:
        return self._distance_lower_bound or 1

    def min_distance(self, budget: int | None = None) -> Distance:
        """Exact minimum distance by exhaustive enumeration when ``q**k <= budget``."""
        with self._lock:
            cached = self._distance
        if cached is not None and (cached.exact or budget is None):
            return cached
        budget = distance_budget() if budget is None else budget
        if self.q**self.k > budget:
            return Distance(self.distance_lower_bound, False)
        d, _ = min_weight_word(self.field, self.generator.data)
        result = Distance(d, True)
        with self._lock:
            self._distance = result
        return result

    @property
    def d(self) -> int:
        return self.min_distance().d

    def min_weight_codeword(self) -> np.ndarray:
        _, word = min_weight_word(self.field, self.generator.data)
        return word

    def is_mds(self, budget: int | None = None) -> bool:
        dist = self.min_distance(budget)
        if not dist.exact:
            raise DistanceUnknown(f"distance of {self.name} not computable within budget")
        return dist.d == self.n - self.k + 1


def min_weight_word(field: Field, g: np.ndarray) -> tuple[int, np.ndarray]:
    """Minimum weight over all nonzero ``m @ g`` and one word attaining it.

    Messages split into a high part, enumerated projectively, and a low part
    whose codewords are tabulated once; scaling never changes weight.
    For ``k = 0`` returns ``n + 1`` and the zero word.
    """
    k, n = g.shape
    q = field.q
    if k == 0:
        return n + 1, np.zeros(n, dtype=np.int64)
    k_lo = k
    while k_lo > 1 and q**k_lo > _LOW_TABLE_ROWS:
        k_lo -= 1
    k_hi = k - k_lo
    low = field.matmul(all_vectors(q, k_lo), g[k_hi:])
    best = n + 1
    best_word = None
    low_nz = low[1:]
    w = np.count_nonzero(low_nz, axis=1)
    if w.size:
        i = int(np.argmin(w))
        best, best_word = int(w[i]), low_nz[i]
    if k_hi:
        high = field.matmul(projective_vectors(q, k_hi), g[:k_hi])
        step = max(1, _BATCH_ELEMENTS // max(1, low.size))
        for s in range(0, len(high), step):
            words = field.add(high[s : s + step, None, :], low[None, :, :])
            w = np.count_nonzero(words, axis=2)
            flat = int(np.argmin(w))
            a, b = divmod(flat, w.shape[1])
            if w[a, b] < best:
                best, best_word = int(w[a, b]), words[a, b]
                if best == 1:
                    break
    return best, np.asarray(best_word, dtype=np.int64)


# --- component code constructors ----------------------------------------

_PRINTED_P3 = [[1, 0, 1, 2], [0, 1, 1, 1]]


def _field_for(q: int) -> Field:
    try:
        return gf(q)
    except NonPrime as exc:
        raise ParameterViolation(str(exc)) from exc


def make_R(q: int, n: int, k: int) -> LinearCode:
    """Reed-Solomon ``[n, k, n-k+1]_q``: evaluations of polynomials of degree < k.

    Evaluation points are the first ``n`` field elements in canonical order.
    """
    f = _field_for(q)
    if not 1 <= k <= n <= q:
        raise ParameterViolation(f"R({q},{n},{k}) needs 1 <= k <= n <= q")
    g = np.zeros((k, n), dtype=np.int64)
    for j in range(k):
        for i in range(n):
            g[j, i] = f.pow(i, j)
    return LinearCode(Matrix(f, g), name=f"R({q},{n},{k})", distance_lower_bound=n - k + 1)


def make_P(q: int) -> LinearCode:
    """The doubly-extended RS code ``[q+1, 2, q]_q``.

    For q = 3 this is exactly ``[[1,0,1,2],[0,1,1,1]]``; otherwise the RREF of
    the evaluations of ``1, x`` at every field element plus the column
    ``(0, 1)`` picking the leading coefficient.
    """
    f = _field_for(q)
    if q == 3:
        g = Matrix(f, _PRINTED_P3)
    else:
        ev = make_R(q, q, 2).generator.data
        g = row_basis(Matrix(f, np.hstack([ev, [[0], [1]]])))
    return LinearCode(g, name=f"P({q})", distance_lower_bound=q)


def make_D(q: int, n: int) -> LinearCode:
    """``[n, n-1, 2]_q`` with generator ``[I | 1]``."""
    f = _field_for(q)
    if n < 2:
        raise ParameterViolation(f"D({q},{n}) needs n >= 2")
    g = np.hstack([np.eye(n - 1, dtype=np.int64), np.ones((n - 1, 1), dtype=np.int64)])
    return LinearCode(Matrix(f, g), name=f"D({q},{n})", distance_lower_bound=2)


def multiplicative_order_mod(q: int, n: int) -> int:
    if math.gcd(q, n) != 1:
        raise ParameterViolation(f"gcd({q}, {n}) != 1")
    if n == 1:
        return 1
    m, x = 1, q % n
    while x != 1:
        x = x * q % n
        m += 1
    return m


def cyclotomic_cosets(q: int, n: int, exponents: Iterable[int]) -> list[tuple[int, ...]]:
    """q-cyclotomic cosets mod ``n`` covering ``exponents``, each sorted, by smallest member."""
    seen: set[int] = set()
    out = []
    for e in sorted(set(x % n for x in exponents)):
        if e in seen:
            continue
        coset = []
        x = e
        while x not in coset:
            coset.append(x)
            x = x * q % n
        seen.update(coset)
        out.append(tuple(sorted(coset)))
    return out


def _poly_mul_ext(f: Field, a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = f.add(out[i + j], f.mul(x, y))
    return out


@dataclass(frozen=True)
class BchDesign:
    q: int
    n: int
    designed_distance: int
    extension_degree: int
    beta: int
    cosets: tuple[tuple[int, ...], ...]
    generator_poly: tuple[int, ...]

    @property
    def k(self) -> int:
        return self.n - (len(self.generator_poly) - 1)


def bch_design(q: int, n: int, designed_d: int) -> BchDesign:
    """Narrow-sense BCH data: cosets of ``1..d-1`` and ``g(x)`` (coefficients low->high)."""
    try:
        p, s = prime_power(q)
    except NonPrime as exc:
        raise ParameterViolation(str(exc)) from exc
    if s != 1:
        raise ParameterViolation("BCH codes are supported over prime fields only")
    if n < 2 or not 2 <= designed_d <= n:
        raise ParameterViolation(f"B({q},{n},{designed_d}) needs 2 <= d <= n")
    m = multiplicative_order_mod(q, n)
    if m > 4:
        raise ParameterViolation(f"ord_{n}({q}) = {m} exceeds the supported extension degree")
    big = make_extension_field(p, m)
    alpha = find_primitive_element(big).value
    beta = big.pow(alpha, (big.q - 1) // n)
    cosets = cyclotomic_cosets(q, n, range(1, designed_d))
    g = [1]
    for coset in cosets:
        minpoly = [1]
        for j in coset:
            minpoly = _poly_mul_ext(big, minpoly, [big.neg(big.pow(beta, j)), 1])
        if any(c >= q for c in minpoly):
            raise AssertionError(f"minimal polynomial of beta^{coset[0]} not over GF({q})")
        g = _poly_mul_ext(big, g, minpoly)
    return BchDesign(q, n, designed_d, m, beta, tuple(cosets), tuple(int(c) for c in g))


def make_BCH(q: int, n: int, designed_d: int) -> LinearCode:
    """Narrow-sense BCH code of length ``n`` and designed distance ``designed_d`` over GF(q).

    Coordinate ``j`` is the coefficient of ``x^j``; rows are the shifts
    ``x^i g(x)``.
    """
    design = bch_design(q, n, designed_d)
    f = gf(q)
    k = design.k
    if k < 1:
        raise ParameterViolation(f"B({q},{n},{designed_d}) has dimension {k}")
    g = np.zeros((k, n), dtype=np.int64)
    poly = design.generator_poly
    for i in range(k):
        g[i, i : i + len(poly)] = poly
    return LinearCode(
        Matrix(f, g), name=f"B({q},{n},{designed_d})", distance_lower_bound=designed_d
    )


def column_subsets_independent(code: LinearCode, size: int, samples: int, rng) -> bool:
    """Check ``samples`` random ``size``-subsets of generator columns for independence."""
    if size <= 0:
        return True
    g = code.generator
    for _ in range(samples):
        idx = sorted(rng.choice(code.n, size=size, replace=False).tolist())
        if g.columns(idx).rank() < size:
            return False
    return True


def dual_distance(code: LinearCode, budget: int | None = None) -> Distance:
    if code.k == code.n:
        return Distance(code.n + 1, True)
    return code.dual().min_distance(budget)
