"""Sequential locally recoverable codes: recovery vectors, locality, alternativity and products.

Terminology
-----------
A *recovery vector* for coordinate ``i`` is a dual codeword ``v`` with
``v_i != 0``; it expresses ``x_i = sum_j -v_j/v_i * x_j`` over the rest of
its support.  ``Omega_r(i)`` is the set of such vectors of weight at most
``r + 1``, and the alternativity ``a(i)`` counts their distinct supports.

Low-weight dual words are enumerated from the RREF parity-check matrix
``H``: the restriction of ``u @ H`` to the pivot columns of ``H`` is ``u``
itself, so a dual word of weight ``<= w`` comes from some ``u`` of weight
``<= w``.  This makes the search exact and bounded by
``sum_j C(n-k, j) (q-1)^(j-1)`` projective coefficient vectors.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field as dc_field
from functools import reduce
from itertools import combinations, product as iproduct
from typing import Iterator, Sequence

import numpy as np

from .codes import Distance, LinearCode, all_vectors
from .errors import (
    BudgetExceeded,
    FieldMismatch,
    IndexOutOfRange,
    LocalityMismatch,
    NoRecovery,
)
from .field import Field
from .matrix import Matrix, kronecker

DEFAULT_DUAL_BUDGET = 5 * 10**7
DEFAULT_SUBSET_BUDGET = 10**7
_BATCH_ELEMENTS = 1 << 22


# --- product codes --------------------------------------------------------


class ProductCode(LinearCode):
    """``C_1 (x) ... (x) C_l`` with generator ``G_1 (x) ... (x) G_l``.

    Flat coordinate order is row-major over ``(i_1, ..., i_l)`` with the last
    factor varying fastest.
    """

    def __init__(self, factors: Sequence[LinearCode], name: str | None = None):
        factors = list(factors)
        if not factors:
            raise ValueError("a product needs at least one factor")
        f0 = factors[0].field
        for c in factors[1:]:
            if c.field != f0:
                raise FieldMismatch(f"{c.name} is over {c.field!r}, expected {f0!r}")
        gen = reduce(kronecker, [c.generator for c in factors])
        lb = math.prod(c.distance_lower_bound for c in factors)
        super().__init__(gen, name=name or " x ".join(_paren(c) for c in factors),
                         distance_lower_bound=lb)
        self.factors = factors
        self.shape = tuple(c.n for c in factors)

    @property
    def ell(self) -> int:
        return len(self.factors)

    def flat_index(self, coords: Sequence[int]) -> int:
        if len(coords) != self.ell:
            raise IndexOutOfRange(f"expected {self.ell} coordinates, got {len(coords)}")
        idx = 0
        for c, n in zip(coords, self.shape):
            if not 0 <= c < n:
                raise IndexOutOfRange(f"coordinate {tuple(coords)} outside shape {self.shape}")
            idx = idx * n + int(c)
        return idx

    def coords(self, flat: int) -> tuple[int, ...]:
        if not 0 <= flat < self.n:
            raise IndexOutOfRange(f"flat index {flat} outside [0, {self.n})")
        out = []
        for n in reversed(self.shape):
            flat, r = divmod(flat, n)
            out.append(r)
        return tuple(reversed(out))

    def line(self, axis: int, fixed: Sequence[int]) -> list[int]:
        """Flat indices of the axis-parallel line along ``axis``.

        ``fixed`` holds the coordinates of the other axes in order.
        """
        if not 0 <= axis < self.ell or len(fixed) != self.ell - 1:
            raise IndexOutOfRange(f"bad line spec axis={axis} fixed={tuple(fixed)}")
        base = list(fixed[:axis]) + [0] + list(fixed[axis:])
        out = []
        for t in range(self.shape[axis]):
            base[axis] = t
            out.append(self.flat_index(base))
        return out

    def lines(self, axis: int) -> Iterator[tuple[tuple[int, ...], list[int]]]:
        others = [range(n) for j, n in enumerate(self.shape) if j != axis]
        for fixed in iproduct(*others):
            yield fixed, self.line(axis, fixed)


def _paren(c: LinearCode) -> str:
    return f"({c.name})" if isinstance(c, ProductCode) else c.name


# --- low-weight dual codewords -------------------------------------------


def _pivots(h: Matrix) -> list[int]:
    return [int(np.argmax(row != 0)) for row in h.data]


def dual_enumeration_cost(code: LinearCode, max_weight: int) -> int:
    r = code.n - code.k
    q = code.q
    return sum(math.comb(r, j) * (q - 1) ** (j - 1) for j in range(1, min(max_weight, r) + 1))


def low_weight_dual_words(
    code: LinearCode, max_weight: int, budget: int | None = DEFAULT_DUAL_BUDGET
) -> np.ndarray:
    """All dual codewords of weight ``1..max_weight``, one per projective class.

    Rows are normalised so their first pivot entry is 1.  With ``H = [I | A]``
    up to column order, a word ``u @ H`` has weight ``wt(u) + wt(u @ A)``, so
    only the ``k`` non-pivot columns are computed per candidate.
    """
    n = code.n
    h = code.parity_check
    f = code.field
    q = f.q
    rows = h.rows
    if max_weight <= 0 or rows == 0:
        return np.zeros((0, n), dtype=np.int64)
    cost = dual_enumeration_cost(code, max_weight)
    if budget is not None and cost > budget:
        raise BudgetExceeded(
            f"{cost} dual coefficient vectors for weight <= {max_weight} exceeds budget {budget}"
        )
    piv = np.array(_pivots(h), dtype=np.int64)
    free = np.setdiff1d(np.arange(n), piv)
    a_mat = h.data[:, free]
    # small prime fields: exact float BLAS products, since entries stay below 2^53
    use_blas = f.m == 1 and (q - 1) ** 2 * rows < 2**52
    a_float = a_mat.astype(np.float64) if use_blas else None
    found = []
    for j in range(1, min(max_weight, rows) + 1):
        coeffs = all_vectors(q - 1, j - 1) + 1
        coeffs = np.hstack([np.ones((len(coeffs), 1), dtype=np.int64), coeffs])
        slack = max_weight - j
        per_subset = len(coeffs) * max(len(free), 1)
        step = max(1, _BATCH_ELEMENTS // per_subset)
        subsets = combinations(range(rows), j)
        while True:
            chunk = np.array(list(_take(subsets, step)), dtype=np.int64).reshape(-1, j)
            if len(chunk) == 0:
                break
            if slack == 0 and f.m == 1 and j > 1:
                # top layer: u @ A[U] = 0 needs the rows A[U] to be dependent
                chunk = chunk[_batched_rank(a_mat[chunk], q) < j]
                if len(chunk) == 0:
                    continue
            if use_blas:
                tail = np.matmul(coeffs.astype(np.float64)[None], a_float[chunk])
                tail = np.mod(tail, q).astype(np.int64)
            else:
                tail = np.zeros((len(chunk), len(coeffs), len(free)), dtype=np.int64)
                for t in range(j):
                    term = f.mul(coeffs[None, :, t, None], a_mat[chunk[:, t]][:, None, :])
                    tail = f.add(tail, term)
            keep = np.count_nonzero(tail, axis=2) <= slack
            if not np.any(keep):
                continue
            s_idx, c_idx = np.nonzero(keep)
            words = np.zeros((len(s_idx), n), dtype=np.int64)
            words[np.arange(len(s_idx))[:, None], piv[chunk[s_idx]]] = coeffs[c_idx]
            words[:, free] = tail[s_idx, c_idx]
            found.append(words)
    if not found:
        return np.zeros((0, n), dtype=np.int64)
    return np.vstack(found)


def _batched_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of matrices over the prime field GF(p)."""
    a = np.array(mats, dtype=np.int64) % p
    s, rows, cols = a.shape
    used = np.zeros((s, rows), dtype=bool)
    inv = np.array([0] + [pow(x, p - 2, p) for x in range(1, p)], dtype=np.int64)
    ar = np.arange(s)
    for c in range(cols):
        cand = (a[:, :, c] != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        prow = np.argmax(cand, axis=1)
        sel = ar[has]
        pr = prow[has]
        pivot_rows = a[sel, pr] * inv[a[sel, pr, c]][:, None] % p
        factors = a[sel, :, c].copy()
        factors[np.arange(len(sel)), pr] = 0
        a[sel] = (a[sel] - factors[:, :, None] * pivot_rows[:, None, :]) % p
        a[sel, pr] = pivot_rows
        used[sel, pr] = True
    return used.sum(axis=1)


def _take(it, k):
    for _ in range(k):
        try:
            yield next(it)
        except StopIteration:
            return


def all_dual_words(code: LinearCode, limit: int = 10**6) -> np.ndarray:
    """Every nonzero dual codeword; refuses when ``q**(n-k) > limit``."""
    r = code.n - code.k
    if code.q**r > limit:
        raise BudgetExceeded(f"dual code has {code.q}^{r} words")
    words = code.field.matmul(all_vectors(code.q, r), code.parity_check.data) if r else \
        np.zeros((1, code.n), dtype=np.int64)
    return words[1:]


def supports_of(words: np.ndarray) -> np.ndarray:
    """Distinct supports of ``words`` as a boolean matrix, in a canonical order."""
    if len(words) == 0:
        return np.zeros((0, words.shape[1]), dtype=bool)
    mask = words != 0
    packed = np.packbits(mask, axis=1, bitorder="little")
    _, idx = np.unique(packed, axis=0, return_index=True)
    return mask[np.sort(idx)]


# --- recovery vectors -----------------------------------------------------


@dataclass(frozen=True)
class RecoveryVector:
    """Dual codeword ``vector`` used to repair coordinate ``target``."""

    field: Field
    vector: tuple[int, ...]
    target: int

    def __post_init__(self):
        if self.vector[self.target] == 0:
            raise ValueError("target coordinate must lie in the support")

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.vector) if x)

    @property
    def recovery_set(self) -> frozenset[int]:
        return self.support - {self.target}

    @property
    def weight(self) -> int:
        return len(self.support)

    @property
    def coefficients(self) -> dict[int, int]:
        """``{j: a_j}`` with ``x_target = sum a_j x_j`` for every codeword."""
        f = self.field
        inv = f.inv(self.vector[self.target])
        return {
            j: int(f.neg(f.mul(self.vector[j], inv)))
            for j in sorted(self.recovery_set)
        }

    def repair(self, word: Sequence[int]) -> int:
        f = self.field
        acc = 0
        for j, a in self.coefficients.items():
            acc = f.add(acc, f.mul(a, int(word[j])))
        return int(acc)


class RecoveryTable:
    """Recovery vectors of weight ``<= r + 1`` for every coordinate of a code."""

    def __init__(self, code: LinearCode, r: int, words: np.ndarray | None = None,
                 budget: int | None = DEFAULT_DUAL_BUDGET):
        self.code = code
        self.r = r
        if words is None:
            words = low_weight_dual_words(code, r + 1, budget)
        self.words = words
        mask = words != 0
        packed = np.packbits(mask, axis=1, bitorder="little")
        _, idx = np.unique(packed, axis=0, return_index=True)
        idx = np.sort(idx)
        self.representatives = words[idx]
        self.supports = mask[idx]
        self._circuits: np.ndarray | None = None
        self._lock = threading.Lock()

    def alternativity_profile(self) -> np.ndarray:
        """``a(i)`` for each coordinate."""
        return self.supports.sum(axis=0).astype(int)

    def vectors_for(self, i: int) -> list[RecoveryVector]:
        rows = np.nonzero(self.supports[:, i])[0]
        f = self.code.field
        return [RecoveryVector(f, tuple(int(x) for x in self.representatives[r]), i) for r in rows]

    def circuits(self) -> np.ndarray:
        """Inclusion-minimal supports (boolean rows), lightest first.

        Every support through ``i`` contains a circuit through ``i``, so these
        suffice for the sequential-repair check.
        """
        with self._lock:
            if self._circuits is not None:
                return self._circuits
            sup = self.supports
            weights = sup.sum(axis=1)
            kept = np.zeros((0, self.code.n), dtype=bool)
            for w in np.unique(weights):
                level = sup[weights == w]
                if len(kept):
                    # S contains circuit C iff |S & C| = |C|
                    inter = level.astype(np.float64) @ kept.T.astype(np.float64)
                    level = level[~np.any(inter == kept.sum(axis=1)[None, :], axis=1)]
                kept = np.vstack([kept, level])
            self._circuits = kept
            return kept

    def circuit_profile(self) -> np.ndarray:
        """Number of circuits of weight ``<= r + 1`` through each coordinate."""
        return self.circuits().sum(axis=0).astype(int)

    def minimal_masks(self) -> dict[int, list[int]]:
        """Per coordinate: the circuits through it as integer bitmasks."""
        circ = self.circuits()
        masks = [_bitmask(c) for c in circ]
        return {i: [masks[r] for r in np.nonzero(circ[:, i])[0]] for i in range(self.code.n)}


def _bitmask(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


def enumerate_recovery_vectors(code: LinearCode, i: int, r: int,
                               budget: int | None = DEFAULT_DUAL_BUDGET) -> list[RecoveryVector]:
    """One recovery vector per distinct support in ``Omega_r(i)``."""
    if not 0 <= i < code.n:
        raise IndexOutOfRange(f"coordinate {i} outside [0, {code.n})")
    if r < 0:
        return []
    return RecoveryTable(code, r, budget=budget).vectors_for(i)


def recovery_supports_by_subsets(code: LinearCode, i: int, r: int) -> set[frozenset[int]]:
    """Independent oracle for ``Omega_r(i)`` supports via column-subset kernels.

    ``S`` is a support iff the generator columns indexed by ``S`` admit a
    dependency whose coefficients are all nonzero.  Exponential; tests only.
    """
    from .matrix import kernel as _kernel

    g = code.generator
    q = code.q
    out = set()
    others = [j for j in range(code.n) if j != i]
    for w in range(1, r + 1 + 1):
        for rest in combinations(others, w - 1):
            s = (i,) + rest
            ker = _kernel(g.columns(s))
            if ker.rows == 0:
                continue
            for coeffs in all_vectors(q, ker.rows)[1:]:
                v = ker.data.T @ coeffs % q if code.field.m == 1 else \
                    code.field.matmul(coeffs[None, :], ker.data)[0]
                if np.all(v != 0):
                    out.add(frozenset(s))
                    break
    return out


def locality(code: LinearCode, budget: int | None = DEFAULT_DUAL_BUDGET) -> int:
    """Smallest ``r`` such that every coordinate has a recovery vector of weight ``<= r + 1``."""
    h = code.parity_check
    if h.rows == 0 or np.any(np.all(h.data == 0, axis=0)):
        raise NoRecovery(f"{code.name} has a coordinate outside every dual support")
    for w in range(1, code.k + 2):
        words = low_weight_dual_words(code, w, budget)
        covered = np.any(words != 0, axis=0) if len(words) else np.zeros(code.n, bool)
        if np.all(covered):
            return w - 1
    raise AssertionError("every covered coordinate lies in a circuit of size <= k + 1")


def coordinate_localities(code: LinearCode, budget: int | None = DEFAULT_DUAL_BUDGET) -> np.ndarray:
    """Per coordinate: one less than the smallest dual weight covering it."""
    h = code.parity_check
    if h.rows == 0 or np.any(np.all(h.data == 0, axis=0)):
        raise NoRecovery(f"{code.name} has a coordinate outside every dual support")
    out = np.full(code.n, -1)
    for w in range(1, code.k + 2):
        words = low_weight_dual_words(code, w, budget)
        if len(words):
            covered = np.any(words != 0, axis=0)
            out[(out < 0) & covered] = w - 1
        if np.all(out >= 0):
            return out
    raise AssertionError("unreachable")


def alternativity(code: LinearCode, r: int, budget: int | None = DEFAULT_DUAL_BUDGET) -> int:
    """``min_i a(i)`` with ``a(i)`` the number of distinct supports in ``Omega_r(i)``."""
    table = RecoveryTable(code, r, budget=budget)
    return int(table.alternativity_profile().min()) if code.n else 0


# --- SLRC parameters --------------------------------------------------------


@dataclass(frozen=True)
class SlrcParams:
    n: int
    k: int
    r: int
    t: int
    a: int
    a_exact: bool = True

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def a_tag(self) -> str:
        return "exact" if self.a_exact else "lower-bound"


def product_params(params: Sequence[SlrcParams]) -> SlrcParams:
    """Parameter calculus for an l-fold product of SLRCs sharing locality ``r``.

    ``N = prod n_i``, ``K = prod k_i``, ``T = prod (t_i + 1) - 1`` and the
    alternativity is at least ``sum a_i``.
    """
    rs = {p.r for p in params}
    if len(rs) != 1:
        raise LocalityMismatch(f"factors declare different localities {sorted(rs)}")
    n = math.prod(p.n for p in params)
    k = math.prod(p.k for p in params)
    t = math.prod(p.t + 1 for p in params) - 1
    a = sum(p.a for p in params)
    return SlrcParams(n, k, rs.pop(), t, a, a_exact=len(params) == 1 and params[0].a_exact)


def product_slrc(
    factors: Sequence[tuple[LinearCode, SlrcParams]],
    name: str | None = None,
) -> tuple[ProductCode, SlrcParams]:
    """Build the product code and its parameters.

    The alternativity is tagged exact when all factors share one dimension
    and have exact alternativity (the product then has exactly ``sum a_i``).
    """
    codes = [c for c, _ in factors]
    params = [p for _, p in factors]
    f0 = codes[0].field
    for c in codes[1:]:
        if c.field != f0:
            raise FieldMismatch(f"{c.name} is over {c.field!r}, expected {f0!r}")
    prod_params = product_params(params)
    same_k = len({c.k for c in codes}) == 1
    exact = same_k and all(p.a_exact for p in params)
    prod_params = SlrcParams(
        prod_params.n, prod_params.k, prod_params.r, prod_params.t, prod_params.a, exact
    )
    if len(codes) == 1:
        return ProductCode(codes, name=name), params[0]
    return ProductCode(codes, name=name), prod_params


def lift_recovery_vector(
    p: ProductCode, j: int, v: RecoveryVector, fixed: Sequence[int]
) -> RecoveryVector:
    """Embed a recovery vector of factor ``j`` along the line through ``fixed``.

    The result is ``e_{f_1} (x) ... (x) v (x) ... (x) e_{f_l}``: a dual word of
    the product with the same weight, targeting the flat coordinate of
    ``(f_1, ..., v.target, ..., f_l)``.
    """
    if not 0 <= j < p.ell:
        raise IndexOutOfRange(f"factor index {j} outside [0, {p.ell})")
    fixed = tuple(int(x) for x in fixed)
    if len(fixed) != p.ell - 1:
        raise IndexOutOfRange(f"need {p.ell - 1} fixed coordinates, got {len(fixed)}")
    if len(v.vector) != p.shape[j]:
        raise IndexOutOfRange("recovery vector length does not match factor length")
    line = p.line(j, fixed)
    vec = [0] * p.n
    for t, x in enumerate(v.vector):
        vec[line[t]] = x
    return RecoveryVector(p.field, tuple(vec), line[v.target])


def lifted_supports(p: ProductCode, r: int, budget: int | None = DEFAULT_DUAL_BUDGET) -> set[frozenset[int]]:
    """Supports of every lifted factor recovery vector of weight ``<= r + 1``."""
    out = set()
    for j, c in enumerate(p.factors):
        table = RecoveryTable(c, r, budget=budget)
        for supp in table.supports:
            idx = np.nonzero(supp)[0]
            for fixed, line in p.lines(j):
                out.add(frozenset(line[t] for t in idx))
    return out


# --- verification -------------------------------------------------------------


@dataclass(frozen=True)
class SlrcVerification:
    ok: bool
    checked: int
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def colex_subsets(n: int, s: int) -> Iterator[tuple[int, ...]]:
    """``s``-subsets of ``range(n)`` in colexicographic order."""
    if s == 0:
        yield ()
        return
    for top in range(s - 1, n):
        for rest in colex_subsets(top, s - 1):
            yield rest + (top,)


def verify_slrc_exhaustive(
    code: LinearCode,
    r: int,
    t: int,
    budget: int = DEFAULT_SUBSET_BUDGET,
    table: RecoveryTable | None = None,
) -> SlrcVerification:
    """Check that every erasure set ``E`` with ``1 <= |E| <= t`` has a coordinate
    ``i in E`` with a recovery vector meeting ``E`` only in ``i``.

    Sets are scanned by size, then colex order, so the returned witness is the
    smallest violating set in that order.
    """
    n = code.n
    t = min(t, n)
    total = sum(math.comb(n, s) for s in range(1, t + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} erasure patterns exceed budget {budget}")
    if table is None or table.r != r:
        table = RecoveryTable(code, r)
    minimal = table.minimal_masks()
    checked = 0
    for s in range(1, t + 1):
        for e in colex_subsets(n, s):
            checked += 1
            emask = 0
            for i in e:
                emask |= 1 << i
            if not any(
                (m & emask) == (1 << i) for i in e for m in minimal[i]
            ):
                return SlrcVerification(False, checked, e)
    return SlrcVerification(True, checked, None)


def max_sequential_erasures(code: LinearCode, r: int, budget: int = DEFAULT_SUBSET_BUDGET,
                            table: RecoveryTable | None = None) -> int:
    """Largest ``t`` for which :func:`verify_slrc_exhaustive` succeeds (``< d``)."""
    d = code.min_distance()
    upper = d.d - 1 if d.exact else code.n - code.k
    res = verify_slrc_exhaustive(code, r, upper, budget, table)
    if res.ok:
        return upper
    return len(res.witness) - 1


# --- bounds and analysis ---------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    singleton_like: int
    singleton_ok: bool
    optimal: bool
    rate: float
    rate_bound: float
    rate_ok: bool

    @property
    def ok(self) -> bool:
        return self.singleton_ok and self.rate_ok

    def to_json(self) -> dict:
        return {
            "singleton_like": {"bound": self.singleton_like, "d_ok": self.singleton_ok,
                               "optimal": self.optimal},
            "rate": {"value": self.rate, "bound": self.rate_bound, "ok": self.rate_ok},
        }


def check_bounds(params: SlrcParams, d: int) -> BoundReport:
    """LRC bounds ``d <= n - k - ceil(k/r) + 2`` and ``k/n <= r/(r+1)``."""
    n, k, r = params.n, params.k, params.r
    bound = n - k - math.ceil(k / r) + 2 if r > 0 else n - k + 1
    rate = k / n
    rate_bound = r / (r + 1)
    return BoundReport(
        singleton_like=bound,
        singleton_ok=d <= bound,
        optimal=d == bound,
        rate=rate,
        rate_bound=rate_bound,
        rate_ok=k * (r + 1) <= r * n,
    )


def code_params(code: LinearCode, r: int | None = None,
                budget: int | None = DEFAULT_DUAL_BUDGET) -> SlrcParams:
    """SLRC parameters of a single code, all measured.

    ``r`` defaults to the code's locality; ``t`` is the largest erasure count
    that passes the exhaustive sequential check; ``a`` is enumerated at ``r``.
    """
    loc = locality(code, budget)
    if r is None:
        r = loc
    elif r < loc:
        raise LocalityMismatch(f"{code.name} has locality {loc} > declared {r}")
    table = RecoveryTable(code, r, budget=budget)
    t = max_sequential_erasures(code, r, table=table)
    a = int(table.alternativity_profile().min())
    return SlrcParams(code.n, code.k, r, t, a, True)


def analyze(
    code: LinearCode,
    r: int | None = None,
    exact_a: bool = False,
    dual_budget: int | None = DEFAULT_DUAL_BUDGET,
    distance_budget: int | None = None,
    verify_budget: int = DEFAULT_SUBSET_BUDGET,
) -> dict:
    """Analysis report for a code, with product-formula values when it is a product.

    With ``exact_a`` the enumerated alternativity is mandatory and
    :class:`BudgetExceeded` propagates; otherwise it is skipped silently
    when too expensive.
    """
    dist: Distance = code.min_distance(distance_budget)
    formula: SlrcParams | None = None
    if isinstance(code, ProductCode) and code.ell > 1:
        factor_params = [code_params(c, budget=dual_budget) for c in code.factors]
        r_common = max(p.r for p in factor_params) if r is None else r
        own = [SlrcParams(p.n, p.k, r_common, p.t, p.a, p.a_exact) for p in factor_params]
        formula = product_params(own)
        if r is None:
            r = r_common
    if r is None:
        r = locality(code, dual_budget)
    a_exact = None
    try:
        a_exact = alternativity(code, r, dual_budget)
    except BudgetExceeded:
        if exact_a:
            raise
    if formula is not None:
        t = formula.t
        a_formula = formula.a
    else:
        t = dist.d - 1
        a_formula = a_exact
    if formula is not None and a_exact is not None and a_exact < a_formula:
        raise AssertionError(
            f"enumerated alternativity {a_exact} below the product bound {a_formula}"
        )
    params = SlrcParams(code.n, code.k, r, t, a_exact if a_exact is not None else a_formula,
                        a_exact is not None)
    bounds = check_bounds(params, dist.d)
    verified = None
    try:
        verified = bool(verify_slrc_exhaustive(code, r, t, verify_budget))
    except BudgetExceeded:
        pass
    return {
        "name": code.name,
        "q": code.q,
        "n": code.n,
        "k": code.k,
        "d": dist.d,
        "d_tag": dist.tag,
        "r": r,
        "t": t,
        "a_formula": a_formula,
        "a_exact": a_exact,
        "rate": code.k / code.n,
        "bounds": bounds.to_json(),
        "verified": verified,
    }
