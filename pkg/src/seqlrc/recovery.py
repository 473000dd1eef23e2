"""Erasure patterns, sequential repair engines and the erasure-regime classifier.

Two engines are provided:

* :func:`recover_generic` repairs one coordinate at a time from any
  recovery vector whose support meets the erasure set only in its target.
* :func:`recover_lines` treats an l-fold product as a grid and erasure-decodes
  whole axis-parallel lines with the factor code, sweeping axes until no line
  makes progress.

Both only fill values that are forced; what cannot be determined stays erased.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

from .codes import LinearCode
from .errors import DimensionMismatch, IndexOutOfRange, NoSolution, ParameterViolation
from .matrix import solve
from .slrc import ProductCode, RecoveryTable, RecoveryVector, lift_recovery_vector


# --- patterns and words ---------------------------------------------------


@dataclass(frozen=True)
class ErasurePattern:
    n: int
    erased: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "erased", frozenset(int(i) for i in self.erased))
        bad = [i for i in self.erased if not 0 <= i < self.n]
        if bad:
            raise IndexOutOfRange(f"erased indices {sorted(bad)} outside [0, {self.n})")

    @property
    def size(self) -> int:
        return len(self.erased)

    @property
    def known(self) -> frozenset[int]:
        return frozenset(range(self.n)) - self.erased

    @classmethod
    def from_coords(cls, shape: Sequence[int], coords: Iterable[Sequence[int]]) -> "ErasurePattern":
        shape = tuple(int(s) for s in shape)
        flat = set()
        for c in coords:
            c = tuple(int(x) for x in c)
            if len(c) != len(shape) or any(not 0 <= x < s for x, s in zip(c, shape)):
                raise IndexOutOfRange(f"coordinate {c} outside shape {shape}")
            flat.add(int(np.ravel_multi_index(c, shape)))
        return cls(int(np.prod(shape)), frozenset(flat))

    @classmethod
    def from_known(cls, shape: Sequence[int], known: Iterable[Sequence[int]]) -> "ErasurePattern":
        known_p = cls.from_coords(shape, known)
        return cls(known_p.n, known_p.known)

    def coords(self, shape: Sequence[int]) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in np.unravel_index(i, tuple(shape))) for i in sorted(self.erased)]

    def to_json(self, shape: Sequence[int]) -> dict:
        if int(np.prod(shape)) != self.n:
            raise DimensionMismatch(f"shape {tuple(shape)} does not cover {self.n} coordinates")
        return {"shape": list(shape), "erased": [list(c) for c in self.coords(shape)]}

    @classmethod
    def from_json(cls, obj: dict | str) -> tuple["ErasurePattern", tuple[int, ...]]:
        if isinstance(obj, str):
            obj = json.loads(obj)
        shape = tuple(int(s) for s in obj["shape"])
        return cls.from_coords(shape, obj["erased"]), shape


@dataclass(frozen=True)
class ReceivedWord:
    """A word with ``None`` at erased positions."""

    values: tuple[int | None, ...]

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def pattern(self) -> ErasurePattern:
        return ErasurePattern(self.n, frozenset(i for i, v in enumerate(self.values) if v is None))

    @property
    def complete(self) -> bool:
        return all(v is not None for v in self.values)

    def array(self) -> np.ndarray:
        if not self.complete:
            raise ValueError("word still has erasures")
        return np.array(self.values, dtype=np.int64)


def erase(codeword: Sequence[int], e: ErasurePattern) -> ReceivedWord:
    if len(codeword) != e.n:
        raise DimensionMismatch(f"codeword length {len(codeword)} vs pattern length {e.n}")
    return ReceivedWord(tuple(None if i in e.erased else int(x) for i, x in enumerate(codeword)))


# --- traces -----------------------------------------------------------------


@dataclass(frozen=True)
class RecoveryStep:
    step: int
    coord: int
    recovery_set: tuple[int, ...]
    axis: int | None = None
    line: tuple[int, ...] | None = None
    round: int = 0


@dataclass
class RecoveryTrace:
    initial: ErasurePattern
    steps: list[RecoveryStep] = dc_field(default_factory=list)
    residual: frozenset[int] = frozenset()

    @property
    def status(self) -> str:
        return "full" if not self.residual else "partial"

    @property
    def recovered(self) -> int:
        return len(self.steps)

    def rounds(self) -> list[list[RecoveryStep]]:
        out: dict[int, list[RecoveryStep]] = {}
        for s in self.steps:
            out.setdefault(s.round, []).append(s)
        return [out[k] for k in sorted(out)]

    def lines_per_round(self) -> list[list[tuple[int, tuple[int, ...]]]]:
        """Distinct ``(axis, line)`` pairs per round, in order of first use."""
        res = []
        for steps in self.rounds():
            seen: list[tuple[int, tuple[int, ...]]] = []
            for s in steps:
                key = (s.axis, s.line)
                if key not in seen:
                    seen.append(key)
            res.append(seen)
        return res

    def is_sequentially_valid(self) -> bool:
        """Each step uses only symbols known initially or recovered earlier."""
        known = set(self.initial.known)
        for s in self.steps:
            if s.coord in known or not set(s.recovery_set) <= known:
                return False
            known.add(s.coord)
        return known == set(range(self.initial.n)) - set(self.residual)

    def to_json(self, shape: Sequence[int] | None = None) -> list[dict]:
        def conv(i: int):
            if shape is None:
                return i
            return [int(x) for x in np.unravel_index(i, tuple(shape))]

        return [
            {
                "step": s.step,
                "coord": conv(s.coord),
                "axis": s.axis,
                "line": list(s.line) if s.line is not None else None,
                "recovery_set": [conv(j) for j in s.recovery_set],
            }
            for s in self.steps
        ]


# --- generic engine --------------------------------------------------------


def lifted_recovery_vectors(p: ProductCode, r: int) -> list[RecoveryVector]:
    """Every factor recovery vector of weight ``<= r + 1`` lifted along every line."""
    out = []
    for j, c in enumerate(p.factors):
        table = RecoveryTable(c, r, budget=None)
        for row in table.representatives:
            target = int(np.nonzero(row)[0][0])
            v = RecoveryVector(c.field, tuple(int(x) for x in row), target)
            for fixed, _ in p.lines(j):
                out.append(lift_recovery_vector(p, j, v, fixed))
    return out


def recover_generic(
    code: LinearCode,
    w: ReceivedWord,
    r: int,
    vectors: Sequence[RecoveryVector] | None = None,
) -> tuple[ReceivedWord, RecoveryTrace]:
    """Greedy sequential repair, lowest recoverable index first.

    ``vectors`` are dual codewords (their ``target`` is ignored: any support
    coordinate may be repaired); by default every dual word of weight
    ``<= r + 1`` is used.
    """
    if w.n != code.n:
        raise DimensionMismatch(f"word length {w.n} vs code length {code.n}")
    f = code.field
    if vectors is None:
        words = RecoveryTable(code, r).representatives
    else:
        words = np.array([v.vector for v in vectors], dtype=np.int64).reshape(-1, code.n)
    supports = [frozenset(np.nonzero(row)[0].tolist()) for row in words]
    by_coord: dict[int, list[int]] = {}
    for idx, s in enumerate(supports):
        for i in s:
            by_coord.setdefault(i, []).append(idx)
    values = list(w.values)
    erased = set(i for i, v in enumerate(values) if v is None)
    trace = RecoveryTrace(w.pattern)
    step = 0
    while erased:
        chosen = None
        for i in sorted(erased):
            for idx in by_coord.get(i, ()):
                if supports[idx] & erased == {i}:
                    chosen = (i, idx)
                    break
            if chosen:
                break
        if chosen is None:
            break
        i, idx = chosen
        row = words[idx]
        inv = f.inv(int(row[i]))
        acc = 0
        rest = sorted(supports[idx] - {i})
        for j in rest:
            acc = f.add(acc, f.mul(f.neg(f.mul(int(row[j]), inv)), values[j]))
        values[i] = int(acc)
        erased.discard(i)
        trace.steps.append(RecoveryStep(step, i, tuple(rest), None, None, step))
        step += 1
    trace.residual = frozenset(erased)
    return ReceivedWord(tuple(values)), trace


# --- line engine -------------------------------------------------------------


def decode_line(code: LinearCode, values: Sequence[int | None]) -> list[int] | None:
    """Erasure-decode one factor word; ``None`` unless the erased values are forced.

    Solves ``H_E x_E = -H_known x_known``; the solution is unique exactly when
    the erased parity-check columns are independent.
    """
    f = code.field
    h = code.parity_check
    erased = [i for i, v in enumerate(values) if v is None]
    if not erased:
        return [int(v) for v in values]
    known = [i for i, v in enumerate(values) if v is not None]
    if h.rows == 0:
        return None
    h_e = h.columns(erased)
    if h_e.rank() < len(erased):
        return None
    if known:
        syn = h.columns(known).matvec([values[i] for i in known])
    else:
        syn = np.zeros(h.rows, dtype=np.int64)
    try:
        sol = solve(h_e, f.neg(syn))
    except NoSolution:
        return None
    out = list(values)
    for i, x in zip(erased, sol.particular):
        out[i] = int(x)
    return out


def recover_lines(
    p: ProductCode, w: ReceivedWord, max_rounds: int | None = None
) -> tuple[ReceivedWord, RecoveryTrace]:
    """Axis-sweep decoder for products.

    A round decodes, from the state at the start of the round, every line
    along one axis whose erasures are decodable.  Axes are visited cyclically;
    rounds with nothing to decode are skipped, and decoding stops after a full
    cycle of axes makes no progress.
    """
    if w.n != p.n:
        raise DimensionMismatch(f"word length {w.n} vs code length {p.n}")
    values = list(w.values)
    trace = RecoveryTrace(w.pattern)
    axis_lines = [list(p.lines(j)) for j in range(p.ell)]
    step = 0
    rnd = 0
    idle = 0
    axis = 0
    while any(v is None for v in values) and idle < p.ell:
        if max_rounds is not None and rnd >= max_rounds:
            break
        snapshot = list(values)
        progress = False
        for fixed, line in axis_lines[axis]:
            seg = [snapshot[i] for i in line]
            if None not in seg:
                continue
            dec = decode_line(p.factors[axis], seg)
            if dec is None:
                continue
            known = tuple(i for i, v in zip(line, seg) if v is not None)
            for t, flat in enumerate(line):
                if seg[t] is None:
                    values[flat] = dec[t]
                    trace.steps.append(RecoveryStep(step, flat, known, axis, tuple(fixed), rnd))
                    step += 1
                    progress = True
        if progress:
            rnd += 1
            idle = 0
        else:
            idle += 1
        axis = (axis + 1) % p.ell
    trace.residual = frozenset(i for i, v in enumerate(values) if v is None)
    return ReceivedWord(tuple(values)), trace


def is_parallel_recoverable(p: ProductCode, e: ErasurePattern) -> bool:
    """Some axis has at most ``d_j - 1`` erasures on every one of its lines."""
    if e.n != p.n:
        raise DimensionMismatch(f"pattern length {e.n} vs code length {p.n}")
    if not e.erased:
        return True
    for j, c in enumerate(p.factors):
        cap = c.min_distance().d - 1
        if all(sum(i in e.erased for i in line) <= cap for _, line in p.lines(j)):
            return True
    return False


# --- regimes -------------------------------------------------------------------


class RecoveryRegime(enum.Enum):
    ParallelGuaranteed = "a"
    SequentialGuaranteed = "b"
    PatternDependent = "c"
    Unrecoverable = "d"


def regime_thresholds(n: int, k: int, d: int, ell: int) -> tuple[int, int, int]:
    """``(parallel_max, sequential_max, dependent_max)``: inclusive upper ends of
    regimes (a), (b), (c) for the l-fold product of an ``[n, k, d]`` code."""
    if ell == 1:
        return d - 1, d - 1, n - k
    par = ell * (d - 1)
    seq = d**ell - 1
    dep = min(n**ell - k**ell, ell * n ** (ell - 1) * (d - 1))
    return par, max(par, seq), dep


def classify_regime(n: int, k: int, d: int, ell: int, mu: int) -> RecoveryRegime:
    """Erasure regime of ``mu`` erasures on the l-fold product of an ``[n, k, d]`` code.

    With l = 1 the parallel and sequential regimes coincide (``mu <= d - 1``)
    and ``d <= mu <= n - k`` is pattern dependent.
    """
    if not (1 <= k < n) or not (1 <= d <= n - k + 1) or ell < 1:
        raise ParameterViolation(f"invalid parameters n={n}, k={k}, d={d}, ell={ell}")
    if not 0 <= mu <= n**ell:
        raise ParameterViolation(f"mu={mu} outside [0, {n ** ell}]")
    par, seq, dep = regime_thresholds(n, k, d, ell)
    if mu <= par:
        return RecoveryRegime.ParallelGuaranteed
    if mu <= seq:
        return RecoveryRegime.SequentialGuaranteed
    if mu <= dep:
        return RecoveryRegime.PatternDependent
    return RecoveryRegime.Unrecoverable


# --- reference patterns on the 5 x 5 grid -------------------------------------

# Known cells as (row, col), 0-based.  A vertex drawn at x=c, y=-r is cell (r, c).
STAIRCASE_KNOWN = ((0, 0), (0, 1), (1, 2), (2, 3))
TWO_ROWS_KNOWN = tuple((r, c) for r in range(2) for c in range(5))
CORNER_ERASED = ((1, 4), (2, 4), (3, 4), (4, 1), (4, 2), (4, 3), (4, 4))
CROSS_KNOWN = tuple(sorted({(0, c) for c in range(5)} | {(r, 0) for r in range(5)}))

GRID = (5, 5)


def reference_patterns() -> dict[str, ErasurePattern]:
    """Named 5x5 patterns: iterative (21 erased), parallel (15), sequential (7), stuck (16)."""
    return {
        "staircase": ErasurePattern.from_known(GRID, STAIRCASE_KNOWN),
        "two-rows": ErasurePattern.from_known(GRID, TWO_ROWS_KNOWN),
        "corner": ErasurePattern.from_coords(GRID, CORNER_ERASED),
        "cross": ErasurePattern.from_known(GRID, CROSS_KNOWN),
    }
