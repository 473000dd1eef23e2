"""Finite fields GF(p) and GF(p^m).

Elements are plain integers in ``range(q)``.  For an extension field the
integer is the base-``p`` digit string of the coefficient vector in the
polynomial basis, constant term least significant, so ``x + 1`` over GF(3)
is ``1*3 + 1 = 4``.  All arithmetic methods accept Python ints or numpy
integer arrays and broadcast like numpy ufuncs.

:class:`FieldElement` is a small operator-overloading wrapper for
interactive use; the numeric code paths work on raw integers.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

import numpy as np

from .errors import DegreeOutOfRange, NonPrime, OutOfRange

MAX_PRIME = 1 << 16
MAX_DEGREE = 4
# exp/log and inverse tables are only built below this order
_TABLE_LIMIT = 1 << 17


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**m``; raise :class:`NonPrime` if ``q`` is not a prime power."""
    if q < 2:
        raise NonPrime(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    m = 0
    rest = q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise NonPrime(f"{q} is not a prime power")
    return p, m


# --- dense polynomials over GF(p), coefficient lists low -> high ---------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, f, p)


def _poly_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(list(a), f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over GF(p)."""
    f = [c % p for c in f]
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _poly_powmod(x, p**m, f, p) != _poly_mod(x, f, p):
        return False
    for r in prime_factors(m):
        h = _poly_powmod(x, p ** (m // r), f, p)
        h = h + [0] * max(0, 2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_poly_gcd(f, h, p)) > 1:
            return False
    return True


def lowest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``m`` in canonical integer order."""
    for code in range(p**m):
        low = [(code // p**i) % p for i in range(m)]
        f = low + [1]
        if low[0] == 0:
            continue  # divisible by x
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("an irreducible polynomial of every degree exists")


@dataclass(frozen=True, eq=False)
class Field:
    """GF(p^m).  Build instances with :func:`make_prime_field`, :func:`make_extension_field` or :func:`gf`."""

    p: int
    m: int
    modulus: tuple[int, ...] = ()
    _exp: np.ndarray | None = dc_field(default=None, repr=False)
    _log: np.ndarray | None = dc_field(default=None, repr=False)
    _inv: np.ndarray | None = dc_field(default=None, repr=False)

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def order(self) -> int:
        return self.q

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Field):
            return NotImplemented
        return (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __reduce__(self):
        return (gf, (self.q,))

    # --- element helpers ---------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def element(self, value: int | Sequence[int]) -> "FieldElement":
        if not isinstance(value, (int, np.integer)):
            value = self.from_coefficients(value)
        value = int(value)
        if not 0 <= value < self.q:
            raise OutOfRange(f"{value} is not an element of {self}")
        return FieldElement(self, value)

    def coefficients(self, a: int) -> tuple[int, ...]:
        return tuple((int(a) // self.p**i) % self.p for i in range(self.m))

    def from_coefficients(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.m:
            raise OutOfRange(f"too many coefficients for {self}")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    def reduce_int(self, n):
        """Map an integer of the prime subfield into the field (``n mod p``)."""
        return np.mod(n, self.p) if isinstance(n, np.ndarray) else int(n) % self.p

    # --- arithmetic ----------------------------------------------------

    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        out = 0
        for i in range(self.m):
            w = self.p**i
            out = out + ((a // w + b // w) % self.p) * w
        return out

    def neg(self, a):
        if self.m == 1:
            return (-a) % self.p
        out = 0
        for i in range(self.m):
            w = self.p**i
            out = out + ((-(a // w)) % self.p) * w
        return out

    def sub(self, a, b):
        if self.m == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.m == 1:
            return (a * b) % self.p
        if self._exp is not None:
            a_arr = np.asarray(a)
            b_arr = np.asarray(b)
            prod = self._exp[(self._log[a_arr] + self._log[b_arr]) % (self.q - 1)]
            out = np.where((a_arr == 0) | (b_arr == 0), 0, prod)
            return out if out.ndim else int(out)
        if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
            return np.vectorize(self._mul_slow, otypes=[np.int64])(a, b)
        return self._mul_slow(a, b)

    def _mul_slow(self, a: int, b: int) -> int:
        pa = list(self.coefficients(a))
        pb = list(self.coefficients(b))
        return self.from_coefficients(_poly_mulmod(pa, pb, list(self.modulus), self.p))

    def inv(self, a):
        if isinstance(a, np.ndarray):
            if np.any(a == 0):
                raise ZeroDivisionError(f"0 has no inverse in {self}")
            if self._inv is not None:
                return self._inv[a]
            return np.vectorize(self._inv_scalar, otypes=[np.int64])(a)
        return self._inv_scalar(int(a))

    def _inv_scalar(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self._inv is not None:
            return int(self._inv[a])
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        a = int(a)
        if e < 0:
            a, e = self.inv(a), -e
        if self.m == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            return int(self._exp[(int(self._log[a]) * e) % (self.q - 1)])
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    def multiplicative_order(self, a: int) -> int:
        a = int(a)
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        n = self.q - 1
        order = n
        for f in prime_factors(n):
            while order % f == 0 and self.pow(a, order // f) == 1:
                order //= f
        return order

    def frobenius(self, a, k: int = 1):
        """``a ** (p**k)``; accepts scalars or arrays."""
        if isinstance(a, np.ndarray):
            e = self.p**k
            return np.vectorize(lambda x: self.pow(x, e), otypes=[np.int64])(a)
        return self.pow(a, self.p**k)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Matrix product over the field for integer-coded numpy arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            if self.p < 1 << 12 or a.shape[-1] < 8:
                return (a @ b) % self.p
            return (a.astype(object) @ b.astype(object) % self.p).astype(np.int64)
        out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
        for j in range(a.shape[-1]):
            out = self.add(out, self.mul(a[..., j, None], b[None, j, :]) if a.ndim == 2
                           else self.mul(a[..., j], b[j]))
        return out

    def __iter__(self) -> Iterator["FieldElement"]:
        for a in self.elements():
            yield FieldElement(self, a)


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                from .errors import FieldMismatch

                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.reduce_int(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, int(self.field.add(self.value, o)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, int(self.field.sub(self.value, o)))

    def __rsub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, int(self.field.sub(o, self.value)))

    def __neg__(self):
        return FieldElement(self.field, int(self.field.neg(self.value)))

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, int(self.field.mul(self.value, o)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, int(self.field.div(self.value, o)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, int(self.field.div(o, self.value)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, int(self.field.inv(self.value)))

    def order(self) -> int:
        return self.field.multiplicative_order(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}@{self.field!r}"


def _check_prime(p: int) -> None:
    if not isinstance(p, (int, np.integer)) or p < 2:
        raise NonPrime(f"{p!r} is not a prime")
    if p >= MAX_PRIME:
        raise OutOfRange(f"characteristic {p} exceeds the supported limit {MAX_PRIME}")
    if not is_prime(int(p)):
        raise NonPrime(f"{p} is composite")


def _with_tables(f: Field) -> Field:
    q = f.q
    if q > _TABLE_LIMIT:
        return f
    if f.m == 1:
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = pow(a, q - 2, q)
        return Field(f.p, 1, (), None, None, inv)
    alpha = _primitive_slow(f)
    exp = np.zeros(q - 1, dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)
    x = 1
    for i in range(q - 1):
        exp[i] = x
        log[x] = i
        x = f._mul_slow(x, alpha)
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = exp[(-log[1:]) % (q - 1)]
    return Field(f.p, f.m, f.modulus, exp, log, inv)


def _primitive_slow(f: Field) -> int:
    n = f.q - 1
    divisors = [n // r for r in prime_factors(n)]
    for a in range(1, f.q):
        if all(f.pow(a, d) != 1 for d in divisors):
            return a
    raise AssertionError("the multiplicative group of a finite field is cyclic")


@functools.lru_cache(maxsize=None)
def make_prime_field(p: int) -> Field:
    """GF(p) for a prime ``2 <= p < 2**16``."""
    _check_prime(p)
    return _with_tables(Field(int(p), 1, ()))


@functools.lru_cache(maxsize=None)
def make_extension_field(p: int, m: int) -> Field:
    """GF(p^m) modulo the smallest monic irreducible polynomial of degree ``m``."""
    _check_prime(p)
    if not isinstance(m, (int, np.integer)) or not 1 <= m <= MAX_DEGREE:
        raise DegreeOutOfRange(f"extension degree must lie in [1, {MAX_DEGREE}], got {m!r}")
    if m == 1:
        return make_prime_field(p)
    return _with_tables(Field(int(p), int(m), lowest_irreducible(int(p), int(m))))


def gf(q: int) -> Field:
    """The field of order ``q`` (a prime power)."""
    p, m = prime_power(q)
    return make_extension_field(p, m)


def find_primitive_element(f: Field) -> FieldElement:
    """Smallest element, in canonical order, of multiplicative order ``q - 1``."""
    if f._exp is not None and f.m > 1:
        return FieldElement(f, int(f._exp[1]))
    return FieldElement(f, _primitive_slow(f))
