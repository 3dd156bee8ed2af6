"""Arithmetic in GF(p^m) over a single polynomial basis.

Elements are coefficient vectors ``(c_0, ..., c_{m-1})`` standing for
``c_0 + c_1 x + ... + c_{m-1} x^{m-1}`` modulo the defining polynomial.
Every element also has an integer index ``sum(c_i * p**i)``; enumeration
walks the indices in increasing order, so the constant term is the least
significant digit.

Two arithmetic paths are provided.  ``FieldElement`` is the reference path
(plain polynomial arithmetic, one element at a time).  ``field_tables``
builds numpy lookup tables (discrete log, inverse, traces) that the
enumeration kernels in the other modules use to sweep whole fields.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    DegreeMismatch,
    FieldMismatch,
    FieldSpecParseError,
    NoPrimitiveFound,
    NonDivisorDegree,
    NonPrimeCharacteristic,
    ReducibleModulus,
    ZeroInverse,
)

__all__ = [
    "FieldSpec",
    "FieldElement",
    "SubfieldView",
    "FieldTables",
    "make_field",
    "parse_field_spec",
    "is_prime",
    "prime_factors",
    "is_irreducible",
    "first_irreducible",
    "add",
    "sub",
    "mul",
    "neg",
    "inv",
    "power",
    "frobenius",
    "trace_abs",
    "trace_rel",
    "norm_abs",
    "norm_rel",
    "subfield_view",
    "primitive_element",
    "enumerate_elements",
    "trace_representative",
    "field_tables",
]


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over GF(p), coefficient lists with constant term first ---

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    r = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(r)


def _poly_mod(a, f, p):
    a = _trim([c % p for c in a])
    df = len(f) - 1
    lead_inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * lead_inv % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] += x * y
    return _trim([c % p for c in r])


def _poly_powmod(a, e, f, p):
    result = [1]
    base = _poly_mod(list(a), f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Test irreducibility of ``modulus`` over GF(p).

    Checks ``gcd(f, x^(p^k) - x) == 1`` for ``k <= deg f // 2``.
    """
    f = _trim([c % p for c in modulus])
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    x = [0, 1]
    xpk = x
    for _ in range(deg // 2):
        xpk = _poly_powmod(xpk, p, f, p)
        if len(_poly_gcd(f, _poly_sub(xpk, x, p), p)) > 1:
            return False
    return True


def first_irreducible(p: int, m: int) -> tuple[int, ...]:
    """The monic irreducible of degree ``m`` over GF(p) that comes first
    when the lower coefficients are read as a base-p number."""
    for n in range(p**m):
        coeffs = [(n // p**i) % p for i in range(m)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise ReducibleModulus(f"no irreducible polynomial of degree {m} over GF({p})")


# --- field specification ---

@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) defined by a monic irreducible ``modulus`` (constant term first)."""

    p: int
    m: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        if self.p < 2 or not is_prime(self.p):
            raise NonPrimeCharacteristic(f"characteristic {self.p} is not prime")
        if self.m < 1 or len(self.modulus) != self.m + 1:
            raise DegreeMismatch(
                f"modulus has {len(self.modulus)} coefficients, expected m+1 = {self.m + 1}"
            )
        if any(not 0 <= c < self.p for c in self.modulus):
            raise DegreeMismatch(f"modulus coefficients must lie in [0, {self.p - 1}]")
        if self.modulus[-1] != 1:
            raise DegreeMismatch("modulus must be monic (last coefficient 1)")
        if not is_irreducible(self.modulus, self.p):
            raise ReducibleModulus(f"modulus {list(self.modulus)} is reducible over GF({self.p})")

    @property
    def q(self) -> int:
        return self.p**self.m

    def __str__(self):
        return f"p={self.p} m={self.m} modulus={','.join(map(str, self.modulus))}"

    def element(self, coeffs: Sequence[int]) -> "FieldElement":
        """Element from a coefficient list of any length; reduced by the modulus."""
        c = _poly_mod(list(coeffs), list(self.modulus), self.p)
        return FieldElement(tuple(c + [0] * (self.m - len(c))), self)

    def from_index(self, index: int) -> "FieldElement":
        if not 0 <= index < self.q:
            raise IndexError(f"index {index} outside [0, {self.q})")
        return FieldElement(tuple((index // self.p**i) % self.p for i in range(self.m)), self)

    def constant(self, c: int) -> "FieldElement":
        return self.element([c % self.p])

    @property
    def zero(self) -> "FieldElement":
        return FieldElement((0,) * self.m, self)

    @property
    def one(self) -> "FieldElement":
        return self.constant(1)

    @property
    def root(self) -> "FieldElement":
        """The class of x, a root of the modulus."""
        return self.element([0, 1])

    @functools.cached_property
    def is_primitive_modulus(self) -> bool:
        """True when the root of the modulus generates the multiplicative group.

        Informational only; nothing in the library requires it.
        """
        return _has_full_order(self.root)


def make_field(p: int, m: int, modulus: Sequence[int]) -> FieldSpec:
    """Validated GF(p^m); ``modulus`` is constant-term first and monic."""
    return FieldSpec(int(p), int(m), tuple(modulus))


_SPEC_RE = re.compile(r"\s*p=(\d+)\s+m=(\d+)\s+modulus=(\d+(?:,\d+)*)\s*")


def parse_field_spec(text: str) -> FieldSpec:
    """Parse ``p=<int> m=<int> modulus=<c0,...,cm>``.  Trailing garbage is rejected."""
    match = _SPEC_RE.fullmatch(text)
    if match is None:
        raise FieldSpecParseError(f"malformed field spec: {text!r}")
    p, m, coeffs = match.groups()
    return make_field(int(p), int(m), [int(c) for c in coeffs.split(",")])


# --- elements (reference arithmetic) ---

@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]
    spec: FieldSpec

    def __post_init__(self):
        if len(self.coeffs) != self.spec.m or any(not 0 <= c < self.spec.p for c in self.coeffs):
            raise ValueError(f"invalid coefficients {self.coeffs} for {self.spec}")

    @property
    def index(self) -> int:
        p = self.spec.p
        return sum(c * p**i for i, c in enumerate(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def _check(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.spec.constant(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec != self.spec:
            raise FieldMismatch(f"elements of {self.spec} and {other.spec} cannot be combined")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.spec.p
        return FieldElement(tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)), self.spec)

    __radd__ = __add__

    def __neg__(self):
        p = self.spec.p
        return FieldElement(tuple((-a) % p for a in self.coeffs), self.spec)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        spec = self.spec
        prod = _poly_mul(_trim(list(self.coeffs)), _trim(list(other.coeffs)), spec.p)
        return spec.element(prod)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroInverse("zero has no multiplicative inverse")
        spec = self.spec
        p = spec.p
        # extended Euclid on (modulus, a)
        r0, r1 = list(spec.modulus), _trim(list(self.coeffs))
        s0, s1 = [], [1]
        while len(r1) > 1:
            quot, rem = _poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1, p), p)
        c = pow(r1[0], -1, p)
        return spec.element([c * x for x in s1])

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.spec.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(f"{c}" if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(reversed(terms)) or "0"


def _poly_divmod(a, b, p):
    a = _trim(list(a))
    b = _trim(list(b))
    if len(a) < len(b):
        return [], a
    quot = [0] * (len(a) - len(b) + 1)
    lead_inv = pow(b[-1], -1, p)
    while len(a) >= len(b) and a:
        c = a[-1] * lead_inv % p
        shift = len(a) - len(b)
        quot[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return _trim(quot), a


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, e: int) -> FieldElement:
    """Square-and-multiply; ``0**0`` is one."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return a**e


def frobenius(a: FieldElement, k: int = 1) -> FieldElement:
    """``a^(p^k)``."""
    for _ in range(k):
        a = a ** a.spec.p
    return a


def _check_divisor(spec: FieldSpec, s: int) -> int:
    if s < 1 or spec.m % s:
        raise NonDivisorDegree(f"s={s} does not divide m={spec.m}")
    return spec.m // s


def trace_rel(a: FieldElement, s: int) -> FieldElement:
    """Trace from GF(p^m) down to GF(p^s): sum of ``a^(q^i)``, ``q = p^s``."""
    r = _check_divisor(a.spec, s)
    total = a.spec.zero
    conj = a
    for _ in range(r):
        total = total + conj
        conj = frobenius(conj, s)
    return total


def norm_rel(a: FieldElement, s: int) -> FieldElement:
    """Norm from GF(p^m) down to GF(p^s): product of ``a^(q^i)``."""
    r = _check_divisor(a.spec, s)
    total = a.spec.one
    conj = a
    for _ in range(r):
        total = total * conj
        conj = frobenius(conj, s)
    return total


def _as_prime_field(x: FieldElement) -> int:
    assert not any(x.coeffs[1:]), f"{x!r} does not lie in the prime field"
    return x.coeffs[0]


def trace_abs(a: FieldElement) -> int:
    return _as_prime_field(trace_rel(a, 1))


def norm_abs(a: FieldElement) -> int:
    return _as_prime_field(norm_rel(a, 1))


def enumerate_elements(spec: FieldSpec) -> Iterator[FieldElement]:
    """All ``p^m`` elements in increasing index order, zero first."""
    for i in range(spec.q):
        yield spec.from_index(i)


def _has_full_order(a: FieldElement) -> bool:
    n = a.spec.q - 1
    if a.is_zero():
        return False
    return all(a ** (n // r) != a.spec.one for r in prime_factors(n)) if n > 1 else True


@functools.cache
def primitive_element(spec: FieldSpec) -> FieldElement:
    """First generator of the multiplicative group in enumeration order."""
    for i in range(1, spec.q):
        a = spec.from_index(i)
        if _has_full_order(a):
            return a
    raise NoPrimitiveFound(f"no primitive element in {spec}")


@dataclass(frozen=True)
class SubfieldView:
    """GF(p^s) inside GF(p^m), listed as 0, 1, z, z^2, ..., z^(p^s - 2)."""

    spec: FieldSpec
    s: int
    generator: FieldElement
    elements: tuple[FieldElement, ...]

    @property
    def size(self) -> int:
        return len(self.elements)

    @functools.cached_property
    def _positions(self) -> dict[int, int]:
        return {e.index: i for i, e in enumerate(self.elements)}

    def position(self, e: FieldElement) -> int:
        """Canonical position of a subfield element; ``KeyError`` if outside."""
        return self._positions[e.index]

    def __contains__(self, e: FieldElement) -> bool:
        return e.index in self._positions


@functools.cache
def subfield_view(spec: FieldSpec, s: int) -> SubfieldView:
    _check_divisor(spec, s)
    g = primitive_element(spec)
    zeta = g ** ((spec.q - 1) // (spec.p**s - 1))
    elems = [spec.zero]
    cur = spec.one
    for _ in range(spec.p**s - 1):
        elems.append(cur)
        cur = cur * zeta
    return SubfieldView(spec, s, zeta, tuple(elems))


def trace_representative(spec: FieldSpec, s: int, omega: FieldElement) -> FieldElement:
    """Canonical ``beta`` with ``trace_rel(beta, s) == omega``.

    When the relative degree r is invertible mod p this is ``omega / r``;
    otherwise the first element in enumeration order with that trace.
    """
    r = _check_divisor(spec, s)
    if r % spec.p:
        return omega * pow(r, -1, spec.p)
    tr = field_tables(spec).trace_rel(s)
    hits = np.flatnonzero(tr == omega.index)
    return spec.from_index(int(hits[0]))


# --- vectorised tables ---

class FieldTables:
    """Lookup tables over element indices for whole-field sweeps.

    ``inv[0]`` is 0, which makes ``mul(u, inv)`` the involution ``u/z``
    with ``0 -> 0`` directly.
    """

    def __init__(self, spec: FieldSpec):
        p, m, q = spec.p, spec.m, spec.q
        self.spec = spec
        self.place = p ** np.arange(m, dtype=np.int64)
        idx = np.arange(q, dtype=np.int64)
        self.digits = (idx[:, None] // self.place[None, :]) % p

        g = primitive_element(spec)
        exp = np.empty(q - 1, dtype=np.int64)
        cur = spec.one
        for k in range(q - 1):
            exp[k] = cur.index
            cur = cur * g
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self.exp, self.log = exp, log
        self.inv = np.zeros(q, dtype=np.int64)
        self.inv[1:] = exp[(-log[1:]) % (q - 1)]

        basis_tr = np.array([trace_abs(spec.from_index(p**i)) for i in range(m)], dtype=np.int64)
        self.trace_abs = (self.digits @ basis_tr) % p
        self._trace_rel: dict[int, np.ndarray] = {1: self.trace_abs.copy()}

    def combine(self, a, b, sign: int = 1) -> np.ndarray:
        """Index of ``a + sign*b`` (elementwise on index arrays)."""
        d = (self.digits[a] + sign * self.digits[b]) % self.spec.p
        return d @ self.place

    def mul(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        out = np.zeros(a.shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        out[nz] = self.exp[(self.log[a[nz]] + self.log[b[nz]]) % (self.spec.q - 1)]
        return out

    def trace_rel(self, s: int) -> np.ndarray:
        """Index of ``trace_rel(alpha, s)`` for every index ``alpha``."""
        if s not in self._trace_rel:
            spec = self.spec
            _check_divisor(spec, s)
            basis = np.array(
                [trace_rel(spec.from_index(spec.p**i), s).coeffs for i in range(spec.m)],
                dtype=np.int64,
            )
            coeffs = (self.digits @ basis) % spec.p
            self._trace_rel[s] = coeffs @ self.place
        return self._trace_rel[s]


@functools.cache
def field_tables(spec: FieldSpec) -> FieldTables:
    return FieldTables(spec)
