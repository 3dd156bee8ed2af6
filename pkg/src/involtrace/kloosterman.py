"""Exact additive characters and Kloosterman sums.

A character sum over GF(q) takes values in Z[zeta_p].  Rather than
accumulating complex floats we count how often each trace value occurs and
keep the count vector as a ``CyclotomicInt``; floats are only a view.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import FieldMismatch, NonIntegerCollapse, NonRealResult, ZeroParameter
from .finite_field import FieldElement, FieldSpec, field_tables, trace_abs

__all__ = [
    "CyclotomicInt",
    "KloostermanSpectrum",
    "additive_character",
    "char_counts",
    "kloosterman_exact",
    "kloosterman_real",
    "spectrum",
    "prime_char_kloosterman_exact",
    "prime_char_kloosterman",
    "REAL_TOL",
]

REAL_TOL = 1e-9


@dataclass(frozen=True)
class CyclotomicInt:
    """``sum(c_t * zeta_p**t)`` in canonical form (``c_{p-1} == 0``).

    The top coefficient is eliminated with ``1 + zeta + ... + zeta^(p-1) = 0``,
    which gives a unique representative so ``==`` is exact equality in Z[zeta_p].
    """

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        if len(c) != self.p:
            raise ValueError(f"expected {self.p} coefficients, got {len(c)}")
        top = c[-1]
        object.__setattr__(self, "coeffs", tuple(x - top for x in c))

    @classmethod
    def integer(cls, p: int, n: int) -> "CyclotomicInt":
        return cls(p, (n,) + (0,) * (p - 1))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "CyclotomicInt":
        c = [0] * p
        c[k % p] = 1
        return cls(p, tuple(c))

    def _coerce(self, other) -> "CyclotomicInt":
        if isinstance(other, int):
            return CyclotomicInt.integer(self.p, other)
        if isinstance(other, CyclotomicInt) and other.p == self.p:
            return other
        raise TypeError(f"cannot combine CyclotomicInt(p={self.p}) with {other!r}")

    def __add__(self, other):
        o = self._coerce(other)
        return CyclotomicInt(self.p, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[(i + j) % p] += a * b
        return CyclotomicInt(p, tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int) -> "CyclotomicInt":
        """Multiply by ``zeta**k``."""
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            out[(i + k) % p] += a
        return CyclotomicInt(p, tuple(out))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_rational():
            raise NonIntegerCollapse(f"{self} is not a rational integer")
        return self.coeffs[0]

    def exact_div(self, d: int) -> int:
        """Integer value divided by ``d``; any remainder is an error."""
        n = self.to_int()
        if n % d:
            raise NonIntegerCollapse(f"{n} is not divisible by {d}")
        return n // d

    def to_complex(self) -> complex:
        w = cmath.exp(2j * math.pi / self.p)
        return sum(c * w**t for t, c in enumerate(self.coeffs))

    def to_real(self) -> float:
        z = self.to_complex()
        if abs(z.imag) >= REAL_TOL:
            raise NonRealResult(f"{self} evaluates to {z}")
        return z.real

    def __str__(self):
        terms = [f"{c}*z^{t}" if t else str(c) for t, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def additive_character(a: FieldElement) -> CyclotomicInt:
    """``zeta_p ** Tr(a)``."""
    return CyclotomicInt.zeta(a.spec.p, trace_abs(a))


def _check_same(spec: FieldSpec, *elems: FieldElement) -> None:
    for e in elems:
        if e.spec != spec:
            raise FieldMismatch(f"element of {e.spec} used with {spec}")


def char_counts(spec: FieldSpec, a: FieldElement, b: FieldElement) -> np.ndarray:
    """``c_t = #{alpha != 0 : Tr(a*alpha + b/alpha) = t}`` for ``t`` in ``0..p-1``."""
    _check_same(spec, a, b)
    tab = field_tables(spec)
    alpha = np.arange(1, spec.q, dtype=np.int64)
    arg = tab.combine(tab.mul(a.index, alpha), tab.mul(b.index, tab.inv[alpha]))
    return np.bincount(tab.trace_abs[arg], minlength=spec.p)


def kloosterman_exact(spec: FieldSpec, a: FieldElement, b: FieldElement) -> CyclotomicInt:
    """``K(chi_p, a, b)`` as an element of Z[zeta_p]."""
    return CyclotomicInt(spec.p, tuple(int(c) for c in char_counts(spec, a, b)))


def kloosterman_real(spec: FieldSpec, a: FieldElement, b: FieldElement) -> float:
    return kloosterman_exact(spec, a, b).to_real()


@dataclass
class KloostermanSpectrum:
    """``K(chi_p, 1, t*u)`` for ``t = 1..p-1``."""

    spec: FieldSpec
    u: FieldElement
    exact: dict[int, CyclotomicInt] = field(default_factory=dict)
    real: dict[int, float] = field(default_factory=dict)

    @property
    def weil_bound(self) -> float:
        return 2 * math.sqrt(self.spec.q)

    def within_weil(self) -> bool:
        return all(abs(v) < self.weil_bound for v in self.real.values())

    def total(self) -> CyclotomicInt:
        return sum(self.exact.values(), CyclotomicInt.integer(self.spec.p, 0))

    def csv_rows(self) -> list[str]:
        rows = []
        for t in sorted(self.exact):
            counts = kloosterman_counts_from(self.exact[t], self.spec.q - 1)
            rows.append(",".join([str(t), *map(str, counts), repr(round(self.real[t], 9))]))
        return rows


def kloosterman_counts_from(value: CyclotomicInt, total: int) -> list[int]:
    """Recover the count vector from its canonical form, given the count total."""
    p = value.p
    # canonical coeffs are c_t - c_{p-1}; the counts sum to ``total``
    shift, rem = divmod(total - sum(value.coeffs), p)
    assert rem == 0
    return [c + shift for c in value.coeffs]


def spectrum(spec: FieldSpec, u: FieldElement) -> KloostermanSpectrum:
    _check_same(spec, u)
    if u.is_zero():
        raise ZeroParameter("u must be nonzero")
    out = KloostermanSpectrum(spec, u)
    one = spec.one
    for t in range(1, spec.p):
        k = kloosterman_exact(spec, one, u * t)
        out.exact[t] = k
        out.real[t] = k.to_real()
    return out


def prime_char_kloosterman_exact(p: int, c: int) -> CyclotomicInt:
    """``sum_{l=1}^{p-1} zeta_p^(l + c/l)``, the Kloosterman sum over GF(p)."""
    counts = [0] * p
    for ell in range(1, p):
        counts[(ell + c * pow(ell, -1, p)) % p] += 1
    return CyclotomicInt(p, tuple(counts))


def prime_char_kloosterman(p: int, c: int) -> float:
    return prime_char_kloosterman_exact(p, c).to_real()
