"""Trace-partition cardinality arrays for the involution ``z -> u/z``.

``B[h, k]`` counts the field elements whose trace class is ``h`` and whose
image under the involution has trace class ``k``.  Traces are taken down to
GF(p^s); for ``s == 1`` the classes are indexed by residues ``0..p-1``, and
for ``s > 1`` by positions in the canonical ``SubfieldView`` ordering.

Tables can be built four ways:

* ``btable_bruteforce``: one sweep over the field, classifying pairs.
* ``btable_indicator``: the literal double indicator sum with chosen trace
  representatives, using the norm-power indicator.
* ``btable_kloosterman``: exact assembly from Kloosterman sums (prime base).
* ``btable_closed_form``: the constant first column plus the off-diagonal
  product formula (prime base).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ZeroParameter
from .finite_field import (
    FieldElement,
    FieldSpec,
    field_tables,
    subfield_view,
    trace_abs,
    trace_rel,
    trace_representative,
)
from .kloosterman import CyclotomicInt, prime_char_kloosterman_exact, spectrum

__all__ = [
    "BTable",
    "CheckResult",
    "InvolutionU",
    "TraceClassIndex",
    "base_elements",
    "class_labels",
    "trace_class_index",
    "delta_p",
    "delta_p_character",
    "delta_q",
    "delta_q_direct",
    "btable_bruteforce",
    "btable_indicator",
    "btable_kloosterman",
    "btable_offdiag_formula",
    "btable_closed_form",
    "b_h0_closed_form",
    "b4_sum",
    "b_0h_closed_form",
    "verify_symmetry",
    "verify_row_permutation",
    "verify_row_sums",
    "check_weil_envelope",
    "verify_all",
    "weil_envelope",
]

BRUTE_FORCE = "brute-force"
KLOOSTERMAN = "kloosterman-formula"
NORM_INDICATOR = "norm-indicator-formula"
CLOSED_FORM = "closed-form"


@dataclass
class BTable:
    spec: FieldSpec
    u: FieldElement
    s: int
    method: str
    table: np.ndarray

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def __getitem__(self, hk):
        return int(self.table[hk])

    def rows(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.table]

    def same_entries(self, other: "BTable") -> bool:
        return np.array_equal(self.table, other.table)

    def to_csv(self) -> str:
        lines = ["h,k,count"]
        for h in range(self.n):
            for k in range(self.n):
                lines.append(f"{h},{k},{int(self.table[h, k])}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "p": self.spec.p,
            "m": self.spec.m,
            "s": self.s,
            "u": ",".join(map(str, self.u.coeffs)),
            "method": self.method,
            "table": self.rows(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict()) + "\n"


@dataclass(frozen=True)
class InvolutionU:
    """``f(z) = u/z`` with ``f(0) = 0``."""

    u: FieldElement

    def __post_init__(self):
        if self.u.is_zero():
            raise ZeroParameter("u must be nonzero")

    def __call__(self, a: FieldElement) -> FieldElement:
        return a.spec.zero if a.is_zero() else self.u / a

    def images(self) -> np.ndarray:
        """Index of ``f(alpha)`` for every index ``alpha``."""
        tab = field_tables(self.u.spec)
        return tab.mul(self.u.index, tab.inv)

    def is_involution(self) -> bool:
        img = self.images()
        return bool(np.array_equal(img[img], np.arange(self.u.spec.q)))


def base_elements(spec: FieldSpec, s: int) -> list[FieldElement]:
    """Elements of GF(p^s) in class-index order."""
    if s == 1:
        return [spec.constant(c) for c in range(spec.p)]
    return list(subfield_view(spec, s).elements)


def class_labels(spec: FieldSpec, s: int) -> np.ndarray:
    """Trace-class index of every field element (by element index)."""
    tab = field_tables(spec)
    tr = tab.trace_rel(s)
    if s == 1:
        return tr
    lookup = _subfield_lookup(spec, s)
    return lookup[tr]


def _subfield_lookup(spec: FieldSpec, s: int) -> np.ndarray:
    lookup = np.full(spec.q, -1, dtype=np.int64)
    for pos, e in enumerate(base_elements(spec, s)):
        lookup[e.index] = pos
    return lookup


@dataclass(frozen=True)
class TraceClassIndex:
    s: int
    omegas: tuple[FieldElement, ...]
    representatives: tuple[FieldElement, ...]

    def __post_init__(self):
        for w, b in zip(self.omegas, self.representatives, strict=True):
            if trace_rel(b, self.s) != w:
                raise ValueError(f"representative {b!r} does not have trace {w!r}")


def trace_class_index(
    spec: FieldSpec, s: int, representatives: Sequence[FieldElement] | None = None
) -> TraceClassIndex:
    omegas = tuple(base_elements(spec, s))
    if representatives is None:
        representatives = [trace_representative(spec, s, w) for w in omegas]
    return TraceClassIndex(s, omegas, tuple(representatives))


# --- indicators ---

def delta_p(a: FieldElement) -> int:
    return int(trace_abs(a) == 0)


def delta_p_character(a: FieldElement) -> int:
    """Indicator of trace zero as the character average ``(1/p) sum_j chi(j a)``."""
    p = a.spec.p
    total = sum((CyclotomicInt.zeta(p, j * trace_abs(a)) for j in range(p)), CyclotomicInt.integer(p, 0))
    return total.exact_div(p)


def _norm_to_prime(w: FieldElement, s: int) -> int:
    """Norm from GF(p^s) to GF(p) of a subfield element."""
    p = w.spec.p
    n = w ** ((p**s - 1) // (p - 1))
    assert not any(n.coeffs[1:])
    return n.coeffs[0]


def delta_q(a: FieldElement, s: int) -> int:
    """``1 - N(Tr(a))^(p-1) mod p`` with Tr down to GF(p^s) and N down to GF(p)."""
    p = a.spec.p
    return (1 - pow(_norm_to_prime(trace_rel(a, s), s), p - 1, p)) % p


def delta_q_direct(a: FieldElement, s: int) -> int:
    return int(trace_rel(a, s).is_zero())


def _norm_power_by_label(spec: FieldSpec, s: int) -> np.ndarray:
    p = spec.p
    return np.array(
        [pow(_norm_to_prime(w, s), p - 1, p) for w in base_elements(spec, s)], dtype=np.int64
    )


def _check_u(spec: FieldSpec, u: FieldElement) -> None:
    if u.spec != spec:
        raise ValueError("u belongs to a different field")
    if u.is_zero():
        raise ZeroParameter("u must be nonzero")


# --- tables ---

def btable_bruteforce(spec: FieldSpec, u: FieldElement, s: int = 1) -> BTable:
    _check_u(spec, u)
    labels = class_labels(spec, s)
    n = spec.p**s
    img = InvolutionU(u).images()
    flat = np.bincount(labels * n + labels[img], minlength=n * n)
    return BTable(spec, u, s, BRUTE_FORCE, flat.reshape(n, n))


def btable_indicator(
    spec: FieldSpec,
    u: FieldElement,
    s: int = 1,
    representatives: Sequence[FieldElement] | None = None,
) -> BTable:
    """Double indicator sum over all alpha with representatives ``beta_h``."""
    _check_u(spec, u)
    index = trace_class_index(spec, s, representatives)
    tab = field_tables(spec)
    # delta_q per element index, through the norm-power formula
    dq = 1 - _norm_power_by_label(spec, s)[class_labels(spec, s)]
    alpha = np.arange(spec.q)
    img = InvolutionU(u).images()
    betas = [b.index for b in index.representatives]
    d_alpha = np.stack([dq[tab.combine(alpha, b, -1)] for b in betas])
    d_image = np.stack([dq[tab.combine(img, b, -1)] for b in betas])
    return BTable(spec, u, s, NORM_INDICATOR, d_alpha @ d_image.T)


def _zero(p: int) -> CyclotomicInt:
    return CyclotomicInt.integer(p, 0)


def btable_kloosterman(spec: FieldSpec, u: FieldElement) -> BTable:
    """Prime-base table from the split double character sum.

    ``p^2 B[h,k] = q + sum_{j,l >= 1} zeta^(-jh-lk) (1 + K(j l u))``.
    """
    _check_u(spec, u)
    p, q = spec.p, spec.q
    ks = spectrum(spec, u).exact
    one_plus = {t: ks[t] + 1 for t in ks}
    table = np.zeros((p, p), dtype=np.int64)
    for h in range(p):
        for k in range(p):
            acc = CyclotomicInt.integer(p, q)
            for j in range(1, p):
                for ell in range(1, p):
                    acc = acc + one_plus[j * ell % p].shift(-j * h - ell * k)
            table[h, k] = acc.exact_div(p * p)
    return BTable(spec, u, 1, KLOOSTERMAN, table)


def b_h0_closed_form(spec: FieldSpec, u: FieldElement) -> int:
    """Shared value of ``B[h, 0]``, ``h != 0``: ``(q - (p-1) - sum_t K(t u)) / p^2``."""
    _check_u(spec, u)
    p = spec.p
    total = spectrum(spec, u).total()
    return (spec.q - (p - 1) - total).exact_div(p * p)


def btable_offdiag_formula(spec: FieldSpec, u: FieldElement) -> dict[tuple[int, int], int]:
    """``B[h,k]`` for ``h, k >= 1`` as ``(q + 1 + sum_t K_p(thk) K(t u)) / p^2``.

    ``K_p`` is the Kloosterman sum over the prime field.
    """
    _check_u(spec, u)
    p, q = spec.p, spec.q
    ks = spectrum(spec, u).exact
    out = {}
    for h in range(1, p):
        for k in range(1, p):
            acc = CyclotomicInt.integer(p, q + 1)
            for t in range(1, p):
                acc = acc + prime_char_kloosterman_exact(p, t * h * k) * ks[t]
            out[h, k] = acc.exact_div(p * p)
    return out


def btable_closed_form(spec: FieldSpec, u: FieldElement) -> BTable:
    """Assemble the prime-base table from the column-0 constant and the
    off-diagonal formula; ``B[0,0]`` is what is left of the zero-trace class."""
    p = spec.p
    b = b_h0_closed_form(spec, u)
    table = np.zeros((p, p), dtype=np.int64)
    table[1:, 0] = b
    table[0, 1:] = b
    table[0, 0] = p ** (spec.m - 1) - (p - 1) * b
    for (h, k), v in btable_offdiag_formula(spec, u).items():
        table[h, k] = v
    return BTable(spec, u, 1, CLOSED_FORM, table)


def b4_sum(spec: FieldSpec, u: FieldElement, s: int) -> int:
    """``sum_beta N(Tr(beta))^(p-1) * N(Tr(u/beta) - 1)^(p-1)`` over the whole field."""
    _check_u(spec, u)
    if s >= spec.m:
        raise ValueError("b4 needs a proper subfield (s < m)")
    tab = field_tables(spec)
    npow = _norm_power_by_label(spec, s)
    lookup = _subfield_lookup(spec, s)
    tr = tab.trace_rel(s)
    img = InvolutionU(u).images()
    shifted = tab.combine(tr[img], 1, -1)
    return int(np.sum(npow[lookup[tr]] * npow[lookup[shifted]]))


def b_0h_closed_form(spec: FieldSpec, u: FieldElement, s: int) -> int:
    """Shared value of ``B[0, h]``, ``h != 0``: ``2 q^(r-1) - q^r + b4``."""
    b4 = b4_sum(spec, u, s)
    q = spec.p**s
    r = spec.m // s
    return 2 * q ** (r - 1) - q**r + b4


# --- verification ---

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, **self.detail}


def verify_symmetry(table: BTable) -> CheckResult:
    t = table.table
    bad = np.argwhere(t != t.T)
    if len(bad):
        h, k = (int(x) for x in bad[0])
        return CheckResult("symmetry", False, {"first_violation": [h, k]})
    return CheckResult("symmetry", True)


def verify_row_permutation(table: BTable) -> CheckResult:
    """Rows ``h >= 1`` restricted to ``k >= 1`` are permutations of row 1,
    and the first column is constant below the top entry."""
    t = table.table
    ref = sorted(t[1, 1:].tolist())
    for h in range(2, table.n):
        if sorted(t[h, 1:].tolist()) != ref:
            return CheckResult("row-permutation", False, {"first_violation": h})
    col = t[1:, 0]
    if np.any(col != col[0]):
        return CheckResult("row-permutation", False, {"column0": col.tolist()})
    return CheckResult("row-permutation", True)


def verify_column0_constant(table: BTable) -> CheckResult:
    col = table.table[1:, 0]
    row = table.table[0, 1:]
    ok = bool(np.all(col == col[0]) and np.all(row == row[0]))
    return CheckResult("column0-constant", ok, {"value": int(col[0])})


def verify_row_sums(table: BTable) -> CheckResult:
    spec = table.spec
    q = spec.p**table.s
    r = spec.m // table.s
    expected = q ** (r - 1)
    sums = table.table.sum(axis=1)
    ok = bool(np.all(sums == expected) and int(table.table.sum()) == spec.q and np.all(table.table >= 0))
    return CheckResult("row-sums", ok, {"expected": expected, "sums": sums.tolist()})


def weil_envelope(p: int, m: int) -> tuple[float, float]:
    center = p ** (m - 2)
    radius = 1 + 2 * math.sqrt(p**m)
    return center - radius, center + radius


def check_weil_envelope(table: BTable) -> CheckResult:
    """Strict ``|B[h,k] - p^(m-2)| < 1 + 2 sqrt(p^m)`` for a prime-base table."""
    if table.s != 1:
        raise ValueError("the envelope applies to prime-base tables only")
    lo, hi = weil_envelope(table.spec.p, table.spec.m)
    t = table.table
    ok = bool(np.all(t > lo) and np.all(t < hi))
    return CheckResult(
        "weil-envelope",
        ok,
        {
            "min": int(t.min()),
            "max": int(t.max()),
            "envelope": [lo, hi],
            "integer_envelope": [math.ceil(lo), math.floor(hi)],
        },
    )


def verify_all(table: BTable) -> list[CheckResult]:
    results = [
        verify_symmetry(table),
        verify_row_permutation(table),
        verify_column0_constant(table),
        verify_row_sums(table),
    ]
    if table.s == 1:
        results.append(check_weil_envelope(table))
    return results
