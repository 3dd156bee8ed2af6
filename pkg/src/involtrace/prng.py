"""Trace-based pseudorandom values.

A value is ``R = Tr(u / gamma)`` with ``gamma`` drawn from the field and the
trace taken down to GF(p^s).  In strict mode ``gamma`` is restricted to the
nonzero zero-trace elements and ``R = 0`` outputs are discarded; the count
identities on the trace-partition table make the remaining outputs exactly
uniform over the nonzero base-field elements.

Outputs are integer labels of base-field elements: the residue for a prime
base, the canonical subfield position otherwise.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from statistics import NormalDist
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    EntropyExhausted,
    InsufficientSamples,
    OutOfDomain,
    RejectionLimitExceeded,
    SearchLimitExceeded,
    SizeMismatch,
    ZeroParameter,
)
from .finite_field import FieldElement, FieldSpec, first_irreducible, is_prime, make_field
from .trace_partition import InvolutionU, class_labels

__all__ = [
    "OsEntropy",
    "FileEntropy",
    "SeedEntropy",
    "parse_entropy",
    "uniform_below",
    "PrngConfig",
    "PrngStream",
    "RangeReduction",
    "find_range_prime",
    "reduce_to_width",
    "reduction_stream",
    "apply_mapping",
    "apply_value_mapping",
    "AuditReport",
    "audit_uniformity",
    "chi2_quantile",
    "MAX_REJECTIONS",
]

MAX_REJECTIONS = 10**6
STRICT = "strict"
RELAXED = "relaxed"


# --- entropy backends ---

class OsEntropy:
    def read(self, n: int) -> bytes:
        return os.urandom(n)


class FileEntropy:
    """Bytes read sequentially from a file; running out is an error."""

    def __init__(self, path):
        self.path = path
        self._fh = open(path, "rb")

    def read(self, n: int) -> bytes:
        data = self._fh.read(n)
        if len(data) < n:
            raise EntropyExhausted(f"entropy file {self.path} exhausted")
        return data

    def close(self):
        self._fh.close()


class SeedEntropy:
    """Deterministic stream: SHA-256 of ``seed || counter`` blocks."""

    def __init__(self, seed: bytes):
        self.seed = bytes(seed)
        self._counter = 0
        self._buf = bytearray()

    def read(self, n: int) -> bytes:
        while len(self._buf) < n:
            block = hashlib.sha256(self.seed + self._counter.to_bytes(8, "big")).digest()
            self._buf += block
            self._counter += 1
        out = bytes(self._buf[:n])
        del self._buf[:n]
        return out


def parse_entropy(descr: str):
    """``os``, ``file:<path>`` or ``seed:<hex>``."""
    if descr == "os":
        return OsEntropy()
    if descr.startswith("file:"):
        return FileEntropy(descr[5:])
    if descr.startswith("seed:"):
        return SeedEntropy(bytes.fromhex(descr[5:]))
    raise ValueError(f"unknown entropy source {descr!r}")


def uniform_below(source, n: int) -> int:
    """Uniform integer in ``[0, n)`` by rejection on whole byte groups."""
    nbytes = max(1, ((n - 1).bit_length() + 7) // 8)
    span = 256**nbytes
    limit = span - span % n
    for _ in range(MAX_REJECTIONS):
        v = int.from_bytes(source.read(nbytes), "big")
        if v < limit:
            return v % n
    raise RejectionLimitExceeded("byte rejection did not terminate")


def uniform_batch(source, n: int, count: int) -> np.ndarray:
    """Up to ``count`` uniform integers in ``[0, n)``; rejected draws are dropped."""
    nbytes = max(1, ((n - 1).bit_length() + 7) // 8)
    span = 256**nbytes
    limit = span - span % n
    raw = np.frombuffer(source.read(nbytes * count), dtype=np.uint8).reshape(count, nbytes)
    v = np.zeros(count, dtype=np.int64)
    for col in range(nbytes):
        v = v * 256 + raw[:, col]
    return v[v < limit] % n


# --- generator ---

@dataclass(frozen=True)
class PrngConfig:
    spec: FieldSpec
    u: FieldElement
    s: int = 1
    mode: str = STRICT

    def __post_init__(self):
        if self.u.is_zero():
            raise ZeroParameter("u must be nonzero")
        if self.spec.m % self.s or self.spec.m // self.s < 2:
            raise ValueError("the field must have degree >= 2 over the base GF(p^s)")
        if self.mode not in (STRICT, RELAXED):
            raise ValueError(f"mode must be {STRICT!r} or {RELAXED!r}")

    @property
    def base_size(self) -> int:
        return self.spec.p**self.s


class PrngStream:
    """Single-consumer generator over a ``PrngConfig`` and an entropy source.

    Candidate ``gamma`` values are drawn in batches of ``batch`` field elements
    and filtered; accepted ones are consumed in draw order, so a given
    entropy stream always yields the same outputs.
    """

    def __init__(self, config: PrngConfig, entropy, batch: int = 1024):
        self.config = config
        self.entropy = entropy
        self.batch = batch
        labels = class_labels(config.spec, config.s)
        self._label_arr = labels
        self._labels = labels.tolist()
        images = InvolutionU(config.u).images()
        self._images = images.tolist()
        self._pool: list[int] = []
        if config.mode == STRICT:
            zero_trace = np.flatnonzero(labels == 0)[1:]
            if not np.any(labels[images[zero_trace]]):
                # e.g. u in the base field with degree 2: Tr(u/gamma) is always 0
                raise ZeroParameter("u admits no nonzero strict-mode output")

    def sample_gamma(self) -> FieldElement:
        return self.config.spec.from_index(self._sample_gamma_index())

    def _sample_gamma_index(self) -> int:
        tried = 0
        while not self._pool:
            if tried >= MAX_REJECTIONS:
                raise RejectionLimitExceeded("no admissible gamma within the retry cap")
            g = uniform_batch(self.entropy, self.config.spec.q, self.batch)
            keep = g != 0
            if self.config.mode == STRICT:
                keep &= self._label_arr[g] == 0
            self._pool = g[keep][::-1].tolist()
            tried += self.batch
        return self._pool.pop()

    def value_for(self, gamma_index: int) -> int:
        return self._labels[self._images[gamma_index]]

    def next_value(self) -> int:
        if self.config.mode == RELAXED:
            return self.value_for(self._sample_gamma_index())
        for _ in range(MAX_REJECTIONS):
            r = self.value_for(self._sample_gamma_index())
            if r:
                return r
        raise RejectionLimitExceeded("every output had zero trace")

    def values(self, count: int) -> Iterator[int]:
        for _ in range(count):
            yield self.next_value()


# --- range reduction ---

@dataclass(frozen=True)
class RangeReduction:
    w: int
    mu: int
    Q: int

    def __post_init__(self):
        if self.Q != 2 * self.mu * self.w + 1 or not is_prime(self.Q):
            raise ValueError(f"Q={self.Q} is not a prime of the form 2*mu*w+1")


def find_range_prime(w: int, limit: int = MAX_REJECTIONS) -> RangeReduction:
    """Smallest ``mu >= 1`` with ``2*mu*w + 1`` prime."""
    if w < 2:
        raise ValueError("w must be at least 2")
    for mu in range(1, limit + 1):
        if is_prime(2 * mu * w + 1):
            return RangeReduction(w, mu, 2 * mu * w + 1)
    raise SearchLimitExceeded(f"no prime 2*mu*{w}+1 with mu <= {limit}")


def reduce_to_width(R: int, reduction: RangeReduction) -> int:
    if not 1 <= R <= reduction.Q - 1:
        raise OutOfDomain(f"R={R} outside [1, {reduction.Q - 1}]")
    return R % reduction.w


class ReducedStream:
    """Strict stream over GF(Q^degree), reduced mod ``w``."""

    def __init__(self, reduction: RangeReduction, stream: PrngStream):
        self.reduction = reduction
        self.stream = stream

    def next_value(self) -> int:
        return reduce_to_width(self.stream.next_value(), self.reduction)

    def values(self, count: int) -> Iterator[int]:
        for _ in range(count):
            yield self.next_value()


def reduction_stream(w: int, entropy, u: FieldElement | None = None, degree: int = 2) -> ReducedStream:
    """Uniform values in ``[0, w)`` via the prime ``Q = 2*mu*w + 1``.

    ``u`` defaults to a nonzero element drawn from ``entropy``.
    """
    reduction = find_range_prime(w)
    spec = make_field(reduction.Q, degree, first_irreducible(reduction.Q, degree))
    if u is not None:
        return ReducedStream(reduction, PrngStream(PrngConfig(spec, u), entropy))
    for _ in range(MAX_REJECTIONS):
        u = spec.from_index(1 + uniform_below(entropy, spec.q - 1))
        try:
            return ReducedStream(reduction, PrngStream(PrngConfig(spec, u), entropy))
        except ZeroParameter:
            continue
    raise RejectionLimitExceeded("no admissible u found")


def apply_mapping(S: int, target: Sequence, w: int | None = None):
    """Bijection ``{0..w-1} -> target`` by position."""
    if w is not None and len(target) != w:
        raise SizeMismatch(f"target has {len(target)} entries, expected {w}")
    if not 0 <= S < len(target):
        raise OutOfDomain(f"S={S} outside [0, {len(target)})")
    return target[S]


def apply_value_mapping(R: int, target: Sequence, q: int):
    """Bijection ``{1..q-1} -> target`` by position."""
    if len(target) != q - 1:
        raise SizeMismatch(f"target has {len(target)} entries, expected {q - 1}")
    if not 1 <= R <= q - 1:
        raise OutOfDomain(f"R={R} outside [1, {q - 1}]")
    return target[R - 1]


# --- audit ---

def chi2_quantile(prob: float, dof: int) -> float:
    """Wilson-Hilferty approximation to the chi-square quantile."""
    z = NormalDist().inv_cdf(prob)
    a = 2.0 / (9.0 * dof)
    return dof * (1.0 - a + z * a**0.5) ** 3


@dataclass
class AuditReport:
    sample_count: int
    counts: list[int]
    statistic: float
    dof: int
    threshold: float
    significance: float
    passed: bool = field(default=False)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "sample_count": self.sample_count,
            "counts": self.counts,
            "statistic": self.statistic,
            "dof": self.dof,
            "threshold": self.threshold,
            "significance": self.significance,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict()) + "\n"


def audit_uniformity(
    samples: Iterable[int], bins: int, low: int = 0, significance: float = 0.999
) -> AuditReport:
    """Pearson chi-square of ``samples`` (integers in ``[low, low+bins)``) against uniform."""
    data = np.fromiter(samples, dtype=np.int64) - low
    n = len(data)
    if n < 10 * bins:
        raise InsufficientSamples(f"{n} samples is fewer than 10 x {bins} bins")
    if n and (data.min() < 0 or data.max() >= bins):
        raise OutOfDomain(f"samples must lie in [{low}, {low + bins})")
    counts = np.bincount(data, minlength=bins)
    expected = n / bins
    stat = float(np.sum((counts - expected) ** 2) / expected)
    dof = bins - 1
    threshold = chi2_quantile(significance, dof)
    return AuditReport(n, counts.tolist(), stat, dof, threshold, significance, stat < threshold)
