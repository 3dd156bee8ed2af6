"""Finite-field trace partitions under the involution z -> u/z.

Modules:

* ``finite_field``: GF(p^m) arithmetic, subfields, traces and norms.
* ``kloosterman``: exact additive characters and Kloosterman sums.
* ``trace_partition``: the cardinality tables and their verification.
* ``prng``: the trace-based generator, range reduction and audits.
"""

from .finite_field import FieldElement, FieldSpec, make_field, parse_field_spec, subfield_view
from .kloosterman import CyclotomicInt, kloosterman_exact, spectrum
from .trace_partition import (
    BTable,
    btable_bruteforce,
    btable_closed_form,
    btable_indicator,
    btable_kloosterman,
    verify_all,
)

__all__ = [
    "FieldElement",
    "FieldSpec",
    "make_field",
    "parse_field_spec",
    "subfield_view",
    "CyclotomicInt",
    "kloosterman_exact",
    "spectrum",
    "BTable",
    "btable_bruteforce",
    "btable_closed_form",
    "btable_indicator",
    "btable_kloosterman",
    "verify_all",
]

__version__ = "0.1.0"
