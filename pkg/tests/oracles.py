"""Slow, independent reference computations used to freeze expected values.

Everything here uses only the element-at-a-time FieldElement arithmetic and
the literal definitions; none of it touches the lookup tables.
"""

from involtrace.finite_field import enumerate_elements, trace_rel


def naive_trace(a, s=1):
    """Sum of a^(p^(s*i)) by repeated exponentiation, not via frobenius()."""
    spec = a.spec
    q = spec.p**s
    total = spec.zero
    conj = a
    for _ in range(spec.m // s):
        total = total + conj
        conj = conj**q
    return total


def naive_btable(spec, u, s=1, labels=None):
    """Double loop over the field, classes keyed by trace value."""
    if labels is None:
        labels = [spec.constant(c) for c in range(spec.p)]
    pos = {e.index: i for i, e in enumerate(labels)}
    n = len(labels)
    table = [[0] * n for _ in range(n)]
    for a in enumerate_elements(spec):
        fa = spec.zero if a.is_zero() else u * (a**(spec.q - 2))
        table[pos[naive_trace(a, s).index]][pos[naive_trace(fa, s).index]] += 1
    return table


def naive_char_counts(spec, a, b):
    counts = [0] * spec.p
    for x in enumerate_elements(spec):
        if x.is_zero():
            continue
        val = a * x + b * (x**(spec.q - 2))
        counts[naive_trace(val).coeffs[0]] += 1
    return counts


def naive_is_prime(n):
    return n > 1 and all(n % d for d in range(2, n))


def naive_b4(spec, u, s, scale=None):
    """b4 by direct norm powers on each element, optionally summing over scale*beta."""
    p = spec.p
    one = spec.one

    def npow(w):
        n = w ** ((p**s - 1) // (p - 1))
        return pow(n.coeffs[0], p - 1, p)

    total = 0
    for beta in enumerate_elements(spec):
        if scale is not None:
            beta = scale * beta
        fb = spec.zero if beta.is_zero() else u / beta
        total += npow(trace_rel(beta, s)) * npow(trace_rel(fb, s) - one)
    return total
