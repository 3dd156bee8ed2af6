"""
Arithmetic in GF(3^5)
=====================

Build a field from a defining polynomial, do arithmetic on its elements,
and look at traces, norms and a subfield.
"""

from collections import Counter

from involtrace.finite_field import (
    enumerate_elements,
    make_field,
    norm_abs,
    subfield_view,
    trace_abs,
    trace_rel,
)

# x^5 + 2x^3 + 2x^2 + x + 1, coefficients constant term first
F = make_field(3, 5, [1, 1, 2, 2, 0, 1])
eta = F.root
print(F, "q =", F.q, "primitive modulus:", F.is_primitive_modulus)

# eta is a root of the modulus; powers are reduced automatically
print("eta^5 =", eta**5)
u = 2 * eta**3 + eta
print("u =", u, " 1/u =", u.inverse(), " u * (1/u) =", u * u.inverse())

# The absolute trace lands in GF(3) and splits the field into equal classes
print("trace class sizes:", sorted(Counter(trace_abs(a) for a in enumerate_elements(F)).items()))
print("Tr(u) =", trace_abs(u), " N(u) =", norm_abs(u))

###############################################################################
# A field with a proper intermediate subfield: GF(2^8) contains GF(4)

G = make_field(2, 8, [1, 0, 1, 1, 0, 0, 0, 1, 1])
view = subfield_view(G, 2)
print("GF(4) inside GF(256):", view.elements)
print("generator is x^85:", view.generator == G.root**85)
zeros = sum(trace_rel(a, 2).is_zero() for a in enumerate_elements(G))
print("elements with relative trace 0:", zeros)
