import json
import random

import numpy as np
import pytest

from involtrace.errors import NonDivisorDegree, ZeroParameter
from involtrace.finite_field import enumerate_elements, subfield_view, trace_rel
from involtrace.trace_partition import (
    InvolutionU,
    b4_sum,
    b_0h_closed_form,
    b_h0_closed_form,
    btable_bruteforce,
    btable_closed_form,
    btable_indicator,
    btable_kloosterman,
    btable_offdiag_formula,
    check_weil_envelope,
    delta_p,
    delta_p_character,
    delta_q,
    delta_q_direct,
    trace_class_index,
    verify_all,
    verify_row_permutation,
    verify_row_sums,
    verify_symmetry,
)
from oracles import naive_b4, naive_btable

F243_TABLE = [[23, 29, 29], [29, 20, 32], [29, 32, 20]]
F3125_TABLE = [
    [145, 120, 120, 120, 120],
    [120, 132, 108, 141, 124],
    [120, 108, 124, 132, 141],
    [120, 141, 132, 124, 108],
    [120, 124, 141, 108, 132],
]
# frozen from oracles.naive_btable with classes in canonical subfield order
F256_TABLE = [[19, 15, 15, 15], [15, 21, 16, 12], [15, 16, 12, 21], [15, 12, 21, 16]]


def _rand_u(spec, rng):
    return spec.from_index(rng.randrange(1, spec.q))


def test_involution(f243, f256):
    for spec, u in (f243, f256):
        f = InvolutionU(u)
        assert f.is_involution()
        assert f(spec.zero) == spec.zero
        a = spec.root
        assert f(f(a)) == a
    with pytest.raises(ZeroParameter):
        InvolutionU(f243[0].zero)


def test_delta_p(f243):
    spec, _ = f243
    assert delta_p(spec.zero) == 1
    assert sum(delta_p(a) for a in enumerate_elements(spec)) == 81
    rng = random.Random(20)
    for _ in range(100):
        a = spec.from_index(rng.randrange(spec.q))
        assert delta_p(a) == delta_p_character(a)


def test_delta_q(f256):
    spec, _ = f256
    assert delta_q(spec.zero, 2) == 1
    values = [delta_q(a, 2) for a in enumerate_elements(spec)]
    assert sum(values) == 64
    assert spec.q - sum(values) == 192
    assert values == [delta_q_direct(a, 2) for a in enumerate_elements(spec)]
    with pytest.raises(NonDivisorDegree):
        delta_q(spec.one, 3)


def test_bruteforce_matches_naive(f243, f256, f9, f16):
    spec, u = f243
    assert btable_bruteforce(spec, u).rows() == naive_btable(spec, u) == F243_TABLE
    spec, u = f256
    labels = list(subfield_view(spec, 2).elements)
    assert btable_bruteforce(spec, u, 2).rows() == naive_btable(spec, u, 2, labels) == F256_TABLE
    for i in range(1, 9):
        u = f9.from_index(i)
        assert btable_bruteforce(f9, u).rows() == naive_btable(f9, u)
    labels = list(subfield_view(f16, 2).elements)
    assert btable_bruteforce(f16, f16.one, 2).rows() == naive_btable(f16, f16.one, 2, labels)


def test_bruteforce_f3125(f3125):
    spec, u = f3125
    assert btable_bruteforce(spec, u).rows() == F3125_TABLE


def test_all_methods_agree_on_fixtures(f243, f3125):
    for (spec, u), expected in ((f243, F243_TABLE), (f3125, F3125_TABLE)):
        for build in (btable_kloosterman, btable_closed_form):
            assert build(spec, u).rows() == expected
        assert btable_indicator(spec, u).rows() == expected


def test_closed_forms(f243, f3125):
    assert b_h0_closed_form(*f243) == 29
    assert b_h0_closed_form(*f3125) == 120
    off = btable_offdiag_formula(*f243)
    assert off[1, 1] == 20 and off[1, 2] == 32
    assert btable_offdiag_formula(*f3125)[2, 3] == 132


def test_method_agreement_random(f125, f343):
    rng = random.Random(21)
    for spec in (f125, f343):
        for _ in range(5):
            u = _rand_u(spec, rng)
            brute = btable_bruteforce(spec, u)
            assert btable_kloosterman(spec, u).same_entries(brute)
            assert btable_closed_form(spec, u).same_entries(brute)
            assert btable_indicator(spec, u).same_entries(brute)


def test_representative_independence(f243, f256):
    spec, u = f243
    rng = random.Random(22)
    base = btable_indicator(spec, u)
    shift = next(a for a in enumerate_elements(spec) if a and delta_p(a))
    alt = [b + shift for b in trace_class_index(spec, 1).representatives]
    assert btable_indicator(spec, u, 1, alt).same_entries(base)
    spec, u = f256
    base = btable_indicator(spec, u, 2)
    zeros = [a for a in enumerate_elements(spec) if a and trace_rel(a, 2).is_zero()]
    alt = [b + rng.choice(zeros) for b in trace_class_index(spec, 2).representatives]
    assert btable_indicator(spec, u, 2, alt).same_entries(base)
    assert base.same_entries(btable_bruteforce(spec, u, 2))


def test_bad_representatives_rejected(f243):
    spec, u = f243
    with pytest.raises(ValueError):
        btable_indicator(spec, u, 1, [spec.zero, spec.zero, spec.zero])


def test_b4(f256, f16):
    spec, u = f256
    assert b4_sum(spec, u, 2) == 143 == naive_b4(spec, u, 2)
    assert b_0h_closed_form(spec, u, 2) == 2 * 64 - 256 + 143 == 15
    assert btable_bruteforce(spec, u, 2).table[0, 1:].tolist() == [15, 15, 15]
    # substituting beta -> c*beta for c in GF(4)* changes nothing
    for c in subfield_view(spec, 2).elements[2:]:
        assert naive_b4(spec, u, 2, scale=c) == 143
    assert b_0h_closed_form(f16, f16.one, 2) == btable_bruteforce(f16, f16.one, 2)[0, 1]


def test_b0h_matches_bruteforce_random(f256, f16):
    rng = random.Random(23)
    for spec in (f256, f16):
        spec = spec[0] if isinstance(spec, tuple) else spec
        for _ in range(5):
            u = _rand_u(spec, rng)
            row = btable_bruteforce(spec, u, 2).table[0, 1:]
            assert np.all(row == b_0h_closed_form(spec, u, 2))


def test_symmetry_and_permutation(f3125, f256):
    table = btable_bruteforce(*f3125)
    assert verify_symmetry(table).passed
    assert verify_row_permutation(table).passed
    assert verify_row_sums(table).passed
    table.table[1, 3] += 1
    bad = verify_symmetry(table)
    assert not bad.passed and bad.detail["first_violation"] == [1, 3]
    assert not verify_row_permutation(table).passed
    table = btable_bruteforce(f256[0], f256[1], 2)
    assert all(r.passed for r in verify_all(table))
    table.table[2, 1] += 1
    assert not verify_row_permutation(table).passed


def test_weil_envelope(f243, f3125, f9):
    res = check_weil_envelope(btable_bruteforce(*f243))
    assert res.passed and res.detail["integer_envelope"] == [-5, 59]
    res = check_weil_envelope(btable_bruteforce(*f3125))
    assert res.passed and res.detail["integer_envelope"] == [13, 237]
    for i in range(1, 9):
        assert check_weil_envelope(btable_bruteforce(f9, f9.from_index(i))).passed


def test_properties_random_u(f243):
    spec, _ = f243
    rng = random.Random(24)
    for _ in range(20):
        table = btable_bruteforce(spec, _rand_u(spec, rng))
        assert all(r.passed for r in verify_all(table))


def test_output_formats(f243):
    table = btable_bruteforce(*f243)
    csv = table.to_csv()
    assert csv.splitlines()[:3] == ["h,k,count", "0,0,23", "0,1,29"]
    assert csv.endswith("\n") and csv == btable_bruteforce(*f243).to_csv()
    doc = json.loads(table.to_json())
    assert list(doc) == ["schema", "p", "m", "s", "u", "method", "table"]
    assert doc["u"] == "0,1,0,2,0" and doc["table"] == F243_TABLE and doc["method"] == "brute-force"


def test_errors(f243):
    spec, u = f243
    with pytest.raises(ZeroParameter):
        btable_bruteforce(spec, spec.zero)
    with pytest.raises(NonDivisorDegree):
        btable_bruteforce(spec, u, 2)
