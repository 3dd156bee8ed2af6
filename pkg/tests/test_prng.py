import numpy as np
import pytest

from involtrace.errors import (
    EntropyExhausted,
    InsufficientSamples,
    OutOfDomain,
    SizeMismatch,
    ZeroParameter,
)
from involtrace.finite_field import enumerate_elements, trace_abs, trace_rel
from involtrace.prng import (
    FileEntropy,
    PrngConfig,
    PrngStream,
    SeedEntropy,
    apply_mapping,
    apply_value_mapping,
    audit_uniformity,
    chi2_quantile,
    find_range_prime,
    parse_entropy,
    reduce_to_width,
    reduction_stream,
    uniform_below,
)
from oracles import naive_is_prime

# chi-square 0.999 quantiles, frozen from scipy.stats.chi2.ppf
CHI2_999 = {1: 10.827566, 3: 16.266236, 9: 27.877165, 79: 123.594366}


def _stream(fixture, seed=b"\x00", mode="strict", s=1):
    spec, u = fixture
    return PrngStream(PrngConfig(spec, u, s, mode), SeedEntropy(seed))


def test_gamma_postcondition(f243):
    st = _stream(f243)
    for _ in range(500):
        g = st.sample_gamma()
        assert g and trace_abs(g) == 0


def test_gamma_uniform_over_zero_trace(f243):
    spec, _ = f243
    zero_trace = [a.index for a in enumerate_elements(spec) if a and trace_abs(a) == 0]
    assert len(zero_trace) == 80
    pos = {idx: i for i, idx in enumerate(zero_trace)}
    st = _stream(f243, b"gamma")
    draws = [pos[st.sample_gamma().index] for _ in range(80_000)]
    assert audit_uniformity(draws, 80).passed


def test_empty_entropy_file(tmp_path, f243):
    path = tmp_path / "empty.bin"
    path.write_bytes(b"")
    spec, u = f243
    st = PrngStream(PrngConfig(spec, u), FileEntropy(path), batch=1)
    with pytest.raises(EntropyExhausted):
        st.next_value()


def test_file_entropy_deterministic(tmp_path, f243):
    path = tmp_path / "bytes.bin"
    path.write_bytes(SeedEntropy(b"x").read(4096))
    spec, u = f243
    a = list(PrngStream(PrngConfig(spec, u), FileEntropy(path), batch=1).values(20))
    b = list(PrngStream(PrngConfig(spec, u), FileEntropy(path), batch=1).values(20))
    assert a == b


def test_parse_entropy():
    assert isinstance(parse_entropy("seed:00ff"), SeedEntropy)
    assert len(parse_entropy("os").read(7)) == 7
    with pytest.raises(ValueError):
        parse_entropy("bogus")


def test_uniform_below_range():
    src = SeedEntropy(b"u")
    vals = [uniform_below(src, 243) for _ in range(2000)]
    assert min(vals) >= 0 and max(vals) < 243


def test_exhaustive_value_counts(f243, f256):
    st = _stream(f243)
    spec, _ = f243
    counts = np.zeros(3, dtype=int)
    for a in enumerate_elements(spec):
        if a and trace_abs(a) == 0:
            counts[st.value_for(a.index)] += 1
    # B[0,h] = 29 for h != 0, B[0,0] = 23 includes gamma = 0
    assert counts.tolist() == [22, 29, 29]
    st = _stream(f256, s=2)
    spec, _ = f256
    counts = np.zeros(4, dtype=int)
    for a in enumerate_elements(spec):
        if a and trace_rel(a, 2).is_zero():
            counts[st.value_for(a.index)] += 1
    assert counts.tolist() == [18, 15, 15, 15]


def test_relaxed_exhaustive(f243):
    spec, _ = f243
    st = _stream(f243, mode="relaxed")
    counts = np.bincount([st.value_for(i) for i in range(1, spec.q)], minlength=3)
    assert counts.tolist() == [80, 81, 81]


def test_strict_never_zero(f243, f256):
    assert 0 not in set(_stream(f243).values(2000))
    vals = set(_stream(f256, s=2).values(2000))
    assert vals == {1, 2, 3}


def test_relaxed_hits_zero(f243):
    assert 0 in set(_stream(f243, mode="relaxed").values(500))


def test_determinism(f3125):
    a = list(_stream(f3125, b"\x01").values(200))
    b = list(_stream(f3125, b"\x01").values(200))
    c = list(_stream(f3125, b"\x02").values(200))
    assert a == b and a != c


def test_coset_identity(f243):
    spec, u = f243
    gamma = next(a for a in enumerate_elements(spec) if a and trace_abs(a) == 0)
    r = trace_abs(u / gamma)
    zero_trace = [b for b in enumerate_elements(spec) if trace_abs(b) == 0]
    for beta0 in zero_trace:
        assert trace_abs((u + beta0 * gamma) / gamma) == r
    same = {v.index for v in enumerate_elements(spec) if trace_abs(v / gamma) == r}
    assert same == {(u + b * gamma).index for b in zero_trace}


def test_config_validation(f243):
    spec, u = f243
    with pytest.raises(ZeroParameter):
        PrngConfig(spec, spec.zero)
    with pytest.raises(ValueError):
        PrngConfig(spec, u, s=5)
    with pytest.raises(ValueError):
        PrngConfig(spec, u, mode="loose")


@pytest.mark.parametrize("w", [2, 3, 7, 10, 12, 100, 997])
def test_find_range_prime(w):
    rr = find_range_prime(w)
    expected_mu = next(mu for mu in range(1, 10_000) if naive_is_prime(2 * mu * w + 1))
    assert rr.mu == expected_mu
    assert rr.Q == 2 * rr.mu * w + 1
    assert rr.Q % w == 1 and rr.Q % 2 == 1


def test_range_prime_known_values():
    assert find_range_prime(2).Q == 5 and find_range_prime(2).mu == 1
    rr = find_range_prime(10)
    assert (rr.mu, rr.Q) == (2, 41)


def test_reduce_to_width():
    rr = find_range_prime(10)
    counts = np.bincount([reduce_to_width(R, rr) for R in range(1, rr.Q)], minlength=10)
    assert counts.tolist() == [2 * rr.mu] * 10
    assert reduce_to_width(10, rr) == 0
    for bad in (0, rr.Q):
        with pytest.raises(OutOfDomain):
            reduce_to_width(bad, rr)


def test_reduction_pipeline():
    rs = reduction_stream(10, SeedEntropy(b"pipe"))
    assert rs.stream.config.spec.p == 41 and rs.stream.config.spec.m == 2
    vals = list(rs.values(20_000))
    assert set(vals) <= set(range(10))
    assert audit_uniformity(vals, 10).passed


def test_mappings():
    for S in range(5):
        assert apply_mapping(S, range(5)) == S
    names = ["a", "b", "c", "d"]
    for S in range(4):
        assert names.index(apply_mapping(S, names, 4)) == S
    with pytest.raises(SizeMismatch):
        apply_mapping(0, names, 5)
    assert [apply_value_mapping(R, names, 5) for R in range(1, 5)] == names
    with pytest.raises(OutOfDomain):
        apply_value_mapping(0, names, 5)


def test_audit_basics():
    rep = audit_uniformity([0, 1, 2, 3] * 25, 4)
    assert rep.statistic == 0 and rep.passed and sum(rep.counts) == 100
    rep = audit_uniformity([2] * 1000, 4)
    assert not rep.passed and rep.statistic == pytest.approx(3000)
    with pytest.raises(InsufficientSamples):
        audit_uniformity([0, 1], 4)
    with pytest.raises(OutOfDomain):
        audit_uniformity([5] * 100, 4)
    assert audit_uniformity([1, 2, 3, 4] * 10, 4, low=1).passed


@pytest.mark.parametrize("dof, exact", sorted(CHI2_999.items()))
def test_wilson_hilferty(dof, exact):
    assert chi2_quantile(0.999, dof) == pytest.approx(exact, rel=0.035)


def test_base_field_u_rejected_in_strict_mode():
    rs = reduction_stream(10, SeedEntropy(b"pipe"))
    spec = rs.stream.config.spec
    with pytest.raises(ZeroParameter):
        PrngStream(PrngConfig(spec, spec.constant(11)), SeedEntropy(b""))
    assert rs.stream.config.u.coeffs[1] != 0
