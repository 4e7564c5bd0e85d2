import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from algca.algebra import boolean_algebra, builtin_algebra, cyclic_group_algebra, set_algebra, vector_space
from algca.automata import compose, eca, identity_ca, is_endomorphic, minimal_memory, pointwise_combine
from algca.endo import (
    GroupAlgebraElement,
    all_elements,
    classify_eca,
    convolve,
    count_endoca,
    cyclic_order,
    delta,
    enumerate_endoca,
    is_projection,
    psi,
    psi_inverse,
    vector_space_shape,
    verify_direct_limit,
    verify_group_algebra,
    verify_phi,
)
from algca.errors import NotEndomorphicError, NotEntropicError, NotModuleLike, ValidationError
from algca.groups import Z, MemorySet, cyclic_group, symmetric_group
from algca.homs import enumerate_endomorphisms

Z2A = cyclic_group_algebra(2)
S3 = symmetric_group(3)


def test_enumerate_endoca_sizes():
    assert len(enumerate_endoca(Z, (-1, 0, 1), Z2A)) == 8
    assert len(enumerate_endoca(Z, (0, 1), boolean_algebra(1))) == 2
    assert len(enumerate_endoca(cyclic_group(3), (0, 1), cyclic_group_algebra(3))) == 9
    for t in enumerate_endoca(S3, (0, 3), Z2A):
        assert is_endomorphic(t)


def test_endomorphic_ecas_are_the_additive_rules():
    family = enumerate_endoca(Z, (-1, 0, 1), Z2A)
    numbers = sorted(sum(v << i for i, v in enumerate(t.table)) for t in family)
    assert numbers == classify_eca("additive")


def test_verify_phi_passes():
    for group, mem, a in [
        (cyclic_group(4), (0, 1), Z2A),
        (S3, (0, 1), cyclic_group_algebra(3)),
        (Z, (0, 1), set_algebra(2)),
    ]:
        report = verify_phi(group, mem, a)
        assert report.ok, str(report)
        assert any(c.name == "phi.bijection" for c in report.checks)


@pytest.mark.parametrize("name", ["2", "S3mag"])
def test_verify_phi_refuses_non_entropic(name):
    a = builtin_algebra(name)
    with pytest.raises(NotEntropicError) as info:
        verify_phi(cyclic_group(2), (0, 1), a)
    assert info.value.witness.holds_in(a)


def test_count_endoca_methods():
    r = count_endoca(Z, (-1, 0, 1), Z2A)
    assert r.count == 8
    assert set(r.agreeing) == {"vector-space", "cyclic", "module", "generic"}
    assert count_endoca(Z, (0, 1, 2), boolean_algebra(1)).count == 3
    assert count_endoca(Z, (0, 1), boolean_algebra(2)) == (16, "boolean", ("boolean", "generic"))
    assert count_endoca(Z, (0,), vector_space(2, 2)).count == 16
    assert count_endoca(Z, (0, 1), vector_space(2, 2)).count == 256
    assert count_endoca(Z, (0, 1), cyclic_group_algebra(6)).count == 36
    # only the generic path applies to a set
    assert count_endoca(Z, (0, 1), set_algebra(2)) == (16, "generic", ("generic",))


def test_shape_detection():
    assert vector_space_shape(vector_space(3, 2)) == (3, 2)
    assert vector_space_shape(cyclic_group_algebra(4)) is None
    assert cyclic_order(cyclic_group_algebra(4)) == 4
    assert cyclic_order(vector_space(2, 2)) is None


def test_classifications():
    assert classify_eca("additive") == [0, 60, 90, 102, 150, 170, 204, 240]
    assert classify_eca("boolean-hom") == [170, 204, 240]
    assert classify_eca("endomorphic-under", Z2A) == classify_eca("additive")
    assert len(classify_eca("endomorphic-under", set_algebra(2))) == 256
    with pytest.raises(ValueError):
        classify_eca("linear")
    for m in classify_eca("boolean-hom"):
        assert is_projection(minimal_memory(eca(m, boolean_algebra(1))))


# -- group algebra -----------------------------------------------------------

RING_Z3 = enumerate_endomorphisms(cyclic_group_algebra(3))
S3_ELEMENTS = all_elements(S3, RING_Z3, MemorySet(S3, (0, 1, 3)))


def elements():
    return st.sampled_from(S3_ELEMENTS)


@given(elements(), elements(), elements())
def test_convolution_is_associative_and_distributive(a, b, c):
    assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))
    assert convolve(a, b + c) == convolve(a, b) + convolve(a, c)
    assert convolve(a + b, c) == convolve(a, c) + convolve(b, c)


@given(elements(), elements())
def test_psi_is_multiplicative_on_s3(a, b):
    assert psi(a * b) == minimal_memory(compose(psi(a), psi(b)))
    assert psi(a + b) == minimal_memory(pointwise_combine("+", [psi(a), psi(b)]))


def test_orientation_matters_on_nonabelian_group():
    ring = enumerate_endomorphisms(Z2A)
    a, b = delta(S3, ring, 1), delta(S3, ring, 3)
    assert psi(a * b) == minimal_memory(compose(psi(a), psi(b)))
    assert psi(b * a) != minimal_memory(compose(psi(a), psi(b)))


def test_group_algebra_elements():
    ring = RING_Z3
    two = ring.index_of((0, 2, 1))
    a = GroupAlgebraElement(S3, ring, ((1, ring.identity), (1, ring.identity), (2, ring.zero)))
    # identity + identity = multiplication by 2, zero coefficients dropped
    assert a.coeffs == ((1, two),)
    assert a[0] == ring.zero
    assert psi_inverse(psi(a), ring) == a
    with pytest.raises(ValidationError):
        GroupAlgebraElement(S3, ring, ((7, two),))
    one = delta(S3, ring, S3.identity)
    assert psi(one) == minimal_memory(identity_ca(S3, cyclic_group_algebra(3)))


def test_psi_inverse_errors():
    with pytest.raises(NotEndomorphicError):
        psi_inverse(eca(110))
    with pytest.raises(NotModuleLike):
        psi_inverse(eca(170, boolean_algebra(1)))
    with pytest.raises(NotModuleLike):
        enumerate_endomorphisms.cache_clear()
        GroupAlgebraElement(Z, enumerate_endomorphisms(boolean_algebra(1)), ())


def test_verify_group_algebra_small():
    report = verify_group_algebra(cyclic_group(4), cyclic_group_algebra(4), (0, 1))
    assert report.ok, str(report)
    mult = next(c for c in report.checks if c.name == "group-algebra.multiplicative")
    assert "psi(a*b) = psi(a) o psi(b)" in mult.detail


def test_verify_group_algebra_sampled():
    report = verify_group_algebra(S3, cyclic_group_algebra(3), (0, 1, 2, 3), samples=40, seed=5)
    assert report.ok
    assert any("(sampled)" in c.detail for c in report.checks)


def test_direct_limit():
    report = verify_direct_limit(Z, [(0,), (0, 1), (-1, 0, 1)], Z2A)
    assert report.ok, str(report)
    assert "sizes 2, 4, 8" in report.checks[0].detail
    single = verify_direct_limit(Z, [(0,)], Z2A)
    assert single.ok
    with pytest.raises(ValidationError):
        verify_direct_limit(Z, [(0, 1), (0,)], Z2A)
    with pytest.raises(NotEntropicError):
        verify_direct_limit(Z, [(0,)], boolean_algebra(1))


def test_endo_family_ordering_is_stable():
    a = enumerate_endoca(Z, (0, 1), cyclic_group_algebra(3)).tables()
    assert a == sorted(a)
    assert all(len(t) == 9 for t in a)
    assert len(set(itertools.chain.from_iterable(a))) == 3
    rng = random.Random(0)
    assert rng.random() == random.Random(0).random()
