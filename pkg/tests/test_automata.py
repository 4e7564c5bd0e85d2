import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from algca.algebra import boolean_algebra, cyclic_group_algebra, set_algebra
from algca.automata import (
    apply,
    canonical,
    compose,
    config_op,
    constant_ca,
    dump_ca,
    eca,
    equivalent,
    evolve,
    extend_memory,
    identity_ca,
    is_endomorphic,
    is_global_endomorphism,
    is_shift_equivariant,
    load_ca,
    make_ca,
    minimal_memory,
    pointwise_combine,
    project_to_quotient,
    random_ca,
    recover_local,
    shift_ca,
    wolfram_number,
    wolfram_row,
)
from algca.errors import CapExceeded, NotACellularAutomaton, ParseError, ValidationError
from algca.groups import Z, Z2, Configuration, all_configurations, cyclic_group, shift, symmetric_group

Z2A = cyclic_group_algebra(2)
S3 = symmetric_group(3)
C4 = cyclic_group(4)


def config(bits):
    return Configuration(Z, tuple(bits), (len(bits),))


def test_rule_110_on_period_4():
    # y(i) = mu(x(i-1), x(i), x(i+1)); for x = 0001 the neighbourhoods are
    # 100, 000, 001, 010, giving 0, 0, 1, 1
    assert apply(eca(110), config((0, 0, 0, 1))).values == (0, 0, 1, 1)


def test_wolfram_decoding():
    ca = eca(110)
    assert wolfram_row(ca) == (0, 1, 1, 0, 1, 1, 1, 0)
    for m in range(256):
        assert wolfram_number(eca(m)) == m


def test_identity_and_shift_rules():
    x = config((0, 1, 1, 0, 1))
    assert apply(eca(204), x) == x
    # rule 170 reads the right neighbour: y(i) = x(i+1)
    assert apply(eca(170), x).values == (1, 1, 0, 1, 0)
    assert apply(eca(240), x).values == (1, 0, 1, 1, 0)
    assert [c.values for c in evolve(eca(204), x, 3)] == [x.values] * 4


def test_two_dimensional_lattice():
    ca = make_ca(Z2, Z2A, [(0, 0), (1, 0), (0, 1)], [0, 1, 1, 0, 1, 0, 0, 1])
    x = Configuration(Z2, (1, 0, 0, 0, 0, 0, 0, 0, 0), (3, 3))
    y = apply(ca, x)
    # the single 1 at (0,0) is read by cells (0,0), (-1,0) and (0,-1)
    assert y.rows() == [(1, 0, 1), (0, 0, 0), (1, 0, 0)]
    assert is_shift_equivariant(ca, period=(3, 3))


def test_projection_to_quotient_merges_offsets():
    ca = make_ca(Z, Z2A, [-1, 1], [0, 1, 1, 0])
    small = project_to_quotient(ca, (2,))
    # -1 and 1 coincide modulo 2, so xor of a cell with itself is 0
    assert small.table == (0, 0)
    for x in all_configurations(Z, 2, (2,)):
        assert apply(ca, x).values == apply(small, Configuration(small.group, x.values)).values


def test_minimal_memory():
    m = minimal_memory(eca(90))
    assert m.memory.elems == (-1, 1)
    assert m.table == (0, 1, 1, 0)
    assert minimal_memory(eca(0)).memory.elems == ()
    assert minimal_memory(eca(204)).memory.elems == (0,)
    assert equivalent(eca(204), identity_ca(Z, Z2A))


def test_extend_memory_keeps_global_map():
    ca = eca(30)
    big = extend_memory(ca, [2, 1, 0, -1, -2])
    assert minimal_memory(big) == minimal_memory(ca)
    x = config((0, 1, 1, 0, 1, 0, 0))
    assert apply(big, x) == apply(ca, x)
    assert extend_memory(ca, ca.memory) == ca
    with pytest.raises(ValidationError):
        extend_memory(ca, [0, 1])
    assert canonical(make_ca(Z, Z2A, [1, 0], [0, 0, 1, 1])).memory.elems == (0, 1)


@given(st.integers(0, 255), st.integers(0, 255), st.lists(st.integers(0, 1), min_size=6, max_size=6))
def test_compose_matches_sequential(a, b, bits):
    x = config(bits)
    assert apply(compose(eca(a), eca(b)), x) == apply(eca(a), apply(eca(b), x))


def test_compose_over_nonabelian_group():
    rng = random.Random(3)
    q3 = cyclic_group_algebra(3)
    for _ in range(5):
        t1 = random_ca(S3, q3, rng.sample(range(6), 2), rng)
        t2 = random_ca(S3, q3, rng.sample(range(6), 2), rng)
        both = compose(t1, t2)
        for x in list(all_configurations(S3, 3))[::37]:
            assert apply(both, x) == apply(t1, apply(t2, x))


def test_pointwise_combination():
    xor = pointwise_combine("+", [eca(240), eca(170)])
    assert wolfram_number(minimal_memory(xor)) == 90
    zero = pointwise_combine("0", [], group=Z, alphabet=Z2A)
    assert zero.memory.elems == () and zero.table == (0,)
    with pytest.raises(ValueError):
        pointwise_combine("+", [eca(1)])


def test_recover_local_round_trip():
    rng = random.Random(0)
    for _ in range(10):
        ca = random_ca(C4, Z2A, rng.sample(range(4), 2), rng)
        got = recover_local(lambda x, ca=ca: apply(ca, x), C4, Z2A, ca.memory)
        assert got.table == ca.table


def test_recover_local_rejects_non_ca():
    def flip_cell_zero(x):
        vals = list(x.values)
        vals[0] ^= 1
        return Configuration(x.group, vals)

    with pytest.raises(NotACellularAutomaton):
        recover_local(flip_cell_zero, C4, Z2A, C4.elements())
    # a genuine CA whose memory is not inside the given set
    with pytest.raises(NotACellularAutomaton):
        recover_local(lambda x: apply(shift_ca(C4, Z2A, 1), x), C4, Z2A, [0])


def test_shift_equivariance():
    rng = random.Random(1)
    for group in (S3, C4):
        ca = random_ca(group, cyclic_group_algebra(3), [0, 1, 2], rng)
        assert is_shift_equivariant(ca)

    def not_equivariant(x):
        return Configuration(x.group, (1,) + x.values[1:])

    assert not is_shift_equivariant(not_equivariant, C4, 2)


def test_endomorphic_local_and_global():
    assert is_endomorphic(eca(90))
    assert not is_endomorphic(eca(110))
    assert is_global_endomorphism(eca(90), period=(5,))
    assert not is_global_endomorphism(eca(110), period=(5,))
    # a constant CA preserves + only when its value is 0
    assert is_global_endomorphism(constant_ca(C4, Z2A, 0))
    assert not is_global_endomorphism(constant_ca(C4, Z2A, 1))


def test_config_op():
    a, b = config((0, 1, 1)), config((1, 1, 0))
    assert config_op(Z2A, "+", [a, b]).values == (1, 0, 1)
    assert config_op(Z2A, "0", [], like=a).values == (0, 0, 0)
    with pytest.raises(ValidationError):
        config_op(Z2A, "+", [a, config((0, 1))])


def test_ca_file_round_trip(tmp_path):
    (tmp_path / "s3.grp").write_text("group S3\norder 6\n" + "\n".join(" ".join(map(str, r)) for r in S3.mul))
    text = "ca t\ngroup s3.grp\nalphabet Z2\nmemory 0 1\nrule 0 1 1 0\n"
    ca = load_ca(text, str(tmp_path))
    assert ca.group == S3 and ca.table == (0, 1, 1, 0)
    again = load_ca(dump_ca(eca(30)))
    assert again == eca(30)
    lattice = load_ca("ca t\ngroup Z2\nalphabet 2\nmemory 0,0 1,0\nrule 0 0 0 1\n")
    assert lattice.memory.elems == ((0, 0), (1, 0))
    assert lattice.alphabet == boolean_algebra(1)


@pytest.mark.parametrize(
    "text",
    [
        "ca t\ngroup Z\nalphabet Z2\nmemory 0\n",
        "ca t\ngroup Z\nalphabet Z2\nmemory 0\nrule 0 1\nrule 0 1\n",
        "ca t\ngroup Q8\nalphabet Z2\nmemory 0\nrule 0 1\n",
        "ca t\ngroup Z\nalphabet Z2\nmemory x\nrule 0 1\n",
        "ca t\ngroup Z\nalphabet Z2\nmemory 0\nrule 0 a\n",
        "ca t\ngroup Z\nalphabet Z2\nmemory 0\nrule 0 1\nspeed 3\n",
    ],
)
def test_bad_ca_files(text):
    with pytest.raises(ParseError):
        load_ca(text)


def test_bad_rules():
    with pytest.raises(ValidationError):
        make_ca(Z, Z2A, [0], [0, 1, 0])
    with pytest.raises(ValidationError):
        make_ca(Z, Z2A, [0], [0, 2])
    with pytest.raises(ValidationError):
        make_ca(Z, Z2A, [0, 0], [0, 1, 1, 0])
    with pytest.raises(ValueError):
        eca(256)


def test_caps():
    with pytest.raises(CapExceeded):
        extend_memory(eca(30), range(-8, 9), cap=4096)
    with pytest.raises(CapExceeded):
        recover_local(lambda x: x, cyclic_group(20), Z2A, [0])


def test_set_alphabet_rules_are_all_endomorphic():
    a = set_algebra(3)
    ca = random_ca(C4, a, [0, 1], random.Random(0))
    assert is_endomorphic(ca)


def test_shift_moves_configurations_on_z():
    x = config((1, 0, 0, 0))
    assert shift(1, x).values == (0, 1, 0, 0)
