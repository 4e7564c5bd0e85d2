import itertools

import pytest

from algca.algebra import FiniteAlgebra, Operation, boolean_algebra, cyclic_group_algebra, is_homomorphism, power_algebra
from algca.boolean import (
    boolean_homs,
    boolean_view,
    is_boolean,
    is_ideal,
    kernel,
    maximal_ideals,
    principal_ideal,
    transported_boolean_homs,
)
from algca.errors import NotBooleanError
from algca.homs import enumerate_homs


def relabel(a: FiniteAlgebra, perm) -> FiniteAlgebra:
    """The isomorphic copy of ``a`` in which element ``x`` is called ``perm[x]``."""
    q = a.size
    inv = [0] * q
    for x, y in enumerate(perm):
        inv[y] = x
    ops = []
    for op in a.ops:
        table = []
        for args in itertools.product(range(q), repeat=op.arity):
            j = 0
            for v in args:
                j = j * q + inv[v]
            table.append(perm[op.table[j]])
        ops.append(Operation(op.name, op.arity, tuple(table)))
    return FiniteAlgebra(a.name + "'", q, tuple(ops))


def test_atoms_of_2k():
    view = boolean_view(boolean_algebra(3))
    assert view.k == 3
    assert sorted(view.atoms) == [1, 2, 4]
    assert sorted(view.to_bits) == list(range(8))


def test_ideals():
    b = boolean_algebra(2)
    view = boolean_view(b)
    assert principal_ideal(b, view.one) == tuple(range(4))
    assert principal_ideal(b, view.zero) == (view.zero,)
    maxes = maximal_ideals(b)
    assert len(maxes) == 2
    for m in maxes:
        assert is_ideal(b, m)
        assert len(m) == 2
    assert not is_ideal(b, [view.one])


def test_kernels_of_homs_to_2_are_maximal_ideals():
    b = boolean_algebra(3)
    homs = enumerate_homs(b, boolean_algebra(1))
    assert homs.count == 3
    assert sorted(kernel(h) for h in homs) == sorted(maximal_ideals(b))


@pytest.mark.parametrize("k,s", [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2)])
def test_boolean_count(k, s):
    b = boolean_algebra(k)
    special = boolean_homs(k, s)
    assert special.count == (k * s) ** k
    assert all(is_homomorphism(h) for h in special)
    assert special.tables() == enumerate_homs(power_algebra(b, range(s)), b).tables()


def test_transport_to_relabelled_copy():
    b = relabel(boolean_algebra(2), [3, 0, 2, 1])
    assert is_boolean(b)
    homs = transported_boolean_homs(b, 2)
    assert homs.count == 16
    assert homs.tables() == enumerate_homs(power_algebra(b, range(2)), b).tables()


def test_role_aliases():
    b = boolean_algebra(1)
    renamed = {"and": "meet", "or": "join", "not": "neg", "0": "bot", "1": "top"}
    c = FiniteAlgebra("B", 2, tuple(Operation(renamed[o.name], o.arity, o.table) for o in b.ops))
    assert boolean_view(c).k == 1


def test_not_boolean():
    with pytest.raises(NotBooleanError):
        boolean_view(cyclic_group_algebra(2))
    b = boolean_algebra(1)
    broken = FiniteAlgebra(
        "B", 2, tuple(Operation(o.name, o.arity, (0, 0) if o.name == "not" else o.table) for o in b.ops)
    )
    with pytest.raises(NotBooleanError, match="violates"):
        boolean_view(broken)
