"""Finite Boolean algebras: atoms, ideals, kernels and the homomorphisms ``(2^k)^s -> 2^k``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import FiniteAlgebra, HomMap, boolean_algebra, power_algebra, tuple_index
from .errors import DOMAIN_CAP, NotBooleanError, check_cap

_ROLE_ALIASES = {
    "meet": ("and", "meet", "∧"),
    "join": ("or", "join", "∨"),
    "compl": ("not", "neg", "¬"),
    "bottom": ("0", "bot", "⊥"),
    "top": ("1", "top", "⊤"),
}
_ROLE_ARITY = {"meet": 2, "join": 2, "compl": 1, "bottom": 0, "top": 0}


def boolean_roles(b: FiniteAlgebra) -> dict[str, str] | None:
    """Map each Boolean role to the operation name filling it, or None."""
    if len(b.ops) != 5:
        return None
    roles = {}
    for role, aliases in _ROLE_ALIASES.items():
        found = [op for op in b.ops if op.name in aliases and op.arity == _ROLE_ARITY[role]]
        if len(found) != 1:
            return None
        roles[role] = found[0].name
    return roles


def _law_failure(b: FiniteAlgebra, roles: dict[str, str]) -> str | None:
    q = b.size
    meet = b.op(roles["meet"]).table
    join = b.op(roles["join"]).table
    neg = b.op(roles["compl"]).table
    zero = b.op(roles["bottom"]).table[0]
    one = b.op(roles["top"]).table[0]

    def m(x, y):
        return meet[x * q + y]

    def j(x, y):
        return join[x * q + y]

    for x in range(q):
        if j(x, zero) != x:
            return f"{x} join 0 != {x}"
        if m(x, one) != x:
            return f"{x} meet 1 != {x}"
        if j(x, neg[x]) != one:
            return f"{x} join not {x} != 1"
        if m(x, neg[x]) != zero:
            return f"{x} meet not {x} != 0"
        for y in range(q):
            if m(x, y) != m(y, x):
                return f"meet not commutative at ({x}, {y})"
            if j(x, y) != j(y, x):
                return f"join not commutative at ({x}, {y})"
            for z in range(q):
                if m(m(x, y), z) != m(x, m(y, z)):
                    return f"meet not associative at ({x}, {y}, {z})"
                if j(j(x, y), z) != j(x, j(y, z)):
                    return f"join not associative at ({x}, {y}, {z})"
                if m(x, j(y, z)) != j(m(x, y), m(x, z)):
                    return f"meet does not distribute over join at ({x}, {y}, {z})"
                if j(x, m(y, z)) != m(j(x, y), j(x, z)):
                    return f"join does not distribute over meet at ({x}, {y}, {z})"
    return None


@dataclass(frozen=True)
class BooleanView:
    """A verified Boolean algebra with its atoms in index order.

    ``to_bits[b]`` encodes ``b`` as an element of ``2^k`` (bit for atom 0 most
    significant); ``from_bits`` is its inverse.
    """

    algebra: FiniteAlgebra
    roles: dict
    atoms: tuple[int, ...]
    to_bits: tuple[int, ...]
    from_bits: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.atoms)

    @property
    def zero(self) -> int:
        return self.algebra.op(self.roles["bottom"]).table[0]

    @property
    def one(self) -> int:
        return self.algebra.op(self.roles["top"]).table[0]

    def join(self, x: int, y: int) -> int:
        return self.algebra.op(self.roles["join"]).table[x * self.algebra.size + y]

    def meet(self, x: int, y: int) -> int:
        return self.algebra.op(self.roles["meet"]).table[x * self.algebra.size + y]

    def complement(self, x: int) -> int:
        return self.algebra.op(self.roles["compl"]).table[x]

    def leq(self, x: int, y: int) -> bool:
        return self.join(x, y) == y


def is_boolean(b: FiniteAlgebra) -> bool:
    roles = boolean_roles(b)
    return roles is not None and _law_failure(b, roles) is None


def boolean_view(b: FiniteAlgebra) -> BooleanView:
    roles = boolean_roles(b)
    if roles is None:
        raise NotBooleanError(f"{b.name!r} does not have the Boolean signature (and, or, not, 0, 1)")
    failure = _law_failure(b, roles)
    if failure is not None:
        raise NotBooleanError(f"{b.name!r} violates the Boolean laws: {failure}")
    q = b.size
    join = b.op(roles["join"]).table
    zero = b.op(roles["bottom"]).table[0]
    nonzero = [x for x in range(q) if x != zero]
    atoms = tuple(
        a for a in nonzero if not any(x != a and join[x * q + a] == a for x in nonzero)
    )
    k = len(atoms)
    to_bits = tuple(
        tuple_index([1 if join[a * q + x] == x else 0 for a in atoms], 2) for x in range(q)
    )
    if sorted(to_bits) != list(range(2**k)):
        raise NotBooleanError(f"{b.name!r} is not isomorphic to 2^{k}")
    from_bits = [0] * (2**k)
    for x, bits in enumerate(to_bits):
        from_bits[bits] = x
    return BooleanView(b, roles, atoms, to_bits, tuple(from_bits))


def principal_ideal(b: FiniteAlgebra, y: int) -> tuple[int, ...]:
    """``{x : x <= y}`` in index order."""
    view = boolean_view(b)
    return tuple(x for x in range(b.size) if view.leq(x, y))


def maximal_ideals(b: FiniteAlgebra) -> list[tuple[int, ...]]:
    """The ideals generated by the complements of the atoms, in atom order."""
    view = boolean_view(b)
    return [principal_ideal(b, view.complement(a)) for a in view.atoms]


def is_ideal(b: FiniteAlgebra, subset) -> bool:
    view = boolean_view(b)
    s = set(subset)
    if view.zero not in s:
        return False
    if any(view.join(x, y) not in s for x in s for y in s):
        return False
    return all(view.meet(x, z) in s for x in s for z in range(b.size))


def kernel(phi: HomMap) -> tuple[int, ...]:
    boolean_view(phi.domain)
    zero = boolean_view(phi.codomain).zero
    return tuple(x for x in range(phi.domain.size) if phi.table[x] == zero)


def boolean_homs(k: int, s: int, cap: int | None = None):
    """All homomorphisms ``(2^k)^s -> 2^k``, one per choice of input bit for each output bit.

    Returns a :class:`~algca.homs.HomEnumeration` with ``(k*s)**k`` items.
    """
    from .homs import HomEnumeration

    check_cap(f"Boolean domain 2^{k * s}", 2 ** (k * s), cap, DOMAIN_CAP)
    base = boolean_algebra(k)
    domain = power_algebra(base, range(s), cap)
    ks = k * s
    # domain element bits, coordinate (i, j) -> position i*k + j, first most significant
    bits = [[(y >> (ks - 1 - c)) & 1 for c in range(ks)] for y in range(domain.size)]
    tables = []
    for choice in itertools.product(range(ks), repeat=k):
        tables.append(tuple(tuple_index([row[c] for c in choice], 2) for row in bits))
    tables.sort()
    return HomEnumeration(domain, base, tuple(HomMap(domain, base, t) for t in tables))


def transported_boolean_homs(b: FiniteAlgebra, s: int, cap: int | None = None):
    """``Hom(B^s, B)`` for any finite Boolean ``B``, via its isomorphism with ``2^k``."""
    from .homs import HomEnumeration

    view = boolean_view(b)
    std = boolean_homs(view.k, s, cap)
    domain = power_algebra(b, range(s), cap)
    k = view.k
    # b-tuple index -> standard (2^k)^s index
    to_std = []
    for y in range(domain.size):
        vals = domain.decode(y)
        to_std.append(tuple_index([view.to_bits[v] for v in vals], 2**k))
    tables = sorted(
        tuple(view.from_bits[h.table[to_std[y]]] for y in range(domain.size)) for h in std.items
    )
    return HomEnumeration(domain, b, tuple(HomMap(domain, b, t) for t in tables))
