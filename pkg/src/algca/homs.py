"""Enumerating and counting homomorphisms.

The generic path is a depth-first search over the value table of the map
with unit propagation: as soon as every argument of an operation instance
``f(a_1, ..., a_n) = r`` has an image, the image of ``r`` is forced.  Module-like
and Boolean codomains have closed-form enumerations that must agree with it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import (
    FiniteAlgebra,
    HomMap,
    PowerAlgebra,
    _require_signature,
    is_entropic,
    power_algebra,
)
from .boolean import is_boolean, transported_boolean_homs
from .errors import DOMAIN_CAP, NotModuleLike, check_cap


@dataclass(frozen=True)
class HomEnumeration:
    domain: FiniteAlgebra
    codomain: FiniteAlgebra
    items: tuple[HomMap, ...]

    @property
    def count(self) -> int:
        return len(self.items)

    def tables(self) -> list[tuple[int, ...]]:
        return [h.table for h in self.items]

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


def _hom_tables(dom: FiniteAlgebra, cod: FiniteAlgebra) -> list[tuple[int, ...]]:
    n, q = dom.size, cod.size
    nullary: list[tuple[int, int]] = []
    # watchers keyed by argument variable; a constraint is examined when its
    # last argument receives a value, so results need no watchers
    unary: list[list] = [[] for _ in range(n)]
    left: list[list] = [[] for _ in range(n)]
    right: list[list] = [[] for _ in range(n)]
    square: list[list] = [[] for _ in range(n)]
    wide: list[list] = [[] for _ in range(n)]
    for op in dom.ops:
        cod_table = cod.op(op.name).table
        t = op.table
        if op.arity == 0:
            nullary.append((t[0], cod_table[0]))
        elif op.arity == 1:
            for a in range(n):
                unary[a].append((t[a], cod_table))
        elif op.arity == 2:
            for a in range(n):
                row = a * n
                for b in range(n):
                    r = t[row + b]
                    if a == b:
                        square[a].append((r, cod_table))
                    else:
                        left[a].append((b, r, cod_table))
                        right[b].append((a, r, cod_table))
        else:
            for k, args in enumerate(itertools.product(range(n), repeat=op.arity)):
                entry = (args, t[k], cod_table)
                for v in set(args):
                    wide[v].append(entry)

    phi = [-1] * n
    trail: list[int] = []

    def assign(var: int, value: int) -> bool:
        pending = [(var, value)]
        push = pending.append
        while pending:
            v, val = pending.pop()
            cur = phi[v]
            if cur >= 0:
                if cur != val:
                    return False
                continue
            phi[v] = val
            trail.append(v)
            for r, tab in unary[v]:
                f = tab[val]
                y = phi[r]
                if y < 0:
                    push((r, f))
                elif y != f:
                    return False
            for r, tab in square[v]:
                f = tab[val * q + val]
                y = phi[r]
                if y < 0:
                    push((r, f))
                elif y != f:
                    return False
            base = val * q
            for b, r, tab in left[v]:
                x = phi[b]
                if x >= 0:
                    f = tab[base + x]
                    y = phi[r]
                    if y < 0:
                        push((r, f))
                    elif y != f:
                        return False
            for a, r, tab in right[v]:
                x = phi[a]
                if x >= 0:
                    f = tab[x * q + val]
                    y = phi[r]
                    if y < 0:
                        push((r, f))
                    elif y != f:
                        return False
            for args, r, tab in wide[v]:
                j = 0
                for a in args:
                    x = phi[a]
                    if x < 0:
                        break
                    j = j * q + x
                else:
                    f = tab[j]
                    y = phi[r]
                    if y < 0:
                        push((r, f))
                    elif y != f:
                        return False
        return True

    for r, value in nullary:
        if not assign(r, value):
            return []

    def next_free(start: int) -> int | None:
        for v in range(start, n):
            if phi[v] < 0:
                return v
        return None

    found: list[tuple[int, ...]] = []
    first = next_free(0)
    if first is None:
        return [tuple(phi)]
    stack = [[first, 0, len(trail)]]
    while stack:
        frame = stack[-1]
        var, value, mark = frame
        while len(trail) > mark:
            phi[trail.pop()] = -1
        if value >= q:
            stack.pop()
            continue
        frame[1] = value + 1
        if assign(var, value):
            nxt = next_free(var + 1)
            if nxt is None:
                found.append(tuple(phi))
            else:
                stack.append([nxt, 0, len(trail)])
    found.sort()
    return found


def enumerate_homs(dom: FiniteAlgebra, cod: FiniteAlgebra, cap: int | None = None) -> HomEnumeration:
    """Every homomorphism ``dom -> cod``, ordered lexicographically by value table."""
    _require_signature(dom, cod)
    check_cap(f"hom search domain {dom.name}", dom.size, cap, DOMAIN_CAP)
    tables = _hom_tables(dom, cod)
    return HomEnumeration(dom, cod, tuple(HomMap(dom, cod, t) for t in tables))


# -- endomorphism rings ------------------------------------------------------


@dataclass(frozen=True)
class EndomorphismRing:
    """``End(A)`` with its composition table.

    ``compose[i][j]`` is the index of ``items[i]`` applied after ``items[j]``.
    When ``A`` is module-like, ``add[i][j]`` is the index of the pointwise sum.
    """

    algebra: FiniteAlgebra
    items: tuple[HomMap, ...]
    compose: tuple[tuple[int, ...], ...]
    add: tuple[tuple[int, ...], ...] | None = None
    _position: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_position", {h.table: i for i, h in enumerate(self.items)})

    def __len__(self) -> int:
        return len(self.items)

    def index_of(self, table) -> int:
        return self._position[tuple(table)]

    @property
    def identity(self) -> int:
        return self.index_of(range(self.algebra.size))

    @property
    def zero(self) -> int:
        """Index of the constant-zero endomorphism (module-like algebras only)."""
        z = self.algebra.op("0").table[0]
        return self.index_of([z] * self.algebra.size)


@lru_cache(maxsize=32)
def enumerate_endomorphisms(algebra: FiniteAlgebra, cap: int | None = None) -> EndomorphismRing:
    items = enumerate_homs(algebra, algebra, cap).items
    pos = {h.table: i for i, h in enumerate(items)}
    compose = tuple(
        tuple(pos[tuple(f.table[v] for v in g.table)] for g in items) for f in items
    )
    add = None
    if is_module_like(algebra):
        plus = algebra.op("+").table
        q = algebra.size
        add = tuple(
            tuple(pos[tuple(plus[a * q + b] for a, b in zip(f.table, g.table))] for g in items)
            for f in items
        )
    return EndomorphismRing(algebra, items, compose, add)


# -- module-like algebras ----------------------------------------------------


def module_failure(algebra: FiniteAlgebra) -> str | None:
    """Why ``algebra`` is not a module over some ring of unary scalars, or None."""
    if not (algebra.has_op("+") and algebra.op("+").arity == 2):
        return "no binary '+'"
    if not (algebra.has_op("0") and algebra.op("0").arity == 0):
        return "no nullary '0'"
    for op in algebra.ops:
        if op.name not in ("+", "0") and op.arity != 1:
            return f"operation {op.name!r} is not a unary scalar"
    q = algebra.size
    plus = algebra.op("+").table
    zero = algebra.op("0").table[0]
    for a in range(q):
        if plus[a * q + zero] != a:
            return f"0 is not an identity for + at {a}"
        if not any(plus[a * q + b] == zero for b in range(q)):
            return f"{a} has no additive inverse"
        for b in range(q):
            if plus[a * q + b] != plus[b * q + a]:
                return f"+ not commutative at ({a}, {b})"
            for c in range(q):
                if plus[plus[a * q + b] * q + c] != plus[a * q + plus[b * q + c]]:
                    return f"+ not associative at ({a}, {b}, {c})"
    if not is_entropic(algebra):
        return "not entropic (some scalar does not distribute over +)"
    return None


def is_module_like(algebra: FiniteAlgebra) -> bool:
    return module_failure(algebra) is None


def _sum_tables(algebra: FiniteAlgebra, endos, s: int) -> list[tuple[int, ...]]:
    """Value tables of ``y -> sum_i e_i(y_i)`` for every ``(e_1, ..., e_s)``."""
    q = algebra.size
    plus = algebra.op("+").table
    zero = algebra.op("0").table[0]
    # tables over A^t for suffixes of length t, built right to left
    suffix: list[tuple[int, ...]] = [(zero,)]
    for _ in range(s):
        nxt = []
        for e in endos:
            for rest in suffix:
                nxt.append(
                    tuple(plus[e.table[a] * q + r] for a in range(q) for r in rest)
                )
        suffix = nxt
    return suffix


def module_homs(algebra: FiniteAlgebra, s: int, cap: int | None = None, index=None) -> HomEnumeration:
    """``Hom(A^s, A)`` as all maps ``y -> sum_i e_i(y_i)`` with ``e_i`` in ``End(A)``."""
    failure = module_failure(algebra)
    if failure is not None:
        raise NotModuleLike(f"{algebra.name!r} is not module-like: {failure}")
    domain = power_algebra(algebra, range(s) if index is None else index, cap)
    ring = enumerate_endomorphisms(algebra)
    tables = sorted(_sum_tables(algebra, ring.items, s))
    return HomEnumeration(domain, algebra, tuple(HomMap(domain, algebra, t) for t in tables))


# -- dispatch ----------------------------------------------------------------


def power_homs(algebra: FiniteAlgebra, s: int, cap: int | None = None, index=None) -> HomEnumeration:
    """``Hom(A^s, A)`` through the fastest applicable path."""
    if is_module_like(algebra):
        return module_homs(algebra, s, cap, index)
    if is_boolean(algebra):
        enum = transported_boolean_homs(algebra, s, cap)
        if index is not None:
            domain = power_algebra(algebra, index, cap)
            return HomEnumeration(
                domain, algebra, tuple(HomMap(domain, algebra, h.table) for h in enum.items)
            )
        return enum
    domain = power_algebra(algebra, range(s) if index is None else index, cap)
    return enumerate_homs(domain, algebra, cap)


def count_homs(dom: FiniteAlgebra, cod: FiniteAlgebra, cap: int | None = None) -> int:
    """``|Hom(dom, cod)|``, in closed form when ``dom`` is a power of ``cod``."""
    _require_signature(dom, cod)
    if cod.size == 1:
        return 1
    if isinstance(dom, PowerAlgebra) and dom.base == cod:
        s = dom.exponent
        if is_module_like(cod):
            return len(enumerate_endomorphisms(cod)) ** s
        if is_boolean(cod):
            from .boolean import boolean_view

            k = boolean_view(cod).k
            return (k * s) ** k
    return enumerate_homs(dom, cod, cap).count
