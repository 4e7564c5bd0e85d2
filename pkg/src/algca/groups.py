"""Cell-position groups, configurations, the shift action and memory sets.

Two kinds of group are supported:

* :class:`FiniteGroup`, given by a Cayley table over element indices ``0..m-1``;
* :class:`LatticeGroup`, the integer lattices ``Z`` (elements are ``int``) and
  ``Z2`` (elements are ``(i, j)`` pairs).

Configurations over a lattice are always periodic; a periodic configuration is
the same thing as a configuration over the finite quotient ``Z_m`` or
``Z_m1 x Z_m2``, and that is how the CA engine evaluates them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

from .errors import ParseError, ValidationError

Element = Union[int, tuple]


def _content_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group on ``0..order-1`` given by its multiplication table."""

    mul: tuple[tuple[int, ...], ...]
    name: str = "G"
    names: tuple[str, ...] | None = None
    identity: int = field(init=False)
    inv: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        mul = tuple(tuple(int(v) for v in row) for row in self.mul)
        object.__setattr__(self, "mul", mul)
        m = len(mul)
        if m == 0:
            raise ValidationError("group must have at least one element")
        for row in mul:
            if len(row) != m:
                raise ValidationError(f"Cayley table row has length {len(row)}, expected {m}")
            for v in row:
                if not 0 <= v < m:
                    raise ValidationError(f"table entry {v} out of range 0..{m - 1}")
        for a, b, c in itertools.product(range(m), repeat=3):
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                raise ValidationError(f"not associative: ({a}*{b})*{c} != {a}*({b}*{c})")
        ident = next(
            (e for e in range(m) if all(mul[e][g] == g == mul[g][e] for g in range(m))), None
        )
        if ident is None:
            raise ValidationError("missing identity element")
        inv = []
        for g in range(m):
            h = next((h for h in range(m) if mul[g][h] == ident == mul[h][g]), None)
            if h is None:
                raise ValidationError(f"element {g} has no inverse")
            inv.append(h)
        if self.names is not None and len(self.names) != m:
            raise ValidationError("names list length differs from group order")
        object.__setattr__(self, "identity", ident)
        object.__setattr__(self, "inv", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.mul)

    is_finite = True

    def elements(self) -> range:
        return range(self.order)

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def contains(self, a) -> bool:
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.order

    def sort_key(self, a: int):
        return a

    def format_element(self, a: int) -> str:
        return str(a)

    def parse_element(self, token: str) -> int:
        try:
            a = int(token)
        except ValueError:
            raise ParseError(f"bad group element {token!r}") from None
        if not self.contains(a):
            raise ParseError(f"element {a} outside group {self.name}")
        return a

    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in range(self.order) for b in range(a))

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mul == other.mul

    def __hash__(self):
        return hash(self.mul)

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"


@dataclass(frozen=True)
class LatticeGroup:
    """``Z`` (dimension 1, int elements) or ``Z2`` (dimension 2, pair elements)."""

    dimension: int

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise ValidationError("only Z and Z2 lattices are supported")

    is_finite = False

    @property
    def name(self) -> str:
        return "Z" if self.dimension == 1 else "Z2"

    @property
    def identity(self) -> Element:
        return 0 if self.dimension == 1 else (0, 0)

    def op(self, a: Element, b: Element) -> Element:
        if self.dimension == 1:
            return a + b
        return (a[0] + b[0], a[1] + b[1])

    def inverse(self, a: Element) -> Element:
        if self.dimension == 1:
            return -a
        return (-a[0], -a[1])

    def contains(self, a) -> bool:
        if self.dimension == 1:
            return isinstance(a, int) and not isinstance(a, bool)
        return (
            isinstance(a, tuple)
            and len(a) == 2
            and all(isinstance(c, int) and not isinstance(c, bool) for c in a)
        )

    def sort_key(self, a: Element):
        return a

    def format_element(self, a: Element) -> str:
        return str(a) if self.dimension == 1 else f"{a[0]},{a[1]}"

    def parse_element(self, token: str) -> Element:
        try:
            parts = [int(p) for p in token.split(",")]
        except ValueError:
            raise ParseError(f"bad lattice offset {token!r}") from None
        if len(parts) != self.dimension:
            raise ParseError(f"offset {token!r} does not have dimension {self.dimension}")
        return parts[0] if self.dimension == 1 else tuple(parts)

    def check_period(self, period: Sequence[int]) -> tuple[int, ...]:
        period = tuple(int(p) for p in period)
        if len(period) != self.dimension or any(p < 1 for p in period):
            raise ValidationError(f"period {period} invalid for {self.name}")
        return period

    def reduce(self, a: Element, period: Sequence[int]) -> int:
        """Flat (row-major) index of ``a`` in the quotient by ``period``."""
        if self.dimension == 1:
            return a % period[0]
        return (a[0] % period[0]) * period[1] + (a[1] % period[1])

    def quotient(self, period: Sequence[int]) -> FiniteGroup:
        return _lattice_quotient(self.check_period(period))


Group = Union[FiniteGroup, LatticeGroup]

Z = LatticeGroup(1)
Z2 = LatticeGroup(2)


@lru_cache(maxsize=64)
def _lattice_quotient(period: tuple[int, ...]) -> FiniteGroup:
    if len(period) == 1:
        return cyclic_group(period[0])
    return direct_product(cyclic_group(period[0]), cyclic_group(period[1]))


# -- builtin finite groups ---------------------------------------------------


@lru_cache(maxsize=64)
def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(
        tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), name=f"C{n}"
    )


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Componentwise product; pair ``(a, b)`` has index ``a * |h| + b``."""
    n = h.order
    pairs = list(itertools.product(range(g.order), range(n)))
    mul = tuple(
        tuple(g.mul[a][c] * n + h.mul[b][d] for (c, d) in pairs) for (a, b) in pairs
    )
    return FiniteGroup(mul, name=f"{g.name}x{h.name}")


def klein_four() -> FiniteGroup:
    g = direct_product(cyclic_group(2), cyclic_group(2))
    return FiniteGroup(g.mul, name="K4")


@lru_cache(maxsize=8)
def symmetric_group(n: int) -> FiniteGroup:
    """Permutations of ``0..n-1`` in lexicographic order; product is ``(a*b)(i) = a(b(i))``."""
    perms = list(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    mul = tuple(tuple(pos[tuple(a[b[i]] for i in range(n))] for b in perms) for a in perms)
    return FiniteGroup(mul, name=f"S{n}", names=tuple("".join(map(str, p)) for p in perms))


def builtin_group(name: str) -> Group | None:
    if name == "Z":
        return Z
    if name == "Z2":
        return Z2
    if name == "K4":
        return klein_four()
    if len(name) > 1 and name[0] in "CS" and name[1:].isdigit():
        n = int(name[1:])
        if n >= 1 and (name[0] == "C" or n <= 5):
            return cyclic_group(n) if name[0] == "C" else symmetric_group(n)
    return None


# -- group file format -------------------------------------------------------


def load_group(text: str) -> FiniteGroup:
    lines = _content_lines(text)
    if len(lines) < 2:
        raise ParseError("group file needs 'group <name>' and 'order <m>' lines")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "group":
        raise ParseError(f"expected 'group <name>', got {lines[0]!r}")
    order_line = lines[1].split()
    if len(order_line) != 2 or order_line[0] != "order" or not order_line[1].isdigit():
        raise ParseError(f"expected 'order <m>', got {lines[1]!r}")
    m = int(order_line[1])
    rows = lines[2:]
    if len(rows) != m:
        raise ParseError(f"expected {m} table rows, found {len(rows)}")
    try:
        mul = tuple(tuple(int(v) for v in row.split()) for row in rows)
    except ValueError as exc:
        raise ParseError(f"non-integer table entry: {exc}") from None
    group = FiniteGroup(mul, name=head[1])
    if group.identity != 0:
        raise ValidationError(f"identity must be element 0, found {group.identity}")
    return group


def dump_group(group: FiniteGroup) -> str:
    out = [f"group {group.name}", f"order {group.order}"]
    out += [" ".join(map(str, row)) for row in group.mul]
    return "\n".join(out) + "\n"


# -- memory sets -------------------------------------------------------------


@dataclass(frozen=True)
class MemorySet:
    """An ordered list of distinct group elements; the order fixes rule-table layout."""

    group: Group
    elems: tuple

    def __post_init__(self):
        elems = tuple(self.elems)
        object.__setattr__(self, "elems", elems)
        for s in elems:
            if not self.group.contains(s):
                raise ValidationError(f"memory element {s!r} not in group {self.group.name}")
        if len(set(elems)) != len(elems):
            raise ValidationError(f"memory set has duplicate elements: {elems}")

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self) -> Iterator:
        return iter(self.elems)

    def __contains__(self, s) -> bool:
        return s in self.elems

    def index(self, s) -> int:
        return self.elems.index(s)

    def canonical(self) -> MemorySet:
        return MemorySet(self.group, sorted(self.elems, key=self.group.sort_key))

    def is_canonical(self) -> bool:
        return list(self.elems) == sorted(self.elems, key=self.group.sort_key)

    def issubset(self, other: MemorySet) -> bool:
        return set(self.elems) <= set(other.elems)

    def union(self, *others: MemorySet) -> MemorySet:
        for o in others:
            _same_group(self.group, o.group)
        pool = set(self.elems).union(*(o.elems for o in others))
        return MemorySet(self.group, sorted(pool, key=self.group.sort_key))

    def format(self) -> str:
        return " ".join(self.group.format_element(s) for s in self.elems)


def memory(group: Group, elems: Iterable) -> MemorySet:
    return MemorySet(group, tuple(elems))


def _same_group(g: Group, h: Group) -> None:
    if g != h:
        raise ValidationError(f"mismatched groups {g.name} and {h.name}")


def product_set(s1: MemorySet, s2: MemorySet) -> MemorySet:
    """``{a*b : a in s1, b in s2}`` in canonical order."""
    _same_group(s1.group, s2.group)
    g = s1.group
    pool = {g.op(a, b) for a in s1 for b in s2}
    return MemorySet(g, sorted(pool, key=g.sort_key))


# -- configurations ----------------------------------------------------------


@dataclass(frozen=True)
class Configuration:
    """A total assignment of alphabet indices to cells.

    Over a finite group ``values[g]`` is the state of element ``g``.  Over a
    lattice ``period`` is required and ``values`` is the row-major grid of one
    period.
    """

    group: Group
    values: tuple[int, ...]
    period: tuple[int, ...] | None = None

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if any(v < 0 for v in values):
            raise ValidationError("configuration entries must be non-negative")
        if self.group.is_finite:
            if self.period is not None:
                raise ValidationError("finite-group configurations take no period")
            if len(values) != self.group.order:
                raise ValidationError(
                    f"configuration has {len(values)} cells, group has {self.group.order}"
                )
        else:
            if self.period is None:
                raise ValidationError("lattice configurations need a period")
            period = self.group.check_period(self.period)
            object.__setattr__(self, "period", period)
            if len(values) != math.prod(period):
                raise ValidationError(f"grid has {len(values)} cells, period {period} needs {math.prod(period)}")

    def __len__(self) -> int:
        return len(self.values)

    def at(self, h) -> int:
        if not self.group.contains(h):
            raise ValidationError(f"element {h!r} outside group {self.group.name}")
        if self.group.is_finite:
            return self.values[h]
        return self.values[self.group.reduce(h, self.period)]

    def check_alphabet(self, q: int) -> None:
        bad = [v for v in self.values if v >= q]
        if bad:
            raise ValidationError(f"configuration value {bad[0]} outside alphabet of size {q}")

    def cell_group(self) -> FiniteGroup:
        """The finite group actually indexing ``values``."""
        return self.group if self.group.is_finite else self.group.quotient(self.period)

    def rows(self) -> list[tuple[int, ...]]:
        if self.group.is_finite or len(self.period) == 1:
            return [self.values]
        w = self.period[1]
        return [self.values[i : i + w] for i in range(0, len(self.values), w)]


def shift(g, x: Configuration) -> Configuration:
    """The shift action: ``(g . x)(h) = x(g^-1 h)``."""
    group = x.group
    if not group.contains(g):
        raise ValidationError(f"element {g!r} outside group {group.name}")
    if group.is_finite:
        row = group.mul[group.inv[g]]
        return Configuration(group, tuple(x.values[row[h]] for h in range(group.order)), None)
    cells = x.cell_group()
    k = group.reduce(g, x.period)
    row = cells.mul[cells.inv[k]]
    return Configuration(group, tuple(x.values[row[h]] for h in range(cells.order)), x.period)


def all_configurations(group: Group, q: int, period: Sequence[int] | None = None) -> Iterator[Configuration]:
    n = group.order if group.is_finite else math.prod(period)
    for vals in itertools.product(range(q), repeat=n):
        yield Configuration(group, vals, None if group.is_finite else tuple(period))
