"""Cellular automata over finite and lattice groups with structured alphabets.

A CA is a memory set ``S = (s_1, ..., s_k)`` together with a local rule table
of length ``q**k``; the next state of cell ``g`` is
``table[index(x(g s_1), ..., x(g s_k))]`` with ``x(g s_1)`` the most
significant digit.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .algebra import (
    FiniteAlgebra,
    HomMap,
    builtin_algebra,
    cyclic_group_algebra,
    is_homomorphism,
    load_algebra,
    power_over,
    tuple_index,
)
from .errors import (
    CONFIG_CAP,
    NotACellularAutomaton,
    ParseError,
    ValidationError,
    check_cap,
)
from .groups import (
    Configuration,
    FiniteGroup,
    Group,
    MemorySet,
    Z,
    all_configurations,
    builtin_group,
    load_group,
    product_set,
    shift,
)


@dataclass(frozen=True)
class LocalRule:
    alphabet: FiniteAlgebra
    memory: MemorySet
    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(v) for v in self.table)
        object.__setattr__(self, "table", table)
        q = self.alphabet.size
        if len(table) != q ** len(self.memory):
            raise ValidationError(
                f"rule table has {len(table)} entries, expected {q}^{len(self.memory)}"
            )
        if any(not 0 <= v < q for v in table):
            raise ValidationError("rule value outside alphabet")

    def __call__(self, values: Sequence[int]) -> int:
        return self.table[tuple_index(values, self.alphabet.size)]


@dataclass(frozen=True)
class CellularAutomaton:
    rule: LocalRule
    name: str = field(default="", compare=False)

    @property
    def group(self) -> Group:
        return self.rule.memory.group

    @property
    def alphabet(self) -> FiniteAlgebra:
        return self.rule.alphabet

    @property
    def memory(self) -> MemorySet:
        return self.rule.memory

    @property
    def table(self) -> tuple[int, ...]:
        return self.rule.table

    def __call__(self, x: Configuration) -> Configuration:
        return apply(self, x)


def make_ca(group: Group, alphabet: FiniteAlgebra, memory: Iterable, table: Iterable[int], name: str = "") -> CellularAutomaton:
    return CellularAutomaton(LocalRule(alphabet, MemorySet(group, tuple(memory)), tuple(table)), name)


def _table_cap(q: int, k: int, cap: int | None) -> None:
    check_cap(f"rule table {q}^{k}", q**k, cap, CONFIG_CAP)


def _check_same(automata: Sequence[CellularAutomaton]) -> None:
    for t in automata[1:]:
        if t.group != automata[0].group:
            raise ValidationError("automata live over different groups")
        if t.alphabet != automata[0].alphabet:
            raise ValidationError("automata have different alphabets")


# -- application -------------------------------------------------------------


def apply(ca: CellularAutomaton, x: Configuration) -> Configuration:
    """``y(g) = mu(x(g s_1), ..., x(g s_k))``; lattice offsets wrap around the period."""
    if x.group != ca.group:
        raise ValidationError(f"configuration over {x.group.name}, automaton over {ca.group.name}")
    q = ca.alphabet.size
    x.check_alphabet(q)
    cells = x.cell_group()
    if ca.group.is_finite:
        offsets = list(ca.memory)
    else:
        offsets = [ca.group.reduce(s, x.period) for s in ca.memory]
    cols = [[cells.mul[g][s] for g in range(cells.order)] for s in offsets]
    v, t = x.values, ca.table
    out = []
    for g in range(cells.order):
        i = 0
        for col in cols:
            i = i * q + v[col[g]]
        out.append(t[i])
    return Configuration(x.group, tuple(out), x.period)


def evolve(ca: CellularAutomaton, x: Configuration, steps: int) -> list[Configuration]:
    out = [x]
    for _ in range(steps):
        out.append(apply(ca, out[-1]))
    return out


def project_to_quotient(ca: CellularAutomaton, period: Sequence[int]) -> CellularAutomaton:
    """The same CA seen on the finite quotient of a lattice by ``period``.

    Memory offsets that collide modulo the period are merged into one coordinate.
    """
    lattice = ca.group
    if lattice.is_finite:
        raise ValidationError("projection applies only to lattice automata")
    cells = lattice.quotient(period)
    images = [lattice.reduce(s, period) for s in ca.memory]
    new_mem = sorted(set(images))
    pos = {s: k for k, s in enumerate(new_mem)}
    q = ca.alphabet.size
    table = []
    for z in itertools.product(range(q), repeat=len(new_mem)):
        table.append(ca.rule([z[pos[i]] for i in images]))
    return make_ca(cells, ca.alphabet, new_mem, table, ca.name)


# -- local/global correspondence ---------------------------------------------


def recover_local(
    tau: Callable[[Configuration], Configuration],
    group: FiniteGroup,
    alphabet: FiniteAlgebra,
    memory: MemorySet | Iterable,
    cap: int | None = None,
) -> CellularAutomaton:
    """Read ``mu(y) = tau(y_bar)(e)`` with ``y_bar`` extending ``y`` by 0, then confirm.

    Raises :class:`NotACellularAutomaton` when the recovered CA does not
    reproduce ``tau`` on every configuration.
    """
    if not group.is_finite:
        raise ValidationError("local rules can only be recovered over finite groups")
    if not isinstance(memory, MemorySet):
        memory = MemorySet(group, tuple(memory))
    q, m = alphabet.size, group.order
    check_cap(f"configuration space {q}^{m}", q**m, cap, CONFIG_CAP)
    table = []
    for y in itertools.product(range(q), repeat=len(memory)):
        cells = [0] * m
        for s, v in zip(memory, y):
            cells[s] = v
        table.append(tau(Configuration(group, tuple(cells))).values[group.identity])
    ca = CellularAutomaton(LocalRule(alphabet, memory, tuple(table)))
    for x in all_configurations(group, q):
        if apply(ca, x) != tau(x):
            raise NotACellularAutomaton(
                f"not a CA with memory {memory.format() or '{}'}: differs on {x.values}"
            )
    return ca


# -- memory manipulation -----------------------------------------------------


def extend_memory(ca: CellularAutomaton, new_memory: MemorySet | Iterable, cap: int | None = None) -> CellularAutomaton:
    """The same CA described with a larger memory: ``mu'(y) = mu(y|_S)``."""
    if not isinstance(new_memory, MemorySet):
        new_memory = MemorySet(ca.group, tuple(new_memory))
    if new_memory.group != ca.group:
        raise ValidationError("memory set lives in a different group")
    if not ca.memory.issubset(new_memory):
        raise ValidationError(
            f"memory {{{ca.memory.format()}}} is not contained in {{{new_memory.format()}}}"
        )
    q = ca.alphabet.size
    _table_cap(q, len(new_memory), cap)
    pick = [new_memory.index(s) for s in ca.memory]
    t = ca.table
    table = tuple(
        t[tuple_index([y[p] for p in pick], q)]
        for y in itertools.product(range(q), repeat=len(new_memory))
    )
    return CellularAutomaton(LocalRule(ca.alphabet, new_memory, table), ca.name)


def canonical(ca: CellularAutomaton) -> CellularAutomaton:
    """Reorder the memory into canonical element order."""
    if ca.memory.is_canonical():
        return ca
    return extend_memory(ca, ca.memory.canonical())


def essential_positions(ca: CellularAutomaton) -> list[int]:
    q, k, t = ca.alphabet.size, len(ca.memory), ca.table
    keep = []
    for p in range(k):
        w = q ** (k - 1 - p)
        essential = False
        for i in range(len(t)):
            if (i // w) % q:
                continue
            if any(t[i + d * w] != t[i] for d in range(1, q)):
                essential = True
                break
        if essential:
            keep.append(p)
    return keep


def minimal_memory(ca: CellularAutomaton) -> CellularAutomaton:
    """Drop inessential memory elements; the result has canonically ordered memory."""
    keep = essential_positions(ca)
    elems = [ca.memory.elems[p] for p in keep]
    new_mem = MemorySet(ca.group, sorted(elems, key=ca.group.sort_key))
    pos = {s: ca.memory.index(s) for s in new_mem}
    q, k = ca.alphabet.size, len(ca.memory)
    table = []
    for z in itertools.product(range(q), repeat=len(new_mem)):
        full = [0] * k
        for s, v in zip(new_mem, z):
            full[pos[s]] = v
        table.append(ca.table[tuple_index(full, q)])
    return CellularAutomaton(LocalRule(ca.alphabet, new_mem, tuple(table)), ca.name)


def equivalent(a: CellularAutomaton, b: CellularAutomaton) -> bool:
    """Same global map: equal after minimal-memory normalization."""
    return minimal_memory(a) == minimal_memory(b)


# -- algebra of automata -----------------------------------------------------


def compose(t1: CellularAutomaton, t2: CellularAutomaton, cap: int | None = None) -> CellularAutomaton:
    """``t1`` after ``t2``, with memory ``S1 . S2``."""
    _check_same([t1, t2])
    group = t1.group
    mem = product_set(t1.memory, t2.memory)
    q = t1.alphabet.size
    _table_cap(q, len(mem), cap)
    pos = {s: k for k, s in enumerate(mem)}
    reads = [[pos[group.op(a, b)] for b in t2.memory] for a in t1.memory]
    mu1, mu2 = t1.table, t2.table
    table = []
    for y in itertools.product(range(q), repeat=len(mem)):
        inner = []
        for r in reads:
            i = 0
            for p in r:
                i = i * q + y[p]
            inner.append(mu2[i])
        table.append(mu1[tuple_index(inner, q)])
    return CellularAutomaton(LocalRule(t1.alphabet, mem, tuple(table)))


def pointwise_combine(
    op_name: str,
    automata: Sequence[CellularAutomaton],
    group: Group | None = None,
    alphabet: FiniteAlgebra | None = None,
    cap: int | None = None,
) -> CellularAutomaton:
    """``x -> f(t_1(x), ..., t_n(x))`` as a CA on the union of the memories.

    ``group`` and ``alphabet`` are only needed for nullary ``f``.
    """
    automata = list(automata)
    if automata:
        _check_same(automata)
        group, alphabet = automata[0].group, automata[0].alphabet
    elif group is None or alphabet is None:
        raise ValueError("nullary combination needs an explicit group and alphabet")
    op = alphabet.op(op_name)
    if op.arity != len(automata):
        raise ValueError(f"{op_name!r} has arity {op.arity}, got {len(automata)} automata")
    q = alphabet.size
    mem = MemorySet(group, ()).union(*(t.memory for t in automata))
    _table_cap(q, len(mem), cap)
    picks = [[mem.index(s) for s in t.memory] for t in automata]
    table = []
    for y in itertools.product(range(q), repeat=len(mem)):
        vals = [t.table[tuple_index([y[p] for p in pick], q)] for t, pick in zip(automata, picks)]
        table.append(op.table[tuple_index(vals, q)])
    return CellularAutomaton(LocalRule(alphabet, mem, tuple(table)))


# -- endomorphism and equivariance checks ------------------------------------


def local_hom(ca: CellularAutomaton, cap: int | None = None) -> HomMap:
    """The local rule as a map ``A^S -> A`` of algebras."""
    domain = power_over(ca.alphabet, ca.memory.elems, cap)
    return HomMap(domain, ca.alphabet, ca.table)


def is_endomorphic(ca: CellularAutomaton, cap: int | None = None) -> bool:
    """Decided locally: the CA is an endomorphism iff its local rule is a homomorphism."""
    return is_homomorphism(local_hom(ca, cap))


def config_op(
    alphabet: FiniteAlgebra,
    op_name: str,
    configs: Sequence[Configuration],
    like: Configuration | None = None,
) -> Configuration:
    """The operation of ``A^G`` applied cell by cell; ``like`` supplies the shape for constants."""
    op = alphabet.op(op_name)
    if op.arity != len(configs):
        raise ValueError(f"{op_name!r} has arity {op.arity}, got {len(configs)} configurations")
    shape = configs[0] if configs else like
    if shape is None:
        raise ValueError("constants need a configuration to copy the shape from")
    if any(c.group != shape.group or c.period != shape.period for c in configs):
        raise ValidationError("configurations of different shapes")
    q = alphabet.size
    if not configs:
        values = (op.table[0],) * len(shape)
    else:
        values = tuple(op.table[tuple_index(col, q)] for col in zip(*(c.values for c in configs)))
    return Configuration(shape.group, values, shape.period)


def is_global_endomorphism(
    ca: CellularAutomaton,
    configurations: Iterable[Configuration] | None = None,
    period: Sequence[int] | None = None,
) -> bool:
    """Check ``tau(f(x_1..x_n)) = f(tau x_1, ..., tau x_n)`` over all tuples of the given configurations."""
    if configurations is None:
        configurations = all_configurations(ca.group, ca.alphabet.size, period)
    configs = list(configurations)
    images = {c: apply(ca, c) for c in configs}
    alphabet = ca.alphabet
    for op in alphabet.ops:
        for xs in itertools.product(configs, repeat=op.arity):
            lhs = apply(ca, config_op(alphabet, op.name, xs, like=configs[0]))
            rhs = config_op(alphabet, op.name, [images[x] for x in xs], like=images[configs[0]])
            if lhs != rhs:
                return False
    return True


def is_shift_equivariant(
    tau: CellularAutomaton | Callable[[Configuration], Configuration],
    group: FiniteGroup | None = None,
    q: int | None = None,
    samples: int | None = None,
    seed: int = 0,
    period: Sequence[int] | None = None,
) -> bool:
    """``tau(g . x) == g . tau(x)`` for every ``g`` and the tested ``x``.

    Exhaustive over configurations when ``samples`` is None and the space fits
    under the configuration cap; otherwise ``samples`` (default 100) seeded
    random configurations.
    """
    if isinstance(tau, CellularAutomaton):
        if not tau.group.is_finite:
            if period is None:
                raise ValidationError("lattice automata need a period for this check")
            tau = project_to_quotient(tau, period)
        group, q = tau.group, tau.alphabet.size
    if group is None or q is None:
        raise ValueError("group and alphabet size are required for a bare map")
    m = group.order
    if samples is None and q**m <= CONFIG_CAP:
        configs = all_configurations(group, q)
    else:
        rng = random.Random(seed)
        configs = (
            Configuration(group, tuple(rng.randrange(q) for _ in range(m)))
            for _ in range(samples or 100)
        )
    for x in configs:
        tx = tau(x)
        for g in group.elements():
            if tau(shift(g, x)) != shift(g, tx):
                return False
    return True


# -- elementary CA -----------------------------------------------------------

ECA_MEMORY = (-1, 0, 1)


def eca(number: int, alphabet: FiniteAlgebra | None = None) -> CellularAutomaton:
    """Wolfram rule ``number`` over ``Z`` with memory ``(-1, 0, 1)``.

    Wolfram lists neighbourhoods from ``111`` down to ``000``; the internal
    table is ascending, so entry ``i`` is bit ``i`` of ``number``.
    """
    if not 0 <= number <= 255:
        raise ValueError(f"ECA rule number {number} outside 0..255")
    if alphabet is None:
        alphabet = cyclic_group_algebra(2)
    if alphabet.size != 2:
        raise ValidationError("ECA alphabets have two elements")
    table = tuple((number >> i) & 1 for i in range(8))
    return make_ca(Z, alphabet, ECA_MEMORY, table, f"rule{number}")


def wolfram_number(ca: CellularAutomaton) -> int:
    if ca.group != Z or ca.alphabet.size != 2:
        raise ValidationError("Wolfram numbers exist only for binary automata over Z")
    full = MemorySet(Z, ECA_MEMORY)
    if not ca.memory.issubset(full):
        raise ValidationError(f"memory {{{ca.memory.format()}}} exceeds {{-1, 0, 1}}")
    table = extend_memory(ca, full).table
    return sum(v << i for i, v in enumerate(table))


def wolfram_row(ca: CellularAutomaton) -> tuple[int, ...]:
    """Outputs at ``111, 110, ..., 000``, the order in which the rule number is written."""
    return tuple(reversed(extend_memory(ca, MemorySet(Z, ECA_MEMORY)).table))


def shift_ca(group: Group, alphabet: FiniteAlgebra, offset) -> CellularAutomaton:
    """``x -> (g -> x(g * offset))``."""
    return make_ca(group, alphabet, (offset,), range(alphabet.size), f"shift{offset}")


def constant_ca(group: Group, alphabet: FiniteAlgebra, value: int) -> CellularAutomaton:
    return make_ca(group, alphabet, (), (value,), f"const{value}")


def identity_ca(group: Group, alphabet: FiniteAlgebra) -> CellularAutomaton:
    return shift_ca(group, alphabet, group.identity)


def random_ca(group: Group, alphabet: FiniteAlgebra, memory: Iterable, rng: random.Random) -> CellularAutomaton:
    memory = tuple(memory)
    q = alphabet.size
    return make_ca(group, alphabet, memory, [rng.randrange(q) for _ in range(q ** len(memory))])


# -- CA file format ----------------------------------------------------------


def _resolve(name: str, builtin, loader, base_dir: str | None, kind: str):
    found = builtin(name)
    if found is not None:
        return found
    path = name if base_dir is None or os.path.isabs(name) else os.path.join(base_dir, name)
    if not os.path.exists(path):
        raise ParseError(f"unknown {kind} {name!r}")
    with open(path, encoding="utf-8") as fh:
        return loader(fh.read())


def resolve_group(name: str, base_dir: str | None = None) -> Group:
    return _resolve(name, builtin_group, load_group, base_dir, "group")


def resolve_algebra(name: str, base_dir: str | None = None) -> FiniteAlgebra:
    return _resolve(name, builtin_algebra, load_algebra, base_dir, "alphabet")


def load_ca(text: str, base_dir: str | None = None) -> CellularAutomaton:
    fields: dict[str, list[str]] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if key not in ("ca", "group", "alphabet", "memory", "rule"):
            raise ParseError(f"unknown CA file keyword {key!r}")
        if key in fields:
            raise ParseError(f"repeated {key!r} line")
        fields[key] = rest
    for key in ("ca", "group", "alphabet", "memory", "rule"):
        if key not in fields:
            raise ParseError(f"CA file lacks a {key!r} line")
    for key in ("ca", "group", "alphabet"):
        if len(fields[key]) != 1:
            raise ParseError(f"{key!r} takes exactly one value")
    group = resolve_group(fields["group"][0], base_dir)
    alphabet = resolve_algebra(fields["alphabet"][0], base_dir)
    mem = tuple(group.parse_element(tok) for tok in fields["memory"])
    try:
        table = tuple(int(v) for v in fields["rule"])
    except ValueError:
        raise ParseError("non-integer rule entry") from None
    return make_ca(group, alphabet, mem, table, fields["ca"][0])


def dump_ca(ca: CellularAutomaton, name: str | None = None) -> str:
    lines = [
        f"ca {name or ca.name or 'ca'}",
        f"group {ca.group.name}",
        f"alphabet {ca.alphabet.name}",
        f"memory {ca.memory.format()}".rstrip(),
        "rule " + " ".join(map(str, ca.table)),
    ]
    return "\n".join(lines) + "\n"

