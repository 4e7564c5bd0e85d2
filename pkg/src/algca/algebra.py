"""Finite algebras of arbitrary signature.

Every ``n``-ary operation is a dense table of length ``q**n``.  Argument tuples
are laid out in ascending lexicographic order with the first argument most
significant, so ``f(a, b)`` lives at ``table[a * q + b]``.  Nullary
operations are single-entry tables (distinguished elements).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    DOMAIN_CAP,
    NotEntropicError,
    ParseError,
    SignatureMismatch,
    ValidationError,
    check_cap,
)


def tuple_index(args: Sequence[int], q: int) -> int:
    """Mixed-radix encoding, first entry most significant."""
    i = 0
    for a in args:
        i = i * q + a
    return i


def index_tuple(i: int, q: int, n: int) -> tuple[int, ...]:
    """Inverse of :func:`tuple_index` for tuples of length ``n``."""
    out = [0] * n
    for k in range(n - 1, -1, -1):
        i, out[k] = divmod(i, q)
    return tuple(out)


@dataclass(frozen=True)
class Operation:
    name: str
    arity: int
    table: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """Carrier ``{0, ..., size-1}`` with named finitary operations."""

    name: str
    size: int
    ops: tuple[Operation, ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise ValidationError("algebra carrier must be non-empty")
        ops = tuple(self.ops)
        object.__setattr__(self, "ops", ops)
        seen = set()
        for op in ops:
            if op.name in seen:
                raise ValidationError(f"duplicate operation name {op.name!r}")
            seen.add(op.name)
            if op.arity < 0:
                raise ValidationError(f"operation {op.name!r} has negative arity")
            if len(op.table) != self.size**op.arity:
                raise ValidationError(
                    f"table length of {op.name!r} is {len(op.table)}, "
                    f"expected {self.size}^{op.arity} = {self.size ** op.arity}"
                )
            for v in op.table:
                if not 0 <= v < self.size:
                    raise ValidationError(f"value {v} of {op.name!r} out of range 0..{self.size - 1}")
        if self.names is not None and len(self.names) != self.size:
            raise ValidationError("element names list has wrong length")
        object.__setattr__(
            self, "_key_cache", (self.size, frozenset((op.name, op.arity, op.table) for op in ops))
        )

    @property
    def signature(self) -> tuple[tuple[str, int], ...]:
        return tuple((op.name, op.arity) for op in self.ops)

    def op(self, name: str) -> Operation:
        for op in self.ops:
            if op.name == name:
                return op
        raise KeyError(f"algebra {self.name!r} has no operation {name!r}")

    def has_op(self, name: str) -> bool:
        return any(op.name == name for op in self.ops)

    def __call__(self, name: str, *args: int) -> int:
        return eval_op(self, name, args)

    def element_name(self, a: int) -> str:
        return self.names[a] if self.names else str(a)

    def _key(self):
        return self._key_cache

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, FiniteAlgebra) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        sig = ", ".join(f"{n}/{a}" for n, a in self.signature)
        return f"FiniteAlgebra({self.name!r}, size={self.size}, ops=[{sig}])"


def eval_op(algebra: FiniteAlgebra, name: str, args: Sequence[int]) -> int:
    op = algebra.op(name)
    if len(args) != op.arity:
        raise ValueError(f"{name!r} has arity {op.arity}, got {len(args)} arguments")
    for a in args:
        if not 0 <= a < algebra.size:
            raise ValueError(f"argument {a} outside carrier of size {algebra.size}")
    return op.table[tuple_index(args, algebra.size)]


def same_signature(a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    return dict(a.signature) == dict(b.signature)


def _require_signature(a: FiniteAlgebra, b: FiniteAlgebra) -> None:
    if not same_signature(a, b):
        raise SignatureMismatch(f"signatures differ: {a.signature} vs {b.signature}")


# -- power algebras ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PowerAlgebra(FiniteAlgebra):
    """``base ** index`` with componentwise operations.

    Element ``i`` is the tuple ``index_tuple(i, q, len(index))``; its entry at
    position ``k`` is the coordinate for ``index[k]``.
    """

    base: FiniteAlgebra | None = None
    index: tuple = ()

    @property
    def exponent(self) -> int:
        return len(self.index)

    def decode(self, i: int) -> tuple[int, ...]:
        return index_tuple(i, self.base.size, len(self.index))

    def encode(self, values: Sequence[int]) -> int:
        return tuple_index(values, self.base.size)


def _power_table(op: Operation, q: int, s: int) -> tuple[int, ...]:
    n_elems = q**s
    digits = [index_tuple(i, q, s) for i in range(n_elems)]
    weights = [q ** (s - 1 - c) for c in range(s)]
    table = op.table
    out = []
    for args in itertools.product(range(n_elems), repeat=op.arity):
        cols = [digits[a] for a in args]
        v = 0
        for c in range(s):
            k = 0
            for col in cols:
                k = k * q + col[c]
            v += table[k] * weights[c]
        out.append(v)
    return tuple(out)


def power_algebra(base: FiniteAlgebra, index: Iterable, cap: int | None = None) -> PowerAlgebra:
    """Materialize ``base ** index`` with componentwise operations."""
    index = tuple(index)
    size = base.size ** len(index)
    check_cap(f"power algebra {base.name}^{len(index)}", size, cap, DOMAIN_CAP)
    ops = tuple(Operation(op.name, op.arity, _power_table(op, base.size, len(index))) for op in base.ops)
    return PowerAlgebra(
        name=f"{base.name}^{len(index)}", size=size, ops=ops, base=base, index=index
    )


def restrict(values: Sequence[int], source_index: Sequence, target_index: Sequence) -> tuple[int, ...]:
    """Restriction of a tuple over ``source_index`` to the sub-index ``target_index``."""
    pos = {s: k for k, s in enumerate(source_index)}
    return tuple(values[pos[t]] for t in target_index)


# -- homomorphisms -----------------------------------------------------------


@dataclass(frozen=True)
class HomMap:
    domain: FiniteAlgebra
    codomain: FiniteAlgebra
    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.domain.size:
            raise ValidationError(f"map table has {len(table)} entries, domain has {self.domain.size}")
        if any(not 0 <= v < self.codomain.size for v in table):
            raise ValidationError("map value outside codomain")

    def __call__(self, a: int) -> int:
        return self.table[a]

    def then(self, other: HomMap) -> HomMap:
        """``other`` after ``self``."""
        if self.codomain != other.domain:
            raise ValidationError("maps are not composable: codomain differs from domain")
        return HomMap(self.domain, other.codomain, tuple(other.table[v] for v in self.table))


class HomViolation(NamedTuple):
    op: str
    args: tuple[int, ...]
    image_of_result: int
    result_of_images: int

    def __str__(self):
        return (
            f"phi({self.op}{self.args}) = {self.image_of_result} "
            f"but {self.op}(phi args) = {self.result_of_images}"
        )


def hom_violation(phi: HomMap) -> HomViolation | None:
    dom, cod = phi.domain, phi.codomain
    _require_signature(dom, cod)
    t = phi.table
    q = cod.size
    for op in dom.ops:
        cod_table = cod.op(op.name).table
        for k, args in enumerate(itertools.product(range(dom.size), repeat=op.arity)):
            lhs = t[op.table[k]]
            j = 0
            for a in args:
                j = j * q + t[a]
            rhs = cod_table[j]
            if lhs != rhs:
                return HomViolation(op.name, args, lhs, rhs)
    return None


def is_homomorphism(phi: HomMap) -> bool:
    return hom_violation(phi) is None


def identity_map(algebra: FiniteAlgebra) -> HomMap:
    return HomMap(algebra, algebra, tuple(range(algebra.size)))


def projection(power: PowerAlgebra, position: int) -> HomMap:
    """The coordinate map onto ``power.index[position]``."""
    return HomMap(power, power.base, tuple(power.decode(i)[position] for i in range(power.size)))


# -- entropic algebras -------------------------------------------------------


class InterchangeWitness(NamedTuple):
    """Failure of ``f(g(col_1), ..., g(col_n)) = g(f(row_1), ..., f(row_m))``.

    ``matrix`` has ``m`` rows of length ``n`` (``m, n`` the arities of ``g``
    and ``f``); each row is an argument tuple of ``f`` and each column one
    of ``g``.
    """

    f: str
    g: str
    matrix: tuple[tuple[int, ...], ...]
    lhs: int
    rhs: int
    columns: int

    def __str__(self):
        m, n = len(self.matrix), self.columns
        cols = [tuple(self.matrix[i][j] for i in range(m)) for j in range(n)]

        def call(name, parts):
            return f"{name}({', '.join(parts)})" if parts else name

        lhs = call(self.f, [call(self.g, list(map(str, c))) for c in cols])
        rhs = call(self.g, [call(self.f, list(map(str, r))) for r in self.matrix])
        return f"{lhs} = {self.lhs} but {rhs} = {self.rhs}"

    def holds_in(self, algebra: FiniteAlgebra) -> bool:
        """Re-evaluate both sides in ``algebra``: they must differ as recorded."""
        f, g = algebra.op(self.f), algebra.op(self.g)
        q = algebra.size
        cols = [[row[j] for row in self.matrix] for j in range(self.columns)]
        lhs = f.table[tuple_index([g.table[tuple_index(c, q)] for c in cols], q)]
        rhs = g.table[tuple_index([f.table[tuple_index(r, q)] for r in self.matrix], q)]
        return lhs == self.lhs and rhs == self.rhs and lhs != rhs


class EntropyCheck(NamedTuple):
    entropic: bool
    witness: InterchangeWitness | None


def interchange_witness(algebra: FiniteAlgebra) -> InterchangeWitness | None:
    """First failure of the interchange law over all operation pairs."""
    q = algebra.size
    for f in algebra.ops:
        n = f.arity
        for g in algebra.ops:
            m = g.arity
            # a nullary f or g still constrains: f() = g(f(), ..., f()) and the like
            for flat in itertools.product(range(q), repeat=m * n):
                rows = tuple(flat[i * n : (i + 1) * n] for i in range(m))
                cols = [tuple(rows[i][j] for i in range(m)) for j in range(n)]
                lhs = f.table[tuple_index([g.table[tuple_index(c, q)] for c in cols], q)]
                rhs = g.table[tuple_index([f.table[tuple_index(r, q)] for r in rows], q)]
                if lhs != rhs:
                    return InterchangeWitness(f.name, g.name, rows, lhs, rhs, n)
    return None


def _ops_are_homs(algebra: FiniteAlgebra, cap: int | None) -> bool:
    for f in algebra.ops:
        power = power_algebra(algebra, range(f.arity), cap)
        if not is_homomorphism(HomMap(power, algebra, f.table)):
            return False
    return True


def check_entropic(algebra: FiniteAlgebra, cap: int | None = None) -> EntropyCheck:
    """Decide entropy by the definition and by the interchange law; both must agree."""
    by_definition = _ops_are_homs(algebra, cap)
    witness = interchange_witness(algebra)
    if by_definition != (witness is None):
        raise AssertionError(
            f"entropy characterizations disagree on {algebra.name!r}: "
            f"definition={by_definition}, interchange witness={witness}"
        )
    return EntropyCheck(by_definition, witness)


def is_entropic(algebra: FiniteAlgebra, cap: int | None = None) -> bool:
    return check_entropic(algebra, cap).entropic


def require_entropic(algebra: FiniteAlgebra) -> None:
    result = check_entropic(algebra)
    if not result.entropic:
        raise NotEntropicError(algebra.name, result.witness)


def hom_algebra_op(
    algebra: FiniteAlgebra,
    name: str,
    homs: Sequence[HomMap],
    domain: FiniteAlgebra | None = None,
) -> HomMap:
    """Pointwise ``x -> f(phi_1(x), ..., phi_n(x))`` on ``Hom(X, A)``.

    ``domain`` is required only for nullary ``f`` (there are no maps to read it from).
    """
    require_entropic(algebra)
    op = algebra.op(name)
    if len(homs) != op.arity:
        raise ValueError(f"{name!r} has arity {op.arity}, got {len(homs)} maps")
    if homs:
        domain = homs[0].domain
    elif domain is None:
        raise ValueError("nullary operation needs an explicit domain")
    for h in homs:
        if h.domain != domain or h.codomain != algebra:
            raise ValidationError("maps must share the domain and have the algebra as codomain")
    q = algebra.size
    table = tuple(
        op.table[tuple_index([h.table[x] for h in homs], q)] for x in range(domain.size)
    )
    return HomMap(domain, algebra, table)


# -- algebra file format -----------------------------------------------------


def load_algebra(text: str) -> FiniteAlgebra:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if len(lines) < 2:
        raise ParseError("algebra file needs 'algebra <name>' and 'size <q>' lines")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "algebra":
        raise ParseError(f"expected 'algebra <name>', got {lines[0]!r}")
    size_line = lines[1].split()
    if len(size_line) != 2 or size_line[0] != "size" or not size_line[1].isdigit():
        raise ParseError(f"expected 'size <q>', got {lines[1]!r}")
    q = int(size_line[1])
    ops = []
    rest = lines[2:]
    k = 0
    while k < len(rest):
        parts = rest[k].split()
        if len(parts) != 3 or parts[0] != "op" or not parts[2].isdigit():
            raise ParseError(f"expected 'op <name> <arity>', got {rest[k]!r}")
        name, arity = parts[1], int(parts[2])
        if k + 1 >= len(rest):
            raise ParseError(f"operation {name!r} has no table line")
        try:
            table = tuple(int(v) for v in rest[k + 1].split())
        except ValueError:
            raise ParseError(f"non-integer entry in table of {name!r}") from None
        ops.append(Operation(name, arity, table))
        k += 2
    return FiniteAlgebra(head[1], q, tuple(ops))


def dump_algebra(algebra: FiniteAlgebra) -> str:
    out = [f"algebra {algebra.name}", f"size {algebra.size}"]
    for op in algebra.ops:
        out.append(f"op {op.name} {op.arity}")
        out.append(" ".join(map(str, op.table)))
    return "\n".join(out) + "\n"


# -- builtin algebras --------------------------------------------------------


def set_algebra(q: int) -> FiniteAlgebra:
    """A bare set: empty signature, so every map is a homomorphism."""
    return FiniteAlgebra(f"set{q}", q, ())


def cyclic_group_algebra(n: int) -> FiniteAlgebra:
    """``Z_n`` in the abelian-group signature ``+``, ``0``."""
    add = tuple((a + b) % n for a in range(n) for b in range(n))
    return FiniteAlgebra(f"Z{n}", n, (Operation("+", 2, add), Operation("0", 0, (0,))))


def vector_space(p: int, n: int) -> FiniteAlgebra:
    """``F_p ** n`` with ``+``, ``0`` and one scalar operation ``c*`` per ``c`` in ``F_p``.

    ``p`` must be prime.  Coordinates are encoded base ``p``, first most significant.
    """
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    field_ops = [
        Operation("+", 2, tuple((a + b) % p for a in range(p) for b in range(p))),
        Operation("0", 0, (0,)),
    ]
    field_ops += [Operation(f"{c}*", 1, tuple(c * a % p for a in range(p))) for c in range(p)]
    line = FiniteAlgebra(f"F{p}", p, tuple(field_ops))
    space = power_algebra(line, range(n))
    return FiniteAlgebra(f"F{p}^{n}", space.size, space.ops)


BOOLEAN_OPS = ("and", "or", "not", "0", "1")


def boolean_algebra(k: int = 1) -> FiniteAlgebra:
    """The power-set algebra ``2 ** k``; ``k = 1`` gives ``2`` itself."""
    two = FiniteAlgebra(
        "2",
        2,
        (
            Operation("and", 2, (0, 0, 0, 1)),
            Operation("or", 2, (0, 1, 1, 1)),
            Operation("not", 1, (1, 0)),
            Operation("0", 0, (0,)),
            Operation("1", 0, (1,)),
        ),
    )
    if k == 1:
        return two
    power = power_algebra(two, range(k))
    return FiniteAlgebra(f"2^{k}", power.size, power.ops)


def magma(name: str, table: Sequence[Sequence[int]], op_name: str = "*") -> FiniteAlgebra:
    q = len(table)
    return FiniteAlgebra(name, q, (Operation(op_name, 2, tuple(v for row in table for v in row)),))


def builtin_algebra(name: str) -> FiniteAlgebra | None:
    """Resolve names such as ``Z6``, ``2``, ``2^3``, ``F2^2``, ``set3``, ``S3mag``."""
    from .groups import symmetric_group

    if name == "2":
        return boolean_algebra(1)
    if name.startswith("2^") and name[2:].isdigit() and int(name[2:]) >= 1:
        return boolean_algebra(int(name[2:]))
    if name.startswith("Z") and name[1:].isdigit() and int(name[1:]) >= 1:
        return cyclic_group_algebra(int(name[1:]))
    if name.startswith("set") and name[3:].isdigit() and int(name[3:]) >= 1:
        return set_algebra(int(name[3:]))
    if name.startswith("F") and "^" in name:
        p, _, n = name[1:].partition("^")
        if p.isdigit() and n.isdigit():
            return vector_space(int(p), int(n))
    if name == "S3mag":
        return magma("S3mag", symmetric_group(3).mul)
    return None


@lru_cache(maxsize=256)
def _cached_power(base: FiniteAlgebra, s: int, cap: int | None) -> PowerAlgebra:
    return power_algebra(base, range(s), cap)


def power_over(base: FiniteAlgebra, index: Iterable, cap: int | None = None) -> PowerAlgebra:
    """Like :func:`power_algebra` but reuses tables built for the same base and exponent."""
    index = tuple(index)
    cached = _cached_power(base, len(index), cap)
    if cached.index == index:
        return cached
    return PowerAlgebra(
        name=cached.name, size=cached.size, ops=cached.ops, base=base, index=index
    )
