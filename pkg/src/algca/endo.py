"""Endomorphic cellular automata and the structure theorems about them.

* ``enumerate_endoca`` lists the CA with memory inside ``S`` whose local rule
  is a homomorphism ``A^S -> A``.
* ``verify_phi`` checks that taking the local rule is an isomorphism of
  algebras onto ``Hom(A^S, A)`` for entropic ``A``.
* ``GroupAlgebraElement``, ``convolve``, ``psi`` and ``psi_inverse`` realize
  ``End(A)[G]`` and its isomorphism with the endomorphic CA for module-like
  ``A``; ``verify_group_algebra`` checks bijectivity, additivity and
  multiplicativity at a fixed support bound.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .algebra import (
    FiniteAlgebra,
    HomMap,
    boolean_algebra,
    cyclic_group_algebra,
    hom_algebra_op,
    power_algebra,
    require_entropic,
    tuple_index,
)
from .automata import (
    CellularAutomaton,
    LocalRule,
    apply,
    compose,
    eca,
    extend_memory,
    identity_ca,
    is_endomorphic,
    is_global_endomorphism,
    minimal_memory,
    pointwise_combine,
    recover_local,
)
from .boolean import boolean_view, is_boolean
from .errors import (
    DOMAIN_CAP,
    NotEndomorphicError,
    NotModuleLike,
    ValidationError,
    check_cap,
)
from .groups import Group, MemorySet
from .homs import (
    EndomorphismRing,
    enumerate_endomorphisms,
    enumerate_homs,
    module_failure,
    power_homs,
)
from .report import Report


def _as_memory(group: Group, s) -> MemorySet:
    if isinstance(s, MemorySet):
        return s
    return MemorySet(group, tuple(s))


# -- endomorphic CA families -------------------------------------------------


@dataclass(frozen=True)
class EndoCAFamily:
    group: Group
    memory: MemorySet
    alphabet: FiniteAlgebra
    items: tuple[CellularAutomaton, ...]

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def tables(self) -> list[tuple[int, ...]]:
        return [t.table for t in self.items]


def enumerate_endoca(group: Group, memory, alphabet: FiniteAlgebra, cap: int | None = None) -> EndoCAFamily:
    """Every endomorphic CA with memory contained in ``memory``, each described on ``memory``."""
    mem = _as_memory(group, memory)
    homs = power_homs(alphabet, len(mem), cap, index=mem.elems)
    items = tuple(
        CellularAutomaton(LocalRule(alphabet, mem, h.table), f"endo{i}")
        for i, h in enumerate(homs.items)
    )
    return EndoCAFamily(group, mem, alphabet, items)


def _tuples(pool: Sequence, n: int, limit: int, samples: int, rng: random.Random):
    """All ``n``-tuples from ``pool`` if there are at most ``limit``, else ``samples`` random ones."""
    if len(pool) ** n <= limit:
        return list(itertools.product(pool, repeat=n)), True
    return [tuple(rng.choice(pool) for _ in range(n)) for _ in range(samples)], False


def verify_phi(
    group: Group,
    memory,
    alphabet: FiniteAlgebra,
    cap: int | None = None,
    samples: int = 100,
    seed: int = 0,
) -> Report:
    """Check that ``tau -> local rule`` is an isomorphism ``EndCA(G,S;A) -> Hom(A^S, A)``.

    Raises :class:`~algca.errors.NotEntropicError` for non-entropic alphabets.
    """
    require_entropic(alphabet)
    mem = _as_memory(group, memory)
    report = Report()
    tag = f"G={group.name} S={{{mem.format()}}} A={alphabet.name}"
    family = enumerate_endoca(group, mem, alphabet, cap)
    domain = power_algebra(alphabet, mem.elems, cap)
    generic = enumerate_homs(domain, alphabet, cap)

    if group.is_finite and alphabet.size**group.order <= 4096:
        images = [recover_local(lambda x, t=t: apply(t, x), group, alphabet, mem).table for t in family]
    else:
        images = [t.table for t in family]
    report.add(
        "phi.bijection",
        len(set(images)) == len(images) and sorted(images) == generic.tables(),
        f"{tag} |EndCA|={len(family)} |Hom|={generic.count}",
    )
    report.add(
        "phi.local-hom",
        all(is_endomorphic(t, cap) for t in family),
        f"{tag} every enumerated CA has a homomorphic local rule",
    )
    if group.is_finite and alphabet.size**group.order <= 64:
        report.add(
            "phi.global-hom",
            all(is_global_endomorphism(t) for t in family),
            f"{tag} every enumerated CA preserves the operations of A^G",
        )

    rng = random.Random(seed)
    hom_of = {t.table: HomMap(domain, alphabet, t.table) for t in family}
    for op in alphabet.ops:
        tuples, exhaustive = _tuples(list(family.items), op.arity, cap or DOMAIN_CAP, samples, rng)
        bad = 0
        for ts in tuples:
            combined = pointwise_combine(op.name, ts, group=group, alphabet=alphabet)
            lhs = extend_memory(combined, mem).table
            rhs = hom_algebra_op(alphabet, op.name, [hom_of[t.table] for t in ts], domain=domain).table
            bad += lhs != rhs
        report.add(
            f"phi.preserves[{op.name}]",
            bad == 0,
            f"{tag} {len(tuples)} {'(all)' if exhaustive else '(sampled)'} tuples, {bad} mismatches",
        )
    return report


# -- the group algebra End(A)[G] ---------------------------------------------


@dataclass(frozen=True)
class GroupAlgebraElement:
    """A finitely supported ``G -> End(A)``; ``coeffs`` pairs group elements with endomorphism indices.

    Zero coefficients are dropped and the support is kept in canonical order.
    """

    group: Group
    ring: EndomorphismRing
    coeffs: tuple[tuple[object, int], ...]

    def __post_init__(self):
        if self.ring.add is None:
            raise NotModuleLike(f"{self.ring.algebra.name!r} is not module-like")
        zero = self.ring.zero
        merged: dict = {}
        for g, c in self.coeffs:
            if not self.group.contains(g):
                raise ValidationError(f"{g!r} is not an element of {self.group.name}")
            merged[g] = self.ring.add[merged[g]][c] if g in merged else c
        coeffs = tuple(
            (g, merged[g]) for g in sorted(merged, key=self.group.sort_key) if merged[g] != zero
        )
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def alphabet(self) -> FiniteAlgebra:
        return self.ring.algebra

    @property
    def support(self) -> tuple:
        return tuple(g for g, _ in self.coeffs)

    def __getitem__(self, g) -> int:
        return dict(self.coeffs).get(g, self.ring.zero)

    def __add__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        _check_compatible(self, other)
        return GroupAlgebraElement(self.group, self.ring, self.coeffs + other.coeffs)

    def __mul__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        return convolve(self, other)


def _check_compatible(a: GroupAlgebraElement, b: GroupAlgebraElement) -> None:
    if a.group != b.group:
        raise ValidationError("group algebra elements over different groups")
    if a.ring.algebra != b.ring.algebra:
        raise ValidationError("group algebra elements over different alphabets")


def delta(group: Group, ring: EndomorphismRing, g, coeff: int | None = None) -> GroupAlgebraElement:
    """``coeff`` placed at ``g`` (default: the identity endomorphism)."""
    return GroupAlgebraElement(group, ring, ((g, ring.identity if coeff is None else coeff),))


def convolve(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    """``(a * b)(g) = sum_h a(h) o b(h^-1 g)``, applying ``b``'s coefficient first."""
    _check_compatible(a, b)
    ring, group = a.ring, a.group
    terms = [
        (group.op(h, k), ring.compose[x][y]) for h, x in a.coeffs for k, y in b.coeffs
    ]
    return GroupAlgebraElement(group, ring, tuple(terms))


def psi(alpha: GroupAlgebraElement) -> CellularAutomaton:
    """The CA ``x -> (g -> sum_h alpha(h)(x(g h)))`` with memory ``supp(alpha)``."""
    alphabet = alpha.alphabet
    q = alphabet.size
    plus = alphabet.op("+").table
    zero = alphabet.op("0").table[0]
    maps = [alpha.ring.items[c].table for _, c in alpha.coeffs]
    table = []
    for y in itertools.product(range(q), repeat=len(maps)):
        acc = zero
        for e, v in zip(maps, y):
            acc = plus[acc * q + e[v]]
        table.append(acc)
    mem = MemorySet(alpha.group, alpha.support)
    return CellularAutomaton(LocalRule(alphabet, mem, tuple(table)))


def psi_inverse(ca: CellularAutomaton, ring: EndomorphismRing | None = None) -> GroupAlgebraElement:
    """Split an endomorphic CA into coordinate endomorphisms ``e_s(a) = mu(a at s, 0 elsewhere)``."""
    alphabet = ca.alphabet
    failure = module_failure(alphabet)
    if failure is not None:
        raise NotModuleLike(f"{alphabet.name!r} is not module-like: {failure}")
    if not is_endomorphic(ca):
        raise NotEndomorphicError(f"CA {ca.name!r} is not endomorphic")
    ring = ring or enumerate_endomorphisms(alphabet)
    q, k = alphabet.size, len(ca.memory)
    zero = alphabet.op("0").table[0]
    coeffs = []
    for p, s in enumerate(ca.memory):
        row = [zero] * k
        table = []
        for a in range(q):
            row[p] = a
            table.append(ca.table[tuple_index(row, q)])
        coeffs.append((s, ring.index_of(table)))
    return GroupAlgebraElement(ca.group, ring, tuple(coeffs))


def all_elements(group: Group, ring: EndomorphismRing, support: MemorySet) -> list[GroupAlgebraElement]:
    """Every element of ``End(A)[G]`` with support inside ``support``."""
    return [
        GroupAlgebraElement(group, ring, tuple(zip(support.elems, cs)))
        for cs in itertools.product(range(len(ring)), repeat=len(support))
    ]


def verify_group_algebra(
    group: Group,
    alphabet: FiniteAlgebra,
    memory,
    cap: int | None = None,
    samples: int = 100,
    seed: int = 0,
) -> Report:
    """Check ``psi : End(A)[G] -> EndCA(G;A)`` on elements supported in ``memory``."""
    failure = module_failure(alphabet)
    if failure is not None:
        raise NotModuleLike(f"{alphabet.name!r} is not module-like: {failure}")
    mem = _as_memory(group, memory).canonical()
    ring = enumerate_endomorphisms(alphabet)
    tag = f"G={group.name} A={alphabet.name} S={{{mem.format()}}}"
    report = Report()
    check_cap("group algebra elements", len(ring) ** len(mem), cap, DOMAIN_CAP)
    elements = all_elements(group, ring, mem)
    images = [psi(a) for a in elements]

    family = enumerate_endoca(group, mem, alphabet, cap)
    extended = [extend_memory(t, mem).table for t in images]
    report.add(
        "group-algebra.bijection",
        len(set(extended)) == len(extended) and sorted(extended) == sorted(family.tables()),
        f"{tag} |End(A)|^|S| = {len(ring)}^{len(mem)} = {len(elements)}, |EndCA(G,S;A)| = {len(family)}",
    )
    round_trip = all(psi_inverse(t, ring) == a for a, t in zip(elements, images))
    report.add("group-algebra.inverse", round_trip, f"{tag} psi_inverse(psi(a)) = a for every a")

    rng = random.Random(seed)
    idx = list(range(len(elements)))
    pairs, exhaustive = _tuples(idx, 2, 64 * 64, samples, rng)
    how = "(all)" if exhaustive else "(sampled)"
    add_bad = mul_bad = 0
    for i, j in pairs:
        a, b = elements[i], elements[j]
        summed = pointwise_combine("+", [images[i], images[j]])
        add_bad += psi(a + b) != minimal_memory(summed)
        mul_bad += psi(convolve(a, b)) != minimal_memory(compose(images[i], images[j]))
    report.add(
        "group-algebra.additive",
        add_bad == 0,
        f"{tag} psi(a+b) = psi(a)+psi(b) on {len(pairs)} {how} pairs, {add_bad} mismatches",
    )
    report.add(
        "group-algebra.multiplicative",
        mul_bad == 0,
        f"{tag} orientation psi(a*b) = psi(a) o psi(b) on {len(pairs)} {how} pairs, {mul_bad} mismatches",
    )
    one = delta(group, ring, group.identity)
    unit_ok = psi(one) == minimal_memory(identity_ca(group, alphabet)) and all(
        convolve(one, b) == b == convolve(b, one) for b in elements
    )
    report.add("group-algebra.unit", unit_ok, f"{tag} psi(delta_e) is the identity CA and a unit for *")
    return report


# -- counting ----------------------------------------------------------------


class CountResult(NamedTuple):
    count: int
    method: str
    agreeing: tuple[str, ...]


def _additive_order(algebra: FiniteAlgebra, a: int) -> int:
    q = algebra.size
    plus = algebra.op("+").table
    zero = algebra.op("0").table[0]
    n, acc = 1, a
    while acc != zero:
        acc = plus[acc * q + a]
        n += 1
    return n


def _integer_multiple(algebra: FiniteAlgebra, table: Sequence[int]) -> bool:
    q = algebra.size
    plus = algebra.op("+").table
    zero = algebra.op("0").table[0]
    multiple = [zero] * q
    for _ in range(q + 1):
        if tuple(multiple) == tuple(table):
            return True
        multiple = [plus[m * q + a] for m, a in zip(multiple, range(q))]
    return False


def vector_space_shape(algebra: FiniteAlgebra) -> tuple[int, int] | None:
    """``(p, n)`` when ``algebra`` is an ``n``-dimensional space over ``F_p``, else None."""
    if module_failure(algebra) is not None:
        return None
    q = algebra.size
    orders = {_additive_order(algebra, a) for a in range(q)} - {1}
    if not orders:
        return None
    if len(orders) != 1:
        return None
    p = orders.pop()
    if any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        return None
    n, size = 0, 1
    while size < q:
        size *= p
        n += 1
    if size != q:
        return None
    if not all(_integer_multiple(algebra, op.table) for op in algebra.ops if op.arity == 1):
        return None
    return p, n


def cyclic_order(algebra: FiniteAlgebra) -> int | None:
    """``n`` when ``algebra`` is ``Z_n`` (as a group or a Z-module), else None."""
    if module_failure(algebra) is not None:
        return None
    q = algebra.size
    if not any(_additive_order(algebra, a) == q for a in range(q)):
        return None
    if not all(_integer_multiple(algebra, op.table) for op in algebra.ops if op.arity == 1):
        return None
    return q


def count_endoca(group: Group, memory, alphabet: FiniteAlgebra, cap: int | None = None) -> CountResult:
    """``|EndCA(G,S;A)|`` by every applicable closed form, cross-checked.

    The generic hom count also runs whenever ``A^S`` fits under the cap.
    """
    mem = _as_memory(group, memory)
    s = len(mem)
    counts: dict[str, int] = {}
    shape = vector_space_shape(alphabet)
    if shape is not None:
        p, n = shape
        counts["vector-space"] = p ** (n * n * s)
    n = cyclic_order(alphabet)
    if n is not None:
        counts["cyclic"] = n**s
    if module_failure(alphabet) is None:
        counts["module"] = len(enumerate_endomorphisms(alphabet)) ** s
    if is_boolean(alphabet):
        k = boolean_view(alphabet).k
        counts["boolean"] = (k * s) ** k
    limit = DOMAIN_CAP if cap is None else cap
    if alphabet.size**s <= limit:
        domain = power_algebra(alphabet, mem.elems, cap)
        counts["generic"] = enumerate_homs(domain, alphabet, cap).count
    if not counts:
        check_cap(f"hom search domain {alphabet.name}^{s}", alphabet.size**s, cap, DOMAIN_CAP)
    values = set(counts.values())
    if len(values) != 1:
        raise AssertionError(f"counting methods disagree: {counts}")
    method = next(m for m in ("vector-space", "cyclic", "module", "boolean", "generic") if m in counts)
    return CountResult(values.pop(), method, tuple(counts))


# -- ECA classification ------------------------------------------------------

PREDICATES = ("additive", "boolean-hom", "endomorphic-under")


def classify_eca(predicate: str, alphabet: FiniteAlgebra | None = None) -> list[int]:
    """Rule numbers whose local rule is a homomorphism for the chosen alphabet structure."""
    if predicate == "additive":
        alphabet = cyclic_group_algebra(2)
    elif predicate == "boolean-hom":
        alphabet = boolean_algebra(1)
    elif predicate == "endomorphic-under":
        if alphabet is None:
            raise ValueError("predicate 'endomorphic-under' needs an alphabet")
    else:
        raise ValueError(f"unknown predicate {predicate!r}; expected one of {', '.join(PREDICATES)}")
    accepted = [m for m in range(256) if is_endomorphic(eca(m, alphabet))]
    if predicate == "boolean-hom":
        for m in accepted:
            if not is_projection(minimal_memory(eca(m, alphabet))):
                raise AssertionError(f"Boolean rule {m} does not reduce to a projection")
    return accepted


def is_projection(ca: CellularAutomaton) -> bool:
    """Local rule ``y -> y(s)`` for a single memory element ``s``."""
    return len(ca.memory) == 1 and ca.table == tuple(range(ca.alphabet.size))


# -- direct limit ------------------------------------------------------------


def verify_direct_limit(
    group: Group,
    chain: Sequence,
    alphabet: FiniteAlgebra,
    cap: int | None = None,
    samples: int = 100,
    seed: int = 0,
) -> Report:
    """Check that memory extension embeds ``EndCA(G,S_i;A)`` into ``EndCA(G,S_j;A)`` compatibly."""
    require_entropic(alphabet)
    sets = [_as_memory(group, s).canonical() for s in chain]
    for a, b in zip(sets, sets[1:]):
        if not a.issubset(b):
            raise ValidationError(f"chain is not increasing at {{{a.format()}}} / {{{b.format()}}}")
    families = [enumerate_endoca(group, s, alphabet, cap) for s in sets]
    report = Report()
    sizes = ", ".join(str(len(f)) for f in families)
    expected = [count_endoca(group, s, alphabet, cap).count for s in sets]
    report.add(
        "direct-limit.sizes",
        [len(f) for f in families] == expected,
        f"G={group.name} A={alphabet.name} sizes {sizes}, counted {', '.join(map(str, expected))}",
    )
    rng = random.Random(seed)

    def embed(t: CellularAutomaton, target: MemorySet) -> CellularAutomaton:
        return extend_memory(t, target)

    for i, j in itertools.combinations_with_replacement(range(len(sets)), 2):
        src, dst = families[i], families[j]
        label = f"{{{sets[i].format()}}}->{{{sets[j].format()}}}"
        images = [embed(t, sets[j]).table for t in src]
        target_tables = set(dst.tables())
        report.add(
            f"direct-limit.embedding[{label}]",
            len(set(images)) == len(images) and all(t in target_tables for t in images),
            f"{len(images)} items map injectively into {len(dst)}",
        )
        if i == j:
            report.add(
                f"direct-limit.identity[{label}]",
                images == src.tables(),
                "extension to the same memory is the identity",
            )
        for k in range(j, len(sets)):
            if i < j < k:
                ok = all(embed(embed(t, sets[j]), sets[k]) == embed(t, sets[k]) for t in src)
                report.add(
                    f"direct-limit.composable[{label}->{{{sets[k].format()}}}]",
                    ok,
                    "stepwise extension equals direct extension",
                )
        if i < j:
            bad = 0
            total = 0
            for op in alphabet.ops:
                tuples, _ = _tuples(list(src.items), op.arity, cap or DOMAIN_CAP, samples, rng)
                for ts in tuples:
                    total += 1
                    lhs = embed(pointwise_combine(op.name, ts, group=group, alphabet=alphabet), sets[j])
                    rhs = pointwise_combine(op.name, [embed(t, sets[j]) for t in ts], group=group, alphabet=alphabet)
                    bad += lhs.table != embed(rhs, sets[j]).table
            report.add(
                f"direct-limit.preserves-ops[{label}]",
                bad == 0,
                f"{total} operation instances, {bad} mismatches",
            )
    for f in families:
        ok = all(
            minimal_memory(embed(t, sets[-1])) == minimal_memory(t) for t in f
        )
        report.add(
            f"direct-limit.minimal-round-trip[{{{f.memory.format()}}}]",
            ok,
            "minimal memory is unchanged by extension",
        )
    return report
