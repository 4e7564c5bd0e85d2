"""Named verification suites, each a batch of exhaustive or seeded checks.

Every suite returns a :class:`~algca.report.Report`; ``run_suite("all")``
concatenates them in the order of ``SUITES``.
"""

from __future__ import annotations

import itertools
import random

from .algebra import (
    FiniteAlgebra,
    Operation,
    boolean_algebra,
    builtin_algebra,
    check_entropic,
    cyclic_group_algebra,
    power_algebra,
    vector_space,
)
from .automata import (
    config_op,
    is_endomorphic,
    is_global_endomorphism,
    is_shift_equivariant,
    make_ca,
    random_ca,
)
from .boolean import boolean_homs
from .endo import count_endoca, verify_direct_limit, verify_group_algebra, verify_phi
from .errors import NotEntropicError
from .groups import Z, all_configurations, cyclic_group, shift, symmetric_group
from .homs import count_homs, enumerate_homs, module_homs
from .report import Report


def suite_th_local(cap: int | None = None, samples: int = 100, seed: int = 0) -> Report:
    """Global endomorphism check against the local hom check, over every rule table."""
    report = Report()
    a = cyclic_group_algebra(2)
    for group in (cyclic_group(4), symmetric_group(3)):
        mem = (0, 1)
        configs = list(all_configurations(group, a.size))
        mismatches = 0
        rules = list(itertools.product(range(a.size), repeat=a.size ** len(mem)))
        endo = 0
        for table in rules:
            ca = make_ca(group, a, mem, table)
            local = is_endomorphic(ca, cap)
            endo += local
            mismatches += local != is_global_endomorphism(ca, configs)
        report.add(
            f"th-local[{group.name}]",
            mismatches == 0,
            f"A={a.name} S={{0, 1}}: {len(rules)} rules, {len(configs)} configurations, "
            f"{endo} endomorphic, {mismatches} mismatches",
        )
    return report


def suite_th_ca_s(cap: int | None = None, samples: int = 100, seed: int = 0) -> Report:
    """The local-rule map is an algebra isomorphism, and non-entropic alphabets are refused."""
    report = Report()
    z2, z3 = cyclic_group_algebra(2), cyclic_group_algebra(3)
    cases = [
        (cyclic_group(4), (0, 1), z2),
        (cyclic_group(3), (0, 1), z3),
        (symmetric_group(3), (0, 1), z2),
        (Z, (-1, 0, 1), z2),
        (cyclic_group(2), (0, 1), vector_space(2, 2)),
    ]
    for group, mem, alphabet in cases:
        report.extend(verify_phi(group, mem, alphabet, cap, samples, seed))
    for alphabet in (boolean_algebra(1), builtin_algebra("S3mag")):
        try:
            verify_phi(cyclic_group(2), (0, 1), alphabet, cap, samples, seed)
        except NotEntropicError as exc:
            w = exc.witness
            valid = w is not None and w.holds_in(alphabet)
            report.add(f"th-ca-s.refuses[{alphabet.name}]", valid, f"witness {w}")
        else:
            report.add(f"th-ca-s.refuses[{alphabet.name}]", False, "non-entropic alphabet accepted")
    return report


def suite_group_algebra(cap: int | None = None, samples: int = 100, seed: int = 0) -> Report:
    report = Report()
    c6 = cyclic_group(6)
    report.extend(verify_group_algebra(c6, cyclic_group_algebra(2), c6.elements(), cap, samples, seed))
    report.extend(verify_group_algebra(cyclic_group(4), cyclic_group_algebra(4), (0, 1), cap, samples, seed))
    s3 = symmetric_group(3)
    report.extend(verify_group_algebra(s3, cyclic_group_algebra(2), s3.elements(), cap, samples, seed))
    return report


BOOLEAN_GRID = ((1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2))


def suite_boolean_count(cap: int | None = None, samples: int = 100, seed: int = 0) -> Report:
    """``|Hom((2^k)^s, 2^k)| = (ks)^k`` by construction and by generic search."""
    report = Report()
    for k, s in BOOLEAN_GRID:
        b = boolean_algebra(k)
        closed = (k * s) ** k
        special = boolean_homs(k, s, cap)
        generic = enumerate_homs(power_algebra(b, range(s), cap), b, cap)
        ok = special.count == generic.count == closed and special.tables() == generic.tables()
        report.add(
            f"boolean-count[k={k},s={s}]",
            ok,
            f"closed form {closed}, specialized {special.count}, generic {generic.count}",
        )
    return report


MODULE_GRID = tuple((n, s) for n in (2, 3, 4, 6) for s in (1, 2, 3))


def suite_hom_counts(cap: int | None = None, samples: int = 100, seed: int = 0) -> Report:
    """``|Hom(Z_n^s, Z_n)| = n^s`` and the vector-space count, each path cross-checked."""
    report = Report()
    for n, s in MODULE_GRID:
        a = cyclic_group_algebra(n)
        generic = enumerate_homs(power_algebra(a, range(s), cap), a, cap)
        special = module_homs(a, s, cap)
        ok = generic.count == special.count == n**s and generic.tables() == special.tables()
        report.add(
            f"hom-counts[Z{n},s={s}]",
            ok,
            f"closed form {n**s}, module {special.count}, generic {generic.count}",
        )
    v = vector_space(2, 2)
    for s in (1, 2):
        expected = 2 ** (2 * 2 * s)
        result = count_endoca(Z, range(s), v, cap)
        counted = count_homs(power_algebra(v, range(s), cap), v, cap)
        generic = "generic" in result.agreeing
        report.add(
            f"hom-counts[{v.name},s={s}]",
            result.count == counted == expected,
            f"closed form {expected}, counted {result.count} via {', '.join(result.agreeing)}"
            + ("" if generic else " (generic search skipped)"),
        )
    return report


def suite_direct_limit(cap: int | None = None, samples: int = 100, seed: int = 0) -> Report:
    report = Report()
    chain = [(0,), (0, 1), (-1, 0, 1)]
    report.extend(verify_direct_limit(Z, chain, cyclic_group_algebra(2), cap, samples, seed))
    report.extend(verify_direct_limit(cyclic_group(3), [(0,)], cyclic_group_algebra(3), cap, samples, seed))
    return report


def suite_g_algebra(cap: int | None = None, samples: int = 50, seed: int = 0) -> Report:
    """Shifts commute with the componentwise operations, and sampled CA commute with shifts."""
    report = Report()
    a = cyclic_group_algebra(2)
    for group in (cyclic_group(4), symmetric_group(3)):
        configs = list(all_configurations(group, a.size))
        bad = total = 0
        for op in a.ops:
            for xs in itertools.product(configs, repeat=op.arity):
                like = configs[0]
                combined = config_op(a, op.name, xs, like)
                for g in group.elements():
                    total += 1
                    moved = config_op(a, op.name, [shift(g, x) for x in xs], like)
                    bad += shift(g, combined) != moved
        report.add(
            f"g-algebra.ops[{group.name}]",
            bad == 0,
            f"A={a.name}: {total} (operation, tuple, shift) cases, {bad} mismatches",
        )
        identity = all(shift(group.identity, x) == x for x in configs)
        action = all(
            shift(group.op(g, h), x) == shift(g, shift(h, x))
            for x in configs[:8]
            for g in group.elements()
            for h in group.elements()
        )
        report.add(f"g-algebra.action[{group.name}]", identity and action, "e acts trivially and (gh).x = g.(h.x)")

    rng = random.Random(seed)
    for group in (symmetric_group(3), cyclic_group(4)):
        bad = 0
        for _ in range(samples):
            q = rng.randint(2, 3)
            alphabet = cyclic_group_algebra(q)
            size = rng.randint(1, 3)
            mem = rng.sample(group.elements(), size)
            ca = random_ca(group, alphabet, mem, rng)
            bad += not is_shift_equivariant(ca)
        report.add(
            f"g-algebra.equivariance[{group.name}]",
            bad == 0,
            f"{samples} random CA with q <= 3, exhaustive in g and x, {bad} failures",
        )
    return report


def suite_entropic(cap: int | None = None, samples: int = 200, seed: int = 0) -> Report:
    """Both characterizations of entropic algebras agree on random small algebras."""
    report = Report()
    rng = random.Random(seed)
    positives = disagreements = 0
    for _ in range(samples):
        q = rng.randint(1, 4)
        ops = []
        for i in range(rng.randint(1, 3)):
            arity = rng.randint(0, 2)
            ops.append(Operation(f"f{i}", arity, tuple(rng.randrange(q) for _ in range(q**arity))))
        try:
            positives += check_entropic(FiniteAlgebra(f"rand{q}", q, tuple(ops)), cap).entropic
        except AssertionError:
            disagreements += 1
    report.add(
        "entropic.agreement",
        disagreements == 0,
        f"{samples} random algebras (q <= 4, arity <= 2), {positives} entropic, {disagreements} disagreements",
    )
    return report


SUITES = {
    "th-local": suite_th_local,
    "th-ca-s": suite_th_ca_s,
    "group-algebra": suite_group_algebra,
    "boolean-count": suite_boolean_count,
    "hom-counts": suite_hom_counts,
    "direct-limit": suite_direct_limit,
    "g-algebra": suite_g_algebra,
    "entropic": suite_entropic,
}


def run_suite(name: str, cap: int | None = None, seed: int = 0) -> Report:
    if name == "all":
        report = Report()
        for fn in SUITES.values():
            report.extend(fn(cap=cap, seed=seed))
        return report
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](cap=cap, seed=seed)
