"""Finite groups, group bundles over partitions, and standard-type groupoids.

A group bundle assigns one finite group to each class of a partition of the
points ``0..n-1``.  Its standard groupoid has a morphism ``(x, g, y)`` for
every pair of points ``x, y`` in a common class and every element ``g`` of
that class's group, composed by ``(x, g, y)(y, h, z) = (x, gh, z)``.
:func:`bundle_from_groupoid` and :func:`standardization_iso` go the other way
and show every finite groupoid arises like this.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .core import (
    FiniteCategory,
    Groupoid,
    IsoWitness,
    LawError,
    Partition,
    Violation,
    as_groupoid,
    reachability_classes,
)


class GroupError(LawError):
    def __init__(self, violations):
        super().__init__(violations, "group")


def group_violations(table) -> list[Violation]:
    """All group-law failures of a multiplication table, with witnesses."""
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValueError("group table must be square")
    n = t.shape[0]
    if n == 0:
        return [Violation("nonempty", (), "a group has at least one element")]
    if ((t < 0) | (t >= n)).any():
        a, b = np.argwhere((t < 0) | (t >= n))[0]
        return [Violation("closure", (int(a), int(b)), f"product {t[a, b]} out of range")]
    out = []
    lhs = t[t, :]  # lhs[a, b, c] = (ab)c
    rhs = t[:, t]  # rhs[a, b, c] = a(bc)
    for a, b, c in np.argwhere(lhs != rhs)[:8]:
        out.append(Violation("associativity", (int(a), int(b), int(c))))
    ar = np.arange(n)
    units = [e for e in range(n) if (t[e] == ar).all() and (t[:, e] == ar).all()]
    if not units:
        return out + [Violation("identity", (), "no two-sided unit")]
    e = units[0]
    for a in range(n):
        if not ((t[a] == e) & (t[:, a] == e)).any():
            out.append(Violation("inverse", (a,), f"element {a} has no inverse"))
    return out


class FiniteGroup:
    """A group given by its multiplication table; ``table[a, b]`` is ``ab``."""

    __slots__ = ("table", "identity", "inverse")

    def __init__(self, table):
        bad = group_violations(table)
        if bad:
            raise GroupError(bad)
        t = np.array(table, dtype=np.int64)
        t.flags.writeable = False
        n = len(t)
        ar = np.arange(n)
        e = next(e for e in range(n) if (t[e] == ar).all())
        inv = np.argmax(t == e, axis=1)
        inv.flags.writeable = False
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "identity", int(e))
        object.__setattr__(self, "inverse", inv)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteGroup is immutable")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def element_orders(self) -> list[int]:
        return [self.element_order(a) for a in range(self.order)]

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def generated(self, gens: Sequence[int]) -> set[int]:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.table.shape == other.table.shape and bool((self.table == other.table).all())

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def validate_group(table) -> FiniteGroup:
    return FiniteGroup(table)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)])


def permutation_group(perms: Sequence[Sequence[int]]) -> FiniteGroup:
    """Group of the given permutations (closed set) under ``(p q)(x) = p(q(x))``."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[x] for x in q)] for q in perms] for p in perms]
    return FiniteGroup(table)


def symmetric_group(n: int) -> FiniteGroup:
    """Permutations of ``range(n)`` in lexicographic order."""
    return permutation_group(list(itertools.permutations(range(n))))


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Element ``(x, y)`` has index ``x * b.order + y``."""
    n = b.order
    return FiniteGroup([[a.mul(i // n, j // n) * n + b.mul(i % n, j % n)
                         for j in range(a.order * n)] for i in range(a.order * n)])


def subgroup(g: FiniteGroup, elements) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Re-indexed subgroup on ``elements`` and the map new index -> old element."""
    els = tuple(sorted(int(x) for x in elements))
    pos = {x: i for i, x in enumerate(els)}
    try:
        table = [[pos[g.mul(a, b)] for b in els] for a in els]
    except KeyError:
        raise GroupError([Violation("closure", (), "element set is not closed")]) from None
    return FiniteGroup(table), els


def group_as_groupoid(g: FiniteGroup) -> Groupoid:
    """The one-object groupoid whose morphisms are the elements of ``g``."""
    n = g.order
    return Groupoid(1, [0] * n, [0] * n, [g.identity], g.table, g.inverse)


def isotropy_group(h: FiniteCategory, x: int) -> tuple[FiniteGroup, tuple[int, ...]]:
    """``hom(x, x)`` of a groupoid as a group, with the element -> morphism map."""
    els = h.hom(x, x)
    pos = {k: i for i, k in enumerate(els)}
    return FiniteGroup([[pos[h.mul(a, b)] for b in els] for a in els]), els


def group_isomorphic(a: FiniteGroup, b: FiniteGroup) -> IsoWitness | None:
    """An isomorphism ``a -> b`` as a one-object IsoWitness, or None if none exists.

    Backtracks over images of a generating set of ``a``, restricted to elements
    of equal order, extending each partial choice to the subgroup it generates.
    """
    if a.order != b.order:
        return None
    orders_a, orders_b = a.element_orders(), b.element_orders()
    if sorted(orders_a) != sorted(orders_b):
        return None

    gens: list[int] = []
    span = {a.identity}
    for x in sorted(range(a.order), key=lambda x: (-orders_a[x], x)):
        if x not in span:
            gens.append(x)
            span = a.generated(gens)

    def extend(images: list[int]) -> dict[int, int] | None:
        # partial images are checked on the subgroup their generators span
        f = {a.identity: b.identity}
        used = {b.identity}
        frontier = [a.identity]
        while frontier:
            x = frontier.pop()
            for g, fg in zip(gens[: len(images)], images):
                y, fy = a.mul(x, g), b.mul(f[x], fg)
                if y in f:
                    if f[y] != fy:
                        return None
                elif fy in used:
                    return None
                else:
                    f[y] = fy
                    used.add(fy)
                    frontier.append(y)
        return f

    def search(images: list[int]) -> dict[int, int] | None:
        if len(images) == len(gens):
            return extend(images)
        k = len(images)
        for cand in range(b.order):
            if orders_b[cand] != orders_a[gens[k]]:
                continue
            trial = images + [cand]
            if extend(trial) is not None:
                found = search(trial)
                if found is not None:
                    return found
        return None

    f = search([])
    if f is None or len(f) != a.order:
        return None
    return IsoWitness((0,), tuple(f[x] for x in range(a.order)))


# -- bundles ---------------------------------------------------------------


@dataclass(frozen=True)
class GroupBundle:
    """One finite group per class of a partition (``fibers[i]`` sits over ``partition.classes[i]``)."""

    partition: Partition
    fibers: tuple[FiniteGroup, ...]

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple(self.fibers))
        if len(self.fibers) != len(self.partition.classes):
            raise ValueError("a group bundle needs exactly one fiber per class")

    def fiber_of(self, x: int) -> FiniteGroup:
        return self.fibers[self.partition.class_of[x]]

    def standard_size(self) -> int:
        return sum(len(c) ** 2 * g.order for c, g in zip(self.partition.classes, self.fibers))


class StandardGroupoid(NamedTuple):
    groupoid: Groupoid
    triples: tuple[tuple[int, int, int], ...]  # morphism -> (x, g, y)
    index: dict  # (x, g, y) -> morphism


def standard_groupoid(bundle: GroupBundle) -> StandardGroupoid:
    """The groupoid of triples ``(x, g, y)``, ordered lexicographically."""
    part = bundle.partition
    triples = []
    for x in range(part.n_points):
        cls = part.classes[part.class_of[x]]
        for g in range(bundle.fiber_of(x).order):
            triples.extend((x, g, y) for y in cls)
    index = {tr: i for i, tr in enumerate(triples)}
    src = [y for _, _, y in triples]
    tgt = [x for x, _, _ in triples]
    ident = [index[(x, bundle.fiber_of(x).identity, x)] for x in range(part.n_points)]
    m = len(triples)
    table = np.full((m, m), -1, dtype=np.int64)
    for i, (x, g, y) in enumerate(triples):
        fib = bundle.fiber_of(x)
        for j, (y2, h, z) in enumerate(triples):
            if y2 == y:
                table[i, j] = index[(x, fib.mul(g, h), z)]
    inverse = [index[(y, bundle.fiber_of(x).inv(g), x)] for x, g, y in triples]
    grp = Groupoid(part.n_points, src, tgt, ident, table, inverse)
    return StandardGroupoid(grp, tuple(triples), index)


@dataclass(frozen=True)
class ChoicePolicy:
    """How to pick class representatives and connecting arrows."""

    name: str
    representative: Callable[[Sequence[int]], int]
    connector: Callable[[Sequence[int]], int]


LEAST_INDEX = ChoicePolicy("least-index", min, min)
GREATEST_INDEX = ChoicePolicy("greatest-index", max, max)
POLICIES = {p.name: p for p in (LEAST_INDEX, GREATEST_INDEX)}


def random_policy(rng) -> ChoicePolicy:
    pick = lambda xs: xs[int(rng.integers(len(xs)))]
    return ChoicePolicy("random", pick, pick)


class Decomposition(NamedTuple):
    bundle: GroupBundle
    representatives: tuple[int, ...]  # class -> chosen base object
    connectors: tuple[int, ...]  # object x -> arrow x -> representative of its class
    fiber_elements: tuple[tuple[int, ...], ...]  # class -> (fiber element -> morphism)


def bundle_from_groupoid(h: FiniteCategory, policy: ChoicePolicy = LEAST_INDEX) -> Decomposition:
    """Split a groupoid into its orbit partition and isotropy groups at chosen bases."""
    h = as_groupoid(h)
    part = reachability_classes(h).partition
    reps, fibers, elements = [], [], []
    connectors = [-1] * h.n_objects
    for cls in part.classes:
        rep = int(policy.representative(list(cls)))
        group, els = isotropy_group(h, rep)
        reps.append(rep)
        fibers.append(group)
        elements.append(els)
        for x in cls:
            connectors[x] = h.id(rep) if x == rep else int(policy.connector(list(h.hom(rep, x))))
    return Decomposition(GroupBundle(part, tuple(fibers)), tuple(reps), tuple(connectors),
                         tuple(elements))


def standardization_iso(h: FiniteCategory, dec: Decomposition) -> IsoWitness:
    """Isomorphism from ``h`` onto the standard groupoid of ``dec.bundle``.

    A morphism ``g: y -> x`` goes to ``(x, l_x g l_y^-1, y)`` where ``l`` are
    the connectors.
    """
    h = as_groupoid(h)
    std = standard_groupoid(dec.bundle)
    part = dec.bundle.partition
    pos = [{k: i for i, k in enumerate(els)} for els in dec.fiber_elements]
    l = dec.connectors
    mm = []
    for g in range(h.n_morphisms):
        x, y = h.t(g), h.s(g)
        c = part.class_of[x]
        core = h.chain(l[x], g, h.inv(l[y]))
        mm.append(std.index[(x, pos[c][core], y)])
    witness = IsoWitness(tuple(range(h.n_objects)), tuple(mm))
    for (x, k, y), target in std.index.items():
        c = part.class_of[x]
        pre = h.chain(h.inv(l[x]), dec.fiber_elements[c][k], l[y])
        if mm[pre] != target:
            raise RuntimeError(f"standardization map misses {(x, k, y)}")
    bad = witness.violations(h, std.groupoid)
    if bad:
        raise RuntimeError(f"standardization map is not an isomorphism: {bad[0]}")
    return witness
