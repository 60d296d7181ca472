"""Named small structures and seeded random generators.

Random generators take a ``numpy.random.Generator`` and always return
validated structures; they are what the property tests and the acceptance
sweep draw from.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from .action import LeftAction, group_automorphism_action, relation_action
from .bundle import (
    FiniteGroup,
    GroupBundle,
    cyclic_group,
    direct_product,
    group_as_groupoid,
    permutation_group,
    standard_groupoid,
    subgroup,
    symmetric_group,
)
from .core import (
    FiniteCategory,
    Groupoid,
    Partition,
    as_groupoid,
    build_category,
    relabel,
)


def klein_group() -> FiniteGroup:
    return direct_product(cyclic_group(2), cyclic_group(2))


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of an n-gon as permutations of its vertices."""
    return permutation_group(_dihedral_perms(n))


SMALL_GROUPS = {
    "Z1": lambda: cyclic_group(1),
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "V4": klein_group,
    "Z5": lambda: cyclic_group(5),
    "Z6": lambda: cyclic_group(6),
    "S3": lambda: symmetric_group(3),
}


def small_groups(max_order: int = 6) -> list[FiniteGroup]:
    return [make() for make in SMALL_GROUPS.values() if make().order <= max_order]


def arrow_category() -> FiniteCategory:
    """Two objects and a single non-identity arrow ``0 -> 1``."""
    return FiniteCategory(2, [0, 1, 0], [0, 1, 1], [0, 1],
                          [[0, -1, -1], [-1, 1, 2], [2, -1, -1]])


def zero_monoid() -> FiniteCategory:
    """The monoid ``{e, z}`` with ``zz = z``, as a one-object category."""
    return FiniteCategory(1, [0, 0], [0, 0], [0], [[0, 1], [1, 1]])


def inversion_action(n: int) -> LeftAction:
    """Z2 acting on Zn by ``x -> -x``."""
    return group_automorphism_action(cyclic_group(2), cyclic_group(n),
                                     [list(range(n)), [(-x) % n for x in range(n)]])


def monoid_category(maps: Sequence[Sequence[int]]) -> tuple[FiniteCategory, tuple[tuple[int, ...], ...]]:
    """One-object category of the transformation monoid generated by ``maps``.

    Elements are maps of ``range(k)``, composed as functions: ``(fg)(x) = f(g(x))``.
    """
    k = len(maps[0]) if maps else 0
    ident = tuple(range(k))
    elements = [ident]
    seen = {ident}
    frontier = [ident]
    gens = [tuple(m) for m in maps]
    while frontier:
        f = frontier.pop()
        for g in gens:
            fg = tuple(f[g[x]] for x in range(k))
            if fg not in seen:
                seen.add(fg)
                elements.append(fg)
                frontier.append(fg)
    elements = [ident] + sorted(e for e in elements if e != ident)
    pos = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    cat = build_category(1, [0] * n, [0] * n, [0],
                         lambda a, b: pos[tuple(elements[a][elements[b][x]] for x in range(k))])
    return cat, tuple(elements)


def preorder_category(n: int, leq) -> FiniteCategory:
    """Thin category with one arrow ``x -> y`` whenever ``leq(x, y)``.

    ``leq`` must be reflexive and transitive.
    """
    arrows = [(x, y) for x in range(n) for y in range(n) if leq(x, y)]
    index = {a: i for i, a in enumerate(arrows)}
    return build_category(n, [x for x, _ in arrows], [y for _, y in arrows],
                          [index[(x, x)] for x in range(n)],
                          lambda a, b: index[(arrows[b][0], arrows[a][1])])


def conjugation_on_monoid(perms: Sequence[Sequence[int]], maps: Sequence[Sequence[int]]) -> LeftAction:
    """A permutation group acting by ``f -> p f p^-1`` on a conjugation-closed transformation monoid."""
    group = permutation_group(perms)
    k = len(perms[0])
    inv = [tuple(np.argsort(p)) for p in perms]
    gens = [tuple(p[m[q[x]]] for x in range(k)) for p, q in zip(perms, inv) for m in maps]
    cat, elements = monoid_category(gens)
    pos = {e: i for i, e in enumerate(elements)}
    table = {}
    for g, (p, q) in enumerate(zip(perms, inv)):
        for i, f in enumerate(elements):
            table[(g, i)] = pos[tuple(p[f[q[x]]] for x in range(k))]
    return LeftAction(group_as_groupoid(group), cat, [0], table)


def boolean_lattice_action(perms: Sequence[Sequence[int]]) -> LeftAction:
    """Permutations of ``range(k)`` acting on the inclusion order of its subsets."""
    group = permutation_group(perms)
    k = len(perms[0])
    subsets = list(range(2 ** k))
    lattice = preorder_category(len(subsets), lambda a, b: a & b == a)
    arrow = {(lattice.s(h), lattice.t(h)): h for h in range(lattice.n_morphisms)}

    def move(p, a):
        return sum(1 << p[i] for i in range(k) if a >> i & 1)

    table = {}
    for g, p in enumerate(perms):
        for h in range(lattice.n_morphisms):
            table[(g, h)] = arrow[(move(p, lattice.s(h)), move(p, lattice.t(h)))]
    return LeftAction(group_as_groupoid(group), lattice, [0] * len(subsets), table)


# -- random structures ----------------------------------------------------


def random_partition(rng: np.random.Generator, n: int) -> Partition:
    labels = rng.integers(0, max(n, 1), size=n)
    groups: dict[int, list[int]] = {}
    for p, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(p)
    return Partition(n, tuple(tuple(g) for g in groups.values()))


def random_bundle(rng: np.random.Generator, max_points: int = 6, max_order: int = 6,
                  max_morphisms: int | None = None) -> GroupBundle:
    pool = small_groups(max_order)
    while True:
        n = int(rng.integers(1, max_points + 1))
        part = random_partition(rng, n)
        fibers = tuple(pool[int(rng.integers(len(pool)))] for _ in part.classes)
        bundle = GroupBundle(part, fibers)
        if max_morphisms is None or bundle.standard_size() <= max_morphisms:
            return bundle


def shuffled(rng: np.random.Generator, c: FiniteCategory) -> FiniteCategory:
    return relabel(c, rng.permutation(c.n_objects), rng.permutation(c.n_morphisms))


def random_groupoid(rng: np.random.Generator, max_morphisms: int = 60, max_points: int = 6) -> Groupoid:
    """A groupoid of at most ``max_morphisms`` morphisms with randomly scrambled indices."""
    bundle = random_bundle(rng, max_points=max_points, max_morphisms=max_morphisms)
    return as_groupoid(shuffled(rng, standard_groupoid(bundle).groupoid))


def random_group_action(rng: np.random.Generator, gamma: FiniteGroup, max_orbits: int = 3) -> tuple[int, list[list[int]]]:
    """A random action of ``gamma`` on a disjoint union of coset spaces, scrambled."""
    subgroups = _subgroups(gamma)
    cosets: list[list[frozenset]] = []
    for _ in range(int(rng.integers(1, max_orbits + 1))):
        k = subgroups[int(rng.integers(len(subgroups)))]
        cs = sorted({frozenset(gamma.mul(g, x) for x in k) for g in range(gamma.order)}, key=min)
        cosets.append(cs)
    points = [(i, c) for i, cs in enumerate(cosets) for c in cs]
    perm = rng.permutation(len(points))
    where = {pt: int(perm[j]) for j, pt in enumerate(points)}
    beta = [[0] * len(points) for _ in range(gamma.order)]
    for g in range(gamma.order):
        for (i, c) in points:
            moved = frozenset(gamma.mul(g, x) for x in c)
            beta[g][where[(i, c)]] = where[(i, moved)]
    return len(points), beta


def _subgroups(gamma: FiniteGroup) -> list[frozenset]:
    found = {frozenset(gamma.generated([g, h])) for g in range(gamma.order) for h in range(gamma.order)}
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def all_group_actions(gamma: FiniteGroup, n: int) -> list[list[list[int]]]:
    """Every action of ``gamma`` on ``range(n)``, found by choosing generator images."""
    gens: list[int] = []
    span = {gamma.identity}
    for x in range(gamma.order):
        if x not in span:
            gens.append(x)
            span = gamma.generated(gens)
    found = []
    for images in itertools.product(itertools.permutations(range(n)), repeat=len(gens)):
        beta: dict[int, tuple[int, ...]] = {gamma.identity: tuple(range(n))}
        frontier = [gamma.identity]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for g, img in zip(gens, images):
                y = gamma.mul(x, g)
                val = tuple(beta[x][img[p]] for p in range(n))
                if y in beta:
                    if beta[y] != val:
                        ok = False
                        break
                else:
                    beta[y] = val
                    frontier.append(y)
        if ok:
            found.append([list(beta[g]) for g in range(gamma.order)])
    return found


def relabel_action(rng: np.random.Generator, act: LeftAction) -> LeftAction:
    """The same action with G's and H's indices scrambled."""
    G, H = act.G, act.H
    go, gm = rng.permutation(G.n_objects), rng.permutation(G.n_morphisms)
    ho, hm = rng.permutation(H.n_objects), rng.permutation(H.n_morphisms)
    phi = [0] * H.n_objects
    for u in range(H.n_objects):
        phi[ho[u]] = int(go[act.phi[u]])
    table = {(int(gm[g]), int(hm[h])): int(hm[v]) for (g, h), v in act.table.items()}
    return LeftAction(relabel(G, go, gm), relabel(H, ho, hm), phi, table)


def translation_action(G: Groupoid, rng: np.random.Generator, fiber: FiniteGroup | None = None,
                       coarse: bool = True) -> LeftAction:
    """G acting on a standard groupoid over its own morphisms by left translation.

    Points are the morphisms of G, sitting over their targets.  Two points are
    related when they share a target (and, unless ``coarse``, a source); every
    class carries ``fiber``, which G leaves alone.
    """
    fiber = fiber or cyclic_group(1)
    n = G.n_morphisms
    if coarse:
        key = lambda x: G.t(x)
    else:
        key = lambda x: (G.t(x), G.s(x))
    groups: dict = {}
    for x in range(n):
        groups.setdefault(key(x), []).append(x)
    part = Partition(n, tuple(tuple(v) for v in groups.values()))
    std = standard_groupoid(GroupBundle(part, tuple(fiber for _ in part.classes)))
    phi = [G.t(x) for x in range(n)]
    table = {}
    for g in range(G.n_morphisms):
        for i, (x, k, y) in enumerate(std.triples):
            if G.s(g) == phi[x]:
                table[(g, i)] = std.index[(G.mul(g, x), k, G.mul(g, y))]
    return LeftAction(G, std.groupoid, phi, table)


def translation_preorder_action(G: Groupoid, rng: np.random.Generator) -> LeftAction:
    """G acting on a thin (non-groupoid) category over its morphisms.

    ``x <= y`` when ``x`` and ``y`` share a target and the source of ``x``
    ranks no higher than that of ``y`` in a random ranking of objects.
    """
    rank = rng.permutation(G.n_objects)
    n = G.n_morphisms
    H = preorder_category(n, lambda x, y: G.t(x) == G.t(y) and rank[G.s(x)] <= rank[G.s(y)])
    arrow = {(H.s(h), H.t(h)): h for h in range(H.n_morphisms)}
    phi = [G.t(x) for x in range(n)]
    table = {}
    for g in range(G.n_morphisms):
        for h in range(H.n_morphisms):
            if G.s(g) == phi[H.s(h)]:
                table[(g, h)] = arrow[(G.mul(g, H.s(h)), G.mul(g, H.t(h)))]
    return LeftAction(G, H, phi, table)


def _dihedral_perms(n):
    rot = [tuple((i + k) % n for i in range(n)) for k in range(n)]
    ref = [tuple((k - i) % n for i in range(n)) for k in range(n)]
    return rot + ref


# parents for conjugation actions, as permutation lists
_PARENTS = [lambda: list(itertools.permutations(range(3))), lambda: _dihedral_perms(4)]


def random_automorphism_action(rng: np.random.Generator) -> LeftAction:
    """A subgroup of S3 or D4 acting by conjugation on a normal subgroup."""
    perms = _PARENTS[int(rng.integers(len(_PARENTS)))]()
    parent = permutation_group(perms)
    subs = _subgroups(parent)
    normal = [s for s in subs if all(frozenset(parent.mul(parent.mul(g, x), parent.inv(g)) for x in s) == s
                                     for g in range(parent.order))]
    n_sub = normal[int(rng.integers(len(normal)))]
    a_sub = subs[int(rng.integers(len(subs)))]
    kgrp, kels = subgroup(parent, n_sub)
    agrp, aels = subgroup(parent, a_sub)
    kpos = {x: i for i, x in enumerate(kels)}
    theta = [[kpos[parent.mul(parent.mul(g, x), parent.inv(g))] for x in kels] for g in aels]
    return group_automorphism_action(agrp, kgrp, theta)


def random_groupoid_action(rng: np.random.Generator, max_morphisms: int = 24) -> LeftAction:
    """A random action of a groupoid on a groupoid, drawn from several families."""
    from .action import inner_action

    kind = int(rng.integers(4))
    if kind == 0:
        act = inner_action(random_groupoid(rng, max_morphisms=max_morphisms, max_points=4)).action
    elif kind == 1:
        G = random_groupoid(rng, max_morphisms=6, max_points=3)
        fiber = small_groups(3)[int(rng.integers(3))]
        act = translation_action(G, rng, fiber, coarse=bool(rng.integers(2)))
    elif kind == 2:
        act = random_automorphism_action(rng)
    else:
        pool = small_groups(6)
        gamma = pool[int(rng.integers(1, len(pool)))]
        n, beta = random_group_action(rng, gamma, max_orbits=2)
        choice = int(rng.integers(3))
        if choice == 0:
            part = Partition(n, tuple((x,) for x in range(n)))
        elif choice == 1:
            part = Partition(n, (tuple(range(n)),))
        else:
            orbit = lambda x: frozenset(beta[g][x] for g in range(gamma.order))
            part = Partition(n, tuple(tuple(sorted(o)) for o in {orbit(x) for x in range(n)}))
        act = relation_action(gamma, part, beta).action
    return relabel_action(rng, act)


def random_category_action(rng: np.random.Generator) -> LeftAction:
    """A groupoid acting on a category that is usually not a groupoid."""
    kind = int(rng.integers(3))
    if kind == 0:
        G = random_groupoid(rng, max_morphisms=10, max_points=3)
        act = translation_preorder_action(G, rng)
    elif kind == 1:
        perms = [list(p) for p in itertools.permutations(range(2))]
        act = boolean_lattice_action(perms)
    else:
        k = 2 if rng.integers(2) else 3
        all_perms = [list(p) for p in itertools.permutations(range(k))]
        maps = [list(rng.integers(0, k, size=k))]
        act = conjugation_on_monoid(all_perms, maps)
    return relabel_action(rng, act)


def random_category(rng: np.random.Generator) -> FiniteCategory:
    """A small category: a random preorder, a transformation monoid, or a groupoid."""
    kind = int(rng.integers(3))
    if kind == 0:
        n = int(rng.integers(1, 6))
        rank = rng.integers(0, 3, size=n)
        blocks = rng.integers(0, 2, size=n)
        cat = preorder_category(n, lambda x, y: blocks[x] == blocks[y] and rank[x] <= rank[y])
    elif kind == 1:
        k = int(rng.integers(2, 4))
        cat, _ = monoid_category([list(rng.integers(0, k, size=k)) for _ in range(2)])
    else:
        cat = random_groupoid(rng, max_morphisms=20, max_points=4)
    return shuffled(rng, cat)
