"""Isomorphism search for finite categories and the orbit/stabilizer criterion.

:func:`find_isomorphism` backtracks over object bijections that respect a
hom-set size profile, then over morphism images, propagating every forced
value ``F(ab) = F(a)F(b)`` as soon as both factors are placed.
"""

from __future__ import annotations

from collections import Counter
from typing import NamedTuple, Sequence

import numpy as np

from .action import group_action_violations, transformation_groupoid, ActionError
from .bundle import FiniteGroup, group_isomorphic, subgroup
from .core import FiniteCategory, IsoWitness, reachability_classes

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """The search tree outgrew its node budget before reaching an answer."""

    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"isomorphism search exceeded {nodes} nodes")


def _morphism_invariants(c: FiniteCategory) -> list[tuple]:
    out = []
    for h in range(c.n_morphisms):
        if c.is_unit(h):
            out.append(("unit",))
        elif c.s(h) != c.t(h):
            out.append(("arrow", len(c.hom(c.s(h), c.t(h))) > 0))
        else:
            # index and period of the power sequence h, h^2, ...
            seen = {h: 1}
            x, k = h, 1
            while True:
                x, k = c.mul(h, x), k + 1
                if x in seen:
                    out.append(("endo", seen[x], k - seen[x]))
                    break
                seen[x] = k
    return out


def _object_profiles(c: FiniteCategory, inv: list[tuple]) -> list[tuple]:
    sizes = c.hom_sizes()
    classes = reachability_classes(c).partition
    profiles = []
    for x in range(c.n_objects):
        endo = tuple(sorted(Counter(inv[h] for h in c.hom(x, x)).items()))
        profiles.append((
            int(sizes[x, x]),
            tuple(sorted(int(v) for v in sizes[x])),
            tuple(sorted(int(v) for v in sizes[:, x])),
            len(classes.classes[classes.class_of[x]]),
            endo,
        ))
    return profiles


class _Search:
    def __init__(self, a: FiniteCategory, b: FiniteCategory, budget: int):
        self.a, self.b, self.budget = a, b, budget
        self.nodes = 0
        self.inv_a = _morphism_invariants(a)
        self.inv_b = _morphism_invariants(b)
        self.prof_a = _object_profiles(a, self.inv_a)
        self.prof_b = _object_profiles(b, self.inv_b)
        self.size_a = a.hom_sizes()
        self.size_b = b.hom_sizes()
        self.ca = a.compose.tolist()
        self.cb = b.compose.tolist()

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.budget)

    # objects ---------------------------------------------------------------
    def objects(self, pi: list[int], used: set[int]):
        x = len(pi)
        if x == self.a.n_objects:
            yield pi
            return
        for y in range(self.b.n_objects):
            if y in used or self.prof_a[x] != self.prof_b[y]:
                continue
            if any(self.size_a[x, z] != self.size_b[y, pi[z]] or self.size_a[z, x] != self.size_b[pi[z], y]
                   for z in range(x)):
                continue
            self.tick()
            pi.append(y)
            used.add(y)
            yield from self.objects(pi, used)
            pi.pop()
            used.discard(y)

    # morphisms -------------------------------------------------------------
    def morphisms(self, pi: list[int]) -> list[int] | None:
        a, b = self.a, self.b
        m = a.n_morphisms
        self.f = [-1] * m
        self.finv = [-1] * b.n_morphisms
        self.placed: list[int] = []
        for u in range(a.n_objects):
            if not self._assign(a.id(u), b.id(pi[u])):
                return None
        self.pi = pi
        if self._extend(0):
            return list(self.f)
        return None

    def _assign(self, x: int, y: int) -> bool:
        """Place x -> y and propagate; on failure the trail is left for the caller to undo."""
        ca, cb, f, finv = self.ca, self.cb, self.f, self.finv
        queue = [(x, y)]
        while queue:
            x, y = queue.pop()
            if f[x] != -1:
                if f[x] != y:
                    return False
                continue
            if finv[y] != -1 or self.inv_a[x] != self.inv_b[y]:
                return False
            f[x], finv[y] = y, x
            self.placed.append(x)
            for z in self.placed:
                fz = f[z]
                for p, q, fp, fq in ((x, z, y, fz), (z, x, fz, y)):
                    pq = ca[p][q]
                    if pq != -1:
                        queue.append((pq, cb[fp][fq]))
        return True

    def _undo(self, mark: int):
        while len(self.placed) > mark:
            x = self.placed.pop()
            self.finv[self.f[x]] = -1
            self.f[x] = -1

    def _extend(self, start: int) -> bool:
        a, b, f = self.a, self.b, self.f
        x = start
        while x < a.n_morphisms and f[x] != -1:
            x += 1
        if x == a.n_morphisms:
            return True
        for y in b.hom(self.pi[a.t(x)], self.pi[a.s(x)]):
            if self.finv[y] != -1:
                continue
            self.tick()
            mark = len(self.placed)
            if self._assign(x, y) and self._extend(x + 1):
                return True
            self._undo(mark)
        return False


def find_isomorphism(a: FiniteCategory, b: FiniteCategory, budget: int = DEFAULT_BUDGET) -> IsoWitness | None:
    """An isomorphism ``a -> b``, or None when none exists.

    The search is exhaustive, so None is a proof of non-isomorphism; running
    out of ``budget`` search nodes raises :class:`BudgetExceeded` instead.
    The first witness in lexicographic branch order is returned.
    """
    if a.n_objects != b.n_objects or a.n_morphisms != b.n_morphisms:
        return None
    search = _Search(a, b, budget)
    if sorted(search.prof_a) != sorted(search.prof_b):
        return None
    if sorted(search.inv_a) != sorted(search.inv_b):
        return None
    for pi in search.objects([], set()):
        mm = search.morphisms(list(pi))
        if mm is not None:
            return IsoWitness(tuple(pi), tuple(mm)).verify(a, b)
    return None


# -- orbits ----------------------------------------------------------------


class OrbitDecomposition(NamedTuple):
    orbits: tuple[tuple[int, ...], ...]  # sorted, ordered by least point
    stabilizers: tuple[FiniteGroup, ...]  # stabilizer of each orbit's least point
    stabilizer_elements: tuple[tuple[int, ...], ...]  # subgroup index -> element of the acting group


def orbits_and_stabilizers(gamma: FiniteGroup, n: int, beta: Sequence[Sequence[int]]) -> OrbitDecomposition:
    bad = group_action_violations(gamma, n, beta)
    if bad:
        raise ActionError(bad)
    seen = [False] * n
    orbits, stabs, elements = [], [], []
    for x in range(n):
        if seen[x]:
            continue
        orbit = sorted({int(beta[g][x]) for g in range(gamma.order)})
        for y in orbit:
            seen[y] = True
        group, els = subgroup(gamma, [g for g in range(gamma.order) if beta[g][x] == x])
        orbits.append(tuple(orbit))
        stabs.append(group)
        elements.append(els)
    return OrbitDecomposition(tuple(orbits), tuple(stabs), tuple(elements))


def orbit_matching(left: OrbitDecomposition, right: OrbitDecomposition) -> tuple[int, ...] | None:
    """A bijection of points carrying each orbit onto an orbit of equal size with isomorphic stabilizer.

    Returns ``psi`` with ``psi[x]`` the image of point ``x``, or None.
    """
    n = sum(len(o) for o in left.orbits)
    if n != sum(len(o) for o in right.orbits) or len(left.orbits) != len(right.orbits):
        return None
    free = list(range(len(right.orbits)))
    psi = [0] * n
    for orbit, stab in zip(left.orbits, left.stabilizers):
        for k in free:
            if len(right.orbits[k]) == len(orbit) and group_isomorphic(stab, right.stabilizers[k]) is not None:
                free.remove(k)
                for x, y in zip(orbit, right.orbits[k]):
                    psi[x] = y
                break
        else:
            return None
    return tuple(psi)


class CorollaryVerdict(NamedTuple):
    groupoid_iso: IsoWitness | None  # side (i): transformation groupoids isomorphic
    orbit_bijection: tuple[int, ...] | None  # side (ii): orbit/stabilizer matching
    agree: bool

    @property
    def isomorphic(self) -> bool:
        return self.groupoid_iso is not None


def corollary_check(gamma: FiniteGroup, n: int, beta, lam: FiniteGroup, m: int, gamma2,
                    budget: int = DEFAULT_BUDGET) -> CorollaryVerdict:
    """Decide ``X x Gamma ~= Y x Lambda`` twice: by direct search and by orbits and stabilizers."""
    left = transformation_groupoid(gamma, n, beta).groupoid
    right = transformation_groupoid(lam, m, gamma2).groupoid
    iso = find_isomorphism(left, right, budget)
    match = orbit_matching(orbits_and_stabilizers(gamma, n, beta),
                           orbits_and_stabilizers(lam, m, gamma2))
    return CorollaryVerdict(iso, match, (iso is None) == (match is None))
