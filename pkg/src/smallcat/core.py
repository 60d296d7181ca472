"""Finite small categories and groupoids stored as dense tables.

Composition convention: ``compose[h, k]`` is the composite ``hk`` in which
``k`` is applied first, so it is defined exactly when ``source[h] == target[k]``.
Undefined entries hold :data:`UNDEFINED`.  Objects are ``0..n_objects-1`` and
every object ``u`` is represented among the morphisms by ``identity[u]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np

UNDEFINED = -1

# cap on witnesses reported per law, keeps reports readable on badly broken tables
MAX_WITNESSES = 8


@dataclass(frozen=True)
class Violation:
    """A failed law together with the concrete tuple that breaks it."""

    law: str
    witness: tuple
    detail: str = ""

    def __str__(self) -> str:
        text = f"{self.law} at {self.witness}"
        return f"{text}: {self.detail}" if self.detail else text


class LawError(ValueError):
    """Raised when tables fail the laws of the structure they claim to be."""

    def __init__(self, violations: Sequence[Violation], what: str = "structure"):
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:3])
        more = len(self.violations) - 3
        if more > 0:
            head += f" (+{more} more)"
        super().__init__(f"not a valid {what}: {head}")


class CategoryError(LawError):
    def __init__(self, violations: Sequence[Violation]):
        super().__init__(violations, "category")


class NotAGroupoidError(LawError):
    def __init__(self, morphism: int):
        self.morphism = morphism
        super().__init__(
            [Violation("invertibility", (morphism,), "no two-sided inverse")], "groupoid"
        )


def _frozen(values, shape=None) -> np.ndarray:
    arr = np.array(values, dtype=np.int64)
    if shape is not None:
        arr = arr.reshape(shape)
    arr.flags.writeable = False
    return arr


def _compose_array(compose, m: int) -> np.ndarray:
    if isinstance(compose, np.ndarray):
        if compose.shape != (m, m):
            raise ValueError(f"compose table must be {m}x{m}")
        return _frozen(compose)
    rows = [[UNDEFINED if v is None else v for v in row] for row in compose]
    if len(rows) != m or any(len(r) != m for r in rows):
        raise ValueError(f"compose table must be {m}x{m}")
    if m == 0:
        return _frozen(np.zeros((0, 0), dtype=np.int64))
    return _frozen(rows)


class _Collector:
    def __init__(self):
        self.violations: list[Violation] = []
        self._counts: dict[str, int] = {}

    def add(self, law: str, witness: tuple, detail: str = "") -> None:
        n = self._counts.get(law, 0)
        if n < MAX_WITNESSES:
            witness = tuple(int(w) for w in witness)
            self.violations.append(Violation(law, witness, detail))
        self._counts[law] = n + 1

    def add_mask(self, law: str, mask: np.ndarray, detail: Callable[..., str]) -> None:
        for idx in np.argwhere(mask)[:MAX_WITNESSES]:
            self.add(law, tuple(idx), detail(*idx))
        extra = int(mask.sum()) - MAX_WITNESSES
        if extra > 0:
            self._counts[law] = self._counts.get(law, 0) + extra


def category_violations(n_objects, source, target, identity, compose) -> list[Violation]:
    """Check every category law on raw tables.

    Raises ValueError when the tables are malformed (wrong lengths); law
    failures are returned as violations with witnesses.
    """
    s = np.asarray(source, dtype=np.int64).reshape(-1)
    t = np.asarray(target, dtype=np.int64).reshape(-1)
    ident = np.asarray(identity, dtype=np.int64).reshape(-1)
    m = len(s)
    if len(t) != m:
        raise ValueError("source and target have different lengths")
    if len(ident) != n_objects:
        raise ValueError(f"identity must have one entry per object ({n_objects})")
    c = np.asarray(_compose_array(compose, m))

    out = _Collector()
    bad = np.flatnonzero((s < 0) | (s >= n_objects) | (t < 0) | (t >= n_objects))
    for h in bad:
        out.add("range", (h,), "source/target is not an object")
    bad_id = np.flatnonzero((ident < 0) | (ident >= m))
    for u in bad_id:
        out.add("range", (u,), "identity is not a morphism")
    if m:
        bad_c = np.argwhere((c != UNDEFINED) & ((c < 0) | (c >= m)))
        for a, b in bad_c:
            out.add("range", (a, b), "composite is not a morphism")
    if out.violations:
        return out.violations

    for u in range(n_objects):
        h = ident[u]
        if s[h] != u or t[h] != u:
            out.add("identity endpoints", (u,), f"identity({u}) = {h} runs {s[h]} -> {t[h]}")
    if m == 0:
        return out.violations

    composable = s[:, None] == t[None, :]
    defined = c != UNDEFINED
    out.add_mask("defined iff s(h) = t(h')", composable & ~defined,
                 lambda a, b: "composable pair has no composite")
    out.add_mask("defined iff s(h) = t(h')", ~composable & defined,
                 lambda a, b: "non-composable pair has a composite")
    ok = composable & defined
    safe = np.where(ok, c, 0)
    out.add_mask("source(hh') = source(h')", ok & (s[safe] != s[None, :]),
                 lambda a, b: f"composite {c[a, b]} has source {s[c[a, b]]}, expected {s[b]}")
    out.add_mask("target(hh') = target(h)", ok & (t[safe] != t[:, None]),
                 lambda a, b: f"composite {c[a, b]} has target {t[c[a, b]]}, expected {t[a]}")
    if out.violations:
        return out.violations

    hs = np.arange(m)
    left = c[ident[t], hs]
    for h in np.flatnonzero(left != hs):
        out.add("left unit", (h,), f"identity({t[h]}) * {h} = {left[h]}")
    right = c[hs, ident[s]]
    for h in np.flatnonzero(right != hs):
        out.add("right unit", (h,), f"{h} * identity({s[h]}) = {right[h]}")

    # (ab)c versus a(bc), one row of a at a time to bound memory
    for a in range(m):
        bs = np.flatnonzero(c[a] != UNDEFINED)
        if not len(bs):
            continue
        mask = composable[bs]
        lhs = c[c[a, bs], :]
        rhs = c[a, safe[bs]]
        diff = mask & (lhs != rhs)
        if diff.any():
            for i, cc in np.argwhere(diff)[:MAX_WITNESSES]:
                b = bs[i]
                out.add("associativity", (a, b, cc),
                        f"({a}{b}){cc} = {lhs[i, cc]} but {a}({b}{cc}) = {rhs[i, cc]}")
    return out.violations


class FiniteCategory:
    """A validated finite category.

    Instances are immutable; constructing one runs the full law check and
    raises :class:`CategoryError` on failure.
    """

    __slots__ = ("n_objects", "source", "target", "identity", "compose", "_unit_object")

    def __init__(self, n_objects: int, source, target, identity, compose):
        violations = category_violations(n_objects, source, target, identity, compose)
        if violations:
            raise CategoryError(violations)
        self._set(n_objects, source, target, identity, compose)

    @classmethod
    def _trusted(cls, n_objects, source, target, identity, compose):
        # only for tables derived from an already validated category by a law-preserving transform
        c = object.__new__(cls)
        FiniteCategory._set(c, n_objects, source, target, identity, compose)
        return c

    def _set(self, n_objects, source, target, identity, compose):
        m = len(source)
        object.__setattr__(self, "n_objects", int(n_objects))
        object.__setattr__(self, "source", _frozen(source, (m,)))
        object.__setattr__(self, "target", _frozen(target, (m,)))
        object.__setattr__(self, "identity", _frozen(identity, (n_objects,)))
        object.__setattr__(self, "compose", _compose_array(compose, m))
        unit_object = np.full(m, UNDEFINED, dtype=np.int64)
        unit_object[self.identity] = np.arange(n_objects)
        unit_object.flags.writeable = False
        object.__setattr__(self, "_unit_object", unit_object)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def n_morphisms(self) -> int:
        return len(self.source)

    def s(self, h: int) -> int:
        return int(self.source[h])

    def t(self, h: int) -> int:
        return int(self.target[h])

    def id(self, u: int) -> int:
        return int(self.identity[u])

    def composable(self, h: int, k: int) -> bool:
        return self.source[h] == self.target[k]

    def mul(self, h: int, k: int) -> int:
        """The composite ``hk`` (``k`` first)."""
        r = int(self.compose[h, k])
        if r == UNDEFINED:
            raise ValueError(f"morphisms {h} and {k} are not composable")
        return r

    def chain(self, *hs: int) -> int:
        r = hs[-1]
        for h in reversed(hs[:-1]):
            r = self.mul(h, r)
        return r

    def is_unit(self, h: int) -> bool:
        return self._unit_object[h] != UNDEFINED

    def unit_object(self, h: int) -> int | None:
        """The object whose identity is ``h``, or None."""
        u = int(self._unit_object[h])
        return None if u == UNDEFINED else u

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        """Morphisms with target ``x`` and source ``y``."""
        return tuple(int(h) for h in np.flatnonzero((self.target == x) & (self.source == y)))

    def hom_sizes(self) -> np.ndarray:
        """``sizes[x, y] == len(hom(x, y))``."""
        sizes = np.zeros((self.n_objects, self.n_objects), dtype=np.int64)
        np.add.at(sizes, (self.target, self.source), 1)
        return sizes

    def endomorphisms(self) -> tuple[int, ...]:
        return tuple(int(h) for h in np.flatnonzero(self.source == self.target))

    def tables(self) -> dict:
        return {
            "objects": self.n_objects,
            "source": self.source.tolist(),
            "target": self.target.tolist(),
            "identity": self.identity.tolist(),
            "compose": self.compose.tolist(),
        }

    def _key(self):
        return (self.n_objects, self.source.tobytes(), self.target.tobytes(),
                self.identity.tobytes(), self.compose.tobytes())

    def __eq__(self, other):
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"{type(self).__name__}(objects={self.n_objects}, morphisms={self.n_morphisms})"


class Groupoid(FiniteCategory):
    """A finite category together with its (unique) inverse map."""

    __slots__ = ("inverse",)

    def __init__(self, n_objects: int, source, target, identity, compose, inverse):
        super().__init__(n_objects, source, target, identity, compose)
        inv = _frozen(inverse, (self.n_morphisms,))
        hs = np.arange(self.n_morphisms)
        if self.n_morphisms:
            if ((inv < 0) | (inv >= self.n_morphisms)).any():
                raise ValueError("inverse entries out of range")
            ok = (self.source == self.target[inv]) & (self.target == self.source[inv])
            ok &= self.compose[hs, inv] == self.identity[self.target]
            ok &= self.compose[inv, hs] == self.identity[self.source]
            bad = np.flatnonzero(~ok)
            if len(bad):
                raise LawError([Violation("inverse", (int(h),), f"{inv[h]} is not inverse")
                                for h in bad[:MAX_WITNESSES]], "groupoid")
        object.__setattr__(self, "inverse", inv)

    @classmethod
    def _trusted(cls, n_objects, source, target, identity, compose, inverse=None):
        g = object.__new__(cls)
        FiniteCategory._set(g, n_objects, source, target, identity, compose)
        object.__setattr__(g, "inverse", _frozen(inverse, (len(source),)))
        return g

    @classmethod
    def _from_category(cls, cat: FiniteCategory, inverse) -> "Groupoid":
        return cls._trusted(cat.n_objects, cat.source, cat.target, cat.identity, cat.compose, inverse)

    def inv(self, h: int) -> int:
        return int(self.inverse[h])


def invert(g: Groupoid, h: int) -> int:
    return g.inv(h)


def find_non_invertible(c: FiniteCategory) -> int | None:
    """First morphism with no two-sided inverse, or None when ``c`` is a groupoid."""
    _, missing = _inverse_table(c)
    return missing


def _inverse_table(c: FiniteCategory):
    m = c.n_morphisms
    inv = np.full(m, UNDEFINED, dtype=np.int64)
    for h in range(m):
        if inv[h] != UNDEFINED:
            continue
        for k in c.hom(c.s(h), c.t(h)):
            if c.compose[h, k] == c.identity[c.target[h]] and c.compose[k, h] == c.identity[c.source[h]]:
                inv[h] = k
                inv[k] = h
                break
        else:
            return None, h
    return inv, None


def as_groupoid(c: FiniteCategory) -> Groupoid:
    """Return ``c`` as a :class:`Groupoid`, or raise NotAGroupoidError naming a witness."""
    if isinstance(c, Groupoid):
        return c
    inv, missing = _inverse_table(c)
    if missing is not None:
        raise NotAGroupoidError(missing)
    return Groupoid._from_category(c, inv)


def is_groupoid(c: FiniteCategory) -> bool:
    return isinstance(c, Groupoid) or find_non_invertible(c) is None


def build_category(
    n_objects: int,
    source: Sequence[int],
    target: Sequence[int],
    identity: Sequence[int],
    product: Callable[[int, int], int],
) -> FiniteCategory:
    """Tabulate ``product`` over all composable pairs and validate the result."""
    m = len(source)
    s = np.asarray(source, dtype=np.int64)
    t = np.asarray(target, dtype=np.int64)
    table = np.full((m, m), UNDEFINED, dtype=np.int64)
    for a, b in np.argwhere(s[:, None] == t[None, :]):
        table[a, b] = product(int(a), int(b))
    return FiniteCategory(n_objects, s, t, identity, table)


def opposite(c: FiniteCategory) -> FiniteCategory:
    """Same carrier with source and target swapped and composition reversed."""
    args = (c.n_objects, c.target, c.source, c.identity, np.ascontiguousarray(c.compose.T))
    if isinstance(c, Groupoid):
        return Groupoid._trusted(*args, c.inverse)
    return FiniteCategory._trusted(*args)


def relabel(c: FiniteCategory, object_perm: Sequence[int], morphism_perm: Sequence[int]) -> FiniteCategory:
    """Isomorphic copy sending object ``u`` to ``object_perm[u]`` and morphism ``h`` to ``morphism_perm[h]``."""
    op = np.asarray(object_perm, dtype=np.int64)
    mp = np.asarray(morphism_perm, dtype=np.int64)
    m = c.n_morphisms
    src = np.empty(m, dtype=np.int64)
    tgt = np.empty(m, dtype=np.int64)
    src[mp] = op[c.source]
    tgt[mp] = op[c.target]
    ident = np.empty(c.n_objects, dtype=np.int64)
    ident[op] = mp[c.identity]
    comp = np.full((m, m), UNDEFINED, dtype=np.int64)
    if m:
        defined = c.compose != UNDEFINED
        comp[np.ix_(mp, mp)] = np.where(defined, mp[np.where(defined, c.compose, 0)], UNDEFINED)
    if isinstance(c, Groupoid):
        inv = np.empty(m, dtype=np.int64)
        inv[mp] = mp[c.inverse]
        return Groupoid._trusted(c.n_objects, src, tgt, ident, comp, inv)
    return FiniteCategory._trusted(c.n_objects, src, tgt, ident, comp)


def discrete_category(n: int) -> Groupoid:
    """Objects ``0..n-1`` and only their identities."""
    comp = np.full((n, n), UNDEFINED, dtype=np.int64)
    np.fill_diagonal(comp, np.arange(n))
    r = list(range(n))
    return Groupoid(n, r, r, r, comp, r)


def pair_groupoid(n: int) -> Groupoid:
    """One arrow ``x <- y`` for every pair; morphism ``(x, y)`` has index ``x*n + y``."""
    idx = lambda x, y: x * n + y
    src = [y for x in range(n) for y in range(n)]
    tgt = [x for x in range(n) for y in range(n)]
    cat = build_category(n, src, tgt, [idx(u, u) for u in range(n)],
                         lambda a, b: idx(tgt[a], src[b]))
    return Groupoid._from_category(cat, [idx(src[h], tgt[h]) for h in range(n * n)])


# -- partitions -----------------------------------------------------------


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller root wins so class labels stay deterministic
            lo, hi = min(ra, rb), max(ra, rb)
            self.parent[hi] = lo


@dataclass(frozen=True)
class Partition:
    """A partition of ``0..n_points-1``; classes are sorted and ordered by least element."""

    n_points: int
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        classes = tuple(sorted((tuple(sorted(int(p) for p in c)) for c in self.classes),
                               key=lambda c: c[0] if c else -1))
        class_of = [-1] * self.n_points
        for i, c in enumerate(classes):
            if not c:
                raise ValueError("partition classes must be nonempty")
            for p in c:
                if not 0 <= p < self.n_points:
                    raise ValueError(f"point {p} is not in 0..{self.n_points - 1}")
                if class_of[p] != -1:
                    raise ValueError(f"point {p} lies in two classes")
                class_of[p] = i
        missing = [p for p, c in enumerate(class_of) if c == -1]
        if missing:
            raise ValueError(f"points {missing} are in no class")
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "class_of", tuple(class_of))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Partition":
        """Finest partition in which every given pair is in one class."""
        uf = UnionFind(n)
        for a, b in pairs:
            uf.union(a, b)
        groups: dict[int, list[int]] = {}
        for p in range(n):
            groups.setdefault(uf.find(p), []).append(p)
        return cls(n, tuple(tuple(g) for g in groups.values()))

    def same(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def __len__(self):
        return len(self.classes)


class Reachability(NamedTuple):
    partition: Partition
    relation: np.ndarray  # relation[x, y] iff hom(x, y) is nonempty
    symmetric: bool


def reachability_classes(c: FiniteCategory) -> Reachability:
    """Classes of the equivalence closure of "hom(x, y) is nonempty".

    For a groupoid the raw relation is already symmetric and the closure
    changes nothing; for a general category both are returned.
    """
    rel = c.hom_sizes() > 0
    rel.flags.writeable = False
    pairs = zip(*np.nonzero(rel))
    part = Partition.from_pairs(c.n_objects, ((int(x), int(y)) for x, y in pairs))
    return Reachability(part, rel, bool((rel == rel.T).all()))


class Restriction(NamedTuple):
    category: FiniteCategory
    objects: tuple[int, ...]  # new object -> old object
    morphisms: tuple[int, ...]  # new morphism -> old morphism


def subcategory(c: FiniteCategory, morphisms: Iterable[int], objects: Iterable[int] | None = None) -> Restriction:
    """Sub-category on the given morphisms, densely re-indexed.

    ``objects`` defaults to the endpoints of ``morphisms``; the morphism set
    must contain their identities and be closed under composition.
    """
    mors = sorted(set(int(h) for h in morphisms))
    if objects is None:
        objs = sorted({c.s(h) for h in mors} | {c.t(h) for h in mors})
    else:
        objs = sorted(set(int(u) for u in objects))
    onew = {u: i for i, u in enumerate(objs)}
    mnew = {h: i for i, h in enumerate(mors)}
    try:
        src = [onew[c.s(h)] for h in mors]
        tgt = [onew[c.t(h)] for h in mors]
        ident = [mnew[c.id(u)] for u in objs]
    except KeyError as exc:
        raise ValueError(f"morphism set is missing object or identity {exc}") from None
    m = len(mors)
    table = np.full((m, m), UNDEFINED, dtype=np.int64)
    for i, a in enumerate(mors):
        for j, b in enumerate(mors):
            if c.composable(a, b):
                ab = int(c.compose[a, b])
                if ab not in mnew:
                    raise ValueError(f"composite {a}*{b} = {ab} leaves the subcategory")
                table[i, j] = mnew[ab]
    if isinstance(c, Groupoid) and all(c.inv(h) in mnew for h in mors):
        sub = Groupoid(len(objs), src, tgt, ident, table, [mnew[c.inv(h)] for h in mors])
    else:
        sub = FiniteCategory(len(objs), src, tgt, ident, table)
    return Restriction(sub, tuple(objs), tuple(mors))


def full_subcategory(c: FiniteCategory, objects: Iterable[int]) -> Restriction:
    """All morphisms with both endpoints in ``objects``."""
    z = set(int(u) for u in objects)
    mors = [h for h in range(c.n_morphisms) if c.s(h) in z and c.t(h) in z]
    return subcategory(c, mors, z)


# -- functors and isomorphism certificates ---------------------------------


def functor_violations(a: FiniteCategory, b: FiniteCategory,
                       object_map: Sequence[int], morphism_map: Sequence[int]) -> list[Violation]:
    """Check that the maps form a functor ``a -> b``."""
    out = _Collector()
    om = np.asarray(object_map, dtype=np.int64)
    mm = np.asarray(morphism_map, dtype=np.int64)
    if len(om) != a.n_objects or len(mm) != a.n_morphisms:
        raise ValueError("map sizes do not match the domain category")
    if ((om < 0) | (om >= b.n_objects)).any() or ((mm < 0) | (mm >= b.n_morphisms)).any():
        out.add("range", (), "map hits a nonexistent object or morphism")
        return out.violations
    for h in np.flatnonzero(b.source[mm] != om[a.source]):
        out.add("preserves source", (h,))
    for h in np.flatnonzero(b.target[mm] != om[a.target]):
        out.add("preserves target", (h,))
    for u in np.flatnonzero(mm[a.identity] != b.identity[om]):
        out.add("preserves identity", (u,))
    if out.violations or a.n_morphisms == 0:
        return out.violations
    defined = a.compose != UNDEFINED
    img = mm[np.where(defined, a.compose, 0)]
    prod = b.compose[mm[:, None], mm[None, :]]
    out.add_mask("preserves composition", defined & (img != prod),
                 lambda x, y: f"F({x}{y}) = {img[x, y]} but F({x})F({y}) = {prod[x, y]}")
    return out.violations


@dataclass(frozen=True)
class IsoWitness:
    """Explicit object and morphism bijections certifying an isomorphism."""

    object_map: tuple[int, ...]
    morphism_map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "object_map", tuple(int(x) for x in self.object_map))
        object.__setattr__(self, "morphism_map", tuple(int(x) for x in self.morphism_map))

    def inverse(self) -> "IsoWitness":
        om = [0] * len(self.object_map)
        for i, j in enumerate(self.object_map):
            om[j] = i
        mm = [0] * len(self.morphism_map)
        for i, j in enumerate(self.morphism_map):
            mm[j] = i
        return IsoWitness(tuple(om), tuple(mm))

    def then(self, other: "IsoWitness") -> "IsoWitness":
        """Composite: apply self, then other."""
        return IsoWitness(tuple(other.object_map[x] for x in self.object_map),
                          tuple(other.morphism_map[h] for h in self.morphism_map))

    def violations(self, a: FiniteCategory, b: FiniteCategory) -> list[Violation]:
        out: list[Violation] = []
        if a.n_objects != b.n_objects or a.n_morphisms != b.n_morphisms:
            return [Violation("bijective", (), "categories differ in size")]
        if sorted(self.object_map) != list(range(b.n_objects)):
            out.append(Violation("bijective", (), "object map is not a bijection"))
        if sorted(self.morphism_map) != list(range(b.n_morphisms)):
            out.append(Violation("bijective", (), "morphism map is not a bijection"))
        if out:
            return out
        return functor_violations(a, b, self.object_map, self.morphism_map)

    def verify(self, a: FiniteCategory, b: FiniteCategory) -> "IsoWitness":
        """Return self if it certifies ``a`` isomorphic to ``b``; raise otherwise."""
        bad = self.violations(a, b)
        if bad:
            raise LawError(bad, "isomorphism")
        return self

    @classmethod
    def identity(cls, c: FiniteCategory) -> "IsoWitness":
        return cls(tuple(range(c.n_objects)), tuple(range(c.n_morphisms)))
