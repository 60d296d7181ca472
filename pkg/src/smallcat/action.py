"""Left actions of a category G on a category H and the products they build.

An action is an object map ``phi: H-objects -> G-objects`` plus a table
``alpha[(g, h)]`` defined exactly on the pairs with
``s(g) == phi(t(h)) == phi(s(h))``.  Axiom names follow the usual numbering
(0), (I)..(VI) for the general form and (I'), (II'), (III') for the form
that is equivalent when G is a groupoid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .bundle import FiniteGroup, GroupBundle, StandardGroupoid, cyclic_group, group_as_groupoid, standard_groupoid
from .core import (
    FiniteCategory,
    Groupoid,
    IsoWitness,
    LawError,
    Partition,
    Restriction,
    Violation,
    _Collector,
    as_groupoid,
    build_category,
    discrete_category,
    full_subcategory,
    functor_violations,
    is_groupoid,
    opposite,
    subcategory,
)


class ActionError(LawError):
    def __init__(self, violations):
        super().__init__(violations, "left action")


def action_domain(g: FiniteCategory, h: FiniteCategory, phi: Sequence[int]) -> list[tuple[int, int]]:
    """Pairs ``(g, h)`` with ``s(g) == phi(t(h)) == phi(s(h))``, sorted."""
    ph = np.asarray(phi, dtype=np.int64)
    if len(ph) != h.n_objects:
        raise ValueError("phi needs one entry per object of H")
    if len(ph) and ((ph < 0) | (ph >= g.n_objects)).any():
        raise ValueError("phi hits a nonexistent object of G")
    ps, pt = ph[h.source], ph[h.target]
    mask = (g.source[:, None] == pt[None, :]) & (pt == ps)[None, :]
    return [(int(a), int(b)) for a, b in np.argwhere(mask)]


def _shape_violations(g, h, phi, table, out: _Collector) -> list[tuple[int, int]]:
    dom = action_domain(g, h, phi)
    keys = set(table)
    for pair in dom:
        if pair not in keys:
            out.add("domain", pair, "missing on-domain entry")
    for pair in sorted(keys - set(dom)):
        out.add("domain", pair, "entry outside G x^phi H")
    for pair in dom:
        v = table.get(pair)
        if v is not None and not 0 <= v < h.n_morphisms:
            out.add("range", pair, f"value {v} is not a morphism of H")
    return dom


def _law_violations(g, h, phi, a, dom, out: _Collector) -> None:
    """Axioms (IV)-(VI), shared by both forms."""
    H, G = h, g
    for k in range(H.n_morphisms):
        y = phi[H.t(k)]
        if y == phi[H.s(k)] and a[(G.id(y), k)] != k:
            out.add("(IV)", (G.id(y), k), f"alpha = {a[(G.id(y), k)]}")
    dom_set = set(dom)
    by_target: dict[int, list[int]] = {}
    for x in range(G.n_morphisms):
        by_target.setdefault(G.s(x), []).append(x)
    h_by_source: dict[int, list[int]] = {}
    for x in range(H.n_morphisms):
        h_by_source.setdefault(H.s(x), []).append(x)
    for gg, hh in dom:
        k = a[(gg, hh)]
        for g2 in by_target.get(G.t(gg), ()):
            if (g2, k) not in dom_set:
                out.add("(V)", (g2, gg, hh), "left side undefined")
            elif a[(g2, k)] != a[(G.mul(g2, gg), hh)]:
                out.add("(V)", (g2, gg, hh), f"{a[(g2, k)]} != {a[(G.mul(g2, gg), hh)]}")
        for h2 in h_by_source.get(H.t(hh), ()):
            if (gg, h2) not in dom_set:
                continue
            left, right = a[(gg, h2)], k
            if not H.composable(left, right):
                out.add("(VI)", (gg, h2, hh), "right side undefined")
            elif a[(gg, H.mul(h2, hh))] != H.mul(left, right):
                out.add("(VI)", (gg, h2, hh),
                        f"{a[(gg, H.mul(h2, hh))]} != {H.mul(left, right)}")


def action_violations(g: FiniteCategory, h: FiniteCategory, phi: Sequence[int],
                      table: Mapping[tuple[int, int], int]) -> list[Violation]:
    """Check axioms (0)-(VI) on every applicable tuple."""
    out = _Collector()
    phi = [int(x) for x in phi]
    dom = _shape_violations(g, h, phi, table, out)
    if out.violations:
        return out.violations
    a, G, H = table, g, h
    for gg, k in dom:
        v = a[(gg, k)]
        if H.is_unit(k):
            if H.s(v) != H.t(v):
                out.add("(0)", (gg, k), f"alpha = {v} is not an endomorphism")
            if phi[H.s(v)] != G.t(gg):
                out.add("(III)", (gg, k), f"phi(s(alpha)) = {phi[H.s(v)]}, t(g) = {G.t(gg)}")
        if H.s(a[(gg, H.id(H.s(k)))]) != H.s(v):
            out.add("(I)", (gg, k))
        if H.t(a[(gg, H.id(H.t(k)))]) != H.t(v):
            out.add("(II)", (gg, k))
    if not out.violations:
        # (I) with (III) forces phi(s(alpha_g(h))) = t(g), and likewise for targets
        for gg, k in dom:
            v = a[(gg, k)]
            if not phi[H.s(v)] == G.t(gg) == phi[H.t(v)]:
                raise RuntimeError(f"axioms (0)-(III) hold but endpoints of alpha{(gg, k)} stray")
    _law_violations(G, H, phi, a, dom, out)
    return out.violations


def groupoid_form_violations(g: FiniteCategory, h: FiniteCategory, phi: Sequence[int],
                             table: Mapping[tuple[int, int], int]) -> list[Violation]:
    """Check (I')-(III') together with (IV)-(VI); G must be a groupoid."""
    if not is_groupoid(g):
        raise ValueError("the groupoid form of the axioms needs G to be a groupoid")
    out = _Collector()
    phi = [int(x) for x in phi]
    dom = _shape_violations(g, h, phi, table, out)
    if out.violations:
        return out.violations
    a, G, H = table, g, h
    for gg, k in dom:
        v = a[(gg, k)]
        if a[(gg, H.id(H.s(k)))] != H.id(H.s(v)):
            out.add("(I')", (gg, k))
        if a[(gg, H.id(H.t(k)))] != H.id(H.t(v)):
            out.add("(II')", (gg, k))
        if H.is_unit(k):
            u = H.unit_object(v)
            if u is None:
                out.add("(III')", (gg, k), "alpha_g(u) is not a unit")
            elif phi[u] != G.t(gg):
                out.add("(III')", (gg, k), f"phi = {phi[u]}, t(g) = {G.t(gg)}")
    _law_violations(G, H, phi, a, dom, out)
    return out.violations


@dataclass(frozen=True, eq=False)
class LeftAction:
    """A validated left action of ``G`` on ``H`` along ``phi``."""

    G: FiniteCategory
    H: FiniteCategory
    phi: tuple[int, ...]
    table: Mapping[tuple[int, int], int] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(int(x) for x in self.phi))
        object.__setattr__(self, "table", {(int(a), int(b)): int(v) for (a, b), v in self.table.items()})
        bad = action_violations(self.G, self.H, self.phi, self.table)
        if bad:
            raise ActionError(bad)

    def __call__(self, g: int, h: int) -> int:
        return self.table[(g, h)]

    def unit(self, g: int, u: int) -> int:
        """``alpha_g`` applied to the identity of object ``u``."""
        return self.table[(g, self.H.id(u))]

    def domain(self) -> list[tuple[int, int]]:
        return sorted(self.table)

    def __eq__(self, other):
        if not isinstance(other, LeftAction):
            return NotImplemented
        return (self.G == other.G and self.H == other.H and self.phi == other.phi
                and self.table == other.table)


def validate_action(g, h, phi, table) -> LeftAction:
    return LeftAction(g, h, phi, table)


def induced_object_action(act: LeftAction) -> dict[tuple[int, int], int]:
    """``(g, u) -> v`` where ``alpha_g`` sends the unit ``u`` to the unit ``v``.

    Needs G to be a groupoid, where units always go to units.
    """
    if not is_groupoid(act.G):
        raise ValueError("units need not go to units unless G is a groupoid")
    out = {}
    for (g, k), v in act.table.items():
        if act.H.is_unit(k):
            u = act.H.unit_object(v)
            if u is None:
                raise RuntimeError(f"alpha{(g, k)} = {v} is not a unit although G is a groupoid")
            out[(g, act.H.unit_object(k))] = u
    return out


def restrict_to_image(act: LeftAction) -> tuple[LeftAction, Restriction]:
    """The same action seen through the full subcategory of G over ``phi``'s image."""
    sub = full_subcategory(act.G, set(act.phi))
    gnew = {old: new for new, old in enumerate(sub.morphisms)}
    onew = {old: new for new, old in enumerate(sub.objects)}
    table = {(gnew[g], k): v for (g, k), v in act.table.items()}
    return LeftAction(sub.category, act.H, [onew[y] for y in act.phi], table), sub


# -- products --------------------------------------------------------------


class SemidirectCategory(NamedTuple):
    category: FiniteCategory
    pairs: tuple[tuple[int, int], ...]  # morphism -> pair of factor morphisms
    index: dict  # pair -> morphism
    units: tuple[int, ...]  # object -> identity morphism


def _semidirect_pairs(act: LeftAction, shared: bool) -> list[tuple[int, int]]:
    G, H, phi = act.G, act.H, act.phi
    pairs = []
    for h in range(H.n_morphisms):
        y = phi[H.s(h)]
        if y != phi[H.t(h)] or (shared and H.s(h) != H.t(h)):
            continue
        pairs.extend((h, g) for g in range(G.n_morphisms) if G.t(g) == y)
    return pairs


def semidirect_groupoid(act: LeftAction) -> SemidirectCategory:
    """The semi-direct product ``H x_alpha G`` for a groupoid G.

    Morphisms are ``(h, g)`` with ``t(g) == phi(s(h)) == phi(t(h))``; the
    source is the unit ``alpha_{g^-1}(s(h))``, the target ``t(h)`` and
    ``(h, g)(h', g') = (h alpha_g(h'), g g')``.  When H is a groupoid too the
    result is returned as a :class:`Groupoid`.
    """
    G = as_groupoid(act.G)
    H, phi = act.H, act.phi
    pairs = _semidirect_pairs(act, shared=False)
    index = {p: i for i, p in enumerate(pairs)}
    src, tgt = [], []
    for h, g in pairs:
        u = H.unit_object(act.unit(G.inv(g), H.s(h)))
        if u is None:
            raise RuntimeError(f"alpha_g^-1(s({h})) is not a unit")
        # the composability test may equally be read as s(alpha_{g^-1}(h)) == t(h')
        if H.s(act(G.inv(g), h)) != u:
            raise RuntimeError(f"the two composability readings disagree at {(h, g)}")
        src.append(u)
        tgt.append(H.t(h))
    units = tuple(index[(H.id(u), G.id(phi[u]))] for u in range(H.n_objects))

    def product(i, j):
        (h, g), (h2, g2) = pairs[i], pairs[j]
        if G.t(g2) != G.s(g):
            raise RuntimeError(f"composable pair {(h, g)}, {(h2, g2)} has t(g') != s(g)")
        k = act(g, h2)
        if H.t(k) != H.s(h):
            raise RuntimeError(f"t(alpha_g(h')) != s(h) at {(h, g)}, {(h2, g2)}")
        return index[(H.mul(h, k), G.mul(g, g2))]

    cat = build_category(H.n_objects, src, tgt, units, product)
    if is_groupoid(H):
        H = as_groupoid(H)
        inverse = [index[(act(G.inv(g), H.inv(h)), G.inv(g))] for h, g in pairs]
        cat = Groupoid(cat.n_objects, cat.source, cat.target, cat.identity, cat.compose, inverse)
    return SemidirectCategory(cat, tuple(pairs), index, units)


def semidirect_shared_units(act: LeftAction) -> SemidirectCategory:
    """``H x_alpha G`` when G and H share their objects and ``phi`` is the identity.

    Morphisms are ``(h, g)`` with ``t(g) == s(h) == t(h)``, running from
    ``s(g)`` to ``t(h)``.  G need not be a groupoid; unit laws of the result
    are checked like every other law, so a failure raises CategoryError.
    """
    G, H = act.G, act.H
    if G.n_objects != H.n_objects or act.phi != tuple(range(H.n_objects)):
        raise ValueError("shared-unit product needs G and H on the same objects with phi = id")
    pairs = _semidirect_pairs(act, shared=True)
    index = {p: i for i, p in enumerate(pairs)}
    src = [G.s(g) for _, g in pairs]
    tgt = [H.t(h) for h, _ in pairs]
    units = tuple(index[(H.id(u), G.id(u))] for u in range(H.n_objects))

    def product(i, j):
        (h, g), (h2, g2) = pairs[i], pairs[j]
        k = act(g, h2)
        if H.t(k) != H.s(h):
            raise RuntimeError(f"t(alpha_g(h')) != s(h) at {(h, g)}, {(h2, g2)}")
        return index[(H.mul(h, k), G.mul(g, g2))]

    cat = build_category(H.n_objects, src, tgt, units, product)
    if is_groupoid(cat):
        cat = as_groupoid(cat)
    return SemidirectCategory(cat, tuple(pairs), index, units)


def gphi_category(act: LeftAction) -> SemidirectCategory:
    """The category on ``G x^phi H``: ``(g, h)`` runs from ``s(h)`` to ``t(alpha_g(h))``.

    Composition is ``(g', h')(g, h) = (g'g, alpha_{g^-1}(h') h)``; pairs are
    stored as ``(g, h)``.
    """
    G = as_groupoid(act.G)
    H, phi = act.H, act.phi
    pairs = act.domain()
    index = {p: i for i, p in enumerate(pairs)}
    src = [H.s(h) for _, h in pairs]
    tgt = [H.t(act(g, h)) for g, h in pairs]
    units = tuple(index[(G.id(phi[u]), H.id(u))] for u in range(H.n_objects))

    def product(i, j):
        (g2, h2), (g, h) = pairs[i], pairs[j]
        return index[(G.mul(g2, g), H.mul(act(G.inv(g), h2), h))]

    cat = build_category(H.n_objects, src, tgt, units, product)
    if is_groupoid(cat):
        cat = as_groupoid(cat)
    return SemidirectCategory(cat, tuple(pairs), index, units)


def opposite_action(act: LeftAction) -> LeftAction:
    """The induced action on the opposite of H (same carrier, same table)."""
    return LeftAction(act.G, opposite(act.H), act.phi, act.table)


class PsiIsomorphism(NamedTuple):
    witness: IsoWitness
    domain: SemidirectCategory
    codomain: FiniteCategory  # opposite of gphi_category(act).category
    gphi: SemidirectCategory


def psi_isomorphism(act: LeftAction, variant: str = "category") -> PsiIsomorphism:
    """The comparison map between a semi-direct product and ``G x^phi H``.

    ``variant="category"``: ``(h_bar, g) -> (g^-1, h)`` out of the product of
    the opposite action.  ``variant="groupoid"`` (H a groupoid):
    ``(h, g) -> (g^-1, h^-1)`` out of ``H x_alpha G``.

    Both maps reverse the order of composition, so they are certified as
    isomorphisms onto the opposite of the ``G x^phi H`` category.
    """
    G = as_groupoid(act.G)
    gp = gphi_category(act)
    codomain = opposite(gp.category)
    if variant == "category":
        dom = semidirect_groupoid(opposite_action(act))
        mm = [gp.index[(G.inv(g), h)] for h, g in dom.pairs]
    elif variant == "groupoid":
        H = as_groupoid(act.H)
        dom = semidirect_groupoid(act)
        mm = [gp.index[(G.inv(g), H.inv(h))] for h, g in dom.pairs]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    witness = IsoWitness(tuple(range(act.H.n_objects)), tuple(mm))
    bad = witness.violations(dom.category, codomain)
    if bad:
        raise LawError(bad, "isomorphism")
    return PsiIsomorphism(witness, dom, codomain, gp)


# -- restricted products ----------------------------------------------------


class TildeCategory(NamedTuple):
    category: FiniteCategory
    triples: tuple[tuple[int, int, int], ...]  # morphism -> (u, g, v) with u = alpha_g(v)
    index: dict
    j: tuple[int, ...]  # morphism -> underlying morphism of G


def tilde_category(act: LeftAction) -> TildeCategory:
    """The category on H's objects with arrows ``v -> u`` the ``g`` with ``alpha_g(v) == u``."""
    G, H, phi = act.G, act.H, act.phi
    triples = []
    for (g, k), v in act.table.items():
        if not H.is_unit(k):
            continue
        u = H.unit_object(v)
        if u is None:
            raise ActionError([Violation("unit preservation", (g, k),
                                         f"alpha = {v} is not a unit")])
        triples.append((u, g, H.unit_object(k)))
    triples.sort()
    index = {tr: i for i, tr in enumerate(triples)}
    src = [v for _, _, v in triples]
    tgt = [u for u, _, _ in triples]
    ident = [index[(u, G.id(phi[u]), u)] for u in range(H.n_objects)]

    def product(i, j):
        (u, g, _), (_, g2, w) = triples[i], triples[j]
        key = (u, G.mul(g, g2), w)
        if key not in index:
            raise RuntimeError(f"composite {key} escapes the restricted category")
        return index[key]

    cat = build_category(H.n_objects, src, tgt, ident, product)
    if is_groupoid(G):
        cat = as_groupoid(cat)
    j = tuple(g for _, g, _ in triples)
    bad = functor_violations(cat, G, phi, j)
    if bad:
        raise RuntimeError(f"j is not a functor: {bad[0]}")
    return TildeCategory(cat, tuple(triples), index, j)


class RestrictedProduct(NamedTuple):
    tilde: TildeCategory
    action: LeftAction  # induced action of the restricted category on H, phi = id
    product: SemidirectCategory


def restricted_semidirect(act: LeftAction) -> RestrictedProduct:
    tilde = tilde_category(act)
    H = act.H
    table = {}
    for i, (_, g, v) in enumerate(tilde.triples):
        for h in H.hom(v, v):
            table[(i, h)] = act(g, h)
    induced = LeftAction(tilde.category, H, range(H.n_objects), table)
    return RestrictedProduct(tilde, induced, semidirect_shared_units(induced))


def restricted_embedding(act: LeftAction, restricted: RestrictedProduct,
                         full: SemidirectCategory) -> tuple[int, ...]:
    """The functor ``(h, g~) -> (h, j(g~))`` into the full product, checked injective."""
    j = restricted.tilde.j
    mm = tuple(full.index[(h, j[k])] for h, k in restricted.product.pairs)
    n = act.H.n_objects
    bad = functor_violations(restricted.product.category, full.category, range(n), mm)
    if bad or len(set(mm)) != len(mm):
        raise RuntimeError(f"restricted embedding fails: {bad[:1] or 'not injective'}")
    return mm


def semigroup_bundle_of(h: FiniteCategory) -> Restriction:
    """The wide subcategory of all endomorphisms."""
    return subcategory(h, h.endomorphisms(), range(h.n_objects))


def semigroup_bundle_action(act: LeftAction) -> tuple[LeftAction, Restriction]:
    """The action restricted to the endomorphisms of H."""
    sub = semigroup_bundle_of(act.H)
    new = {old: i for i, old in enumerate(sub.morphisms)}
    table = {}
    for (g, k), v in act.table.items():
        if k in new:
            if v not in new:
                raise ActionError([Violation("endomorphisms", (g, k), f"alpha = {v} is not an endomorphism")])
            table[(g, new[k])] = new[v]
    return LeftAction(act.G, sub.category, act.phi, table), sub


# -- standard examples -----------------------------------------------------


def trivial_action(h: FiniteCategory) -> LeftAction:
    """The trivial one-element group acting on ``h`` by identities."""
    g = group_as_groupoid(cyclic_group(1))
    return LeftAction(g, h, [0] * h.n_objects, {(0, k): k for k in range(h.n_morphisms)})


def unit_only_action(h: FiniteCategory, phi: Sequence[int], n_units: int | None = None) -> LeftAction:
    """A discrete G (units only) acting on ``h``; every unit acts as the identity."""
    phi = [int(x) for x in phi]
    n = n_units if n_units is not None else (max(phi) + 1 if phi else 0)
    g = discrete_category(n)
    table = {(phi[h.s(k)], k): k for k in range(h.n_morphisms) if phi[h.s(k)] == phi[h.t(k)]}
    return LeftAction(g, h, phi, table)


def group_automorphism_action(gamma: FiniteGroup, k: FiniteGroup, theta: Sequence[Sequence[int]]) -> LeftAction:
    """``gamma`` acting on ``k`` by automorphisms; ``theta[g][x]`` is the image of ``x`` under ``g``."""
    table = {(g, x): int(theta[g][x]) for g in range(gamma.order) for x in range(k.order)}
    return LeftAction(group_as_groupoid(gamma), group_as_groupoid(k), [0], table)


def group_action_violations(gamma: FiniteGroup, n: int, beta: Sequence[Sequence[int]]) -> list[Violation]:
    """``beta[g][x]`` is the image of point ``x`` under ``g``."""
    out = _Collector()
    if len(beta) != gamma.order or any(len(row) != n for row in beta):
        raise ValueError("action table must have one row of length n per group element")
    if any(not 0 <= v < n for row in beta for v in row):
        return [Violation("range", (), "image is not a point")]
    for x in range(n):
        if beta[gamma.identity][x] != x:
            out.add("identity acts trivially", (x,))
    for a in range(gamma.order):
        for b in range(gamma.order):
            ab = gamma.mul(a, b)
            for x in range(n):
                if beta[a][beta[b][x]] != beta[ab][x]:
                    out.add("compatibility", (a, b, x))
    return out.violations


class TransformationGroupoid(NamedTuple):
    groupoid: Groupoid
    action: LeftAction
    product: SemidirectCategory


def transformation_groupoid(gamma: FiniteGroup, n: int, beta: Sequence[Sequence[int]]) -> TransformationGroupoid:
    """``X x_beta gamma`` for a group acting on the points ``0..n-1``.

    The points form a discrete category, so morphism ``(x, g)`` runs from
    ``beta_{g^-1}(x)`` to ``x``.
    """
    bad = group_action_violations(gamma, n, beta)
    if bad:
        raise ActionError(bad)
    points = discrete_category(n)
    table = {(g, x): int(beta[g][x]) for g in range(gamma.order) for x in range(n)}
    act = LeftAction(group_as_groupoid(gamma), points, [0] * n, table)
    prod = semidirect_groupoid(act)
    return TransformationGroupoid(as_groupoid(prod.category), act, prod)


class RelationAction(NamedTuple):
    action: LeftAction
    relation: StandardGroupoid


def relation_action(gamma: FiniteGroup, partition: Partition, beta: Sequence[Sequence[int]]) -> RelationAction:
    """A group acting on the groupoid of an equivalence relation through a point action.

    Raises ActionError with a witness ``(g, u, v)`` if some ``u ~ v`` is sent to
    points in different classes.
    """
    n = partition.n_points
    bad = group_action_violations(gamma, n, beta)
    if bad:
        raise ActionError(bad)
    for g in range(gamma.order):
        for cls in partition.classes:
            for u in cls:
                for v in cls:
                    if not partition.same(beta[g][u], beta[g][v]):
                        raise ActionError([Violation("respects relation", (g, u, v),
                                                     f"images {beta[g][u]}, {beta[g][v]} are not related")])
    trivial = cyclic_group(1)
    rel = standard_groupoid(GroupBundle(partition, tuple(trivial for _ in partition.classes)))
    table = {}
    for g in range(gamma.order):
        for i, (x, e, y) in enumerate(rel.triples):
            table[(g, i)] = rel.index[(int(beta[g][x]), e, int(beta[g][y]))]
    act = LeftAction(group_as_groupoid(gamma), rel.groupoid, [0] * n, table)
    return RelationAction(act, rel)


class InnerAction(NamedTuple):
    action: LeftAction
    product: SemidirectCategory
    psi: tuple[int, ...]  # product morphism (h, g) -> hg in G
    kernel: Restriction  # wide subcategory of the product sent to units
    isotropy: Restriction  # endomorphisms of G
    kernel_iso: IsoWitness  # kernel -> isotropy, (h, g) -> g


def inner_action(G: FiniteCategory) -> InnerAction:
    """Conjugation ``alpha_g(h) = g h g^-1`` of a groupoid on itself.

    The comparison map to G sends ``(h, g)`` to ``hg``; its kernel consists of
    the pairs ``(g^-1, g)`` with ``g`` an endomorphism.
    """
    G = as_groupoid(G)
    table = {}
    for g, h in action_domain(G, G, range(G.n_objects)):
        table[(g, h)] = G.chain(g, h, G.inv(g))
    act = LeftAction(G, G, range(G.n_objects), table)
    prod = semidirect_groupoid(act)
    psi = tuple(G.mul(h, g) for h, g in prod.pairs)
    ident = range(G.n_objects)
    bad = functor_violations(prod.category, G, ident, psi)
    if bad:
        raise RuntimeError(f"(h, g) -> hg is not a homomorphism: {bad[0]}")
    kernel = subcategory(prod.category, [i for i, k in enumerate(psi) if G.is_unit(k)], ident)
    isotropy = semigroup_bundle_of(G)
    pos = {old: new for new, old in enumerate(isotropy.morphisms)}
    mm = tuple(pos[prod.pairs[i][1]] for i in kernel.morphisms)
    witness = IsoWitness(tuple(ident), mm)
    bad = witness.violations(kernel.category, isotropy.category)
    if bad:
        raise RuntimeError(f"kernel is not the isotropy bundle: {bad[0]}")
    return InnerAction(act, prod, psi, kernel, isotropy, witness)
