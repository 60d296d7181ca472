import numpy as np
import pytest

from oracles import categories_isomorphic, is_category
from smallcat import (
    CategoryError,
    FiniteCategory,
    GroupBundle,
    Groupoid,
    IsoWitness,
    NotAGroupoidError,
    Partition,
    as_groupoid,
    category_violations,
    cyclic_group,
    discrete_category,
    find_isomorphism,
    full_subcategory,
    group_as_groupoid,
    invert,
    is_groupoid,
    opposite,
    pair_groupoid,
    reachability_classes,
    relabel,
    standard_groupoid,
    symmetric_group,
)
from smallcat.core import LawError, UnionFind, functor_violations
from smallcat.generators import arrow_category, random_category, random_groupoid, zero_monoid


def _lists(c):
    comp = [[None if v < 0 else v for v in row] for row in c.compose.tolist()]
    return c.n_objects, c.source.tolist(), c.target.tolist(), c.identity.tolist(), comp


def test_terminal_category():
    c = FiniteCategory(1, [0], [0], [0], [[0]])
    assert c.n_morphisms == 1 and c.mul(0, 0) == 0


def test_discrete_category_is_valid():
    c = FiniteCategory(2, [0, 1], [0, 1], [0, 1], [[0, -1], [-1, 1]])
    assert c.hom(0, 1) == () and c.hom(1, 0) == ()


def test_corrupt_source_of_composite_is_reported():
    # pair groupoid over {a, b} with trivial fiber, built then corrupted
    g = standard_groupoid(GroupBundle(Partition(2, ((0, 1),)), (cyclic_group(1),))).groupoid
    assert category_violations(*g.tables().values()) == []
    comp = g.compose.copy()
    # find h, k composable with hk landing on a morphism of a different source
    h, k = next((h, k) for h in range(4) for k in range(4) if comp[h, k] >= 0)
    wrong = next(x for x in range(4) if g.s(x) != g.s(k) and g.t(x) == g.t(h))
    comp[h, k] = wrong
    bad = category_violations(g.n_objects, g.source, g.target, g.identity, comp)
    laws = {v.law: v.witness for v in bad}
    assert laws["source(hh') = source(h')"] == (h, k)
    with pytest.raises(CategoryError) as exc:
        FiniteCategory(g.n_objects, g.source, g.target, g.identity, comp)
    assert any(v.witness == (h, k) for v in exc.value.violations)


def test_size_mismatch_is_malformed():
    with pytest.raises(ValueError):
        category_violations(1, [0], [0, 0], [0], [[0]])
    with pytest.raises(ValueError):
        category_violations(2, [0], [0], [0], [[0]])


@pytest.mark.parametrize("bad", [
    dict(compose=[[0, 1], [1, -1]]),  # composable pair left undefined
    dict(compose=[[1, 0], [0, 1]]),  # declared identity is not a unit
    dict(identity=[1]),
    dict(source=[0, 3]),
])
def test_broken_tables_rejected(bad):
    tables = dict(n=1, source=[0, 0], target=[0, 0], identity=[0], compose=[[0, 1], [1, 0]])
    tables.update(bad)
    args = (tables["n"], tables["source"], tables["target"], tables["identity"], tables["compose"])
    assert category_violations(*args)
    with pytest.raises(CategoryError):
        FiniteCategory(*args)


def test_associativity_failure_has_witness():
    # {e, a, b} with ab = e but (aa)b != a(ab)
    comp = [[0, 1, 2], [1, 1, 0], [2, 0, 2]]
    bad = category_violations(1, [0] * 3, [0] * 3, [0], comp)
    assoc = [v for v in bad if v.law == "associativity"]
    assert assoc
    a, b, c = assoc[0].witness
    assert comp[comp[a][b]][c] != comp[a][comp[b][c]]


def test_random_categories_agree_with_brute_force():
    rng = np.random.default_rng(3)
    for _ in range(25):
        c = random_category(rng)
        assert is_category(*_lists(c))


def test_hom_sets():
    d = discrete_category(3)
    assert d.hom(0, 1) == ()
    for c in (d, arrow_category(), pair_groupoid(3)):
        for x in range(c.n_objects):
            assert c.id(x) in c.hom(x, x)
    std = standard_groupoid(GroupBundle(Partition(2, ((0, 1),)), (cyclic_group(2),)))
    expected = {std.index[(0, g, 1)] for g in range(2)}
    assert set(std.groupoid.hom(0, 1)) == expected and len(expected) == 2


def test_discrete_is_groupoid_with_identity_inverse():
    g = as_groupoid(discrete_category(4))
    assert g.inverse.tolist() == list(range(4))


def test_zero_monoid_refused_citing_zero():
    z = zero_monoid()
    with pytest.raises(NotAGroupoidError) as exc:
        as_groupoid(z)
    zero = next(h for h in range(2) if not z.is_unit(h))
    assert exc.value.morphism == zero
    assert not is_groupoid(z)


def test_standard_inverse_formula():
    b = GroupBundle(Partition(3, ((0, 2), (1,))), (symmetric_group(3), cyclic_group(3)))
    std = standard_groupoid(b)
    for i, (x, g, y) in enumerate(std.triples):
        assert std.triples[invert(std.groupoid, i)] == (y, b.fiber_of(x).inv(g), x)
    for u in range(3):
        assert invert(std.groupoid, std.groupoid.id(u)) == std.groupoid.id(u)


def test_invert_is_involution_on_random_groupoids():
    rng = np.random.default_rng(5)
    for _ in range(20):
        g = random_groupoid(rng, max_morphisms=40)
        for h in range(g.n_morphisms):
            k = invert(g, h)
            assert invert(g, k) == h
            assert g.mul(h, k) == g.id(g.t(h)) and g.mul(k, h) == g.id(g.s(h))


def test_groupoid_rejects_wrong_inverse():
    g = group_as_groupoid(cyclic_group(3))
    with pytest.raises(LawError):
        Groupoid(1, g.source, g.target, g.identity, g.compose, [0, 1, 2])


def test_opposite():
    rng = np.random.default_rng(7)
    for _ in range(10):
        c = random_category(rng)
        assert opposite(opposite(c)) == c
        g = random_groupoid(rng, max_morphisms=30)
        op = opposite(g)
        assert is_groupoid(op) and isinstance(op, Groupoid)
        assert op.inverse.tolist() == g.inverse.tolist()
    d = discrete_category(3)
    assert opposite(d) == d


def test_opposite_reverses_composition():
    a = arrow_category()
    op = opposite(a)
    f = next(h for h in range(3) if not a.is_unit(h))
    assert (op.s(f), op.t(f)) == (a.t(f), a.s(f))


def test_reachability():
    r = reachability_classes(discrete_category(3))
    assert r.partition.classes == ((0,), (1,), (2,))
    assert reachability_classes(pair_groupoid(3)).partition.classes == ((0, 1, 2),)
    r = reachability_classes(arrow_category())
    assert r.partition.classes == ((0, 1),)
    assert not r.symmetric
    assert r.relation.sum() == 3


def test_reachability_closure_matches_union_find_oracle():
    rng = np.random.default_rng(11)
    for _ in range(15):
        c = random_category(rng)
        sizes = c.hom_sizes()
        n = c.n_objects
        # transitive closure of the symmetrised relation by Warshall
        reach = [[bool(sizes[x, y] or sizes[y, x]) or x == y for y in range(n)] for x in range(n)]
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    reach[i][j] = reach[i][j] or (reach[i][k] and reach[k][j])
        part = reachability_classes(c).partition
        for x in range(n):
            for y in range(n):
                assert part.same(x, y) == reach[x][y]


def test_full_subcategory():
    c = pair_groupoid(3)
    whole = full_subcategory(c, range(3))
    assert whole.category == c
    empty = full_subcategory(c, [])
    assert empty.category.n_objects == 0 and empty.category.n_morphisms == 0
    b = GroupBundle(Partition(3, ((0, 1, 2),)), (symmetric_group(3),))
    std = standard_groupoid(b).groupoid
    single = full_subcategory(std, [1])
    assert find_isomorphism(single.category, group_as_groupoid(symmetric_group(3))) is not None


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition(3, ((0, 1), (1, 2)))
    with pytest.raises(ValueError):
        Partition(3, ((0, 1),))
    assert Partition(4, ((3, 1), (0,), (2,))).classes == ((0,), (1, 3), (2,))


def test_union_find():
    uf = UnionFind(5)
    uf.union(0, 3)
    uf.union(3, 4)
    assert uf.find(4) == uf.find(0) and uf.find(1) != uf.find(0)


def test_iso_witness_checks():
    g = pair_groupoid(2)
    ident = IsoWitness.identity(g)
    assert ident.verify(g, g) is ident
    swap = IsoWitness((1, 0), tuple(range(4)))
    assert swap.violations(g, g)
    w = find_isomorphism(g, relabel(g, [1, 0], [3, 2, 1, 0]))
    assert w.inverse().verify(relabel(g, [1, 0], [3, 2, 1, 0]), g)
    assert w.then(w.inverse()).morphism_map == tuple(range(4))


def test_functor_violations_detects_broken_composition():
    z3 = group_as_groupoid(cyclic_group(3))
    assert functor_violations(z3, z3, [0], [0, 2, 1]) == []
    assert functor_violations(z3, z3, [0], [0, 1, 1])


def test_relabel_matches_brute_force_iso():
    rng = np.random.default_rng(13)
    for _ in range(5):
        c = random_category(rng)
        if c.n_morphisms > 6:
            continue
        op = rng.permutation(c.n_objects)
        mp = rng.permutation(c.n_morphisms)
        d = relabel(c, op, mp)
        assert categories_isomorphic(_lists(c), _lists(d))
