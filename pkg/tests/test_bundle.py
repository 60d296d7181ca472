import itertools

import numpy as np
import pytest

from oracles import cyclic_table, groups_isomorphic, is_group, klein_table, s3_permutation_table, standard_cardinality
from smallcat import (
    GREATEST_INDEX,
    LEAST_INDEX,
    FiniteGroup,
    GroupBundle,
    GroupError,
    Partition,
    bundle_from_groupoid,
    cyclic_group,
    direct_product,
    find_isomorphism,
    group_as_groupoid,
    group_isomorphic,
    isotropy_group,
    pair_groupoid,
    standard_groupoid,
    standardization_iso,
    symmetric_group,
    validate_group,
)
from smallcat.bundle import random_policy
from smallcat.core import build_category
from smallcat.generators import klein_group, random_bundle, random_groupoid, small_groups


def test_trivial_and_cyclic_groups():
    z1 = validate_group([[0]])
    assert z1.order == 1 and z1.identity == 0
    z3 = validate_group(cyclic_table(3))
    assert z3.inv(1) == 2
    assert is_group(cyclic_table(3))


def test_zero_monoid_table_is_not_a_group():
    with pytest.raises(GroupError) as exc:
        validate_group([[0, 1], [1, 1]])
    assert [v.witness for v in exc.value.violations if v.law == "inverse"] == [(1,)]
    assert not is_group([[0, 1], [1, 1]])


def test_non_associative_table_rejected():
    # a Latin square with identity that is not associative
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    assert not is_group(t)
    with pytest.raises(GroupError) as exc:
        validate_group(t)
    a, b, c = next(v.witness for v in exc.value.violations if v.law == "associativity")
    assert t[t[a][b]][c] != t[a][t[b][c]]


def test_symmetric_group_matches_permutation_oracle():
    assert symmetric_group(3) == FiniteGroup(s3_permutation_table())


def test_group_isomorphic_examples():
    z2 = cyclic_group(2)
    w = group_isomorphic(z2, z2)
    assert w.morphism_map == (0, 1)
    assert group_isomorphic(cyclic_group(4), klein_group()) is None
    assert not groups_isomorphic(cyclic_table(4), klein_table())
    assert group_isomorphic(symmetric_group(3), cyclic_group(6)) is None
    assert symmetric_group(3).is_abelian() is False and cyclic_group(6).is_abelian()
    assert group_isomorphic(direct_product(cyclic_group(2), cyclic_group(3)), cyclic_group(6)) is not None


def test_group_isomorphic_agrees_with_brute_force():
    groups = small_groups(6)
    for a, b in itertools.product(groups, repeat=2):
        w = group_isomorphic(a, b)
        assert (w is not None) == groups_isomorphic(a.table.tolist(), b.table.tolist())
        if w is not None:
            w.verify(group_as_groupoid(a), group_as_groupoid(b))


def test_group_isomorphic_on_scrambled_tables():
    rng = np.random.default_rng(2)
    for g in small_groups(6):
        p = rng.permutation(g.order)
        inv = np.argsort(p)
        t = p[g.table[inv][:, inv]]
        assert group_isomorphic(g, FiniteGroup(t)) is not None


def test_standard_groupoid_single_point():
    std = standard_groupoid(GroupBundle(Partition(1, ((0,),)), (cyclic_group(2),)))
    assert std.groupoid.n_morphisms == 2
    assert find_isomorphism(std.groupoid, group_as_groupoid(cyclic_group(2))) is not None


def test_standard_groupoid_pair():
    std = standard_groupoid(GroupBundle(Partition(2, ((0, 1),)), (cyclic_group(1),)))
    assert std.groupoid.n_morphisms == 4
    assert find_isomorphism(std.groupoid, pair_groupoid(2)) is not None


def test_standard_groupoid_eleven():
    b = GroupBundle(Partition(3, ((0, 1), (2,))), (cyclic_group(2), cyclic_group(3)))
    assert standard_groupoid(b).groupoid.n_morphisms == 11 == standard_cardinality([(0, 1), (2,)], [2, 3])


def test_standard_triples_compose_by_formula():
    b = GroupBundle(Partition(3, ((0, 2), (1,))), (symmetric_group(3), cyclic_group(2)))
    std = standard_groupoid(b)
    g = std.groupoid
    for i, (x, a, y) in enumerate(std.triples):
        for j, (y2, c, z) in enumerate(std.triples):
            if y2 == y:
                assert std.triples[g.mul(i, j)] == (x, b.fiber_of(x).mul(a, c), z)


def test_bundle_from_disjoint_groups():
    s3 = group_as_groupoid(symmetric_group(3))
    z2 = group_as_groupoid(cyclic_group(2))
    # disjoint union of two one-object groupoids
    src = [0] * 6 + [1] * 2
    ident = [0, 6]

    def product(i, j):
        if i < 6:
            return int(s3.mul(i, j))
        return 6 + int(z2.mul(i - 6, j - 6))

    union = build_category(2, src, src, ident, product)
    dec = bundle_from_groupoid(union)
    assert dec.bundle.partition.classes == ((0,), (1,))
    assert [f.order for f in dec.bundle.fibers] == [6, 2]
    assert dec.connectors == (0, 6)


def test_bundle_from_pair_groupoid():
    dec = bundle_from_groupoid(pair_groupoid(2))
    assert dec.bundle.partition.classes == ((0, 1),)
    assert dec.bundle.fibers[0].order == 1
    assert dec.representatives == (0,)


def test_bundle_round_trip_from_standard():
    rng = np.random.default_rng(17)
    for _ in range(30):
        b = random_bundle(rng)
        dec = bundle_from_groupoid(standard_groupoid(b).groupoid)
        assert dec.bundle.partition == b.partition
        for f, g in zip(dec.bundle.fibers, b.fibers):
            assert group_isomorphic(f, g) is not None


def test_standardization_of_a_group_is_the_evident_map():
    g = group_as_groupoid(symmetric_group(3))
    dec = bundle_from_groupoid(g)
    w = standardization_iso(g, dec)
    std = standard_groupoid(dec.bundle)
    assert [std.triples[k] for k in w.morphism_map] == [(0, h, 0) for h in range(6)]


def test_standardization_of_pair_groupoid_checked_on_all_pairs():
    h = pair_groupoid(2)
    dec = bundle_from_groupoid(h)
    w = standardization_iso(h, dec)
    std = standard_groupoid(dec.bundle).groupoid
    pairs = [(a, b) for a in range(4) for b in range(4) if h.composable(a, b)]
    assert len(pairs) == 8
    for a, b in pairs:
        assert w.morphism_map[h.mul(a, b)] == std.mul(w.morphism_map[a], w.morphism_map[b])
    assert sorted(w.morphism_map) == [0, 1, 2, 3]


def test_standardization_random():
    rng = np.random.default_rng(19)
    for _ in range(20):
        h = random_groupoid(rng)
        dec = bundle_from_groupoid(h, random_policy(rng))
        w = standardization_iso(h, dec)
        assert w.violations(h, standard_groupoid(dec.bundle).groupoid) == []


def test_choice_policies_give_isomorphic_standard_groupoids():
    rng = np.random.default_rng(23)
    for _ in range(10):
        h = random_groupoid(rng, max_morphisms=40)
        a = bundle_from_groupoid(h, LEAST_INDEX)
        b = bundle_from_groupoid(h, GREATEST_INDEX)
        sa = standard_groupoid(a.bundle).groupoid
        sb = standard_groupoid(b.bundle).groupoid
        wa = standardization_iso(h, a)
        wb = standardization_iso(h, b)
        wa.inverse().then(wb).verify(sa, sb)


def test_isotropy_group_of_pair_groupoid_is_trivial():
    g, els = isotropy_group(pair_groupoid(3), 1)
    assert g.order == 1 and els == (pair_groupoid(3).id(1),)


def test_bundle_needs_one_fiber_per_class():
    with pytest.raises(ValueError):
        GroupBundle(Partition(2, ((0,), (1,))), (cyclic_group(2),))
