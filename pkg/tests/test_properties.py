"""Law-level properties over generated structures."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import groups_isomorphic, standard_cardinality
from smallcat import (
    FiniteGroup,
    GroupBundle,
    Partition,
    action_violations,
    bundle_from_groupoid,
    document_from,
    find_isomorphism,
    group_isomorphic,
    groupoid_form_violations,
    invert,
    opposite,
    parse_documents,
    emit_documents,
    relabel,
    semidirect_groupoid,
    standard_groupoid,
    standardization_iso,
)
from smallcat.generators import random_groupoid, random_groupoid_action, small_groups

GROUPS = small_groups(6)
seeds = st.integers(0, 2**32 - 1)


@st.composite
def bundles(draw):
    n = draw(st.integers(1, 6))
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    classes: dict = {}
    for x, lab in enumerate(labels):
        classes.setdefault(lab, []).append(x)
    part = Partition(n, tuple(tuple(c) for c in classes.values()))
    fibers = tuple(GROUPS[draw(st.integers(0, len(GROUPS) - 1))] for _ in part.classes)
    return GroupBundle(part, fibers)


@settings(max_examples=60, deadline=None)
@given(bundles())
def test_standard_cardinality_and_round_trip(b):
    std = standard_groupoid(b)
    assert std.groupoid.n_morphisms == standard_cardinality(b.partition.classes, [f.order for f in b.fibers])
    dec = bundle_from_groupoid(std.groupoid)
    assert dec.bundle.partition == b.partition
    assert all(group_isomorphic(f, g) for f, g in zip(dec.bundle.fibers, b.fibers))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_standardization_is_an_isomorphism(seed):
    h = random_groupoid(np.random.default_rng(seed))
    dec = bundle_from_groupoid(h)
    assert standardization_iso(h, dec).violations(h, standard_groupoid(dec.bundle).groupoid) == []


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_inverse_and_opposite_involutions(seed):
    g = random_groupoid(np.random.default_rng(seed), max_morphisms=40)
    assert all(invert(g, invert(g, h)) == h for h in range(g.n_morphisms))
    assert opposite(opposite(g)) == g


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(GROUPS), st.randoms(use_true_random=False))
def test_group_isomorphism_survives_relabelling(g, rnd):
    p = list(range(g.order))
    rnd.shuffle(p)
    p = np.array(p)
    inv = np.argsort(p)
    h = FiniteGroup(p[g.table[inv][:, inv]])
    w = group_isomorphic(g, h)
    assert w is not None
    assert all(w.morphism_map[g.mul(a, b)] == h.mul(w.morphism_map[a], w.morphism_map[b])
               for a in range(g.order) for b in range(g.order))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(GROUPS), st.sampled_from(GROUPS))
def test_group_isomorphism_matches_brute_force(a, b):
    assert (group_isomorphic(a, b) is not None) == groups_isomorphic(a.table.tolist(), b.table.tolist())


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_action_forms_agree_and_mutants_fail(seed):
    rng = np.random.default_rng(seed)
    act = random_groupoid_action(rng)
    assert action_violations(act.G, act.H, act.phi, act.table) == []
    assert groupoid_form_violations(act.G, act.H, act.phi, act.table) == []
    keys = sorted(act.table)
    key = keys[int(rng.integers(len(keys)))]
    choices = [v for v in range(act.H.n_morphisms) if v != act.table[key]]
    if not choices:
        return
    mutant = dict(act.table)
    mutant[key] = choices[int(rng.integers(len(choices)))]
    general = action_violations(act.G, act.H, act.phi, mutant)
    assert general and all(v.witness for v in general)
    assert groupoid_form_violations(act.G, act.H, act.phi, mutant)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_semidirect_of_relabelled_action_is_isomorphic(seed):
    rng = np.random.default_rng(seed)
    act = random_groupoid_action(rng)
    prod = semidirect_groupoid(act).category
    moved = relabel(prod, rng.permutation(prod.n_objects), rng.permutation(prod.n_morphisms))
    find_isomorphism(prod, moved).verify(prod, moved)


@settings(max_examples=25, deadline=None)
@given(bundles())
def test_documents_round_trip(b):
    docs = [document_from(b, "b"), document_from(standard_groupoid(b).groupoid, "g")]
    assert parse_documents(emit_documents(docs)) == docs
