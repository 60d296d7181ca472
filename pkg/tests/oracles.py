"""Independent brute-force reference computations.

Nothing here imports the package under test: every answer is recomputed from
plain lists by exhaustive enumeration.
"""

from __future__ import annotations

import itertools


def s3_permutation_table():
    """S3 as compositions of permutations of (0, 1, 2); entry [i][j] is p_i after p_j."""
    perms = sorted(itertools.permutations(range(3)))
    pos = {p: i for i, p in enumerate(perms)}
    return [[pos[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms]


def cyclic_table(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def klein_table():
    return [[a ^ b for b in range(4)] for a in range(4)]


def is_group(table) -> bool:
    n = len(table)
    r = range(n)
    if any(table[a][b] not in r for a in r for b in r):
        return False
    if any(table[table[a][b]][c] != table[a][table[b][c]] for a in r for b in r for c in r):
        return False
    units = [e for e in r if all(table[e][a] == a == table[a][e] for a in r)]
    if not units:
        return False
    e = units[0]
    return all(any(table[a][b] == e == table[b][a] for b in r) for a in r)


def groups_isomorphic(t1, t2) -> bool:
    n = len(t1)
    if n != len(t2):
        return False
    for p in itertools.permutations(range(n)):
        if all(p[t1[a][b]] == t2[p[a]][p[b]] for a in range(n) for b in range(n)):
            return True
    return False


def is_category(n, src, tgt, ident, comp) -> bool:
    m = len(src)
    for u in range(n):
        if src[ident[u]] != u or tgt[ident[u]] != u:
            return False
    for a in range(m):
        for b in range(m):
            ab = comp[a][b]
            if (src[a] == tgt[b]) != (ab is not None and ab >= 0):
                return False
            if src[a] == tgt[b] and (src[ab] != src[b] or tgt[ab] != tgt[a]):
                return False
        if comp[ident[tgt[a]]][a] != a or comp[a][ident[src[a]]] != a:
            return False
    for a in range(m):
        for b in range(m):
            if src[a] != tgt[b]:
                continue
            for c in range(m):
                if src[b] == tgt[c] and comp[comp[a][b]][c] != comp[a][comp[b][c]]:
                    return False
    return True


def categories_isomorphic(a, b) -> bool:
    """Exhaustive search; a and b are (n, src, tgt, ident, comp) tuples of lists."""
    n, sa, ta, ia, ca = a
    nb, sb, tb, ib, cb = b
    if n != nb or len(sa) != len(sb):
        return False
    for pi in itertools.permutations(range(n)):
        buckets = []
        ok = True
        for x in range(n):
            for y in range(n):
                dom = [h for h in range(len(sa)) if ta[h] == x and sa[h] == y]
                cod = [h for h in range(len(sb)) if tb[h] == pi[x] and sb[h] == pi[y]]
                if len(dom) != len(cod):
                    ok = False
                buckets.append((dom, cod))
        if not ok:
            continue
        for choice in itertools.product(*(itertools.permutations(cod) for _, cod in buckets)):
            f = {}
            for (dom, _), img in zip(buckets, choice):
                f.update(zip(dom, img))
            if all(f[ia[u]] == ib[pi[u]] for u in range(n)) and all(
                f[ca[p][q]] == cb[f[p]][f[q]]
                for p in range(len(sa)) for q in range(len(sa)) if sa[p] == ta[q]
            ):
                return True
    return False


def standard_cardinality(classes, orders) -> int:
    """Count triples (x, g, y) with x, y in one class and g in its group, by enumeration."""
    return sum(1 for cls, k in zip(classes, orders) for _x in cls for _g in range(k) for _y in cls)


def orbits(n, beta):
    """Orbits of a point action by repeated closure."""
    seen, out = set(), []
    for x in range(n):
        if x in seen:
            continue
        orbit, frontier = {x}, [x]
        while frontier:
            y = frontier.pop()
            for row in beta:
                if row[y] not in orbit:
                    orbit.add(row[y])
                    frontier.append(row[y])
        seen |= orbit
        out.append(sorted(orbit))
    return out


def stabilizer(beta, x):
    return [g for g, row in enumerate(beta) if row[x] == x]


def transformation_groupoid_iso_by_brute_force(t1, beta1, t2, beta2) -> bool:
    """Decide isomorphism of X x Gamma and Y x Lambda from their explicit tables."""
    return categories_isomorphic(_transformation_tables(t1, beta1), _transformation_tables(t2, beta2))


def _transformation_tables(table, beta):
    n, order = len(beta[0]), len(table)
    e = next(u for u in range(order) if all(table[u][a] == a for a in range(order)))
    inv = [next(b for b in range(order) if table[a][b] == e) for a in range(order)]
    mors = [(x, g) for x in range(n) for g in range(order)]  # (x, g): beta_{g^-1}(x) -> x
    idx = {m: i for i, m in enumerate(mors)}
    src = [beta[inv[g]][x] for x, g in mors]
    tgt = [x for x, _ in mors]
    ident = [idx[(x, e)] for x in range(n)]
    comp = [[idx[(x, table[g][h])] if src[i] == y else -1 for j, (y, h) in enumerate(mors)]
            for i, (x, g) in enumerate(mors)]
    return (n, src, tgt, ident, comp)
