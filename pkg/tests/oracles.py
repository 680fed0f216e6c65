"""Brute-force references written straight from the definitions.

Nothing here calls into ``ordrep`` except to read plain data (matrices and
value dictionaries), so agreement with the library is meaningful.  Relations
are boolean matrices ``m[i][j]`` meaning ``i ≾ j``; functions are dicts from
index to value with missing keys meaning undefined.
"""

from __future__ import annotations

import itertools
import random


# -- relations --------------------------------------------------------------

def closure(m):
    n = len(m)
    c = [row[:] for row in m]
    for k in range(n):
        for i in range(n):
            if c[i][k]:
                for j in range(n):
                    if c[k][j]:
                        c[i][j] = True
    return c


def reflexive(m):
    return all(m[i][i] for i in range(len(m)))


def transitive(m):
    n = len(m)
    return all(not (m[x][y] and m[y][z]) or m[x][z]
               for x in range(n) for y in range(n) for z in range(n))


def antisymmetric(m):
    n = len(m)
    return all(not (m[x][y] and m[y][x]) or x == y for x in range(n) for y in range(n))


def total(m):
    n = len(m)
    return all(m[x][y] or m[y][x] for x in range(n) for y in range(n))


def is_preorder(m):
    return reflexive(m) and transitive(m)


def is_partial_order(m):
    return is_preorder(m) and antisymmetric(m)


def is_interval_order(m):
    n = len(m)
    r = range(n)
    return reflexive(m) and all(
        not (m[x][z] and m[y][w]) or m[x][w] or m[y][z]
        for x in r for y in r for z in r for w in r)


def is_semiorder(m):
    n = len(m)
    r = range(n)
    return is_interval_order(m) and all(
        not (m[x][y] and m[y][z]) or m[x][w] or m[w][z]
        for x in r for y in r for z in r for w in r)


def strict(m, i, j):
    return m[i][j] and not m[j][i]


def random_relation(rng: random.Random, n: int, p: float = 0.4):
    return [[rng.random() < p for _ in range(n)] for _ in range(n)]


def random_preorder(rng: random.Random, n: int, p: float | None = None):
    p = rng.uniform(0.05, 0.5) if p is None else p
    m = random_relation(rng, n, p)
    for i in range(n):
        m[i][i] = True
    return closure(m)


def random_partial_order(rng: random.Random, n: int, p: float | None = None):
    # edges only forward along a random permutation, so no cycles
    p = rng.uniform(0.1, 0.6) if p is None else p
    perm = list(range(n))
    rng.shuffle(perm)
    m = [[i == j for j in range(n)] for i in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < p:
                m[perm[a]][perm[b]] = True
    return closure(m)


def all_relations(n):
    cells = [(i, j) for i in range(n) for j in range(n)]
    for bitsvec in range(1 << len(cells)):
        m = [[False] * n for _ in range(n)]
        for t, (i, j) in enumerate(cells):
            if bitsvec >> t & 1:
                m[i][j] = True
        yield m


def all_preorders(n):
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bitsvec in range(1 << len(off)):
        m = [[i == j for j in range(n)] for i in range(n)]
        for t, (i, j) in enumerate(off):
            if bitsvec >> t & 1:
                m[i][j] = True
        if transitive(m):
            yield m


def classes(m):
    n = len(m)
    out = []
    seen = set()
    for i in range(n):
        if i not in seen:
            cls = [j for j in range(n) if m[i][j] and m[j][i]]
            seen.update(cls)
            out.append(cls)
    return out


def isolated(m):
    n = len(m)
    return {i for i in range(n) if not any((m[i][j] or m[j][i]) for j in range(n) if j != i)}


def max_antichain(m):
    """Largest set of ∼-classes with no strict pair among them."""
    reps = [c[0] for c in classes(m)]
    best = 0
    for k in range(len(reps), 0, -1):
        for combo in itertools.combinations(reps, k):
            if all(not m[a][b] and not m[b][a] for a, b in itertools.combinations(combo, 2)):
                return k
    return best


# -- representations --------------------------------------------------------

def _common(fns, x, y):
    return [(f[x], f[y]) for f in fns if x in f and y in f]


def total_mu_ok(m, fns):
    n = len(m)
    return all(m[x][y] == all(a <= b for a, b in _common(fns, x, y)) for x in range(n) for y in range(n))


def total_rp_mu_ok(m, fns):
    n = len(m)
    return total_mu_ok(m, fns) and all(
        all(a < b for a, b in _common(fns, x, y))
        for x in range(n) for y in range(n) if strict(m, x, y))


def partial_mu_ok(m, fns):
    n = len(m)
    for x in range(n):
        for y in range(n):
            if x == y:
                if not m[x][x]:
                    return False
                continue
            common = _common(fns, x, y)
            claim = any(a <= b for a, b in common) and all(a <= b for a, b in common)
            if claim != m[x][y]:
                return False
    return True


def partial_rp_mu_ok(m, fns):
    if not partial_mu_ok(m, fns):
        return False
    n = len(m)
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            common = _common(fns, x, y)
            claim = any(a < b for a, b in common) and all(a < b for a, b in common)
            if claim != strict(m, x, y):
                return False
    return True


def ss_ok(m, u):
    n = len(m)
    return all(m[x][y] == (u[x] <= u[y] + 1) for x in range(n) for y in range(n))


def partial_ss_ok(m, fns, rp=False):
    n = len(m)
    for x in range(n):
        for y in range(n):
            common = _common(fns, x, y)
            if x == y:
                if not m[x][x]:
                    return False
            else:
                claim = any(a <= b + 1 for a, b in common) and all(a <= b + 1 for a, b in common)
                if claim != m[x][y]:
                    return False
            if rp:
                claim = any(a + 1 < b for a, b in common) and all(a + 1 < b for a, b in common)
            else:
                claim = any(a + 1 < b for a, b in common) and all(a <= b + 1 for a, b in common)
            if claim != strict(m, x, y):
                return False
    return True


def is_labeling(m, labels):
    n = len(m)
    if sorted(labels) != list(range(1, n + 1)):
        return False
    return all(labels[x] < labels[y] for x in range(n) for y in range(n) if strict(m, x, y))


def count_linear_extensions(m):
    n = len(m)
    return sum(is_labeling(m, perm) for perm in itertools.permutations(range(1, n + 1)))


# -- minimum family sizes ---------------------------------------------------

def class_chains(m):
    """Every set of ≥2 classes that is totally ordered by ≺, as class-index tuples."""
    reps = [c[0] for c in classes(m)]
    k = len(reps)
    out = []
    for size in range(2, k + 1):
        for combo in itertools.combinations(range(k), size):
            if all(strict(m, reps[a], reps[b]) or strict(m, reps[b], reps[a])
                   for a, b in itertools.combinations(combo, 2)):
                out.append(combo)
    return out


def min_chain_cover(m):
    """Fewest chains of classes covering every strictly comparable class pair."""
    reps = [c[0] for c in classes(m)]
    k = len(reps)
    pairs = {(a, b) for a in range(k) for b in range(k) if strict(m, reps[a], reps[b])}
    if not pairs:
        return 0
    chains = class_chains(m)
    covered = [{(a, b) for a in c for b in c if strict(m, reps[a], reps[b])} for c in chains]
    for size in range(1, len(pairs) + 1):
        for combo in itertools.combinations(range(len(chains)), size):
            if set().union(*(covered[c] for c in combo)) == pairs:
                return size
    raise AssertionError("unreachable")


def weak_orders(items):
    """Every ranking of ``items`` (ordered set partition) as a dict item -> rank."""
    items = list(items)
    if not items:
        yield {}
        return
    n = len(items)
    for ranks in itertools.product(range(n), repeat=n):
        used = sorted(set(ranks))
        if used == list(range(len(used))):
            yield dict(zip(items, ranks))


def min_total_rp_family(m, max_size=4):
    """Fewest total functions forming a Richter-Peleg multi-utility (None beyond max_size)."""
    n = len(m)
    cands = [w for w in weak_orders(range(n))
             if all((not m[x][y] or w[x] <= w[y]) and (not strict(m, x, y) or w[x] < w[y])
                    for x in range(n) for y in range(n))]
    for size in range(0, max_size + 1):
        for combo in itertools.combinations(cands, size):
            if total_rp_mu_ok(m, list(combo)):
                return size
    return None


def min_partial_rp_family(m, max_size=3):
    """Fewest arbitrary partial functions forming a partial RP multi-utility."""
    n = len(m)
    cands = []
    for size in range(1, n + 1):
        for dom in itertools.combinations(range(n), size):
            for w in weak_orders(dom):
                if all((not m[x][y] or w[x] <= w[y]) and (not strict(m, x, y) or w[x] < w[y])
                       for x in dom for y in dom):
                    cands.append(w)
    for size in range(0, max_size + 1):
        for combo in itertools.combinations(cands, size):
            if partial_rp_mu_ok(m, list(combo)):
                return size
    return None


# -- topology ---------------------------------------------------------------

def upsets(m):
    n = len(m)
    out = []
    for mask in range(1 << n):
        s = {i for i in range(n) if mask >> i & 1}
        if all(j in s for i in s for j in range(n) if m[i][j]):
            out.append(frozenset(s))
    return out


def continuous(f: dict, opens, codomain_opens=None):
    """Preimage of every open is open in the subspace on ``dom f``.

    Without a codomain topology the values sit in the real line, where every
    subset of a finite image is relatively open.
    """
    dom = frozenset(f)
    sub = {frozenset(o) & dom for o in opens}
    if codomain_opens is None:
        image = sorted(set(f.values()))
        targets = [set(c) for k in range(len(image) + 1) for c in itertools.combinations(image, k)]
    else:
        targets = [set(o) for o in codomain_opens]
    return all(frozenset(x for x in dom if f[x] in t) in sub for t in targets)
