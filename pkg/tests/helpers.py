"""Shared test utilities: random model generators and independent oracles.

Random divisor configurations come from a token model: divisors are subsets
of a finite connected graph and stratum components are genuine connected
components of induced subgraphs, so the component maps are containment maps
and compose consistently by construction.
"""

import random
from fractions import Fraction
from itertools import combinations

from logcy.stratum import DivisorConfiguration
from logcy.trees import LogPssTree, TreeEdge


def _connected_components(tokens, edges):
    tokens = set(tokens)
    comps = []
    remaining = set(tokens)
    while remaining:
        start = min(remaining)
        seen = {start}
        frontier = [start]
        while frontier:
            t = frontier.pop()
            for e in edges:
                if t in e:
                    other = next(iter(e - {t}))
                    if other in tokens and other not in seen:
                        seen.add(other)
                        frontier.append(other)
        comps.append(frozenset(seen))
        remaining -= seen
    return sorted(comps, key=min)


def random_configuration(rng: random.Random, k_max=4, comp_max=2, cy_prob=0.5,
                         basis_cap=None, mult_bound=2):
    """Random configuration with consistent component maps.

    basis_cap, when given, redraws until the basis with entries <= mult_bound
    has at most that many elements.
    """
    while True:
        k = rng.randint(1, k_max)
        n_tokens = rng.randint(3, 8)
        tokens = list(range(n_tokens))
        edges = set()
        order = tokens[:]
        rng.shuffle(order)
        for i in range(1, n_tokens):
            edges.add(frozenset((order[i], rng.choice(order[:i]))))
        for _ in range(rng.randint(0, n_tokens)):
            a, b = rng.sample(tokens, 2)
            edges.add(frozenset((a, b)))
        divisors = {i: frozenset(t for t in tokens if rng.random() < 0.55)
                    for i in range(1, k + 1)}

        comp_sets = {}
        ok = True
        for size in range(k + 1):
            for index in combinations(range(1, k + 1), size):
                index = frozenset(index)
                cell = set(tokens)
                for i in index:
                    cell &= divisors[i]
                comps = _connected_components(cell, edges)
                if len(comps) > comp_max:
                    ok = False
                    break
                comp_sets[index] = comps
            if not ok:
                break
        if not ok:
            continue

        if rng.random() < cy_prob:
            a = [Fraction(1)] * k
        else:
            choices = [Fraction(1), Fraction(1), Fraction(1, 2), Fraction(0), Fraction(2)]
            a = [rng.choice(choices) for _ in range(k)]
        kappa = [rng.choice([Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3)])
                 for _ in range(k)]

        strata = {index: tuple(range(len(comps))) for index, comps in comp_sets.items()}
        maps = {}
        for index, comps in comp_sets.items():
            if not comps:
                continue
            for i in index:
                sub = index - {i}
                assign = {}
                for cid, cset in enumerate(comps):
                    target = next(tid for tid, tset in enumerate(comp_sets[sub])
                                  if cset <= tset)
                    assign[cid] = target
                maps[(index, sub)] = assign
        config = DivisorConfiguration(k, kappa, a, strata, maps)
        if basis_cap is not None:
            size = _basis_size(config, mult_bound)
            if size > basis_cap:
                continue
        return config


def _basis_size(config, mult_bound):
    from itertools import product
    total = 0
    for vec in product(range(mult_bound + 1), repeat=config.k):
        if config.in_basis(vec):
            total += len(config.components(DivisorConfiguration.support(vec)))
    return total


def basis_elements(config, mult_bound=2):
    """All theta basis symbols with entries bounded by mult_bound."""
    from itertools import product

    from logcy.sr_algebra import ThetaBasisElement
    out = []
    for vec in product(range(mult_bound + 1), repeat=config.k):
        if config.in_basis(vec):
            for comp in config.components(DivisorConfiguration.support(vec)):
                out.append(ThetaBasisElement(config, vec, comp))
    return out


def random_downward_closed(rng: random.Random, k: int):
    """Random downward-closed family of subsets of {1..k} containing the empty set."""
    faces = {frozenset()}
    candidates = [frozenset(c) for size in range(1, k + 1)
                  for c in combinations(range(1, k + 1), size)]
    rng.shuffle(candidates)
    for cand in candidates:
        if all(cand - {v} in faces for v in cand) and rng.random() < 0.6:
            faces.add(cand)
    return faces


def random_tree(rng: random.Random, k_max=3, max_vertices=6):
    """Random valid contact tree (vertex 0 is the root)."""
    k = rng.randint(1, k_max)
    n = rng.randint(1, max_vertices)
    depths = {0: frozenset()}
    parent = {}
    if n >= 2:
        parent[1] = 0
        for v in range(2, n):
            parent[v] = rng.randint(1, v - 1)
    for v in range(1, n):
        depths[v] = frozenset(i for i in range(1, k + 1) if rng.random() < 0.6)
    edges = []
    for v in range(1, n):
        p = parent[v]
        depth_e = depths[v] | depths[p]
        contact = [0] * k
        for i in depth_e:
            contact[i - 1] = rng.randint(-2, 2)
        edges.append(TreeEdge(v, p, depth_e, tuple(contact)))
    leg_vertex = rng.randrange(n)
    tree = LogPssTree(k, depths, edges, root=0, legs=[(leg_vertex, None)],
                      deg_x0=rng.randint(-2, 6))
    assert tree.validate() == []
    return tree


def smith_diagonal(matrix):
    """Diagonal of the Smith normal form of an integer matrix (nonzero part)."""
    if not matrix or not matrix[0]:
        return []
    a = [list(row) for row in matrix]
    rows, cols = len(a), len(a[0])
    diag = []
    top = 0
    left = 0
    while top < rows and left < cols:
        # find a nonzero pivot
        pivot = None
        for i in range(top, rows):
            for j in range(left, cols):
                if a[i][j] != 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        a[top], a[i] = a[i], a[top]
        for row in a:
            row[left], row[j] = row[j], row[left]
        while True:
            # reduce column
            changed = False
            for i in range(top + 1, rows):
                if a[i][left]:
                    q = a[i][left] // a[top][left]
                    a[i] = [x - q * y for x, y in zip(a[i], a[top])]
                    if a[i][left]:
                        a[top], a[i] = a[i], a[top]
                        changed = True
            for j in range(left + 1, cols):
                if a[top][j]:
                    q = a[top][j] // a[top][left]
                    for row in a:
                        row[j] -= q * row[left]
                    if a[top][j]:
                        for row in a:
                            row[left], row[j] = row[j], row[left]
                        changed = True
            if not changed:
                break
        diag.append(abs(a[top][left]))
        top += 1
        left += 1
    return [d for d in diag if d != 0]
