"""Brute-force reference computations used only by the tests.

Nothing here calls into the library's algorithms; maps are plain tuples and
everything is done by direct enumeration from the definitions.
"""

import itertools


def comp(f, g):
    # apply f, then g
    return tuple(g[v] for v in f)


def all_maps(n):
    return list(itertools.product(range(n), repeat=n))


def closure(gens, n):
    """Fixed-point iteration: keep multiplying until nothing new appears."""
    elems = {tuple(range(n))}
    while True:
        new = {comp(a, g) for a in elems for g in gens} | {comp(g, a) for a in elems for g in gens}
        if new <= elems:
            return elems
        elems |= new


def units(elems):
    n = len(next(iter(elems)))
    one = tuple(range(n))
    return {a for a in elems if any(comp(a, b) == one == comp(b, a) for b in elems)}


def is_subgroup(sub, one):
    return one in sub and all(comp(a, b) in sub for a in sub for b in sub)


def inverse(g):
    inv = [0] * len(g)
    for x, y in enumerate(g):
        inv[y] = x
    return tuple(inv)


def normal_subgroups(group):
    """Every normal subgroup of a permutation group, by scanning all subsets."""
    group = sorted(group)
    one = tuple(range(len(group[0])))
    rest = [g for g in group if g != one]
    out = []
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            sub = set(combo) | {one}
            if len(group) % len(sub):
                continue
            if not is_subgroup(sub, one):
                continue
            if all(comp(comp(inverse(h), s), h) in sub for s in sub for h in group):
                out.append(frozenset(sub))
    return out


def composition_orders(group):
    """Composition factor orders by peeling a largest proper normal subgroup."""
    group = set(group)
    if len(group) == 1:
        return []
    proper = [n for n in normal_subgroups(group) if len(n) < len(group)]
    big = max(proper, key=len)
    return sorted([len(group) // len(big)] + composition_orders(big))


def is_simple_group(group):
    return len(group) > 1 and len(normal_subgroups(group)) == 2


def mult_table(elems):
    elems = list(elems)
    pos = {e: i for i, e in enumerate(elems)}
    return [[pos[comp(a, b)] for b in elems] for a in elems]


def isomorphic(t1, t2):
    """Search all bijections for a multiplication-table isomorphism."""
    k = len(t1)
    if k != len(t2):
        return None
    for perm in itertools.permutations(range(k)):
        if all(perm[t1[i][j]] == t2[perm[i]][perm[j]] for i in range(k) for j in range(k)):
            return perm
    return None


def local_divisor_table(elems, c):
    """Carrier cMc u {c} and its product mc o cn = mcn, straight from the definition."""
    elems = list(elems)
    carrier = {comp(comp(c, m), c) for m in elems} | {c}
    carrier = sorted(carrier)
    table = {}
    for e1 in carrier:
        for e2 in carrier:
            ms = [m for m in elems if comp(m, c) == e1]
            ns = [n for n in elems if comp(c, n) == e2]
            results = {comp(comp(m, c), n) for m in ms for n in ns}
            table[e1, e2] = results
    return carrier, table


def wreath_act2(x, y, f, n, left_maps, right_maps):
    """(x, y) . (f, n) = (x . f(y), y . n) for maps given explicitly."""
    return left_maps[f[y]][x], right_maps[n][y]


def flat_from_states(perm_of_coords, dims):
    """Flat table of a map on coordinate tuples, states numbered lexicographically."""
    coords = list(itertools.product(*[range(d) for d in dims]))
    pos = {c: i for i, c in enumerate(coords)}
    return tuple(pos[perm_of_coords(c)] for c in coords)


def is_covering(phi, covers, target_maps):
    """Check phi is onto and phi(y . cover) == phi(y) . m for every generator."""
    n_target = len(target_maps[0]) if target_maps else max(phi) + 1
    if set(phi) != set(range(n_target)):
        return False
    for cov, m in zip(covers, target_maps):
        for y in range(len(phi)):
            if phi[cov[y]] != m[phi[y]]:
                return False
    return True


def small_monoid_classes(max_states=3, max_elements=4):
    """One element set per transformation monoid with the given bounds, up to relabelling states."""
    out = []
    for n in range(1, max_states + 1):
        maps = all_maps(n)
        found = set()
        for r in range(4):
            for gens in itertools.combinations(maps, r):
                m = closure(list(gens), n)
                if len(m) <= max_elements:
                    found.add(frozenset(m))
        seen = set()
        for m in sorted(found, key=sorted):
            keys = []
            for p in itertools.permutations(range(n)):
                pi = inverse(p)
                keys.append(tuple(sorted(tuple(p[e[pi[x]]] for x in range(n)) for e in m)))
            key = min(keys)
            if key not in seen:
                seen.add(key)
                out.append((n, sorted(m)))
    return out


def three_factor_flats(space, comps):
    """Both bracketings' explicit action on a triple cascade, as flat tuples."""
    M, N, P = space.factors
    nx, ny, nz = space.dims
    f_x = comps[0].reshape(ny, nz)  # element of M picked at (y, z)
    g_y = comps[1]  # element of N picked at z
    p = int(comps[2][0])
    Me, Ne, Pe = M.elements, N.elements, P.elements

    def left_bracket(c):
        # ((x, y), z) . (F, p) with F(z) = (f_z, n_z) in M^Y x N
        x, y, z = c
        f_z = [int(f_x[yy, z]) for yy in range(ny)]
        n_z = int(g_y[z])
        xy = wreath_act2(x, y, f_z, n_z, Me, Ne)
        return xy + (Pe[p][z],)

    def right_bracket(c):
        # (x, (y, z)) . (f, (g, p)) with f on Y x Z
        x, y, z = c
        x2 = Me[int(f_x[y, z])][x]
        y2, z2 = wreath_act2(y, z, [int(v) for v in g_y], p, Ne, Pe)
        return (x2, y2, z2)

    dims = (nx, ny, nz)
    return (flat_from_states(left_bracket, dims), flat_from_states(right_bracket, dims))
