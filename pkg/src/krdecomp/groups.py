"""Finite groups as simply transitive transformation groups.

``(G, G)`` is modelled by any group TMonoid acting simply transitively on
its states; state 0 is the base point, so state ``s`` stands for the unique
element ``g`` with ``0 . g = s``.  :func:`regular_representation` produces
such an action from any group TMonoid.
"""

from __future__ import annotations

import numpy as np

from .division import (
    CoveringCertificate,
    compose_coverings,
    identity_certificate,
    lift_wreath_division,
)
from .errors import DomainError
from .tmonoid import StateSet, TMonoid, generate
from .wreath import Factor, FactorSequence, ProductSpace, WreathElement


def is_group(tm: TMonoid) -> bool:
    return tm.is_group()


def inverse_table(g: TMonoid) -> np.ndarray:
    if not g.is_group():
        raise DomainError("not a group")
    tab = g.table
    return np.argmax(tab == 0, axis=1)


def is_simply_transitive(g: TMonoid) -> bool:
    return g.is_group() and len(g) == g.n_states and len({e[0] for e in g.elements}) == len(g)


def regular_representation(g: TMonoid) -> TMonoid:
    """``(G, G)``: the group acting on itself by right multiplication.

    Built from the same generator list, so element ``i`` of the result
    corresponds to element ``i`` of ``g`` and state ``i`` to element ``i``.
    """
    if not g.is_group():
        raise DomainError("regular representation requested for a non-group")
    tab = g.table
    gens = [tuple(int(v) for v in tab[:, j]) for j in g.generators]
    out = generate(StateSet(tuple(g.word_label(i) for i in range(len(g)))), gens, list(g.generator_names))
    assert out.elements == [tuple(int(v) for v in tab[:, i]) for i in range(len(g))]
    return out


def _as_regular(g: TMonoid) -> TMonoid:
    if not g.is_group():
        raise DomainError("expected a group")
    return g if is_simply_transitive(g) else regular_representation(g)


def subgroup_closure(g: TMonoid, seeds) -> list:
    tab = g.table
    members = {0}
    stack = [0]
    seeds = list(seeds)
    while stack:
        a = stack.pop()
        for s in seeds:
            b = int(tab[a, s])
            if b not in members:
                members.add(b)
                stack.append(b)
    return sorted(members)


def normal_closure(g: TMonoid, x: int) -> list:
    """Smallest normal subgroup containing ``x``, as sorted element indices."""
    tab = g.table
    inv = inverse_table(g)
    conj = {int(tab[tab[inv[h], x], h]) for h in range(len(g))}
    return subgroup_closure(g, conj)


def is_normal(g: TMonoid, sub) -> bool:
    tab = g.table
    inv = inverse_table(g)
    s = set(sub)
    return all(int(tab[tab[inv[h], n], h]) in s for n in s for h in range(len(g)))


def is_simple(g: TMonoid) -> bool:
    """True iff every non-identity element has normal closure ``G``."""
    if not g.is_group():
        raise DomainError("simplicity is defined for groups only")
    if len(g) < 2:
        raise DomainError("the trivial group is not counted as simple")
    return all(len(normal_closure(g, x)) == len(g) for x in range(1, len(g)))


def minimal_normal_subgroup(g: TMonoid) -> list:
    """Smallest non-trivial normal closure of a single element (ties by index)."""
    best = None
    for x in range(1, len(g)):
        sub = normal_closure(g, x)
        if best is None or len(sub) < len(best):
            best = sub
    return best


def coset_representatives(g: TMonoid, sub) -> tuple:
    """Minimal-index representative per right coset ``N g``; and coset of each element."""
    tab = g.table
    coset_of = [-1] * len(g)
    reps = []
    for h in range(len(g)):
        if coset_of[h] >= 0:
            continue
        for n in sub:
            coset_of[int(tab[n, h])] = len(reps)
        reps.append(h)
    return reps, coset_of


def group_division_step(g: TMonoid, sub) -> CoveringCertificate:
    """``(G, G) < (N, N) wr (G/N, G/N)`` for a normal subgroup ``N``.

    ``g`` must act simply transitively.  With coset representatives ``h_i``,
    ``phi(n, h_i) = n h_i`` and ``g`` is covered by ``(f_g, [g])`` where
    ``h f_g = h g [hg]^-1``.
    """
    if not is_simply_transitive(g):
        raise DomainError("group_division_step needs (G, G), a simply transitive action")
    sub = sorted(set(int(s) for s in sub))
    if 0 not in sub or not is_normal(g, sub) or subgroup_closure(g, sub) != sub:
        raise DomainError("not a normal subgroup")
    tab = g.table
    inv = inverse_table(g)
    reps, coset_of = coset_representatives(g, sub)

    n_pos = {n: i for i, n in enumerate(sub)}
    n_gens = [tuple(n_pos[int(tab[a, b])] for a in sub) for b in sub if b != 0]
    n_tm = generate(StateSet(tuple(g.word_label(n) for n in sub)), n_gens)
    q_gens = [tuple(coset_of[int(tab[h, gg])] for h in reps) for gg in g.generators]
    q_tm = generate(StateSet(tuple(f"N{g.word_label(h)}" for h in reps)), q_gens,
                    list(g.generator_names))

    space = ProductSpace([n_tm, q_tm])
    phi = np.empty(space.size, dtype=np.int64)
    k = len(reps)
    for i, n in enumerate(sub):
        for j, h in enumerate(reps):
            phi[i * k + j] = g.elements[int(tab[n, h])][0]

    covers = []
    for gg in g.generators:
        top = q_tm.element_index(tuple(coset_of[int(tab[h, gg])] for h in reps))
        f = []
        for h in reps:
            hg = int(tab[h, gg])
            n = int(tab[hg, inv[reps[coset_of[hg]]]])
            # the element n of N acts on N by right multiplication
            f.append(n_tm.element_index(tuple(n_pos[int(tab[a, n])] for a in sub)))
        covers.append(WreathElement.pair(space, f, top))
    return CoveringCertificate(g, space, phi, covers, kind="group-extension")


def composition_decomposition(g: TMonoid):
    """Simple factors of ``(G, G)`` in wreath order, with one composed certificate.

    Non-regular input is first replaced by its regular representation; the
    certificate's target is the simply transitive group actually decomposed.
    The trivial group yields no factors and a one-state empty product.
    """
    g = _as_regular(g)
    if len(g) == 1:
        cert = CoveringCertificate(g, ProductSpace([]), np.zeros(1, dtype=np.int64),
                                   [WreathElement.identity(ProductSpace([])) for _ in g.generators],
                                   kind="trivial-group")
        return FactorSequence([], cert), cert
    if is_simple(g):
        cert = identity_certificate(g)
        return FactorSequence([Factor("simple-group", g)], cert), cert
    step = group_division_step(g, minimal_normal_subgroup(g))
    n_tm, q_tm = step.source.factors
    left_seq, left = composition_decomposition(n_tm)
    right_seq, right = composition_decomposition(q_tm)
    cert = compose_coverings(step, lift_wreath_division(left, right))
    seq = FactorSequence(list(left_seq.factors) + list(right_seq.factors), cert)
    return seq, cert


def composition_factor_orders(g: TMonoid) -> list:
    seq, _ = composition_decomposition(g)
    return [f.order for f in seq]
