"""Local divisors ``M_c = (cMc u {c}, o, c)`` and their action on ``Xc``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .division import CoveringCertificate
from .errors import DomainError
from .tmonoid import StateSet, TMonoid, compose, generate, irredundant_generators, with_generators
from .wreath import ProductSpace, WreathElement


@dataclass
class LocalDivisor:
    parent: TMonoid
    c: int
    carrier: list  # parent element indices; carrier[0] == c
    circ_table: np.ndarray  # positions into carrier
    xc: list  # parent states in X.c, ascending
    states: StateSet
    action: list  # carrier[i] as a map on xc positions
    tm: TMonoid  # (Xc, M_c) with an irredundant generating list
    left_quotient: list  # parent index n with c.n == carrier[i]

    def __len__(self):
        return len(self.carrier)

    def carrier_of(self, tm_index: int) -> int:
        """Carrier position of an element of ``self.tm``."""
        return self._by_action[self.tm.elements[tm_index]]

    def __post_init__(self):
        self._by_action = {t: i for i, t in enumerate(self.action)}

    def circ(self, i: int, j: int) -> int:
        return int(self.circ_table[i, j])


def local_divisor(tm: TMonoid, c: int, variant: str = "cMc") -> LocalDivisor:
    """The local divisor of ``tm`` at element ``c``.

    The carrier is ``cMc u {c}``; ``variant="cM&Mc"`` uses the larger
    ``cM n Mc`` instead.  Products follow ``mc o cn = mcn``; carrier elements
    act on ``Xc`` by ``xc o cm = x . cm``.
    """
    elems = tm.elements
    ce = elems[c]
    cM = {tm.index[compose(ce, e)] for e in elems}
    if variant == "cMc":
        carrier = {tm.index[compose(elems[i], ce)] for i in cM}
        carrier.add(c)
    elif variant == "cM&Mc":
        Mc = {tm.index[compose(e, ce)] for e in elems}
        carrier = cM & Mc
    else:
        raise DomainError(f"unknown carrier variant {variant!r}")
    carrier = [c] + sorted(carrier - {c})
    pos = {e: i for i, e in enumerate(carrier)}

    # n with c.n = e, for each carrier element e
    left_quotient = []
    for e in carrier:
        for n, t in enumerate(elems):
            if compose(ce, t) == elems[e]:
                left_quotient.append(n)
                break
        else:
            raise DomainError("carrier element is not in cM")
    k = len(carrier)
    table = np.empty((k, k), dtype=np.int64)
    for i, e1 in enumerate(carrier):
        for j in range(k):
            prod = tm.index[compose(elems[e1], elems[left_quotient[j]])]
            table[i, j] = pos[prod]

    xc = sorted(set(ce))
    where = {x: i for i, x in enumerate(xc)}
    preimage = {}
    for x, y in enumerate(ce):
        preimage.setdefault(y, x)
    action = [tuple(where[elems[e][preimage[p]]] for p in xc) for e in carrier]
    states = StateSet(tuple(tm.states.labels[x] for x in xc))
    full = generate(states, action)
    if len(full) != k:
        raise DomainError("local divisor action is not faithful on Xc")
    sub = with_generators(full, irredundant_generators(full))
    sub.generator_names = [_carrier_name(tm, carrier[action.index(t)]) for t in sub.generator_maps]
    return LocalDivisor(tm, c, carrier, table, xc, states, action, sub, left_quotient)


def _carrier_name(tm, e):
    return f"[{tm.word_label(e)}]"


def local_action_certificate(ld: LocalDivisor) -> CoveringCertificate:
    """``(Xc, M_c) < (X, cM u {1})`` via ``phi(x) = x . c``.

    The element ``cm`` of the source maps to ``cmc`` in ``M_c``, so a cover of
    a carrier element ``e`` is any ``n`` in ``cM`` with ``nc = e``.
    """
    parent = ld.parent
    elems = parent.elements
    ce = elems[ld.c]
    cM_gens = sorted({compose(ce, e) for e in elems})
    source_tm = generate(parent.states, cM_gens)
    where = {x: i for i, x in enumerate(ld.xc)}
    phi = np.array([where[y] for y in ce], dtype=np.int64)
    space = ProductSpace([source_tm])
    covers = []
    for t in ld.tm.generator_maps:
        e = elems[ld.carrier[ld._by_action[t]]]
        for n in source_tm.elements:
            if compose(n, ce) == e:
                covers.append(WreathElement.single(space, source_tm.index[n]))
                break
        else:
            raise DomainError("no cover found in cM for a local divisor generator")
    return CoveringCertificate(ld.tm, space, phi, covers, kind="local-action")


def circ_well_defined(tm: TMonoid, c: int) -> bool:
    """Brute force: ``m'c = mc`` and ``cn' = cn`` imply ``m'cn' = mcn``."""
    elems = tm.elements
    ce = elems[c]
    by_mc, by_cn = {}, {}
    for m, e in enumerate(elems):
        by_mc.setdefault(compose(e, ce), []).append(m)
        by_cn.setdefault(compose(ce, e), []).append(m)
    for left in by_mc.values():
        for right in by_cn.values():
            results = {compose(compose(elems[m], ce), elems[n]) for m in left for n in right}
            if len(results) != 1:
                return False
    return True


def naive_unfaithful_witness(tm: TMonoid, c: int):
    """Elements ``c^(t+p-1)`` and ``c^(t-1)`` of ``Mc u {1}`` acting alike on ``Xc``.

    Returns the pair of element indices, or None when ``c`` is a unit.
    """
    ce = tm.elements[c]
    if len(set(ce)) == len(ce):
        return None
    powers = [tuple(range(tm.n_states))]
    seen = {powers[0]: 0}
    while True:
        nxt = compose(powers[-1], ce)
        if nxt in seen:
            t = seen[nxt]
            p = len(powers) - t
            break
        seen[nxt] = len(powers)
        powers.append(nxt)
    hi, lo = powers[t + p - 1], powers[t - 1]
    return tm.index[hi], tm.index[lo]
