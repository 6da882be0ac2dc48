"""Local-divisor decomposition of a finite transformation monoid.

The recursion splits ``bar(X, M)`` at a non-unit generator ``c`` into the
local divisor ``bar(Xc, M_c)`` (left) and ``bar(X u N, N)`` with
``N = <A - {c}>`` (right) until every leaf is a group with constants.  Each
leaf ``bar(X_i, G_i)`` is then split into ``(X_i, U_{X_i}) wr (G_i, G_i)``,
``U_{X_i}`` into ``|X_i| - 1`` copies of ``U_2`` and ``G_i`` into its
composition factors.  All certificates are lifted through the wreath
products and composed into one covering of the input.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .constants import BarMonoid, U2, bar, group_with_constants_split, is_constant, u_x_decompose
from .division import (
    CoveringCertificate,
    compose_coverings,
    identity_certificate,
    inclusion_certificate,
    lift_wreath_division,
    verify_covering,
)
from .errors import DomainError, ResourceError
from .groups import composition_decomposition, regular_representation
from .localdiv import LocalDivisor, local_divisor
from .tmonoid import (
    MonoidAction,
    StateSet,
    TMonoid,
    constant,
    generate,
    irredundant_generators,
    is_permutation,
    make_faithful,
    with_generators,
)
from .wreath import DEFAULT_STATE_CAP, Factor, FactorSequence, ProductSpace, WreathElement

SPLIT_STRATEGIES = ("first-nonunit", "last-nonunit", "max-shrink")


@dataclass
class DecompositionNode:
    tm: TMonoid  # the bar-closed monoid at this node
    kind: str  # root | local-divisor-left | remainder-right | group-leaf | u2-leaf | simple-group-leaf
    depth: int = 0
    base: TMonoid | None = None
    chosen_c: int | None = None
    children: list = field(default_factory=list)
    certificate: CoveringCertificate | None = None
    side: str = "root"

    def walk(self):
        yield self
        for ch in self.children:
            yield from ch.walk()

    def label(self) -> str:
        base = self.base if self.base is not None else self.tm
        return f"{self.kind}(|X|={base.n_states}, |M|={len(base)})"


@dataclass
class MainSplit:
    local: LocalDivisor
    n_monoid: TMonoid  # N = <A - {c}> acting on X
    left: BarMonoid  # bar(Xc, M_c)
    right: BarMonoid  # bar(X u N, N)
    barred: BarMonoid  # bar(X, M), the target
    certificate: CoveringCertificate


def main_split(tm: TMonoid, c: int, generators=None, barred: BarMonoid | None = None) -> MainSplit:
    """``bar(X, M) < bar(Xc, M_c) wr bar(X u N, N)`` at a non-unit generator ``c``.

    ``generators`` are positions in ``tm.generators`` forming the generating
    set ``A`` (default: all of them); ``c`` is an element index in ``A``.
    """
    positions = list(range(len(tm.generators))) if generators is None else list(generators)
    a_idx = [tm.generators[p] for p in positions]
    if c not in a_idx:
        raise DomainError("c must be one of the generators")
    ce = tm.elements[c]
    if is_permutation(ce):
        raise DomainError("c is a unit; the split needs a non-unit generator")
    rest = [p for p in positions if tm.generators[p] != c]
    n_states = tm.n_states
    N = generate(tm.states, [tm.elements[tm.generators[p]] for p in rest],
                 [tm.generator_names[p] for p in rest])
    if ce in N.index:
        raise DomainError("c lies in the submonoid generated by the other generators")

    ld = local_divisor(tm, c)
    left = bar(ld.tm)

    # right factor: N acting on X u N (original states, then N's elements)
    xn_labels = _disjoint_labels(tm.states.labels, [f"<{N.word_label(i)}>" for i in range(len(N))])
    right_gens = []
    for a in N.generator_maps:
        on_n = tuple(n_states + N.index[tuple(a[v] for v in e)] for e in N.elements)
        right_gens.append(tuple(a) + on_n)
    right_base = generate(StateSet(tuple(xn_labels)), right_gens, list(N.generator_names))
    if len(right_base) != len(N):
        raise DomainError("the action of N on X u N is not faithful")  # cannot happen
    right = bar(right_base)
    if barred is None:
        if len(positions) == len(tm.generators):
            barred = bar(tm)
        else:
            barred = bar(generate(tm.states, [tm.elements[g] for g in a_idx],
                                  [tm.generator_names[p] for p in positions]))

    xp = right.n_states
    xc = ld.xc
    space = ProductSpace([left.tm, right.tm])
    phi = np.empty(space.size, dtype=np.int64)
    for p, xstate in enumerate(xc):
        row = phi[p * xp:(p + 1) * xp]
        row[:n_states] = np.arange(n_states)
        row[n_states:] = [N.elements[i][xstate] for i in range(len(N))]

    xc_pos = {x: i for i, x in enumerate(xc)}
    k_c = np.zeros(xp, dtype=np.int64)  # c is the identity of M_c
    one_bar = right.tm.element_index(constant(xp, n_states))
    c_f = np.empty(xp, dtype=np.int64)
    for y in range(n_states):
        c_f[y] = left.tm.element_index(constant(len(xc), xc_pos[ce[y]]))
    for i, n in enumerate(N.elements):
        cnc = tm.index[tuple(ce[n[v]] for v in ce)]
        c_f[n_states + i] = left.tm.element_index(ld.action[ld.carrier.index(cnc)])

    covers = []
    for t in barred.tm.generator_maps:
        if is_constant(t) and n_states > 1:
            top = right.tm.element_index(constant(xp, t[0]))
            covers.append(WreathElement.pair(space, k_c, top))
        elif t == ce:
            covers.append(WreathElement.pair(space, c_f, one_bar))
        elif t in N.index:
            covers.append(WreathElement.pair(space, k_c, N.index[t]))
        else:
            raise DomainError("a generator of bar(X, M) is outside A u Xbar")
    cert = CoveringCertificate(barred.tm, space, phi, covers, kind="local-divisor-split")
    return MainSplit(ld, N, left, right, barred, cert)


def _disjoint_labels(old, new):
    used = set(old)
    out = list(old)
    for lab in new:
        while lab in used:
            lab += "'"
        used.add(lab)
        out.append(lab)
    return out


def choose_split(tm: TMonoid, strategy: str = "first-nonunit") -> int:
    """Pick the splitting generator ``c`` (an element index) among the non-units."""
    candidates = [g for g in tm.generators if not is_permutation(tm.elements[g])]
    if not candidates:
        raise DomainError("every generator is a unit")
    if strategy == "first-nonunit":
        return candidates[0]
    if strategy == "last-nonunit":
        return candidates[-1]
    if strategy == "max-shrink":
        return min(candidates, key=lambda g: len(set(tm.elements[g])))
    raise DomainError(f"unknown split strategy {strategy!r}")


@dataclass
class GroupDecomposition:
    tree: DecompositionNode
    leaves: list  # BarMonoid group leaves, in wreath order
    certificate: CoveringCertificate | None
    group_sum: int
    input_size: int


def _trivial_certificate(tm: TMonoid) -> CoveringCertificate:
    space = ProductSpace([])
    covers = [WreathElement.identity(space) for _ in tm.generators]
    return CoveringCertificate(tm, space, np.zeros(1, dtype=np.int64), covers, kind="empty-wreath")


def _decompose(base, barred, depth, kind, ctx):
    if depth > ctx["max_depth"]:
        raise AssertionError(f"decomposition depth {depth} exceeds |M| - 1 = {ctx['max_depth']}")
    node = DecompositionNode(barred.tm, kind, depth, base)
    if base.n_states == 1:
        node.kind = "group-leaf"
        return node, [], (_trivial_certificate(barred.tm) if ctx["certify"] else None)
    if base.is_group():
        node.kind = "group-leaf"
        cert = identity_certificate(barred.tm) if ctx["certify"] else None
        return node, [barred], cert
    c = choose_split(base, ctx["strategy"])
    split = main_split(base, c, barred=barred)
    node.chosen_c = c
    node.certificate = split.certificate
    lnode, lleaves, lcert = _decompose(split.left.base, split.left, depth + 1, "local-divisor-left", ctx)
    rnode, rleaves, rcert = _decompose(split.right.base, split.right, depth + 1, "remainder-right", ctx)
    lnode.side, rnode.side = "left", "right"
    node.children = [lnode, rnode]
    cert = None
    if ctx["certify"]:
        cert = compose_coverings(split.certificate, lift_wreath_division(lcert, rcert, cap=ctx["cap"]))
    return node, lleaves + rleaves, cert


def _faithful_input(tm):
    if isinstance(tm, MonoidAction):
        ftm, cert = make_faithful(tm)
        return ftm, cert, len(tm), tm.n_states
    return tm, None, len(tm), tm.n_states


def decompose_to_groups(tm, strategy: str = "first-nonunit", certify: bool = True,
                        cap: int = DEFAULT_STATE_CAP) -> GroupDecomposition:
    """Divide ``tm`` by a wreath product of groups with constants ``bar(X_i, G_i)``."""
    ftm, mf_cert, size_m, _ = _faithful_input(tm)
    positions = irredundant_generators(ftm)
    if positions == list(range(len(ftm.generators))):
        base = ftm
    else:
        base = with_generators(ftm, positions)
    barred = bar(base)
    ctx = dict(strategy=strategy, certify=certify, cap=cap, max_depth=max(len(ftm) - 1, 0))
    tree, leaves, cert = _decompose(base, barred, 0, "root", ctx)
    if tree.kind == "root":
        tree.side = "root"
    group_sum = sum(len(leaf.base) for leaf in leaves)
    if not group_sum < 2 ** size_m:
        raise AssertionError(f"sum of leaf group orders {group_sum} is not below 2^{size_m}")
    if certify:
        cert = compose_coverings(inclusion_certificate(ftm, barred.tm), cert)
        if mf_cert is not None:
            cert = compose_coverings(mf_cert, cert)
    return GroupDecomposition(tree, leaves, cert, group_sum, size_m)


def factor_count_bound(tm) -> int:
    """``|M| (|M| + |X|) 2^|M|`` as an exact integer."""
    m, x = len(tm), tm.n_states
    return m * (m + x) * 2 ** m


def predicted_flat_size(leaves) -> int:
    return math.prod(2 ** (leaf.n_states - 1) * len(leaf.base) for leaf in leaves)


def krohn_rhodes(tm, strategy: str = "first-nonunit", cap: int = DEFAULT_STATE_CAP,
                 certify: bool = True, verify: bool = True) -> FactorSequence:
    """Factor ``tm`` into ``U_2`` and simple groups with one covering certificate.

    With ``certify=False`` only the factor list is computed (no product
    space is built), which is how the bounds can be checked on inputs whose
    flat product space is beyond the cap.
    """
    timings = {}
    t0 = time.perf_counter()
    if certify:
        # the structural pass is cheap; refuse early if the end product is too large
        probe = decompose_to_groups(tm, strategy, certify=False)
        size = predicted_flat_size(probe.leaves)
        if size > cap:
            raise ResourceError(f"flat product space would have {size} states (cap {cap})", size)
    gd = decompose_to_groups(tm, strategy, certify=certify, cap=cap)
    timings["groups"] = time.perf_counter() - t0

    t1 = time.perf_counter()
    factors, leaf_certs = [], []
    leaf_nodes = [n for n in gd.tree.walk() if n.kind == "group-leaf" and n.base.n_states > 1]
    for leaf, node in zip(gd.leaves, leaf_nodes):
        g = leaf.base
        if certify:
            split = group_with_constants_split(leaf)
            ux, greg = split.source.factors
            useq, ucert = u_x_decompose(ux)
            gseq, gcert = composition_decomposition(greg)
            leaf_certs.append(compose_coverings(split, lift_wreath_division(ucert, gcert, cap=cap)))
            node.certificate = split
        else:
            useq = FactorSequence([Factor("U2", U2) for _ in range(leaf.n_states - 1)])
            gseq, _ = composition_decomposition(regular_representation(g))
        for f in list(useq.factors) + list(gseq.factors):
            kind = "u2-leaf" if f.kind == "U2" else "simple-group-leaf"
            node.children.append(DecompositionNode(f.tm, kind, node.depth + 1, f.tm, side="leaf"))
        factors.extend(useq.factors)
        factors.extend(gseq.factors)
    timings["leaves"] = time.perf_counter() - t1

    total = None
    if certify:
        t2 = time.perf_counter()
        total = compose_coverings(gd.certificate, lift_wreath_division(leaf_certs, cap=cap))
        timings["compose"] = time.perf_counter() - t2
    bound = factor_count_bound(tm)
    if not len(factors) < bound:
        raise AssertionError(f"{len(factors)} factors is not below the bound {bound}")
    seq = FactorSequence(factors, total, bound, gd.tree, gd, None, timings)
    if certify and verify:
        t3 = time.perf_counter()
        seq.verification = verify_covering(total)
        timings["verify"] = time.perf_counter() - t3
    return seq
