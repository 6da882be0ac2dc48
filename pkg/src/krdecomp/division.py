"""Coverings and strong-division certificates.

A certificate for ``(X, M) < (Y, N)`` stores a surjection ``phi: Y -> X`` and,
for every listed generator ``m`` of ``M``, a cover ``m^`` in the wreath
product over ``Y`` such that ``phi(y . m^) = phi(y) . m`` for all ``y``.
Covers of other elements are products of generator covers along witness
words, so checking the generators certifies a covering of all of ``M``; for
a faithful target that is a strong division.

Each cover is kept twice: as a cascade (which proves it lies in the wreath
product of the source factors) and as its flat table.  Verification checks
that the two agree and that the flat table satisfies the cover equation.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CertificateError, DimensionError, WordError
from .tmonoid import TMonoid
from .wreath import (
    DEFAULT_STATE_CAP,
    ProductSpace,
    WreathElement,
    direct_product,
    split_product_element,
    wreath_generators,
)


@dataclass(frozen=True)
class Witness:
    state: int
    generator: str
    expected: int
    actual: int
    reason: str = "cover"

    def __str__(self):
        return (f"{self.reason} violated at source state {self.state} for generator "
                f"{self.generator}: expected {self.expected}, got {self.actual}")


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    witness: Witness | None = None
    generators: int = 0
    states: int = 0

    def __bool__(self):
        return self.ok


class CoveringCertificate:
    """Proof object for a strong division of ``target`` by ``source``.

    ``target`` is a :class:`TMonoid`, a :class:`MonoidAction` or a
    :class:`ProductSpace` (the wreath of the factors).  For monoid targets the
    covers are listed per generator, in the order of ``target.generators``.
    """

    def __init__(self, target, source: ProductSpace, phi, covers, *, names=None,
                 target_maps=None, kind="", extend=None, flats=None):
        self.target = target
        self.source = source
        self.phi = np.asarray(phi, dtype=np.int64)
        self.kind = kind
        self._extend = extend if extend is not None else ("words",)
        self._memo = {}
        if covers is None:
            self._covers = None
        else:
            self._set_covers(list(covers), names, target_maps, flats)

    def _set_covers(self, covers, names, target_maps, flats=None):
        if target_maps is None:
            target_maps = self.target.generator_maps
        if names is None:
            names = getattr(self.target, "generator_names", None) or [f"g{j}" for j in range(len(covers))]
        if len(covers) != len(target_maps):
            raise CertificateError(f"{len(covers)} covers for {len(target_maps)} generators")
        self._covers = covers
        self._names = list(names)
        self._target_maps = [np.asarray(t, dtype=np.int64) for t in target_maps]
        if flats is None:
            self._flats = [c.flat().copy() for c in covers]
        else:
            # stored tables taken verbatim (deserialized certificates)
            self._flats = [np.asarray(f, dtype=np.int64) for f in flats]

    @property
    def covers(self) -> list:
        if self._covers is None:
            self._materialize()
        return self._covers

    @property
    def names(self) -> list:
        self.covers
        return self._names

    @property
    def flats(self) -> list:
        self.covers
        return self._flats

    @property
    def target_maps(self) -> list:
        self.covers
        return self._target_maps

    def _materialize(self):
        # lifted certificates list covers of the canonical wreath generators lazily
        space = self.target
        gens = wreath_generators(space)
        covers = [extend_covers(self, w) for _, w in gens]
        names = [f"delta[{i},{t},{space.factors[i].word_label(g)}]" for (i, t, g), _ in gens]
        self._set_covers(covers, names, [w.flat() for _, w in gens])

    @property
    def n_target_states(self) -> int:
        if isinstance(self.target, ProductSpace):
            return self.target.size
        return self.target.n_states

    def cover_of(self, name: str) -> WreathElement:
        return self.covers[self.names.index(name)]

    def copy(self) -> "CoveringCertificate":
        """Deep copy of the tables (for tamper experiments)."""
        self.covers
        out = copy.copy(self)
        out.phi = self.phi.copy()
        out._flats = [f.copy() for f in self._flats]
        out._covers = [WreathElement(c.space, [x.copy() for x in c.components]) for c in self._covers]
        out._memo = {}
        return out

    def __repr__(self):
        return (f"CoveringCertificate({self.kind or 'covering'}: {self.n_target_states} target states "
                f"<- {self.source.size} source states, {len(self.source)} factors)")


def is_cover(mhat: Sequence[int], m: Sequence[int], phi: Sequence[int]) -> bool:
    """True iff ``phi(y . mhat) = phi(y) . m`` for every source state ``y``."""
    return find_cover_violation(mhat, m, phi) is None


def find_cover_violation(mhat, m, phi):
    """First ``(y, expected, actual)`` breaking the cover equation, or None."""
    mhat, m, phi = (np.asarray(a, dtype=np.int64) for a in (mhat, m, phi))
    lhs = phi[mhat]
    rhs = m[phi]
    bad = np.flatnonzero(lhs != rhs)
    if bad.size == 0:
        return None
    y = int(bad[0])
    return y, int(rhs[y]), int(lhs[y])


def check_phi(cert: CoveringCertificate):
    n = cert.n_target_states
    phi = cert.phi
    if phi.shape != (cert.source.size,):
        raise CertificateError(f"phi has {phi.shape[0]} entries, source has {cert.source.size} states")
    if phi.size and (phi.min() < 0 or phi.max() >= n):
        bad = int(np.flatnonzero((phi < 0) | (phi >= n))[0])
        err = CertificateError(f"phi({bad}) = {int(phi[bad])} is not a target state")
        err.witness = Witness(bad, "phi", -1, int(phi[bad]), "range")
        raise err
    hit = np.zeros(n, dtype=bool)
    hit[phi] = True
    if not hit.all():
        missed = int(np.flatnonzero(~hit)[0])
        err = CertificateError(f"phi is not surjective: target state {missed} has no preimage")
        err.witness = Witness(-1, "phi", missed, -1, "surjectivity")
        raise err


def verify_covering(cert: CoveringCertificate) -> VerificationReport:
    """Exhaustively check every listed cover against ``phi``."""
    check_phi(cert)
    covers = cert.covers
    for name, cover, flat, m in zip(cert.names, covers, cert.flats, cert.target_maps):
        if flat.shape != (cert.source.size,) or m.shape != (cert.n_target_states,):
            raise CertificateError(f"cover table for {name} has the wrong size")
        for i, (fac, comp) in enumerate(zip(cover.space.factors, cover.components)):
            bad = np.flatnonzero((comp < 0) | (comp >= len(fac)))
            if bad.size:
                t = int(bad[0])
                return VerificationReport(False, Witness(t, name, len(fac) - 1, int(comp[t]),
                                                         f"factor-{i} membership"))
        induced = WreathElement(cover.space, cover.components).flat()
        bad = np.flatnonzero(induced != flat)
        if bad.size:
            y = int(bad[0])
            return VerificationReport(False, Witness(y, name, int(induced[y]), int(flat[y]), "cascade"))
        if flat.size and (flat.min() < 0 or flat.max() >= cert.source.size):
            y = int(np.flatnonzero((flat < 0) | (flat >= cert.source.size))[0])
            return VerificationReport(False, Witness(y, name, -1, int(flat[y]), "range"))
        v = find_cover_violation(flat, m, cert.phi)
        if v is not None:
            y, expected, actual = v
            return VerificationReport(False, Witness(y, name, expected, actual, "cover"))
    return VerificationReport(True, None, len(covers), cert.source.size)


def extend_covers(cert: CoveringCertificate, m) -> WreathElement:
    """A cover of an arbitrary target element ``m``.

    For monoid targets ``m`` is an element index and the cover is the
    product of generator covers along the stored witness word.  For wreath
    targets ``m`` is a :class:`WreathElement` of the target space.
    """
    mode = cert._extend[0]
    if mode == "words":
        return _extend_by_word(cert, m)
    if mode == "lift":
        return _extend_lifted(cert, m)
    if mode == "chain":
        _, outer, inner = cert._extend
        return _cover_in(inner, extend_covers(outer, m))
    raise CertificateError(f"unknown extension mode {mode!r}")


def _extend_by_word(cert, m):
    m = int(m)
    if m in cert._memo:
        return cert._memo[m]
    words = cert.target.words
    if not 0 <= m < len(words) or words[m] is None:
        raise WordError(f"element {m} has no witness word")
    word = words[m]
    if not word:
        w = WreathElement.identity(cert.source)
    else:
        # witness words are prefix-closed, so the prefix names another element
        lookup = cert._memo.setdefault("words", {w_: i for i, w_ in enumerate(words)})
        w = _extend_by_word(cert, lookup[word[:-1]]) * cert.covers[word[-1]]
    cert._memo[m] = w
    return w


def _cover_in(inner: CoveringCertificate, w: WreathElement) -> WreathElement:
    """Cover under ``inner`` of ``w``, an element of ``inner``'s target."""
    if isinstance(inner.target, ProductSpace):
        return extend_covers(inner, w)
    return extend_covers(inner, int(w.components[0][0]))


def _check_interface(outer: CoveringCertificate, inner: CoveringCertificate):
    tgt = inner.target
    if isinstance(tgt, ProductSpace):
        ok = outer.source.same_as(tgt)
    else:
        ok = len(outer.source) == 1 and isinstance(tgt, TMonoid) and outer.source.factors[0].same_as(tgt)
    if not ok:
        raise CertificateError("outer certificate's source is not the inner certificate's target")


def compose_coverings(outer: CoveringCertificate, inner: CoveringCertificate) -> CoveringCertificate:
    """Transitivity: ``X < Y`` by ``outer`` and ``Y < Z`` by ``inner`` give ``X < Z``."""
    _check_interface(outer, inner)
    covers = [_cover_in(inner, c) for c in outer.covers]
    phi = outer.phi[inner.phi]
    extend = ("words",) if outer._extend[0] == "words" else ("chain", outer, inner)
    return CoveringCertificate(outer.target, inner.source, phi, covers, names=outer.names,
                               target_maps=outer.target_maps, kind=outer.kind or inner.kind,
                               extend=extend)


def identity_certificate(tm: TMonoid) -> CoveringCertificate:
    space = ProductSpace([tm])
    covers = [WreathElement.single(space, g) for g in tm.generators]
    return CoveringCertificate(tm, space, np.arange(tm.n_states), covers, kind="identity")


def inclusion_certificate(sub: TMonoid, ambient: TMonoid) -> CoveringCertificate:
    """``(X, N) < (X, M)`` for a submonoid ``N`` of ``M`` on the same states."""
    if sub.n_states != ambient.n_states:
        raise DimensionError("submonoid and ambient monoid act on different state sets")
    space = ProductSpace([ambient])
    covers = [WreathElement.single(space, ambient.element_index(t)) for t in sub.generator_maps]
    return CoveringCertificate(sub, space, np.arange(sub.n_states), covers, kind="inclusion")


def lift_wreath_division(*parts, cap: int | None = DEFAULT_STATE_CAP) -> CoveringCertificate:
    """Lift factorwise divisions ``F_i < V_i`` to ``F_1 wr ... wr F_k < V_1 wr ... wr V_k``.

    ``phi`` is the product of the parts' surjections.  The cover of a cascade
    ``w`` uses, in block ``i``, the part-``i`` cover of the element that ``w``
    picks at the image of the later blocks, so it is constant on fibres of the
    later surjections.  Covers of the canonical wreath generators are
    produced on first access.
    """
    if len(parts) == 1 and isinstance(parts[0], (list, tuple)):
        parts = tuple(parts[0])
    for p in parts:
        if not isinstance(p.target, TMonoid):
            raise CertificateError("each lifted part must divide a single factor monoid")
    target = ProductSpace([p.target for p in parts], cap=None)
    source = ProductSpace([f for p in parts for f in p.source.factors], cap=cap)
    k = len(parts)
    # blocks[i] maps a joint source state of blocks i.. to a target suffix index
    blocks = [None] * (k + 1)
    blocks[k] = np.zeros(1, dtype=np.int64)
    for i in range(k - 1, -1, -1):
        inner = blocks[i + 1]
        blocks[i] = (parts[i].phi[:, None] * target.suffix[i] + inner[None, :]).reshape(-1)
    cert = CoveringCertificate(target, source, blocks[0], None, kind="wreath-lift",
                               extend=("lift", parts, blocks))
    return cert


def _extend_lifted(cert, w: WreathElement) -> WreathElement:
    _, parts, blocks = cert._extend
    if not w.space.same_as(cert.target):
        raise CertificateError("element is not in the lifted certificate's target wreath")
    comps = []
    for i, part in enumerate(parts):
        outer = blocks[i + 1]
        chosen = w.components[i][outer]
        uniq, inv = np.unique(chosen, return_inverse=True)
        covers = [extend_covers(part, int(m)) for m in uniq]
        for s in range(len(part.source)):
            stack = np.stack([c.components[s] for c in covers])  # (U, len_s)
            comps.append(stack[inv].T.reshape(-1))
    return WreathElement(cert.source, comps)


def product_to_wreath(tm1: TMonoid, tm2: TMonoid, product: TMonoid | None = None) -> CoveringCertificate:
    """``(X, M) x (Y, N) < (X, M) wr (Y, N)`` with ``phi`` the identity.

    The cover of ``(m, n)`` is ``(k_m, n)`` where ``k_m`` is constantly ``m``.
    """
    dp = product if product is not None else direct_product(tm1, tm2)
    space = ProductSpace([tm1, tm2])
    covers = []
    for t in dp.generator_maps:
        m, n = split_product_element(tm1, tm2, t)
        covers.append(WreathElement.pair(space, np.full(tm2.n_states, m), n))
    return CoveringCertificate(dp, space, np.arange(space.size), covers, kind="product-to-wreath")
