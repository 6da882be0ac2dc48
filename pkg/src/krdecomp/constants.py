"""Constant maps, the bar closure ``(X, M u Xbar)``, and ``U_X``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .division import (
    CoveringCertificate,
    compose_coverings,
    identity_certificate,
    lift_wreath_division,
    product_to_wreath,
)
from .errors import DomainError
from .groups import regular_representation
from .tmonoid import MonoidAction, StateSet, TMonoid, compose, constant, generate
from .wreath import Factor, FactorSequence, ProductSpace, WreathElement, direct_product

# ({a, b}, U_2): the identity and the two constant maps
U2 = generate(StateSet(("a", "b")), [constant(2, 0), constant(2, 1)], ["a~", "b~"])


@dataclass
class BarMonoid:
    base: TMonoid
    tm: TMonoid

    @property
    def n_states(self):
        return self.tm.n_states

    def __len__(self):
        return len(self.tm)

    def constant_index(self, x: int) -> int:
        return self.tm.element_index(constant(self.tm.n_states, x))


def bar(tm) -> BarMonoid:
    """Adjoin every missing constant map as a new generator."""
    if isinstance(tm, BarMonoid):
        tm = tm.tm
    if isinstance(tm, MonoidAction):
        if not tm.is_faithful():
            raise DomainError("constants can only be adjoined to a faithful action")
        tm = generate(tm.states, tm.generator_maps, tm.generator_names)
    n = tm.n_states
    gens = list(tm.generator_maps)
    names = list(tm.generator_names)
    if n > 1:
        for x in range(n):
            cx = constant(n, x)
            if cx not in tm.index:
                gens.append(cx)
                names.append(f"{tm.states.labels[x]}~")
    if len(gens) == len(tm.generators):
        return BarMonoid(tm, tm)
    return BarMonoid(tm, generate(tm.states, gens, names))


def is_constant(t) -> bool:
    return len(set(t)) == 1


def u_monoid(states: StateSet) -> TMonoid:
    """``(X, U_X)``: the identity and all constants of ``X``."""
    n = states.size
    if n == 1:
        return generate(states, [])
    return generate(states, [constant(n, x) for x in range(n)],
                    [f"{lab}~" for lab in states.labels])


def group_with_constants_split(bar_g: BarMonoid) -> CoveringCertificate:
    """``bar(X, G) < (X, U_X) wr (G, G)`` for a group ``G`` acting faithfully.

    ``phi(x, g) = x . g``; a group element ``g`` is covered by ``(k_1, g)`` and
    a constant ``xbar`` by ``(f_x, 1)`` with ``h f_x = bar(x . h^-1)``.
    """
    g = bar_g.base
    if not g.is_group():
        raise DomainError("group_with_constants_split needs a group base")
    n = g.n_states
    ux = u_monoid(g.states)
    greg = regular_representation(g)
    space = ProductSpace([ux, greg])
    k = len(g)
    arr = g.array
    phi = arr.T.reshape(-1)  # phi(x, h) = x . h at index x*k + h
    inv = np.argmax(g.table == 0, axis=1)
    covers = []
    for t in bar_g.tm.generator_maps:
        if t in g.index:
            covers.append(WreathElement.pair(space, np.zeros(k, dtype=np.int64), g.index[t]))
        elif is_constant(t):
            x = t[0]
            f = [ux.element_index(constant(n, int(arr[inv[h], x]))) for h in range(k)]
            covers.append(WreathElement.pair(space, f, 0))
        else:
            raise DomainError("bar monoid generator is neither a group element nor a constant")
    return CoveringCertificate(bar_g.tm, space, phi, covers, kind="group-with-constants")


def peel_constant_certificate(big: TMonoid, small: TMonoid | None = None):
    """``({a_0..a_n}, U_{n+1}) < ({a_0..a_{n-1}}, U_n) x ({a_0, a_n}, U_2)``.

    ``big`` is ``u_monoid`` on ``n + 1 >= 2`` states.  Returns the certificate
    whose source is the direct product (as a single factor), and that product.
    ``phi(a_k, a_l) = a_max(k, l)``; ``a_i`` (``i < n``) is covered by
    ``(a_i~, a_0~)`` and ``a_n`` by ``(a_0~, a_n~)``.
    """
    n = big.n_states - 1
    if n < 1:
        raise DomainError("U_X needs at least two states here")
    if small is None:
        small = u_monoid(StateSet(big.states.labels[:n]))
    dp = direct_product(small, U2)
    space = ProductSpace([dp])
    phi = np.array([max(k, n * l) for k in range(n) for l in range(2)], dtype=np.int64)
    covers = []
    for t in big.generator_maps:
        i = t[0]
        if not is_constant(t):
            raise DomainError("U_X generators must be constants")
        left = constant(n, i) if i < n else constant(n, 0)
        right = constant(2, 0) if i < n else constant(2, 1)
        elem = tuple(left[x] * 2 + right[y] for x in range(n) for y in range(2))
        covers.append(WreathElement.single(space, dp.element_index(elem)))
    return CoveringCertificate(big, space, phi, covers, kind="peel-constant"), dp


def _u2_identity(ux: TMonoid) -> CoveringCertificate:
    space = ProductSpace([U2])
    covers = [WreathElement.single(space, U2.element_index(t)) for t in ux.generator_maps]
    return CoveringCertificate(ux, space, np.arange(2), covers, kind="U2")


def u_x_decompose(ux: TMonoid):
    """``(X, U_X)`` as a divisor of ``|X| - 1`` copies of ``U_2`` in a wreath.

    ``ux`` is ``u_monoid(X)`` (or a StateSet).  Peels the highest state each
    round with the constant-peeling certificate, embeds the direct product in the
    wreath product, and lifts the recursive decomposition of the rest.
    """
    if isinstance(ux, StateSet):
        ux = u_monoid(ux)
    k = ux.n_states
    if k < 2:
        raise DomainError("u_x_decompose needs at least two states")
    if k == 2:
        cert = _u2_identity(ux)
        return FactorSequence([Factor("U2", U2)], cert), cert
    small = u_monoid(StateSet(ux.states.labels[:k - 1]))
    peel, dp = peel_constant_certificate(ux, small)
    to_wreath = product_to_wreath(small, U2, dp)
    rest_seq, rest = u_x_decompose(small)
    lifted = lift_wreath_division(rest, identity_certificate(U2))
    cert = compose_coverings(compose_coverings(peel, to_wreath), lifted)
    return FactorSequence(list(rest_seq.factors) + [Factor("U2", U2)], cert), cert


def absorption_holds(bm: BarMonoid) -> bool:
    """``m xbar = xbar`` and ``xbar m = bar(x . m)`` for all elements and constants."""
    n = bm.n_states
    tm = bm.tm
    for x in range(n):
        cx = constant(n, x)
        if cx not in tm.index:
            return False
        for m in tm.elements:
            if compose(m, cx) != cx or compose(cx, m) != constant(n, m[x]):
                return False
    return True

