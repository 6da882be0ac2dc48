"""Wreath products of transformation monoids, kept in flat cascade form.

A product space over factors ``(X_1, M_1), ..., (X_n, M_n)`` has the states
``(x_1, ..., x_n)``, indexed lexicographically with ``x_1`` most significant.
Factor 1 is the innermost (left-most) factor.  An element of the n-fold
wreath product is a *cascade*: for each coordinate ``i`` a table that picks an
element of ``M_i`` as a function of the later coordinates ``x_{i+1..n}``.
Acting on a state updates coordinate ``i`` by the element chosen from the old
values of the later coordinates, which is ``(x, y) . (f, n) = (x . yf, y . n)``
read n-arily.  Nested wreath products flatten into this form, so only the flat
representation is ever stored.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionError, DomainError, ResourceError
from .tmonoid import StateSet, TMonoid, generate

DEFAULT_STATE_CAP = 10**7


class ProductSpace:
    """Ordered factor list (innermost first) with its lexicographic state set."""

    def __init__(self, factors: Sequence[TMonoid], cap: int | None = DEFAULT_STATE_CAP):
        self.factors = tuple(factors)
        self.dims = tuple(f.n_states for f in self.factors)
        size = math.prod(self.dims)
        if cap is not None and size > cap:
            raise ResourceError(f"product space of {size} states exceeds the cap of {cap}", size)
        self.size = size
        # suffix[i] = number of joint states of the coordinates after i
        self.suffix = tuple(math.prod(self.dims[i + 1:]) for i in range(len(self.dims)))

    def __len__(self):
        return len(self.factors)

    def __repr__(self):
        return f"ProductSpace(dims={self.dims}, size={self.size})"

    def same_as(self, other) -> bool:
        return other is self or (
            isinstance(other, ProductSpace)
            and len(other.factors) == len(self.factors)
            and all(a.same_as(b) for a, b in zip(self.factors, other.factors))
        )

    def coords(self, s: int) -> tuple:
        return tuple(int(v) for v in np.unravel_index(s, self.dims)) if self.dims else ()

    def state(self, coords: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(coords), self.dims)) if self.dims else 0

    def coordinate_arrays(self):
        s = np.arange(self.size, dtype=np.int64)
        return [(s // self.suffix[i]) % self.dims[i] for i in range(len(self.dims))]

    def state_set(self) -> StateSet:
        if not self.factors:
            return StateSet(("()",))
        labels = itertools.product(*(f.states.labels for f in self.factors))
        return StateSet(tuple("(" + ",".join(t) + ")" for t in labels))


class WreathElement:
    """An element of the wreath product over ``space``, stored as a cascade.

    ``components[i]`` has one entry per joint state of the coordinates after
    ``i`` and holds element indices of factor ``i``.  For two factors this is
    the pair ``(f, n)`` with ``f = components[0]`` indexed by the right
    factor's states and ``n = components[1][0]``.
    """

    def __init__(self, space: ProductSpace, components):
        self.space = space
        comps = []
        for i, c in enumerate(components):
            c = np.asarray(c, dtype=np.int64).reshape(-1)
            if c.shape[0] != space.suffix[i]:
                raise DimensionError(
                    f"component {i} has {c.shape[0]} entries, expected {space.suffix[i]}")
            comps.append(c)
        if len(comps) != len(space.factors):
            raise DimensionError("one component per factor is required")
        self.components = tuple(comps)
        self._flat = None

    @classmethod
    def identity(cls, space: ProductSpace) -> "WreathElement":
        return cls(space, [np.zeros(k, dtype=np.int64) for k in space.suffix])

    @classmethod
    def single(cls, space: ProductSpace, element: int) -> "WreathElement":
        if len(space.factors) != 1:
            raise DimensionError("single() needs a one-factor space")
        return cls(space, [[element]])

    @classmethod
    def pair(cls, space: ProductSpace, f, n: int) -> "WreathElement":
        """Binary wreath element ``(f, n)``."""
        if len(space.factors) != 2:
            raise DimensionError("pair() needs a two-factor space")
        return cls(space, [f, [n]])

    @property
    def f(self):
        return self.components[0]

    @property
    def n(self):
        return int(self.components[-1][0])

    def flat(self) -> np.ndarray:
        """The induced transformation of the flat product state set."""
        if self._flat is None:
            self._flat = flatten_element(self)
        return self._flat

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        return wreath_mul(self, other)

    def __eq__(self, other):
        return (isinstance(other, WreathElement) and self.space.same_as(other.space)
                and all(np.array_equal(a, b) for a, b in zip(self.components, other.components)))

    def __hash__(self):
        return hash(tuple(c.tobytes() for c in self.components))

    def act(self, coords: Sequence[int]) -> tuple:
        return self.space.coords(int(self.flat()[self.space.state(coords)]))

    def is_identity(self) -> bool:
        return all(not c.any() for c in self.components)


def flatten_element(w: WreathElement) -> np.ndarray:
    space = w.space
    if not space.factors:
        return np.zeros(1, dtype=np.int64)
    s = np.arange(space.size, dtype=np.int64)
    out = np.zeros(space.size, dtype=np.int64)
    for i, fac in enumerate(space.factors):
        d = space.suffix[i]
        x = (s // d) % space.dims[i]
        chosen = w.components[i][s % d]
        out += fac.array[chosen, x] * d
    return out


def wreath_mul(u: WreathElement, v: WreathElement) -> WreathElement:
    """``(f, n)(g, k) = (f + (n * g), nk)`` for every coordinate at once."""
    if not u.space.same_as(v.space):
        raise DimensionError("wreath elements over different factor lists")
    space = u.space
    if not space.factors:
        return u
    flat_u = u.flat()
    comps = []
    for i, fac in enumerate(space.factors):
        d = space.suffix[i]
        moved = flat_u[:d] % d  # image of each later-coordinate state under u
        comps.append(fac.table[u.components[i], v.components[i][moved]])
    return WreathElement(space, comps)


def wreath_act(x: int, y: int, w: WreathElement) -> tuple:
    """``(x, y) . (f, n) = (x . yf, y . n)`` for a two-factor space."""
    space = w.space
    if len(space.factors) != 2:
        raise DimensionError("wreath_act expects a two-factor space")
    left, right = space.factors
    m = int(w.components[0][y])
    return left.elements[m][x], right.elements[w.n][y]


def from_flat(space: ProductSpace, flat: Sequence[int]) -> WreathElement:
    """Recover the cascade of a flat transformation, or raise DomainError.

    This is a membership test for the wreath product: coordinate ``i`` of the
    image may depend only on ``x_i`` and the later coordinates, and for fixed
    later coordinates the induced map on ``X_i`` must belong to ``M_i``.
    """
    flat = np.asarray(flat, dtype=np.int64)
    if flat.shape != (space.size,):
        raise DimensionError(f"expected a map on {space.size} states")
    comps = []
    for i, fac in enumerate(space.factors):
        d, di = space.suffix[i], space.dims[i]
        image_i = (flat // d) % di
        # reshape to (prefix, x_i, suffix)
        block = image_i.reshape(-1, di, d)
        if not (block == block[:1]).all():
            raise DomainError(f"coordinate {i} depends on earlier coordinates")
        maps = block[0].T  # (suffix, di)
        comp = np.empty(d, dtype=np.int64)
        for t in range(d):
            key = tuple(maps[t].tolist())
            if key not in fac.index:
                raise DomainError(f"coordinate {i} map {key} is not in factor {i}")
            comp[t] = fac.index[key]
        comps.append(comp)
    w = WreathElement(space, comps)
    if not np.array_equal(w.flat(), flat):
        raise DomainError("flat map is not induced by a cascade")
    return w


def wreath_size(space: ProductSpace) -> int:
    """Number of elements of the full n-fold wreath product (exact integer)."""
    return math.prod(len(f) ** k for f, k in zip(space.factors, space.suffix))


def enumerate_wreath(space: ProductSpace, cap: int = 10**5):
    """Yield every element of the wreath product; guarded by ``cap``."""
    total = wreath_size(space)
    if total > cap:
        raise ResourceError(f"wreath product has {total} elements, cap is {cap}", total)
    ranges = [range(len(f)) for f, k in zip(space.factors, space.suffix) for _ in range(k)]
    cuts = np.cumsum((0,) + space.suffix)
    for combo in itertools.product(*ranges):
        yield WreathElement(space, [combo[cuts[i]:cuts[i + 1]] for i in range(len(space.factors))])


def wreath_generators(space: ProductSpace) -> list:
    """A generating set of the wreath product.

    For each coordinate ``i``, each joint state ``t`` of the later
    coordinates and each generator ``m`` of ``M_i``, the cascade that applies
    ``m`` at ``t`` and the identity elsewhere.
    """
    out = []
    for i, fac in enumerate(space.factors):
        for t in range(space.suffix[i]):
            for g in fac.generators:
                comps = [np.zeros(k, dtype=np.int64) for k in space.suffix]
                comps[i][t] = g
                out.append(((i, t, g), WreathElement(space, comps)))
    return out


def direct_product(tm1: TMonoid, tm2: TMonoid) -> TMonoid:
    """``(X, M) x (Y, N) = (X x Y, M x N)`` with componentwise action."""
    n1, n2 = tm1.n_states, tm2.n_states
    labels = [f"({a},{b})" for a in tm1.states.labels for b in tm2.states.labels]
    gens, names = [], []
    for j, g in enumerate(tm1.generator_maps):
        gens.append(tuple(g[x] * n2 + y for x in range(n1) for y in range(n2)))
        names.append(f"{tm1.generator_names[j]}x1")
    for j, h in enumerate(tm2.generator_maps):
        gens.append(tuple(x * n2 + h[y] for x in range(n1) for y in range(n2)))
        names.append(f"1x{tm2.generator_names[j]}")
    return generate(StateSet(labels), gens, names)


def split_product_element(tm1: TMonoid, tm2: TMonoid, t: Sequence[int]) -> tuple:
    """Indices ``(m, n)`` of the components of a direct product element."""
    n2 = tm2.n_states
    m = tuple(t[x * n2] // n2 for x in range(tm1.n_states))
    n = tuple(t[y] % n2 for y in range(n2))
    return tm1.element_index(m), tm2.element_index(n)


@dataclass
class Factor:
    """One wreath factor of a decomposition: ``U2`` or a simple group ``(G, G)``."""

    kind: str  # "U2" or "simple-group"
    tm: TMonoid
    order: int = field(init=False)

    def __post_init__(self):
        self.order = len(self.tm)

    @property
    def n_states(self):
        return self.tm.n_states

    def describe(self) -> str:
        if self.kind == "U2":
            return "U2"
        prime = self.order > 1 and all(self.order % p for p in range(2, math.isqrt(self.order) + 1))
        return f"C{self.order}" if prime else f"G{self.order}"


@dataclass
class FactorSequence:
    factors: list
    total_certificate: object = None
    bound: int | None = None
    tree: object = None
    group_decomposition: object = None
    verification: object = None
    timings: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    @property
    def flat_size(self) -> int:
        return math.prod(f.n_states for f in self.factors)

    def kinds(self) -> list:
        return [f.describe() for f in self.factors]
