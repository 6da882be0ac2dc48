"""Finite state sets, transformations and transformation monoids.

Transformations act on the right: ``t[x]`` is the image ``x . t`` and the
product ``f g`` applies ``f`` first, then ``g``.  A :class:`TMonoid` stores its
elements as transformations, so every monoid built here acts faithfully.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, DomainError, FormatError

Transformation = tuple  # tuple[int, ...]; t[x] is the image of state x


@dataclass(frozen=True)
class StateSet:
    labels: tuple

    def __post_init__(self):
        labels = tuple(str(s) for s in self.labels)
        if not labels:
            raise DomainError("a state set needs at least one state")
        if len(set(labels)) != len(labels):
            raise DomainError(f"state labels are not distinct: {labels}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def range(cls, n: int, prefix: str = "") -> "StateSet":
        return cls(tuple(f"{prefix}{i}" for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def index(self, label) -> int:
        return self.labels.index(str(label))


def identity(n: int) -> Transformation:
    return tuple(range(n))


def constant(n: int, x: int) -> Transformation:
    return (x,) * n


def is_permutation(t: Sequence[int]) -> bool:
    return len(set(t)) == len(t)


def check_transformation(t: Sequence[int], n: int) -> Transformation:
    t = tuple(int(v) for v in t)
    if len(t) != n:
        raise DimensionError(f"transformation has {len(t)} entries, expected {n}")
    for v in t:
        if not 0 <= v < n:
            raise DimensionError(f"image {v} is not a state index below {n}")
    return t


def compose(f: Sequence[int], g: Sequence[int]) -> Transformation:
    """Return ``fg``: apply ``f`` first, then ``g``."""
    if len(f) != len(g):
        raise DimensionError(f"cannot compose maps on {len(f)} and {len(g)} states")
    return tuple(g[x] for x in f)


def evaluate_word(word: Iterable[int], gens: Sequence[Transformation], n: int) -> Transformation:
    t = identity(n)
    for j in word:
        t = compose(t, gens[j])
    return t


class TMonoid:
    """A finite transformation monoid together with a generating list.

    ``elements[0]`` is always the identity.  ``generators`` holds element
    indices and ``words[i]`` is a shortlex-minimal word over generator
    *positions* (indices into ``generators``) that evaluates to element ``i``.
    """

    def __init__(self, states: StateSet, elements, generators, words, generator_names=None):
        self.states = states
        self.elements = [tuple(e) for e in elements]
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.generators = list(generators)
        self.words = [tuple(w) for w in words]
        if generator_names is None:
            generator_names = [f"g{j}" for j in range(len(self.generators))]
        self.generator_names = list(generator_names)
        self._table = None
        self._array = None

    identity = 0

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"TMonoid(|X|={self.states.size}, |M|={len(self)}, gens={len(self.generators)})"

    @property
    def n_states(self) -> int:
        return self.states.size

    @property
    def generator_maps(self) -> list:
        return [self.elements[g] for g in self.generators]

    def element_index(self, t: Sequence[int]) -> int:
        try:
            return self.index[tuple(t)]
        except KeyError:
            raise DomainError(f"{tuple(t)} is not an element of this monoid") from None

    def mul(self, i: int, j: int) -> int:
        return self.index[compose(self.elements[i], self.elements[j])]

    @property
    def array(self) -> np.ndarray:
        """Element table as an ``(|M|, |X|)`` integer array."""
        if self._array is None:
            self._array = np.array(self.elements, dtype=np.int64).reshape(len(self), self.n_states)
        return self._array

    @property
    def table(self) -> np.ndarray:
        """Full multiplication table; ``table[i, j]`` is the index of ``e_i e_j``."""
        if self._table is None:
            arr = self.array
            k = len(self)
            tab = np.empty((k, k), dtype=np.int64)
            for i in range(k):
                for j, row in enumerate(arr[:, arr[i]]):
                    tab[i, j] = self.index[tuple(row.tolist())]
            self._table = tab
        return self._table

    def word_label(self, i: int) -> str:
        w = self.words[i]
        if not w:
            return "1"
        return "".join(self.generator_names[j] for j in w) if all(
            len(self.generator_names[j]) == 1 for j in w) else ".".join(self.generator_names[j] for j in w)

    def is_group(self) -> bool:
        return all(is_permutation(e) for e in self.elements)

    def idempotents(self) -> list:
        return [i for i, e in enumerate(self.elements) if compose(e, e) == e]

    def same_as(self, other) -> bool:
        """Structural identity: same state count and same element order."""
        return other is self or (
            isinstance(other, TMonoid)
            and other.n_states == self.n_states
            and other.elements == self.elements
        )


def generate(states: StateSet, gens: Sequence[Sequence[int]], names=None) -> TMonoid:
    """Close ``gens`` under composition by breadth-first search.

    Elements come out in shortlex order of their first witness word, so the
    result is deterministic.
    """
    n = states.size
    gens = [check_transformation(g, n) for g in gens]
    ident = identity(n)
    elements = [ident]
    words = [()]
    index = {ident: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        e = elements[i]
        for j, g in enumerate(gens):
            t = compose(e, g)
            if t not in index:
                index[t] = len(elements)
                elements.append(t)
                words.append(words[i] + (j,))
                queue.append(index[t])
    generator_idx = [index[g] for g in gens]
    return TMonoid(states, elements, generator_idx, words, names)


def closure_size(n: int, gens: Sequence[Transformation]) -> int:
    seen = {identity(n)}
    stack = [identity(n)]
    while stack:
        e = stack.pop()
        for g in gens:
            t = compose(e, g)
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return len(seen)


def full_transformation_monoid(n: int) -> TMonoid:
    """``T_n`` generated by a transposition, an n-cycle and a rank n-1 idempotent."""
    states = StateSet.range(n)
    if n == 1:
        return generate(states, [])
    a = (1, 0) + tuple(range(2, n))
    b = tuple((i + 1) % n for i in range(n))
    c = tuple(range(n - 1)) + (n - 2,)
    return generate(states, [a, b, c], ["a", "b", "c"])


def symmetric_group(n: int) -> TMonoid:
    states = StateSet.range(n)
    if n == 1:
        return generate(states, [])
    a = (1, 0) + tuple(range(2, n))
    b = tuple((i + 1) % n for i in range(n))
    return generate(states, [a, b], ["a", "b"])


def cyclic_group(n: int) -> TMonoid:
    states = StateSet.range(n)
    return generate(states, [tuple((i + 1) % n for i in range(n))], ["g"])


def is_faithful_action(states: StateSet, monoid_elements: Sequence, action) -> bool:
    """True iff distinct elements act as distinct transformations.

    ``action[m][x]`` is the image of state ``x`` under the ``m``-th element.
    """
    rows = set()
    for m in range(len(monoid_elements)):
        row = tuple(action[m][x] for x in range(states.size))
        if row in rows:
            return False
        rows.add(row)
    return True


@dataclass
class MonoidAction:
    """An abstract finite monoid (multiplication table) acting on a state set.

    The action need not be faithful; ``action[m][x]`` is ``x . m``.
    """

    states: StateSet
    table: list
    action: list
    identity: int = 0
    generators: list = None
    generator_names: list = None
    words: list = field(init=False, default=None)

    def __post_init__(self):
        k = len(self.table)
        n = self.states.size
        self.table = [list(map(int, row)) for row in self.table]
        self.action = [list(map(int, row)) for row in self.action]
        if any(len(row) != k for row in self.table) or len(self.action) != k:
            raise DimensionError("multiplication and action tables disagree on the monoid size")
        for m in range(k):
            if self.table[self.identity][m] != m or self.table[m][self.identity] != m:
                raise DomainError("identity index is not neutral")
        for x in range(n):
            if self.action[self.identity][x] != x:
                raise DomainError("identity does not act trivially")
            for a in range(k):
                for b in range(k):
                    if self.action[b][self.action[a][x]] != self.action[self.table[a][b]][x]:
                        raise DomainError(f"not a right action at state {x}, elements {a},{b}")
        if self.generators is None:
            self.generators = [m for m in range(k) if m != self.identity]
        if self.generator_names is None:
            self.generator_names = [f"m{g}" for g in self.generators]
        self.words = _bfs_words(k, self.identity, self.generators, self.table)

    def __len__(self):
        return len(self.table)

    @property
    def n_states(self) -> int:
        return self.states.size

    def act(self, m: int) -> Transformation:
        return tuple(self.action[m])

    @property
    def generator_maps(self) -> list:
        return [self.act(g) for g in self.generators]

    def is_faithful(self) -> bool:
        return is_faithful_action(self.states, range(len(self)), self.action)


def _bfs_words(k, ident, gens, table):
    words = [None] * k
    words[ident] = ()
    queue = deque([ident])
    while queue:
        i = queue.popleft()
        for j, g in enumerate(gens):
            t = table[i][g]
            if words[t] is None:
                words[t] = words[i] + (j,)
                queue.append(t)
    if any(w is None for w in words):
        raise DomainError("the listed generators do not generate the monoid")
    return words


def make_faithful(ma: MonoidAction):
    """Faithful action of ``M`` on ``X x M`` by ``(x, m) . m' = (x, m m')``.

    Returns the new :class:`TMonoid` and the certificate ``phi(x, m) = x . m``
    showing that ``ma`` strongly divides it.
    """
    from .division import CoveringCertificate
    from .wreath import ProductSpace, WreathElement

    n, k = ma.n_states, len(ma)
    labels = [f"({x},{m})" for x in ma.states.labels for m in range(k)]
    gens = []
    for g in ma.generators:
        gens.append(tuple(x * k + ma.table[m][g] for x in range(n) for m in range(k)))
    tm = generate(StateSet(labels), gens, list(ma.generator_names))
    phi = np.array([ma.action[m][x] for x in range(n) for m in range(k)], dtype=np.int64)
    space = ProductSpace([tm])
    covers = [WreathElement.single(space, tm.generators[j]) for j in range(len(ma.generators))]
    cert = CoveringCertificate(ma, space, phi, covers, kind="make-faithful")
    return tm, cert


def group_of_units(tm: TMonoid) -> TMonoid:
    """Submonoid of elements with a two-sided inverse in ``tm``."""
    n = tm.n_states
    units = []
    for e in tm.elements:
        if not is_permutation(e):
            continue
        inv = [0] * n
        for x, y in enumerate(e):
            inv[y] = x
        if tuple(inv) in tm.index:
            units.append(e)
    gens = [u for u in units if u != identity(n)]
    return generate(tm.states, gens)


def irredundant_generators(tm: TMonoid) -> list:
    """Greedily drop generator positions whose removal keeps the closure intact.

    Positions are examined in index order; the survivors generate ``tm`` and
    none of them lies in the closure of the others.
    """
    n = tm.n_states
    keep = list(range(len(tm.generators)))
    for pos in range(len(tm.generators)):
        trial = [p for p in keep if p != pos]
        if closure_size(n, [tm.elements[tm.generators[p]] for p in trial]) == len(tm):
            keep = trial
    return keep


def with_generators(tm: TMonoid, positions: Sequence[int]) -> TMonoid:
    """Regenerate ``tm`` from a subset of its generator positions."""
    out = generate(tm.states, [tm.elements[tm.generators[p]] for p in positions],
                   [tm.generator_names[p] for p in positions])
    if len(out) != len(tm):
        raise DomainError("the chosen generators do not generate the monoid")
    return out


@dataclass
class Dfa:
    states: StateSet
    alphabet: list
    transitions: dict

    def __post_init__(self):
        n = self.states.size
        missing = [a for a in self.alphabet if a not in self.transitions]
        if missing:
            raise FormatError(f"transitions: no row for letters {missing}")
        try:
            self.transitions = {a: check_transformation(self.transitions[a], n) for a in self.alphabet}
        except DimensionError as exc:
            raise FormatError(f"transitions: {exc}") from exc


def transition_monoid(dfa: Dfa) -> TMonoid:
    """Monoid generated by the letters' transition maps; words are over the alphabet."""
    return generate(dfa.states, [dfa.transitions[a] for a in dfa.alphabet], [str(a) for a in dfa.alphabet])
